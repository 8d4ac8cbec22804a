//! Machine-word number theory: primality, factorization, orders, totients.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest modulus accepted by [`PrimeModulus`] (exclusive).
pub const MODULUS_LIMIT: u64 = 1 << 31;

/// A prime `p < 2^31`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT {
            return Err(Error::OutOfRange {
                what: "p",
                value: p,
                range: "[2, 2^31)",
            });
        }
        if !is_prime(p) {
            return Err(Error::NotPrime { value: p });
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn pow(self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.0)
    }

    /// Inverse of a nonzero residue, by Fermat.
    pub fn inv(self, a: u64) -> Result<u64> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::NotInvertible { a: 0, p: self.0 });
        }
        Ok(self.pow(a, self.0 - 2))
    }

    /// All residues of multiplicative order exactly `t`, ascending.
    pub fn elements_of_order(self, t: u64) -> Result<Vec<u64>> {
        let p = self.0;
        if t == 0 || !(p - 1).is_multiple_of(t) {
            return Err(Error::CharacterOrder { t, p });
        }
        let g = primitive_root(self);
        let step = (p - 1) / t;
        // g^(step*k) has order t exactly when gcd(k, t) = 1
        let mut out: Vec<u64> = (1..=t)
            .filter(|&k| gcd(k, t) == 1)
            .map(|k| self.pow(g, step * k))
            .collect();
        out.sort_unstable();
        Ok(out)
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeModulus::new(p)
    }
}

impl From<PrimeModulus> for u64 {
    fn from(p: PrimeModulus) -> u64 {
        p.0
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin. Bases {2, 3, 5, 7} are exact below 3.2e9.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    if n >= 3_215_031_751 {
        return trial_is_prime(n);
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = pow_mod(x, 2, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn trial_is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (q, e) in factorize(n) {
        let len = divs.len();
        let mut pw = 1;
        for _ in 0..e {
            pw *= q;
            for i in 0..len {
                divs.push(divs[i] * pw);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient via trial-division factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            range: "n >= 1",
        });
    }
    Ok(totient(n))
}

pub(crate) fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Least `m >= 1` with `a^m = 1 (mod p)`.
pub fn multiplicative_order(a: i64, p: PrimeModulus) -> Result<u64> {
    let r = p.reduce(a);
    if r == 0 {
        return Err(Error::NotInvertible { a, p: p.get() });
    }
    Ok(order_of_unit(r, p))
}

pub(crate) fn order_of_unit(a: u64, p: PrimeModulus) -> u64 {
    let mut m = p.get() - 1;
    for (q, _) in factorize(m) {
        while m.is_multiple_of(q) && p.pow(a, m / q) == 1 {
            m /= q;
        }
    }
    m
}

/// Smallest generator of `(Z/p)^*`.
pub fn primitive_root(p: PrimeModulus) -> u64 {
    if p.get() == 2 {
        return 1;
    }
    let n = p.get() - 1;
    let qs: Vec<u64> = factorize(n).into_iter().map(|(q, _)| q).collect();
    (2..p.get())
        .find(|&g| qs.iter().all(|&q| p.pow(g, n / q) != 1))
        .expect("every prime field has a generator")
}

/// Returns `(ell, m)` with `q = ell^m` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(ell, m)] => Some((*ell, *m)),
        _ => None,
    }
}
