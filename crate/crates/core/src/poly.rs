//! Dense univariate polynomials over Z and over Z/p.

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Polynomial with exact integer coefficients; `coeffs[i]` multiplies `X^i`.
///
/// Stored normalized: no trailing zeros, so the zero polynomial has an empty
/// coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += 1;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `P(X^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division with remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[i + dd]);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs[..dd].iter().enumerate() {
                if !b.is_zero() {
                    rem[i + j] -= &c * b;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient by a monic divisor, or `None` when the remainder is nonzero.
    pub fn exact_div_monic(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Coefficientwise reduction modulo `p`.
    pub fn reduce_mod(&self, p: PrimeModulus) -> ModularPolynomial {
        let m = BigInt::from(p.get());
        ModularPolynomial::new(
            p,
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&m).to_u64().expect("residue fits in u64"))
                .collect(),
        )
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
}

impl std::ops::Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntegerPolynomial::new(out)
    }
}

impl std::ops::Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntegerPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl std::ops::Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, rhs: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntegerPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

fn write_terms<C, F>(f: &mut fmt::Formatter<'_>, coeffs: &[C], sign_and_abs: F) -> fmt::Result
where
    F: Fn(&C) -> Option<(bool, String, bool)>,
{
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        let Some((negative, abs, is_one)) = sign_and_abs(c) else {
            continue;
        };
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let show_coeff = !is_one || i == 0;
        if show_coeff {
            write!(f, "{abs}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "X")?,
            _ => write!(f, "X^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |c| {
            (!c.is_zero()).then(|| (c.is_negative(), c.abs().to_string(), c.abs().is_one()))
        })
    }
}

/// Polynomial over `Z/p` with coefficients kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularPolynomial {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl ModularPolynomial {
    /// Builds a polynomial, reducing each coefficient modulo `p`.
    pub fn new(modulus: PrimeModulus, coeffs: Vec<u64>) -> Self {
        let p = modulus.get();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModularPolynomial { modulus, coeffs }
    }

    pub fn from_i64s(modulus: PrimeModulus, coeffs: &[i64]) -> Self {
        Self::new(modulus, coeffs.iter().map(|&c| modulus.reduce(c)).collect())
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        Self::new(modulus, vec![1])
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.modulus;
        let x = x % p.get();
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| p.add(p.mul(acc, x), c))
    }

    /// Synthetic division by `X - root`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, root: u64) -> (Self, u64) {
        let p = self.modulus;
        let root = root % p.get();
        if self.is_zero() {
            return (self.clone(), 0);
        }
        let mut quot = vec![0u64; self.coeffs.len() - 1];
        let mut carry = 0u64;
        for i in (0..self.coeffs.len()).rev() {
            let v = p.add(self.coeffs[i], p.mul(carry, root));
            if i == 0 {
                return (Self::new(p, quot), v);
            }
            quot[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest `m` such that `(X - root)^m` divides `self`.
    pub fn root_multiplicity(&self, root: u64) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_linear(root);
            if r != 0 {
                return Ok(m);
            }
            m += 1;
            cur = q;
        }
    }
}

impl std::ops::Mul for &ModularPolynomial {
    type Output = ModularPolynomial;
    fn mul(self, rhs: &ModularPolynomial) -> ModularPolynomial {
        assert_eq!(self.modulus, rhs.modulus, "moduli differ");
        let p = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return ModularPolynomial::new(p, Vec::new());
        }
        // residues are below 2^31, so a u128 accumulator never overflows
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as u128;
            for (slot, &b) in acc[i..].iter_mut().zip(&rhs.coeffs) {
                *slot += a * b as u128;
            }
        }
        let m = p.get() as u128;
        ModularPolynomial::new(p, acc.into_iter().map(|x| (x % m) as u64).collect())
    }
}

impl fmt::Display for ModularPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, |&c| {
            (c != 0).then(|| (false, c.to_string(), c == 1))
        })?;
        write!(f, " (mod {})", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    #[test]
    fn normalization_drops_trailing_zeros() {
        let f = IntegerPolynomial::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(f.degree(), 1);
        assert!(IntegerPolynomial::from_i64s(&[0, 0]).is_zero());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(
            IntegerPolynomial::from_i64s(&[1, 0, -1, 0, 1]).to_string(),
            "X^4 - X^2 + 1"
        );
        assert_eq!(IntegerPolynomial::from_i64s(&[-1, 1]).to_string(), "X - 1");
        assert_eq!(IntegerPolynomial::zero().to_string(), "0");
        let m = ModularPolynomial::from_i64s(p(5), &[1, 0, 1]);
        assert_eq!(m.to_string(), "X^2 + 1 (mod 5)");
    }

    #[test]
    fn reduce_mod_examples() {
        let f = IntegerPolynomial::from_i64s(&[1, -1, 1]);
        assert_eq!(
            f.reduce_mod(p(2)),
            ModularPolynomial::from_i64s(p(2), &[1, 1, 1])
        );
        let phi4 = IntegerPolynomial::from_i64s(&[1, 0, 1]);
        assert_eq!(phi4.reduce_mod(p(5)).coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn leading_coefficient_divisible_by_p_drops_degree() {
        let f = IntegerPolynomial::from_i64s(&[1, 1, 3]);
        assert_eq!(f.reduce_mod(p(3)).degree(), 1);
    }

    #[test]
    fn root_multiplicity_examples() {
        let f = ModularPolynomial::from_i64s(p(5), &[1, 0, 1]);
        assert_eq!(f.root_multiplicity(2).unwrap(), 1);
        // (X + 1)^3 mod 3
        let g = ModularPolynomial::from_i64s(p(3), &[1, 3, 3, 1]);
        assert_eq!(g.root_multiplicity(2).unwrap(), 3);
        let h = ModularPolynomial::from_i64s(p(3), &[1, 0, 1]);
        assert_eq!(h.root_multiplicity(1).unwrap(), 0);
        let z = ModularPolynomial::new(p(3), vec![0]);
        assert_eq!(z.root_multiplicity(1), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn division_identity() {
        let a = IntegerPolynomial::from_i64s(&[3, -7, 0, 2, 5, 1]);
        let b = IntegerPolynomial::from_i64s(&[2, -1, 1]);
        let (q, r) = a.div_rem_monic(&b);
        assert!(r.degree() < b.degree());
        assert_eq!(&(&q * &b) + &r, a);
        assert!(a.exact_div_monic(&b).is_none());
        assert_eq!((&a * &b).exact_div_monic(&b), Some(a));
    }

    /// Multiplicity through Hasse derivatives: the least k whose k-th Hasse
    /// derivative does not vanish at the root. Valid in every characteristic.
    fn hasse_multiplicity(f: &ModularPolynomial, root: u64) -> u64 {
        let pm = f.modulus();
        let pr = pm.get();
        let c = f.coeffs();
        for k in 0..c.len() {
            let mut acc = 0u64;
            for (i, &a) in c.iter().enumerate().skip(k) {
                let binom = binom_mod(i as u64, k as u64, pr);
                acc = pm.add(acc, pm.mul(pm.mul(binom, a), pm.pow(root, (i - k) as u64)));
            }
            if acc != 0 {
                return k as u64;
            }
        }
        unreachable!("nonzero polynomial has a nonvanishing Hasse derivative")
    }

    fn binom_mod(n: u64, k: u64, p: u64) -> u64 {
        // Lucas' theorem
        let (mut n, mut k) = (n, k);
        let mut acc = 1u64;
        while n > 0 || k > 0 {
            let (a, b) = (n % p, k % p);
            if b > a {
                return 0;
            }
            let mut c = 1u64;
            for j in 0..b {
                c = c * ((a - j) % p) % p;
                c = c * crate::arith::pow_mod(j + 1, p - 2, p) % p;
            }
            acc = acc * c % p;
            n /= p;
            k /= p;
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn root_multiplicity_matches_hasse_oracle(
            pi in 0usize..5,
            root in 0u64..13,
            roots in proptest::collection::vec(0u64..13, 0..8),
            tail in proptest::collection::vec(0u64..13, 1..5),
        ) {
            let pr = [2u64, 3, 5, 7, 13][pi];
            let pm = p(pr);
            let mut f = ModularPolynomial::new(pm, tail);
            prop_assume!(!f.is_zero());
            for r in roots {
                f = &f * &ModularPolynomial::new(pm, vec![pr - r % pr, 1]);
            }
            let root = root % pr;
            prop_assert_eq!(f.root_multiplicity(root).unwrap(), hasse_multiplicity(&f, root));
        }
    }
}
