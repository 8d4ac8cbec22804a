//! Cyclotomic polynomials over Z, their reductions modulo a prime, and the
//! root-multiplicity behavior of order-`t` residues.
//!
//! For a prime `p` and `n = m * p^f` with `p` not dividing `m`, the reduction
//! satisfies `Phi_n = Phi_m^{phi(p^f)} (mod p)`, and the roots of `Phi_m` over
//! an extension of `Z/p` are exactly the elements of order `m`. Consequently a
//! residue `eps` of order `t` is a root of `Phi_n mod p` iff `n = t * p^f`,
//! with the same multiplicity for every residue of that order.
//! [`verify_lemma_range`] checks these statements exhaustively on a range.

use crate::arith::{divisors, factorize, totient, PrimeModulus};
use crate::error::{Error, Result};
use crate::poly::{IntegerPolynomial, ModularPolynomial};
use rayon::prelude::*;
use serde::Serialize;

pub use crate::arith::multiplicative_order;

/// Largest index accepted by [`cyclotomic_poly`].
pub const MAX_CYCLOTOMIC_INDEX: u64 = 1_000_000;

/// The `n`-th cyclotomic polynomial with exact integer coefficients.
///
/// Built one prime at a time: `Phi_{mq}(X) = Phi_m(X^q) / Phi_m(X)` for a new
/// prime `q`, and `Phi_{n}(X) = Phi_{rad n}(X^{n / rad n})`. Every division is
/// checked to be exact.
pub fn cyclotomic_poly(n: u64) -> Result<IntegerPolynomial> {
    if n == 0 || n > MAX_CYCLOTOMIC_INDEX {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            range: "[1, 10^6]",
        });
    }
    let mut phi = IntegerPolynomial::from_i64s(&[-1, 1]);
    let mut radical = 1u64;
    for (q, _) in factorize(n) {
        let lifted = phi.compose_power(q as usize);
        phi = lifted.exact_div_monic(&phi).ok_or_else(|| {
            Error::InvariantViolation(format!(
                "Phi_{} does not divide Phi_{}(X^{})",
                radical, radical, q
            ))
        })?;
        radical *= q;
    }
    Ok(phi.compose_power((n / radical) as usize))
}

/// Coefficientwise reduction modulo `p`.
pub fn reduce_mod(poly: &IntegerPolynomial, p: PrimeModulus) -> ModularPolynomial {
    poly.reduce_mod(p)
}

/// Multiplicity of `eps` as a root of `poly`, by repeated exact division.
pub fn root_multiplicity(poly: &ModularPolynomial, eps: u64) -> Result<u64> {
    let p = poly.modulus().get();
    if eps >= p {
        return Err(Error::OutOfRange {
            what: "eps",
            value: eps,
            range: "[0, p)",
        });
    }
    poly.root_multiplicity(eps)
}

/// Roots of `poly` in `Z/p`, ascending, paired with their multiplicities.
pub fn roots_in_prime_field(poly: &ModularPolynomial) -> Result<Vec<(u64, u64)>> {
    let p = poly.modulus().get();
    let mut out = Vec::new();
    for r in 0..p {
        let m = poly.root_multiplicity(r)?;
        if m > 0 {
            out.push((r, m));
        }
    }
    Ok(out)
}

/// Splits `n = m * p^f` with `p` not dividing `m`.
pub fn strip_prime(n: u64, p: PrimeModulus) -> (u64, u32) {
    let mut m = n;
    let mut f = 0;
    while m.is_multiple_of(p.get()) {
        m /= p.get();
        f += 1;
    }
    (m, f)
}

/// Whether `n = t * p^f` for some `f >= 0`.
pub fn is_t_times_p_power(n: u64, t: u64, p: PrimeModulus) -> bool {
    if t == 0 || !n.is_multiple_of(t) {
        return false;
    }
    let (rest, _) = strip_prime(n / t, p);
    rest == 1
}

/// The common multiplicity of every residue of order `t` as a root of
/// `Phi_n mod p`.
///
/// The `p`-part of `n` is stripped first, so only `Phi_m mod p` with `p` not
/// dividing `m` is ever searched for roots. Disagreement between two residues
/// of the same order is reported as [`Error::InvariantViolation`].
pub fn order_t_multiplicity(n: u64, p: PrimeModulus, t: u64) -> Result<u64> {
    let residues = p.elements_of_order(t)?;
    let (m, f) = strip_prime(n, p);
    let reduced = cyclotomic_poly(m)?.reduce_mod(p);
    let mut common = None;
    for eps in residues {
        let mult = reduced.root_multiplicity(eps)?;
        match common {
            None => common = Some(mult),
            Some(c) if c != mult => {
                return Err(Error::InvariantViolation(format!(
                    "order-{t} residues have different multiplicities ({c} vs {mult}) in Phi_{m} mod {p}"
                )))
            }
            Some(_) => {}
        }
    }
    let prime_power_phi = if f == 0 { 1 } else { totient(p.get().pow(f)) };
    Ok(common.expect("at least one residue of each order dividing p - 1") * prime_power_phi)
}

/// Which statement a counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaCheck {
    /// All residues of order `t` share one multiplicity.
    Uniformity,
    /// Multiplicity is positive iff `n = t * p^f`.
    Positivity,
    /// The stripped computation agrees with the direct one.
    Stripping,
    /// `Phi_{n p^f} = Phi_n^{phi(p^f)} (mod p)` for `p` not dividing `n`.
    PrimePowerIdentity,
    /// Root count with multiplicity is `phi(n)` if `n | p - 1`, else 0.
    RootCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCounterexample {
    pub check: LemmaCheck,
    pub n: u64,
    pub p: u64,
    pub t: Option<u64>,
    pub f: Option<u32>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n_max: u64,
    pub primes: Vec<u64>,
    /// Number of `(n, p, t)` triples examined.
    pub triples: usize,
    /// Number of `(n, p, f)` prime-power identities examined.
    pub identities: usize,
    /// Number of `(n, p)` root-count checks.
    pub root_counts: usize,
    pub counterexamples: Vec<LemmaCounterexample>,
    pub pass: bool,
}

/// Exponents `f` checked by the prime-power identity sweep.
pub const IDENTITY_EXPONENTS: [u32; 2] = [1, 2];

struct PointOutcome {
    triples: usize,
    identities: usize,
    root_counts: usize,
    counterexamples: Vec<LemmaCounterexample>,
}

fn check_point(n: u64, p: PrimeModulus) -> Result<PointOutcome> {
    let pv = p.get();
    let mut out = PointOutcome {
        triples: 0,
        identities: 0,
        root_counts: 0,
        counterexamples: Vec::new(),
    };
    let phi_n = cyclotomic_poly(n)?;
    let reduced = phi_n.reduce_mod(p);

    for t in divisors(pv - 1) {
        out.triples += 1;
        let mults: Vec<(u64, u64)> = p
            .elements_of_order(t)?
            .into_iter()
            .map(|eps| reduced.root_multiplicity(eps).map(|m| (eps, m)))
            .collect::<Result<_>>()?;
        let first = mults[0].1;
        if let Some(&(eps, m)) = mults.iter().find(|&&(_, m)| m != first) {
            out.counterexamples.push(LemmaCounterexample {
                check: LemmaCheck::Uniformity,
                n,
                p: pv,
                t: Some(t),
                f: None,
                detail: format!(
                    "eps {} has multiplicity {first}, eps {eps} has {m}",
                    mults[0].0
                ),
            });
            continue;
        }
        if (first > 0) != is_t_times_p_power(n, t, p) {
            out.counterexamples.push(LemmaCounterexample {
                check: LemmaCheck::Positivity,
                n,
                p: pv,
                t: Some(t),
                f: None,
                detail: format!("multiplicity {first}"),
            });
        }
        match order_t_multiplicity(n, p, t) {
            Ok(m) if m == first => {}
            other => out.counterexamples.push(LemmaCounterexample {
                check: LemmaCheck::Stripping,
                n,
                p: pv,
                t: Some(t),
                f: None,
                detail: format!("direct {first}, stripped {other:?}"),
            }),
        }
    }

    if !n.is_multiple_of(pv) {
        out.root_counts += 1;
        let total: u64 = roots_in_prime_field(&reduced)?
            .iter()
            .filter(|&&(r, _)| r != 0)
            .map(|&(_, m)| m)
            .sum();
        let expected = if (pv - 1).is_multiple_of(n) {
            totient(n)
        } else {
            0
        };
        if total != expected {
            out.counterexamples.push(LemmaCounterexample {
                check: LemmaCheck::RootCount,
                n,
                p: pv,
                t: None,
                f: None,
                detail: format!("found {total} roots, expected {expected}"),
            });
        }

        for f in IDENTITY_EXPONENTS {
            out.identities += 1;
            let q = pv.pow(f);
            let lhs = cyclotomic_poly(n * q)?.reduce_mod(p);
            let rhs = reduced.pow(totient(q));
            if lhs != rhs {
                out.counterexamples.push(LemmaCounterexample {
                    check: LemmaCheck::PrimePowerIdentity,
                    n,
                    p: pv,
                    t: None,
                    f: Some(f),
                    detail: format!("Phi_{} mod {pv} = {lhs}, expected {rhs}", n * q),
                });
            }
        }
    }
    Ok(out)
}

/// Exhaustively checks the order-`t` root behavior of `Phi_n mod p` for every
/// `n <= n_max`, every listed prime and every `t | p - 1`.
///
/// Points are evaluated in parallel and merged in `(n, p)` order, so the
/// report is identical across runs.
pub fn verify_lemma_range(n_max: u64, primes: &[PrimeModulus]) -> Result<LemmaReport> {
    if n_max == 0 {
        return Err(Error::OutOfRange {
            what: "n_max",
            value: 0,
            range: "n_max >= 1",
        });
    }
    let mut primes: Vec<PrimeModulus> = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let points: Vec<(u64, PrimeModulus)> = (1..=n_max)
        .flat_map(|n| primes.iter().map(move |&p| (n, p)))
        .collect();
    let outcomes: Vec<PointOutcome> = points
        .par_iter()
        .map(|&(n, p)| check_point(n, p))
        .collect::<Result<_>>()?;

    let mut report = LemmaReport {
        n_max,
        primes: primes.iter().map(|p| p.get()).collect(),
        triples: 0,
        identities: 0,
        root_counts: 0,
        counterexamples: Vec::new(),
        pass: true,
    };
    for o in outcomes {
        report.triples += o.triples;
        report.identities += o.identities;
        report.root_counts += o.root_counts;
        report.counterexamples.extend(o.counterexamples);
    }
    report.pass = report.counterexamples.is_empty();
    Ok(report)
}
