//! Ground truth over finite fields.
//!
//! For a torus over `F_q` whose arithmetic Frobenius acts on the cocharacter
//! lattice by `sigma`, the rational points form the cokernel of
//! `q * sigma - I`. Its Smith invariants give the exact group structure, and
//! the number of invariants divisible by `p` is the rank of `T(F_q)[p]`.

use crate::arith::{multiplicative_order, prime_power, totient, PrimeModulus};
use crate::error::{Error, Result};
use crate::intlinalg::{kernel_dim_mod_p, smith_normal_form, IntegerMatrix};
use crate::random::random_finite_order;
use crate::torus_rank::{
    admissible_primes, eigenspace_rank, fixed_point_rank, sharp_construction, theorem_bound,
    GaloisTorusPresentation,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Largest field size accepted.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// A torus over `F_q`, presented by the Frobenius action on cocharacters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFieldTorus {
    q: u64,
    characteristic: u64,
    sigma: IntegerMatrix,
}

impl FiniteFieldTorus {
    pub fn new(q: u64, sigma: IntegerMatrix) -> Result<Self> {
        let characteristic = validate_field_size(q)?;
        crate::intlinalg::matrix_order(&sigma)?;
        Ok(FiniteFieldTorus {
            q,
            characteristic,
            sigma,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn sigma(&self) -> &IntegerMatrix {
        &self.sigma
    }

    pub fn dimension(&self) -> usize {
        self.sigma.dim()
    }

    /// `q * sigma - I`.
    pub fn frobenius_shift(&self) -> IntegerMatrix {
        &self.sigma.scale(&BigInt::from(self.q)) - &IntegerMatrix::identity(self.sigma.dim())
    }
}

fn validate_field_size(q: u64) -> Result<u64> {
    if q > MAX_FIELD_SIZE {
        return Err(Error::OutOfRange {
            what: "q",
            value: q,
            range: "[2, 2^20]",
        });
    }
    prime_power(q)
        .map(|(ell, _)| ell)
        .ok_or(Error::NotPrimePower { value: q })
}

/// Invariant factors `s_1 | ... | s_d` of a finite abelian group, units kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariants {
    invariants: Vec<BigInt>,
}

impl AbelianGroupInvariants {
    /// Fails unless every entry is positive and each divides the next.
    pub fn new(invariants: Vec<BigInt>) -> Result<Self> {
        if invariants.iter().any(|s| !s.is_positive()) {
            return Err(Error::InvariantViolation(
                "group invariants must be positive".into(),
            ));
        }
        if invariants.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvariantViolation(
                "group invariants must form a divisibility chain".into(),
            ));
        }
        Ok(AbelianGroupInvariants { invariants })
    }

    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }
}

/// Group structure of `T(F_q)`: Smith invariants of `q * sigma - I`.
pub fn rational_points_structure(tor: &FiniteFieldTorus) -> Result<AbelianGroupInvariants> {
    let snf = smith_normal_form(&tor.frobenius_shift())?;
    AbelianGroupInvariants::new(snf.invariants().to_vec())
}

/// Rank of the `p`-elementary subgroup: invariants divisible by `p`.
pub fn p_elementary_rank(g: &AbelianGroupInvariants, p: PrimeModulus) -> usize {
    let p = BigInt::from(p.get());
    g.invariants.iter().filter(|s| s.is_multiple_of(&p)).count()
}

/// `[F_q(zeta_p) : F_q]`, the order of `q` modulo `p`.
pub fn t_of_finite_field(q: u64, p: PrimeModulus) -> Result<u64> {
    validate_field_size(q)?;
    if q.is_multiple_of(p.get()) {
        return Err(Error::ExcludedCharacteristic { p: p.get(), q });
    }
    multiplicative_order(q as i64, p)
}

/// `|T(F_q)| = |det(q * sigma - I)|`.
pub fn group_order(tor: &FiniteFieldTorus) -> BigInt {
    tor.frobenius_shift().determinant().abs()
}

/// Smallest prime power `q` (not divisible by `p`) with `[F_q(zeta_p) : F_q] = t`.
pub fn smallest_field_with_t(p: PrimeModulus, t: u64) -> Result<u64> {
    if !(p.get() - 1).is_multiple_of(t) {
        return Err(Error::CharacterOrder { t, p: p.get() });
    }
    (2..=MAX_FIELD_SIZE)
        .filter(|&q| q % p.get() != 0 && prime_power(q).is_some())
        .find(|&q| multiplicative_order(q as i64, p).ok() == Some(t))
        .ok_or(Error::OutOfRange {
            what: "q",
            value: MAX_FIELD_SIZE,
            range: "search exhausted",
        })
}

/// Oracle rank against the eigenspace route for one `(torus, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub q: u64,
    pub p: u64,
    pub dimension: usize,
    pub t: u64,
    /// `q^{-1} mod p`, the realized value of `chi(Frobenius)^{-1}`.
    pub eps: u64,
    pub oracle_rank: usize,
    pub kernel_rank: usize,
    pub eigenspace_rank: u64,
    pub bound: u64,
}

impl OracleComparison {
    pub fn consistent(&self) -> bool {
        self.oracle_rank == self.kernel_rank
            && self.kernel_rank as u64 == self.eigenspace_rank
            && self.eigenspace_rank <= self.bound
    }
}

/// Computes the `p`-rank of `T(F_q)` three ways: Smith invariants, kernel of
/// `q * sigma - I` mod `p`, and the eigenspace of `sigma` at `q^{-1}` through
/// the torus layer with `t = ord_p(q)`.
pub fn compare_with_eigenspace(
    tor: &FiniteFieldTorus,
    p: PrimeModulus,
) -> Result<OracleComparison> {
    let t = t_of_finite_field(tor.q, p)?;
    let eps = p.inv(tor.q % p.get())?;
    let structure = rational_points_structure(tor)?;
    let oracle_rank = p_elementary_rank(&structure, p);
    let kernel_rank = kernel_dim_mod_p(&tor.frobenius_shift(), p)?;
    let pres = GaloisTorusPresentation::new(tor.sigma.clone(), t)?;
    let eigen = crate::torus_rank::fixed_point_rank_at(&pres, p, eps)?;
    debug_assert_eq!(eigen.eigenspace_rank, eigenspace_rank(&tor.sigma, p, eps)?);
    Ok(OracleComparison {
        q: tor.q,
        p: p.get(),
        dimension: tor.dimension(),
        t,
        eps,
        oracle_rank,
        kernel_rank,
        eigenspace_rank: eigen.eigenspace_rank,
        bound: theorem_bound(tor.dimension() as u64, t),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub field_sizes: Vec<u64>,
    pub primes: Vec<PrimeModulus>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            samples: 200,
            seed: 0,
            max_dim: 6,
            field_sizes: vec![2, 3, 4, 5, 7, 8, 9],
            primes: [2, 3, 5, 7, 11, 13]
                .into_iter()
                .map(|p| PrimeModulus::new(p).expect("small prime"))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepViolation {
    pub sample: usize,
    pub sigma: Vec<Vec<String>>,
    pub comparison: Option<OracleComparison>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub samples: usize,
    pub seed: u64,
    pub comparisons: usize,
    /// Comparisons where the rank meets `floor(d / phi(t))`.
    pub bound_attained: usize,
    /// Largest `p`-rank seen.
    pub max_rank: usize,
    pub violations: Vec<SweepViolation>,
    pub pass: bool,
}

fn sigma_strings(m: &IntegerMatrix) -> Vec<Vec<String>> {
    m.rows()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

/// Random finite-order tori checked against the oracle for every listed
/// `(q, p)` with `p` not dividing `q`.
///
/// Matrices are drawn sequentially from a ChaCha8 stream seeded by
/// `config.seed`; evaluation runs in parallel and merges in sample order.
pub fn oracle_sweep(config: &SweepConfig) -> Result<SweepReport> {
    for &q in &config.field_sizes {
        validate_field_size(q)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sigmas: Vec<IntegerMatrix> = (0..config.samples)
        .map(|_| {
            let d = rng.random_range(1..=config.max_dim.max(1));
            random_finite_order(d, &mut rng)
        })
        .collect::<Result<_>>()?;

    let per_sample: Vec<(Vec<OracleComparison>, Vec<SweepViolation>)> = sigmas
        .par_iter()
        .enumerate()
        .map(|(sample, sigma)| {
            let mut comps = Vec::new();
            let mut bad = Vec::new();
            for &q in &config.field_sizes {
                let tor = FiniteFieldTorus::new(q, sigma.clone())?;
                let order = group_order(&tor);
                let structure = rational_points_structure(&tor)?;
                if structure.order() != order || order.is_zero() {
                    bad.push(SweepViolation {
                        sample,
                        sigma: sigma_strings(sigma),
                        comparison: None,
                        detail: format!(
                            "q = {q}: |det| = {order} but invariants give {}",
                            structure.order()
                        ),
                    });
                }
                for &p in &config.primes {
                    if q % p.get() == 0 {
                        continue;
                    }
                    let c = compare_with_eigenspace(&tor, p)?;
                    if !c.consistent() {
                        bad.push(SweepViolation {
                            sample,
                            sigma: sigma_strings(sigma),
                            comparison: Some(c.clone()),
                            detail:
                                "oracle, kernel and eigenspace ranks disagree or exceed the bound"
                                    .into(),
                        });
                    }
                    comps.push(c);
                }
            }
            Ok((comps, bad))
        })
        .collect::<Result<_>>()?;

    let mut report = SweepReport {
        samples: config.samples,
        seed: config.seed,
        comparisons: 0,
        bound_attained: 0,
        max_rank: 0,
        violations: Vec::new(),
        pass: true,
    };
    for (comps, bad) in per_sample {
        report.comparisons += comps.len();
        report.bound_attained += comps
            .iter()
            .filter(|c| c.oracle_rank as u64 == c.bound)
            .count();
        report.max_rank = comps
            .iter()
            .map(|c| c.oracle_rank)
            .fold(report.max_rank, usize::max);
        report.violations.extend(bad);
    }
    report.pass = report.violations.is_empty();
    Ok(report)
}

/// One row of the sharpness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessRow {
    pub d: u64,
    pub t: u64,
    pub p: u64,
    pub q: u64,
    pub bound: u64,
    pub eigenspace_rank: u64,
    pub oracle_rank: usize,
    pub attained: bool,
}

/// Checks [`sharp_construction`] at `(d, t)`: the eigenspace rank at the
/// smallest prime `p` with `t | p - 1`, and the oracle rank over the smallest
/// field `F_q` with `ord_p(q) = t`.
pub fn sharpness_row(d: u64, t: u64) -> Result<SharpnessRow> {
    let pres = sharp_construction(d, t)?;
    let p = admissible_primes(t, 1)[0];
    sharpness_row_at(&pres, p)
}

/// As [`sharpness_row`] for a given presentation and prime.
pub fn sharpness_row_at(pres: &GaloisTorusPresentation, p: PrimeModulus) -> Result<SharpnessRow> {
    let t = pres.chi_order();
    let d = pres.dimension() as u64;
    let cert = fixed_point_rank(pres, p)?;
    let q = smallest_field_with_t(p, t)?;
    let tor = FiniteFieldTorus::new(q, pres.sigma().clone())?;
    let oracle_rank = p_elementary_rank(&rational_points_structure(&tor)?, p);
    let bound = theorem_bound(d, t);
    Ok(SharpnessRow {
        d,
        t,
        p: p.get(),
        q,
        bound,
        eigenspace_rank: cert.eigenspace_rank,
        oracle_rank,
        attained: cert.eigenspace_rank == bound && oracle_rank as u64 == bound,
    })
}

/// Character orders for which some torus of dimension at most `max_dim` has
/// positive rank and which occur in the Cremona table.
pub const SHARPNESS_ORDERS: [u64; 5] = [1, 2, 3, 4, 6];

/// [`sharpness_row`] for every `t` in [`SHARPNESS_ORDERS`] and
/// `phi(t) <= d <= max_dim`.
pub fn sharpness_table(max_dim: u64) -> Result<Vec<SharpnessRow>> {
    SHARPNESS_ORDERS
        .iter()
        .flat_map(|&t| (totient(t)..=max_dim).map(move |d| (d, t)))
        .map(|(d, t)| sharpness_row(d, t))
        .collect()
}

/// Order of the split torus `(q - 1)^d`.
pub fn split_torus_order(q: u64, d: u32) -> BigInt {
    (0..d).fold(BigInt::one(), |acc, _| acc * BigInt::from(q - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn structure_examples() {
        let t = FiniteFieldTorus::new(4, mat(&[&[1]])).unwrap();
        assert_eq!(
            rational_points_structure(&t).unwrap().invariants(),
            big(&[3])
        );
        let t = FiniteFieldTorus::new(2, mat(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(
            rational_points_structure(&t).unwrap().invariants(),
            big(&[1, 3])
        );
        let t = FiniteFieldTorus::new(2, mat(&[&[-1]])).unwrap();
        assert_eq!(
            rational_points_structure(&t).unwrap().invariants(),
            big(&[3])
        );
    }

    #[test]
    fn p_rank_examples() {
        let g = AbelianGroupInvariants::new(big(&[1, 3])).unwrap();
        assert_eq!(p_elementary_rank(&g, p(3)), 1);
        let g = AbelianGroupInvariants::new(big(&[3, 9])).unwrap();
        assert_eq!(p_elementary_rank(&g, p(3)), 2);
        let g = AbelianGroupInvariants::new(big(&[1, 6])).unwrap();
        assert_eq!(p_elementary_rank(&g, p(5)), 0);
        assert!(AbelianGroupInvariants::new(big(&[2, 3])).is_err());
        assert!(AbelianGroupInvariants::new(big(&[0])).is_err());
    }

    #[test]
    fn t_examples() {
        assert_eq!(t_of_finite_field(4, p(3)).unwrap(), 1);
        assert_eq!(t_of_finite_field(2, p(3)).unwrap(), 2);
        assert_eq!(t_of_finite_field(2, p(7)).unwrap(), 3);
        assert_eq!(
            t_of_finite_field(9, p(3)),
            Err(Error::ExcludedCharacteristic { p: 3, q: 9 })
        );
        assert_eq!(
            t_of_finite_field(6, p(5)),
            Err(Error::NotPrimePower { value: 6 })
        );
    }

    #[test]
    fn order_examples() {
        assert_eq!(
            group_order(&FiniteFieldTorus::new(4, mat(&[&[1]])).unwrap()),
            BigInt::from(3)
        );
        let weil = FiniteFieldTorus::new(3, mat(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(group_order(&weil), BigInt::from(8));
        let norm = FiniteFieldTorus::new(3, mat(&[&[-1]])).unwrap();
        assert_eq!(group_order(&norm), BigInt::from(4));
    }

    #[test]
    fn split_torus_order_matches() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for d in 1..=4u32 {
                let tor = FiniteFieldTorus::new(q, IntegerMatrix::identity(d as usize)).unwrap();
                assert_eq!(group_order(&tor), split_torus_order(q, d));
                assert_eq!(
                    rational_points_structure(&tor).unwrap().order(),
                    split_torus_order(q, d)
                );
            }
        }
    }

    /// Brute force: count points of the norm-one torus `N: F_{q^2}^* -> F_q^*`
    /// for prime `q`, modelling `F_{q^2}` as `F_q[i]/(i^2 - n)` with `n` a
    /// non-residue.
    #[test]
    fn norm_one_torus_matches_point_count() {
        for q in [3u64, 5, 7, 11] {
            let n = (2..q).find(|&a| (1..q).all(|x| x * x % q != a)).unwrap();
            let count = (0..q)
                .flat_map(|a| (0..q).map(move |b| (a, b)))
                .filter(|&(a, b)| (a * a + q * q - n * b % q * b % q) % q == 1)
                .count();
            let tor = FiniteFieldTorus::new(q, mat(&[&[-1]])).unwrap();
            assert_eq!(group_order(&tor), BigInt::from(count as u64));
        }
    }

    #[test]
    fn field_validation() {
        assert!(FiniteFieldTorus::new(6, mat(&[&[1]])).is_err());
        assert!(FiniteFieldTorus::new(MAX_FIELD_SIZE * 2, mat(&[&[1]])).is_err());
        assert!(FiniteFieldTorus::new(4, mat(&[&[1, 1], &[0, 1]])).is_err());
    }

    #[test]
    fn smallest_fields() {
        assert_eq!(smallest_field_with_t(p(2), 1).unwrap(), 3);
        assert_eq!(smallest_field_with_t(p(3), 2).unwrap(), 2);
        assert_eq!(smallest_field_with_t(p(3), 1).unwrap(), 4);
        assert_eq!(smallest_field_with_t(p(7), 3).unwrap(), 2);
        assert_eq!(smallest_field_with_t(p(5), 4).unwrap(), 2);
        assert_eq!(smallest_field_with_t(p(7), 6).unwrap(), 3);
    }

    #[test]
    fn small_sweep_passes() {
        let config = SweepConfig {
            samples: 30,
            seed: 5,
            ..SweepConfig::default()
        };
        let r = oracle_sweep(&config).unwrap();
        assert!(r.pass, "{:?}", r.violations);
        assert_eq!(r.comparisons, 30 * 35);
        assert_eq!(oracle_sweep(&config).unwrap(), r);
    }

    #[test]
    fn three_cycle_over_f2() {
        // Weil restriction of G_m along F_8 / F_2; T(F_2) = F_8^* has order 7
        let sigma = mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let tor = FiniteFieldTorus::new(2, sigma.clone()).unwrap();
        let c = compare_with_eigenspace(&tor, p(7)).unwrap();
        assert!(c.consistent());
        assert_eq!(c.eps, 4);
        assert_eq!(c.oracle_rank, 1);
        assert_eq!(group_order(&tor), BigInt::from(7));
    }
}
