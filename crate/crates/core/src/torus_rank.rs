//! Rank bound for the `p`-torsion of an algebraic torus from one Galois
//! element.
//!
//! A torus of dimension `d` is presented by the integer matrix `sigma` giving
//! the action of a Galois element `g` on the cocharacter lattice, and by the
//! order `t` of the cyclotomic character value `chi(g)` in `(Z/p)^*`. The
//! `Gamma_k`-invariants of `T[p]` sit inside the `g`-invariants, which
//! (after fixing `mu_p = Z/p`) are the eigenspace of `sigma mod p` at
//! `chi(g)^{-1}`. Its dimension is at most the multiplicity of that eigenvalue
//! in the reduced characteristic polynomial, hence at most `d / phi(t)`.
//!
//! Only the single element `g` is modeled. Over a finite field Frobenius
//! generates the Galois group topologically and the eigenspace rank is exact;
//! over other fields it is an upper bound.

use crate::arith::{totient, PrimeModulus};
use crate::cyclotomic::cyclotomic_poly;
use crate::error::{Error, Result};
use crate::intlinalg::{char_poly, cyclotomic_factorization, kernel_dim_mod_p, matrix_order};
use crate::intlinalg::{CyclotomicFactorization, IntegerMatrix};
use num_bigint::BigInt;
use serde::Serialize;

pub use crate::arith::euler_phi;

/// A torus given by one Galois element's action on its cocharacter lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisTorusPresentation {
    sigma: IntegerMatrix,
    chi_order: u64,
    sigma_order: u64,
}

impl GaloisTorusPresentation {
    /// Fails unless `sigma` has finite order and `chi_order >= 1`.
    pub fn new(sigma: IntegerMatrix, chi_order: u64) -> Result<Self> {
        if chi_order == 0 {
            return Err(Error::OutOfRange {
                what: "chi_order",
                value: 0,
                range: "t >= 1",
            });
        }
        let sigma_order = matrix_order(&sigma)?;
        Ok(GaloisTorusPresentation {
            sigma,
            chi_order,
            sigma_order,
        })
    }

    pub fn dimension(&self) -> usize {
        self.sigma.dim()
    }

    pub fn sigma(&self) -> &IntegerMatrix {
        &self.sigma
    }

    pub fn chi_order(&self) -> u64 {
        self.chi_order
    }

    /// Order of `sigma` as a matrix.
    pub fn sigma_order(&self) -> u64 {
        self.sigma_order
    }

    /// Same torus in another lattice basis: `U * sigma * U^{-1}`.
    pub fn change_basis(&self, u: &IntegerMatrix, u_inv: &IntegerMatrix) -> Result<Self> {
        if !(u * u_inv).is_identity() {
            return Err(Error::Shape(
                "basis change is not unimodular with the given inverse".into(),
            ));
        }
        Ok(GaloisTorusPresentation {
            sigma: &(u * &self.sigma) * u_inv,
            chi_order: self.chi_order,
            sigma_order: self.sigma_order,
        })
    }
}

/// Outcome of [`fixed_point_rank`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub p: u64,
    pub t: u64,
    pub upper_bound: u64,
    pub eigenspace_rank: u64,
    pub char_poly_indices: CyclotomicFactorization,
    /// The eigenvalue `chi(g)^{-1}` whose eigenspace was measured.
    pub eps_used: u64,
}

/// `floor(d / phi(t))`.
///
/// # Panics
///
/// If `t == 0`.
pub fn theorem_bound(d: u64, t: u64) -> u64 {
    assert!(t >= 1, "character order must be positive");
    d / totient(t)
}

/// The eigenvalue used for character order `t`: the inverse of the smallest
/// residue of order `t`.
pub fn canonical_eps(t: u64, p: PrimeModulus) -> Result<u64> {
    let smallest = p.elements_of_order(t)?[0];
    p.inv(smallest)
}

/// `dim ker(sigma - eps * I)` over `Z/p`.
pub fn eigenspace_rank(sigma: &IntegerMatrix, p: PrimeModulus, eps: u64) -> Result<u64> {
    let shifted = sigma - &IntegerMatrix::scalar(sigma.dim(), BigInt::from(eps));
    Ok(kernel_dim_mod_p(&shifted, p)? as u64)
}

/// Measures the fixed-point rank of `T[p]` under `g` and certifies it against
/// `floor(d / phi(t))`.
pub fn fixed_point_rank(
    pres: &GaloisTorusPresentation,
    p: PrimeModulus,
) -> Result<RankCertificate> {
    let t = pres.chi_order;
    let eps = canonical_eps(t, p)?;
    fixed_point_rank_at(pres, p, eps)
}

/// As [`fixed_point_rank`], with an explicit eigenvalue of order `t`.
pub fn fixed_point_rank_at(
    pres: &GaloisTorusPresentation,
    p: PrimeModulus,
    eps: u64,
) -> Result<RankCertificate> {
    let t = pres.chi_order;
    if !p.elements_of_order(t)?.contains(&(eps % p.get())) {
        return Err(Error::InvariantViolation(format!(
            "eps = {eps} does not have order {t} modulo {p}"
        )));
    }
    let d = pres.dimension() as u64;
    let upper_bound = theorem_bound(d, t);
    let eigen = eigenspace_rank(&pres.sigma, p, eps)?;
    let indices = cyclotomic_factorization(&char_poly(&pres.sigma)?)?;
    if eigen > upper_bound {
        return Err(Error::InvariantViolation(format!(
            "eigenspace rank {eigen} exceeds floor({d}/phi({t})) = {upper_bound} for sigma = {}",
            pres.sigma
        )));
    }
    Ok(RankCertificate {
        p: p.get(),
        t,
        upper_bound,
        eigenspace_rank: eigen,
        char_poly_indices: indices,
        eps_used: eps % p.get(),
    })
}

/// One cyclotomic factor's share of the multiplicity of `eps`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorMultiplicity {
    pub index: u64,
    pub phi_index: u64,
    pub multiplicity: u64,
    /// `multiplicity * phi(t) <= phi(index)`.
    pub within_bound: bool,
}

/// Both measurements at one order-`t` eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsMeasurement {
    pub eps: u64,
    pub char_multiplicity: u64,
    pub eigenspace_rank: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub p: u64,
    pub t: u64,
    pub eps: u64,
    pub factors: Vec<FactorMultiplicity>,
    pub total_multiplicity: u64,
    pub total_bound: u64,
    /// Every order-`t` eigenvalue, ascending.
    pub per_eps: Vec<EpsMeasurement>,
    /// Characteristic-polynomial multiplicity agrees across all `per_eps`.
    pub multiplicity_uniform: bool,
    pub pass: bool,
}

/// Checks the factor-by-factor multiplicity chain for the canonical `eps`:
/// each `Phi_{d_i} mod p` carries `eps` at most `phi(d_i) / phi(t)` times and
/// the whole characteristic polynomial at most `d / phi(t)` times.
///
/// Eigenspace dimensions are recorded for every order-`t` eigenvalue but not
/// required to agree; they can differ from the multiplicity when `sigma mod p`
/// is not semisimple.
pub fn multiplicity_chain_check(
    pres: &GaloisTorusPresentation,
    p: PrimeModulus,
) -> Result<ChainReport> {
    let t = pres.chi_order;
    let eps = canonical_eps(t, p)?;
    let phi_t = totient(t);
    let f = char_poly(&pres.sigma)?;
    let indices = cyclotomic_factorization(&f)?;
    let reduced = f.reduce_mod(p);

    let mut factors = Vec::new();
    for &index in indices.indices() {
        let multiplicity = cyclotomic_poly(index)?
            .reduce_mod(p)
            .root_multiplicity(eps)?;
        let phi_index = totient(index);
        factors.push(FactorMultiplicity {
            index,
            phi_index,
            multiplicity,
            within_bound: multiplicity * phi_t <= phi_index,
        });
    }
    let total_multiplicity = reduced.root_multiplicity(eps)?;
    let total_bound = theorem_bound(pres.dimension() as u64, t);

    let per_eps = p
        .elements_of_order(t)?
        .into_iter()
        .map(|e| {
            Ok(EpsMeasurement {
                eps: e,
                char_multiplicity: reduced.root_multiplicity(e)?,
                eigenspace_rank: eigenspace_rank(&pres.sigma, p, e)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let multiplicity_uniform = per_eps
        .iter()
        .all(|m| m.char_multiplicity == per_eps[0].char_multiplicity);

    let factor_sum: u64 = factors.iter().map(|f| f.multiplicity).sum();
    let pass = factors.iter().all(|f| f.within_bound)
        && factor_sum == total_multiplicity
        && total_multiplicity <= total_bound
        && multiplicity_uniform
        && per_eps
            .iter()
            .all(|m| m.eigenspace_rank <= m.char_multiplicity);

    Ok(ChainReport {
        p: p.get(),
        t,
        eps,
        factors,
        total_multiplicity,
        total_bound,
        per_eps,
        multiplicity_uniform,
        pass,
    })
}

/// A torus of dimension `d` whose `p`-torsion rank reaches `floor(d / phi(t))`
/// for every prime `p` with `t | p - 1`.
///
/// `sigma` is block diagonal: `floor(d / phi(t))` companion blocks of `Phi_t`
/// followed by an identity block filling the remaining dimension.
pub fn sharp_construction(d: u64, t: u64) -> Result<GaloisTorusPresentation> {
    if d == 0 || t == 0 {
        return Err(Error::OutOfRange {
            what: if d == 0 { "d" } else { "t" },
            value: 0,
            range: ">= 1",
        });
    }
    let phi = totient(t);
    if phi > d {
        return Err(Error::NoWitness { d, t, phi });
    }
    let copies = d / phi;
    let companion = IntegerMatrix::companion(&cyclotomic_poly(t)?)?;
    let mut blocks = vec![companion; copies as usize];
    let rest = (d - copies * phi) as usize;
    if rest > 0 {
        blocks.push(IntegerMatrix::identity(rest));
    }
    GaloisTorusPresentation::new(IntegerMatrix::block_diagonal(&blocks)?, t)
}

/// The first `count` primes `p` with `t | p - 1`.
pub fn admissible_primes(t: u64, count: usize) -> Vec<PrimeModulus> {
    (2u64..)
        .filter(|&p| (p - 1) % t == 0)
        .filter_map(|p| PrimeModulus::new(p).ok())
        .take(count)
        .collect()
}
