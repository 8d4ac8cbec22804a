//! Seeded generation of finite-order integer matrices and unimodular basis
//! changes.

use crate::arith::totient;
use crate::cyclotomic::cyclotomic_poly;
use crate::error::Result;
use crate::intlinalg::IntegerMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

/// Largest cyclotomic index used for companion blocks.
pub const MAX_BLOCK_INDEX: u64 = 12;

/// Entries of the triangular factors of a random unimodular matrix lie in
/// `[-ENTRY_RANGE, ENTRY_RANGE]`.
pub const ENTRY_RANGE: i64 = 2;

/// A random unimodular `U = P * L * R` with its exact inverse.
///
/// `L` is unit lower triangular, `R` unit upper triangular (off-diagonal
/// entries in `[-2, 2]`) and `P` a signed permutation.
pub fn random_unimodular<R: Rng + ?Sized>(d: usize, rng: &mut R) -> (IntegerMatrix, IntegerMatrix) {
    let mut lower = IntegerMatrix::identity(d);
    let mut upper = IntegerMatrix::identity(d);
    for i in 0..d {
        for j in 0..i {
            lower[(i, j)] = BigInt::from(rng.random_range(-ENTRY_RANGE..=ENTRY_RANGE));
            upper[(j, i)] = BigInt::from(rng.random_range(-ENTRY_RANGE..=ENTRY_RANGE));
        }
    }
    let perm = random_signed_permutation(d, rng);
    let lower_inv = unit_lower_inverse(&lower);
    let upper_inv = unit_lower_inverse(&upper.transpose()).transpose();
    let perm_inv = perm.transpose();
    let u = &(&perm * &lower) * &upper;
    let u_inv = &(&upper_inv * &lower_inv) * &perm_inv;
    (u, u_inv)
}

fn unit_lower_inverse(l: &IntegerMatrix) -> IntegerMatrix {
    let d = l.dim();
    let mut inv = IntegerMatrix::identity(d);
    // forward substitution, column by column
    for c in 0..d {
        for i in c + 1..d {
            let mut acc = BigInt::zero();
            for k in c..i {
                acc += &l[(i, k)] * &inv[(k, c)];
            }
            inv[(i, c)] = -acc;
        }
    }
    inv
}

/// Permutation matrix with random signs.
pub fn random_signed_permutation<R: Rng + ?Sized>(d: usize, rng: &mut R) -> IntegerMatrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let mut m = IntegerMatrix::zero(d);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = BigInt::from(if rng.random_bool(0.5) { 1 } else { -1 });
    }
    m
}

/// A random block-diagonal matrix of finite order in a random lattice basis.
///
/// Blocks are companion matrices of `Phi_m` (`m <= 12`) or signed
/// permutations; the assembly is conjugated by [`random_unimodular`].
pub fn random_finite_order<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<IntegerMatrix> {
    let mut blocks = Vec::new();
    let mut remaining = d;
    while remaining > 0 {
        if rng.random_bool(0.5) {
            let choices: Vec<u64> = (1..=MAX_BLOCK_INDEX)
                .filter(|&m| totient(m) as usize <= remaining)
                .collect();
            let m = choices[rng.random_range(0..choices.len())];
            blocks.push(IntegerMatrix::companion(&cyclotomic_poly(m)?)?);
            remaining -= totient(m) as usize;
        } else {
            let k = rng.random_range(1..=remaining);
            blocks.push(random_signed_permutation(k, rng));
            remaining -= k;
        }
    }
    let block = IntegerMatrix::block_diagonal(&blocks)?;
    let (u, u_inv) = random_unimodular(d, rng);
    Ok(&(&u * &block) * &u_inv)
}
