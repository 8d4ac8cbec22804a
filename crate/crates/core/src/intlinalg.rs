//! Exact integer matrices: determinants, characteristic polynomials,
//! finite-order detection, Smith normal form and kernels modulo `p`.

use crate::arith::{lcm, totient, PrimeModulus};
use crate::cyclotomic::cyclotomic_poly;
use crate::error::{Error, Result};
use crate::poly::IntegerPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;

/// Largest dimension accepted by the matrix algorithms.
pub const MAX_DIMENSION: usize = 64;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_rows<R, T>(rows: &[R]) -> Result<Self>
    where
        R: AsRef<[T]>,
        T: Clone + Into<BigInt>,
    {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Shape("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntegerMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, BigInt::one())
    }

    pub fn zero(dim: usize) -> Self {
        IntegerMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn scalar(dim: usize, c: BigInt) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    /// Companion matrix of a monic polynomial of positive degree.
    ///
    /// Ones on the subdiagonal, negated low coefficients in the last column,
    /// so the characteristic polynomial is `poly` itself.
    pub fn companion(poly: &IntegerPolynomial) -> Result<Self> {
        if !poly.is_monic() || poly.degree() == 0 {
            return Err(Error::Shape(
                "companion needs a monic polynomial of positive degree".into(),
            ));
        }
        let d = poly.degree();
        let mut m = Self::zero(d);
        for i in 1..d {
            m.entries[i * d + i - 1] = BigInt::one();
        }
        for i in 0..d {
            m.entries[i * d + d - 1] = -poly.coeffs()[i].clone();
        }
        Ok(m)
    }

    /// Block-diagonal assembly.
    pub fn block_diagonal(blocks: &[IntegerMatrix]) -> Result<Self> {
        let dim: usize = blocks.iter().map(|b| b.dim).sum();
        if dim == 0 {
            return Err(Error::Shape("block diagonal of no blocks".into()));
        }
        let mut m = Self::zero(dim);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    m.entries[(off + i) * dim + off + j] = b[(i, j)].clone();
                }
            }
            off += b.dim;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim)
    }

    /// Entries as machine integers, when they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut m = Self::zero(d);
        for i in 0..d {
            for j in 0..d {
                m.entries[j * d + i] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntegerMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::identity(self.dim);
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

    fn check_cap(&self) -> Result<()> {
        if self.dim > MAX_DIMENSION {
            return Err(Error::OutOfRange {
                what: "dimension",
                value: self.dim as u64,
                range: "[1, 64]",
            });
        }
        Ok(())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        bareiss_det(self.entries.clone(), self.dim)
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.dim + j]
    }
}

impl std::ops::Mul for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn mul(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = IntegerMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.entries[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Sub for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn sub(self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        IntegerMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &IntegerMatrix {
    type Output = IntegerMatrix;
    fn neg(self) -> IntegerMatrix {
        IntegerMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn bareiss_det(mut a: Vec<BigInt>, n: usize) -> BigInt {
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    sign * &a[(n - 1) * n + n - 1]
}

/// `det(X*I - M)`, exact and monic of degree `d`.
///
/// The determinant is evaluated at `d + 1` integer points by Bareiss
/// elimination, then interpolated in Newton form. Divided differences of an
/// integer polynomial at consecutive integers are integers, so every division
/// is exact.
pub fn char_poly(m: &IntegerMatrix) -> Result<IntegerPolynomial> {
    m.check_cap()?;
    let d = m.dim;
    let values: Vec<BigInt> = (0..=d)
        .map(|x| {
            let shifted = &IntegerMatrix::scalar(d, BigInt::from(x)) - m;
            shifted.determinant()
        })
        .collect();
    // forward differences: coefficient c_k of the falling factorial basis
    let mut diff = values;
    let mut newton = Vec::with_capacity(d + 1);
    let mut factorial = BigInt::one();
    for k in 0..=d {
        if k > 0 {
            factorial *= k;
        }
        let (c, r) = diff[0].div_rem(&factorial);
        if !r.is_zero() {
            return Err(Error::InvariantViolation(
                "non-integral divided difference".into(),
            ));
        }
        newton.push(c);
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // sum_k c_k * X (X - 1) ... (X - k + 1), by Horner on the nested form
    let mut acc = IntegerPolynomial::zero();
    for k in (0..=d).rev() {
        let shift = IntegerPolynomial::from_i64s(&[-(k as i64), 1]);
        acc = &(&acc * &shift) + &IntegerPolynomial::monomial(newton[k].clone(), 0);
    }
    debug_assert!(acc.is_monic() && acc.degree() == d);
    Ok(acc)
}

/// Multiset of cyclotomic indices, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CyclotomicFactorization {
    indices: Vec<u64>,
}

impl CyclotomicFactorization {
    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    /// Sum of `phi(d_i)`, i.e. the degree of the factored polynomial.
    pub fn degree(&self) -> u64 {
        self.indices.iter().map(|&d| totient(d)).sum()
    }

    /// Least common multiple of the indices.
    pub fn lcm(&self) -> u64 {
        self.indices.iter().fold(1, |acc, &d| lcm(acc, d))
    }

    /// `prod Phi_{d_i}`.
    pub fn product(&self) -> Result<IntegerPolynomial> {
        let mut acc = IntegerPolynomial::one();
        for &d in &self.indices {
            acc = &acc * &cyclotomic_poly(d)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CyclotomicFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|d| format!("Phi_{d}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Writes a monic polynomial as a product of cyclotomic polynomials.
///
/// Candidates `d` are tried in ascending order up to `2 * deg^2 + 6`, which
/// covers every `d` with `phi(d) <= deg` since `phi(d) >= sqrt(d / 2)`. Each
/// candidate divides out as many times as it goes.
pub fn cyclotomic_factorization(f: &IntegerPolynomial) -> Result<CyclotomicFactorization> {
    if !f.is_monic() || f.degree() == 0 {
        return Err(Error::NotCyclotomicProduct);
    }
    let deg = f.degree() as u64;
    let bound = 2 * deg * deg + 6;
    let mut rest = f.clone();
    let mut indices = Vec::new();
    for d in 1..=bound {
        if rest.degree() == 0 {
            break;
        }
        if totient(d) > rest.degree() as u64 {
            continue;
        }
        let phi_d = cyclotomic_poly(d)?;
        while let Some(q) = rest.exact_div_monic(&phi_d) {
            rest = q;
            indices.push(d);
        }
    }
    if rest != IntegerPolynomial::one() {
        return Err(Error::NotCyclotomicProduct);
    }
    Ok(CyclotomicFactorization { indices })
}

/// Least `N >= 1` with `M^N = I`.
///
/// `N` is the lcm of the cyclotomic indices of the characteristic polynomial,
/// confirmed by explicit powering; a unipotent or otherwise non-semisimple
/// matrix fails the confirmation.
pub fn matrix_order(m: &IntegerMatrix) -> Result<u64> {
    let factors = cyclotomic_factorization(&char_poly(m)?).map_err(|e| match e {
        Error::NotCyclotomicProduct => Error::NotFiniteOrder,
        other => other,
    })?;
    let n = factors.lcm();
    if !m.pow(n).is_identity() {
        return Err(Error::NotFiniteOrder);
    }
    // M^N = I with N the lcm of orders of eigenvalues; any smaller period
    // would have to be shared by every eigenvalue, so N is minimal.
    Ok(n)
}

/// Invariant factors `s_1 | s_2 | ... | s_d` of the cokernel of a square
/// integer matrix; zeros come last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmithInvariants {
    invariants: Vec<BigInt>,
}

impl SmithInvariants {
    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    /// Number of invariants divisible by `p` (zeros included).
    pub fn count_divisible_by(&self, p: PrimeModulus) -> usize {
        let p = BigInt::from(p.get());
        self.invariants
            .iter()
            .filter(|s| s.is_multiple_of(&p))
            .count()
    }
}

/// Smith normal form by Euclidean reduction, pivoting on the entry of least
/// absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SmithInvariants> {
    m.check_cap()?;
    let n = m.dim;
    let mut a = m.clone();
    for k in 0..n {
        loop {
            // pivot: nonzero entry of least absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    if a[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Ok(finish_smith(a, n));
            };
            swap_rows(&mut a, k, pi);
            swap_cols(&mut a, k, pj);

            let mut dirty = false;
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = a[(i, k)].div_floor(&a[(k, k)]);
                for j in k..n {
                    let v = &q * &a[(k, j)];
                    a[(i, j)] -= v;
                }
                dirty |= !a[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = a[(k, j)].div_floor(&a[(k, k)]);
                for i in k..n {
                    let v = &q * &a[(i, k)];
                    a[(i, j)] -= v;
                }
                dirty |= !a[(k, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // row and column cleared; the pivot must divide the trailing block
            let pivot = a[(k, k)].clone();
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    for j in k..n {
                        let v = a[(i, j)].clone();
                        a[(k, j)] += v;
                    }
                }
                None => break,
            }
        }
    }
    Ok(finish_smith(a, n))
}

fn finish_smith(a: IntegerMatrix, n: usize) -> SmithInvariants {
    let mut invariants: Vec<BigInt> = (0..n).map(|i| a[(i, i)].abs()).collect();
    // nonzero pivots already form a divisibility chain; zeros trail
    invariants.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, true) => std::cmp::Ordering::Equal,
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        (false, false) => x.cmp(y),
    });
    SmithInvariants { invariants }
}

fn swap_rows(a: &mut IntegerMatrix, r: usize, s: usize) {
    if r != s {
        let d = a.dim;
        for j in 0..d {
            a.entries.swap(r * d + j, s * d + j);
        }
    }
}

fn swap_cols(a: &mut IntegerMatrix, c: usize, e: usize) {
    if c != e {
        let d = a.dim;
        for i in 0..d {
            a.entries.swap(i * d + c, i * d + e);
        }
    }
}

/// Rank of `M mod p`, by Gaussian elimination over `Z/p`.
pub fn rank_mod_p(m: &IntegerMatrix, p: PrimeModulus) -> Result<usize> {
    m.check_cap()?;
    let d = m.dim;
    let pb = BigInt::from(p.get());
    let mut a: Vec<u64> = m
        .entries
        .iter()
        .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    let mut rank = 0;
    for col in 0..d {
        let Some(piv) = (rank..d).find(|&r| a[r * d + col] != 0) else {
            continue;
        };
        for j in 0..d {
            a.swap(rank * d + j, piv * d + j);
        }
        let inv = p.inv(a[rank * d + col])?;
        for j in 0..d {
            a[rank * d + j] = p.mul(a[rank * d + j], inv);
        }
        for r in 0..d {
            if r != rank && a[r * d + col] != 0 {
                let f = a[r * d + col];
                for j in 0..d {
                    a[r * d + j] = p.sub(a[r * d + j], p.mul(f, a[rank * d + j]));
                }
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Dimension over `Z/p` of the null space of `M mod p`.
pub fn kernel_dim_mod_p(m: &IntegerMatrix, p: PrimeModulus) -> Result<usize> {
    Ok(m.dim - rank_mod_p(m, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    /// Laplace expansion along the first row.
    fn laplace_det(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 1 {
            return m[0][0] as i128;
        }
        (0..n)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] as i128 * laplace_det(&minor)
            })
            .sum()
    }

    fn gcd_i128(a: i128, b: i128) -> i128 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n)
            .flat_map(|last| {
                combinations(last, k - 1).into_iter().map(move |mut c| {
                    c.push(last);
                    c
                })
            })
            .collect()
    }

    /// Smith invariants from determinantal divisors: `s_k = D_k / D_{k-1}`
    /// where `D_k` is the gcd of all `k x k` minors.
    fn determinantal_invariants(m: &[Vec<i64>]) -> Vec<i128> {
        let n = m.len();
        let mut out = Vec::new();
        let mut prev = 1i128;
        for k in 1..=n {
            let mut g = 0i128;
            for rows in combinations(n, k) {
                for cols in combinations(n, k) {
                    let minor: Vec<Vec<i64>> = rows
                        .iter()
                        .map(|&r| cols.iter().map(|&c| m[r][c]).collect())
                        .collect();
                    g = gcd_i128(g, laplace_det(&minor));
                }
            }
            if g == 0 {
                out.extend(std::iter::repeat_n(0, n - k + 1));
                return out;
            }
            out.push(g / prev);
            prev = g;
        }
        out
    }

    /// `p^dim ker` by enumerating all of `(Z/p)^d`.
    fn brute_kernel_dim(m: &[Vec<i64>], p: u64) -> usize {
        let d = m.len();
        let total = (p as usize).pow(d as u32);
        let mut count = 0usize;
        for idx in 0..total {
            let mut v = vec![0i64; d];
            let mut x = idx;
            for slot in v.iter_mut() {
                *slot = (x % p as usize) as i64;
                x /= p as usize;
            }
            let zero = m.iter().all(|row| {
                row.iter()
                    .zip(&v)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    .rem_euclid(p as i64)
                    == 0
            });
            count += zero as usize;
        }
        let mut dim = 0;
        let mut c = count;
        while c > 1 {
            c /= p as usize;
            dim += 1;
        }
        dim
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            char_poly(&IntegerMatrix::identity(3)).unwrap(),
            IntegerPolynomial::from_i64s(&[-1, 3, -3, 1])
        );
        assert_eq!(
            char_poly(&mat(&[&[0, -1], &[1, 0]])).unwrap(),
            IntegerPolynomial::from_i64s(&[1, 0, 1])
        );
        assert_eq!(
            char_poly(&mat(&[&[2, 1], &[1, 1]])).unwrap(),
            IntegerPolynomial::from_i64s(&[1, -3, 1])
        );
    }

    #[test]
    fn char_poly_of_companion_is_the_polynomial() {
        for n in [1u64, 2, 3, 5, 7, 9, 12, 15, 20, 30] {
            let phi = cyclotomic_poly(n).unwrap();
            assert_eq!(
                char_poly(&IntegerMatrix::companion(&phi).unwrap()).unwrap(),
                phi
            );
        }
    }

    #[test]
    fn char_poly_rejects_oversized() {
        assert!(char_poly(&IntegerMatrix::identity(65)).is_err());
    }

    #[test]
    fn factorization_examples() {
        let f = IntegerPolynomial::from_i64s(&[-1, 3, -3, 1]);
        assert_eq!(cyclotomic_factorization(&f).unwrap().indices(), &[1, 1, 1]);
        let g = IntegerPolynomial::from_i64s(&[1, 1, 1, 1]);
        assert_eq!(cyclotomic_factorization(&g).unwrap().indices(), &[2, 4]);
        let h = IntegerPolynomial::from_i64s(&[1, -3, 1]);
        assert_eq!(
            cyclotomic_factorization(&h),
            Err(Error::NotCyclotomicProduct)
        );
        let c = IntegerPolynomial::from_i64s(&[2, 0, 1]);
        assert_eq!(
            cyclotomic_factorization(&c),
            Err(Error::NotCyclotomicProduct)
        );
    }

    #[test]
    fn factorization_round_trips_products() {
        let sets: &[&[u64]] = &[
            &[1, 2, 3, 4, 6],
            &[5, 10],
            &[7, 9, 14, 18],
            &[12, 12, 8],
            &[30, 1],
        ];
        for &set in sets {
            let f = CyclotomicFactorization {
                indices: set.to_vec(),
            };
            let mut sorted = set.to_vec();
            sorted.sort_unstable();
            let got = cyclotomic_factorization(&f.product().unwrap()).unwrap();
            assert_eq!(got.indices(), sorted.as_slice());
            assert_eq!(got.degree(), f.product().unwrap().degree() as u64);
        }
    }

    #[test]
    fn order_examples() {
        assert_eq!(matrix_order(&IntegerMatrix::identity(3)).unwrap(), 1);
        assert_eq!(matrix_order(&mat(&[&[0, -1], &[1, 0]])).unwrap(), 4);
        assert_eq!(
            matrix_order(&mat(&[&[1, 1], &[0, 1]])),
            Err(Error::NotFiniteOrder)
        );
        assert_eq!(
            matrix_order(&mat(&[&[2, 1], &[1, 1]])),
            Err(Error::NotFiniteOrder)
        );
        assert_eq!(matrix_order(&mat(&[&[-1]])).unwrap(), 2);
    }

    #[test]
    fn order_is_least_period() {
        let blocks = [
            IntegerMatrix::companion(&cyclotomic_poly(3).unwrap()).unwrap(),
            IntegerMatrix::companion(&cyclotomic_poly(4).unwrap()).unwrap(),
            mat(&[&[-1]]),
        ];
        let m = IntegerMatrix::block_diagonal(&blocks).unwrap();
        let n = matrix_order(&m).unwrap();
        assert_eq!(n, 12);
        for k in 1..n {
            assert!(!m.pow(k).is_identity());
        }
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            smith_normal_form(&mat(&[&[3]])).unwrap().invariants(),
            big(&[3])
        );
        assert_eq!(
            smith_normal_form(&mat(&[&[2, 0], &[0, 3]]))
                .unwrap()
                .invariants(),
            big(&[1, 6])
        );
        assert_eq!(
            smith_normal_form(&mat(&[&[-1, 2], &[2, -1]]))
                .unwrap()
                .invariants(),
            big(&[1, 3])
        );
        assert_eq!(
            smith_normal_form(&IntegerMatrix::zero(2))
                .unwrap()
                .invariants(),
            big(&[0, 0])
        );
        assert_eq!(
            smith_normal_form(&mat(&[&[2, 4], &[4, 8]]))
                .unwrap()
                .invariants(),
            big(&[2, 0])
        );
    }

    #[test]
    fn kernel_examples() {
        for pv in [2u64, 3, 5, 7] {
            assert_eq!(kernel_dim_mod_p(&IntegerMatrix::zero(2), p(pv)).unwrap(), 2);
            assert_eq!(
                kernel_dim_mod_p(&IntegerMatrix::identity(3), p(pv)).unwrap(),
                0
            );
        }
        assert_eq!(
            kernel_dim_mod_p(&mat(&[&[-1, 2], &[2, -1]]), p(3)).unwrap(),
            1
        );
    }

    fn small_matrix(max_dim: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max_dim).prop_flat_map(move |d| {
            proptest::collection::vec(proptest::collection::vec(-range..=range, d), d)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn char_poly_constant_term_is_signed_det(rows in small_matrix(5, 6)) {
            let m = IntegerMatrix::from_rows(&rows).unwrap();
            let f = char_poly(&m).unwrap();
            let d = rows.len();
            let det = laplace_det(&rows);
            let signed = if d % 2 == 0 { det } else { -det };
            prop_assert_eq!(f.eval(&BigInt::zero()), BigInt::from(signed));
            prop_assert_eq!(m.determinant(), BigInt::from(det));
            prop_assert!(f.is_monic());
            prop_assert_eq!(f.degree(), d);
        }

        #[test]
        fn smith_matches_determinantal_divisors(rows in small_matrix(4, 5)) {
            let m = IntegerMatrix::from_rows(&rows).unwrap();
            let got: Vec<BigInt> = smith_normal_form(&m).unwrap().invariants().to_vec();
            let expected: Vec<BigInt> = determinantal_invariants(&rows).into_iter().map(BigInt::from).collect();
            prop_assert_eq!(got, expected);
        }

        #[test]
        fn smith_p_count_equals_kernel_dim(rows in small_matrix(6, 9), pi in 0usize..5) {
            let pm = p([2u64, 3, 5, 7, 11][pi]);
            let m = IntegerMatrix::from_rows(&rows).unwrap();
            let snf = smith_normal_form(&m).unwrap();
            let chain = snf.invariants();
            for w in chain.windows(2) {
                prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
            }
            prop_assert_eq!(snf.count_divisible_by(pm), kernel_dim_mod_p(&m, pm).unwrap());
        }

        #[test]
        fn kernel_dim_matches_enumeration(rows in small_matrix(3, 4), pi in 0usize..3) {
            let pv = [2u64, 3, 5][pi];
            let m = IntegerMatrix::from_rows(&rows).unwrap();
            prop_assert_eq!(kernel_dim_mod_p(&m, p(pv)).unwrap(), brute_kernel_dim(&rows, pv));
        }
    }
}
