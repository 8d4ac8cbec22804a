//! The Weyl group of `PGL_4` acting on the cocharacter lattice of its maximal
//! torus, and the audit showing that no element can make `-1` a triple root of
//! the reduced characteristic polynomial at `p = 3`.
//!
//! The lattice is `Z^4 / Z(1,1,1,1)` with basis the images of `e_0, e_1, e_2`;
//! `e_3` maps to `-(e_0 + e_1 + e_2)`. `S_4` permutes coordinates.

use crate::arith::PrimeModulus;
use crate::error::Result;
use crate::intlinalg::{char_poly, cyclotomic_factorization, matrix_order, IntegerMatrix};
use crate::poly::IntegerPolynomial;
use num_bigint::BigInt;
use serde::Serialize;
use std::fmt;

/// Coordinates permuted by the Weyl group.
pub const RANK: usize = 4;

/// Degrees of the basic invariants of `W(A_3)`.
pub const INVARIANT_DEGREES: [u64; 3] = [2, 3, 4];

/// A permutation of `{0, 1, 2, 3}` in one-line notation: `i -> images[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: [usize; RANK],
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation {
            images: [0, 1, 2, 3],
        }
    }

    /// `None` unless `images` is a bijection of `{0, 1, 2, 3}`.
    pub fn new(images: [usize; RANK]) -> Option<Self> {
        let mut seen = [false; RANK];
        for &i in &images {
            if i >= RANK || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// Product of disjoint or overlapping cycles, applied right to left.
    pub fn from_cycles(cycles: &[&[usize]]) -> Option<Self> {
        let mut acc = Self::identity();
        for cycle in cycles.iter().rev() {
            let mut images = [0, 1, 2, 3];
            for (k, &a) in cycle.iter().enumerate() {
                if a >= RANK {
                    return None;
                }
                images[a] = cycle[(k + 1) % cycle.len()];
            }
            acc = Self::new(images)?.compose(&acc);
        }
        Some(acc)
    }

    pub fn images(&self) -> [usize; RANK] {
        self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.map(|i| self.images[i]),
        }
    }

    pub fn order(&self) -> u64 {
        let mut p = *self;
        let mut n = 1;
        while p != Self::identity() {
            p = self.compose(&p);
            n += 1;
        }
        n
    }

    /// All 24 permutations in lexicographic one-line order.
    pub fn all() -> Vec<Permutation> {
        let mut out = Vec::with_capacity(24);
        for a in 0..RANK {
            for b in 0..RANK {
                for c in 0..RANK {
                    for d in 0..RANK {
                        if let Some(p) = Self::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = [false; RANK];
        let mut wrote = false;
        for start in 0..RANK {
            if seen[start] || self.images[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{i}")?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A Weyl group element with its action on the rank-3 cocharacter lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub permutation: Permutation,
    pub matrix: IntegerMatrix,
}

impl WeylElement {
    pub fn new(permutation: Permutation) -> Self {
        WeylElement {
            permutation,
            matrix: quotient_action(&permutation),
        }
    }
}

/// Image of `e_i` in the quotient basis.
fn quotient_image(i: usize) -> [i64; RANK - 1] {
    match i {
        3 => [-1, -1, -1],
        _ => {
            let mut v = [0; RANK - 1];
            v[i] = 1;
            v
        }
    }
}

/// Column `j` is the image of `e_{pi(j)}` in the quotient basis.
fn quotient_action(perm: &Permutation) -> IntegerMatrix {
    let mut m = IntegerMatrix::zero(RANK - 1);
    for j in 0..RANK - 1 {
        let col = quotient_image(perm.images[j]);
        for (i, &v) in col.iter().enumerate() {
            m[(i, j)] = BigInt::from(v);
        }
    }
    m
}

/// `proj * P * incl`, with `P` the 4x4 permutation matrix, `incl` the
/// inclusion of `e_0, e_1, e_2` and `proj` the quotient map. Also returns
/// whether `P` preserves the diagonal line, i.e. descends to the quotient.
fn projected_action(perm: &Permutation) -> (Vec<Vec<i64>>, bool) {
    let mut pm = [[0i64; RANK]; RANK];
    for j in 0..RANK {
        pm[perm.images[j]][j] = 1;
    }
    let proj: Vec<[i64; RANK - 1]> = (0..RANK).map(quotient_image).collect();
    let apply = |v: [i64; RANK]| -> [i64; RANK - 1] {
        let mut w = [0i64; RANK];
        for (r, row) in pm.iter().enumerate() {
            w[r] = row.iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        let mut out = [0i64; RANK - 1];
        for (k, &c) in w.iter().enumerate() {
            for i in 0..RANK - 1 {
                out[i] += c * proj[k][i];
            }
        }
        out
    };
    let mut m = vec![vec![0i64; RANK - 1]; RANK - 1];
    for j in 0..RANK - 1 {
        let mut e = [0i64; RANK];
        e[j] = 1;
        let col = apply(e);
        for i in 0..RANK - 1 {
            m[i][j] = col[i];
        }
    }
    let descends = apply([1, 1, 1, 1]) == [0, 0, 0];
    (m, descends)
}

/// All 24 elements in lexicographic permutation order.
pub fn enumerate_weyl() -> Vec<WeylElement> {
    Permutation::all()
        .into_iter()
        .map(WeylElement::new)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementAudit {
    pub permutation: String,
    pub one_line: [usize; RANK],
    pub order: u64,
    pub matrix: Vec<Vec<i64>>,
    pub char_poly: String,
    pub indices: Vec<u64>,
    pub is_minus_identity: bool,
    pub char_poly_is_minus_one_cubed: bool,
    pub minus_one_multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylAuditReport {
    pub p: u64,
    pub element_count: usize,
    /// Matrices agree with the projection of the coordinate permutation.
    pub quotient_action_ok: bool,
    /// Matrix of a composition is the product of matrices, all 576 pairs.
    pub homomorphism_ok: bool,
    /// Matrix order equals permutation order for every element.
    pub orders_ok: bool,
    /// Every cyclotomic index lies in `{1, 2, 3, 4}`.
    pub indices_within_range: bool,
    /// Every index is 1 or divides one of the invariant degrees.
    pub indices_divide_degrees: bool,
    pub contains_minus_identity: bool,
    pub contains_minus_one_cubed: bool,
    pub max_minus_one_multiplicity: u64,
    pub elements: Vec<ElementAudit>,
    pub pass: bool,
}

/// Largest multiplicity of `-1` the audit accepts.
pub const MAX_ALLOWED_MULTIPLICITY: u64 = 2;

/// Audits all of `W(A_3)` at the prime `p`.
///
/// Passes when there are 24 elements, no element acts as `-I`, none has
/// characteristic polynomial `(X + 1)^3`, all cyclotomic indices lie in
/// `{1, 2, 3, 4}`, and `-1 mod p` is a root of multiplicity at most 2 of every
/// reduced characteristic polynomial. The last condition is what fails for a
/// hypothetical rank-3 subgroup at `p = 3`, `t = 2`.
pub fn audit_pgl4(p: PrimeModulus) -> Result<WeylAuditReport> {
    let elements = enumerate_weyl();
    let minus_one = p.reduce(-1);
    let minus_identity = -&IntegerMatrix::identity(RANK - 1);
    let minus_one_cubed = IntegerPolynomial::from_i64s(&[1, 3, 3, 1]);

    let mut audits = Vec::with_capacity(elements.len());
    let mut quotient_action_ok = true;
    let mut orders_ok = true;
    for el in &elements {
        let (projected, descends) = projected_action(&el.permutation);
        let rows = el.matrix.to_i64_rows().expect("small entries");
        quotient_action_ok &= descends && projected == rows;

        let f = char_poly(&el.matrix)?;
        let factors = cyclotomic_factorization(&f)?;
        let order = matrix_order(&el.matrix)?;
        orders_ok &= order == el.permutation.order();
        audits.push(ElementAudit {
            permutation: el.permutation.to_string(),
            one_line: el.permutation.images(),
            order,
            matrix: rows,
            char_poly: f.to_string(),
            indices: factors.indices().to_vec(),
            is_minus_identity: el.matrix == minus_identity,
            char_poly_is_minus_one_cubed: f == minus_one_cubed,
            minus_one_multiplicity: f.reduce_mod(p).root_multiplicity(minus_one)?,
        });
    }

    let homomorphism_ok = elements.iter().all(|a| {
        elements.iter().all(|b| {
            let composed = quotient_action(&a.permutation.compose(&b.permutation));
            composed == &a.matrix * &b.matrix
        })
    });
    let indices_within_range = audits
        .iter()
        .all(|a| a.indices.iter().all(|d| (1..=4).contains(d)));
    let indices_divide_degrees = audits.iter().all(|a| {
        a.indices
            .iter()
            .all(|&d| d == 1 || INVARIANT_DEGREES.iter().any(|deg| deg % d == 0))
    });
    let contains_minus_identity = audits.iter().any(|a| a.is_minus_identity);
    let contains_minus_one_cubed = audits.iter().any(|a| a.char_poly_is_minus_one_cubed);
    let max_minus_one_multiplicity = audits
        .iter()
        .map(|a| a.minus_one_multiplicity)
        .max()
        .unwrap_or(0);

    let pass = elements.len() == 24
        && quotient_action_ok
        && homomorphism_ok
        && orders_ok
        && indices_within_range
        && indices_divide_degrees
        && !contains_minus_identity
        && !contains_minus_one_cubed
        && max_minus_one_multiplicity <= MAX_ALLOWED_MULTIPLICITY;

    Ok(WeylAuditReport {
        p: p.get(),
        element_count: elements.len(),
        quotient_action_ok,
        homomorphism_ok,
        orders_ok,
        indices_within_range,
        indices_divide_degrees,
        contains_minus_identity,
        contains_minus_one_cubed,
        max_minus_one_multiplicity,
        elements: audits,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three() -> PrimeModulus {
        PrimeModulus::new(3).unwrap()
    }

    fn element(cycles: &[&[usize]]) -> WeylElement {
        WeylElement::new(Permutation::from_cycles(cycles).unwrap())
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all = enumerate_weyl();
        assert_eq!(all.len(), 24);
        assert_eq!(all[0].permutation, Permutation::identity());
        assert_eq!(all[23].permutation.images(), [3, 2, 1, 0]);
        assert!(all.windows(2).all(|w| w[0].permutation < w[1].permutation));
    }

    #[test]
    fn identity_acts_trivially() {
        assert_eq!(element(&[]).matrix, IntegerMatrix::identity(3));
    }

    #[test]
    fn transposition_char_poly() {
        let f = char_poly(&element(&[&[0, 1]]).matrix).unwrap();
        // (X - 1)^2 (X + 1)
        assert_eq!(f, IntegerPolynomial::from_i64s(&[1, -1, -1, 1]));
    }

    #[test]
    fn four_cycle_char_poly() {
        let f = char_poly(&element(&[&[0, 1, 2, 3]]).matrix).unwrap();
        assert_eq!(f, IntegerPolynomial::from_i64s(&[1, 1, 1, 1]));
    }

    #[test]
    fn cycle_notation_round_trips() {
        for p in Permutation::all() {
            let cycles: Vec<Vec<usize>> = p
                .to_string()
                .split(')')
                .filter(|s| s.len() > 1)
                .map(|s| {
                    s.trim_start_matches('(')
                        .split(' ')
                        .map(|x| x.parse().unwrap())
                        .collect()
                })
                .collect();
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            assert_eq!(Permutation::from_cycles(&refs).unwrap(), p);
        }
        assert_eq!(Permutation::identity().to_string(), "()");
        assert_eq!(
            Permutation::from_cycles(&[&[0, 1], &[2, 3]])
                .unwrap()
                .to_string(),
            "(0 1)(2 3)"
        );
    }

    #[test]
    fn audit_passes_at_three() {
        let r = audit_pgl4(three()).unwrap();
        assert!(r.pass);
        assert_eq!(r.element_count, 24);
        assert!(r.homomorphism_ok && r.quotient_action_ok && r.orders_ok);
        assert!(!r.contains_minus_identity && !r.contains_minus_one_cubed);
        assert_eq!(r.max_minus_one_multiplicity, 2);
    }

    #[test]
    fn per_element_multiplicities() {
        let r = audit_pgl4(three()).unwrap();
        let find = |s: &str| r.elements.iter().find(|e| e.permutation == s).unwrap();
        assert_eq!(find("(0 1)(2 3)").minus_one_multiplicity, 2);
        assert_eq!(find("(0 1)(2 3)").indices, vec![1, 2, 2]);
        assert_eq!(find("(0 1 2)").minus_one_multiplicity, 0);
        assert_eq!(find("(0 1 2)").indices, vec![1, 3]);
        // multiplicity 2 is reached only by the three double transpositions
        let maximal: Vec<&str> = r
            .elements
            .iter()
            .filter(|e| e.minus_one_multiplicity == 2)
            .map(|e| e.permutation.as_str())
            .collect();
        assert_eq!(maximal, vec!["(0 1)(2 3)", "(0 2)(1 3)", "(0 3)(1 2)"]);
    }

    #[test]
    fn rejects_bad_permutations() {
        assert!(Permutation::new([0, 0, 1, 2]).is_none());
        assert!(Permutation::new([0, 1, 2, 4]).is_none());
        assert!(Permutation::from_cycles(&[&[0, 5]]).is_none());
    }
}
