//! Rank bound for `p`-elementary subgroups of the plane Cremona group over a
//! perfect field, as a function of `p` and `t = [k(zeta_p) : k]`.

use crate::arith::{lcm, multiplicative_order, prime_power, totient, PrimeModulus};
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// A perfect field, described just well enough to compute `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "parameter", rename_all = "snake_case")]
pub enum FieldDescriptor {
    FiniteField(u64),
    Rationals,
    /// `Q(zeta_m)`.
    CyclotomicExtension(u64),
    AlgebraicallyClosed,
}

impl FieldDescriptor {
    /// Characteristic, 0 for the characteristic-zero variants.
    pub fn characteristic(&self) -> Result<u64> {
        match *self {
            FieldDescriptor::FiniteField(q) => prime_power(q)
                .map(|(ell, _)| ell)
                .ok_or(Error::NotPrimePower { value: q }),
            FieldDescriptor::CyclotomicExtension(0) => Err(Error::OutOfRange {
                what: "m",
                value: 0,
                range: "m >= 1",
            }),
            _ => Ok(0),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::FiniteField(q) => write!(f, "F_{q}"),
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::CyclotomicExtension(m) => write!(f, "Q(zeta_{m})"),
            FieldDescriptor::AlgebraicallyClosed => write!(f, "algebraically closed"),
        }
    }
}

/// `t = [k(zeta_p) : k]`.
pub fn t_for_field(k: FieldDescriptor, p: PrimeModulus) -> Result<u64> {
    let pv = p.get();
    if k.characteristic()? == pv {
        let q = match k {
            FieldDescriptor::FiniteField(q) => q,
            _ => unreachable!("only finite fields have positive characteristic"),
        };
        return Err(Error::ExcludedCharacteristic { p: pv, q });
    }
    Ok(match k {
        FieldDescriptor::FiniteField(q) => multiplicative_order(q as i64, p)?,
        FieldDescriptor::Rationals => pv - 1,
        FieldDescriptor::CyclotomicExtension(m) => totient(lcm(m, pv)) / totient(m),
        FieldDescriptor::AlgebraicallyClosed => 1,
    })
}

/// The surface or torus realizing the bound for a `(p, t)` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttainingExample {
    /// `(Z/2)^4` acting on `P^1 x P^1`.
    ProductOfLines,
    /// `(Z/3)^3` acting on the Fermat cubic surface.
    FermatCubic,
    /// Rank-2 subgroup of a rational 2-dimensional torus.
    TwoDimensionalTorus,
    /// Rank-1 subgroup for `t` in `{3, 4, 6}`.
    RankOneTorus,
    /// Bound is 0.
    None,
}

impl AttainingExample {
    /// Stable identifier.
    pub fn description(&self) -> &'static str {
        match self {
            AttainingExample::ProductOfLines => "(Z/2)⁴ on P¹×P¹",
            AttainingExample::FermatCubic => "Fermat cubic surface, rank 3",
            AttainingExample::TwoDimensionalTorus => "rank-2 torus witness, t ≤ 2",
            AttainingExample::RankOneTorus => "rank-1 torus witness, t ∈ {3,4,6}",
            AttainingExample::None => "none",
        }
    }
}

impl fmt::Display for AttainingExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CremonaBound {
    pub p: u64,
    pub t: u64,
    pub rank_bound: u64,
    pub attained_by: AttainingExample,
}

fn check_pair(p: PrimeModulus, t: u64) -> Result<()> {
    if t == 0 || !(p.get() - 1).is_multiple_of(t) {
        return Err(Error::CharacterOrder { t, p: p.get() });
    }
    Ok(())
}

/// Maximal rank of a `p`-elementary subgroup of `Cr_2(k)` when
/// `[k(zeta_p) : k] = t`.
///
/// Pairs with `t` not dividing `p - 1` are rejected: no field realizes them.
pub fn cremona_rank_bound(p: PrimeModulus, t: u64) -> Result<CremonaBound> {
    check_pair(p, t)?;
    let rank_bound = match (p.get(), t) {
        (2, _) => 4,
        (3, 1) => 3,
        (3, 2) => 2,
        (_, 1 | 2) => 2,
        (_, 3 | 4 | 6) => 1,
        _ => 0,
    };
    Ok(CremonaBound {
        p: p.get(),
        t,
        rank_bound,
        attained_by: attaining_example(p, t)?,
    })
}

/// Which construction attains [`cremona_rank_bound`] at `(p, t)`.
pub fn attaining_example(p: PrimeModulus, t: u64) -> Result<AttainingExample> {
    check_pair(p, t)?;
    Ok(match (p.get(), t) {
        (2, _) => AttainingExample::ProductOfLines,
        (3, 1) => AttainingExample::FermatCubic,
        (_, 1 | 2) => AttainingExample::TwoDimensionalTorus,
        (_, 3 | 4 | 6) => AttainingExample::RankOneTorus,
        _ => AttainingExample::None,
    })
}

/// Every valid `(p, t)` row for one prime, `t` ascending.
pub fn table_for_prime(p: PrimeModulus) -> Vec<CremonaBound> {
    crate::arith::divisors(p.get() - 1)
        .into_iter()
        .map(|t| cremona_rank_bound(p, t).expect("t divides p - 1"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus_rank::theorem_bound;

    fn p(n: u64) -> PrimeModulus {
        PrimeModulus::new(n).unwrap()
    }

    fn primes_upto(n: u64) -> Vec<PrimeModulus> {
        (2..=n).filter_map(|k| PrimeModulus::new(k).ok()).collect()
    }

    #[test]
    fn table_cases() {
        let cases = [
            (2, 1, 4),
            (3, 1, 3),
            (3, 2, 2),
            (5, 1, 2),
            (5, 2, 2),
            (7, 3, 1),
            (13, 4, 1),
            (7, 6, 1),
            (11, 5, 0),
        ];
        for (pv, t, expected) in cases {
            assert_eq!(
                cremona_rank_bound(p(pv), t).unwrap().rank_bound,
                expected,
                "p={pv} t={t}"
            );
        }
    }

    #[test]
    fn rejects_unrealizable_pairs() {
        assert_eq!(
            cremona_rank_bound(p(2), 2),
            Err(Error::CharacterOrder { t: 2, p: 2 })
        );
        assert!(cremona_rank_bound(p(7), 4).is_err());
        assert!(cremona_rank_bound(p(7), 0).is_err());
        assert!(attaining_example(p(5), 3).is_err());
    }

    #[test]
    fn attaining_examples() {
        assert_eq!(
            attaining_example(p(3), 1).unwrap().description(),
            "Fermat cubic surface, rank 3"
        );
        assert_eq!(
            attaining_example(p(2), 1).unwrap().description(),
            "(Z/2)⁴ on P¹×P¹"
        );
        assert_eq!(
            attaining_example(p(13), 4).unwrap().description(),
            "rank-1 torus witness, t ∈ {3,4,6}"
        );
        assert_eq!(attaining_example(p(11), 5).unwrap(), AttainingExample::None);
        assert_eq!(
            attaining_example(p(3), 2).unwrap(),
            AttainingExample::TwoDimensionalTorus
        );
    }

    #[test]
    fn t_for_field_examples() {
        assert_eq!(t_for_field(FieldDescriptor::Rationals, p(5)).unwrap(), 4);
        assert_eq!(
            t_for_field(FieldDescriptor::CyclotomicExtension(3), p(3)).unwrap(),
            1
        );
        assert_eq!(
            t_for_field(FieldDescriptor::FiniteField(4), p(3)).unwrap(),
            1
        );
        assert_eq!(
            t_for_field(FieldDescriptor::AlgebraicallyClosed, p(7)).unwrap(),
            1
        );
        assert_eq!(
            t_for_field(FieldDescriptor::CyclotomicExtension(4), p(5)).unwrap(),
            4
        );
        assert_eq!(
            t_for_field(FieldDescriptor::CyclotomicExtension(10), p(5)).unwrap(),
            1
        );
        assert_eq!(
            t_for_field(FieldDescriptor::CyclotomicExtension(3), p(2)).unwrap(),
            1
        );
        assert_eq!(
            t_for_field(FieldDescriptor::FiniteField(9), p(3)),
            Err(Error::ExcludedCharacteristic { p: 3, q: 9 })
        );
        assert!(t_for_field(FieldDescriptor::FiniteField(10), p(3)).is_err());
        assert!(t_for_field(FieldDescriptor::CyclotomicExtension(0), p(3)).is_err());
    }

    #[test]
    fn t_divides_p_minus_one_everywhere() {
        for pm in primes_upto(50) {
            let mut fields = vec![
                FieldDescriptor::Rationals,
                FieldDescriptor::AlgebraicallyClosed,
            ];
            fields.extend((1..=30).map(FieldDescriptor::CyclotomicExtension));
            fields
                .extend([2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49].map(FieldDescriptor::FiniteField));
            for k in fields {
                match t_for_field(k, pm) {
                    Ok(t) => assert_eq!((pm.get() - 1) % t, 0, "{k} p={pm}"),
                    Err(Error::ExcludedCharacteristic { .. }) => {}
                    Err(e) => panic!("{k} p={pm}: {e}"),
                }
            }
        }
    }

    #[test]
    fn torus_witness_fits_inside_cremona_bound() {
        for pm in primes_upto(200) {
            for t in [1u64, 2] {
                if let Ok(b) = cremona_rank_bound(pm, t) {
                    assert!(b.rank_bound >= theorem_bound(2, t));
                }
            }
        }
    }

    #[test]
    fn zero_exactly_outside_small_orders() {
        for pm in primes_upto(400) {
            for row in table_for_prime(pm) {
                assert_eq!(
                    row.rank_bound == 0,
                    ![1, 2, 3, 4, 6].contains(&row.t),
                    "{row:?}"
                );
            }
        }
    }

    /// Non-increasing in `t` fails once `t = 5` precedes `t = 6`, e.g. at
    /// `p = 31`. Ordering by `(phi(t), t)` gives a monotone table.
    #[test]
    fn monotone_in_phi_then_t() {
        let p31 = table_for_prime(p(31));
        let t5 = p31.iter().find(|r| r.t == 5).unwrap();
        let t6 = p31.iter().find(|r| r.t == 6).unwrap();
        assert!(t5.rank_bound < t6.rank_bound);

        for pm in primes_upto(400) {
            let mut rows = table_for_prime(pm);
            rows.sort_by_key(|r| (totient(r.t), r.t));
            for w in rows.windows(2) {
                assert!(
                    w[0].rank_bound >= w[1].rank_bound,
                    "{:?} then {:?}",
                    w[0],
                    w[1]
                );
            }
        }
    }
}
