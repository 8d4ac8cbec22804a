//! Exact algebra for bounding `p`-elementary subgroups of algebraic tori and
//! of the plane Cremona group.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`] and [`poly`]: machine-word number theory and dense polynomials.
//! * [`cyclotomic`]: `Phi_n`, its reductions modulo `p`, and the root
//!   behavior of order-`t` residues.
//! * [`intlinalg`]: characteristic polynomials, finite order, Smith normal
//!   form and kernels modulo `p`.
//! * [`torus_rank`]: the bound `floor(d / phi(t))` on the rank of `T(k)[p]`
//!   from one Galois element, and tori attaining it.
//! * [`ff_oracle`]: exact group structure of `T(F_q)`, used as ground truth.
//! * [`cremona_table`]: the piecewise rank bound for `Cr_2(k)` as a function
//!   of `(p, t)`.
//! * [`weyl_audit`]: the `W(A_3)` computation ruling out rank 3 at `p = 3`,
//!   `t = 2`.
//! * [`presentation`]: the JSON file schema for tori.

pub mod arith;
pub mod cremona_table;
pub mod cyclotomic;
pub mod error;
pub mod ff_oracle;
pub mod intlinalg;
pub mod poly;
pub mod presentation;
pub mod random;
pub mod torus_rank;
pub mod weyl_audit;

pub use arith::PrimeModulus;
pub use cremona_table::{CremonaBound, FieldDescriptor};
pub use error::{Error, Result};
pub use ff_oracle::{AbelianGroupInvariants, FiniteFieldTorus};
pub use intlinalg::{CyclotomicFactorization, IntegerMatrix, SmithInvariants};
pub use poly::{IntegerPolynomial, ModularPolynomial};
pub use torus_rank::{GaloisTorusPresentation, RankCertificate};
pub use weyl_audit::WeylElement;
