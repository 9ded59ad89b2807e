//! Exact computations with lattices in `K((t))ⁿ`.
//!
//! Scalars are rational functions in `t` over a base field `F` ([`Rational`]
//! or a prime field [`Fp`]), carried with their `t`-adic valuation. On top of
//! them sit canonical lattices, the coweight distance, determinantal
//! valuations `f^t_{i_1…i_k}`, and searches for a lattice `P` at which the star
//! expression `Σ f_{i_j, n−i_j}(L_j, P) − (k−1) f_n(P)` attains them.
//!
//! Everything is generic over the base field; the aliases below fix it.

pub mod apartment;
pub mod closecase;
pub mod detval;
pub mod error;
pub mod field;
pub mod flow;
pub mod harness;
pub mod hungarian;
pub mod io;
pub mod konig;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod metric;
pub mod random;
pub mod scalar;
pub mod subspace;

pub use apartment::{Apartment, ApartmentPoint};
pub use detval::{multi_f, star_cost, IndexVector};
pub use error::{Error, Result};
pub use field::{Field, Fp, Rational};
pub use harness::{verify_star, ConjectureReport, HarnessOptions, Status, Strategy};
pub use lattice::Lattice;
pub use laurent::LaurentPoly;
pub use metric::{binary_f, distance, DominantCoweight};
pub use scalar::{Valuation, ValuedScalar};
pub use subspace::Subspace;

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;

pub type QScalar = ValuedScalar<Rational>;
pub type QLattice = Lattice<Rational>;
pub type QSubspace = Subspace<Rational>;

pub type F2Scalar = ValuedScalar<F2>;
pub type F2Lattice = Lattice<F2>;
pub type F2Subspace = Subspace<F2>;
