//! Exact symbolic summation and integration via creative telescoping.
//!
//! The crate provides, over exact rational arithmetic:
//!
//! - rational-function integration (Ostrogradsky-Hermite reduction and the
//!   Rothstein-Trager logarithmic part),
//! - indefinite summation of polynomials and rational functions
//!   (falling factorials, Abramov reduction),
//! - hypergeometric summation (Gosper, Zeilberger, Sister Celine, WZ pairs),
//! - creative telescoping for bivariate rational integrands, residues and
//!   diagonals,
//! - univariate Ore operator arithmetic and D-finite closure properties,
//! - an independent verification layer that re-checks every telescoper
//!   against its certificate.
//!
//! Every algorithm is exact; no floating point is used anywhere. See the
//! `examples/` directory for one runnable example per capability.

pub mod celine;
pub mod ct;
pub mod error;
pub mod expr;
pub mod field;
pub mod hyper;
pub mod linalg;
pub mod modlinalg;
pub mod ore;
pub mod poly;
pub mod quot;
pub mod ratfun;
pub mod ratint;
pub mod ratsum;
pub mod series;
pub mod verify;
pub mod zarith;

pub use error::{Error, Result};
pub use field::{Field, Rat};
pub use poly::Poly;
pub use ratfun::RatFun;
