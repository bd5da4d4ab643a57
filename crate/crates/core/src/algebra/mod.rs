//! Exact rational scalars, sparse polynomials, derivations and the linear
//! algebra kernels the rest of the crate is built on.

pub mod derivation;
pub mod divisibility;
pub mod linalg;
pub mod poly;
mod scalar;

pub use derivation::{apply_derivation, Derivation};
pub use divisibility::{divides_power, divisibility_conditions, DivisibilityConditions};
pub use linalg::{kernel, Echelon};
pub use poly::{monomials_of_degree, poly_arith, Monomial, Poly, PolyOp};
pub use scalar::{ParseScalarError, Scalar};
