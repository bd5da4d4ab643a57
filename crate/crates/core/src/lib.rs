//! Exact computations on hyperplane multiarrangements: derivation modules,
//! exponents, Euler multiplicities and inductive-freeness certificates.

pub mod algebra;
pub mod arrangement;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod euler;
pub mod induction;
pub mod oracle;

pub use algebra::{Derivation, Poly, Scalar};
pub use arrangement::{Arrangement, Flat, LinearForm, Multiarrangement, Multiplicity};
pub use error::{Error, Result};
pub use oracle::ExponentMultiset;
