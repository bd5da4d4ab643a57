//! Hyperplanes, multiplicities, flats, localization and restriction.

mod flat;
mod form;
mod multi;
mod restrict;

pub use flat::{localization, rank2_flats, Flat};
pub use form::{canonicalize, LinearForm};
pub use multi::{defining_polynomial, Arrangement, Multiarrangement, Multiplicity};
pub use restrict::{essentialize, essentialize_with, restrict_simple, Completion, Essentialization, SimpleRestriction};
