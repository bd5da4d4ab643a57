//! Inductive-freeness certificates: construction, verification and tables.

mod certificate;
mod product;
mod search;
mod table;
mod verify;

pub use certificate::{BaseCase, InductionCertificate, InductionStep, ProductFactor};
pub use product::{product_split, Factor};
pub use search::{
    default_budget, perm_canonical, search, Engine, Plan, PlanBase, SearchConfig, Strategy, BUDGET_ENV, DEFAULT_BUDGET,
};
pub use table::{emit_table, table_rows, TableFormat};
pub use verify::{verify, VerifyError};
