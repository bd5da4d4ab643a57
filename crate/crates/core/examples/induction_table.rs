//! The induction table for the braid arrangement in three variables with
//! constant multiplicity, following the catalog addition order.

use multiarr::catalog::{braid_constant, expected_exponents_constant};
use multiarr::induction::{emit_table, search, verify, SearchConfig, TableFormat};

fn main() -> multiarr::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let cert =
        search(&braid_constant(3, m), &SearchConfig::default())?.expect("braid arrangements are inductively free");
    let exps = verify(&cert)?;
    print!("{}", emit_table(&cert, TableFormat::Markdown)?);
    println!();
    println!(
        "verified exponents {exps}, expected {{0}} + {}",
        expected_exponents_constant(3, m)
    );
    Ok(())
}
