//! Mixed multiplicities: weight m + q on the forms through x1, m elsewhere.

use multiarr::catalog::{run_catalog, CatalogEntry};
use multiarr::induction::SearchConfig;

fn main() -> multiarr::Result<()> {
    let config = SearchConfig::default();
    for ell in 3..=4 {
        for (m, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let report = run_catalog(&CatalogEntry::mixed(ell, m, q), &config)?;
            let computed = report.computed.as_ref().map(|e| e.to_string()).unwrap_or_default();
            println!(
                "{:<14} expected {:<12} computed {:<12} {}",
                report.entry.to_string(),
                report.expected.to_string(),
                computed,
                if report.passed() { "PASS" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
