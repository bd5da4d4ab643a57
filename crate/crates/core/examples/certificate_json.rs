//! Certificates serialize to JSON and are re-checked from scratch on load.

use multiarr::catalog::braid_mixed;
use multiarr::induction::{search, verify, InductionCertificate, SearchConfig};

fn main() -> multiarr::Result<()> {
    let cert = search(&braid_mixed(3, 1, 1), &SearchConfig::default())?.unwrap();
    let text = cert.to_json()?;
    println!("{} bytes, {} certificates in the tree", text.len(), cert.size());

    let loaded = InductionCertificate::from_json(&text)?;
    println!("reloaded: {}", verify(&loaded)?);

    let mut forged = loaded.clone();
    forged.steps[1].euler_data[0].value += 1;
    println!("forged: {}", verify(&forged).unwrap_err());
    Ok(())
}
