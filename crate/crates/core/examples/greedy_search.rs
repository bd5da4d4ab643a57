//! Certificate search without a known addition order.

use multiarr::induction::{search, verify, SearchConfig, Strategy};
use multiarr::oracle::free_exponents;
use multiarr::Multiarrangement;

fn main() -> multiarr::Result<()> {
    // x, y, z, x - y, y - z, x - z (the cone over A_3 minus its center) with uneven weights,
    // and the generic arrangement x, y, z, x + y + z.
    let candidates = [
        Multiarrangement::from_raw(
            3,
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![1, -1, 0],
                vec![0, 1, -1],
                vec![1, 0, -1],
            ],
            &[2, 1, 1, 1, 1, 2],
        )?,
        Multiarrangement::from_raw(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
            &[1, 1, 1, 1],
        )?,
    ];
    for m in &candidates {
        report(m)?;
    }
    Ok(())
}

fn report(m: &Multiarrangement) -> multiarr::Result<()> {
    println!("{m}");
    for strategy in [Strategy::Greedy, Strategy::Exhaustive] {
        match search(m, &SearchConfig::new(strategy))? {
            Some(cert) => println!("{strategy}: {} steps, exponents {}", cert.steps.len(), verify(&cert)?),
            None => println!("{strategy}: no certificate"),
        }
    }
    println!("oracle: {:?}", free_exponents(m)?.map(|e| e.to_string()));
    Ok(())
}
