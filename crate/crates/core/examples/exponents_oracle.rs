//! Exponents and a Saito basis of D(A, nu) straight from the graded oracle.

use multiarr::oracle::{oracle_exponents, verify_witness, OracleOutcome};
use multiarr::Multiarrangement;

fn main() -> multiarr::Result<()> {
    // (x1 - x2)^2 (x1 - x3)^2 (x2 - x3)^2, the doubled braid arrangement.
    let doubled: Multiarrangement =
        serde_json::from_str(r#"{"dim": 3, "forms": [[1,-1,0],[1,0,-1],[0,1,-1]], "mult": [2,2,2]}"#)?;
    // x y z (x + y + z): generic, not free.
    let generic = Multiarrangement::from_raw(
        3,
        &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        &[1, 1, 1, 1],
    )?;

    for m in [&doubled, &generic] {
        println!("{m}");
        match oracle_exponents(m, None)? {
            OracleOutcome::Free(w) => {
                println!("  free, exponents {}", w.exponents);
                for g in &w.generators {
                    println!("  {g}");
                }
                println!("  witness check: {:?}", verify_witness(m, &w));
            }
            OracleOutcome::NotFree(c) => println!("  not free (greedy degrees {:?})", c.degrees),
        }
    }
    Ok(())
}
