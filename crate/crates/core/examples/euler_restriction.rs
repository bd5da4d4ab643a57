//! Deletion and restriction to a hyperplane, with the local data behind every
//! Euler multiplicity and a cross-check of the closed-form rules.

use multiarr::arrangement::rank2_flats;
use multiarr::catalog::braid_constant;
use multiarr::euler::{euler_general, euler_multiplicity, triple, EulerMode};
use multiarr::LinearForm;

fn main() -> multiarr::Result<()> {
    let m = braid_constant(4, 2).with_added(&LinearForm::braid(4, 0, 1))?;
    let h0 = m.index_of(&LinearForm::braid(4, 0, 1)).unwrap();
    let t = triple(&m, h0)?;
    println!("A   = {}", t.original);
    println!("A'  = {}", t.deleted);
    println!("A'' = {}", t.restricted.multiarrangement);
    for p in t.restricted.provenance() {
        println!(
            "  {} <- {:?}: k={} nu0={} nu1={} |nu_X|={} nu*={} ({})",
            p.hyperplane, p.flat, p.euler.k, p.euler.nu0, p.euler.nu1, p.euler.order, p.euler.value, p.euler.path
        );
    }

    for y in rank2_flats(m.arrangement())
        .iter()
        .filter(|y| y.contains_hyperplane(h0))
    {
        let fast = euler_multiplicity(&m, h0, y, EulerMode::Auto)?;
        let general = euler_general(&m, h0, y)?;
        assert_eq!(fast.value, general);
    }
    println!("closed-form rules agree with the general computation");
    Ok(())
}
