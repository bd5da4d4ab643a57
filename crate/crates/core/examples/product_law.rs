//! Exponents of a product are the union of the factors' exponents.

use multiarr::arrangement::essentialize;
use multiarr::catalog::braid_constant;
use multiarr::induction::product_split;
use multiarr::oracle::free_exponents;
use multiarr::ExponentMultiset;

fn main() -> multiarr::Result<()> {
    // Two braid blocks on disjoint coordinates: (B_3, 2) on x1..x3, (B_2, 3) on x4, x5.
    let left = braid_constant(3, 2).embedded(&[0, 1, 2], 5);
    let mut m = left;
    for _ in 0..3 {
        m = m.with_added(&multiarr::LinearForm::braid(5, 3, 4))?;
    }
    let factors = product_split(&m);
    let mut union = ExponentMultiset::default();
    for f in &factors {
        let e = free_exponents(&f.multiarrangement)?.unwrap();
        println!("factor on {:?}: {}", f.coords, e);
        union = union.union(&e);
    }
    println!("union  {union}");
    println!("direct {}", free_exponents(&m)?.unwrap());

    // The braid arrangement itself is irreducible; its center contributes a 0.
    for (ell, mult) in [(3, 1), (4, 2)] {
        let b = braid_constant(ell, mult);
        let (ess, center) = essentialize(&b);
        println!(
            "B_{ell}, m={mult}: ambient {}, essential {} with center of dimension {center}",
            free_exponents(&b)?.unwrap(),
            free_exponents(&ess)?.unwrap()
        );
    }
    Ok(())
}
