use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{canonicalize, Arrangement, LinearForm, Multiarrangement};
use crate::algebra::linalg::solve_combination;
use crate::algebra::{Echelon, Scalar};
use crate::error::{Error, Result};

/// The restriction `A^{H0}` together with the hyperplanes lying over each image.
#[derive(Clone, Debug)]
pub struct SimpleRestriction {
    /// Arrangement on `H0` in the coordinates listed in `coords`.
    pub arrangement: Arrangement,
    /// For each restricted hyperplane, the original hyperplanes (other than `H0`) through it.
    pub preimages: Vec<Vec<usize>>,
    /// Original coordinate index of each coordinate on `H0`.
    pub coords: Vec<usize>,
    /// The coordinate solved for on `H0`.
    pub eliminated: usize,
}

/// Restricts to `H0`, parametrized by every coordinate except the last one
/// on which `alpha_0` is nonzero.
pub fn restrict_simple(a: &Arrangement, h0: usize) -> Result<SimpleRestriction> {
    if h0 >= a.len() {
        return Err(Error::InvalidHyperplane {
            index: h0,
            len: a.len(),
        });
    }
    let alpha = a.forms()[h0].coeffs();
    let s = alpha.iter().rposition(|&c| c != 0).unwrap();
    let coords: Vec<usize> = (0..a.dim()).filter(|&i| i != s).collect();
    let mut forms: Vec<LinearForm> = Vec::new();
    let mut preimages: Vec<Vec<usize>> = Vec::new();
    for (k, beta) in a.forms().iter().enumerate() {
        if k == h0 {
            continue;
        }
        let b = beta.coeffs();
        let raw: Vec<i64> = coords.iter().map(|&i| alpha[s] * b[i] - b[s] * alpha[i]).collect();
        let image = canonicalize(&raw)?;
        match forms.iter().position(|f| *f == image) {
            Some(j) => preimages[j].push(k),
            None => {
                forms.push(image);
                preimages.push(vec![k]);
            }
        }
    }
    Ok(SimpleRestriction {
        arrangement: Arrangement::new(a.dim() - 1, forms)?,
        preimages,
        coords,
        eliminated: s,
    })
}

/// Order in which forms are scanned when completing a coordinate basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    Forward,
    Reverse,
}

#[derive(Clone, Debug)]
pub struct Essentialization {
    pub multiarrangement: Multiarrangement,
    pub center_dim: usize,
    /// The forms used as new coordinates, in order.
    pub basis: Vec<LinearForm>,
}

/// Quotient by the center. Returns the essential multiarrangement and the
/// dimension of the center.
pub fn essentialize(m: &Multiarrangement) -> (Multiarrangement, usize) {
    let e = essentialize_with(m, None, Completion::Forward);
    (e.multiarrangement, e.center_dim)
}

/// Essentializes using forms of `m` as coordinates, starting with `leading`
/// (which then becomes the first coordinate) and completing greedily.
pub fn essentialize_with(
    m: &Multiarrangement,
    leading: Option<&LinearForm>,
    completion: Completion,
) -> Essentialization {
    let m = m.normalized();
    let dim = m.dim();
    let mut order: Vec<&LinearForm> = m.forms().iter().collect();
    if completion == Completion::Reverse {
        order.reverse();
    }
    let mut ech = Echelon::new(dim);
    let mut basis = Vec::new();
    for f in leading.into_iter().chain(order) {
        if ech.insert(f.to_scalars()) {
            basis.push(f.clone());
        }
    }
    let rows: Vec<Vec<Scalar>> = basis.iter().map(LinearForm::to_scalars).collect();
    let pairs = m
        .iter()
        .map(|(f, mult)| {
            let c = solve_combination(&rows, &f.to_scalars()).expect("form outside its own span");
            (integral_form(&c), mult)
        })
        .collect();
    Essentialization {
        multiarrangement: Multiarrangement::from_pairs(basis.len(), pairs).unwrap(),
        center_dim: dim - basis.len(),
        basis,
    }
}

/// Clears denominators of a rational vector and canonicalizes.
pub(crate) fn integral_form(c: &[Scalar]) -> LinearForm {
    let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let raw: Vec<i64> = c
        .iter()
        .map(|x| (x.numer() * (&lcm / x.denom())).to_i64().expect("coefficient overflow"))
        .collect();
    canonicalize(&raw).unwrap()
}
