use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Poly, Scalar};
use crate::error::{Error, Result};

/// A derivation `sum f_i D_i` of the polynomial ring, `D_i = d/dx_i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Derivation {
    coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(coeffs: Vec<Poly>) -> Result<Self> {
        let dim = coeffs.len();
        if let Some(p) = coeffs.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(Derivation { coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        Derivation {
            coeffs: vec![Poly::zero(dim); dim],
        }
    }

    /// The coordinate derivation `D_{i+1}`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut d = Derivation::zero(dim);
        d.coeffs[i] = Poly::one(dim);
        d
    }

    /// The Euler derivation `sum x_i D_i`.
    pub fn euler(dim: usize) -> Self {
        Derivation {
            coeffs: (0..dim).map(|i| Poly::var(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Polynomial degree if every nonzero coefficient is homogeneous of one common degree.
    pub fn pdeg(&self) -> Option<u32> {
        let mut deg = None;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() {
                return None;
            }
            let d = c.degree()?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.pdeg().is_some()
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        assert_eq!(self.dim(), other.dim());
        Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly) -> Derivation {
        Derivation {
            coeffs: self.coeffs.iter().map(|p| p * f).collect(),
        }
    }

    /// Evaluates every coefficient at a point.
    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.coeffs.iter().map(|p| p.eval(point)).collect()
    }
}

/// `theta(f) = sum f_i * df/dx_i`.
pub fn apply_derivation(theta: &Derivation, f: &Poly) -> Result<Poly> {
    if theta.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: theta.dim(),
            found: f.dim(),
        });
    }
    let mut out = Poly::zero(f.dim());
    for (i, c) in theta.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = f.derivative(i);
        if !d.is_zero() {
            out = &out + &(c * &d);
        }
    }
    Ok(out)
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*D{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_examples() {
        let x1 = Poly::var(2, 0);
        let theta = Derivation::new(vec![x1.clone(), Poly::zero(2)]).unwrap();
        let f = Poly::linear(&[1, -1]);
        assert_eq!(apply_derivation(&theta, &f).unwrap(), x1);

        let sq = f.pow(2);
        let theta = Derivation::new(vec![sq.clone(), Poly::zero(2)]).unwrap();
        assert_eq!(apply_derivation(&theta, &f).unwrap(), sq);
    }

    #[test]
    fn diagonal_direction_kills_braid_forms() {
        let dim = 4;
        let all_ones = Derivation::new(vec![Poly::one(dim); dim]).unwrap();
        for i in 0..dim {
            for j in i + 1..dim {
                let mut c = vec![0; dim];
                c[i] = 1;
                c[j] = -1;
                assert!(apply_derivation(&all_ones, &Poly::linear(&c)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn pdeg_and_dimension_errors() {
        assert_eq!(Derivation::euler(3).pdeg(), Some(1));
        assert_eq!(Derivation::coordinate(3, 1).pdeg(), Some(0));
        let mixed = Derivation::new(vec![Poly::var(2, 0), Poly::one(2)]).unwrap();
        assert_eq!(mixed.pdeg(), None);
        assert!(Derivation::new(vec![Poly::one(2), Poly::one(3)]).is_err());
        assert!(apply_derivation(&Derivation::euler(2), &Poly::one(3)).is_err());
    }
}
