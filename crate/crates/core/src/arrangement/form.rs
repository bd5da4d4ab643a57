use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Scalar};
use crate::error::{Error, Result};

/// Integer linear form with coprime entries whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LinearForm(Vec<i64>);

/// Divides out the gcd and fixes the sign so the first nonzero entry is positive.
pub fn canonicalize(raw: &[i64]) -> Result<LinearForm> {
    let g = raw.iter().fold(0i64, |g, &c| g.gcd(&c));
    if g == 0 {
        return Err(Error::ZeroForm);
    }
    let first = raw.iter().copied().find(|&c| c != 0).unwrap();
    let g = if first < 0 { -g } else { g };
    Ok(LinearForm(raw.iter().map(|&c| c / g).collect()))
}

impl LinearForm {
    pub fn new(raw: &[i64]) -> Result<Self> {
        canonicalize(raw)
    }

    /// `x_{i+1} - x_{j+1}` in `dim` variables.
    pub fn braid(dim: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i < dim && j < dim);
        let mut c = vec![0; dim];
        c[i] = 1;
        c[j] = -1;
        canonicalize(&c).unwrap()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.0)
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.0.iter().map(|&c| Scalar::from(c)).collect()
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.0
            .iter()
            .zip(point)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, x)| &Scalar::from(c) * x)
            .sum()
    }

    /// Moves coordinate `i` to coordinate `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LinearForm {
        let mut c = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            c[perm[i]] = v;
        }
        canonicalize(&c).unwrap()
    }

    /// Places the form in a larger space, coordinate `i` going to `coords[i]`.
    pub fn embedded(&self, coords: &[usize], dim: usize) -> LinearForm {
        let mut c = vec![0; dim];
        for (i, &v) in self.0.iter().enumerate() {
            c[coords[i]] = v;
        }
        LinearForm(c)
    }

    /// Restricts the form to the given coordinates (others must be zero).
    pub fn project(&self, coords: &[usize]) -> Option<LinearForm> {
        let inside: usize = coords.iter().filter(|&&i| self.0[i] != 0).count();
        if inside != self.support().count() {
            return None;
        }
        Some(LinearForm(coords.iter().map(|&i| self.0[i]).collect()))
    }

    /// For a form `x_a - x_b` returns `(a, b)` with `a < b`.
    pub fn braid_pair(&self) -> Option<(usize, usize)> {
        let nz: Vec<(usize, i64)> = self.0.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
        match nz.as_slice() {
            [(a, 1), (b, -1)] => Some((*a, *b)),
            _ => None,
        }
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(d)?;
        canonicalize(&raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let abs = c.unsigned_abs();
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            if abs != 1 {
                write!(f, "{abs}")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize(&[-2, 2, 0]).unwrap().coeffs(), &[1, -1, 0]);
        assert_eq!(canonicalize(&[0, 3, -3]).unwrap().coeffs(), &[0, 1, -1]);
        assert_eq!(canonicalize(&[1, -1, 0]).unwrap().coeffs(), &[1, -1, 0]);
        assert!(matches!(canonicalize(&[0, 0]), Err(Error::ZeroForm)));
    }

    #[test]
    fn display() {
        assert_eq!(LinearForm::braid(3, 0, 1).to_string(), "x1 - x2");
        assert_eq!(canonicalize(&[2, 0, -3]).unwrap().to_string(), "2x1 - 3x3");
        assert_eq!(LinearForm::braid(4, 3, 1).to_string(), "x2 - x4");
    }

    #[test]
    fn braid_pairs() {
        assert_eq!(LinearForm::braid(4, 2, 0).braid_pair(), Some((0, 2)));
        assert_eq!(canonicalize(&[1, 1, 0]).unwrap().braid_pair(), None);
    }

    proptest! {
        #[test]
        fn canonicalization_is_idempotent_and_scale_invariant(
            v in prop::collection::vec(-20i64..20, 1..6),
            c in prop_oneof![-7i64..-1, 1i64..7],
        ) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let f = canonicalize(&v).unwrap();
            prop_assert_eq!(canonicalize(f.coeffs()).unwrap(), f.clone());
            let scaled: Vec<i64> = v.iter().map(|x| x * c).collect();
            prop_assert_eq!(canonicalize(&scaled).unwrap(), f);
        }
    }
}
