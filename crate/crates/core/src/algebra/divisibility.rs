//! Divisibility by a power of a linear form as linear conditions.
//!
//! For `alpha` with last nonzero coefficient at index `s`, the coordinates
//! `y_i = x_i` (`i != s`) and `y_s = alpha(x)` form a basis of the dual space.
//! In those coordinates `alpha^m | g` exactly when no monomial of `g` has
//! `y_s`-exponent below `m`.

use std::collections::HashMap;

use super::poly::monomials_of_degree;
use super::{Monomial, Poly, Scalar};
use crate::error::{Error, Result};

/// Linear functionals on the coefficient space of degree-`degree` polynomials
/// whose common kernel is `{ g : alpha^m | g }`.
#[derive(Clone, Debug)]
pub struct DivisibilityConditions {
    /// Column order: the coefficient of `monomials[j]` is coordinate `j`.
    pub monomials: Vec<Monomial>,
    pub rows: Vec<Vec<Scalar>>,
}

/// Change of coordinates sending `alpha` to a coordinate.
#[derive(Clone, Debug)]
pub struct TransversalCoordinates {
    dim: usize,
    slot: usize,
    /// `x_slot` written in the new coordinates.
    replacement: Poly,
    powers: Vec<Poly>,
}

impl TransversalCoordinates {
    pub fn new(alpha: &[i64]) -> Result<Self> {
        let dim = alpha.len();
        let slot = alpha.iter().rposition(|&c| c != 0).ok_or(Error::ZeroForm)?;
        // x_s = (y_s - sum_{i != s} alpha_i y_i) / alpha_s
        let inv = Scalar::new(1, alpha[slot]);
        let mut coeffs = vec![Scalar::zero(); dim];
        for (i, &a) in alpha.iter().enumerate() {
            coeffs[i] = if i == slot {
                inv.clone()
            } else {
                -(&Scalar::from(a) * &inv)
            };
        }
        let replacement = Poly::linear_rational(&coeffs);
        Ok(TransversalCoordinates {
            dim,
            slot,
            powers: vec![Poly::one(dim)],
            replacement,
        })
    }

    /// Index of the coordinate that carries `alpha`.
    pub fn slot(&self) -> usize {
        self.slot
    }

    fn power(&mut self, k: u32) -> &Poly {
        while self.powers.len() <= k as usize {
            let next = self.powers.last().unwrap() * &self.replacement;
            self.powers.push(next);
        }
        &self.powers[k as usize]
    }

    /// Rewrites `g` in the new coordinates.
    pub fn transform(&mut self, g: &Poly) -> Poly {
        assert_eq!(g.dim(), self.dim);
        let mut out = Poly::zero(self.dim);
        for (m, c) in g.terms() {
            let e = m.exponent(self.slot);
            let mut rest = m.exponents().to_vec();
            rest[self.slot] = 0;
            let rest = Monomial::new(rest);
            let pw = self.power(e).clone();
            for (pm, pc) in pw.terms() {
                out.add_term(pm.mul(&rest), c * pc);
            }
        }
        out
    }
}

pub fn divisibility_conditions(degree: u32, alpha: &[i64], m: u32) -> Result<DivisibilityConditions> {
    let dim = alpha.len();
    let mut coords = TransversalCoordinates::new(alpha)?;
    let slot = coords.slot();
    let monomials = monomials_of_degree(dim, degree);
    if m == 0 {
        return Ok(DivisibilityConditions {
            monomials,
            rows: Vec::new(),
        });
    }
    let cond_monos: Vec<Monomial> = monomials
        .iter()
        .filter(|mono| mono.exponent(slot) < m)
        .cloned()
        .collect();
    let row_of: HashMap<Monomial, usize> = cond_monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = vec![vec![Scalar::zero(); monomials.len()]; cond_monos.len()];
    for (col, mono) in monomials.iter().enumerate() {
        let image = coords.transform(&Poly::monomial(mono.clone(), Scalar::one()));
        for (ym, c) in image.terms() {
            if let Some(&r) = row_of.get(ym) {
                rows[r][col] = c.clone();
            }
        }
    }
    Ok(DivisibilityConditions { monomials, rows })
}

/// Whether `alpha^m` divides `g`.
pub fn divides_power(alpha: &[i64], m: u32, g: &Poly) -> Result<bool> {
    if alpha.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.len(),
            found: g.dim(),
        });
    }
    let mut coords = TransversalCoordinates::new(alpha)?;
    let slot = coords.slot();
    Ok(coords.transform(g).terms().all(|(mono, _)| mono.exponent(slot) >= m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linalg::kernel;
    use crate::algebra::poly::count_monomials;

    #[test]
    fn single_condition_in_degree_one() {
        let c = divisibility_conditions(1, &[1, -1], 1).unwrap();
        assert_eq!(c.rows.len(), 1);
        let k = kernel(&c.rows, c.monomials.len());
        assert_eq!(k.len(), 1);
        let g = Poly::from_dense(2, &c.monomials, &k[0]);
        assert!(divides_power(&[1, -1], 1, &g).unwrap());
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn zero_power_gives_no_conditions() {
        let c = divisibility_conditions(3, &[1, 2, -1], 0).unwrap();
        assert!(c.rows.is_empty());
        assert_eq!(c.monomials.len(), 10);
    }

    #[test]
    fn binary_quadratics_divisible_by_square() {
        // Brute force: g = a x1^2 + b x1 x2 + c x2^2 is divisible by (x1 - x2)^2
        // iff g(1,1) = 0 and dg/dx1(1,1) = 0, i.e. a+b+c = 0 and 2a+b = 0,
        // a one-dimensional solution space spanned by (1,-2,1).
        let c = divisibility_conditions(2, &[1, -1], 2).unwrap();
        let k = kernel(&c.rows, c.monomials.len());
        assert_eq!(k.len(), 1);
        let g = Poly::from_dense(2, &c.monomials, &k[0]);
        let target = Poly::linear(&[1, -1]).pow(2);
        let lead = g.leading_term().unwrap().1.clone();
        assert_eq!(g.scale(&lead.recip()), target);
    }

    #[test]
    fn power_above_degree_forces_zero() {
        let c = divisibility_conditions(2, &[1, 1, 0], 3).unwrap();
        assert!(kernel(&c.rows, c.monomials.len()).is_empty());
    }

    #[test]
    fn kernel_dimension_matches_quotient_degree() {
        let forms: [&[i64]; 5] = [&[1, -1], &[2, 3, -1], &[0, 1, -1], &[1, 0, 0, -1], &[3, -2, 0, 5]];
        for alpha in forms {
            let dim = alpha.len();
            for deg in 0..=5u32 {
                for m in 0..=deg {
                    let c = divisibility_conditions(deg, alpha, m).unwrap();
                    let k = kernel(&c.rows, c.monomials.len());
                    assert_eq!(
                        k.len(),
                        count_monomials(dim, deg - m),
                        "alpha={alpha:?} deg={deg} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn zero_form_is_rejected() {
        assert!(matches!(divisibility_conditions(2, &[0, 0], 1), Err(Error::ZeroForm)));
    }
}
