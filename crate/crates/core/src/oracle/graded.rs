use serde::{Deserialize, Serialize};

use crate::algebra::{divisibility_conditions, monomials_of_degree, Derivation, Echelon, Poly, Scalar};
use crate::arrangement::Multiarrangement;

/// Basis of the degree-`degree` part of `D(A, nu)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub degree: u32,
    pub basis: Vec<Derivation>,
}

impl GradedPiece {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Solves the membership conditions on `l`-tuples of degree-`p` polynomials.
pub fn graded_dimension(m: &Multiarrangement, p: u32) -> (usize, GradedPiece) {
    let dim = m.dim();
    let monomials = monomials_of_degree(dim, p);
    let n = monomials.len();
    // Unknown (i, j) is the coefficient of monomials[j] in the i-th component.
    let mut ech = Echelon::new(dim * n);
    for (form, mult) in m.iter().filter(|(_, v)| *v > 0) {
        let alpha = form.coeffs();
        let cond = divisibility_conditions(p, alpha, mult).expect("canonical forms are nonzero");
        for row in &cond.rows {
            let mut stacked = vec![Scalar::zero(); dim * n];
            for (i, &a) in alpha.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = Scalar::from(a);
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        stacked[i * n + j] = &a * c;
                    }
                }
            }
            ech.insert(stacked);
        }
    }
    let basis: Vec<Derivation> = ech
        .kernel()
        .into_iter()
        .map(|v| {
            let coeffs = (0..dim)
                .map(|i| Poly::from_dense(dim, &monomials, &v[i * n..(i + 1) * n]))
                .collect();
            Derivation::new(coeffs).unwrap()
        })
        .collect();
    (basis.len(), GradedPiece { degree: p, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{apply_derivation, divides_power};
    use crate::catalog::braid_constant;

    #[test]
    fn empty_arrangement_in_degree_zero() {
        for dim in 1..=4 {
            assert_eq!(graded_dimension(&Multiarrangement::empty(dim), 0).0, dim);
        }
    }

    #[test]
    fn single_hyperplane_degree_zero() {
        let m = Multiarrangement::from_raw(2, &[vec![1, -1]], &[3]).unwrap();
        let (d, piece) = graded_dimension(&m, 0);
        assert_eq!(d, 1);
        let theta = &piece.basis[0];
        // Hand solution: constant (a, b) with a - b = 0, so D1 + D2.
        assert_eq!(theta.coeffs()[0], theta.coeffs()[1]);
        assert!(!theta.is_zero());
    }

    #[test]
    fn braid_three_degree_one() {
        // Degree one in three variables: the Euler derivation plus x_k(D1 + D2 + D3)
        // for each k. After splitting off the center only the Euler derivation remains.
        let m = braid_constant(3, 1);
        assert_eq!(graded_dimension(&m, 1).0, 4);
        let (ess, _) = crate::arrangement::essentialize(&m);
        assert_eq!(graded_dimension(&ess, 1).0, 1);
    }

    #[test]
    fn three_lines_profile() {
        let m = Multiarrangement::from_raw(2, &[vec![1, 0], vec![0, 1], vec![1, -1]], &[2, 1, 1]).unwrap();
        let dims: Vec<usize> = (0..=4).map(|p| graded_dimension(&m, p).0).collect();
        assert_eq!(dims, vec![0, 0, 2, 4, 6]);
    }

    #[test]
    fn basis_elements_satisfy_membership() {
        let m = braid_constant(3, 2);
        for p in 0..=4 {
            let (_, piece) = graded_dimension(&m, p);
            for theta in &piece.basis {
                assert_eq!(theta.pdeg(), Some(p));
                for (f, v) in m.iter() {
                    let g = apply_derivation(theta, &f.to_poly()).unwrap();
                    assert!(divides_power(f.coeffs(), v, &g).unwrap());
                }
            }
        }
    }
}
