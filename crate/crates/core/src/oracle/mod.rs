//! Freeness and exponents straight from the graded pieces of `D(A, nu)`.

mod exponents;
mod graded;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use exponents::ExponentMultiset;
pub use graded::{graded_dimension, GradedPiece};

use crate::algebra::linalg::poly_determinant;
use crate::algebra::{apply_derivation, divides_power, Derivation, Echelon, Scalar};
use crate::arrangement::{essentialize, Multiarrangement};
use crate::error::{Error, Result};

/// A homogeneous basis of `D(A, nu)` with its Saito constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessWitness {
    pub generators: Vec<Derivation>,
    pub exponents: ExponentMultiset,
    /// `det = saito_constant * Q(A, nu)`.
    pub saito_constant: Scalar,
}

/// Degrees picked by the greedy selection; their sum exceeds `|nu|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NotFreeCertificate {
    pub degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleOutcome {
    Free(FreenessWitness),
    NotFree(NotFreeCertificate),
}

impl OracleOutcome {
    pub fn exponents(&self) -> Option<&ExponentMultiset> {
        match self {
            OracleOutcome::Free(w) => Some(&w.exponents),
            OracleOutcome::NotFree(_) => None,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, OracleOutcome::Free(_))
    }
}

const PRIMES: [i64; 24] = [
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
    227,
];

/// Deterministic evaluation points with pairwise distinct, sign-varying coordinates.
fn evaluation_points(dim: usize) -> Vec<Vec<Scalar>> {
    (0..3)
        .map(|j| {
            (0..dim)
                .map(|i| {
                    let p = PRIMES[(7 * j + 5 * i) % PRIMES.len()] * (i as i64 + 1);
                    Scalar::from(if (i + j) % 2 == 0 { p } else { -p })
                })
                .collect()
        })
        .collect()
}

/// Greedy ascending-degree basis search for `D(A, nu)`.
///
/// `degree_cap` defaults to `|nu|`.
pub fn oracle_exponents(m: &Multiarrangement, degree_cap: Option<u32>) -> Result<OracleOutcome> {
    let m = m.normalized();
    let dim = m.dim();
    let order = m.order();
    let cap = degree_cap.unwrap_or(order);
    let points = evaluation_points(dim);
    let mut evals: Vec<Echelon> = points.iter().map(|_| Echelon::new(dim)).collect();
    let mut selected: Vec<Derivation> = Vec::new();
    let mut degrees = Vec::new();
    let mut p = 0;
    while selected.len() < dim {
        if p > cap {
            return Err(Error::DegreeCapExhausted { cap, needed: dim });
        }
        let (_, piece) = graded_dimension(&m, p);
        for theta in piece.basis {
            if selected.len() == dim {
                break;
            }
            let k = selected.len();
            let independent = points.iter().zip(&evals).any(|(pt, e)| {
                let mut e = e.clone();
                e.insert(theta.eval(pt));
                e.rank() == k + 1
            });
            if independent {
                for (pt, e) in points.iter().zip(evals.iter_mut()) {
                    e.insert(theta.eval(pt));
                }
                selected.push(theta);
                degrees.push(p);
            }
        }
        p += 1;
    }
    let total: u32 = degrees.iter().sum();
    if total > order {
        return Ok(OracleOutcome::NotFree(NotFreeCertificate { degrees }));
    }
    if total < order {
        return Err(Error::Inconsistent(format!(
            "independent derivations of total degree {total} below |nu| = {order}"
        )));
    }
    let saito_constant = saito_constant(&m, &selected)?;
    Ok(OracleOutcome::Free(FreenessWitness {
        generators: selected,
        exponents: ExponentMultiset::new(degrees),
        saito_constant,
    }))
}

/// `c` with `det(generators) = c * Q(A, nu)`.
fn saito_constant(m: &Multiarrangement, generators: &[Derivation]) -> Result<Scalar> {
    let dim = m.dim();
    let rows: Vec<Vec<_>> = generators.iter().map(|g| g.coeffs().to_vec()).collect();
    let det = poly_determinant(&rows, dim);
    let q = m.defining_polynomial();
    let Some((qm, qc)) = q.leading_term() else {
        return Err(Error::Inconsistent("defining polynomial vanished".into()));
    };
    let c = &det.coeff(qm) / qc;
    if c.is_zero() || det != q.scale(&c) {
        return Err(Error::Inconsistent("determinant is not a nonzero multiple of Q".into()));
    }
    Ok(c)
}

/// Exponents of `m`, computed on its essentialization and padded with the center's zeros.
/// `None` when the oracle certifies non-freeness.
pub fn free_exponents(m: &Multiarrangement) -> Result<Option<ExponentMultiset>> {
    let (ess, z) = essentialize(m);
    Ok(oracle_exponents(&ess, None)?.exponents().map(|e| e.padded(z)))
}

/// Why a witness was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessFailure {
    WrongCount { expected: usize, found: usize },
    DimensionMismatch,
    NotHomogeneous { generator: usize },
    ExponentsDisagree,
    NotInModule { generator: usize, hyperplane: usize },
    DegreeSum { sum: u32, order: u32 },
    DeterminantZero,
    NotMultipleOfQ,
}

impl fmt::Display for WitnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessFailure::WrongCount { expected, found } => {
                write!(f, "expected {expected} generators, found {found}")
            }
            WitnessFailure::DimensionMismatch => f.write_str("generator dimension mismatch"),
            WitnessFailure::NotHomogeneous { generator } => write!(f, "generator {generator} not homogeneous"),
            WitnessFailure::ExponentsDisagree => f.write_str("exponents disagree with generator degrees"),
            WitnessFailure::NotInModule { generator, hyperplane } => {
                write!(f, "generator {generator} fails divisibility at hyperplane {hyperplane}")
            }
            WitnessFailure::DegreeSum { sum, order } => write!(f, "degree sum {sum} differs from |nu| = {order}"),
            WitnessFailure::DeterminantZero => f.write_str("determinant zero"),
            WitnessFailure::NotMultipleOfQ => f.write_str("determinant is not a constant multiple of Q"),
        }
    }
}

/// Re-checks membership, the degree sum and `det = c * Q` exactly.
pub fn verify_witness(m: &Multiarrangement, w: &FreenessWitness) -> Result<(), WitnessFailure> {
    let dim = m.dim();
    if w.generators.len() != dim {
        return Err(WitnessFailure::WrongCount {
            expected: dim,
            found: w.generators.len(),
        });
    }
    let mut degrees = Vec::new();
    for (gi, g) in w.generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(WitnessFailure::DimensionMismatch);
        }
        let Some(d) = g.pdeg() else {
            if g.is_zero() {
                return Err(WitnessFailure::DeterminantZero);
            }
            return Err(WitnessFailure::NotHomogeneous { generator: gi });
        };
        degrees.push(d);
        for (hi, (f, v)) in m.iter().enumerate() {
            let image = apply_derivation(g, &f.to_poly()).map_err(|_| WitnessFailure::DimensionMismatch)?;
            if !divides_power(f.coeffs(), v, &image).map_err(|_| WitnessFailure::DimensionMismatch)? {
                return Err(WitnessFailure::NotInModule {
                    generator: gi,
                    hyperplane: hi,
                });
            }
        }
    }
    if ExponentMultiset::new(degrees.clone()) != w.exponents {
        return Err(WitnessFailure::ExponentsDisagree);
    }
    let sum: u32 = degrees.iter().sum();
    if sum != m.order() {
        return Err(WitnessFailure::DegreeSum { sum, order: m.order() });
    }
    let rows: Vec<Vec<_>> = w.generators.iter().map(|g| g.coeffs().to_vec()).collect();
    let det = poly_determinant(&rows, dim);
    if det.is_zero() {
        return Err(WitnessFailure::DeterminantZero);
    }
    let q = m.defining_polynomial();
    let (qm, qc) = q.leading_term().expect("Q is nonzero");
    let c = &det.coeff(qm) / qc;
    if c.is_zero() || det != q.scale(&c) {
        return Err(WitnessFailure::NotMultipleOfQ);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::braid_constant;

    fn exps(m: &Multiarrangement) -> ExponentMultiset {
        oracle_exponents(m, None).unwrap().exponents().unwrap().clone()
    }

    #[test]
    fn single_hyperplane_in_one_variable() {
        let m = Multiarrangement::from_raw(1, &[vec![1]], &[3]).unwrap();
        assert_eq!(exps(&m), ExponentMultiset::from([3]));
    }

    #[test]
    fn single_hyperplane_in_two_variables() {
        let m = Multiarrangement::from_raw(2, &[vec![1, -1]], &[5]).unwrap();
        assert_eq!(exps(&m), ExponentMultiset::from([0, 5]));
    }

    #[test]
    fn ambient_braid_three() {
        assert_eq!(exps(&braid_constant(3, 2)), ExponentMultiset::from([0, 3, 3]));
        assert_eq!(exps(&braid_constant(3, 1)), ExponentMultiset::from([0, 1, 2]));
    }

    #[test]
    fn three_lines_with_a_double() {
        let m = Multiarrangement::from_raw(2, &[vec![1, 0], vec![0, 1], vec![1, -1]], &[2, 1, 1]).unwrap();
        assert_eq!(exps(&m), ExponentMultiset::from([2, 2]));
    }

    #[test]
    fn empty_arrangements() {
        assert_eq!(exps(&Multiarrangement::empty(3)), ExponentMultiset::zeros(3));
        assert_eq!(exps(&Multiarrangement::empty(0)), ExponentMultiset::default());
    }

    #[test]
    fn witnesses_verify_and_survive_scaling() {
        let m = braid_constant(3, 2);
        let OracleOutcome::Free(w) = oracle_exponents(&m, None).unwrap() else {
            panic!("expected free");
        };
        assert_eq!(verify_witness(&m, &w), Ok(()));

        let mut scaled = w.clone();
        scaled.generators[1] = scaled.generators[1].scale(&Scalar::from(5));
        assert_eq!(verify_witness(&m, &scaled), Ok(()));

        // Exponents are {0, 3, 3}, so duplicating a degree-3 generator keeps the degree sum.
        let mut swap = w.clone();
        swap.generators[2] = swap.generators[1].clone();
        assert_eq!(w.exponents.values()[1], w.exponents.values()[2]);
        assert_eq!(verify_witness(&m, &swap), Err(WitnessFailure::DeterminantZero));
    }

    #[test]
    fn witness_serializes() {
        let m = Multiarrangement::from_raw(2, &[vec![1, -1]], &[2]).unwrap();
        let out = oracle_exponents(&m, None).unwrap();
        let text = serde_json::to_string(&out).unwrap();
        let back: OracleOutcome = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out);
    }

    #[test]
    fn non_free_rank_three() {
        // Four generic planes in three-space with simple multiplicity (the
        // generic arrangement x, y, z, x + y + z) are not free.
        let m = Multiarrangement::from_raw(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
            &[1, 1, 1, 1],
        )
        .unwrap();
        match oracle_exponents(&m, None).unwrap() {
            OracleOutcome::NotFree(c) => assert!(c.degrees.iter().sum::<u32>() > 4),
            other => panic!("expected non-free, got {other:?}"),
        }
    }

    #[test]
    fn degree_cap_is_enforced() {
        let m = braid_constant(3, 2);
        assert!(matches!(
            oracle_exponents(&m, Some(2)),
            Err(Error::DegreeCapExhausted { cap: 2, needed: 3 })
        ));
    }

    #[test]
    fn essentialization_pads_zeros() {
        let m = braid_constant(4, 1);
        assert_eq!(free_exponents(&m).unwrap(), Some(exps(&m)));
    }
}
