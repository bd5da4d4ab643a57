use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Arrangement, LinearForm, Multiarrangement};
use crate::algebra::{Echelon, Scalar};
use crate::error::{Error, Result};

/// A member of the intersection lattice, identified by the hyperplanes containing it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Flat {
    pub containing: BTreeSet<usize>,
    /// Codimension of the subspace.
    pub rank: usize,
    /// Basis of the subspace itself.
    pub basis: Vec<Vec<Scalar>>,
}

fn span(forms: &[LinearForm], idx: impl IntoIterator<Item = usize>, dim: usize) -> Echelon {
    Echelon::from_rows(idx.into_iter().map(|i| forms[i].to_scalars()), dim)
}

impl Flat {
    /// The intersection of the given hyperplanes, with its full containing set.
    pub fn of_forms(a: &Arrangement, indices: &[usize]) -> Result<Flat> {
        for &i in indices {
            if i >= a.len() {
                return Err(Error::InvalidHyperplane { index: i, len: a.len() });
            }
        }
        let ech = span(a.forms(), indices.iter().copied(), a.dim());
        Ok(Flat::from_span(a, &ech))
    }

    fn from_span(a: &Arrangement, ech: &Echelon) -> Flat {
        let containing = (0..a.len())
            .filter(|&k| ech.contains(&a.forms()[k].to_scalars()))
            .collect();
        Flat {
            containing,
            rank: ech.rank(),
            basis: ech.kernel(),
        }
    }

    pub fn whole_space(a: &Arrangement) -> Flat {
        Flat::from_span(a, &Echelon::new(a.dim()))
    }

    /// The center: intersection of every hyperplane.
    pub fn center(a: &Arrangement) -> Flat {
        let ech = span(a.forms(), 0..a.len(), a.dim());
        Flat::from_span(a, &ech)
    }

    pub fn contains_hyperplane(&self, index: usize) -> bool {
        self.containing.contains(&index)
    }

    /// Whether this is a genuine flat of `a`: closed, with consistent rank.
    pub fn is_flat_of(&self, a: &Arrangement) -> bool {
        if self.containing.iter().any(|&i| i >= a.len()) {
            return false;
        }
        let ech = span(a.forms(), self.containing.iter().copied(), a.dim());
        let closed = Flat::from_span(a, &ech);
        closed.containing == self.containing && closed.rank == self.rank
    }
}

/// All codimension-2 flats, deduplicated, ordered by their first generating pair.
pub fn rank2_flats(a: &Arrangement) -> Vec<Flat> {
    let mut out: Vec<Flat> = Vec::new();
    let mut seen = BTreeSet::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if out.iter().any(|f| f.contains_hyperplane(i) && f.contains_hyperplane(j)) {
                continue;
            }
            let f = Flat::of_forms(a, &[i, j]).unwrap();
            if f.rank == 2 && seen.insert(f.containing.clone()) {
                out.push(f);
            }
        }
    }
    out
}

/// `(A_X, nu_X)`: hyperplanes containing `X` with their multiplicities.
pub fn localization(m: &Multiarrangement, x: &Flat) -> Result<Multiarrangement> {
    if !x.is_flat_of(m.arrangement()) {
        return Err(Error::NotAFlat);
    }
    let pairs = x
        .containing
        .iter()
        .map(|&i| (m.forms()[i].clone(), m.mult(i)))
        .collect();
    Multiarrangement::from_pairs(m.dim(), pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::braid_arrangement;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn braid_three_has_one_rank2_flat() {
        let a = braid_arrangement(3);
        let flats = rank2_flats(&a);
        assert_eq!(flats.len(), 1);
        assert_eq!(flats[0].containing.len(), 3);
    }

    #[test]
    fn braid_flat_counts() {
        // Brute force: merge all pairs by the subspace they cut out.
        for ell in 3..=6 {
            let a = braid_arrangement(ell);
            assert_eq!(a.len(), ell * (ell - 1) / 2);
            let flats = rank2_flats(&a);
            let mut by_subspace = BTreeSet::new();
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    let e = Echelon::from_rows([a.forms()[i].to_scalars(), a.forms()[j].to_scalars()], ell);
                    by_subspace.insert(format!("{:?}", e.rows()));
                }
            }
            assert_eq!(flats.len(), by_subspace.len());
            assert_eq!(flats.len(), binom(ell, 3) + 3 * binom(ell, 4));
            let triples = flats.iter().filter(|f| f.containing.len() == 3).count();
            assert_eq!(triples, binom(ell, 3));
        }
    }

    #[test]
    fn generic_pair_in_three_space() {
        let a = Arrangement::new(
            3,
            vec![
                LinearForm::new(&[1, 0, 0]).unwrap(),
                LinearForm::new(&[0, 1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let flats = rank2_flats(&a);
        assert_eq!(flats.len(), 1);
        assert_eq!(flats[0].containing, BTreeSet::from([0, 1]));
        assert_eq!(flats[0].basis.len(), 1);
    }

    #[test]
    fn localizations() {
        let m = crate::catalog::braid_constant(4, 2);
        let x = Flat::of_forms(m.arrangement(), &[0, 1]).unwrap();
        let loc = localization(&m, &x).unwrap();
        assert_eq!(loc.len(), 3);
        assert_eq!(loc.order(), 6);
        assert!(loc.is_submultiarrangement_of(&m));

        let whole = localization(&m, &Flat::whole_space(m.arrangement())).unwrap();
        assert!(whole.is_empty());

        let bogus = Flat {
            containing: BTreeSet::from([0, 1]),
            rank: 2,
            basis: Vec::new(),
        };
        assert!(matches!(localization(&m, &bogus), Err(Error::NotAFlat)));
    }

    #[test]
    fn center_of_raised_triple() {
        let m = Multiarrangement::from_raw(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]], &[3, 2, 2]).unwrap();
        let loc = localization(&m, &Flat::center(m.arrangement())).unwrap();
        assert_eq!(loc.order(), 3 * 2 + 1);
    }
}
