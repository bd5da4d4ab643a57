use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::form::{canonicalize, LinearForm};
use crate::algebra::{Echelon, Poly};
use crate::error::{Error, Result};

/// Central arrangement: an ordered list of distinct canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<LinearForm>,
}

impl Arrangement {
    pub fn new(dim: usize, forms: Vec<LinearForm>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for f in &forms {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.dim(),
                });
            }
            if !seen.insert(f) {
                return Err(Error::DuplicateForm(f.to_string()));
            }
        }
        Ok(Arrangement { dim, forms })
    }

    /// The empty arrangement `Phi_dim`.
    pub fn empty(dim: usize) -> Self {
        Arrangement { dim, forms: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn index_of(&self, form: &LinearForm) -> Option<usize> {
        self.forms.iter().position(|f| f == form)
    }

    /// Codimension of the center.
    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.forms.iter().map(LinearForm::to_scalars), self.dim).rank()
    }

    pub fn defining_polynomial(&self) -> Poly {
        self.forms
            .iter()
            .fold(Poly::one(self.dim), |acc, f| &acc * &f.to_poly())
    }
}

/// Multiplicity function aligned with an arrangement's forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multiplicity(Vec<u32>);

impl Multiplicity {
    pub fn new(values: Vec<u32>) -> Self {
        Multiplicity(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// `|nu|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// An arrangement together with a multiplicity per hyperplane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multiarrangement {
    arrangement: Arrangement,
    multiplicity: Multiplicity,
}

impl Multiarrangement {
    pub fn new(arrangement: Arrangement, multiplicity: Multiplicity) -> Result<Self> {
        if arrangement.len() != multiplicity.0.len() {
            return Err(Error::MultiplicityLength {
                forms: arrangement.len(),
                mult: multiplicity.0.len(),
            });
        }
        Ok(Multiarrangement {
            arrangement,
            multiplicity,
        })
    }

    /// Builds from raw integer tuples; forms are canonicalized.
    pub fn from_raw(dim: usize, forms: &[Vec<i64>], mult: &[u32]) -> Result<Self> {
        let forms = forms.iter().map(|f| canonicalize(f)).collect::<Result<Vec<_>>>()?;
        Multiarrangement::new(Arrangement::new(dim, forms)?, Multiplicity(mult.to_vec()))
    }

    pub fn from_pairs(dim: usize, pairs: Vec<(LinearForm, u32)>) -> Result<Self> {
        let (forms, mult): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Multiarrangement::new(Arrangement::new(dim, forms)?, Multiplicity(mult))
    }

    pub fn empty(dim: usize) -> Self {
        Multiarrangement {
            arrangement: Arrangement::empty(dim),
            multiplicity: Multiplicity(Vec::new()),
        }
    }

    pub fn dim(&self) -> usize {
        self.arrangement.dim
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn multiplicity(&self) -> &Multiplicity {
        &self.multiplicity
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.arrangement.forms
    }

    pub fn mult(&self, i: usize) -> u32 {
        self.multiplicity.0[i]
    }

    pub fn mults(&self) -> &[u32] {
        &self.multiplicity.0
    }

    pub fn len(&self) -> usize {
        self.arrangement.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order() == 0
    }

    /// `|nu|`.
    pub fn order(&self) -> u32 {
        self.multiplicity.order()
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity.0.iter().all(|&v| v == 1)
    }

    pub fn index_of(&self, form: &LinearForm) -> Option<usize> {
        self.arrangement.index_of(form)
    }

    pub fn mult_of(&self, form: &LinearForm) -> u32 {
        self.index_of(form).map_or(0, |i| self.mult(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.arrangement.forms.iter().zip(self.multiplicity.0.iter().copied())
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.len() {
            return Err(Error::InvalidHyperplane { index, len: self.len() });
        }
        Ok(())
    }

    /// Drops hyperplanes of multiplicity zero; they impose no condition.
    pub fn normalized(&self) -> Multiarrangement {
        let pairs = self
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(f, m)| (f.clone(), m))
            .collect();
        Multiarrangement::from_pairs(self.dim(), pairs).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.normalized().arrangement.rank()
    }

    /// Sorted nonzero `(form, multiplicity)` pairs: the multiset itself.
    pub fn entries(&self) -> Vec<(LinearForm, u32)> {
        let mut v: Vec<(LinearForm, u32)> = self
            .iter()
            .filter(|(_, m)| *m > 0)
            .map(|(f, m)| (f.clone(), m))
            .collect();
        v.sort();
        v
    }

    /// Equality as multisets of hyperplanes, ignoring order and zero multiplicities.
    pub fn same_multiset(&self, other: &Multiarrangement) -> bool {
        self.dim() == other.dim() && self.entries() == other.entries()
    }

    pub fn is_submultiarrangement_of(&self, other: &Multiarrangement) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let theirs: HashMap<&LinearForm, u32> = other.iter().collect();
        self.iter()
            .all(|(f, m)| m == 0 || theirs.get(f).is_some_and(|&n| m <= n))
    }

    /// Adds one copy of `form`, appending it if it is new.
    pub fn with_added(&self, form: &LinearForm) -> Result<Multiarrangement> {
        if form.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: form.dim(),
            });
        }
        let mut out = self.clone();
        match out.index_of(form) {
            Some(i) => out.multiplicity.0[i] += 1,
            None => {
                out.arrangement.forms.push(form.clone());
                out.multiplicity.0.push(1);
            }
        }
        Ok(out)
    }

    pub fn with_multiplicity(&self, index: usize, value: u32) -> Multiarrangement {
        let mut out = self.clone();
        out.multiplicity.0[index] = value;
        out
    }

    /// Relabels coordinates, coordinate `i` becoming `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Multiarrangement {
        let pairs = self.iter().map(|(f, m)| (f.permuted(perm), m)).collect();
        Multiarrangement::from_pairs(self.dim(), pairs).unwrap()
    }

    /// Embeds into `dim` coordinates, coordinate `i` going to `coords[i]`.
    pub fn embedded(&self, coords: &[usize], dim: usize) -> Multiarrangement {
        let pairs = self.iter().map(|(f, m)| (f.embedded(coords, dim), m)).collect();
        Multiarrangement::from_pairs(dim, pairs).unwrap()
    }

    /// `Q(A, nu) = prod alpha_H^nu(H)`.
    pub fn defining_polynomial(&self) -> Poly {
        self.iter()
            .fold(Poly::one(self.dim()), |acc, (f, m)| &acc * &f.to_poly().pow(m))
    }
}

pub fn defining_polynomial(m: &Multiarrangement) -> Poly {
    m.defining_polynomial()
}

impl fmt::Display for Multiarrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "Phi_{}", self.dim());
        }
        let mut first = true;
        for (form, m) in self.iter().filter(|(_, m)| *m > 0) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "({form})")?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multiarrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multiarrangement[{}]({self})", self.dim())
    }
}

/// Interchange format: `{"dim": 3, "forms": [[1,-1,0], ...], "mult": [2, ...]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiarrangementJson {
    dim: usize,
    forms: Vec<Vec<i64>>,
    mult: Vec<u32>,
}

impl Serialize for Multiarrangement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultiarrangementJson {
            dim: self.dim(),
            forms: self.forms().iter().map(|f| f.coeffs().to_vec()).collect(),
            mult: self.mults().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multiarrangement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MultiarrangementJson::deserialize(d)?;
        Multiarrangement::from_raw(j.dim, &j.forms, &j.mult).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid3(m: u32) -> Multiarrangement {
        Multiarrangement::from_raw(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]], &[m, m, m]).unwrap()
    }

    #[test]
    fn json_roundtrip_and_canonicalization() {
        let text = r#"{"dim": 3, "forms": [[1,-1,0],[1,0,-1],[0,1,-1]], "mult": [2,2,2]}"#;
        let m: Multiarrangement = serde_json::from_str(text).unwrap();
        assert_eq!(m, braid3(2));
        let back: Multiarrangement = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);

        let flipped = r#"{"dim": 2, "forms": [[-2,2]], "mult": [1]}"#;
        let m: Multiarrangement = serde_json::from_str(flipped).unwrap();
        assert_eq!(m.forms()[0].coeffs(), &[1, -1]);
    }

    #[test]
    fn json_rejects_bad_input() {
        let dup = r#"{"dim": 2, "forms": [[1,-1],[-1,1]], "mult": [1,1]}"#;
        assert!(serde_json::from_str::<Multiarrangement>(dup).is_err());
        let len = r#"{"dim": 2, "forms": [[1,-1]], "mult": [1,1]}"#;
        assert!(serde_json::from_str::<Multiarrangement>(len).is_err());
        let zero = r#"{"dim": 2, "forms": [[0,0]], "mult": [1]}"#;
        assert!(serde_json::from_str::<Multiarrangement>(zero).is_err());
        let dim = r#"{"dim": 3, "forms": [[1,-1]], "mult": [1]}"#;
        assert!(serde_json::from_str::<Multiarrangement>(dim).is_err());
    }

    #[test]
    fn defining_polynomials() {
        let q = braid3(1).defining_polynomial();
        let expected = &(&Poly::linear(&[1, -1, 0]) * &Poly::linear(&[1, 0, -1])) * &Poly::linear(&[0, 1, -1]);
        assert_eq!(q, expected);
        assert_eq!(Multiarrangement::empty(4).defining_polynomial(), Poly::one(4));
        assert_eq!(braid3(2).defining_polynomial().degree(), Some(6));
    }

    #[test]
    fn submultiarrangements_and_addition() {
        let small = braid3(1);
        let big = braid3(2);
        assert!(small.is_submultiarrangement_of(&big));
        assert!(!big.is_submultiarrangement_of(&small));
        let f = LinearForm::braid(3, 0, 1);
        let added = small.with_added(&f).unwrap();
        assert_eq!(added.mult_of(&f), 2);
        assert_eq!(added.order(), 4);
        let fresh = Multiarrangement::empty(3).with_added(&f).unwrap();
        assert_eq!(fresh.len(), 1);
    }

    #[test]
    fn normalization_strips_zeros() {
        let m = braid3(1).with_multiplicity(1, 0);
        assert_eq!(m.normalized().len(), 2);
        assert!(m.same_multiset(&m.normalized()));
        assert_eq!(m.rank(), 2);
    }
}
