use std::fmt;

use serde::{Deserialize, Serialize};

/// Sorted multiset of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct ExponentMultiset(Vec<u32>);

impl ExponentMultiset {
    pub fn new(mut values: Vec<u32>) -> Self {
        values.sort_unstable();
        ExponentMultiset(values)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentMultiset(vec![0; n])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn count(&self, v: u32) -> usize {
        self.0.iter().filter(|&&x| x == v).count()
    }

    pub fn is_submultiset_of(&self, other: &ExponentMultiset) -> bool {
        other.difference(self).is_some()
    }

    /// `self - other` as multisets, if `other` is contained in `self`.
    pub fn difference(&self, other: &ExponentMultiset) -> Option<ExponentMultiset> {
        let mut rest = self.0.clone();
        for v in &other.0 {
            let i = rest.iter().position(|x| x == v)?;
            rest.remove(i);
        }
        Some(ExponentMultiset(rest))
    }

    pub fn union(&self, other: &ExponentMultiset) -> ExponentMultiset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ExponentMultiset::new(v)
    }

    pub fn with(&self, value: u32) -> ExponentMultiset {
        self.union(&ExponentMultiset(vec![value]))
    }

    pub fn padded(&self, zeros: usize) -> ExponentMultiset {
        self.union(&ExponentMultiset::zeros(zeros))
    }

    /// Removes `zeros` zero entries, if that many are present.
    pub fn strip_zeros(&self, zeros: usize) -> Option<ExponentMultiset> {
        self.difference(&ExponentMultiset::zeros(zeros))
    }

    /// The nonzero part.
    pub fn nonzero(&self) -> ExponentMultiset {
        ExponentMultiset(self.0.iter().copied().filter(|&v| v > 0).collect())
    }
}

impl From<Vec<u32>> for ExponentMultiset {
    fn from(v: Vec<u32>) -> Self {
        ExponentMultiset::new(v)
    }
}

impl<const N: usize> From<[u32; N]> for ExponentMultiset {
    fn from(v: [u32; N]) -> Self {
        ExponentMultiset::new(v.to_vec())
    }
}

impl<'de> Deserialize<'de> for ExponentMultiset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(ExponentMultiset::new(Vec::deserialize(d)?))
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn multiset_operations() {
        let a = ExponentMultiset::from([3, 2, 3]);
        assert_eq!(a.values(), &[2, 3, 3]);
        assert!(ExponentMultiset::from([3, 3]).is_submultiset_of(&a));
        assert!(!ExponentMultiset::from([2, 2]).is_submultiset_of(&a));
        assert_eq!(
            a.difference(&ExponentMultiset::from([3])),
            Some(ExponentMultiset::from([2, 3]))
        );
        assert_eq!(a.padded(2).to_string(), "{0, 0, 2, 3, 3}");
        assert_eq!(a.padded(1).strip_zeros(1), Some(a.clone()));
        assert_eq!(a.strip_zeros(1), None);
    }

    proptest! {
        #[test]
        fn union_then_difference_roundtrips(
            a in prop::collection::vec(0u32..8, 0..6),
            b in prop::collection::vec(0u32..8, 0..6),
        ) {
            let a = ExponentMultiset::new(a);
            let b = ExponentMultiset::new(b);
            let u = a.union(&b);
            prop_assert_eq!(u.sum(), a.sum() + b.sum());
            prop_assert!(b.is_submultiset_of(&u));
            prop_assert_eq!(u.difference(&b), Some(a));
        }
    }
}
