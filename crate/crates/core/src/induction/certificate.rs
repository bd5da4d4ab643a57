use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arrangement::{LinearForm, Multiarrangement};
use crate::euler::EulerRecord;
use crate::oracle::ExponentMultiset;

/// Where an induction starts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseCase {
    /// `Phi_dim`.
    Empty { dim: usize },
    #[serde(rename = "rank_at_most_2")]
    RankAtMost2 { target: Multiarrangement },
    /// Coordinate blocks, each certified on its own.
    Product { dim: usize, factors: Vec<ProductFactor> },
    /// A catalog entry, relabeled by `perm`, with its own certificate.
    Catalog {
        key: String,
        perm: Vec<usize>,
        certificate: Arc<InductionCertificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFactor {
    /// Ambient coordinates of the block, in order.
    pub coords: Vec<usize>,
    pub certificate: Arc<InductionCertificate>,
}

/// One addition `(A', nu') -> (A, nu)`: a row of an induction table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionStep {
    pub added_form: LinearForm,
    pub exp_before: ExponentMultiset,
    pub exp_restricted: ExponentMultiset,
    pub exp_after: ExponentMultiset,
    pub euler_data: Vec<EulerRecord>,
    pub restriction_certificate: Arc<InductionCertificate>,
}

/// Proof that `target` is inductively free, with its exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionCertificate {
    pub target: Multiarrangement,
    pub exponents: ExponentMultiset,
    pub base: BaseCase,
    pub steps: Vec<InductionStep>,
}

impl BaseCase {
    /// The multiarrangement the base case certifies.
    pub fn target(&self) -> Multiarrangement {
        match self {
            BaseCase::Empty { dim } => Multiarrangement::empty(*dim),
            BaseCase::RankAtMost2 { target } => target.clone(),
            BaseCase::Product { dim, factors } => {
                let mut pairs = Vec::new();
                for f in factors {
                    for (form, v) in f.certificate.target.iter() {
                        pairs.push((form.embedded(&f.coords, *dim), v));
                    }
                }
                Multiarrangement::from_pairs(*dim, pairs).expect("factors have disjoint supports")
            }
            BaseCase::Catalog { certificate, .. } => certificate.target.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BaseCase::Empty { .. } => "empty",
            BaseCase::RankAtMost2 { .. } => "rank at most 2",
            BaseCase::Product { .. } => "product",
            BaseCase::Catalog { .. } => "catalog",
        }
    }
}

impl InductionCertificate {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Number of certificates in the tree, counting shared ones once per use.
    pub fn size(&self) -> usize {
        let base = match &self.base {
            BaseCase::Product { factors, .. } => factors.iter().map(|f| f.certificate.size()).sum(),
            BaseCase::Catalog { certificate, .. } => certificate.size(),
            _ => 0,
        };
        1 + base
            + self
                .steps
                .iter()
                .map(|s| s.restriction_certificate.size())
                .sum::<usize>()
    }
}
