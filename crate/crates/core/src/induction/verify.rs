use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::{BaseCase, InductionCertificate};
use crate::catalog::CatalogEntry;
use crate::euler::{addition_deletion_infer, restriction};
use crate::oracle::{free_exponents, ExponentMultiset};

/// A failed check, located by step index where it applies.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("base case: {0}")]
    Base(String),
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },
    #[error("replay does not reconstruct the target")]
    TargetMismatch,
    #[error("claimed exponents {claimed} differ from verified {verified}")]
    ExponentMismatch {
        claimed: ExponentMultiset,
        verified: ExponentMultiset,
    },
}

fn step_err(step: usize, reason: impl Into<String>) -> VerifyError {
    VerifyError::Step {
        step,
        reason: reason.into(),
    }
}

/// Checks a certificate and returns the exponents it proves.
pub fn verify(cert: &InductionCertificate) -> Result<ExponentMultiset, VerifyError> {
    Verifier::default().verify(cert)
}

/// Remembers certificates already checked within one call, keyed by address.
#[derive(Default)]
struct Verifier {
    done: HashMap<usize, ExponentMultiset>,
}

impl Verifier {
    fn verify(&mut self, cert: &InductionCertificate) -> Result<ExponentMultiset, VerifyError> {
        let addr = cert as *const InductionCertificate as usize;
        if let Some(e) = self.done.get(&addr) {
            return Ok(e.clone());
        }
        let e = self.verify_uncached(cert)?;
        self.done.insert(addr, e.clone());
        Ok(e)
    }

    fn verify_base(&mut self, base: &BaseCase) -> Result<ExponentMultiset, VerifyError> {
        match base {
            BaseCase::Empty { dim } => Ok(ExponentMultiset::zeros(*dim)),
            BaseCase::RankAtMost2 { target } => {
                let rank = target.rank();
                if rank > 2 {
                    return Err(VerifyError::Base(format!("rank {rank} exceeds 2")));
                }
                free_exponents(target)
                    .map_err(|e| VerifyError::Base(e.to_string()))?
                    .ok_or_else(|| VerifyError::Base("rank-2 multiarrangement not free".into()))
            }
            BaseCase::Product { dim, factors } => {
                let mut seen = BTreeSet::new();
                let mut exps = ExponentMultiset::default();
                for f in factors {
                    if f.certificate.target.dim() != f.coords.len() {
                        return Err(VerifyError::Base("factor dimension differs from its block".into()));
                    }
                    for &c in &f.coords {
                        if c >= *dim || !seen.insert(c) {
                            return Err(VerifyError::Base(
                                "factor blocks do not partition the coordinates".into(),
                            ));
                        }
                    }
                    let e = self
                        .verify(&f.certificate)
                        .map_err(|e| VerifyError::Base(format!("factor: {e}")))?;
                    exps = exps.union(&e);
                }
                if seen.len() != *dim {
                    return Err(VerifyError::Base("factor blocks do not cover the coordinates".into()));
                }
                Ok(exps)
            }
            BaseCase::Catalog { key, perm, certificate } => {
                let entry: CatalogEntry = key.parse().map_err(|e| VerifyError::Base(format!("{e}")))?;
                let expected = entry.build().map_err(|e| VerifyError::Base(e.to_string()))?;
                if perm.len() != expected.dim() || !is_permutation(perm) {
                    return Err(VerifyError::Base("catalog relabeling is not a permutation".into()));
                }
                if !expected.permuted(perm).same_multiset(&certificate.target) {
                    return Err(VerifyError::Base(format!("certificate target is not {key}")));
                }
                self.verify(certificate)
                    .map_err(|e| VerifyError::Base(format!("catalog certificate: {e}")))
            }
        }
    }

    fn verify_uncached(&mut self, cert: &InductionCertificate) -> Result<ExponentMultiset, VerifyError> {
        let mut current = cert.base.target();
        let mut exps = self.verify_base(&cert.base)?;
        if current.dim() != cert.target.dim() {
            return Err(VerifyError::Base("base lives in the wrong dimension".into()));
        }
        for (i, step) in cert.steps.iter().enumerate() {
            if step.exp_before != exps {
                return Err(step_err(
                    i,
                    format!("exp_before {} but replay gives {exps}", step.exp_before),
                ));
            }
            let next = current
                .with_added(&step.added_form)
                .map_err(|e| step_err(i, e.to_string()))?;
            let h0 = next.index_of(&step.added_form).unwrap();
            let r = restriction(&next, h0).map_err(|e| step_err(i, e.to_string()))?;
            if r.records != step.euler_data {
                return Err(step_err(i, "Euler data differs from recomputation"));
            }
            let sub = &step.restriction_certificate;
            if !sub.target.same_multiset(&r.multiarrangement) {
                return Err(step_err(i, "restriction certificate has the wrong target"));
            }
            let restricted = self
                .verify(sub)
                .map_err(|e| step_err(i, format!("restriction certificate: {e}")))?;
            if restricted != step.exp_restricted {
                return Err(step_err(
                    i,
                    format!(
                        "exp_restricted {} but restriction proves {restricted}",
                        step.exp_restricted
                    ),
                ));
            }
            if !restricted.is_submultiset_of(&exps) {
                return Err(step_err(i, format!("{restricted} is not contained in {exps}")));
            }
            let after = addition_deletion_infer(&exps, &restricted)
                .map_err(|e| step_err(i, e.to_string()))?
                .expect("containment checked");
            if after != step.exp_after {
                return Err(step_err(
                    i,
                    format!("exp_after {} but inference gives {after}", step.exp_after),
                ));
            }
            current = next;
            exps = after;
        }
        if !current.same_multiset(&cert.target) {
            return Err(VerifyError::TargetMismatch);
        }
        if exps != cert.exponents {
            return Err(VerifyError::ExponentMismatch {
                claimed: cert.exponents.clone(),
                verified: exps,
            });
        }
        Ok(exps)
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| i < p.len() && !std::mem::replace(&mut seen[i], true))
}
