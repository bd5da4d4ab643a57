use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::product::product_split;
use super::{BaseCase, InductionCertificate, InductionStep, ProductFactor};
use crate::arrangement::{LinearForm, Multiarrangement};
use crate::catalog::{paper_plan, recognize};
use crate::error::{Error, Result};
use crate::euler::{addition_deletion_infer, restriction};
use crate::oracle::{free_exponents, ExponentMultiset};

/// Environment variable holding the default step budget.
pub const BUDGET_ENV: &str = "MULTIARR_BUDGET";
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Replay the addition order of the catalog, falling back to greedy.
    PaperOrder,
    /// First candidate (in canonical form order) that gives a valid step.
    Greedy,
    /// Backtracking over all candidates.
    Exhaustive,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-order" => Ok(Strategy::PaperOrder),
            "greedy" => Ok(Strategy::Greedy),
            "exhaustive" => Ok(Strategy::Exhaustive),
            _ => Err(Error::InvalidParameters(format!("unknown strategy {s:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::PaperOrder => "paper-order",
            Strategy::Greedy => "greedy",
            Strategy::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Maximum number of attempted addition steps, across all recursion.
    pub budget: usize,
    /// Reuse plans across coordinate relabelings (only up to 6 variables).
    pub perm_canon: bool,
}

impl SearchConfig {
    pub fn new(strategy: Strategy) -> Self {
        SearchConfig {
            strategy,
            budget: default_budget(),
            perm_canon: true,
        }
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::new(Strategy::PaperOrder)
    }
}

pub fn default_budget() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Starting point of an addition sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanBase {
    Empty(usize),
    RankAtMost2(Multiarrangement),
    /// Certified factor by factor after splitting.
    Product(Multiarrangement),
    Catalog {
        key: String,
        perm: Vec<usize>,
        target: Multiarrangement,
    },
}

/// A base plus the forms to add, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub base: PlanBase,
    pub additions: Vec<LinearForm>,
}

impl Plan {
    /// Relabels coordinates, coordinate `i` becoming `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Plan {
        let base = match &self.base {
            PlanBase::Empty(d) => PlanBase::Empty(*d),
            PlanBase::RankAtMost2(t) => PlanBase::RankAtMost2(t.permuted(perm)),
            PlanBase::Product(t) => PlanBase::Product(t.permuted(perm)),
            PlanBase::Catalog { key, perm: p, target } => PlanBase::Catalog {
                key: key.clone(),
                perm: p.iter().map(|&i| perm[i]).collect(),
                target: target.permuted(perm),
            },
        };
        Plan {
            base,
            additions: self.additions.iter().map(|f| f.permuted(perm)).collect(),
        }
    }

    /// The plan a certificate follows.
    pub fn of_certificate(cert: &InductionCertificate) -> Plan {
        let base = match &cert.base {
            BaseCase::Empty { dim } => PlanBase::Empty(*dim),
            BaseCase::RankAtMost2 { target } => PlanBase::RankAtMost2(target.clone()),
            BaseCase::Product { .. } => PlanBase::Product(cert.base.target()),
            BaseCase::Catalog { key, perm, certificate } => PlanBase::Catalog {
                key: key.clone(),
                perm: perm.clone(),
                target: certificate.target.clone(),
            },
        };
        Plan {
            base,
            additions: cert.steps.iter().map(|s| s.added_form.clone()).collect(),
        }
    }
}

type Key = (usize, Vec<(LinearForm, u32)>);

fn key_of(m: &Multiarrangement) -> Key {
    (m.dim(), m.entries())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Lexicographically least relabeling of `m` and the permutation reaching it.
pub fn perm_canonical(m: &Multiarrangement) -> (Vec<(LinearForm, u32)>, Vec<usize>) {
    permutations(m.dim())
        .into_iter()
        .map(|p| (m.permuted(&p).entries(), p))
        .min()
        .expect("at least the identity")
}

/// Certificate search with memoization across calls.
pub struct Engine {
    config: SearchConfig,
    memo: HashMap<Key, Option<Arc<InductionCertificate>>>,
    plans: HashMap<Key, Plan>,
    attempts: usize,
}

impl Engine {
    pub fn new(config: SearchConfig) -> Self {
        Engine {
            config,
            memo: HashMap::new(),
            plans: HashMap::new(),
            attempts: 0,
        }
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    /// Addition steps attempted so far.
    pub fn attempts(&self) -> usize {
        self.attempts
    }

    pub fn clear_memo(&mut self) {
        self.memo.clear();
        self.plans.clear();
    }

    /// Top-level search. Under `paper-order` a recognized catalog pattern is
    /// replayed along its own addition sequence even when a shortcut base applies.
    pub fn search(&mut self, m: &Multiarrangement) -> Result<Option<Arc<InductionCertificate>>> {
        let m = m.normalized();
        if self.config.strategy == Strategy::PaperOrder {
            if let Some((pattern, perm)) = recognize(&m) {
                let plan = paper_plan(&pattern).permuted(&perm);
                if let Some(c) = self.replay(&m, &plan)? {
                    return Ok(Some(c));
                }
            }
        }
        self.certify(&m)
    }

    /// Memoized certification, used for restrictions and factors.
    pub fn certify(&mut self, m: &Multiarrangement) -> Result<Option<Arc<InductionCertificate>>> {
        let m = m.normalized();
        let key = key_of(&m);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let found = self.certify_uncached(&m)?;
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    fn certify_uncached(&mut self, m: &Multiarrangement) -> Result<Option<Arc<InductionCertificate>>> {
        if m.is_empty() {
            return Ok(Some(Arc::new(InductionCertificate {
                target: m.clone(),
                exponents: ExponentMultiset::zeros(m.dim()),
                base: BaseCase::Empty { dim: m.dim() },
                steps: Vec::new(),
            })));
        }
        if m.rank() <= 2 {
            let exponents = free_exponents(m)?
                .ok_or_else(|| Error::Inconsistent("rank-2 multiarrangement reported non-free".into()))?;
            return Ok(Some(Arc::new(InductionCertificate {
                target: m.clone(),
                exponents,
                base: BaseCase::RankAtMost2 { target: m.clone() },
                steps: Vec::new(),
            })));
        }
        if product_split(m).len() > 1 {
            if let Some((base, exponents)) = self.product_base(m)? {
                return Ok(Some(Arc::new(InductionCertificate {
                    target: m.clone(),
                    exponents,
                    base,
                    steps: Vec::new(),
                })));
            }
        }
        let canon = (self.config.perm_canon && m.dim() <= 6).then(|| perm_canonical(m));
        if let Some((ckey, perm)) = &canon {
            if let Some(plan) = self.plans.get(&(m.dim(), ckey.clone())).cloned() {
                if let Some(c) = self.replay(m, &plan.permuted(&inverse(perm)))? {
                    return Ok(Some(c));
                }
            }
        }
        let found = match self.config.strategy {
            Strategy::PaperOrder => match recognize(m) {
                Some((pattern, perm)) => {
                    let plan = paper_plan(&pattern).permuted(&perm);
                    match self.replay(m, &plan)? {
                        Some(c) => Some(c),
                        None => self.greedy(m)?,
                    }
                }
                None => self.greedy(m)?,
            },
            Strategy::Greedy => self.greedy(m)?,
            Strategy::Exhaustive => self.exhaustive(m)?,
        };
        if let (Some(c), Some((ckey, perm))) = (&found, canon) {
            self.plans
                .insert((m.dim(), ckey), Plan::of_certificate(c).permuted(&perm));
        }
        Ok(found)
    }

    fn product_base(&mut self, m: &Multiarrangement) -> Result<Option<(BaseCase, ExponentMultiset)>> {
        let mut factors = Vec::new();
        let mut exps = ExponentMultiset::default();
        for part in product_split(m) {
            let Some(c) = self.certify(&part.multiarrangement)? else {
                return Ok(None);
            };
            exps = exps.union(&c.exponents);
            factors.push(ProductFactor {
                coords: part.coords,
                certificate: c,
            });
        }
        Ok(Some((BaseCase::Product { dim: m.dim(), factors }, exps)))
    }

    fn make_base(&mut self, base: &PlanBase) -> Result<Option<(BaseCase, ExponentMultiset)>> {
        Ok(match base {
            PlanBase::Empty(dim) => Some((BaseCase::Empty { dim: *dim }, ExponentMultiset::zeros(*dim))),
            PlanBase::RankAtMost2(t) => {
                if t.rank() > 2 {
                    return Ok(None);
                }
                free_exponents(t)?.map(|e| (BaseCase::RankAtMost2 { target: t.normalized() }, e))
            }
            PlanBase::Product(t) => self.product_base(&t.normalized())?,
            PlanBase::Catalog { key, perm, target } => self.certify(target)?.map(|c| {
                let e = c.exponents.clone();
                (
                    BaseCase::Catalog {
                        key: key.clone(),
                        perm: perm.clone(),
                        certificate: c,
                    },
                    e,
                )
            }),
        })
    }

    /// Follows `plan`; `None` if some step is not valid or the target is missed.
    pub fn replay(&mut self, target: &Multiarrangement, plan: &Plan) -> Result<Option<Arc<InductionCertificate>>> {
        let Some((base, mut exps)) = self.make_base(&plan.base)? else {
            return Ok(None);
        };
        let mut current = base.target();
        if current.dim() != target.dim() {
            return Ok(None);
        }
        let mut steps = Vec::new();
        for form in &plan.additions {
            let Some((next, step)) = self.step(&current, &exps, form)? else {
                return Ok(None);
            };
            exps = step.exp_after.clone();
            steps.push(step);
            current = next;
        }
        if !current.same_multiset(target) {
            return Ok(None);
        }
        Ok(Some(Arc::new(InductionCertificate {
            target: target.normalized(),
            exponents: exps,
            base,
            steps,
        })))
    }

    fn step(
        &mut self,
        current: &Multiarrangement,
        exps: &ExponentMultiset,
        form: &LinearForm,
    ) -> Result<Option<(Multiarrangement, InductionStep)>> {
        self.attempts += 1;
        if self.attempts > self.config.budget {
            return Err(Error::BudgetExceeded {
                budget: self.config.budget,
            });
        }
        let next = current.with_added(form)?;
        let h0 = next.index_of(form).expect("form was just added");
        let r = restriction(&next, h0)?;
        let Some(sub) = self.certify(&r.multiarrangement)? else {
            return Ok(None);
        };
        let Some(after) = addition_deletion_infer(exps, &sub.exponents)? else {
            return Ok(None);
        };
        let step = InductionStep {
            added_form: form.clone(),
            exp_before: exps.clone(),
            exp_restricted: sub.exponents.clone(),
            exp_after: after,
            euler_data: r.records,
            restriction_certificate: sub,
        };
        Ok(Some((next, step)))
    }

    fn candidates(target: &Multiarrangement, current: &Multiarrangement) -> Vec<LinearForm> {
        let mut forms: Vec<LinearForm> = target
            .iter()
            .filter(|(f, v)| current.mult_of(f) < *v)
            .map(|(f, _)| f.clone())
            .collect();
        forms.sort();
        forms
    }

    fn greedy(&mut self, m: &Multiarrangement) -> Result<Option<Arc<InductionCertificate>>> {
        let dim = m.dim();
        let mut current = Multiarrangement::empty(dim);
        let mut exps = ExponentMultiset::zeros(dim);
        let mut steps = Vec::new();
        while current.order() < m.order() {
            let mut advanced = false;
            for f in Self::candidates(m, &current) {
                if let Some((next, step)) = self.step(&current, &exps, &f)? {
                    exps = step.exp_after.clone();
                    steps.push(step);
                    current = next;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return Ok(None);
            }
        }
        Ok(Some(Arc::new(InductionCertificate {
            target: m.clone(),
            exponents: exps,
            base: BaseCase::Empty { dim },
            steps,
        })))
    }

    fn exhaustive(&mut self, m: &Multiarrangement) -> Result<Option<Arc<InductionCertificate>>> {
        let dim = m.dim();
        let mut steps = Vec::new();
        let mut failed = HashSet::new();
        let start = Multiarrangement::empty(dim);
        let zeros = ExponentMultiset::zeros(dim);
        if !self.dfs(m, &start, &zeros, &mut steps, &mut failed)? {
            return Ok(None);
        }
        let exponents = steps.last().map_or(zeros, |s: &InductionStep| s.exp_after.clone());
        Ok(Some(Arc::new(InductionCertificate {
            target: m.clone(),
            exponents,
            base: BaseCase::Empty { dim },
            steps,
        })))
    }

    fn dfs(
        &mut self,
        target: &Multiarrangement,
        current: &Multiarrangement,
        exps: &ExponentMultiset,
        steps: &mut Vec<InductionStep>,
        failed: &mut HashSet<Key>,
    ) -> Result<bool> {
        if current.order() == target.order() {
            return Ok(true);
        }
        let key = key_of(current);
        if failed.contains(&key) {
            return Ok(false);
        }
        for f in Self::candidates(target, current) {
            if let Some((next, step)) = self.step(current, exps, &f)? {
                let after = step.exp_after.clone();
                steps.push(step);
                if self.dfs(target, &next, &after, steps, failed)? {
                    return Ok(true);
                }
                steps.pop();
            }
        }
        failed.insert(key);
        Ok(false)
    }
}

/// One-shot search with a fresh engine.
pub fn search(m: &Multiarrangement, config: &SearchConfig) -> Result<Option<Arc<InductionCertificate>>> {
    Engine::new(config.clone()).search(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{braid_constant, braid_mixed, expected_exponents_constant};
    use crate::induction::verify;
    use crate::oracle::free_exponents;

    fn essential(e: &ExponentMultiset) -> ExponentMultiset {
        e.strip_zeros(1).unwrap()
    }

    #[test]
    fn strategies_parse() {
        for s in ["paper-order", "greedy", "exhaustive"] {
            assert_eq!(s.parse::<Strategy>().unwrap().to_string(), s);
        }
        assert!("best".parse::<Strategy>().is_err());
    }

    #[test]
    fn every_strategy_certifies_small_braids() {
        for strategy in [Strategy::PaperOrder, Strategy::Greedy, Strategy::Exhaustive] {
            let config = SearchConfig::new(strategy);
            for m in 1..=3 {
                let target = braid_constant(3, m);
                let cert = search(&target, &config)
                    .unwrap()
                    .expect("braid arrangements are inductively free");
                assert_eq!(verify(&cert).unwrap(), cert.exponents);
                assert_eq!(essential(&cert.exponents), expected_exponents_constant(3, m));
            }
        }
    }

    #[test]
    fn paper_order_follows_the_catalog_sequence() {
        let cert = search(&braid_constant(3, 3), &SearchConfig::default())
            .unwrap()
            .unwrap();
        assert!(matches!(cert.base, BaseCase::RankAtMost2 { .. }));
        assert_eq!(cert.steps.len(), 6);
        let cert = search(&braid_mixed(3, 2, 2), &SearchConfig::default())
            .unwrap()
            .unwrap();
        assert!(matches!(cert.base, BaseCase::Catalog { .. }));
        assert_eq!(cert.steps.len(), 4);
    }

    #[test]
    fn certified_exponents_agree_with_the_oracle() {
        let m = Multiarrangement::from_raw(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]],
            &[2, 1, 1, 1],
        )
        .unwrap();
        let cert = search(&m, &SearchConfig::new(Strategy::Greedy)).unwrap().unwrap();
        assert_eq!(Some(verify(&cert).unwrap()), free_exponents(&m).unwrap());
    }

    #[test]
    fn non_free_is_not_certified() {
        let m = Multiarrangement::from_raw(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
            &[1, 1, 1, 1],
        )
        .unwrap();
        for strategy in [Strategy::Greedy, Strategy::Exhaustive] {
            assert!(search(&m, &SearchConfig::new(strategy)).unwrap().is_none());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let config = SearchConfig {
            strategy: Strategy::Greedy,
            budget: 2,
            perm_canon: true,
        };
        assert!(matches!(
            search(&braid_constant(4, 1), &config),
            Err(Error::BudgetExceeded { budget: 2 })
        ));
    }

    #[test]
    fn relabeled_targets_reuse_plans() {
        let mut engine = Engine::new(SearchConfig::new(Strategy::Greedy));
        let m = braid_mixed(4, 1, 1);
        let first = engine.certify(&m).unwrap().unwrap();
        let relabeled = m.permuted(&[3, 1, 0, 2]);
        let second = engine.certify(&relabeled).unwrap().unwrap();
        assert!(second.target.same_multiset(&relabeled));
        assert_eq!(verify(&second).unwrap(), first.exponents);
    }

    #[test]
    fn canonical_relabeling_is_invariant() {
        let m = braid_mixed(4, 2, 1);
        let (a, _) = perm_canonical(&m);
        let (b, p) = perm_canonical(&m.permuted(&[2, 3, 1, 0]));
        assert_eq!(a, b);
        assert_eq!(m.permuted(&[2, 3, 1, 0]).permuted(&p).entries(), b);
    }
}
