//! Braid arrangements with constant and mixed multiplicities: constructors,
//! exponent formulas and the addition orders that prove them inductively free.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::arrangement::{essentialize, Arrangement, LinearForm, Multiarrangement};
use crate::error::{Error, Result};
use crate::euler::restriction;
use crate::induction::{search, verify, InductionCertificate, Plan, PlanBase, SearchConfig};
use crate::oracle::ExponentMultiset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidKind {
    /// `B_l` in `l` variables.
    Full,
    /// `A_{l-1}`, the quotient of `B_l` by its center.
    Essential,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidModel {
    pub ell: usize,
    pub kind: BraidKind,
}

impl BraidModel {
    pub fn full(ell: usize) -> Self {
        BraidModel {
            ell,
            kind: BraidKind::Full,
        }
    }

    pub fn essential(ell: usize) -> Self {
        BraidModel {
            ell,
            kind: BraidKind::Essential,
        }
    }
}

/// Weight `m` everywhere, or `m + q` on the forms `x1 - x_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiplicityPattern {
    Constant { m: u32 },
    Mixed { m: u32, q: u32 },
}

/// Hyperplanes `x_i - x_j`, `i < j`, in lexicographic order of `(i, j)`.
pub fn braid_arrangement(ell: usize) -> Arrangement {
    let forms = (0..ell)
        .flat_map(|i| (i + 1..ell).map(move |j| LinearForm::braid(ell, i, j)))
        .collect();
    Arrangement::new(ell, forms).unwrap()
}

pub fn build(model: &BraidModel, pattern: &MultiplicityPattern) -> Result<Multiarrangement> {
    let ell = model.ell;
    if ell < 2 {
        return Err(Error::InvalidParameters(format!(
            "braid arrangements need l >= 2, got {ell}"
        )));
    }
    let (m, q) = match *pattern {
        MultiplicityPattern::Constant { m } => (m, 0),
        MultiplicityPattern::Mixed { m, q } => (m, q),
    };
    if m == 0 {
        return Err(Error::InvalidParameters("multiplicity m must be at least 1".into()));
    }
    let a = braid_arrangement(ell);
    let mult = a
        .forms()
        .iter()
        .map(|f| if f.coeffs()[0] != 0 { m + q } else { m })
        .collect();
    let full = Multiarrangement::new(a, crate::arrangement::Multiplicity::new(mult))?;
    Ok(match model.kind {
        BraidKind::Full => full,
        BraidKind::Essential => essentialize(&full).0,
    })
}

/// `(B_l, m)`. Panics on invalid parameters.
pub fn braid_constant(ell: usize, m: u32) -> Multiarrangement {
    build(&BraidModel::full(ell), &MultiplicityPattern::Constant { m }).expect("valid braid parameters")
}

/// `(B_l; m, q)`. Panics on invalid parameters.
pub fn braid_mixed(ell: usize, m: u32, q: u32) -> Multiarrangement {
    build(&BraidModel::full(ell), &MultiplicityPattern::Mixed { m, q }).expect("valid braid parameters")
}

/// Exponents of `(A_{l-1}, m)`: `l-1` copies of `ml/2` for even `m`,
/// `(m-1)l/2 + k` for `k = 1..l-1` when `m` is odd.
pub fn expected_exponents_constant(ell: usize, m: u32) -> ExponentMultiset {
    expected_exponents_mixed(ell, m, 0)
}

/// Exponents of `(A_{l-1}; m, q)`: the constant ones shifted by `q`.
pub fn expected_exponents_mixed(ell: usize, m: u32, q: u32) -> ExponentMultiset {
    let l = ell as u32;
    let values = (1..l)
        .map(|k| {
            if m.is_multiple_of(2) {
                m * l / 2 + q
            } else {
                (m - 1) * l / 2 + k + q
            }
        })
        .collect();
    ExponentMultiset::new(values)
}

/// A catalog key: `braid:<l>:<m>` or `mixed:<l>:<m>:<q>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CatalogEntry {
    pub ell: usize,
    pub pattern: MultiplicityPattern,
}

impl CatalogEntry {
    pub fn constant(ell: usize, m: u32) -> Self {
        CatalogEntry {
            ell,
            pattern: MultiplicityPattern::Constant { m },
        }
    }

    pub fn mixed(ell: usize, m: u32, q: u32) -> Self {
        CatalogEntry {
            ell,
            pattern: MultiplicityPattern::Mixed { m, q },
        }
    }

    /// The full braid arrangement in `l` variables with this pattern.
    pub fn build(&self) -> Result<Multiarrangement> {
        build(&BraidModel::full(self.ell), &self.pattern)
    }

    /// Exponents of the essential arrangement.
    pub fn expected_exponents(&self) -> ExponentMultiset {
        match self.pattern {
            MultiplicityPattern::Constant { m } => expected_exponents_constant(self.ell, m),
            MultiplicityPattern::Mixed { m, q } => expected_exponents_mixed(self.ell, m, q),
        }
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pattern {
            MultiplicityPattern::Constant { m } => write!(f, "braid:{}:{m}", self.ell),
            MultiplicityPattern::Mixed { m, q } => write!(f, "mixed:{}:{m}:{q}", self.ell),
        }
    }
}

impl FromStr for CatalogEntry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidCatalogKey(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| parts[i].parse::<u32>().map_err(|_| bad());
        let entry = match (parts[0], parts.len()) {
            ("braid", 3) => CatalogEntry::constant(num(1)? as usize, num(2)?),
            ("mixed", 4) => CatalogEntry::mixed(num(1)? as usize, num(2)?, num(3)?),
            _ => return Err(bad()),
        };
        if entry.ell < 2 {
            return Err(bad());
        }
        Ok(entry)
    }
}

/// A multiarrangement matched against the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognized {
    Entry(CatalogEntry),
    /// `(B_l; m, q)` plus one more copy of `x1 - x_j` for `j = 2..=raised+1`.
    Partial {
        ell: usize,
        m: u32,
        q: u32,
        raised: usize,
    },
}

impl Recognized {
    pub fn build(&self) -> Multiarrangement {
        match self {
            Recognized::Entry(e) => e.build().expect("recognized entries are valid"),
            Recognized::Partial { ell, m, q, raised } => {
                let mut out = braid_mixed(*ell, *m, *q);
                for j in 1..=*raised {
                    out = out.with_added(&LinearForm::braid(*ell, 0, j)).unwrap();
                }
                out
            }
        }
    }
}

fn braid_mults(m: &Multiarrangement) -> Option<Vec<Vec<u32>>> {
    let n = m.dim();
    if m.len() != n * (n - 1) / 2 {
        return None;
    }
    let mut v = vec![vec![0; n]; n];
    for (f, mult) in m.iter() {
        let (a, b) = f.braid_pair()?;
        v[a][b] = mult;
        v[b][a] = mult;
    }
    Some(v)
}

/// Matches a full braid arrangement with a catalog pattern up to relabeling.
/// Returns the pattern and `perm` with `pattern.build().permuted(perm) == m`.
pub fn recognize(m: &Multiarrangement) -> Option<(Recognized, Vec<usize>)> {
    let m = m.normalized();
    let n = m.dim();
    if n < 2 {
        return None;
    }
    let v = braid_mults(&m)?;
    let first = m.mults()[0];
    if m.mults().iter().all(|&x| x == first) {
        return Some((Recognized::Entry(CatalogEntry::constant(n, first)), (0..n).collect()));
    }
    for d in 0..n {
        let others: Vec<u32> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != d && b != d)
            .map(|(a, b)| v[a][b])
            .collect();
        let Some(&base) = others.first() else { continue };
        if others.iter().any(|&x| x != base) {
            continue;
        }
        let through: Vec<(usize, u32)> = (0..n).filter(|&j| j != d).map(|j| (j, v[d][j])).collect();
        let lo = through.iter().map(|t| t.1).min().unwrap();
        let hi = through.iter().map(|t| t.1).max().unwrap();
        if lo < base || hi > lo + 1 {
            continue;
        }
        let q = lo - base;
        let raised: Vec<usize> = through.iter().filter(|t| t.1 == hi && hi > lo).map(|t| t.0).collect();
        let rest: Vec<usize> = through
            .iter()
            .filter(|t| !(t.1 == hi && hi > lo))
            .map(|t| t.0)
            .collect();
        let mut perm = vec![0; n];
        for (i, &c) in std::iter::once(&d).chain(&raised).chain(&rest).enumerate() {
            perm[i] = c;
        }
        let pattern = if raised.is_empty() {
            Recognized::Entry(CatalogEntry::mixed(n, base, q))
        } else {
            Recognized::Partial {
                ell: n,
                m: base,
                q,
                raised: raised.len(),
            }
        };
        return Some((pattern, perm));
    }
    None
}

fn round(ell: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Vec<LinearForm> {
    pairs.map(|(i, j)| LinearForm::braid(ell, i, j)).collect()
}

/// The addition order behind the induction tables.
///
/// Constant, `l = 3`: rounds of `x1 - x2, x1 - x3, x2 - x3` on top of the simple
/// arrangement (or from `Phi_3` when `m = 1`). Constant, `l > 3`: `m` rounds of
/// `x_i - x_l` on top of `(B_{l-1}, m) x Phi_1`. Mixed: `q` rounds of `x1 - x_j`
/// on top of the constant arrangement.
pub fn paper_plan(pattern: &Recognized) -> Plan {
    match pattern {
        Recognized::Entry(e) => match e.pattern {
            MultiplicityPattern::Constant { m } => constant_plan(e.ell, m),
            MultiplicityPattern::Mixed { m, q } => {
                let base = CatalogEntry::constant(e.ell, m);
                Plan {
                    base: catalog_base(&base),
                    additions: (0..q).flat_map(|_| round(e.ell, (1..e.ell).map(|j| (0, j)))).collect(),
                }
            }
        },
        Recognized::Partial { ell, m, q, raised } => {
            let base = if *q == 0 {
                CatalogEntry::constant(*ell, *m)
            } else {
                CatalogEntry::mixed(*ell, *m, *q)
            };
            Plan {
                base: catalog_base(&base),
                additions: round(*ell, (1..=*raised).map(|j| (0, j))),
            }
        }
    }
}

fn catalog_base(entry: &CatalogEntry) -> PlanBase {
    PlanBase::Catalog {
        key: entry.to_string(),
        perm: (0..entry.ell).collect(),
        target: entry.build().expect("valid entry"),
    }
}

fn constant_plan(ell: usize, m: u32) -> Plan {
    match ell {
        2 => Plan {
            base: PlanBase::RankAtMost2(braid_constant(2, m)),
            additions: Vec::new(),
        },
        3 => {
            let triangle = || round(3, [(0, 1), (0, 2), (1, 2)].into_iter());
            if m == 1 {
                Plan {
                    base: PlanBase::Empty(3),
                    additions: triangle(),
                }
            } else {
                Plan {
                    base: PlanBase::RankAtMost2(braid_constant(3, 1)),
                    additions: (1..m).flat_map(|_| triangle()).collect(),
                }
            }
        }
        _ => {
            let coords: Vec<usize> = (0..ell - 1).collect();
            Plan {
                base: PlanBase::Product(braid_constant(ell - 1, m).embedded(&coords, ell)),
                additions: (0..m)
                    .flat_map(|_| round(ell, (0..ell - 1).map(|i| (i, ell - 1))))
                    .collect(),
            }
        }
    }
}

/// The addition sequence of [`paper_plan`] for a catalog pattern.
pub fn paper_order(ell: usize, pattern: MultiplicityPattern) -> Vec<LinearForm> {
    paper_plan(&Recognized::Entry(CatalogEntry { ell, pattern })).additions
}

/// Shape of a restricted braid multiarrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictionPattern {
    /// At most one hyperplane: only the total multiplicity is meaningful.
    Degenerate {
        total: u32,
    },
    Constant {
        m: u32,
    },
    /// Weight `m + q` on the forms through `distinguished`, `m` elsewhere.
    Mixed {
        m: u32,
        q: u32,
        distinguished: usize,
    },
    /// A mixed pattern part way through its next round: the forms
    /// `x_d - x_j` for `j` in `raised` carry one more.
    PartialMixed {
        m: u32,
        q: u32,
        distinguished: usize,
        raised: Vec<usize>,
    },
}

/// Classifies a multiarrangement as a type-A pattern.
pub fn classify(m: &Multiarrangement) -> Result<RestrictionPattern> {
    let m = m.normalized();
    if m.len() <= 1 {
        return Ok(RestrictionPattern::Degenerate { total: m.order() });
    }
    let (pattern, perm) = recognize(&m).ok_or_else(|| Error::PatternMismatch(m.to_string()))?;
    Ok(match pattern {
        Recognized::Entry(CatalogEntry {
            pattern: MultiplicityPattern::Constant { m },
            ..
        }) => RestrictionPattern::Constant { m },
        Recognized::Entry(CatalogEntry {
            pattern: MultiplicityPattern::Mixed { m, q },
            ..
        }) => RestrictionPattern::Mixed {
            m,
            q,
            distinguished: perm[0],
        },
        Recognized::Partial { m, q, raised, .. } => {
            let mut r = perm[1..=raised].to_vec();
            r.sort();
            RestrictionPattern::PartialMixed {
                m,
                q,
                distinguished: perm[0],
                raised: r,
            }
        }
    })
}

/// Restricts to `H0` and classifies the result.
pub fn restriction_pattern_check(m: &Multiarrangement, h0: usize) -> Result<RestrictionPattern> {
    classify(&restriction(m, h0)?.multiarrangement)
}

/// Expected against computed exponents for one catalog entry.
#[derive(Clone, Debug)]
pub struct CatalogReport {
    pub entry: CatalogEntry,
    pub expected: ExponentMultiset,
    /// Verified exponents of the essential arrangement, if a certificate was found.
    pub computed: Option<ExponentMultiset>,
    pub certificate: Option<Arc<InductionCertificate>>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.computed.as_ref() == Some(&self.expected)
    }
}

/// Builds the entry, searches for a certificate, verifies it and compares.
pub fn run_catalog(entry: &CatalogEntry, config: &SearchConfig) -> Result<CatalogReport> {
    let target = entry.build()?;
    let certificate = search(&target, config)?;
    let computed = match &certificate {
        Some(c) => Some(
            verify(c)?
                .strip_zeros(1)
                .ok_or_else(|| Error::Inconsistent("braid exponents lack the zero of the center".into()))?,
        ),
        None => None,
    };
    Ok(CatalogReport {
        entry: *entry,
        expected: entry.expected_exponents(),
        computed,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let b = braid_constant(3, 2);
        assert_eq!((b.len(), b.order()), (3, 6));
        assert_eq!(braid_constant(4, 1).len(), 6);
        assert!(braid_constant(4, 1).is_simple());

        let mixed = build(&BraidModel::essential(3), &MultiplicityPattern::Mixed { m: 1, q: 1 }).unwrap();
        assert_eq!(mixed.dim(), 2);
        assert_eq!(mixed.order(), 5);

        let q = braid_mixed(3, 1, 1).defining_polynomial();
        let expected =
            &(&Poly::linear(&[1, -1, 0]).pow(2) * &Poly::linear(&[1, 0, -1]).pow(2)) * &Poly::linear(&[0, 1, -1]);
        assert_eq!(q, expected);

        assert!(build(&BraidModel::full(1), &MultiplicityPattern::Constant { m: 1 }).is_err());
        assert!(build(&BraidModel::full(3), &MultiplicityPattern::Constant { m: 0 }).is_err());
    }

    use crate::algebra::Poly;

    #[test]
    fn exponent_formulas() {
        assert_eq!(expected_exponents_constant(4, 2), ExponentMultiset::from([4, 4, 4]));
        assert_eq!(expected_exponents_constant(4, 3), ExponentMultiset::from([5, 6, 7]));
        for m in 1..6 {
            assert_eq!(expected_exponents_constant(2, m), ExponentMultiset::from([m]));
        }
        assert_eq!(expected_exponents_mixed(3, 2, 2), ExponentMultiset::from([5, 5]));
        assert_eq!(expected_exponents_mixed(3, 1, 1), ExponentMultiset::from([2, 3]));
        assert_eq!(expected_exponents_mixed(5, 3, 0), expected_exponents_constant(5, 3));
    }

    #[test]
    fn exponent_sums() {
        for ell in 2..=8usize {
            let pairs = (ell * (ell - 1) / 2) as u32;
            for m in 1..=8 {
                let e = expected_exponents_constant(ell, m);
                assert_eq!(e.sum(), m * pairs);
                let distinct: std::collections::BTreeSet<_> = e.values().iter().collect();
                if m % 2 == 0 {
                    assert_eq!(distinct.len(), 1);
                } else {
                    assert_eq!(distinct.len(), ell - 1);
                    assert!(e.values().windows(2).all(|w| w[1] == w[0] + 1));
                }
            }
            for m in 1..=6 {
                for q in 0..=6 {
                    assert_eq!(
                        expected_exponents_mixed(ell, m, q).sum(),
                        m * pairs + q * (ell as u32 - 1)
                    );
                }
            }
        }
    }

    #[test]
    fn keys_roundtrip() {
        for key in ["braid:3:3", "mixed:4:1:2"] {
            let e: CatalogEntry = key.parse().unwrap();
            assert_eq!(e.to_string(), key);
        }
        for bad in ["braid:3", "mixed:3:1", "tree:3:1", "braid:x:1", "braid:1:1"] {
            assert!(bad.parse::<CatalogEntry>().is_err(), "{bad}");
        }
    }

    #[test]
    fn recognition_up_to_relabeling() {
        let m = braid_mixed(4, 2, 1);
        let perm = vec![2, 0, 3, 1];
        let relabeled = m.permuted(&perm);
        let (pattern, found) = recognize(&relabeled).unwrap();
        assert_eq!(pattern, Recognized::Entry(CatalogEntry::mixed(4, 2, 1)));
        assert!(pattern.build().permuted(&found).same_multiset(&relabeled));

        let partial = braid_mixed(4, 1, 1).with_added(&LinearForm::braid(4, 0, 2)).unwrap();
        let (pattern, found) = recognize(&partial).unwrap();
        assert_eq!(
            pattern,
            Recognized::Partial {
                ell: 4,
                m: 1,
                q: 1,
                raised: 1
            }
        );
        assert!(pattern.build().permuted(&found).same_multiset(&partial));

        let odd = Multiarrangement::from_raw(3, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]], &[1, 4, 1]).unwrap();
        assert_eq!(recognize(&odd), None);
    }

    #[test]
    fn paper_orders() {
        let order = paper_order(3, MultiplicityPattern::Constant { m: 3 });
        let names: Vec<String> = order.iter().map(|f| f.to_string()).collect();
        assert_eq!(
            names,
            ["x1 - x2", "x1 - x3", "x2 - x3", "x1 - x2", "x1 - x3", "x2 - x3"]
        );
        let order = paper_order(4, MultiplicityPattern::Constant { m: 2 });
        let first: Vec<String> = order.iter().take(3).map(|f| f.to_string()).collect();
        assert_eq!(first, ["x1 - x4", "x2 - x4", "x3 - x4"]);
        assert_eq!(order.len(), 6);
        assert_eq!(paper_order(4, MultiplicityPattern::Mixed { m: 1, q: 2 }).len(), 6);
    }

    #[test]
    fn restriction_patterns() {
        let m = braid_constant(3, 2);
        assert_eq!(
            restriction_pattern_check(&m, 0).unwrap(),
            RestrictionPattern::Degenerate { total: 3 }
        );

        // First round of l = 4: adding x1 - x4 once to (B_3, m) x Phi_1.
        let base = braid_constant(3, 2).embedded(&[0, 1, 2], 4);
        let step = base.with_added(&LinearForm::braid(4, 0, 3)).unwrap();
        let h0 = step.index_of(&LinearForm::braid(4, 0, 3)).unwrap();
        assert_eq!(
            restriction_pattern_check(&step, h0).unwrap(),
            RestrictionPattern::Constant { m: 2 }
        );

        // Raising x1 - x2 on (B_4, m) with m even gives (m, m/2).
        for m in [2u32, 4] {
            let raised = braid_constant(4, m).with_added(&LinearForm::braid(4, 0, 1)).unwrap();
            match restriction_pattern_check(&raised, 0).unwrap() {
                RestrictionPattern::Mixed { m: mm, q, .. } => assert_eq!((mm, q), (m, m / 2)),
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
