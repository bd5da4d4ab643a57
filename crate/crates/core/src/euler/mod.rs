//! Deletion, restriction with Euler multiplicities, and Addition-Deletion inference.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{
    essentialize_with, localization, restrict_simple, Completion, Flat, LinearForm, Multiarrangement,
};
use crate::error::{Error, Result};
use crate::oracle::{graded_dimension, oracle_exponents, ExponentMultiset};

/// Which rule produced an Euler multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EulerPath {
    Fast1,
    Fast2,
    Fast3,
    General,
}

impl fmt::Display for EulerPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EulerPath::Fast1 => "fast1",
            EulerPath::Fast2 => "fast2",
            EulerPath::Fast3 => "fast3",
            EulerPath::General => "general",
        })
    }
}

/// Local data of a rank-2 flat `X` through `H0` and the resulting `nu*(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerRecord {
    pub k: usize,
    pub nu0: u32,
    pub nu1: u32,
    /// `|nu_X|`.
    pub order: u32,
    pub value: u32,
    #[serde(rename = "euler_path")]
    pub path: EulerPath,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EulerMode {
    /// Fast rules where they apply, the general computation otherwise.
    #[default]
    Auto,
    /// Always the general computation.
    General,
}

/// `(A', nu')`: one copy of `H0` removed.
pub fn deletion(m: &Multiarrangement, h0: usize) -> Result<Multiarrangement> {
    m.check_index(h0)?;
    match m.mult(h0) {
        0 => Err(Error::ZeroMultiplicity { index: h0 }),
        1 => {
            let pairs = m
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != h0)
                .map(|(_, (f, v))| (f.clone(), v))
                .collect();
            Multiarrangement::from_pairs(m.dim(), pairs)
        }
        v => Ok(m.with_multiplicity(h0, v - 1)),
    }
}

struct LocalData {
    loc: Multiarrangement,
    k: usize,
    nu0: u32,
    nu1: u32,
    order: u32,
}

fn local_data(m: &Multiarrangement, h0: usize, y: &Flat) -> Result<LocalData> {
    m.check_index(h0)?;
    if y.rank != 2 {
        return Err(Error::NotRank2Flat { rank: y.rank });
    }
    if !y.contains_hyperplane(h0) {
        return Err(Error::HyperplaneNotInFlat);
    }
    let loc = localization(m, y)?.normalized();
    let h0_form = &m.forms()[h0];
    let nu0 = m.mult(h0);
    let nu1 = loc
        .iter()
        .filter(|(f, _)| *f != h0_form)
        .map(|(_, v)| v)
        .max()
        .unwrap_or(0);
    let k = loc.len() + usize::from(nu0 == 0);
    Ok(LocalData {
        k,
        nu0,
        nu1,
        order: loc.order(),
        loc,
    })
}

/// `nu*(Y)` from the rank-2 derivation module of the localization at `Y`.
pub fn euler_general(m: &Multiarrangement, h0: usize, y: &Flat) -> Result<u32> {
    euler_general_with(m, h0, y, Completion::Forward)
}

/// As [`euler_general`], choosing how the essential coordinates are completed.
pub fn euler_general_with(m: &Multiarrangement, h0: usize, y: &Flat, completion: Completion) -> Result<u32> {
    let data = local_data(m, h0, y)?;
    let h0_form = &m.forms()[h0];
    if data.loc.iter().all(|(f, _)| f == h0_form) {
        return Ok(0);
    }
    let ess = essentialize_with(&data.loc, Some(h0_form), completion);
    let local = ess.multiarrangement;
    debug_assert_eq!(local.dim(), 2);
    let exps = oracle_exponents(&local, None)?
        .exponents()
        .cloned()
        .ok_or_else(|| Error::Inconsistent("rank-2 multiarrangement reported non-free".into()))?;
    let (d1, d2) = (exps.values()[0], exps.values()[1]);
    // alpha_0 is the first essential coordinate, so membership in alpha_0 Der(S)
    // means every coefficient is divisible by that variable.
    let (_, piece) = graded_dimension(&local, d1);
    let outside = piece.basis.iter().any(|theta| {
        theta
            .coeffs()
            .iter()
            .any(|c| c.terms().any(|(mono, _)| mono.exponent(0) == 0))
    });
    Ok(if outside { d1 } else { d2 })
}

/// The closed-form rules for `nu*(Y)`, when one applies.
pub fn euler_fast_path(m: &Multiarrangement, h0: usize, y: &Flat) -> Result<Option<(u32, EulerPath)>> {
    let d = local_data(m, h0, y)?;
    Ok(fast_rule(d.k, d.nu0, d.nu1, d.order))
}

fn fast_rule(k: usize, nu0: u32, nu1: u32, order: u32) -> Option<(u32, EulerPath)> {
    if k < 2 {
        return None;
    }
    if k == 3 && 2 * nu0 <= order && 2 * nu1 <= order {
        return Some((order / 2, EulerPath::Fast1));
    }
    if k == 2 {
        return Some((nu1, EulerPath::Fast2));
    }
    if 2 * nu1 + 1 >= order {
        return Some((nu1, EulerPath::Fast3));
    }
    None
}

/// Full Euler data at `Y`, recording which rule was used.
pub fn euler_multiplicity(m: &Multiarrangement, h0: usize, y: &Flat, mode: EulerMode) -> Result<EulerRecord> {
    let d = local_data(m, h0, y)?;
    let fast = match mode {
        EulerMode::Auto => fast_rule(d.k, d.nu0, d.nu1, d.order),
        EulerMode::General => None,
    };
    let (value, path) = match fast {
        Some(v) => v,
        None => (euler_general(m, h0, y)?, EulerPath::General),
    };
    Ok(EulerRecord {
        k: d.k,
        nu0: d.nu0,
        nu1: d.nu1,
        order: d.order,
        value,
        path,
    })
}

/// `(A'', nu*)` with, for every restricted hyperplane, the flat it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub multiarrangement: Multiarrangement,
    /// Original coordinate of each coordinate on `H0`.
    pub coords: Vec<usize>,
    /// Hyperplanes of the original through each restricted hyperplane, `H0` first.
    pub flats: Vec<Vec<LinearForm>>,
    pub records: Vec<EulerRecord>,
}

impl Restriction {
    pub fn provenance(&self) -> Vec<Provenance> {
        self.multiarrangement
            .iter()
            .zip(&self.flats)
            .zip(&self.records)
            .map(|(((f, v), flat), rec)| Provenance {
                hyperplane: f.clone(),
                multiplicity: v,
                flat: flat.clone(),
                euler: rec.clone(),
            })
            .collect()
    }
}

/// Restriction to `H0` with Euler multiplicities.
pub fn restriction(m: &Multiarrangement, h0: usize) -> Result<Restriction> {
    restriction_with(m, h0, EulerMode::Auto)
}

pub fn restriction_with(m: &Multiarrangement, h0: usize, mode: EulerMode) -> Result<Restriction> {
    m.check_index(h0)?;
    if m.mult(h0) == 0 {
        return Err(Error::ZeroMultiplicity { index: h0 });
    }
    let n = m.normalized();
    let form = &m.forms()[h0];
    let h = n
        .index_of(form)
        .expect("hyperplane of positive multiplicity survives normalization");
    let simple = restrict_simple(n.arrangement(), h)?;
    let mut pairs = Vec::new();
    let mut flats = Vec::new();
    let mut records = Vec::new();
    for (image, pre) in simple.arrangement.forms().iter().zip(&simple.preimages) {
        let y = Flat::of_forms(n.arrangement(), &[h, pre[0]])?;
        let rec = euler_multiplicity(&n, h, &y, mode)?;
        pairs.push((image.clone(), rec.value));
        let mut through = vec![form.clone()];
        through.extend(pre.iter().map(|&i| n.forms()[i].clone()));
        flats.push(through);
        records.push(rec);
    }
    Ok(Restriction {
        multiarrangement: Multiarrangement::from_pairs(simple.arrangement.dim(), pairs)?,
        coords: simple.coords,
        flats,
        records,
    })
}

/// `(A, nu)`, `(A', nu')`, `(A'', nu*)` with respect to `H0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub original: Multiarrangement,
    pub distinguished: usize,
    pub deleted: Multiarrangement,
    pub restricted: Restriction,
}

pub fn triple(m: &Multiarrangement, h0: usize) -> Result<Triple> {
    triple_with(m, h0, EulerMode::Auto)
}

pub fn triple_with(m: &Multiarrangement, h0: usize, mode: EulerMode) -> Result<Triple> {
    Ok(Triple {
        original: m.clone(),
        distinguished: h0,
        deleted: deletion(m, h0)?,
        restricted: restriction_with(m, h0, mode)?,
    })
}

/// One restricted hyperplane with the flat it comes from and its Euler data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub hyperplane: LinearForm,
    pub multiplicity: u32,
    pub flat: Vec<LinearForm>,
    #[serde(flatten)]
    pub euler: EulerRecord,
}

#[derive(Serialize, Deserialize)]
struct TripleJson {
    original: Multiarrangement,
    distinguished: LinearForm,
    deleted: Multiarrangement,
    restricted: Multiarrangement,
    restricted_coords: Vec<usize>,
    provenance: Vec<Provenance>,
}

impl Serialize for Triple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = &self.restricted;
        TripleJson {
            original: self.original.clone(),
            distinguished: self.original.forms()[self.distinguished].clone(),
            deleted: self.deleted.clone(),
            restricted: r.multiarrangement.clone(),
            restricted_coords: r.coords.clone(),
            provenance: r.provenance(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = TripleJson::deserialize(d)?;
        let distinguished = j
            .original
            .index_of(&j.distinguished)
            .ok_or_else(|| D::Error::custom("distinguished hyperplane not in the original"))?;
        let (flats, records) = j.provenance.into_iter().map(|p| (p.flat, p.euler)).unzip();
        Ok(Triple {
            original: j.original,
            distinguished,
            deleted: j.deleted,
            restricted: Restriction {
                multiarrangement: j.restricted,
                coords: j.restricted_coords,
                flats,
                records,
            },
        })
    }
}

/// Addition: from `exp(A', nu')` and `exp(A'', nu*)` infer `exp(A, nu)` when
/// the restriction's exponents sit inside the deletion's.
pub fn addition_deletion_infer(
    exp_deleted: &ExponentMultiset,
    exp_restricted: &ExponentMultiset,
) -> Result<Option<ExponentMultiset>> {
    if exp_deleted.len() != exp_restricted.len() + 1 {
        return Err(Error::SizeMismatch {
            deleted: exp_deleted.len(),
            restricted: exp_restricted.len(),
        });
    }
    Ok(exp_deleted
        .difference(exp_restricted)
        .map(|rest| exp_restricted.with(rest.values()[0] + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::rank2_flats;
    use crate::catalog::braid_constant;

    fn raw(dim: usize, forms: &[&[i64]], mult: &[u32]) -> Multiarrangement {
        let forms: Vec<Vec<i64>> = forms.iter().map(|f| f.to_vec()).collect();
        Multiarrangement::from_raw(dim, &forms, mult).unwrap()
    }

    #[test]
    fn deletion_branches() {
        let simple = braid_constant(3, 1);
        let d = deletion(&simple, 0).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.mults(), &[1, 1]);
        assert!(!d.forms().contains(&LinearForm::braid(3, 0, 1)));

        let double = braid_constant(3, 2);
        let d = deletion(&double, 0).unwrap();
        assert_eq!(d.mults(), &[1, 2, 2]);
        let back = d.with_added(&double.forms()[0]).unwrap();
        assert!(back.same_multiset(&double));

        let zero = double.with_multiplicity(1, 0);
        assert!(matches!(deletion(&zero, 1), Err(Error::ZeroMultiplicity { index: 1 })));
    }

    #[test]
    fn raised_triple_point() {
        for m in 1..=5u32 {
            let y = raw(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]], &[m + 1, m, m]);
            let flat = Flat::center(y.arrangement());
            assert_eq!(euler_general(&y, 0, &flat).unwrap(), (3 * m).div_ceil(2));
            let fast = euler_fast_path(&y, 0, &flat).unwrap();
            assert_eq!(fast, Some(((3 * m).div_ceil(2), EulerPath::Fast1)));
        }
    }

    #[test]
    fn raised_double_point() {
        for m in 1..=5u32 {
            let y = raw(4, &[&[1, -1, 0, 0], &[0, 0, 1, -1]], &[m + 1, m]);
            let flat = Flat::center(y.arrangement());
            assert_eq!(euler_general(&y, 0, &flat).unwrap(), m);
            assert_eq!(euler_fast_path(&y, 0, &flat).unwrap(), Some((m, EulerPath::Fast2)));
        }
    }

    #[test]
    fn lone_hyperplane_flat_gives_zero() {
        let y = raw(3, &[&[1, 0, 0], &[0, 1, 0]], &[2, 0]);
        let flat = Flat::center(y.arrangement());
        assert_eq!(euler_general(&y, 0, &flat).unwrap(), 0);
        assert_eq!(euler_fast_path(&y, 0, &flat).unwrap(), None);
    }

    #[test]
    fn no_fast_rule_for_four_simple_lines() {
        let y = raw(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]], &[1, 1, 1, 1]);
        let flat = Flat::center(y.arrangement());
        assert_eq!(euler_fast_path(&y, 0, &flat).unwrap(), None);
        let rec = euler_multiplicity(&y, 0, &flat, EulerMode::Auto).unwrap();
        assert_eq!(rec.path, EulerPath::General);
    }

    #[test]
    fn flat_errors() {
        let m = braid_constant(4, 1);
        let whole = Flat::whole_space(m.arrangement());
        assert!(matches!(
            euler_general(&m, 0, &whole),
            Err(Error::NotRank2Flat { rank: 0 })
        ));
        let flats = rank2_flats(m.arrangement());
        let away = flats.iter().find(|f| !f.contains_hyperplane(0)).unwrap();
        assert!(matches!(euler_general(&m, 0, away), Err(Error::HyperplaneNotInFlat)));
    }

    #[test]
    fn simple_braid_three_restriction() {
        let r = restriction(&braid_constant(3, 1), 0).unwrap();
        assert_eq!(r.multiarrangement.len(), 1);
        assert_eq!(r.multiarrangement.mults(), &[1]);
        let general = restriction_with(&braid_constant(3, 1), 0, EulerMode::General).unwrap();
        assert_eq!(general.multiarrangement.mults(), &[1]);
    }

    #[test]
    fn coordinate_completion_does_not_matter() {
        let m = raw(3, &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]], &[2, 3, 1]);
        let flat = Flat::center(m.arrangement());
        for h in 0..3 {
            assert_eq!(
                euler_general_with(&m, h, &flat, Completion::Forward).unwrap(),
                euler_general_with(&m, h, &flat, Completion::Reverse).unwrap()
            );
        }
    }

    #[test]
    fn inference() {
        let e = |v: &[u32]| ExponentMultiset::new(v.to_vec());
        assert_eq!(
            addition_deletion_infer(&e(&[2, 3]), &e(&[3])).unwrap(),
            Some(e(&[3, 3]))
        );
        assert_eq!(
            addition_deletion_infer(&e(&[1, 2]), &e(&[2])).unwrap(),
            Some(e(&[2, 2]))
        );
        assert_eq!(addition_deletion_infer(&e(&[1, 3]), &e(&[2])).unwrap(), None);
        assert!(matches!(
            addition_deletion_infer(&e(&[1, 3]), &e(&[])),
            Err(Error::SizeMismatch {
                deleted: 2,
                restricted: 0
            })
        ));
    }

    #[test]
    fn triple_json_roundtrip() {
        let t = triple(&braid_constant(4, 2), 2).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.contains("\"euler_path\":\"fast"));
        let back: Triple = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.deleted.order() + 1, t.original.order());
    }
}
