use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// Exponent vector of a monomial in `x1..x_n`.
///
/// Ordered graded-lexicographically: higher total degree is larger, ties are
/// broken by the exponent of `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::one();
        for (x, &e) in point.iter().zip(&self.0) {
            if e > 0 {
                acc *= &x.pow(e);
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `degree` in `dim` variables, largest first.
pub fn monomials_of_degree(dim: usize, degree: u32) -> Vec<Monomial> {
    fn rec(dim: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == dim {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(dim, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if dim == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0; dim];
    rec(dim, 0, degree, &mut cur, &mut out);
    out
}

/// Number of monomials of the given degree in `dim` variables.
pub fn count_monomials(dim: usize, degree: u32) -> usize {
    if dim == 0 {
        return usize::from(degree == 0);
    }
    // binom(degree + dim - 1, dim - 1)
    let (n, k) = (degree as u128 + dim as u128 - 1, dim as u128 - 1);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc as usize
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

/// Dimension-checked polynomial arithmetic.
pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Result<Poly> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Mul => a * b,
    })
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(Monomial::one(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Scalar::one())
    }

    pub fn var(dim: usize, i: usize) -> Self {
        let mut p = Poly::zero(dim);
        p.add_term(Monomial::var(dim, i), Scalar::one());
        p
    }

    pub fn monomial(mono: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(mono.dim());
        p.add_term(mono, c);
        p
    }

    /// The linear form `sum coeffs[i] * x_{i+1}`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let dim = coeffs.len();
        let mut p = Poly::zero(dim);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(dim, i), Scalar::from(c));
        }
        p
    }

    pub fn linear_rational(coeffs: &[Scalar]) -> Self {
        let dim = coeffs.len();
        let mut p = Poly::zero(dim);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(dim, i), c.clone());
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial length differs from ambient dimension");
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest monomial and its coefficient in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.dim);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial(ex), c * &Scalar::from(e as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.dim);
        self.terms.iter().map(|(m, c)| c * &m.eval(point)).sum()
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients against an ordered monomial list; panics if a term is missing from it.
    pub fn to_dense(&self, index: &std::collections::HashMap<Monomial, usize>, len: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); len];
        for (m, c) in &self.terms {
            v[index[m]] = c.clone();
        }
        v
    }

    pub fn from_dense(dim: usize, monos: &[Monomial], coeffs: &[Scalar]) -> Poly {
        Poly::from_terms(dim, monos.iter().cloned().zip(coeffs.iter().cloned()))
    }

    /// Re-embeds the polynomial by sending variable `i` to variable `map[i]` of a `dim`-variable ring.
    pub fn relabel(&self, map: &[usize], dim: usize) -> Poly {
        let mut out = Poly::zero(dim);
        for (m, c) in &self.terms {
            let mut e = vec![0; dim];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = Poly::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::from(-1))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.dim)
    }
}

/// Sparse serialized form: a list of `[exponents, "coefficient"]` pairs.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            dim: self.dim,
            terms: self.terms.iter().rev().map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        if repr.terms.iter().any(|(m, _)| m.dim() != repr.dim) {
            return Err(serde::de::Error::custom("monomial length differs from dim"));
        }
        Ok(Poly::from_terms(repr.dim, repr.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(dim: usize, i: usize) -> Poly {
        Poly::var(dim, i)
    }

    #[test]
    fn binomial_square() {
        let d = &x(2, 0) - &x(2, 1);
        let sq = &d * &d;
        let expected = Poly::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), Scalar::from(1)),
                (Monomial::new(vec![1, 1]), Scalar::from(-2)),
                (Monomial::new(vec![0, 2]), Scalar::from(1)),
            ],
        );
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "x1^2 - 2*x1*x2 + x2^2");
    }

    #[test]
    fn additive_identity_and_pruning() {
        let p = Poly::linear(&[1, -1, 0]);
        assert_eq!(&p + &Poly::zero(3), p);
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).num_terms(), 0);
    }

    #[test]
    fn vandermonde_three_has_six_terms() {
        // Independent expansion: sum over permutations with sign of x_a^2 x_b.
        let v = &(&Poly::linear(&[1, -1, 0]) * &Poly::linear(&[1, 0, -1])) * &Poly::linear(&[0, 1, -1]);
        let mut oracle = Poly::zero(3);
        let perms = [
            ([0, 1, 2], 1),
            ([0, 2, 1], -1),
            ([1, 0, 2], -1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([2, 1, 0], -1),
        ];
        for (p, sign) in perms {
            let mut e = vec![0; 3];
            e[p[0]] = 2;
            e[p[1]] = 1;
            oracle.add_term(Monomial::new(e), Scalar::from(sign));
        }
        assert_eq!(v.degree(), Some(3));
        assert!(v.is_homogeneous());
        assert_eq!(v.num_terms(), 6);
        assert_eq!(v, oracle);
    }

    #[test]
    fn checked_arith_rejects_dimension_mismatch() {
        let a = Poly::one(2);
        let b = Poly::one(3);
        assert!(matches!(
            poly_arith(&a, &b, PolyOp::Add),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(poly_arith(&a, &a, PolyOp::Mul).is_ok());
    }

    #[test]
    fn monomial_counts() {
        for dim in 1..5 {
            for deg in 0..7 {
                assert_eq!(monomials_of_degree(dim, deg).len(), count_monomials(dim, deg));
            }
        }
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert_eq!(count_monomials(0, 3), 0);
    }

    #[test]
    fn derivative_and_eval() {
        let p = Poly::linear(&[1, -1]).pow(3);
        let dp = p.derivative(0);
        assert_eq!(dp, Poly::linear(&[1, -1]).pow(2).scale(&Scalar::from(3)));
        let pt = [Scalar::from(5), Scalar::from(2)];
        assert_eq!(p.eval(&pt), Scalar::from(27));
    }

    #[test]
    fn serde_roundtrip() {
        let p = &Poly::linear(&[2, -3]).pow(2) + &Poly::constant(2, Scalar::new(1, 3));
        let s = serde_json::to_string(&p).unwrap();
        let q: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
