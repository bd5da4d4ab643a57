//! Exact linear algebra over the rationals.
//!
//! Everything is built on an incremental reduced row echelon form. The RREF of
//! a matrix is unique, so kernels read off from it are deterministic no matter
//! the order rows are fed in: pivots sit in the leftmost nonzero column of each
//! reduced row, and the kernel basis has one vector per free column in
//! increasing column order.

use super::{Poly, Scalar};

/// Reduced row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    /// Rows sorted by pivot column; each row has a 1 in its pivot column and
    /// zeros in every other pivot column.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(rows: impl IntoIterator<Item = Vec<Scalar>>, ncols: usize) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduces `row` against the current pivots in place.
    pub fn reduce(&self, row: &mut [Scalar]) {
        assert_eq!(row.len(), self.ncols, "row length differs from column count");
        for (prow, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            axpy(row, &factor, prow, pc);
        }
    }

    /// Whether `row` lies in the current row space.
    pub fn contains(&self, row: &[Scalar]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(Scalar::is_zero)
    }

    /// Adds a row; returns true if the rank grew.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> bool {
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = row[p].recip();
        for c in row[p..].iter_mut() {
            if !c.is_zero() {
                *c *= &inv;
            }
        }
        for other in self.rows.iter_mut() {
            if other[p].is_zero() {
                continue;
            }
            let factor = other[p].clone();
            axpy(other, &factor, &row, p);
        }
        let at = self.pivots.partition_point(|&c| c < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, row);
        true
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.ncols];
            v[f] = Scalar::one();
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[pc] = -&row[f];
                }
            }
            out.push(v);
        }
        out
    }
}

/// `row -= factor * pivot_row`, touching columns from `start` on.
fn axpy(row: &mut [Scalar], factor: &Scalar, pivot_row: &[Scalar], start: usize) {
    for (r, p) in row[start..].iter_mut().zip(&pivot_row[start..]) {
        if !p.is_zero() {
            *r -= &(factor * p);
        }
    }
}

/// Exact kernel basis of a rectangular matrix given by rows.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    Echelon::from_rows(rows.iter().cloned(), ncols).kernel()
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize) -> usize {
    Echelon::from_rows(rows.iter().cloned(), ncols).rank()
}

pub fn mat_vec(rows: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Coefficients expressing `target` as a combination of `basis`, if possible.
pub fn solve_combination(basis: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    // Columns are basis vectors plus the target; a kernel vector with a
    // nonzero last entry gives the combination.
    let n = basis.len();
    let dim = target.len();
    let rows: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| {
            let mut r: Vec<Scalar> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let ker = kernel(&rows, n + 1);
    let v = ker.into_iter().find(|v| !v[n].is_zero())?;
    let scale = -v[n].recip();
    Some(v[..n].iter().map(|c| c * &scale).collect())
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_determinant(m: &[Vec<Poly>], dim: usize) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix is not square");
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, dim)
}

fn det_rec(m: &[Vec<Poly>], row: usize, cols: &[usize], dim: usize) -> Poly {
    if cols.is_empty() {
        return Poly::one(dim);
    }
    let mut acc = Poly::zero(dim);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, row + 1, &rest, dim);
        if minor.is_zero() {
            continue;
        }
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Scalar::from(v)).collect())
            .collect()
    }

    #[test]
    fn identity_has_empty_kernel() {
        let m = mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(kernel(&m, 3).is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = mat(&[&[0, 0, 0], &[0, 0, 0]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 3);
        assert_eq!(rank(&k, 3), 3);
    }

    #[test]
    fn rank_one_kernel() {
        let m = mat(&[&[1, 1], &[2, 2]]);
        let k = kernel(&m, 2);
        assert_eq!(k, vec![vec![Scalar::from(-1), Scalar::from(1)]]);
        // Scaled, the vector is (1, -1).
        let v: Vec<Scalar> = k[0].iter().map(|c| -c).collect();
        assert_eq!(v, vec![Scalar::from(1), Scalar::from(-1)]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let k = kernel(&m, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&m, v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn row_order_does_not_change_kernel() {
        let a = mat(&[&[1, 2, 3, 4], &[0, 1, -1, 2], &[3, 0, 1, 1]]);
        let mut b = a.clone();
        b.reverse();
        assert_eq!(kernel(&a, 4), kernel(&b, 4));
    }

    #[test]
    fn combination_solver() {
        let basis = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        let t = vec![Scalar::from(2), Scalar::from(3), Scalar::from(5)];
        assert_eq!(
            solve_combination(&basis, &t),
            Some(vec![Scalar::from(2), Scalar::from(3)])
        );
        let bad = vec![Scalar::from(2), Scalar::from(3), Scalar::from(4)];
        assert_eq!(solve_combination(&basis, &bad), None);
    }

    #[test]
    fn determinant_of_polynomial_matrix() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let m = vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]];
        assert_eq!(poly_determinant(&m, 2), &(&x * &x) - &(&y * &y));
        assert_eq!(poly_determinant(&[], 2), Poly::one(2));
    }
}
