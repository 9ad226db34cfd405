//! Dense matrices over Q with exact Gaussian elimination.

use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        Self { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c);
                row.iter().cloned()
            })
            .collect();
        Self::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, piv);
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &factor * m.get(row, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column, with a 1 in
    /// that free column (reduced echelon normalization).
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = -det;
            }
            let p = m.get(col, col).clone();
            det *= &p;
            for i in col + 1..n {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) / &p;
                for j in col..n {
                    let v = m.get(i, j) - &factor * m.get(col, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Basis of the right kernel of `m`.
pub fn matrix_kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel()
}

/// Incrementally maintained echelon basis of a subspace of Q^n.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let c = v[*piv].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x -= &c * r;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut r = self.reduce(v);
        let Some(piv) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[piv].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[piv].is_zero() {
                continue;
            }
            let c = row[piv].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                *x -= &c * y;
            }
        }
        self.rows.push((piv, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::int;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_rows(
            &rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn kernel_examples() {
        assert!(matrix_kernel(&RationalMatrix::identity(2)).is_empty());
        assert_eq!(
            matrix_kernel(&RationalMatrix::zero(2, 2)),
            vec![vec![int(1), int(0)], vec![int(0), int(1)]]
        );
        let k = matrix_kernel(&m(&[&[1, 1], &[2, 2]]));
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn solve_and_determinant() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(a.determinant(), int(5));
        let x = a.solve(&[int(3), int(4)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(3), int(4)]);
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[int(0), int(1)]).is_none());
    }

    #[test]
    fn echelon_basis_membership() {
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&[int(1), int(2), int(0)]));
        assert!(b.insert(&[int(0), int(1), int(1)]));
        assert!(!b.insert(&[int(1), int(3), int(1)]));
        assert!(b.contains(&[int(2), int(5), int(1)]));
        assert!(!b.contains(&[int(0), int(0), int(1)]));
    }
}
