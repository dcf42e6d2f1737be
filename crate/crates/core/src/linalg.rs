//! Dense linear algebra over an exact field.

use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<F::Elem>>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<F::Elem>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i][j]
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let p = field.mul(a, &other.data[k][j]);
                    out.data[i][j] = field.add(&out.data[i][j], &p);
                }
            }
        }
        out
    }

    /// Select the given columns.
    pub fn columns(&self, cols: &[usize]) -> Self {
        let data = self
            .data
            .iter()
            .map(|r| cols.iter().map(|&j| r[j].clone()).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn rank(&self, field: &F) -> usize {
        let mut m = self.clone();
        m.rref(field).len()
    }

    pub fn determinant(&self, field: &F) -> F::Elem {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !field.is_zero(&a[r][c])) else {
                return field.zero();
            };
            if p != c {
                a.swap(p, c);
                det = field.neg(&det);
            }
            det = field.mul(&det, &a[c][c]);
            let inv = field.inv(&a[c][c]).unwrap();
            for r in c + 1..n {
                if field.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = field.mul(&a[r][c], &inv);
                let (top, bottom) = a.split_at_mut(r);
                let pivot_row = &top[c];
                for (x, y) in bottom[0][c..].iter_mut().zip(&pivot_row[c..]) {
                    field.sub_mul_assign(x, &factor, y);
                }
            }
        }
        det
    }

    /// In-place reduced row echelon form; returns pivot columns. Zero rows
    /// are removed.
    pub fn rref(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.data.len() {
                break;
            }
            let Some(p) = (r..self.data.len()).find(|&i| !field.is_zero(&self.data[i][c])) else {
                continue;
            };
            self.data.swap(p, r);
            let inv = field.inv(&self.data[r][c]).unwrap();
            for x in self.data[r][c..].iter_mut() {
                *x = field.mul(x, &inv);
            }
            let pivot_row = self.data[r].clone();
            for (i, row) in self.data.iter_mut().enumerate() {
                if i == r || field.is_zero(&row[c]) {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    field.sub_mul_assign(x, &factor, y);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r);
        self.rows = r;
        pivots
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self, field: &F) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = field.neg(&m.data[row][free]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self, field: &F) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::from_rows(
            self.data
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut row = r.clone();
                    row.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
                    row
                })
                .collect(),
        );
        let pivots = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(aug.data.into_iter().map(|r| r[n..].to_vec()).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn determinant_and_inverse() {
        let f = Rationals;
        let m = Matrix::<Rationals>::from_rows(vec![
            vec![f.from_i64(2), f.from_i64(1), f.from_i64(0)],
            vec![f.from_i64(1), f.from_i64(3), f.from_i64(1)],
            vec![f.from_i64(0), f.from_i64(1), f.from_i64(4)],
        ]);
        assert_eq!(m.determinant(&f), f.from_i64(18));
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(&f, 3));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::<PrimeField>::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(&f), 1);
        let k = m.kernel(&f);
        assert_eq!(k.len(), 2);
        for v in k {
            let s = (0..3).fold(0, |acc, j| f.add(&acc, &f.mul(&m.data[0][j], &v[j])));
            assert_eq!(s, 0);
        }
        assert_eq!(m.columns(&[0, 1]).rank(&f), 1);
        let sq = Matrix::<PrimeField>::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(sq.determinant(&f), 0);
        assert!(sq.inverse(&f).is_none());
    }
}
