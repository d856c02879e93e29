//! Dense row-major matrices over any [`Field`]: products, exact Gaussian
//! elimination, determinants, cofactors and adjugates.

use std::ops::{Index, IndexMut};

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize, zero: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![zero; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<T>(&self, f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        Self {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols, field.zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = field.mul(a, &other[(k, j)]);
                    out[(i, j)] = field.add(&out[(i, j)], &t);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| field.add(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        self.map(|a| field.mul(c, a))
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|a| field.is_zero(a))
    }

    /// Reduces to reduced row echelon form in place and returns the pivot columns.
    pub fn row_reduce<F: Field<Elem = E>>(&mut self, field: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(&self[(i, c)])) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = field.inv(&self[(r, c)]).expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = field.mul(&self[(r, j)], &inv);
            }
            for i in 0..self.rows {
                if i == r || field.is_zero(&self[(i, c)]) {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let t = field.mul(&factor, &self[(r, j)]);
                    self[(i, j)] = field.sub(&self[(i, j)], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        let mut m = self.clone();
        m.forward_eliminate(field).0
    }

    /// Forward elimination without back substitution. Returns the rank and
    /// whether an odd number of row swaps happened.
    fn forward_eliminate<F: Field<Elem = E>>(&mut self, field: &F) -> (usize, bool) {
        let mut r = 0;
        let mut odd = false;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !field.is_zero(&self[(i, c)])) else {
                continue;
            };
            if p != r {
                self.swap_rows(r, p);
                odd = !odd;
            }
            let inv = field.inv(&self[(r, c)]).expect("pivot is nonzero");
            for i in r + 1..self.rows {
                if field.is_zero(&self[(i, c)]) {
                    continue;
                }
                let factor = field.mul(&self[(i, c)], &inv);
                for j in c..self.cols {
                    let t = field.mul(&factor, &self[(r, j)]);
                    self[(i, j)] = field.sub(&self[(i, j)], &t);
                }
            }
            r += 1;
        }
        (r, odd)
    }

    /// Determinant by elimination; each row swap contributes a factor of -1.
    pub fn determinant<F: Field<Elem = E>>(&self, field: &F) -> E {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return field.one();
        }
        let mut m = self.clone();
        let (rank, odd) = m.forward_eliminate(field);
        if rank < self.rows {
            return field.zero();
        }
        let det = (0..self.rows).fold(field.one(), |acc, i| field.mul(&acc, &m[(i, i)]));
        if odd {
            field.neg(&det)
        } else {
            det
        }
    }

    /// The `(r, c)` cofactor `(-1)^(r+c) det(minor(r, c))`.
    pub fn cofactor<F: Field<Elem = E>>(&self, field: &F, r: usize, c: usize) -> E {
        let d = self.minor(r, c).determinant(field);
        if (r + c) % 2 == 1 {
            field.neg(&d)
        } else {
            d
        }
    }

    /// Classical adjugate: entry `(i, j)` is the `(j, i)` cofactor.
    pub fn adjugate<F: Field<Elem = E>>(&self, field: &F) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 1 {
            return Self::identity(field, 1);
        }
        Self::from_fn(n, n, |i, j| self.cofactor(field, j, i))
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                field.one()
            } else {
                field.zero()
            }
        });
        let pivots = aug.row_reduce(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// The unique solution of `self * x = rhs`, or `None` when the system is
    /// inconsistent or the columns are dependent.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, rhs: &[E]) -> Option<Vec<E>> {
        assert_eq!(self.rows, rhs.len(), "dimension mismatch");
        let n = self.cols;
        let mut aug = Self::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let pivots = aug.row_reduce(field);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some((0..n).map(|i| aug[(i, n)].clone()).collect())
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per free column.
    pub fn null_space<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut m = self.clone();
        let pivots = m.row_reduce(field);
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![field.zero(); self.cols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&m[(r, f)]);
            }
            v
        })
        .collect()
    }
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;

    fn index(&self, (i, j): (usize, usize)) -> &E {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}
