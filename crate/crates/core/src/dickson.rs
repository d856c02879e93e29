//! Dickson (sigma-circulant) matrices `D_L = (a_{j-i}^(q^i))`.
//!
//! `L -> D_L` is an algebra isomorphism from linearized polynomials under
//! composition onto Dickson matrices under matrix product. Rank and
//! determinant of `D_L` are those of `L` as a GF(q)-linear map, and the
//! classical adjugate of a Dickson matrix is again a Dickson matrix, which
//! gives the adjugate polynomial `L*` with `L ∘ L* = L* ∘ L = det(L) x`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldTower, Fq, FqnElement};
use crate::linearized::{same_tower, twisted_convolution, LinPoly};
use crate::matrix::Matrix;
use crate::moore;

/// Stored by first row; entries are derived on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicksonMatrix {
    tower: Arc<FieldTower>,
    first_row: Vec<FqnElement>,
}

impl DicksonMatrix {
    pub fn from_poly(l: &LinPoly) -> Self {
        Self {
            tower: Arc::clone(l.tower()),
            first_row: l.coeffs().to_vec(),
        }
    }

    pub fn to_poly(&self) -> LinPoly {
        LinPoly::from_parts(&self.tower, self.first_row.clone())
    }

    /// Recovers the first row of a full matrix, checking every entry against
    /// `entry(i, j) = first_row[j - i]^(q^i)`.
    pub fn from_matrix(tower: &Arc<FieldTower>, m: &Matrix<FqnElement>) -> Result<Self> {
        let n = tower.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::TowerMismatch);
        }
        let first_row = m.row(0).to_vec();
        for c in &first_row {
            tower.check(c)?;
        }
        let d = Self {
            tower: Arc::clone(tower),
            first_row,
        };
        for i in 1..n {
            for j in 0..n {
                if m[(i, j)] != d.entry(i, j) {
                    return Err(Error::NotDickson);
                }
            }
        }
        Ok(d)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn first_row(&self) -> &[FqnElement] {
        &self.first_row
    }

    pub fn entry(&self, i: usize, j: usize) -> FqnElement {
        let n = self.tower.n();
        let k = (j + n - i % n) % n;
        self.tower.frobenius(&self.first_row[k], i)
    }

    pub fn to_matrix(&self) -> Matrix<FqnElement> {
        let n = self.tower.n();
        Matrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// Product through the first-row convolution `c_i = sum_k a_k b_{i-k}^(q^k)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_tower(&self.tower, &other.tower) {
            return Err(Error::TowerMismatch);
        }
        Ok(Self {
            tower: Arc::clone(&self.tower),
            first_row: twisted_convolution(&self.tower, &self.first_row, &other.first_row),
        })
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank(&*self.tower)
    }

    /// Determinant by elimination over GF(q^n); always lies in GF(q).
    pub fn determinant(&self) -> FqnElement {
        self.to_matrix().determinant(&*self.tower)
    }

    /// The classical adjugate, validated as a Dickson matrix.
    pub fn adjugate(&self) -> Result<Self> {
        let adj = self.to_matrix().adjugate(&*self.tower);
        Self::from_matrix(&self.tower, &adj)
    }

    /// The `(i, 0)` cofactors of the matrix, i.e. the first row of its adjugate.
    pub fn first_column_cofactors(&self) -> Vec<FqnElement> {
        let full = self.to_matrix();
        (0..self.tower.n())
            .map(|i| full.cofactor(&*self.tower, i, 0))
            .collect()
    }
}

/// The adjugate polynomial `L*`, whose coefficients are the `(i, 0)` cofactors
/// of `D_L`. Zero when `rank L <= n - 2`.
pub fn adjugate_poly(l: &LinPoly) -> LinPoly {
    let cof = DicksonMatrix::from_poly(l).first_column_cofactors();
    LinPoly::from_parts(l.tower(), cof)
}

/// `det L` by Laplace expansion along the first column of `D_L`:
/// `sum_i a_{n-i}^(q^i) * cofactor(i, 0)`.
pub fn laplace_determinant(l: &LinPoly) -> FqnElement {
    let t = &**l.tower();
    let d = DicksonMatrix::from_poly(l);
    d.first_column_cofactors()
        .iter()
        .enumerate()
        .fold(t.zero(), |acc, (i, c)| t.add(&acc, &t.mul(&d.entry(i, 0), c)))
}

/// Composition inverse `L^-1 = det(L)^-1 * sum cofactor(i, 0) x^(q^i)`.
pub fn inverse_poly(l: &LinPoly) -> Result<LinPoly> {
    let t = &**l.tower();
    let d = DicksonMatrix::from_poly(l);
    let cof = d.first_column_cofactors();
    let det = cof
        .iter()
        .enumerate()
        .fold(t.zero(), |acc, (i, c)| t.add(&acc, &t.mul(&d.entry(i, 0), c)));
    if det.is_zero() {
        return Err(Error::NotAPermutation);
    }
    let det = t
        .to_base(&det)
        .ok_or_else(|| Error::InvariantViolated("Dickson determinant outside GF(q)".into()))?;
    let det_inv = t.base().inv(&det).expect("nonzero determinant");
    let coeffs = cof.iter().map(|c| t.scale(det_inv, c)).collect();
    Ok(LinPoly::from_parts(l.tower(), coeffs))
}

/// Matrix of `L` in `basis` (column `j` = coordinates of `L(basis[j])`),
/// computed by conjugating the Dickson matrix with the Moore matrix of the
/// basis: `M_L = B^-1 D_L B`, `B = (beta_j^(q^i))`.
pub fn matrix_rep(l: &LinPoly, basis: &[FqnElement]) -> Result<Matrix<Fq>> {
    let t = l.tower();
    let b = moore::MooreMatrix::new(t, basis.to_vec())?;
    if basis.len() != t.n() {
        return Err(Error::NotABasis);
    }
    let b = b.to_matrix();
    let b_inv = b.inverse(&**t).ok_or(Error::NotABasis)?;
    let d = DicksonMatrix::from_poly(l).to_matrix();
    let m = b_inv.mul(&**t, &d.mul(&**t, &b));
    let entries = m
        .data()
        .iter()
        .map(|x| t.to_base(x))
        .collect::<Option<Vec<Fq>>>()
        .ok_or_else(|| Error::InvariantViolated("conjugated matrix has entries outside GF(q)".into()))?;
    Ok(Matrix::from_fn(m.rows(), m.cols(), |i, j| entries[i * m.cols() + j]))
}

/// The same matrix from `m_ij = tr(beta_i* L(beta_j))`, using the dual basis.
pub fn matrix_rep_direct(l: &LinPoly, basis: &[FqnElement]) -> Result<Matrix<Fq>> {
    let t = l.tower();
    let dual = moore::dual_basis(t, basis)?;
    let images = l.images(basis);
    Ok(Matrix::from_fn(basis.len(), basis.len(), |i, j| {
        t.trace_base(&t.mul(&dual[i], &images[j]))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(2, &[1, 1], &[vec![1], vec![1], vec![1]]).unwrap())
    }

    fn el(t: &FieldTower, c: &[u32]) -> FqnElement {
        t.element(&c.iter().map(|&x| Fq(x)).collect::<Vec<_>>()).unwrap()
    }

    fn poly(t: &Arc<FieldTower>, cs: &[&[u32]]) -> LinPoly {
        LinPoly::new(t, cs.iter().map(|c| el(t, c)).collect()).unwrap()
    }

    const ZERO: &[u32] = &[0, 0];
    const ONE: &[u32] = &[1, 0];
    const W: &[u32] = &[0, 1];
    const W1: &[u32] = &[1, 1];

    fn mat(t: &FieldTower, rows: &[&[&[u32]]]) -> Matrix<FqnElement> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|c| el(t, c)).collect()).collect())
    }

    #[test]
    fn from_poly_worked_example() {
        let t = gf4();
        let d = DicksonMatrix::from_poly(&poly(&t, &[W, ONE]));
        assert_eq!(d.to_matrix(), mat(&t, &[&[W, ONE], &[ONE, W1]]));
        let id = DicksonMatrix::from_poly(&LinPoly::identity(&t));
        assert_eq!(id.to_matrix(), Matrix::identity(&*t, 2));
        assert_eq!(DicksonMatrix::from_poly(&LinPoly::zero(&t)).to_matrix(), Matrix::zeros(2, 2, t.zero()));
    }

    #[test]
    fn from_matrix_rejects_non_dickson() {
        let t = gf4();
        let bad = mat(&t, &[&[W, ONE], &[ONE, W]]);
        assert_eq!(DicksonMatrix::from_matrix(&t, &bad), Err(Error::NotDickson));
        let good = mat(&t, &[&[W, ONE], &[ONE, W1]]);
        assert_eq!(DicksonMatrix::from_matrix(&t, &good).unwrap().to_poly(), poly(&t, &[W, ONE]));
    }

    #[test]
    fn product_worked_example() {
        let t = gf4();
        let dx2 = DicksonMatrix::from_poly(&poly(&t, &[ZERO, ONE]));
        let dwx = DicksonMatrix::from_poly(&poly(&t, &[W, ZERO]));
        assert_eq!(dx2.mul(&dwx).unwrap().to_poly(), poly(&t, &[ZERO, W1]));
        let id = DicksonMatrix::from_poly(&LinPoly::identity(&t));
        assert_eq!(dx2.mul(&id).unwrap(), dx2);
    }

    #[test]
    fn rank_and_determinant_examples() {
        let t = gf4();
        let d = DicksonMatrix::from_poly(&poly(&t, &[W, ONE]));
        assert_eq!(d.determinant(), t.zero());
        assert_eq!(d.rank(), 1);
        let dx2 = DicksonMatrix::from_poly(&poly(&t, &[ZERO, ONE]));
        assert_eq!(dx2.determinant(), t.one());
        let id = DicksonMatrix::from_poly(&LinPoly::identity(&t));
        assert_eq!((id.rank(), id.determinant()), (2, t.one()));
    }

    #[test]
    fn adjugate_examples() {
        let t = gf4();
        let d = DicksonMatrix::from_poly(&poly(&t, &[W, ONE]));
        assert_eq!(d.adjugate().unwrap().to_matrix(), mat(&t, &[&[W1, ONE], &[ONE, W]]));
        let id = DicksonMatrix::from_poly(&LinPoly::identity(&t));
        assert_eq!(id.adjugate().unwrap(), id);
    }

    #[test]
    fn adjugate_poly_of_frobenius_kernel_form() {
        // x^2 + w x = x^q - gamma^(q-1) x with gamma = w (char 2)
        let t = gf4();
        let l = poly(&t, &[W, ONE]);
        assert_eq!(adjugate_poly(&l), poly(&t, &[W1, ONE]));
        assert_eq!(adjugate_poly(&LinPoly::identity(&t)), LinPoly::identity(&t));
    }

    #[test]
    fn inverse_examples() {
        let t = gf4();
        let x2 = poly(&t, &[ZERO, ONE]);
        assert_eq!(inverse_poly(&x2).unwrap(), x2);
        assert_eq!(inverse_poly(&poly(&t, &[W, ZERO])).unwrap(), poly(&t, &[W1, ZERO]));
        assert_eq!(inverse_poly(&poly(&t, &[W, ONE])), Err(Error::NotAPermutation));
    }

    #[test]
    fn matrix_rep_examples() {
        let t = gf4();
        let basis = vec![el(&t, ONE), el(&t, W)];
        let wx = poly(&t, &[W, ZERO]);
        let expected = Matrix::from_rows(vec![vec![Fq(0), Fq(1)], vec![Fq(1), Fq(1)]]);
        assert_eq!(matrix_rep(&wx, &basis).unwrap(), expected);
        assert_eq!(matrix_rep_direct(&wx, &basis).unwrap(), expected);
        assert_eq!(
            matrix_rep(&LinPoly::identity(&t), &basis).unwrap(),
            Matrix::identity(t.base(), 2)
        );
        let la = poly(&t, &[W, ONE]);
        assert_eq!(matrix_rep(&la, &basis).unwrap().rank(t.base()), 1);
        assert_eq!(
            matrix_rep(&la, &[el(&t, ONE), el(&t, ONE)]),
            Err(Error::NotABasis)
        );
    }
}
