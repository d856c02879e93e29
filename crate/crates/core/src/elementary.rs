//! Decomposition of a linearized polynomial into elementary factors.
//!
//! Relative to a basis `{beta_i}`, the GF(q)-matrix `M` stands for the map
//! `x -> sum_{k,i} M[k][i] tr(beta_i x) beta_k*`, and this correspondence turns
//! matrix products into compositions. Elementary matrices then become
//!
//! - swap `i, j`: `x - (tr(beta_i x) - tr(beta_j x))(beta_i* - beta_j*)`,
//! - scale row `i` by `1 + a`: `x + a tr(beta_i x) beta_i*`,
//! - add row `i` to row `j`: `x + tr(beta_i x) beta_j*`,
//!
//! and Gauss-Jordan elimination of the matrix of `L` writes `L` as a chain of
//! such factors around the rank-`k` core `sum_{i<k} tr(beta_i x) beta_i*`.

use std::sync::Arc;

use crate::dickson;
use crate::error::Result;
use crate::field::{BaseField, Field, FieldTower, Fq, FqnElement};
use crate::linearized::LinPoly;
use crate::matrix::Matrix;
use crate::moore::{dual_basis, TraceForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    /// Exchange rows `i` and `j`.
    Swap { i: usize, j: usize },
    /// Multiply row `i` by `1 + a`.
    Scale { i: usize, a: Fq },
    /// Add row `from` to row `to`.
    Add { from: usize, to: usize },
}

impl Elementary {
    /// The elementary matrix over GF(q).
    pub fn matrix(&self, base: &BaseField, n: usize) -> Matrix<Fq> {
        let mut m = Matrix::identity(base, n);
        match *self {
            Elementary::Swap { i, j } => m.swap_rows(i, j),
            Elementary::Scale { i, a } => m[(i, i)] = base.add(&base.one(), &a),
            Elementary::Add { from, to } => m[(to, from)] = base.add(&m[(to, from)], &base.one()),
        }
        m
    }

    /// The linearized polynomial of the factor relative to `basis` (with dual `dual`).
    pub fn to_poly(&self, tower: &Arc<FieldTower>, basis: &[FqnElement], dual: &[FqnElement]) -> LinPoly {
        let t = &**tower;
        let mut pairs: Vec<(FqnElement, FqnElement)> =
            basis.iter().cloned().zip(dual.iter().cloned()).collect();
        match *self {
            Elementary::Swap { i, j } => {
                let d = t.sub(&dual[j], &dual[i]);
                pairs.push((basis[i].clone(), d.clone()));
                pairs.push((basis[j].clone(), t.neg(&d)));
            }
            Elementary::Scale { i, a } => pairs.push((basis[i].clone(), t.scale(a, &dual[i]))),
            Elementary::Add { from, to } => pairs.push((basis[from].clone(), dual[to].clone())),
        }
        TraceForm::new(tower, pairs).expect("elements of the tower").to_poly()
    }
}

/// `L = left[0] ∘ ... ∘ left[s-1] ∘ core ∘ right[0] ∘ ... ∘ right[t-1]`.
#[derive(Debug, Clone)]
pub struct ElementaryDecomposition {
    tower: Arc<FieldTower>,
    basis: Vec<FqnElement>,
    dual: Vec<FqnElement>,
    pub left: Vec<Elementary>,
    pub rank: usize,
    pub right: Vec<Elementary>,
}

impl ElementaryDecomposition {
    pub fn basis(&self) -> &[FqnElement] {
        &self.basis
    }

    pub fn dual(&self) -> &[FqnElement] {
        &self.dual
    }

    /// `sum_{i<k} tr(beta_i x) beta_i*`.
    pub fn core(&self) -> LinPoly {
        let pairs = self.basis[..self.rank]
            .iter()
            .cloned()
            .zip(self.dual[..self.rank].iter().cloned())
            .collect();
        TraceForm::new(&self.tower, pairs).expect("elements of the tower").to_poly()
    }

    pub fn factor_poly(&self, e: &Elementary) -> LinPoly {
        e.to_poly(&self.tower, &self.basis, &self.dual)
    }

    pub fn recompose(&self) -> LinPoly {
        let compose = |acc: LinPoly, e: &Elementary| {
            acc.compose(&self.factor_poly(e)).expect("same tower")
        };
        let head = self.left.iter().fold(LinPoly::identity(&self.tower), compose);
        let with_core = head.compose(&self.core()).expect("same tower");
        self.right.iter().fold(with_core, compose)
    }
}

/// `I + c E[to][from]` as elementary factors: for `c != 1` the add is
/// conjugated by a scaling of row `to`.
fn push_add(out: &mut Vec<Elementary>, base: &BaseField, from: usize, to: usize, c: Fq) {
    let one = base.one();
    if c == one {
        out.push(Elementary::Add { from, to });
        return;
    }
    let c_inv = base.inv(&c).expect("nonzero multiplier");
    out.push(Elementary::Scale { i: to, a: base.sub(&c, &one) });
    out.push(Elementary::Add { from, to });
    out.push(Elementary::Scale { i: to, a: base.sub(&c_inv, &one) });
}

/// Decomposes `L` relative to `basis` by eliminating `B_L`, the matrix of `L`
/// in the dual basis: `B_L[k][i] = tr(beta_k L(beta_i*))`.
pub fn elementary_decompose(l: &LinPoly, basis: &[FqnElement]) -> Result<ElementaryDecomposition> {
    let t = l.tower();
    let base = t.base();
    let n = t.n();
    let dual = dual_basis(t, basis)?;
    let mut m = dickson::matrix_rep_direct(l, &dual)?;

    // Row operations R with R_s ... R_1 B = RREF; `left` collects the inverses
    // R_1^-1, ..., R_s^-1 in that order.
    let mut left = Vec::new();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !base.is_zero(&m[(i, c)])) else {
            continue;
        };
        if p != r {
            m.swap_rows(r, p);
            left.push(Elementary::Swap { i: r, j: p });
        }
        let pivot = m[(r, c)];
        if pivot != base.one() {
            let inv = base.inv(&pivot).expect("nonzero pivot");
            for j in 0..n {
                m[(r, j)] = base.mul(&m[(r, j)], &inv);
            }
            left.push(Elementary::Scale { i: r, a: base.sub(&pivot, &base.one()) });
        }
        for i in 0..n {
            let f = m[(i, c)];
            if i == r || base.is_zero(&f) {
                continue;
            }
            for j in 0..n {
                let s = base.mul(&f, &m[(r, j)]);
                m[(i, j)] = base.sub(&m[(i, j)], &s);
            }
            push_add(&mut left, base, r, i, f);
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();

    // Column operations C with RREF C_1 ... C_t = E; `right` holds
    // C_t^-1, ..., C_1^-1.
    let mut col_ops: Vec<Vec<Elementary>> = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        if p != r {
            m.swap_cols(r, p);
            col_ops.push(vec![Elementary::Swap { i: r, j: p }]);
        }
    }
    for r in 0..rank {
        for j in rank..n {
            let x = m[(r, j)];
            if base.is_zero(&x) {
                continue;
            }
            m[(r, j)] = base.zero();
            // column j -= x * column r is right multiplication by I - x E[r][j],
            // whose inverse is I + x E[r][j].
            let mut ops = Vec::new();
            push_add(&mut ops, base, j, r, x);
            col_ops.push(ops);
        }
    }
    debug_assert!(m == Matrix::from_fn(n, n, |i, j| if i == j && i < rank { base.one() } else { base.zero() }));
    let right = col_ops.into_iter().rev().flatten().collect();

    Ok(ElementaryDecomposition {
        tower: Arc::clone(t),
        basis: basis.to_vec(),
        dual,
        left,
        rank,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(2, &[1, 1], &[vec![1], vec![1], vec![1]]).unwrap())
    }

    #[test]
    fn identity_has_no_factors() {
        let t = gf4();
        let d = elementary_decompose(&LinPoly::identity(&t), &t.monomial_basis()).unwrap();
        assert!(d.left.is_empty() && d.right.is_empty());
        assert_eq!(d.rank, 2);
        assert_eq!(d.recompose(), LinPoly::identity(&t));
    }

    #[test]
    fn rank_one_example_recomposes() {
        let t = gf4();
        let w = t.generator();
        let la = LinPoly::new(&t, vec![w, t.one()]).unwrap();
        let d = elementary_decompose(&la, &t.monomial_basis()).unwrap();
        assert_eq!(d.rank, 1);
        assert_eq!(d.recompose(), la);
    }

    #[test]
    fn factor_polys_have_elementary_matrices() {
        let t = Arc::new(FieldTower::with_degrees(3, 1, 3).unwrap());
        let basis = t.monomial_basis();
        let dual = dual_basis(&t, &basis).unwrap();
        let factors = [
            Elementary::Swap { i: 0, j: 2 },
            Elementary::Scale { i: 1, a: Fq(1) },
            Elementary::Add { from: 2, to: 0 },
        ];
        for e in factors {
            let p = e.to_poly(&t, &basis, &dual);
            assert_eq!(dickson::matrix_rep_direct(&p, &dual).unwrap(), e.matrix(t.base(), 3));
        }
    }
}
