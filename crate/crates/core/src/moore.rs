//! Moore matrices, dual bases and trace-form representations.
//!
//! A trace form is a list of pairs `(omega_i, theta_i)` standing for the map
//! `x -> sum tr(omega_i x) theta_i`. Every linearized polynomial has three
//! such shapes relative to a basis `{beta_i}`:
//!
//! - full form `sum tr(beta_i x) alpha_i`, with `alpha_i = L(beta_i*)`;
//! - dual-side form `sum tr(alpha'_i x) beta_i`;
//! - compact form with exactly `rank L` pairs, both sides independent.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldTower, FqnElement};
use crate::linearized::LinPoly;
use crate::matrix::Matrix;

/// The `k x k` matrix `(alpha_j^(q^i))` of generators `alpha_0..alpha_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMatrix {
    tower: Arc<FieldTower>,
    gens: Vec<FqnElement>,
}

impl MooreMatrix {
    pub fn new(tower: &Arc<FieldTower>, gens: Vec<FqnElement>) -> Result<Self> {
        for g in &gens {
            tower.check(g)?;
        }
        Ok(Self {
            tower: Arc::clone(tower),
            gens,
        })
    }

    pub fn gens(&self) -> &[FqnElement] {
        &self.gens
    }

    pub fn entry(&self, i: usize, j: usize) -> FqnElement {
        self.tower.frobenius(&self.gens[j], i)
    }

    pub fn to_matrix(&self) -> Matrix<FqnElement> {
        let k = self.gens.len();
        Matrix::from_fn(k, k, |i, j| self.entry(i, j))
    }

    pub fn rank(&self) -> usize {
        self.to_matrix().rank(&*self.tower)
    }

    pub fn determinant(&self) -> FqnElement {
        self.to_matrix().determinant(&*self.tower)
    }
}

/// GF(q)-rank of `gens`, read off the rank of their Moore matrix.
pub fn moore_rank(tower: &Arc<FieldTower>, gens: &[FqnElement]) -> Result<usize> {
    Ok(MooreMatrix::new(tower, gens.to_vec())?.rank())
}

/// The basis `{beta_i*}` with `tr(beta_i beta_j*) = delta_ij`. The inverse of
/// the Moore matrix of `basis` is `(beta_i*^(q^j))`, so its first column holds
/// the dual basis.
pub fn dual_basis(tower: &Arc<FieldTower>, basis: &[FqnElement]) -> Result<Vec<FqnElement>> {
    if basis.len() != tower.n() {
        return Err(Error::NotABasis);
    }
    let inv = MooreMatrix::new(tower, basis.to_vec())?
        .to_matrix()
        .inverse(&**tower)
        .ok_or(Error::NotABasis)?;
    Ok(inv.column(0))
}

/// `x -> sum tr(omega_i x) theta_i` for pairs `(omega_i, theta_i)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TraceForm {
    tower: Arc<FieldTower>,
    pairs: Vec<(FqnElement, FqnElement)>,
}

impl std::fmt::Debug for TraceForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("TraceForm").field(&self.pairs).finish()
    }
}

impl TraceForm {
    pub fn new(tower: &Arc<FieldTower>, pairs: Vec<(FqnElement, FqnElement)>) -> Result<Self> {
        for (w, t) in &pairs {
            tower.check(w)?;
            tower.check(t)?;
        }
        Ok(Self {
            tower: Arc::clone(tower),
            pairs,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn pairs(&self) -> &[(FqnElement, FqnElement)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn omegas(&self) -> Vec<FqnElement> {
        self.pairs.iter().map(|(w, _)| w.clone()).collect()
    }

    pub fn thetas(&self) -> Vec<FqnElement> {
        self.pairs.iter().map(|(_, t)| t.clone()).collect()
    }

    pub fn evaluate(&self, x: &FqnElement) -> FqnElement {
        let t = &*self.tower;
        self.pairs.iter().fold(t.zero(), |acc, (w, th)| {
            let c = t.trace_base(&t.mul(w, x));
            t.add(&acc, &t.scale(c, th))
        })
    }

    /// Expands to coefficients `a_j = sum_l theta_l omega_l^(q^j)`.
    pub fn to_poly(&self) -> LinPoly {
        let t = &*self.tower;
        let coeffs = (0..t.n())
            .map(|j| {
                self.pairs.iter().fold(t.zero(), |acc, (w, th)| {
                    t.add(&acc, &t.mul(th, &t.frobenius(w, j)))
                })
            })
            .collect();
        LinPoly::from_parts(&self.tower, coeffs)
    }
}

/// Inverse of [`TraceForm::to_poly`] on the full form.
pub fn from_trace_form(tf: &TraceForm) -> LinPoly {
    tf.to_poly()
}

/// Full form `L(x) = sum tr(beta_i x) alpha_i` with `alpha_i = L(beta_i*)`.
pub fn to_trace_form_full(l: &LinPoly, basis: &[FqnElement]) -> Result<TraceForm> {
    let t = l.tower();
    let dual = dual_basis(t, basis)?;
    let pairs = basis
        .iter()
        .zip(&dual)
        .map(|(b, d)| (b.clone(), l.evaluate(d)))
        .collect();
    Ok(TraceForm {
        tower: Arc::clone(t),
        pairs,
    })
}

/// Dual-side form `L(x) = sum tr(alpha'_i x) beta_i`. The `alpha'_i` solve
/// `(beta_l^(q^i)) alpha' = (first column of D_L)`.
pub fn to_trace_form_dualside(l: &LinPoly, basis: &[FqnElement]) -> Result<TraceForm> {
    let t = l.tower();
    let n = t.n();
    if basis.len() != n {
        return Err(Error::NotABasis);
    }
    let moore = MooreMatrix::new(t, basis.to_vec())?.to_matrix();
    let rhs: Vec<FqnElement> = (0..n)
        .map(|i| t.frobenius(l.coeff((n - i) % n), i))
        .collect();
    let alphas = moore.solve(&**t, &rhs).ok_or(Error::NotABasis)?;
    let pairs = alphas.into_iter().zip(basis.iter().cloned()).collect();
    Ok(TraceForm {
        tower: Arc::clone(t),
        pairs,
    })
}

/// A form with exactly `rank L` pairs: `theta` is the canonical image basis
/// and `tr(omega_l x)` is the `l`-th coordinate of `L(x)` in it.
pub fn compact_form(l: &LinPoly) -> TraceForm {
    let t = l.tower();
    let thetas = l.image_basis();
    let monomials = t.monomial_basis();
    let dual = dual_basis(t, &monomials).expect("monomial basis is a basis");
    let coords: Vec<Vec<_>> = l
        .images(&monomials)
        .iter()
        .map(|y| t.coordinates_in(&thetas, y).expect("image lies in the span of the image basis"))
        .collect();
    let pairs = thetas
        .iter()
        .enumerate()
        .map(|(idx, theta)| {
            let omega = coords.iter().zip(&dual).fold(t.zero(), |acc, (c, d)| {
                t.add(&acc, &t.scale(c[idx], d))
            });
            (omega, theta.clone())
        })
        .collect();
    TraceForm {
        tower: Arc::clone(t),
        pairs,
    }
}

/// The inverse of a permutation given in full form `sum tr(beta_i x) alpha_i`
/// over `basis`: `L^-1(x) = sum tr(alpha_i* x) beta_i*`.
pub fn inverse_via_dual(tf: &TraceForm, basis: &[FqnElement]) -> Result<TraceForm> {
    let t = &tf.tower;
    if tf.len() != t.n() || basis.len() != t.n() {
        return Err(Error::NotFullForm);
    }
    if tf.pairs.iter().zip(basis).any(|((w, _), b)| w != b) {
        return Err(Error::NotFullForm);
    }
    let beta_dual = dual_basis(t, basis)?;
    let alpha_dual = dual_basis(t, &tf.thetas())?;
    Ok(TraceForm {
        tower: Arc::clone(t),
        pairs: alpha_dual.into_iter().zip(beta_dual).collect(),
    })
}

/// Cofactor structure of a square Moore matrix `A = (alpha_j^(q^i))`.
#[derive(Debug, Clone)]
pub struct MooreAdjugate {
    /// `alpha~_i`, the `(0, i)` cofactors of `A`.
    pub cofactors: Vec<FqnElement>,
    /// The classical adjugate of `A`.
    pub adjugate: Matrix<FqnElement>,
    /// `(alpha~_i^(q^j)) S` with `S = diag((-1)^(j(n+1)))`.
    pub predicted: Matrix<FqnElement>,
}

impl MooreAdjugate {
    /// Whether the adjugate equals the signed Frobenius matrix of the cofactors.
    pub fn holds(&self) -> bool {
        self.adjugate == self.predicted
    }
}

pub fn moore_adjugate(tower: &Arc<FieldTower>, gens: &[FqnElement]) -> Result<MooreAdjugate> {
    let n = gens.len();
    if n == 0 {
        return Err(Error::TowerMismatch);
    }
    let a = MooreMatrix::new(tower, gens.to_vec())?.to_matrix();
    let cofactors: Vec<FqnElement> = (0..n).map(|i| a.cofactor(&**tower, 0, i)).collect();
    let adjugate = a.adjugate(&**tower);
    let predicted = signed_cofactor_matrix(tower, &cofactors, n + 1);
    Ok(MooreAdjugate {
        cofactors,
        adjugate,
        predicted,
    })
}

/// The matrix with entry `(i, j) = (-1)^(j * twist) * c_i^(q^j)`.
pub fn signed_cofactor_matrix(
    tower: &FieldTower,
    cofactors: &[FqnElement],
    twist: usize,
) -> Matrix<FqnElement> {
    let n = cofactors.len();
    Matrix::from_fn(n, n, |i, j| {
        let v = tower.frobenius(&cofactors[i], j);
        if (j * twist) % 2 == 1 {
            tower.neg(&v)
        } else {
            v
        }
    })
}
