//! Linearized polynomials with coefficients in a subfield GF(q^m), `n = mt`.
//!
//! Under a normal basis `beta_i = beta^(q^i)` such a polynomial has full-form
//! elements `alpha_i = L(beta_i*)` that repeat under Frobenius with period
//! `m`, `alpha_{jm+k} = alpha_k^(q^(jm))`, and its matrix `B_L` in the dual
//! basis is block circulant with `m x m` blocks.

use std::sync::Arc;

use crate::dickson;
use crate::error::{Error, Result};
use crate::field::{Field, FieldTower, Fq, FqnElement};
use crate::linearized::LinPoly;
use crate::matrix::Matrix;
use crate::moore::{dual_basis, moore_rank};
use crate::poly;

/// Whether every coefficient of `L` is fixed by `x -> x^(q^m)`.
pub fn is_subfield_poly(l: &LinPoly, m: usize) -> Result<bool> {
    let t = l.tower();
    t.check_divisor(m)?;
    Ok(l.coeffs().iter().all(|a| t.in_subfield(a, m)))
}

/// Whether `B` (square, size divisible by `m`) satisfies
/// `B[a + m][b + m] = B[a][b]` with indices mod the size.
pub fn is_block_circulant(b: &Matrix<Fq>, m: usize) -> bool {
    let n = b.rows();
    if !b.is_square() || m == 0 || !n.is_multiple_of(m) {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| b[((i + m) % n, (j + m) % n)] == b[(i, j)]))
}

/// A divisor `m` of `n` together with a normal basis of GF(q^n) over GF(q).
#[derive(Debug, Clone)]
pub struct SubfieldContext {
    tower: Arc<FieldTower>,
    m: usize,
    beta: FqnElement,
    basis: Vec<FqnElement>,
    dual: Vec<FqnElement>,
}

impl SubfieldContext {
    /// Uses the first element in enumeration order that generates a normal basis.
    pub fn new(tower: &Arc<FieldTower>, m: usize) -> Result<Self> {
        tower.check_divisor(m)?;
        for beta in tower.elements()? {
            if let Ok(ctx) = Self::with_generator(tower, m, beta) {
                return Ok(ctx);
            }
        }
        Err(Error::InvariantViolated("no normal basis generator found".into()))
    }

    pub fn with_generator(tower: &Arc<FieldTower>, m: usize, beta: FqnElement) -> Result<Self> {
        tower.check_divisor(m)?;
        tower.check(&beta)?;
        let basis: Vec<FqnElement> = (0..tower.n()).map(|i| tower.frobenius(&beta, i)).collect();
        if moore_rank(tower, &basis)? != tower.n() {
            return Err(Error::NotNormalBasis);
        }
        let dual = dual_basis(tower, &basis)?;
        Ok(Self {
            tower: Arc::clone(tower),
            m,
            beta,
            basis,
            dual,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.tower.n() / self.m
    }

    pub fn generator(&self) -> &FqnElement {
        &self.beta
    }

    /// `beta^(q^i)`, `i = 0..n`.
    pub fn basis(&self) -> &[FqnElement] {
        &self.basis
    }

    pub fn dual(&self) -> &[FqnElement] {
        &self.dual
    }

    /// `alpha_i = L(beta_i*)`, the full-form elements under the normal basis.
    pub fn alphas(&self, l: &LinPoly) -> Vec<FqnElement> {
        l.images(&self.dual)
    }

    /// Whether `alpha_{jm+k} = alpha_k^(q^(jm))` for all `j, k`.
    pub fn alpha_pattern_holds(&self, l: &LinPoly) -> bool {
        let alphas = self.alphas(l);
        let m = self.m;
        (0..self.tower.n()).all(|i| alphas[i] == self.tower.frobenius(&alphas[i % m], i - i % m))
    }

    /// The pattern check for a polynomial known to have subfield coefficients.
    pub fn alpha_pattern_check(&self, l: &LinPoly) -> Result<bool> {
        self.require_subfield(l)?;
        Ok(self.alpha_pattern_holds(l))
    }

    /// `B_L[k][i] = tr(beta_k alpha_i)`: the matrix of `L` in the dual basis.
    pub fn b_matrix(&self, l: &LinPoly) -> Matrix<Fq> {
        dickson::matrix_rep_direct(l, &self.dual).expect("dual of a basis is a basis")
    }

    pub fn block_circulant_check(&self, l: &LinPoly) -> Result<(Matrix<Fq>, bool)> {
        self.require_subfield(l)?;
        let b = self.b_matrix(l);
        let ok = is_block_circulant(&b, self.m);
        Ok((b, ok))
    }

    fn require_subfield(&self, l: &LinPoly) -> Result<()> {
        if is_subfield_poly(l, self.m)? {
            Ok(())
        } else {
            Err(Error::NotSubfieldPoly { m: self.m })
        }
    }

    /// `(moore_rank{alpha^(q^i)}, n - deg gcd(sum tr(alpha beta^(q^i)) x^i, x^n - 1))`,
    /// the gcd taken in GF(q)[x].
    pub fn rank_gcd_check(&self, alpha: &FqnElement) -> Result<(usize, usize)> {
        let t = &*self.tower;
        t.check(alpha)?;
        let n = t.n();
        let conj: Vec<FqnElement> = (0..n).map(|i| t.frobenius(alpha, i)).collect();
        let lhs = moore_rank(&self.tower, &conj)?;
        let base = t.base();
        let assoc: Vec<Fq> = self.basis.iter().map(|b| t.trace_base(&t.mul(alpha, b))).collect();
        let mut xn1 = vec![base.zero(); n + 1];
        xn1[0] = base.neg(&base.one());
        xn1[n] = base.one();
        let g = poly::gcd(base, &assoc, &xn1);
        let deg = poly::degree(base, &g).expect("x^n - 1 is nonzero");
        Ok((lhs, n - deg))
    }
}
