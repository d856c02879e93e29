//! Reduced linearized polynomials `L(x) = a_0 x + a_1 x^q + ... + a_{n-1} x^(q^(n-1))`
//! over GF(q^n), i.e. the ring of GF(q)-linear maps of GF(q^n) under composition.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::dickson::DicksonMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, FieldTower, Fq, FqnElement};
use crate::matrix::Matrix;

#[derive(Clone)]
pub struct LinPoly {
    tower: Arc<FieldTower>,
    coeffs: Vec<FqnElement>,
}

impl PartialEq for LinPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_tower(&self.tower, &other.tower)
    }
}

impl Eq for LinPoly {}

impl fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("LinPoly").field(&self.coeffs).finish()
    }
}

pub(crate) fn same_tower(a: &Arc<FieldTower>, b: &Arc<FieldTower>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LinPoly {
    /// Exactly `n` coefficients, `coeffs[i]` multiplying `x^(q^i)`.
    pub fn new(tower: &Arc<FieldTower>, coeffs: Vec<FqnElement>) -> Result<Self> {
        if coeffs.len() != tower.n() {
            return Err(Error::TowerMismatch);
        }
        for c in &coeffs {
            tower.check(c)?;
        }
        Ok(Self {
            tower: Arc::clone(tower),
            coeffs,
        })
    }

    /// Reduces `sum c_i x^(q^i)` of any length modulo `x^(q^n) - x`.
    pub fn reduced(tower: &Arc<FieldTower>, coeffs: &[FqnElement]) -> Result<Self> {
        let n = tower.n();
        let mut out = vec![tower.zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            tower.check(c)?;
            out[i % n] = tower.add(&out[i % n], c);
        }
        Ok(Self::from_parts(tower, out))
    }

    pub(crate) fn from_parts(tower: &Arc<FieldTower>, coeffs: Vec<FqnElement>) -> Self {
        debug_assert_eq!(coeffs.len(), tower.n());
        Self {
            tower: Arc::clone(tower),
            coeffs,
        }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        Self::from_parts(tower, vec![tower.zero(); tower.n()])
    }

    /// The identity map `x`.
    pub fn identity(tower: &Arc<FieldTower>) -> Self {
        Self::monomial(tower, tower.one(), 0)
    }

    /// `c * x^(q^i)`, `i` taken mod `n`.
    pub fn monomial(tower: &Arc<FieldTower>, c: FqnElement, i: usize) -> Self {
        let mut coeffs = vec![tower.zero(); tower.n()];
        coeffs[i % tower.n()] = c;
        Self::from_parts(tower, coeffs)
    }

    pub fn random<R: Rng + ?Sized>(tower: &Arc<FieldTower>, rng: &mut R) -> Self {
        let coeffs = (0..tower.n()).map(|_| tower.random(rng)).collect();
        Self::from_parts(tower, coeffs)
    }

    /// The polynomial with the given index in the enumeration of all `q^(n^2)` polynomials.
    pub fn from_index(tower: &Arc<FieldTower>, mut index: u128) -> Self {
        let size = tower.order();
        let coeffs = (0..tower.n())
            .map(|_| {
                let c = tower.from_index(index % size);
                index /= size;
                c
            })
            .collect();
        Self::from_parts(tower, coeffs)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FqnElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &FqnElement {
        &self.coeffs[i % self.coeffs.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FqnElement::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    /// `L(x) = sum a_i x^(q^i)`.
    pub fn evaluate(&self, x: &FqnElement) -> FqnElement {
        let t = &*self.tower;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(t.zero(), |acc, (i, a)| t.add(&acc, &t.mul(a, &t.frobenius(x, i))))
    }

    /// Evaluation with the argument validated against the tower.
    pub fn try_evaluate(&self, x: &FqnElement) -> Result<FqnElement> {
        self.tower.check(x)?;
        Ok(self.evaluate(x))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let t = &*self.tower;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| t.add(a, b)).collect();
        Ok(Self::from_parts(&self.tower, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let t = &*self.tower;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| t.sub(a, b)).collect();
        Ok(Self::from_parts(&self.tower, coeffs))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.tower.neg(a)).collect();
        Self::from_parts(&self.tower, coeffs)
    }

    /// Scalar multiple by `c`, which must lie in GF(q).
    pub fn scale(&self, c: &FqnElement) -> Result<Self> {
        self.tower.check(c)?;
        let c = self.tower.to_base(c).ok_or(Error::ScalarNotInBaseField)?;
        Ok(self.scale_base(c))
    }

    pub fn scale_base(&self, c: Fq) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.tower.scale(c, a)).collect();
        Self::from_parts(&self.tower, coeffs)
    }

    /// `(self ∘ other)(x) = self(other(x))`, with coefficients
    /// `c_i = sum_k a_k b_{i-k}^(q^k)`, indices mod `n`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self::from_parts(
            &self.tower,
            twisted_convolution(&self.tower, &self.coeffs, &other.coeffs),
        ))
    }

    /// Images of the given elements.
    pub fn images(&self, elems: &[FqnElement]) -> Vec<FqnElement> {
        elems.iter().map(|x| self.evaluate(x)).collect()
    }

    /// Matrix over GF(q) whose column `j` holds the monomial coordinates of `L(v^j)`.
    pub fn coordinate_matrix(&self) -> Matrix<Fq> {
        let basis = self.tower.monomial_basis();
        self.tower.coordinate_matrix(&self.images(&basis)).transpose()
    }

    /// GF(q)-dimension of the image, from the images of the monomial basis.
    pub fn rank_bruteforce(&self) -> usize {
        let basis = self.tower.monomial_basis();
        self.tower.base_rank(&self.images(&basis))
    }

    /// Canonical basis of `ker L` (reduced echelon form of the coordinates).
    pub fn kernel_basis(&self) -> Vec<FqnElement> {
        let vectors: Vec<FqnElement> = self
            .coordinate_matrix()
            .null_space(self.tower.base())
            .into_iter()
            .map(FqnElement::from_coeffs)
            .collect();
        self.tower.span_basis(&vectors)
    }

    /// `ker L` found by evaluating at every field element; fails above the
    /// tower's enumeration bound.
    pub fn kernel_by_enumeration(&self) -> Result<Vec<FqnElement>> {
        let roots: Vec<FqnElement> = self
            .tower
            .elements()?
            .filter(|x| self.evaluate(x).is_zero())
            .collect();
        Ok(self.tower.span_basis(&roots))
    }

    /// Canonical basis of `Im L`.
    pub fn image_basis(&self) -> Vec<FqnElement> {
        let basis = self.tower.monomial_basis();
        self.tower.span_basis(&self.images(&basis))
    }

    /// Whether `L` permutes GF(q^n), decided by the rank of its Dickson matrix.
    pub fn is_permutation(&self) -> bool {
        DicksonMatrix::from_poly(self).rank() == self.tower.n()
    }
}

/// `c_i = sum_k a_k b_{i-k}^(q^k)` with indices mod `n`: the first row of a
/// product of Dickson matrices and the coefficients of a composition.
pub(crate) fn twisted_convolution(
    tower: &FieldTower,
    a: &[FqnElement],
    b: &[FqnElement],
) -> Vec<FqnElement> {
    let n = tower.n();
    let mut out = vec![tower.zero(); n];
    for (k, ak) in a.iter().enumerate() {
        if ak.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let i = (k + j) % n;
            let term = tower.mul(ak, &tower.frobenius(bj, k));
            out[i] = tower.add(&out[i], &term);
        }
    }
    out
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

    #[test]
    fn evaluate_worked_examples() {
        let t = gf4();
        let la = poly(&t, &[W, ONE]);
        assert_eq!(la.evaluate(&el(&t, W)), el(&t, ZERO));
        assert_eq!(la.evaluate(&el(&t, ONE)), el(&t, W1));
        let id = LinPoly::identity(&t);
        for x in t.elements().unwrap() {
            assert_eq!(id.evaluate(&x), x);
        }
    }

    #[test]
    fn add_and_scale() {
        let t = gf4();
        let la = poly(&t, &[W, ONE]);
        assert_eq!(la.add(&LinPoly::zero(&t)).unwrap(), la);
        assert_eq!(la.scale(&el(&t, ONE)).unwrap(), la);
        let doubled = la.add(&la).unwrap();
        for x in t.elements().unwrap() {
            assert!(doubled.evaluate(&x).is_zero());
        }
        assert_eq!(la.scale(&el(&t, W)), Err(Error::ScalarNotInBaseField));
    }

    #[test]
    fn compose_worked_examples() {
        let t = gf4();
        let frob = poly(&t, &[ZERO, ONE]);
        let wx = poly(&t, &[W, ZERO]);
        assert_eq!(frob.compose(&wx).unwrap(), poly(&t, &[ZERO, W1]));
        assert_eq!(frob.compose(&frob).unwrap(), LinPoly::identity(&t));
        let la = poly(&t, &[W, ONE]);
        assert_eq!(la.compose(&LinPoly::identity(&t)).unwrap(), la);
    }

    #[test]
    fn rank_kernel_image() {
        let t = gf4();
        let la = poly(&t, &[W, ONE]);
        assert_eq!(la.rank_bruteforce(), 1);
        assert_eq!(la.kernel_basis(), vec![el(&t, W)]);
        assert_eq!(la.kernel_by_enumeration().unwrap(), vec![el(&t, W)]);
        assert_eq!(la.image_basis(), vec![el(&t, W1)]);
        assert_eq!(LinPoly::identity(&t).rank_bruteforce(), 2);
        assert!(LinPoly::identity(&t).kernel_basis().is_empty());
        assert_eq!(LinPoly::zero(&t).kernel_basis().len(), 2);
    }

    #[test]
    fn permutation_examples() {
        let t = gf4();
        assert!(poly(&t, &[ZERO, ONE]).is_permutation());
        assert!(!poly(&t, &[W, ONE]).is_permutation());
        assert!(poly(&t, &[W, ZERO]).is_permutation());
    }

    #[test]
    fn reduction_and_shape() {
        let t = gf4();
        // x^(q^2) = x on GF(q^2)
        let r = LinPoly::reduced(&t, &[el(&t, ZERO), el(&t, ZERO), el(&t, W)]).unwrap();
        assert_eq!(r, poly(&t, &[W, ZERO]));
        assert_eq!(LinPoly::new(&t, vec![el(&t, W)]), Err(Error::TowerMismatch));
        let other = Arc::new(FieldTower::new(2, &[1, 1], &[vec![1], vec![1], vec![1]]).unwrap());
        // same defining data compares equal across Arcs
        assert_eq!(LinPoly::identity(&other), LinPoly::identity(&t));
        let t8 = Arc::new(FieldTower::with_degrees(2, 1, 3).unwrap());
        assert_eq!(
            LinPoly::identity(&t8).compose(&LinPoly::identity(&t8).clone()).unwrap(),
            LinPoly::identity(&t8)
        );
        assert_eq!(LinPoly::identity(&t).add(&LinPoly::identity(&t8)), Err(Error::TowerMismatch));
    }
}
