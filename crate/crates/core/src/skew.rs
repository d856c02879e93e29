//! The skew-polynomial ring GF(q^n)[x; sigma] with `x b = b^q x`.
//!
//! `phi: sum a_i x^i -> sum a_i x^(q^i)` maps it onto the linearized
//! polynomials (exponents reduced mod `n`), turning products into
//! compositions. The ring is right Euclidean, which yields rank via a right
//! gcd with `x^n - 1` and the factorization of rank `n - 1` polynomials into a
//! permutation after a chain of `x^q - gamma^(q-1) x` factors.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldTower, FqnElement};
use crate::linearized::{same_tower, LinPoly};

/// Dense coefficients `c_0 + c_1 x + ...`, trailing zeros trimmed.
#[derive(Clone)]
pub struct SkewPoly {
    tower: Arc<FieldTower>,
    coeffs: Vec<FqnElement>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_tower(&self.tower, &other.tower)
    }
}

impl Eq for SkewPoly {}

impl std::fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("SkewPoly").field(&self.coeffs).finish()
    }
}

impl SkewPoly {
    pub fn new(tower: &Arc<FieldTower>, coeffs: Vec<FqnElement>) -> Result<Self> {
        for c in &coeffs {
            tower.check(c)?;
        }
        Ok(Self::from_parts(tower, coeffs))
    }

    fn from_parts(tower: &Arc<FieldTower>, mut coeffs: Vec<FqnElement>) -> Self {
        while coeffs.last().is_some_and(FqnElement::is_zero) {
            coeffs.pop();
        }
        Self {
            tower: Arc::clone(tower),
            coeffs,
        }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        Self::from_parts(tower, Vec::new())
    }

    pub fn one(tower: &Arc<FieldTower>) -> Self {
        Self::monomial(tower, tower.one(), 0)
    }

    /// `c x^d`.
    pub fn monomial(tower: &Arc<FieldTower>, c: FqnElement, d: usize) -> Self {
        let mut coeffs = vec![tower.zero(); d + 1];
        coeffs[d] = c;
        Self::from_parts(tower, coeffs)
    }

    /// The central element `x^n - 1`.
    pub fn x_n_minus_one(tower: &Arc<FieldTower>) -> Self {
        let n = tower.n();
        let mut coeffs = vec![tower.zero(); n + 1];
        coeffs[0] = tower.neg(&tower.one());
        coeffs[n] = tower.one();
        Self::from_parts(tower, coeffs)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FqnElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&FqnElement> {
        self.coeffs.last()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.combine(other, |t, a, b| t.add(a, b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.combine(other, |t, a, b| t.sub(a, b)))
    }

    fn combine(
        &self,
        other: &Self,
        op: impl Fn(&FieldTower, &FqnElement, &FqnElement) -> FqnElement,
    ) -> Self {
        let t = &*self.tower;
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = t.zero();
        let coeffs = (0..len)
            .map(|i| {
                op(
                    t,
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self::from_parts(&self.tower, coeffs)
    }

    /// `(a x^i)(b x^j) = a b^(q^i) x^(i+j)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.tower));
        }
        let t = &*self.tower;
        let mut out = vec![t.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = t.mul(a, &t.frobenius(b, i));
                out[i + j] = t.add(&out[i + j], &term);
            }
        }
        Ok(Self::from_parts(&self.tower, out))
    }

    /// `c * self` with `c` multiplying from the left.
    pub fn left_scale(&self, c: &FqnElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.tower.mul(c, a)).collect();
        Self::from_parts(&self.tower, coeffs)
    }

    /// `(quotient, remainder)` with `self = quotient * divisor + remainder`
    /// and `deg remainder < deg divisor`.
    pub fn right_divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same(divisor)?;
        let dg = divisor.degree().ok_or(Error::DivisionByZeroPoly)?;
        let t = &*self.tower;
        let lc = divisor.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![t.zero(); rem.len().saturating_sub(dg)];
        while rem.len() > dg {
            let top = rem.len() - 1;
            let lead = rem[top].clone();
            if lead.is_zero() {
                rem.pop();
                continue;
            }
            let d = top - dg;
            // (c x^d) g has leading coefficient c * lc^(q^d)
            let c = t
                .div(&lead, &t.frobenius(lc, d))
                .expect("leading coefficient is nonzero");
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let term = t.mul(&c, &t.frobenius(b, d));
                rem[d + j] = t.sub(&rem[d + j], &term);
            }
            debug_assert!(rem[top].is_zero());
            rem.pop();
            quot[d] = c;
        }
        Ok((
            Self::from_parts(&self.tower, quot),
            Self::from_parts(&self.tower, rem),
        ))
    }

    /// Left-multiplies by the inverse leading coefficient.
    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.left_scale(&self.tower.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common right divisor.
    pub fn rgcd(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.right_divide(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    /// `sum c_i x^(q^(i mod n))`.
    pub fn phi(&self) -> LinPoly {
        LinPoly::reduced(&self.tower, &self.coeffs).expect("coefficients belong to the tower")
    }

    pub fn phi_inv(l: &LinPoly) -> Self {
        Self::from_parts(l.tower(), l.coeffs().to_vec())
    }
}

/// `rank L = n - deg rgcd(phi^-1(L), x^n - 1)`.
pub fn rank_via_gcd(l: &LinPoly) -> usize {
    let t = l.tower();
    let g = SkewPoly::phi_inv(l)
        .rgcd(&SkewPoly::x_n_minus_one(t))
        .expect("x^n - 1 is nonzero");
    t.n() - g.degree().expect("gcd is nonzero")
}

/// `L = permutation ∘ F_{r-1} ∘ ... ∘ F_0` with `F_i = x^q - gamma_i^(q-1) x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorChain {
    pub permutation: LinPoly,
    pub gammas: Vec<FqnElement>,
}

impl FactorChain {
    /// `x^q - gamma^(q-1) x`, whose kernel is spanned by `gamma`.
    pub fn kernel_factor(tower: &Arc<FieldTower>, gamma: &FqnElement) -> LinPoly {
        let a = tower.pow(gamma, u128::from(tower.q()) - 1);
        LinPoly::monomial(tower, tower.neg(&a), 0)
            .add(&LinPoly::monomial(tower, tower.one(), 1))
            .expect("same tower")
    }

    pub fn recompose(&self) -> LinPoly {
        let t = self.permutation.tower();
        let chain = self
            .gammas
            .iter()
            .fold(LinPoly::identity(t), |acc, g| {
                Self::kernel_factor(t, g).compose(&acc).expect("same tower")
            });
        self.permutation.compose(&chain).expect("same tower")
    }

    /// `tr(gamma_i / gamma_{i-1}^q) != 0` for every consecutive pair.
    pub fn side_conditions_hold(&self) -> bool {
        let t = &**self.permutation.tower();
        self.gammas.windows(2).all(|w| {
            let prev_q = t.frobenius(&w[0], 1);
            match t.div(&w[1], &prev_q) {
                Some(r) => !t.trace(&r).is_zero(),
                None => false,
            }
        })
    }
}

/// Peels kernel factors off a rank `n - 1` polynomial until the remaining
/// left factor is a permutation. Each step takes the canonical kernel
/// generator `gamma` of the current polynomial and divides its skew preimage
/// on the right by `x - gamma^(q-1)`. Fails with `WrongRank` unless
/// `rank L = n - 1` and `L != 0`.
pub fn factor_chain(l: &LinPoly) -> Result<FactorChain> {
    let t = l.tower();
    let n = t.n();
    let found = l.rank_bruteforce();
    // for n = 1 the zero polynomial has rank n - 1 but no such factorization
    if found + 1 != n || l.is_zero() {
        return Err(Error::WrongRank {
            expected: n - 1,
            found,
        });
    }
    let mut cur = SkewPoly::phi_inv(l);
    let mut gammas = Vec::new();
    loop {
        let lin = cur.phi();
        let kernel = lin.kernel_basis();
        let Some(gamma) = kernel.first() else {
            break;
        };
        if kernel.len() != 1 {
            return Err(Error::InvariantViolated(format!(
                "intermediate factor has kernel dimension {}",
                kernel.len()
            )));
        }
        let a = t.pow(gamma, u128::from(t.q()) - 1);
        let divisor = SkewPoly::new(t, vec![t.neg(&a), t.one()])?;
        let (quot, rem) = cur.right_divide(&divisor)?;
        if !rem.is_zero() {
            return Err(Error::InvariantViolated(
                "kernel factor does not divide on the right".into(),
            ));
        }
        gammas.push(gamma.clone());
        cur = quot;
    }
    Ok(FactorChain {
        permutation: cur.phi(),
        gammas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;

    fn gf4() -> Arc<FieldTower> {
        Arc::new(FieldTower::new(2, &[1, 1], &[vec![1], vec![1], vec![1]]).unwrap())
    }

    fn el(t: &FieldTower, c: &[u32]) -> FqnElement {
        t.element(&c.iter().map(|&x| Fq(x)).collect::<Vec<_>>()).unwrap()
    }

    fn skew(t: &Arc<FieldTower>, cs: &[&[u32]]) -> SkewPoly {
        SkewPoly::new(t, cs.iter().map(|c| el(t, c)).collect()).unwrap()
    }

    const ZERO: &[u32] = &[0, 0];
    const ONE: &[u32] = &[1, 0];
    const W: &[u32] = &[0, 1];
    const W1: &[u32] = &[1, 1];

    #[test]
    fn multiplication_examples() {
        let t = gf4();
        let x = skew(&t, &[ZERO, ONE]);
        let w = skew(&t, &[W]);
        assert_eq!(x.mul(&w).unwrap(), skew(&t, &[ZERO, W1]));
        let f = skew(&t, &[W, ONE]);
        assert_eq!(f.mul(&SkewPoly::one(&t)).unwrap(), f);
        assert_eq!(f.mul(&f).unwrap(), skew(&t, &[W1, ONE, ONE]));
    }

    #[test]
    fn division_examples() {
        let t = gf4();
        let x2_1 = SkewPoly::x_n_minus_one(&t);
        let g = skew(&t, &[W, ONE]);
        let (q, r) = x2_1.right_divide(&g).unwrap();
        assert_eq!(q, skew(&t, &[W1, ONE]));
        assert!(r.is_zero());
        let (q, r) = g.right_divide(&g).unwrap();
        assert_eq!((q, r.is_zero()), (SkewPoly::one(&t), true));
        let (q, r) = g.right_divide(&SkewPoly::one(&t)).unwrap();
        assert_eq!((q, r.is_zero()), (g.clone(), true));
        assert_eq!(g.right_divide(&SkewPoly::zero(&t)), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn gcd_examples() {
        let t = gf4();
        let g = skew(&t, &[W, ONE]);
        assert_eq!(SkewPoly::x_n_minus_one(&t).rgcd(&g).unwrap(), g);
        assert_eq!(g.rgcd(&SkewPoly::one(&t)).unwrap(), SkewPoly::one(&t));
        let h = skew(&t, &[ONE, W]);
        assert_eq!(h.rgcd(&h).unwrap(), h.make_monic());
        let z = SkewPoly::zero(&t);
        assert_eq!(z.rgcd(&z), Err(Error::BothZero));
    }

    #[test]
    fn rank_examples() {
        let t = gf4();
        let la = LinPoly::new(&t, vec![el(&t, W), el(&t, ONE)]).unwrap();
        assert_eq!(rank_via_gcd(&la), 1);
        assert_eq!(rank_via_gcd(&LinPoly::identity(&t)), 2);
        assert_eq!(rank_via_gcd(&LinPoly::zero(&t)), 0);
    }

    #[test]
    fn phi_examples() {
        let t = gf4();
        let la = LinPoly::new(&t, vec![el(&t, W), el(&t, ONE)]).unwrap();
        assert_eq!(SkewPoly::phi_inv(&la), skew(&t, &[W, ONE]));
        assert_eq!(skew(&t, &[ZERO, ZERO, ONE]).phi(), LinPoly::identity(&t));
        assert_eq!(SkewPoly::phi_inv(&la).phi(), la);
    }

    #[test]
    fn factor_chain_examples() {
        let t = gf4();
        let la = LinPoly::new(&t, vec![el(&t, W), el(&t, ONE)]).unwrap();
        let chain = factor_chain(&la).unwrap();
        assert_eq!(chain.permutation, LinPoly::identity(&t));
        assert_eq!(chain.gammas, vec![el(&t, W)]);
        assert_eq!(chain.recompose(), la);
        assert_eq!(
            factor_chain(&LinPoly::identity(&t)),
            Err(Error::WrongRank { expected: 1, found: 2 })
        );
    }
}
