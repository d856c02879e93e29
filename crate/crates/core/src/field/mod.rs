//! Finite field arithmetic for the tower GF(p) ⊂ GF(q) ⊂ GF(q^n).
//!
//! Elements of every level are plain values; all arithmetic goes through the
//! field object, which owns the defining polynomials. The [`Field`] trait lets
//! the matrix and polynomial code run unchanged over any of the three levels.

mod base;
mod tower;

use std::fmt::Debug;

pub use base::{BaseField, Fq, PrimeField};
pub use tower::{ArithOp, FieldTower, FqnElement, DEFAULT_ENUMERATION_BOUND};

/// A finite field whose elements are values of type `Elem`.
pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn characteristic(&self) -> u32;
    /// Number of elements, saturating at `u128::MAX`.
    fn size(&self) -> u128;
    /// The element with the given index in enumeration order.
    #[allow(clippy::wrong_self_convention)]
    fn from_index(&self, index: u128) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b_inv| self.mul(a, &b_inv))
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = u64::from(p);
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::is_prime;

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..40).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(65521));
        assert!(!is_prime(65535));
    }
}
