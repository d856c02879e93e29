use std::fmt;

use smallvec::SmallVec;

use super::{is_prime, Field};
use crate::error::{Error, Result, TowerLevel};
use crate::poly;

/// The prime field GF(p), elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let p = u64::from(self.p);
        let mut acc = 1u64;
        let mut base = u64::from(a) % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) + u64::from(*b)) % u64::from(self.p)) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((u64::from(*a) + u64::from(self.p) - u64::from(*b)) % u64::from(self.p)) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (u64::from(*a) * u64::from(*b) % u64::from(self.p)) as u32
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, u64::from(self.p) - 2))
        }
    }
    fn characteristic(&self) -> u32 {
        self.p
    }
    fn size(&self) -> u128 {
        u128::from(self.p)
    }
    fn from_index(&self, index: u128) -> u32 {
        (index % u128::from(self.p)) as u32
    }
}

/// Element of GF(q), packed as the base-`p` integer of its little-endian
/// coefficient sequence over GF(p). The packing doubles as the enumeration
/// index, so `Fq(0)` is zero and `Fq(1)` is one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u32);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.0)
    }
}

/// GF(q) = GF(p)[u]/(f(u)), q = p^e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseField {
    prime: PrimeField,
    e: usize,
    q: u32,
    /// Monic, length `e + 1`, little-endian.
    f: Vec<u32>,
}

/// Upper bound on the number of candidate divisors tried by the irreducibility search.
pub(crate) const IRREDUCIBILITY_SEARCH_BOUND: u128 = 1 << 24;

impl BaseField {
    pub fn new(p: u32, f: &[u32]) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        for &c in f {
            if c >= p {
                return Err(Error::CoefficientOutOfRange {
                    value: u64::from(c),
                    modulus: u64::from(p),
                });
            }
        }
        let f = poly::trimmed(&prime, f);
        if f.len() < 2 {
            return Err(Error::DegreeZero(TowerLevel::Base));
        }
        if *f.last().unwrap() != 1 {
            return Err(Error::NotMonic(TowerLevel::Base));
        }
        let e = f.len() - 1;
        let q = u32::try_from(u64::from(p).pow(e as u32)).map_err(|_| Error::FieldTooLarge {
            size: u128::from(p).saturating_pow(e as u32),
            bound: u128::from(u32::MAX),
        })?;
        if !poly::is_irreducible(&prime, &f, IRREDUCIBILITY_SEARCH_BOUND)? {
            return Err(Error::ReduciblePolynomial(TowerLevel::Base));
        }
        Ok(Self { prime, e, q, f })
    }

    pub fn p(&self) -> u32 {
        self.prime.p()
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.prime
    }

    /// Degree of GF(q) over GF(p).
    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.f
    }

    /// Little-endian GF(p) coefficients, always of length `e`.
    pub fn digits(&self, a: Fq) -> SmallVec<[u32; 8]> {
        let p = self.p();
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Packs GF(p) coefficients; missing high coefficients are zero.
    pub fn from_digits(&self, digits: &[u32]) -> Result<Fq> {
        let p = self.p();
        if digits.len() > self.e {
            return Err(Error::TowerMismatch);
        }
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(Error::CoefficientOutOfRange {
                    value: u64::from(d),
                    modulus: u64::from(p),
                });
            }
            acc = acc * p + d;
        }
        Ok(Fq(acc))
    }

    fn pack(&self, digits: &[u32]) -> Fq {
        let p = self.p();
        Fq(digits.iter().rev().fold(0, |acc, &d| acc * p + d))
    }

    pub fn contains(&self, a: Fq) -> bool {
        a.0 < self.q
    }

    pub fn pow(&self, a: Fq, mut e: u128) -> Fq {
        let mut acc = Fq(1);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The embedding of an integer (reduced mod p) into GF(q).
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(i64::from(self.p())) as u32)
    }
}

impl Field for BaseField {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq(0)
    }
    fn one(&self) -> Fq {
        Fq(1)
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }

    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        if self.e == 1 {
            return Fq(self.prime.add(&a.0, &b.0));
        }
        if self.p() == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (x, y) = (self.digits(*a), self.digits(*b));
        let s: SmallVec<[u32; 8]> = x.iter().zip(&y).map(|(u, v)| self.prime.add(u, v)).collect();
        self.pack(&s)
    }

    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        if self.e == 1 {
            return Fq(self.prime.sub(&a.0, &b.0));
        }
        if self.p() == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (x, y) = (self.digits(*a), self.digits(*b));
        let s: SmallVec<[u32; 8]> = x.iter().zip(&y).map(|(u, v)| self.prime.sub(u, v)).collect();
        self.pack(&s)
    }

    fn neg(&self, a: &Fq) -> Fq {
        if self.e == 1 {
            return Fq(self.prime.neg(&a.0));
        }
        if self.p() == 2 {
            return *a;
        }
        let s: SmallVec<[u32; 8]> = self.digits(*a).iter().map(|u| self.prime.neg(u)).collect();
        self.pack(&s)
    }

    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        if self.e == 1 {
            return Fq(self.prime.mul(&a.0, &b.0));
        }
        if a.0 == 0 || b.0 == 0 {
            return Fq(0);
        }
        let (x, y) = (self.digits(*a), self.digits(*b));
        let pf = &self.prime;
        let mut prod: SmallVec<[u32; 16]> = SmallVec::from_elem(0, 2 * self.e - 1);
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                prod[i + j] = pf.add(&prod[i + j], &pf.mul(xi, yj));
            }
        }
        // f is monic: u^e = -(f_0 + ... + f_{e-1} u^{e-1})
        for k in (self.e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..self.e {
                let t = pf.mul(&c, &self.f[i]);
                prod[k - self.e + i] = pf.sub(&prod[k - self.e + i], &t);
            }
        }
        self.pack(&prod[..self.e])
    }

    fn inv(&self, a: &Fq) -> Option<Fq> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(*a, u128::from(self.q) - 2))
        }
    }

    fn characteristic(&self) -> u32 {
        self.p()
    }
    fn size(&self) -> u128 {
        u128::from(self.q)
    }
    fn from_index(&self, index: u128) -> Fq {
        Fq((index % u128::from(self.q)) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn gf4_base_multiplication() {
        // GF(4) = GF(2)[u]/(u^2 + u + 1); u is Fq(2), u + 1 is Fq(3).
        let k = BaseField::new(2, &[1, 1, 1]).unwrap();
        assert_eq!(k.q(), 4);
        assert_eq!(k.mul(&Fq(2), &Fq(2)), Fq(3));
        assert_eq!(k.inv(&Fq(2)), Some(Fq(3)));
        for a in 1..4 {
            assert_eq!(k.mul(&Fq(a), &k.inv(&Fq(a)).unwrap()), Fq(1));
        }
    }

    #[test]
    fn gf9_base_field_inverses() {
        let k = BaseField::new(3, &[1, 0, 1]).unwrap();
        for a in 1..9 {
            let a = Fq(a);
            assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), Fq(1));
            assert_eq!(k.add(&a, &k.neg(&a)), Fq(0));
        }
        assert_eq!(k.digits(Fq(7)).as_slice(), &[1, 2]);
        assert_eq!(k.from_digits(&[1, 2]).unwrap(), Fq(7));
        assert_eq!(k.from_digits(&[2]).unwrap(), Fq(2));
    }

    #[test]
    fn base_field_validation() {
        assert_eq!(BaseField::new(2, &[1, 0, 1]), Err(Error::ReduciblePolynomial(TowerLevel::Base)));
        assert_eq!(BaseField::new(2, &[1]), Err(Error::DegreeZero(TowerLevel::Base)));
        assert_eq!(BaseField::new(3, &[1, 0, 2]), Err(Error::NotMonic(TowerLevel::Base)));
        assert!(matches!(BaseField::new(2, &[1, 3]), Err(Error::CoefficientOutOfRange { .. })));
    }
}
