//! Dense univariate polynomials over a [`Field`], stored little-endian as
//! plain coefficient vectors. Used for the defining polynomials of the tower
//! and for ordinary gcd computations in GF(q)[x].

use crate::error::{Error, Result};
use crate::field::Field;

/// Copy of `a` with trailing zeros removed; the zero polynomial is empty.
pub fn trimmed<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let mut v = a.to_vec();
    trim(field, &mut v);
    v
}

pub fn trim<F: Field>(field: &F, a: &mut Vec<F::Elem>) {
    while a.last().is_some_and(|c| field.is_zero(c)) {
        a.pop();
    }
}

/// Degree of a trimmed polynomial, `None` for zero.
pub fn degree<F: Field>(field: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|c| !field.is_zero(c))
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let zero = field.zero();
    let mut out: Vec<F::Elem> = (0..len)
        .map(|i| field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

/// Quotient and remainder.
pub type DivRem<E> = (Vec<E>, Vec<E>);

/// Euclidean division `a = quot * b + rem`, `deg rem < deg b`.
pub fn div_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<DivRem<F::Elem>> {
    let b = trimmed(field, b);
    let db = degree(field, &b).ok_or(Error::DivisionByZero)?;
    let lead_inv = field.inv(&b[db]).ok_or(Error::DivisionByZero)?;
    let mut rem = trimmed(field, a);
    if rem.len() <= db {
        return Ok((Vec::new(), rem));
    }
    let mut quot = vec![field.zero(); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = field.mul(rem.last().unwrap(), &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            rem[shift + i] = field.sub(&rem[shift + i], &field.mul(&c, bi));
        }
        quot[shift] = c;
        trim(field, &mut rem);
    }
    trim(field, &mut quot);
    Ok((quot, rem))
}

/// Monic greatest common divisor; `gcd(0, 0)` is the zero polynomial.
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trimmed(field, a);
    let mut b = trimmed(field, b);
    while !b.is_empty() {
        let (_, r) = div_rem(field, &a, &b).expect("divisor is nonzero");
        a = std::mem::replace(&mut b, r);
    }
    make_monic(field, &a)
}

pub fn make_monic<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let a = trimmed(field, a);
    match a.last() {
        None => a,
        Some(lead) => {
            let inv = field.inv(lead).expect("leading coefficient is nonzero");
            a.iter().map(|c| field.mul(c, &inv)).collect()
        }
    }
}

pub fn eval<F: Field>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
}

/// Irreducibility by exhaustive search: root search for degree at most 3,
/// trial division by every monic polynomial of degree up to `deg / 2`
/// otherwise. Fails with `FieldTooLarge` when the candidate count exceeds
/// `bound`.
pub fn is_irreducible<F: Field>(field: &F, f: &[F::Elem], bound: u128) -> Result<bool> {
    let f = trimmed(field, f);
    let d = match degree(field, &f) {
        None | Some(0) => return Ok(false),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(true);
    }
    let s = field.size();
    if d <= 3 {
        if s > bound {
            return Err(Error::FieldTooLarge { size: s, bound });
        }
        let has_root = (0..s).any(|i| field.is_zero(&eval(field, &f, &field.from_index(i))));
        return Ok(!has_root);
    }
    let half = d / 2;
    let mut total: u128 = 0;
    for k in 1..=half {
        total = total.saturating_add(s.saturating_pow(k as u32));
    }
    if total > bound {
        return Err(Error::FieldTooLarge { size: total, bound });
    }
    for k in 1..=half {
        let count = s.pow(k as u32);
        for idx in 0..count {
            let mut h = Vec::with_capacity(k + 1);
            let mut rest = idx;
            for _ in 0..k {
                h.push(field.from_index(rest % s));
                rest /= s;
            }
            h.push(field.one());
            let (_, r) = div_rem(field, &f, &h)?;
            if r.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn division_recomposes() {
        let k = PrimeField::new(5).unwrap();
        let a = [3, 0, 4, 1, 2];
        let b = [1, 2, 3];
        let (q, r) = div_rem(&k, &a, &b).unwrap();
        assert!(r.len() < 3);
        let back: Vec<u32> = {
            let qb = mul(&k, &q, &b);
            let zero = Vec::<u32>::new();
            sub(&k, &qb, &sub(&k, &zero, &r))
        };
        assert_eq!(back, a);
    }

    #[test]
    fn gcd_over_gf2() {
        let k = PrimeField::new(2).unwrap();
        // x^2 + 1 = (x + 1)^2, x^3 + 1 = (x + 1)(x^2 + x + 1)
        assert_eq!(gcd(&k, &[1, 0, 1], &[1, 0, 0, 1]), vec![1, 1]);
        assert_eq!(gcd(&k, &[], &[1, 0, 1]), vec![1, 0, 1]);
        assert_eq!(gcd(&k, &[], &[]), Vec::<u32>::new());
    }

    #[test]
    fn irreducibility_small_degrees() {
        let k = PrimeField::new(2).unwrap();
        assert!(is_irreducible(&k, &[1, 1, 1], 1 << 20).unwrap());
        assert!(!is_irreducible(&k, &[1, 0, 1], 1 << 20).unwrap());
        assert!(is_irreducible(&k, &[1, 1, 0, 1], 1 << 20).unwrap());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 has no roots but is reducible
        assert!(!is_irreducible(&k, &[1, 0, 1, 0, 1], 1 << 20).unwrap());
        assert!(is_irreducible(&k, &[1, 1, 0, 0, 1], 1 << 20).unwrap());
    }

    #[test]
    fn irreducible_count_matches_necklace_formula() {
        // Number of monic irreducibles of degree 4 over GF(2) is (16 - 4) / 4 = 3,
        // degree 6 is (64 - 8 - 4 + 2) / 6 = 9.
        let k = PrimeField::new(2).unwrap();
        for (d, expected) in [(4usize, 3usize), (6, 9)] {
            let count = (0..1u32 << d)
                .filter(|idx| {
                    let mut f: Vec<u32> = (0..d).map(|i| (idx >> i) & 1).collect();
                    f.push(1);
                    is_irreducible(&k, &f, 1 << 20).unwrap()
                })
                .count();
            assert_eq!(count, expected, "degree {d}");
        }
    }
}
