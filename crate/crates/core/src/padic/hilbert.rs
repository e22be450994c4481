use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::cyclotomic::legendre_u64;
use crate::exact::rational::{residue_mod, split_unit, Rational};

use super::PadicError;

/// A place of the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(u64),
    Real,
}

/// The quadratic Hilbert symbol `<a, b>` at the given place.
pub fn hilbert(a: &Rational, b: &Rational, place: Place) -> Result<i8, PadicError> {
    if a.is_zero() || b.is_zero() {
        return Err(PadicError::ZeroArgument);
    }
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(2) => Ok(hilbert_two(a, b)),
        Place::Finite(p) => Ok(hilbert_odd(a, b, p)),
    }
}

fn residue(u: &Rational, m: u64) -> u64 {
    residue_mod(u, &BigInt::from(m)).to_u64().unwrap()
}

fn hilbert_odd(a: &Rational, b: &Rational, p: u64) -> i8 {
    let (va, ua) = split_unit(a, p).unwrap();
    let (vb, ub) = split_unit(b, p).unwrap();
    let eps = ((p - 1) / 2) as i64;
    let mut s = if (va * vb * eps).rem_euclid(2) == 1 { -1 } else { 1 };
    if vb.rem_euclid(2) == 1 {
        s *= legendre_u64(residue(&ua, p), p);
    }
    if va.rem_euclid(2) == 1 {
        s *= legendre_u64(residue(&ub, p), p);
    }
    s as i8
}

fn hilbert_two(a: &Rational, b: &Rational) -> i8 {
    let (va, ua) = split_unit(a, 2).unwrap();
    let (vb, ub) = split_unit(b, 2).unwrap();
    let (ra, rb) = (residue(&ua, 8), residue(&ub, 8));
    let eps = |r: u64| ((r - 1) / 2) % 2;
    let omega = |r: u64| ((r * r - 1) / 8) % 2;
    let e = eps(ra) * eps(rb) + (va.rem_euclid(2) as u64) * omega(rb) + (vb.rem_euclid(2) as u64) * omega(ra);
    if e % 2 == 1 {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn real_symbol() {
        assert_eq!(hilbert(&int(-1), &int(-1), Place::Real).unwrap(), -1);
        assert_eq!(hilbert(&int(-1), &int(2), Place::Real).unwrap(), 1);
    }

    #[test]
    fn two_adic_values() {
        // <-1,-1>_2 = -1, <2,5>_2 = -1, <2,7>_2 = 1
        assert_eq!(hilbert(&int(-1), &int(-1), Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert(&int(2), &int(5), Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert(&int(2), &int(7), Place::Finite(2)).unwrap(), 1);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(hilbert(&int(0), &int(3), Place::Finite(3)), Err(PadicError::ZeroArgument));
    }
}
