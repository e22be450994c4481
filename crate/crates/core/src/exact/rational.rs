//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number; always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p^k` for any integer `k`.
pub fn pow_p(p: u64, k: i64) -> Rational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation; `None` for zero.
pub fn valuation(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), p) - int_valuation(x.denom(), p))
}

/// Writes `x = p^v * u` and returns `(v, u)`; `u` is a p-adic unit.
pub fn split_unit(x: &Rational, p: u64) -> Option<(i64, Rational)> {
    let v = valuation(x, p)?;
    Some((v, x * pow_p(p, -v)))
}

/// Residue of a p-integral rational modulo `m` (which must be coprime to the denominator).
pub fn residue_mod(x: &Rational, m: &BigInt) -> BigInt {
    let d = x.denom();
    let inv = mod_inverse(&d.mod_floor(m), m).expect("denominator not invertible modulo m");
    (x.numer() * inv).mod_floor(m)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn abs_p(x: &Rational, p: u64) -> Rational {
    match valuation(x, p) {
        None => Rational::zero(),
        Some(v) => pow_p(p, -v),
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // fall back for huge numerators/denominators
        let n = x.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = x.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

/// Parses `a`, `-a`, `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        Some(Rational::from_integer(s.parse().ok()?))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn modpow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut bb = (b % m) as u128;
    let mm = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    b = r as u64;
    b % m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(valuation(&rat(18, 5), 3), Some(2));
        assert_eq!(valuation(&rat(5, 27), 3), Some(-3));
        assert_eq!(valuation(&int(0), 3), None);
        let (v, u) = split_unit(&rat(12, 7), 2).unwrap();
        assert_eq!(v, 2);
        assert_eq!(u, rat(3, 7));
    }

    #[test]
    fn residues() {
        let m = BigInt::from(9);
        assert_eq!(residue_mod(&rat(1, 2), &m), BigInt::from(5));
        assert_eq!(residue_mod(&int(-1), &m), BigInt::from(8));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
