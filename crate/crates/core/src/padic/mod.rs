//! The field of p-adic numbers, seen through rational points: balls,
//! Bruhat-Schwartz functions, characters, Hilbert symbols and integration.

mod ball;
mod character;
mod hilbert;
mod integrate;
mod schwartz;

pub use ball::Ball;
pub use character::{Exponent, QuasiCharacter};
pub use hilbert::{hilbert, Place};
pub use integrate::{integrate, Measure};
pub use schwartz::BruhatSchwartz;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::rational::{is_prime, pow_p, residue_mod, valuation, Rational};
use crate::exact::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("tail is not summable: |ratio| = {ratio} is not below 1")]
    NonSummable { ratio: String },
    #[error("invalid character data: {0}")]
    InvalidCharacter(String),
    #[error("characters over different primes")]
    PrimeMismatch,
}

/// A prime together with the additive character `psi(x) = exp(2 pi i {x}_p)`,
/// whose conductor is the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicContext {
    p: u64,
}

impl PAdicContext {
    pub fn new(p: u64) -> Result<Self, PadicError> {
        if is_prime(p) {
            Ok(PAdicContext { p })
        } else {
            Err(PadicError::NotPrime(p))
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn valuation(&self, x: &Rational) -> Option<i64> {
        valuation(x, self.p)
    }

    /// `|x|_p`, with `|0| = 0`.
    pub fn abs(&self, x: &Rational) -> Rational {
        match self.valuation(x) {
            Some(v) => pow_p(self.p, -v),
            None => Rational::zero(),
        }
    }

    /// The p-fractional part `{x}_p = r / p^k` as `(r, k)` with `0 <= r < p^k`.
    pub fn fractional_part(&self, x: &Rational) -> (u64, u32) {
        let k = match self.valuation(x) {
            Some(v) if v < 0 => (-v) as u32,
            _ => return (0, 0),
        };
        let m = BigInt::from(self.p).pow(k);
        let scaled = x * Rational::from_integer(m.clone());
        let r = residue_mod(&scaled, &m);
        (r.to_u64().expect("fractional part too large"), k)
    }

    /// Evaluates the additive character.
    pub fn psi(&self, x: &Rational) -> Cyclotomic {
        let (r, k) = self.fractional_part(x);
        if k == 0 {
            return Cyclotomic::one();
        }
        Cyclotomic::root_of_unity(self.p.pow(k), r as i64)
    }

    /// The canonical representative of `c + p^n O` in `[0, p^n)`, with a
    /// denominator that is a power of `p`.
    pub fn reduce(&self, c: &Rational, n: i64) -> Rational {
        let k = match self.valuation(c) {
            None => return Rational::zero(),
            Some(v) => (-v).max(0),
        };
        let e = n + k;
        if e <= 0 {
            return Rational::zero();
        }
        let m = BigInt::from(self.p).pow(e as u32);
        let scaled = c * pow_p(self.p, k);
        let r = residue_mod(&scaled, &m);
        Rational::from_integer(r) * pow_p(self.p, -k)
    }

    /// Smallest positive integer that is not a square modulo `p` (5 for p = 2).
    pub fn nonresidue(&self) -> u64 {
        if self.p == 2 {
            return 5;
        }
        (2..self.p)
            .find(|&u| crate::exact::cyclotomic::legendre_u64(u, self.p) == -1)
            .expect("odd primes have non-residues")
    }

    /// Whether `x` is a nonzero square in the p-adic field.
    pub fn is_square(&self, x: &Rational) -> bool {
        match self.square_class(x) {
            Some((parity, class)) => parity == 0 && class == 0,
            None => false,
        }
    }

    /// Number of unit square classes: 2 for odd p, 4 for p = 2.
    pub fn unit_class_count(&self) -> usize {
        if self.p == 2 {
            4
        } else {
            2
        }
    }

    /// Index of the unit square class of a unit: for odd p, 0 = square,
    /// 1 = non-residue; for p = 2 the residue mod 8 is mapped 1, 3, 5, 7 -> 0, 3, 1, 2
    /// so that the representatives are {1, 5, -1, -5}.
    pub fn unit_class(&self, u: &Rational) -> usize {
        if self.p == 2 {
            let r = residue_mod(u, &BigInt::from(8)).to_u64().unwrap();
            match r {
                1 => 0,
                5 => 1,
                7 => 2,
                3 => 3,
                _ => panic!("not a 2-adic unit"),
            }
        } else {
            let r = residue_mod(u, &BigInt::from(self.p)).to_u64().unwrap();
            if crate::exact::cyclotomic::legendre_u64(r, self.p) == 1 {
                0
            } else {
                1
            }
        }
    }

    /// Representative unit of a unit square class.
    pub fn unit_class_rep(&self, class: usize) -> Rational {
        let r: i64 = if self.p == 2 {
            [1, 5, -1, -5][class]
        } else {
            [1, self.nonresidue() as i64][class]
        };
        Rational::from_integer(BigInt::from(r))
    }

    /// `(v(x) mod 2, unit class)`; `None` at zero.
    pub fn square_class(&self, x: &Rational) -> Option<(usize, usize)> {
        let v = self.valuation(x)?;
        let u = x * pow_p(self.p, -v);
        Some((v.rem_euclid(2) as usize, self.unit_class(&u)))
    }

    /// Representatives of the square classes of the multiplicative group.
    pub fn square_class_reps(&self) -> Vec<Rational> {
        let p = Rational::from_integer(BigInt::from(self.p));
        let mut out = Vec::new();
        for parity in 0..2 {
            for class in 0..self.unit_class_count() {
                let u = self.unit_class_rep(class);
                out.push(if parity == 0 { u } else { u * &p });
            }
        }
        out.sort_by(|a, b| {
            let key = |x: &Rational| (x.is_negative(), x.abs());
            key(a).cmp(&key(b))
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn psi_values() {
        let c = PAdicContext::new(3).unwrap();
        assert_eq!(c.psi(&rat(1, 3)), Cyclotomic::root_of_unity(3, 1));
        assert_eq!(c.psi(&rat(1, 9)), Cyclotomic::root_of_unity(9, 1));
        assert!(c.psi(&int(7)).is_one());
        assert!(c.psi(&rat(5, 2)).is_one());
        // 1/6 = 1/2 * 1/3 and 1/2 = -1 mod 3, so {1/6}_3 = 2/3
        assert_eq!(c.psi(&rat(1, 6)), Cyclotomic::root_of_unity(3, 2));
    }

    #[test]
    fn square_classes() {
        let reps = |p| PAdicContext::new(p).unwrap().square_class_reps();
        assert_eq!(reps(3), vec![int(1), int(2), int(3), int(6)]);
        assert_eq!(reps(5), vec![int(1), int(2), int(5), int(10)]);
        let two = reps(2);
        assert_eq!(two.len(), 8);
        for x in [1, 2, 5, 10, -1, -2, -5, -10] {
            assert!(two.contains(&int(x)));
        }
    }

    #[test]
    fn reduction_is_canonical() {
        let c = PAdicContext::new(5).unwrap();
        assert_eq!(c.reduce(&rat(-1, 1), 2), int(24));
        assert_eq!(c.reduce(&rat(1, 5), 0), rat(1, 5));
        assert_eq!(c.reduce(&rat(26, 5), 1), rat(1, 5));
        assert_eq!(c.reduce(&rat(3, 25), -1), rat(3, 25));
        assert_eq!(c.reduce(&rat(3, 25), -2), int(0));
        assert_eq!(c.reduce(&rat(1, 2), 1), int(3));
    }
}
