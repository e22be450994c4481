use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact::rational::{gcd_u64, modpow, residue_mod, Rational};
use crate::exact::{Cyclotomic, RationalFunction};

use super::{PAdicContext, PadicError};

/// How the character's absolute-value part is carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    /// `|x|^s` with `s` symbolic, carried by `X^{v(x)}`.
    Symbolic,
    /// `|x|^{s0}` with `s0` a half-integer, carried by `Y^{2 s0 v(x)}`.
    Fixed(Rational),
}

/// `chi(x) = chi0(u) * at_p^{v} * |x|^{exponent}` for `x = p^v u`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuasiCharacter {
    ctx: PAdicContext,
    level: u32,
    table: BTreeMap<u64, Cyclotomic>,
    at_p: Cyclotomic,
    half_shift: i64,
    symbolic: bool,
}

fn unit_residues(p: u64, level: u32) -> Vec<u64> {
    let m = p.pow(level);
    (0..m.max(1)).filter(|&r| gcd_u64(r, p) == 1 || m == 1).collect()
}

/// Generators of `(Z/p^L)^x` together with their orders.
pub fn unit_generators(p: u64, level: u32) -> Vec<(u64, u64)> {
    if level == 0 {
        return vec![];
    }
    let m = p.pow(level);
    if p == 2 {
        return match level {
            1 => vec![],
            2 => vec![(3, 2)],
            _ => vec![(m - 1, 2), (5, 1 << (level - 2))],
        };
    }
    let phi = (p - 1) * p.pow(level - 1);
    let primes: Vec<u64> = crate::exact::rational::factorize(phi)
        .into_iter()
        .map(|(q, _)| q)
        .collect();
    let g = (2..m)
        .find(|&g| gcd_u64(g, p) == 1 && primes.iter().all(|&q| modpow(g, phi / q, m) != 1))
        .expect("odd prime powers have primitive roots");
    vec![(g, phi)]
}

impl QuasiCharacter {
    /// Builds a character from its values on `unit_generators(p, level)`.
    pub fn new(
        ctx: PAdicContext,
        level: u32,
        gen_values: Vec<Cyclotomic>,
        at_p: Cyclotomic,
        exponent: Exponent,
    ) -> Result<Self, PadicError> {
        let p = ctx.p();
        let gens = unit_generators(p, level);
        if gens.len() != gen_values.len() {
            return Err(PadicError::InvalidCharacter(format!(
                "level {level} needs {} generator values, got {}",
                gens.len(),
                gen_values.len()
            )));
        }
        for ((g, ord), v) in gens.iter().zip(&gen_values) {
            if !v.pow(*ord as i64).is_one() {
                return Err(PadicError::InvalidCharacter(format!(
                    "value {v} at generator {g} is not a root of unity of order dividing {ord}"
                )));
            }
        }
        if at_p.is_zero() || !at_p.norm_sq().is_one() {
            return Err(PadicError::InvalidCharacter(format!(
                "value at p must have absolute value 1, got {at_p}"
            )));
        }
        let (half_shift, symbolic) = match exponent {
            Exponent::Symbolic => (0, true),
            Exponent::Fixed(s) => {
                let twice = s * Rational::from_integer(2.into());
                if !twice.is_integer() {
                    return Err(PadicError::InvalidCharacter(
                        "fixed exponent must be a half-integer".into(),
                    ));
                }
                (twice.to_integer().to_i64().unwrap(), false)
            }
        };
        // enumerate the group from generator powers
        let m = p.pow(level);
        let mut table = BTreeMap::new();
        table.insert(1 % m.max(1), Cyclotomic::one());
        for ((g, ord), v) in gens.iter().zip(&gen_values) {
            let current: Vec<(u64, Cyclotomic)> =
                table.iter().map(|(k, c)| (*k, c.clone())).collect();
            for (r, c) in current {
                let mut x = r;
                let mut val = c;
                for _ in 1..*ord {
                    x = x * g % m;
                    val = val.mul(v);
                    table.insert(x, val.clone());
                }
            }
        }
        if level > 0 && table.len() as u64 != (m / p) * (p - 1) {
            return Err(PadicError::InvalidCharacter("generator table is not a group".into()));
        }
        let mut chi = QuasiCharacter {
            ctx,
            level,
            table,
            at_p,
            half_shift,
            symbolic,
        };
        chi.lower_level();
        Ok(chi)
    }

    /// Drops the level to the conductor exponent.
    fn lower_level(&mut self) {
        let p = self.ctx.p();
        while self.level > 0 {
            let lower = p.pow(self.level - 1);
            let trivial = self
                .table
                .iter()
                .filter(|(r, _)| *r % lower == 1 % lower)
                .all(|(_, c)| c.is_one());
            if !trivial {
                break;
            }
            self.level -= 1;
            let mut table = BTreeMap::new();
            for (r, c) in &self.table {
                table.entry(r % lower).or_insert_with(|| c.clone());
            }
            self.table = table;
        }
    }

    pub fn trivial(ctx: PAdicContext) -> Self {
        QuasiCharacter::unramified(ctx, Cyclotomic::one())
    }

    pub fn unramified(ctx: PAdicContext, at_p: Cyclotomic) -> Self {
        QuasiCharacter::new(ctx, 0, vec![], at_p, Exponent::Fixed(Rational::from_integer(0.into())))
            .expect("unramified data is valid")
    }

    /// Level-one character sending the least primitive root to `zeta_{p-1}^k`
    /// (`p` odd), or the sign character of `-1` for `p = 2` (level 2).
    pub fn tame(ctx: PAdicContext, k: i64) -> Self {
        let p = ctx.p();
        if p == 2 {
            let v = if k % 2 == 0 { 1 } else { -1 };
            return QuasiCharacter::new(
                ctx,
                2,
                vec![Cyclotomic::from_int(v)],
                Cyclotomic::one(),
                Exponent::Fixed(Rational::from_integer(0.into())),
            )
            .expect("valid");
        }
        QuasiCharacter::new(
            ctx,
            1,
            vec![Cyclotomic::root_of_unity(p - 1, k)],
            Cyclotomic::one(),
            Exponent::Fixed(Rational::from_integer(0.into())),
        )
        .expect("valid")
    }

    pub fn with_exponent(mut self, exponent: Exponent) -> Self {
        match exponent {
            Exponent::Symbolic => {
                self.symbolic = true;
            }
            Exponent::Fixed(s) => {
                let twice = s * Rational::from_integer(2.into());
                self.half_shift = twice.to_integer().to_i64().expect("half-integer exponent");
                self.symbolic = false;
            }
        }
        self
    }

    /// Same character with `|x|^s` attached symbolically.
    pub fn with_symbolic_s(mut self) -> Self {
        self.symbolic = true;
        self
    }

    pub fn without_symbolic_s(mut self) -> Self {
        self.symbolic = false;
        self
    }

    pub fn ctx(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_unramified(&self) -> bool {
        self.level == 0
    }

    pub fn is_symbolic(&self) -> bool {
        self.symbolic
    }

    pub fn at_p(&self) -> &Cyclotomic {
        &self.at_p
    }

    /// Twice the fixed exponent shift.
    pub fn half_shift(&self) -> i64 {
        self.half_shift
    }

    /// Real part of the exponent besides the symbolic `s`.
    pub fn exponent(&self) -> Rational {
        Rational::new(self.half_shift.into(), 2.into())
    }

    /// `chi0(u)` for a p-adic unit `u`.
    pub fn unit_value(&self, u: &Rational) -> Cyclotomic {
        if self.level == 0 {
            return Cyclotomic::one();
        }
        let m = self.ctx.p().pow(self.level);
        let r = residue_mod(u, &BigInt::from(m)).to_u64().unwrap();
        self.table
            .get(&r)
            .cloned()
            .expect("argument must be a unit")
    }

    /// The value `chi(p^v u)` as a monomial in `X` and `Y`.
    pub fn value(&self, x: &Rational) -> Result<RationalFunction, PadicError> {
        let p = self.ctx.p();
        let v = self.ctx.valuation(x).ok_or(PadicError::ZeroArgument)?;
        let u = x * crate::exact::rational::pow_p(p, -v);
        let c = self.unit_value(&u).mul(&self.at_p.pow(v));
        let xexp = if self.symbolic { v } else { 0 };
        Ok(RationalFunction::monomial(p, c, xexp, 0, v * self.half_shift))
    }

    /// The value on `p^v` of the unramified part, `at_p * p^{-s0}` (and `X`).
    pub fn uniformizer_value(&self) -> RationalFunction {
        let c = self.at_p.clone();
        let xexp = if self.symbolic { 1 } else { 0 };
        RationalFunction::monomial(self.ctx.p(), c, xexp, 0, self.half_shift)
    }

    pub fn inverse(&self) -> Self {
        QuasiCharacter {
            ctx: self.ctx,
            level: self.level,
            table: self.table.iter().map(|(k, v)| (*k, v.conj())).collect(),
            at_p: self.at_p.conj(),
            half_shift: -self.half_shift,
            symbolic: self.symbolic,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let level = self.level.max(other.level);
        let p = self.ctx.p();
        let m = p.pow(level);
        let table = unit_residues(p, level)
            .into_iter()
            .map(|r| {
                let u = Rational::from_integer(r.into());
                (r % m.max(1), self.unit_value(&u).mul(&other.unit_value(&u)))
            })
            .collect();
        let mut out = QuasiCharacter {
            ctx: self.ctx,
            level,
            table,
            at_p: self.at_p.mul(&other.at_p),
            half_shift: self.half_shift + other.half_shift,
            symbolic: self.symbolic || other.symbolic,
        };
        out.lower_level();
        out
    }

    /// `chi(-1)`.
    pub fn sign(&self) -> Cyclotomic {
        self.unit_value(&Rational::from_integer((-1).into()))
    }
}

impl fmt::Display for QuasiCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = unit_generators(self.ctx.p(), self.level);
        let vals: Vec<String> = gens
            .iter()
            .map(|(g, _)| {
                format!(
                    "{}",
                    self.unit_value(&Rational::from_integer((*g).into()))
                )
            })
            .collect();
        write!(
            f,
            "chi(p={}, level={}, table=[{}], at_p={}, exp={}{})",
            self.ctx.p(),
            self.level,
            vals.join(","),
            self.at_p,
            if self.symbolic { "s+" } else { "" },
            self.exponent()
        )
    }
}

impl fmt::Debug for QuasiCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn generators_generate() {
        for (p, l) in [(3u64, 1u32), (3, 2), (5, 1), (7, 2), (2, 2), (2, 3), (2, 4)] {
            let ctx = PAdicContext::new(p).unwrap();
            let gens = unit_generators(p, l);
            let vals = gens.iter().map(|_| Cyclotomic::one()).collect();
            assert!(QuasiCharacter::new(ctx, l, vals, Cyclotomic::one(), Exponent::Symbolic).is_ok());
        }
    }

    #[test]
    fn tame_character_is_multiplicative() {
        let ctx = PAdicContext::new(7).unwrap();
        let chi = QuasiCharacter::tame(ctx, 1);
        assert_eq!(chi.level(), 1);
        for a in 1..7 {
            for b in 1..7 {
                let lhs = chi.unit_value(&int(a * b));
                let rhs = chi.unit_value(&int(a)).mul(&chi.unit_value(&int(b)));
                assert_eq!(lhs, rhs);
            }
        }
        assert!(chi.mul(&chi.inverse()).is_unramified());
    }

    #[test]
    fn conductor_lowering() {
        let ctx = PAdicContext::new(3).unwrap();
        // value 1 at the generator of (Z/9)^x is the trivial character
        let chi = QuasiCharacter::new(ctx, 2, vec![Cyclotomic::one()], Cyclotomic::one(), Exponent::Symbolic)
            .unwrap();
        assert_eq!(chi.level(), 0);
        // order 2 character of (Z/9)^x factors through (Z/3)^x
        let chi = QuasiCharacter::new(ctx, 2, vec![Cyclotomic::from_int(-1)], Cyclotomic::one(), Exponent::Symbolic)
            .unwrap();
        assert_eq!(chi.level(), 1);
    }
}
