//! Rational functions in `X = p^{-s}`, a Satake symbol `a` and `Y = p^{-1/2}`.
//!
//! A value is `(N0 + Y*N1) / D` with `N0, N1, D` in `K[a][X]`, `K` a cyclotomic
//! field. Negative powers of `X` and `a` are absorbed into `D`. The canonical form
//! removes `gcd(N0, N1, D)` and scales so that the lowest term of `D` (lowest in
//! `X`, then in `a`) has coefficient 1.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

use super::cyclotomic::Cyclotomic;
use super::poly::{BPoly, Poly, Ring, UPoly};
use super::rational::{int, pow_p, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatFuncError {
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("evaluation at a pole")]
    EvaluationAtPole,
    #[error("value still depends on X or the Satake symbol")]
    NotConstant,
}

#[derive(Clone)]
pub struct RationalFunction {
    // 0 while no Y has been introduced
    p: u64,
    n0: BPoly,
    n1: BPoly,
    den: BPoly,
}

fn merge_p(a: u64, b: u64) -> u64 {
    match (a, b) {
        (0, q) | (q, 0) => q,
        (a, b) => {
            assert_eq!(a, b, "rational functions over different primes combined");
            a
        }
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            p: 0,
            n0: BPoly::zero(),
            n1: BPoly::zero(),
            den: BPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        RationalFunction {
            p: 0,
            n0: BPoly::constant_cyclotomic(c),
            n1: BPoly::zero(),
            den: BPoly::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        RationalFunction::constant(Cyclotomic::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction::from_rational(int(n))
    }

    /// Attaches the prime governing `Y^2 = 1/p`.
    pub fn with_prime(mut self, p: u64) -> Self {
        self.p = merge_p(self.p, p);
        self
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// `c * X^i * a^j * Y^k` for any integer exponents.
    pub fn monomial(p: u64, c: Cyclotomic, x_exp: i64, a_exp: i64, y_exp: i64) -> Self {
        if c.is_zero() {
            return RationalFunction::zero().with_prime(p);
        }
        // Y^k = p^{-floor(k/2)} * Y^{k mod 2}
        let half = y_exp.div_euclid(2);
        let odd = y_exp.rem_euclid(2) == 1;
        let c = c.scale(&pow_p(p.max(1), -half));
        let xi = x_exp.max(0) as usize;
        let aj = a_exp.max(0) as usize;
        let num = BPoly::monomial(UPoly::monomial(c, aj), xi);
        let den = BPoly::monomial(
            UPoly::monomial(Cyclotomic::one(), (-a_exp).max(0) as usize),
            (-x_exp).max(0) as usize,
        );
        let (n0, n1) = if odd {
            (BPoly::zero(), num)
        } else {
            (num, BPoly::zero())
        };
        RationalFunction { p, n0, n1, den }
    }

    pub fn x(p: u64) -> Self {
        RationalFunction::monomial(p, Cyclotomic::one(), 1, 0, 0)
    }

    pub fn alpha(p: u64) -> Self {
        RationalFunction::monomial(p, Cyclotomic::one(), 0, 1, 0)
    }

    pub fn y(p: u64) -> Self {
        RationalFunction::monomial(p, Cyclotomic::one(), 0, 0, 1)
    }

    /// `Y^k`, i.e. `p^{-k/2}`.
    pub fn y_pow(p: u64, k: i64) -> Self {
        RationalFunction::monomial(p, Cyclotomic::one(), 0, 0, k)
    }

    fn build(p: u64, n0: BPoly, n1: BPoly, den: BPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if n0.is_zero() && n1.is_zero() {
            return RationalFunction::zero().with_prime(p);
        }
        let (mut n0, mut n1, mut den) = (n0, n1, den);
        if den.term_count() == 1 && den.lead().term_count() == 1 {
            // monomial denominator: only monomial factors can cancel
            let kx = [&n0, &n1, &den]
                .iter()
                .filter_map(|b| b.trailing_degree())
                .min()
                .unwrap_or(0);
            let ka = [&n0, &n1, &den]
                .iter()
                .filter_map(|b| b.inner_trailing_degree())
                .min()
                .unwrap_or(0);
            let strip = |b: &BPoly| {
                if b.is_zero() {
                    b.clone()
                } else {
                    b.shift_down(kx).inner_shift_down(ka)
                }
            };
            n0 = strip(&n0);
            n1 = strip(&n1);
            den = strip(&den);
        } else {
            let g = n0.gcd(&n1).gcd(&den);
            if g.degree() != Some(0) || !g.lead().is_constant() {
                let div = |b: &BPoly| b.exact_div(&g).expect("gcd must divide");
                n0 = div(&n0);
                n1 = div(&n1);
                den = div(&den);
            }
        }
        let t = den.trailing().trailing().inv();
        if !t.is_one() {
            n0 = n0.scale_cyclotomic(&t);
            n1 = n1.scale_cyclotomic(&t);
            den = den.scale_cyclotomic(&t);
        }
        RationalFunction { p, n0, n1, den }
    }

    /// Builds `(n0 + Y n1) / den` in canonical form.
    pub fn from_parts(p: u64, n0: BPoly, n1: BPoly, den: BPoly) -> Self {
        RationalFunction::build(p, n0, n1, den)
    }

    pub fn parts(&self) -> (&BPoly, &BPoly, &BPoly) {
        (&self.n0, &self.n1, &self.den)
    }

    /// Replaces `Y` by the cyclotomic number `1/sqrt(p)`.
    pub fn absorb_y(&self) -> Self {
        if self.n1.is_zero() {
            return self.clone();
        }
        let s = Cyclotomic::sqrt_prime(self.p).inv();
        RationalFunction::build(
            self.p,
            self.n0.add(&self.n1.scale_cyclotomic(&s)),
            BPoly::zero(),
            self.den.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        if self.n0.is_zero() && self.n1.is_zero() {
            return true;
        }
        if self.n1.is_zero() || self.n0.is_zero() {
            return false;
        }
        self.absorb_y().n0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.sub(&RationalFunction::one()).is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = merge_p(self.p, other.p);
        if other.is_structurally_zero() {
            return self.clone().with_prime(p);
        }
        if self.is_structurally_zero() {
            return other.clone().with_prime(p);
        }
        if self.den == other.den {
            return RationalFunction::build(
                p,
                self.n0.add(&other.n0),
                self.n1.add(&other.n1),
                self.den.clone(),
            );
        }
        let g = self.den.gcd(&other.den);
        let a = self.den.exact_div(&g).expect("gcd must divide");
        let b = other.den.exact_div(&g).expect("gcd must divide");
        RationalFunction::build(
            p,
            self.n0.mul(&b).add(&other.n0.mul(&a)),
            self.n1.mul(&b).add(&other.n1.mul(&a)),
            self.den.mul(&b),
        )
    }

    fn is_structurally_zero(&self) -> bool {
        self.n0.is_zero() && self.n1.is_zero()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            p: self.p,
            n0: self.n0.neg(),
            n1: self.n1.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return RationalFunction::zero().with_prime(self.p);
        }
        RationalFunction {
            p: self.p,
            n0: self.n0.scale_cyclotomic(c),
            n1: self.n1.scale_cyclotomic(c),
            den: self.den.clone(),
        }
    }

    fn inv_p(&self, p: u64) -> Cyclotomic {
        assert!(p > 0, "Y^2 needs a prime");
        Cyclotomic::from_rational(Rational::new(1.into(), p.into()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = merge_p(self.p, other.p);
        if self.is_structurally_zero() || other.is_structurally_zero() {
            return RationalFunction::zero().with_prime(p);
        }
        let mut n0 = self.n0.mul(&other.n0);
        if !self.n1.is_zero() && !other.n1.is_zero() {
            n0 = n0.add(&self.n1.mul(&other.n1).scale_cyclotomic(&self.inv_p(p)));
        }
        let n1 = self.n0.mul(&other.n1).add(&self.n1.mul(&other.n0));
        RationalFunction::build(p, n0, n1, self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Result<Self, RatFuncError> {
        if self.is_zero() {
            return Err(RatFuncError::DivisionByZeroFunction);
        }
        if self.n1.is_zero() {
            return Ok(RationalFunction::build(
                self.p,
                self.den.clone(),
                BPoly::zero(),
                self.n0.clone(),
            ));
        }
        // multiply by the Y-conjugate
        let norm = self
            .n0
            .mul(&self.n0)
            .sub(&self.n1.mul(&self.n1).scale_cyclotomic(&self.inv_p(self.p)));
        if norm.is_zero() {
            return self.absorb_y().inv();
        }
        Ok(RationalFunction::build(
            self.p,
            self.den.mul(&self.n0),
            self.den.mul(&self.n1).neg(),
            norm,
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self, RatFuncError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self, RatFuncError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = RationalFunction::one().with_prime(self.p);
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// Maps `a -> 1/a`.
    pub fn alpha_inverse(&self) -> Self {
        self.reflect_alpha(|c| c.clone())
    }

    /// Complex conjugation with `|a| = 1` and `X`, `Y` real.
    pub fn conj(&self) -> Self {
        self.reflect_alpha(|c| c.conj())
    }

    fn reflect_alpha(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        let d = [&self.n0, &self.n1, &self.den]
            .iter()
            .map(|b| b.inner_degree())
            .max()
            .unwrap_or(0);
        let r = |b: &BPoly| b.map(|u| u.reverse(d).map(&f));
        RationalFunction::build(self.p, r(&self.n0), r(&self.n1), r(&self.den))
    }

    /// Maps `X -> c / X`.
    pub fn subst_x_reciprocal(&self, c: &Cyclotomic) -> Self {
        let d = [&self.n0, &self.n1, &self.den]
            .iter()
            .filter_map(|b| b.degree())
            .max()
            .unwrap_or(0);
        let r = |b: &BPoly| {
            let mut cp = Cyclotomic::one();
            let mut coeffs = Vec::with_capacity(b.coeffs().len());
            for u in b.coeffs() {
                coeffs.push(u.scale(&cp));
                cp = cp.mul(c);
            }
            Poly::from_coeffs(coeffs).reverse(d)
        };
        RationalFunction::build(self.p, r(&self.n0), r(&self.n1), r(&self.den))
    }

    /// Maps `X -> 1/(p X)`, which realises `s -> 1 - s`.
    pub fn reflect_s(&self, p: u64) -> Self {
        self.subst_x_reciprocal(&Cyclotomic::from_rational(Rational::new(
            1.into(),
            p.into(),
        )))
        .with_prime(p)
    }

    /// Substitutes a rational function for `X`.
    pub fn compose_x(&self, r: &Self) -> Result<Self, RatFuncError> {
        let lift = |u: &UPoly| {
            RationalFunction::build(
                0,
                BPoly::constant(u.clone()),
                BPoly::zero(),
                BPoly::one(),
            )
        };
        let ev = |b: &BPoly| b.eval_with(r, lift);
        let num = ev(&self.n0).add(&RationalFunction::y(merge_p(self.p, r.p)).mul(&ev(&self.n1)));
        let num = if self.n1.is_zero() { ev(&self.n0) } else { num };
        let den = ev(&self.den);
        if den.is_zero() {
            return Err(RatFuncError::EvaluationAtPole);
        }
        num.with_prime(self.p).div(&den)
    }

    pub fn eval_x(&self, c: &Cyclotomic) -> Result<Self, RatFuncError> {
        let ev = |b: &BPoly| BPoly::constant(b.eval_with(&UPoly::constant(c.clone()), |u| u.clone()));
        let den = ev(&self.den);
        if den.is_zero() {
            return Err(RatFuncError::EvaluationAtPole);
        }
        Ok(RationalFunction::build(self.p, ev(&self.n0), ev(&self.n1), den))
    }

    /// Specialises the Satake symbol.
    pub fn eval_alpha(&self, c: &Cyclotomic) -> Result<Self, RatFuncError> {
        let ev = |b: &BPoly| b.map(|u| UPoly::constant(u.eval(c)));
        let den = ev(&self.den);
        if den.is_zero() {
            return Err(RatFuncError::EvaluationAtPole);
        }
        Ok(RationalFunction::build(self.p, ev(&self.n0), ev(&self.n1), den))
    }

    /// The exact value when neither `X` nor `a` occurs.
    pub fn to_cyclotomic(&self) -> Result<Cyclotomic, RatFuncError> {
        let c = |b: &BPoly| -> Result<Cyclotomic, RatFuncError> {
            match b.degree() {
                None => Ok(Cyclotomic::zero()),
                Some(0) if b.lead().is_constant() => Ok(b.lead().lead()),
                _ => Err(RatFuncError::NotConstant),
            }
        };
        let (a0, a1, d) = (c(&self.n0)?, c(&self.n1)?, c(&self.den)?);
        let mut num = a0;
        if !a1.is_zero() {
            num = num.add(&a1.mul(&Cyclotomic::sqrt_prime(self.p).inv()));
        }
        Ok(num.div(&d))
    }

    pub fn is_constant(&self) -> bool {
        self.to_cyclotomic().is_ok()
    }

    /// Numerical value for given `X` and `a`, with `Y = p^{-1/2}`.
    pub fn eval_complex(&self, x: Complex64, alpha: Complex64) -> Result<Complex64, RatFuncError> {
        let y = if self.p == 0 {
            0.0
        } else {
            (self.p as f64).powf(-0.5)
        };
        let ev = |b: &BPoly| -> Complex64 {
            b.coeffs().iter().rev().fold(Complex64::zero(), |acc, u| {
                acc * x
                    + u.coeffs()
                        .iter()
                        .rev()
                        .fold(Complex64::zero(), |a2, c| a2 * alpha + c.embed())
            })
        };
        let den = ev(&self.den);
        if den == Complex64::zero() {
            return Err(RatFuncError::EvaluationAtPole);
        }
        Ok((ev(&self.n0) + ev(&self.n1) * y) / den)
    }

    /// Largest power of `X` in numerator or denominator.
    pub fn x_degree(&self) -> usize {
        [&self.n0, &self.n1, &self.den]
            .iter()
            .filter_map(|b| b.degree())
            .max()
            .unwrap_or(0)
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl From<Cyclotomic> for RationalFunction {
    fn from(c: Cyclotomic) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<Rational> for RationalFunction {
    fn from(r: Rational) -> Self {
        RationalFunction::from_rational(r)
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFunction::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFunction::mul(self, other)
    }
    fn neg(&self) -> Self {
        RationalFunction::neg(self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                RationalFunction::$m(self, rhs)
            }
        }
        impl std::ops::$tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                RationalFunction::$m(&self, &rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> RationalFunction {
        iter.fold(RationalFunction::zero(), |a, b| a.add(&b))
    }
}

fn fmt_coeff(c: &Cyclotomic, has_monomial: bool) -> (bool, String) {
    // returns (negative, text without leading sign)
    if let Some(r) = c.to_rational() {
        let neg = r < Rational::zero();
        let mag = if neg { -r } else { r };
        if has_monomial && mag.is_one() {
            return (neg, String::new());
        }
        return (neg, mag.to_string());
    }
    if let Some((r, _)) = c.as_monomial() {
        if r < Rational::zero() {
            return (true, c.neg().to_string());
        }
        return (false, c.to_string());
    }
    (false, format!("({})", c))
}

fn fmt_poly(n0: &BPoly, n1: &BPoly) -> (String, usize) {
    let mut out = String::new();
    let mut count = 0;
    for (ypow, b) in [(0, n0), (1, n1)] {
        for (i, j, c) in b.terms() {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("X".to_string()),
                _ => mono.push(format!("X^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("a".to_string()),
                _ => mono.push(format!("a^{j}")),
            }
            if ypow == 1 {
                mono.push("Y".to_string());
            }
            let (neg, coef) = fmt_coeff(c, !mono.is_empty());
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono.join("*"),
                (false, true) => coef,
                (false, false) => format!("{}*{}", coef, mono.join("*")),
            };
            if count == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
            count += 1;
        }
    }
    if count == 0 {
        out.push('0');
    }
    (out, count)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, nterms) = fmt_poly(&self.n0, &self.n1);
        if self.den.is_one_bpoly() {
            return write!(f, "{}", num);
        }
        let (den, dterms) = fmt_poly(&self.den, &BPoly::zero());
        let num = if nterms > 1 || num.contains('/') {
            format!("({num})")
        } else {
            num
        };
        let den = if dterms > 1 || den.contains('*') {
            format!("({den})")
        } else {
            den
        };
        write!(f, "{}/{}", num, den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl BPoly {
    fn is_one_bpoly(&self) -> bool {
        self.degree() == Some(0) && self.lead().is_one_poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn x() -> RationalFunction {
        RationalFunction::x(3)
    }

    fn k(n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }

    #[test]
    fn cubic_over_linear_normalizes() {
        let f = k(1).sub(&x().pow(3).unwrap()).div(&k(1).sub(&x())).unwrap();
        let g = k(1).add(&x()).add(&x().pow(2).unwrap());
        assert_eq!(f, g);
        assert!(f.parts().2.is_one_bpoly());
    }

    #[test]
    fn difference_of_squares() {
        let f = k(1).sub(&x().pow(2).unwrap()).div(&k(1).sub(&x())).unwrap();
        assert_eq!(f, k(1).add(&x()));
    }

    #[test]
    fn y_squared_is_inverse_prime() {
        let y = RationalFunction::y(5);
        assert_eq!(y.mul(&y), RationalFunction::from_rational(rat(1, 5)));
        let a = RationalFunction::alpha(5);
        assert!(a.mul(&a.pow(-1).unwrap()).is_one());
    }

    #[test]
    fn eval_at_pole_is_error() {
        let f = k(1).div(&k(1).sub(&x())).unwrap();
        assert_eq!(
            f.eval_x(&Cyclotomic::one()).unwrap_err(),
            RatFuncError::EvaluationAtPole
        );
        assert_eq!(
            f.div(&RationalFunction::zero()).unwrap_err(),
            RatFuncError::DivisionByZeroFunction
        );
    }

    #[test]
    fn reciprocal_substitution_matches_compose() {
        let f = k(1).sub(&x()).div(&k(1).sub(&x().scale(&Cyclotomic::from_int(2)))).unwrap();
        let r = f.reflect_s(3);
        let target = RationalFunction::from_rational(rat(1, 3))
            .div(&x())
            .unwrap();
        assert_eq!(r, f.compose_x(&target).unwrap());
    }

    #[test]
    fn y_inverse_with_sqrt_in_field() {
        // 1 - sqrt(5) Y = 0 when sqrt(5) lies in the coefficient field
        let s = Cyclotomic::sqrt_prime(5);
        let f = k(1).sub(&RationalFunction::y(5).scale(&s));
        assert!(f.is_zero());
        let g = k(2).sub(&RationalFunction::y(5).scale(&s));
        assert!(g.mul(&g.inv().unwrap()).is_one());
    }

    #[test]
    fn display_forms() {
        let f = RationalFunction::from_rational(rat(2, 3))
            .div(&k(1).sub(&x()))
            .unwrap();
        assert_eq!(f.to_string(), "(2/3)/(1 - X)");
    }
}
