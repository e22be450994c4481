//! The real place: polynomial-times-Gaussian test functions with exact
//! transforms, oscillatory quadrature, gamma factors, decay scans and the
//! numeric isometry check. `psi(x) = e^{2 pi i x}` and `dx` is self-dual.

pub mod isometry;
pub mod quadrature;
pub mod tate;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::exact::rational::Rational;
use crate::exact::Cyclotomic;

pub use isometry::{isometry_numeric, NumericIsometry};
pub use quadrature::{f2_quadrature, F2Mode};
pub use tate::{
    asymptotic_decay_scan, gamma_arch, gamma_by_zeta, gamma_r, zeta_numeric, ArchCharacter, DecayScan,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArchError {
    #[error("quadrature validated only for |t| <= 1e6, got {0}")]
    OutOfRange(f64),
    #[error("pole of the gamma quotient at s = {0}")]
    Pole(f64),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("exponent {0} outside the admissible interval")]
    BadExponent(f64),
}

/// Exact element of `Q(i)[pi, 1/pi]`, keyed by the power of `pi`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiSeries(BTreeMap<i32, Cyclotomic>);

impl PiSeries {
    pub fn zero() -> Self {
        PiSeries(BTreeMap::new())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(Cyclotomic::from_rational(r), 0)
    }

    /// `c pi^k`
    pub fn term(c: Cyclotomic, k: i32) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        PiSeries(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, c) in &o.0 {
            let s = m.get(k).map_or_else(|| c.clone(), |a| a.add(c));
            if s.is_zero() {
                m.remove(k);
            } else {
                m.insert(*k, s);
            }
        }
        PiSeries(m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc = Self::zero();
        for (i, a) in &self.0 {
            for (j, b) in &o.0 {
                acc = acc.add(&Self::term(a.mul(b), i + j));
            }
        }
        acc
    }

    pub fn value(&self) -> Complex64 {
        self.0
            .iter()
            .map(|(k, c)| c.embed() * PI.powi(*k))
            .sum()
    }
}

impl fmt::Display for PiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                _ => format!("({c})*pi^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `x -> P(x) e^{-pi x^2}` with exact coefficients of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteGaussian {
    coeffs: Vec<PiSeries>,
}

impl HermiteGaussian {
    pub fn new(mut coeffs: Vec<PiSeries>) -> Self {
        while coeffs.last().is_some_and(PiSeries::is_zero) {
            coeffs.pop();
        }
        HermiteGaussian { coeffs }
    }

    pub fn from_rationals(c: &[Rational]) -> Self {
        Self::new(c.iter().cloned().map(PiSeries::from_rational).collect())
    }

    pub fn gaussian() -> Self {
        Self::monomial(0)
    }

    /// `x^k e^{-pi x^2}`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![PiSeries::zero(); k + 1];
        c[k] = PiSeries::from_rational(Rational::from_integer(1.into()));
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[PiSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(PiSeries::is_zero)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(PiSeries::is_zero)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let p = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.value());
        p * (-PI * x * x).exp()
    }

    /// A bound for `|f(x)|` valid for `|x| >= 1`.
    pub fn envelope(&self, x: f64) -> f64 {
        let ax = x.abs().max(1.0);
        let s: f64 = self.coeffs.iter().map(|c| c.value().norm()).sum();
        s * ax.powi(self.coeffs.len() as i32) * (-PI * x * x).exp()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &Vec<PiSeries>, i: usize| v.get(i).cloned().unwrap_or_default();
        Self::new((0..n).map(|i| get(&self.coeffs, i).add(&get(&o.coeffs, i))).collect())
    }

    pub fn scale(&self, c: &PiSeries) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// `x -> f(-x)`
    pub fn reflect(&self) -> Self {
        let minus = PiSeries::from_rational(Rational::from_integer((-1).into()));
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.mul(&minus) } else { c.clone() })
                .collect(),
        )
    }

    /// `(P e^{-pi x^2})' = (P' - 2 pi x P) e^{-pi x^2}`
    pub fn derivative(&self) -> Self {
        let n = self.coeffs.len() + 1;
        let two_pi = PiSeries::term(Cyclotomic::from_int(-2), 1);
        let mut out = vec![PiSeries::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                let kk = PiSeries::from_rational(Rational::from_integer((k as i64).into()));
                out[k - 1] = out[k - 1].add(&c.mul(&kk));
            }
            out[k + 1] = out[k + 1].add(&c.mul(&two_pi));
        }
        Self::new(out)
    }

    /// `y -> ∫ f(x) psi(x y) dx`, via `FT(x g) = (2 pi i)^{-1} (FT g)'`.
    pub fn ft(&self) -> Self {
        // 1/(2 pi i) = -i/2 * pi^{-1}
        let step = PiSeries::term(Cyclotomic::root_of_unity(4, 3).scale(&Rational::new(1.into(), 2.into())), -1);
        let mut g = Self::gaussian();
        let mut acc = Self::new(vec![]);
        for c in &self.coeffs {
            acc = acc.add(&g.scale(c));
            g = g.derivative().scale(&step);
        }
        acc
    }

    /// `t -> ∫ f(x) psi(t x^2) dx` from `∫ x^{2k} e^{-pi a x^2} dx = (2k-1)!! / (2 pi a)^k a^{-1/2}`, `a = 1 - 2 i t`.
    pub fn f2_closed(&self, t: f64) -> Complex64 {
        let a = Complex64::new(1.0, -2.0 * t);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut moment = 1.0;
        for (k2, c) in self.coeffs.iter().enumerate().step_by(2) {
            let k = (k2 / 2) as i32;
            if k > 0 {
                moment *= (2 * k - 1) as f64 / (2.0 * PI);
            }
            if !c.is_zero() {
                acc += c.value() * moment * a.powc(Complex64::new(-(k as f64) - 0.5, 0.0));
            }
        }
        acc
    }
}

impl fmt::Display for HermiteGaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("[{c}]*x^{k}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({})*exp(-pi x^2)", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn gaussian_is_self_dual() {
        assert_eq!(HermiteGaussian::gaussian().ft(), HermiteGaussian::gaussian());
    }

    #[test]
    fn ft_twice_reflects() {
        let f = HermiteGaussian::from_rationals(&[int(1), int(2), rat(-1, 3), int(0), int(5), int(1)]);
        assert_eq!(f.ft().ft(), f.reflect());
    }

    #[test]
    fn ft_values_match_definition() {
        // FT(x e^{-pi x^2})(y) = i y e^{-pi y^2}
        let f = HermiteGaussian::monomial(1).ft();
        for y in [0.3, -1.2, 2.0] {
            let expected = Complex64::new(0.0, y) * (-PI * y * y).exp();
            assert!((f.eval(y) - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn f2_closed_examples() {
        let g = HermiteGaussian::gaussian();
        for t in [0.0, 0.7, -3.0] {
            let expected = Complex64::new(1.0, -2.0 * t).powf(-0.5);
            assert!((g.f2_closed(t) - expected).norm() < 1e-14);
        }
        assert_eq!(HermiteGaussian::monomial(1).f2_closed(2.5), Complex64::new(0.0, 0.0));
        // t = 0: ∫ x^2 e^{-pi x^2} dx = 1/(2 pi)
        assert!((HermiteGaussian::monomial(2).f2_closed(0.0).re - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }
}
