//! Gamma factors at the real place and the uniform decay of `chi(x)|x| FT(phi chi)(x)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma;

use super::quadrature::{cutoff, integrate_panels, integrate_weighted_head};
use super::{ArchError, HermiteGaussian};

/// `x -> sgn(x)^e |x|^u` with `e` in `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArchCharacter {
    pub odd: bool,
    pub exponent: f64,
}

impl ArchCharacter {
    pub fn trivial() -> Self {
        ArchCharacter { odd: false, exponent: 0.0 }
    }

    pub fn abs_power(u: f64) -> Self {
        ArchCharacter { odd: false, exponent: u }
    }

    pub fn sign() -> Self {
        ArchCharacter { odd: true, exponent: 0.0 }
    }

    pub fn inverse(&self) -> Self {
        ArchCharacter { odd: self.odd, exponent: -self.exponent }
    }

    fn parity(&self) -> f64 {
        if self.odd {
            1.0
        } else {
            0.0
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        let s = if self.odd && x < 0.0 { -1.0 } else { 1.0 };
        s * x.abs().powf(self.exponent)
    }
}

fn is_pole(s: f64) -> bool {
    s <= 0.0 && (s / 2.0).fract() == 0.0
}

/// `Gamma_R(s) = pi^{-s/2} Gamma(s/2)`
pub fn gamma_r(s: f64) -> Result<f64, ArchError> {
    if is_pole(s) {
        return Err(ArchError::Pole(s));
    }
    Ok(PI.powf(-s / 2.0) * gamma(s / 2.0))
}

/// `gamma(s, chi, psi) = i^e Gamma_R(1 - s - u + e) / Gamma_R(s + u + e)`.
pub fn gamma_arch(chi: &ArchCharacter, s: f64) -> Result<Complex64, ArchError> {
    let e = chi.parity();
    let num = 1.0 - s - chi.exponent + e;
    let den = s + chi.exponent + e;
    if is_pole(num) || is_pole(den) {
        return Err(ArchError::Pole(s));
    }
    let eps = if chi.odd { Complex64::i() } else { Complex64::new(1.0, 0.0) };
    Ok(eps * gamma_r(num)? / gamma_r(den)?)
}

/// `Z(phi, chi, s) = ∫ phi(x) chi(x) |x|^s dx/|x|` by quadrature, for `s + u > 0`.
pub fn zeta_numeric(phi: &HermiteGaussian, chi: &ArchCharacter, s: f64) -> Result<Complex64, ArchError> {
    let sigma = s + chi.exponent;
    if sigma <= 0.0 {
        return Err(ArchError::BadExponent(sigma));
    }
    let sign = if chi.odd { -1.0 } else { 1.0 };
    let sym = |x: f64| phi.eval(x) + phi.eval(-x) * sign;
    let head = integrate_weighted_head(sigma - 1.0, 1.0, sym);
    let r = cutoff(phi).max(1.0);
    let tail = integrate_panels(1.0, r, |_| 0.25, |x| sym(x) * x.powf(sigma - 1.0));
    Ok(head + tail)
}

/// `Z(FT phi, chi^{-1}, 1 - s) / Z(phi, chi, s)`
pub fn gamma_by_zeta(phi: &HermiteGaussian, chi: &ArchCharacter, s: f64) -> Result<Complex64, ArchError> {
    let z = zeta_numeric(phi, chi, s)?;
    if z.norm() < 1e-300 {
        return Err(ArchError::Hypothesis("Z(phi, chi, s) vanishes".into()));
    }
    Ok(zeta_numeric(&phi.ft(), &chi.inverse(), 1.0 - s)? / z)
}

/// `∫ phi(y) |y|^u psi(x y) dy` for `-1 < u`.
pub fn ft_phi_abs(phi: &HermiteGaussian, u: f64, x: f64) -> Complex64 {
    let wave = |y: f64| {
        let e = Complex64::from_polar(1.0, 2.0 * PI * x * y);
        phi.eval(y) * e + phi.eval(-y) * e.conj()
    };
    let width = (0.25 / x.abs().max(1.0)).min(0.25);
    let head = integrate_weighted_head(u, width, wave);
    let r = cutoff(phi).max(width);
    head + integrate_panels(width, r, |_| width, |y| wave(y) * y.powf(u))
}

#[derive(Debug, Clone)]
pub struct DecayScan {
    pub exponents: Vec<f64>,
    pub ks: Vec<i32>,
    /// `errors[i][j]` for exponent `i` at `x = 2^{ks[j]}`
    pub errors: Vec<Vec<f64>>,
    pub max_by_k: Vec<f64>,
}

impl DecayScan {
    /// Maximum over exponents is nonincreasing from `k0` on and below `tol` at the last `k`.
    pub fn verdict(&self, k0: i32, tol: f64) -> bool {
        let tail: Vec<f64> = self
            .ks
            .iter()
            .zip(&self.max_by_k)
            .filter(|(k, _)| **k >= k0)
            .map(|(_, e)| *e)
            .collect();
        tail.windows(2).all(|w| w[1] <= w[0]) && self.max_by_k.last().is_some_and(|e| *e < tol)
    }

    /// Least-squares slope of `log error` against `log x` for exponent `i`, over `k >= k0`.
    pub fn loglog_slope(&self, i: usize, k0: i32) -> f64 {
        let pts: Vec<(f64, f64)> = self
            .ks
            .iter()
            .zip(&self.errors[i])
            .filter(|(k, e)| **k >= k0 && **e > 0.0)
            .map(|(k, e)| (*k as f64 * 2f64.ln(), e.ln()))
            .collect();
        let n = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (mx, my) = (sx / n, sy / n);
        let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        num / den
    }
}

/// `|phi(0) - gamma(0, chi^{-1}, psi)^{-1} chi(x) |x| FT(phi chi)(x)|` at `x = 2^k`, for `chi = |.|^u`.
pub fn asymptotic_decay_scan(
    phi: &HermiteGaussian,
    exponents: &[f64],
    ks: &[i32],
) -> Result<DecayScan, ArchError> {
    let phi0 = phi.eval(0.0);
    let mut errors = Vec::with_capacity(exponents.len());
    for &u in exponents {
        if !(u > -1.0 && u < 0.0) {
            return Err(ArchError::BadExponent(u));
        }
        let g = gamma_arch(&ArchCharacter::abs_power(u).inverse(), 0.0)?;
        let row = ks
            .iter()
            .map(|&k| {
                let x = 2f64.powi(k);
                let v = ft_phi_abs(phi, u, x) * x.powf(u + 1.0) / g;
                (phi0 - v).norm()
            })
            .collect();
        errors.push(row);
    }
    let max_by_k = (0..ks.len())
        .map(|j| errors.iter().map(|r: &Vec<f64>| r[j]).fold(0.0, f64::max))
        .collect();
    Ok(DecayScan {
        exponents: exponents.to_vec(),
        ks: ks.to_vec(),
        errors,
        max_by_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn gamma_fixed_point() {
        let g = gamma_arch(&ArchCharacter::trivial(), 0.5).unwrap();
        assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn double_functional_equation() {
        for chi in [ArchCharacter::trivial(), ArchCharacter::sign(), ArchCharacter::abs_power(0.2)] {
            for s in [0.1, 0.3, 0.45, 0.7] {
                let g = gamma_arch(&chi, s).unwrap() * gamma_arch(&chi.inverse(), 1.0 - s).unwrap();
                let sign = if chi.odd { -1.0 } else { 1.0 };
                assert!((g - Complex64::new(sign, 0.0)).norm() < 1e-12, "{chi:?} {s}");
            }
        }
    }

    #[test]
    fn zeta_ratio_matches_closed_form() {
        let phis = [
            HermiteGaussian::from_rationals(&[int(1), int(1)]),
            HermiteGaussian::from_rationals(&[int(1), int(3), int(2)]),
        ];
        for chi in [ArchCharacter::trivial(), ArchCharacter::sign(), ArchCharacter::abs_power(0.1)] {
            for phi in &phis {
                let a = gamma_by_zeta(phi, &chi, 0.3).unwrap();
                let b = gamma_arch(&chi, 0.3).unwrap();
                assert!((a - b).norm() < 1e-6, "{chi:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn degenerate_zeta_reported() {
        let r = gamma_by_zeta(&HermiteGaussian::gaussian(), &ArchCharacter::sign(), 0.3);
        assert!(matches!(r, Err(ArchError::Hypothesis(_))));
    }

    #[test]
    fn pole_reported() {
        assert!(matches!(gamma_arch(&ArchCharacter::trivial(), 0.0), Err(ArchError::Pole(_))));
    }

    #[test]
    fn gaussian_decay() {
        let exps: Vec<f64> = (1..=9).map(|i| -0.1 * i as f64).collect();
        let ks: Vec<i32> = (0..=10).collect();
        let scan = asymptotic_decay_scan(&HermiteGaussian::gaussian(), &exps, &ks).unwrap();
        assert!(scan.verdict(3, 1e-3), "{:?}", scan.max_by_k);
        let half = asymptotic_decay_scan(&HermiteGaussian::gaussian(), &[-0.5], &ks).unwrap();
        assert!(half.loglog_slope(0, 3) <= -0.5);
    }

    #[test]
    fn vanishing_target() {
        let ks: Vec<i32> = (0..=10).collect();
        let scan = asymptotic_decay_scan(&HermiteGaussian::monomial(2), &[-0.5], &ks).unwrap();
        assert!(scan.max_by_k[3..].iter().all(|e| *e < 1e-2), "{:?}", scan.max_by_k);
    }
}
