//! Panel Gauss-Legendre quadrature for oscillatory integrands.

use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::{GaussJacobi, GaussLegendre};
use num_complex::Complex64;

use super::{ArchError, HermiteGaussian};

const NODES: usize = 10;
pub const MAX_T: f64 = 1e6;

fn legendre() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(NODES).unwrap())
            .as_node_weight_pairs()
            .to_vec()
    })
}

fn panel<F: Fn(f64) -> Complex64>(a: f64, b: f64, f: &F) -> Complex64 {
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    legendre()
        .iter()
        .map(|&(x, w)| f(mid + half * x) * w)
        .sum::<Complex64>()
        * half
}

/// `∫_a^b f` over panels whose width at left end `x` is `width(x)`.
pub fn integrate_panels<F, W>(a: f64, b: f64, width: W, f: F) -> Complex64
where
    F: Fn(f64) -> Complex64,
    W: Fn(f64) -> f64,
{
    let mut acc = Complex64::new(0.0, 0.0);
    let mut x = a;
    while x < b {
        let next = (x + width(x)).min(b);
        acc += panel(x, next, &f);
        x = next;
    }
    acc
}

/// `∫_0^{y0} y^beta f(y) dy` by Gauss-Jacobi.
pub fn integrate_weighted_head<F: Fn(f64) -> Complex64>(beta: f64, y0: f64, f: F) -> Complex64 {
    let rule = GaussJacobi::new(
        NonZeroUsize::new(NODES + 6).unwrap(),
        gauss_quad::FiniteAboveNegOneF64::new(0.0).unwrap(),
        gauss_quad::FiniteAboveNegOneF64::new(beta).unwrap(),
    );
    // y = y0 (1 + x)/2, y^beta dy = (y0/2)^{beta+1} (1 + x)^beta dx
    let s: Complex64 = rule
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| f(y0 * (1.0 + x) / 2.0) * w)
        .sum();
    s * (y0 / 2.0).powf(beta + 1.0)
}

/// Radius beyond which `|f| < 1e-16` and `e^{-pi R^2} < 1e-14`.
pub fn cutoff(f: &HermiteGaussian) -> f64 {
    let mut r = (14.0 * 10f64.ln() / PI).sqrt();
    while f.envelope(r) > 1e-16 {
        r += 0.25;
    }
    r
}

/// Panel width `h` with `h (x + h) <= c`, so `psi(t y^2)` turns by at most a quarter period.
pub fn quarter_wave_width(x: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.25;
    }
    let c = 1.0 / (8.0 * t.abs());
    ((-x + (x * x + 4.0 * c).sqrt()) / 2.0).min(0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F2Mode {
    Closed,
    Quadrature,
}

/// `∫ f(x) psi(t x^2) dx` over `[-R, R]`.
pub fn f2_quadrature(f: &HermiteGaussian, t: f64) -> Result<Complex64, ArchError> {
    if !(t.abs() <= MAX_T) {
        return Err(ArchError::OutOfRange(t));
    }
    let r = cutoff(f);
    let even = |x: f64| (f.eval(x) + f.eval(-x)) * Complex64::from_polar(1.0, 2.0 * PI * t * x * x);
    Ok(integrate_panels(0.0, r, |x| quarter_wave_width(x, t), even))
}

pub fn f2(f: &HermiteGaussian, t: f64, mode: F2Mode) -> Result<Complex64, ArchError> {
    match mode {
        F2Mode::Closed => Ok(f.f2_closed(t)),
        F2Mode::Quadrature => f2_quadrature(f, t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn closed_and_quadrature_agree() {
        let fs = [
            HermiteGaussian::gaussian(),
            HermiteGaussian::monomial(2),
            HermiteGaussian::from_rationals(&[int(1), int(3), rat(-2, 5), int(0), int(1)]),
        ];
        for f in &fs {
            for t in [-100.0, -37.5, -1.0, 0.0, 0.25, 3.0, 64.0, 100.0] {
                let a = f.f2_closed(t);
                let b = f2_quadrature(f, t).unwrap();
                assert!((a - b).norm() < 1e-8, "{f} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            f2_quadrature(&HermiteGaussian::gaussian(), 2e6),
            Err(ArchError::OutOfRange(_))
        ));
    }

    #[test]
    fn weighted_head() {
        // ∫_0^1 y^{-1/2} dy = 2
        let v = integrate_weighted_head(-0.5, 1.0, |_| Complex64::new(1.0, 0.0));
        assert!((v.re - 2.0).abs() < 1e-12);
    }
}
