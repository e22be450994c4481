//! `∫ F_2 W(delta t) F_2 phi(-t) dt` against `2|2|^{-1} |b|^{-1} ∫ W(y) phi(b y) |y|^{-1} dy` over the reals.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{cutoff, integrate_panels};
use super::{ArchError, HermiteGaussian};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericIsometry {
    pub lhs: Complex64,
    pub rhs: f64,
    pub error: f64,
}

/// `t = tan(theta)` makes the `|t|^{-2}` decay of the integrand smooth at the ends.
fn lhs(w: &HermiteGaussian, phi: &HermiteGaussian, delta: f64) -> Complex64 {
    let f = |theta: f64| {
        let t = theta.tan();
        let sec2 = 1.0 / theta.cos().powi(2);
        w.f2_closed(delta * t) * phi.f2_closed(-t) * sec2
    };
    integrate_panels(-PI / 2.0, PI / 2.0, |_| PI / 64.0, f)
}

fn rhs(w: &HermiteGaussian, phi: &HermiteGaussian, delta: f64) -> f64 {
    if delta < 0.0 {
        return 0.0;
    }
    // 2|2|^{-1} = 1 at the real place
    let b = delta.sqrt();
    let r = cutoff(w);
    let f = |y: f64| (w.eval(y) * phi.eval(b * y) + w.eval(-y) * phi.eval(-b * y)) / y;
    integrate_panels(0.0, r, |_| 0.25, f).re / b
}

pub fn isometry_numeric(
    w: &HermiteGaussian,
    phi: &HermiteGaussian,
    delta: f64,
) -> Result<NumericIsometry, ArchError> {
    if delta == 0.0 {
        return Err(ArchError::Hypothesis("delta must be nonzero".into()));
    }
    if !w.is_even() {
        return Err(ArchError::Hypothesis("W must be even".into()));
    }
    if w.order_at_zero().is_some_and(|k| k == 0) {
        return Err(ArchError::Hypothesis("W(0) != 0, so W |x|^{-1} is not integrable".into()));
    }
    let l = lhs(w, phi, delta);
    let r = rhs(w, phi, delta);
    Ok(NumericIsometry {
        lhs: l,
        rhs: r,
        error: (l - r).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn quadratic_gaussian() {
        let w = HermiteGaussian::monomial(2);
        let phi = HermiteGaussian::gaussian();
        // 2 ∫_0^∞ x e^{-2 pi x^2} dx = 1/(2 pi)
        let moment = 1.0 / (2.0 * PI);
        let sq = isometry_numeric(&w, &phi, 1.0).unwrap();
        assert!(sq.error < 1e-6);
        assert!((sq.rhs - moment).abs() < 1e-10);
        let non = isometry_numeric(&w, &phi, -1.0).unwrap();
        assert!(non.lhs.norm() < 1e-6);
    }

    #[test]
    fn quartic_against_odd_phi() {
        // the odd part of phi is invisible to both sides
        let w = HermiteGaussian::from_rationals(&[int(0), int(0), int(1), int(0), int(-3)]);
        let phi = HermiteGaussian::from_rationals(&[int(2), int(5)]);
        let r = isometry_numeric(&w, &phi, 2.0).unwrap();
        assert!(r.error < 1e-6, "{r:?}");
    }

    #[test]
    fn hypothesis_failure() {
        let r = isometry_numeric(&HermiteGaussian::gaussian(), &HermiteGaussian::gaussian(), 1.0);
        assert!(matches!(r, Err(ArchError::Hypothesis(_))));
        let r = isometry_numeric(&HermiteGaussian::monomial(3), &HermiteGaussian::gaussian(), 1.0);
        assert!(matches!(r, Err(ArchError::Hypothesis(_))));
    }
}
