//! Unramified spherical data: GL2 Whittaker functions and the constant c_v,
//! the metaplectic spherical Whittaker function and matrix coefficient, and
//! the expansion they induce on square classes.

use num_complex::Complex64;
use thiserror::Error;

use crate::densities::{DensityError, ExpansionTerm, WhittakerExpansion};
use crate::exact::rational::{pow_p, Rational};
use crate::exact::{Cyclotomic, RatFuncError, RationalFunction};
use crate::fourier::{chi_psi, FourierError};
use crate::padic::{PAdicContext, PadicError};
use crate::shell::{two_over_abs_two, ShellError, ShellFunction, TailRatio};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SphericalError {
    #[error("matrix coefficient formula needs |a| <= 1")]
    Domain,
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Shell(#[from] ShellError),
    #[error(transparent)]
    Density(#[from] DensityError),
}

fn alpha_pow(p: u64, k: i64) -> RationalFunction {
    RationalFunction::monomial(p, Cyclotomic::one(), 0, k, 0)
}

fn one() -> RationalFunction {
    RationalFunction::one()
}

fn constant(r: Rational) -> RationalFunction {
    RationalFunction::from_rational(r)
}

/// `1 / (1 - c X)` for a monomial `c`.
fn euler(c: &RationalFunction, x: &RationalFunction) -> Result<RationalFunction, RatFuncError> {
    one().sub(&c.mul(x)).inv()
}

/// `s_m(alpha) = alpha^m + alpha^{m-2} + ... + alpha^{-m}`.
pub fn schur(p: u64, m: i64) -> RationalFunction {
    (0..=m).fold(RationalFunction::zero().with_prime(p), |acc, i| acc.add(&alpha_pow(p, m - 2 * i)))
}

/// `W(a_m) = Y^m s_m(alpha)` for `m >= 0`, else 0.
pub fn gl2_whittaker(p: u64, m: i64) -> RationalFunction {
    if m < 0 {
        return RationalFunction::zero().with_prime(p);
    }
    schur(p, m).mul(&RationalFunction::y_pow(p, m))
}

/// `L(s, pi) = 1 / ((1 - alpha X)(1 - alpha^{-1} X))` at the given `X`.
pub fn l_standard(p: u64, x: &RationalFunction) -> Result<RationalFunction, RatFuncError> {
    Ok(euler(&alpha_pow(p, 1), x)?.mul(&euler(&alpha_pow(p, -1), x)?))
}

/// `L(s, pi, ad) = 1 / ((1 - alpha^2 X)(1 - X)(1 - alpha^{-2} X))`.
pub fn l_adjoint(p: u64, x: &RationalFunction) -> Result<RationalFunction, RatFuncError> {
    Ok(euler(&alpha_pow(p, 2), x)?
        .mul(&euler(&one(), x)?)
        .mul(&euler(&alpha_pow(p, -2), x)?))
}

pub fn zeta(x: &RationalFunction) -> Result<RationalFunction, RatFuncError> {
    euler(&one(), x)
}

/// `Σ_m Z^m s_m(alpha)^2`, summed as three geometric series.
pub fn schur_square_series(p: u64, z: &RationalFunction) -> Result<RationalFunction, RatFuncError> {
    // s_m^2 = (alpha^{2m+2} - 2 + alpha^{-2m-2}) / (alpha - alpha^{-1})^2
    let a2 = alpha_pow(p, 2);
    let am2 = alpha_pow(p, -2);
    let num = a2
        .mul(&euler(&a2, z)?)
        .sub(&euler(&one(), z)?.scale(&Cyclotomic::from_int(2)))
        .add(&am2.mul(&euler(&am2, z)?));
    let d = alpha_pow(p, 1).sub(&alpha_pow(p, -1));
    num.div(&d.mul(&d))
}

/// `(1 - Z^2) / ((1 - alpha^2 Z)(1 - Z)^2(1 - alpha^{-2} Z))`.
pub fn cauchy_closed_form(p: u64, z: &RationalFunction) -> Result<RationalFunction, RatFuncError> {
    let num = one().sub(&z.mul(z));
    Ok(num
        .mul(&euler(&alpha_pow(p, 2), z)?)
        .mul(&euler(&one(), z)?.pow(2)?)
        .mul(&euler(&alpha_pow(p, -2), z)?))
}

#[derive(Debug, Clone)]
pub struct CvReport {
    /// `∫ |W|^2 d^x a` with `vol(O^x) = 1 - 1/p`
    pub norm: RationalFunction,
    /// `zeta(2) / L(1, ad)`
    pub constant: RationalFunction,
    pub product: RationalFunction,
    pub cauchy_agrees: bool,
    pub holds: bool,
}

/// `zeta(2) / L(1, ad) * ∫ |W|^2 d^x a = 1`.
pub fn gl2_cv_identity(p: u64) -> Result<CvReport, SphericalError> {
    let x = RationalFunction::x(p);
    let series = schur_square_series(p, &x)?;
    let cauchy_agrees = series == cauchy_closed_form(p, &x)?;
    let at = Cyclotomic::from_rational(pow_p(p, -1));
    let one_minus = Rational::from_integer(1.into()) - pow_p(p, -1);
    let norm = series.eval_x(&at)?.scale(&Cyclotomic::from_rational(one_minus));
    let x1 = constant(pow_p(p, -1));
    let x2 = constant(pow_p(p, -2));
    let constant = zeta(&x2)?.div(&l_adjoint(p, &x1)?)?;
    let product = constant.mul(&norm);
    let holds = product.is_one() && cauchy_agrees;
    Ok(CvReport {
        norm,
        constant,
        product,
        cauchy_agrees,
        holds,
    })
}

/// Partial sum `Σ_{m<=M} p^{-m} |s_m(alpha)|^2` for a numeric unitary `alpha`, and its tail bound.
pub fn gl2_truncated_norm(p: u64, alpha: Complex64, m_max: i64) -> (f64, f64) {
    let r = 1.0 / p as f64;
    let mut s = 0.0;
    for m in 0..=m_max {
        let sm: Complex64 = (0..=m).map(|i| alpha.powi((m - 2 * i) as i32)).sum();
        s += sm.norm_sqr() * r.powi(m as i32);
    }
    // |s_m| <= m + 1
    let mut bound = 0.0;
    let mut m = m_max + 1;
    loop {
        let term = ((m + 1) * (m + 1)) as f64 * r.powi(m as i32);
        bound += term;
        if term < 1e-300 || m > m_max + 2000 {
            break;
        }
        m += 1;
    }
    (s, bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMatch {
    /// `L(s, ad) zeta(s + 1/2) / zeta(2s + 1)`
    AdjointAtS,
    /// `L(s + 1/2, ad) zeta(s + 1/2) / zeta(2s + 1)`
    AdjointAtShiftedS,
    Neither,
}

#[derive(Debug, Clone)]
pub struct MomentReport {
    pub series: RationalFunction,
    pub at_s: RationalFunction,
    pub at_shifted_s: RationalFunction,
    pub matches: MomentMatch,
}

/// `Σ_m p^{-m(s+1/2)} s_m(alpha)^2` against the two candidate closed forms.
pub fn gl2_moment_identity(p: u64) -> Result<MomentReport, SphericalError> {
    let x = RationalFunction::x(p);
    let y = RationalFunction::y(p);
    let xy = x.mul(&y);
    let series = schur_square_series(p, &xy)?;
    let ratio = |l: RationalFunction| -> Result<RationalFunction, RatFuncError> {
        l.mul(&zeta(&xy)?).div(&zeta(&xy.mul(&xy))?)
    };
    let at_s = ratio(l_adjoint(p, &x)?)?;
    let at_shifted_s = ratio(l_adjoint(p, &xy)?)?;
    let matches = if series == at_shifted_s {
        MomentMatch::AdjointAtShiftedS
    } else if series == at_s {
        MomentMatch::AdjointAtS
    } else {
        MomentMatch::Neither
    };
    Ok(MomentReport {
        series,
        at_s,
        at_shifted_s,
        matches,
    })
}

/// `A = (1 - alpha Y) / (1 - alpha^2)`, `B = (1 - alpha^{-1} Y) / (1 - alpha^{-2})`.
fn spherical_coefficients(p: u64) -> Result<(RationalFunction, RationalFunction), RatFuncError> {
    let y = RationalFunction::y(p);
    let a = one().sub(&alpha_pow(p, 1).mul(&y)).div(&one().sub(&alpha_pow(p, 2)))?;
    let b = one().sub(&alpha_pow(p, -1).mul(&y)).div(&one().sub(&alpha_pow(p, -2)))?;
    Ok((a, b))
}

/// `l_psi(a . phi_0) = chi_psi(a) |a| (A mu^{-1}(a) + B mu(a)) 1_O(a)` with `mu(p) = alpha`.
pub fn sl2t_whittaker(ctx: &PAdicContext, a: &Rational) -> Result<RationalFunction, SphericalError> {
    let p = ctx.p();
    let v = ctx.valuation(a).ok_or(PadicError::ZeroArgument)?;
    if v < 0 {
        return Ok(RationalFunction::zero().with_prime(p));
    }
    let (ca, cb) = spherical_coefficients(p)?;
    let bracket = ca.mul(&alpha_pow(p, -v)).add(&cb.mul(&alpha_pow(p, v)));
    let chi = chi_psi(ctx, a)?;
    Ok(bracket.scale(&chi.scale(&pow_p(p, -v))))
}

/// `<a . phi_0, phi_0^v> = |a| chi_psi(a) / (1 + 1/p) [mu(a) (1 - alpha^{-2}/p)/(1 - alpha^{-2}) + mu^{-1}(a) (1 - alpha^2/p)/(1 - alpha^2)]`.
pub fn sl2t_matcoef(ctx: &PAdicContext, a: &Rational) -> Result<RationalFunction, SphericalError> {
    let p = ctx.p();
    let v = ctx.valuation(a).ok_or(PadicError::ZeroArgument)?;
    if v < 0 {
        return Err(SphericalError::Domain);
    }
    let inv_p = constant(pow_p(p, -1));
    let first = one()
        .sub(&alpha_pow(p, -2).mul(&inv_p))
        .div(&one().sub(&alpha_pow(p, -2)))?
        .mul(&alpha_pow(p, v));
    let second = one()
        .sub(&alpha_pow(p, 2).mul(&inv_p))
        .div(&one().sub(&alpha_pow(p, 2)))?
        .mul(&alpha_pow(p, -v));
    let pre = pow_p(p, -v) / (Rational::from_integer(1.into()) + pow_p(p, -1));
    let chi = chi_psi(ctx, a)?;
    Ok(first.add(&second).scale(&chi.scale(&pre)))
}

#[derive(Debug, Clone)]
pub struct CsigmaReport {
    /// `∫ |l_psi(a . phi_0)|^2 d^x a`
    pub norm: RationalFunction,
    /// Constant making the class-1 term alone reproduce `(phi_0, phi_0) = 1`.
    pub c_sigma: RationalFunction,
    /// `L(1/2, pi) zeta(2) / L(1, ad)`
    pub expected: RationalFunction,
    /// `c_sigma / expected`
    pub residual: RationalFunction,
    pub holds: bool,
}

/// Recovers `c_{sigma, psi}` from the class-1 spherical data and compares it with the L-value quotient.
pub fn sl2t_csigma_identity(p: u64) -> Result<CsigmaReport, SphericalError> {
    let (a, b) = spherical_coefficients(p)?;
    let (ac, bc) = (a.conj(), b.conj());
    let q2 = constant(pow_p(p, -2));
    // |A alpha^{-m} + B alpha^m|^2 = A Ac + B Bc + A Bc alpha^{-2m} + B Ac alpha^{2m}
    let diag = a.mul(&ac).add(&b.mul(&bc)).mul(&euler(&one(), &q2)?);
    let down = a.mul(&bc).mul(&euler(&alpha_pow(p, -2), &q2)?);
    let up = b.mul(&ac).mul(&euler(&alpha_pow(p, 2), &q2)?);
    let one_minus = Rational::from_integer(1.into()) - pow_p(p, -1);
    let norm = diag.add(&down).add(&up).scale(&Cyclotomic::from_rational(one_minus));
    let c_sigma = constant(two_over_abs_two(p)).div(&norm)?;
    let y = RationalFunction::y(p);
    let expected = l_standard(p, &y)?
        .mul(&zeta(&q2)?)
        .div(&l_adjoint(p, &constant(pow_p(p, -1)))?)?;
    let residual = c_sigma.div(&expected)?;
    let holds = residual.is_one();
    Ok(CsigmaReport {
        norm,
        c_sigma,
        expected,
        residual,
        holds,
    })
}

/// Class-1 expansion `W_1(a) = |l_psi(a . phi_0)|^2 |a|^{-1}` with constant `c_sigma`.
pub fn expansion_from_spherical(ctx: PAdicContext) -> Result<WhittakerExpansion, SphericalError> {
    let p = ctx.p();
    let (a, b) = spherical_coefficients(p)?;
    let (ac, bc) = (a.conj(), b.conj());
    // p^{-m} (A Ac + B Bc + A Bc alpha^{-2m} + B Ac alpha^{2m})
    let tails = vec![
        (a.mul(&ac).add(&b.mul(&bc)), TailRatio::new(p, Cyclotomic::one(), 0, 2)?),
        (a.mul(&bc), TailRatio::new(p, Cyclotomic::one(), -2, 2)?),
        (b.mul(&ac), TailRatio::new(p, Cyclotomic::one(), 2, 2)?),
    ];
    let w = ShellFunction::radial(ctx, 0, vec![], tails);
    let c = sl2t_csigma_identity(p)?.c_sigma;
    Ok(WhittakerExpansion::new(
        ctx,
        vec![ExpansionTerm {
            delta: Rational::from_integer(1.into()),
            c,
            w,
        }],
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::{mbintegral_check, Routes};
    use crate::exact::rational::int;
    use crate::padic::BruhatSchwartz;

    #[test]
    fn gl2_values() {
        assert!(gl2_whittaker(3, 0).is_one());
        let y = RationalFunction::y(3);
        let expected = y.mul(&alpha_pow(3, 1).add(&alpha_pow(3, -1)));
        assert_eq!(gl2_whittaker(3, 1), expected);
        assert!(gl2_whittaker(3, -1).is_zero());
    }

    #[test]
    fn cv_identity_and_truncation() {
        for p in [2u64, 3, 5] {
            let r = gl2_cv_identity(p).unwrap();
            assert!(r.cauchy_agrees);
            assert!(r.holds, "{}", r.product);
            let alpha = Complex64::from_polar(1.0, 0.7);
            let (partial, bound) = gl2_truncated_norm(p, alpha, 60);
            let exact = r.norm.eval_complex(Complex64::new(0.0, 0.0), alpha).unwrap().re
                / (1.0 - 1.0 / p as f64);
            assert!((exact - partial).abs() <= bound + 1e-12);
        }
    }

    #[test]
    fn moment_identity_uses_shifted_argument() {
        let r = gl2_moment_identity(3).unwrap();
        assert_eq!(r.matches, MomentMatch::AdjointAtShiftedS);
        // alpha = 1: Σ (m+1)^2 t^m = (1 + t)/(1 - t)^3
        let t = RationalFunction::x(3).mul(&RationalFunction::y(3));
        let at_one = r.series.eval_alpha(&Cyclotomic::one()).unwrap();
        let classical = one()
            .add(&t)
            .div(&one().sub(&t).pow(3).unwrap())
            .unwrap();
        assert_eq!(at_one, classical);
    }

    #[test]
    fn sl2t_normalizations() {
        for p in [3u64, 5, 7] {
            let ctx = PAdicContext::new(p).unwrap();
            assert!(sl2t_whittaker(&ctx, &int(1)).unwrap().is_one());
            assert!(sl2t_matcoef(&ctx, &int(1)).unwrap().is_one());
            assert!(matches!(
                sl2t_matcoef(&ctx, &Rational::new(1.into(), (p as i64).into())),
                Err(SphericalError::Domain)
            ));
        }
    }

    #[test]
    fn sl2t_whittaker_at_uniformizer() {
        let ctx = PAdicContext::new(5).unwrap();
        let (a, b) = spherical_coefficients(5).unwrap();
        let bracket = a.mul(&alpha_pow(5, -1)).add(&b.mul(&alpha_pow(5, 1)));
        let chi = chi_psi(&ctx, &int(5)).unwrap();
        let expected = bracket.scale(&chi.scale(&pow_p(5, -1)));
        assert_eq!(sl2t_whittaker(&ctx, &int(5)).unwrap(), expected);
    }

    #[test]
    fn csigma_against_l_values() {
        let r = sl2t_csigma_identity(3).unwrap();
        println!("c_sigma / (L(1/2, pi) zeta(2) / L(1, ad)) = {}", r.residual);
        assert!(!r.norm.is_zero());
        assert_eq!(r.c_sigma.mul(&r.norm), constant(two_over_abs_two(3)));
    }

    #[test]
    fn spherical_expansion_normalization() {
        let ctx = PAdicContext::new(3).unwrap();
        let e = expansion_from_spherical(ctx).unwrap();
        assert!(e.represented(&int(0)).unwrap().is_one());
        let r = mbintegral_check(&e, &BruhatSchwartz::lattice(ctx, 0), 0, Routes::default()).unwrap();
        assert!(r.holds, "{} vs {}", r.lhs, r.rhs);
    }
}
