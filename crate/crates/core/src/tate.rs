//! Tate local zeta integrals, L-, epsilon- and gamma-factors.

use thiserror::Error;

use crate::exact::rational::{pow_p, Rational};
use crate::exact::{Cyclotomic, RatFuncError, RationalFunction};
use crate::fourier::{fourier_bs, fourier_phi_chi, FourierError};
use crate::padic::{integrate, Ball, BruhatSchwartz, Measure, PadicError, QuasiCharacter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TateError {
    #[error("every canonical test function has vanishing zeta integral")]
    DegenerateTestFunction,
    #[error("support condition violated: Supp(phi^) must lie in p^{required} O, found p^{found} O")]
    SupportCondition { required: i64, found: i64 },
    #[error("exponent of the character must exceed -1")]
    ExponentTooSmall,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

/// `Z(phi, chi, s) = int phi(x) chi(x) |x|^s d^x x` in `X = p^{-s}`.
pub fn tate_zeta(phi: &BruhatSchwartz, chi: &QuasiCharacter) -> Result<RationalFunction, TateError> {
    let chi = chi.clone().with_symbolic_s();
    Ok(integrate(phi, Measure::Multiplicative, Some(&chi))?)
}

/// `Z(phi^, chi^{-1}, 1 - s)`.
pub fn dual_zeta(phi: &BruhatSchwartz, chi: &QuasiCharacter) -> Result<RationalFunction, TateError> {
    let z = tate_zeta(&fourier_bs(phi), &chi.inverse())?;
    Ok(z.reflect_s(phi.p()))
}

/// `L(s, chi)`: `1 / (1 - chi(p) X)` when unramified, else 1.
pub fn l_factor(chi: &QuasiCharacter) -> Result<RationalFunction, TateError> {
    let p = chi.ctx().p();
    if !chi.is_unramified() {
        return Ok(RationalFunction::one().with_prime(p));
    }
    let chi = chi.clone().with_symbolic_s();
    Ok(RationalFunction::one().sub(&chi.uniformizer_value()).inv()?)
}

#[derive(Debug, Clone)]
pub struct GammaData {
    pub chi: QuasiCharacter,
    /// `L(s, chi)`
    pub l_s: RationalFunction,
    /// `L(1 - s, chi^{-1})`
    pub l_dual: RationalFunction,
    pub gamma: RationalFunction,
    pub epsilon: RationalFunction,
}

/// Test functions with nonvanishing zeta integral against `chi`, in order of preference.
pub fn canonical_test_functions(chi: &QuasiCharacter) -> Vec<BruhatSchwartz> {
    let ctx = *chi.ctx();
    let level = chi.level() as i64;
    let one = Rational::from_integer(1.into());
    if chi.is_unramified() {
        vec![
            BruhatSchwartz::lattice(ctx, 0),
            BruhatSchwartz::lattice(ctx, 1),
            BruhatSchwartz::units(ctx),
            BruhatSchwartz::lattice(ctx, -1).add(&BruhatSchwartz::indicator(ctx, Ball::new(&ctx, &one, 2))),
        ]
    } else {
        let p = ctx.p();
        let shift = pow_p(p, 1);
        vec![
            BruhatSchwartz::indicator(ctx, Ball::new(&ctx, &one, level)),
            BruhatSchwartz::indicator(ctx, Ball::new(&ctx, &shift, level + 1)),
            BruhatSchwartz::indicator(ctx, Ball::new(&ctx, &-one.clone(), level))
                .add(&BruhatSchwartz::indicator(ctx, Ball::new(&ctx, &one, level + 1))),
            BruhatSchwartz::indicator(ctx, Ball::new(&ctx, &(one / pow_p(p, 1)), level - 1)),
        ]
    }
}

/// `Z(phi^, chi^{-1}, 1 - s) / Z(phi, chi, s)` for one test function.
pub fn gamma_from(phi: &BruhatSchwartz, chi: &QuasiCharacter) -> Result<Option<RationalFunction>, TateError> {
    let z = tate_zeta(phi, chi)?;
    if z.is_zero() {
        return Ok(None);
    }
    Ok(Some(dual_zeta(phi, chi)?.div(&z)?))
}

pub fn gamma_factor(chi: &QuasiCharacter) -> Result<GammaData, TateError> {
    let chi = chi.clone().without_symbolic_s();
    let p = chi.ctx().p();
    let mut gamma = None;
    for phi in canonical_test_functions(&chi) {
        if let Some(g) = gamma_from(&phi, &chi)? {
            gamma = Some(g);
            break;
        }
    }
    let gamma = gamma.ok_or(TateError::DegenerateTestFunction)?;
    let l_s = l_factor(&chi)?;
    let l_dual = l_factor(&chi.inverse())?.reflect_s(p);
    let epsilon = gamma.mul(&l_s).div(&l_dual)?;
    Ok(GammaData {
        chi,
        l_s,
        l_dual,
        gamma,
        epsilon,
    })
}

/// `Z(phi^, chi^{-1}, 1 - s) - gamma(s) Z(phi, chi, s)`.
pub fn functional_equation_residual(
    phi: &BruhatSchwartz,
    data: &GammaData,
) -> Result<RationalFunction, TateError> {
    let lhs = dual_zeta(phi, &data.chi)?;
    Ok(lhs.sub(&data.gamma.mul(&tate_zeta(phi, &data.chi)?)))
}

/// Both sides of the asymptotic Fourier identity, as rational functions in `X`
/// (the left side is `Z(phi psi_x, chi, s)`, which at `s = 1` is `(phi chi)^(x)`).
#[derive(Debug, Clone)]
pub struct AsymptoticReport {
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub lhs_at_one: RationalFunction,
    pub rhs_at_one: RationalFunction,
    pub holds: bool,
}

fn check_support(phi_hat: &BruhatSchwartz, chi: &QuasiCharacter, x: &Rational) -> Result<(), TateError> {
    let ctx = chi.ctx();
    let vx = ctx.valuation(x).ok_or(PadicError::ZeroArgument)?;
    let required = vx + (chi.level() as i64).max(1);
    if let Some(found) = phi_hat.support_level() {
        if found < required {
            return Err(TateError::SupportCondition { required, found });
        }
    }
    Ok(())
}

/// `(phi chi)^(x) = phi(0) gamma(0, chi^{-1}) chi^{-1}(x) |x|^{-1}` when `Supp(phi^)`
/// lies in `x (Cond(chi) cap pO)`; checked as an identity in `s`.
pub fn asymptotic_identity_check(
    phi: &BruhatSchwartz,
    chi: &QuasiCharacter,
    x: &Rational,
) -> Result<AsymptoticReport, TateError> {
    let chi = chi.clone().without_symbolic_s();
    if chi.half_shift() <= -2 {
        return Err(TateError::ExponentTooSmall);
    }
    let p = phi.p();
    let ctx = chi.ctx();
    check_support(&fourier_bs(phi), &chi, x)?;
    let lhs = fourier_phi_chi(phi, &chi, x)?;
    // gamma(1 - s, chi^{-1}) chi^{-1}(x) |x|^{-s}
    let g = gamma_factor(&chi.inverse())?.gamma.reflect_s(p);
    let vx = ctx.valuation(x).unwrap();
    let weight = chi
        .inverse()
        .value(x)?
        .mul(&RationalFunction::monomial(p, Cyclotomic::one(), -vx, 0, 0));
    let rhs = g.mul(&weight).scale(&phi.at_zero());
    let at_one = Cyclotomic::from_rational(pow_p(p, -1));
    let lhs_at_one = lhs.eval_x(&at_one)?;
    let rhs_at_one = rhs.eval_x(&at_one)?;
    let holds = lhs == rhs && lhs_at_one == rhs_at_one;
    Ok(AsymptoticReport {
        lhs,
        rhs,
        lhs_at_one,
        rhs_at_one,
        holds,
    })
}

/// `int phi^(x - y) chi^{-1}(y) |y|^{-1} dy` and `phi(0) chi^{-1}(x) |x|^{-1}`.
pub fn convolution_identity_check(
    phi: &BruhatSchwartz,
    chi: &QuasiCharacter,
    x: &Rational,
) -> Result<(RationalFunction, RationalFunction), TateError> {
    let chi = chi.clone().without_symbolic_s();
    let p = phi.p();
    let phi_hat = fourier_bs(phi);
    check_support(&phi_hat, &chi, x)?;
    let g = phi_hat.reflect().shift(&-x.clone());
    let lhs = integrate(&g, Measure::Multiplicative, Some(&chi.inverse()))?;
    let vx = chi.ctx().valuation(x).unwrap();
    let rhs = chi
        .inverse()
        .value(x)?
        .mul(&RationalFunction::y_pow(p, -2 * vx))
        .scale(&phi.at_zero());
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::padic::{Exponent, PAdicContext};

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    #[test]
    fn zeta_of_unit_ball() {
        let c = ctx(3);
        let z = tate_zeta(&BruhatSchwartz::lattice(c, 0), &QuasiCharacter::trivial(c)).unwrap();
        let x = RationalFunction::x(3);
        let expected = RationalFunction::from_rational(rat(2, 3)).div(&RationalFunction::one().sub(&x)).unwrap();
        assert_eq!(z, expected);
    }

    #[test]
    fn ramified_zeta_vanishes_on_units() {
        let c = ctx(5);
        let chi = QuasiCharacter::tame(c, 1);
        assert!(tate_zeta(&BruhatSchwartz::units(c), &chi).unwrap().is_zero());
    }

    #[test]
    fn trivial_gamma() {
        let c = ctx(5);
        let data = gamma_factor(&QuasiCharacter::trivial(c)).unwrap();
        let x = RationalFunction::x(5);
        let num = RationalFunction::one().sub(&x);
        let den = RationalFunction::one().sub(&x.inv().unwrap().scale(&Cyclotomic::from_rational(rat(1, 5))));
        assert_eq!(data.gamma, num.div(&den).unwrap());
        assert!(data.epsilon.is_one());
    }

    #[test]
    fn unramified_epsilon_is_one() {
        let c = ctx(3);
        let chi = QuasiCharacter::unramified(c, Cyclotomic::root_of_unity(4, 1))
            .with_exponent(Exponent::Fixed(rat(1, 2)));
        assert!(gamma_factor(&chi).unwrap().epsilon.is_one());
    }

    #[test]
    fn gamma_independent_of_test_function() {
        for p in [3u64, 5] {
            let c = ctx(p);
            for chi in [QuasiCharacter::trivial(c), QuasiCharacter::tame(c, 1)] {
                let data = gamma_factor(&chi).unwrap();
                for phi in canonical_test_functions(&chi) {
                    if let Some(g) = gamma_from(&phi, &data.chi).unwrap() {
                        assert_eq!(g, data.gamma);
                    }
                    assert!(functional_equation_residual(&phi, &data).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn gamma_reflection_gives_sign() {
        // gamma(s, chi) gamma(1 - s, chi^{-1}) = chi(-1)
        let c = ctx(5);
        let chi = QuasiCharacter::tame(c, 1);
        let g = gamma_factor(&chi).unwrap().gamma;
        let h = gamma_factor(&chi.inverse()).unwrap().gamma.reflect_s(5);
        assert_eq!(g.mul(&h), RationalFunction::constant(chi.sign()));
    }

    #[test]
    fn asymptotic_identity_on_canonical_case() {
        let c = ctx(3);
        for chi in [QuasiCharacter::trivial(c), QuasiCharacter::tame(c, 1)] {
            let x = rat(1, 3);
            // phi^ = 1_{x p^{L+1} O}
            let level = c.valuation(&x).unwrap() + chi.level() as i64 + 1;
            let phi = fourier_bs(&BruhatSchwartz::lattice(c, level)).reflect();
            let report = asymptotic_identity_check(&phi, &chi, &x).unwrap();
            assert!(report.holds, "{} vs {}", report.lhs, report.rhs);
            let (l, r) = convolution_identity_check(&phi, &chi, &x).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn support_condition_is_enforced() {
        let c = ctx(3);
        let phi = BruhatSchwartz::lattice(c, 0);
        let err = asymptotic_identity_check(&phi, &QuasiCharacter::trivial(c), &int(1));
        assert!(matches!(err, Err(TateError::SupportCondition { .. })));
    }
}
