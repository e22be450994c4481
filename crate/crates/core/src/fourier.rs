//! Fourier and quadratic Fourier transforms over the p-adic field, the Weil
//! index and the metaplectic factor `chi_psi`.

use thiserror::Error;

use crate::exact::cyclotomic::RootSum;
use crate::exact::rational::{pow_p, Rational};
use crate::exact::{Cyclotomic, RatFuncError, RationalFunction};
use crate::padic::{integrate, Ball, BruhatSchwartz, Measure, PAdicContext, PadicError, QuasiCharacter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FourierError {
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("Gauss integral phase did not stabilize by level {0}")]
    NonStabilization(i64),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

/// `phi^(t) = int phi(y) psi(t y) dy`.
pub fn fourier_bs(phi: &BruhatSchwartz) -> BruhatSchwartz {
    let ctx = *phi.ctx();
    let mut terms = Vec::new();
    for (ball, c) in phi.terms() {
        let n = ball.level();
        let scale = c.scale(&ball.volume(&ctx));
        let support = Ball::around_zero(-n);
        if ball.contains_zero() {
            terms.push((support, scale));
            continue;
        }
        let a = ball.center();
        let need = -ctx.valuation(a).unwrap();
        for sub in support.refine_to(&ctx, need) {
            let v = scale.mul(&ctx.psi(&(a * sub.center())));
            terms.push((sub, v));
        }
    }
    BruhatSchwartz::from_terms(ctx, terms)
}

/// `G(s) = int_O psi(s x^2) dx`.
pub fn unit_ball_gauss(ctx: &PAdicContext, s: &Rational) -> Cyclotomic {
    let p = ctx.p();
    let v = match ctx.valuation(s) {
        None => return Cyclotomic::one(),
        Some(v) => v,
    };
    if v >= 0 {
        return Cyclotomic::one();
    }
    let inner = unit_ball_gauss(ctx, &(s * pow_p(p, 2))).scale(&pow_p(p, -1));
    if p == 2 {
        if v < -3 {
            return inner;
        }
        let quarter = Rational::new(1.into(), 4.into());
        let edge = ctx.psi(s).add(&ctx.psi(&(s * Rational::from_integer(9.into()))));
        return inner.add(&edge.scale(&quarter));
    }
    if v < -1 {
        return inner;
    }
    // v = -1: the units contribute a Gauss sum over residues
    let mut sum = RootSum::new(p);
    let (r, _) = ctx.fractional_part(s);
    for u in 1..p {
        sum.add_root((r * u * u % p) as i64, &Rational::from_integer(1.into()));
    }
    inner.add(&sum.finish().scale(&pow_p(p, -1)))
}

/// `int_{a + p^n O} psi(t x^2) dx` in closed form.
pub fn ball_quadratic_integral(ctx: &PAdicContext, t: &Rational, ball: &Ball) -> Cyclotomic {
    let p = ctx.p();
    let n = ball.level();
    let vt = match ctx.valuation(t) {
        None => return Cyclotomic::from_rational(ball.volume(ctx)),
        Some(v) => v,
    };
    if ball.contains_zero() {
        let s = t * pow_p(p, 2 * n);
        return unit_ball_gauss(ctx, &s).scale(&pow_p(p, -n));
    }
    let a = ball.center();
    let w = ctx.valuation(a).unwrap();
    let m = n - w;
    let extra = if p == 2 {
        if m == 1 {
            return ball
                .children(ctx)
                .iter()
                .map(|b| ball_quadratic_integral(ctx, t, b))
                .sum();
        }
        1
    } else {
        0
    };
    if vt + n + w + extra >= 0 {
        ctx.psi(&(t * a * a)).scale(&pow_p(p, -n))
    } else {
        Cyclotomic::zero()
    }
}

/// `F_2 phi(t) = int phi(x) psi(t x^2) dx`, closed form.
pub fn quad_fourier(phi: &BruhatSchwartz, t: &Rational) -> Cyclotomic {
    let ctx = phi.ctx();
    phi.terms()
        .iter()
        .map(|(b, c)| c.mul(&ball_quadratic_integral(ctx, t, b)))
        .sum()
}

/// Brute-force finite character sum for `int_B psi(t x^2) dx`: refine until the
/// integrand is constant on each piece and add up volumes times roots of unity.
pub fn ball_quadratic_integral_brute(ctx: &PAdicContext, t: &Rational, ball: &Ball) -> Cyclotomic {
    let p = ctx.p();
    let vt = match ctx.valuation(t) {
        None => return Cyclotomic::from_rational(ball.volume(ctx)),
        Some(v) => v,
    };
    let v2 = if p == 2 { 1 } else { 0 };
    let mut leaves: Vec<(Rational, i64)> = Vec::new();
    let mut stack = vec![ball.clone()];
    while let Some(b) = stack.pop() {
        let n = b.level();
        let w = b.valuation(ctx).unwrap_or(n);
        if vt + v2 + w + n >= 0 && vt + 2 * n >= 0 {
            leaves.push((b.center().clone(), n));
        } else {
            stack.extend(b.children(ctx));
        }
    }
    let mut total = Cyclotomic::zero();
    let mut by_level: std::collections::BTreeMap<i64, Vec<Rational>> = Default::default();
    for (c, n) in leaves {
        by_level.entry(n).or_default().push(c);
    }
    for (n, centers) in by_level {
        let vals: Vec<(u64, u32)> = centers
            .iter()
            .map(|c| ctx.fractional_part(&(t * c * c)))
            .collect();
        let kmax = vals.iter().map(|(_, k)| *k).max().unwrap_or(0);
        let mut rs = RootSum::new(p.pow(kmax));
        let one = Rational::from_integer(1.into());
        for (r, k) in vals {
            rs.add_root((r * p.pow(kmax - k)) as i64, &one);
        }
        total = total.add(&rs.finish().scale(&pow_p(p, -n)));
    }
    total
}

pub fn quad_fourier_brute(phi: &BruhatSchwartz, t: &Rational) -> Cyclotomic {
    let ctx = phi.ctx();
    phi.terms()
        .iter()
        .map(|(b, c)| c.mul(&ball_quadratic_integral_brute(ctx, t, b)))
        .sum()
}

/// `|z|` for a cyclotomic `z` whose squared modulus is `p^k`.
fn modulus_power_of_p(ctx: &PAdicContext, z: &Cyclotomic) -> Option<Cyclotomic> {
    let r = z.norm_sq().to_rational()?;
    let k = crate::exact::rational::valuation(&r, ctx.p())?;
    if r != pow_p(ctx.p(), k) {
        return None;
    }
    let half = Cyclotomic::from_rational(pow_p(ctx.p(), k.div_euclid(2)));
    Some(if k.rem_euclid(2) == 1 {
        half.mul(&Cyclotomic::sqrt_prime(ctx.p()))
    } else {
        half
    })
}

/// Phase of `int_{p^{-n} O} psi(a x^2) dx` for large `n`.
pub fn weil_index(ctx: &PAdicContext, a: &Rational) -> Result<Cyclotomic, FourierError> {
    let m = ctx.valuation(a).ok_or(FourierError::ZeroArgument)?;
    let c = if ctx.p() == 2 { 3 } else { 1 };
    let n = (m + c).div_euclid(2) + (m + c).rem_euclid(2) + 1;
    let n = n.max(1);
    let phase = |n: i64| -> Option<Cyclotomic> {
        let i = ball_quadratic_integral(ctx, a, &Ball::around_zero(-n));
        let norm = modulus_power_of_p(ctx, &i)?;
        Some(i.div(&norm))
    };
    let g1 = phase(n).ok_or(FourierError::NonStabilization(n))?;
    let g2 = phase(n + 1).ok_or(FourierError::NonStabilization(n + 1))?;
    if g1 != g2 {
        return Err(FourierError::NonStabilization(n + 1));
    }
    Ok(g1)
}

/// `chi_psi(a) = gamma_psi(a) / gamma_psi(1)`.
pub fn chi_psi(ctx: &PAdicContext, a: &Rational) -> Result<Cyclotomic, FourierError> {
    let one = Rational::from_integer(1.into());
    Ok(weil_index(ctx, a)?.div(&weil_index(ctx, &one)?))
}

/// `Z(phi psi_x, chi, s)` as a rational function of `X = p^{-s}`; its value at
/// `X = 1/p` is the Fourier transform of `phi chi` at `x`.
pub fn fourier_phi_chi(
    phi: &BruhatSchwartz,
    chi: &QuasiCharacter,
    x: &Rational,
) -> Result<RationalFunction, FourierError> {
    let f = phi.mul_psi(x);
    let chi = chi.clone().with_symbolic_s();
    Ok(integrate(&f, Measure::Multiplicative, Some(&chi))?)
}

/// Specialises a zeta-type rational function at `s = 1`.
pub fn at_s_equals_one(f: &RationalFunction, p: u64) -> Result<RationalFunction, FourierError> {
    Ok(f.eval_x(&Cyclotomic::from_rational(pow_p(p, -1)))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    #[test]
    fn unit_ball_is_self_dual() {
        let c = ctx(5);
        let f = BruhatSchwartz::lattice(c, 0);
        assert_eq!(fourier_bs(&f), f);
    }

    #[test]
    fn ft_of_p_lattice() {
        let c = ctx(3);
        let f = BruhatSchwartz::lattice(c, 1);
        let expected = BruhatSchwartz::lattice(c, -1).scale(&Cyclotomic::from_rational(rat(1, 3)));
        assert_eq!(fourier_bs(&f), expected);
    }

    #[test]
    fn ft_of_shifted_ball_matches_character_sum() {
        let c = ctx(5);
        let f = BruhatSchwartz::indicator(c, Ball::new(&c, &int(1), 1));
        let g = fourier_bs(&f);
        for k in 0..25 {
            let t = rat(k, 5) + int(3);
            let expected = c.psi(&t).scale(&rat(1, 5));
            assert_eq!(g.eval(&t), expected);
        }
        assert!(g.eval(&rat(1, 25)).is_zero());
    }

    #[test]
    fn gauss_value_for_units() {
        // F_2(1_O)(u/p) = p^{-1} sum_x psi(u x^2 / p)
        let c = ctx(7);
        let f = BruhatSchwartz::lattice(c, 0);
        for u in 1..7 {
            let t = rat(u, 7);
            let mut direct = Cyclotomic::zero();
            for x in 0..7 {
                direct = direct.add(&c.psi(&(&t * int(x * x))));
            }
            assert_eq!(quad_fourier(&f, &t), direct.scale(&rat(1, 7)));
            assert_eq!(quad_fourier(&f, &t).norm_sq(), Cyclotomic::from_rational(rat(1, 7)));
        }
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for p in [2u64, 3, 5] {
            let c = ctx(p);
            let balls = [
                Ball::around_zero(0),
                Ball::around_zero(2),
                Ball::new(&c, &int(1), 1),
                Ball::new(&c, &int(1), 3),
                Ball::new(&c, &rat(1, p as i64), 1),
            ];
            for b in &balls {
                for vt in -5..=3 {
                    for u in [1i64, 3, 7] {
                        if u as u64 % p == 0 {
                            continue;
                        }
                        let t = int(u) * pow_p(p, vt);
                        assert_eq!(
                            ball_quadratic_integral(&c, &t, b),
                            ball_quadratic_integral_brute(&c, &t, b),
                            "p={p} ball={b} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn chi_psi_cocycle_is_hilbert_symbol() {
        use crate::padic::{hilbert, Place};
        for p in [2u64, 3, 5, 7] {
            let c = ctx(p);
            let samples = [int(1), int(-1), int(2), int(3), int(5), int(6), int(7), rat(1, 10), int(-14)];
            for a in &samples {
                for b in &samples {
                    let lhs = chi_psi(&c, &(a * b)).unwrap();
                    let h = hilbert(a, b, Place::Finite(p)).unwrap();
                    let rhs = chi_psi(&c, a)
                        .unwrap()
                        .mul(&chi_psi(&c, b).unwrap())
                        .scale(&int(h as i64));
                    assert_eq!(lhs, rhs, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn chi_psi_basics() {
        let c = ctx(5);
        assert!(chi_psi(&c, &int(4)).unwrap().is_one());
        assert!(chi_psi(&c, &int(2)).unwrap().is_one());
        let w = weil_index(&c, &int(5)).unwrap();
        assert!(w.norm_sq().is_one());
    }
}
