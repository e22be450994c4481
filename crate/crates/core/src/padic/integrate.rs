use std::collections::BTreeMap;

use crate::exact::rational::{pow_p, Rational};
use crate::exact::{Cyclotomic, RationalFunction};

use super::{BruhatSchwartz, PadicError, QuasiCharacter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Self-dual `dx`, giving `O` volume 1.
    Additive,
    /// `dx / |x|`.
    Multiplicative,
    /// `dx / ((1 - 1/p) |x|)`, giving `O^x` volume 1.
    UnitNormalized,
}

/// `int f(x) chi(x) d mu(x)` as a rational function in `X` (and `Y`).
///
/// Shells `p^m O^x` contribute `chi`-twisted volumes; a ball around zero
/// contributes a geometric tail, which must be summable unless `chi` carries
/// the symbolic `|x|^s`.
pub fn integrate(
    f: &BruhatSchwartz,
    measure: Measure,
    chi: Option<&QuasiCharacter>,
) -> Result<RationalFunction, PadicError> {
    let ctx = *f.ctx();
    let p = ctx.p();
    if measure == Measure::Additive && chi.is_none() {
        return Ok(RationalFunction::constant(f.integral()));
    }
    let trivial = QuasiCharacter::trivial(ctx);
    let chi = chi.unwrap_or(&trivial);
    if chi.ctx() != &ctx {
        return Err(PadicError::PrimeMismatch);
    }
    // value of chi (times |x| for the additive measure) on p
    let mut ratio = chi.uniformizer_value();
    if measure == Measure::Additive {
        ratio = ratio.mul(&RationalFunction::y_pow(p, 2));
    }
    let one_minus = Cyclotomic::from_rational(Rational::from_integer(1.into()) - pow_p(p, -1));
    // coefficient of ratio^v for each valuation v
    let mut shells: BTreeMap<i64, Cyclotomic> = BTreeMap::new();
    let mut tail = RationalFunction::zero().with_prime(p);
    for (ball, c) in f.terms() {
        match ball.valuation(&ctx) {
            None => {
                if !chi.is_unramified() {
                    continue;
                }
                check_summable(&ratio, chi, measure)?;
                let n = ball.level();
                let geo = ratio
                    .pow(n)
                    .and_then(|rn| rn.div(&RationalFunction::one().sub(&ratio)))
                    .map_err(|_| PadicError::NonSummable {
                        ratio: ratio.to_string(),
                    })?;
                tail = tail.add(&geo.scale(&c.mul(&one_minus)));
            }
            Some(m) => {
                let fine = ball.level().max(m + chi.level() as i64);
                for sub in ball.refine_to(&ctx, fine) {
                    let u = sub.center() * pow_p(p, -m);
                    // d^x volume of the sub-ball is p^{-fine} / p^{-m}
                    let vol = pow_p(p, m - fine);
                    let term = c.mul(&chi.unit_value(&u)).scale(&vol);
                    let e = shells.entry(m).or_insert_with(Cyclotomic::zero);
                    *e = e.add(&term);
                }
            }
        }
    }
    let mut total = tail;
    for (v, a) in shells {
        if a.is_zero() {
            continue;
        }
        let rv = ratio.pow(v).map_err(|_| PadicError::ZeroArgument)?;
        total = total.add(&rv.scale(&a));
    }
    if measure == Measure::UnitNormalized {
        total = total.scale(&one_minus.inv());
    }
    Ok(total)
}

fn check_summable(
    ratio: &RationalFunction,
    chi: &QuasiCharacter,
    measure: Measure,
) -> Result<(), PadicError> {
    if chi.is_symbolic() {
        return Ok(());
    }
    // |ratio| = p^{-(s0 + [additive])}
    let shift = chi.half_shift() + if measure == Measure::Additive { 2 } else { 0 };
    if shift > 0 {
        Ok(())
    } else {
        Err(PadicError::NonSummable {
            ratio: ratio.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use crate::padic::{Exponent, PAdicContext};

    #[test]
    fn unit_ball_volume() {
        let ctx = PAdicContext::new(3).unwrap();
        let f = BruhatSchwartz::lattice(ctx, 0);
        assert!(integrate(&f, Measure::Additive, None).unwrap().is_one());
    }

    #[test]
    fn geometric_series_zeta() {
        let ctx = PAdicContext::new(3).unwrap();
        let f = BruhatSchwartz::lattice(ctx, 0);
        let chi = QuasiCharacter::trivial(ctx).with_exponent(Exponent::Symbolic);
        let z = integrate(&f, Measure::Multiplicative, Some(&chi)).unwrap();
        let x = RationalFunction::x(3);
        let expected = RationalFunction::from_rational(rat(2, 3))
            .div(&RationalFunction::one().sub(&x))
            .unwrap();
        assert_eq!(z, expected);
    }

    #[test]
    fn unit_normalized_units() {
        let ctx = PAdicContext::new(5).unwrap();
        let f = BruhatSchwartz::units(ctx);
        assert!(integrate(&f, Measure::UnitNormalized, None).unwrap().is_one());
    }

    #[test]
    fn divergent_tail_is_reported() {
        let ctx = PAdicContext::new(5).unwrap();
        let f = BruhatSchwartz::lattice(ctx, 0);
        assert!(matches!(
            integrate(&f, Measure::Multiplicative, None),
            Err(PadicError::NonSummable { .. })
        ));
    }
}
