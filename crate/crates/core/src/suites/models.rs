use num_complex::Complex64;
use rand::Rng;

use crate::exact::rational::int;
use crate::exact::{Cyclotomic, RationalFunction};
use crate::padic::PAdicContext;
use crate::shell::two_over_abs_two;
use crate::spherical::{
    gl2_cv_identity, gl2_moment_identity, gl2_truncated_norm, sl2t_csigma_identity, sl2t_matcoef, sl2t_whittaker,
    MomentMatch,
};

use super::gen::rng_for;
use super::{sig12, CaseResult, Plan};

pub(crate) fn gl2(plan: &Plan) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for &p in &plan.primes {
        let mut rng = rng_for(plan.seed, &format!("spherical-gl2/{p}"));
        let cv = gl2_cv_identity(p);
        let case = CaseResult::new(format!("p{p}/cv"), format!("zeta(2)/L(1, ad) * ∫|W|^2 d^x a at p = {p}"));
        out.push(match &cv {
            Ok(r) => case
                .exact(&r.product, "1", r.holds && r.cauchy_agrees)
                .with_note(format!("Cauchy closed form agrees: {}", r.cauchy_agrees)),
            Err(e) => case.failed(e),
        });
        if let Ok(r) = &cv {
            for n in 0..plan.cases {
                let alpha = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::PI));
                let case = CaseResult::new(
                    format!("p{p}/truncated/{n:02}"),
                    format!("alpha = {}; m <= 60", super::sig12_complex(alpha)),
                );
                let (partial, bound) = gl2_truncated_norm(p, alpha, 60);
                out.push(match r.norm.eval_complex(Complex64::new(0.0, 0.0), alpha) {
                    Ok(v) => {
                        let exact = v.re / (1.0 - 1.0 / p as f64);
                        case.numeric(sig12(partial), sig12(exact), (exact - partial).abs(), bound + plan.tol)
                            .with_note(format!("geometric tail bound {}", sig12(bound)))
                    }
                    Err(e) => case.failed(e),
                });
            }
        }
        let case = CaseResult::new(format!("p{p}/moment"), format!("Σ |W(m)|^2 t^m at p = {p}"));
        out.push(match gl2_moment_identity(p) {
            Ok(r) => {
                let (rhs, note) = match r.matches {
                    MomentMatch::AdjointAtS => (&r.at_s, "matches the adjoint expression at s"),
                    MomentMatch::AdjointAtShiftedS => {
                        (&r.at_shifted_s, "matches only with the argument shifted by 1/2 (q^{-1/2} t)")
                    }
                    MomentMatch::Neither => (&r.at_s, "matches neither argument"),
                };
                case.exact(&r.series, rhs, r.matches != MomentMatch::Neither).with_note(note)
            }
            Err(e) => case.failed(e),
        });
    }
    out
}

pub(crate) fn sl2t(plan: &Plan) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for &p in &plan.primes {
        let ctx = match PAdicContext::new(p) {
            Ok(c) => c,
            Err(e) => {
                out.push(CaseResult::new(format!("p{p}"), String::new()).failed(e));
                continue;
            }
        };
        let one = int(1);
        let case = CaseResult::new(format!("p{p}/whittaker"), "W_sigma(1)".into());
        out.push(match sl2t_whittaker(&ctx, &one) {
            Ok(v) => case.exact(&v, "1", v.is_one()),
            Err(e) => case.failed(e),
        });
        let case = CaseResult::new(format!("p{p}/matcoef"), "(sigma(1) phi_0, phi_0)".into());
        out.push(match sl2t_matcoef(&ctx, &one) {
            Ok(v) => case.exact(&v, "1", v.is_one()),
            Err(e) => case.failed(e),
        });
        let case = CaseResult::new(format!("p{p}/c-sigma"), "c_sigma from the class-1 data".into());
        out.push(match sl2t_csigma_identity(p) {
            Ok(r) => {
                // c_sigma ∫|l(a . phi_0)|^2 d^x a = 2|2|^{-1} reproduces (phi_0, phi_0) = 1
                let target = RationalFunction::constant(Cyclotomic::from_rational(two_over_abs_two(p)));
                let product = r.c_sigma.mul(&r.norm);
                let note = if r.holds {
                    "c_sigma equals L(1/2, pi) zeta(2)/L(1, ad)".to_string()
                } else {
                    format!("c_sigma / (L(1/2, pi) zeta(2)/L(1, ad)) = {}", r.residual)
                };
                case.exact(&product, &target, product == target).with_note(note)
            }
            Err(e) => case.failed(e),
        });
    }
    out
}
