//! Evaluation of parsed `compute` scripts.

use std::collections::HashMap;

use local_harmonic::archimedean::{
    f2_quadrature, gamma_arch, isometry_numeric, ArchCharacter, HermiteGaussian,
};
use local_harmonic::densities::stable_integral;
use local_harmonic::exact::Rational;
use local_harmonic::fourier::{fourier_bs, quad_fourier};
use local_harmonic::padic::{Ball, BruhatSchwartz, PAdicContext, QuasiCharacter};
use local_harmonic::spherical::expansion_from_spherical;
use local_harmonic::suites::{sig12, sig12_complex};
use local_harmonic::tate::{gamma_factor, tate_zeta};

use crate::script::{ArchRef, BallSpec, BsRef, ChiSpec, Line, RealChar, Request, Statement, Value};

#[derive(Debug, Default)]
pub struct Env {
    balls: HashMap<String, Vec<BallSpec>>,
    chars: HashMap<String, ChiSpec>,
    archs: HashMap<String, Vec<(Rational, usize)>>,
}

fn context(p: u64) -> Result<PAdicContext, String> {
    PAdicContext::new(p).map_err(|e| e.to_string())
}

impl Env {
    fn balls<'a>(&'a self, f: &'a BsRef) -> Result<&'a [BallSpec], String> {
        match f {
            BsRef::Inline(b) => Ok(b),
            BsRef::Named(n) => self
                .balls
                .get(n)
                .map(Vec::as_slice)
                .ok_or_else(|| format!("undefined function '{n}'")),
        }
    }

    fn schwartz(&self, ctx: PAdicContext, f: &BsRef) -> Result<BruhatSchwartz, String> {
        let terms = self
            .balls(f)?
            .iter()
            .map(|b| (Ball::new(&ctx, &b.center, b.level), b.coeff.clone()))
            .collect();
        Ok(BruhatSchwartz::from_terms(ctx, terms))
    }

    fn character(&self, ctx: PAdicContext, chi: &ChiSpec) -> Result<QuasiCharacter, String> {
        match chi {
            ChiSpec::Named(n) => {
                let spec = self.chars.get(n).ok_or_else(|| format!("undefined character '{n}'"))?;
                self.character(ctx, spec)
            }
            ChiSpec::Trivial => Ok(QuasiCharacter::trivial(ctx)),
            ChiSpec::Unramified(c) => Ok(QuasiCharacter::unramified(ctx, c.clone())),
            ChiSpec::Tame(k) => Ok(QuasiCharacter::tame(ctx, *k)),
            ChiSpec::Table {
                level,
                table,
                at_p,
                exponent,
            } => QuasiCharacter::new(ctx, *level, table.clone(), at_p.clone(), exponent.clone())
                .map_err(|e| e.to_string()),
        }
    }

    fn arch(&self, w: &ArchRef) -> Result<HermiteGaussian, String> {
        let terms = match w {
            ArchRef::Inline(t) => t,
            ArchRef::Named(n) => self.archs.get(n).ok_or_else(|| format!("undefined function '{n}'"))?,
        };
        let degree = terms.iter().map(|(_, k)| *k).max().unwrap_or(0);
        let mut coeffs = vec![Rational::from_integer(0.into()); degree + 1];
        for (c, k) in terms {
            coeffs[*k] += c;
        }
        Ok(HermiteGaussian::from_rationals(&coeffs))
    }

    fn define(&mut self, name: &str, append: bool, value: &Value) {
        match value {
            Value::Ball(b) => {
                let entry = self.balls.entry(name.to_string()).or_default();
                if !append {
                    entry.clear();
                }
                entry.push(b.clone());
            }
            Value::Chi(c) => {
                self.chars.insert(name.to_string(), c.clone());
            }
            Value::Arch(ArchRef::Inline(t)) => {
                self.archs.insert(name.to_string(), t.clone());
            }
            Value::Arch(ArchRef::Named(_)) => unreachable!("definitions are inline"),
        }
    }

    fn request(&self, r: &Request) -> Result<String, String> {
        match r {
            Request::Ft { p, f } => {
                let phi = self.schwartz(context(*p)?, f)?;
                Ok(fourier_bs(&phi).to_string())
            }
            Request::F2 { p, f, t } => {
                let phi = self.schwartz(context(*p)?, f)?;
                Ok(quad_fourier(&phi, t).to_string())
            }
            Request::F2Real { w, t } => {
                let w = self.arch(w)?;
                let closed = w.f2_closed(*t);
                let quad = f2_quadrature(&w, *t).map_err(|e| e.to_string())?;
                Ok(format!(
                    "{} (quadrature {})",
                    sig12_complex(closed),
                    sig12_complex(quad)
                ))
            }
            Request::Zeta { p, f, chi } => {
                let ctx = context(*p)?;
                let phi = self.schwartz(ctx, f)?;
                let chi = self.character(ctx, chi)?;
                tate_zeta(&phi, &chi).map(|z| z.to_string()).map_err(|e| e.to_string())
            }
            Request::Gamma { p, chi } => {
                let ctx = context(*p)?;
                let data = gamma_factor(&self.character(ctx, chi)?).map_err(|e| e.to_string())?;
                Ok(format!(
                    "gamma = {}\nepsilon = {}\nL(s) = {}\nL(1 - s, chi^-1) = {}",
                    data.gamma, data.epsilon, data.l_s, data.l_dual
                ))
            }
            Request::GammaReal { chi, s } => {
                let chi = match chi {
                    RealChar::Trivial => ArchCharacter::trivial(),
                    RealChar::Sign => ArchCharacter::sign(),
                    RealChar::Abs(u) => ArchCharacter::abs_power(*u),
                };
                gamma_arch(&chi, *s)
                    .map(sig12_complex)
                    .map_err(|e| e.to_string())
            }
            Request::Stable { p, a } => {
                let ctx = context(*p)?;
                let e = expansion_from_spherical(ctx).map_err(|e| e.to_string())?;
                let s = stable_integral(&e, a).map_err(|e| e.to_string())?;
                Ok(format!(
                    "{} (stabilized at n = {}, predicted bound {})",
                    s.value, s.stabilized_at, s.predicted
                ))
            }
            Request::IsometryReal { w, phi, delta } => {
                let r = isometry_numeric(&self.arch(w)?, &self.arch(phi)?, *delta).map_err(|e| e.to_string())?;
                Ok(format!(
                    "lhs = {}\nrhs = {}\nerror = {}",
                    sig12_complex(r.lhs),
                    sig12(r.rhs),
                    sig12(r.error)
                ))
            }
        }
    }
}

/// Output of one line, or the error that stopped it.
pub struct Outcome {
    pub line: usize,
    pub result: Result<Option<String>, String>,
}

pub fn run(lines: &[Line]) -> Vec<Outcome> {
    let mut env = Env::default();
    lines
        .iter()
        .map(|l| {
            let result = match &l.statement {
                Statement::Define { name, append, value } => {
                    env.define(name, *append, value);
                    Ok(None)
                }
                Statement::Request(r) => env.request(r).map(Some),
            };
            Outcome { line: l.number, result }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::parse_script;

    fn outputs(src: &str) -> Vec<String> {
        run(&parse_script(src).unwrap())
            .into_iter()
            .filter_map(|o| o.result.unwrap())
            .collect()
    }

    #[test]
    fn unit_ball_is_self_dual() {
        assert_eq!(outputs("ft p=5 ball(0,0)"), vec!["ball(0,0) coeff 1"]);
    }

    #[test]
    fn zeta_of_unit_ball() {
        // (1 - 1/3) Σ X^k
        let out = outputs("zeta p=3 f=ball(0,0) chi=triv");
        assert_eq!(out.len(), 1);
        assert!(out[0].contains("2/3") && out[0].contains("X"), "{}", out[0]);
    }

    #[test]
    fn f2_of_quadratic_gaussian() {
        // (1/(2 pi)) (1 - i)^{-3/2} at t = 0.5
        let out = outputs("f2 real W=x^2*gauss t=0.5");
        let z = num_complex::Complex64::new(1.0, -1.0).powf(-1.5) / (2.0 * std::f64::consts::PI);
        assert!(out[0].starts_with(&sig12_complex(z)), "{} vs {}", out[0], sig12_complex(z));
    }

    #[test]
    fn named_definitions() {
        let out = outputs("phi = ball center=0 level=0\nphi += ball center=0 level=1 coeff=-1\nft p=3 phi\n");
        // FT of the units: 1_O - 1/3 1_{p^{-1} O}
        assert_eq!(out[0], "ball(0,0) coeff 2/3\nball(1/3,0) coeff -1/3\nball(2/3,0) coeff -1/3");
    }

    #[test]
    fn semantic_errors_name_the_hypothesis() {
        let out = run(&parse_script("isometry real W=gauss phi=gauss delta=1").unwrap());
        let err = out[0].result.as_ref().unwrap_err();
        assert!(err.contains("hypothesis"), "{err}");
        let out = run(&parse_script("ft p=3 missing").unwrap());
        assert!(out[0].result.as_ref().unwrap_err().contains("undefined"));
    }
}
