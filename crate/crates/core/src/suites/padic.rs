use rand::Rng;

use crate::densities::{
    density_of, isometry_check, mbintegral_check, stable_integral, ExpansionTerm, PhiRoute, Routes,
    ShellRoute, WhittakerExpansion,
};
use crate::exact::rational::{int, pow_p, Rational};
use crate::exact::{Cyclotomic, RationalFunction};
use crate::fourier::{fourier_bs, quad_fourier, quad_fourier_brute};
use crate::padic::{BruhatSchwartz, PAdicContext, QuasiCharacter};
use crate::shell::{ShellFunction, TailRatio};
use crate::spherical::expansion_from_spherical;
use crate::tate::{asymptotic_identity_check, dual_zeta, functional_equation_residual, gamma_factor, gamma_from, tate_zeta};

use super::gen::{random_bs, random_bs_supported, random_unit, rng_for};
use super::{CaseResult, Plan};

fn ctx(p: u64) -> PAdicContext {
    PAdicContext::new(p).expect("primes are validated")
}

pub(crate) fn describe(phi: &BruhatSchwartz) -> String {
    phi.to_string().replace('\n', "; ")
}

/// Trivial, an unramified twist and a level-1 ramified character.
fn characters(c: PAdicContext) -> Vec<(&'static str, QuasiCharacter)> {
    vec![
        ("trivial", QuasiCharacter::trivial(c)),
        ("unramified", QuasiCharacter::unramified(c, Cyclotomic::root_of_unity(4, 1))),
        ("ramified", QuasiCharacter::tame(c, 1)),
    ]
}

pub(crate) fn tate_fe(plan: &Plan) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for &p in &plan.primes {
        let c = ctx(p);
        let mut rng = rng_for(plan.seed, &format!("tate-fe/{p}"));
        for (label, chi) in characters(c) {
            let data = match gamma_factor(&chi) {
                Ok(d) => d,
                Err(e) => {
                    out.push(CaseResult::new(format!("p{p}/{label}/gamma"), chi.to_string()).failed(e));
                    continue;
                }
            };
            for n in 0..plan.cases {
                let phi = random_bs(c, &mut rng);
                let case = CaseResult::new(
                    format!("p{p}/{label}/{n:04}"),
                    format!("chi = {chi}; phi = {}", describe(&phi)),
                );
                let run = || -> Result<CaseResult, crate::tate::TateError> {
                    let residual = functional_equation_residual(&phi, &data)?;
                    let lhs = dual_zeta(&phi, &data.chi)?;
                    let rhs = data.gamma.mul(&tate_zeta(&phi, &data.chi)?);
                    let own = gamma_from(&phi, &data.chi)?;
                    let independent = own.as_ref().is_none_or(|g| *g == data.gamma);
                    let note = match own {
                        Some(_) => "gamma from phi agrees",
                        None => "Z(phi, chi, s) = 0, gamma not determined by phi",
                    };
                    Ok(case
                        .clone()
                        .exact(lhs, rhs, residual.is_zero() && independent)
                        .with_note(if independent { note } else { "gamma from phi differs" }))
                };
                out.push(run().unwrap_or_else(|e| case.clone().failed(e)));
            }
        }
    }
    out
}

pub(crate) fn asymptotic(plan: &Plan) -> Vec<CaseResult> {
    let mut rng = rng_for(plan.seed, "asymptotic-padic");
    (0..plan.cases)
        .map(|n| {
            let p = plan.primes[n % plan.primes.len()];
            let c = ctx(p);
            let chars = characters(c);
            let (label, chi) = &chars[rng.gen_range(0..chars.len())];
            let v = rng.gen_range(-2..=1i64);
            let x = int(random_unit(p, &mut rng) as i64) * pow_p(p, v);
            // FT(phi) supported in x (Cond(chi) cap pO)
            let required = v + (chi.level() as i64).max(1);
            let phi_hat = random_bs_supported(c, required + rng.gen_range(0..=1), &mut rng);
            let phi = fourier_bs(&phi_hat).reflect();
            let case = CaseResult::new(
                format!("p{p}/{n:04}"),
                format!("chi = {label}; x = {x}; phi^ = {}", describe(&phi_hat)),
            );
            match asymptotic_identity_check(&phi, chi, &x) {
                Ok(r) => case.exact(&r.lhs, &r.rhs, r.holds),
                Err(e) => case.failed(e),
            }
        })
        .collect()
}

/// Shell functions used for the isometry and expansions: units, a geometric tail
/// with explicit rows, and a pure tail.
pub(crate) fn shell_family(c: PAdicContext) -> Vec<(&'static str, ShellFunction)> {
    let p = c.p();
    let geometric = ShellFunction::radial(
        c,
        -1,
        vec![RationalFunction::from_int(2), RationalFunction::one()],
        vec![(
            RationalFunction::from_int(3),
            TailRatio::new(p, Cyclotomic::one(), 0, 1).expect("contracting ratio"),
        )],
    );
    let tail = ShellFunction::radial(
        c,
        0,
        vec![],
        vec![(
            RationalFunction::one(),
            TailRatio::new(p, Cyclotomic::one(), 0, 2).expect("contracting ratio"),
        )],
    );
    vec![("units", ShellFunction::units(c)), ("geometric", geometric), ("tail", tail)]
}

fn isometry_cases(plan: &Plan, p: u64, out: &mut Vec<CaseResult>) {
    let c = ctx(p);
    let mut rng = rng_for(plan.seed, &format!("isometry-padic/{p}"));
    // p = 2 goes through brute-force Gauss sums for the test function
    let routes = if p == 2 {
        Routes {
            shell: ShellRoute::Gauss,
            phi: PhiRoute::BruteForce,
        }
    } else {
        Routes::default()
    };
    let mut phis = vec![
        ("lattice0".to_string(), BruhatSchwartz::lattice(c, 0)),
        ("lattice-1".to_string(), BruhatSchwartz::lattice(c, -1)),
        ("units".to_string(), BruhatSchwartz::units(c)),
    ];
    phis.push(("random".to_string(), random_bs_supported(c, -1, &mut rng)));
    for (wname, w) in shell_family(c) {
        for (pname, phi) in &phis {
            for (k, delta) in c.square_class_reps().iter().enumerate() {
                let case = CaseResult::new(
                    format!("p{p}/isometry/{wname}/{pname}/d{k}"),
                    format!("W = {wname}; phi = {}; delta = {delta}", describe(phi)),
                );
                out.push(match isometry_check(&w, phi, delta, routes) {
                    Ok(r) => {
                        let note = if r.square_class { "square class" } else { "non-square class, both sides 0" };
                        let holds = r.holds && (r.square_class || r.lhs.is_zero());
                        case.exact(&r.lhs, &r.rhs, holds).with_note(note)
                    }
                    Err(e) => case.failed(e),
                });
            }
        }
    }
}

/// Closed-form quadratic Fourier transform against brute-force character sums, `v(t)` in `[-6, 6]`.
fn oracle_cases(plan: &Plan, p: u64, out: &mut Vec<CaseResult>) {
    let c = ctx(p);
    let mut rng = rng_for(plan.seed, &format!("f2-oracle/{p}"));
    let mut phis = vec![BruhatSchwartz::lattice(c, 0), BruhatSchwartz::units(c)];
    phis.extend((0..plan.cases).map(|_| random_bs_supported(c, 0, &mut rng)));
    let units: Vec<u64> = if p == 2 { vec![1, 3, 5, 7] } else { vec![1, c.nonresidue()] };
    for (n, phi) in phis.iter().enumerate() {
        let case = CaseResult::new(format!("p{p}/f2-oracle/{n:02}"), format!("phi = {}", describe(phi)));
        let mut mismatch = None;
        let mut checked = 0;
        for v in -6..=6i64 {
            for &u in &units {
                let t = int(u as i64) * pow_p(p, v);
                let a = quad_fourier(phi, &t);
                let b = quad_fourier_brute(phi, &t);
                checked += 1;
                if a != b && mismatch.is_none() {
                    mismatch = Some((t, a, b));
                }
            }
        }
        out.push(match mismatch {
            None => case
                .exact(format!("{checked} closed-form values"), format!("{checked} character sums"), true),
            Some((t, a, b)) => case.exact(a, b, false).with_note(format!("t = {t}")),
        });
    }
}

pub(crate) fn isometry(plan: &Plan) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for &p in &plan.primes {
        isometry_cases(plan, p, &mut out);
        oracle_cases(plan, p, &mut out);
    }
    out
}

/// Every implemented expansion family at `p`.
pub(crate) fn expansion_family(c: PAdicContext) -> Vec<(&'static str, Result<WhittakerExpansion, String>)> {
    let reps = c.square_class_reps();
    let shells = shell_family(c);
    let term = |k: usize, coeff: i64, w: &ShellFunction| ExpansionTerm {
        delta: reps[k].clone(),
        c: RationalFunction::from_int(coeff),
        w: w.clone(),
    };
    let units = WhittakerExpansion::new(c, vec![term(0, 2, &shells[0].1)]);
    let mixed = WhittakerExpansion::new(c, vec![term(0, 1, &shells[1].1), term(1, 3, &shells[0].1)]);
    let spread = WhittakerExpansion::new(
        c,
        vec![term(0, 2, &shells[1].1), term(2, 1, &shells[0].1), term(3, -1, &shells[2].1)],
    );
    vec![
        ("units", units.map_err(|e| e.to_string())),
        ("mixed", mixed.map_err(|e| e.to_string())),
        ("spread", spread.map_err(|e| e.to_string())),
        ("spherical", expansion_from_spherical(c).map_err(|e| e.to_string())),
    ]
}

pub(crate) fn densities(plan: &Plan) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for &p in &plan.primes {
        let c = ctx(p);
        let mut rng = rng_for(plan.seed, &format!("densities/{p}"));
        let pp = (p * p) as i64;
        let mut points: Vec<Rational> = vec![
            int(-1),
            int(-4),
            Rational::new((-1).into(), pp.into()),
            int(2),
            int(-3),
            int(5),
        ];
        for _ in 0..plan.cases {
            let u = int(random_unit(p, &mut rng) as i64);
            let sign = if rng.gen_bool(0.5) { int(1) } else { int(-1) };
            points.push(sign * u * pow_p(p, rng.gen_range(-2..=2)));
        }
        for (name, e) in expansion_family(c) {
            let e = match e {
                Ok(e) => e,
                Err(err) => {
                    out.push(CaseResult::new(format!("p{p}/{name}"), name.into()).failed(err));
                    continue;
                }
            };
            let dens = density_of(&e);
            for (k, a) in points.iter().enumerate() {
                let case = CaseResult::new(format!("p{p}/stable/{name}/{k:02}"), format!("{name} at a = {a}"));
                let run = || -> Result<CaseResult, crate::densities::DensityError> {
                    let s = stable_integral(&e, a)?;
                    let d = dens.eval(a)?;
                    let within = s.stabilized_at <= s.predicted;
                    Ok(case.clone().exact(&s.value, &d, s.value == d && within).with_note(format!(
                        "stabilized at n = {}, predicted bound {}",
                        s.stabilized_at, s.predicted
                    )))
                };
                out.push(run().unwrap_or_else(|err| case.clone().failed(err)));
            }
            if p == 2 {
                continue;
            }
            for i in 0..e.terms().len() {
                for (pname, big_phi) in [("lattice0", BruhatSchwartz::lattice(c, 0)), ("lattice1", BruhatSchwartz::lattice(c, 1))] {
                    let case = CaseResult::new(
                        format!("p{p}/mbintegral/{name}/{i}/{pname}"),
                        format!("{name}, class {i}, Phi = {}", describe(&big_phi)),
                    );
                    out.push(match mbintegral_check(&e, &big_phi, i, Routes::default()) {
                        Ok(r) => case.exact(&r.lhs, &r.rhs, r.holds),
                        Err(err) => case.failed(err),
                    });
                }
            }
        }
    }
    out
}
