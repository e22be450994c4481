use rand::Rng;

use crate::archimedean::{asymptotic_decay_scan, isometry_numeric, HermiteGaussian};
use crate::exact::rational::{int, Rational};

use super::gen::rng_for;
use super::{sig12, sig12_complex, CaseResult, Plan, Status};

/// `P(x) e^{-pi x^2}` with `P` of degree at most 3 and small integer coefficients.
fn random_hermite<R: Rng>(rng: &mut R) -> HermiteGaussian {
    let mut c: Vec<Rational> = (0..rng.gen_range(1..=4)).map(|_| int(rng.gen_range(-3..=3))).collect();
    if c.iter().all(|x| *x == int(0)) {
        c.push(int(1));
    }
    HermiteGaussian::from_rationals(&c)
}

/// Even `W` vanishing at 0: `(a x^2 + b x^4) e^{-pi x^2}`.
fn random_even_vanishing<R: Rng>(rng: &mut R) -> HermiteGaussian {
    let a = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let b = rng.gen_range(-2..=2);
    HermiteGaussian::from_rationals(&[int(0), int(0), int(a), int(0), int(b)])
}

pub(crate) fn asymptotic(plan: &Plan) -> Vec<CaseResult> {
    let mut rng = rng_for(plan.seed, "asymptotic-arch");
    let exponents: Vec<f64> = (1..=9).map(|i| -0.1 * i as f64).collect();
    let ks: Vec<i32> = (0..=10).collect();
    let mut phis = vec![HermiteGaussian::gaussian()];
    phis.extend((0..plan.cases).map(|_| random_hermite(&mut rng)));
    phis.into_iter()
        .enumerate()
        .map(|(n, phi)| {
            let case = CaseResult::new(format!("{n:02}"), format!("phi = {phi}; u in [-0.9, -0.1]; x = 2^k, k <= 10"));
            match asymptotic_decay_scan(&phi, &exponents, &ks) {
                Ok(scan) => {
                    let last = *scan.max_by_k.last().expect("nonempty scan");
                    let mut c = case.numeric(sig12(last), format!("< {}", sig12(plan.tol)), last, plan.tol);
                    if !scan.verdict(3, plan.tol) {
                        c.status = Status::Fail;
                    }
                    let trend: Vec<String> = scan.max_by_k.iter().map(|e| format!("{e:.3e}")).collect();
                    c.with_note(format!("max error by k: {}", trend.join(" ")))
                }
                Err(e) => case.failed(e),
            }
        })
        .collect()
}

pub(crate) fn isometry(plan: &Plan) -> Vec<CaseResult> {
    let mut rng = rng_for(plan.seed, "isometry-arch");
    let mut pairs = vec![(HermiteGaussian::monomial(2), HermiteGaussian::gaussian())];
    pairs.extend((0..plan.cases).map(|_| (random_even_vanishing(&mut rng), random_hermite(&mut rng))));
    let mut out = Vec::new();
    for (n, (w, phi)) in pairs.iter().enumerate() {
        for delta in [1.0, -1.0, 2.0, 0.25] {
            let case = CaseResult::new(
                format!("{n:02}/delta{delta}"),
                format!("W = {w}; phi = {phi}; delta = {delta}"),
            );
            out.push(match isometry_numeric(w, phi, delta) {
                Ok(r) => case.numeric(sig12_complex(r.lhs), sig12(r.rhs), r.error, plan.tol),
                Err(e) => case.failed(e),
            });
        }
    }
    out
}
