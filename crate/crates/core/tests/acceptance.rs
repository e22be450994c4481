//! End-to-end acceptance run. Prints one line per criterion and fails if any criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use local_harmonic::archimedean::{isometry_numeric, HermiteGaussian};
use local_harmonic::fourier::fourier_bs;
use local_harmonic::padic::PAdicContext;
use local_harmonic::suites::gen::{random_bs, rng_for};
use local_harmonic::suites::{run_suite, CaseResult, SuiteOptions, SuiteReport};

const SEED: u64 = 20240611;

struct Verdict {
    pass: bool,
    detail: String,
}

fn options(primes: Option<Vec<u64>>, cases: Option<usize>, tol: Option<f64>) -> SuiteOptions {
    SuiteOptions {
        primes,
        cases,
        seed: SEED,
        tol,
    }
}

fn run(name: &str, opts: SuiteOptions) -> SuiteReport {
    run_suite(name, &opts).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn tally<'a>(cases: impl IntoIterator<Item = &'a CaseResult>) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for c in cases {
        n += 1;
        if c.status != local_harmonic::suites::Status::Pass {
            bad.push(c.id.clone());
        }
    }
    (n, bad)
}

fn from_cases<'a>(cases: impl IntoIterator<Item = &'a CaseResult>) -> Verdict {
    let (n, bad) = tally(cases);
    Verdict {
        pass: n > 0 && bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{n} cases")
        } else {
            format!("{} of {n} cases failed, first {}", bad.len(), bad[0])
        },
    }
}

fn involution_and_plancherel() -> Verdict {
    let mut bad = Vec::new();
    for p in [2, 3, 5, 7] {
        let ctx = PAdicContext::new(p).unwrap();
        let mut rng = rng_for(SEED, &format!("acceptance/plancherel/{p}"));
        let phis: Vec<_> = (0..100).map(|_| random_bs(ctx, &mut rng)).collect();
        let hats: Vec<_> = phis.iter().map(fourier_bs).collect();
        for (n, (phi, hat)) in phis.iter().zip(&hats).enumerate() {
            if fourier_bs(hat) != phi.reflect() {
                bad.push(format!("p{p}/{n} involution"));
            }
            let m = (n + 1) % phis.len();
            if hat.inner(&hats[m]) != phi.inner(&phis[m]) {
                bad.push(format!("p{p}/{n} plancherel"));
            }
        }
    }
    Verdict {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "400 functions, involution and Plancherel exact".into()
        } else {
            format!("{} failures, first {}", bad.len(), bad[0])
        },
    }
}

fn isometry(report: &SuiteReport) -> (Verdict, Verdict) {
    let padic = from_cases(report.cases.iter().filter(|c| c.id.contains("/isometry/")));
    let arch = run("isometry-arch", options(None, None, Some(1e-6)));
    let arch_cases = from_cases(&arch.cases);

    let w = HermiteGaussian::monomial(2);
    let phi = HermiteGaussian::gaussian();
    // 2 ∫_0^∞ x e^{-2 pi x^2} dx
    let moment = 1.0 / (2.0 * PI);
    let sq = isometry_numeric(&w, &phi, 1.0).unwrap();
    let non = isometry_numeric(&w, &phi, -1.0).unwrap();
    let derived = (sq.lhs.re - moment).abs() < 1e-6
        && sq.lhs.im.abs() < 1e-6
        && (sq.rhs - moment).abs() < 1e-6
        && non.lhs.norm() < 1e-6
        && non.rhs.abs() < 1e-6;
    let literal = (sq.lhs.re - 1.0 / PI).abs() < 1e-6 && (sq.rhs - 1.0 / PI).abs() < 1e-6;

    let main = Verdict {
        pass: padic.pass && arch_cases.pass && derived,
        detail: format!(
            "p-adic {}; real suite {}, max error {:.3e}; x^2 gauss: lhs {:.12} rhs {:.12} moment 1/(2 pi) {:.12}; delta = -1 lhs {:.3e}",
            padic.detail,
            arch_cases.detail,
            arch.max_error().unwrap_or(0.0),
            sq.lhs.re,
            sq.rhs,
            moment,
            non.lhs.norm()
        ),
    };
    let literal = Verdict {
        pass: literal,
        detail: format!("stated value 1/pi = {:.12} against computed {:.12}", 1.0 / PI, sq.rhs),
    };
    (main, literal)
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let mut lines: Vec<(String, Verdict)> = Vec::new();
    let mut record = |label: &str, v: Verdict| {
        println!("{label}: {} ({})", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        lines.push((label.to_string(), v));
    };

    record("criterion 1", involution_and_plancherel());

    let tate = run("tate-fe", options(Some(vec![3, 5]), Some(10), None));
    record("criterion 2", from_cases(&tate.cases));

    let asym = run("asymptotic-padic", options(None, Some(20), None));
    record("criterion 3", from_cases(&asym.cases));

    let arch = run("asymptotic-arch", options(None, None, Some(1e-3)));
    record("criterion 4", from_cases(&arch.cases));

    let iso = run("isometry-padic", options(Some(vec![2, 3, 5, 7]), None, None));
    let (main, literal) = isometry(&iso);
    record("criterion 5", main);
    println!(
        "criterion 5 (stated literal 1/pi, reported only): {} ({})",
        if literal.pass { "PASS" } else { "FAIL" },
        literal.detail
    );

    record("criterion 6", from_cases(iso.cases.iter().filter(|c| c.id.contains("/f2-oracle/"))));

    let gl2 = run("spherical-gl2", options(None, None, None));
    record("criterion 7", from_cases(&gl2.cases));

    let sl2t = run("spherical-sl2t", options(None, None, None));
    record("criterion 8", from_cases(&sl2t.cases));

    let cocycle = run("metaplectic", options(Some(vec![3, 5]), Some(1000), None));
    let weil = run("weil-rep", options(Some(vec![3, 5]), Some(50), None));
    record("criterion 9", from_cases(cocycle.cases.iter().chain(&weil.cases)));

    let dens = run("densities", options(Some(vec![2, 3, 5]), None, None));
    let mb = dens.cases.iter().filter(|c| c.id.contains("/mbintegral/"));
    let mb_primes_ok = [3, 5]
        .iter()
        .all(|p| dens.cases.iter().any(|c| c.id.starts_with(&format!("p{p}/mbintegral/"))));
    let mut v = from_cases(&dens.cases);
    v.pass &= mb_primes_ok;
    v.detail = format!("{}, of which {} mbintegral", v.detail, mb.count());
    record("criterion 10", v);

    println!("total time {:.1}s", start.elapsed().as_secs_f64());
    let failed: Vec<&str> = lines.iter().filter(|(_, v)| !v.pass).map(|(l, _)| l.as_str()).collect();
    assert!(failed.is_empty(), "failed: {failed:?}");
}
