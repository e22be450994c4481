use crate::metaplectic::{cocycle, MetaplecticError, Sl2};
use crate::padic::{PAdicContext, Place};
use crate::weil::{projective_check, BruhatSchwartzV, WeilError};

use super::gen::{random_generator_word, random_sl2, rng_for};
use super::{CaseResult, Plan};

fn place_label(place: Place) -> String {
    match place {
        Place::Finite(p) => format!("p{p}"),
        Place::Real => "real".into(),
    }
}

/// `eps(g1, g2) eps(g1 g2, g3) = eps(g1, g2 g3) eps(g2, g3)`, triples spread over the primes and the real place.
pub(crate) fn metaplectic(plan: &Plan) -> Vec<CaseResult> {
    let places: Vec<Place> = plan
        .primes
        .iter()
        .map(|&p| Place::Finite(p))
        .chain([Place::Real])
        .collect();
    let mut rng = rng_for(plan.seed, "metaplectic");
    (0..plan.cases)
        .map(|n| {
            let place = places[n % places.len()];
            let g: Vec<Sl2> = (0..3).map(|_| random_sl2(&mut rng)).collect();
            let case = CaseResult::new(
                format!("{}/{n:04}", place_label(place)),
                format!("g1 = {}; g2 = {}; g3 = {}", g[0], g[1], g[2]),
            );
            let sides = || -> Result<(i8, i8), MetaplecticError> {
                let l = cocycle(&g[0], &g[1], place)? * cocycle(&g[0].mul(&g[1]), &g[2], place)?;
                let r = cocycle(&g[0], &g[1].mul(&g[2]), place)? * cocycle(&g[1], &g[2], place)?;
                Ok((l, r))
            };
            match sides() {
                Ok((l, r)) => case.exact(l, r, l == r),
                Err(e) => case.failed(e),
            }
        })
        .collect()
}

/// `omega(g1) omega(g2) = eps(g1, g2) omega(g1 g2)` on generator words; pairs whose
/// lattice windows exceed the size limit are redrawn.
pub(crate) fn weil_rep(plan: &Plan) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for &p in &plan.primes {
        let ctx = PAdicContext::new(p).expect("primes are validated");
        let mut rng = rng_for(plan.seed, &format!("weil-rep/{p}"));
        let phi = match BruhatSchwartzV::lattice(ctx, [0, 0, 1]) {
            Ok(f) => f,
            Err(e) => {
                out.push(CaseResult::new(format!("p{p}"), String::new()).failed(e));
                continue;
            }
        };
        let mut redrawn = 0usize;
        let mut n = 0;
        while n < plan.cases {
            let g1 = random_generator_word(p, &mut rng);
            let g2 = random_generator_word(p, &mut rng);
            let case = CaseResult::new(format!("p{p}/{n:04}"), format!("g1 = {g1}; g2 = {g2}; phi = 1_(O + O + pO)"));
            match projective_check(&g1, &g2, &phi) {
                Err(WeilError::WindowTooLarge(_)) if redrawn < 20 * plan.cases => {
                    redrawn += 1;
                    continue;
                }
                Ok(r) => out.push(
                    case.exact(format!("omega(g1) omega(g2) phi"), format!("{} omega(g1 g2) phi", r.eps), r.holds)
                        .with_note(format!("eps = {}", r.eps)),
                ),
                Err(e) => out.push(case.failed(e)),
            }
            n += 1;
        }
    }
    out
}
