//! Densities on `k^x` of matrix-coefficient type functions, stable integrals
//! and the quadratic Fourier isometry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use thiserror::Error;

use crate::exact::rational::{pow_p, Rational};
use crate::exact::{Cyclotomic, RatFuncError, RationalFunction};
use crate::fourier::{quad_fourier, quad_fourier_brute};
use crate::padic::{BruhatSchwartz, PAdicContext, PadicError};
use crate::shell::{gauss_depth, two_over_abs_two, unit_residues, F2Parts, ShellError, ShellFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("W must be even")]
    NotEven,
    #[error("{0} lies in the trivial square class but is not the square of a rational")]
    NotRationalSquare(String),
    #[error("expansion classes must be distinct square classes")]
    RepeatedClass,
    #[error("truncated integrals did not stabilize by n = {0}")]
    NonStabilization(i64),
    #[error("mixed primes")]
    PrimeMismatch,
    #[error(transparent)]
    Shell(#[from] ShellError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
}

/// How `F_2 W` is evaluated on t-shells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShellRoute {
    /// Gauss integrals over residue balls.
    Gauss,
    /// Fourier transform of the square-root lift.
    Tilde,
}

/// How `F_2 phi` is evaluated for Bruhat-Schwartz `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiRoute {
    ClosedForm,
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Routes {
    pub shell: ShellRoute,
    pub phi: PhiRoute,
}

impl Default for Routes {
    fn default() -> Self {
        Routes {
            shell: ShellRoute::Gauss,
            phi: PhiRoute::ClosedForm,
        }
    }
}

fn f2_shell(w: &ShellFunction, t: &Rational, route: ShellRoute) -> Result<F2Parts, ShellError> {
    match route {
        ShellRoute::Gauss => w.f2_gauss(t),
        ShellRoute::Tilde => w.f2_tilde(t),
    }
}

fn f2_phi(phi: &BruhatSchwartz, t: &Rational, route: PhiRoute) -> Cyclotomic {
    match route {
        PhiRoute::ClosedForm => quad_fourier(phi, t),
        PhiRoute::BruteForce => quad_fourier_brute(phi, t),
    }
}

fn rat_u(u: u64) -> Rational {
    Rational::from_integer(u.into())
}

fn scale_parts(parts: &F2Parts, c: &Cyclotomic) -> F2Parts {
    F2Parts {
        table: parts.table.scale(c),
        tails: parts.tails.iter().map(|t| t.scale(c)).collect(),
    }
}

fn add_parts(a: &mut F2Parts, b: &F2Parts) {
    a.table = a.table.add(&b.table);
    for (x, y) in a.tails.iter_mut().zip(&b.tails) {
        *x = x.add(y);
    }
}

fn period_lcm(w: &ShellFunction) -> i64 {
    w.tails().iter().fold(1i64, |acc, t| acc.lcm(&(t.period as i64)))
}

/// `∫ F_2 W(delta t) F_2 phi(-t) dt` by summation over t-shells, with the
/// geometric regimes at both ends summed in closed form.
pub fn isometry_lhs(
    w: &ShellFunction,
    delta: &Rational,
    phi: &BruhatSchwartz,
    routes: Routes,
) -> Result<RationalFunction, DensityError> {
    let ctx = *w.ctx();
    if phi.ctx() != &ctx {
        return Err(DensityError::PrimeMismatch);
    }
    let p = ctx.p();
    if phi.is_zero() || (w.rows().is_empty() && w.tails().is_empty()) {
        return Ok(RationalFunction::zero());
    }
    let kappa = gauss_depth(p, w.precision());
    let vd = ctx.valuation(delta).ok_or(PadicError::ZeroArgument)?;
    let period = period_lcm(w);
    let wide = if p == 2 { 2 } else { 0 };
    // beyond j_hi both transforms are constant, below j_lo both are geometric
    let mut j_hi = -2 * w.start() - vd;
    let mut j_lo = 1 - kappa - 2 * w.onset() - vd;
    for (ball, _) in phi.terms() {
        let n = ball.level();
        match ball.valuation(&ctx) {
            None => {
                j_hi = j_hi.max(-2 * n);
                j_lo = j_lo.min(-2 * n - wide);
            }
            Some(v) => {
                j_hi = j_hi.max(-2 * v);
                j_lo = j_lo.min(-n - v - 1 - wide);
            }
        }
    }
    // the window must contain j_lo itself
    let j_hi = j_hi.max(j_lo + 1);
    let shell_sum = |j: i64| -> Result<F2Parts, DensityError> {
        // precision in the unit of t needed by phi's shifted balls
        let mut k_prec = kappa;
        for (ball, _) in phi.terms() {
            if let Some(v) = ball.valuation(&ctx) {
                if j + ball.level() + v + 1 + wide >= 0 {
                    k_prec = k_prec.max(-2 * v - j);
                }
            }
        }
        let step = p.pow(kappa as u32);
        let fine = p.pow(k_prec as u32);
        let measure = Cyclotomic::from_rational(pow_p(p, -j - k_prec));
        let mut acc = F2Parts {
            table: RationalFunction::zero(),
            tails: vec![RationalFunction::zero(); w.tails().len()],
        };
        for tau0 in unit_residues(p, kappa as u32) {
            let t = delta * pow_p(p, j) * rat_u(tau0);
            let parts = f2_shell(w, &t, routes.shell)?;
            let mut s = Cyclotomic::zero();
            let mut tau = tau0;
            while tau < fine {
                let t_phi = -(pow_p(p, j) * rat_u(tau));
                s = s.add(&f2_phi(phi, &t_phi, routes.phi));
                tau += step;
            }
            if s.is_zero() {
                continue;
            }
            add_parts(&mut acc, &scale_parts(&parts, &s.mul(&measure)));
        }
        Ok(acc)
    };
    let mut total = RationalFunction::zero();
    let first = j_lo - 2 * period + 1;
    for j in first..j_hi {
        let parts = shell_sum(j)?;
        total = total.add(&parts.total());
        if j <= j_lo {
            for (k, tail) in w.tails().iter().enumerate() {
                let rho = tail.ratio.value();
                let geo = rho.div(&RationalFunction::one().sub(rho))?;
                total = total.add(&parts.tails[k].mul(&geo));
            }
        }
    }
    // j >= j_hi: F_2 W = ∫W, F_2 phi = ∫phi, shells of total measure p^{-j_hi}
    let upper = w
        .integral()?
        .scale(&phi.integral())
        .scale(&Cyclotomic::from_rational(pow_p(p, -j_hi)));
    Ok(total.add(&upper))
}

/// `b` with `b^2 = x`, if `x` is the square of a rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn is_square_class(ctx: &PAdicContext, x: &Rational) -> bool {
    ctx.square_class(x) == Some((0, 0))
}

/// `2|2|^{-1} |b|^{-1} ∫ W(y) phi(b y) |y|^{-1} dy` for `delta = b^2`, else 0.
pub fn isometry_rhs(
    w: &ShellFunction,
    delta: &Rational,
    phi: &BruhatSchwartz,
) -> Result<RationalFunction, DensityError> {
    let ctx = w.ctx();
    if !is_square_class(ctx, delta) {
        return Ok(RationalFunction::zero());
    }
    let b = rational_sqrt(delta).ok_or_else(|| DensityError::NotRationalSquare(delta.to_string()))?;
    let p = ctx.p();
    let scale = two_over_abs_two(p) * pow_p(p, ctx.valuation(&b).unwrap());
    Ok(w
        .integral_against(&phi.dilate(&b))?
        .scale(&Cyclotomic::from_rational(scale)))
}

#[derive(Debug, Clone)]
pub struct IsometryReport {
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub square_class: bool,
    pub holds: bool,
}

fn hypotheses(w: &ShellFunction) -> Result<(), DensityError> {
    if !w.is_even() {
        return Err(DensityError::NotEven);
    }
    w.check_summable()?;
    Ok(())
}

/// `∫ F_2 W(delta t) F_2 phi(-t) dt = 2|2|^{-1} ∫ W phi |x|^{-1} dx` for square `delta`, 0 otherwise.
pub fn isometry_check(
    w: &ShellFunction,
    phi: &BruhatSchwartz,
    delta: &Rational,
    routes: Routes,
) -> Result<IsometryReport, DensityError> {
    hypotheses(w)?;
    let lhs = isometry_lhs(w, delta, phi, routes)?;
    let rhs = isometry_rhs(w, delta, phi)?;
    let holds = lhs == rhs;
    Ok(IsometryReport {
        lhs,
        rhs,
        square_class: is_square_class(w.ctx(), delta),
        holds,
    })
}

/// `∫ (F_2 W1(t) + F_2 W2(delta t)) F_2 phi(-t) dt` against `2|2|^{-1} ∫ W1 phi |x|^{-1} dx`
/// (plus the `W2` term when `delta` is a square).
pub fn combined_isometry_check(
    w1: &ShellFunction,
    w2: &ShellFunction,
    delta: &Rational,
    phi: &BruhatSchwartz,
    routes: Routes,
) -> Result<IsometryReport, DensityError> {
    hypotheses(w1)?;
    hypotheses(w2)?;
    let one = Rational::from_integer(1.into());
    let lhs = isometry_lhs(w1, &one, phi, routes)?.add(&isometry_lhs(w2, delta, phi, routes)?);
    let rhs = isometry_rhs(w1, &one, phi)?.add(&isometry_rhs(w2, delta, phi)?);
    let holds = lhs == rhs;
    Ok(IsometryReport {
        lhs,
        rhs,
        square_class: is_square_class(w1.ctx(), delta),
        holds,
    })
}

#[derive(Debug, Clone)]
pub struct ExpansionTerm {
    pub delta: Rational,
    pub c: RationalFunction,
    pub w: ShellFunction,
}

/// `n -> Σ_i (|2|/2) c_i F_2 W_i(delta_i n)`.
#[derive(Debug, Clone)]
pub struct WhittakerExpansion {
    ctx: PAdicContext,
    terms: Vec<ExpansionTerm>,
}

fn half_abs_two(p: u64) -> Rational {
    two_over_abs_two(p).recip()
}

impl WhittakerExpansion {
    pub fn new(ctx: PAdicContext, terms: Vec<ExpansionTerm>) -> Result<Self, DensityError> {
        let mut seen = Vec::new();
        for t in &terms {
            if t.w.ctx() != &ctx {
                return Err(DensityError::PrimeMismatch);
            }
            hypotheses(&t.w)?;
            let class = ctx.square_class(&t.delta).ok_or(PadicError::ZeroArgument)?;
            if seen.contains(&class) {
                return Err(DensityError::RepeatedClass);
            }
            seen.push(class);
        }
        Ok(WhittakerExpansion { ctx, terms })
    }

    pub fn ctx(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[ExpansionTerm] {
        &self.terms
    }

    /// The represented function at `n`.
    pub fn represented(&self, n: &Rational) -> Result<RationalFunction, DensityError> {
        let k = Cyclotomic::from_rational(half_abs_two(self.ctx.p()));
        let mut total = RationalFunction::zero();
        for t in &self.terms {
            let f = if n == &Rational::from_integer(0.into()) {
                t.w.integral()?
            } else {
                t.w.f2_gauss(&(&t.delta * n))?.total()
            };
            total = total.add(&t.c.mul(&f).scale(&k));
        }
        Ok(total)
    }
}

/// `a -> |delta_i|^{-1} c_i W_i(b) |b|^{-1}` on `-delta_i b^2`, zero off these classes.
#[derive(Debug, Clone)]
pub struct ToroidalDensity {
    expansion: WhittakerExpansion,
}

pub fn density_of(expansion: &WhittakerExpansion) -> ToroidalDensity {
    ToroidalDensity {
        expansion: expansion.clone(),
    }
}

/// Valuation of `b` and index of its residue class for `b^2 = x` (`x` a square).
fn sqrt_class(w: &ShellFunction, x: &Rational) -> Option<(i64, usize)> {
    let ctx = w.ctx();
    let p = ctx.p();
    let v = ctx.valuation(x)?;
    if v % 2 != 0 {
        return None;
    }
    let u = x * pow_p(p, -v);
    let r = w.precision();
    let r_lift = if p == 2 { r + 1 } else { r };
    let m = p.pow(r_lift);
    let target = crate::exact::rational::residue_mod(&u, &BigInt::from(m));
    let root = unit_residues(p, r_lift)
        .into_iter()
        .find(|x| BigInt::from(x * x % m) == target)?;
    Some((v / 2, w.index_of(&rat_u(root))))
}

impl ToroidalDensity {
    pub fn eval(&self, a: &Rational) -> Result<RationalFunction, DensityError> {
        let ctx = self.expansion.ctx;
        let p = ctx.p();
        for t in &self.expansion.terms {
            let b2 = -(a / &t.delta);
            if !is_square_class(&ctx, &b2) {
                continue;
            }
            let (m, idx) = sqrt_class(&t.w, &b2).expect("square class checked");
            let vd = ctx.valuation(&t.delta).unwrap();
            let scale = pow_p(p, vd + m);
            return Ok(t.w.value(m, idx).mul(&t.c).scale(&Cyclotomic::from_rational(scale)));
        }
        Ok(RationalFunction::zero())
    }
}

#[derive(Debug, Clone)]
pub struct StableIntegral {
    pub value: RationalFunction,
    /// First `n` from which the truncations are constant.
    pub stabilized_at: i64,
    pub predicted: i64,
    pub truncations: Vec<(i64, RationalFunction)>,
}

/// `lim_n ∫_{p^{-n} O} f(u) psi(a u) du` for the represented function `f`.
pub fn stable_integral(expansion: &WhittakerExpansion, a: &Rational) -> Result<StableIntegral, DensityError> {
    let ctx = expansion.ctx;
    let p = ctx.p();
    let va = ctx.valuation(a).ok_or(PadicError::ZeroArgument)?;
    let k = Cyclotomic::from_rational(half_abs_two(p));
    // per term: shells j < j_top explicit, u in p^{j_top} O where F_2 W is constant
    struct Prepared {
        c: RationalFunction,
        j_top: i64,
        shells: Vec<(i64, RationalFunction)>,
        integral: RationalFunction,
    }
    let mut predicted = va;
    let mut prepared = Vec::new();
    let mut lowest = i64::MAX;
    for t in &expansion.terms {
        let kappa = gauss_depth(p, t.w.precision());
        let vd = ctx.valuation(&t.delta).unwrap();
        let j_top = -2 * t.w.start() - vd;
        predicted = predicted.max(va + kappa).max(-j_top);
        lowest = lowest.min(j_top);
        prepared.push((t, kappa, j_top));
    }
    let scan_to = predicted + 4;
    let mut prep = Vec::new();
    for (t, kappa, j_top) in prepared {
        let mut shells = Vec::new();
        for j in -scan_to..j_top {
            // ∫ over p^j (tau0 + p^kappa O) of psi(a u) vanishes unless v(a) + j + kappa >= 0
            let mut s = RationalFunction::zero();
            if va + j + kappa >= 0 {
                for tau0 in unit_residues(p, kappa as u32) {
                    let u = pow_p(p, j) * rat_u(tau0);
                    let f = t.w.f2_gauss(&(&t.delta * &u))?.total();
                    let phase = ctx.psi(&(a * &u)).scale(&pow_p(p, -j - kappa));
                    s = s.add(&f.scale(&phase));
                }
            }
            shells.push((j, s));
        }
        prep.push(Prepared {
            c: t.c.clone(),
            j_top,
            shells,
            integral: t.w.integral()?,
        });
    }
    let ball_phase = |level: i64| -> Rational {
        // ∫_{p^level O} psi(a u) du
        if level + va >= 0 {
            pow_p(p, -level)
        } else {
            Rational::from_integer(0.into())
        }
    };
    let start_n = (-lowest).min(va + 1).min(0);
    let mut truncations = Vec::new();
    for n in start_n..=scan_to {
        let mut total = RationalFunction::zero();
        for pr in &prep {
            let mut term = RationalFunction::zero();
            let low = -n;
            if low >= pr.j_top {
                term = pr.integral.scale(&Cyclotomic::from_rational(ball_phase(low)));
            } else {
                for (j, s) in &pr.shells {
                    if *j >= low {
                        term = term.add(s);
                    }
                }
                term = term.add(&pr.integral.scale(&Cyclotomic::from_rational(ball_phase(pr.j_top))));
            }
            total = total.add(&term.mul(&pr.c));
        }
        truncations.push((n, total.scale(&k)));
    }
    let last = truncations.last().unwrap().1.clone();
    let stabilized_at = truncations
        .iter()
        .rev()
        .take_while(|(_, v)| *v == last)
        .last()
        .map(|(n, _)| *n)
        .unwrap();
    if stabilized_at > predicted {
        return Err(DensityError::NonStabilization(predicted));
    }
    Ok(StableIntegral {
        value: last,
        stabilized_at,
        predicted,
        truncations,
    })
}

#[derive(Debug, Clone)]
pub struct MbIntegralReport {
    pub lhs: RationalFunction,
    pub rhs: RationalFunction,
    pub holds: bool,
}

/// `∫ conj(f)(n) F_2 Phi(delta_i n) dn = |delta_i|^{-1} conj(c_i) ∫ conj(W_i)(a) Phi(a) d^x a`.
pub fn mbintegral_check(
    expansion: &WhittakerExpansion,
    big_phi: &BruhatSchwartz,
    i: usize,
    routes: Routes,
) -> Result<MbIntegralReport, DensityError> {
    let ctx = expansion.ctx;
    let p = ctx.p();
    let target = &expansion.terms[i];
    let vi = ctx.valuation(&target.delta).unwrap();
    let inv_abs = Cyclotomic::from_rational(pow_p(p, vi));
    let k = Cyclotomic::from_rational(half_abs_two(p));
    let mut lhs = RationalFunction::zero();
    for t in &expansion.terms {
        let ratio = &t.delta / &target.delta;
        let part = isometry_lhs(&t.w.conj(), &ratio, big_phi, routes)?;
        lhs = lhs.add(&part.mul(&t.c.conj()).scale(&k));
    }
    lhs = lhs.scale(&inv_abs);
    let rhs = target
        .w
        .conj()
        .integral_against(big_phi)?
        .mul(&target.c.conj())
        .scale(&inv_abs);
    let holds = lhs == rhs;
    Ok(MbIntegralReport { lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::shell::TailRatio;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    fn geometric(ctx: PAdicContext) -> ShellFunction {
        let p = ctx.p();
        let ratio = TailRatio::new(p, Cyclotomic::one(), 0, 1).unwrap();
        ShellFunction::radial(
            ctx,
            -1,
            vec![RationalFunction::from_int(2), RationalFunction::one()],
            vec![(RationalFunction::from_int(3), ratio)],
        )
    }

    #[test]
    fn units_against_unit_ball() {
        let c = ctx(5);
        let w = ShellFunction::units(c);
        let phi = BruhatSchwartz::lattice(c, 0);
        let rep = isometry_check(&w, &phi, &int(1), Routes::default()).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lhs, RationalFunction::from_rational(rat(8, 5)));
        let rep = isometry_check(&w, &phi, &int(2), Routes::default()).unwrap();
        assert!(rep.holds);
        assert!(rep.lhs.is_zero());
    }

    #[test]
    fn geometric_family_all_routes() {
        for p in [2u64, 3, 5] {
            let c = ctx(p);
            let w = geometric(c);
            let phis = [
                BruhatSchwartz::lattice(c, 0),
                BruhatSchwartz::lattice(c, -1),
                BruhatSchwartz::units(c),
            ];
            let deltas: Vec<Rational> = c.square_class_reps();
            for phi in &phis {
                for d in &deltas {
                    let a = isometry_check(&w, phi, d, Routes::default()).unwrap();
                    assert!(a.holds, "p={p} delta={d} {} vs {}", a.lhs, a.rhs);
                    let b = isometry_lhs(
                        &w,
                        d,
                        phi,
                        Routes {
                            shell: ShellRoute::Tilde,
                            phi: PhiRoute::BruteForce,
                        },
                    )
                    .unwrap();
                    assert_eq!(a.lhs, b);
                }
            }
        }
    }

    #[test]
    fn tail_without_rows() {
        // W(m) = p^{-m} on m >= 0, no explicit rows
        for p in [2u64, 3, 5] {
            let ratio = TailRatio::new(p, Cyclotomic::one(), 0, 2).unwrap();
            let w = ShellFunction::radial(ctx(p), 0, vec![], vec![(RationalFunction::one(), ratio)]);
            for n in [-1i64, 0, 1] {
                let phi = BruhatSchwartz::lattice(ctx(p), n);
                let nonsquare = if p == 5 { int(2) } else { int(-1) };
                for d in [int(1), nonsquare, int(p as i64)] {
                    let r = isometry_check(&w, &phi, &d, Routes::default()).unwrap();
                    assert!(r.holds, "p={p} n={n} d={d}: {} vs {}", r.lhs, r.rhs);
                }
            }
        }
    }

    #[test]
    fn stable_integral_of_units() {
        let c = ctx(3);
        let w = ShellFunction::units(c);
        let e = WhittakerExpansion::new(
            c,
            vec![ExpansionTerm {
                delta: int(1),
                c: RationalFunction::from_int(2),
                w,
            }],
        )
        .unwrap();
        let s = stable_integral(&e, &int(-1)).unwrap();
        assert_eq!(s.value, RationalFunction::from_int(2));
        assert_eq!(density_of(&e).eval(&int(-1)).unwrap(), s.value);
        let off = stable_integral(&e, &int(1)).unwrap();
        assert!(off.value.is_zero());
    }

    #[test]
    fn stable_integral_matches_density_for_geometric() {
        for p in [2u64, 3, 5] {
            let c = ctx(p);
            let reps = c.square_class_reps();
            let terms = vec![
                ExpansionTerm {
                    delta: reps[0].clone(),
                    c: RationalFunction::from_int(1),
                    w: geometric(c),
                },
                ExpansionTerm {
                    delta: reps[1].clone(),
                    c: RationalFunction::from_int(3),
                    w: ShellFunction::units(c),
                },
            ];
            let e = WhittakerExpansion::new(c, terms).unwrap();
            let dens = density_of(&e);
            for a in [int(-1), int(-4), rat(-1, p as i64 * p as i64), int(2), int(-3), int(5)] {
                let s = stable_integral(&e, &a).unwrap();
                assert_eq!(s.value, dens.eval(&a).unwrap(), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn mbintegral_identity() {
        for p in [3u64, 5] {
            let c = ctx(p);
            let reps = c.square_class_reps();
            let e = WhittakerExpansion::new(
                c,
                vec![
                    ExpansionTerm {
                        delta: reps[0].clone(),
                        c: RationalFunction::from_int(2),
                        w: geometric(c),
                    },
                    ExpansionTerm {
                        delta: reps[2].clone(),
                        c: RationalFunction::from_int(1),
                        w: ShellFunction::units(c),
                    },
                ],
            )
            .unwrap();
            for i in 0..2 {
                let r = mbintegral_check(&e, &BruhatSchwartz::lattice(c, 0), i, Routes::default()).unwrap();
                assert!(r.holds, "p={p} i={i}: {} vs {}", r.lhs, r.rhs);
            }
        }
    }
}
