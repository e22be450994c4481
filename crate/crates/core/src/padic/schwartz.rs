use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::exact::rational::Rational;
use crate::exact::Cyclotomic;

use super::{Ball, PAdicContext};

/// A locally constant, compactly supported function: a finite sum of ball
/// indicators with cyclotomic coefficients. Stored canonically: balls are
/// disjoint, coefficients nonzero, and no `p` sibling balls share a value.
#[derive(Clone, PartialEq, Eq)]
pub struct BruhatSchwartz {
    ctx: PAdicContext,
    terms: Vec<(Ball, Cyclotomic)>,
}

fn complement(ctx: &PAdicContext, b: &Ball, holes: &[Ball]) -> Vec<Ball> {
    if holes.is_empty() {
        return vec![b.clone()];
    }
    if holes.iter().any(|h| h == b) {
        return vec![];
    }
    b.children(ctx)
        .into_iter()
        .flat_map(|ch| {
            let inner: Vec<Ball> = holes
                .iter()
                .filter(|h| h.is_inside(ctx, &ch))
                .cloned()
                .collect();
            complement(ctx, &ch, &inner)
        })
        .collect()
}

fn insert(ctx: &PAdicContext, terms: &mut Vec<(Ball, Cyclotomic)>, b: Ball, c: Cyclotomic) {
    if let Some(i) = terms
        .iter()
        .position(|(a, _)| a != &b && b.is_inside(ctx, a))
    {
        let (a, ca) = terms.swap_remove(i);
        let mut cur = a;
        while cur.level() < b.level() {
            let next = cur.child_towards(ctx, &b);
            for ch in cur.children(ctx) {
                if ch != next {
                    terms.push((ch, ca.clone()));
                }
            }
            cur = next;
        }
        terms.push((cur, ca));
    }
    if let Some(t) = terms.iter_mut().find(|(a, _)| a == &b) {
        t.1 = t.1.add(&c);
        return;
    }
    let mut holes = Vec::new();
    for (a, ca) in terms.iter_mut() {
        if a.is_inside(ctx, &b) {
            *ca = ca.add(&c);
            holes.push(a.clone());
        }
    }
    for piece in complement(ctx, &b, &holes) {
        terms.push((piece, c.clone()));
    }
}

impl BruhatSchwartz {
    pub fn zero(ctx: PAdicContext) -> Self {
        BruhatSchwartz { ctx, terms: vec![] }
    }

    pub fn indicator(ctx: PAdicContext, ball: Ball) -> Self {
        BruhatSchwartz::from_terms(ctx, vec![(ball, Cyclotomic::one())])
    }

    /// The indicator of `p^level O`.
    pub fn lattice(ctx: PAdicContext, level: i64) -> Self {
        BruhatSchwartz::indicator(ctx, Ball::around_zero(level))
    }

    /// The indicator of the units `O^x`.
    pub fn units(ctx: PAdicContext) -> Self {
        BruhatSchwartz::lattice(ctx, 0).sub(&BruhatSchwartz::lattice(ctx, 1))
    }

    /// Sums possibly overlapping terms.
    pub fn from_terms(ctx: PAdicContext, terms: Vec<(Ball, Cyclotomic)>) -> Self {
        let mut out = Vec::new();
        // coarse balls first keeps splitting shallow
        let mut terms = terms;
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        for (b, c) in terms {
            if !c.is_zero() {
                insert(&ctx, &mut out, b, c);
            }
        }
        BruhatSchwartz::canonical(ctx, out)
    }

    fn canonical(ctx: PAdicContext, mut terms: Vec<(Ball, Cyclotomic)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        loop {
            let mut groups: HashMap<Ball, Vec<usize>> = HashMap::new();
            for (i, (b, _)) in terms.iter().enumerate() {
                groups.entry(b.parent(&ctx)).or_default().push(i);
            }
            let mergeable: Vec<(Ball, Vec<usize>)> = groups
                .into_iter()
                .filter(|(_, idx)| {
                    idx.len() as u64 == ctx.p()
                        && idx.iter().all(|&i| terms[i].1 == terms[idx[0]].1)
                })
                .collect();
            if mergeable.is_empty() {
                break;
            }
            let mut drop = vec![false; terms.len()];
            let mut added = Vec::new();
            for (parent, idx) in mergeable {
                added.push((parent, terms[idx[0]].1.clone()));
                for i in idx {
                    drop[i] = true;
                }
            }
            let mut kept: Vec<(Ball, Cyclotomic)> = terms
                .into_iter()
                .zip(drop)
                .filter(|(_, d)| !d)
                .map(|(t, _)| t)
                .collect();
            kept.extend(added);
            terms = kept;
        }
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        BruhatSchwartz { ctx, terms }
    }

    pub fn ctx(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn terms(&self) -> &[(Ball, Cyclotomic)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Cyclotomic {
        self.terms
            .iter()
            .find(|(b, _)| b.contains(&self.ctx, x))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Cyclotomic::zero)
    }

    pub fn at_zero(&self) -> Cyclotomic {
        self.eval(&Rational::zero())
    }

    fn map_terms(&self, f: impl Fn(&Ball, &Cyclotomic) -> (Ball, Cyclotomic)) -> Self {
        let terms = self.terms.iter().map(|(b, c)| f(b, c)).collect();
        BruhatSchwartz::from_terms(self.ctx, terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "mixed primes");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        BruhatSchwartz::from_terms(self.ctx, terms)
    }

    pub fn neg(&self) -> Self {
        BruhatSchwartz {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Cyclotomic) -> Self {
        if k.is_zero() {
            return BruhatSchwartz::zero(self.ctx);
        }
        BruhatSchwartz {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c.mul(k))).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        BruhatSchwartz {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c.conj())).collect(),
        }
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        let ctx = &self.ctx;
        let mut terms = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.is_inside(ctx, b) {
                    terms.push((a.clone(), ca.mul(cb)));
                } else if b.is_inside(ctx, a) {
                    terms.push((b.clone(), ca.mul(cb)));
                }
            }
        }
        BruhatSchwartz::from_terms(self.ctx, terms)
    }

    /// `x -> f(-x)`.
    pub fn reflect(&self) -> Self {
        self.map_terms(|b, c| (Ball::new(&self.ctx, &-b.center(), b.level()), c.clone()))
    }

    /// `x -> f(a x)` for nonzero `a`.
    pub fn dilate(&self, a: &Rational) -> Self {
        self.map_terms(|b, c| (b.preimage_scale(&self.ctx, a), c.clone()))
    }

    /// `x -> f(x + t)`.
    pub fn shift(&self, t: &Rational) -> Self {
        self.map_terms(|b, c| (b.translate(&self.ctx, &-t), c.clone()))
    }

    /// Refines every ball to at least the given level.
    pub fn refine_to(&self, level: i64) -> Vec<(Ball, Cyclotomic)> {
        self.terms
            .iter()
            .flat_map(|(b, c)| {
                b.refine_to(&self.ctx, level)
                    .into_iter()
                    .map(move |s| (s, c.clone()))
            })
            .collect()
    }

    /// `x -> f(x) psi(a x)`.
    pub fn mul_psi(&self, a: &Rational) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let need = -self.ctx.valuation(a).unwrap();
        let terms = self
            .terms
            .iter()
            .flat_map(|(b, c)| {
                b.refine_to(&self.ctx, need.max(b.level()))
                    .into_iter()
                    .map(move |s| {
                        let v = c.mul(&self.ctx.psi(&(a * s.center())));
                        (s, v)
                    })
            })
            .collect();
        BruhatSchwartz::from_terms(self.ctx, terms)
    }

    /// Integral against the self-dual additive measure.
    pub fn integral(&self) -> Cyclotomic {
        self.terms
            .iter()
            .map(|(b, c)| c.scale(&b.volume(&self.ctx)))
            .sum()
    }

    /// `<f, g> = int f conj(g) dx`.
    pub fn inner(&self, other: &Self) -> Cyclotomic {
        self.mul(&other.conj()).integral()
    }

    /// `(f(x) + f(-x)) / 2`.
    pub fn even_part(&self) -> Self {
        self.add(&self.reflect())
            .scale(&Cyclotomic::from_rational(Rational::new(1.into(), 2.into())))
    }

    pub fn odd_part(&self) -> Self {
        self.sub(&self.reflect())
            .scale(&Cyclotomic::from_rational(Rational::new(1.into(), 2.into())))
    }

    /// Coarsest level among the balls (the support lies in `p^level O` shifts).
    pub fn coarsest_level(&self) -> Option<i64> {
        self.terms.iter().map(|(b, _)| b.level()).min()
    }

    pub fn finest_level(&self) -> Option<i64> {
        self.terms.iter().map(|(b, _)| b.level()).max()
    }

    /// Smallest `m` with the support inside `p^m O`.
    pub fn support_level(&self) -> Option<i64> {
        self.terms
            .iter()
            .map(|(b, _)| match b.valuation(&self.ctx) {
                Some(v) => v.min(b.level()),
                None => b.level(),
            })
            .min()
    }
}

impl fmt::Display for BruhatSchwartz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} coeff {}", b, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BruhatSchwartz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    #[test]
    fn overlapping_terms_disjointify() {
        let c = ctx(3);
        let f = BruhatSchwartz::from_terms(
            c,
            vec![
                (Ball::around_zero(0), Cyclotomic::one()),
                (Ball::new(&c, &int(1), 2), Cyclotomic::from_int(2)),
            ],
        );
        assert_eq!(f.eval(&int(1)), Cyclotomic::from_int(3));
        assert_eq!(f.eval(&int(4)), Cyclotomic::one());
        assert_eq!(f.eval(&rat(1, 3)), Cyclotomic::zero());
        // integral = 1 + 2/9
        assert_eq!(f.integral(), Cyclotomic::from_rational(rat(11, 9)));
    }

    #[test]
    fn siblings_merge() {
        let c = ctx(5);
        let pieces = Ball::around_zero(0)
            .children(&c)
            .into_iter()
            .map(|b| (b, Cyclotomic::one()))
            .collect();
        assert_eq!(
            BruhatSchwartz::from_terms(c, pieces),
            BruhatSchwartz::lattice(c, 0)
        );
    }

    #[test]
    fn units_vanish_at_zero() {
        let f = BruhatSchwartz::units(ctx(2));
        assert!(f.at_zero().is_zero());
        assert!(f.eval(&int(3)).is_one());
        assert_eq!(f.integral(), Cyclotomic::from_rational(rat(1, 2)));
    }
}
