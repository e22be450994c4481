//! Functions on `k^x` that depend only on the valuation and on the unit part
//! modulo `p^r`, with eventually geometric tails towards zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::rational::{pow_p, residue_mod, Rational};
use crate::exact::{Cyclotomic, RatFuncError, RationalFunction};
use crate::padic::{Ball, BruhatSchwartz, PAdicContext, PadicError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellError {
    #[error("{condition} is not summable: tail ratio {ratio} has |ratio| >= 1")]
    NotSummable { condition: &'static str, ratio: String },
    #[error("function must be even")]
    NotEven,
    #[error("tail ratio {0} must have rational squared modulus")]
    BadRatio(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    RatFunc(#[from] RatFuncError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// Unit residues modulo `p^r` in increasing order.
pub fn unit_residues(p: u64, r: u32) -> Vec<u64> {
    (1..p.pow(r)).filter(|u| u % p != 0).collect()
}

fn residue_index(p: u64, u: u64) -> usize {
    (u - u / p - 1) as usize
}

/// Depth below which the quadratic integral over a residue ball vanishes.
pub fn gauss_depth(p: u64, r: u32) -> i64 {
    if p == 2 {
        r as i64 + 1
    } else {
        r as i64
    }
}

/// `rho = c alpha^a Y^y`, with `|alpha| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailRatio {
    value: RationalFunction,
    abs_sq: Rational,
}

impl TailRatio {
    pub fn new(p: u64, c: Cyclotomic, a_exp: i64, y_exp: i64) -> Result<Self, ShellError> {
        let n = c
            .norm_sq()
            .to_rational()
            .ok_or_else(|| ShellError::BadRatio(c.to_string()))?;
        Ok(TailRatio {
            value: RationalFunction::monomial(p, c, 0, a_exp, y_exp),
            abs_sq: n * pow_p(p, -y_exp),
        })
    }

    pub fn value(&self) -> &RationalFunction {
        &self.value
    }

    pub fn abs_sq(&self) -> &Rational {
        &self.abs_sq
    }

    pub fn is_contracting(&self) -> bool {
        self.abs_sq < Rational::from_integer(1.into())
    }

    pub fn conj(&self) -> Self {
        TailRatio {
            value: self.value.conj(),
            abs_sq: self.abs_sq.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        TailRatio {
            value: self.value.mul(&other.value),
            abs_sq: &self.abs_sq * &other.abs_sq,
        }
    }
}

/// `W(m, c) = coeffs[(m - onset) mod period][c] * ratio^((m - onset) div period)` for `m >= onset`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellTail {
    pub period: usize,
    pub coeffs: Vec<Vec<RationalFunction>>,
    pub ratio: TailRatio,
}

impl ShellTail {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }
}

#[derive(Debug, Clone)]
pub struct ShellFunction {
    ctx: PAdicContext,
    precision: u32,
    start: i64,
    rows: Vec<Vec<RationalFunction>>,
    tails: Vec<ShellTail>,
}

/// Quadratic Fourier transform split into the table part and one part per tail.
#[derive(Debug, Clone)]
pub struct F2Parts {
    pub table: RationalFunction,
    pub tails: Vec<RationalFunction>,
}

impl F2Parts {
    pub fn total(&self) -> RationalFunction {
        self.tails.iter().fold(self.table.clone(), |acc, t| acc.add(t))
    }
}

pub fn default_precision(p: u64) -> u32 {
    if p == 2 {
        3
    } else {
        1
    }
}

impl ShellFunction {
    pub fn new(
        ctx: PAdicContext,
        precision: u32,
        start: i64,
        rows: Vec<Vec<RationalFunction>>,
        tails: Vec<ShellTail>,
    ) -> Result<Self, ShellError> {
        let p = ctx.p();
        if precision == 0 || (p == 2 && precision < 3) {
            return Err(ShellError::Shape(format!("precision {precision} too small for p = {p}")));
        }
        let n = unit_residues(p, precision).len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(ShellError::Shape(format!("row of length {} (expected {n})", bad.len())));
        }
        for t in &tails {
            if t.period == 0 || t.coeffs.len() != t.period || t.coeffs.iter().any(|c| c.len() != n) {
                return Err(ShellError::Shape("tail coefficients must be period x residues".into()));
            }
        }
        Ok(ShellFunction {
            ctx,
            precision,
            start,
            rows,
            tails,
        })
    }

    pub fn zero(ctx: PAdicContext) -> Self {
        ShellFunction::new(ctx, default_precision(ctx.p()), 0, vec![], vec![]).unwrap()
    }

    /// `1_{O^x}`.
    pub fn units(ctx: PAdicContext) -> Self {
        let n = unit_residues(ctx.p(), default_precision(ctx.p())).len();
        ShellFunction::new(
            ctx,
            default_precision(ctx.p()),
            0,
            vec![vec![RationalFunction::one(); n]],
            vec![],
        )
        .unwrap()
    }

    /// Constant on each shell: `values[m - start]`, then `Σ coeff_i * ratio^(m - onset)`.
    pub fn radial(
        ctx: PAdicContext,
        start: i64,
        values: Vec<RationalFunction>,
        tails: Vec<(RationalFunction, TailRatio)>,
    ) -> Self {
        let r = default_precision(ctx.p());
        let n = unit_residues(ctx.p(), r).len();
        let rows = values.into_iter().map(|v| vec![v; n]).collect();
        let tails = tails
            .into_iter()
            .map(|(c, ratio)| ShellTail {
                period: 1,
                coeffs: vec![vec![c; n]],
                ratio,
            })
            .collect();
        ShellFunction::new(ctx, r, start, rows, tails).unwrap()
    }

    /// Rows given per unit square class (see `PAdicContext::unit_class`).
    pub fn from_square_classes(
        ctx: PAdicContext,
        start: i64,
        rows: Vec<Vec<RationalFunction>>,
    ) -> Result<Self, ShellError> {
        let r = default_precision(ctx.p());
        let classes: Vec<usize> = unit_residues(ctx.p(), r)
            .into_iter()
            .map(|u| ctx.unit_class(&Rational::from_integer(u.into())))
            .collect();
        let rows = rows
            .into_iter()
            .map(|row| {
                if row.len() != ctx.unit_class_count() {
                    return Err(ShellError::Shape("one value per unit square class".into()));
                }
                Ok(classes.iter().map(|&c| row[c].clone()).collect())
            })
            .collect::<Result<Vec<_>, _>>()?;
        ShellFunction::new(ctx, r, start, rows, vec![])
    }

    pub fn ctx(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn onset(&self) -> i64 {
        self.start + self.rows.len() as i64
    }

    pub fn rows(&self) -> &[Vec<RationalFunction>] {
        &self.rows
    }

    pub fn tails(&self) -> &[ShellTail] {
        &self.tails
    }

    pub fn residues(&self) -> Vec<u64> {
        unit_residues(self.p(), self.precision)
    }

    pub fn modulus(&self) -> u64 {
        self.p().pow(self.precision)
    }

    /// Index of the unit `u` among `residues()`.
    pub fn index_of(&self, u: &Rational) -> usize {
        let m = self.modulus();
        let r = residue_mod(u, &BigInt::from(m)).to_u64().unwrap();
        residue_index(self.p(), r)
    }

    /// Value of tail `k` alone on shell `m >= onset`.
    pub fn tail_value(&self, k: usize, m: i64, idx: usize) -> RationalFunction {
        let t = &self.tails[k];
        let d = m - self.onset();
        let period = t.period as i64;
        let q = d.div_euclid(period);
        let phase = d.rem_euclid(period) as usize;
        t.coeffs[phase][idx].mul(&t.ratio.value.pow(q).expect("monomial ratio"))
    }

    pub fn value(&self, m: i64, idx: usize) -> RationalFunction {
        if m < self.start {
            return RationalFunction::zero();
        }
        if m < self.onset() {
            return self.rows[(m - self.start) as usize][idx].clone();
        }
        (0..self.tails.len()).fold(RationalFunction::zero(), |acc, k| acc.add(&self.tail_value(k, m, idx)))
    }

    pub fn eval(&self, x: &Rational) -> Result<RationalFunction, ShellError> {
        let m = self.ctx.valuation(x).ok_or(PadicError::ZeroArgument)?;
        let u = x * pow_p(self.p(), -m);
        Ok(self.value(m, self.index_of(&u)))
    }

    fn neg_index(&self) -> Vec<usize> {
        let m = self.modulus();
        self.residues()
            .iter()
            .map(|&u| residue_index(self.p(), m - u))
            .collect()
    }

    pub fn is_even(&self) -> bool {
        let neg = self.neg_index();
        let row_even = |row: &Vec<RationalFunction>| row.iter().enumerate().all(|(i, v)| *v == row[neg[i]]);
        self.rows.iter().all(row_even) && self.tails.iter().all(|t| t.coeffs.iter().all(row_even))
    }

    pub fn conj(&self) -> Self {
        let conj_row = |row: &Vec<RationalFunction>| row.iter().map(|v| v.conj()).collect::<Vec<_>>();
        ShellFunction {
            ctx: self.ctx,
            precision: self.precision,
            start: self.start,
            rows: self.rows.iter().map(conj_row).collect(),
            tails: self
                .tails
                .iter()
                .map(|t| ShellTail {
                    period: t.period,
                    coeffs: t.coeffs.iter().map(conj_row).collect(),
                    ratio: t.ratio.conj(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, k: &RationalFunction) -> Self {
        let scale_row = |row: &Vec<RationalFunction>| row.iter().map(|v| v.mul(k)).collect::<Vec<_>>();
        ShellFunction {
            ctx: self.ctx,
            precision: self.precision,
            start: self.start,
            rows: self.rows.iter().map(scale_row).collect(),
            tails: self
                .tails
                .iter()
                .map(|t| ShellTail {
                    period: t.period,
                    coeffs: t.coeffs.iter().map(scale_row).collect(),
                    ratio: t.ratio.clone(),
                })
                .collect(),
        }
    }

    /// Decides summability of `W |x|^{-1}` and `W^2 |x|^{-1}` from the tail ratios.
    pub fn check_summable(&self) -> Result<(), ShellError> {
        let live: Vec<&ShellTail> = self.tails.iter().filter(|t| !t.is_zero()).collect();
        for t in &live {
            if !t.ratio.is_contracting() {
                return Err(ShellError::NotSummable {
                    condition: "W|x|^{-1}",
                    ratio: t.ratio.value.to_string(),
                });
            }
        }
        for a in &live {
            for b in &live {
                let prod = a.ratio.mul(&b.ratio);
                if !prod.is_contracting() {
                    return Err(ShellError::NotSummable {
                        condition: "W^2|x|^{-1}",
                        ratio: prod.value.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// `Σ_{m >= m0} Y^{y m} W_k(m, c)` per residue, for `m0 >= onset`.
    fn tail_block_sum(&self, k: usize, m0: i64, y: i64) -> Result<Vec<RationalFunction>, ShellError> {
        let p = self.p();
        let t = &self.tails[k];
        let period = t.period as i64;
        let n = self.residues().len();
        let denom = RationalFunction::one().sub(&t.ratio.value.mul(&RationalFunction::y_pow(p, y * period)));
        let inv = denom.inv()?;
        Ok((0..n)
            .map(|c| {
                let mut acc = RationalFunction::zero();
                for i in 0..period {
                    let m = m0 + i;
                    acc = acc.add(&self.tail_value(k, m, c).mul(&RationalFunction::y_pow(p, y * m)));
                }
                acc.mul(&inv)
            })
            .collect())
    }

    /// `∫ W dx`.
    pub fn integral(&self) -> Result<RationalFunction, ShellError> {
        let p = self.p();
        let vol = pow_p(p, -(self.precision as i64));
        let mut total = RationalFunction::zero();
        for (i, row) in self.rows.iter().enumerate() {
            let m = self.start + i as i64;
            let s = row.iter().fold(RationalFunction::zero(), |a, v| a.add(v));
            total = total.add(&s.scale(&Cyclotomic::from_rational(pow_p(p, -m))));
        }
        for k in 0..self.tails.len() {
            let sums = self.tail_block_sum(k, self.onset(), 2)?;
            total = sums.iter().fold(total, |a, v| a.add(v));
        }
        Ok(total.scale(&Cyclotomic::from_rational(vol)))
    }

    /// `∫ W(x) phi(x) |x|^{-1} dx`.
    pub fn integral_against(&self, phi: &BruhatSchwartz) -> Result<RationalFunction, ShellError> {
        let p = self.p();
        let ctx = self.ctx;
        let r = self.precision as i64;
        let Some(lo) = phi.support_level() else {
            return Ok(RationalFunction::zero());
        };
        // phi is constant near zero from level `flat` on
        let zero_ball = phi.terms().iter().find(|(b, _)| b.contains_zero());
        let flat = match zero_ball {
            Some((b, _)) => b.level(),
            None => phi.finest_level().unwrap(),
        };
        let lo = lo.max(self.start);
        let hi = flat.max(self.onset());
        let residues = self.residues();
        let mut total = RationalFunction::zero();
        for m in lo..hi {
            for (i, &u) in residues.iter().enumerate() {
                let w = self.value(m, i);
                if w.is_zero() {
                    continue;
                }
                let center = Rational::from_integer(u.into()) * pow_p(p, m);
                let piece = BruhatSchwartz::indicator(ctx, Ball::new(&ctx, &center, m + r));
                let int = phi.mul(&piece).integral();
                total = total.add(&w.scale(&int.scale(&pow_p(p, m))));
            }
        }
        if zero_ball.is_some() {
            let at_zero = phi.at_zero();
            for k in 0..self.tails.len() {
                let sums = self.tail_block_sum(k, hi, 0)?;
                let s = sums.iter().fold(RationalFunction::zero(), |a, v| a.add(v));
                total = total.add(&s.scale(&at_zero.scale(&pow_p(p, -r))));
            }
        }
        Ok(total)
    }

    /// `∫_{c + p^r O} psi(s x^2) dx`.
    fn residue_gauss(&self, s_val: i64, s: &Rational, u: u64) -> Cyclotomic {
        let p = self.p();
        let r = self.precision;
        let vol = pow_p(p, -(r as i64));
        if s_val >= 0 {
            return Cyclotomic::from_rational(vol);
        }
        if s_val < -gauss_depth(p, r) {
            return Cyclotomic::zero();
        }
        let c = Rational::from_integer(u.into());
        self.ctx.psi(&(s * &c * &c)).scale(&vol)
    }

    /// `F_2 W(t) = ∫ W(x) psi(t x^2) dx` through Gauss integrals over residue balls.
    pub fn f2_gauss(&self, t: &Rational) -> Result<F2Parts, ShellError> {
        let p = self.p();
        let j = self.ctx.valuation(t).ok_or(PadicError::ZeroArgument)?;
        let kappa = gauss_depth(p, self.precision);
        let residues = self.residues();
        let shell = |m: i64, vals: &dyn Fn(usize) -> RationalFunction| -> RationalFunction {
            let s = t * pow_p(p, 2 * m);
            let mut acc = RationalFunction::zero();
            for (i, &u) in residues.iter().enumerate() {
                let g = self.residue_gauss(j + 2 * m, &s, u);
                if g.is_zero() {
                    continue;
                }
                acc = acc.add(&vals(i).scale(&g));
            }
            acc.scale(&Cyclotomic::from_rational(pow_p(p, -m)))
        };
        let mut table = RationalFunction::zero();
        for (idx, row) in self.rows.iter().enumerate() {
            let m = self.start + idx as i64;
            if j + 2 * m < -kappa {
                continue;
            }
            table = table.add(&shell(m, &|i| row[i].clone()));
        }
        let onset = self.onset();
        let stable = (-j + 1).div_euclid(2).max(onset); // first m with j + 2m >= 0
        let first = (-kappa - j + 1).div_euclid(2).max(onset);
        let vol = Cyclotomic::from_rational(pow_p(p, -(self.precision as i64)));
        let mut tails = Vec::new();
        for k in 0..self.tails.len() {
            let mut acc = RationalFunction::zero();
            for m in first..stable {
                acc = acc.add(&shell(m, &|i| self.tail_value(k, m, i)));
            }
            let sums = self.tail_block_sum(k, stable, 2)?;
            let s = sums.iter().fold(RationalFunction::zero(), |a, v| a.add(v));
            tails.push(acc.add(&s.scale(&vol)));
        }
        Ok(F2Parts { table, tails })
    }

    /// `f~(x) = f(sqrt x)` on squares and 0 elsewhere; tails keep their index.
    pub fn tilde_lift(&self) -> Result<ShellFunction, ShellError> {
        if !self.is_even() {
            return Err(ShellError::NotEven);
        }
        let p = self.p();
        let r = self.precision;
        let r_lift = if p == 2 { r + 1 } else { r };
        let lift_mod = p.pow(r_lift);
        let base_mod = self.modulus();
        // for each residue w mod p^{r_lift}: index of a square root mod p^r
        let roots: Vec<Option<usize>> = unit_residues(p, r_lift)
            .into_iter()
            .map(|w| {
                unit_residues(p, r_lift)
                    .into_iter()
                    .find(|x| (x * x) % lift_mod == w)
                    .map(|x| residue_index(p, x % base_mod))
            })
            .collect();
        let n_lift = roots.len();
        let lift_row = |vals: &dyn Fn(usize) -> RationalFunction| -> Vec<RationalFunction> {
            roots
                .iter()
                .map(|r| match r {
                    Some(i) => vals(*i),
                    None => RationalFunction::zero(),
                })
                .collect()
        };
        let zero_row = vec![RationalFunction::zero(); n_lift];
        let mut rows = Vec::new();
        for row in &self.rows {
            rows.push(lift_row(&|i| row[i].clone()));
            rows.push(zero_row.clone());
        }
        let tails = self
            .tails
            .iter()
            .map(|t| {
                let mut coeffs = Vec::new();
                for phase in &t.coeffs {
                    coeffs.push(lift_row(&|i| phase[i].clone()));
                    coeffs.push(zero_row.clone());
                }
                ShellTail {
                    period: 2 * t.period,
                    coeffs,
                    ratio: t.ratio.clone(),
                }
            })
            .collect();
        ShellFunction::new(self.ctx, r_lift, 2 * self.start, rows, tails)
    }

    /// `∫ g(y) |y|^{-1/2} psi(t y) dy` with `g = self`, split like `f2_gauss`.
    pub fn fourier_half_weight(&self, t: &Rational) -> Result<F2Parts, ShellError> {
        let p = self.p();
        let j = self.ctx.valuation(t).ok_or(PadicError::ZeroArgument)?;
        let r = self.precision as i64;
        let residues = self.residues();
        // shell v: Σ_c g(v, c) Y^{-v} p^{-v-r} psi(t p^v c), zero unless j + v + r >= 0
        let shell = |v: i64, vals: &dyn Fn(usize) -> RationalFunction| -> RationalFunction {
            let mut acc = RationalFunction::zero();
            for (i, &u) in residues.iter().enumerate() {
                let val = vals(i);
                if val.is_zero() {
                    continue;
                }
                let phase = self.ctx.psi(&(t * pow_p(p, v) * Rational::from_integer(u.into())));
                acc = acc.add(&val.scale(&phase));
            }
            acc.mul(&RationalFunction::y_pow(p, v)).scale(&Cyclotomic::from_rational(pow_p(p, -r)))
        };
        let mut table = RationalFunction::zero();
        for (idx, row) in self.rows.iter().enumerate() {
            let v = self.start + idx as i64;
            if j + v + r < 0 {
                continue;
            }
            table = table.add(&shell(v, &|i| row[i].clone()));
        }
        let onset = self.onset();
        let stable = (-j).max(onset);
        let first = (-j - r).max(onset);
        let vol = Cyclotomic::from_rational(pow_p(p, -r));
        let mut tails = Vec::new();
        for k in 0..self.tails.len() {
            let mut acc = RationalFunction::zero();
            for v in first..stable {
                acc = acc.add(&shell(v, &|i| self.tail_value(k, v, i)));
            }
            let sums = self.tail_block_sum(k, stable, 1)?;
            let s = sums.iter().fold(RationalFunction::zero(), |a, v| a.add(v));
            tails.push(acc.add(&s.scale(&vol)));
        }
        Ok(F2Parts { table, tails })
    }

    /// `F_2 W(t) = 2|2|^{-1} F(W~ |.|^{-1/2})(t)`, computed from the lift.
    pub fn f2_tilde(&self, t: &Rational) -> Result<F2Parts, ShellError> {
        let lift = self.tilde_lift()?;
        let parts = lift.fourier_half_weight(t)?;
        let factor = Cyclotomic::from_rational(two_over_abs_two(self.p()));
        Ok(F2Parts {
            table: parts.table.scale(&factor),
            tails: parts.tails.iter().map(|x| x.scale(&factor)).collect(),
        })
    }
}

/// `2 |2|^{-1}`.
pub fn two_over_abs_two(p: u64) -> Rational {
    if p == 2 {
        Rational::from_integer(4.into())
    } else {
        Rational::from_integer(2.into())
    }
}

impl fmt::Display for ShellFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let res = self.residues();
        writeln!(f, "shell(p={}, residues mod {})", self.p(), self.modulus())?;
        for (i, row) in self.rows.iter().enumerate() {
            let vals: Vec<String> = res.iter().zip(row).map(|(u, v)| format!("{u}:{v}")).collect();
            writeln!(f, "  v={} [{}]", self.start + i as i64, vals.join(", "))?;
        }
        for t in &self.tails {
            writeln!(f, "  v>={} tail ratio {} period {}", self.onset(), t.ratio.value, t.period)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::fourier::quad_fourier;

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
    fn units_lift_is_square_indicator() {
        let c = ctx(5);
        let lift = ShellFunction::units(c).tilde_lift().unwrap();
        assert!(lift.eval(&int(4)).unwrap().is_one());
        assert!(lift.eval(&int(2)).unwrap().is_zero());
        assert!(lift.eval(&int(5)).unwrap().is_zero());
        let c2 = ctx(2);
        let lift = ShellFunction::units(c2).tilde_lift().unwrap();
        assert!(lift.eval(&int(17)).unwrap().is_one());
        assert!(lift.eval(&int(5)).unwrap().is_zero());
    }

    #[test]
    fn factorization_matches_gauss_and_bruhat_schwartz() {
        for p in [2u64, 3, 5] {
            let c = ctx(p);
            let w = ShellFunction::units(c);
            let phi = BruhatSchwartz::units(c);
            for v in -5..=2 {
                for u in [1i64, 3, 7] {
                    if u as u64 % p == 0 {
                        continue;
                    }
                    let t = int(u) * pow_p(p, v);
                    let g = w.f2_gauss(&t).unwrap().total();
                    let h = w.f2_tilde(&t).unwrap().total();
                    let b = RationalFunction::constant(quad_fourier(&phi, &t));
                    assert_eq!(g, b, "p={p} t={t}");
                    assert_eq!(h, b, "p={p} t={t}");
                }
            }
        }
    }

    #[test]
    fn geometric_tails_agree_between_routes() {
        for p in [2u64, 3, 5] {
            let w = geometric(ctx(p));
            for v in -9..=3 {
                let t = int(1) * pow_p(p, v);
                let g = w.f2_gauss(&t).unwrap();
                let h = w.f2_tilde(&t).unwrap();
                assert_eq!(g.total(), h.total(), "p={p} v={v}");
            }
        }
    }

    #[test]
    fn integrals() {
        let c = ctx(3);
        let w = geometric(c);
        let total = w.integral().unwrap().to_cyclotomic().unwrap();
        let mut approx = 0.0;
        for m in -1..60 {
            let val = w.value(m, 0).to_cyclotomic().unwrap().embed().re;
            approx += val * 3f64.powi(-m as i32) * (2.0 / 3.0);
        }
        assert!((total.embed().re - approx).abs() < 1e-9);
        let phi = BruhatSchwartz::lattice(c, 0);
        let u = ShellFunction::units(c);
        assert_eq!(
            u.integral_against(&phi).unwrap(),
            RationalFunction::from_rational(rat(2, 3))
        );
    }

    #[test]
    fn summability_is_decided() {
        let c = ctx(3);
        let bad = TailRatio::new(3, Cyclotomic::one(), 0, 0).unwrap();
        let w = ShellFunction::radial(c, 0, vec![], vec![(RationalFunction::one(), bad)]);
        assert!(matches!(w.check_summable(), Err(ShellError::NotSummable { .. })));
        assert!(geometric(c).check_summable().is_ok());
    }
}
