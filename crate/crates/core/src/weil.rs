//! The local Weil representation of the metaplectic cover on Bruhat-Schwartz
//! functions of `V = {X in M_2 : tr X = 0}` with `q(X) = -det X`, for odd `p`.
//!
//! Functions are stored on a lattice window: coordinate `i` ranges over
//! `p^{lo_i} O / p^{hi_i} O`. Each value is an integral combination of
//! `p^K`-th roots of unity, times one cyclotomic scalar for the whole function,
//! so Fourier transforms and character twists only shift exponents.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::rational::{pow_p, residue_mod, Rational};
use crate::exact::cyclotomic::RootSum;
use crate::exact::Cyclotomic;
use crate::fourier::{chi_psi, weil_index, FourierError};
use crate::metaplectic::{product_sign, Generator, MetaplecticElement, MetaplecticError, Sl2};
use crate::padic::{Ball, PAdicContext, PadicError, Place};

/// Coordinates are ordered `(x_+, x_0, x_-)` for `x_+ e_+ + x_0 e_0 + x_- e_-`.
pub const PLUS: usize = 0;
pub const ZERO: usize = 1;
pub const MINUS: usize = 2;

const MAX_POINTS: usize = 40_000;
const MAX_CELLS: usize = 6_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("exact Weil representation needs odd p, got {0}")]
    EvenPrime(u64),
    #[error("lattice window with {0} points exceeds the working limit")]
    WindowTooLarge(usize),
    #[error("boxes overlap")]
    Overlap,
    #[error("functions live on different primes")]
    PrimeMismatch,
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Metaplectic(#[from] MetaplecticError),
}

pub type Vector = [Rational; 3];

/// The trace-zero matrix `[[x_0, x_+], [x_-, -x_0]]` as rows.
pub fn to_matrix(x: &Vector) -> [[Rational; 2]; 2] {
    [
        [x[ZERO].clone(), x[PLUS].clone()],
        [x[MINUS].clone(), -&x[ZERO]],
    ]
}

fn from_matrix(m: &[[Rational; 2]; 2]) -> Vector {
    [m[0][1].clone(), m[0][0].clone(), m[1][0].clone()]
}

/// `q(X) = -det X`
pub fn q_form(x: &Vector) -> Rational {
    let m = to_matrix(x);
    -(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0])
}

/// `q(X, Y) = q(X + Y) - q(X) - q(Y)`
pub fn q_bilinear(x: &Vector, y: &Vector) -> Rational {
    let s = [&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2]];
    q_form(&s) - q_form(x) - q_form(y)
}

/// An orthogonal basis `{e_0, a e_+ + e_-, a e_+ - e_-}` and its `q`-values `(1, a, -a)`.
pub fn orthogonal_basis(a: &Rational) -> ([Vector; 3], [Rational; 3]) {
    let z = Rational::zero;
    let one = Rational::from_integer(1.into());
    let basis = [
        [z(), one.clone(), z()],
        [a.clone(), z(), one.clone()],
        [a.clone(), z(), -one],
    ];
    let values = [q_form(&basis[0]), q_form(&basis[1]), q_form(&basis[2])];
    (basis, values)
}

/// `gamma(psi, V) = Π gamma(psi_{q(f_i)})` over an orthogonal basis `f_i`.
pub fn weil_constant(ctx: &PAdicContext, basis: &[Vector; 3]) -> Result<Cyclotomic, WeilError> {
    let mut g = Cyclotomic::one();
    for f in basis {
        g = g.mul(&weil_index(ctx, &q_form(f))?);
    }
    Ok(g)
}

pub fn gamma_v(ctx: &PAdicContext) -> Result<Cyclotomic, WeilError> {
    let (basis, _) = orthogonal_basis(&Rational::from_integer(1.into()));
    weil_constant(ctx, &basis)
}

fn ppow(p: u64, k: i64) -> usize {
    (p as usize).pow(k.max(0) as u32)
}

/// Element of `Z[mu_{p^K}]`, dense in the exponent; empty means zero.
type Ring = Vec<i128>;

fn add_rotated(acc: &mut Ring, v: &Ring, shift: usize, n: usize) {
    if v.is_empty() {
        return;
    }
    if acc.is_empty() {
        acc.resize(n, 0);
    }
    for (j, &c) in v.iter().enumerate() {
        if c != 0 {
            acc[(j + shift) % n] += c;
        }
    }
}

fn is_zero_ring(v: &Ring) -> bool {
    v.iter().all(|&c| c == 0)
}

/// A Bruhat-Schwartz function on `V`, constant on cosets of `Π p^{hi_i} O`
/// and supported in `Π p^{lo_i} O`.
#[derive(Debug, Clone)]
pub struct BruhatSchwartzV {
    ctx: PAdicContext,
    lo: [i64; 3],
    hi: [i64; 3],
    order: i64,
    scale: Cyclotomic,
    values: Vec<Ring>,
}

impl BruhatSchwartzV {
    fn blank(ctx: PAdicContext, lo: [i64; 3], hi: [i64; 3], order: i64) -> Result<Self, WeilError> {
        if ctx.p() == 2 {
            return Err(WeilError::EvenPrime(2));
        }
        let hi = [hi[0].max(lo[0]), hi[1].max(lo[1]), hi[2].max(lo[2])];
        let points: usize = (0..3).map(|i| ppow(ctx.p(), hi[i] - lo[i])).product();
        if points > MAX_POINTS || points * ppow(ctx.p(), order) > MAX_CELLS {
            return Err(WeilError::WindowTooLarge(points));
        }
        Ok(BruhatSchwartzV {
            ctx,
            lo,
            hi,
            order,
            scale: Cyclotomic::one(),
            values: vec![Vec::new(); points],
        })
    }

    /// `Σ c_k 1_{B_k}` over pairwise disjoint boxes `B_k = B_+ x B_0 x B_-`.
    pub fn from_boxes(ctx: PAdicContext, boxes: &[([Ball; 3], i64)]) -> Result<Self, WeilError> {
        for (i, (a, _)) in boxes.iter().enumerate() {
            for (b, _) in &boxes[..i] {
                let disjoint = (0..3).any(|k| !a[k].is_inside(&ctx, &b[k]) && !b[k].is_inside(&ctx, &a[k]));
                if !disjoint {
                    return Err(WeilError::Overlap);
                }
            }
        }
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for (bx, _) in boxes {
            for k in 0..3 {
                let n = bx[k].level();
                let v = bx[k].valuation(&ctx).unwrap_or(n);
                lo[k] = lo[k].min(v.min(n));
                hi[k] = hi[k].max(n);
            }
        }
        if boxes.is_empty() {
            lo = [0; 3];
            hi = [0; 3];
        }
        let mut f = Self::blank(ctx, lo, hi, 0)?;
        for idx in 0..f.values.len() {
            let x = f.point(idx);
            let c: i128 = boxes
                .iter()
                .filter(|(bx, _)| (0..3).all(|k| bx[k].contains(&ctx, &x[k])))
                .map(|(_, c)| *c as i128)
                .sum();
            if c != 0 {
                f.values[idx] = vec![c];
            }
        }
        Ok(f)
    }

    /// `1_{p^{n_+} O x p^{n_0} O x p^{n_-} O}`
    pub fn lattice(ctx: PAdicContext, levels: [i64; 3]) -> Result<Self, WeilError> {
        let bx = [
            Ball::around_zero(levels[0]),
            Ball::around_zero(levels[1]),
            Ball::around_zero(levels[2]),
        ];
        Self::from_boxes(ctx, &[(bx, 1)])
    }

    pub fn ctx(&self) -> &PAdicContext {
        &self.ctx
    }

    pub fn window(&self) -> ([i64; 3], [i64; 3]) {
        (self.lo, self.hi)
    }

    fn dims(&self) -> [usize; 3] {
        let p = self.ctx.p();
        [
            ppow(p, self.hi[0] - self.lo[0]),
            ppow(p, self.hi[1] - self.lo[1]),
            ppow(p, self.hi[2] - self.lo[2]),
        ]
    }

    fn ring_len(&self) -> usize {
        ppow(self.ctx.p(), self.order)
    }

    fn index(&self, r: [usize; 3]) -> usize {
        let d = self.dims();
        r[0] + d[0] * (r[1] + d[1] * r[2])
    }

    fn residues(&self, idx: usize) -> [usize; 3] {
        let d = self.dims();
        [idx % d[0], (idx / d[0]) % d[1], idx / (d[0] * d[1])]
    }

    fn point(&self, idx: usize) -> Vector {
        let r = self.residues(idx);
        let p = self.ctx.p();
        [0, 1, 2].map(|k| Rational::from_integer((r[k] as i64).into()) * pow_p(p, self.lo[k]))
    }

    fn lookup(&self, y: &Vector) -> Option<usize> {
        let p = self.ctx.p();
        let d = self.dims();
        let mut r = [0usize; 3];
        for k in 0..3 {
            if let Some(v) = self.ctx.valuation(&y[k]) {
                if v < self.lo[k] {
                    return None;
                }
                let scaled = &y[k] * pow_p(p, -self.lo[k]);
                r[k] = residue_mod(&scaled, &BigInt::from(d[k] as u64)).to_usize().unwrap();
            }
        }
        Some(self.index(r))
    }

    fn to_cyclotomic(&self, v: &Ring) -> Cyclotomic {
        if v.is_empty() {
            return Cyclotomic::zero();
        }
        let mut s = RootSum::new(self.ring_len() as u64);
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                s.add_root(j as i64, &Rational::from_integer(c.into()));
            }
        }
        s.finish()
    }

    pub fn eval(&self, x: &Vector) -> Cyclotomic {
        match self.lookup(x) {
            Some(idx) => self.to_cyclotomic(&self.values[idx]).mul(&self.scale),
            None => Cyclotomic::zero(),
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut f = self.clone();
        f.scale = f.scale.mul(c);
        f
    }

    fn lift_order(&mut self, k: i64) {
        if k <= self.order {
            return;
        }
        let n = ppow(self.ctx.p(), k);
        let step = ppow(self.ctx.p(), k - self.order);
        for v in self.values.iter_mut().filter(|v| !v.is_empty()) {
            let mut w = vec![0i128; n];
            for (j, &c) in v.iter().enumerate() {
                w[j * step] = c;
            }
            *v = w;
        }
        self.order = k;
    }

    /// The same function on a larger window.
    fn refine(&self, lo: [i64; 3], hi: [i64; 3]) -> Result<Self, WeilError> {
        let lo = [0, 1, 2].map(|k| lo[k].min(self.lo[k]));
        let hi = [0, 1, 2].map(|k| hi[k].max(self.hi[k]));
        if lo == self.lo && hi == self.hi {
            return Ok(self.clone());
        }
        let mut f = Self::blank(self.ctx, lo, hi, self.order)?;
        f.scale = self.scale.clone();
        let p = self.ctx.p();
        let old = self.dims();
        let step = [0, 1, 2].map(|k| ppow(p, self.lo[k] - lo[k]));
        for idx in 0..f.values.len() {
            let r = f.residues(idx);
            if (0..3).any(|k| r[k] % step[k] != 0) {
                continue;
            }
            let s = [0, 1, 2].map(|k| (r[k] / step[k]) % old[k]);
            f.values[idx] = self.values[self.index(s)].clone();
        }
        Ok(f)
    }

    /// `X -> psi(x q(X)) phi(X)`
    pub fn twist_by_q(&self, x: &Rational) -> Result<Self, WeilError> {
        let v = match self.ctx.valuation(x) {
            None => return Ok(self.clone()),
            Some(v) => v,
        };
        let lo = self.lo;
        let mut hi = self.hi;
        hi[ZERO] = hi[ZERO].max(-v - lo[ZERO]).max((-v + 1).div_euclid(2));
        hi[MINUS] = hi[MINUS].max(-v - lo[PLUS]);
        hi[PLUS] = hi[PLUS].max(-v - lo[MINUS]);
        if hi[PLUS] + hi[MINUS] < -v {
            let need = -v - hi[PLUS] - hi[MINUS];
            hi[PLUS] += need;
        }
        let mut f = self.refine(lo, hi)?;
        let min_q = (2 * lo[ZERO]).min(lo[PLUS] + lo[MINUS]);
        let k = f.order.max(-(v + min_q)).max(0);
        f.lift_order(k);
        let n = f.ring_len();
        let p = self.ctx.p();
        for idx in 0..f.values.len() {
            if f.values[idx].is_empty() {
                continue;
            }
            let (r, kk) = self.ctx.fractional_part(&(x * q_form(&f.point(idx))));
            let shift = r as usize * ppow(p, k - kk as i64);
            let mut acc = Vec::new();
            add_rotated(&mut acc, &f.values[idx], shift, n);
            f.values[idx] = acc;
        }
        Ok(f)
    }

    /// `X -> phi(L X)` for an invertible rational matrix `L`.
    pub fn pullback(&self, l: &[[Rational; 3]; 3]) -> Result<Self, WeilError> {
        let linv = invert3(l);
        let val = |x: &Rational| self.ctx.valuation(x);
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for j in 0..3 {
            for i in 0..3 {
                if let Some(v) = val(&linv[j][i]) {
                    lo[j] = lo[j].min(v + self.lo[i]);
                }
                if let Some(v) = val(&l[i][j]) {
                    hi[j] = hi[j].max(self.hi[i] - v);
                }
            }
        }
        let mut f = Self::blank(self.ctx, lo, hi, self.order)?;
        f.scale = self.scale.clone();
        for idx in 0..f.values.len() {
            let x = f.point(idx);
            let y = [0, 1, 2].map(|i| &l[i][0] * &x[0] + &l[i][1] * &x[1] + &l[i][2] * &x[2]);
            if let Some(s) = self.lookup(&y) {
                f.values[idx] = self.values[s].clone();
            }
        }
        Ok(f)
    }

    /// Fourier transform along one axis against `psi(c z y)`; the axis window becomes `(-hi, -lo)`.
    fn axis_transform(&self, axis: usize, c: u64) -> Result<Self, WeilError> {
        let p = self.ctx.p();
        let width = self.hi[axis] - self.lo[axis];
        let mut lo = self.lo;
        let mut hi = self.hi;
        lo[axis] = -self.hi[axis];
        hi[axis] = -self.lo[axis];
        let order = self.order.max(width);
        let mut src = self.clone();
        src.lift_order(order);
        let mut f = Self::blank(self.ctx, lo, hi, order)?;
        f.scale = self
            .scale
            .scale(&pow_p(p, -self.hi[axis]));
        let n = f.ring_len();
        let len = ppow(p, width);
        let unit = ppow(p, order - width);
        for idx in 0..src.values.len() {
            let r = src.residues(idx);
            if src.values[idx].is_empty() {
                continue;
            }
            for s in 0..len {
                let e = ((c as usize * r[axis] % len) * s % len) * unit;
                let mut t = r;
                t[axis] = s;
                let out = f.index(t);
                let mut acc = std::mem::take(&mut f.values[out]);
                add_rotated(&mut acc, &src.values[idx], e, n);
                f.values[out] = acc;
            }
        }
        Ok(f)
    }

    fn swap_plus_minus(&self) -> Result<Self, WeilError> {
        let mut lo = self.lo;
        let mut hi = self.hi;
        lo.swap(PLUS, MINUS);
        hi.swap(PLUS, MINUS);
        let mut f = Self::blank(self.ctx, lo, hi, self.order)?;
        f.scale = self.scale.clone();
        for idx in 0..self.values.len() {
            let mut r = self.residues(idx);
            r.swap(PLUS, MINUS);
            let out = f.index(r);
            f.values[out] = self.values[idx].clone();
        }
        Ok(f)
    }

    /// `∫_V phi(Y) psi(q(X, Y)) dY` with the self-dual measure.
    pub fn fourier(&self) -> Result<Self, WeilError> {
        self.axis_transform(PLUS, 1)?
            .axis_transform(ZERO, 2)?
            .axis_transform(MINUS, 1)?
            .swap_plus_minus()
    }

    /// `(x_0; x_-, y_-) -> ∫ phi(x_+ e_+ + x_0 e_0 + x_- e_-) psi(x_+ y_-) dx_+`.
    pub fn partial_fourier(&self) -> Result<PartialFourier, WeilError> {
        Ok(PartialFourier(self.axis_transform(PLUS, 1)?))
    }

    /// Exact equality as functions on `V`.
    pub fn same_function(&self, other: &Self) -> Result<bool, WeilError> {
        if self.ctx != other.ctx {
            return Err(WeilError::PrimeMismatch);
        }
        let lo = [0, 1, 2].map(|k| self.lo[k].min(other.lo[k]));
        let hi = [0, 1, 2].map(|k| self.hi[k].max(other.hi[k]));
        let mut a = self.refine(lo, hi)?;
        let mut b = other.refine(lo, hi)?;
        let k = a.order.max(b.order);
        a.lift_order(k);
        b.lift_order(k);
        let a_zero = a.scale.is_zero();
        let b_zero = b.scale.is_zero();
        if a_zero || b_zero {
            let check = |f: &Self| f.values.iter().all(|v| f.to_cyclotomic(v).is_zero());
            return Ok((a_zero || check(&a)) && (b_zero || check(&b)));
        }
        let ratio = b.scale.div(&a.scale);
        let plain = ratio.is_one();
        for (u, v) in a.values.iter().zip(&b.values) {
            if plain && u == v {
                continue;
            }
            if is_zero_ring(u) && is_zero_ring(v) {
                continue;
            }
            if a.to_cyclotomic(u) != a.to_cyclotomic(v).mul(&ratio) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn invert3(m: &[[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
    let c = |i: usize, j: usize| {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        let (j1, j2) = ((j + 1) % 3, (j + 2) % 3);
        &m[i1][j1] * &m[i2][j2] - &m[i1][j2] * &m[i2][j1]
    };
    let det = &m[0][0] * c(0, 0) + &m[0][1] * c(0, 1) + &m[0][2] * c(0, 2);
    [0, 1, 2].map(|i| [0, 1, 2].map(|j| c(j, i) / &det))
}

/// Partial Fourier transform; slot `PLUS` holds `y_-`.
#[derive(Debug, Clone)]
pub struct PartialFourier(pub BruhatSchwartzV);

impl PartialFourier {
    pub fn eval(&self, x0: &Rational, x_minus: &Rational, y_minus: &Rational) -> Cyclotomic {
        self.0.eval(&[y_minus.clone(), x0.clone(), x_minus.clone()])
    }
}

/// Generators of `PGL_2` acting on `V` by conjugation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PglGenerator {
    /// `diag(t, 1)`
    Diagonal(Rational),
    /// `[[1, u], [0, 1]]`
    Unipotent(Rational),
    /// `[[0, 1], [-1, 0]]`
    Weyl,
}

impl PglGenerator {
    fn matrix(&self) -> [[Rational; 2]; 2] {
        let z = Rational::zero;
        let one = || Rational::from_integer(1.into());
        match self {
            PglGenerator::Diagonal(t) => [[t.clone(), z()], [z(), one()]],
            PglGenerator::Unipotent(u) => [[one(), u.clone()], [z(), one()]],
            PglGenerator::Weyl => [[z(), one()], [-one(), z()]],
        }
    }

    /// The matrix of `X -> h^{-1} X h` in the coordinates `(x_+, x_0, x_-)`.
    pub fn coordinate_map(&self) -> [[Rational; 3]; 3] {
        let h = self.matrix();
        let det = &h[0][0] * &h[1][1] - &h[0][1] * &h[1][0];
        let hinv = [
            [&h[1][1] / &det, -&h[0][1] / &det],
            [-&h[1][0] / &det, &h[0][0] / &det],
        ];
        let mul = |a: &[[Rational; 2]; 2], b: &[[Rational; 2]; 2]| {
            [0, 1].map(|i| [0, 1].map(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
        };
        let mut out: [[Rational; 3]; 3] = Default::default();
        for j in 0..3 {
            let mut e: Vector = Default::default();
            e[j] = Rational::from_integer(1.into());
            let image = from_matrix(&mul(&mul(&hinv, &to_matrix(&e)), &h));
            for i in 0..3 {
                out[i][j] = image[i].clone();
            }
        }
        out
    }
}

/// `omega(h) phi(X) = phi(h^{-1} X h)`
pub fn orthogonal_action(h: &PglGenerator, phi: &BruhatSchwartzV) -> Result<BruhatSchwartzV, WeilError> {
    phi.pullback(&h.coordinate_map())
}

/// `|a|^{3/2}` inside a cyclotomic field.
fn abs_three_halves(p: u64, v: i64) -> Cyclotomic {
    if v % 2 == 0 {
        Cyclotomic::from_rational(pow_p(p, -3 * v / 2))
    } else {
        Cyclotomic::sqrt_prime(p).pow(-3 * v)
    }
}

/// The character in the torus action, `gamma(psi) / gamma(psi_a) = chi_psi(a)^{-1}`.
/// Both `chi_psi` and its inverse satisfy `chi(ab) = chi(a) chi(b) <a, b>`; only this
/// one makes the generator formulas projective for the cocycle `eps`.
pub fn torus_character(ctx: &PAdicContext, a: &Rational) -> Result<Cyclotomic, WeilError> {
    Ok(chi_psi(ctx, a)?.conj())
}

/// `omega([g, 1])` for a generator `g`.
pub fn weil_action(gen: &Generator, phi: &BruhatSchwartzV) -> Result<BruhatSchwartzV, WeilError> {
    let ctx = *phi.ctx();
    match gen {
        Generator::N(x) => phi.twist_by_q(x),
        Generator::M(a) => {
            let v = ctx.valuation(a).ok_or(PadicError::ZeroArgument)?;
            let z = Rational::zero;
            let dil = [
                [a.clone(), z(), z()],
                [z(), a.clone(), z()],
                [z(), z(), a.clone()],
            ];
            let c = torus_character(&ctx, a)?.mul(&abs_three_halves(ctx.p(), v));
            Ok(phi.pullback(&dil)?.scale(&c))
        }
        Generator::W => Ok(phi.fourier()?.scale(&gamma_v(&ctx)?)),
    }
}

/// `omega([g, eps])` through the Bruhat factorization of `g`.
pub fn omega(x: &MetaplecticElement, phi: &BruhatSchwartzV) -> Result<BruhatSchwartzV, WeilError> {
    let place = Place::Finite(phi.ctx().p());
    let factors = x.g.bruhat();
    let mats: Vec<Sl2> = factors.iter().map(Generator::matrix).collect();
    // [f_1, 1]...[f_k, 1] = [g, s]
    let s = product_sign(&mats, place)? * x.sign;
    let mut out = phi.clone();
    for f in factors.iter().rev() {
        out = weil_action(f, &out)?;
    }
    Ok(out.scale(&Cyclotomic::from_int(s as i64)))
}

#[derive(Debug, Clone)]
pub struct ProjectiveReport {
    pub eps: i8,
    pub holds: bool,
    pub lhs: BruhatSchwartzV,
    pub rhs: BruhatSchwartzV,
}

/// `omega(g1) omega(g2) phi = eps(g1, g2) omega(g1 g2) phi`.
pub fn projective_check(g1: &Sl2, g2: &Sl2, phi: &BruhatSchwartzV) -> Result<ProjectiveReport, WeilError> {
    let place = Place::Finite(phi.ctx().p());
    let eps = crate::metaplectic::cocycle(g1, g2, place)?;
    let lhs = omega(
        &MetaplecticElement::lift(g1.clone()),
        &omega(&MetaplecticElement::lift(g2.clone()), phi)?,
    )?;
    let rhs = omega(&MetaplecticElement::lift(g1.mul(g2)), phi)?.scale(&Cyclotomic::from_int(eps as i64));
    let holds = lhs.same_function(&rhs)?;
    Ok(ProjectiveReport { eps, holds, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::fourier::fourier_bs;
    use crate::padic::BruhatSchwartz;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    fn unit_cube(p: u64) -> BruhatSchwartzV {
        BruhatSchwartzV::lattice(ctx(p), [0, 0, 0]).unwrap()
    }

    #[test]
    fn quadratic_form_from_determinant() {
        let e = |k: usize| {
            let mut v: Vector = Default::default();
            v[k] = int(1);
            v
        };
        assert_eq!(q_form(&e(ZERO)), int(1));
        assert_eq!(q_form(&e(PLUS)), int(0));
        assert_eq!(q_bilinear(&e(PLUS), &e(MINUS)), int(1));
        assert_eq!(q_bilinear(&e(ZERO), &e(ZERO)), int(2));
        let (b, vals) = orthogonal_basis(&int(3));
        assert_eq!(vals, [int(1), int(3), int(-3)]);
        assert_eq!(q_bilinear(&b[1], &b[2]), int(0));
    }

    #[test]
    fn gamma_v_is_unit_and_basis_free() {
        for p in [3u64, 5, 7] {
            let c = ctx(p);
            let g = gamma_v(&c).unwrap();
            assert!(g.norm_sq().is_one());
            for a in [int(2), int(p as i64), rat(1, p as i64), int(c.nonresidue() as i64)] {
                let (b, _) = orthogonal_basis(&a);
                assert_eq!(weil_constant(&c, &b).unwrap(), g);
            }
        }
    }

    #[test]
    fn torus_character_cocycle_law() {
        for p in [3u64, 5] {
            let c = ctx(p);
            let xs = [int(2), int(p as i64), int(-1), rat(3, p as i64), int(7)];
            for a in &xs {
                for b in &xs {
                    let lhs = torus_character(&c, &(a * b)).unwrap();
                    let h = crate::padic::hilbert(a, b, Place::Finite(p)).unwrap();
                    let rhs = torus_character(&c, a)
                        .unwrap()
                        .mul(&torus_character(&c, b).unwrap())
                        .scale(&int(h as i64));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn integral_unipotent_fixes_unit_cube() {
        let phi = unit_cube(3);
        let out = weil_action(&Generator::N(int(7)), &phi).unwrap();
        assert!(out.same_function(&phi).unwrap());
    }

    #[test]
    fn square_unit_torus_fixes_unit_cube() {
        let phi = unit_cube(5);
        let out = weil_action(&Generator::M(int(4)), &phi).unwrap();
        assert!(out.same_function(&phi).unwrap());
    }

    #[test]
    fn unipotents_compose_additively() {
        let phi = BruhatSchwartzV::lattice(ctx(3), [-1, 0, 1]).unwrap();
        let (a, b) = (rat(1, 3), rat(2, 9));
        let two = weil_action(&Generator::N(b.clone()), &weil_action(&Generator::N(a.clone()), &phi).unwrap()).unwrap();
        let one = weil_action(&Generator::N(a + b), &phi).unwrap();
        assert!(two.same_function(&one).unwrap());
    }

    #[test]
    fn weyl_squared() {
        for p in [3u64, 5] {
            let r = projective_check(&Sl2::weyl(), &Sl2::weyl(), &unit_cube(p)).unwrap();
            assert_eq!(r.eps, 1);
            assert!(r.holds);
        }
    }

    #[test]
    fn fourier_matches_one_dimensional_oracle() {
        // product box: the 3-d transform factors into 1-d transforms
        let c = ctx(3);
        let levels = [1i64, -1, 0];
        let phi = BruhatSchwartzV::lattice(c, levels).unwrap();
        let hat = phi.fourier().unwrap();
        let one_d = |n: i64| fourier_bs(&BruhatSchwartz::lattice(c, n));
        // pairing: x_+ with y_-, x_- with y_+, x_0 with 2 y_0
        let (fp, f0, fm) = (one_d(levels[MINUS]), one_d(levels[ZERO]), one_d(levels[PLUS]));
        for xp in [int(0), rat(1, 3), int(1), rat(1, 9)] {
            for x0 in [int(0), int(3), int(1), rat(1, 3)] {
                for xm in [int(0), rat(1, 3), rat(2, 9)] {
                    let expected = fp.eval(&xp).mul(&f0.eval(&(int(2) * &x0))).mul(&fm.eval(&xm));
                    assert_eq!(hat.eval(&[xp.clone(), x0.clone(), xm.clone()]), expected);
                }
            }
        }
    }

    #[test]
    fn partial_fourier_examples() {
        let c = ctx(3);
        let cube = unit_cube(3).partial_fourier().unwrap();
        assert!(cube.0.same_function(&unit_cube(3)).unwrap());
        let phi = BruhatSchwartzV::lattice(c, [1, 0, 0]).unwrap();
        let hat = phi.partial_fourier().unwrap();
        let expected = BruhatSchwartzV::lattice(c, [-1, 0, 0])
            .unwrap()
            .scale(&Cyclotomic::from_rational(rat(1, 3)));
        assert!(hat.0.same_function(&expected).unwrap());
        assert_eq!(hat.eval(&int(1), &int(0), &rat(1, 3)), Cyclotomic::from_rational(rat(1, 3)));
        // applying it twice gives x_+ -> -x_+
        let bx = [Ball::new(&c, &int(1), 1), Ball::around_zero(0), Ball::new(&c, &int(2), 1)];
        let psi = BruhatSchwartzV::from_boxes(c, &[(bx, 1)]).unwrap();
        let twice = PartialFourier(psi.partial_fourier().unwrap().0.partial_fourier().unwrap().0);
        let z = Rational::zero;
        let flip = [[int(-1), z(), z()], [z(), int(1), z()], [z(), z(), int(1)]];
        assert!(twice.0.same_function(&psi.pullback(&flip).unwrap()).unwrap());
    }

    #[test]
    fn orthogonal_action_commutes_with_weyl() {
        let c = ctx(3);
        let phi = BruhatSchwartzV::lattice(c, [1, 0, -1]).unwrap();
        for h in [PglGenerator::Diagonal(int(3)), PglGenerator::Unipotent(int(1)), PglGenerator::Weyl] {
            let a = orthogonal_action(&h, &weil_action(&Generator::W, &phi).unwrap()).unwrap();
            let b = weil_action(&Generator::W, &orthogonal_action(&h, &phi).unwrap()).unwrap();
            assert!(a.same_function(&b).unwrap(), "{h:?}");
        }
    }

    #[test]
    fn projective_on_sample_pairs() {
        let pairs = [
            (Sl2::torus(int(3)), Sl2::torus(int(3))),
            (Sl2::unipotent(rat(1, 3)), Sl2::torus(int(2))),
            (Sl2::weyl(), Sl2::torus(int(3))),
            (Sl2::torus(rat(1, 3)), Sl2::weyl()),
            (Sl2::weyl().mul(&Sl2::unipotent(int(1))), Sl2::weyl()),
            (Sl2::new(int(1), int(0), int(3), int(1)).unwrap(), Sl2::weyl()),
        ];
        for p in [3u64, 5] {
            let phi = BruhatSchwartzV::lattice(ctx(p), [0, 0, 1]).unwrap();
            for (g1, g2) in &pairs {
                let r = projective_check(g1, g2, &phi).unwrap();
                assert!(r.holds, "p={p} g1={g1} g2={g2} eps={}", r.eps);
            }
        }
    }
}
