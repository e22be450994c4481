//! Dense univariate polynomials over a commutative ring, specialised to
//! `K[a]` (field coefficients, Euclidean) and `K[a][X]` (primitive remainder
//! sequences), where `K` is a cyclotomic field.

use std::fmt::Debug;

use super::cyclotomic::Cyclotomic;

pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Cyclotomic::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cyclotomic::mul(self, other)
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn sub(&self, other: &Self) -> Self {
        Cyclotomic::sub(self, other)
    }
}

/// Coefficients stored from the constant term upwards, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

/// Polynomials in the Satake variable.
pub type UPoly = Poly<Cyclotomic>;
/// Polynomials in `X` with `UPoly` coefficients.
pub type BPoly = Poly<UPoly>;

impl<R: Ring> Poly<R> {
    pub fn from_coeffs(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Poly { coeffs: vec![] };
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn trailing_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn lead(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn trailing(&self) -> R {
        self.trailing_degree()
            .map(|k| self.coeffs[k].clone())
            .unwrap_or_else(R::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by the variable to the power `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by the variable to the power `k`; the low terms must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation in any ring the coefficients embed into.
    pub fn eval_with<S: Ring>(&self, x: &S, embed: impl Fn(&R) -> S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc.mul(x).add(&embed(c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// `x^deg * p(1/x)` with the given target degree.
    pub fn reverse(&self, deg: usize) -> Self {
        let mut coeffs = vec![R::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - k] = c.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn one() -> Self {
        Poly::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), other.coeffs.get(k)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => R::zero(),
                })
                .collect(),
        )
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::from_coeffs(out)
    }
    fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
}

impl UPoly {
    /// Euclidean division over the field `K`.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![Cyclotomic::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().mul(&inv);
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] = r[k + i].sub(&c.mul(dc));
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().inv())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            if b.is_constant() {
                return UPoly::one();
            }
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        self.eval_with(x, |c| c.clone())
    }
}

impl BPoly {
    /// Greatest common divisor of the coefficients.
    pub fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.coeffs {
            g = if g.is_zero() { c.monic() } else { g.gcd(c) };
            if g.is_constant() && !g.is_zero() {
                return UPoly::one();
            }
        }
        g
    }

    /// Divides each coefficient exactly by `c`.
    pub fn div_coeffs(&self, c: &UPoly) -> BPoly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| a.exact_div(c).expect("coefficient division must be exact"))
                .collect(),
        )
    }

    pub fn primitive_part(&self) -> BPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        if c.is_one_poly() {
            self.clone()
        } else {
            self.div_coeffs(&c)
        }
    }

    /// Pseudo-remainder of `self` by `d`.
    pub fn pseudo_rem(&self, d: &BPoly) -> BPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.lead();
            r = r.scale(&lc).sub(&d.shift_up(dr - dd).scale(&c));
        }
        r
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &BPoly) -> Option<BPoly> {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let c = r.lead().exact_div(&lc)?;
            r = r.sub(&d.shift_up(dr - dd).scale(&c));
            q[dr - dd] = c;
        }
        Some(Poly::from_coeffs(q))
    }

    pub fn gcd(&self, other: &BPoly) -> BPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                a = BPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Lowest power of the inner variable across all coefficients.
    pub fn inner_trailing_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.trailing_degree()).min()
    }

    pub fn inner_shift_down(&self, k: usize) -> BPoly {
        self.map(|c| c.shift_down(k))
    }

    pub fn inner_shift_up(&self, k: usize) -> BPoly {
        self.map(|c| c.shift_up(k))
    }

    pub fn inner_degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn map_cyclotomic(&self, f: &impl Fn(&Cyclotomic) -> Cyclotomic) -> BPoly {
        self.map(|c| c.map(f))
    }

    pub fn scale_cyclotomic(&self, c: &Cyclotomic) -> BPoly {
        self.map(|u| u.scale(c))
    }

    pub fn constant_cyclotomic(c: Cyclotomic) -> BPoly {
        Poly::constant(Poly::constant(c))
    }

    /// Iterates `(x_exp, a_exp, coefficient)` over nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Cyclotomic)> {
        self.coeffs.iter().enumerate().flat_map(|(i, u)| {
            u.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }
}

impl UPoly {
    pub fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(cs: &[i64]) -> UPoly {
        Poly::from_coeffs(cs.iter().map(|&c| Cyclotomic::from_int(c)).collect())
    }

    fn b(rows: &[&[i64]]) -> BPoly {
        Poly::from_coeffs(rows.iter().map(|r| u(r)).collect())
    }

    #[test]
    fn univariate_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = u(&[-2, 1, 1]);
        let c = u(&[3, -4, 1]);
        assert_eq!(a.gcd(&c), u(&[-1, 1]));
    }

    #[test]
    fn bivariate_gcd_and_division() {
        // (X - a)(X + 1) and (X - a)(a X + 2)
        let f = b(&[&[0, -1], &[1, -1], &[1]]);
        let g = b(&[&[0, -2], &[2, 0, -1], &[0, 1]]);
        let h = f.gcd(&g);
        let expected = b(&[&[0, -1], &[1]]);
        assert!(h.exact_div(&expected).is_some_and(|q| q.degree() == Some(0)));
        let q = f.exact_div(&h).unwrap();
        assert_eq!(q.mul(&h), f);
    }

    #[test]
    fn pseudo_remainder_zero_for_multiples() {
        let f = b(&[&[1, 1], &[0, 0, 1]]);
        let g = f.mul(&b(&[&[3], &[0, 1]]));
        assert!(g.pseudo_rem(&f).is_zero());
    }
}
