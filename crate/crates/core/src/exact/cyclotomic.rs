//! Exact elements of cyclotomic fields.
//!
//! An element of `Q(zeta_N)` is stored sparsely over the tensor product of the
//! power bases of `Q(zeta_{q^e})` for the prime powers `q^e || N`. The order is
//! always lowered to the smallest `N` the element lives in (and never `2 mod 4`),
//! so structural equality is field equality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rational::{factorize, int, lcm_u64, to_f64, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    order: u64,
    terms: BTreeMap<u64, Rational>,
}

/// CRT data for one order `N`.
struct Layout {
    n: u64,
    // (q, e, q^e, N/q^e, (N/q^e)^{-1} mod q^e)
    parts: Vec<(u64, u32, u64, u64, u64)>,
}

impl Layout {
    fn new(n: u64) -> Layout {
        let parts = factorize(n)
            .into_iter()
            .map(|(q, e)| {
                let qe = q.pow(e);
                let co = n / qe;
                let inv = inverse_mod_u64(co % qe, qe);
                (q, e, qe, co, inv)
            })
            .collect();
        Layout { n, parts }
    }

    /// Expands `zeta_N^j` over the canonical basis as `(exponent, sign)` pairs.
    fn reduce_exponent(&self, j: u64) -> Vec<(u64, i64)> {
        let mut acc: Vec<(u64, i64)> = vec![(0, 1)];
        for &(q, e, qe, co, inv) in &self.parts {
            let jq = ((j % self.n) as u128 * inv as u128 % qe as u128) as u64;
            let phi = (q - 1) * q.pow(e - 1);
            let comps: Vec<(u64, i64)> = if jq < phi {
                vec![(jq, 1)]
            } else {
                let step = q.pow(e - 1);
                let r = jq - phi;
                (0..q - 1).map(|i| (i * step + r, -1)).collect()
            };
            let mut next = Vec::with_capacity(acc.len() * comps.len());
            for &(a, sa) in &acc {
                for &(c, sc) in &comps {
                    next.push(((a + c * co) % self.n, sa * sc));
                }
            }
            acc = next;
        }
        acc
    }
}

fn inverse_mod_u64(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (m as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    assert_eq!(r, 1, "not invertible");
    (t.rem_euclid(m as i128)) as u64
}

/// Normalizes an order so that it is never `2 mod 4`; returns the new order and a
/// map from old exponents to `(sign, new exponent)`.
fn normalize_order(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Accumulates a sum of rational multiples of `zeta_N^j` before reduction.
#[derive(Clone, Debug)]
pub struct RootSum {
    order: u64,
    counts: HashMap<u64, Rational>,
}

impl RootSum {
    pub fn new(order: u64) -> RootSum {
        RootSum {
            order: order.max(1),
            counts: HashMap::new(),
        }
    }

    pub fn add_root(&mut self, j: i64, c: &Rational) {
        let n = self.order as i64;
        let k = j.rem_euclid(n) as u64;
        *self.counts.entry(k).or_insert_with(Rational::zero) += c;
    }

    pub fn finish(self) -> Cyclotomic {
        Cyclotomic::from_raw(self.order, self.counts)
    }
}

impl Cyclotomic {
    pub fn zero() -> Cyclotomic {
        Cyclotomic {
            order: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Cyclotomic {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        Cyclotomic { order: 1, terms }
    }

    pub fn from_int(n: i64) -> Cyclotomic {
        Cyclotomic::from_rational(int(n))
    }

    /// `zeta_n^k` with `zeta_n = exp(2 pi i / n)`.
    pub fn root_of_unity(n: u64, k: i64) -> Cyclotomic {
        assert!(n > 0);
        let mut raw = HashMap::new();
        raw.insert(k.rem_euclid(n as i64) as u64, Rational::one());
        Cyclotomic::from_raw(n, raw)
    }

    /// Builds an element from arbitrary exponents of `zeta_n`.
    pub fn from_raw(n: u64, raw: HashMap<u64, Rational>) -> Cyclotomic {
        let n = n.max(1);
        // map order 2 mod 4 onto the odd part: zeta_{2m} = -zeta_m^{(m+1)/2}
        let (order, raw) = if n % 4 == 2 {
            let m = n / 2;
            let half = (m + 1) / 2;
            let mut out: HashMap<u64, Rational> = HashMap::new();
            for (j, c) in raw {
                let e = (j as u128 * half as u128 % m as u128) as u64;
                let c = if j % 2 == 1 { -c } else { c };
                *out.entry(e).or_insert_with(Rational::zero) += c;
            }
            (normalize_order(n), out)
        } else {
            (n, raw)
        };
        let layout = Layout::new(order);
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (j, c) in raw {
            if c.is_zero() {
                continue;
            }
            for (e, s) in layout.reduce_exponent(j) {
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                if s > 0 {
                    *entry += &c;
                } else {
                    *entry -= &c;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut out = Cyclotomic { order, terms };
        out.lower();
        out
    }

    fn lower(&mut self) {
        if self.terms.is_empty() {
            self.order = 1;
            return;
        }
        loop {
            let layout = Layout::new(self.order);
            let mut changed = false;
            for &(q, e, qe, co, inv) in &layout.parts {
                let comp = |j: u64| (j as u128 * inv as u128 % qe as u128) as u64;
                let ok = if e >= 2 && !(q == 2 && e == 2) {
                    self.terms.keys().all(|&j| comp(j) % q == 0)
                } else {
                    self.terms.keys().all(|&j| comp(j) == 0)
                };
                if !ok {
                    continue;
                }
                // drop one power of q (or q entirely)
                let new_order = if e >= 2 && !(q == 2 && e == 2) {
                    self.order / q
                } else {
                    self.order / qe
                };
                // zeta_{new}^k = zeta_{old}^{k * old/new}: invert by dividing exponents
                let ratio = self.order / new_order;
                let mut terms = BTreeMap::new();
                for (j, c) in std::mem::take(&mut self.terms) {
                    // j is a multiple of ratio modulo order because the dropped
                    // component vanishes (or is divisible by q)
                    let jj = exponent_divide(j, ratio, self.order, co);
                    terms.insert(jj, c);
                }
                self.terms = terms;
                self.order = new_order;
                changed = true;
                break;
            }
            if !changed {
                break;
            }
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.order != 1 {
            return None;
        }
        Some(self.terms.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    /// Returns `(c, j)` when the element is `c * zeta_order^j`.
    pub fn as_monomial(&self) -> Option<(Rational, u64)> {
        if self.terms.len() == 1 {
            let (j, c) = self.terms.iter().next().unwrap();
            Some((c.clone(), *j))
        } else {
            None
        }
    }

    pub fn lift(&self, m: u64) -> HashMap<u64, Rational> {
        assert_eq!(m % self.order, 0, "lift target must be a multiple of the order");
        let r = m / self.order;
        self.terms.iter().map(|(j, c)| (j * r, c.clone())).collect()
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.order == other.order {
            let mut terms = self.terms.clone();
            for (j, c) in &other.terms {
                *terms.entry(*j).or_insert_with(Rational::zero) += c;
            }
            terms.retain(|_, c| !c.is_zero());
            let mut out = Cyclotomic {
                order: self.order,
                terms,
            };
            out.lower();
            return out;
        }
        let m = lcm_u64(self.order, other.order);
        let mut raw = self.lift(m);
        for (j, c) in other.lift(m) {
            *raw.entry(j).or_insert_with(Rational::zero) += c;
        }
        Cyclotomic::from_raw(m, raw)
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            terms: self.terms.iter().map(|(j, c)| (*j, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            order: self.order,
            terms: self.terms.iter().map(|(j, c)| (*j, c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(r) = self.to_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.to_rational() {
            return self.scale(&r);
        }
        let m = lcm_u64(self.order, other.order);
        let a = self.lift(m);
        let b = other.lift(m);
        let mut raw: HashMap<u64, Rational> = HashMap::new();
        for (ja, ca) in &a {
            for (jb, cb) in &b {
                *raw.entry((ja + jb) % m).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Cyclotomic::from_raw(m, raw)
    }

    pub fn pow(&self, k: i64) -> Cyclotomic {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Applies the Galois automorphism `zeta_N -> zeta_N^k` (k coprime to N).
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let n = self.order as i64;
        let kk = k.rem_euclid(n) as u128;
        let raw = self
            .terms
            .iter()
            .map(|(j, c)| ((*j as u128 * kk % n as u128) as u64, c.clone()))
            .collect();
        Cyclotomic::from_raw(self.order, raw)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics on zero.
    pub fn inv(&self) -> Cyclotomic {
        assert!(!self.is_zero(), "inverse of zero cyclotomic");
        if let Some(r) = self.to_rational() {
            return Cyclotomic::from_rational(r.recip());
        }
        if let Some((c, j)) = self.as_monomial() {
            let mut raw = HashMap::new();
            raw.insert((self.order - j) % self.order, c.recip());
            return Cyclotomic::from_raw(self.order, raw);
        }
        // extended Euclid against the cyclotomic polynomial
        let n = self.order;
        let mut a = vec![Rational::zero(); n as usize];
        for (j, c) in &self.terms {
            a[*j as usize] = c.clone();
        }
        let s = qpoly::inverse_mod(&a, &qpoly::cyclotomic_polynomial(n));
        let raw = s
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u64, c))
            .collect();
        Cyclotomic::from_raw(n, raw)
    }

    pub fn div(&self, other: &Cyclotomic) -> Cyclotomic {
        self.mul(&other.inv())
    }

    /// Complex embedding with `zeta_N = exp(2 pi i / N)`.
    pub fn embed(&self) -> Complex64 {
        let n = self.order as f64;
        self.terms
            .iter()
            .map(|(j, c)| {
                let ang = 2.0 * std::f64::consts::PI * (*j as f64) / n;
                Complex64::from_polar(to_f64(c), ang)
            })
            .sum()
    }

    /// `|a|^2 = a * conj(a)` when it is rational.
    pub fn norm_sq(&self) -> Cyclotomic {
        self.mul(&self.conj())
    }

    /// Positive square root of a prime `p` inside a cyclotomic field.
    pub fn sqrt_prime(p: u64) -> Cyclotomic {
        if p == 2 {
            // zeta_8 + zeta_8^{-1}
            return Cyclotomic::root_of_unity(8, 1).add(&Cyclotomic::root_of_unity(8, 7));
        }
        let mut sum = RootSum::new(p);
        for x in 1..p {
            let leg = legendre_u64(x, p);
            sum.add_root(x as i64, &int(leg));
        }
        let g = sum.finish();
        if p % 4 == 1 {
            g
        } else {
            // g = i sqrt(p)
            g.mul(&Cyclotomic::root_of_unity(4, 3))
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        self.to_rational().is_some_and(|r| r.is_negative())
    }
}

fn exponent_divide(j: u64, ratio: u64, order: u64, _co: u64) -> u64 {
    // find k with k * ratio == j (mod order); such k exists mod order/ratio
    let new_order = order / ratio;
    // j is divisible by gcd(ratio, order) = ratio when the component vanishes
    if j % ratio == 0 {
        return (j / ratio) % new_order;
    }
    // general case: solve k*ratio = j mod order by brute force over lifts
    for t in 0..ratio {
        let cand = j + t * order;
        if cand % ratio == 0 {
            return (cand / ratio) % new_order;
        }
    }
    unreachable!("exponent not divisible during order lowering")
}

/// Dense polynomials over the rationals, used for field inversion.
mod qpoly {
    use super::Rational;
    use num_traits::{One, Zero};

    pub type QPoly = Vec<Rational>;

    fn trim(mut a: QPoly) -> QPoly {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    fn mul(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn sub(a: &QPoly, b: &QPoly) -> QPoly {
        let n = a.len().max(b.len());
        let z = Rational::zero();
        trim(
            (0..n)
                .map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z))
                .collect(),
        )
    }

    fn divrem(a: &QPoly, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.len() - 1;
        let inv = d[dd].recip();
        let mut r = a.clone();
        let mut q = vec![Rational::zero(); a.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() * &inv;
            for (i, dc) in d.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    fn x_pow_minus_one(d: u64) -> QPoly {
        let mut p = vec![Rational::zero(); d as usize + 1];
        p[0] = -Rational::one();
        p[d as usize] = Rational::one();
        p
    }

    fn mobius(mut n: u64) -> i32 {
        let mut sign = 1;
        let mut q = 2;
        while q * q <= n {
            if n % q == 0 {
                n /= q;
                if n % q == 0 {
                    return 0;
                }
                sign = -sign;
            }
            q += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    }

    pub fn cyclotomic_polynomial(n: u64) -> QPoly {
        let mut num = vec![Rational::one()];
        let mut den = vec![Rational::one()];
        for d in (1..=n).filter(|d| n % d == 0) {
            match mobius(n / d) {
                1 => num = mul(&num, &x_pow_minus_one(d)),
                -1 => den = mul(&den, &x_pow_minus_one(d)),
                _ => {}
            }
        }
        divrem(&num, &den).0
    }

    /// `s` with `s * a = 1 mod m`, for `a` coprime to `m`.
    pub fn inverse_mod(a: &QPoly, m: &QPoly) -> QPoly {
        let (mut r0, mut r1) = (m.clone(), divrem(&trim(a.clone()), m).1);
        let (mut s0, mut s1): (QPoly, QPoly) = (vec![], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        assert_eq!(r0.len(), 1, "element is not invertible");
        let c = r0[0].recip();
        s0.into_iter().map(|x| x * &c).collect()
    }
}

pub fn legendre_u64(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let r = super::rational::modpow(a, (p - 1) / 2, p);
    if r == 1 {
        1
    } else {
        -1
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if *j == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if *j == 1 {
                    write!(f, "z{}", self.order)?;
                } else {
                    write!(f, "z{}^{}", self.order, j)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::from_rational(r)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                Cyclotomic::$f(self, rhs)
            }
        }
        impl std::ops::$tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                Cyclotomic::$f(&self, &rhs)
            }
        }
    };
}
forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(&self)
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |a, b| a.add(&b))
    }
}

/// Parses expressions like `1/2 - 3*z8^3 + z5`.
pub fn parse_cyclotomic(s: &str) -> Option<Cyclotomic> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut out = Cyclotomic::zero();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body[1..]
            .find(['+', '-'])
            .map(|i| i + 1)
            .unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let mut value = Cyclotomic::from_int(sign);
        for factor in term.split('*') {
            let f = if let Some(z) = factor.strip_prefix('z') {
                let (n, k) = match z.split_once('^') {
                    Some((n, k)) => (n.parse::<u64>().ok()?, k.parse::<i64>().ok()?),
                    None => (z.parse::<u64>().ok()?, 1),
                };
                if n == 0 {
                    return None;
                }
                Cyclotomic::root_of_unity(n, k)
            } else {
                Cyclotomic::from_rational(super::rational::parse_rational(factor)?)
            };
            value = value.mul(&f);
        }
        out = out.add(&value);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(z(4, 1).mul(&z(4, 1)), Cyclotomic::from_int(-1));
    }

    #[test]
    fn conj_zeta8() {
        assert_eq!(z(8, 1).conj(), z(8, 7));
    }

    #[test]
    fn embed_zeta3() {
        let e = z(3, 1).embed();
        assert!((e.re + 0.5).abs() < 1e-12);
        assert!((e.im - 0.75f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for n in [3u64, 4, 5, 8, 9, 12, 15, 25, 27] {
            let s: Cyclotomic = (0..n as i64).map(|k| z(n, k)).sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn lowering_is_canonical() {
        // zeta_9^3 = zeta_3
        assert_eq!(z(9, 3), z(3, 1));
        // zeta_12^4 = zeta_3
        assert_eq!(z(12, 4), z(3, 1));
        // zeta_6 = -zeta_3^2
        assert_eq!(z(6, 1), z(3, 2).neg());
        assert_eq!(z(6, 1).order(), 3);
        // zeta_15^5 * zeta_15^{-5} = 1
        assert!(z(15, 5).mul(&z(15, -5)).is_one());
    }

    #[test]
    fn mixed_orders() {
        let a = z(4, 1).add(&z(3, 1));
        let b = a.sub(&z(3, 1));
        assert_eq!(b, z(4, 1));
        assert_eq!(b.order(), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Cyclotomic::from_int(2).add(&z(5, 1)).add(&z(5, 3).scale(&rat(1, 3)));
        let b = a.inv();
        assert!(a.mul(&b).is_one());
        let c = z(12, 1).add(&z(12, 5)).add(&Cyclotomic::one());
        assert!(c.mul(&c.inv()).is_one());
    }

    #[test]
    fn square_roots_of_primes() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let s = Cyclotomic::sqrt_prime(p);
            assert_eq!(s.mul(&s), Cyclotomic::from_int(p as i64), "p = {p}");
            assert!(s.embed().re > 0.0);
        }
    }

    #[test]
    fn parse_and_print() {
        let a = parse_cyclotomic("1/2 - 3*z8^3 + z5").unwrap();
        let b = Cyclotomic::from_rational(rat(1, 2))
            .sub(&z(8, 3).scale(&rat(3, 1)))
            .add(&z(5, 1));
        assert_eq!(a, b);
        let back = parse_cyclotomic(&a.to_string()).unwrap();
        assert_eq!(a, back);
    }
}
