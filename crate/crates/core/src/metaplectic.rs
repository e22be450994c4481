//! The metaplectic double cover of SL2 as `SL2 x {±1}` with the Hilbert-symbol cocycle.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::rational::Rational;
use crate::padic::{hilbert, PadicError, Place};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetaplecticError {
    #[error("determinant is {0}, not 1")]
    Determinant(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

fn zero() -> Rational {
    Rational::zero()
}

fn one() -> Rational {
    Rational::one()
}

/// A rational matrix `[[a, b], [c, d]]` of determinant 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2 {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Sl2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, MetaplecticError> {
        let det = &a * &d - &b * &c;
        if det != one() {
            return Err(MetaplecticError::Determinant(det.to_string()));
        }
        Ok(Sl2 { a, b, c, d })
    }

    pub fn identity() -> Self {
        Sl2 { a: one(), b: zero(), c: zero(), d: one() }
    }

    /// `n(x) = [[1, x], [0, 1]]`
    pub fn unipotent(x: Rational) -> Self {
        Sl2 { a: one(), b: x, c: zero(), d: one() }
    }

    /// `m(a) = diag(a, a^{-1})`
    pub fn torus(a: Rational) -> Self {
        let inv = one() / &a;
        Sl2 { a, b: zero(), c: zero(), d: inv }
    }

    /// `w = [[0, 1], [-1, 0]]`
    pub fn weyl() -> Self {
        Sl2 { a: zero(), b: one(), c: -one(), d: zero() }
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &Sl2) -> Sl2 {
        Sl2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Sl2 {
        Sl2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `j(g) = c` if `c != 0`, else `a`.
    pub fn j(&self) -> Rational {
        if self.c.is_zero() {
            self.a.clone()
        } else {
            self.c.clone()
        }
    }

    /// `g = n(a/c) m(-1/c) w n(d/c)` when `c != 0`, else `g = n(ab) m(a)`.
    pub fn bruhat(&self) -> Vec<Generator> {
        if self.c.is_zero() {
            vec![
                Generator::N(&self.a * &self.b),
                Generator::M(self.a.clone()),
            ]
        } else {
            vec![
                Generator::N(&self.a / &self.c),
                Generator::M(-(one() / &self.c)),
                Generator::W,
                Generator::N(&self.d / &self.c),
            ]
        }
    }
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Generators of SL2 used by the Weil representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    N(Rational),
    M(Rational),
    W,
}

impl Generator {
    pub fn matrix(&self) -> Sl2 {
        match self {
            Generator::N(x) => Sl2::unipotent(x.clone()),
            Generator::M(a) => Sl2::torus(a.clone()),
            Generator::W => Sl2::weyl(),
        }
    }
}

/// `eps(g1, g2) = <j(g1) j(g1 g2), j(g2) j(g1 g2)>`.
pub fn cocycle(g1: &Sl2, g2: &Sl2, place: Place) -> Result<i8, MetaplecticError> {
    let j12 = g1.mul(g2).j();
    Ok(hilbert(&(g1.j() * &j12), &(g2.j() * &j12), place)?)
}

/// `[g, eps]` in the double cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetaplecticElement {
    pub g: Sl2,
    pub sign: i8,
}

impl MetaplecticElement {
    pub fn new(g: Sl2, sign: i8) -> Self {
        MetaplecticElement { g, sign }
    }

    pub fn lift(g: Sl2) -> Self {
        MetaplecticElement { g, sign: 1 }
    }

    /// `[g1, e1][g2, e2] = [g1 g2, eps(g1, g2) e1 e2]`.
    pub fn mul(&self, o: &Self, place: Place) -> Result<Self, MetaplecticError> {
        let e = cocycle(&self.g, &o.g, place)?;
        Ok(MetaplecticElement {
            g: self.g.mul(&o.g),
            sign: e * self.sign * o.sign,
        })
    }
}

/// The sign `s` with `[g1, 1][g2, 1]...[gk, 1] = [g1...gk, s]`.
pub fn product_sign(factors: &[Sl2], place: Place) -> Result<i8, MetaplecticError> {
    let mut acc = MetaplecticElement::lift(Sl2::identity());
    for g in factors {
        acc = acc.mul(&MetaplecticElement::lift(g.clone()), place)?;
    }
    Ok(acc.sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn j_and_simple_cocycles() {
        assert_eq!(Sl2::weyl().j(), int(-1));
        let n1 = Sl2::unipotent(rat(1, 3));
        let n2 = Sl2::unipotent(int(7));
        assert_eq!(cocycle(&n1, &n2, Place::Finite(3)).unwrap(), 1);
        for place in [Place::Finite(3), Place::Finite(5), Place::Finite(2), Place::Real] {
            assert_eq!(cocycle(&Sl2::weyl(), &Sl2::weyl(), place).unwrap(), 1);
        }
    }

    #[test]
    fn bruhat_reassembles() {
        let g = Sl2::new(int(2), int(3), int(5), int(8)).unwrap();
        let h = Sl2::new(int(3), rat(1, 3), int(0), rat(1, 3)).unwrap();
        for x in [g, h] {
            let prod = x
                .bruhat()
                .iter()
                .fold(Sl2::identity(), |acc, f| acc.mul(&f.matrix()));
            assert_eq!(prod, x);
        }
    }

    #[test]
    fn torus_cocycle_is_hilbert_symbol() {
        // eps(m(a), m(b)) = <a, b>
        let p = Place::Finite(5);
        for (a, b) in [(5, 2), (5, 5), (2, 3), (10, 15)] {
            let e = cocycle(&Sl2::torus(int(a)), &Sl2::torus(int(b)), p).unwrap();
            assert_eq!(e, hilbert(&int(a), &int(b), p).unwrap());
        }
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-30i64..30, prop::sample::select(vec![1i64, 2, 3, 4, 5, 9, 25, 27]))
            .prop_map(|(n, d)| rat(n, d))
    }

    fn sl2() -> impl Strategy<Value = Sl2> {
        (small_rat(), small_rat(), small_rat()).prop_filter_map("degenerate", |(a, b, c)| {
            if a.is_zero() {
                return None;
            }
            // d = (1 + b c)/a
            let d = (one() + &b * &c) / &a;
            Sl2::new(a, b, c, d).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn cocycle_identity(g1 in sl2(), g2 in sl2(), g3 in sl2()) {
            for place in [Place::Finite(3), Place::Finite(5), Place::Finite(2), Place::Real] {
                let l = cocycle(&g1, &g2, place).unwrap() * cocycle(&g1.mul(&g2), &g3, place).unwrap();
                let r = cocycle(&g1, &g2.mul(&g3), place).unwrap() * cocycle(&g2, &g3, place).unwrap();
                prop_assert_eq!(l, r);
            }
        }
    }
}
