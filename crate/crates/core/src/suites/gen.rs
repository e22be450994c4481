//! Seeded generators for random test inputs.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::rational::{int, pow_p, rat, Rational};
use crate::exact::Cyclotomic;
use crate::metaplectic::Sl2;
use crate::padic::{Ball, BruhatSchwartz, PAdicContext};

/// Independent stream per `(seed, label)`, so suites do not perturb each other.
pub fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let salt = label
        .bytes()
        .fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
    ChaCha8Rng::seed_from_u64(seed ^ salt.rotate_left(17))
}

/// A positive integer prime to `p`.
pub fn random_unit<R: Rng>(p: u64, rng: &mut R) -> u64 {
    loop {
        let u = rng.gen_range(1..p * p * p);
        if u % p != 0 {
            return u;
        }
    }
}

fn random_coeff<R: Rng>(p: u64, rng: &mut R) -> Cyclotomic {
    let n = loop {
        let n = rng.gen_range(-3i64..=3);
        if n != 0 {
            break n;
        }
    };
    let c = Cyclotomic::from_int(n);
    if rng.gen_bool(0.3) {
        c.mul(&Cyclotomic::root_of_unity(p, rng.gen_range(1..p as i64)))
    } else {
        c
    }
}

/// A sum of one to four weighted ball indicators with levels in `[lo, lo + 2]`
/// and centres in `p^lo O`, so transforms stay within `p^2` pieces per ball.
fn random_terms<R: Rng>(ctx: PAdicContext, lo: i64, rng: &mut R) -> BruhatSchwartz {
    let p = ctx.p();
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| {
            let level = lo + rng.gen_range(0..=2);
            let a = rng.gen_range(0..(p * p * p) as i64);
            let center = int(a) * pow_p(p, lo);
            (Ball::new(&ctx, &center, level), random_coeff(p, rng))
        })
        .collect();
    BruhatSchwartz::from_terms(ctx, terms)
}

pub fn random_bs<R: Rng>(ctx: PAdicContext, rng: &mut R) -> BruhatSchwartz {
    random_terms(ctx, -1, rng)
}

/// Nonzero function supported in `p^level O`.
pub fn random_bs_supported<R: Rng>(ctx: PAdicContext, level: i64, rng: &mut R) -> BruhatSchwartz {
    loop {
        let f = random_terms(ctx, level, rng);
        if !f.is_zero() && f.support_level().is_some_and(|l| l >= level) {
            return f;
        }
    }
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let dens = [1i64, 2, 3, 4, 5, 9, 25, 27];
    rat(rng.gen_range(-30..30), dens[rng.gen_range(0..dens.len())])
}

/// `[[a, b], [c, (1 + b c)/a]]` with small rationals; `c = 0` a quarter of the time.
pub fn random_sl2<R: Rng>(rng: &mut R) -> Sl2 {
    loop {
        let a = small_rational(rng);
        if a == int(0) {
            continue;
        }
        let b = small_rational(rng);
        let c = if rng.gen_bool(0.25) { int(0) } else { small_rational(rng) };
        let d = (int(1) + &b * &c) / &a;
        if let Ok(g) = Sl2::new(a, b, c, d) {
            return g;
        }
    }
}

/// Product of one to three generators `n(x)`, `m(x)`, `w` with `x` a small unit times `p^{-1..1}`.
pub fn random_generator_word<R: Rng>(p: u64, rng: &mut R) -> Sl2 {
    let units = [1i64, 2, -1, 4, 7];
    (0..rng.gen_range(1..=3)).fold(Sl2::identity(), |acc, _| {
        let u = units[rng.gen_range(0..units.len())];
        let x = int(u) * pow_p(p, rng.gen_range(-1..=1));
        let f = match rng.gen_range(0..3) {
            0 => Sl2::unipotent(x),
            1 => Sl2::torus(x),
            _ => Sl2::weyl(),
        };
        acc.mul(&f)
    })
}
