//! Exact arithmetic: rationals, cyclotomic numbers, polynomials and the
//! rational functions in which unramified local factors live.

pub mod cyclotomic;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use cyclotomic::Cyclotomic;
pub use rational::Rational;
pub use ratfunc::{RatFuncError, RationalFunction};
