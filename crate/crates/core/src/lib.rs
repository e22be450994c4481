//! Exact and numerical verification of local harmonic analysis identities over
//! p-adic fields and the real numbers.

pub mod exact;
pub mod padic;
pub mod fourier;
pub mod tate;
pub mod shell;
pub mod densities;
pub mod spherical;
pub mod metaplectic;
pub mod weil;
pub mod archimedean;
pub mod suites;
