//! Base-family modulus of matroids.
//!
//! Given a matroid M on ground set E through an exact rank oracle, this crate
//! computes the 2-modulus of the family of bases together with its certificate
//! ecosystem: the optimal density ρ*, the expected usage vector η* = minimum
//! expected overlap witness, an optimal probability mass function on bases,
//! strength and fractional arboricity with witness sets, the critical values
//! and deflation chain of the principal partition, the Fulkerson blocker
//! family, base packing/covering LP values, the density identity linking M
//! and its dual, and the p-modulus for every 1 < p < ∞ in closed form.
//!
//! Everything on the exact path uses arbitrary-precision rationals; floating
//! point appears only in the two independent numerical cross-checks (the
//! min-norm-point solver and a projected-gradient solver).

pub mod duality;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod matroid;
pub mod modulus;
pub mod parse;
pub mod partition;
pub mod pgrad;
pub mod random;
pub mod simplex;
pub mod suite;
pub mod wolfe;

/// Exact rational scalar used throughout the crate.
pub type Rat = num::BigRational;

pub use error::{Error, Result};
pub use matroid::{bits, Caps, GroundSet, Mask, Matroid, RankTable};

/// Convenience constructor for small rationals.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Convenience constructor for integers as rationals.
pub fn rint(p: i64) -> Rat {
    Rat::from_integer(p.into())
}
