//! Exact computer algebra for localized path algebras of doubled quivers,
//! multiplicative moment maps, and the associated dg-algebras, together with
//! chain-level Hochschild machinery and a rational matrix-representation oracle.
//!
//! Everything is computed over exact rationals; an identity "passes" only when
//! its difference rewrites to the zero element.

pub mod hochschild;
pub mod matrix;
pub mod ncalg;
pub mod preproj;
pub mod quiver;
pub mod repvar;
pub mod resolutions;
pub mod witnesses;

pub use ncalg::{NCElement, Presentation, Word};
pub use quiver::{DoubleQuiver, Quiver};

/// Exact rational scalar used throughout the crate.
pub type Rat = num::BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
