//! Degree-truncated computer algebra for the category of unstable modules
//! over the mod 2 Steenrod algebra: Lannes' reduced T-functor, the Krull
//! filtration, the nilpotent filtration, symmetric-sequence invariants and a
//! small model of the category of functors between F_2 vector spaces.

pub mod corpus;
pub mod error;
pub mod genfun;
pub mod gf2;
pub mod kalg;
pub mod krull;
pub mod lannes;
pub mod steenrod;
pub mod suites;
pub mod sym;
pub mod umod;

pub use error::{Error, ParseError, Result};
