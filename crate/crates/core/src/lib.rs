//! Exact arithmetic in `F2[a,b]`, the cohomology of the Klein four-group, with
//! the order-three automorphism `phi: a -> b, b -> a + b`, the total Steenrod
//! square, and graded ideals. On top of that, [`classify`] searches for and
//! enumerates the Steenrod-closed `C3`-invariant parameter ideals.

pub mod bits;
pub mod classify;
pub mod cli;
pub mod equivariance;
pub mod ideal;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod selftest;
pub mod steenrod;
pub mod unipoly;

pub use bits::BitRow;
pub use ideal::GradedIdeal;
pub use linalg::{BitMatrix, RowEchelon};
pub use parse::{parse, render, ParseError};
pub use poly::{BiPoly, HomogPoly, PolyError};

/// Default degree bound for parsed input.
pub const DEFAULT_DEGREE_CAP: u32 = 64;
/// Largest accepted degree bound.
pub const MAX_DEGREE_CAP: u32 = 1024;
