//! Singularity geometry of Gough-Stewart platforms.
//!
//! For a platform architecture with exact rational joint coordinates and a
//! rational Cayley orientation, this crate builds the cubic surface of
//! singular poses, the reciprocal-twist map onto a quadric surface in twist
//! space, a rational parametrization of the singularity locus, and the
//! numeric evidence for the 27-lines / blow-up-in-five-points structure.
//!
//! All symbolic computation is exact over the rationals; numeric stages
//! (line finding, sampling probes) are explicit conversions with stated
//! tolerances.

pub mod birational;
pub mod error;
pub mod exactpoly;
pub mod geom;
pub mod infinity;
pub mod lines;
pub mod numeric;
pub mod perm;
pub mod platform;
pub mod quadric;
pub mod report;
pub mod singularity;
pub mod testutil;
pub mod twistmap;

pub use error::Error;
pub use exactpoly::{MultiPoly, PolyMatrix, Rat, VarSet};
pub use platform::{Architecture, Orientation, Pose, Screw};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
