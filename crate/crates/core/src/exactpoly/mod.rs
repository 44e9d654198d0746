//! Exact rational arithmetic and sparse multivariate polynomial algebra.

mod matrix;
mod parse;
mod poly;

pub use matrix::{det_laplace3, PolyMatrix};
pub use parse::{parse_poly, parse_rat, rat_to_string};
pub use poly::{rat, rat_int, Mono, MultiPoly, Rat, VarSet};
