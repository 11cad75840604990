//! Exact Gaussian-integer polynomials and their ball-arithmetic images.

mod ball;
mod int;
mod io;

pub use ball::BallPolynomial;
pub use int::{GaussInt, IntPolynomial};
