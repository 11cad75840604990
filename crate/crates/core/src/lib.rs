//! Certified root-radii covers and subdivision root finders for
//! polynomials with (Gaussian) integer coefficients.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: exact and ball polynomial arithmetic, Taylor shifts,
//!   Graeffe root squaring, root bounds;
//! - [`rootradii`]: all `d` root radii around a Gaussian-integer center
//!   to a prescribed relative accuracy, and the annuli covers built from them;
//! - [`pellet`]: Pellet-based exclusion and counting tests on discs;
//! - [`subdiv`]: real root isolation and complex root clustering, each in a
//!   classic mode and a mode that consults annuli covers first;
//! - [`gens`]: benchmark polynomial families.

pub mod ball;
pub mod dyadic;
pub mod error;
pub mod gens;
pub mod interval;
pub mod pellet;
pub mod poly;
pub mod prec;
pub mod region;
pub mod rootradii;
pub mod stats;
pub mod subdiv;
mod xball;

pub use ball::{Ball, CBall, Mag};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use poly::{BallPolynomial, GaussInt, IntPolynomial};
pub use stats::RunStats;
