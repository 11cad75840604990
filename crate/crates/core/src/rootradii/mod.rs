//! Root radii around Gaussian-integer centers and the annuli covers built
//! from them.
//!
//! The radii of `P` around `c` are read off the Newton polygon of
//! `P(c + x)` after enough root-squaring steps that the polygon's factor
//! `4d` uncertainty shrinks below the requested `1 + delta`.

mod cover;
mod hull;
mod rrc;

pub use cover::{annulus_signs, build_annuli_cover, AnnuliCover, Annulus};
pub use hull::{upper_convex_hull, upper_hull_f64, Ordinate};
pub use rrc::{graeffe_count, solve_rrc, solve_rrc_star, RadiiEstimate};

use dashu_ratio::RBig;

use crate::error::Result;
use crate::poly::{GaussInt, IntPolynomial};

/// The default relative width `d^-2`.
pub fn default_delta(d: usize) -> RBig {
    let d = d.max(1) as u64;
    RBig::from_parts(1.into(), (d * d).into())
}

/// Annuli cover of the roots of `P` around `c` at relative width `delta`.
pub fn annuli_cover(p: &IntPolynomial, c: &GaussInt, delta: &RBig) -> Result<AnnuliCover> {
    let est = solve_rrc(p, c, delta)?;
    Ok(build_annuli_cover(&est, p))
}
