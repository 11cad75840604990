//! Working-precision ladders and caps.
//!
//! Ball computations start at 53 bits and double until their outcome is
//! decided. The caps below can be overridden with `ROOTRADII_PREC_CAP`.

use std::sync::OnceLock;

pub const START: u32 = 53;

/// Cap for Pellet tests (`53 * 2^8`).
pub const PELLET_CAP: u32 = 13568;

/// Cap for root-squaring in root-radii computations.
pub const RADII_CAP: u32 = 1 << 16;

/// Cap for evaluating boundary signs of annuli.
pub const SIGN_CAP: u32 = 4096;

pub const ENV_VAR: &str = "ROOTRADII_PREC_CAP";

fn env_cap() -> Option<u32> {
    static CAP: OnceLock<Option<u32>> = OnceLock::new();
    *CAP.get_or_init(|| std::env::var(ENV_VAR).ok().and_then(|v| v.trim().parse().ok()))
}

pub fn pellet_cap() -> u32 {
    env_cap().unwrap_or(PELLET_CAP).max(START)
}

pub fn radii_cap() -> u32 {
    env_cap().unwrap_or(RADII_CAP).max(START)
}

/// `start, 2 start, 4 start, ...` up to and including the last value `<= cap`.
pub fn ladder(start: u32, cap: u32) -> impl Iterator<Item = u32> {
    std::iter::successors(Some(start.max(START)), |&p| p.checked_mul(2)).take_while(move |&p| p <= cap)
}
