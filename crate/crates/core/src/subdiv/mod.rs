//! Subdivision solvers: real root isolation on segments and complex root
//! clustering on square boxes.
//!
//! Both share the same loop: exclude regions, group survivors into
//! connected components, count roots around well separated components,
//! and either output, discard or split them. In radii mode the exclusion
//! and counting tests first consult annuli covers and only fall back to
//! Pellet tests when the covers are not conclusive.

mod complex;
mod real;

use std::fmt;
use std::str::FromStr;

use dashu_int::IBig;

use crate::ball::{CBall, Mag};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::prec;

pub use complex::{cc_zero, cluster_complex, disc_cover, Cluster, ComplexOptions, DiscCover};
pub use real::{
    annuli_stats_real, cr_star, cr_zero, isolate_real, AnnuliStatsReal, IsolatedRoot, RealOptions,
};

/// Which exclusion and counting tests a solver uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Pellet tests only.
    Classic,
    /// Annuli covers first, Pellet tests as fallback.
    #[default]
    Radii,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "classic" => Ok(Mode::Classic),
            "radii" => Ok(Mode::Radii),
            _ => Err(Error::InvalidInput(format!("unknown mode `{s}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Classic => "classic",
            Mode::Radii => "radii",
        })
    }
}

/// Consecutive rounds with the same count before a Newton step is tried.
const NEWTON_STABLE: u32 = 4;

/// Largest Newton contraction factor, as a power of two.
const NEWTON_MAX_LOG: u32 = 32;

/// Per-component bookkeeping for Newton steps.
#[derive(Clone, Copy, Debug)]
struct NewtonState {
    /// Last root count of the component, if it was counted.
    count: Option<usize>,
    /// Consecutive rounds with that count.
    stable: u32,
    /// `log2` of the contraction factor of the next step.
    log_factor: u32,
}

impl Default for NewtonState {
    fn default() -> Self {
        NewtonState { count: None, stable: 0, log_factor: 2 }
    }
}

impl NewtonState {
    fn record(&mut self, k: usize) {
        if self.count == Some(k) || self.count == Some(usize::MAX) && self.stable >= NEWTON_STABLE {
            self.stable += 1;
        } else {
            self.count = Some(k);
            self.stable = 1;
        }
    }

    /// A round without a count; counts toward readiness.
    fn defer(&mut self) {
        self.record(usize::MAX);
    }

    fn ready(&self) -> bool {
        self.stable >= NEWTON_STABLE
    }

    fn succeeded(&mut self) {
        self.log_factor = (self.log_factor * 2).min(NEWTON_MAX_LOG);
    }

    fn failed(&mut self) {
        self.log_factor = (self.log_factor / 2).max(2);
        self.stable = 0;
    }
}

/// Error when a region got narrower than the working precision can
/// resolve.
fn check_width(width: &Dyadic, cap: u32, what: &str) -> Result<()> {
    match width.top() {
        Some(t) if t > -(cap as i64) => Ok(()),
        _ => Err(Error::PrecisionCap {
            cap,
            context: format!("{what} narrower than 2^-{cap}"),
        }),
    }
}

/// Round down to a multiple of `2^e`.
fn round_to(x: &Dyadic, e: i64) -> Dyadic {
    if x.exponent() >= e {
        return x.clone();
    }
    let shift = (e - x.exponent()) as usize;
    Dyadic::new(x.mantissa() >> shift, e).normalized()
}

/// Approximate `a / b` with about `bits` correct bits.
fn approx_div(a: &Dyadic, b: &Dyadic, bits: u32) -> Dyadic {
    if a.is_zero() {
        return Dyadic::ZERO;
    }
    let k = (bits as i64 + b.bit_len() as i64 - a.bit_len() as i64).max(0) as usize;
    let q: IBig = (a.mantissa() << k) / b.mantissa();
    Dyadic::new(q, a.exponent() - b.exponent() - k as i64)
}

fn mag_of(r: &Mag) -> f64 {
    r.log2_approx()
}

/// Newton iterate `z - m P(z) / P'(z)` for a cluster of `m` roots near `z`,
/// rounded to a multiple of `width / 64`. `None` when `P'(z)` is not
/// bounded away from zero within the precision cap.
fn newton_point(
    p: &IntPolynomial,
    dp: &IntPolynomial,
    z: (&Dyadic, &Dyadic),
    m: usize,
    width: &Dyadic,
    cap: u32,
) -> Option<(Dyadic, Dyadic)> {
    let zb = CBall::exact(z.0.clone(), z.1.clone());
    let lw = width.top()? - 1;
    for prec in prec::ladder(prec::START, cap) {
        let v = p.to_exact_balls(prec).eval(&zb);
        let dv = dp.to_exact_balls(prec).eval(&zb);
        if dv.contains_zero() {
            continue;
        }
        let lo = dv.abs_lower();
        let dv_rad = dv.re.rad.add_up(&dv.im.rad);
        // P'(z) known to about 10 bits, and P(z) precise enough for the
        // step to be accurate to width / 64.
        if mag_of(&dv_rad) > mag_of(&lo) - 10.0 {
            continue;
        }
        let v_rad = v.re.rad.add_up(&v.im.rad);
        if !v_rad.is_zero() && mag_of(&v_rad) + (m as f64).log2() > mag_of(&lo) + lw as f64 - 6.0 {
            continue;
        }
        let (nr, ni) = (&v.re.mid, &v.im.mid);
        let (dr, di) = (&dv.re.mid, &dv.im.mid);
        let den = dr.mul(dr).add(&di.mul(di));
        let sr = nr.mul(dr).add(&ni.mul(di));
        let si = ni.mul(dr).sub(&nr.mul(di));
        let bits = prec + 16;
        let mi = IBig::from(m);
        let qr = approx_div(&sr, &den, bits).mul_int(&mi);
        let qi = approx_div(&si, &den, bits).mul_int(&mi);
        let e = lw - 6;
        return Some((round_to(&z.0.sub(&qr), e), round_to(&z.1.sub(&qi), e)));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_moves_toward_root() {
        let p = IntPolynomial::from_real([-2i64, 0, 1]);
        let dp = p.derivative();
        let w = Dyadic::pow2(-4);
        let (r, i) = newton_point(&p, &dp, (&"3/2".parse().unwrap(), &Dyadic::ZERO), 1, &w, 4096).unwrap();
        assert!(i.is_zero());
        assert!((r.to_f64() - 1.4166666).abs() < 1.0 / 64.0);
    }

    #[test]
    fn rounding_and_division() {
        assert_eq!(round_to(&"7/8".parse().unwrap(), -1), "1/2".parse().unwrap());
        let q = approx_div(&Dyadic::from_int(1), &Dyadic::from_int(3), 60);
        assert!((q.to_f64() - 1.0 / 3.0).abs() < 1e-15);
        assert!(check_width(&Dyadic::pow2(-100), 64, "x").is_err());
        assert!(check_width(&Dyadic::pow2(-10), 64, "x").is_ok());
    }

    #[test]
    fn newton_state_schedule() {
        let mut s = NewtonState::default();
        for _ in 0..4 {
            s.record(2);
        }
        assert!(s.ready());
        s.succeeded();
        assert_eq!(s.log_factor, 4);
        s.failed();
        assert_eq!((s.log_factor, s.stable), (2, 0));
    }
}
