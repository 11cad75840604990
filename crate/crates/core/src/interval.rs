//! Outward-rounded double-precision intervals for geometric predicates.
//!
//! Each operation rounds to nearest and then widens by one ulp on each side,
//! which encloses the exact result since nearest rounding errs by at most
//! half an ulp.

use crate::ball::{Ball, Mag};
use crate::dyadic::Dyadic;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64) -> f64 {
    if x.is_nan() {
        f64::NEG_INFINITY
    } else {
        x.next_down()
    }
}

fn up(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x.next_up()
    }
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        debug_assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn from_dyadic(x: &Dyadic) -> Interval {
        let (lo, hi) = x.to_f64_bounds();
        Interval { lo, hi }
    }

    pub fn from_ball(b: &Ball) -> Interval {
        let m = Interval::from_dyadic(&b.mid);
        let r = Interval::from_dyadic(&b.rad.to_dyadic());
        Interval { lo: down(m.lo - r.hi), hi: up(m.hi + r.hi) }
    }

    pub fn from_mag(m: &Mag) -> Interval {
        Interval::from_dyadic(&m.to_dyadic())
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval { lo: down(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval { lo: down(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }

    pub fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }

    pub fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, |a, b| if b.is_nan() { a } else { a.min(b) });
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, |a, b| if b.is_nan() { a } else { a.max(b) });
        if p.iter().any(|x| x.is_nan()) {
            // 0 * inf: give up precision rather than soundness.
            return Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        }
        Interval { lo: down(lo), hi: up(hi) }
    }

    pub fn sqr(self) -> Interval {
        let a = self.mag_lower();
        let b = self.mag_upper();
        Interval { lo: down(a * a).max(0.0), hi: up(b * b) }
    }

    /// Division by an interval not containing zero.
    pub fn div(self, o: Interval) -> Interval {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by interval containing zero");
        let inv = Interval { lo: down(1.0 / o.hi), hi: up(1.0 / o.lo) };
        self.mul(inv)
    }

    pub fn sqrt(self) -> Interval {
        let lo = if self.lo <= 0.0 { 0.0 } else { down(self.lo.sqrt()).max(0.0) };
        Interval { lo, hi: up(self.hi.max(0.0).sqrt()) }
    }

    pub fn scale_pow2(self, k: i32) -> Interval {
        let f = 2f64.powi(k);
        Interval { lo: self.lo * f, hi: self.hi * f }
    }

    pub fn mag_lower(self) -> f64 {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn mag_upper(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn hull(self, o: Interval) -> Interval {
        Interval { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Certainly `self < o` for every pair of points.
    pub fn lt(self, o: Interval) -> bool {
        self.hi < o.lo
    }

    pub fn le(self, o: Interval) -> bool {
        self.hi <= o.lo
    }
}
