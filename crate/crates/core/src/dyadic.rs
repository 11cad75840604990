//! Exact binary fractions `mant * 2^exp`.
//!
//! Region geometry and ball midpoints are both dyadic, so bisection and
//! quadrisection never round.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use dashu_int::ops::{BitTest, PowerOfTwo, UnsignedAbs};
use dashu_int::{IBig, UBig};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default)]
pub struct Dyadic {
    mant: IBig,
    exp: i64,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { mant: IBig::ZERO, exp: 0 };

    pub fn new(mant: IBig, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn from_int(v: impl Into<IBig>) -> Self {
        Dyadic { mant: v.into(), exp: 0 }
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic { mant: IBig::ONE, exp: k }
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64 {x}");
        if x == 0.0 {
            return Dyadic::ZERO;
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(IBig::from(m) * sign, e).normalized()
    }

    pub fn mantissa(&self) -> &IBig {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.mant.is_zero() {
            0
        } else if self.mant > IBig::ZERO {
            1
        } else {
            -1
        }
    }

    pub fn bit_len(&self) -> u64 {
        self.mant.bit_len() as u64
    }

    /// Smallest `t` with `|self| < 2^t`; `None` for zero.
    pub fn top(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bit_len() as i64)
        }
    }

    /// Strip trailing zero bits of the mantissa.
    pub fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let tz = (&self.mant).unsigned_abs().trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: IBig::from((&self.mant).unsigned_abs()), exp: self.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match self.exp.cmp(&other.exp) {
            Ordering::Equal => Dyadic::new(&self.mant + &other.mant, self.exp),
            Ordering::Greater => {
                let shift = (self.exp - other.exp) as usize;
                Dyadic::new((&self.mant << shift) + &other.mant, other.exp)
            }
            Ordering::Less => {
                let shift = (other.exp - self.exp) as usize;
                Dyadic::new(&self.mant + (&other.mant << shift), self.exp)
            }
        }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::ZERO;
        }
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn mul_int(&self, k: &IBig) -> Dyadic {
        Dyadic::new(&self.mant * k, self.exp)
    }

    /// Truncate toward minus infinity to at most `prec` mantissa bits.
    /// Returns the rounded value and the exponent `e` of the error bound
    /// `|error| < 2^e`, or `None` when exact.
    pub fn round_floor(&self, prec: u32) -> (Dyadic, Option<i64>) {
        let len = self.mant.bit_len() as u64;
        if len <= prec as u64 {
            return (self.clone(), None);
        }
        let shift = (len - prec as u64) as usize;
        let mant = &self.mant >> shift;
        let exp = self.exp + shift as i64;
        (Dyadic::new(mant, exp), Some(exp))
    }

    /// Nearest f64 (may overflow to infinity or underflow to zero).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = self.mant.bit_len() as i64;
        let (m, e) = if len > 64 {
            let s = (len - 64) as usize;
            (&self.mant >> s, self.exp + s as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().value();
        scale_f64(mf, e)
    }

    /// Outward f64 enclosure `lo <= self <= hi`.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        let x = self.to_f64();
        let back = if x.is_finite() { Some(Dyadic::from_f64(x)) } else { None };
        match back.map(|b| b.cmp(self)) {
            Some(Ordering::Equal) => (x, x),
            Some(Ordering::Less) => (x, x.next_up()),
            Some(Ordering::Greater) => (x.next_down(), x),
            None => {
                if x > 0.0 {
                    (f64::MAX, f64::INFINITY)
                } else {
                    (f64::NEG_INFINITY, f64::MIN)
                }
            }
        }
    }

    /// Reduced fraction `num / den` with `den` a power of two.
    pub fn to_fraction(&self) -> (IBig, UBig) {
        let n = self.clone().normalized();
        if n.exp >= 0 {
            (n.mant << n.exp as usize, UBig::ONE)
        } else {
            (n.mant, UBig::ONE << (-n.exp) as usize)
        }
    }

    /// Midpoint of two dyadics.
    pub fn midpoint(a: &Dyadic, b: &Dyadic) -> Dyadic {
        a.add(b).mul_pow2(-1)
    }
}

/// `m * 2^e` in f64 without intermediate overflow.
pub(crate) fn scale_f64(m: f64, e: i64) -> f64 {
    let mut x = m;
    let mut e = e;
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        // Same nonzero sign: compare magnitudes by top bit first.
        let (ta, tb) = (self.top().unwrap(), other.top().unwrap());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let d = self.sub(other);
            // d has the sign of self - other; magnitudes compare as sign * d.
            (d.signum() * sa).cmp(&0)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_fraction();
        if d == UBig::ONE {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `n`, `n/2^k` written as `n/d` with `d` a power of two,
    /// or `2^k` / `2^-k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a dyadic number: {s:?}"));
        if let Some(k) = s.strip_prefix("2^") {
            let k: i64 = k.parse().map_err(|_| bad())?;
            return Ok(Dyadic::pow2(k));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n = IBig::from_str(n.trim()).map_err(|_| bad())?;
            let d = UBig::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() || !d.is_power_of_two() {
                return Err(bad());
            }
            let k = d.trailing_zeros().unwrap_or(0) as i64;
            return Ok(Dyadic::new(n, -k).normalized());
        }
        let n = IBig::from_str(s).map_err(|_| bad())?;
        Ok(Dyadic::from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(d("3/4").to_string(), "3/4");
        assert_eq!(d("6/8").to_string(), "3/4");
        assert_eq!(d("2^-3").to_string(), "1/8");
        assert_eq!(d("-5").to_string(), "-5");
        assert_eq!(d("1/9007199254740992"), Dyadic::pow2(-53));
        assert!("1/3".parse::<Dyadic>().is_err());
        assert!("x".parse::<Dyadic>().is_err());
    }

    #[test]
    fn ordering_across_exponents() {
        assert!(d("1/2") < d("3/4"));
        assert!(d("-1/2") > d("-3/4"));
        assert!(d("-1") < d("1/1024"));
        assert_eq!(d("2/4"), d("1/2"));
        assert!(Dyadic::pow2(-5000) > Dyadic::ZERO);
        assert!(Dyadic::pow2(-5000) < Dyadic::pow2(-4999));
    }

    #[test]
    fn f64_roundtrip_and_bounds() {
        for x in [0.1, -3.75, 1e-300, 6.02e23, 5e-324] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
        let third = Dyadic::new(IBig::from(0x5555_5555_5555_5555_5555u128), -82);
        let (lo, hi) = third.to_f64_bounds();
        assert!(Dyadic::from_f64(lo) <= third && third <= Dyadic::from_f64(hi));
        assert!(lo < hi);
    }

    #[test]
    fn round_floor_bounds_error() {
        let x = d("12345/1");
        let (r, e) = x.round_floor(4);
        let e = e.unwrap();
        let diff = x.sub(&r);
        assert!(diff >= Dyadic::ZERO && diff < Dyadic::pow2(e));
        assert!(r.bit_len() <= 4);
    }
}
