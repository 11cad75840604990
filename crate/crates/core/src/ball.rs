//! Midpoint-radius ("ball") arithmetic with dyadic midpoints.
//!
//! A [`Ball`] is a dyadic midpoint with an error radius stored as a [`Mag`],
//! a short unsigned float whose arithmetic rounds in a chosen direction.
//! Every operation returns a ball that contains all results reachable from
//! points of the input balls. Midpoints are rounded to a working precision
//! given in bits; rounding error is folded into the radius.

use std::cmp::Ordering;

use dashu_int::ops::{BitTest, UnsignedAbs};
use dashu_int::IBig;

use crate::dyadic::{scale_f64, Dyadic};

const MAG_BITS: u32 = 32;
const MAG_LO: u64 = 1 << (MAG_BITS - 1);
const MAG_HI: u64 = 1 << MAG_BITS;

/// Nonnegative `man * 2^exp` with a 32-bit mantissa.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Default for Mag {
    fn default() -> Self {
        Mag::ZERO
    }
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn norm_up(mut man: u64, mut exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        while man >= MAG_HI {
            let lost = man & 1;
            man = (man >> 1) + lost;
            exp += 1;
        }
        // The increment above can push `man` back to MAG_HI.
        if man >= MAG_HI {
            man >>= 1;
            exp += 1;
        }
        while man < MAG_LO {
            man <<= 1;
            exp -= 1;
        }
        Mag { man, exp }
    }

    fn norm_down(mut man: u64, mut exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let len = 64 - man.leading_zeros();
        if len > MAG_BITS {
            let s = len - MAG_BITS;
            man >>= s;
            exp += s as i64;
        }
        while man < MAG_LO {
            man <<= 1;
            exp -= 1;
        }
        Mag { man, exp }
    }

    pub fn pow2(e: i64) -> Mag {
        Mag { man: MAG_LO, exp: e - (MAG_BITS as i64 - 1) }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Smallest `t` with `self < 2^t`; `None` for zero.
    pub fn top(&self) -> Option<i64> {
        if self.man == 0 {
            None
        } else {
            Some(self.exp + MAG_BITS as i64)
        }
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(IBig::from(self.man), self.exp)
    }

    pub fn upper_of(x: &Dyadic) -> Mag {
        Mag::from_int_parts(x, true)
    }

    pub fn lower_of(x: &Dyadic) -> Mag {
        Mag::from_int_parts(x, false)
    }

    fn from_int_parts(x: &Dyadic, up: bool) -> Mag {
        if x.is_zero() {
            return Mag::ZERO;
        }
        let a = x.mantissa().unsigned_abs();
        let len = a.bit_len();
        if len <= 64 {
            let m: u64 = u64::try_from(&a).expect("fits");
            return if up { Mag::norm_up(m, x.exponent()) } else { Mag::norm_down(m, x.exponent()) };
        }
        let s = len - 63;
        let top: u64 = u64::try_from(&(&a >> s)).expect("fits");
        let m = if up { top + 1 } else { top };
        if up {
            Mag::norm_up(m, x.exponent() + s as i64)
        } else {
            Mag::norm_down(m, x.exponent() + s as i64)
        }
    }

    pub fn from_f64_upper(x: f64) -> Mag {
        assert!(x >= 0.0 && x.is_finite());
        Mag::upper_of(&Dyadic::from_f64(x))
    }

    /// Nearest f64 approximation (not directed).
    pub fn to_f64(&self) -> f64 {
        scale_f64(self.man as f64, self.exp)
    }

    /// log2 of the value, approximately; `-inf` for zero.
    pub fn log2_approx(&self) -> f64 {
        if self.man == 0 {
            f64::NEG_INFINITY
        } else {
            (self.man as f64).log2() + self.exp as f64
        }
    }

    fn align(a: &Mag, b: &Mag) -> (u64, u64, i64, bool) {
        // Returns mantissas aligned to the larger exponent; the bool says
        // whether bits of the smaller one were discarded.
        let (hi, lo, swap) = if a.exp >= b.exp { (a, b, false) } else { (b, a, true) };
        let d = hi.exp - lo.exp;
        let (lm, lost) = if d >= 64 {
            (0, lo.man != 0)
        } else {
            let lm = lo.man >> d;
            (lm, (lm << d) != lo.man)
        };
        if swap {
            (lm, hi.man, hi.exp, lost)
        } else {
            (hi.man, lm, hi.exp, lost)
        }
    }

    pub fn add_up(&self, other: &Mag) -> Mag {
        if self.man == 0 {
            return *other;
        }
        if other.man == 0 {
            return *self;
        }
        let (x, y, e, lost) = Mag::align(self, other);
        Mag::norm_up(x + y + lost as u64, e)
    }

    pub fn add_down(&self, other: &Mag) -> Mag {
        if self.man == 0 {
            return *other;
        }
        if other.man == 0 {
            return *self;
        }
        let (x, y, e, _) = Mag::align(self, other);
        Mag::norm_down(x + y, e)
    }

    pub fn mul_up(&self, other: &Mag) -> Mag {
        if self.man == 0 || other.man == 0 {
            return Mag::ZERO;
        }
        Mag::norm_up(self.man * other.man, self.exp + other.exp)
    }

    pub fn mul_down(&self, other: &Mag) -> Mag {
        if self.man == 0 || other.man == 0 {
            return Mag::ZERO;
        }
        Mag::norm_down(self.man * other.man, self.exp + other.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Mag {
        if self.man == 0 {
            return Mag::ZERO;
        }
        Mag { man: self.man, exp: self.exp + k }
    }

    fn sqrt_parts(&self) -> (f64, i64) {
        // man * 2^exp with exp made even; result sqrt(man') * 2^(exp'/2).
        let (m, e) = if self.exp % 2 == 0 { (self.man, self.exp) } else { (self.man << 1, self.exp - 1) };
        // sqrt(m) < 2^16.5; scale by 2^16 so the integer part has ~32 bits.
        ((m as f64).sqrt() * 65536.0, e / 2 - 16)
    }

    pub fn sqrt_up(&self) -> Mag {
        if self.man == 0 {
            return Mag::ZERO;
        }
        let (s, e) = self.sqrt_parts();
        Mag::norm_up(s.ceil() as u64 + 1, e)
    }

    pub fn sqrt_down(&self) -> Mag {
        if self.man == 0 {
            return Mag::ZERO;
        }
        let (s, e) = self.sqrt_parts();
        let f = s.floor() as u64;
        Mag::norm_down(f.saturating_sub(1), e)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.man == 0, other.man == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.man.cmp(&other.man)),
        }
    }
}

/// Real ball `[mid - rad, mid + rad]`.
#[derive(Clone, Debug, Default)]
pub struct Ball {
    pub mid: Dyadic,
    pub rad: Mag,
}

fn round_mid(mid: Dyadic, prec: u32) -> (Dyadic, Mag) {
    match mid.round_floor(prec) {
        (m, None) => (m, Mag::ZERO),
        (m, Some(e)) => (m, Mag::pow2(e)),
    }
}

impl Ball {
    pub fn zero() -> Ball {
        Ball::default()
    }

    pub fn exact(mid: Dyadic) -> Ball {
        Ball { mid, rad: Mag::ZERO }
    }

    pub fn from_int(v: impl Into<IBig>) -> Ball {
        Ball::exact(Dyadic::from_int(v))
    }

    pub fn with_rad(mid: Dyadic, rad: Mag) -> Ball {
        Ball { mid, rad }
    }

    /// Round the midpoint to `prec` bits, widening the radius.
    pub fn rounded(&self, prec: u32) -> Ball {
        let (mid, err) = round_mid(self.mid.clone(), prec);
        Ball { mid, rad: self.rad.add_up(&err) }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        Mag::lower_of(&self.mid) <= self.rad && {
            // Mag rounding of |mid| is coarse; decide exactly when close.
            self.mid.abs() <= self.rad.to_dyadic()
        }
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.mid.sub(x).abs() <= self.rad.to_dyadic()
    }

    /// Sign of every point of the ball, or `None` when it straddles zero.
    pub fn sign(&self) -> Option<i32> {
        if self.contains_zero() {
            None
        } else {
            Some(self.mid.signum())
        }
    }

    pub fn abs_upper(&self) -> Mag {
        Mag::upper_of(&self.mid).add_up(&self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero if it contains zero).
    pub fn abs_lower(&self) -> Mag {
        if self.rad.is_zero() {
            return Mag::lower_of(&self.mid);
        }
        let d = self.mid.abs().sub(&self.rad.to_dyadic());
        if d.signum() <= 0 {
            Mag::ZERO
        } else {
            Mag::lower_of(&d)
        }
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: self.mid.neg(), rad: self.rad }
    }

    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball { mid: self.mid.mul_pow2(k), rad: self.rad.mul_pow2(k) }
    }

    pub fn add(&self, other: &Ball, prec: u32) -> Ball {
        let rad = self.rad.add_up(&other.rad);
        let (a, b) = (&self.mid, &other.mid);
        let (mid, extra) = match (a.top(), b.top()) {
            (None, _) => (b.clone(), Mag::ZERO),
            (_, None) => (a.clone(), Mag::ZERO),
            (Some(ta), Some(tb)) => {
                let window = prec as i64 + 4;
                if ta - tb > window {
                    (a.clone(), Mag::upper_of(b))
                } else if tb - ta > window {
                    (b.clone(), Mag::upper_of(a))
                } else {
                    (a.add(b), Mag::ZERO)
                }
            }
        };
        let (mid, err) = round_mid(mid, prec);
        Ball { mid, rad: rad.add_up(&extra).add_up(&err) }
    }

    pub fn sub(&self, other: &Ball, prec: u32) -> Ball {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Ball, prec: u32) -> Ball {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ball::zero();
        }
        let mid = self.mid.mul(&other.mid);
        let mut rad = Mag::ZERO;
        if !other.rad.is_zero() {
            rad = rad.add_up(&Mag::upper_of(&self.mid).mul_up(&other.rad));
        }
        if !self.rad.is_zero() {
            rad = rad.add_up(&Mag::upper_of(&other.mid).mul_up(&self.rad));
            rad = rad.add_up(&self.rad.mul_up(&other.rad));
        }
        let (mid, err) = round_mid(mid, prec);
        Ball { mid, rad: rad.add_up(&err) }
    }

    pub fn sqr(&self, prec: u32) -> Ball {
        self.mul(self, prec)
    }
}

/// Complex ball stored as a rectangle of two real balls.
#[derive(Clone, Debug, Default)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn zero() -> CBall {
        CBall::default()
    }

    pub fn new(re: Ball, im: Ball) -> CBall {
        CBall { re, im }
    }

    pub fn real(re: Ball) -> CBall {
        CBall { re, im: Ball::zero() }
    }

    pub fn exact(re: Dyadic, im: Dyadic) -> CBall {
        CBall { re: Ball::exact(re), im: Ball::exact(im) }
    }

    pub fn from_ints(re: impl Into<IBig>, im: impl Into<IBig>) -> CBall {
        CBall { re: Ball::from_int(re), im: Ball::from_int(im) }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_exact_zero() && self.im.is_exact_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_exact_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn contains(&self, re: &Dyadic, im: &Dyadic) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn rounded(&self, prec: u32) -> CBall {
        CBall { re: self.re.rounded(prec), im: self.im.rounded(prec) }
    }

    pub fn neg(&self) -> CBall {
        CBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul_pow2(&self, k: i64) -> CBall {
        CBall { re: self.re.mul_pow2(k), im: self.im.mul_pow2(k) }
    }

    pub fn add(&self, o: &CBall, prec: u32) -> CBall {
        CBall { re: self.re.add(&o.re, prec), im: self.im.add(&o.im, prec) }
    }

    pub fn sub(&self, o: &CBall, prec: u32) -> CBall {
        CBall { re: self.re.sub(&o.re, prec), im: self.im.sub(&o.im, prec) }
    }

    pub fn mul_real(&self, r: &Ball, prec: u32) -> CBall {
        CBall { re: self.re.mul(r, prec), im: self.im.mul(r, prec) }
    }

    pub fn mul(&self, o: &CBall, prec: u32) -> CBall {
        match (self.is_real(), o.is_real()) {
            (true, true) => CBall::real(self.re.mul(&o.re, prec)),
            (true, false) => o.mul_real(&self.re, prec),
            (false, true) => self.mul_real(&o.re, prec),
            (false, false) => {
                // Products are kept at double width before the final rounding.
                let wide = prec.saturating_mul(2).max(prec + 64);
                let ac = self.re.mul(&o.re, wide);
                let bd = self.im.mul(&o.im, wide);
                let ad = self.re.mul(&o.im, wide);
                let bc = self.im.mul(&o.re, wide);
                CBall { re: ac.sub(&bd, prec), im: ad.add(&bc, prec) }
            }
        }
    }

    pub fn sqr(&self, prec: u32) -> CBall {
        if self.is_real() {
            return CBall::real(self.re.sqr(prec));
        }
        let wide = prec.saturating_mul(2).max(prec + 64);
        let a2 = self.re.sqr(wide);
        let b2 = self.im.sqr(wide);
        let ab = self.re.mul(&self.im, prec).mul_pow2(1);
        CBall { re: a2.sub(&b2, prec), im: ab }
    }

    /// Upper bound of `|z|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        if self.im.is_exact_zero() {
            return self.re.abs_upper();
        }
        if self.re.is_exact_zero() {
            return self.im.abs_upper();
        }
        let a = self.re.abs_upper();
        let b = self.im.abs_upper();
        a.mul_up(&a).add_up(&b.mul_up(&b)).sqrt_up()
    }

    /// Lower bound of `|z|` over the ball.
    pub fn abs_lower(&self) -> Mag {
        if self.im.is_exact_zero() {
            return self.re.abs_lower();
        }
        if self.re.is_exact_zero() {
            return self.im.abs_lower();
        }
        let a = self.re.abs_lower();
        let b = self.im.abs_lower();
        a.mul_down(&a).add_down(&b.mul_down(&b)).sqrt_down()
    }
}
