//! Complex balls over floating-point midpoints with an unbounded exponent.
//!
//! These are the fast rungs of the precision ladder for Pellet tests. A
//! ball is `(re + i im) 2^e` with radius `rad 2^e`, where `re`, `im` are
//! kept near unit size and `e` is an i64, so coefficients far outside the
//! f64 range stay representable. The midpoint parts are either one f64
//! (53 bits) or an unevaluated pair of f64 ([`DD`], about 106 bits). Every
//! operation adds a bound on its own rounding error to the radius.

use dashu_int::IBig;

use crate::dyadic::Dyadic;
use crate::poly::IntPolynomial;

/// Unit roundoff of f64.
const U: f64 = 1.0 / 9007199254740992.0;

/// Relative slack applied to computed radii and upper bounds.
const UP: f64 = 1.0 + 1.0 / 281474976710656.0;

/// Relative slack for lower bounds.
const DOWN: f64 = 1.0 - 2.0 / 281474976710656.0;

/// Absolute slack (relative to `2^e`) covering underflow in one operation.
const TINY: f64 = 9.332636185032189e-302; // 2^-1000

/// Exponent gap beyond which the smaller addend is folded into the radius.
const GAP: i64 = 1000;

fn pow2f(k: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&k));
    f64::from_bits(((1023 + k) as u64) << 52)
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        let (m, e) = frexp(x * pow2f(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, exp - 1022)
}

/// Non-negative magnitude `m 2^e` with `0.5 <= m < 1`, used for the
/// dominance sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct XF {
    m: f64,
    e: i64,
}

impl XF {
    pub(crate) const ZERO: XF = XF { m: 0.0, e: 0 };

    fn norm(m: f64, e: i64) -> XF {
        if m == 0.0 {
            return XF::ZERO;
        }
        let (m, k) = frexp(m);
        XF { m, e: e + k }
    }

    fn is_zero(self) -> bool {
        self.m == 0.0
    }

    pub(crate) fn mul_pow2(self, k: i64) -> XF {
        if self.is_zero() {
            self
        } else {
            XF { m: self.m, e: self.e + k }
        }
    }

    fn add(self, o: XF, f: f64) -> XF {
        if self.is_zero() || o.is_zero() {
            return if self.is_zero() { o } else { self };
        }
        let (a, b) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = a.e - b.e;
        if gap > GAP {
            // `b < 2^-GAP a`; one extra ulp-scale bump covers it.
            return XF::norm(a.m * f * UP, a.e);
        }
        XF::norm((a.m + b.m * pow2f(-gap)) * f, a.e)
    }

    /// Upper bound on the sum of two non-negative values.
    pub(crate) fn add_up(self, o: XF) -> XF {
        self.add(o, UP)
    }

    /// Lower bound on the sum of two non-negative values.
    pub(crate) fn add_down(self, o: XF) -> XF {
        if self.is_zero() || o.is_zero() {
            return if self.is_zero() { o } else { self };
        }
        let (a, b) = if self.e >= o.e { (self, o) } else { (o, self) };
        if a.e - b.e > GAP {
            return XF::norm(a.m * DOWN, a.e);
        }
        a.add(b, DOWN)
    }

    /// `x >= y`.
    pub(crate) fn ge(self, o: XF) -> bool {
        match (self.is_zero(), o.is_zero()) {
            (_, true) => true,
            (true, false) => false,
            _ => (self.e, self.m) >= (o.e, o.m),
        }
    }

    pub(crate) fn gt(self, o: XF) -> bool {
        !o.ge(self)
    }
}

/// Midpoint scalar of unit size with a bound on the relative error of each
/// rounded operation.
pub(crate) trait Mid: Copy + std::fmt::Debug {
    /// Relative error bound of one `add` or `mul`.
    const UNIT: f64;
    const ZERO: Self;
    fn one() -> Self;
    /// `(x, r, e)` with `|value - x 2^e| <= r 2^e` and `0.5 <= |x| < 1`.
    fn from_dyadic(v: &Dyadic) -> (Self, f64, i64);
    fn is_zero(self) -> bool;
    fn neg(self) -> Self;
    /// Multiply by a power of two `f`.
    fn scale(self, f: f64) -> Self;
    fn mul(self, o: Self) -> Self;
    fn add(self, o: Self) -> Self;
    /// `|x|` up to a few ulps.
    fn abs(self) -> f64;
    /// Nearest f64.
    fn approx(self) -> f64;
}

impl Mid for f64 {
    const UNIT: f64 = U;
    const ZERO: f64 = 0.0;

    fn one() -> f64 {
        1.0
    }

    fn from_dyadic(v: &Dyadic) -> (f64, f64, i64) {
        let len = v.bit_len() as i64;
        let shift = (len - 64).max(0);
        let top = v.mantissa() >> shift as usize;
        let (m, k) = frexp(top.to_f64().value());
        let r = if len <= 53 { 0.0 } else { 4.0 * U };
        (m, r, v.exponent() + shift + k)
    }

    fn is_zero(self) -> bool {
        self == 0.0
    }

    fn neg(self) -> f64 {
        -self
    }

    fn scale(self, f: f64) -> f64 {
        self * f
    }

    fn mul(self, o: f64) -> f64 {
        self * o
    }

    fn add(self, o: f64) -> f64 {
        self + o
    }

    fn abs(self) -> f64 {
        f64::abs(self)
    }

    fn approx(self) -> f64 {
        self
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn split(a: f64) -> (f64, f64) {
    let c = 134217729.0 * a;
    let h = c - (c - a);
    (h, a - h)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

/// Double-double `h + l` with `|l| <= ulp(h) / 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DD {
    h: f64,
    l: f64,
}

impl Mid for DD {
    // Accurate double-word sums and products err by a few u^2; 2^-100
    // leaves ample room.
    const UNIT: f64 = 7.888609052210118e-31;
    const ZERO: DD = DD { h: 0.0, l: 0.0 };

    fn one() -> DD {
        DD { h: 1.0, l: 0.0 }
    }

    fn from_dyadic(v: &Dyadic) -> (DD, f64, i64) {
        let len = v.bit_len() as i64;
        let shift = (len - 106).max(0);
        let top: IBig = v.mantissa() >> shift as usize;
        let t = i128::try_from(&top).expect("106-bit mantissa");
        let a = (t >> 53) as f64 * pow2f(53);
        let b = (t & ((1 << 53) - 1)) as f64;
        let (h, l) = two_sum(a, b);
        let (m, k) = frexp(h);
        let f = pow2f(-k);
        let r = if shift == 0 { 0.0 } else { pow2f(-103) };
        (DD { h: m, l: l * f }, r, v.exponent() + shift + k)
    }

    fn is_zero(self) -> bool {
        self.h == 0.0
    }

    fn neg(self) -> DD {
        DD { h: -self.h, l: -self.l }
    }

    fn scale(self, f: f64) -> DD {
        DD { h: self.h * f, l: self.l * f }
    }

    fn mul(self, o: DD) -> DD {
        let (ch, cl1) = two_prod(self.h, o.h);
        let cl2 = self.h * o.l + self.l * o.h;
        let (h, l) = fast_two_sum(ch, cl1 + cl2);
        DD { h, l }
    }

    fn add(self, o: DD) -> DD {
        let (sh, sl) = two_sum(self.h, o.h);
        let (th, tl) = two_sum(self.l, o.l);
        let (sh, sl) = fast_two_sum(sh, sl + th);
        let (h, l) = fast_two_sum(sh, sl + tl);
        DD { h, l }
    }

    fn abs(self) -> f64 {
        self.h.abs() + self.l.abs()
    }

    fn approx(self) -> f64 {
        self.h + self.l
    }
}

/// Complex disc ball `|z - (re + i im) 2^e| <= rad 2^e`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct XC<M: Mid> {
    re: M,
    im: M,
    rad: f64,
    e: i64,
}

impl<M: Mid> XC<M> {
    const ZERO: XC<M> = XC { re: M::ZERO, im: M::ZERO, rad: 0.0, e: 0 };

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad == 0.0
    }

    /// Rescale so that the largest part lies in `[0.5, 1)`.
    fn norm(self) -> XC<M> {
        let m = self.re.abs().max(self.im.abs()).max(self.rad);
        if m == 0.0 {
            return XC::ZERO;
        }
        let (_, k) = frexp(m);
        if k == 0 {
            return self;
        }
        let f = pow2f(-k);
        let rad = if k > 0 { (self.rad * f + TINY) * UP } else { self.rad * f };
        XC { re: self.re.scale(f), im: self.im.scale(f), rad, e: self.e + k }
    }

    pub(crate) fn from_dyadics(re: &Dyadic, im: &Dyadic) -> XC<M> {
        let part = |v: &Dyadic| if v.is_zero() { (M::ZERO, 0.0, i64::MIN) } else { M::from_dyadic(v) };
        let (a, ra, ea) = part(re);
        let (b, rb, eb) = part(im);
        let e = ea.max(eb);
        if e == i64::MIN {
            return XC::ZERO;
        }
        let fit = |x: M, r: f64, ex: i64| -> (M, f64) {
            if ex == i64::MIN {
                (M::ZERO, 0.0)
            } else if e - ex > GAP {
                (M::ZERO, TINY)
            } else {
                let f = pow2f(ex - e);
                (x.scale(f), r * f + if ex < e { TINY } else { 0.0 })
            }
        };
        let (a, ra) = fit(a, ra, ea);
        let (b, rb) = fit(b, rb, eb);
        XC { re: a, im: b, rad: (ra + rb) * UP, e }.norm()
    }

    fn norm1(&self) -> f64 {
        self.re.abs() + self.im.abs()
    }

    fn neg(self) -> XC<M> {
        XC { re: self.re.neg(), im: self.im.neg(), ..self }
    }

    fn mul_pow2(self, k: i64) -> XC<M> {
        XC { e: self.e + k, ..self }
    }

    fn add(self, o: XC<M>) -> XC<M> {
        if o.is_zero() {
            return self;
        }
        if self.is_zero() {
            return o;
        }
        let (a, b) = if self.e >= o.e { (self, o) } else { (o, self) };
        let gap = a.e - b.e;
        if gap > GAP {
            // Every part of `b` is below 2^-GAP in units of 2^a.e.
            return XC { rad: (a.rad + 4.0 * TINY) * UP, ..a };
        }
        let f = pow2f(-gap);
        let re = a.re.add(b.re.scale(f));
        let im = a.im.add(b.im.scale(f));
        let round = (re.abs() + im.abs()) * M::UNIT;
        let rad = (a.rad + b.rad * f + round) * UP + 2.0 * TINY;
        XC { re, im, rad, e: a.e }.norm()
    }

    fn mul(self, o: XC<M>) -> XC<M> {
        if self.is_zero() || o.is_zero() {
            return XC::ZERO;
        }
        let (re, im, round) = if self.im.is_zero() && o.im.is_zero() {
            let re = self.re.mul(o.re);
            (re, M::ZERO, re.abs() * M::UNIT)
        } else {
            let re = self.re.mul(o.re).add(self.im.mul(o.im).neg());
            let im = self.re.mul(o.im).add(self.im.mul(o.re));
            (re, im, self.norm1() * o.norm1() * (3.0 * M::UNIT))
        };
        let rad = (round + self.norm1() * o.rad + o.norm1() * self.rad + self.rad * o.rad) * UP + 2.0 * TINY;
        XC { re, im, rad, e: self.e + o.e }.norm()
    }

    /// Upper and lower bounds of `|z|` over the ball.
    pub(crate) fn abs_bounds(&self) -> (XF, XF) {
        let h = self.re.approx().hypot(self.im.approx());
        let up = XF::norm((h * UP + self.rad) * UP, self.e);
        let lo = (h * DOWN - self.rad) * DOWN;
        (up, if lo > 0.0 { XF::norm(lo, self.e) } else { XF::ZERO })
    }

    pub(crate) fn radius(&self) -> XF {
        XF::norm(self.rad, self.e)
    }
}

/// Polynomial with [`XC`] coefficients, lowest degree first.
#[derive(Clone, Debug)]
pub(crate) struct XPoly<M: Mid> {
    pub(crate) c: Vec<XC<M>>,
}

impl<M: Mid> XPoly<M> {
    pub(crate) fn from_int(p: &IntPolynomial) -> XPoly<M> {
        let c = p
            .coeffs()
            .iter()
            .map(|g| XC::from_dyadics(&Dyadic::from_int(g.re.clone()), &Dyadic::from_int(g.im.clone())))
            .collect();
        XPoly { c }
    }

    /// `P(c + x)` by repeated synthetic division.
    pub(crate) fn taylor_shift(&self, c: XC<M>) -> XPoly<M> {
        let mut a = self.c.clone();
        if c.is_zero() || a.len() < 2 {
            return self.clone();
        }
        let n = a.len() - 1;
        for k in 0..n {
            for j in (k..n).rev() {
                let t = a[j + 1].mul(c);
                a[j] = a[j].add(t);
            }
        }
        XPoly { c: a }
    }

    /// `P(2^k x)`.
    pub(crate) fn scale_pow2(&self, k: i64) -> XPoly<M> {
        XPoly { c: self.c.iter().enumerate().map(|(j, z)| z.mul_pow2(k * j as i64)).collect() }
    }

    /// `P(r x)` for a ball `r`.
    pub(crate) fn scale(&self, r: XC<M>) -> XPoly<M> {
        let mut pw = XC { re: M::one(), im: M::ZERO, rad: 0.0, e: 0 };
        let mut out = Vec::with_capacity(self.c.len());
        for (j, z) in self.c.iter().enumerate() {
            if j > 0 {
                pw = pw.mul(r);
            }
            out.push(z.mul(pw));
        }
        XPoly { c: out }
    }

    /// `(-1)^d [Pe(x)^2 - x Po(x)^2]`.
    pub(crate) fn graeffe_step(&self) -> XPoly<M> {
        let d = self.c.len() - 1;
        let even: Vec<XC<M>> = self.c.iter().step_by(2).copied().collect();
        let odd: Vec<XC<M>> = self.c.iter().skip(1).step_by(2).copied().collect();
        let e2 = square(&even);
        let o2 = square(&odd);
        let flip = d % 2 == 1;
        let c = (0..=d)
            .map(|j| {
                let e = e2.get(j).copied().unwrap_or(XC::ZERO);
                let v = match j.checked_sub(1).and_then(|i| o2.get(i)) {
                    Some(o) => e.add(o.neg()),
                    None => e,
                };
                if flip {
                    v.neg()
                } else {
                    v
                }
            })
            .collect();
        XPoly { c }
    }
}

fn square<M: Mid>(a: &[XC<M>]) -> Vec<XC<M>> {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a.len();
    let mut out = Vec::with_capacity(2 * n - 1);
    for k in 0..(2 * n - 1) {
        let mut cross = XC::ZERO;
        let mut i = k.saturating_sub(n - 1);
        while i < k - i {
            cross = cross.add(a[i].mul(a[k - i]));
            i += 1;
        }
        let mut v = cross.mul_pow2(1);
        if k % 2 == 0 {
            v = v.add(a[k / 2].mul(a[k / 2]));
        }
        out.push(v);
    }
    out
}
