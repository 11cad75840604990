//! Segments, square boxes and discs with exact dyadic geometry.

use std::fmt;

use crate::dyadic::Dyadic;
use crate::interval::Interval;

/// Closed disc `D(c, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disc {
    pub re: Dyadic,
    pub im: Dyadic,
    pub radius: Dyadic,
}

impl Disc {
    pub fn new(re: Dyadic, im: Dyadic, radius: Dyadic) -> Disc {
        assert!(radius.signum() > 0, "disc radius must be positive");
        Disc { re, im, radius }
    }

    pub fn real(center: Dyadic, radius: Dyadic) -> Disc {
        Disc::new(center, Dyadic::ZERO, radius)
    }

    /// `f * D` with `f = num * 2^shift`, same center.
    pub fn dilate(&self, num: i64, shift: i64) -> Disc {
        let radius = self.radius.mul_int(&num.into()).mul_pow2(shift);
        Disc { re: self.re.clone(), im: self.im.clone(), radius }
    }

    pub fn center_intervals(&self) -> (Interval, Interval) {
        (Interval::from_dyadic(&self.re), Interval::from_dyadic(&self.im))
    }

    /// True when the two closed discs certainly do not meet.
    pub fn disjoint_from(&self, o: &Disc) -> bool {
        let (x, y) = self.center_intervals();
        let (u, v) = o.center_intervals();
        let d2 = x.sub(u).sqr().add(y.sub(v).sqr());
        let rs = Interval::from_dyadic(&self.radius.add(&o.radius)).sqr();
        rs.lt(d2)
    }

    /// True when the closed disc certainly does not meet the closed box.
    pub fn disjoint_from_square(&self, b: &Square) -> bool {
        let (x, y) = self.center_intervals();
        let dx = gap(x, b.re_lo(), b.re_hi());
        let dy = gap(y, b.im_lo(), b.im_hi());
        let r = Interval::from_dyadic(&self.radius).sqr();
        r.lt(dx.sqr().add(dy.sqr()))
    }
}

/// Lower bound on the distance from a point in `x` to `[lo, hi]`, as an
/// interval whose lower end is safe to use.
fn gap(x: Interval, lo: Dyadic, hi: Dyadic) -> Interval {
    let lo = Interval::from_dyadic(&lo);
    let hi = Interval::from_dyadic(&hi);
    let g = if x.hi < lo.lo {
        lo.sub(x)
    } else if x.lo > hi.hi {
        x.sub(hi)
    } else {
        Interval::point(0.0)
    };
    Interval::new(g.lo.max(0.0), g.hi.max(0.0))
}

/// Closed segment `[c - w/2, c + w/2]` of the real line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub center: Dyadic,
    pub width: Dyadic,
    pub depth: u32,
}

impl Segment {
    pub fn new(center: Dyadic, width: Dyadic, depth: u32) -> Segment {
        Segment { center, width, depth }
    }

    pub fn from_ends(lo: &Dyadic, hi: &Dyadic, depth: u32) -> Segment {
        Segment { center: Dyadic::midpoint(lo, hi), width: hi.sub(lo), depth }
    }

    pub fn lo(&self) -> Dyadic {
        self.center.sub(&self.width.mul_pow2(-1))
    }

    pub fn hi(&self) -> Dyadic {
        self.center.add(&self.width.mul_pow2(-1))
    }

    pub fn children(&self) -> [Segment; 2] {
        let q = self.width.mul_pow2(-2);
        let w = self.width.mul_pow2(-1);
        [
            Segment::new(self.center.sub(&q), w.clone(), self.depth + 1),
            Segment::new(self.center.add(&q), w, self.depth + 1),
        ]
    }

    /// `f * B` for `f = 2^k`, same center.
    pub fn dilate_pow2(&self, k: i64) -> Segment {
        Segment::new(self.center.clone(), self.width.mul_pow2(k), self.depth)
    }

    /// Covering disc `D(c, w/2)`.
    pub fn disc(&self) -> Disc {
        Disc::real(self.center.clone(), self.width.mul_pow2(-1))
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo() <= x && x <= &self.hi()
    }

    pub fn intersects(&self, o: &Segment) -> bool {
        self.lo() <= o.hi() && o.lo() <= self.hi()
    }

    pub fn contains_segment(&self, o: &Segment) -> bool {
        self.lo() <= o.lo() && o.hi() <= self.hi()
    }

    pub fn to_interval(&self) -> Interval {
        Interval::from_dyadic(&self.lo()).hull(Interval::from_dyadic(&self.hi()))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo(), self.hi())
    }
}

/// Closed axis-aligned square box with center `re + i im` and side `width`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub re: Dyadic,
    pub im: Dyadic,
    pub width: Dyadic,
    pub depth: u32,
}

impl Square {
    pub fn new(re: Dyadic, im: Dyadic, width: Dyadic, depth: u32) -> Square {
        Square { re, im, width, depth }
    }

    pub fn re_lo(&self) -> Dyadic {
        self.re.sub(&self.width.mul_pow2(-1))
    }

    pub fn re_hi(&self) -> Dyadic {
        self.re.add(&self.width.mul_pow2(-1))
    }

    pub fn im_lo(&self) -> Dyadic {
        self.im.sub(&self.width.mul_pow2(-1))
    }

    pub fn im_hi(&self) -> Dyadic {
        self.im.add(&self.width.mul_pow2(-1))
    }

    pub fn children(&self) -> [Square; 4] {
        let q = self.width.mul_pow2(-2);
        let w = self.width.mul_pow2(-1);
        let d = self.depth + 1;
        let (rl, rh) = (self.re.sub(&q), self.re.add(&q));
        let (il, ih) = (self.im.sub(&q), self.im.add(&q));
        [
            Square::new(rl.clone(), il.clone(), w.clone(), d),
            Square::new(rh.clone(), il, w.clone(), d),
            Square::new(rl, ih.clone(), w.clone(), d),
            Square::new(rh, ih, w, d),
        ]
    }

    /// Covering disc `D(c, 3w/4)`.
    pub fn disc(&self) -> Disc {
        Disc::new(self.re.clone(), self.im.clone(), self.width.mul_int(&3.into()).mul_pow2(-2))
    }

    /// Closed boxes sharing at least a corner.
    pub fn touches(&self, o: &Square) -> bool {
        self.re_lo() <= o.re_hi()
            && o.re_lo() <= self.re_hi()
            && self.im_lo() <= o.im_hi()
            && o.im_lo() <= self.im_hi()
    }

    pub fn meets_real_axis(&self) -> bool {
        self.im_lo().signum() <= 0 && self.im_hi().signum() >= 0
    }

    pub fn contains(&self, re: &Dyadic, im: &Dyadic) -> bool {
        &self.re_lo() <= re && re <= &self.re_hi() && &self.im_lo() <= im && im <= &self.im_hi()
    }

    /// Bounding box of a non-empty set of boxes, made square by growing the
    /// shorter side symmetrically.
    pub fn cover(boxes: &[&Square]) -> Square {
        let mut rl = boxes[0].re_lo();
        let mut rh = boxes[0].re_hi();
        let mut il = boxes[0].im_lo();
        let mut ih = boxes[0].im_hi();
        for b in &boxes[1..] {
            rl = rl.min(b.re_lo());
            rh = rh.max(b.re_hi());
            il = il.min(b.im_lo());
            ih = ih.max(b.im_hi());
        }
        let wr = rh.sub(&rl);
        let wi = ih.sub(&il);
        let w = wr.max(wi);
        let depth = boxes.iter().map(|b| b.depth).max().unwrap_or(0);
        Square::new(Dyadic::midpoint(&rl, &rh), Dyadic::midpoint(&il, &ih), w, depth)
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]", self.re_lo(), self.re_hi(), self.im_lo(), self.im_hi())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn segment_children_and_disc() {
        let s = Segment::from_ends(&d("0"), &d("4"), 0);
        let [a, b] = s.children();
        assert_eq!((a.lo(), a.hi()), (d("0"), d("2")));
        assert_eq!((b.lo(), b.hi()), (d("2"), d("4")));
        assert_eq!(s.disc().radius, d("2"));
        assert!(a.intersects(&b));
        assert!(s.dilate_pow2(1).contains(&d("-2")));
    }

    #[test]
    fn square_children_cover_parent() {
        let b = Square::new(d("0"), d("0"), d("2"), 0);
        let kids = b.children();
        assert!(kids.iter().all(|k| k.width == d("1")));
        assert!(kids[0].touches(&kids[3]));
        assert_eq!(b.disc().radius, d("3/2"));
        let c = Square::cover(&[&kids[0], &kids[1]]);
        assert_eq!((c.re_lo(), c.re_hi()), (d("-1"), d("1")));
        assert_eq!(c.width, d("2"));
    }

    #[test]
    fn disc_predicates_are_conservative() {
        let a = Disc::real(d("0"), d("1"));
        let b = Disc::real(d("2"), d("1"));
        assert!(!a.disjoint_from(&b));
        let c = Disc::real(d("2"), d("3/4"));
        assert!(a.disjoint_from(&c));
        let sq = Square::new(d("3"), d("0"), d("2"), 0);
        assert!(!Disc::real(d("0"), d("2")).disjoint_from_square(&sq));
        assert!(Disc::real(d("0"), d("15/8")).disjoint_from_square(&sq));
    }
}
