use std::time::Instant;

use dashu_ratio::RBig;
use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::pellet::{CountResult, Pellet};
use crate::poly::{GaussInt, IntPolynomial};
use crate::region::{Disc, Segment, Square};
use crate::rootradii::{annuli_cover, default_delta, AnnuliCover};
use crate::stats::RunStats;
use crate::subdiv::{annuli_stats_real, check_width, newton_point, Mode, NewtonState};

/// Discs that together contain every root, with exact f64 geometry.
#[derive(Clone, Debug, Default)]
pub struct DiscCover {
    discs: Vec<Disc>,
    /// `(x, y, r)` of each disc; exactly the values of `discs`.
    fast: Vec<(f64, f64, f64)>,
}

impl DiscCover {
    pub fn discs(&self) -> &[Disc] {
        &self.discs
    }

    pub fn len(&self) -> usize {
        self.discs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.discs.is_empty()
    }

    fn push(&mut self, x: f64, y: f64, r: f64) {
        let r = r.max(f64::MIN_POSITIVE);
        self.discs.push(Disc::new(Dyadic::from_f64(x), Dyadic::from_f64(y), Dyadic::from_f64(r)));
        self.fast.push((x, y, r));
    }

    /// False only when no disc meets the closed box.
    pub fn meets_square(&self, b: &Square) -> bool {
        let (xl, xh) = (b.re_lo().to_f64_bounds().0, b.re_hi().to_f64_bounds().1);
        let (yl, yh) = (b.im_lo().to_f64_bounds().0, b.im_hi().to_f64_bounds().1);
        self.fast.iter().any(|&(x, y, r)| {
            let gx = gap(x, xl, xh);
            let gy = gap(y, yl, yh);
            gx.sqr().add(gy.sqr()).lo <= Interval::point(r).sqr().hi
        })
    }
}

/// Distance from `x` to `[lo, hi]`, enclosed.
fn gap(x: f64, lo: f64, hi: f64) -> Interval {
    if x < lo {
        Interval::point(lo).sub(Interval::point(x))
    } else if x > hi {
        Interval::point(x).sub(Interval::point(hi))
    } else {
        Interval::point(0.0)
    }
}

/// `[inner, outer]` radii of the annuli of a cover, plus the point
/// `[0, 0]` when the center is a root.
fn rings(cover: &AnnuliCover) -> Vec<(f64, f64)> {
    let mut r: Vec<(f64, f64)> = cover.annuli.iter().map(|a| (a.inner, a.outer)).collect();
    if cover.zeros > 0 {
        r.push((0.0, 0.0));
    }
    r
}

/// Enclosing disc of the rectangle `[xl, xh] x [yl, yh]`.
fn rect_disc(xl: f64, xh: f64, yl: f64, yh: f64) -> (f64, f64, f64) {
    let cx = xl / 2.0 + xh / 2.0;
    let cy = yl / 2.0 + yh / 2.0;
    let c = |v: f64| Interval::point(v);
    let dx = c(cx).sub(c(xl)).hull(c(xh).sub(c(cx))).mag_upper();
    let dy = c(cy).sub(c(yl)).hull(c(yh).sub(c(cy))).mag_upper();
    let r = c(dx).sqr().add(c(dy).sqr()).sqrt().hi;
    (cx, cy, r)
}

/// Rectangles enclosing `{z : a0 <= |z| <= a1, b0 <= |z - 1| <= b1}`.
fn lens(a: (f64, f64), b: (f64, f64)) -> Vec<(f64, f64, f64, f64)> {
    let i = Interval::point;
    let (a0, a1) = (i(a.0), i(a.1));
    let (b0, b1) = (i(b.0), i(b.1));
    let one = i(1.0);
    let xl = a0.sqr().sub(b1.sqr()).add(one).scale_pow2(-1).lo;
    let xh = a1.sqr().sub(b0.sqr()).add(one).scale_pow2(-1).hi;
    if xl > xh {
        return Vec::new();
    }
    let x = Interval::new(xl, xh);
    let xm1 = x.sub(one);
    let up1 = a1.sqr().sub(i(x.mag_lower()).sqr()).hi;
    let up2 = b1.sqr().sub(i(xm1.mag_lower()).sqr()).hi;
    let y2h = up1.min(up2);
    if y2h < 0.0 {
        return Vec::new();
    }
    let lo1 = a0.sqr().sub(i(x.mag_upper()).sqr()).lo;
    let lo2 = b0.sqr().sub(i(xm1.mag_upper()).sqr()).lo;
    let y2l = lo1.max(lo2).max(0.0);
    let yh = Interval::point(y2h).sqrt().hi;
    let yl = Interval::point(y2l).sqrt().lo.max(0.0);
    if yl > yh {
        return Vec::new();
    }
    if yl == 0.0 {
        vec![(xl, xh, -yh, yh)]
    } else {
        vec![(xl, xh, yl, yh), (xl, xh, -yh, -yl)]
    }
}

fn may_meet_ring(x: f64, y: f64, r: f64, ring: (f64, f64)) -> bool {
    let d = Interval::point(x).sqr().add(Interval::point(y).sub(Interval::point(1.0)).sqr()).sqrt();
    let rr = Interval::point(r);
    d.sub(rr).lo <= ring.1 && d.add(rr).hi >= ring.0
}

/// Discs covering the roots, from covers centered at 0, 1 and `i`: the
/// intersections of annuli around 0 and 1, kept when they (or, for real
/// polynomials, their conjugates) meet an annulus around `i`.
pub fn disc_cover(a0: &AnnuliCover, a1: &AnnuliCover, ai: &AnnuliCover, real: bool) -> DiscCover {
    let ri = rings(ai);
    let mut out = DiscCover::default();
    for ra in rings(a0) {
        for rb in rings(a1) {
            for (xl, xh, yl, yh) in lens(ra, rb) {
                let (x, y, r) = rect_disc(xl, xh, yl, yh);
                let keep = ri
                    .iter()
                    .any(|&ring| may_meet_ring(x, y, r, ring) || (real && may_meet_ring(x, -y, r, ring)));
                if keep {
                    out.push(x, y, r);
                }
            }
        }
    }
    out
}

/// Which step decided a test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    Annuli,
    Pellet,
    Shortcut,
}

fn cc_zero_inner(b: &Square, pellet: &Pellet, discs: &DiscCover, a0: &AnnuliCover) -> (CountResult, Source) {
    if !discs.meets_square(b) {
        return (Some(0), Source::Annuli);
    }
    if b.meets_real_axis() && a0.center.is_zero() {
        let s = Segment::from_ends(&b.re_lo(), &b.re_hi(), b.depth);
        if let Ok(st) = annuli_stats_real(a0, &s) {
            if st.n_ge1 >= 1 {
                return (None, Source::Shortcut);
            }
        }
    }
    (pellet.t_zero(&b.disc()), Source::Pellet)
}

/// Exclusion test on a box: `Some(0)` when `b` has no root, `None` when
/// inconclusive. `a0` must be centered at 0.
pub fn cc_zero(b: &Square, pellet: &Pellet, discs: &DiscCover, a0: &AnnuliCover) -> CountResult {
    cc_zero_inner(b, pellet, discs, a0).0
}

/// A disc holding `multiplicity` roots, whose 3-fold dilation holds the
/// same roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub disc: Disc,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct ComplexOptions {
    pub mode: Mode,
    /// Relative width of the annuli covers; `d^-2` when `None`.
    pub delta: Option<RBig>,
    /// Largest radius of an output disc.
    pub epsilon: Dyadic,
}

impl Default for ComplexOptions {
    fn default() -> Self {
        ComplexOptions { mode: Mode::Radii, delta: None, epsilon: Dyadic::pow2(-53) }
    }
}

/// Touching boxes of equal width.
struct Component {
    boxes: Vec<Square>,
    newton: NewtonState,
}

impl Component {
    fn hull(&self) -> Square {
        Square::cover(&self.boxes.iter().collect::<Vec<_>>())
    }
}

enum Step {
    Discard,
    Output(usize),
    Moved,
    Split,
}

struct Covers {
    a0: AnnuliCover,
    discs: DiscCover,
}

struct Solver<'a> {
    p: &'a IntPolynomial,
    dp: IntPolynomial,
    pellet: Pellet,
    covers: Option<Covers>,
    epsilon: Dyadic,
}

impl Solver<'_> {
    fn exclude(&self, b: &Square) -> (bool, bool) {
        match &self.covers {
            Some(c) => {
                let (k, src) = cc_zero_inner(b, &self.pellet, &c.discs, &c.a0);
                (k != Some(0), src == Source::Annuli)
            }
            None => (self.pellet.t_zero(&b.disc()) != Some(0), false),
        }
    }

    fn step(&self, comp: &mut Component, hull: &Square, separated: bool) -> Step {
        if !separated {
            return Step::Split;
        }
        match self.pellet.t_star(&hull.disc().dilate(2, 0)) {
            Some(0) => Step::Discard,
            Some(m) if hull.disc().radius <= self.epsilon => Step::Output(m),
            Some(m) => {
                comp.newton.record(m);
                if comp.newton.ready() && self.newton(comp, hull, m) {
                    Step::Moved
                } else {
                    Step::Split
                }
            }
            None => Step::Split,
        }
    }

    fn newton(&self, comp: &mut Component, hull: &Square, m: usize) -> bool {
        let lf = comp.newton.log_factor;
        let w = hull.width.mul_pow2(-(lf as i64));
        // Start off-center: at the center of a tight cluster P' may vanish.
        let start = hull.re.add(&hull.width.mul_pow2(-3));
        let z = newton_point(self.p, &self.dp, (&start, &hull.im), m, &w, self.pellet.cap());
        let Some((x, y)) = z else {
            comp.newton.failed();
            return false;
        };
        let cand = Square::new(x, y, w, hull.depth + lf);
        // The inscribed disc of the candidate must lie in 2 Delta(hull).
        let room = hull.width.mul_int(&3.into()).mul_pow2(-1).sub(&cand.width.mul_pow2(-1));
        let dx = cand.re.sub(&hull.re);
        let dy = cand.im.sub(&hull.im);
        let inside = room.signum() > 0 && dx.mul(&dx).add(&dy.mul(&dy)) <= room.mul(&room);
        let inscribed = Disc::new(cand.re.clone(), cand.im.clone(), cand.width.mul_pow2(-1));
        if inside && self.pellet.t_star(&inscribed) == Some(m) {
            comp.newton.succeeded();
            comp.boxes = vec![cand];
            true
        } else {
            comp.newton.failed();
            false
        }
    }
}

/// Group boxes into connected components (sharing at least a corner).
fn group(boxes: Vec<Square>) -> Vec<Vec<Square>> {
    let n = boxes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if boxes[i].touches(&boxes[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<Square>> = Vec::new();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    for (i, b) in boxes.into_iter().enumerate() {
        let r = find(&mut parent, i);
        match slot[r] {
            Some(g) => groups[g].push(b),
            None => {
                slot[r] = Some(groups.len());
                groups.push(vec![b]);
            }
        }
    }
    groups
}

fn box_key(b: &Square) -> (Dyadic, Dyadic) {
    (b.re.clone(), b.im.clone())
}

/// Clusters of the complex roots of `p`: pairwise disjoint discs of radius
/// at most `epsilon`, sorted by center.
pub fn cluster_complex(p: &IntPolynomial, opts: &ComplexOptions) -> Result<(Vec<Cluster>, RunStats)> {
    let start = Instant::now();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if opts.epsilon.signum() <= 0 {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let mut stats = RunStats::default();
    let mut out: Vec<Cluster> = Vec::new();
    if p.degree() == 0 {
        stats.t_total = start.elapsed().as_secs_f64();
        return Ok((out, stats));
    }
    let covers = match opts.mode {
        Mode::Classic => None,
        Mode::Radii => {
            let t = Instant::now();
            let delta = opts.delta.clone().unwrap_or_else(|| default_delta(p.degree()));
            let a0 = annuli_cover(p, &GaussInt::zero(), &delta)?;
            let a1 = annuli_cover(p, &GaussInt::one(), &delta)?;
            let ai = annuli_cover(p, &GaussInt::i(), &delta)?;
            let discs = disc_cover(&a0, &a1, &ai, p.is_real());
            stats.t_radii = t.elapsed().as_secs_f64();
            Some(Covers { a0, discs })
        }
    };
    let solver = Solver { p, dp: p.derivative(), pellet: Pellet::new(p), covers, epsilon: opts.epsilon.clone() };
    let cap = solver.pellet.cap();
    let r = Dyadic::pow2(p.fujiwara_bound()?.top().expect("positive bound"));
    let roi = Square::new(Dyadic::ZERO, Dyadic::ZERO, r.mul_pow2(1), 0);

    let mut pending: Vec<(Vec<Square>, NewtonState)> = vec![(vec![roi], NewtonState::default())];
    let mut comps: Vec<Component> = Vec::new();
    loop {
        let tagged: Vec<(usize, Square)> = pending
            .iter()
            .enumerate()
            .flat_map(|(i, (bs, _))| bs.iter().map(move |b| (i, b.clone())))
            .collect();
        stats.boxes_visited += tagged.len() as u64;
        let kept: Vec<(bool, bool)> = tagged.par_iter().map(|(_, b)| solver.exclude(b)).collect();
        let mut survivors: Vec<Vec<Square>> = vec![Vec::new(); pending.len()];
        for ((i, b), (keep, by_annuli)) in tagged.into_iter().zip(kept) {
            stats.n_annuli_excluded += by_annuli as u64;
            if keep {
                stats.tree_depth = stats.tree_depth.max(b.depth);
                survivors[i].push(b);
            }
        }
        for (bs, (_, newton)) in survivors.into_iter().zip(&pending) {
            let groups = group(bs);
            let inherit = groups.len() == 1;
            for g in groups {
                let newton = if inherit { *newton } else { NewtonState::default() };
                comps.push(Component { boxes: g, newton });
            }
        }
        pending.clear();
        if comps.is_empty() {
            break;
        }
        for c in &mut comps {
            c.boxes.sort_by_key(box_key);
        }
        comps.sort_by(|a, b| box_key(&a.boxes[0]).cmp(&box_key(&b.boxes[0])));
        for c in &comps {
            check_width(&c.boxes[0].width, cap, "cluster box")?;
        }

        let hulls: Vec<Square> = comps.iter().map(Component::hull).collect();
        let separated: Vec<bool> = hulls
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let d4 = h.disc().dilate(4, 0);
                hulls.iter().enumerate().all(|(j, o)| j == i || d4.disjoint_from_square(o))
                    && out.iter().all(|o| d4.disjoint_from(&o.disc))
            })
            .collect();
        let steps: Vec<Step> = comps
            .par_iter_mut()
            .zip(hulls.par_iter())
            .zip(separated.par_iter())
            .map(|((c, h), &sep)| solver.step(c, h, sep))
            .collect();

        let round_start = out.len();
        let mut next: Vec<Component> = Vec::new();
        for ((comp, hull), step) in comps.drain(..).zip(hulls).zip(steps) {
            match step {
                Step::Discard => {}
                Step::Output(m) => {
                    let disc = hull.disc();
                    if out[round_start..].iter().all(|o| o.disc.disjoint_from(&disc)) {
                        out.push(Cluster { disc, multiplicity: m });
                    } else {
                        let kids = comp.boxes.iter().flat_map(|b| b.children()).collect();
                        pending.push((kids, comp.newton));
                    }
                }
                Step::Moved => {
                    stats.tree_depth = stats.tree_depth.max(comp.boxes[0].depth);
                    next.push(comp);
                }
                Step::Split => {
                    let kids = comp.boxes.iter().flat_map(|b| b.children()).collect();
                    pending.push((kids, comp.newton));
                }
            }
        }
        comps = next;
    }
    out.sort_by(|a, b| (&a.disc.re, &a.disc.im).cmp(&(&b.disc.re, &b.disc.im)));
    stats.n_t0 = solver.pellet.n_t0();
    stats.n_tstar = solver.pellet.n_tstar();
    stats.t_total = start.elapsed().as_secs_f64();
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_real(c.iter().copied())
    }

    fn covers(q: &IntPolynomial) -> (AnnuliCover, DiscCover) {
        let delta = default_delta(q.degree());
        let a0 = annuli_cover(q, &GaussInt::zero(), &delta).unwrap();
        let a1 = annuli_cover(q, &GaussInt::one(), &delta).unwrap();
        let ai = annuli_cover(q, &GaussInt::i(), &delta).unwrap();
        let d = disc_cover(&a0, &a1, &ai, q.is_real());
        (a0, d)
    }

    fn holds(d: &Disc, x: f64, y: f64) -> bool {
        let (cx, cy, r) = (d.re.to_f64(), d.im.to_f64(), d.radius.to_f64());
        (cx - x).hypot(cy - y) <= r
    }

    #[test]
    fn disc_cover_examples() {
        let (_, d) = covers(&p(&[1, 0, 1]));
        assert!(d.len() <= 8);
        assert!(d.discs().iter().any(|c| holds(c, 0.0, 1.0)));
        assert!(d.discs().iter().any(|c| holds(c, 0.0, -1.0)));
        let (_, d) = covers(&p(&[-1, 1]));
        assert_eq!(d.len(), 1);
        assert!(holds(&d.discs()[0], 1.0, 0.0));
        let w4 = p(&[24, -50, 35, -10, 1]);
        let (_, d) = covers(&w4);
        assert!(d.len() <= 32);
        for k in 1..=4 {
            assert!(d.discs().iter().any(|c| holds(c, k as f64, 0.0)));
        }
    }

    #[test]
    fn cc_zero_examples() {
        let w4 = p(&[24, -50, 35, -10, 1]);
        let (a0, d) = covers(&w4);
        let t = Pellet::new(&w4);
        let far = Square::new(Dyadic::from_int(5), Dyadic::from_int(5), "1/2".parse().unwrap(), 0);
        assert_eq!(cc_zero(&far, &t, &d, &a0), Some(0));
        assert_eq!(t.n_t0(), 0);
        let on_axis = Square::new(Dyadic::from_int(1), Dyadic::ZERO, "1/4".parse().unwrap(), 0);
        assert_eq!(cc_zero(&on_axis, &t, &d, &a0), None);
        assert_eq!(t.n_t0(), 0);
    }

    fn cluster(q: &IntPolynomial, mode: Mode, eps: &str) -> Vec<Cluster> {
        let opts = ComplexOptions { mode, delta: None, epsilon: eps.parse().unwrap() };
        cluster_complex(q, &opts).unwrap().0
    }

    #[test]
    fn double_roots_at_plus_minus_i() {
        for mode in [Mode::Classic, Mode::Radii] {
            let c = cluster(&p(&[1, 0, 2, 0, 1]), mode, "1/1024");
            assert_eq!(c.len(), 2);
            assert!(c.iter().all(|c| c.multiplicity == 2));
            for im in [-1.0, 1.0] {
                assert!(c.iter().any(|c| holds(&c.disc, 0.0, im)));
            }
        }
    }

    #[test]
    fn triple_root_at_origin() {
        let c = cluster(&p(&[0, 0, 0, 1]), Mode::Radii, "1/1024");
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].multiplicity, 3);
        assert!(holds(&c[0].disc, 0.0, 0.0));
    }
}
