use std::time::Instant;

use dashu_ratio::RBig;
use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pellet::{CountResult, Pellet};
use crate::poly::{GaussInt, IntPolynomial};
use crate::region::Segment;
use crate::rootradii::{annuli_cover, default_delta, AnnuliCover, Annulus};
use crate::stats::RunStats;
use crate::subdiv::{check_width, newton_point, Mode, NewtonState};

/// Annulus counts for a segment `B` not containing the cover's center.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnnuliStatsReal {
    /// Annuli meeting `B`.
    pub n: usize,
    /// Annuli meeting `B` with one root radius and no sign change on the
    /// side of `B`.
    pub n0: usize,
    /// Annuli with one root radius and a sign change, whose real part on
    /// the side of `B` lies in `B`.
    pub n1: usize,
    /// Annuli with a sign change whose real part lies in `2B`.
    pub n_ge1: usize,
    /// Annuli with a sign change whose real part lies in `2B` but outside
    /// `B / 2`.
    pub n_ge1_ring: usize,
}

/// Outward f64 bounds `(lo, hi)` of a segment shifted by `-c`.
fn bounds(s: &Segment, c: &Dyadic) -> (f64, f64) {
    (s.lo().sub(c).to_f64_bounds().0, s.hi().sub(c).to_f64_bounds().1)
}

/// Inward f64 bounds of a segment shifted by `-c`: every f64 in
/// `[lo, hi]` lies in the segment.
fn inner_bounds(s: &Segment, c: &Dyadic) -> (f64, f64) {
    (s.lo().sub(c).to_f64_bounds().1, s.hi().sub(c).to_f64_bounds().0)
}

fn mirrored((lo, hi): (f64, f64), side: i8) -> (f64, f64) {
    if side > 0 {
        (lo, hi)
    } else {
        (-hi, -lo)
    }
}

fn within(a: &Annulus, (lo, hi): (f64, f64)) -> bool {
    lo <= a.inner && a.outer <= hi
}

/// Counts of the annuli of `cover` against the segment `b`. Annuli with an
/// unknown sign only enter `n`.
pub fn annuli_stats_real(cover: &AnnuliCover, b: &Segment) -> Result<AnnuliStatsReal> {
    if !cover.center.is_real() {
        return Err(Error::InvalidInput("annuli cover must have a real center".into()));
    }
    let c = Dyadic::from_int(cover.center.re.clone());
    let (lo, hi) = bounds(b, &c);
    if lo <= 0.0 && 0.0 <= hi {
        return Err(Error::OriginInRegion);
    }
    let side: i8 = if lo > 0.0 { 1 } else { -1 };
    let outer_b = mirrored((lo, hi), side);
    let inner_b = mirrored(inner_bounds(b, &c), side);
    let b2 = mirrored(inner_bounds(&b.dilate_pow2(1), &c), side);
    let half = mirrored(bounds(&b.dilate_pow2(-1), &c), side);
    let mut st = AnnuliStatsReal::default();
    for a in &cover.annuli {
        let sign = if side > 0 { a.s_plus } else { a.s_minus };
        let meets = a.inner <= outer_b.1 && outer_b.0 <= a.outer;
        if meets {
            st.n += 1;
            if a.h == 0 && sign > 0 {
                st.n0 += 1;
            }
        }
        if sign < 0 {
            if a.h == 0 && within(a, inner_b) {
                st.n1 += 1;
            }
            if within(a, b2) {
                st.n_ge1 += 1;
                if a.outer < half.0 || a.inner > half.1 {
                    st.n_ge1_ring += 1;
                }
            }
        }
    }
    Ok(st)
}

/// How a count was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    Annuli,
    Pellet,
    /// `-1` read off the annuli without a Pellet test.
    Shortcut,
}

fn cr_zero_inner(b: &Segment, pellet: &Pellet, cover: &AnnuliCover) -> Result<(CountResult, Source)> {
    let st = annuli_stats_real(cover, b)?;
    if st.n == st.n0 {
        return Ok((Some(0), Source::Annuli));
    }
    if st.n_ge1 >= 1 {
        return Ok((None, Source::Shortcut));
    }
    Ok((pellet.t_zero(&b.disc()), Source::Pellet))
}

fn cr_star_inner(b: &Segment, pellet: &Pellet, cover: &AnnuliCover) -> Result<(CountResult, Source)> {
    let st = annuli_stats_real(cover, b)?;
    if st.n == st.n0 + st.n1 {
        return Ok((Some(st.n1), Source::Annuli));
    }
    if st.n_ge1_ring >= 1 {
        return Ok((None, Source::Shortcut));
    }
    Ok((pellet.t_star(&b.disc()), Source::Pellet))
}

/// Exclusion test on a segment not containing 0: `Some(0)` when `b` has
/// no real root, `None` when inconclusive.
pub fn cr_zero(b: &Segment, pellet: &Pellet, cover: &AnnuliCover) -> Result<CountResult> {
    Ok(cr_zero_inner(b, pellet, cover)?.0)
}

/// Counting test on a segment not containing 0. A count read off the
/// annuli is the number of real roots in `b`, all simple; a Pellet count
/// is the number of complex roots in the covering disc of `b`.
pub fn cr_star(b: &Segment, pellet: &Pellet, cover: &AnnuliCover) -> Result<CountResult> {
    Ok(cr_star_inner(b, pellet, cover)?.0)
}

/// A segment holding exactly one distinct real root, of multiplicity
/// `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub segment: Segment,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Default)]
pub struct RealOptions {
    pub mode: Mode,
    /// Relative width of the annuli cover; `d^-2` when `None`.
    pub delta: Option<RBig>,
}

/// Touching segments of equal width, sorted.
struct Component {
    segs: Vec<Segment>,
    newton: NewtonState,
}

impl Component {
    fn hull(&self) -> Segment {
        let depth = self.segs.iter().map(|s| s.depth).max().unwrap_or(0);
        Segment::from_ends(&self.segs[0].lo(), &self.segs.last().unwrap().hi(), depth)
    }
}

enum Step {
    Discard,
    Output(usize),
    Moved,
    Split,
}

struct Solver<'a> {
    q: &'a IntPolynomial,
    dq: IntPolynomial,
    pellet: Pellet,
    cover: Option<AnnuliCover>,
    log_sep: f64,
}

impl Solver<'_> {
    /// `(keep, excluded by annuli alone)`.
    fn exclude(&self, s: &Segment) -> Result<(bool, bool)> {
        match &self.cover {
            Some(cover) if !s.contains(&Dyadic::ZERO) => {
                let (k, src) = cr_zero_inner(s, &self.pellet, cover)?;
                Ok((k != Some(0), src == Source::Annuli))
            }
            _ => Ok((self.pellet.t_zero(&s.disc()) != Some(0), false)),
        }
    }

    /// Count around `2B` for a component hull `B`.
    fn count(&self, hull: &Segment) -> Result<(CountResult, Source)> {
        let b2 = hull.dilate_pow2(1);
        match &self.cover {
            Some(cover) if !b2.contains(&Dyadic::ZERO) => cr_star_inner(&b2, &self.pellet, cover),
            _ => Ok((self.pellet.t_star(&b2.disc()), Source::Pellet)),
        }
    }

    fn step(&self, comp: &mut Component, hull: &Segment, separated: bool) -> Result<(Step, bool)> {
        if !separated {
            return Ok((Step::Split, false));
        }
        let (mut k, mut src) = self.count(hull)?;
        if src == Source::Shortcut {
            // The annuli keep deferring; after a few rounds ask Pellet so a
            // cluster can still be accelerated.
            comp.newton.defer();
            if comp.newton.ready() {
                k = self.pellet.t_star(&hull.dilate_pow2(1).disc());
                src = Source::Pellet;
            }
        }
        let by_annuli = src == Source::Annuli;
        let step = match k {
            Some(0) => Step::Discard,
            Some(1) => Step::Output(1),
            Some(m) if src == Source::Pellet => {
                let diam = hull.width.top().unwrap_or(i64::MIN) + 1;
                if (diam as f64) <= self.log_sep {
                    Step::Output(m)
                } else {
                    comp.newton.record(m);
                    if comp.newton.ready() && self.newton(comp, hull, m) {
                        Step::Moved
                    } else {
                        Step::Split
                    }
                }
            }
            _ => Step::Split,
        };
        Ok((step, by_annuli))
    }

    /// Try to replace the component by a much narrower segment around a
    /// Newton iterate; accepted only if the new segment provably holds the
    /// same `m` roots.
    fn newton(&self, comp: &mut Component, hull: &Segment, m: usize) -> bool {
        let lf = comp.newton.log_factor;
        let w = hull.width.mul_pow2(-(lf as i64));
        // Start off-center: at the center of a tight cluster P' may vanish.
        let start = hull.center.add(&hull.width.mul_pow2(-3));
        let z = newton_point(self.q, &self.dq, (&start, &Dyadic::ZERO), m, &w, self.pellet.cap());
        let Some((x, _)) = z else {
            comp.newton.failed();
            return false;
        };
        let cand = Segment::new(x, w, hull.depth + lf);
        let inside = cand.center.sub(&hull.center).abs().add(&cand.width.mul_pow2(-1)) <= hull.width;
        if inside && self.pellet.t_star(&cand.disc()) == Some(m) {
            comp.newton.succeeded();
            comp.segs = vec![cand];
            true
        } else {
            comp.newton.failed();
            false
        }
    }
}

/// Group segments into maximal runs of touching segments.
fn group(mut segs: Vec<Segment>) -> Vec<Vec<Segment>> {
    segs.sort_by(|a, b| a.lo().cmp(&b.lo()));
    let mut out: Vec<Vec<Segment>> = Vec::new();
    for s in segs {
        match out.last_mut() {
            Some(g) if g.last().unwrap().hi() >= s.lo() => g.push(s),
            _ => out.push(vec![s]),
        }
    }
    out
}

/// Isolate the real roots of `p`: disjoint segments, each holding one
/// distinct real root, sorted by left endpoint. A root at 0 is reported as
/// the segment `[0, 0]`.
pub fn isolate_real(p: &IntPolynomial, opts: &RealOptions) -> Result<(Vec<IsolatedRoot>, RunStats)> {
    let start = Instant::now();
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_real() {
        return Err(Error::InvalidInput("real root isolation needs real coefficients".into()));
    }
    let mut stats = RunStats::default();
    let (m0, q) = p.deflate_origin();
    let mut out: Vec<IsolatedRoot> = Vec::new();
    if m0 > 0 {
        out.push(IsolatedRoot { segment: Segment::new(Dyadic::ZERO, Dyadic::ZERO, 0), multiplicity: m0 });
    }
    if q.degree() == 0 {
        stats.t_total = start.elapsed().as_secs_f64();
        return Ok((out, stats));
    }
    let cover = match opts.mode {
        Mode::Classic => None,
        Mode::Radii => {
            let t = Instant::now();
            let delta = opts.delta.clone().unwrap_or_else(|| default_delta(q.degree()));
            let c = annuli_cover(&q, &GaussInt::zero(), &delta)?;
            stats.t_radii = t.elapsed().as_secs_f64();
            Some(c)
        }
    };
    let solver = Solver {
        q: &q,
        dq: q.derivative(),
        pellet: Pellet::new(&q),
        cover,
        log_sep: q.log2_sep_lower(),
    };
    let cap = solver.pellet.cap();
    let r = Dyadic::pow2(q.fujiwara_bound()?.top().expect("positive bound"));
    let roi = vec![Segment::from_ends(&r.neg(), &Dyadic::ZERO, 0), Segment::from_ends(&Dyadic::ZERO, &r, 0)];

    let mut pending: Vec<(Vec<Segment>, NewtonState)> = vec![(roi, NewtonState::default())];
    let mut comps: Vec<Component> = Vec::new();
    loop {
        // Exclusion on all new segments, then regrouping per parent.
        let tagged: Vec<(usize, Segment)> = pending
            .iter()
            .enumerate()
            .flat_map(|(i, (segs, _))| segs.iter().map(move |s| (i, s.clone())))
            .collect();
        stats.boxes_visited += tagged.len() as u64;
        let kept: Vec<(bool, bool)> =
            tagged.par_iter().map(|(_, s)| solver.exclude(s)).collect::<Result<_>>()?;
        let mut survivors: Vec<Vec<Segment>> = vec![Vec::new(); pending.len()];
        for ((i, s), (keep, by_annuli)) in tagged.into_iter().zip(kept) {
            stats.n_annuli_excluded += by_annuli as u64;
            if keep {
                stats.tree_depth = stats.tree_depth.max(s.depth);
                survivors[i].push(s);
            }
        }
        for (segs, (_, newton)) in survivors.into_iter().zip(&pending) {
            let groups = group(segs);
            let inherit = groups.len() == 1;
            for g in groups {
                let newton = if inherit { *newton } else { NewtonState::default() };
                comps.push(Component { segs: g, newton });
            }
        }
        pending.clear();
        if comps.is_empty() {
            break;
        }
        comps.sort_by(|a, b| a.segs[0].lo().cmp(&b.segs[0].lo()));
        for c in &comps {
            check_width(&c.segs[0].width, cap, "isolating segment")?;
        }

        let hulls: Vec<Segment> = comps.iter().map(Component::hull).collect();
        let separated: Vec<bool> = hulls
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let w = h.dilate_pow2(2);
                hulls.iter().enumerate().all(|(j, o)| j == i || !w.intersects(o))
                    && out.iter().all(|o| !w.intersects(&o.segment))
            })
            .collect();
        let steps: Vec<(Step, bool)> = comps
            .par_iter_mut()
            .zip(hulls.par_iter())
            .zip(separated.par_iter())
            .map(|((c, h), &sep)| solver.step(c, h, sep))
            .collect::<Result<_>>()?;

        let mut next: Vec<Component> = Vec::new();
        for ((comp, hull), (step, by_annuli)) in comps.drain(..).zip(hulls).zip(steps) {
            stats.n_annuli_counted += by_annuli as u64;
            match step {
                Step::Discard => {}
                Step::Output(m) => out.push(IsolatedRoot { segment: hull, multiplicity: m }),
                Step::Moved => {
                    stats.tree_depth = stats.tree_depth.max(comp.segs[0].depth);
                    next.push(comp);
                }
                Step::Split => {
                    let kids = comp.segs.iter().flat_map(|s| s.children()).collect();
                    pending.push((kids, comp.newton));
                }
            }
        }
        comps = next;
    }
    out.sort_by(|a, b| a.segment.lo().cmp(&b.segment.lo()));
    stats.n_t0 = solver.pellet.n_t0();
    stats.n_tstar = solver.pellet.n_tstar();
    stats.t_total = start.elapsed().as_secs_f64();
    Ok((out, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootradii::annuli_cover;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_real(c.iter().copied())
    }

    fn seg(lo: &str, hi: &str) -> Segment {
        Segment::from_ends(&lo.parse().unwrap(), &hi.parse().unwrap(), 0)
    }

    fn cover(q: &IntPolynomial, n: i64, d: u64) -> AnnuliCover {
        annuli_cover(q, &GaussInt::zero(), &RBig::from_parts(n.into(), d.into())).unwrap()
    }

    #[test]
    fn stats_examples() {
        let w3 = p(&[-6, 11, -6, 1]);
        let c = cover(&w3, 1, 9);
        let st = annuli_stats_real(&c, &seg("1/2", "3/2")).unwrap();
        assert_eq!((st.n, st.n1), (1, 1));
        assert_eq!(annuli_stats_real(&c, &seg("10", "11")).unwrap(), AnnuliStatsReal::default());
        assert_eq!(annuli_stats_real(&c, &seg("-1", "1")), Err(Error::OriginInRegion));
        let c = cover(&p(&[1, 0, 1]), 1, 4);
        let st = annuli_stats_real(&c, &seg("1/2", "3/2")).unwrap();
        assert_eq!((st.n, st.n0, st.n1), (1, 0, 0));
    }

    #[test]
    fn cr_examples() {
        let w3 = p(&[-6, 11, -6, 1]);
        let c = cover(&w3, 1, 9);
        let t = Pellet::new(&w3);
        assert_eq!(cr_zero(&seg("10", "11"), &t, &c).unwrap(), Some(0));
        assert_eq!(cr_zero(&seg("29/32", "19/16"), &t, &c).unwrap(), None);
        assert_eq!(cr_star(&seg("13/16", "19/16"), &t, &c).unwrap(), Some(1));
        assert_eq!(cr_star(&seg("13/16", "7/2"), &t, &c).unwrap(), Some(3));
        assert_eq!(t.n_t0() + t.n_tstar(), 0);
        let q = p(&[1, 0, 1]);
        let t = Pellet::new(&q);
        assert_eq!(cr_zero(&seg("1/2", "3/2"), &t, &cover(&q, 1, 4)).unwrap(), Some(0));
    }

    fn isolate(q: &IntPolynomial, mode: Mode) -> Vec<IsolatedRoot> {
        isolate_real(q, &RealOptions { mode, delta: None }).unwrap().0
    }

    #[test]
    fn wilkinson_8() {
        let w = IntPolynomial::from_roots(GaussInt::one(), &(1..=8).map(GaussInt::real).collect::<Vec<_>>());
        for mode in [Mode::Classic, Mode::Radii] {
            let r = isolate(&w, mode);
            assert_eq!(r.len(), 8);
            for (i, root) in r.iter().enumerate() {
                assert!(root.segment.contains(&Dyadic::from_int(i as i64 + 1)));
                assert_eq!(root.multiplicity, 1);
            }
        }
    }

    #[test]
    fn no_real_roots_and_multiple_roots() {
        assert!(isolate(&p(&[1, 0, 2, 0, 1]), Mode::Radii).is_empty());
        let q = p(&[-2, 5, -4, 1]);
        for mode in [Mode::Classic, Mode::Radii] {
            let r = isolate(&q, mode);
            assert_eq!(r.len(), 2);
            assert!(r[0].segment.contains(&Dyadic::from_int(1)));
            assert_eq!(r[0].multiplicity, 2);
            assert!(r[1].segment.contains(&Dyadic::from_int(2)));
            assert_eq!(r[1].multiplicity, 1);
        }
    }

    #[test]
    fn roots_at_origin() {
        let r = isolate(&p(&[0, 0, -1, 0, 1]), Mode::Radii);
        assert_eq!(r.len(), 3);
        assert_eq!(r[1].segment, Segment::new(Dyadic::ZERO, Dyadic::ZERO, 0));
        assert_eq!(r[1].multiplicity, 2);
    }
}
