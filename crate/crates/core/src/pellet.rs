//! Pellet-based exclusion (`T0`) and counting (`T*`) tests on discs.
//!
//! For a disc `D(c, r)` the test maps `P` to `Q(x) = P(c + r x)` in ball
//! arithmetic, applies a few root-squaring steps, and looks for an index
//! `k` with `|q_k| > sum_{j != k} |q_j|`; then `Q` has exactly `k` roots in
//! the unit disc. A test never reports a wrong count, but may give up.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use crate::ball::{Ball, CBall, Mag};
use crate::poly::{BallPolynomial, IntPolynomial};
use crate::prec;
use crate::xball::{Mid, XC, XF, XPoly, DD};
pub use crate::region::Disc;

/// `Some(k)`: exactly `k` roots counted with multiplicity; `None`: the
/// test was inconclusive (the `-1` outcome).
pub type CountResult = Option<usize>;

/// Number of root-squaring steps used by the tests.
pub fn graeffe_steps(d: usize) -> u32 {
    let l = (1.0 + (d.max(1) as f64).log2()).log2();
    l.ceil() as u32 + 2
}

/// Balls whose radii sum to less than `2^-TIGHT_LOG` of the coefficient
/// mass are considered exact enough to decide.
const TIGHT_LOG: i64 = 16;

enum Dominance {
    Holds(usize),
    Fails,
    Unclear,
}

fn dominance(q: &BallPolynomial, only_zero: bool) -> Dominance {
    let c = q.coeffs();
    let ups: Vec<Mag> = c.iter().map(CBall::abs_upper).collect();
    let los: Vec<Mag> = c.iter().map(CBall::abs_lower).collect();
    let k = if only_zero {
        0
    } else {
        let mut k = 0;
        for j in 1..ups.len() {
            if ups[j] > ups[k] {
                k = j;
            }
        }
        k
    };
    let others = ups
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != k)
        .fold(Mag::ZERO, |acc, (_, m)| acc.add_up(m));
    if los[k] > others {
        return Dominance::Holds(k);
    }
    let lo_sum = los.iter().fold(Mag::ZERO, |acc, m| acc.add_down(m));
    // With tight balls a near-tie cannot be resolved by more precision in
    // reasonable time; report failure.
    let rad = c.iter().fold(Mag::ZERO, |acc, z| acc.add_up(&z.re.rad).add_up(&z.im.rad));
    if rad <= lo_sum.mul_pow2(-TIGHT_LOG) {
        return Dominance::Fails;
    }
    let candidates: Box<dyn Iterator<Item = usize>> =
        if only_zero { Box::new(std::iter::once(0)) } else { Box::new(0..ups.len()) };
    for j in candidates {
        // Dominance of j is not excluded when |q_j| may exceed the rest.
        if ups[j].add_up(&los[j]) > lo_sum {
            return Dominance::Unclear;
        }
    }
    Dominance::Fails
}

/// Pellet attempt in floating-point ball arithmetic.
fn attempt_fast<M: Mid>(base: &XPoly<M>, steps: u32, disc: &Disc, only_zero: bool) -> Option<CountResult> {
    let c = XC::from_dyadics(&disc.re, &disc.im);
    let shifted = base.taylor_shift(c);
    let mut q = match power_of_two_exponent(&disc.radius) {
        Some(k) => shifted.scale_pow2(k),
        None => shifted.scale(XC::from_dyadics(&disc.radius, &crate::dyadic::Dyadic::ZERO)),
    };
    for _ in 0..steps {
        q = q.graeffe_step();
    }
    match fast_dominance(&q, only_zero) {
        Dominance::Holds(k) => Some(Some(k)),
        Dominance::Fails => Some(None),
        Dominance::Unclear => None,
    }
}

fn fast_dominance<M: Mid>(q: &XPoly<M>, only_zero: bool) -> Dominance {
    let (ups, los): (Vec<XF>, Vec<XF>) = q.c.iter().map(|z| z.abs_bounds()).unzip();
    let k = if only_zero {
        0
    } else {
        let mut k = 0;
        for j in 1..ups.len() {
            if ups[j].gt(ups[k]) {
                k = j;
            }
        }
        k
    };
    let others = ups.iter().enumerate().filter(|(j, _)| *j != k).fold(XF::ZERO, |acc, (_, m)| acc.add_up(*m));
    if los[k].gt(others) {
        return Dominance::Holds(k);
    }
    let lo_sum = los.iter().fold(XF::ZERO, |acc, m| acc.add_down(*m));
    let rad = q.c.iter().fold(XF::ZERO, |acc, z| acc.add_up(z.radius()));
    if lo_sum.mul_pow2(-TIGHT_LOG).ge(rad) {
        return Dominance::Fails;
    }
    let candidates: Box<dyn Iterator<Item = usize>> =
        if only_zero { Box::new(std::iter::once(0)) } else { Box::new(0..ups.len()) };
    for j in candidates {
        if ups[j].add_up(los[j]).gt(lo_sum) {
            return Dominance::Unclear;
        }
    }
    Dominance::Fails
}

/// Pellet tester for one polynomial, with call counters.
pub struct Pellet {
    p: IntPolynomial,
    steps: u32,
    cap: u32,
    hint: AtomicU32,
    n_t0: AtomicU64,
    n_tstar: AtomicU64,
    balls: RwLock<Vec<(u32, Arc<BallPolynomial>)>>,
    fast: XPoly<f64>,
    fast2: XPoly<DD>,
}

impl Pellet {
    pub fn new(p: &IntPolynomial) -> Pellet {
        Pellet::with_cap(p, prec::pellet_cap())
    }

    pub fn with_cap(p: &IntPolynomial, cap: u32) -> Pellet {
        Pellet {
            p: p.clone(),
            steps: graeffe_steps(p.degree()),
            cap,
            hint: AtomicU32::new(prec::START),
            n_t0: AtomicU64::new(0),
            n_tstar: AtomicU64::new(0),
            balls: RwLock::new(Vec::new()),
            fast: XPoly::from_int(p),
            fast2: XPoly::from_int(p),
        }
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.p
    }

    pub fn n_t0(&self) -> u64 {
        self.n_t0.load(Ordering::Relaxed)
    }

    pub fn n_tstar(&self) -> u64 {
        self.n_tstar.load(Ordering::Relaxed)
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Highest precision any test has needed so far; later tests start
    /// there.
    pub fn precision_hint(&self) -> u32 {
        self.hint.load(Ordering::Relaxed)
    }

    fn base(&self, prec: u32) -> Arc<BallPolynomial> {
        if let Some((_, b)) = self.balls.read().unwrap().iter().find(|(p, _)| *p == prec) {
            return b.clone();
        }
        let b = Arc::new(self.p.to_balls(prec));
        self.balls.write().unwrap().push((prec, b.clone()));
        b
    }

    /// `T*`: number of roots in the disc, or `None`.
    pub fn t_star(&self, disc: &Disc) -> CountResult {
        self.n_tstar.fetch_add(1, Ordering::Relaxed);
        self.run(disc, false)
    }

    /// `T0`: `Some(0)` when the disc certainly has no root, else `None`.
    pub fn t_zero(&self, disc: &Disc) -> CountResult {
        self.n_t0.fetch_add(1, Ordering::Relaxed);
        self.run(disc, true)
    }

    fn run(&self, disc: &Disc, only_zero: bool) -> CountResult {
        if self.p.degree() == 0 {
            return if self.p.is_zero() { None } else { Some(0) };
        }
        if let Some(r) = attempt_fast(&self.fast, self.steps, disc, only_zero) {
            return r;
        }
        if let Some(r) = attempt_fast(&self.fast2, self.steps, disc, only_zero) {
            return r;
        }
        let start = self.hint.load(Ordering::Relaxed).max(4 * prec::START);
        for prec in prec::ladder(start, self.cap) {
            match self.attempt(disc, only_zero, prec) {
                Some(r) => {
                    self.hint.fetch_max(prec, Ordering::Relaxed);
                    return r;
                }
                None => continue,
            }
        }
        None
    }

    /// `Some(result)` when decided at this precision, `None` to retry higher.
    fn attempt(&self, disc: &Disc, only_zero: bool, prec: u32) -> Option<CountResult> {
        let base = self.base(prec);
        let c = CBall::exact(disc.re.clone(), disc.im.clone());
        let shifted = base.taylor_shift(&c);
        let mut q = match power_of_two_exponent(&disc.radius) {
            Some(k) => shifted.scale_pow2(k),
            None => shifted.scale(&Ball::exact(disc.radius.clone())),
        };
        for _ in 0..self.steps {
            q = q.graeffe_step();
        }
        match dominance(&q, only_zero) {
            Dominance::Holds(k) => Some(Some(k)),
            Dominance::Fails => Some(None),
            Dominance::Unclear => None,
        }
    }
}

fn power_of_two_exponent(x: &crate::dyadic::Dyadic) -> Option<i64> {
    let n = x.clone().normalized();
    (n.mantissa() == &dashu_int::IBig::ONE).then(|| n.exponent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_real(c.iter().copied())
    }

    fn disc(c: &str, r: &str) -> Disc {
        Disc::real(c.parse().unwrap(), r.parse().unwrap())
    }

    #[test]
    fn t_star_examples() {
        let t = Pellet::new(&p(&[2, -3, 1]));
        assert_eq!(t.t_star(&disc("1", "1/2")), Some(1));
        assert_eq!(t.t_star(&disc("0", "10")), Some(2));
        assert_eq!(t.t_star(&Disc::real("3/2".parse().unwrap(), Dyadic::from_f64(0.51))), None);
        assert_eq!(t.n_tstar(), 3);
        assert_eq!(t.n_t0(), 0);
    }

    #[test]
    fn t_zero_examples() {
        let t = Pellet::new(&p(&[2, -3, 1]));
        assert_eq!(t.t_zero(&disc("5", "1/2")), Some(0));
        assert_eq!(t.t_zero(&disc("1", "1/2")), None);
        let x5 = Pellet::new(&p(&[0, 0, 0, 0, 0, 1]));
        assert_eq!(x5.t_zero(&Disc::real(Dyadic::from_int(1), Dyadic::from_f64(0.4))), Some(0));
        assert_eq!(x5.t_star(&disc("0", "1/1024")), Some(5));
    }

    #[test]
    fn step_counts() {
        assert_eq!(graeffe_steps(1), 2);
        assert_eq!(graeffe_steps(2), 3);
        assert_eq!(graeffe_steps(256), 6);
    }

    #[test]
    fn complex_disc() {
        let t = Pellet::new(&p(&[1, 0, 1]));
        let d = Disc::new(Dyadic::ZERO, Dyadic::from_int(1), "1/2".parse().unwrap());
        assert_eq!(t.t_star(&d), Some(1));
    }
}
