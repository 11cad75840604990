use std::fmt;

use dashu_ratio::RBig;

use crate::ball::CBall;
use crate::dyadic::Dyadic;
use crate::interval::Interval;
use crate::poly::{GaussInt, IntPolynomial};
use crate::prec;
use crate::rootradii::rrc::RadiiEstimate;

/// Closed annulus `{z : inner <= |z - c| <= outer}` of an [`AnnuliCover`],
/// carrying the root radii `r_t, ..., r_{t+h}` (1-based, non-increasing).
#[derive(Clone, Debug, PartialEq)]
pub struct Annulus {
    pub inner: f64,
    pub outer: f64,
    pub t: usize,
    pub h: usize,
    /// Sign of `P(c + inner) P(c + outer)`; 0 when unknown.
    pub s_plus: i8,
    /// Sign of `P(c - inner) P(c - outer)`; 0 when unknown.
    pub s_minus: i8,
}

impl Annulus {
    /// Number of roots (with multiplicity) in the annulus.
    pub fn count(&self) -> usize {
        self.h + 1
    }

    pub fn radii(&self) -> Interval {
        Interval::new(self.inner, self.outer)
    }
}

/// Disjoint concentric annuli around `center`, in increasing radius,
/// together containing every root of `P` other than `center` itself.
#[derive(Clone, Debug)]
pub struct AnnuliCover {
    pub center: GaussInt,
    pub degree: usize,
    /// Multiplicity of `center` as a root.
    pub zeros: usize,
    pub annuli: Vec<Annulus>,
}

impl AnnuliCover {
    /// Number of roots accounted for; equals the degree.
    pub fn total(&self) -> usize {
        self.zeros + self.annuli.iter().map(Annulus::count).sum::<usize>()
    }
}

fn one_plus_delta(delta: &RBig) -> Interval {
    let d = delta.to_f64().value();
    Interval::point(1.0).add(Interval::new(d.next_down().max(0.0), d.next_up()))
}

/// Annuli `[rho_s / (1 + delta), rho_s (1 + delta)]`, overlapping ones
/// merged, with boundary signs of `P`.
pub fn build_annuli_cover(est: &RadiiEstimate, p: &IntPolynomial) -> AnnuliCover {
    let f = one_plus_delta(est.delta());
    let live = &est.values()[..est.degree() - est.zeros()];
    let mut merged: Vec<Annulus> = Vec::new();
    for (i, &rho) in live.iter().enumerate() {
        let r = Interval::point(rho);
        let inner = r.div(f).lo.max(0.0);
        let outer = r.mul(f).hi;
        match merged.last_mut() {
            Some(a) if outer >= a.inner => {
                a.inner = a.inner.min(inner);
                a.h += 1;
            }
            _ => merged.push(Annulus { inner, outer, t: i + 1, h: 0, s_plus: 0, s_minus: 0 }),
        }
    }
    merged.reverse();
    for a in &mut merged {
        let (sp, sm) = annulus_signs(p, est.center(), a);
        a.s_plus = sp;
        a.s_minus = sm;
    }
    AnnuliCover { center: est.center().clone(), degree: est.degree(), zeros: est.zeros(), annuli: merged }
}

/// Signs of `P(c + inner) P(c + outer)` and `P(c - inner) P(c - outer)`,
/// with 0 for unknown. Only defined for real `P` and real `c`.
pub fn annulus_signs(p: &IntPolynomial, c: &GaussInt, a: &Annulus) -> (i8, i8) {
    if !p.is_real() || !c.is_real() {
        return (0, 0);
    }
    let c = Dyadic::from_int(c.re.clone());
    let at = |r: f64, side: i64| sign_at(p, &c.add(&Dyadic::from_f64(r).mul_int(&side.into())));
    let prod = |x: Option<i8>, y: Option<i8>| match (x, y) {
        (Some(x), Some(y)) => x * y,
        _ => 0,
    };
    (
        prod(at(a.inner, 1), at(a.outer, 1)),
        prod(at(a.inner, -1), at(a.outer, -1)),
    )
}

/// Sign of `P(x)` at a dyadic point, or `None` if still undecided at the
/// sign precision cap.
pub(crate) fn sign_at(p: &IntPolynomial, x: &Dyadic) -> Option<i8> {
    let z = CBall::exact(x.clone(), Dyadic::ZERO);
    for prec in prec::ladder(prec::START, prec::SIGN_CAP) {
        let v = p.to_exact_balls(prec).eval(&z);
        if let Some(s) = v.re.sign() {
            return Some(s as i8);
        }
    }
    None
}

impl fmt::Display for AnnuliCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.annuli {
            writeln!(
                f,
                "{}  {:e}  {:e}  {}  {}  {}  {}",
                self.center, a.inner, a.outer, a.t, a.h, a.s_plus, a.s_minus
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootradii::solve_rrc;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_real(c.iter().copied())
    }

    fn rat(n: i64, d: u64) -> RBig {
        RBig::from_parts(n.into(), d.into())
    }

    fn est(values: &[f64], delta: RBig) -> RadiiEstimate {
        RadiiEstimate::from_values(GaussInt::zero(), delta, values.to_vec()).unwrap()
    }

    #[test]
    fn separated_radii_give_separate_annuli() {
        let w3 = p(&[-6, 11, -6, 1]);
        let e = solve_rrc(&w3, &GaussInt::zero(), &rat(1, 9)).unwrap();
        let cov = build_annuli_cover(&e, &w3);
        assert_eq!(cov.annuli.len(), 3);
        assert!(cov.annuli.iter().all(|a| a.h == 0));
        assert_eq!(cov.annuli.iter().map(|a| a.t).collect::<Vec<_>>(), vec![3, 2, 1]);
        assert!(cov.annuli.iter().all(|a| a.s_plus == -1 && a.s_minus == 1));
        assert_eq!(cov.total(), 3);
    }

    #[test]
    fn close_radii_merge() {
        let q = p(&[1, 0, 1]);
        let cov = build_annuli_cover(&est(&[1.0, 1.0], rat(1, 100)), &q);
        assert_eq!(cov.annuli.len(), 1);
        assert_eq!(cov.annuli[0].h, 1);
        let cov = build_annuli_cover(&est(&[1.05, 1.0], rat(1, 10)), &q);
        assert_eq!(cov.annuli.len(), 1);
        assert_eq!((cov.annuli[0].t, cov.annuli[0].h), (1, 1));
    }

    #[test]
    fn sign_examples() {
        let a = Annulus { inner: 0.9, outer: 1.1, t: 1, h: 0, s_plus: 0, s_minus: 0 };
        assert_eq!(annulus_signs(&p(&[2, -3, 1]), &GaussInt::zero(), &a), (-1, 1));
        assert_eq!(annulus_signs(&p(&[1, 0, 1]), &GaussInt::zero(), &a), (1, 1));
        assert_eq!(annulus_signs(&p(&[1, 0, 1]), &GaussInt::i(), &a), (0, 0));
    }
}
