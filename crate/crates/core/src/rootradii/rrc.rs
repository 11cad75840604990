use dashu_ratio::RBig;

use crate::ball::{CBall, Mag};
use crate::error::{Error, Result};
use crate::poly::{GaussInt, IntPolynomial};
use crate::prec;
use crate::rootradii::hull::upper_hull_f64;

/// Largest allowed width of `log2|P_j|` at hull vertices. Any value below
/// one half satisfies the 4d bound; a small one leaves room to certify
/// the final `1 + delta` bracket.
const VERTEX_TOL: f64 = 1.0 / 1024.0;

/// Root radii `rho_1 >= ... >= rho_d` around a center, with relative
/// width `delta`: `rho_s / (1 + delta) <= r_s <= (1 + delta) rho_s`.
#[derive(Clone, Debug)]
pub struct RadiiEstimate {
    center: GaussInt,
    delta: RBig,
    zeros: usize,
    graeffe: u32,
    values: Vec<f64>,
}

impl RadiiEstimate {
    /// Estimate from given values, sorted non-increasingly; trailing zero
    /// values count as roots at the center.
    pub fn from_values(center: GaussInt, delta: RBig, mut values: Vec<f64>) -> Result<Self> {
        if delta <= RBig::ZERO {
            return Err(Error::InvalidInput("delta must be positive".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput("radii must be finite and nonnegative".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let zeros = values.iter().filter(|v| **v == 0.0).count();
        Ok(RadiiEstimate { center, delta, zeros, graeffe: 0, values })
    }

    pub fn center(&self) -> &GaussInt {
        &self.center
    }

    pub fn delta(&self) -> &RBig {
        &self.delta
    }

    pub fn degree(&self) -> usize {
        self.values.len()
    }

    /// Multiplicity of the center as a root.
    pub fn zeros(&self) -> usize {
        self.zeros
    }

    /// Number of root-squaring steps used.
    pub fn graeffe_steps(&self) -> u32 {
        self.graeffe
    }

    /// `rho_1, ..., rho_d`, non-increasing.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `g = ceil(log2(ln(4d) / ln(1 + delta)))`, at least 0.
pub fn graeffe_count(d: usize, delta: &RBig) -> u32 {
    let ratio = (4.0 * d as f64).ln() / delta_f64(delta).ln_1p();
    if ratio <= 1.0 {
        0
    } else {
        ratio.log2().ceil() as u32
    }
}

fn delta_f64(delta: &RBig) -> f64 {
    delta.to_f64().value()
}

/// Certified lower bound on `log2(1 + delta)`.
fn log2_one_plus_delta_lower(delta: &RBig) -> f64 {
    let d = delta_f64(delta).next_down().max(0.0);
    let v = d.ln_1p() / std::f64::consts::LN_2;
    v * (1.0 - 1e-12)
}

pub(crate) fn log2_mag_bounds(m: &Mag) -> (f64, f64) {
    if m.is_zero() {
        return (f64::NEG_INFINITY, f64::NEG_INFINITY);
    }
    let v = m.log2_approx();
    let eta = 1e-14 * (1.0 + v.abs());
    (v - eta, v + eta)
}

/// Certified bounds on `log2|z|` over the ball; the lower bound is `-inf`
/// when the ball contains zero.
pub(crate) fn log2_abs_bounds(z: &CBall) -> (f64, f64) {
    if z.is_exact_zero() {
        return (f64::NEG_INFINITY, f64::NEG_INFINITY);
    }
    (log2_mag_bounds(&z.abs_lower()).0, log2_mag_bounds(&z.abs_upper()).1)
}

/// Output of the hull step on log-magnitude intervals of a degree-`n`
/// polynomial, for `s = 1..=n`.
struct Star {
    /// `log2` of `|P_t / P_{t+h}|^{1/h}` (midpoint of its enclosure).
    value: Vec<f64>,
    /// Certified enclosure of `log2 r_s`.
    bracket: Vec<(f64, f64)>,
}

/// Hull step on intervals `logs[j] = (lo, hi)` enclosing `log2|P_j|`.
/// Returns `None` when a hull vertex is known too coarsely.
fn star_from_logs(logs: &[(f64, f64)]) -> Result<Option<Star>> {
    let n = logs.len() - 1;
    let his: Vec<f64> = logs.iter().map(|l| l.1).collect();
    let verts = upper_hull_f64(&his)?;
    if verts[0] != 0 || *verts.last().unwrap() != n {
        return Ok(None);
    }
    if verts.iter().any(|&v| !(logs[v].1 - logs[v].0 <= VERTEX_TOL)) {
        return Ok(None);
    }
    let spread = (2.0 * n as f64).log2() + 2.0 * VERTEX_TOL;
    let mut value = Vec::with_capacity(n);
    let mut bracket = Vec::with_capacity(n);
    for s in 1..=n {
        let x = n + 1 - s;
        let k = verts.partition_point(|&v| v < x);
        let (t, u) = (verts[k - 1], verts[k]);
        let h = (u - t) as f64;
        let (lt, ht) = logs[t];
        let (lu, hu) = logs[u];
        value.push(((lt - hu) / h + (ht - lu) / h) / 2.0);
        let minus_slope = (ht - hu) / h;
        let eta = 1e-14 * (1.0 + ht.abs() + hu.abs());
        bracket.push((minus_slope - spread - eta, minus_slope + spread + eta));
    }
    Ok(Some(Star { value, bracket }))
}

fn exp2_checked(x: f64) -> Result<f64> {
    let v = x.exp2();
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Range(format!("2^{x}")))
    }
}

/// Radii within a factor `4d` from the Newton polygon of `log2|P_j|`.
///
/// Requires `P(0) != 0`. The returned estimate has `1 + delta = 4d`.
pub fn solve_rrc_star(p: &IntPolynomial) -> Result<RadiiEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let d = p.degree();
    if d == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    let logs: Vec<(f64, f64)> = p.coeffs().iter().map(GaussInt::log2_abs_bounds).collect();
    let star = star_from_logs(&logs)?.expect("exact coefficients are sharp");
    let values = star.value.iter().map(|&v| exp2_checked(v)).collect::<Result<Vec<_>>>()?;
    Ok(RadiiEstimate {
        center: GaussInt::zero(),
        delta: RBig::from(4 * d as i64 - 1),
        zeros: 0,
        graeffe: 0,
        values,
    })
}

/// All root radii of `P` around `c` to relative width `delta`.
///
/// Roots at `c` are detected exactly and reported as trailing zeros.
pub fn solve_rrc(p: &IntPolynomial, c: &GaussInt, delta: &RBig) -> Result<RadiiEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if *delta <= RBig::ZERO {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let d = p.degree();
    let (zeros, q) = p.taylor_shift(c).deflate_origin();
    let n = d - zeros;
    let mut values = vec![0.0; d];
    let mut g_used = 0;
    if n > 0 {
        let target = log2_one_plus_delta_lower(delta);
        let g0 = graeffe_count(n, delta);
        let mut done = false;
        'ladder: for prec in prec::ladder(prec::START, prec::radii_cap()) {
            let mut g = g0;
            let mut iter = q.to_balls(prec).graeffe_iterate(g0);
            loop {
                let logs: Vec<(f64, f64)> = iter.coeffs().iter().map(log2_abs_bounds).collect();
                let Some(star) = star_from_logs(&logs)? else { continue 'ladder };
                let scale = (g as f64).exp2();
                let fits = star.value.iter().zip(&star.bracket).all(|(v, (lo, hi))| {
                    let room = target * (1.0 - 1e-9) - 1e-12;
                    (v - lo) / scale <= room && (hi - v) / scale <= room
                });
                if fits {
                    for (s, v) in star.value.iter().enumerate() {
                        values[s] = exp2_checked(v / scale)?;
                    }
                    g_used = g;
                    done = true;
                    break 'ladder;
                }
                // The bracket is certified but too wide for delta; one more
                // squaring halves it.
                g += 1;
                iter = iter.graeffe_step();
            }
        }
        if !done {
            return Err(Error::PrecisionCap {
                cap: prec::radii_cap(),
                context: format!("root radii around {c} at relative width {delta}"),
            });
        }
    }
    Ok(RadiiEstimate { center: c.clone(), delta: delta.clone(), zeros, graeffe: g_used, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_real(c.iter().copied())
    }

    fn rat(n: i64, d: u64) -> RBig {
        RBig::from_parts(n.into(), d.into())
    }

    #[test]
    fn star_examples() {
        let e = solve_rrc_star(&p(&[2, -3, 1])).unwrap();
        assert!((e.values()[0] - 3.0).abs() < 1e-12);
        assert!((e.values()[1] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(e.delta(), &RBig::from(7));
        let e = solve_rrc_star(&p(&[-1, 0, 0, 0, 1])).unwrap();
        assert!(e.values().iter().all(|v| (v - 1.0).abs() < 1e-12));
        assert_eq!(solve_rrc_star(&p(&[0, 1, 2])).unwrap_err(), Error::ZeroConstantTerm);
    }

    #[test]
    fn graeffe_counts() {
        assert_eq!(graeffe_count(512, &rat(1, 512 * 512)), 21);
        assert_eq!(graeffe_count(256, &rat(1, 256 * 256)), 19);
        assert_eq!(graeffe_count(1, &RBig::from(10)), 0);
    }

    #[test]
    fn rrc_brackets_known_radii() {
        let w3 = p(&[-6, 11, -6, 1]);
        let delta = rat(1, 9);
        let e = solve_rrc(&w3, &GaussInt::zero(), &delta).unwrap();
        let f = 1.0 + 1.0 / 9.0;
        for (rho, r) in e.values().iter().zip([3.0, 2.0, 1.0]) {
            assert!(rho / f <= r && r <= rho * f, "{rho} vs {r}");
        }
        let e = solve_rrc(&p(&[2, -3, 1]), &GaussInt::one(), &rat(1, 4)).unwrap();
        assert_eq!(e.zeros(), 1);
        assert_eq!(e.values()[1], 0.0);
        assert!(e.values()[0] / 1.25 <= 1.0 && 1.0 <= e.values()[0] * 1.25);
    }
}
