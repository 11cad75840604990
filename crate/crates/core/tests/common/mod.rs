//! Independent root oracle: double-precision Aberth iteration with exactly
//! evaluated Newton corrections, then Newton refinement in exact dyadic
//! arithmetic, certified by the inclusion disc `|z - root| <= d |P(z) / P'(z)|`.

#![allow(dead_code)]

use dashu_int::ops::UnsignedAbs;
use dashu_int::IBig;
use dashu_ratio::RBig;
use num_complex::Complex64;
use rootradii::{GaussInt, IntPolynomial};

/// Bits after the binary point kept by the refined roots.
pub const ORACLE_BITS: usize = 200;
/// Every oracle root is within `2^-ORACLE_ERR_LOG` of the true root.
pub const ORACLE_ERR_LOG: usize = 80;

/// Gaussian integer as a pair of big integers.
#[derive(Clone, Debug, PartialEq)]
pub struct G(pub IBig, pub IBig);

impl G {
    fn add(&self, o: &G) -> G {
        G(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn mul(&self, o: &G) -> G {
        G(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn shl(&self, k: usize) -> G {
        G(&self.0 << k, &self.1 << k)
    }
    fn norm(&self) -> IBig {
        &self.0 * &self.0 + &self.1 * &self.1
    }
    fn conj(&self) -> G {
        G(self.0.clone(), -&self.1)
    }
}

fn gauss(c: &GaussInt) -> G {
    G(c.re.clone(), c.im.clone())
}

/// `P(z) 2^{k deg}` for `z = w / 2^k`, exactly.
pub fn eval_scaled(coeffs: &[G], w: &G, k: usize) -> G {
    let d = coeffs.len() - 1;
    let mut acc = coeffs[d].clone();
    for j in (0..d).rev() {
        acc = acc.mul(w).add(&coeffs[j].shl(k * (d - j)));
    }
    acc
}

fn derivative(coeffs: &[G]) -> Vec<G> {
    coeffs.iter().enumerate().skip(1).map(|(j, c)| G(&c.0 * IBig::from(j), &c.1 * IBig::from(j))).collect()
}

fn to_f64(n: &IBig, d: &IBig) -> f64 {
    if *n == IBig::ZERO {
        return 0.0;
    }
    RBig::from_parts(n.clone(), d.unsigned_abs()).to_f64().value() * if *d < IBig::ZERO { -1.0 } else { 1.0 }
}

/// Dyadic `w / 2^k` for an f64 complex.
fn from_c64(z: Complex64, k: usize) -> G {
    let f = |x: f64| -> IBig {
        let (m, e) = split(x);
        if e + k as i64 >= 0 {
            m << (e + k as i64) as usize
        } else {
            m >> (-(e + k as i64)) as usize
        }
    };
    G(f(z.re), f(z.im))
}

/// `x = m 2^e` with an integer `m`.
fn split(x: f64) -> (IBig, i64) {
    if x == 0.0 {
        return (IBig::ZERO, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1 << 52) - 1)) as i64;
    let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
    let m = IBig::from(m);
    (if x < 0.0 { -m } else { m }, e)
}

fn to_c64(w: &G, k: usize) -> Complex64 {
    let den = IBig::ONE << k;
    Complex64::new(to_f64(&w.0, &den), to_f64(&w.1, &den))
}

/// `P(z) / P'(z)` in double precision from exact values at `z`.
fn newton_ratio(p: &[G], dp: &[G], z: Complex64) -> Complex64 {
    let k = (64 - z.norm().max(1e-80).log2().floor() as i64).clamp(0, 400) as usize;
    let w = from_c64(z, k);
    let num = eval_scaled(p, &w, k);
    let den = eval_scaled(dp, &w, k);
    // P(z) / P'(z) = num / den / 2^k
    let n = num.mul(&den.conj());
    let q = den.norm() << k;
    if q == IBig::ZERO {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    Complex64::new(to_f64(&n.0, &q), to_f64(&n.1, &q))
}

fn aberth(p: &[G], dp: &[G]) -> Vec<Complex64> {
    let d = p.len() - 1;
    let lead = Complex64::new(to_f64(&p[d].0, &IBig::ONE), to_f64(&p[d].1, &IBig::ONE)).norm();
    let bound = p[..d]
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let a = Complex64::new(to_f64(&c.0, &IBig::ONE), to_f64(&c.1, &IBig::ONE)).norm();
            2.0 * (a / lead).powf(1.0 / (d - j) as f64)
        })
        .fold(1.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|i| Complex64::from_polar(bound * 0.5, 0.4 + 2.0 * std::f64::consts::PI * i as f64 / d as f64))
        .collect();
    let mut done = vec![false; d];
    for _ in 0..2000 {
        let mut moved = false;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let r = newton_ratio(p, dp, z[i]);
            if r.re.is_nan() {
                done[i] = true;
                continue;
            }
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = r / (1.0 - r * s);
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// A root `w / 2^ORACLE_BITS`, within `2^-ORACLE_ERR_LOG` of an actual root.
#[derive(Clone, Debug)]
pub struct OracleRoot {
    pub w: G,
    /// The root is this Gaussian integer exactly.
    pub exact: Option<(i64, i64)>,
}

impl OracleRoot {
    pub fn approx(&self) -> Complex64 {
        to_c64(&self.w, ORACLE_BITS)
    }

    /// Enclosure of `|root - c|`, for a Gaussian-integer `c`.
    pub fn dist_bounds(&self, c: (i64, i64)) -> (f64, f64) {
        if let Some((a, b)) = self.exact {
            let v = (((a - c.0) as f64).powi(2) + ((b - c.1) as f64).powi(2)).sqrt();
            return (v, v);
        }
        let v = (self.approx() - Complex64::new(c.0 as f64, c.1 as f64)).norm();
        let err = 2f64.powi(-(ORACLE_ERR_LOG as i32)) + v * 1e-15;
        ((v - err).max(0.0), v + err)
    }
}

/// All roots of a square-free `P`, each certified to `2^-80`; the
/// inclusion discs are checked pairwise disjoint, so the roots are distinct
/// and exhaust `P`.
pub fn oracle_roots(poly: &IntPolynomial) -> Vec<OracleRoot> {
    let p: Vec<G> = poly.coeffs().iter().map(gauss).collect();
    let dp = derivative(&p);
    let d = p.len() - 1;
    let k = ORACLE_BITS;
    let mut out = Vec::with_capacity(d);
    for z in aberth(&p, &dp) {
        let (a, b) = (z.re.round(), z.im.round());
        let exact = G(IBig::from(a as i64), IBig::from(b as i64));
        if eval_scaled(&p, &exact, 0) == G(IBig::ZERO, IBig::ZERO) {
            out.push(OracleRoot { w: exact.shl(k), exact: Some((a as i64, b as i64)) });
            continue;
        }
        let mut w = from_c64(z, k);
        for _ in 0..8 {
            // w <- w - 2^k P(z) / P'(z), with P(z) 2^{kd} = n and P'(z) 2^{k(d-1)} = m
            let n = eval_scaled(&p, &w, k);
            let m = eval_scaled(&dp, &w, k);
            let num = n.mul(&m.conj());
            let den = m.norm();
            w = G(&w.0 - &num.0 / &den, &w.1 - &num.1 / &den);
        }
        // certify d^2 |P|^2 <= 2^-160 |P'|^2, with |P| = |n| 2^{-kd}, |P'| = |m| 2^{-k(d-1)}
        let n = eval_scaled(&p, &w, k);
        let m = eval_scaled(&dp, &w, k);
        let lhs = (n.norm() * IBig::from(d * d)) << (2 * ORACLE_ERR_LOG);
        let rhs = m.norm() << (2 * k);
        assert!(lhs <= rhs, "oracle failed to certify a root of {poly:?}");
        out.push(OracleRoot { w, exact: None });
    }
    // distinct roots: centers more than 2 * 2^-80 apart
    for i in 0..d {
        for j in 0..i {
            let diff = G(&out[i].w.0 - &out[j].w.0, &out[i].w.1 - &out[j].w.1);
            let sep = IBig::ONE << (2 * (k - ORACLE_ERR_LOG + 1));
            assert!(diff.norm() > sep, "oracle roots {i} and {j} coincide");
        }
    }
    out
}

/// Seeded dense random polynomials with distinct roots, as in the
/// benchmark family.
pub fn random_corpus(count: usize, max_degree: usize) -> Vec<IntPolynomial> {
    (0..count as u64)
        .map(|s| {
            let d = 2 + (s as usize * 7) % (max_degree - 1);
            rootradii::gens::random_dense(d, 16, s).unwrap()
        })
        .collect()
}
