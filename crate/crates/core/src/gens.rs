//! Benchmark polynomial families.
//!
//! Family strings: `bernoulli:d`, `wilkinson:d`, `grid:n`,
//! `mignotte:d:tau`, `random:d:tau:seed`.

use std::fmt;
use std::str::FromStr;

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{GaussInt, IntPolynomial};

fn binomials(n: usize) -> Vec<IBig> {
    let mut row = vec![IBig::ONE];
    for k in 0..n {
        let next = &row[k] * IBig::from(n - k) / IBig::from(k + 1);
        row.push(next);
    }
    row
}

/// Bernoulli numbers `b_0, ..., b_n` with `b_1 = -1/2`.
fn bernoulli_numbers(n: usize) -> Vec<RBig> {
    let mut b: Vec<RBig> = vec![RBig::ONE];
    for m in 1..=n {
        let c = binomials(m + 1);
        let s = (0..m).fold(RBig::ZERO, |acc, k| acc + RBig::from(c[k].clone()) * &b[k]);
        b.push(-s / RBig::from(c[m].clone()));
    }
    b
}

/// Bernoulli polynomial `sum_k C(d, k) b_{d-k} z^k`, scaled by the lcm of
/// its coefficient denominators.
pub fn bernoulli(d: usize) -> Result<IntPolynomial> {
    if d < 1 {
        return Err(Error::InvalidInput("bernoulli needs d >= 1".into()));
    }
    let b = bernoulli_numbers(d);
    let c = binomials(d);
    let coeffs: Vec<RBig> = (0..=d).map(|k| RBig::from(c[k].clone()) * &b[d - k]).collect();
    let mut l = UBig::ONE;
    for q in &coeffs {
        let den = q.denominator();
        let g = dashu_int::ops::Gcd::gcd(&l, den);
        l = &l / g * den;
    }
    let scale = RBig::from(l);
    let ints = coeffs
        .iter()
        .map(|q| {
            let v = q * &scale;
            debug_assert!(v.denominator() == &UBig::ONE);
            GaussInt::real(v.numerator().clone())
        })
        .collect();
    Ok(IntPolynomial::new(ints))
}

/// `prod_{i=1}^d (z - i)`.
pub fn wilkinson(d: usize) -> Result<IntPolynomial> {
    if d < 1 {
        return Err(Error::InvalidInput("wilkinson needs d >= 1".into()));
    }
    let roots: Vec<GaussInt> = (1..=d as i64).map(GaussInt::real).collect();
    Ok(IntPolynomial::from_roots(GaussInt::one(), &roots))
}

/// `prod_{-n <= a, b <= n} (z - a - i b)`, of degree `(2n+1)^2`.
pub fn grid(n: usize) -> Result<IntPolynomial> {
    let n = n as i64;
    let mut roots = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            roots.push(GaussInt::new(a, b));
        }
    }
    Ok(IntPolynomial::from_roots(GaussInt::one(), &roots))
}

/// `z^d - 2 (2^{tau/2 - 1} z - 1)^2`.
pub fn mignotte(d: usize, tau: u32) -> Result<IntPolynomial> {
    if d < 3 || tau < 4 || tau % 2 != 0 {
        return Err(Error::InvalidInput("mignotte needs d >= 3 and even tau >= 4".into()));
    }
    let a = IBig::ONE << (tau as usize / 2 - 1);
    let mut c = vec![IBig::ZERO; d + 1];
    c[d] += IBig::ONE;
    c[2] -= IBig::from(2) * &a * &a;
    c[1] += IBig::from(4) * &a;
    c[0] -= IBig::from(2);
    Ok(IntPolynomial::new(c.into_iter().map(GaussInt::real).collect()))
}

/// Uniform integer in `[0, 2^bits)`.
fn random_bits(rng: &mut ChaCha8Rng, bits: u32) -> UBig {
    let words = bits.div_ceil(64);
    let mut v = UBig::ZERO;
    for _ in 0..words {
        v = (v << 64) | UBig::from(rng.next_u64());
    }
    v >> (words * 64 - bits) as usize
}

/// Monic polynomial of degree `d` whose other coefficients are uniform in
/// `[-2^{tau-1}, 2^{tau-1}]`, drawn from ChaCha8 seeded with `seed` by
/// rejection sampling.
pub fn random_dense(d: usize, tau: u32, seed: u64) -> Result<IntPolynomial> {
    if d < 1 || tau < 1 {
        return Err(Error::InvalidInput("random needs d >= 1 and tau >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = UBig::ONE << tau as usize;
    let half = IBig::ONE << (tau as usize - 1);
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        let v = loop {
            let v = random_bits(&mut rng, tau + 1);
            if v <= span {
                break v;
            }
        };
        c.push(GaussInt::real(IBig::from(v) - &half));
    }
    c.push(GaussInt::one());
    Ok(IntPolynomial::new(c))
}

/// A benchmark family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Bernoulli { d: usize },
    Wilkinson { d: usize },
    Grid { n: usize },
    Mignotte { d: usize, tau: u32 },
    Random { d: usize, tau: u32, seed: u64 },
}

impl FamilySpec {
    pub fn generate(&self) -> Result<IntPolynomial> {
        match *self {
            FamilySpec::Bernoulli { d } => bernoulli(d),
            FamilySpec::Wilkinson { d } => wilkinson(d),
            FamilySpec::Grid { n } => grid(n),
            FamilySpec::Mignotte { d, tau } => mignotte(d, tau),
            FamilySpec::Random { d, tau, seed } => random_dense(d, tau, seed),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            FamilySpec::Bernoulli { .. } => "bernoulli",
            FamilySpec::Wilkinson { .. } => "wilkinson",
            FamilySpec::Grid { .. } => "grid",
            FamilySpec::Mignotte { .. } => "mignotte",
            FamilySpec::Random { .. } => "random",
        }
    }
}

fn num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::InvalidInput(format!("bad {what} `{s}`")))
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["bernoulli", d] => FamilySpec::Bernoulli { d: num(d, "degree")? },
            ["wilkinson", d] => FamilySpec::Wilkinson { d: num(d, "degree")? },
            ["grid", n] => FamilySpec::Grid { n: num(n, "grid size")? },
            ["mignotte", d, t] => FamilySpec::Mignotte { d: num(d, "degree")?, tau: num(t, "bitsize")? },
            ["random", d, t, seed] => FamilySpec::Random {
                d: num(d, "degree")?,
                tau: num(t, "bitsize")?,
                seed: num(seed, "seed")?,
            },
            _ => return Err(Error::InvalidInput(format!("unknown family `{s}`"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Bernoulli { d } => write!(f, "bernoulli:{d}"),
            FamilySpec::Wilkinson { d } => write!(f, "wilkinson:{d}"),
            FamilySpec::Grid { n } => write!(f, "grid:{n}"),
            FamilySpec::Mignotte { d, tau } => write!(f, "mignotte:{d}:{tau}"),
            FamilySpec::Random { d, tau, seed } => write!(f, "random:{d}:{tau}:{seed}"),
        }
    }
}
