use std::fmt;
use std::str::FromStr;

use dashu_int::ops::{BitTest, PowerOfTwo, UnsignedAbs};
use dashu_int::{IBig, UBig};

use crate::ball::CBall;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::poly::BallPolynomial;

/// Gaussian integer `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: IBig,
    pub im: IBig,
}

impl GaussInt {
    pub fn new(re: impl Into<IBig>, im: impl Into<IBig>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn real(re: impl Into<IBig>) -> Self {
        GaussInt { re: re.into(), im: IBig::ZERO }
    }

    pub fn zero() -> Self {
        GaussInt::default()
    }

    pub fn one() -> Self {
        GaussInt::real(1)
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussInt::real(&self.re * &o.re);
        }
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    /// `|z|^2`.
    pub fn norm_sq(&self) -> UBig {
        (&self.re * &self.re + &self.im * &self.im).unsigned_abs()
    }

    /// Certified bounds `lo <= log2|z| <= hi`; both `-inf` for zero.
    pub fn log2_abs_bounds(&self) -> (f64, f64) {
        if self.is_zero() {
            return (f64::NEG_INFINITY, f64::NEG_INFINITY);
        }
        if self.im.is_zero() {
            return log2_bounds(&(&self.re).unsigned_abs());
        }
        if self.re.is_zero() {
            return log2_bounds(&(&self.im).unsigned_abs());
        }
        let (lo, hi) = log2_bounds(&self.norm_sq());
        (lo / 2.0, hi / 2.0)
    }

    pub fn to_cball(&self) -> CBall {
        CBall::exact(Dyadic::from_int(self.re.clone()), Dyadic::from_int(self.im.clone()))
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im > IBig::ZERO {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

impl FromStr for GaussInt {
    type Err = Error;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi`, with `i` and `-i` for unit
    /// imaginary parts.
    fn from_str(s: &str) -> Result<GaussInt> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidInput(format!("not a Gaussian integer: {s:?}"));
        let int = |x: &str| IBig::from_str(x).map_err(|_| bad());
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussInt::real(int(&t)?));
        };
        // Split before the sign of the imaginary part, if there is a real part.
        let cut = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last().map(|(k, _)| k);
        let (re, im) = match cut {
            Some(k) => (int(&body[..k])?, &body[k..]),
            None => (IBig::ZERO, body),
        };
        let im = match im {
            "" | "+" => IBig::ONE,
            "-" => -IBig::ONE,
            x => int(x.strip_prefix('+').unwrap_or(x))?,
        };
        Ok(GaussInt::new(re, im))
    }
}

/// Certified bounds on `log2(a)` for a positive integer.
pub(crate) fn log2_bounds(a: &UBig) -> (f64, f64) {
    assert!(!a.is_zero());
    let len = a.bit_len();
    let v = if len <= 64 {
        (u64::try_from(a).expect("fits") as f64).log2()
    } else {
        let s = len - 64;
        let top = u64::try_from(&(a >> s)).expect("fits") as f64;
        top.log2() + s as f64
    };
    let eta = 1e-12 * (1.0 + v.abs());
    (v - eta, v + eta)
}

/// Polynomial with Gaussian-integer coefficients, `coeffs[j]` multiplying `x^j`.
///
/// The coefficient vector never ends in a zero; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<GaussInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<GaussInt>) -> Self {
        while coeffs.last().is_some_and(GaussInt::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_real<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<IBig>,
    {
        IntPolynomial::new(coeffs.into_iter().map(GaussInt::real).collect())
    }

    /// `lc * prod (x - r)`.
    pub fn from_roots(lc: GaussInt, roots: &[GaussInt]) -> Self {
        let mut p = IntPolynomial::new(vec![lc]);
        for r in roots {
            p = p.mul(&IntPolynomial::new(vec![r.neg(), GaussInt::one()]));
        }
        p
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![GaussInt::zero(); k + 1];
        c[k] = GaussInt::one();
        IntPolynomial::new(c)
    }

    pub fn coeffs(&self) -> &[GaussInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> GaussInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> GaussInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GaussInt::is_real)
    }

    /// `ceil(log2 max_j |P_j|)`; 0 for the zero polynomial.
    pub fn bitsize(&self) -> u64 {
        let n = self.coeffs.iter().map(GaussInt::norm_sq).max().unwrap_or(UBig::ZERO);
        if n.is_zero() {
            return 0;
        }
        let b = n.bit_len() as u64;
        let log_ceil = if n.is_power_of_two() { b - 1 } else { b };
        log_ceil.div_ceil(2)
    }

    pub fn add(&self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|j| self.coeff(j).add(&o.coeff(j))).collect())
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::default();
        }
        let mut c = vec![GaussInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        IntPolynomial::new(c)
    }

    pub fn scale(&self, k: &GaussInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.mul(&GaussInt::real(j as i64)))
                .collect(),
        )
    }

    /// Exact value at a Gaussian integer.
    pub fn eval(&self, z: &GaussInt) -> GaussInt {
        self.coeffs.iter().rev().fold(GaussInt::zero(), |acc, c| acc.mul(z).add(c))
    }

    /// `P(c + x)`, exactly.
    pub fn taylor_shift(&self, c: &GaussInt) -> IntPolynomial {
        let mut a = self.coeffs.clone();
        if c.is_zero() || a.len() < 2 {
            return self.clone();
        }
        let n = a.len() - 1;
        for k in 0..n {
            for j in (k..n).rev() {
                let t = a[j + 1].mul(c);
                a[j] = a[j].add(&t);
            }
        }
        IntPolynomial::new(a)
    }

    /// Multiplicity of `0` as a root and the quotient `P / x^m`.
    pub fn deflate_origin(&self) -> (usize, IntPolynomial) {
        let m = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if m == 0 || self.is_zero() {
            return (0, self.clone());
        }
        (m, IntPolynomial::new(self.coeffs[m..].to_vec()))
    }

    /// Coefficients rounded to `prec` bits as complex balls.
    pub fn to_balls(&self, prec: u32) -> BallPolynomial {
        BallPolynomial::new(self.coeffs.iter().map(|c| c.to_cball().rounded(prec)).collect(), prec)
    }

    /// Coefficients as exact balls (no rounding).
    pub fn to_exact_balls(&self, prec: u32) -> BallPolynomial {
        BallPolynomial::new(self.coeffs.iter().map(GaussInt::to_cball).collect(), prec)
    }

    /// Upper bound on `log2 ||P||_2`.
    pub fn log2_norm2_upper(&self) -> f64 {
        let s: UBig = self.coeffs.iter().map(GaussInt::norm_sq).sum();
        if s.is_zero() {
            return f64::NEG_INFINITY;
        }
        log2_bounds(&s).1 / 2.0
    }

    /// Root bound: every complex root `a` satisfies `|a| <= R`.
    ///
    /// `R = 2 max_j |P_{d-j}/P_d|^{1/j}` with the `j = d` term halved,
    /// rounded up to a dyadic with a 16-bit mantissa. When every non-leading
    /// coefficient vanishes the bound is 1.
    pub fn fujiwara_bound(&self) -> Result<Dyadic> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.degree();
        let lc_lo = self.leading().log2_abs_bounds().0;
        let mut best = f64::NEG_INFINITY;
        for j in 1..=d {
            let c = &self.coeffs[d - j];
            if c.is_zero() {
                continue;
            }
            let mut v = c.log2_abs_bounds().1 - lc_lo;
            if j == d {
                v -= 1.0;
            }
            best = best.max(v / j as f64);
        }
        if best == f64::NEG_INFINITY {
            return Ok(Dyadic::from_int(1));
        }
        Ok(dyadic_upper_from_log2(best + 1.0 + 1e-9))
    }

    /// Lower bound on `log2 sep(P)`, the minimal distance between distinct
    /// roots; `+inf` when `P` has at most one distinct root by degree.
    ///
    /// Uses `sep >= sqrt(3) d^{-(d+2)/2} ||P||_2^{1-d}`, valid for the
    /// square-free part of `P` and hence for `P` itself.
    pub fn log2_sep_lower(&self) -> f64 {
        let d = self.degree();
        if d <= 1 {
            return f64::INFINITY;
        }
        let df = d as f64;
        let v = 0.5 * 3f64.log2() - (df + 2.0) / 2.0 * df.log2() - (df - 1.0) * self.log2_norm2_upper();
        v - 1e-9 * (1.0 + v.abs())
    }
}

/// Dyadic `>= 2^x` with a 16-bit mantissa.
pub(crate) fn dyadic_upper_from_log2(x: f64) -> Dyadic {
    let k = x.floor();
    let f = x - k;
    let m = (f.exp2() * 32768.0).ceil() as i64 + 1;
    Dyadic::new(IBig::from(m), k as i64 - 15).normalized()
}
