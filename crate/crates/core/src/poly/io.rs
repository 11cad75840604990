//! Plain-text polynomial format.
//!
//! ```text
//! d
//! j re [im]
//! ...
//! ```
//!
//! One line per coefficient `j = 0..=d` in any order; `im` is omitted when
//! zero. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use dashu_int::IBig;

use crate::error::{Error, Result};
use crate::poly::{GaussInt, IntPolynomial};

impl IntPolynomial {
    pub fn parse_text(s: &str) -> Result<IntPolynomial> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let d: usize = first
            .parse()
            .map_err(|_| Error::Parse(format!("line {ln}: expected degree, got {first:?}")))?;
        let mut coeffs: Vec<Option<GaussInt>> = vec![None; d + 1];
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 2 && f.len() != 3 {
                return Err(Error::Parse(format!("line {ln}: expected `j re [im]`")));
            }
            let j: usize = f[0]
                .parse()
                .map_err(|_| Error::Parse(format!("line {ln}: bad index {:?}", f[0])))?;
            if j > d {
                return Err(Error::Parse(format!("line {ln}: index {j} exceeds degree {d}")));
            }
            let int = |t: &str| {
                IBig::from_str(t).map_err(|_| Error::Parse(format!("line {ln}: bad integer {t:?}")))
            };
            let re = int(f[1])?;
            let im = if f.len() == 3 { int(f[2])? } else { IBig::ZERO };
            if coeffs[j].replace(GaussInt { re, im }).is_some() {
                return Err(Error::Parse(format!("line {ln}: duplicate index {j}")));
            }
        }
        if let Some(j) = coeffs.iter().position(Option::is_none) {
            return Err(Error::Parse(format!("missing coefficient {j}")));
        }
        let coeffs: Vec<GaussInt> = coeffs.into_iter().map(Option::unwrap).collect();
        if d > 0 && coeffs[d].is_zero() {
            return Err(Error::Parse(format!("leading coefficient of degree {d} is zero")));
        }
        Ok(IntPolynomial::new(coeffs))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.degree());
        if self.is_zero() {
            s.push_str("0 0\n");
            return s;
        }
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.im.is_zero() {
                let _ = writeln!(s, "{j} {}", c.re);
            } else {
                let _ = writeln!(s, "{j} {} {}", c.re, c.im);
            }
        }
        s
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntPolynomial::parse_text(s)
    }
}
