use crate::ball::{Ball, CBall, Mag};
use crate::poly::IntPolynomial;

/// Polynomial with complex-ball coefficients at a working precision.
#[derive(Clone, Debug)]
pub struct BallPolynomial {
    coeffs: Vec<CBall>,
    prec: u32,
}

impl BallPolynomial {
    pub fn new(coeffs: Vec<CBall>, prec: u32) -> Self {
        BallPolynomial { coeffs, prec }
    }

    pub fn coeffs(&self) -> &[CBall] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<CBall> {
        self.coeffs
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self
    }

    /// Formal degree (length minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(CBall::is_real)
    }

    /// True when every coefficient of `p` lies in the matching ball.
    pub fn contains(&self, p: &IntPolynomial) -> bool {
        let n = self.coeffs.len().max(p.coeffs().len());
        (0..n).all(|j| {
            let c = p.coeff(j).to_cball();
            match self.coeffs.get(j) {
                Some(b) => b.contains(&c.re.mid, &c.im.mid),
                None => c.is_exact_zero(),
            }
        })
    }

    /// Largest coefficient radius, as an upper bound.
    pub fn max_rad(&self) -> Mag {
        self.coeffs
            .iter()
            .flat_map(|c| [c.re.rad, c.im.rad])
            .max()
            .unwrap_or(Mag::ZERO)
    }

    /// One root-squaring step `(-1)^d [Pe(x)^2 - x Po(x)^2]` where
    /// `P(x) = Pe(x^2) + x Po(x^2)`.
    pub fn graeffe_step(&self) -> BallPolynomial {
        let prec = self.prec;
        let d = self.degree();
        let even: Vec<CBall> = self.coeffs.iter().step_by(2).cloned().collect();
        let odd: Vec<CBall> = self.coeffs.iter().skip(1).step_by(2).cloned().collect();
        let e2 = square(&even, prec);
        let o2 = square(&odd, prec);
        let flip = d % 2 == 1;
        let out = (0..=d)
            .map(|j| {
                let e = e2.get(j);
                let o = if j > 0 { o2.get(j - 1) } else { None };
                let v = match (e, o) {
                    (Some(e), Some(o)) => e.sub(o, prec),
                    (Some(e), None) => e.clone(),
                    (None, Some(o)) => o.neg(),
                    (None, None) => CBall::zero(),
                };
                if flip {
                    v.neg()
                } else {
                    v
                }
            })
            .collect();
        BallPolynomial::new(out, prec)
    }

    pub fn graeffe_iterate(&self, g: u32) -> BallPolynomial {
        let mut p = self.clone();
        for _ in 0..g {
            p = p.graeffe_step();
        }
        p
    }

    /// Horner evaluation at a ball.
    pub fn eval(&self, z: &CBall) -> CBall {
        let prec = self.prec;
        let mut acc = CBall::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(c, prec);
        }
        acc
    }

    /// Coefficients of the derivative.
    pub fn derivative(&self) -> BallPolynomial {
        let prec = self.prec;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.mul_real(&Ball::from_int(j as i64), prec))
            .collect();
        BallPolynomial::new(c, prec)
    }

    /// `P(c + x)` by repeated synthetic division.
    pub fn taylor_shift(&self, c: &CBall) -> BallPolynomial {
        let prec = self.prec;
        let mut a = self.coeffs.clone();
        if c.is_exact_zero() || a.len() < 2 {
            return self.clone();
        }
        let n = a.len() - 1;
        for k in 0..n {
            for j in (k..n).rev() {
                let t = a[j + 1].mul(c, prec);
                a[j] = a[j].add(&t, prec);
            }
        }
        BallPolynomial::new(a, prec)
    }

    /// `P(r x)` for a real scale `r`.
    pub fn scale(&self, r: &Ball) -> BallPolynomial {
        let prec = self.prec;
        let mut pw = Ball::from_int(1);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                pw = pw.mul(r, prec);
            }
            out.push(c.mul_real(&pw, prec));
        }
        BallPolynomial::new(out, prec)
    }

    /// `P(2^k x)`, exact.
    pub fn scale_pow2(&self, k: i64) -> BallPolynomial {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.mul_pow2(k * j as i64))
            .collect();
        BallPolynomial::new(c, self.prec)
    }
}

/// Square of a polynomial given by its coefficients, using the symmetry of
/// the product to halve the multiplications.
fn square(a: &[CBall], prec: u32) -> Vec<CBall> {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a.len();
    let mut out = Vec::with_capacity(2 * n - 1);
    for k in 0..(2 * n - 1) {
        let lo = k.saturating_sub(n - 1);
        let mut cross = CBall::zero();
        let mut i = lo;
        while i < k - i {
            let t = a[i].mul(&a[k - i], prec);
            cross = cross.add(&t, prec);
            i += 1;
        }
        let mut v = cross.mul_pow2(1);
        if k % 2 == 0 {
            v = v.add(&a[k / 2].sqr(prec), prec);
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::poly::GaussInt;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_real(c.iter().copied())
    }

    #[test]
    fn graeffe_examples() {
        let q = p(&[2, -3, 1]).to_balls(53);
        assert!(q.graeffe_step().contains(&p(&[4, -5, 1])));
        assert!(q.graeffe_iterate(0).contains(&p(&[2, -3, 1])));
        assert!(q.graeffe_iterate(2).contains(&p(&[16, -17, 1])));
        assert!(p(&[-3, 1]).to_balls(53).graeffe_step().contains(&p(&[-9, 1])));
        assert!(p(&[-2, 1]).to_balls(53).graeffe_iterate(3).contains(&p(&[-256, 1])));
        assert!(p(&[1, 0, 1]).to_balls(53).graeffe_step().contains(&p(&[1, 2, 1])));
        let r = p(&[2, -3, 1]).to_balls(53).graeffe_iterate(2);
        assert!(r.coeffs().iter().all(|c| c.re.is_exact()));
    }

    #[test]
    fn graeffe_complex_coefficients() {
        // (x - i)(x - 2) -> (x + 1)(x - 4)
        let q = IntPolynomial::from_roots(GaussInt::one(), &[GaussInt::i(), GaussInt::real(2)]);
        assert!(q.to_balls(64).graeffe_step().contains(&p(&[-4, -3, 1])));
    }

    #[test]
    fn eval_examples() {
        let q = p(&[2, -3, 1]).to_balls(53);
        assert!(q.eval(&CBall::zero()).contains(&Dyadic::from_int(2), &Dyadic::ZERO));
        let z = CBall::exact("3/2".parse().unwrap(), Dyadic::ZERO);
        assert!(q.eval(&z).contains(&"-1/4".parse().unwrap(), &Dyadic::ZERO));
        let lin = p(&[-1, 1]).to_balls(53);
        assert!(lin.eval(&CBall::from_ints(1, 0)).contains_zero());
    }

    #[test]
    fn shift_and_scale_match_exact() {
        let q = p(&[5, -7, 0, 3, 1]);
        let c = GaussInt::new(2, -1);
        assert!(q.to_balls(80).taylor_shift(&c.to_cball()).contains(&q.taylor_shift(&c)));
        let s = q.to_balls(80).scale(&Ball::from_int(3));
        assert!(s.contains(&p(&[5, -21, 0, 81, 81])));
        assert!(q.to_balls(80).scale_pow2(1).contains(&p(&[5, -14, 0, 24, 16])));
    }
}
