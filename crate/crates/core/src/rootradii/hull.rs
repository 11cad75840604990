use dashu_ratio::RBig;

use crate::error::{Error, Result};

/// Ordinates usable in the hull: only subtraction and integer scaling are
/// needed, so exact rationals and floats share one implementation.
pub trait Ordinate: Clone + PartialOrd {
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, k: i64) -> Self;
}

impl Ordinate for f64 {
    fn minus(&self, o: &Self) -> Self {
        self - o
    }

    fn times(&self, k: i64) -> Self {
        self * k as f64
    }
}

impl Ordinate for RBig {
    fn minus(&self, o: &Self) -> Self {
        self - o
    }

    fn times(&self, k: i64) -> Self {
        self * RBig::from(k)
    }
}

/// Indices of the vertices of the upper convex hull of `(x_i, y_i)`.
///
/// Abscissae must be strictly increasing. `None` ordinates stand for
/// `-inf` and lie below every line, so they are never vertices. Points
/// lying on a hull edge are not reported as vertices.
pub fn upper_convex_hull<T: Ordinate>(points: &[(i64, Option<T>)]) -> Result<Vec<usize>> {
    debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0), "abscissae must increase");
    let mut hull: Vec<usize> = Vec::new();
    for (i, (x, y)) in points.iter().enumerate() {
        let Some(y) = y else { continue };
        while hull.len() >= 2 {
            let (xa, ya) = at(points, hull[hull.len() - 2]);
            let (xb, yb) = at(points, hull[hull.len() - 1]);
            // b is dropped when it lies on or below the chord a -> (x, y).
            let lhs = yb.minus(ya).times(x - xa);
            let rhs = y.minus(ya).times(xb - xa);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    if hull.is_empty() {
        return Err(Error::EmptyHull);
    }
    Ok(hull)
}

fn at<T>(points: &[(i64, Option<T>)], i: usize) -> (i64, &T) {
    let (x, y) = &points[i];
    (*x, y.as_ref().expect("hull vertices are finite"))
}

/// `upper_convex_hull` on `(j, y_j)`, `j = 0, 1, ...`, with `-inf` entries
/// as missing points.
pub fn upper_hull_f64(ys: &[f64]) -> Result<Vec<usize>> {
    let pts: Vec<(i64, Option<f64>)> = ys
        .iter()
        .enumerate()
        .map(|(j, &y)| (j as i64, (y != f64::NEG_INFINITY).then_some(y)))
        .collect();
    upper_convex_hull(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(upper_hull_f64(&[1.0, 1.585, 0.0]).unwrap(), vec![0, 1, 2]);
        assert_eq!(upper_hull_f64(&[0.0, f64::NEG_INFINITY, 0.0]).unwrap(), vec![0, 2]);
        assert_eq!(upper_hull_f64(&[0.0, 0.0, 0.0]).unwrap(), vec![0, 2]);
        assert_eq!(upper_hull_f64(&[f64::NEG_INFINITY, 3.0]).unwrap(), vec![1]);
        assert_eq!(upper_hull_f64(&[f64::NEG_INFINITY]), Err(Error::EmptyHull));
    }

    #[test]
    fn exact_rationals() {
        let r = |n: i64, d: u64| Some(RBig::from_parts(n.into(), d.into()));
        let pts = vec![(0, r(0, 1)), (1, r(1, 3)), (2, r(2, 3)), (3, r(0, 1))];
        assert_eq!(upper_convex_hull(&pts).unwrap(), vec![0, 2, 3]);
    }
}
