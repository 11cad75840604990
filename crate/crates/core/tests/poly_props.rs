mod common;

use dashu_ratio::RBig;
use proptest::prelude::*;
use rootradii::rootradii::upper_convex_hull;
use rootradii::{GaussInt, IntPolynomial};

fn gauss_roots() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-9i64..=9, -9i64..=9), 1..=7)
}

fn from_roots(r: &[(i64, i64)]) -> IntPolynomial {
    let g: Vec<GaussInt> = r.iter().map(|&(a, b)| GaussInt::new(a, b)).collect();
    IntPolynomial::from_roots(GaussInt::one(), &g)
}

fn square(z: (i64, i64)) -> (i64, i64) {
    (z.0 * z.0 - z.1 * z.1, 2 * z.0 * z.1)
}

/// Brute-force strict upper-hull vertices: `i` is one iff it lies strictly
/// above every chord between finite points on both sides of it.
fn brute_hull(ys: &[Option<i64>]) -> Vec<usize> {
    let fin: Vec<usize> = (0..ys.len()).filter(|&i| ys[i].is_some()).collect();
    fin.iter()
        .copied()
        .filter(|&i| {
            let yi = ys[i].unwrap() as i128;
            fin.iter().filter(|&&a| a < i).all(|&a| {
                fin.iter().filter(|&&b| b > i).all(|&b| {
                    let (ya, yb) = (ys[a].unwrap() as i128, ys[b].unwrap() as i128);
                    // yi (b - a) > ya (b - i) + yb (i - a)
                    yi * (b - a) as i128 > ya * (b - i) as i128 + yb * (i - a) as i128
                })
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graeffe_squares_gaussian_roots(r in gauss_roots()) {
        let p = from_roots(&r);
        let sq: Vec<(i64, i64)> = r.iter().copied().map(square).collect();
        let got = p.to_exact_balls(512).graeffe_step();
        prop_assert!(got.max_rad().is_zero());
        prop_assert!(got.contains(&from_roots(&sq)));
    }

    #[test]
    fn rounded_graeffe_encloses_exact(r in gauss_roots(), prec in 8u32..40) {
        let mut roots = r.clone();
        let mut got = from_roots(&r).to_balls(prec);
        for _ in 0..3 {
            roots = roots.into_iter().map(square).collect();
            got = got.graeffe_step();
            prop_assert!(got.contains(&from_roots(&roots)));
        }
    }

    #[test]
    fn taylor_shifts_compose(r in gauss_roots(), a in (-5i64..=5, -5i64..=5), b in (-5i64..=5, -5i64..=5)) {
        let p = from_roots(&r);
        let (ga, gb) = (GaussInt::new(a.0, a.1), GaussInt::new(b.0, b.1));
        prop_assert_eq!(p.taylor_shift(&ga).taylor_shift(&gb), p.taylor_shift(&ga.add(&gb)));
        // shifted roots are r - a
        let moved: Vec<(i64, i64)> = r.iter().map(|z| (z.0 - a.0, z.1 - a.1)).collect();
        prop_assert_eq!(p.taylor_shift(&ga), from_roots(&moved));
    }

    #[test]
    fn upper_hull_matches_brute_force(ys in prop::collection::vec(prop::option::weighted(0.8, -50i64..50), 1..20)) {
        prop_assume!(ys.iter().any(Option::is_some));
        let pts: Vec<(i64, Option<RBig>)> = ys.iter().enumerate().map(|(j, y)| (j as i64, y.map(RBig::from))).collect();
        prop_assert_eq!(upper_convex_hull(&pts).unwrap(), brute_hull(&ys));
    }

    #[test]
    fn fujiwara_bounds_every_root(r in gauss_roots()) {
        let p = from_roots(&r);
        let b = p.fujiwara_bound().unwrap().to_f64();
        for (x, y) in r {
            prop_assert!(((x * x + y * y) as f64).sqrt() <= b);
        }
    }
}

#[test]
fn fujiwara_bounds_oracle_roots() {
    for p in common::random_corpus(10, 24) {
        let b = p.fujiwara_bound().unwrap().to_f64();
        for z in common::oracle_roots(&p) {
            assert!(z.dist_bounds((0, 0)).1 <= b);
        }
    }
}
