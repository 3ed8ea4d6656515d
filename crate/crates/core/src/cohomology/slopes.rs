//! `p`-adic Newton polygons of degree-4 Frobenius polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

/// Sign of `lambda(p^2)` in the quadratic coefficient
/// `lambda(p)^2 +- lambda(p^2) - p^{l+m+2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadraticSign {
    /// `+ lambda(p^2)`.
    #[default]
    Plus,
    /// `- lambda(p^2)`.
    Minus,
}

pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Some(v)
}

/// Slopes of the lower convex hull of `(i, v_p(c_i))`, each repeated by its
/// horizontal length, in increasing order. Zero coefficients are skipped.
pub fn newton_polygon(coeffs: &[BigInt], p: u64) -> Vec<BigRational> {
    let points: Vec<(i64, i64)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation(c, p).map(|v| (i as i64, v as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the segment a -> pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        let s = BigRational::new(dy.into(), dx.into());
        for _ in 0..dx {
            slopes.push(s.clone());
        }
    }
    slopes
}

/// Coefficients of `1 - l1 X + c2 X^2 - l1 p^{w} X^3 + p^{2w} X^4`, `w = l+m+3`.
pub fn frobenius_polynomial(l: u32, m: u32, p: u64, l1: &BigInt, l2: &BigInt, sign: QuadraticSign) -> Vec<BigInt> {
    let w = l + m + 3;
    let pb = BigInt::from(p);
    let c2 = match sign {
        QuadraticSign::Plus => l1 * l1 + l2 - pb.pow(w - 1),
        QuadraticSign::Minus => l1 * l1 - l2 - pb.pow(w - 1),
    };
    vec![BigInt::from(1), -l1, c2, -(l1 * pb.pow(w)), pb.pow(2 * w)]
}

pub fn newton_slopes(l: u32, m: u32, p: u64, l1: &BigInt, l2: &BigInt) -> Vec<BigRational> {
    newton_slopes_with(l, m, p, l1, l2, QuadraticSign::default())
}

pub fn newton_slopes_with(
    l: u32,
    m: u32,
    p: u64,
    l1: &BigInt,
    l2: &BigInt,
    sign: QuadraticSign,
) -> Vec<BigRational> {
    newton_polygon(&frobenius_polynomial(l, m, p, l1, l2, sign), p)
}
