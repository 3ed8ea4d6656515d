//! Univariate rational polynomials and exact integer-root isolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients, lowest degree first, trailing zeros removed.
pub type RatPoly = Vec<BigRational>;

pub fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn derivative(p: &[BigRational]) -> RatPoly {
    let mut d: RatPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut d);
    d
}

/// Quotient and remainder.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut r: RatPoly = a.to_vec();
    trim(&mut r);
    let mut b: RatPoly = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() > db {
        let top = r.len() - 1;
        let c = &r[top] / &lead;
        for i in 0..=db {
            let idx = top - db + i;
            r[idx] = &r[idx] - &c * &b[i];
        }
        quot[top - db] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut a: RatPoly = a.to_vec();
    let mut b: RatPoly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &l;
        }
    }
    a
}

/// The squarefree part `p / gcd(p, p')`.
pub fn squarefree_part(p: &[BigRational]) -> RatPoly {
    let g = gcd(p, &derivative(p));
    divrem(p, &g).0
}

fn sign_changes(seq: &[RatPoly], x: &BigRational) -> usize {
    let mut prev = 0i8;
    let mut changes = 0;
    for s in seq {
        let v = eval(s, x);
        let sgn = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if sgn != 0 {
            if prev != 0 && sgn != prev {
                changes += 1;
            }
            prev = sgn;
        }
    }
    changes
}

fn sturm_sequence(p: &[BigRational]) -> Vec<RatPoly> {
    let mut seq = vec![p.to_vec(), derivative(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = divrem(&seq[n - 2], &seq[n - 1]);
        let neg: RatPoly = r.into_iter().map(|c| -c).collect();
        if neg.is_empty() {
            break;
        }
        seq.push(neg);
    }
    seq
}

/// Every real root is an integer: returns them (without multiplicity), or
/// `None` if some real or complex root is not an integer.
pub fn integer_roots(p: &[BigRational]) -> Option<Vec<BigInt>> {
    let mut p: RatPoly = p.to_vec();
    trim(&mut p);
    let sf = squarefree_part(&p);
    let deg = sf.len().saturating_sub(1);
    if deg == 0 {
        return Some(Vec::new());
    }
    let seq = sturm_sequence(&sf);
    // Cauchy bound
    let lead = sf[deg].abs();
    let bound = sf[..deg]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRational::zero)
        + BigRational::one();
    let lo = -bound.clone();
    let hi = bound;
    let real_roots = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
    if real_roots != deg {
        return None;
    }
    let mut roots = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&seq, &a) - sign_changes(&seq, &b);
        if count == 0 {
            continue;
        }
        let width = &b - &a;
        if count == 1 && width < BigRational::one() {
            // root in (a, b]
            let n = b.floor().to_integer();
            let nr = BigRational::from_integer(n.clone());
            if nr > a && eval(&sf, &nr).is_zero() {
                roots.push(n);
                continue;
            }
            return None;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        let mid = BigRational::from_integer(mid.floor().to_integer());
        let mid = if mid <= a || mid >= b { (&a + &b) / BigRational::from_integer(BigInt::from(2)) } else { mid };
        stack.push((a, mid.clone()));
        stack.push((mid, b));
    }
    roots.sort();
    Some(roots)
}

/// Multiplies through by the lcm of the denominators.
pub fn to_integer_coeffs(p: &[BigRational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RatPoly {
        c.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn roots_of_split_polynomial() {
        // (x - 3)^2 (x + 5) (x - 100)
        let p = poly(&[-4500, 2145, 79, -101, 1]);
        let r = integer_roots(&p).unwrap();
        assert_eq!(r, vec![BigInt::from(-5), BigInt::from(3), BigInt::from(100)]);
    }

    #[test]
    fn irrational_roots_rejected() {
        assert!(integer_roots(&poly(&[-2, 0, 1])).is_none());
        assert!(integer_roots(&poly(&[1, 0, 1])).is_none());
        assert_eq!(integer_roots(&poly(&[0, 1])).unwrap(), vec![BigInt::zero()]);
    }
}
