//! Truncated integer power series in `q`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::ModformError;

/// `c_0 + c_1 q + ... + c_{T-1} q^{T-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(precision: usize) -> Self {
        QSeries { coeffs: vec![BigInt::zero(); precision] }
    }

    pub fn one(precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if precision > 0 {
            s.coeffs[0] = BigInt::one();
        }
        s
    }

    pub fn from_ints(c: &[i64], precision: usize) -> Self {
        let mut s = Self::zero(precision);
        for (i, &x) in c.iter().enumerate().take(precision) {
            s.coeffs[i] = BigInt::from(x);
        }
        s
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn truncate(&self, precision: usize) -> QSeries {
        let mut c = self.coeffs.clone();
        c.truncate(precision);
        QSeries { coeffs: c }
    }

    pub fn scale(&self, k: &BigInt) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `f(q) -> f(q^d)`.
    pub fn dilate(&self, d: usize) -> QSeries {
        let t = self.precision();
        let mut out = Self::zero(t);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * d >= t {
                break;
            }
            out.coeffs[i * d] = c.clone();
        }
        out
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: usize) -> QSeries {
        let t = self.precision();
        let mut out = Self::zero(t);
        for i in s..t {
            out.coeffs[i] = self.coeffs[i - s].clone();
        }
        out
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut out = QSeries::one(self.precision());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Order of vanishing at `q = 0`, or `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Inverse of a series with constant term `+-1`.
    pub fn inverse_unit(&self) -> QSeries {
        let t = self.precision();
        let c0 = self.coeffs[0].clone();
        assert!(c0 == BigInt::one() || c0 == -BigInt::one(), "not a unit over Z");
        let mut inv = Self::zero(t);
        inv.coeffs[0] = c0.clone();
        for n in 1..t {
            let mut s = BigInt::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * &inv.coeffs[n - k];
            }
            inv.coeffs[n] = -s * &c0;
        }
        inv
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let t = self.precision().min(o.precision());
        let mut out = QSeries::zero(t);
        for (i, a) in self.coeffs.iter().enumerate().take(t) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(t - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let t = self.precision().min(o.precision());
        QSeries { coeffs: (0..t).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect() }
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        let t = self.precision().min(o.precision());
        QSeries { coeffs: (0..t).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect() }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// `prod_{n >= 1} (1 - q^{dn})^e`, with possibly negative `e`.
fn euler_power(d: usize, e: i64, precision: usize) -> QSeries {
    let mut base = QSeries::one(precision);
    let mut n = d;
    while n < precision {
        // multiply by (1 - q^n)
        for i in (n..precision).rev() {
            let v = base.coeffs[i - n].clone();
            base.coeffs[i] -= v;
        }
        n += d;
    }
    let base = if e < 0 { base.inverse_unit() } else { base };
    base.pow(e.unsigned_abs() as u32)
}

/// `q^{(sum d e)/24} prod_{(d, e)} prod_n (1 - q^{dn})^e`.
pub fn eta_quotient(spec: &[(usize, i64)], precision: usize) -> Result<QSeries, ModformError> {
    let weight: i64 = spec.iter().map(|&(d, e)| d as i64 * e).sum();
    if weight % 24 != 0 || weight < 0 {
        return Err(ModformError::NonIntegralOffset(weight));
    }
    let offset = (weight / 24) as usize;
    let mut out = QSeries::one(precision);
    for &(d, e) in spec {
        out = &out * &euler_power(d, e, precision);
    }
    Ok(out.shift(offset))
}

fn divisor_power_sum(n: usize, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            if d * d != n {
                s += BigInt::from(n / d).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// Normalized Eisenstein series `E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n` for `k` in {2, 4, 6}.
pub fn eisenstein(k: u32, precision: usize) -> QSeries {
    let c: i64 = match k {
        2 => -24,
        4 => 240,
        6 => -504,
        _ => panic!("only E2, E4 and E6 are provided"),
    };
    let mut s = QSeries::one(precision);
    for n in 1..precision {
        s.coeffs[n] = BigInt::from(c) * divisor_power_sum(n, k - 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: usize) -> Vec<i64> {
        s.coeffs[..n].iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn delta_expansion() {
        let d = eta_quotient(&[(1, 24)], 6).unwrap();
        assert_eq!(ints(&d, 6), vec![0, 1, -24, 252, -1472, 4830]);
    }

    #[test]
    fn level_four_weight_six() {
        let f = eta_quotient(&[(2, 12)], 10).unwrap();
        assert_eq!(ints(&f, 10), vec![0, 1, 0, -12, 0, 54, 0, -88, 0, -99]);
    }

    #[test]
    fn level_two_weight_eight() {
        let f = eta_quotient(&[(1, 8), (2, 8)], 5).unwrap();
        assert_eq!(ints(&f, 5), vec![0, 1, -8, 12, 64]);
    }

    #[test]
    fn offsets() {
        assert!(matches!(eta_quotient(&[(1, 1)], 5), Err(ModformError::NonIntegralOffset(1))));
        // eta(z)^16 / eta(2z)^8 has weight offset 0 and is a unit
        let u = eta_quotient(&[(1, 16), (2, -8)], 5).unwrap();
        assert_eq!(ints(&u, 2), vec![1, -16]);
    }

    #[test]
    fn delta_from_eisenstein() {
        let t = 8;
        let e4 = eisenstein(4, t);
        let e6 = eisenstein(6, t);
        let diff = &e4.pow(3) - &e6.pow(2);
        let delta = eta_quotient(&[(1, 24)], t).unwrap().scale(&BigInt::from(1728));
        assert_eq!(diff, delta);
    }
}
