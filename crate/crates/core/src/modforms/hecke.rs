//! Rational Hecke eigensystems of newforms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ModformError;
use crate::modforms::linalg::Matrix;
use crate::modforms::poly::integer_roots;
use crate::modforms::spaces::{cusp_space, dim_cusp, CuspSpace};

/// A normalized newform with rational (hence integral) eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewformSystem {
    pub level: u32,
    pub weight: u32,
    /// `a_p` for every prime `p <= P`, including primes dividing the level.
    pub ap: BTreeMap<u64, BigInt>,
    /// Atkin–Lehner sign at 2, from `a_2 = -w_2 2^{k/2-1}` (level 2 only).
    pub w2: Option<i8>,
    /// `a_0, a_1, ...` of the normalized q-expansion.
    pub coefficients: Vec<BigInt>,
}

impl NewformSystem {
    pub fn a(&self, n: usize) -> &BigInt {
        &self.coefficients[n]
    }

    /// `a_{p^r}` from the Hecke recursion.
    pub fn a_prime_power(&self, p: u64, r: u32) -> Result<BigInt, ModformError> {
        let ap = self
            .ap
            .get(&p)
            .ok_or_else(|| ModformError::MissingEigenData(format!("a_{p} of level {} weight {}", self.level, self.weight)))?;
        if self.level as u64 % p == 0 {
            return Ok(ap.pow(r));
        }
        let pk = BigInt::from(p).pow(self.weight - 1);
        let (mut prev, mut cur) = (BigInt::one(), ap.clone());
        if r == 0 {
            return Ok(prev);
        }
        for _ in 1..r {
            let next = ap * &cur - &pk * &prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// `alpha^r + beta^r`, the Frobenius trace at `q = p^r` on the motive of the form.
    pub fn frobenius_trace(&self, p: u64, r: u32) -> Result<BigInt, ModformError> {
        let ap = self
            .ap
            .get(&p)
            .ok_or_else(|| ModformError::MissingEigenData(format!("a_{p} of level {} weight {}", self.level, self.weight)))?;
        let pk = BigInt::from(p).pow(self.weight - 1);
        let (mut prev, mut cur) = (BigInt::from(2), ap.clone());
        if r == 0 {
            return Ok(prev);
        }
        for _ in 1..r {
            let next = ap * &cur - &pk * &prev;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }
}

fn odd_primes_up_to(n: u64) -> Vec<u64> {
    (3..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

/// Splits the column span of `basis` into joint eigenspaces of the given operators.
fn joint_eigenspaces(
    space: &CuspSpace,
    primes: &[u64],
) -> Result<Vec<Matrix>, ModformError> {
    let d = space.dim();
    let mut spaces = vec![Matrix::identity(d)];
    for &p in primes {
        let t = space.hecke_matrix(p)?;
        let mut next = Vec::new();
        for w in spaces {
            if w.cols == 1 {
                next.push(w);
                continue;
            }
            let restricted = t.restrict(&w);
            let roots = integer_roots(&restricted.charpoly()).ok_or(ModformError::IrrationalEigenvalue {
                level: space.level,
                weight: space.weight,
            })?;
            for lam in roots {
                let shifted = restricted.add(&Matrix::identity(w.cols).scale(&-BigRational::from_integer(lam)));
                let k = shifted.kernel();
                next.push(w.mul(&k));
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

/// Newforms of exact level `N` and weight `k`, with eigenvalues for primes up to `max_prime`.
pub fn hecke_eigen(level: u32, weight: u32, max_prime: u64) -> Result<Vec<NewformSystem>, ModformError> {
    if dim_cusp(level, weight)? == 0 {
        return Ok(Vec::new());
    }
    let max_prime = max_prime.max(7);
    let space = cusp_space(level, weight, max_prime)?;
    let primes = odd_primes_up_to(max_prime);
    let eigenspaces = joint_eigenspaces(&space, &primes)?;
    let mut out = Vec::new();
    for w in eigenspaces {
        // a new eigensystem occurs once; old ones repeat once per divisor of N/M
        if w.cols != 1 {
            continue;
        }
        let v: Vec<BigRational> = (0..w.rows).map(|i| w.get(i, 0).clone()).collect();
        let f = space.combination(&v);
        let a1 = f[1].clone();
        if a1.is_zero() {
            return Err(ModformError::MissingEigenData("eigenform with a_1 = 0".into()));
        }
        let coefficients: Vec<BigInt> = f
            .iter()
            .map(|c| {
                let x = c / &a1;
                assert!(x.is_integer(), "non-integral newform coefficient");
                x.to_integer()
            })
            .collect();
        let usable = (coefficients.len() - 1) as u64;
        let mut ap = BTreeMap::new();
        for p in std::iter::once(2).chain(primes.iter().copied()) {
            if p <= usable {
                ap.insert(p, coefficients[p as usize].clone());
            }
        }
        let w2 = (level == 2).then(|| {
            let c = BigInt::from(2).pow(weight / 2 - 1);
            if coefficients[2] == -c.clone() {
                1
            } else if coefficients[2] == c {
                -1
            } else {
                panic!("level-2 newform with a_2 = {}", coefficients[2])
            }
        });
        out.push(NewformSystem { level, weight, ap, w2, coefficients });
    }
    out.sort_by(|a, b| a.ap.get(&3).cmp(&b.ap.get(&3)));
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct NewformRecord {
    ap: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w2: Option<i8>,
}

#[derive(Serialize, Deserialize)]
struct EigenFile {
    level: u32,
    weight: u32,
    newforms: Vec<NewformRecord>,
}

/// Eigen-data cache document with decimal-string integers.
pub fn eigen_to_json(level: u32, weight: u32, forms: &[NewformSystem]) -> String {
    let file = EigenFile {
        level,
        weight,
        newforms: forms
            .iter()
            .map(|f| NewformRecord {
                ap: f.ap.iter().map(|(p, a)| (p.to_string(), a.to_string())).collect(),
                w2: f.w2,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("eigen data serializes")
}
