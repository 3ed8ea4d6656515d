//! Cusp forms on `Gamma_0(N)` for `N` in {1, 2, 4}: dimensions, integral
//! bases, Hecke matrices and Frobenius traces.
//!
//! Bases are built from a cusp form that vanishes to order one at every cusp
//! times a basis of modular forms of the complementary weight:
//!
//! * level 1: `Delta * E4^a E6^b`;
//! * level 2: `eta(z)^8 eta(2z)^8 * A^a E4^b` with `A = 2 E2(2z) - E2(z)`;
//! * level 4: `eta(2z)^12 * A(z)^a A(2z)^b`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::ModformError;
use crate::modforms::linalg::Matrix;
use crate::modforms::qseries::{eisenstein, eta_quotient, QSeries};

fn check_level_weight(level: u32, weight: u32) -> Result<(), ModformError> {
    if ![1, 2, 4].contains(&level) {
        return Err(ModformError::UnsupportedLevel(level));
    }
    if weight % 2 == 1 {
        return Err(ModformError::OddWeight(weight));
    }
    Ok(())
}

/// `dim S_k(Gamma_0(N))`.
pub fn dim_cusp(level: u32, weight: u32) -> Result<usize, ModformError> {
    check_level_weight(level, weight)?;
    let k = weight as i64;
    let d = match level {
        1 => {
            if k < 12 {
                0
            } else if k % 12 == 2 {
                k / 12 - 1
            } else {
                k / 12
            }
        }
        2 => (k / 4 - 1).max(0),
        _ => (k / 2 - 2).max(0),
    };
    Ok(d as usize)
}

/// Dimension of the new subspace.
pub fn dim_new(level: u32, weight: u32) -> Result<usize, ModformError> {
    let d1 = dim_cusp(1, weight)? as i64;
    let d = match level {
        1 => d1,
        2 => dim_cusp(2, weight)? as i64 - 2 * d1,
        4 => dim_cusp(4, weight)? as i64 - 2 * dim_cusp(2, weight)? as i64 + d1,
        _ => return Err(ModformError::UnsupportedLevel(level)),
    };
    Ok(d as usize)
}

/// Index of `Gamma_0(N)` in `SL_2(Z)`.
pub fn index(level: u32) -> usize {
    match level {
        1 => 1,
        2 => 3,
        4 => 6,
        _ => panic!("unsupported level {level}"),
    }
}

/// Sturm bound `k [SL_2(Z) : Gamma_0(N)] / 12`.
pub fn sturm_bound(level: u32, weight: u32) -> usize {
    weight as usize * index(level) / 12
}

fn weight_two_form(precision: usize) -> QSeries {
    let e2 = eisenstein(2, precision);
    &e2.dilate(2).scale(&BigInt::from(2)) - &e2
}

/// Integral q-expansion generators of `S_k(Gamma_0(N))`, to the given precision.
pub fn cusp_basis(level: u32, weight: u32, precision: usize) -> Result<Vec<QSeries>, ModformError> {
    check_level_weight(level, weight)?;
    let expected = dim_cusp(level, weight)?;
    let t = precision;
    let mut gens = Vec::new();
    match level {
        1 if weight >= 12 => {
            let delta = eta_quotient(&[(1, 24)], t)?;
            let e4 = eisenstein(4, t);
            let e6 = eisenstein(6, t);
            let rest = weight - 12;
            for b in 0..=rest / 6 {
                let r = rest - 6 * b;
                if r % 4 == 0 {
                    gens.push(&(&delta * &e4.pow(r / 4)) * &e6.pow(b));
                }
            }
        }
        2 if weight >= 8 => {
            let cusp = eta_quotient(&[(1, 8), (2, 8)], t)?;
            let a = weight_two_form(t);
            let e4 = eisenstein(4, t);
            let rest = weight - 8;
            for b in 0..=rest / 4 {
                gens.push(&(&cusp * &e4.pow(b)) * &a.pow((rest - 4 * b) / 2));
            }
        }
        4 if weight >= 6 => {
            let cusp = eta_quotient(&[(2, 12)], t)?;
            let x = weight_two_form(t);
            let y = x.dilate(2);
            let h = (weight - 6) / 2;
            for b in 0..=h {
                gens.push(&(&cusp * &x.pow(h - b)) * &y.pow(b));
            }
        }
        _ => {}
    }
    let rank = if gens.is_empty() { 0 } else { to_matrix(&gens).rank() };
    if rank != expected || gens.len() != expected {
        return Err(ModformError::SpanDeficient { level, weight, rank, expected });
    }
    Ok(gens)
}

fn to_matrix(series: &[QSeries]) -> Matrix {
    Matrix::from_rows(
        series
            .iter()
            .map(|s| s.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
            .collect(),
    )
}

/// A cusp space with an echelon basis and cached Hecke matrices.
#[derive(Debug)]
pub struct CuspSpace {
    pub level: u32,
    pub weight: u32,
    pub precision: usize,
    /// Echelon basis: `basis[i]` has coefficient 1 at `pivots[i]` and 0 at the other pivots.
    pub basis: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
    hecke: Mutex<HashMap<u64, Arc<Matrix>>>,
}

impl CuspSpace {
    pub fn new(level: u32, weight: u32, precision: usize) -> Result<Self, ModformError> {
        let gens = cusp_basis(level, weight, precision)?;
        let (basis, pivots) = if gens.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let (r, piv) = to_matrix(&gens).rref();
            let rows = (0..piv.len())
                .map(|i| (0..r.cols).map(|j| r.get(i, j).clone()).collect())
                .collect();
            (rows, piv)
        };
        Ok(CuspSpace {
            level,
            weight,
            precision,
            basis,
            pivots,
            hecke: Mutex::new(HashMap::new()),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Largest prime whose Hecke operator is determined at this precision.
    pub fn usable_prime_bound(&self) -> u64 {
        ((self.precision - 1) / (sturm_bound(self.level, self.weight) + 1)) as u64
    }

    /// Coefficients `a_0..a_{len-1}` of `T_p f` (or `U_p f` for `p | N`).
    fn apply_hecke(&self, f: &[BigRational], p: u64, len: usize) -> Vec<BigRational> {
        let p = p as usize;
        let pk = BigRational::from_integer(BigInt::from(p).pow(self.weight - 1));
        let divides_level = self.level as usize % p == 0;
        (0..len)
            .map(|n| {
                let mut c = f[n * p].clone();
                if !divides_level && n % p == 0 {
                    c += &pk * &f[n / p];
                }
                c
            })
            .collect()
    }

    /// Matrix of `T_p` in the echelon basis (columns are images).
    pub fn hecke_matrix(&self, p: u64) -> Result<Arc<Matrix>, ModformError> {
        if let Some(m) = self.hecke.lock().expect("hecke cache").get(&p) {
            return Ok(m.clone());
        }
        let d = self.dim();
        let sturm = sturm_bound(self.level, self.weight);
        let len = (self.precision - 1) / p as usize + 1;
        if len <= sturm {
            return Err(ModformError::MissingEigenData(format!(
                "precision {} too small for T_{p} on level {} weight {}",
                self.precision, self.level, self.weight
            )));
        }
        let mut m = Matrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let image = self.apply_hecke(b, p, len);
            for (i, &piv) in self.pivots.iter().enumerate() {
                m.set(i, j, image[piv].clone());
            }
            // the image must be the combination read off at the pivots
            for n in 0..len {
                let mut s = BigRational::zero();
                for (i, row) in self.basis.iter().enumerate() {
                    s += m.get(i, j) * &row[n];
                }
                assert_eq!(s, image[n], "Hecke image left the space; precision too low");
            }
        }
        let m = Arc::new(m);
        self.hecke.lock().expect("hecke cache").insert(p, m.clone());
        Ok(m)
    }

    /// q-expansion of the combination `sum v_i basis_i`.
    pub fn combination(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.precision];
        for (c, row) in v.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }
}

fn space_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<CuspSpace>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<CuspSpace>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Precision that makes `T_p` rigorous for every prime up to `max_prime`.
pub fn precision_for(level: u32, weight: u32, max_prime: u64) -> usize {
    let sturm = sturm_bound(level, weight);
    let p = max_prime.max(2) as usize;
    (p * (sturm + 2)).max(2 * sturm + p) + 1
}

/// Shared cusp space, rebuilt at higher precision when needed.
pub fn cusp_space(level: u32, weight: u32, max_prime: u64) -> Result<Arc<CuspSpace>, ModformError> {
    check_level_weight(level, weight)?;
    let need = precision_for(level, weight, max_prime);
    {
        let cache = space_cache().lock().expect("space cache");
        if let Some(s) = cache.get(&(level, weight)) {
            if s.precision >= need {
                return Ok(s.clone());
            }
        }
    }
    let space = Arc::new(CuspSpace::new(level, weight, need)?);
    space_cache().lock().expect("space cache").insert((level, weight), space.clone());
    Ok(space)
}

/// Splits `q` as `p^r` with `p` prime.
pub fn prime_power(q: u64) -> Result<(u64, u32), ModformError> {
    if q < 2 {
        return Err(ModformError::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).expect("q >= 2 has a divisor");
    let mut r = 0;
    let mut x = q;
    while x % p == 0 {
        x /= p;
        r += 1;
    }
    if x != 1 {
        return Err(ModformError::NotPrimePower(q));
    }
    Ok((p, r))
}

/// What a weight-`k` cusp form contributes at `q = p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceRule {
    /// `alpha^r + beta^r`, the Frobenius trace on the motive.
    #[default]
    Frobenius,
    /// `a_{p^r}`, the Hecke eigenvalue.
    HeckeEigenvalue,
}

impl TraceRule {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceRule::Frobenius => "frobenius",
            TraceRule::HeckeEigenvalue => "hecke-eigenvalue",
        }
    }
}

/// Trace of `alpha^r + beta^r` (or `a_{p^r}`) summed over an invariant
/// subspace, from the matrix of `T_p`.
fn power_trace(t: &Matrix, p: u64, weight: u32, r: u32, rule: TraceRule) -> BigInt {
    let d = t.rows;
    if d == 0 {
        return BigInt::zero();
    }
    let pk = BigRational::from_integer(BigInt::from(p).pow(weight - 1));
    let start = match rule {
        TraceRule::Frobenius => BigRational::from_integer(BigInt::from(2)),
        TraceRule::HeckeEigenvalue => BigRational::from_integer(BigInt::from(1)),
    };
    let mut prev = Matrix::identity(d).scale(&start);
    if r == 0 {
        return prev.trace().to_integer();
    }
    let mut cur = t.clone();
    for _ in 1..r {
        let next = t.mul(&cur).add(&prev.scale(&-pk.clone()));
        prev = cur;
        cur = next;
    }
    let tr = cur.trace();
    assert!(tr.is_integer(), "non-integral Hecke trace");
    tr.to_integer()
}

/// Frobenius trace at `q` on all of `S_k(Gamma_0(N))`.
pub fn full_trace(level: u32, weight: u32, q: u64) -> Result<BigInt, ModformError> {
    full_trace_with(level, weight, q, TraceRule::Frobenius)
}

/// Trace at `q` on all of `S_k(Gamma_0(N))` under `rule`.
pub fn full_trace_with(level: u32, weight: u32, q: u64, rule: TraceRule) -> Result<BigInt, ModformError> {
    let (p, r) = prime_power(q)?;
    if level as u64 % p == 0 {
        return Err(ModformError::MissingEigenData(format!("q = {q} is not prime to the level {level}")));
    }
    if dim_cusp(level, weight)? == 0 {
        return Ok(BigInt::zero());
    }
    let space = cusp_space(level, weight, p)?;
    let t = space.hecke_matrix(p)?;
    Ok(power_trace(&t, p, weight, r, rule))
}

/// Frobenius trace at `q` on the new subspace of level `N`.
pub fn new_trace(level: u32, weight: u32, q: u64) -> Result<BigInt, ModformError> {
    new_trace_with(level, weight, q, TraceRule::Frobenius)
}

/// Trace at `q` on the new subspace of level `N` under `rule`.
pub fn new_trace_with(level: u32, weight: u32, q: u64, rule: TraceRule) -> Result<BigInt, ModformError> {
    let full = |n| full_trace_with(n, weight, q, rule);
    let f1 = full(1)?;
    Ok(match level {
        1 => f1,
        2 => full(2)? - BigInt::from(2) * f1,
        4 => full(4)? - BigInt::from(2) * full(2)? + f1,
        _ => return Err(ModformError::UnsupportedLevel(level)),
    })
}

/// Basis (columns) of the level-2 newforms with Atkin–Lehner sign `sign`, as
/// the kernel of `U_2 + sign * 2^{k/2-1}`.
pub fn sign_subspace(weight: u32, sign: i8, max_prime: u64) -> Result<(Arc<CuspSpace>, Matrix), ModformError> {
    check_level_weight(2, weight)?;
    let space = cusp_space(2, weight, max_prime.max(2))?;
    let d = space.dim();
    if d == 0 {
        return Ok((space, Matrix::zeros(0, 0)));
    }
    let u2 = space.hecke_matrix(2)?;
    let c = BigRational::from_integer(BigInt::from(2).pow(weight / 2 - 1) * BigInt::from(sign));
    let shifted = u2.add(&Matrix::identity(d).scale(&c));
    Ok((space, shifted.kernel()))
}

/// `dim S^{sign}_k(Gamma_0(2))^new`.
pub fn dim_sign(weight: u32, sign: i8) -> Result<usize, ModformError> {
    if dim_cusp(2, weight)? == 0 {
        return Ok(0);
    }
    Ok(sign_subspace(weight, sign, 2)?.1.cols)
}

/// Frobenius trace at `q` on `S^{sign}_k(Gamma_0(2))^new`.
pub fn sign_trace(weight: u32, sign: i8, q: u64) -> Result<BigInt, ModformError> {
    sign_trace_with(weight, sign, q, TraceRule::Frobenius)
}

/// Trace at `q` on `S^{sign}_k(Gamma_0(2))^new` under `rule`.
pub fn sign_trace_with(weight: u32, sign: i8, q: u64, rule: TraceRule) -> Result<BigInt, ModformError> {
    let (p, r) = prime_power(q)?;
    if p == 2 {
        return Err(ModformError::MissingEigenData("q must be odd".into()));
    }
    if dim_cusp(2, weight)? == 0 {
        return Ok(BigInt::zero());
    }
    let (space, k) = sign_subspace(weight, sign, p)?;
    if k.cols == 0 {
        return Ok(BigInt::zero());
    }
    let t = space.hecke_matrix(p)?;
    let restricted = t.restrict(&k);
    Ok(power_trace(&restricted, p, weight, r, rule))
}
