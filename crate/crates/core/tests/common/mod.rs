//! Checkers shared by the acceptance suite and the property tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use a2count::census::{curve_stats, CensusTally, CurveStats};
use a2count::cohomology::formulas::{eisenstein_equivariant, eisenstein_total};
use a2count::cohomology::motive::HeckeTraces;
use a2count::cohomology::report::residual_trace;
use a2count::cohomology::trace::{CensusData, Isotype, TraceOptions};
use a2count::error::ModformError;
use a2count::ffield::{build_field, is_squarefree, FieldSpec, Poly, QuadraticExtension};
use a2count::modforms::{cusp_basis, hecke_eigen, NewformSystem};
use a2count::partition::Partition;
use a2count::symfunc::{s6_character, s6_table, sp4_coeffs_cached, sp4_dim, z_order};

pub type Check = Result<(), String>;

/// Censuses at `q = p^r` with weight cap 18, computed once per test binary.
pub fn census(p: u32, r: u32) -> Arc<CensusData> {
    static CACHE: OnceLock<Mutex<BTreeMap<(u32, u32), Arc<CensusData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&(p, r)) {
        return d.clone();
    }
    let d = Arc::new(CensusData::compute(p, r, 18).expect("census"));
    cache.lock().unwrap().insert((p, r), d.clone());
    d
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn s6_orthogonality() -> Check {
    let parts = &s6_table().partitions;
    for a in parts {
        for b in parts {
            let mut s = BigRational::zero();
            for nu in parts {
                let c = s6_character(a, nu) * s6_character(b, nu);
                s += BigRational::new(c.into(), z_order(nu).into());
            }
            let want = if a == b { BigRational::one() } else { BigRational::zero() };
            if s != want {
                return Err(format!("<chi^{a}, chi^{b}> = {s}"));
            }
        }
    }
    Ok(())
}

pub fn regular_representation() -> Check {
    let t = s6_table();
    let identity = Partition::new(vec![1; 6]);
    for nu in &t.partitions {
        let s: i64 = t.partitions.iter().enumerate().map(|(i, mu)| t.dim(i) * s6_character(mu, nu)).sum();
        let want = if *nu == identity { 720 } else { 0 };
        if s != want {
            return Err(format!("regular character at {nu} is {s}"));
        }
    }
    Ok(())
}

fn eval_beta(l: u32, m: u32, p1: &BigRational, p2: &BigRational) -> BigRational {
    let coeffs = sp4_coeffs_cached(l, m).expect("coefficients");
    let mut s = BigRational::zero();
    for (&(n1, n2), c) in coeffs {
        s += c * num_traits::pow(p1.clone(), n1 as usize) * num_traits::pow(p2.clone(), n2 as usize);
    }
    s
}

/// Evaluation at the identity gives the Weyl dimension.
pub fn beta_dimension(l: u32, m: u32) -> Check {
    let v = eval_beta(l, m, &rat(4), &rat(4));
    if v != rat(sp4_dim(l, m) as i64) {
        return Err(format!("beta({l},{m}) at identity = {v}, dim = {}", sp4_dim(l, m)));
    }
    Ok(())
}

fn alt(x: &BigRational, y: &BigRational, a: u32, b: u32) -> BigRational {
    let f = |t: &BigRational, e: u32| num_traits::pow(t.clone(), e as usize) - num_traits::pow(t.recip(), e as usize);
    f(x, a) * f(y, b) - f(x, b) * f(y, a)
}

/// The power-sum expansion agrees with the Weyl character ratio at the torus point `(x, y)`.
pub fn beta_round_trip(l: u32, m: u32, x: &BigRational, y: &BigRational) -> Check {
    let weyl = alt(x, y, l + 2, m + 1) / alt(x, y, 2, 1);
    let p1 = x + x.recip() + y + y.recip();
    let p2 = x * x + (x * x).recip() + y * y + (y * y).recip();
    let v = eval_beta(l, m, &p1, &p2);
    if v != weyl {
        return Err(format!("({l},{m}) at ({x},{y}): {v} vs {weyl}"));
    }
    Ok(())
}

/// A uniformly random squarefree polynomial of degree 5 or 6.
pub fn random_curve(field: &FieldSpec, rng: &mut impl Rng) -> Poly {
    loop {
        let d = if rng.random_bool(0.5) { 5 } else { 6 };
        let mut f: Poly = (0..d).map(|_| field.from_code(rng.random_range(0..field.q()))).collect();
        let lead = field.from_code(rng.random_range(1..field.q()));
        f.push(lead);
        if is_squarefree(field, &f) {
            return f;
        }
    }
}

pub fn weil_and_parity(s: &CurveStats, q: u64) -> Check {
    let q = q as i64;
    if s.a1 * s.a1 > 16 * q {
        return Err(format!("|a1| = {} above 4 sqrt(q)", s.a1));
    }
    if s.a2.abs() > 4 * q {
        return Err(format!("|a2| = {} above 4q", s.a2));
    }
    if (s.a1 * s.a1 - s.a2) % 2 != 0 {
        return Err(format!("a1 = {}, a2 = {} of different parity", s.a1, s.a2));
    }
    Ok(())
}

/// Weil bounds and parity on `count` random curves spread over the fields.
pub fn weil_sample(fields: &[(u32, u32)], count: usize, rng: &mut impl Rng) -> Check {
    let exts: Vec<QuadraticExtension> = fields
        .iter()
        .map(|&(p, r)| QuadraticExtension::new(Arc::new(build_field(p, r).unwrap())).unwrap())
        .collect();
    for i in 0..count {
        let ext = &exts[i % exts.len()];
        let f = random_curve(&ext.base, rng);
        let s = curve_stats(ext, &f).map_err(|e| e.to_string())?;
        weil_and_parity(&s, ext.base.q() as u64)?;
    }
    Ok(())
}

pub fn twist_cancellation(t: &CensusTally) -> Check {
    for ((nu, n1, n2), v) in t.entries() {
        if n1 % 2 == 1 && !v.is_zero() {
            return Err(format!("entry ({nu},{n1},{n2}) = {v} at q = {}", t.q()));
        }
    }
    Ok(())
}

/// `dim S_k(Gamma_0(N))` from the genus formula, for `N` in {1, 2, 4}.
pub fn valence_dimension(level: u32, weight: u32) -> usize {
    let (g, cusps, e2, e3) = match level {
        1 => (0i64, 1i64, 1i64, 1i64),
        2 => (0, 2, 1, 0),
        4 => (0, 3, 0, 0),
        _ => unreachable!(),
    };
    let k = weight as i64;
    let d = if k == 2 {
        g
    } else {
        (k - 1) * (g - 1) + (k / 2 - 1) * cusps + e2 * (k / 4) + e3 * (k / 3)
    };
    d.max(0) as usize
}

pub fn cusp_rank(level: u32, weight: u32) -> Check {
    let basis = cusp_basis(level, weight, 60).map_err(|e| e.to_string())?;
    let want = valence_dimension(level, weight);
    if basis.len() != want {
        return Err(format!("S_{weight}(G0({level})): {} generators, dimension {want}", basis.len()));
    }
    Ok(())
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Hecke relations and the Ramanujan bound on the computed coefficients.
pub fn hecke_relations(f: &NewformSystem) -> Check {
    let n = f.coefficients.len() - 1;
    let tag = format!("level {} weight {}", f.level, f.weight);
    if !f.a(1).is_one() {
        return Err(format!("{tag}: not normalized"));
    }
    for a in 2..=n {
        for b in 2..=n / a {
            if gcd(a, b) == 1 && f.a(a * b) != &(f.a(a) * f.a(b)) {
                return Err(format!("{tag}: a({}) != a({a}) a({b})", a * b));
            }
        }
    }
    for p in (2..=n as u64).filter(|&p| is_prime(p)) {
        let pk = BigInt::from(p).pow(f.weight - 1);
        let ap = f.a(p as usize);
        if (p * p) as usize <= n {
            let want = if f.level as u64 % p == 0 { ap * ap } else { ap * ap - &pk };
            if f.a((p * p) as usize) != &want {
                return Err(format!("{tag}: a({}) breaks the Hecke recursion", p * p));
            }
        }
        if f.level as u64 % p != 0 && ap * ap > BigInt::from(4) * &pk {
            return Err(format!("{tag}: a({p}) = {ap} above the Ramanujan bound"));
        }
    }
    Ok(())
}

/// Every rational newform at levels 1, 2, 4 and even weight up to `max_weight`.
pub fn all_newforms(max_weight: u32) -> Result<Vec<NewformSystem>, String> {
    let mut out = Vec::new();
    for level in [1, 2, 4] {
        for weight in (2..=max_weight).step_by(2) {
            match hecke_eigen(level, weight, 13) {
                Ok(forms) => out.extend(forms),
                Err(ModformError::IrrationalEigenvalue { .. }) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(out)
}

pub fn dimension_contraction(l: u32, m: u32) -> Check {
    let eq = eisenstein_equivariant(l, m).map_err(|e| e.to_string())?.dimension();
    let total = eisenstein_total(l, m).map_err(|e| e.to_string())?;
    if !eq.equivalent(&total).map_err(|e| e.to_string())? {
        return Err(format!("({l},{m}): {eq} vs {total}"));
    }
    Ok(())
}

/// No Siegel cusp forms at `(2,0)` and `(3,1)`: every residual vanishes.
pub fn residuals_vanish(data: &CensusData, options: &TraceOptions) -> Check {
    let src = HeckeTraces::default();
    for (l, m) in [(2, 0), (3, 1)] {
        for mu in &s6_table().partitions {
            let r = residual_trace(data, l, m, &Isotype::Irrep(mu.clone()), options, &src).map_err(|e| e.to_string())?;
            if !r.is_zero() {
                return Err(format!("residual ({l},{m}) {mu} at q = {} is {r}", data.q()));
            }
        }
    }
    Ok(())
}
