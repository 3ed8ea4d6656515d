//! Character data for `S6` and `Sp(4)`.
//!
//! `S6` characters come from the Murnaghan–Nakayama rule on beta-sets.
//! The `Sp(4)` character of highest weight `(l, m)` is written in the power
//! sums `p_i = x^i + x^-i + y^i + y^-i` by way of the determinantal formula
//! `chi_{l,m} = (U_{l+1}(u) U_m(v) - U_m(u) U_{l+1}(v)) / (u - v)` in
//! `u = x + 1/x`, `v = y + 1/y`, followed by the substitution `u + v = p1`,
//! `uv = (p1^2 - p2 - 4) / 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::SymfuncError;
use crate::partition::{partitions_of, Partition};

/// Number of irreducible representations of `S6`.
pub const S6_IRREPS: usize = 11;

/// Murnaghan–Nakayama value `chi^mu(nu)` for any `|mu| = |nu|`.
pub fn character(mu: &Partition, nu: &Partition) -> i64 {
    assert_eq!(mu.size(), nu.size(), "partitions of different sizes");
    let len = mu.len();
    let beta: Vec<i64> = mu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (len - 1 - i) as i64)
        .collect();
    mn_rec(beta, nu.parts())
}

fn mn_rec(beta: Vec<i64>, hooks: &[u8]) -> i64 {
    let Some((&r, rest)) = hooks.split_first() else {
        return 1;
    };
    let r = r as i64;
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let target = b - r;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > target && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[i] = target;
        total += sign * mn_rec(next, rest);
    }
    total
}

/// `chi^mu(nu)` for partitions of 6.
pub fn s6_character(mu: &Partition, nu: &Partition) -> i64 {
    let t = s6_table();
    t.chi[t.position(mu)][t.position(nu)]
}

/// Centralizer order of the cycle type `nu`.
pub fn z_order(nu: &Partition) -> u64 {
    nu.z_order()
}

/// Character table of `S6` in the canonical partition order.
#[derive(Debug, Clone)]
pub struct S6Table {
    pub partitions: Vec<Partition>,
    /// `chi[mu][nu]`.
    pub chi: Vec<Vec<i64>>,
    pub z: Vec<u64>,
}

impl S6Table {
    pub fn position(&self, p: &Partition) -> usize {
        self.partitions
            .iter()
            .position(|x| x == p)
            .unwrap_or_else(|| panic!("{p} is not a partition of 6"))
    }

    pub fn dim(&self, mu: usize) -> i64 {
        self.chi[mu][S6_IRREPS - 1]
    }
}

pub fn s6_table() -> &'static S6Table {
    static TABLE: OnceLock<S6Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let partitions = partitions_of(6);
        let chi = partitions
            .iter()
            .map(|mu| partitions.iter().map(|nu| character(mu, nu)).collect())
            .collect();
        let z = partitions.iter().map(|p| p.z_order()).collect();
        S6Table { partitions, chi, z }
    })
}

/// A virtual representation of `S6` as multiplicities of the irreducibles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rep(pub [i64; S6_IRREPS]);

impl Rep {
    pub const ZERO: Rep = Rep([0; S6_IRREPS]);

    /// The irreducible `s[mu]`.
    pub fn irreducible(mu: &Partition) -> Rep {
        let mut v = [0; S6_IRREPS];
        v[s6_table().position(mu)] = 1;
        Rep(v)
    }

    /// The irreducible named by parts, e.g. `Rep::s(&[3, 1, 1, 1])`.
    pub fn s(parts: &[u8]) -> Rep {
        Rep::irreducible(&Partition::new(parts.to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn multiplicity(&self, mu: &Partition) -> i64 {
        self.0[s6_table().position(mu)]
    }

    pub fn dim(&self) -> i64 {
        let t = s6_table();
        (0..S6_IRREPS).map(|i| self.0[i] * t.dim(i)).sum()
    }

    /// Dimension of the `S_{6-n}`-invariants.
    pub fn young_invariants(&self, n: u32) -> i64 {
        let t = s6_table();
        (0..S6_IRREPS)
            .map(|i| self.0[i] * young_invariant_multiplicity(&t.partitions[i], n))
            .sum()
    }

    /// Character value on the class `nu`.
    pub fn character(&self, nu: &Partition) -> i64 {
        let t = s6_table();
        let j = t.position(nu);
        (0..S6_IRREPS).map(|i| self.0[i] * t.chi[i][j]).sum()
    }

    pub fn scale(&self, k: i64) -> Rep {
        Rep(self.0.map(|c| c * k))
    }
}

impl Add for Rep {
    type Output = Rep;
    fn add(self, o: Rep) -> Rep {
        let mut v = self.0;
        for (a, b) in v.iter_mut().zip(o.0) {
            *a += b;
        }
        Rep(v)
    }
}

impl AddAssign for Rep {
    fn add_assign(&mut self, o: Rep) {
        *self = *self + o;
    }
}

impl Sub for Rep {
    type Output = Rep;
    fn sub(self, o: Rep) -> Rep {
        self + (-o)
    }
}

impl Neg for Rep {
    type Output = Rep;
    fn neg(self) -> Rep {
        self.scale(-1)
    }
}

impl Mul<Rep> for i64 {
    type Output = Rep;
    fn mul(self, r: Rep) -> Rep {
        r.scale(self)
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = s6_table();
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "s{}", t.partitions[i])?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The six representation constants of the Eisenstein formulas.
pub mod constants {
    use super::Rep;

    /// `s[3,1^3] + s[2,1^4]`.
    pub fn a() -> Rep {
        Rep::s(&[3, 1, 1, 1]) + Rep::s(&[2, 1, 1, 1, 1])
    }

    /// `s[4,2] + s[3,2,1] + s[2^3]`.
    pub fn b() -> Rep {
        Rep::s(&[4, 2]) + Rep::s(&[3, 2, 1]) + Rep::s(&[2, 2, 2])
    }

    /// `s[6] + s[5,1] + s[4,2]`.
    pub fn c() -> Rep {
        Rep::s(&[6]) + Rep::s(&[5, 1]) + Rep::s(&[4, 2])
    }

    /// `s[4,1^2] + s[3^2]`.
    pub fn a_prime() -> Rep {
        Rep::s(&[4, 1, 1]) + Rep::s(&[3, 3])
    }

    /// `s[5,1] + s[4,2] + s[3,2,1]`.
    pub fn b_prime() -> Rep {
        Rep::s(&[5, 1]) + Rep::s(&[4, 2]) + Rep::s(&[3, 2, 1])
    }

    /// `s[6] + s[4,2] + s[2^3]`.
    pub fn c_prime() -> Rep {
        Rep::s(&[6]) + Rep::s(&[4, 2]) + Rep::s(&[2, 2, 2])
    }
}

/// Multiplicity of the trivial representation of `S_{6-n}` in `s[mu]`.
pub fn young_invariant_multiplicity(mu: &Partition, n: u32) -> i64 {
    assert!(n <= 6, "n = {n} exceeds 6");
    let mut total = BigRational::zero();
    for rho in partitions_of(6 - n) {
        let nu = rho.pad_ones(n as usize);
        total += BigRational::new(character(mu, &nu).into(), rho.z_order().into());
    }
    assert!(total.is_integer(), "non-integral invariant multiplicity");
    i64::try_from(total.to_integer()).expect("small multiplicity")
}

/// Weyl dimension of the `Sp(4)` representation of highest weight `(l, m)`.
pub fn sp4_dim(l: u32, m: u32) -> u64 {
    let (l, m) = (l as u64, m as u64);
    (l - m + 1) * (m + 1) * (l + 2) * (l + m + 3) / 6
}

/// Coefficients `beta_{n1,n2}` with `chi_{l,m} = sum beta p1^n1 p2^n2`.
pub type PowerSumCoeffs = BTreeMap<(u32, u32), BigRational>;

type BiPoly = BTreeMap<(u32, u32), BigRational>;

fn chebyshev_u(n: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn bipoly_add_term(p: &mut BiPoly, key: (u32, u32), c: BigRational) {
    if c.is_zero() {
        return;
    }
    let e = p.entry(key).or_insert_with(BigRational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&key);
    }
}

fn bipoly_mul(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = BiPoly::new();
    for (&(i, j), x) in a {
        for (&(k, l), y) in b {
            bipoly_add_term(&mut out, (i + k, j + l), x * y);
        }
    }
    out
}

fn bipoly_pow(a: &BiPoly, e: u32) -> BiPoly {
    let mut out = BiPoly::new();
    out.insert((0, 0), BigRational::one());
    for _ in 0..e {
        out = bipoly_mul(&out, a);
    }
    out
}

/// Divides a polynomial in `u, v` by `u - v`, assuming exactness.
fn divide_by_u_minus_v(num: &BiPoly) -> BiPoly {
    // Work degree by degree: a homogeneous part sum c_i u^i v^(d-i) divided by (u - v).
    let mut by_degree: BTreeMap<u32, BTreeMap<u32, BigRational>> = BTreeMap::new();
    for (&(i, j), c) in num {
        by_degree.entry(i + j).or_default().insert(i, c.clone());
    }
    let mut out = BiPoly::new();
    for (d, coeffs) in by_degree {
        // h(u,v) = (u - v) g(u,v), g = sum g_i u^i v^(d-1-i); coefficient of u^i v^(d-i) is g_{i-1} - g_i.
        let mut g_prev = BigRational::zero();
        for i in (1..=d).rev() {
            // from top: coefficient of u^d is g_{d-1}
            let c = coeffs.get(&i).cloned().unwrap_or_else(BigRational::zero);
            // c = g_{i-1} - g_i, with g_d = 0
            let g = c + &g_prev;
            bipoly_add_term(&mut out, (i - 1, d - i), g.clone());
            g_prev = g;
        }
        let c0 = coeffs.get(&0).cloned().unwrap_or_else(BigRational::zero);
        assert!((c0 + g_prev).is_zero(), "division by u - v is not exact");
    }
    out
}

/// Rewrites a symmetric polynomial in `u, v` in `e1 = u + v`, `e2 = uv`.
fn symmetric_to_elementary(mut p: BiPoly) -> BiPoly {
    let mut out = BiPoly::new();
    while let Some((&(a, b), c)) = p.iter().max_by_key(|(&(a, b), _)| (a + b, a)) {
        let c = c.clone();
        assert!(a >= b, "polynomial is not symmetric");
        bipoly_add_term(&mut out, (a - b, b), c.clone());
        // subtract c * e1^(a-b) * e2^b
        let mut e1 = BiPoly::new();
        e1.insert((1, 0), BigRational::one());
        e1.insert((0, 1), BigRational::one());
        let mut mono = bipoly_pow(&e1, a - b);
        mono = mono.into_iter().map(|((i, j), x)| ((i + b, j + b), x)).collect();
        for (k, x) in mono {
            bipoly_add_term(&mut p, k, -(x * &c));
        }
    }
    out
}

/// Power-sum expansion of the `Sp(4)` character of highest weight `(l, m)`.
pub fn sp4_power_sum_coeffs(l: u32, m: u32) -> Result<PowerSumCoeffs, SymfuncError> {
    if l < m {
        return Err(SymfuncError::NotDominant { l, m });
    }
    if (l + m) % 2 == 1 {
        return Err(SymfuncError::OddWeight(l + m));
    }
    let ua = chebyshev_u(l + 1);
    let ub = chebyshev_u(m);
    let mut num = BiPoly::new();
    for (i, x) in ua.iter().enumerate() {
        for (j, y) in ub.iter().enumerate() {
            let c = BigRational::from_integer(x * y);
            bipoly_add_term(&mut num, (i as u32, j as u32), c.clone());
            bipoly_add_term(&mut num, (j as u32, i as u32), -c);
        }
    }
    let chi_uv = divide_by_u_minus_v(&num);
    let chi_e = symmetric_to_elementary(chi_uv);
    // e1 -> p1, e2 -> (p1^2 - p2 - 4)/2, in variables (p1, p2)
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut e2 = BiPoly::new();
    e2.insert((2, 0), half.clone());
    e2.insert((0, 1), -half.clone());
    e2.insert((0, 0), BigRational::from_integer(BigInt::from(-2)));
    let mut out = BiPoly::new();
    for ((i, j), c) in chi_e {
        let mut term = bipoly_pow(&e2, j);
        term = term.into_iter().map(|((a, b), x)| ((a + i, b), x)).collect();
        for (k, x) in term {
            bipoly_add_term(&mut out, k, x * &c);
        }
    }
    Ok(out)
}

/// Cached expansion for repeated use.
pub fn sp4_coeffs_cached(l: u32, m: u32) -> Result<&'static PowerSumCoeffs, SymfuncError> {
    use std::collections::HashMap;
    use std::sync::Mutex;
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), &'static PowerSumCoeffs>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("cache lock").get(&(l, m)) {
        return Ok(c);
    }
    let coeffs: &'static PowerSumCoeffs = Box::leak(Box::new(sp4_power_sum_coeffs(l, m)?));
    cache.lock().expect("cache lock").insert((l, m), coeffs);
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn character_examples() {
        for nu in partitions_of(6) {
            assert_eq!(s6_character(&p(&[6]), &nu), 1);
            let sign = if (6 - nu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(s6_character(&p(&[1; 6]), &nu), sign);
        }
        assert_eq!(s6_character(&p(&[5, 1]), &p(&[1; 6])), 5);
        // standard rep: fixed points minus one
        assert_eq!(s6_character(&p(&[5, 1]), &p(&[2, 1, 1, 1, 1])), 3);
    }

    #[test]
    fn dimensions_in_order() {
        let t = s6_table();
        let dims: Vec<i64> = (0..S6_IRREPS).map(|i| t.dim(i)).collect();
        assert_eq!(dims, vec![1, 5, 9, 10, 5, 16, 10, 5, 9, 5, 1]);
    }

    #[test]
    fn rep_constant_dimensions() {
        use constants::*;
        assert_eq!(a().dim(), 15);
        assert_eq!(b().dim(), 30);
        assert_eq!(c().dim(), 15);
        assert_eq!(a_prime().dim(), 15);
        assert_eq!(b_prime().dim(), 30);
        assert_eq!(c_prime().dim(), 15);
    }

    #[test]
    fn young_multiplicities() {
        for n in 0..=6 {
            assert_eq!(young_invariant_multiplicity(&p(&[6]), n), 1);
        }
        // S_{6-n} contains a transposition only for n <= 4
        for n in 0..5 {
            assert_eq!(young_invariant_multiplicity(&p(&[1; 6]), n), 0);
        }
        assert_eq!(young_invariant_multiplicity(&p(&[1; 6]), 5), 1);
        assert_eq!(young_invariant_multiplicity(&p(&[5, 1]), 1), 1);
        assert_eq!(young_invariant_multiplicity(&p(&[4, 2]), 6), 9);
    }

    #[test]
    fn beta_examples() {
        let b = sp4_power_sum_coeffs(1, 1).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(b[&(2, 0)], r(1, 2));
        assert_eq!(b[&(0, 1)], r(-1, 2));
        assert_eq!(b[&(0, 0)], r(-1, 1));
        let b = sp4_power_sum_coeffs(2, 0).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[&(2, 0)], r(1, 2));
        assert_eq!(b[&(0, 1)], r(1, 2));
        let b = sp4_power_sum_coeffs(0, 0).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[&(0, 0)], r(1, 1));
        assert_eq!(sp4_power_sum_coeffs(1, 0), Err(SymfuncError::OddWeight(1)));
    }

    #[test]
    fn sp4_dims() {
        assert_eq!(sp4_dim(0, 0), 1);
        assert_eq!(sp4_dim(1, 1), 5);
        assert_eq!(sp4_dim(2, 0), 10);
        assert_eq!(sp4_dim(1, 0), 4);
    }

    #[test]
    fn rep_display() {
        assert_eq!(constants::a().to_string(), "s[3,1^3]+s[2,1^4]");
        assert_eq!(Rep::ZERO.to_string(), "0");
        assert_eq!((-constants::c()).to_string(), "-s[6]-s[5,1]-s[4,2]");
    }
}
