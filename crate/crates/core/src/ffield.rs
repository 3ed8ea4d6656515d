//! Small odd-characteristic finite fields in discrete-log representation.
//!
//! An element of `F_q` is stored as an index: `0` is zero and `e >= 1` stands
//! for `g^(e-1)` where `g` is the smallest primitive element of
//! `F_p[t]/(modulus)`. Multiplication is index addition modulo `q - 1`;
//! addition goes through the Zech table `1 + g^d = g^zech[d]`. Because every
//! field used by the census has at most `37^2` elements, dense `q x q`
//! addition and multiplication tables are derived from the log tables once at
//! construction.

use std::fmt;
use std::sync::Arc;

use crate::error::FieldError;
use crate::partition::Partition;

/// Largest field size constructible by default: the quadratic extension of `F_37`.
pub const DEFAULT_FIELD_CAP: u32 = 37 * 37;

/// An element of a [`FieldSpec`], as a discrete-log index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Builds an element from its raw index. The caller must keep it below `q`.
    pub const fn from_index(index: u16) -> Self {
        FieldElement(index)
    }

    pub const fn index(self) -> u16 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A fully tabulated finite field `F_{p^n}`.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    /// Monic irreducible defining polynomial over `F_p`, low degree first.
    modulus: Vec<u32>,
    /// Vector code (base-`p` digits of the polynomial-basis coordinates) of `g^i`.
    exp_table: Vec<u32>,
    /// Inverse of `exp_table` on nonzero codes; `log_table[0]` is unused.
    log_table: Vec<u32>,
    /// `zech[d]` is the element index of `1 + g^d`.
    zech: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    chi: Vec<i8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.modulus == other.modulus
            && self.exp_table == other.exp_table
    }
}

impl Eq for FieldSpec {}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Arithmetic on coefficient vectors over `F_p`, used only while building tables.
struct PrimePolys {
    p: u32,
}

impl PrimePolys {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(&self, a: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p as u64;
            }
            b = b * b % self.p as u64;
            e >>= 1;
        }
        r as u32
    }

    fn rem(&self, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = self.inv(m[dm]);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % self.p;
            if c != 0 {
                for (i, &mi) in m.iter().enumerate() {
                    let idx = top - dm + i;
                    r[idx] = (r[idx] + self.p - c * mi % self.p) % self.p;
                }
            }
            r.pop();
            r = Self::trim(r);
        }
        Self::trim(r)
    }

    fn mulmod(&self, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.rem(&Self::trim(prod), m)
    }

    fn decode(&self, mut code: u32, n: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(n as usize);
        for _ in 0..n {
            v.push(code % self.p);
            code /= self.p;
        }
        Self::trim(v)
    }

    fn encode(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Trial division by every monic polynomial of degree at most `deg/2`.
    fn is_irreducible(&self, f: &[u32]) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = self.p.pow(d as u32);
            for code in 0..count {
                let mut g = self.decode(code, d as u32);
                g.resize(d, 0);
                g.push(1);
                if self.rem(f, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the field `F_{p^n}` with the default size cap.
pub fn build_field(p: u32, n: u32) -> Result<FieldSpec, FieldError> {
    build_field_with_cap(p, n, DEFAULT_FIELD_CAP)
}

/// Builds `F_{p^n}`, refusing fields larger than `cap`.
pub fn build_field_with_cap(p: u32, n: u32, cap: u32) -> Result<FieldSpec, FieldError> {
    if p == 2 {
        return Err(FieldError::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if !(1..=4).contains(&n) {
        return Err(FieldError::UnsupportedDegree(n));
    }
    let q = (p as u64).pow(n);
    if q > cap as u64 {
        return Err(FieldError::CapExceeded { q, cap });
    }
    let q = q as u32;
    let arith = PrimePolys { p };

    let tail_count = p.pow(n);
    let modulus = (0..tail_count)
        .map(|code| {
            let mut f = arith.decode(code, n);
            f.resize(n as usize, 0);
            f.push(1);
            f
        })
        .find(|f| arith.is_irreducible(f))
        .expect("an irreducible polynomial of every degree exists");

    let order = q - 1;
    let factors = prime_factors(order);
    let pow_code = |base: u32, mut e: u32| -> u32 {
        let mut result = vec![1u32];
        let mut b = arith.decode(base, n);
        while e > 0 {
            if e & 1 == 1 {
                result = arith.mulmod(&result, &b, &modulus);
            }
            b = arith.mulmod(&b, &b, &modulus);
            e >>= 1;
        }
        arith.encode(&result)
    };
    let generator = (1..q)
        .find(|&g| factors.iter().all(|&r| pow_code(g, order / r) != 1))
        .expect("finite fields have primitive elements");

    let g_vec = arith.decode(generator, n);
    let mut exp_table = Vec::with_capacity(order as usize);
    let mut log_table = vec![0u32; q as usize];
    let mut cur = vec![1u32];
    for i in 0..order {
        let code = arith.encode(&cur);
        exp_table.push(code);
        log_table[code as usize] = i;
        cur = arith.mulmod(&cur, &g_vec, &modulus);
    }

    // Index of a vector code.
    let to_index = |code: u32| -> u16 {
        if code == 0 {
            0
        } else {
            (log_table[code as usize] + 1) as u16
        }
    };
    let add_codes = |a: u32, b: u32| -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..n {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    };

    let one_code = exp_table[0];
    let zech: Vec<u16> = exp_table
        .iter()
        .map(|&c| to_index(add_codes(one_code, c)))
        .collect();

    let qs = q as usize;
    let mut add = vec![0u16; qs * qs];
    let mut mul = vec![0u16; qs * qs];
    for a in 0..qs {
        for b in 0..qs {
            let (m, s) = if a == 0 || b == 0 {
                (0u16, if a == 0 { b as u16 } else { a as u16 })
            } else {
                let la = (a - 1) as u32;
                let lb = (b - 1) as u32;
                let m = ((la + lb) % order + 1) as u16;
                // g^la + g^lb = g^la (1 + g^(lb - la))
                let d = (lb + order - la) % order;
                let z = zech[d as usize];
                let s = if z == 0 {
                    0
                } else {
                    ((la + (z as u32 - 1)) % order + 1) as u16
                };
                (m, s)
            };
            mul[a * qs + b] = m;
            add[a * qs + b] = s;
        }
    }
    let neg: Vec<u16> = (0..qs)
        .map(|a| {
            (0..qs)
                .find(|&b| add[a * qs + b] == 0)
                .expect("additive inverse") as u16
        })
        .collect();
    let inv: Vec<u16> = (0..qs)
        .map(|a| {
            if a == 0 {
                0
            } else {
                (((order - (a as u32 - 1)) % order) + 1) as u16
            }
        })
        .collect();
    let chi: Vec<i8> = (0..qs)
        .map(|a| match a {
            0 => 0,
            _ if (a - 1) % 2 == 0 => 1,
            _ => -1,
        })
        .collect();

    Ok(FieldSpec {
        p,
        n,
        q,
        modulus,
        exp_table,
        log_table,
        zech,
        add,
        mul,
        neg,
        inv,
        chi,
    })
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Every element, in index order (zero first).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u16).map(FieldElement)
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, value: i64) -> FieldElement {
        let r = value.rem_euclid(self.p as i64) as u32;
        self.from_code(r)
    }

    /// Element with the given polynomial-basis code (base-`p` digits, low first).
    pub fn from_code(&self, code: u32) -> FieldElement {
        if code == 0 {
            FieldElement::ZERO
        } else {
            FieldElement((self.log_table[code as usize] + 1) as u16)
        }
    }

    /// Polynomial-basis code of an element.
    pub fn code(&self, x: FieldElement) -> u32 {
        if x.is_zero() {
            0
        } else {
            self.exp_table[x.0 as usize - 1]
        }
    }

    /// `g^e` for the fixed generator `g`.
    pub fn generator_power(&self, e: u64) -> FieldElement {
        FieldElement((e % (self.q as u64 - 1)) as u16 + 1)
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, x: FieldElement) -> Option<u32> {
        (!x.is_zero()).then(|| x.0 as u32 - 1)
    }

    /// Index of `1 + g^d` (the Zech logarithm table, offset by one).
    pub fn zech(&self, d: u32) -> FieldElement {
        FieldElement(self.zech[(d % (self.q - 1)) as usize])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| FieldElement(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        self.generator_power((a.0 as u64 - 1) * e)
    }

    /// Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise.
    #[inline]
    pub fn quadratic_character(&self, x: FieldElement) -> i8 {
        self.chi[x.0 as usize]
    }

    /// Raw table access for hot loops: addition row of `a`.
    #[inline]
    pub fn add_row(&self, a: FieldElement) -> &[u16] {
        let q = self.q as usize;
        &self.add[a.0 as usize * q..(a.0 as usize + 1) * q]
    }

    /// Raw character table indexed by element index.
    pub fn chi_table(&self) -> &[i8] {
        &self.chi
    }
}

/// Free-function form of [`FieldSpec::quadratic_character`].
pub fn quadratic_character(field: &FieldSpec, x: FieldElement) -> i8 {
    field.quadratic_character(x)
}

/// A field together with its quadratic extension and the embedding between them.
#[derive(Debug, Clone)]
pub struct QuadraticExtension {
    pub base: Arc<FieldSpec>,
    pub ext: Arc<FieldSpec>,
    embed: Vec<FieldElement>,
}

impl QuadraticExtension {
    /// Builds `F_{p^{2n}}` over `base = F_{p^n}` and an explicit embedding.
    pub fn new(base: Arc<FieldSpec>) -> Result<Self, FieldError> {
        Self::with_cap(base, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(base: Arc<FieldSpec>, cap: u32) -> Result<Self, FieldError> {
        let ext = Arc::new(build_field_with_cap(base.p, 2 * base.n, cap)?);
        // A root r of the base modulus inside the extension; t^i -> r^i.
        let modulus: Vec<FieldElement> = base.modulus.iter().map(|&c| ext.from_int(c as i64)).collect();
        let root = ext
            .elements()
            .find(|&r| poly_eval(&ext, &modulus, r).is_zero())
            .expect("the base modulus splits in the extension");
        let mut root_powers = vec![FieldElement::ONE];
        for i in 1..base.n as usize {
            root_powers.push(ext.mul(root_powers[i - 1], root));
        }
        let embed = base
            .elements()
            .map(|x| {
                let mut code = base.code(x);
                let mut acc = FieldElement::ZERO;
                for rp in &root_powers {
                    let digit = ext.from_int((code % base.p) as i64);
                    acc = ext.add(acc, ext.mul(digit, *rp));
                    code /= base.p;
                }
                acc
            })
            .collect();
        Ok(QuadraticExtension { base, ext, embed })
    }

    #[inline]
    pub fn embed(&self, x: FieldElement) -> FieldElement {
        self.embed[x.0 as usize]
    }

    /// One representative of each orbit `{x, x^q}` with `x` not in the base field.
    pub fn conjugate_pair_representatives(&self) -> Vec<FieldElement> {
        let q = self.base.q as u64;
        let in_base: std::collections::HashSet<FieldElement> = self.embed.iter().copied().collect();
        self.ext
            .elements()
            .filter(|x| !in_base.contains(x))
            .filter(|&x| {
                let conj = self.ext.pow(x, q);
                x.index() < conj.index()
            })
            .collect()
    }
}

/// Polynomials are coefficient vectors, lowest degree first, with no trailing zeros.
pub type Poly = Vec<FieldElement>;

pub fn poly_trim(f: &mut Poly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn poly_degree(f: &[FieldElement]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

#[inline]
pub fn poly_eval(field: &FieldSpec, f: &[FieldElement], x: FieldElement) -> FieldElement {
    f.iter()
        .rev()
        .fold(FieldElement::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn poly_derivative(field: &FieldSpec, f: &[FieldElement]) -> Poly {
    let mut d: Poly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
        .collect();
    poly_trim(&mut d);
    d
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn poly_rem(field: &FieldSpec, a: &[FieldElement], m: &[FieldElement]) -> Poly {
    let dm = poly_degree(m).expect("division by the zero polynomial");
    let lead_inv = field.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r: Poly = a.to_vec();
    poly_trim(&mut r);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = field.mul(r[top], lead_inv);
        for i in 0..dm {
            let idx = top - dm + i;
            r[idx] = field.sub(r[idx], field.mul(c, m[i]));
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

pub fn poly_gcd(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let mut a: Poly = a.to_vec();
    let mut b: Poly = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(field, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = field.inv(lead).expect("nonzero");
        for c in a.iter_mut() {
            *c = field.mul(*c, li);
        }
    }
    a
}

pub fn poly_sub(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let len = a.len().max(b.len());
    let mut out: Poly = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            field.sub(x, y)
        })
        .collect();
    poly_trim(&mut out);
    out
}

pub fn poly_mulmod(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement], m: &[FieldElement]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = field.add(prod[i + j], field.mul(x, y));
        }
    }
    poly_rem(field, &prod, m)
}

pub fn poly_powmod(field: &FieldSpec, base: &[FieldElement], mut e: u64, m: &[FieldElement]) -> Poly {
    let mut result = poly_rem(field, &[FieldElement::ONE], m);
    let mut b = poly_rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(field, &result, &b, m);
        }
        b = poly_mulmod(field, &b, &b, m);
        e >>= 1;
    }
    result
}

/// True iff `gcd(f, f')` is constant. Requires `deg f >= 1`.
pub fn is_squarefree(field: &FieldSpec, f: &[FieldElement]) -> bool {
    let d = poly_derivative(field, f);
    if d.is_empty() {
        return false;
    }
    poly_degree(&poly_gcd(field, f, &d)) == Some(0)
}

/// Degrees of the irreducible factors of a squarefree `f`, by distinct-degree
/// factorization `gcd(f, x^{q^i} - x)`.
pub fn factor_degree_partition(field: &FieldSpec, f: &[FieldElement]) -> Partition {
    let mut rest: Poly = f.to_vec();
    poly_trim(&mut rest);
    let lead_inv = field.inv(*rest.last().expect("nonzero polynomial")).expect("nonzero");
    for c in rest.iter_mut() {
        *c = field.mul(*c, lead_inv);
    }
    let x: Poly = vec![FieldElement::ZERO, FieldElement::ONE];
    let mut parts = Vec::new();
    let mut frob = x.clone();
    let mut i = 1usize;
    while poly_degree(&rest).unwrap_or(0) > 0 {
        if 2 * i > poly_degree(&rest).unwrap() {
            parts.push(poly_degree(&rest).unwrap() as u8);
            break;
        }
        frob = poly_powmod(field, &frob, field.q() as u64, &rest);
        let g = poly_gcd(field, &rest, &poly_sub(field, &frob, &x));
        let dg = poly_degree(&g).unwrap_or(0);
        if dg > 0 {
            for _ in 0..dg / i {
                parts.push(i as u8);
            }
            rest = poly_div_exact(field, &rest, &g);
            frob = poly_rem(field, &frob, &rest);
        }
        i += 1;
    }
    Partition::new(parts)
}

/// Quotient of an exact division by a monic divisor.
fn poly_div_exact(field: &FieldSpec, a: &[FieldElement], m: &[FieldElement]) -> Poly {
    let dm = poly_degree(m).expect("nonzero divisor");
    let mut r: Poly = a.to_vec();
    poly_trim(&mut r);
    if r.len() <= dm {
        return vec![FieldElement::ONE];
    }
    let mut quot = vec![FieldElement::ZERO; r.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top];
        quot[top - dm] = c;
        for i in 0..dm {
            let idx = top - dm + i;
            r[idx] = field.sub(r[idx], field.mul(c, m[i]));
        }
        r.pop();
        poly_trim(&mut r);
    }
    debug_assert!(r.is_empty(), "division was not exact");
    quot
}
