//! Exhaustive enumeration of hyperelliptic models over a finite field.
//!
//! The genus-2 stratum runs over monic squarefree `f` of degree 5 and 6, the
//! genus-1 stratum over monic squarefree cubics. Each curve contributes its
//! Weierstrass-orbit partition `nu` together with `a1 = Tr(F | H^1)` and
//! `a2 = Tr(F^2 | H^1)`. The hot loop only records a histogram of
//! `(nu, a1, a2)`; the power sums `sum a1^n1 a2^n2` are expanded from it.
//!
//! Non-monic equations are accounted for analytically. Scaling `f` by a
//! nonsquare gives the quadratic twist, which flips `a1` and fixes `a2` and
//! `nu`, so the sum over all leading coefficients is `(q - 1)` times the
//! monic sum for even `n1` and zero for odd `n1`. Stored entries are these
//! full sums.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CensusError;
use crate::ffield::{
    factor_degree_partition, poly_derivative, poly_eval, poly_gcd, poly_rem, poly_trim, FieldElement, FieldSpec,
    Poly, QuadraticExtension,
};
use crate::partition::{partitions_of, Partition};

/// Largest base field censused without the long-run switch.
pub const DESK_CENSUS_CAP: u32 = 13;
/// Largest base field censused at all.
pub const LONG_RUN_CENSUS_CAP: u32 = 37;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stratum {
    Genus2,
    Genus1Base,
    Genus1Ext,
}

impl Stratum {
    pub fn as_str(self) -> &'static str {
        match self {
            Stratum::Genus2 => "genus2",
            Stratum::Genus1Base => "genus1-base",
            Stratum::Genus1Ext => "genus1-ext",
        }
    }
}

/// Normalization of the conjugate-pair term in the product stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ConjugateNormalization {
    /// `a1(E/k2)^n2`, as the formula is written.
    #[default]
    Literal,
    /// `(2 a1(E/k2))^n2`, the trace of `F^2` on `H^1(E x E^sigma)`.
    Doubled,
}

impl ConjugateNormalization {
    pub fn as_str(self) -> &'static str {
        match self {
            ConjugateNormalization::Literal => "literal",
            ConjugateNormalization::Doubled => "doubled",
        }
    }
}

/// Frobenius data of one curve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveStats {
    pub a1: i64,
    pub a2: i64,
    pub nu: Partition,
}

/// Variant flags recorded in every tally. They describe how the enumeration
/// was carried out; tallies built differently must not be mixed.
pub fn enumeration_flags() -> BTreeMap<String, String> {
    let mut flags = BTreeMap::new();
    flags.insert("enumeration".to_string(), "monic".to_string());
    flags.insert("twist".to_string(), "analytic".to_string());
    flags.insert("infinity".to_string(), "smooth-model".to_string());
    flags
}

/// Exact power-sum accumulators for one stratum over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTally {
    pub p: u32,
    pub n: u32,
    pub stratum: Stratum,
    pub weight_cap: u32,
    pub variant_flags: BTreeMap<String, String>,
    /// Number of monic curves with given `(nu, a1, a2)`.
    histogram: BTreeMap<(Partition, i64, i64), u64>,
    /// Full sums over all leading coefficients, keyed by `(nu, n1, n2)`.
    entries: BTreeMap<(Partition, u32, u32), BigInt>,
}

impl CensusTally {
    fn from_histogram(
        field_p: u32,
        field_n: u32,
        stratum: Stratum,
        weight_cap: u32,
        histogram: BTreeMap<(Partition, i64, i64), u64>,
    ) -> Self {
        let mut t = CensusTally {
            p: field_p,
            n: field_n,
            stratum,
            weight_cap,
            variant_flags: enumeration_flags(),
            histogram,
            entries: BTreeMap::new(),
        };
        t.entries = t.expand_entries();
        t
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    /// Size of the partitions classifying this stratum.
    pub fn nu_size(&self) -> u32 {
        match self.stratum {
            Stratum::Genus2 => 6,
            _ => 3,
        }
    }

    fn expand_entries(&self) -> BTreeMap<(Partition, u32, u32), BigInt> {
        let twist = BigInt::from(self.q() - 1);
        let w = self.weight_cap;
        let mut entries = BTreeMap::new();
        for nu in partitions_of(self.nu_size()) {
            for n2 in 0..=w / 2 {
                for n1 in 0..=(w - 2 * n2) {
                    entries.insert((nu.clone(), n1, n2), BigInt::zero());
                }
            }
        }
        for ((nu, a1, a2), &count) in &self.histogram {
            let count = BigInt::from(count) * &twist;
            let a1 = BigInt::from(*a1);
            let a2 = BigInt::from(*a2);
            let mut a2pow = count;
            for n2 in 0..=w / 2 {
                let mut term = a2pow.clone();
                for n1 in 0..=(w - 2 * n2) {
                    if n1 % 2 == 0 {
                        *entries.get_mut(&(nu.clone(), n1, n2)).expect("entry") += &term;
                    }
                    term *= &a1;
                }
                a2pow *= &a2;
            }
        }
        entries
    }

    /// Full raw sum `sum_f a1^n1 a2^n2` over all equations of pattern `nu`.
    pub fn raw(&self, nu: &Partition, n1: u32, n2: u32) -> Result<&BigInt, CensusError> {
        self.entries
            .get(&(nu.clone(), n1, n2))
            .ok_or_else(|| CensusError::MissingEntry { nu: nu.to_string(), n1, n2 })
    }

    pub fn entries(&self) -> &BTreeMap<(Partition, u32, u32), BigInt> {
        &self.entries
    }

    pub fn histogram(&self) -> &BTreeMap<(Partition, i64, i64), u64> {
        &self.histogram
    }

    /// Number of monic curves of pattern `nu`.
    pub fn monic_count(&self, nu: &Partition) -> u64 {
        self.histogram
            .iter()
            .filter(|((p, _, _), _)| p == nu)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn total_monic(&self) -> u64 {
        self.histogram.values().sum()
    }

    /// Entrywise sum with a tally of a disjoint shard.
    pub fn merge(&mut self, other: &CensusTally) -> Result<(), CensusError> {
        if (self.p, self.n, self.stratum, self.weight_cap) != (other.p, other.n, other.stratum, other.weight_cap) {
            return Err(CensusError::MergeMismatch(format!(
                "({},{},{},{}) vs ({},{},{},{})",
                self.p,
                self.n,
                self.stratum.as_str(),
                self.weight_cap,
                other.p,
                other.n,
                other.stratum.as_str(),
                other.weight_cap
            )));
        }
        if self.variant_flags != other.variant_flags {
            return Err(CensusError::VariantMismatch {
                expected: format!("{:?}", self.variant_flags),
                found: format!("{:?}", other.variant_flags),
            });
        }
        for (k, v) in &other.histogram {
            *self.histogram.entry(k.clone()).or_insert(0) += v;
        }
        for (k, v) in &other.entries {
            *self.entries.entry(k.clone()).or_insert_with(BigInt::zero) += v;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = TallyFile {
            p: self.p,
            n: self.n,
            stratum: self.stratum,
            weight_cap: self.weight_cap,
            variant_flags: self.variant_flags.clone(),
            tool_version: TOOL_VERSION.to_string(),
            entries: self
                .entries
                .iter()
                .map(|((nu, n1, n2), raw)| EntryRecord {
                    nu: nu.parts().to_vec(),
                    n1: *n1,
                    n2: *n2,
                    raw: raw.to_string(),
                })
                .collect(),
            histogram: self
                .histogram
                .iter()
                .map(|((nu, a1, a2), c)| HistogramRecord {
                    nu: nu.parts().to_vec(),
                    a1: a1.to_string(),
                    a2: a2.to_string(),
                    count: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("tally serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CensusError> {
        let corrupt = |e: &dyn std::fmt::Display| CensusError::CorruptFile(e.to_string());
        let file: TallyFile = serde_json::from_str(text).map_err(|e| corrupt(&e))?;
        let mut histogram = BTreeMap::new();
        for h in file.histogram {
            let a1: i64 = h.a1.parse().map_err(|e| corrupt(&e))?;
            let a2: i64 = h.a2.parse().map_err(|e| corrupt(&e))?;
            let c: u64 = h.count.parse().map_err(|e| corrupt(&e))?;
            histogram.insert((Partition::new(h.nu), a1, a2), c);
        }
        let mut entries = BTreeMap::new();
        for e in file.entries {
            let raw: BigInt = e.raw.parse().map_err(|e| corrupt(&e))?;
            entries.insert((Partition::new(e.nu), e.n1, e.n2), raw);
        }
        let t = CensusTally {
            p: file.p,
            n: file.n,
            stratum: file.stratum,
            weight_cap: file.weight_cap,
            variant_flags: file.variant_flags,
            histogram,
            entries,
        };
        if t.entries != t.expand_entries() {
            return Err(CensusError::CorruptFile("entries disagree with histogram".to_string()));
        }
        Ok(t)
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    nu: Vec<u8>,
    n1: u32,
    n2: u32,
    raw: String,
}

#[derive(Serialize, Deserialize)]
struct HistogramRecord {
    nu: Vec<u8>,
    a1: String,
    a2: String,
    count: String,
}

#[derive(Serialize, Deserialize)]
struct TallyFile {
    p: u32,
    n: u32,
    stratum: Stratum,
    weight_cap: u32,
    variant_flags: BTreeMap<String, String>,
    tool_version: String,
    entries: Vec<EntryRecord>,
    histogram: Vec<HistogramRecord>,
}

pub fn save_tally(tally: &CensusTally, path: &Path) -> Result<(), CensusError> {
    std::fs::write(path, tally.to_json())?;
    Ok(())
}

pub fn load_tally(path: &Path) -> Result<CensusTally, CensusError> {
    CensusTally::from_json(&std::fs::read_to_string(path)?)
}

/// Loads a tally and checks that it has the expected stratum and enumeration flags.
pub fn load_tally_expecting(path: &Path, stratum: Stratum) -> Result<CensusTally, CensusError> {
    let t = load_tally(path)?;
    if t.stratum != stratum {
        return Err(CensusError::StratumMismatch {
            expected: stratum.as_str().to_string(),
            found: t.stratum.as_str().to_string(),
        });
    }
    let flags = enumeration_flags();
    if t.variant_flags != flags {
        return Err(CensusError::VariantMismatch {
            expected: format!("{flags:?}"),
            found: format!("{:?}", t.variant_flags),
        });
    }
    Ok(t)
}

/// `#C(F)` for the smooth model of `y^2 = f(x)`, with `deg f` in {3, 5, 6}.
pub fn count_curve_points(field: &FieldSpec, f: &[FieldElement], model_degree: usize) -> Result<u64, CensusError> {
    let mut f: Poly = f.to_vec();
    poly_trim(&mut f);
    if f.len() != model_degree + 1 || ![3, 5, 6].contains(&model_degree) {
        return Err(CensusError::BadModelDegree(model_degree));
    }
    if !crate::ffield::is_squarefree(field, &f) {
        return Err(CensusError::NotSquarefree);
    }
    let affine: i64 = field
        .elements()
        .map(|x| 1 + field.quadratic_character(poly_eval(field, &f, x)) as i64)
        .sum();
    let infinity = if model_degree == 6 {
        1 + field.quadratic_character(f[6]) as i64
    } else {
        1
    };
    Ok((affine + infinity) as u64)
}

/// Frobenius data of `y^2 = f(x)` over the base of `ext`, by direct counting.
pub fn curve_stats(ext: &QuadraticExtension, f: &[FieldElement]) -> Result<CurveStats, CensusError> {
    let base = &ext.base;
    let mut f: Poly = f.to_vec();
    poly_trim(&mut f);
    let d = f.len().saturating_sub(1);
    let q = base.q() as i64;
    let n1 = count_curve_points(base, &f, d)? as i64;
    let a1 = q + 1 - n1;
    let mut nu = factor_degree_partition(base, &f);
    if d == 5 {
        nu = nu.pad_ones(1);
    }
    let a2 = if d == 3 {
        a1 * a1 - 2 * q
    } else {
        let f2: Poly = f.iter().map(|&c| ext.embed(c)).collect();
        let n2 = count_curve_points(&ext.ext, &f2, d)? as i64;
        q * q + 1 - n2
    };
    Ok(CurveStats { a1, a2, nu })
}

type Histogram = HashMap<(u8, i64, i64), u64>;

fn merge_hist(mut a: Histogram, b: Histogram) -> Histogram {
    if a.len() < b.len() {
        return merge_hist(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn finish_hist(hist: Histogram, nus: &[Partition]) -> BTreeMap<(Partition, i64, i64), u64> {
    hist.into_iter()
        .map(|((i, a1, a2), c)| ((nus[i as usize].clone(), a1, a2), c))
        .collect()
}

/// Whether `f = g + c` is squarefree, given `fp = g'` and `r = g mod g'`.
#[inline]
fn squarefree_shifted(field: &FieldSpec, fp: &[FieldElement], r: &[FieldElement], c: FieldElement) -> bool {
    // gcd(f, f') = gcd(f', (g mod f') + c)
    let mut rc: Poly = r.to_vec();
    if rc.is_empty() {
        rc.push(c);
    } else {
        rc[0] = field.add(rc[0], c);
    }
    poly_trim(&mut rc);
    poly_gcd(field, fp, &rc).len() == 1
}

fn decode_prefix(field: &FieldSpec, mut index: u64, len: usize) -> Vec<FieldElement> {
    let q = field.q() as u64;
    (0..len)
        .map(|_| {
            let e = FieldElement::from_index((index % q) as u16);
            index /= q;
            e
        })
        .collect()
}

/// Size of the genus-2 prefix space: `q^4` quintic prefixes followed by `q^5` sextic ones.
pub fn genus2_prefix_count(q: u32) -> u64 {
    let q = q as u64;
    q.pow(4) + q.pow(5)
}

/// Size of the cubic prefix space.
pub fn genus1_prefix_count(q: u32) -> u64 {
    (q as u64).pow(2)
}

struct Genus2Tables {
    q: usize,
    q2: usize,
    /// `chi(v + c)` at `[c * q + v]`.
    shift: Vec<i8>,
    /// `chi_2(v + embed(c))` at `[c * q2 + v]`.
    shift2: Vec<i8>,
    reps: Vec<FieldElement>,
    nus: Vec<Partition>,
    nu_index: HashMap<Partition, u8>,
}

impl Genus2Tables {
    fn new(ext: &QuadraticExtension) -> Self {
        let base = &ext.base;
        let big = &ext.ext;
        let q = base.q() as usize;
        let q2 = big.q() as usize;
        let mut shift = vec![0i8; q * q];
        let mut shift2 = vec![0i8; q * q2];
        for c in base.elements() {
            for v in base.elements() {
                shift[c.index() as usize * q + v.index() as usize] = base.quadratic_character(base.add(v, c));
            }
            let ce = ext.embed(c);
            for v in big.elements() {
                shift2[c.index() as usize * q2 + v.index() as usize] = big.quadratic_character(big.add(v, ce));
            }
        }
        let nus = partitions_of(6);
        let nu_index = nus.iter().enumerate().map(|(i, p)| (p.clone(), i as u8)).collect();
        Genus2Tables {
            q,
            q2,
            shift,
            shift2,
            reps: ext.conjugate_pair_representatives(),
            nus,
            nu_index,
        }
    }
}

fn genus2_prefix(ext: &QuadraticExtension, t: &Genus2Tables, global: u64, hist: &mut Histogram) {
    let base = &ext.base;
    let big = &ext.ext;
    let q = t.q;
    let quintics = (q as u64).pow(4);
    let (d, index) = if global < quintics {
        (5usize, global)
    } else {
        (6usize, global - quintics)
    };
    let mut g: Poly = vec![FieldElement::ZERO];
    g.extend(decode_prefix(base, index, d - 1));
    g.push(FieldElement::ONE);
    let fp = poly_derivative(base, &g);
    if fp.is_empty() {
        return;
    }
    let r = poly_rem(base, &g, &fp);
    let gx: Vec<usize> = base.elements().map(|x| poly_eval(base, &g, x).index() as usize).collect();
    let g2: Poly = g.iter().map(|&c| ext.embed(c)).collect();
    let gh: Vec<usize> = t.reps.iter().map(|&x| poly_eval(big, &g2, x).index() as usize).collect();
    let inf: i64 = if d == 6 { 2 } else { 1 };
    let qi = q as i64;
    for c in base.elements() {
        let ci = c.index() as usize;
        let row = &t.shift[ci * q..(ci + 1) * q];
        let mut s1 = 0i64;
        let mut n1 = 0i64;
        for &v in &gx {
            let s = row[v];
            s1 += s as i64;
            n1 += (s == 0) as i64;
        }
        let row2 = &t.shift2[ci * t.q2..(ci + 1) * t.q2];
        let mut sh = 0i64;
        let mut nh = 0i64;
        for &v in &gh {
            let s = row2[v];
            sh += s as i64;
            nh += (s == 0) as i64;
        }
        if !squarefree_shifted(base, &fp, &r, c) {
            continue;
        }
        let rest = d as i64 - n1 - 2 * nh;
        let mut parts: Vec<u8> = Vec::with_capacity(7);
        parts.extend(std::iter::repeat_n(1u8, n1 as usize));
        parts.extend(std::iter::repeat_n(2u8, nh as usize));
        match rest {
            0 => {}
            3..=5 => parts.push(rest as u8),
            6 => {
                let mut f = g.clone();
                f[0] = c;
                let ddf = factor_degree_partition(base, &f);
                parts.extend_from_slice(ddf.parts());
            }
            _ => unreachable!("a squarefree polynomial has no leftover of degree {rest}"),
        }
        if d == 5 {
            parts.push(1);
        }
        let nu = Partition::new(parts);
        let a1 = 1 - s1 - inf;
        let a2 = 1 - qi + n1 - 2 * sh - inf;
        *hist.entry((t.nu_index[&nu], a1, a2)).or_insert(0) += 1;
    }
}

fn check_cap(q: u32, cap: u32) -> Result<(), CensusError> {
    if q > cap {
        Err(CensusError::CapExceeded { q, cap })
    } else {
        Ok(())
    }
}

/// Genus-2 census of `field` with the desk-scale cap.
pub fn census_genus2(field: &FieldSpec, weight_cap: u32) -> Result<CensusTally, CensusError> {
    census_genus2_with_cap(field, weight_cap, DESK_CENSUS_CAP)
}

pub fn census_genus2_with_cap(field: &FieldSpec, weight_cap: u32, cap: u32) -> Result<CensusTally, CensusError> {
    census_genus2_shard(field, weight_cap, cap, 0, 1)
}

/// One of `shards` disjoint slices of the genus-2 enumeration.
pub fn census_genus2_shard(
    field: &FieldSpec,
    weight_cap: u32,
    cap: u32,
    shard: u64,
    shards: u64,
) -> Result<CensusTally, CensusError> {
    check_cap(field.q(), cap)?;
    let ext = QuadraticExtension::new(Arc::new(field.clone()))?;
    let tables = Genus2Tables::new(&ext);
    let total = genus2_prefix_count(field.q());
    let (lo, hi) = shard_range(total, shard, shards);
    let hist = (lo..hi)
        .into_par_iter()
        .fold(Histogram::new, |mut h, i| {
            genus2_prefix(&ext, &tables, i, &mut h);
            h
        })
        .reduce(Histogram::new, merge_hist);
    Ok(CensusTally::from_histogram(
        field.p(),
        field.n(),
        Stratum::Genus2,
        weight_cap,
        finish_hist(hist, &tables.nus),
    ))
}

/// Half-open index range of shard `shard` out of `shards`.
pub fn shard_range(total: u64, shard: u64, shards: u64) -> (u64, u64) {
    assert!(shards > 0 && shard < shards, "shard {shard} out of {shards}");
    let lo = (total as u128 * shard as u128 / shards as u128) as u64;
    let hi = (total as u128 * (shard + 1) as u128 / shards as u128) as u64;
    (lo, hi)
}

/// Genus-1 census of cubics over `field` (the base field or its quadratic extension).
pub fn census_genus1(field: &FieldSpec, weight_cap: u32, stratum: Stratum) -> Result<CensusTally, CensusError> {
    census_genus1_with_cap(field, weight_cap, stratum, DESK_CENSUS_CAP)
}

pub fn census_genus1_with_cap(
    field: &FieldSpec,
    weight_cap: u32,
    stratum: Stratum,
    cap: u32,
) -> Result<CensusTally, CensusError> {
    census_genus1_shard(field, weight_cap, stratum, cap, 0, 1)
}

/// The cap bounds the base field; the extension stratum may reach its square.
pub fn census_genus1_shard(
    field: &FieldSpec,
    weight_cap: u32,
    stratum: Stratum,
    cap: u32,
    shard: u64,
    shards: u64,
) -> Result<CensusTally, CensusError> {
    match stratum {
        Stratum::Genus1Base => check_cap(field.q(), cap)?,
        Stratum::Genus1Ext => check_cap(field.q(), cap * cap)?,
        Stratum::Genus2 => {
            return Err(CensusError::StratumMismatch {
                expected: "genus1-base or genus1-ext".to_string(),
                found: "genus2".to_string(),
            })
        }
    }
    let q = field.q() as usize;
    let mut shift = vec![0i8; q * q];
    for c in field.elements() {
        for v in field.elements() {
            shift[c.index() as usize * q + v.index() as usize] = field.quadratic_character(field.add(v, c));
        }
    }
    let nus = partitions_of(3);
    let idx = |roots: i64| -> u8 {
        match roots {
            0 => 0, // [3]
            1 => 1, // [2,1]
            3 => 2, // [1^3]
            _ => unreachable!("squarefree cubic with {roots} roots"),
        }
    };
    let qi = q as i64;
    let (lo, hi) = shard_range(genus1_prefix_count(field.q()), shard, shards);
    let hist = (lo..hi)
        .into_par_iter()
        .fold(Histogram::new, |mut h, i| {
            let mut g: Poly = vec![FieldElement::ZERO];
            g.extend(decode_prefix(field, i, 2));
            g.push(FieldElement::ONE);
            let fp = poly_derivative(field, &g);
            if fp.is_empty() {
                // x^3 + c is a cube in characteristic 3
                return h;
            }
            let r = poly_rem(field, &g, &fp);
            let gx: Vec<usize> = field.elements().map(|x| poly_eval(field, &g, x).index() as usize).collect();
            for c in field.elements() {
                let ci = c.index() as usize;
                let row = &shift[ci * q..(ci + 1) * q];
                let mut s = 0i64;
                let mut roots = 0i64;
                for &v in &gx {
                    let x = row[v];
                    s += x as i64;
                    roots += (x == 0) as i64;
                }
                if !squarefree_shifted(field, &fp, &r, c) {
                    continue;
                }
                let a1 = -s;
                let a2 = a1 * a1 - 2 * qi;
                *h.entry((idx(roots), a1, a2)).or_insert(0) += 1;
            }
            h
        })
        .reduce(Histogram::new, merge_hist);
    Ok(CensusTally::from_histogram(
        field.p(),
        field.n(),
        stratum,
        weight_cap,
        finish_hist(hist, &nus),
    ))
}

/// `|GL_2(F_q)|`.
pub fn gl2_order(q: u64) -> BigInt {
    BigInt::from((q * q - 1) * (q * q - q))
}

/// Normalizer of the genus-1 masses: `q (q - 1)^2`.
pub fn elliptic_normalizer(q: u64) -> BigInt {
    BigInt::from(q * (q - 1) * (q - 1))
}

fn require(tally: &CensusTally, stratum: Stratum) -> Result<(), CensusError> {
    if tally.stratum != stratum {
        return Err(CensusError::StratumMismatch {
            expected: stratum.as_str().to_string(),
            found: tally.stratum.as_str().to_string(),
        });
    }
    Ok(())
}

/// Genus-2 mass `a(M2, nu, n1, n2)`.
pub fn a_m2(tally: &CensusTally, nu: &Partition, n1: u32, n2: u32) -> Result<BigRational, CensusError> {
    require(tally, Stratum::Genus2)?;
    let raw = tally.raw(nu, n1, n2)?.clone();
    Ok(BigRational::new(raw, gl2_order(tally.q())))
}

/// Normalized elliptic mass `b(rho, m1, m2)`.
pub fn elliptic_mass(tally: &CensusTally, rho: &Partition, m1: u32, m2: u32) -> Result<BigRational, CensusError> {
    let raw = tally.raw(rho, m1, m2)?.clone();
    Ok(BigRational::new(raw, elliptic_normalizer(tally.q())))
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Options for the product-stratum mass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ProductOptions {
    pub kappa: ConjugateNormalization,
    /// Drop the binomial factors when distributing exponents over the two factors.
    pub without_binomials: bool,
}

/// Product-stratum mass `a(A11, nu, n1, n2)`.
pub fn a_a11(
    base: &CensusTally,
    ext: &CensusTally,
    nu: &Partition,
    n1: u32,
    n2: u32,
    options: ProductOptions,
) -> Result<BigRational, CensusError> {
    require(base, Stratum::Genus1Base)?;
    require(ext, Stratum::Genus1Ext)?;
    if ext.p != base.p || ext.n != 2 * base.n {
        return Err(CensusError::FieldMismatch {
            p: base.p,
            n: 2 * base.n,
            found_p: ext.p,
            found_n: ext.n,
        });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut total = BigRational::zero();
    let cubics = partitions_of(3);
    for rho in &cubics {
        for sigma in &cubics {
            if &rho.union(sigma) != nu {
                continue;
            }
            for m1 in 0..=n1 {
                for m2 in 0..=n2 {
                    let c = if options.without_binomials {
                        BigInt::one()
                    } else {
                        binomial(n1, m1) * binomial(n2, m2)
                    };
                    let b1 = elliptic_mass(base, rho, m1, m2)?;
                    if b1.is_zero() {
                        continue;
                    }
                    let b2 = elliptic_mass(base, sigma, n1 - m1, n2 - m2)?;
                    total += BigRational::from_integer(c) * b1 * b2;
                }
            }
        }
    }
    if n1 == 0 && nu.all_even() {
        let root = nu.halve();
        let raw = ext.raw(&root, n2, 0)?.clone();
        let scale = match options.kappa {
            ConjugateNormalization::Literal => BigInt::one(),
            ConjugateNormalization::Doubled => BigInt::from(2).pow(n2),
        };
        total += BigRational::new(raw * scale, elliptic_normalizer(ext.q()));
    }
    Ok(total * half)
}
