//! Assembly of equivariant Frobenius traces from census tallies.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::census::{
    a_a11, a_m2, census_genus1_with_cap, census_genus2_with_cap, CensusTally, ConjugateNormalization,
    ProductOptions, Stratum, DESK_CENSUS_CAP,
};
use crate::error::{CensusError, CohomologyError};
use crate::ffield::build_field_with_cap;
use crate::partition::Partition;
use crate::symfunc::{s6_table, sp4_coeffs_cached, young_invariant_multiplicity, Rep, S6_IRREPS};

/// How character values weight the classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterNormalization {
    /// `chi^mu(nu)`: the trace on the multiplicity space of `s[mu]`.
    #[default]
    Plain,
    /// `chi^mu(nu) / z_nu`.
    Centralizer,
}

/// Power of `q` attached to the monomial `p1^n1 p2^n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentRule {
    /// `(l + m - n1 - 2 n2) / 2`.
    #[default]
    Corrected,
    /// `(l + m - n1 - n2) / 2`.
    Printed,
}

/// Every switch that affects an assembled trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct TraceOptions {
    pub kappa: ConjugateNormalization,
    pub normalization: CharacterNormalization,
    pub binomials: Binomials,
    pub exponent: ExponentRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Binomials {
    #[default]
    On,
    Off,
}

impl TraceOptions {
    /// The formulas exactly as written, with the corrected exponent.
    pub fn literal() -> Self {
        TraceOptions::default()
    }

    pub fn with_kappa(mut self, kappa: ConjugateNormalization) -> Self {
        self.kappa = kappa;
        self
    }

    fn product(&self) -> ProductOptions {
        ProductOptions {
            kappa: self.kappa,
            without_binomials: self.binomials == Binomials::Off,
        }
    }

    /// Flags in a stable textual form for output files.
    pub fn flags(&self) -> Vec<(&'static str, &'static str)> {
        vec![
            ("kappa", self.kappa.as_str()),
            (
                "normalization",
                match self.normalization {
                    CharacterNormalization::Plain => "plain",
                    CharacterNormalization::Centralizer => "centralizer",
                },
            ),
            (
                "binomials",
                match self.binomials {
                    Binomials::On => "on",
                    Binomials::Off => "off",
                },
            ),
            (
                "exponent",
                match self.exponent {
                    ExponentRule::Corrected => "corrected",
                    ExponentRule::Printed => "printed",
                },
            ),
        ]
    }
}

impl fmt::Display for TraceOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.flags().iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Which part of the `S6`-representation a trace is taken on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Isotype {
    /// The multiplicity space of `s[mu]`.
    Irrep(Partition),
    /// The whole representation.
    Full,
    /// Invariants under `S_{6-n}`, the cohomology of the cover `A2(w^n)`.
    YoungInvariants(u32),
}

impl Isotype {
    /// Weight of each irreducible in the contraction.
    pub fn weights(&self) -> [i64; S6_IRREPS] {
        let t = s6_table();
        let mut w = [0i64; S6_IRREPS];
        for (i, mu) in t.partitions.iter().enumerate() {
            w[i] = match self {
                Isotype::Irrep(nu) => (nu == mu) as i64,
                Isotype::Full => t.dim(i),
                Isotype::YoungInvariants(n) => young_invariant_multiplicity(mu, *n),
            };
        }
        w
    }

    pub fn contract(&self, rep: &Rep) -> i64 {
        self.weights().iter().zip(rep.0).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for Isotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isotype::Irrep(mu) => write!(f, "{mu}"),
            Isotype::Full => f.write_str("full"),
            Isotype::YoungInvariants(n) => write!(f, "w^{n}"),
        }
    }
}

/// All tallies needed at one field size, with memoized class masses.
#[derive(Debug)]
pub struct CensusData {
    pub p: u32,
    pub r: u32,
    pub genus2: Arc<CensusTally>,
    pub genus1_base: Arc<CensusTally>,
    pub genus1_ext: Arc<CensusTally>,
    masses: Mutex<HashMap<(u32, u32, TraceOptionsKey), Arc<Vec<BigRational>>>>,
}

type TraceOptionsKey = (ConjugateNormalization, Binomials);

impl CensusData {
    pub fn from_tallies(
        genus2: CensusTally,
        genus1_base: CensusTally,
        genus1_ext: CensusTally,
    ) -> Result<Self, CohomologyError> {
        let check = |t: &CensusTally, s: Stratum, n: u32| -> Result<(), CohomologyError> {
            if t.stratum != s {
                return Err(CensusError::StratumMismatch {
                    expected: s.as_str().into(),
                    found: t.stratum.as_str().into(),
                }
                .into());
            }
            if t.p != genus2.p || t.n != n {
                return Err(CensusError::FieldMismatch {
                    p: genus2.p,
                    n,
                    found_p: t.p,
                    found_n: t.n,
                }
                .into());
            }
            Ok(())
        };
        check(&genus2, Stratum::Genus2, genus2.n)?;
        check(&genus1_base, Stratum::Genus1Base, genus2.n)?;
        check(&genus1_ext, Stratum::Genus1Ext, 2 * genus2.n)?;
        Ok(CensusData {
            p: genus2.p,
            r: genus2.n,
            genus2: Arc::new(genus2),
            genus1_base: Arc::new(genus1_base),
            genus1_ext: Arc::new(genus1_ext),
            masses: Mutex::new(HashMap::new()),
        })
    }

    /// Runs all three censuses at `q = p^r` with the desk-scale cap.
    pub fn compute(p: u32, r: u32, weight_cap: u32) -> Result<Self, CohomologyError> {
        Self::compute_with_cap(p, r, weight_cap, DESK_CENSUS_CAP)
    }

    pub fn compute_with_cap(p: u32, r: u32, weight_cap: u32, cap: u32) -> Result<Self, CohomologyError> {
        let fcap = (cap * cap).max(crate::ffield::DEFAULT_FIELD_CAP);
        let base = build_field_with_cap(p, r, fcap).map_err(CensusError::from)?;
        let ext = build_field_with_cap(p, 2 * r, fcap).map_err(CensusError::from)?;
        let g2 = census_genus2_with_cap(&base, weight_cap, cap)?;
        let g1 = census_genus1_with_cap(&base, weight_cap, Stratum::Genus1Base, cap)?;
        let g1e = census_genus1_with_cap(&ext, weight_cap, Stratum::Genus1Ext, cap)?;
        Self::from_tallies(g2, g1, g1e)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.r)
    }

    pub fn weight_cap(&self) -> u32 {
        self.genus2
            .weight_cap
            .min(self.genus1_base.weight_cap)
            .min(self.genus1_ext.weight_cap)
    }

    /// `a(M2, nu, n1, n2) + a(A11, nu, n1, n2)` for every `nu`, in canonical order.
    pub fn class_masses(&self, n1: u32, n2: u32, options: &TraceOptions) -> Result<Arc<Vec<BigRational>>, CohomologyError> {
        let key = (n1, n2, (options.kappa, options.binomials));
        if let Some(m) = self.masses.lock().expect("mass cache").get(&key) {
            return Ok(m.clone());
        }
        let mut out = Vec::with_capacity(S6_IRREPS);
        for nu in &s6_table().partitions {
            let m2 = a_m2(&self.genus2, nu, n1, n2)?;
            let a11 = a_a11(&self.genus1_base, &self.genus1_ext, nu, n1, n2, options.product())?;
            out.push(m2 + a11);
        }
        let out = Arc::new(out);
        self.masses.lock().expect("mass cache").insert(key, out.clone());
        Ok(out)
    }
}

fn q_power(q: u64, twice: i64) -> BigRational {
    // q^(twice/2) with twice even and nonnegative
    debug_assert!(twice >= 0 && twice % 2 == 0);
    BigRational::from_integer(BigInt::from(q).pow((twice / 2) as u32))
}

/// Per-irreducible traces `t_mu` as exact rationals.
pub fn isotypic_traces(
    data: &CensusData,
    l: u32,
    m: u32,
    options: &TraceOptions,
) -> Result<Vec<BigRational>, CohomologyError> {
    if l < m {
        return Err(CohomologyError::NotDominant { l, m });
    }
    if (l + m) % 2 == 1 {
        return Err(CohomologyError::OddWeight(l + m));
    }
    if data.weight_cap() < l + m {
        return Err(CohomologyError::MissingTally(format!(
            "weight cap {} below l+m = {}",
            data.weight_cap(),
            l + m
        )));
    }
    let beta = sp4_coeffs_cached(l, m)?;
    let t = s6_table();
    let q = data.q();
    let mut traces = vec![BigRational::zero(); S6_IRREPS];
    for (&(n1, n2), b) in beta {
        let twice = match options.exponent {
            ExponentRule::Corrected => (l + m) as i64 - n1 as i64 - 2 * n2 as i64,
            ExponentRule::Printed => {
                let e = (l + m) as i64 - n1 as i64 - n2 as i64;
                if e % 2 != 0 {
                    return Err(CohomologyError::HalfIntegralExponent { n1, n2 });
                }
                e
            }
        };
        let masses = data.class_masses(n1, n2, options)?;
        let factor = b * q_power(q, twice);
        for (i, tr) in traces.iter_mut().enumerate() {
            let mut s = BigRational::zero();
            for (j, mass) in masses.iter().enumerate() {
                if mass.is_zero() {
                    continue;
                }
                let chi = BigRational::from_integer(BigInt::from(t.chi[i][j]));
                let w = match options.normalization {
                    CharacterNormalization::Plain => chi,
                    CharacterNormalization::Centralizer => chi / BigRational::from_integer(BigInt::from(t.z[j])),
                };
                s += w * mass;
            }
            *tr += &factor * s;
        }
    }
    Ok(traces)
}

fn integral(x: BigRational) -> Result<BigInt, CohomologyError> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(CohomologyError::NonIntegralTrace(x.to_string()))
    }
}

/// Exact Frobenius trace on the requested part of `e_c(A2[2], V_{l,m})`.
pub fn assemble_trace(
    data: &CensusData,
    l: u32,
    m: u32,
    isotype: &Isotype,
    options: &TraceOptions,
) -> Result<BigInt, CohomologyError> {
    let traces = isotypic_traces(data, l, m, options)?;
    let weights = isotype.weights();
    let mut total = BigRational::zero();
    for (w, t) in weights.iter().zip(traces) {
        if *w != 0 {
            total += BigRational::from_integer(BigInt::from(*w)) * t;
        }
    }
    integral(total)
}

/// All eleven `t_mu` as integers.
pub fn assemble_all(data: &CensusData, l: u32, m: u32, options: &TraceOptions) -> Result<Vec<BigInt>, CohomologyError> {
    isotypic_traces(data, l, m, options)?.into_iter().map(integral).collect()
}

/// Contraction of integral per-irreducible values.
pub fn contract_values(values: &[BigInt], isotype: &Isotype) -> BigInt {
    isotype
        .weights()
        .iter()
        .zip(values)
        .map(|(w, v)| BigInt::from(*w) * v)
        .fold(BigInt::zero(), |a, b| a + b)
}
