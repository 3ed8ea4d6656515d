//! Assembled traces set against their predicted parts, per isotype.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cohomology::formulas::{eisenstein_equivariant, endoscopy, lift_leading};
use crate::cohomology::motive::{motive_trace, HeckeTraces};
use crate::cohomology::trace::{assemble_all, contract_values, CensusData, Isotype, TraceOptions};
use crate::error::CohomologyError;
use crate::symfunc::s6_table;

/// One isotypic part of `e_c(A2[2], V_{l,m})` at one `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypeLine {
    pub isotype: Isotype,
    pub assembled: BigInt,
    pub eisenstein: BigInt,
    pub endoscopy: BigInt,
    /// Leading parts `M_f` of the lifts.
    pub lifts: BigInt,
    /// `assembled - eisenstein - endoscopy`.
    pub residual: BigInt,
    /// Trace on the Siegel cusp forms that are not lifts: `-residual - lifts`.
    pub genuine: BigInt,
}

/// Trace decomposition of one local system at one field size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    pub q: u64,
    pub l: u32,
    pub m: u32,
    pub variant_flags: BTreeMap<String, String>,
    /// The eleven irreducibles in canonical order, then the full trace.
    pub lines: Vec<IsotypeLine>,
}

/// Variant flags of a trace computation, as recorded in every output.
pub fn variant_flags(options: &TraceOptions, source: &HeckeTraces) -> BTreeMap<String, String> {
    let mut flags: BTreeMap<String, String> =
        options.flags().into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    flags.insert("elliptic-trace".into(), source.rule.as_str().into());
    flags
}

fn line(
    data: &CensusData,
    values: &[BigInt],
    l: u32,
    m: u32,
    isotype: Isotype,
    source: &HeckeTraces,
) -> Result<IsotypeLine, CohomologyError> {
    let q = data.q();
    let assembled = contract_values(values, &isotype);
    let eisenstein = motive_trace(&eisenstein_equivariant(l, m)?, q, &isotype, source)?;
    let endoscopy = motive_trace(&endoscopy(l, m)?, q, &isotype, source)?;
    let lifts = motive_trace(&lift_leading(l, m)?, q, &isotype, source)?;
    let residual = &assembled - &eisenstein - &endoscopy;
    let genuine = -&residual - &lifts;
    Ok(IsotypeLine { isotype, assembled, eisenstein, endoscopy, lifts, residual, genuine })
}

impl TraceReport {
    pub fn build(
        data: &CensusData,
        l: u32,
        m: u32,
        options: &TraceOptions,
        source: &HeckeTraces,
    ) -> Result<Self, CohomologyError> {
        let values = assemble_all(data, l, m, options)?;
        let mut lines = Vec::new();
        for mu in &s6_table().partitions {
            lines.push(line(data, &values, l, m, Isotype::Irrep(mu.clone()), source)?);
        }
        lines.push(line(data, &values, l, m, Isotype::Full, source)?);
        Ok(TraceReport { q: data.q(), l, m, variant_flags: variant_flags(options, source), lines })
    }

    pub fn line(&self, isotype: &Isotype) -> Option<&IsotypeLine> {
        self.lines.iter().find(|x| &x.isotype == isotype)
    }

    pub fn full(&self) -> &IsotypeLine {
        self.lines.last().expect("full line")
    }

    pub fn to_json_value(&self) -> Value {
        let lines: Vec<Value> = self
            .lines
            .iter()
            .map(|x| {
                json!({
                    "isotype": x.isotype.to_string(),
                    "assembled": x.assembled.to_string(),
                    "eisenstein": x.eisenstein.to_string(),
                    "endoscopy": x.endoscopy.to_string(),
                    "lifts": x.lifts.to_string(),
                    "residual": x.residual.to_string(),
                    "genuine": x.genuine.to_string(),
                })
            })
            .collect();
        json!({
            "q": self.q.to_string(),
            "l": self.l,
            "m": self.m,
            "variant_flags": self.variant_flags,
            "lines": lines,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }

    pub const CSV_HEADER: &'static str = "q,l,m,isotype,assembled,eisenstein,endoscopy,lifts,residual,genuine";

    /// CSV rows without the header.
    pub fn csv_rows(&self) -> Vec<String> {
        self.lines
            .iter()
            .map(|x| {
                format!(
                    "{},{},{},\"{}\",{},{},{},{},{},{}",
                    self.q, self.l, self.m, x.isotype, x.assembled, x.eisenstein, x.endoscopy, x.lifts, x.residual,
                    x.genuine
                )
            })
            .collect()
    }

    pub fn to_csv(reports: &[TraceReport]) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in reports {
            for row in r.csv_rows() {
                out.push_str(&row);
                out.push('\n');
            }
        }
        out
    }
}

/// `t_mu - Eis_mu - End_mu` on one isotypic part.
pub fn residual_trace(
    data: &CensusData,
    l: u32,
    m: u32,
    isotype: &Isotype,
    options: &TraceOptions,
    source: &HeckeTraces,
) -> Result<BigInt, CohomologyError> {
    let values = assemble_all(data, l, m, options)?;
    Ok(line(data, &values, l, m, isotype.clone(), source)?.residual)
}

/// Trace on the non-lifted Siegel cusp forms of one isotypic part.
pub fn genuine_trace(
    data: &CensusData,
    l: u32,
    m: u32,
    isotype: &Isotype,
    options: &TraceOptions,
    source: &HeckeTraces,
) -> Result<BigInt, CohomologyError> {
    let values = assemble_all(data, l, m, options)?;
    Ok(line(data, &values, l, m, isotype.clone(), source)?.genuine)
}
