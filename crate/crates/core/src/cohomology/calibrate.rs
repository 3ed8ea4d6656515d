//! Selection of the trace-assembly variant from reference values.

use num_bigint::BigInt;

use crate::census::ConjugateNormalization;
use crate::cohomology::motive::{evaluate, HeckeTraces};
use crate::cohomology::report::genuine_trace;
use crate::cohomology::tables::{ec_row, eigenvalue_columns};
use crate::cohomology::trace::{
    assemble_trace, Binomials, CensusData, CharacterNormalization, ExponentRule, Isotype, TraceOptions,
};
use crate::error::CohomologyError;

/// One comparison made while calibrating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalibrationCheck {
    pub name: String,
    pub q: u64,
    pub expected: BigInt,
    /// `None` when the variant could not produce an integer.
    pub found: Option<BigInt>,
}

impl CalibrationCheck {
    pub fn passed(&self) -> bool {
        self.found.as_ref() == Some(&self.expected)
    }
}

/// Outcome for one candidate variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantTrial {
    pub options: TraceOptions,
    pub checks: Vec<CalibrationCheck>,
}

impl VariantTrial {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CalibrationCheck::passed)
    }
}

/// The selected variant together with every trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantSelection {
    pub options: TraceOptions,
    pub trials: Vec<VariantTrial>,
}

/// Every combination of switches, the literal reading first.
pub fn candidate_variants() -> Vec<TraceOptions> {
    let mut out = Vec::new();
    for kappa in [ConjugateNormalization::Literal, ConjugateNormalization::Doubled] {
        for normalization in [CharacterNormalization::Plain, CharacterNormalization::Centralizer] {
            for binomials in [Binomials::On, Binomials::Off] {
                for exponent in [ExponentRule::Corrected, ExponentRule::Printed] {
                    out.push(TraceOptions { kappa, normalization, binomials, exponent });
                }
            }
        }
    }
    out
}

fn usable(err: CohomologyError) -> Result<Option<BigInt>, CohomologyError> {
    match err {
        CohomologyError::NonIntegralTrace(_) | CohomologyError::HalfIntegralExponent { .. } => Ok(None),
        e => Err(e),
    }
}

fn run_checks(
    data: &[&CensusData],
    options: &TraceOptions,
    source: &HeckeTraces,
) -> Result<Vec<CalibrationCheck>, CohomologyError> {
    let mut checks = Vec::new();
    for d in data {
        let q = d.q();
        for (l, m) in [(0, 0), (2, 0), (3, 1)] {
            let row = ec_row(l, m).expect("reference row");
            let expected = evaluate(&row.expr, q, source)?;
            let found = assemble_trace(d, l, m, &Isotype::Full, options).map(Some).or_else(usable)?;
            checks.push(CalibrationCheck { name: format!("e_c({l},{m})"), q, expected, found });
        }
        let col = &eigenvalue_columns()[0];
        if let Some(v) = col.value(q) {
            let (l, m) = col.local_system();
            let iso = Isotype::Irrep(col.isotype.clone());
            let found = genuine_trace(d, l, m, &iso, options, source).map(Some).or_else(usable)?;
            checks.push(CalibrationCheck {
                name: format!("lambda S_{{{},{}}}{}", col.j, col.k, col.isotype),
                q,
                expected: BigInt::from(v),
                found,
            });
        }
    }
    Ok(checks)
}

/// Tries every variant on the given censuses (typically `q` in {3, 5, 7})
/// and selects the first that reproduces all reference values.
pub fn calibrate(data: &[&CensusData], source: &HeckeTraces) -> Result<VariantSelection, CohomologyError> {
    if data.is_empty() {
        return Err(CohomologyError::MissingData("calibration needs at least one census".into()));
    }
    let mut trials = Vec::new();
    for options in candidate_variants() {
        let checks = run_checks(data, &options, source)?;
        trials.push(VariantTrial { options, checks });
    }
    let chosen = trials.iter().find(|t| t.passed()).map(|t| t.options).ok_or(CohomologyError::NoVariantFits)?;
    Ok(VariantSelection { options: chosen, trials })
}
