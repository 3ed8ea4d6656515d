//! The six subcommands, each producing one [`Output`].

use std::io::Write;

use num_bigint::BigInt;

use a2count::census::enumeration_flags;
use a2count::cohomology::calibrate::calibrate;
use a2count::cohomology::harder::{harder_case, harder_cases, harder_check, HarderCase};
use a2count::cohomology::motive::{evaluate, HeckeTraces, Symbol};
use a2count::cohomology::report::{genuine_trace, variant_flags, TraceReport};
use a2count::cohomology::slopes::newton_slopes;
use a2count::cohomology::tables::{ec_row, ec_table, eigenvalue_columns, factored, slope_table, EcRow};
use a2count::cohomology::trace::{assemble_trace, CensusData, Isotype, TraceOptions};
use a2count::partition::Partition;
use a2count::symfunc::s6_table;

use crate::cache::{self, Hashes};
use crate::config::RunConfig;
use crate::output::Output;
use crate::{CliError, Command, Outcome};

/// Field sizes tried, when cached, to calibrate the trace variant.
pub const CALIBRATION_QS: [u64; 3] = [3, 5, 7];

pub fn dispatch(config: &RunConfig, command: &Command, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let output = match command {
        Command::Census => census(config)?,
        Command::Verify { rows } => verify(config, rows)?,
        Command::Eigenvalues { space, isotype } => eigenvalues(config, space, isotype)?,
        Command::Congruence { case } => congruence(config, case.as_deref())?,
        Command::Calibrate => calibrate_cmd(config)?,
        Command::Report { row } => report(config, row)?,
    };
    out.write_all(output.render(config.format).as_bytes())?;
    Ok(output.status)
}

fn pair(s: &str, what: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("{what} must be two integers a,b; got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn weight_needed(data: &[CensusData], l: u32, m: u32) -> Result<(), CliError> {
    for d in data {
        if d.weight_cap() < l + m {
            return Err(CliError::MissingCache(format!(
                "V_{{{l},{m}}} needs a census of weight {} at q = {}, cached weight is {}",
                l + m,
                d.q(),
                d.weight_cap()
            )));
        }
    }
    Ok(())
}

/// The configured trace variant, with `calibrated` switches filled in from
/// the cached censuses at small q.
pub fn resolve_options(config: &RunConfig, hashes: &mut Hashes) -> Result<(TraceOptions, HeckeTraces), CliError> {
    let source = HeckeTraces::new(config.elliptic_trace);
    let mut options = TraceOptions::literal();
    if config.any_calibrated() {
        let qs: Vec<u64> =
            CALIBRATION_QS.iter().copied().filter(|&q| cache::tally_path(config, q, cache::STRATA[0]).exists()).collect();
        if qs.is_empty() {
            return Err(CliError::MissingCache(format!(
                "calibration needs a census at q in {CALIBRATION_QS:?} and weight {}",
                config.weight
            )));
        }
        let data: Vec<CensusData> = qs.iter().map(|&q| cache::load_data(config, q, hashes)).collect::<Result<_, _>>()?;
        let refs: Vec<&CensusData> = data.iter().collect();
        options = calibrate(&refs, &source)?.options;
    }
    if let Some(k) = config.kappa.fixed() {
        options.kappa = k;
    }
    if let Some(n) = config.normalization.fixed() {
        options.normalization = n;
    }
    if let Some(b) = config.binomials.fixed() {
        options.binomials = b;
    }
    if let Some(e) = config.exponent.fixed() {
        options.exponent = e;
    }
    Ok((options, source))
}

fn census(config: &RunConfig) -> Result<Output, CliError> {
    if config.q.is_empty() {
        return Err(CliError::Usage("census needs --q".into()));
    }
    let mut out = Output::new("census", &["q", "stratum", "file", "sha256"]);
    out.variant_flags = enumeration_flags();
    for &q in &config.q {
        for e in cache::ensure_census(config, q)? {
            eprintln!("{} {}", if e.hit { "cached" } else { "wrote" }, e.file);
            out.push(vec![q.to_string(), e.stratum.as_str().into(), e.file.clone(), e.sha256.clone()]);
            out.caches.insert(e.file, e.sha256);
        }
    }
    Ok(out)
}

fn has_siegel(row: &EcRow) -> bool {
    row.expr.terms().any(|(_, s, _)| matches!(s, Symbol::Siegel { .. }))
}

fn verify(config: &RunConfig, rows: &[String]) -> Result<Output, CliError> {
    let table_rows: Vec<EcRow> = if rows.is_empty() {
        ec_table()
    } else {
        rows.iter()
            .map(|s| {
                let (l, m) = pair(s, "row")?;
                ec_row(l, m).ok_or_else(|| CliError::Usage(format!("no table row ({l},{m})")))
            })
            .collect::<Result<_, _>>()?
    };
    let mut hashes = Hashes::new();
    let data = cache::load_all(config, &mut hashes)?;
    let (options, source) = resolve_options(config, &mut hashes)?;
    let mut out = Output::new("verify", &["l", "m", "q", "status", "expected", "assembled", "difference"]);
    let mut pass = true;
    for row in &table_rows {
        weight_needed(&data, row.l, row.m)?;
        for d in &data {
            let q = d.q();
            let assembled = assemble_trace(d, row.l, row.m, &Isotype::Full, &options)?;
            let (status, expected, diff) = if has_siegel(row) {
                ("not-evaluable", String::new(), String::new())
            } else {
                let expected = evaluate(&row.expr, q, &source)?;
                let diff = &assembled - &expected;
                let status = if !row.gated {
                    "info"
                } else if diff == BigInt::from(0) {
                    "pass"
                } else {
                    pass = false;
                    "fail"
                };
                (status, expected.to_string(), diff.to_string())
            };
            out.push(vec![
                row.l.to_string(),
                row.m.to_string(),
                q.to_string(),
                status.into(),
                expected,
                assembled.to_string(),
                diff,
            ]);
        }
    }
    out.status = Outcome::from_pass(pass);
    out.variant_flags = variant_flags(&options, &source);
    out.caches = hashes;
    Ok(out)
}

fn slopes_str(slopes: &[num_rational::BigRational]) -> String {
    slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

/// Tabulated `lambda(q)` of the given piece, if any.
fn tabulated(j: u32, k: u32, mu: &Partition, q: u64) -> Option<i64> {
    let column = eigenvalue_columns().into_iter().find(|c| (c.j, c.k) == (j, k) && &c.isotype == mu);
    if let Some(v) = column.and_then(|c| c.value(q)) {
        return Some(v);
    }
    if (j, k) != (2, 6) {
        return None;
    }
    slope_table().into_iter().filter(|r| &r.isotype == mu).find_map(|r| {
        if r.p == q {
            Some(r.lambda_p)
        } else if r.p * r.p == q {
            Some(r.lambda_p2)
        } else {
            None
        }
    })
}

fn eigenvalues(config: &RunConfig, space: &str, isotype: &str) -> Result<Output, CliError> {
    let (j, k) = pair(space, "space")?;
    if k < 3 {
        return Err(CliError::Usage(format!("S_{{{j},{k}}} has k < 3")));
    }
    let mu: Partition = isotype.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    if !s6_table().partitions.contains(&mu) {
        return Err(CliError::Usage(format!("{mu} is not a partition of 6")));
    }
    let (l, m) = (j + k - 3, k - 3);
    let mut hashes = Hashes::new();
    let data = cache::load_all(config, &mut hashes)?;
    weight_needed(&data, l, m)?;
    let (options, source) = resolve_options(config, &mut hashes)?;
    let iso = Isotype::Irrep(mu.clone());
    let mut out = Output::new("eigenvalues", &["kind", "q", "value", "factored", "tabulated", "agrees"]);
    let mut pass = true;
    let mut lambdas = Vec::new();
    for d in &data {
        let q = d.q();
        let lambda = genuine_trace(d, l, m, &iso, &options, &source)?;
        let (tab, agrees) = match tabulated(j, k, &mu, q) {
            Some(t) => {
                let ok = lambda == BigInt::from(t);
                pass &= ok;
                (t.to_string(), ok.to_string())
            }
            None => (String::new(), String::new()),
        };
        out.push(vec!["lambda".into(), q.to_string(), lambda.to_string(), factored(&lambda), tab, agrees]);
        lambdas.push((d.p as u64, d.r, lambda));
    }
    for (p, r, l1) in &lambdas {
        let Some((_, _, l2)) = lambdas.iter().find(|(p2, r2, _)| p2 == p && *r2 == 2) else {
            continue;
        };
        if *r != 1 {
            continue;
        }
        let slopes = slopes_str(&newton_slopes(l, m, *p, l1, l2));
        let tab = slope_table().into_iter().find(|row| (j, k) == (2, 6) && row.isotype == mu && row.p == *p).map(|row| {
            let mut v = Vec::new();
            for &(a, b) in &row.slopes {
                v.push(if b == 1 { a.to_string() } else { format!("{a}/{b}") });
            }
            if v.len() == 1 {
                v = vec![v[0].clone(); 4];
            }
            v.join(" ")
        });
        let (tab, agrees) = match tab {
            Some(t) => {
                let ok = t == slopes;
                pass &= ok;
                (t, ok.to_string())
            }
            None => (String::new(), String::new()),
        };
        out.push(vec!["slopes".into(), p.to_string(), slopes, String::new(), tab, agrees]);
    }
    out.status = Outcome::from_pass(pass);
    out.variant_flags = variant_flags(&options, &source);
    out.caches = hashes;
    Ok(out)
}

fn congruence(config: &RunConfig, case: Option<&str>) -> Result<Output, CliError> {
    let cases: Vec<HarderCase> = match case {
        Some(id) => vec![harder_case(id).ok_or_else(|| {
            let known: Vec<String> = harder_cases().into_iter().map(|c| c.id).collect();
            CliError::Usage(format!("unknown case {id:?}; known cases: {}", known.join(", ")))
        })?],
        None => harder_cases(),
    };
    let mut hashes = Hashes::new();
    let data: Vec<CensusData> = cache::load_all(config, &mut hashes)?.into_iter().filter(|d| d.r == 1).collect();
    if data.is_empty() {
        return Err(CliError::MissingCache("congruences need censuses over prime fields".into()));
    }
    let (options, source) = resolve_options(config, &mut hashes)?;
    let refs: Vec<&CensusData> = data.iter().collect();
    let mut out = Output::new("congruence", &["case", "isotype", "ell", "p", "lambda", "a", "predicted", "holds"]);
    let mut pass = true;
    for c in &cases {
        let (l, m) = c.local_system();
        weight_needed(&data, l, m)?;
        for line in harder_check(c, &refs, &options, &source)? {
            pass &= line.holds;
            out.push(vec![
                c.id.clone(),
                c.isotype.to_string(),
                c.ell.to_string(),
                line.p.to_string(),
                line.lambda.to_string(),
                line.a.to_string(),
                line.predicted.to_string(),
                line.holds.to_string(),
            ]);
        }
    }
    out.status = Outcome::from_pass(pass);
    out.variant_flags = variant_flags(&options, &source);
    out.caches = hashes;
    Ok(out)
}

fn calibrate_cmd(config: &RunConfig) -> Result<Output, CliError> {
    let mut hashes = Hashes::new();
    let data = if config.q.is_empty() {
        let qs: Vec<u64> = cache::cached_qs(config)?.into_iter().filter(|q| CALIBRATION_QS.contains(q)).collect();
        if qs.is_empty() {
            return Err(CliError::MissingCache(format!(
                "calibration needs a census at q in {CALIBRATION_QS:?} and weight {}",
                config.weight
            )));
        }
        qs.iter().map(|&q| cache::load_data(config, q, &mut hashes)).collect::<Result<Vec<_>, _>>()?
    } else {
        cache::load_all(config, &mut hashes)?
    };
    let source = HeckeTraces::new(config.elliptic_trace);
    let refs: Vec<&CensusData> = data.iter().collect();
    let selection = calibrate(&refs, &source)?;
    let mut out = Output::new("calibrate", &["variant", "selected", "passed", "failures", "checks"]);
    for t in &selection.trials {
        let failures: Vec<String> =
            t.checks.iter().filter(|c| !c.passed()).map(|c| format!("{} at q={}", c.name, c.q)).collect();
        out.push(vec![
            t.options.to_string(),
            (t.options == selection.options).to_string(),
            t.passed().to_string(),
            failures.join("; "),
            t.checks.len().to_string(),
        ]);
    }
    out.variant_flags = variant_flags(&selection.options, &source);
    out.caches = hashes;
    Ok(out)
}

fn report(config: &RunConfig, row: &str) -> Result<Output, CliError> {
    let (l, m) = pair(row, "row")?;
    let mut hashes = Hashes::new();
    let data = cache::load_all(config, &mut hashes)?;
    weight_needed(&data, l, m)?;
    let (options, source) = resolve_options(config, &mut hashes)?;
    let columns: Vec<&'static str> = TraceReport::CSV_HEADER.split(',').collect();
    let mut out = Output::new("report", &columns);
    for d in &data {
        let r = TraceReport::build(d, l, m, &options, &source)?;
        for line in &r.lines {
            out.push(vec![
                r.q.to_string(),
                l.to_string(),
                m.to_string(),
                line.isotype.to_string(),
                line.assembled.to_string(),
                line.eisenstein.to_string(),
                line.endoscopy.to_string(),
                line.lifts.to_string(),
                line.residual.to_string(),
                line.genuine.to_string(),
            ]);
        }
    }
    out.variant_flags = variant_flags(&options, &source);
    out.caches = hashes;
    Ok(out)
}
