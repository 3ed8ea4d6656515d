//! Run configuration: a TOML file whose keys mirror the command-line flags.
//!
//! ```toml
//! q = [3, 5, 7, 9, 11, 13]
//! weight = 18
//! shards = 8
//! cache-dir = ".a2count-cache"
//! format = "json"            # or "csv"
//! long-run = false           # unlocks q > 13
//! kappa = "calibrated"       # or "literal", "doubled"
//! normalization = "calibrated"  # or "plain", "centralizer"
//! binomials = "calibrated"   # or "on", "off"
//! exponent = "calibrated"    # or "corrected", "printed"
//! elliptic-trace = "frobenius"  # or "hecke-eigenvalue"
//! ```

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::de::value::StringDeserializer;
use serde::de::IntoDeserializer;
use serde::{Deserialize, Serialize};

use a2count::census::ConjugateNormalization;
use a2count::cohomology::trace::{Binomials, CharacterNormalization, ExponentRule};
use a2count::modforms::spaces::TraceRule;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A variant switch: fixed, or chosen by calibration against reference rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice<T> {
    Calibrated,
    Fixed(T),
}

impl<T: Serialize> Serialize for Choice<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Choice::Calibrated => s.serialize_str("calibrated"),
            Choice::Fixed(t) => t.serialize(s),
        }
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Choice<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "calibrated" {
            return Ok(Choice::Calibrated);
        }
        let de: StringDeserializer<D::Error> = s.into_deserializer();
        T::deserialize(de).map(Choice::Fixed)
    }
}

impl<T> Default for Choice<T> {
    fn default() -> Self {
        Choice::Calibrated
    }
}

impl<T: Copy> Choice<T> {
    pub fn fixed(self) -> Option<T> {
        match self {
            Choice::Calibrated => None,
            Choice::Fixed(t) => Some(t),
        }
    }
}

/// Parses `calibrated` or a kebab-case variant name.
pub fn parse_choice<T: for<'de> Deserialize<'de>>(s: &str) -> Result<Choice<T>, String> {
    let de: StringDeserializer<serde::de::value::Error> = s.to_string().into_deserializer();
    Choice::deserialize(de).map_err(|_| format!("unknown variant {s:?}"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    /// Field sizes `q = p^r`.
    pub q: Vec<u64>,
    pub weight: u32,
    pub shards: u64,
    pub cache_dir: PathBuf,
    pub format: Format,
    pub long_run: bool,
    pub kappa: Choice<ConjugateNormalization>,
    pub normalization: Choice<CharacterNormalization>,
    pub binomials: Choice<Binomials>,
    pub exponent: Choice<ExponentRule>,
    pub elliptic_trace: TraceRule,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: Vec::new(),
            weight: 18,
            shards: 1,
            cache_dir: PathBuf::from(".a2count-cache"),
            format: Format::Json,
            long_run: false,
            kappa: Choice::Calibrated,
            normalization: Choice::Calibrated,
            binomials: Choice::Calibrated,
            exponent: Choice::Calibrated,
            elliptic_trace: TraceRule::Frobenius,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn any_calibrated(&self) -> bool {
        self.kappa == Choice::Calibrated
            || self.normalization == Choice::Calibrated
            || self.binomials == Choice::Calibrated
            || self.exponent == Choice::Calibrated
    }
}
