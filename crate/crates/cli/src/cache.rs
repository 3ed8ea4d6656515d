//! Tally files on disk: `q{q}-w{W}-{stratum}.json` under the cache directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use a2count::census::{
    census_genus1_shard, census_genus2_shard, load_tally_expecting, save_tally, CensusTally, Stratum,
    DESK_CENSUS_CAP, LONG_RUN_CENSUS_CAP,
};
use a2count::cohomology::trace::CensusData;
use a2count::error::FieldError;
use a2count::ffield::{build_field_with_cap, DEFAULT_FIELD_CAP};
use a2count::modforms::spaces::prime_power;

use crate::config::RunConfig;
use crate::CliError;

pub const STRATA: [Stratum; 3] = [Stratum::Genus2, Stratum::Genus1Base, Stratum::Genus1Ext];

pub fn file_name(q: u64, weight: u32, stratum: Stratum) -> String {
    format!("q{q}-w{weight}-{}.json", stratum.as_str())
}

pub fn tally_path(config: &RunConfig, q: u64, stratum: Stratum) -> PathBuf {
    config.cache_dir.join(file_name(q, config.weight, stratum))
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    Ok(hex::encode(Sha256::digest(std::fs::read(path)?)))
}

/// `(p, r)` with `q = p^r` and `p` odd.
pub fn field_of(q: u64) -> Result<(u32, u32), CliError> {
    let (p, r) = prime_power(q)?;
    if p == 2 {
        return Err(FieldError::EvenCharacteristic.into());
    }
    Ok((p as u32, r))
}

pub fn census_cap(config: &RunConfig) -> u32 {
    if config.long_run {
        LONG_RUN_CENSUS_CAP
    } else {
        DESK_CENSUS_CAP
    }
}

/// Hashes of the cache files an output depends on, keyed by file name.
pub type Hashes = BTreeMap<String, String>;

/// One tally file written or found by `census`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub q: u64,
    pub stratum: Stratum,
    pub file: String,
    pub sha256: String,
    pub hit: bool,
}

fn tally_stratum(config: &RunConfig, p: u32, r: u32, stratum: Stratum) -> Result<CensusTally, CliError> {
    let cap = census_cap(config);
    let fcap = (cap * cap).max(DEFAULT_FIELD_CAP);
    let n = if stratum == Stratum::Genus1Ext { 2 * r } else { r };
    let field = build_field_with_cap(p, n, fcap)?;
    let shards = config.shards;
    let w = config.weight;
    let parts: Vec<CensusTally> = (0..shards)
        .into_par_iter()
        .map(|s| match stratum {
            Stratum::Genus2 => census_genus2_shard(&field, w, cap, s, shards),
            _ => census_genus1_shard(&field, w, stratum, cap, s, shards),
        })
        .collect::<Result<_, _>>()?;
    let mut parts = parts.into_iter();
    let mut tally = parts.next().expect("at least one shard");
    for t in parts {
        tally.merge(&t)?;
    }
    Ok(tally)
}

fn usable(tally: &CensusTally, p: u32, n: u32, weight: u32) -> bool {
    tally.p == p && tally.n == n && tally.weight_cap == weight
}

/// Ensures all three tallies for `q` are cached; existing valid files are kept.
pub fn ensure_census(config: &RunConfig, q: u64) -> Result<Vec<CacheEntry>, CliError> {
    let (p, r) = field_of(q)?;
    if p > census_cap(config) {
        return Err(a2count::error::CensusError::CapExceeded { q: p, cap: census_cap(config) }.into());
    }
    std::fs::create_dir_all(&config.cache_dir)?;
    let mut out = Vec::new();
    for stratum in STRATA {
        let path = tally_path(config, q, stratum);
        let n = if stratum == Stratum::Genus1Ext { 2 * r } else { r };
        let hit = path.exists()
            && load_tally_expecting(&path, stratum).map(|t| usable(&t, p, n, config.weight)).unwrap_or(false);
        if !hit {
            let tally = tally_stratum(config, p, r, stratum)?;
            save_tally(&tally, &path)?;
        }
        out.push(CacheEntry {
            q,
            stratum,
            file: file_name(q, config.weight, stratum),
            sha256: sha256_file(&path)?,
            hit,
        });
    }
    Ok(out)
}

/// The configured field sizes, or every `q` with all three tallies cached.
pub fn cached_qs(config: &RunConfig) -> Result<Vec<u64>, CliError> {
    if !config.q.is_empty() {
        return Ok(config.q.clone());
    }
    let mut qs = Vec::new();
    let Ok(dir) = std::fs::read_dir(&config.cache_dir) else {
        return Ok(qs);
    };
    let suffix = format!("-w{}-{}.json", config.weight, Stratum::Genus2.as_str());
    for entry in dir {
        let name = entry?.file_name().to_string_lossy().into_owned();
        let Some(q) = name.strip_prefix('q').and_then(|s| s.strip_suffix(&suffix)).and_then(|s| s.parse().ok()) else {
            continue;
        };
        if STRATA.iter().all(|&s| tally_path(config, q, s).exists()) {
            qs.push(q);
        }
    }
    qs.sort_unstable();
    Ok(qs)
}

/// Loads the census at `q`, recording the file hashes.
pub fn load_data(config: &RunConfig, q: u64, hashes: &mut Hashes) -> Result<CensusData, CliError> {
    field_of(q)?;
    let mut tallies = Vec::new();
    for stratum in STRATA {
        let path = tally_path(config, q, stratum);
        if !path.exists() {
            return Err(CliError::MissingCache(format!("{} (run census --q {q} --weight {})", path.display(), config.weight)));
        }
        tallies.push(load_tally_expecting(&path, stratum)?);
        hashes.insert(file_name(q, config.weight, stratum), sha256_file(&path)?);
    }
    let g1e = tallies.pop().unwrap();
    let g1 = tallies.pop().unwrap();
    let g2 = tallies.pop().unwrap();
    Ok(CensusData::from_tallies(g2, g1, g1e)?)
}

/// Loads every requested census; an empty request is a missing cache.
pub fn load_all(config: &RunConfig, hashes: &mut Hashes) -> Result<Vec<CensusData>, CliError> {
    let qs = cached_qs(config)?;
    if qs.is_empty() {
        return Err(CliError::MissingCache(format!("no census at weight {} in {}", config.weight, config.cache_dir.display())));
    }
    qs.iter().map(|&q| load_data(config, q, hashes)).collect()
}
