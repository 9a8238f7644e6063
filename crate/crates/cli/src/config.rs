//! Budget and cache resolution: flags, then the config file, then defaults.
//! The cache path falls back to `PRSAT_CACHE` last.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use prsat_core::cache::CACHE_ENV;
use prsat_core::search::{Budget, SearchConfig};

use crate::UsageError;

/// Values from a `key=value` file. Blank lines and `#` comments are skipped.
#[derive(Debug, Default, PartialEq)]
pub struct FileConfig {
    pub budget_nodes: Option<u64>,
    pub budget_secs: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub cache: Option<PathBuf>,
}

fn value<T: std::str::FromStr>(key: &str, v: &str, line: usize) -> Result<T, UsageError> {
    v.parse()
        .map_err(|_| UsageError(format!("config line {line}: {key} has bad value {v:?}")))
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| UsageError(format!("config line {}: expected key=value", i + 1)))?;
            map.insert(k.trim().replace('-', "_"), (v.trim().to_string(), i + 1));
        }
        let mut cfg = FileConfig::default();
        for (k, (v, line)) in map {
            match k.as_str() {
                "budget_nodes" => cfg.budget_nodes = Some(value(&k, &v, line)?),
                "budget_secs" => cfg.budget_secs = Some(value(&k, &v, line)?),
                "trials" => cfg.trials = Some(value(&k, &v, line)?),
                "seed" => cfg.seed = Some(value(&k, &v, line)?),
                "threads" => cfg.threads = Some(value(&k, &v, line)?),
                "cache" => cfg.cache = Some(PathBuf::from(v)),
                _ => return Err(UsageError(format!("config line {line}: unknown key {k:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        FileConfig::parse(&text)
    }
}

/// Command-line values; `None` means not given.
#[derive(Debug, Default)]
pub struct FlagConfig {
    pub budget_nodes: Option<u64>,
    pub budget_secs: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub cache: Option<PathBuf>,
}

pub struct Resolved {
    pub search: SearchConfig,
    pub cache: Option<PathBuf>,
}

pub fn resolve(flags: &FlagConfig, file: &FileConfig, env_cache: Option<PathBuf>) -> Result<Resolved, UsageError> {
    let defaults = SearchConfig::default();
    let threads = flags.threads.or(file.threads).unwrap_or(1);
    if threads == 0 {
        return Err(UsageError("--threads must be at least 1".into()));
    }
    let secs = flags.budget_secs.or(file.budget_secs);
    if secs.is_some_and(|s| s.is_nan() || s <= 0.0) {
        return Err(UsageError("--budget-secs must be positive".into()));
    }
    let search = SearchConfig {
        budget: Budget {
            nodes: flags.budget_nodes.or(file.budget_nodes).unwrap_or(defaults.budget.nodes),
            secs,
            threads,
            ..Budget::default()
        },
        trials: flags.trials.or(file.trials).unwrap_or(defaults.trials),
        seed: flags.seed.or(file.seed).unwrap_or(defaults.seed),
    };
    let cache = flags.cache.clone().or_else(|| file.cache.clone()).or(env_cache);
    Ok(Resolved { search, cache })
}

pub fn env_cache() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}
