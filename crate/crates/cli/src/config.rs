use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use laplacian::suite::DEFAULT_SEED;
use laplacian::word::DEFAULT_GUARD_LIMIT;
use laplacian::{Guard, Rank};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Structural,
    Brute,
    Both,
}

/// Flags shared by every subcommand. Each may also come from `--config`.
#[derive(Args, Debug, Default)]
pub struct GlobalOpts {
    /// Number of free generators
    #[arg(long = "N", global = true, value_name = "N")]
    pub rank: Option<u32>,
    /// Tensor depth
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    /// Largest sphere that may be enumerated
    #[arg(long = "guard-limit", global = true)]
    pub guard_limit: Option<u64>,
    #[arg(long = "override-guard", global = true)]
    pub override_guard: bool,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum)]
    pub solver: Option<Solver>,
    /// Seed for the sampled parts of verify-all
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// key=value file with defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub rank: Rank,
    pub depth: Option<usize>,
    pub n_max: usize,
    pub guard: Guard,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub solver: Solver,
    pub seed: u64,
}

impl RunConfig {
    pub fn k(&self) -> usize {
        self.depth.unwrap_or(1)
    }
}

const KEYS: [&str; 9] = ["N", "k", "n-max", "guard-limit", "override-guard", "out", "format", "solver", "seed"];

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key=value, got {:?}", i + 1, raw);
        };
        let key = key.trim();
        if !KEYS.contains(&key) {
            bail!("config line {}: unknown key {:?}", i + 1, key);
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn from_file<T: std::str::FromStr>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    file.get(key)
        .map(|v| v.parse::<T>().map_err(|_| anyhow::anyhow!("config: bad value {:?} for {}", v, key)))
        .transpose()
}

fn enum_from_file<T: ValueEnum>(file: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    file.get(key)
        .map(|v| T::from_str(v, false).map_err(|_| anyhow::anyhow!("config: bad value {:?} for {}", v, key)))
        .transpose()
}

impl GlobalOpts {
    /// Flags win over file values, file values over defaults.
    pub fn resolve(&self, default_n_max: usize) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let n = self.rank.or(from_file(&file, "N")?).unwrap_or(2);
        let rank = Rank::new(n)?;
        let depth = self.k.or(from_file(&file, "k")?);
        if depth == Some(0) {
            bail!("k must be at least 1");
        }
        let limit = self.guard_limit.or(from_file(&file, "guard-limit")?).unwrap_or(DEFAULT_GUARD_LIMIT);
        if limit == 0 {
            bail!("guard limit must be at least 1");
        }
        let override_guard = self.override_guard || from_file(&file, "override-guard")?.unwrap_or(false);
        Ok(RunConfig {
            rank,
            depth,
            n_max: self.n_max.or(from_file(&file, "n-max")?).unwrap_or(default_n_max),
            guard: Guard { limit, override_guard },
            out: self.out.clone().or(from_file(&file, "out")?),
            format: self.format.or(enum_from_file(&file, "format")?).unwrap_or(Format::Csv),
            solver: self.solver.or(enum_from_file(&file, "solver")?).unwrap_or(Solver::Both),
            seed: self.seed.or(from_file(&file, "seed")?).unwrap_or(DEFAULT_SEED),
        })
    }
}
