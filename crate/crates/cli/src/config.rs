//! `key = value` configuration files.
//!
//! Keys are the long flag names without the leading dashes (`nodes`,
//! `tree-seed`, `fit-kmax`, ...). Blank lines and lines starting with `#` are
//! ignored. Command-line flags always win over file values.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use hidden_tree_core::generator::Variant;
use hidden_tree_core::metrics::{FitBounds, PathSampling, ReportConfig, DEFAULT_K_MIN};
use hidden_tree_core::{ModelParams, TreeParams};

use crate::error::{CliError, CliResult};

/// Keys accepted in config files.
pub const KNOWN_KEYS: &[&str] = &[
    "nodes",
    "branching",
    "activity",
    "seed",
    "tree-seed",
    "variant",
    "include-tree-edges",
    "allow-self-selection",
    "fit-kmin",
    "fit-kmax",
    "path-samples",
    "out",
    "threads",
    "sweep",
    "values",
    "replicates",
];

/// Parsed config file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: BTreeMap<String, (usize, String)>,
    source: String,
}

impl ConfigFile {
    /// Parses config text. `source` is used in error messages.
    pub fn parse(text: &str, source: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::usage(format!("{source}:{}: expected `key = value`", idx + 1))
            })?;
            let key = k.trim().to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::usage(format!(
                    "{source}:{}: unknown key `{key}`",
                    idx + 1
                )));
            }
            entries.insert(key, (idx + 1, v.trim().to_string()));
        }
        Ok(Self {
            entries,
            source: source.to_string(),
        })
    }

    /// Reads and parses a config file.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Raw string for `key`.
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    /// Typed value for `key`.
    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| {
                CliError::usage(format!(
                    "{}:{line}: invalid value `{v}` for `{key}`",
                    self.source
                ))
            }),
        }
    }

    /// Flag value if given, else the file value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Boolean switch: set on the command line, or `true` in the file.
    pub fn switch(&self, flag: bool, key: &str) -> CliResult<bool> {
        Ok(flag || self.get::<bool>(key)?.unwrap_or(false))
    }
}

/// Parses `all` / `leaf`.
pub fn parse_variant(s: &str) -> CliResult<Variant> {
    match s {
        "all" => Ok(Variant::AllActive),
        "leaf" => Ok(Variant::LeafActive),
        other => Err(CliError::usage(format!(
            "invalid variant `{other}` (expected `all` or `leaf`)"
        ))),
    }
}

/// Name used on the command line for a variant.
pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::AllActive => "all",
        Variant::LeafActive => "leaf",
    }
}

/// Parses `auto` or an integer upper fit bound.
pub fn parse_k_max(s: &str) -> CliResult<Option<usize>> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| CliError::usage(format!("invalid fit-kmax `{s}` (integer or `auto`)")))
}

/// Parses `all` or a positive source count.
pub fn parse_path_samples(s: &str) -> CliResult<PathSampling> {
    if s == "all" {
        return Ok(PathSampling::All);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(PathSampling::Sources(k)),
        _ => Err(CliError::usage(format!(
            "invalid path-samples `{s}` (positive integer or `all`)"
        ))),
    }
}

/// Model flags as given on the command line (all optional).
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ModelArgs {
    /// Number of nodes N.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Average children per node n (>= 1).
    #[arg(long)]
    pub branching: Option<f64>,
    /// Expected destination selections per active node.
    #[arg(long)]
    pub activity: Option<f64>,
    /// Master seed for edge generation.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Seed for the hidden tree (defaults to --seed).
    #[arg(long)]
    pub tree_seed: Option<u64>,
    /// Which nodes initiate links: `all` or `leaf`.
    #[arg(long)]
    pub variant: Option<String>,
    /// Also insert every tree edge in both directions.
    #[arg(long)]
    pub include_tree_edges: bool,
    /// Keep draws where a node selects itself (no edge results either way).
    #[arg(long)]
    pub allow_self_selection: bool,
}

/// Model defaults used when neither flag nor file sets a value.
pub const DEFAULT_BRANCHING: f64 = 2.0;
/// See [`DEFAULT_BRANCHING`].
pub const DEFAULT_ACTIVITY: f64 = 0.4;
/// Default number of BFS sources for the average shortest path.
pub const DEFAULT_PATH_SAMPLES: usize = 256;

impl ModelArgs {
    /// Merges flags over `file` and validates the result.
    pub fn resolve(&self, file: &ConfigFile) -> CliResult<ModelParams> {
        let nodes = file
            .pick(self.nodes, "nodes")?
            .ok_or_else(|| CliError::usage("missing --nodes"))?;
        let branching = file
            .pick(self.branching, "branching")?
            .unwrap_or(DEFAULT_BRANCHING);
        let activity = file
            .pick(self.activity, "activity")?
            .unwrap_or(DEFAULT_ACTIVITY);
        let seed = file.pick(self.seed, "seed")?.unwrap_or(0);
        let tree_seed = file.pick(self.tree_seed, "tree-seed")?.unwrap_or(seed);
        let variant = match file.pick(self.variant.clone(), "variant")? {
            Some(v) => parse_variant(&v)?,
            None => Variant::AllActive,
        };
        let params = ModelParams {
            tree: TreeParams::new(nodes, branching, tree_seed),
            activity,
            seed,
            variant,
            allow_self_selection: file.switch(self.allow_self_selection, "allow-self-selection")?,
            include_tree_edges: file.switch(self.include_tree_edges, "include-tree-edges")?,
        };
        params.validate()?;
        Ok(params)
    }
}

/// Analysis flags.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct AnalysisArgs {
    /// Lower degree bound of the power-law fit.
    #[arg(long)]
    pub fit_kmin: Option<usize>,
    /// Upper degree bound of the fit, or `auto`.
    #[arg(long)]
    pub fit_kmax: Option<String>,
    /// BFS sources for the average shortest path, or `all`.
    #[arg(long)]
    pub path_samples: Option<String>,
}

impl AnalysisArgs {
    /// Merges flags over `file`. `seed` drives source sampling.
    pub fn resolve(&self, file: &ConfigFile, seed: u64) -> CliResult<ReportConfig> {
        let k_min = file
            .pick(self.fit_kmin, "fit-kmin")?
            .unwrap_or(DEFAULT_K_MIN);
        let k_max = match file.pick(self.fit_kmax.clone(), "fit-kmax")? {
            Some(s) => parse_k_max(&s)?,
            None => None,
        };
        let path_sampling = match file.pick(self.path_samples.clone(), "path-samples")? {
            Some(s) => parse_path_samples(&s)?,
            None => PathSampling::Sources(DEFAULT_PATH_SAMPLES),
        };
        Ok(ReportConfig {
            fit: FitBounds { k_min, k_max },
            path_sampling,
            seed,
        })
    }
}
