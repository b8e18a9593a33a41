//! Parameter sweeps: one model parameter varied over a value list, several
//! seeded replicates per value, one CCDF file and one summary row per
//! (value, replicate).

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hidden_tree_core::generator::Generator;
use hidden_tree_core::metrics::{compute_report, degree_ccdf, MetricsReport, ReportConfig};
use hidden_tree_core::{seed, ModelParams};
use rayon::prelude::*;

use crate::config::{variant_name, AnalysisArgs, ConfigFile, ModelArgs};
use crate::error::{CliError, CliResult};
use crate::formats;
use crate::manifest::{digest_file, ReplicateSeeds, RunManifest};
use crate::parallel;

/// File name of the summary table inside the output directory.
pub const SUMMARY_FILE: &str = "summary.tsv";
/// File name of the sweep manifest.
pub const MANIFEST_FILE: &str = "manifest.json";
/// Header of the summary table.
pub const SUMMARY_HEADER: &str =
    "value\treplicate\tgamma\tr_squared\tavg_clustering\tavg_shortest_path\tmax_in_degree\tgiant_fraction";

/// Which parameter is swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    /// Node count `N`.
    Nodes,
    /// Branching factor `n`.
    Branching,
    /// Activity.
    Activity,
}

impl FromStr for SweepKind {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "nodes" => Ok(Self::Nodes),
            "branching" => Ok(Self::Branching),
            "activity" => Ok(Self::Activity),
            other => Err(CliError::usage(format!(
                "invalid sweep kind `{other}` (nodes, branching or activity)"
            ))),
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nodes => "nodes",
            Self::Branching => "branching",
            Self::Activity => "activity",
        })
    }
}

/// A fully resolved sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub kind: SweepKind,
    /// The two non-swept parameters plus seeds and flags. The swept field is
    /// overwritten per point.
    pub base: ModelParams,
    pub values: Vec<f64>,
    pub replicates: usize,
    /// Fit and sampling settings; the sampling seed is replaced per replicate.
    pub analysis: ReportConfig,
    pub out_dir: PathBuf,
}

/// Sweep flags (everything may also come from `--config`).
#[derive(Debug, Clone, Default, clap::Args)]
pub struct SweepArgs {
    /// key=value config file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Parameter to sweep: nodes, branching or activity.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Comma-separated values.
    #[arg(long)]
    pub values: Option<String>,
    /// Replicates per value.
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub analysis: AnalysisArgs,
}

fn parse_values(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::usage(format!("invalid sweep value `{t}`")))
        })
        .collect()
}

impl SweepArgs {
    /// Merges flags over the config file and validates.
    pub fn resolve(&self) -> CliResult<SweepConfig> {
        let file = match &self.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let kind: SweepKind = file
            .pick(self.sweep.clone(), "sweep")?
            .ok_or_else(|| CliError::usage("missing --sweep"))?
            .parse()?;
        let values = parse_values(
            &file
                .pick(self.values.clone(), "values")?
                .ok_or_else(|| CliError::usage("missing --values"))?,
        )?;
        let replicates = file.pick(self.replicates, "replicates")?.unwrap_or(1);
        let out_dir = file
            .pick(self.out.clone(), "out")?
            .ok_or_else(|| CliError::usage("missing --out"))?;
        // The swept parameter may be absent; fill a placeholder so the base validates.
        let mut model = self.model.clone();
        if kind == SweepKind::Nodes && model.nodes.is_none() && file.raw("nodes").is_none() {
            model.nodes = Some(1);
        }
        let base = model.resolve(&file)?;
        let analysis = self.analysis.resolve(&file, base.seed)?;
        let config = SweepConfig {
            kind,
            base,
            values,
            replicates,
            analysis,
            out_dir,
        };
        config.validate()?;
        Ok(config)
    }
}

impl SweepConfig {
    /// Checks the value list and every point's parameters.
    pub fn validate(&self) -> CliResult<()> {
        if self.values.is_empty() {
            return Err(CliError::usage("sweep value list is empty"));
        }
        if self.replicates == 0 {
            return Err(CliError::usage("replicates must be at least 1"));
        }
        for &v in &self.values {
            self.point_params(v, 0)?;
        }
        Ok(())
    }

    /// Parameters of replicate `replicate` at swept value `value`.
    pub fn point_params(&self, value: f64, replicate: usize) -> CliResult<ModelParams> {
        let mut p = self.base;
        match self.kind {
            SweepKind::Nodes => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= usize::MAX as f64) {
                    return Err(CliError::usage(format!(
                        "node count must be a positive integer, got {value}"
                    )));
                }
                p.tree.node_count = value as usize;
            }
            SweepKind::Branching => p.tree.branching = value,
            SweepKind::Activity => p.activity = value,
        }
        let seeds = self.replicate_seeds(replicate);
        p.seed = seeds.seed;
        p.tree.seed = seeds.tree_seed;
        p.validate()?;
        Ok(p)
    }

    /// Seeds of replicate `replicate`, derived from the base seeds.
    pub fn replicate_seeds(&self, replicate: usize) -> ReplicateSeeds {
        ReplicateSeeds {
            replicate,
            seed: seed::derive(self.base.seed, replicate as u64),
            tree_seed: seed::derive(self.base.tree.seed, replicate as u64),
        }
    }

    /// File stem for one point, e.g. `activity-0.4-r2`.
    pub fn point_stem(&self, value: f64, replicate: usize) -> String {
        format!("{}-{}-r{}", self.kind, value, replicate)
    }

    fn settings(&self) -> Vec<(String, String)> {
        let values: Vec<String> = self.values.iter().map(f64::to_string).collect();
        vec![
            ("sweep".into(), self.kind.to_string()),
            ("values".into(), values.join(",")),
            ("replicates".into(), self.replicates.to_string()),
            ("variant".into(), variant_name(self.base.variant).into()),
            ("fit-kmin".into(), self.analysis.fit.k_min.to_string()),
            (
                "fit-kmax".into(),
                self.analysis
                    .fit
                    .k_max
                    .map_or_else(|| "auto".into(), |k| k.to_string()),
            ),
            (
                "path-samples".into(),
                format!("{:?}", self.analysis.path_sampling),
            ),
        ]
    }
}

/// One finished sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub replicate: usize,
    pub seeds: ReplicateSeeds,
    pub report: MetricsReport,
    /// Files written for this point, relative to the output directory.
    pub files: Vec<String>,
}

impl SweepRow {
    /// Tab-separated summary line (no newline).
    pub fn summary_line(&self) -> String {
        let r = &self.report;
        let (gamma, r2) = match &r.fit {
            Some(f) => (format!("{:.6}", f.gamma), format!("{:.6}", f.r_squared)),
            None => ("NA".into(), "NA".into()),
        };
        format!(
            "{}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{}\t{:.6}",
            self.value,
            self.replicate,
            gamma,
            r2,
            r.avg_clustering,
            r.avg_shortest_path,
            r.max_in_degree,
            r.giant_component_fraction
        )
    }
}

fn run_point(config: &SweepConfig, value: f64, replicate: usize) -> CliResult<SweepRow> {
    let params = config.point_params(value, replicate)?;
    let gen = Generator::new(params)?;
    let (graph, _) = parallel::generate(&gen);
    let analysis = ReportConfig {
        seed: params.seed,
        ..config.analysis
    };
    let report = compute_report(&graph, &analysis).map_err(CliError::Analysis)?;
    let ccdf = degree_ccdf(&graph.in_degree_sequence()).map_err(CliError::Analysis)?;

    let stem = config.point_stem(value, replicate);
    let edges = format!("{stem}.edges");
    let ccdf_name = format!("{stem}.ccdf.tsv");
    formats::write_file(&config.out_dir.join(&edges), |w| {
        formats::write_edge_list(w, &graph)
    })?;
    formats::write_file(&config.out_dir.join(&ccdf_name), |w| {
        formats::write_ccdf(w, &ccdf)
    })?;
    Ok(SweepRow {
        value,
        replicate,
        seeds: config.replicate_seeds(replicate),
        report,
        files: vec![edges, ccdf_name],
    })
}

/// Runs every (value, replicate) point on `threads` workers, then writes the
/// summary table and manifest. Rows come back sorted by (value, replicate).
pub fn run_sweep(config: &SweepConfig, threads: usize) -> CliResult<Vec<SweepRow>> {
    config.validate()?;
    std::fs::create_dir_all(&config.out_dir).map_err(|e| CliError::io(&config.out_dir, e))?;
    let mut jobs: Vec<(f64, usize)> = config
        .values
        .iter()
        .flat_map(|&v| (0..config.replicates).map(move |r| (v, r)))
        .collect();
    jobs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    jobs.dedup();

    let results: Vec<CliResult<SweepRow>> = parallel::pool(threads)?.install(|| {
        jobs.par_iter()
            .map(|&(v, r)| run_point(config, v, r))
            .collect()
    });
    let rows = results.into_iter().collect::<CliResult<Vec<_>>>()?;

    let summary_path = config.out_dir.join(SUMMARY_FILE);
    formats::write_file(&summary_path, |w| {
        use std::io::Write;
        writeln!(w, "{SUMMARY_HEADER}")?;
        for row in &rows {
            writeln!(w, "{}", row.summary_line())?;
        }
        w.flush()
    })?;

    let mut files = Vec::new();
    for row in &rows {
        for f in &row.files {
            files.push(digest_file(&config.out_dir, f)?);
        }
    }
    files.push(digest_file(&config.out_dir, SUMMARY_FILE)?);
    let manifest = RunManifest {
        tool: crate::tool_version(),
        command: "sweep".into(),
        params: config.base,
        settings: config.settings(),
        seeds: (0..config.replicates)
            .map(|r| config.replicate_seeds(r))
            .collect(),
        files,
    };
    manifest.write(&config.out_dir.join(MANIFEST_FILE))?;
    Ok(rows)
}

/// Reads a summary table back as rows of fields (header excluded).
pub fn read_summary(path: &Path) -> CliResult<Vec<Vec<String>>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SUMMARY_HEADER => {}
        _ => return Err(CliError::parse(path, 1, "missing summary header")),
    }
    Ok(lines
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect())
}
