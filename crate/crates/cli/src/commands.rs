//! Subcommand implementations, callable without going through argv.

use std::io::{self, Write};
use std::path::{Path, PathBuf};

use hidden_tree_core::baselines::{generate_ba, generate_er, BaParams, ErParams};
use hidden_tree_core::generator::{GenerationTrace, Generator};
use hidden_tree_core::metrics::{compute_report, degree_ccdf, MetricsReport, ReportConfig};
use hidden_tree_core::{Component, DirectedGraph, ModelParams, UndirectedGraph};

use crate::config::variant_name;
use crate::error::{CliError, CliResult};
use crate::formats;
use crate::manifest::{digest_file, ReplicateSeeds, RunManifest};
use crate::parallel;
use crate::sweep::{run_sweep, SweepConfig, SweepRow};

/// Result of [`generate`].
#[derive(Debug)]
pub struct Generated {
    pub graph: DirectedGraph,
    pub trace: GenerationTrace,
    /// Manifest path, when the edge list went to a file.
    pub manifest: Option<PathBuf>,
}

/// Manifest path that accompanies an output file.
pub fn manifest_path_for(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Generates one graph. Writes the edge list to `out` (stdout when `None`),
/// optionally a tree dump, and a manifest next to `out`.
pub fn generate(
    params: ModelParams,
    out: Option<&Path>,
    tree_out: Option<&Path>,
    threads: usize,
) -> CliResult<Generated> {
    let gen = Generator::new(params)?;
    let (graph, trace) = parallel::pool(threads)?.install(|| parallel::generate(&gen));
    debug_assert_eq!(
        graph.in_degree_sequence().iter().sum::<usize>(),
        graph.edge_count()
    );

    if let Some(path) = tree_out {
        formats::write_file(path, |w| formats::write_tree(w, gen.tree()))?;
    }
    let Some(out) = out else {
        let stdout = io::stdout();
        let lock = stdout.lock();
        formats::write_edge_list(io::BufWriter::new(lock), &graph)
            .map_err(|e| CliError::io(Path::new("<stdout>"), e))?;
        return Ok(Generated {
            graph,
            trace,
            manifest: None,
        });
    };
    formats::write_file(out, |w| formats::write_edge_list(w, &graph))?;

    let base = out.parent().unwrap_or(Path::new(""));
    let mut files = vec![digest_file(base, &file_name(out))?];
    if let Some(t) = tree_out {
        // Only tree dumps beside the edge list can be addressed relative to it.
        if t.parent() == out.parent() {
            files.push(digest_file(base, &file_name(t))?);
        }
    }
    let manifest_path = manifest_path_for(out);
    RunManifest {
        tool: crate::tool_version(),
        command: "generate".into(),
        params,
        settings: vec![("variant".into(), variant_name(params.variant).into())],
        seeds: vec![ReplicateSeeds {
            replicate: 0,
            seed: params.seed,
            tree_seed: params.tree.seed,
        }],
        files,
    }
    .write(&manifest_path)?;
    Ok(Generated {
        graph,
        trace,
        manifest: Some(manifest_path),
    })
}

/// Output paths written by [`analyze`].
#[derive(Debug, Clone)]
pub struct AnalysisFiles {
    pub report_txt: PathBuf,
    pub report_json: PathBuf,
    pub ccdf: PathBuf,
}

impl AnalysisFiles {
    /// `<prefix>.report.txt`, `<prefix>.report.json`, `<prefix>.ccdf.tsv`.
    pub fn with_prefix(prefix: &Path) -> Self {
        let with = |suffix: &str| {
            let mut s = prefix.as_os_str().to_os_string();
            s.push(suffix);
            PathBuf::from(s)
        };
        Self {
            report_txt: with(".report.txt"),
            report_json: with(".report.json"),
            ccdf: with(".ccdf.tsv"),
        }
    }
}

/// Default output prefix: the input path without its extension.
pub fn default_prefix(input: &Path) -> PathBuf {
    input.with_extension("")
}

/// Analyzes an edge-list file and writes report and CCDF files.
pub fn analyze(
    input: &Path,
    config: &ReportConfig,
    prefix: &Path,
) -> CliResult<(MetricsReport, AnalysisFiles)> {
    let graph = formats::load_edge_list(input)?;
    let report = compute_report(&graph, config).map_err(CliError::Analysis)?;
    let ccdf = degree_ccdf(&graph.in_degree_sequence()).map_err(CliError::Analysis)?;
    let files = AnalysisFiles::with_prefix(prefix);
    formats::write_file(&files.report_txt, |w| {
        w.write_all(formats::report_to_kv(&report).as_bytes())
    })?;
    formats::write_file(&files.report_json, |w| {
        w.write_all(formats::report_to_json(&report).as_bytes())
    })?;
    formats::write_file(&files.ccdf, |w| formats::write_ccdf(w, &ccdf))?;
    Ok((report, files))
}

/// Runs a sweep.
pub fn sweep(config: &SweepConfig, threads: usize) -> CliResult<Vec<SweepRow>> {
    run_sweep(config, threads)
}

/// Component to export as DOT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentSelector {
    /// Largest component (ties to the smallest node id).
    Giant,
    /// Component containing this node.
    Containing(usize),
}

impl std::str::FromStr for ComponentSelector {
    type Err = CliError;
    fn from_str(s: &str) -> CliResult<Self> {
        if s == "giant" {
            return Ok(Self::Giant);
        }
        s.strip_prefix("node:")
            .and_then(|n| n.parse().ok())
            .map(Self::Containing)
            .ok_or_else(|| {
                CliError::usage(format!("invalid component `{s}` (`giant` or `node:<id>`)"))
            })
    }
}

/// Selects a component of `g`.
pub fn select_component(g: &UndirectedGraph, selector: ComponentSelector) -> CliResult<Component> {
    match selector {
        ComponentSelector::Giant => Ok(g.giant_component()),
        ComponentSelector::Containing(v) => {
            if v >= g.node_count() {
                return Err(CliError::usage(format!(
                    "node {v} out of range (nodes={})",
                    g.node_count()
                )));
            }
            let (labels, _) = g.component_labels();
            let nodes: Vec<usize> = (0..g.node_count())
                .filter(|&u| labels[u] == labels[v])
                .collect();
            let graph = g.induced(&nodes);
            Ok(Component { nodes, graph })
        }
    }
}

/// Writes the selected component of an edge list's undirected projection as DOT.
pub fn export_dot(input: &Path, selector: ComponentSelector, out: &Path) -> CliResult<Component> {
    let graph = formats::load_edge_list(input)?;
    let component = select_component(&graph.undirected_projection(), selector)?;
    formats::write_file(out, |w| formats::write_dot(w, &component))?;
    Ok(component)
}

/// Baseline generator choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Baseline {
    Er(ErParams),
    Ba(BaParams),
}

/// Generates a baseline and writes it as an edge list carrying both
/// orientations of every undirected edge.
pub fn baseline(which: Baseline, out: &Path) -> CliResult<UndirectedGraph> {
    let g = match which {
        Baseline::Er(p) => generate_er(&p)?,
        Baseline::Ba(p) => generate_ba(&p)?,
    };
    formats::write_file(out, |w| formats::write_edge_list(w, &g.to_directed()))?;
    Ok(g)
}

/// Verifies a manifest, returning the files whose digest no longer matches.
pub fn verify(manifest: &Path) -> CliResult<Vec<PathBuf>> {
    RunManifest::load(manifest)?.verify(manifest)
}
