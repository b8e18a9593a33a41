use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hidden_tree_cli::commands::{self, Baseline, ComponentSelector};
use hidden_tree_cli::config::{AnalysisArgs, ConfigFile, ModelArgs};
use hidden_tree_cli::sweep::SweepArgs;
use hidden_tree_cli::{formats, CliError, CliResult};
use hidden_tree_core::baselines::{BaParams, ErParams};

/// Hidden-tree network generator and analysis toolkit.
#[derive(Debug, Parser)]
#[command(name = "hidden-tree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate one graph and write its edge list.
    Generate {
        /// key=value config file; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        /// Edge-list output (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also dump the hidden tree here.
        #[arg(long)]
        tree_out: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Compute the metrics report and CCDF of an edge list.
    Analyze {
        /// Edge-list file.
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        analysis: AnalysisArgs,
        /// Seed for shortest-path source sampling.
        #[arg(long)]
        seed: Option<u64>,
        /// Output prefix (defaults to the input path without extension).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a parameter sweep.
    Sweep {
        #[command(flatten)]
        args: SweepArgs,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Export a connected component of an edge list as DOT.
    ExportDot {
        /// Edge-list file.
        input: PathBuf,
        /// `giant` or `node:<id>`.
        #[arg(long, default_value = "giant")]
        component: String,
        /// DOT output file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate an Erdős–Rényi or Barabási–Albert reference graph.
    Baseline {
        #[command(subcommand)]
        kind: BaselineKind,
    },
    /// Check the digests recorded in a manifest.
    Verify { manifest: PathBuf },
}

#[derive(Debug, Subcommand)]
enum BaselineKind {
    /// G(N, p).
    Er {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Barabási–Albert growth from an m0-clique.
    Ba {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        m: usize,
        /// Seed clique size (defaults to m).
        #[arg(long)]
        m0: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load_config(path: &Option<PathBuf>) -> CliResult<ConfigFile> {
    match path {
        Some(p) => ConfigFile::load(p),
        None => Ok(ConfigFile::default()),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Generate {
            config,
            model,
            out,
            tree_out,
            threads,
        } => {
            let file = load_config(&config)?;
            let params = model.resolve(&file)?;
            let out = file.pick(out, "out")?;
            let done = commands::generate(params, out.as_deref(), tree_out.as_deref(), threads)?;
            if let Some(m) = done.manifest {
                eprintln!(
                    "wrote {} edges on {} nodes (manifest {})",
                    done.graph.edge_count(),
                    done.graph.node_count(),
                    m.display()
                );
            }
        }
        Command::Analyze {
            input,
            config,
            analysis,
            seed,
            out,
        } => {
            let file = load_config(&config)?;
            let seed = file.pick(seed, "seed")?.unwrap_or(0);
            let report_config = analysis.resolve(&file, seed)?;
            let prefix = out.unwrap_or_else(|| commands::default_prefix(&input));
            let (report, _) = commands::analyze(&input, &report_config, &prefix)?;
            print!("{}", formats::report_to_kv(&report));
        }
        Command::Sweep { args, threads } => {
            let config = args.resolve()?;
            let rows = commands::sweep(&config, threads)?;
            println!("{}", hidden_tree_cli::sweep::SUMMARY_HEADER);
            for row in &rows {
                println!("{}", row.summary_line());
            }
        }
        Command::ExportDot {
            input,
            component,
            out,
        } => {
            let selector: ComponentSelector = component.parse()?;
            let c = commands::export_dot(&input, selector, &out)?;
            eprintln!(
                "wrote component with {} nodes and {} edges",
                c.size(),
                c.graph.edge_count()
            );
        }
        Command::Baseline { kind } => {
            let (which, out) = match kind {
                BaselineKind::Er {
                    nodes,
                    p,
                    seed,
                    out,
                } => (
                    Baseline::Er(ErParams {
                        node_count: nodes,
                        edge_probability: p,
                        seed,
                    }),
                    out,
                ),
                BaselineKind::Ba {
                    nodes,
                    m,
                    m0,
                    seed,
                    out,
                } => (
                    Baseline::Ba(BaParams {
                        node_count: nodes,
                        edges_per_new_node: m,
                        seed_size: m0.unwrap_or(m),
                        seed,
                    }),
                    out,
                ),
            };
            let g = commands::baseline(which, &out)?;
            eprintln!("wrote {} undirected edges", g.edge_count());
        }
        Command::Verify { manifest } => {
            let bad = commands::verify(&manifest)?;
            if !bad.is_empty() {
                for p in &bad {
                    eprintln!("digest mismatch: {}", p.display());
                }
                return Err(CliError::Verification(bad.len()));
            }
            eprintln!("all digests match");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
