//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::{BTreeMap, VecDeque};
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hidden_tree_core::baselines::{generate_ba, generate_er, BaParams, ErParams};
use hidden_tree_core::generator::generate_with_trace;
use hidden_tree_core::metrics::{
    avg_clustering, avg_shortest_path, compute_report, degree_ccdf, fit_with_bounds, FitBounds,
    PathSampling, ReportConfig,
};
use hidden_tree_core::{generate, HiddenTree, ModelParams, TreeParams, UndirectedGraph};

const R2_MIN: f64 = 0.98;
const SLOPE_MAX: f64 = -0.3;
const SE_BOUND: f64 = 4.0;
const ORACLE_TOL: f64 = 1e-12;
const BA_GAMMA: (f64, f64) = (2.5, 3.5);
const ER_DISPERSION: (f64, f64) = (0.9, 1.1);
const ER_R2_MAX: f64 = 0.95;

type Outcome = Result<String, String>;
/// Name, check and runtime budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn params(nodes: usize, branching: f64, activity: f64, seed: u64) -> ModelParams {
    ModelParams::new(TreeParams::new(nodes, branching, seed), activity, seed)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn strictly(xs: &[f64], increasing: bool) -> bool {
    xs.windows(2)
        .all(|w| if increasing { w[0] < w[1] } else { w[0] > w[1] })
}

fn linearity_gate(points: &[(f64, ModelParams)], label: &str) -> Outcome {
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    for (value, p) in points {
        let g = generate(p).map_err(|e| e.to_string())?;
        let ccdf = degree_ccdf(&g.in_degree_sequence()).map_err(|e| e.to_string())?;
        let fit = fit_with_bounds(&ccdf, FitBounds::default()).map_err(|e| e.to_string())?;
        let pass = fit.r_squared >= R2_MIN && fit.ccdf_slope < SLOPE_MAX;
        lines.push(format!(
            "{label}={value} seed={} r2={:.4} slope={:.3} k=[{},{}]",
            p.seed, fit.r_squared, fit.ccdf_slope, fit.k_min, fit.k_max
        ));
        if !pass {
            bad.push(format!("{label}={value}/seed={}", p.seed));
        }
    }
    let detail = lines.join("; ");
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("below gate: {}; {detail}", bad.join(", ")))
    }
}

fn c1_linearity_branching() -> Outcome {
    let mut points = Vec::new();
    for n in [1.5, 2.0, 2.5, 5.5, 7.5] {
        for seed in 1..=3 {
            points.push((n, params(10_000, n, 0.4, seed)));
        }
    }
    linearity_gate(&points, "n")
}

fn c2_linearity_activity() -> Outcome {
    let mut points = Vec::new();
    for a in [0.08, 0.16, 0.32, 0.64, 1.28] {
        for seed in 1..=3 {
            points.push((a, params(10_000, 2.0, a, seed)));
        }
    }
    linearity_gate(&points, "activity")
}

fn c3_cutoff() -> Outcome {
    let mut means = Vec::new();
    for n in [1000, 5000, 20_000] {
        let maxes: Vec<f64> = (1..=5)
            .map(|s| generate(&params(n, 2.0, 0.4, s)).map(|g| g.max_in_degree() as f64))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        means.push(mean(&maxes));
    }
    let detail = format!("mean max in-degree {means:?} for N=[1000, 5000, 20000]");
    if strictly(&means, true) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c4_clustering_and_paths() -> Outcome {
    let config = ReportConfig {
        path_sampling: PathSampling::All,
        ..ReportConfig::default()
    };
    let (mut cc, mut asp) = (Vec::new(), Vec::new());
    for a in [0.04, 0.4, 2.0] {
        let (mut c, mut l) = (Vec::new(), Vec::new());
        for seed in 1..=10 {
            let g = generate(&params(300, 2.0, a, seed)).map_err(|e| e.to_string())?;
            let r = compute_report(&g, &config).map_err(|e| e.to_string())?;
            c.push(r.avg_clustering);
            l.push(r.avg_shortest_path);
        }
        cc.push(mean(&c));
        asp.push(mean(&l));
    }
    let detail = format!(
        "activity=[0.04, 0.4, 2.0] clustering={:.4?} avg_path={:.4?}",
        cc, asp
    );
    if strictly(&cc, true) && strictly(&asp, false) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c5_selection_mean() -> Outcome {
    let n = 10_000;
    let mut lines = Vec::new();
    let mut ok = true;
    for a in [0.4, 1.28, 2.0] {
        let (_, trace) = generate_with_trace(&params(n, 2.0, a, 17)).map_err(|e| e.to_string())?;
        let m = trace.mean_selections(0..n);
        let frac = a - a.floor();
        let se = (frac * (1.0 - frac) / n as f64).sqrt();
        let z = if se > 0.0 {
            (m - a).abs() / se
        } else if m == a {
            0.0
        } else {
            f64::INFINITY
        };
        ok &= z <= SE_BOUND;
        lines.push(format!("activity={a} mean={m:.4} |z|={z:.2}"));
    }
    let detail = lines.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn tree_bfs_path(t: &HiddenTree, from: usize, to: usize) -> Vec<usize> {
    let n = t.node_count();
    let mut adj = vec![Vec::new(); n];
    for v in 1..n {
        let p = t.parent(v).unwrap();
        adj[v].push(p);
        adj[p].push(v);
    }
    let mut prev = vec![usize::MAX; n];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn c6_path_oracle() -> Outcome {
    let mut pairs = 0usize;
    for i in 0..50u64 {
        let nodes = 1 + (i as usize * 37 + 11) % 200;
        let branching = 1.0 + 3.0 * (i as f64 / 49.0);
        let t = HiddenTree::build(&TreeParams::new(nodes, branching, 500 + i))
            .map_err(|e| e.to_string())?;
        for u in 0..nodes {
            for v in 0..nodes {
                let got = t.path_between(u, v).map_err(|e| e.to_string())?;
                if got != tree_bfs_path(&t, u, v) {
                    return Err(format!(
                        "tree {i} (N={nodes}, n={branching:.3}): pair ({u},{v})"
                    ));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("50 trees, {pairs} ordered pairs agree"))
}

fn matrix(g: &UndirectedGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut m = vec![vec![false; n]; n];
    for (a, b) in g.edges() {
        m[a][b] = true;
        m[b][a] = true;
    }
    m
}

fn clustering_by_enumeration(g: &UndirectedGraph) -> f64 {
    let m = matrix(g);
    let n = m.len();
    let mut total = 0.0;
    for v in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| m[v][u]).collect();
        let k = nb.len();
        if k < 2 {
            continue;
        }
        let mut closed = 0u64;
        for i in 0..k {
            for j in i + 1..k {
                if m[nb[i]][nb[j]] {
                    closed += 1;
                }
            }
        }
        total += closed as f64 / (k * (k - 1) / 2) as f64;
    }
    total / n as f64
}

fn asp_by_floyd_warshall(g: &UndirectedGraph) -> f64 {
    let m = matrix(g);
    let n = m.len();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if m[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let sum: u64 = d.iter().flatten().sum();
    sum as f64 / (n * (n - 1)) as f64
}

fn c7_metric_oracles() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    let mut checked_paths = 0;
    for i in 0..100u64 {
        let nodes = 3 + (i as usize * 17) % 48;
        let p = [0.08, 0.2, 0.45, 0.9][i as usize % 4];
        let g = generate_er(&ErParams {
            node_count: nodes,
            edge_probability: p,
            seed: 900 + i,
        })
        .map_err(|e| e.to_string())?;
        let dc = (avg_clustering(&g) - clustering_by_enumeration(&g)).abs();
        worst.0 = worst.0.max(dc);
        let giant = g.giant_component().graph;
        if giant.node_count() >= 2 {
            let fast =
                avg_shortest_path(&giant, PathSampling::All, 0).map_err(|e| e.to_string())?;
            worst.1 = worst.1.max((fast - asp_by_floyd_warshall(&giant)).abs());
            checked_paths += 1;
        }
    }
    let detail = format!(
        "100 graphs, max |dC|={:.1e}, max |dL|={:.1e} over {checked_paths} components",
        worst.0, worst.1
    );
    if worst.0 <= ORACLE_TOL && worst.1 <= ORACLE_TOL {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c8_ba_pipeline() -> Outcome {
    let g = generate_ba(&BaParams {
        node_count: 10_000,
        edges_per_new_node: 2,
        seed_size: 2,
        seed: 8,
    })
    .map_err(|e| e.to_string())?;
    let ccdf = degree_ccdf(&g.degree_sequence()).map_err(|e| e.to_string())?;
    let fit = fit_with_bounds(&ccdf, FitBounds::default()).map_err(|e| e.to_string())?;
    let detail = format!("gamma={:.3} r2={:.4}", fit.gamma, fit.r_squared);
    if (BA_GAMMA.0..=BA_GAMMA.1).contains(&fit.gamma) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c9_er_contrast() -> Outcome {
    let n = 5000;
    let g = generate_er(&ErParams {
        node_count: n,
        edge_probability: 0.002,
        seed: 9,
    })
    .map_err(|e| e.to_string())?;
    let deg: Vec<f64> = g.degree_sequence().iter().map(|&d| d as f64).collect();
    let m = mean(&deg);
    let var = deg.iter().map(|d| (d - m).powi(2)).sum::<f64>() / n as f64;
    let ratio = var / m;
    let ccdf = degree_ccdf(&g.degree_sequence()).map_err(|e| e.to_string())?;
    let fit = fit_with_bounds(&ccdf, FitBounds::default()).map_err(|e| e.to_string())?;
    let detail = format!("variance/mean={ratio:.4} r2={:.4}", fit.r_squared);
    if (ER_DISPERSION.0..=ER_DISPERSION.1).contains(&ratio) && fit.r_squared < ER_R2_MAX {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dir_contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

fn c10_determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = tmp.path().join("sweep.cfg");
    fs::write(
        &cfg,
        "sweep = activity\nvalues = 0.2, 0.8, 1.6\nreplicates = 2\nnodes = 3000\nbranching = 2.5\nseed = 42\npath-samples = 32\n",
    )
    .map_err(|e| e.to_string())?;
    let mut runs = Vec::new();
    for (i, threads) in ["1", "4"].iter().enumerate() {
        let out = tmp.path().join(format!("run{i}"));
        let status = Command::new(env!("CARGO_BIN_EXE_hidden-tree"))
            .args(["sweep", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .args(["--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(String::from_utf8_lossy(&status.stderr).into_owned());
        }
        runs.push(dir_contents(&out));
    }
    let names: Vec<&String> = runs[0].keys().collect();
    let edges = names.iter().filter(|n| n.ends_with(".edges")).count();
    let differing: Vec<&&String> = names
        .iter()
        .filter(|n| runs[1].get(**n) != runs[0].get(**n))
        .collect();
    let detail = format!(
        "threads 1 vs 4: {} files ({edges} edge lists + summary + manifest), {} differ",
        names.len(),
        differing.len()
    );
    if differing.is_empty() && runs[0].len() == runs[1].len() && edges == 6 {
        Ok(detail)
    } else {
        Err(format!("{detail}: {differing:?}"))
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "1 power-law linearity across branching",
            c1_linearity_branching,
            120,
        ),
        (
            "2 power-law linearity across activity",
            c2_linearity_activity,
            120,
        ),
        ("3 cutoff moves right with N", c3_cutoff, 120),
        (
            "4 clustering up, path length down with activity",
            c4_clustering_and_paths,
            30,
        ),
        ("5 selection count matches activity", c5_selection_mean, 30),
        ("6 tree paths match BFS", c6_path_oracle, 30),
        ("7 metrics match brute-force oracles", c7_metric_oracles, 30),
        ("8 BA exponent through fit pipeline", c8_ba_pipeline, 30),
        (
            "9 ER degrees Poisson, power law rejected",
            c9_er_contrast,
            30,
        ),
        (
            "10 sweep outputs byte-identical across thread counts",
            c10_determinism,
            60,
        ),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match outcome {
            Ok(d) if !over => ("PASS", d),
            Ok(d) => ("FAIL", format!("over {budget}s budget; {d}")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] criterion {name} ({:.2}s): {detail}",
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
