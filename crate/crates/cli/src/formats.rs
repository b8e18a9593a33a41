//! Text file formats.
//!
//! * Edge list: header `# nodes=<N> edges=<E>`, then one `src,dst` pair per
//!   line sorted by `(src, dst)`.
//! * CCDF: `k<TAB>p` per line, ascending `k`, no header.
//! * Tree dump: `node<TAB>parent<TAB>depth`, root parent written as `-1`.
//! * Report: flat `key = value` lines, or JSON.
//! * DOT: undirected `graph` with `--` edges, labels are original node ids.

use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use hidden_tree_core::metrics::{Ccdf, MetricsReport};
use hidden_tree_core::{Component, DirectedGraph, HiddenTree};

use crate::error::{CliError, CliResult};

/// Writes `g` as an edge list.
pub fn write_edge_list<W: Write>(mut w: W, g: &DirectedGraph) -> io::Result<()> {
    writeln!(w, "# nodes={} edges={}", g.node_count(), g.edge_count())?;
    for (s, d) in g.edges() {
        writeln!(w, "{s},{d}")?;
    }
    w.flush()
}

/// Parses an edge list. Errors name the offending line (1-based).
pub fn read_edge_list<R: BufRead>(reader: R, path: &Path) -> CliResult<DirectedGraph> {
    let mut lines = reader.lines().enumerate();
    let (nodes, declared) = match lines.next() {
        Some((_, line)) => {
            let line = line.map_err(|e| CliError::io(path, e))?;
            parse_header(&line).ok_or_else(|| {
                CliError::parse(path, 1, "expected header `# nodes=<N> edges=<E>`")
            })?
        }
        None => return Err(CliError::parse(path, 1, "empty file, missing header")),
    };
    let mut out = vec![Vec::new(); nodes];
    let mut count = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.map_err(|e| CliError::io(path, e))?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let (s, d) = text
            .split_once(',')
            .and_then(|(a, b)| {
                Some((
                    a.trim().parse::<usize>().ok()?,
                    b.trim().parse::<usize>().ok()?,
                ))
            })
            .ok_or_else(|| CliError::parse(path, lineno, format!("malformed edge `{text}`")))?;
        if s >= nodes || d >= nodes {
            return Err(CliError::parse(
                path,
                lineno,
                format!("node id out of range (nodes={nodes})"),
            ));
        }
        if s == d {
            return Err(CliError::parse(
                path,
                lineno,
                format!("self-loop on node {s}"),
            ));
        }
        out[s].push(d);
        count += 1;
    }
    let g = DirectedGraph::from_out_lists(out);
    if g.edge_count() != declared || count != declared {
        return Err(CliError::parse(
            path,
            1,
            format!(
                "header declares {declared} edges, file has {count} ({} distinct)",
                g.edge_count()
            ),
        ));
    }
    Ok(g)
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let rest = line.strip_prefix('#')?.trim();
    let mut nodes = None;
    let mut edges = None;
    for field in rest.split_whitespace() {
        let (k, v) = field.split_once('=')?;
        match k {
            "nodes" => nodes = Some(v.parse().ok()?),
            "edges" => edges = Some(v.parse().ok()?),
            _ => return None,
        }
    }
    Some((nodes?, edges?))
}

/// Reads an edge-list file.
pub fn load_edge_list(path: &Path) -> CliResult<DirectedGraph> {
    let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    read_edge_list(BufReader::new(file), path)
}

/// Writes the CCDF as `k<TAB>p` lines.
pub fn write_ccdf<W: Write>(mut w: W, ccdf: &Ccdf) -> io::Result<()> {
    for pt in &ccdf.points {
        writeln!(w, "{}\t{}", pt.k, pt.p)?;
    }
    w.flush()
}

/// Writes the tree as `node<TAB>parent<TAB>depth` lines.
pub fn write_tree<W: Write>(mut w: W, tree: &HiddenTree) -> io::Result<()> {
    for v in 0..tree.node_count() {
        match tree.parent(v) {
            Some(p) => writeln!(w, "{v}\t{p}\t{}", tree.depth(v))?,
            None => writeln!(w, "{v}\t-1\t{}", tree.depth(v))?,
        }
    }
    w.flush()
}

fn opt(v: Option<impl ToString>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

/// Flat `key = value` rendering of a report. Missing fit values are `NA`.
pub fn report_to_kv(r: &MetricsReport) -> String {
    let f = r.fit.as_ref();
    let rows: [(&str, String); 15] = [
        ("node_count", r.node_count.to_string()),
        ("edge_count", r.edge_count.to_string()),
        ("gamma", opt(f.map(|f| f.gamma))),
        ("ccdf_slope", opt(f.map(|f| f.ccdf_slope))),
        ("r_squared", opt(f.map(|f| f.r_squared))),
        ("fit_k_min", opt(f.map(|f| f.k_min))),
        ("fit_k_max", opt(f.map(|f| f.k_max))),
        ("fit_points", opt(f.map(|f| f.points))),
        ("gamma_mle", opt(r.gamma_mle)),
        ("avg_clustering", r.avg_clustering.to_string()),
        ("avg_shortest_path", r.avg_shortest_path.to_string()),
        ("giant_component_size", r.giant_component_size.to_string()),
        (
            "giant_component_fraction",
            r.giant_component_fraction.to_string(),
        ),
        ("max_in_degree", r.max_in_degree.to_string()),
        (
            "fit_status",
            if f.is_some() {
                "ok"
            } else {
                "insufficient_data"
            }
            .to_string(),
        ),
    ];
    let mut s = String::new();
    for (k, v) in rows {
        s.push_str(k);
        s.push_str(" = ");
        s.push_str(&v);
        s.push('\n');
    }
    s
}

/// Parses `key = value` lines back into pairs, in file order.
pub fn parse_kv(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

/// Pretty JSON rendering of a report.
pub fn report_to_json(r: &MetricsReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

/// Writes a component as an undirected DOT graph.
pub fn write_dot<W: Write>(mut w: W, c: &Component) -> io::Result<()> {
    writeln!(w, "graph giant {{")?;
    for &v in &c.nodes {
        writeln!(w, "  {v};")?;
    }
    for (a, b) in c.graph.edges() {
        writeln!(w, "  {} -- {};", c.nodes[a], c.nodes[b])?;
    }
    writeln!(w, "}}")?;
    w.flush()
}

/// Creates `path` (and its parent directories) and hands a buffered writer to `f`.
pub fn write_file<F>(path: &Path, f: F) -> CliResult<()>
where
    F: FnOnce(&mut BufWriter<fs::File>) -> io::Result<()>,
{
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    let file = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hidden_tree_core::metrics::degree_ccdf;
    use hidden_tree_core::{TreeParams, UndirectedGraph};

    fn parse(text: &str) -> CliResult<DirectedGraph> {
        read_edge_list(text.as_bytes(), Path::new("mem"))
    }

    #[test]
    fn edge_list_format() {
        let g = DirectedGraph::from_edges(3, [(2, 1), (0, 2), (2, 0)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &g).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "# nodes=3 edges=3\n0,2\n2,0\n2,1\n"
        );
        assert_eq!(parse(std::str::from_utf8(&buf).unwrap()).unwrap(), g);
        let empty = DirectedGraph::empty(7);
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &empty).unwrap();
        assert_eq!(buf, b"# nodes=7 edges=0\n");
    }

    #[test]
    fn edge_list_errors_name_lines() {
        let err = parse("# nodes=3 edges=2\n0,1\nx,2\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().contains("mem:3"));
        assert!(matches!(
            parse("nodes=3\n").unwrap_err(),
            CliError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse("# nodes=3 edges=1\n0,5\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse("# nodes=3 edges=1\n1,1\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse("# nodes=3 edges=2\n0,1\n").unwrap_err(),
            CliError::Parse { line: 1, .. }
        ));
        assert_eq!(parse("").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn ccdf_lines() {
        let c = degree_ccdf(&[1, 1, 2, 4]).unwrap();
        let mut buf = Vec::new();
        write_ccdf(&mut buf, &c).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1\t1\n2\t0.5\n4\t0.25\n");
    }

    #[test]
    fn tree_dump() {
        let t = HiddenTree::build(&TreeParams::new(4, 2.0, 0)).unwrap();
        let mut buf = Vec::new();
        write_tree(&mut buf, &t).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "0\t-1\t0\n1\t0\t1\n2\t0\t1\n3\t1\t2\n"
        );
    }

    #[test]
    fn dot_output() {
        let g = UndirectedGraph::from_edges(5, [(3, 4), (0, 1)]).unwrap();
        let g2 = UndirectedGraph::from_edges(6, [(3, 4), (4, 5), (0, 1)]).unwrap();
        let mut buf = Vec::new();
        write_dot(&mut buf, &g.giant_component()).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "graph giant {\n  0;\n  1;\n  0 -- 1;\n}\n"
        );
        let mut buf = Vec::new();
        write_dot(&mut buf, &g2.giant_component()).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("3 -- 4;") && text.contains("4 -- 5;"));
        assert!(!text.contains("0 -- 1"));
    }
}
