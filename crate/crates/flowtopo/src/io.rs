//! CSV inputs and dumps.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use flowtopo_core::filtration::FilteredCliqueComplex;
use flowtopo_core::graph::{DirectedWeightedGraph, Edge, GraphOptions};
use flowtopo_core::markov::{FlowField, ImbalanceField, RateMatrix};
use flowtopo_core::pipeline::BifurcationDiagram;

use crate::error::{CliError, CliResult};
use crate::format::fmt17;

/// One parsed data row with its 1-based line number.
struct Row {
    line: u64,
    src: usize,
    dst: usize,
    value: f64,
}

fn read_triples(path: &Path, header: [&str; 3]) -> CliResult<Vec<Row>> {
    let file = File::open(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(file);
    let parse_err = |line: u64, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut rows = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(k as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if rows.is_empty() && k == 0 && record.iter().eq(header.iter().copied()) {
            continue;
        }
        if record.len() != 3 {
            return Err(parse_err(
                line,
                format!("expected 3 fields ({}), found {}", header.join(","), record.len()),
            ));
        }
        let src = record[0]
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("invalid vertex id {:?}", &record[0])))?;
        let dst = record[1]
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("invalid vertex id {:?}", &record[1])))?;
        let value = record[2]
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v >= 0.0)
            .ok_or_else(|| parse_err(line, format!("invalid {} {:?}", header[2], &record[2])))?;
        rows.push(Row { line, src, dst, value });
    }
    Ok(rows)
}

fn vertex_count(path: &Path, rows: &[Row], num_vertices: Option<usize>) -> CliResult<usize> {
    let inferred = rows.iter().map(|r| r.src.max(r.dst) + 1).max().unwrap_or(0);
    match num_vertices {
        Some(n) => {
            if let Some(r) = rows.iter().find(|r| r.src.max(r.dst) >= n) {
                return Err(CliError::Parse {
                    path: path.to_path_buf(),
                    line: r.line,
                    message: format!("vertex {} out of range for --num-vertices {n}", r.src.max(r.dst)),
                });
            }
            Ok(n)
        }
        None if inferred == 0 => Err(CliError::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: "no edges".into(),
        }),
        None => Ok(inferred),
    }
}

fn check_pairs(path: &Path, rows: &[Row], allow_self_loops: bool) -> CliResult<()> {
    let mut seen = std::collections::BTreeMap::new();
    for r in rows {
        if r.src == r.dst && !allow_self_loops {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: r.line,
                message: format!("self-loop on vertex {}", r.src),
            });
        }
        if let Some(first) = seen.insert((r.src, r.dst), r.line) {
            return Err(CliError::Parse {
                path: path.to_path_buf(),
                line: r.line,
                message: format!("duplicate edge ({}, {}), first given on line {first}", r.src, r.dst),
            });
        }
    }
    Ok(())
}

/// Edge list `src,dst,weight` (header optional, `#` comments allowed).
pub fn read_edge_list(
    path: &Path,
    num_vertices: Option<usize>,
    allow_self_loops: bool,
) -> CliResult<DirectedWeightedGraph> {
    let rows = read_triples(path, ["src", "dst", "weight"])?;
    let n = vertex_count(path, &rows, num_vertices)?;
    check_pairs(path, &rows, allow_self_loops)?;
    Ok(DirectedWeightedGraph::with_options(
        n,
        rows.iter().map(|r| Edge::new(r.src, r.dst, r.value)),
        GraphOptions { allow_self_loops },
    )?)
}

/// Off-diagonal rates `src,dst,rate`.
pub fn read_rate_matrix(path: &Path, num_states: Option<usize>) -> CliResult<RateMatrix> {
    let rows = read_triples(path, ["src", "dst", "rate"])?;
    let n = vertex_count(path, &rows, num_states)?;
    check_pairs(path, &rows, false)?;
    Ok(RateMatrix::new(n, rows.iter().map(|r| (r.src, r.dst, r.value)))?)
}

/// Writes `src,dst,weight` with shortest round-trip weights.
pub fn write_edge_list(path: &Path, g: &DirectedWeightedGraph) -> CliResult<()> {
    let mut out = OutFile::create(path)?;
    out.line("src,dst,weight")?;
    for e in g.edges() {
        out.line(&format!("{},{},{}", e.src, e.dst, e.weight))?;
    }
    out.finish()
}

/// Buffered output file that reports its path on failure.
pub struct OutFile {
    path: PathBuf,
    inner: BufWriter<File>,
}

impl OutFile {
    pub fn create(path: &Path) -> CliResult<Self> {
        let file = File::create(path).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self {
            path: path.to_path_buf(),
            inner: BufWriter::new(file),
        })
    }

    pub fn line(&mut self, s: &str) -> CliResult<()> {
        writeln!(self.inner, "{s}").map_err(|source| CliError::Write {
            path: self.path.clone(),
            source,
        })
    }

    pub fn finish(mut self) -> CliResult<()> {
        self.inner.flush().map_err(|source| CliError::Write {
            path: self.path.clone(),
            source,
        })
    }
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_stationary(path: &Path, pi: &[f64]) -> CliResult<()> {
    let mut out = OutFile::create(path)?;
    out.line("state,pi")?;
    for (i, p) in pi.iter().enumerate() {
        out.line(&format!("{i},{}", fmt17(*p)))?;
    }
    out.finish()
}

pub fn write_flows(path: &Path, flows: &FlowField) -> CliResult<()> {
    let mut out = OutFile::create(path)?;
    out.line("src,dst,flow")?;
    for &(i, j, f) in flows.entries() {
        out.line(&format!("{i},{j},{}", fmt17(f)))?;
    }
    out.finish()
}

pub fn write_imbalance(path: &Path, delta: &ImbalanceField) -> CliResult<()> {
    let mut out = OutFile::create(path)?;
    out.line("src,dst,delta")?;
    for &(i, j, d) in delta.pairs() {
        out.line(&format!("{i},{j},{}", fmt17(d)))?;
    }
    out.finish()
}

fn read_signed_triples(path: &Path, header: &str) -> CliResult<Vec<(usize, usize, f64)>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if k == 0 && line == header {
            continue;
        }
        let bad = || CliError::Parse {
            path: path.to_path_buf(),
            line: k as u64 + 1,
            message: format!("expected {header}"),
        };
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 3 {
            return Err(bad());
        }
        out.push((
            f[0].parse().map_err(|_| bad())?,
            f[1].parse().map_err(|_| bad())?,
            f[2].parse().map_err(|_| bad())?,
        ));
    }
    Ok(out)
}

/// Reads a dump written by [`write_flows`].
pub fn read_flows(path: &Path, num_states: usize) -> CliResult<FlowField> {
    Ok(FlowField::from_entries(
        num_states,
        read_signed_triples(path, "src,dst,flow")?,
    )?)
}

/// Reads a dump written by [`write_imbalance`].
pub fn read_imbalance(path: &Path, num_states: usize) -> CliResult<ImbalanceField> {
    Ok(ImbalanceField::from_pairs(
        num_states,
        read_signed_triples(path, "src,dst,delta")?,
    )?)
}

/// `simplex,dimension,appearance_eps` in filtration order; simplices are
/// written as `-`-joined vertex lists.
pub fn write_filtration(path: &Path, filtered: &FilteredCliqueComplex) -> CliResult<()> {
    let mut out = OutFile::create(path)?;
    out.line("simplex,dimension,appearance_eps")?;
    for s in filtered.order() {
        let name: Vec<String> = s.simplex.vertices().iter().map(|v| v.to_string()).collect();
        out.line(&format!(
            "{},{},{}",
            name.join("-"),
            s.simplex.dimension(),
            fmt17(s.value)
        ))?;
    }
    out.finish()
}

/// `alpha,bar_id,dim,birth,death,essential`, one row per trace point.
pub fn write_bifurcation(path: &Path, d: &BifurcationDiagram) -> CliResult<()> {
    let mut rows: Vec<(usize, usize, String)> = Vec::new();
    for t in &d.traces {
        for p in &t.points {
            rows.push((
                p.sample,
                t.id,
                format!(
                    "{},{},1,{},{},{}",
                    fmt17(p.parameter),
                    t.id,
                    fmt17(p.birth),
                    fmt17(p.death),
                    p.essential
                ),
            ));
        }
    }
    rows.sort_by_key(|a| (a.0, a.1));
    let mut out = OutFile::create(path)?;
    out.line(&format!("{},bar_id,dim,birth,death,essential", d.parameter_name))?;
    for (_, _, r) in rows {
        out.line(&r)?;
    }
    out.finish()
}

/// Row of a bifurcation CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub parameter: f64,
    pub bar_id: usize,
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub essential: bool,
}

pub fn read_bifurcation(path: &Path) -> CliResult<Vec<TraceRow>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate().skip(1) {
        let bad = || CliError::Parse {
            path: path.to_path_buf(),
            line: k as u64 + 1,
            message: "malformed bifurcation row".into(),
        };
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(bad());
        }
        rows.push(TraceRow {
            parameter: f[0].parse().map_err(|_| bad())?,
            bar_id: f[1].parse().map_err(|_| bad())?,
            dim: f[2].parse().map_err(|_| bad())?,
            birth: f[3].parse().map_err(|_| bad())?,
            death: f[4].parse().map_err(|_| bad())?,
            essential: f[5].parse().map_err(|_| bad())?,
        });
    }
    Ok(rows)
}
