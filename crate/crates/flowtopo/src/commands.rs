//! Subcommand implementations.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use flowtopo_core::convection::{classify_representatives, enumerate_convection_cycles, imbalance_digraph};
use flowtopo_core::filtration::Direction;
use flowtopo_core::graph::{undirected_skeleton, DirectedWeightedGraph, UndirectedEdgeSet};
use flowtopo_core::markov::{
    ctmc_uniformize, flow_imbalance, stationary_distribution, stationary_flows, DEFAULT_MAX_ITERS,
};
use flowtopo_core::monomer::{aggregate_external_flows, monomer_transition, MonomerModel};
use flowtopo_core::persistence::PersistenceBarcode;
use flowtopo_core::pipeline::{
    analyze_chain, analyze_imbalance, analyze_transition, assemble_bifurcation, bisect_cycle_count, check_alphas,
    pagerank_barcode, AnalysisOptions, BifurcationSample, ChainAnalysis, SweepOptions,
};
use flowtopo_core::Error;

use crate::cli::{AnalysisArgs, AnalyzeArgs, CyclesArgs, DirectionArg, LayoutArg, MonomerArgs, OracleArgs, SweepArgs};
use crate::config::{InputDigest, RunConfig};
use crate::error::{CliError, CliResult};
use crate::format::fmt17;
use crate::io;
use crate::json;
use crate::oracle::{self, OracleOptions};
use crate::svg::{self, Layout};

/// Default power-iteration cap for the monomer chain, which mixes slowly
/// when internal rates are small.
pub const MONOMER_MAX_ITERS: usize = 10_000_000;

fn finite(name: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::invalid(format!("--{name} must be finite, got {x}")))
    }
}

fn analysis_options(a: &AnalysisArgs, default_iters: usize) -> CliResult<AnalysisOptions> {
    if !(a.tolerance > 0.0 && a.tolerance.is_finite()) {
        return Err(CliError::invalid("--tolerance must be positive"));
    }
    if !(a.balance_tol >= 0.0 && a.balance_tol.is_finite()) {
        return Err(CliError::invalid("--balance-tol must be non-negative"));
    }
    let max_iters = a.max_iters.unwrap_or(default_iters);
    if max_iters == 0 {
        return Err(CliError::invalid("--max-iters must be positive"));
    }
    if let Some(t) = a.drop_teleport_below {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(CliError::invalid("--drop-teleport-below must be non-negative"));
        }
    }
    Ok(AnalysisOptions {
        direction: match a.direction {
            DirectionArg::Descending => Direction::Descending,
            DirectionArg::Ascending => Direction::Ascending,
        },
        eps_a: a.eps_a.map(|x| finite("eps-a", x)).transpose()?,
        eps_b: a.eps_b.map(|x| finite("eps-b", x)).transpose()?,
        include_balanced_at_floor: a.include_balanced_at_floor,
        balance_tolerance: a.balance_tol,
        drop_teleport_below: a.drop_teleport_below,
        tolerance: a.tolerance,
        max_iters,
        with_representatives: true,
    })
}

fn base_config(command: &str, inputs: &[&Path], a: &AnalysisArgs, opts: &AnalysisOptions) -> CliResult<RunConfig> {
    Ok(RunConfig {
        command: command.into(),
        inputs: inputs.iter().map(|p| InputDigest::of(p)).collect::<CliResult<_>>()?,
        direction: Some(opts.direction.into()),
        eps_a: opts.eps_a,
        eps_b: opts.eps_b,
        tolerance: Some(opts.tolerance),
        max_iters: Some(opts.max_iters),
        flags: vec![
            format!("include_balanced_at_floor={}", a.include_balanced_at_floor),
            format!("balance_tol={}", a.balance_tol),
            format!("drop_teleport_below={:?}", a.drop_teleport_below),
        ],
        ..Default::default()
    })
}

fn out_dir(dir: &Path) -> CliResult<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    Ok(dir.to_path_buf())
}

fn check_alpha(alpha: Option<f64>) -> CliResult<()> {
    match alpha {
        Some(a) if !(a > 0.0 && a <= 1.0) => Err(CliError::invalid(format!("--alpha must lie in (0, 1], got {a}"))),
        _ => Ok(()),
    }
}

fn lattice_columns(n: usize) -> usize {
    (1..=n).find(|c| c * c >= n).unwrap_or(1)
}

fn write_chain_outputs(dir: &Path, a: &ChainAnalysis) -> CliResult<()> {
    io::write_stationary(&dir.join("stationary.csv"), &a.stationary.pi)?;
    io::write_flows(&dir.join("flows.csv"), &a.flows)?;
    io::write_imbalance(&dir.join("imbalance.csv"), &a.imbalance)?;
    json::write_barcode(&dir.join("barcode.json"), &a.barcode)
}

fn summarize(barcode: &PersistenceBarcode) -> String {
    let dim = |d| barcode.dimension(d).count();
    let essential = barcode.dimension(1).filter(|b| b.essential).count();
    format!("{} dim-0 bars, {} dim-1 bars ({} essential)", dim(0), dim(1), essential)
}

pub fn analyze(args: &AnalyzeArgs) -> CliResult<()> {
    let opts = analysis_options(&args.analysis, DEFAULT_MAX_ITERS)?;
    check_alpha(args.alpha)?;
    let input = args
        .input
        .as_deref()
        .or(args.rates.as_deref())
        .expect("clap requires one input");
    let mut cfg = base_config("analyze", &[input], &args.analysis, &opts)?;
    let (analysis, base) = if let Some(rates) = &args.rates {
        let q = io::read_rate_matrix(rates, args.num_vertices)?;
        if let Some(s) = args.rate_scale {
            finite("rate-scale", s)?;
        }
        let p = ctmc_uniformize(&q, args.rate_scale)?;
        let base = UndirectedEdgeSet::from_pairs(q.rates().iter().map(|r| (r.0, r.1)));
        (analyze_transition(&p, Some(&base), &opts)?, base)
    } else {
        let g = io::read_edge_list(input, args.num_vertices, args.allow_self_loops)?;
        (
            analyze_chain(&g, args.alpha, args.dangling_patch, &opts)?,
            undirected_skeleton(&g),
        )
    };
    cfg.flags.extend([
        format!("input_kind={}", if args.rates.is_some() { "rates" } else { "edges" }),
        format!("num_vertices={:?}", args.num_vertices),
        format!("allow_self_loops={}", args.allow_self_loops),
        format!("dangling_patch={}", args.dangling_patch),
        format!("alpha={:?}", args.alpha),
        format!("rate_scale={:?}", args.rate_scale),
        format!("min_lifespan={}", args.plot.min_lifespan),
        format!("sample_eps={:?}", args.plot.sample_eps),
    ]);
    let prov = cfg.provenance();
    let dir = out_dir(&args.out_dir)?;
    write_chain_outputs(&dir, &analysis)?;
    io::write_text(
        &dir.join("barcode.svg"),
        &svg::barcode_svg(&analysis.barcode, args.plot.min_lifespan, &args.plot.sample_eps, &prov),
    )?;
    if args.dump_filtration {
        io::write_filtration(&dir.join("filtration.csv"), &analysis.filtered)?;
        json::write_complex(&dir.join("complex.json"), analysis.filtered.complex())?;
    }
    if args.plot.imbalance_svg {
        let n = analysis.imbalance.num_states();
        let layout = match args.plot.layout {
            LayoutArg::Circle => Layout::Circle,
            LayoutArg::Lattice => Layout::Lattice {
                columns: args.plot.lattice_columns.unwrap_or_else(|| lattice_columns(n)),
            },
        };
        io::write_text(
            &dir.join("imbalance.svg"),
            &svg::imbalance_svg(
                &analysis.imbalance,
                Some(&base),
                args.plot.include_teleport_edges,
                opts.balance_tolerance,
                layout,
                &prov,
            ),
        )?;
    }
    println!(
        "{} states, {} iterations; {}; outputs in {}",
        analysis.imbalance.num_states(),
        analysis.stationary.iterations,
        summarize(&analysis.barcode),
        dir.display()
    );
    Ok(())
}

fn parse_grid(s: &str, name: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::invalid(format!("--{name}: cannot parse {t:?}")))
        })
        .collect()
}

fn alpha_grid(args: &SweepArgs) -> CliResult<Vec<f64>> {
    let grid = match &args.alphas {
        Some(s) => parse_grid(s, "alphas")?,
        None => {
            let n = args.alpha_steps;
            let (lo, hi) = (args.alpha_min, args.alpha_max);
            match n {
                0 => Vec::new(),
                1 => vec![lo],
                _ => (0..n)
                    .map(|k| {
                        if k == n - 1 {
                            hi
                        } else {
                            lo + (hi - lo) * k as f64 / (n - 1) as f64
                        }
                    })
                    .collect(),
            }
        }
    };
    check_alphas(&grid).map_err(|e| match e {
        Error::InvalidParameter(m) => CliError::invalid(m),
        e => e.into(),
    })?;
    Ok(grid)
}

#[derive(Serialize)]
struct Bisection {
    alpha_lo: f64,
    alpha_hi: f64,
    count_lo: usize,
    count_hi: usize,
}

pub fn pagerank_sweep(args: &SweepArgs) -> CliResult<()> {
    let opts = analysis_options(&args.analysis, DEFAULT_MAX_ITERS)?;
    let alphas = alpha_grid(args)?;
    if !(args.min_lifespan >= 0.0 && args.min_lifespan.is_finite()) {
        return Err(CliError::invalid("--min-lifespan must be non-negative"));
    }
    if !(0.0..=1.0).contains(&args.match_threshold) {
        return Err(CliError::invalid("--match-threshold must lie in [0, 1]"));
    }
    if let Some(t) = args.bisect_tol {
        if !(t > 0.0) {
            return Err(CliError::invalid("--bisect-tol must be positive"));
        }
    }
    let g = io::read_edge_list(&args.graph.input, args.graph.num_vertices, args.graph.allow_self_loops)?;
    let sweep = SweepOptions {
        analysis: opts.clone(),
        dangling_patch: args.graph.dangling_patch,
        min_lifespan: args.min_lifespan,
        match_threshold: args.match_threshold,
    };
    let mut cfg = base_config("pagerank-sweep", &[&args.graph.input], &args.analysis, &opts)?;
    cfg.alphas = alphas.clone();
    cfg.flags.extend([
        format!("num_vertices={:?}", args.graph.num_vertices),
        format!("allow_self_loops={}", args.graph.allow_self_loops),
        format!("dangling_patch={}", args.graph.dangling_patch),
        format!("min_lifespan={}", args.min_lifespan),
        format!("match_threshold={}", args.match_threshold),
        format!("bisect_tol={:?}", args.bisect_tol),
    ]);

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::invalid(format!("--threads: {e}")))?;
    let samples = pool.install(|| {
        alphas
            .par_iter()
            .map(|&a| {
                Ok(BifurcationSample {
                    parameter: a,
                    barcode: pagerank_barcode(&g, a, &sweep)?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()
    })?;
    let diagram = assemble_bifurcation("alpha", samples, sweep.min_lifespan, sweep.match_threshold)?;

    let dir = out_dir(&args.out_dir)?;
    let prov = cfg.provenance();
    io::write_bifurcation(&dir.join("bifurcation.csv"), &diagram)?;
    io::write_text(&dir.join("bifurcation.svg"), &svg::bifurcation_svg(&diagram, &prov))?;
    if args.barcodes {
        for (k, s) in diagram.samples.iter().enumerate() {
            json::write_barcode(&dir.join(format!("barcode_alpha_{k:03}.json")), &s.barcode)?;
        }
    }
    let counts = diagram.cycle_counts();
    if let Some(tol) = args.bisect_tol {
        let mut out = io::OutFile::create(&dir.join("bisection.csv"))?;
        out.line("alpha_lo,alpha_hi,count_lo,count_hi")?;
        for k in 0..counts.len().saturating_sub(1) {
            if counts[k] != counts[k + 1] {
                let (lo, hi) = bisect_cycle_count(&g, alphas[k], alphas[k + 1], tol, &sweep)?;
                let b = Bisection {
                    alpha_lo: lo,
                    alpha_hi: hi,
                    count_lo: counts[k],
                    count_hi: counts[k + 1],
                };
                out.line(&format!(
                    "{},{},{},{}",
                    fmt17(b.alpha_lo),
                    fmt17(b.alpha_hi),
                    b.count_lo,
                    b.count_hi
                ))?;
                println!(
                    "bar count {} -> {} between alpha {lo:.6} and {hi:.6}",
                    b.count_lo, b.count_hi
                );
            }
        }
        out.finish()?;
    }
    println!(
        "{} alphas, {} traces, bar counts {:?}; outputs in {}",
        alphas.len(),
        diagram.traces.len(),
        counts,
        dir.display()
    );
    Ok(())
}

/// Composite and aggregated analysis of one monomer model.
pub struct MonomerRun {
    pub composite: ChainAnalysisParts,
    pub aggregated: flowtopo_core::markov::FlowField,
    pub delta: flowtopo_core::markov::ImbalanceField,
    pub barcode: PersistenceBarcode,
}

pub struct ChainAnalysisParts {
    pub pi: Vec<f64>,
    pub flows: flowtopo_core::markov::FlowField,
    pub iterations: usize,
}

pub fn run_monomer(m: &MonomerModel, rate_scale: Option<f64>, opts: &AnalysisOptions) -> CliResult<MonomerRun> {
    let p = monomer_transition(m, rate_scale)?;
    let st = stationary_distribution(&p, opts.tolerance, opts.max_iters)?;
    let flows = stationary_flows(&st.pi, &p);
    let aggregated = aggregate_external_flows(&flows, m)?;
    let delta = flow_imbalance(&aggregated);
    let (_, barcode) = analyze_imbalance(&delta, None, opts)?;
    Ok(MonomerRun {
        composite: ChainAnalysisParts {
            pi: st.pi,
            flows,
            iterations: st.iterations,
        },
        aggregated,
        delta,
        barcode,
    })
}

/// Sweep scale: every run shares the uniformization rate of the fastest one.
pub fn common_rate_scale(m: &MonomerModel, gamma_ex: &[f64]) -> f64 {
    let fastest = gamma_ex.iter().copied().fold(m.gamma_ex, f64::max);
    1.01 * (m.gamma_in + m.gamma_in_reverse + fastest)
}

fn longest_dim1(b: &PersistenceBarcode) -> Option<&flowtopo_core::persistence::PersistenceBar> {
    b.dimension(1).max_by(|x, y| x.lifespan().total_cmp(&y.lifespan()))
}

pub fn monomer(args: &MonomerArgs) -> CliResult<()> {
    let opts = analysis_options(&args.analysis, MONOMER_MAX_ITERS)?;
    let spec = json::read_monomer(&args.spec)?;
    let m = spec.model();
    m.validate()
        .map_err(|e| CliError::invalid(format!("{}: {e}", args.spec.display())))?;
    for &g in &args.gamma_ex_grid {
        if !(g >= 0.0 && g.is_finite()) {
            return Err(CliError::invalid(format!("--gamma-ex-grid: invalid rate {g}")));
        }
    }
    if let Some(s) = args.rate_scale {
        finite("rate-scale", s)?;
    }
    let scale = args
        .rate_scale
        .or_else(|| (!args.gamma_ex_grid.is_empty()).then(|| common_rate_scale(&m, &args.gamma_ex_grid)));

    let mut cfg = base_config("monomer", &[&args.spec], &args.analysis, &opts)?;
    cfg.monomer = Some(spec.clone());
    cfg.gamma_ex_grid = args.gamma_ex_grid.clone();
    cfg.flags.extend([
        format!("rate_scale={scale:?}"),
        format!("min_lifespan={}", args.min_lifespan),
    ]);
    let prov = cfg.provenance();
    let dir = out_dir(&args.out_dir)?;
    let layout = || Layout::Lattice { columns: m.l2 };

    let run = run_monomer(&m, scale, &opts)?;
    io::write_stationary(&dir.join("stationary.csv"), &run.composite.pi)?;
    io::write_flows(&dir.join("composite_flows.csv"), &run.composite.flows)?;
    io::write_flows(&dir.join("aggregated_flows.csv"), &run.aggregated)?;
    io::write_imbalance(&dir.join("aggregated_imbalance.csv"), &run.delta)?;
    json::write_barcode(&dir.join("barcode.json"), &run.barcode)?;
    io::write_text(
        &dir.join("barcode.svg"),
        &svg::barcode_svg(&run.barcode, args.min_lifespan, &[], &prov),
    )?;
    io::write_text(
        &dir.join("imbalance.svg"),
        &svg::imbalance_svg(&run.delta, None, true, opts.balance_tolerance, layout(), &prov),
    )?;
    println!(
        "{}x{} lattice, {} iterations; {}",
        m.l1,
        m.l2,
        run.composite.iterations,
        summarize(&run.barcode)
    );

    if !args.gamma_ex_grid.is_empty() {
        let ring = m.outer_ring();
        let mut out = io::OutFile::create(&dir.join("sweep.csv"))?;
        out.line("gamma_ex,max_lifespan,dim1_bars,longest_on_outer_ring")?;
        for (k, &g) in args.gamma_ex_grid.iter().enumerate() {
            let mk = MonomerModel { gamma_ex: g, ..m };
            let r = run_monomer(&mk, scale, &opts)?;
            json::write_barcode(&dir.join(format!("barcode_gamma_ex_{k:02}.json")), &r.barcode)?;
            io::write_text(
                &dir.join(format!("barcode_gamma_ex_{k:02}.svg")),
                &svg::barcode_svg(&r.barcode, args.min_lifespan, &[], &prov),
            )?;
            let longest = longest_dim1(&r.barcode);
            let on_ring = longest
                .and_then(|b| b.representative.as_ref())
                .is_some_and(|c| c.edges() == ring);
            let life = longest.map_or(0.0, |b| b.lifespan());
            out.line(&format!(
                "{},{},{},{}",
                fmt17(g),
                fmt17(life),
                r.barcode.dimension(1).count(),
                on_ring
            ))?;
            println!("gamma_ex {g}: max dim-1 lifespan {life:.6e}, on outer ring: {on_ring}");
        }
        out.finish()?;
    }
    Ok(())
}

pub fn cycles(args: &CyclesArgs) -> CliResult<()> {
    let opts = analysis_options(&args.analysis, DEFAULT_MAX_ITERS)?;
    check_alpha(args.alpha)?;
    if args.max_length < 3 {
        return Err(CliError::invalid("--max-length must be at least 3"));
    }
    if args.max_count == 0 {
        return Err(CliError::invalid("--max-count must be positive"));
    }
    let g: DirectedWeightedGraph =
        io::read_edge_list(&args.graph.input, args.graph.num_vertices, args.graph.allow_self_loops)?;
    let mut cfg = base_config("cycles", &[&args.graph.input], &args.analysis, &opts)?;
    cfg.flags.extend([
        format!("alpha={:?}", args.alpha),
        format!("dangling_patch={}", args.graph.dangling_patch),
        format!("max_length={}", args.max_length),
        format!("max_count={}", args.max_count),
    ]);
    let a = analyze_chain(&g, args.alpha, args.graph.dangling_patch, &opts)?;
    let digraph = imbalance_digraph(&a.imbalance, opts.balance_tolerance);
    let (found, truncated) = match enumerate_convection_cycles(&digraph, args.max_length, args.max_count) {
        Ok(c) => (c, false),
        Err(Error::Truncated { found, partial }) => {
            eprintln!("warning: cycle enumeration stopped after {found} cycles; results are partial");
            (partial, true)
        }
        Err(e) => return Err(e.into()),
    };
    let classification = classify_representatives(&a.barcode, &a.imbalance, &a.filtered, &found)?;

    let dir = out_dir(&args.out_dir)?;
    let prov = cfg.provenance();
    let mut out = io::OutFile::create(&dir.join("cycles.csv"))?;
    out.line("cycle,length,min_flow,is_boundary,matched_bars,vertices")?;
    for (k, s) in classification.cycles.iter().enumerate() {
        let verts: Vec<String> = s.cycle.vertices.iter().map(|v| v.to_string()).collect();
        let bars: Vec<String> = s.matched_bars.iter().map(|v| v.to_string()).collect();
        let boundary = s.is_boundary.map_or("unknown".to_string(), |b| b.to_string());
        out.line(&format!(
            "{k},{},{},{boundary},{},{}",
            s.cycle.len(),
            fmt17(s.cycle.min_flow),
            bars.join(" "),
            verts.join(" ")
        ))?;
    }
    out.finish()?;
    json::write_classification(&dir.join("classification.json"), &a.barcode, &classification, truncated)?;
    json::write_barcode(&dir.join("barcode.json"), &a.barcode)?;
    let base = undirected_skeleton(&g);
    io::write_text(
        &dir.join("imbalance.svg"),
        &svg::imbalance_svg(
            &a.imbalance,
            Some(&base),
            args.include_teleport_edges,
            opts.balance_tolerance,
            Layout::Circle,
            &prov,
        ),
    )?;
    let boundaries = classification
        .cycles
        .iter()
        .filter(|c| c.is_boundary == Some(true))
        .count();
    let one_to_one = classification.bars.iter().filter(|b| b.one_to_one).count();
    println!(
        "{} convection cycles ({} boundaries), {} dim-1 bars ({} matched one-to-one)",
        classification.cycles.len(),
        boundaries,
        classification.bars.len(),
        one_to_one
    );
    Ok(())
}

/// (instance, eps, barcode betti, oracle betti)
type MismatchRow = (usize, f64, (usize, usize), (usize, usize));
/// (instance, eps, GF(2) betti, rational betti)
type DiscrepancyRow = (usize, f64, (usize, usize), Option<(usize, usize)>);

#[derive(Serialize)]
struct OracleReportDoc {
    seed: u64,
    instances: usize,
    max_vertices: usize,
    thresholds: usize,
    comparisons: usize,
    mismatches: Vec<MismatchRow>,
    field_discrepancies: Vec<DiscrepancyRow>,
}

pub fn oracle_check(args: &OracleArgs) -> CliResult<()> {
    if args.instances == 0 {
        return Err(CliError::invalid("--instances must be positive"));
    }
    if args.max_vertices == 0 || args.thresholds == 0 {
        return Err(CliError::invalid("--max-vertices and --thresholds must be positive"));
    }
    let opts = OracleOptions {
        seed: args.seed,
        instances: args.instances,
        max_vertices: args.max_vertices,
        thresholds: args.thresholds,
    };
    let report = oracle::run(&opts);
    for m in &report.mismatches {
        eprintln!(
            "mismatch: instance {} eps {}: barcode {:?}, oracle {:?}",
            m.instance, m.eps, m.barcode, m.oracle
        );
    }
    for d in &report.discrepancies {
        eprintln!(
            "note: instance {} eps {}: GF(2) betti {:?}, rational {:?}",
            d.instance, d.eps, d.gf2, d.rational
        );
    }
    if let Some(path) = &args.report {
        let doc = OracleReportDoc {
            seed: args.seed,
            instances: args.instances,
            max_vertices: args.max_vertices,
            thresholds: args.thresholds,
            comparisons: report.comparisons,
            mismatches: report
                .mismatches
                .iter()
                .map(|m| (m.instance, m.eps, m.barcode, m.oracle))
                .collect(),
            field_discrepancies: report
                .discrepancies
                .iter()
                .map(|d| (d.instance, d.eps, d.gf2, d.rational))
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable report");
        text.push('\n');
        io::write_text(path, &text)?;
    }
    println!(
        "{} instances, {} comparisons, {} mismatches, {} field discrepancies",
        report.instances,
        report.comparisons,
        report.mismatches.len(),
        report.discrepancies.len()
    );
    if report.mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::OracleMismatch(report.mismatches.len()))
    }
}
