//! Hand-written SVG plots: barcodes, bifurcation traces, imbalance graphs.

use std::fmt::Write;

use flowtopo_core::filtration::Direction;
use flowtopo_core::graph::UndirectedEdgeSet;
use flowtopo_core::markov::ImbalanceField;
use flowtopo_core::persistence::PersistenceBarcode;
use flowtopo_core::pipeline::BifurcationDiagram;

use crate::format::fmt_short;

pub const DIM0_COLOR: &str = "#d62728";
pub const DIM1_COLOR: &str = "#1f4fd6";
const TRACE_COLORS: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

const WIDTH: f64 = 720.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn header(out: &mut String, width: f64, height: f64, provenance: &str, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = num(width),
        h = num(height)
    );
    let _ = writeln!(out, "<!-- generated-by {provenance} -->");
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        num(width / 2.0),
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Linear map from data to pixels.
#[derive(Clone, Copy)]
struct Axis {
    d0: f64,
    d1: f64,
    p0: f64,
    p1: f64,
}

impl Axis {
    fn new(d0: f64, d1: f64, p0: f64, p1: f64) -> Self {
        let (d0, d1) = if d0 == d1 { (d0 - 0.5, d1 + 0.5) } else { (d0, d1) };
        Self { d0, d1, p0, p1 }
    }

    fn map(&self, x: f64) -> f64 {
        self.p0 + (x - self.d0) / (self.d1 - self.d0) * (self.p1 - self.p0)
    }

    fn ticks(&self, n: usize) -> Vec<f64> {
        (0..=n)
            .map(|k| self.d0 + (self.d1 - self.d0) * k as f64 / n as f64)
            .collect()
    }
}

fn x_axis(out: &mut String, ax: &Axis, y: f64, label: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#,
        num(ax.p0),
        num(ax.p1),
        y = num(y)
    );
    for t in ax.ticks(5) {
        let x = num(ax.map(t));
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/><text x="{x}" y="{}" text-anchor="middle">{}</text>"#,
            num(y),
            num(y + 5.0),
            num(y + 18.0),
            fmt_short(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        num((ax.p0 + ax.p1) / 2.0),
        num(y + 38.0),
        escape(label)
    );
}

fn y_axis(out: &mut String, ax: &Axis, x: f64, label: &str) {
    let _ = writeln!(
        out,
        r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="black"/>"#,
        num(ax.p0),
        num(ax.p1),
        x = num(x)
    );
    for t in ax.ticks(5) {
        let y = num(ax.map(t));
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{x}" y2="{y}" stroke="black"/><text x="{}" y="{y}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
            num(x - 5.0),
            num(x - 8.0),
            fmt_short(t),
            x = num(x)
        );
    }
    let cy = num((ax.p0 + ax.p1) / 2.0);
    let _ = writeln!(
        out,
        r#"<text x="16" y="{cy}" text-anchor="middle" transform="rotate(-90 16 {cy})">{}</text>"#,
        escape(label)
    );
}

/// Barcode with bars ordered by birth (dimension 0 first). Bars with
/// lifespan at or below `min_lifespan` are left out; `samples` draws dashed
/// vertical lines at those `eps`.
pub fn barcode_svg(barcode: &PersistenceBarcode, min_lifespan: f64, samples: &[f64], provenance: &str) -> String {
    let bounds = barcode.bounds;
    let mut bars: Vec<_> = barcode
        .bars
        .iter()
        .filter(|b| b.essential || b.lifespan() > min_lifespan)
        .collect();
    bars.sort_by(|a, b| {
        a.dimension
            .cmp(&b.dimension)
            .then(bounds.direction.cmp_values(a.birth, b.birth))
            .then(bounds.direction.cmp_values(a.death, b.death))
    });
    let row = 14.0;
    let height = MARGIN_T + MARGIN_B + row * bars.len().max(1) as f64 + 10.0;
    let mut out = String::new();
    let title = match bounds.direction {
        Direction::Descending => "Barcode (descending eps)",
        Direction::Ascending => "Barcode (ascending eps)",
    };
    header(&mut out, WIDTH, height, provenance, title);
    let ax = Axis::new(bounds.eps_a, bounds.eps_b, MARGIN_L, WIDTH - MARGIN_R);
    let bottom = height - MARGIN_B;
    for &s in samples {
        let x = num(ax.map(s));
        let _ = writeln!(
            out,
            r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#888" stroke-dasharray="4 3"/>"##,
            num(MARGIN_T),
            num(bottom)
        );
    }
    for (k, b) in bars.iter().enumerate() {
        let y = MARGIN_T + row * (k as f64 + 0.5);
        let color = if b.dimension == 0 { DIM0_COLOR } else { DIM1_COLOR };
        let (x0, x1) = (ax.map(b.birth), ax.map(b.death));
        let _ = write!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="6""#,
            num(x0),
            num(x1.max(x0 + 1.0)),
            y = num(y)
        );
        if b.essential {
            let _ = write!(out, r#" stroke-linecap="square""#);
        }
        let _ = writeln!(out, "/>");
        if b.essential {
            let _ = writeln!(
                out,
                r#"<polygon points="{},{} {},{} {},{}" fill="{color}"/>"#,
                num(x1),
                num(y - 5.0),
                num(x1 + 7.0),
                num(y),
                num(x1),
                num(y + 5.0)
            );
        }
    }
    x_axis(&mut out, &ax, bottom, "eps");
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" fill="{DIM0_COLOR}">dim 0</text><text x="{}" y="{}" fill="{DIM1_COLOR}">dim 1</text>"#,
        num(WIDTH - 110.0),
        num(MARGIN_T - 8.0),
        num(WIDTH - 60.0),
        num(MARGIN_T - 8.0)
    );
    out.push_str("</svg>\n");
    out
}

/// Birth (solid) and death (dashed) of every trace against the sweep
/// parameter; a trace ends where its bar vanishes.
pub fn bifurcation_svg(d: &BifurcationDiagram, provenance: &str) -> String {
    let height = 460.0;
    let mut out = String::new();
    header(&mut out, WIDTH, height, provenance, "Dimension-1 bars along the sweep");
    let params: Vec<f64> = d.samples.iter().map(|s| s.parameter).collect();
    let (p_lo, p_hi) = (
        params.first().copied().unwrap_or(0.0),
        params.last().copied().unwrap_or(1.0),
    );
    let values: Vec<f64> = d
        .traces
        .iter()
        .flat_map(|t| t.points.iter().flat_map(|p| [p.birth, p.death]))
        .collect();
    let v_lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let v_hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (v_lo, v_hi) = if values.is_empty() { (0.0, 1.0) } else { (v_lo, v_hi) };
    let xa = Axis::new(p_lo, p_hi, MARGIN_L, WIDTH - MARGIN_R);
    let ya = Axis::new(v_lo, v_hi, height - MARGIN_B, MARGIN_T);
    for t in &d.traces {
        let color = TRACE_COLORS[t.id % TRACE_COLORS.len()];
        for (field, dash) in [(0, ""), (1, r#" stroke-dasharray="5 3""#)] {
            let pts: Vec<String> = t
                .points
                .iter()
                .map(|p| {
                    let v = if field == 0 { p.birth } else { p.death };
                    format!("{},{}", num(xa.map(p.parameter)), num(ya.map(v)))
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"{dash}/>"#,
                pts.join(" ")
            );
        }
        if let Some(last) = t.points.last() {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="3" fill="{color}"><title>trace {}</title></circle>"#,
                num(xa.map(last.parameter)),
                num(ya.map(last.birth)),
                t.id
            );
        }
    }
    x_axis(&mut out, &xa, height - MARGIN_B, &d.parameter_name);
    y_axis(&mut out, &ya, MARGIN_L, "eps (solid: birth, dashed: death)");
    out.push_str("</svg>\n");
    out
}

/// Vertex placement for [`imbalance_svg`].
pub enum Layout {
    Circle,
    /// Row-major grid with the given number of columns.
    Lattice {
        columns: usize,
    },
}

/// Imbalance graph with arrows along positive `delta`, stroke width
/// proportional to `|delta|`. Pairs outside `base` (teleportation) are
/// drawn only when `include_teleport` is set. Pairs at or below
/// `balance_tol` are not drawn.
pub fn imbalance_svg(
    delta: &ImbalanceField,
    base: Option<&UndirectedEdgeSet>,
    include_teleport: bool,
    balance_tol: f64,
    layout: Layout,
    provenance: &str,
) -> String {
    let n = delta.num_states();
    let size = 600.0;
    let mut out = String::new();
    header(&mut out, size, size + 30.0, provenance, "Flow imbalance");
    let pos: Vec<(f64, f64)> = match layout {
        Layout::Circle => (0..n)
            .map(|v| {
                let t = std::f64::consts::TAU * v as f64 / n.max(1) as f64 - std::f64::consts::FRAC_PI_2;
                (size / 2.0 + 240.0 * t.cos(), 30.0 + size / 2.0 + 240.0 * t.sin())
            })
            .collect(),
        Layout::Lattice { columns } => {
            let columns = columns.max(1);
            let rows = n.div_ceil(columns).max(1);
            let step = 480.0 / (columns.max(rows).max(2) - 1) as f64;
            (0..n)
                .map(|v| (60.0 + step * (v % columns) as f64, 90.0 + step * (v / columns) as f64))
                .collect()
        }
    };
    let _ = writeln!(
        out,
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="4" markerHeight="4" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="{DIM1_COLOR}"/></marker></defs>"#
    );
    let max = delta.max_abs();
    for &(i, j, d) in delta.pairs() {
        if d.abs() <= balance_tol {
            continue;
        }
        if !include_teleport && base.is_some_and(|b| !b.contains(i, j)) {
            continue;
        }
        let (src, dst) = if d > 0.0 { (i, j) } else { (j, i) };
        let (x0, y0) = pos[src];
        let (x1, y1) = pos[dst];
        let len = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt().max(1e-9);
        let shrink = 12.0 / len;
        let (ax, ay) = (x0 + (x1 - x0) * shrink, y0 + (y1 - y0) * shrink);
        let (bx, by) = (x1 - (x1 - x0) * shrink, y1 - (y1 - y0) * shrink);
        let w = 0.5 + 7.5 * d.abs() / max;
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{DIM1_COLOR}" stroke-opacity="0.8" stroke-width="{}" marker-end="url(#arrow)"><title>{src}-&gt;{dst}: {}</title></line>"#,
            num(ax),
            num(ay),
            num(bx),
            num(by),
            num(w),
            fmt_short(d.abs())
        );
    }
    for (v, (x, y)) in pos.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="10" fill="white" stroke="black"/><text x="{}" y="{}" text-anchor="middle" dominant-baseline="central" font-size="10">{v}</text>"#,
            num(*x),
            num(*y),
            num(*x),
            num(*y)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use flowtopo_core::fixtures;
    use flowtopo_core::pipeline::{analyze_chain, AnalysisOptions};

    #[test]
    fn barcode_colors_and_filter() {
        let g = fixtures::convection_loops();
        let a = analyze_chain(&g, None, false, &AnalysisOptions::default()).unwrap();
        let all = barcode_svg(&a.barcode, 0.0, &[0.01], "flowtopo test");
        assert!(all.contains("generated-by flowtopo test"));
        assert!(all.contains(DIM0_COLOR) && all.contains(DIM1_COLOR));
        assert!(all.contains("stroke-dasharray"));
        let count = |s: &str| s.matches("stroke-width=\"6\"").count();
        let long = barcode_svg(&a.barcode, 1.0, &[], "x");
        assert!(count(&long) < count(&all));
        assert!(all.starts_with("<svg") && all.ends_with("</svg>\n"));
    }

    #[test]
    fn teleport_pairs_hidden_by_default() {
        let g = fixtures::two_hole_digraph();
        let a = analyze_chain(&g, Some(0.5), false, &AnalysisOptions::default()).unwrap();
        let base = flowtopo_core::graph::undirected_skeleton(&g);
        let hidden = imbalance_svg(&a.imbalance, Some(&base), false, 1e-12, Layout::Circle, "x");
        let shown = imbalance_svg(&a.imbalance, Some(&base), true, 1e-12, Layout::Circle, "x");
        assert!(hidden.matches("<line").count() < shown.matches("<line").count());
    }
}
