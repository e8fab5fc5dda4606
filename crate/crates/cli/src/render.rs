//! Diagrams of an expanded fibre's tropical triangle.
//!
//! `Y1` sits at the top, `Y3` bottom left and `Y2` bottom right. A point
//! `(a, b, c)` is drawn at the barycentric combination of the three corners
//! with weights `a/k`, `b/k`, `c/k`. Coordinates are exact hundredths so the
//! output is byte-stable.

use std::fmt::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use degen_core::{ExpandedFibre, SupportPoint, TropPosition, VertexKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Dot,
    Svg,
    Tikz,
}

const Y1: (i64, i64) = (220, 20);
const Y2: (i64, i64) = (420, 366);
const Y3: (i64, i64) = (20, 366);
const WIDTH: i64 = 440;
const HEIGHT: i64 = 400;

/// Fixed-point number with two decimals.
#[derive(Debug, Clone, Copy)]
struct Fx(i64);

impl std::fmt::Display for Fx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let v = self.0.abs();
        write!(f, "{sign}{}.{:02}", v / 100, v % 100)
    }
}

fn div_round(num: i64, den: i64) -> i64 {
    (2 * num + den).div_euclid(2 * den)
}

fn coords(p: TropPosition, k: u64) -> (Fx, Fx) {
    let (a, b, c, k) = (p.a as i64, p.b as i64, p.c as i64, k as i64);
    let x = (a * Y1.0 + b * Y2.0 + c * Y3.0) * 100;
    let y = (a * Y1.1 + b * Y2.1 + c * Y3.1) * 100;
    (Fx(div_round(x, k)), Fx(div_round(y, k)))
}

fn label(kind: VertexKind, k: u64) -> String {
    match kind {
        VertexKind::CornerY1 => "Y1".to_string(),
        VertexKind::CornerY2 => "Y2".to_string(),
        VertexKind::CornerY3 => "Y3".to_string(),
        VertexKind::PureDelta1 { level } => format!("Δ1({level})"),
        VertexKind::PureDelta2 { level } => format!("Δ2({level})"),
        VertexKind::Mixed { level } => format!("Δ1({level})=Δ2({})", k - level),
        VertexKind::Interior { v, w } => format!("Q({v},{w})"),
    }
}

fn colour(kind: VertexKind) -> &'static str {
    match kind {
        VertexKind::CornerY1 | VertexKind::CornerY2 | VertexKind::CornerY3 => "black",
        VertexKind::PureDelta1 { .. } => "red",
        VertexKind::PureDelta2 { .. } => "blue",
        VertexKind::Mixed { .. } => "purple",
        VertexKind::Interior { .. } => "darkgreen",
    }
}

pub fn render(fibre: &ExpandedFibre, points: &[SupportPoint], format: RenderFormat) -> String {
    match format {
        RenderFormat::Svg => svg(fibre, points),
        RenderFormat::Dot => dot(fibre, points),
        RenderFormat::Tikz => tikz(fibre, points),
    }
}

fn svg(fibre: &ExpandedFibre, points: &[SupportPoint]) -> String {
    let k = fibre.height();
    let dc = fibre.dual_complex();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, "<title>{}</title>", fibre.normal_form());
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1">"#);
    for &(u, v) in &dc.edges {
        let (x1, y1) = coords(dc.vertices[u].position, k);
        let (x2, y2) = coords(dc.vertices[v].position, k);
        let _ = writeln!(
            out,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    for v in &dc.vertices {
        let (x, y) = coords(v.position, k);
        let c = colour(v.kind);
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{y}" r="4" fill="{c}"><title>{}</title></circle>"#,
            label(v.kind, k)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{c}">{}</text>"#,
            Fx(x.0 + 600),
            Fx(y.0 - 500),
            label(v.kind, k)
        );
    }
    for p in points {
        let (x, y) = coords(p.position, k);
        let [a, b, c] = <[u64; 3]>::from(p.position);
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{y}" r="8" fill="none" stroke="orange" stroke-width="2"><title>({a},{b},{c}) x{}</title></circle>"#,
            p.mult
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="orange">x{}</text>"#,
            Fx(x.0 - 2200),
            Fx(y.0 + 1400),
            p.mult
        );
    }
    out.push_str("</svg>\n");
    out
}

fn dot(fibre: &ExpandedFibre, points: &[SupportPoint]) -> String {
    let k = fibre.height();
    let dc = fibre.dual_complex();
    let mut out = String::new();
    let _ = writeln!(out, "graph fibre {{");
    let _ = writeln!(out, "  label=\"{}\";", fibre.normal_form());
    let _ = writeln!(out, "  node [shape=circle, style=filled, fontcolor=white];");
    for v in &dc.vertices {
        let (x, y) = coords(v.position, k);
        let mult: u64 = points
            .iter()
            .filter(|p| p.position == v.position)
            .map(|p| p.mult)
            .sum();
        let extra = if mult > 0 {
            format!(", xlabel=\"x{mult}\", penwidth=3, color=orange")
        } else {
            String::new()
        };
        // Graphviz y grows upwards.
        let _ = writeln!(
            out,
            "  v{} [label=\"{}\", fillcolor={}, pos=\"{},{}!\"{}];",
            v.id,
            label(v.kind, k),
            colour(v.kind),
            x,
            Fx(HEIGHT * 100 - y.0),
            extra
        );
    }
    for &(u, v) in &dc.edges {
        let _ = writeln!(out, "  v{u} -- v{v};");
    }
    for (i, p) in points.iter().enumerate() {
        if dc.vertices.iter().any(|v| v.position == p.position) {
            continue;
        }
        let (x, y) = coords(p.position, k);
        let _ = writeln!(
            out,
            "  p{i} [label=\"x{}\", shape=doublecircle, fillcolor=orange, pos=\"{},{}!\"];",
            p.mult,
            x,
            Fx(HEIGHT * 100 - y.0)
        );
    }
    out.push_str("}\n");
    out
}

fn tikz(fibre: &ExpandedFibre, points: &[SupportPoint]) -> String {
    let k = fibre.height();
    let dc = fibre.dual_complex();
    // TikZ uses centimetres with y upwards: 1 cm per 40 px.
    let cm = |p: TropPosition| {
        let (x, y) = coords(p, k);
        (Fx(div_round(x.0, 40)), Fx(div_round(HEIGHT * 100 - y.0, 40)))
    };
    let mut out = String::new();
    let _ = writeln!(out, "% {}", fibre.normal_form());
    let _ = writeln!(out, "\\begin{{tikzpicture}}");
    for &(u, v) in &dc.edges {
        let (x1, y1) = cm(dc.vertices[u].position);
        let (x2, y2) = cm(dc.vertices[v].position);
        let _ = writeln!(out, "  \\draw ({x1},{y1}) -- ({x2},{y2});");
    }
    for v in &dc.vertices {
        let (x, y) = cm(v.position);
        let name = label(v.kind, k)
            .replace("Δ1", "\\Delta_1")
            .replace("Δ2", "\\Delta_2");
        let _ = writeln!(
            out,
            "  \\fill[{}] ({x},{y}) circle (2pt) node[above right] {{${name}$}};",
            colour(v.kind)
        );
    }
    for p in points {
        let (x, y) = cm(p.position);
        let _ = writeln!(
            out,
            "  \\draw[orange, thick] ({x},{y}) circle (4pt) node[below left] {{$\\times{}$}};",
            p.mult
        );
    }
    let _ = writeln!(out, "\\end{{tikzpicture}}");
    out
}
