//! The tropical triangle `{a + b + c = k}` and its subdivision by cut levels.
//!
//! A cut level `s` contributes a Δ1-chord `a = s`, running from the side
//! `b = 0` to the side `c = 0`, and a Δ2-chord `b = k - s`, running from the
//! side `a = 0` to the side `c = 0`. The two chords of one level meet on the
//! side `c = 0`. Vertices of the subdivision are irreducible components of the
//! expanded fibre, edges are double curves and bounded 2-cells are triple
//! points.
//!
//! Positions are stored as `(a, b)` with `c = k - a - b` implied.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::base::NormalForm;
use crate::error::{Error, Result};

/// Valuations `(a, b, c)` of `(x, y, z)` at a point; `a + b + c` is the height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct TropPosition {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl TropPosition {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        TropPosition { a, b, c }
    }

    pub fn height(&self) -> u64 {
        self.a + self.b + self.c
    }

    pub fn scaled(&self, factor: u64) -> Self {
        TropPosition::new(self.a * factor, self.b * factor, self.c * factor)
    }
}

impl From<[u64; 3]> for TropPosition {
    fn from(v: [u64; 3]) -> Self {
        TropPosition::new(v[0], v[1], v[2])
    }
}

impl From<TropPosition> for [u64; 3] {
    fn from(p: TropPosition) -> Self {
        [p.a, p.b, p.c]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum VertexKind {
    CornerY1,
    CornerY2,
    CornerY3,
    /// Pure Δ1-bubble at `(v, 0, k - v)`.
    PureDelta1 {
        level: u64,
    },
    /// Pure Δ2-bubble at `(0, w, k - w)`.
    PureDelta2 {
        level: u64,
    },
    /// Mixed bubble `Δ1 = Δ2` at `(v, k - v, 0)`.
    Mixed {
        level: u64,
    },
    /// Crossing of the chords `a = v` and `b = w`.
    Interior {
        v: u64,
        w: u64,
    },
}

/// Descriptive tag for the surface a vertex stands for. Never used in logic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    Plane,
    RuledBubble,
    Quadric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcVertex {
    pub id: usize,
    pub kind: VertexKind,
    pub position: TropPosition,
    pub surface_kind: SurfaceKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualComplex {
    pub vertices: Vec<DcVertex>,
    /// Vertex id pairs, smaller id first.
    pub edges: Vec<(usize, usize)>,
    /// Vertex cycles, counter-clockwise in the `(a, b)` plane.
    pub cells: Vec<Vec<usize>>,
}

/// Stratum of the subdivision containing a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "stratum", content = "id")]
pub enum Location {
    Vertex(usize),
    EdgeInterior(usize),
    CellInterior(usize),
}

impl Location {
    pub fn is_vertex(&self) -> bool {
        matches!(self, Location::Vertex(_))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "FibreRepr", into = "FibreRepr")]
pub struct ExpandedFibre {
    nf: NormalForm,
    dual_complex: DualComplex,
    a_lines: Vec<u64>,
    b_lines: Vec<u64>,
    vertex_at: HashMap<(u64, u64), usize>,
    edge_index: HashMap<(usize, usize), usize>,
    cell_index: HashMap<(usize, usize), usize>,
}

impl PartialEq for ExpandedFibre {
    fn eq(&self, other: &Self) -> bool {
        self.nf == other.nf && self.dual_complex == other.dual_complex
    }
}

impl Eq for ExpandedFibre {}

#[derive(Serialize, Deserialize)]
struct FibreRepr {
    normal_form: NormalForm,
    dual_complex: DualComplex,
}

impl TryFrom<FibreRepr> for ExpandedFibre {
    type Error = Error;

    fn try_from(r: FibreRepr) -> Result<Self> {
        let f = build_fibre(&r.normal_form);
        if f.dual_complex != r.dual_complex {
            return Err(Error::InvalidInput(format!(
                "dual complex does not match the subdivision of {}",
                r.normal_form
            )));
        }
        Ok(f)
    }
}

impl From<ExpandedFibre> for FibreRepr {
    fn from(f: ExpandedFibre) -> Self {
        FibreRepr {
            normal_form: f.nf,
            dual_complex: f.dual_complex,
        }
    }
}

impl ExpandedFibre {
    pub fn normal_form(&self) -> &NormalForm {
        &self.nf
    }

    pub fn height(&self) -> u64 {
        self.nf.height()
    }

    pub fn dual_complex(&self) -> &DualComplex {
        &self.dual_complex
    }

    pub fn vertex(&self, id: usize) -> &DcVertex {
        &self.dual_complex.vertices[id]
    }

    pub fn vertex_at(&self, p: TropPosition) -> Option<&DcVertex> {
        self.vertex_at
            .get(&(p.a, p.b))
            .filter(|_| p.height() == self.height())
            .map(|&id| self.vertex(id))
    }

    pub fn locate(&self, p: TropPosition) -> Result<Location> {
        locate(self, p)
    }
}

fn vertex_kind(k: u64, a: u64, b: u64) -> VertexKind {
    match (a, b) {
        (a, 0) if a == k => VertexKind::CornerY1,
        (0, b) if b == k => VertexKind::CornerY2,
        (0, 0) => VertexKind::CornerY3,
        (v, 0) => VertexKind::PureDelta1 { level: v },
        (0, w) => VertexKind::PureDelta2 { level: w },
        (v, w) if v + w == k => VertexKind::Mixed { level: v },
        (v, w) => VertexKind::Interior { v, w },
    }
}

fn surface_kind(kind: VertexKind) -> SurfaceKind {
    match kind {
        VertexKind::CornerY1 | VertexKind::CornerY2 | VertexKind::CornerY3 => SurfaceKind::Plane,
        VertexKind::Interior { .. } => SurfaceKind::Quadric,
        _ => SurfaceKind::RuledBubble,
    }
}

pub fn build_fibre(nf: &NormalForm) -> ExpandedFibre {
    let k = nf.height();
    let mut a_lines = vec![0];
    a_lines.extend_from_slice(nf.cuts());
    a_lines.push(k);
    let mut b_lines: Vec<u64> = std::iter::once(0)
        .chain(nf.cuts().iter().rev().map(|s| k - s))
        .collect();
    b_lines.push(k);

    let mut grid: Vec<(u64, u64)> = a_lines
        .iter()
        .flat_map(|&a| b_lines.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a + b <= k)
        .collect();
    grid.sort_by_key(|&(a, b)| vertex_kind(k, a, b));

    let vertices: Vec<DcVertex> = grid
        .iter()
        .enumerate()
        .map(|(id, &(a, b))| {
            let kind = vertex_kind(k, a, b);
            DcVertex {
                id,
                kind,
                position: TropPosition::new(a, b, k - a - b),
                surface_kind: surface_kind(kind),
            }
        })
        .collect();
    let vertex_at: HashMap<(u64, u64), usize> =
        grid.iter().enumerate().map(|(id, &p)| (p, id)).collect();

    let mut edges = Vec::new();
    let chain = |mut pts: Vec<(u64, u64)>, edges: &mut Vec<(usize, usize)>| {
        pts.sort();
        for w in pts.windows(2) {
            let (u, v) = (vertex_at[&w[0]], vertex_at[&w[1]]);
            edges.push((u.min(v), u.max(v)));
        }
    };
    for &a in &a_lines[..a_lines.len() - 1] {
        chain(
            grid.iter().copied().filter(|p| p.0 == a).collect(),
            &mut edges,
        );
    }
    for &b in &b_lines[..b_lines.len() - 1] {
        chain(
            grid.iter().copied().filter(|p| p.1 == b).collect(),
            &mut edges,
        );
    }
    chain(
        grid.iter().copied().filter(|p| p.0 + p.1 == k).collect(),
        &mut edges,
    );
    let edge_index = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut cells = Vec::new();
    let mut cell_index = HashMap::new();
    for p in 0..a_lines.len() - 1 {
        for q in 0..b_lines.len() - 1 {
            let (a0, a1, b0, b1) = (a_lines[p], a_lines[p + 1], b_lines[q], b_lines[q + 1]);
            if a0 + b0 >= k {
                continue;
            }
            let polygon = clip_to_triangle(k, &[(a0, b0), (a1, b0), (a1, b1), (a0, b1)]);
            cell_index.insert((p, q), cells.len());
            cells.push(polygon.iter().map(|pt| vertex_at[pt]).collect());
        }
    }

    ExpandedFibre {
        nf: nf.clone(),
        dual_complex: DualComplex {
            vertices,
            edges,
            cells,
        },
        a_lines,
        b_lines,
        vertex_at,
        edge_index,
        cell_index,
    }
}

/// Clips a counter-clockwise grid rectangle to the half-plane `a + b ≤ k`.
/// Crossings of `a + b = k` with the rectangle sides land on grid points
/// because every cut `s` on one axis is paired with `k - s` on the other.
fn clip_to_triangle(k: u64, rect: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let inside = |p: (u64, u64)| p.0 + p.1 <= k;
    let mut out: Vec<(u64, u64)> = Vec::new();
    for i in 0..rect.len() {
        let cur = rect[i];
        let next = rect[(i + 1) % rect.len()];
        if inside(cur) {
            out.push(cur);
        }
        if inside(cur) != inside(next) {
            // Axis-parallel side: one coordinate is fixed.
            let crossing = if cur.0 == next.0 {
                (cur.0, k - cur.0)
            } else {
                (k - cur.1, cur.1)
            };
            out.push(crossing);
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Number of vertices, edges and bounded 2-cells.
pub fn complex_counts(f: &ExpandedFibre) -> (usize, usize, usize) {
    let dc = f.dual_complex();
    (dc.vertices.len(), dc.edges.len(), dc.cells.len())
}

/// Position of a point with valuations `e` on the triangle of height `k`,
/// together with the primitive ray it spans in the positive orthant.
pub fn tropicalize_point(e: [u64; 3], k: u64) -> Result<(TropPosition, [u64; 3])> {
    let p = TropPosition::from(e);
    if p.height() != k {
        return Err(Error::HeightMismatch {
            expected: k,
            found: p.height(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidInput("zero valuation has no ray".to_string()));
    }
    let g = e[0].gcd(&e[1]).gcd(&e[2]);
    Ok((p, [e[0] / g, e[1] / g, e[2] / g]))
}

pub fn locate(f: &ExpandedFibre, p: TropPosition) -> Result<Location> {
    let k = f.height();
    if p.height() != k {
        return Err(Error::HeightMismatch {
            expected: k,
            found: p.height(),
        });
    }
    if let Some(&id) = f.vertex_at.get(&(p.a, p.b)) {
        return Ok(Location::Vertex(id));
    }
    let on_line = |line: &[u64], x: u64| line[..line.len() - 1].contains(&x);
    let edge_between = |lo: (u64, u64), hi: (u64, u64)| {
        let (u, v) = (f.vertex_at[&lo], f.vertex_at[&hi]);
        Location::EdgeInterior(f.edge_index[&(u.min(v), u.max(v))])
    };
    // Neighbouring grid values strictly below and above x.
    let bracket = |line: &[u64], x: u64| {
        let i = line.partition_point(|&y| y < x);
        (line[i - 1], line[i])
    };
    if on_line(&f.a_lines, p.a) {
        let (b0, b1) = bracket(&f.b_lines, p.b);
        let b1 = b1.min(k - p.a);
        return Ok(edge_between((p.a, b0), (p.a, b1)));
    }
    if on_line(&f.b_lines, p.b) {
        let (a0, a1) = bracket(&f.a_lines, p.a);
        let a1 = a1.min(k - p.b);
        return Ok(edge_between((a0, p.b), (a1, p.b)));
    }
    let (a0, a1) = bracket(&f.a_lines, p.a);
    if p.c == 0 {
        return Ok(edge_between((a0, k - a0), (a1, k - a1)));
    }
    let pi = f
        .a_lines
        .iter()
        .position(|&x| x == a0)
        .expect("bracket value");
    let (b0, _) = bracket(&f.b_lines, p.b);
    let qi = f
        .b_lines
        .iter()
        .position(|&x| x == b0)
        .expect("bracket value");
    Ok(Location::CellInterior(f.cell_index[&(pi, qi)]))
}

/// Whether `fine` subdivides `coarse` once both are rescaled to their least
/// common height.
pub fn refines(fine: &NormalForm, coarse: &NormalForm) -> bool {
    let (fine, coarse) = fine.to_common_height(coarse);
    let fine_cuts: BTreeSet<u64> = fine.cuts().iter().copied().collect();
    coarse.cuts().iter().all(|s| fine_cuts.contains(s))
}
