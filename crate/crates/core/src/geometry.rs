//! Exact unit-square representations on two stab lines.
//!
//! The lower stab line is `y = 1` and the upper one is `y = 2 + eps`. Every
//! square is a closed axes-parallel unit square identified by its lower-left
//! corner, so a lower square has `y` in `[0, 1]` and an upper square has `y` in
//! `[1 + eps, 2 + eps]`. All coordinates are exact rationals.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{Tree, Vertex};

/// Exact rational number used for every coordinate.
pub type Rational = num_rational::Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Smallest integer not below `r`.
pub fn ceil(r: Rational) -> i64 {
    r.ceil().to_integer()
}

/// Default gap between the stab lines beyond one unit.
pub fn default_epsilon() -> Rational {
    rat(1, 2)
}

/// Additive constant in the span of a shrinked path.
pub fn shrink_constant() -> Rational {
    rat(1, 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stab {
    Lower,
    Upper,
}

impl Stab {
    pub fn other(self) -> Stab {
        match self {
            Stab::Lower => Stab::Upper,
            Stab::Upper => Stab::Lower,
        }
    }
}

/// Lower-left corner of a unit square plus the stab line it meets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub x: Rational,
    pub y: Rational,
    pub stab: Stab,
}

impl Square {
    pub fn new(x: Rational, y: Rational, stab: Stab) -> Self {
        Square { x, y, stab }
    }

    /// Closed squares intersect iff both coordinate gaps are at most one.
    pub fn meets(&self, other: &Square) -> bool {
        (self.x - other.x).abs() <= Rational::one() && (self.y - other.y).abs() <= Rational::one()
    }
}

/// A simple undirected graph on vertices `0..n`, used for intersection graphs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    pub n: usize,
    pub edges: BTreeSet<(Vertex, Vertex)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        Graph { n, edges }
    }

    /// The cycle `0 - 1 - ... - n-1 - 0`.
    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

impl From<&Tree> for Graph {
    fn from(t: &Tree) -> Self {
        Graph::new(t.n(), t.edges().iter().copied())
    }
}

/// A 2SUIG representation: one square per vertex `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub epsilon: Rational,
    pub squares: Vec<Square>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Square does not meet its stab line.
    StabViolation { v: Vertex },
    /// Tree edge whose squares are disjoint.
    MissingEdge { u: Vertex, v: Vertex },
    /// Intersecting squares whose vertices are not adjacent.
    ExtraEdge { u: Vertex, v: Vertex },
    /// Representation has a different vertex count than the graph.
    VertexCount { expected: usize, found: usize },
    /// Epsilon outside the open interval (0, 1).
    Epsilon,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::StabViolation { v } => write!(f, "StabViolation({v})"),
            Violation::MissingEdge { u, v } => write!(f, "MissingEdge({u},{v})"),
            Violation::ExtraEdge { u, v } => write!(f, "ExtraEdge({u},{v})"),
            Violation::VertexCount { expected, found } => {
                write!(f, "VertexCount(expected {expected}, found {found})")
            }
            Violation::Epsilon => write!(f, "EpsilonOutOfRange"),
        }
    }
}

/// Outcome of [`verify`]; passes iff there are no violations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("projection of the vertex set onto the x-axis is not a single interval")]
    DisconnectedProjection,
    #[error("empty vertex set")]
    Empty,
    #[error("malformed representation document: {0}")]
    Document(String),
}

impl Representation {
    pub fn new(epsilon: Rational, squares: Vec<Square>) -> Self {
        Representation { epsilon, squares }
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn square(&self, v: Vertex) -> &Square {
        &self.squares[v]
    }

    /// Whether the square of `v` meets its stab line.
    pub fn stab_ok(&self, v: Vertex) -> bool {
        let s = &self.squares[v];
        match s.stab {
            Stab::Lower => s.y >= Rational::zero() && s.y <= Rational::one(),
            Stab::Upper => s.y >= Rational::one() + self.epsilon && s.y <= int(2) + self.epsilon,
        }
    }

    /// Translates every square by `(dx, dy)`; stabs are not re-checked.
    pub fn translated(&self, dx: Rational, dy: Rational) -> Representation {
        Representation {
            epsilon: self.epsilon,
            squares: self
                .squares
                .iter()
                .map(|s| Square::new(s.x + dx, s.y + dy, s.stab))
                .collect(),
        }
    }
}

/// All intersecting pairs of squares, found by an x-sorted sweep.
pub fn intersection_graph(r: &Representation) -> Graph {
    let mut order: Vec<Vertex> = (0..r.len()).collect();
    order.sort_by(|&a, &b| r.squares[a].x.cmp(&r.squares[b].x).then(a.cmp(&b)));
    let mut edges = BTreeSet::new();
    for (i, &u) in order.iter().enumerate() {
        let su = &r.squares[u];
        for &v in &order[i + 1..] {
            let sv = &r.squares[v];
            if sv.x - su.x > Rational::one() {
                break;
            }
            if su.meets(sv) {
                edges.insert((u.min(v), u.max(v)));
            }
        }
    }
    Graph { n: r.len(), edges }
}

/// Checks stab membership of every square and that the intersection graph equals `g`.
pub fn verify(r: &Representation, g: &Graph) -> VerifyReport {
    let mut violations = Vec::new();
    if r.epsilon <= Rational::zero() || r.epsilon >= Rational::one() {
        violations.push(Violation::Epsilon);
    }
    if r.len() != g.n {
        violations.push(Violation::VertexCount {
            expected: g.n,
            found: r.len(),
        });
        return VerifyReport { violations };
    }
    for v in 0..r.len() {
        if !r.stab_ok(v) {
            violations.push(Violation::StabViolation { v });
        }
    }
    let ig = intersection_graph(r);
    for &(u, v) in g.edges.difference(&ig.edges) {
        violations.push(Violation::MissingEdge { u, v });
    }
    for &(u, v) in ig.edges.difference(&g.edges) {
        violations.push(Violation::ExtraEdge { u, v });
    }
    VerifyReport { violations }
}

pub fn verify_tree(r: &Representation, t: &Tree) -> VerifyReport {
    verify(r, &Graph::from(t))
}

/// Length of the union of the x-projections `[x_v, x_v + 1]`.
pub fn span(r: &Representation, vertices: &[Vertex]) -> Result<Rational, GeometryError> {
    if vertices.is_empty() {
        return Err(GeometryError::Empty);
    }
    let mut xs: Vec<Rational> = vertices.iter().map(|&v| r.squares[v].x).collect();
    xs.sort();
    for w in xs.windows(2) {
        if w[1] - w[0] > Rational::one() {
            return Err(GeometryError::DisconnectedProjection);
        }
    }
    Ok(xs[xs.len() - 1] + Rational::one() - xs[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    LowerRight,
    UpperRight,
    LowerLeft,
    UpperLeft,
    Folded,
    Mixed,
}

impl PathKind {
    pub fn is_monotone(self) -> bool {
        !matches!(self, PathKind::Folded | PathKind::Mixed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClassification {
    pub kind: PathKind,
    pub stretched: bool,
    pub shrinked: bool,
}

/// Span of a shrinked monotone path on `k` vertices.
pub fn shrinked_span(k: usize) -> Rational {
    int(k.div_ceil(2) as i64) + shrink_constant()
}

/// Classifies a path (given in path order) by the x-order and stabs of its squares.
///
/// `degree` reports tree degrees, used for the folded-path test.
pub fn classify_path(
    r: &Representation,
    path: &[Vertex],
    degree: impl Fn(Vertex) -> usize,
) -> PathClassification {
    let xs: Vec<Rational> = path.iter().map(|&v| r.squares[v].x).collect();
    let increasing = xs.windows(2).all(|w| w[0] < w[1]);
    let decreasing = xs.windows(2).all(|w| w[0] > w[1]);
    let stabs: BTreeSet<Stab> = path.iter().map(|&v| r.squares[v].stab).collect();
    let single = if stabs.len() == 1 {
        stabs.iter().next().copied()
    } else {
        None
    };
    let kind = match (single, increasing, decreasing) {
        (Some(Stab::Lower), true, _) => PathKind::LowerRight,
        (Some(Stab::Upper), true, _) => PathKind::UpperRight,
        (Some(Stab::Lower), false, true) => PathKind::LowerLeft,
        (Some(Stab::Upper), false, true) => PathKind::UpperLeft,
        _ => {
            let folded = path.iter().enumerate().any(|(i, &u)| {
                degree(u) == 2
                    && (xs.iter().enumerate().all(|(j, x)| j == i || xs[i] < *x)
                        || xs.iter().enumerate().all(|(j, x)| j == i || *x < xs[i]))
            });
            if folded {
                PathKind::Folded
            } else {
                PathKind::Mixed
            }
        }
    };
    let (stretched, shrinked) = if kind.is_monotone() {
        match span(r, path) {
            Ok(s) => (s == int(path.len() as i64), s == shrinked_span(path.len())),
            Err(_) => (false, false),
        }
    } else {
        (false, false)
    };
    PathClassification {
        kind,
        stretched,
        shrinked,
    }
}

/// Offsets (relative to the first square) of a shrinked monotone path on `k` vertices.
///
/// Squares come in near-coincident pairs: `x_i = floor(i/2) + ceil(i/2) * c / floor(k/2)`.
/// Consecutive squares are at most one apart, squares two steps apart are more
/// than one apart, and the total span is `ceil(k/2) + c`.
pub fn shrink_offsets(k: usize) -> Vec<Rational> {
    if k <= 1 {
        return vec![Rational::zero(); k];
    }
    let step = shrink_constant() / int((k / 2) as i64);
    (0..k)
        .map(|i| int((i / 2) as i64) + step * int(i.div_ceil(2) as i64))
        .collect()
}

/// Document form of a rational: `{"num": .., "den": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: i64,
    pub den: i64,
}

impl From<Rational> for RationalDoc {
    fn from(r: Rational) -> Self {
        RationalDoc {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl TryFrom<RationalDoc> for Rational {
    type Error = GeometryError;
    fn try_from(d: RationalDoc) -> Result<Self, Self::Error> {
        if d.den <= 0 {
            return Err(GeometryError::Document(format!(
                "denominator must be positive, got {}",
                d.den
            )));
        }
        Ok(Rational::new(d.num, d.den))
    }
}

pub const SCHEMA: &str = "suig2/v1";

#[derive(Debug, Serialize, Deserialize)]
struct SquareDoc {
    v: Vertex,
    x: RationalDoc,
    y: RationalDoc,
    stab: Stab,
}

#[derive(Debug, Serialize, Deserialize)]
struct RepresentationDoc {
    schema: String,
    epsilon: RationalDoc,
    squares: Vec<SquareDoc>,
}

fn to_doc(r: &Representation) -> RepresentationDoc {
    RepresentationDoc {
        schema: SCHEMA.to_string(),
        epsilon: r.epsilon.into(),
        squares: r
            .squares
            .iter()
            .enumerate()
            .map(|(v, s)| SquareDoc {
                v,
                x: s.x.into(),
                y: s.y.into(),
                stab: s.stab,
            })
            .collect(),
    }
}

/// Representation as a JSON value following the `suig2/v1` schema.
pub fn to_json_value(r: &Representation) -> serde_json::Value {
    serde_json::to_value(to_doc(r)).expect("representation document serializes")
}

/// Pretty-printed `suig2/v1` JSON document, with a trailing newline.
pub fn emit_json(r: &Representation) -> String {
    let mut s =
        serde_json::to_string_pretty(&to_doc(r)).expect("representation document serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Representation, GeometryError> {
    let doc: RepresentationDoc =
        serde_json::from_str(text).map_err(|e| GeometryError::Document(e.to_string()))?;
    from_json_value_doc(doc)
}

pub fn from_json_value(value: serde_json::Value) -> Result<Representation, GeometryError> {
    let doc: RepresentationDoc =
        serde_json::from_value(value).map_err(|e| GeometryError::Document(e.to_string()))?;
    from_json_value_doc(doc)
}

fn from_json_value_doc(doc: RepresentationDoc) -> Result<Representation, GeometryError> {
    if doc.schema != SCHEMA {
        return Err(GeometryError::Document(format!(
            "unsupported schema {:?}",
            doc.schema
        )));
    }
    let mut squares: Vec<Option<Square>> = vec![None; doc.squares.len()];
    for s in doc.squares {
        let slot = squares
            .get_mut(s.v)
            .ok_or_else(|| GeometryError::Document(format!("vertex {} out of range", s.v)))?;
        if slot.is_some() {
            return Err(GeometryError::Document(format!(
                "vertex {} listed twice",
                s.v
            )));
        }
        *slot = Some(Square::new(s.x.try_into()?, s.y.try_into()?, s.stab));
    }
    Ok(Representation {
        epsilon: doc.epsilon.try_into()?,
        squares: squares.into_iter().map(|s| s.unwrap()).collect(),
    })
}

const SVG_SCALE: i64 = 100;
const SVG_MARGIN: i64 = 50;

fn svg_num(r: Rational) -> String {
    let scaled = r * int(SVG_SCALE);
    if scaled.is_integer() {
        return scaled.to_integer().to_string();
    }
    // Three decimals, rounded half away from zero.
    let thousandths = (scaled * int(1000)).round().to_integer();
    let (q, rem) = thousandths.abs().div_rem(&1000);
    let sign = if thousandths < 0 { "-" } else { "" };
    format!("{sign}{q}.{rem:03}")
        .trim_end_matches('0')
        .to_string()
}

/// SVG 1.1 drawing: one rectangle per square, dashed stab lines, vertex labels.
///
/// Model y grows upward; the drawing flips it. Output is byte-deterministic.
pub fn emit_svg(r: &Representation) -> String {
    let zero = Rational::zero();
    let (min_x, max_x) = r
        .squares
        .iter()
        .fold(None, |acc: Option<(Rational, Rational)>, s| match acc {
            None => Some((s.x, s.x + Rational::one())),
            Some((lo, hi)) => Some((lo.min(s.x), hi.max(s.x + Rational::one()))),
        })
        .unwrap_or((zero, Rational::one()));
    let top = int(3) + r.epsilon;
    let width = (max_x - min_x) * int(SVG_SCALE) + int(2 * SVG_MARGIN);
    let height = top * int(SVG_SCALE) + int(2 * SVG_MARGIN);
    let px = |x: Rational| svg_num(x - min_x + rat(SVG_MARGIN, SVG_SCALE));
    let py = |y: Rational| svg_num(top - y + rat(SVG_MARGIN, SVG_SCALE));

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        svg_num(width / int(SVG_SCALE)),
        svg_num(height / int(SVG_SCALE)),
        svg_num(width / int(SVG_SCALE)),
        svg_num(height / int(SVG_SCALE)),
    );
    for (label, y) in [
        ("y = 1", Rational::one()),
        ("y = 2 + eps", int(2) + r.epsilon),
    ] {
        let _ = writeln!(
            out,
            r#"  <line class="stab" x1="0" y1="{y}" x2="{w}" y2="{y}" stroke="gray" stroke-dasharray="6,4"/>"#,
            y = py(y),
            w = svg_num(width / int(SVG_SCALE)),
        );
        let _ = writeln!(
            out,
            r#"  <text x="4" y="{}" font-size="12" fill="gray">{label}</text>"#,
            svg_num(top - y + rat(SVG_MARGIN, SVG_SCALE) - rat(1, 25)),
        );
    }
    for (v, s) in r.squares.iter().enumerate() {
        let fill = match s.stab {
            Stab::Lower => "#4a90d9",
            Stab::Upper => "#d9734a",
        };
        let _ = writeln!(
            out,
            r#"  <rect x="{}" y="{}" width="{SVG_SCALE}" height="{SVG_SCALE}" fill="{fill}" fill-opacity="0.25" stroke="{fill}"/>"#,
            px(s.x),
            py(s.y + Rational::one()),
        );
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="14" text-anchor="middle">{v}</text>"#,
            px(s.x + rat(1, 2)),
            py(s.y + rat(1, 2)),
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Compares two squares by x, then y, then stab.
pub fn cmp_x(a: &Square, b: &Square) -> Ordering {
    a.x.cmp(&b.x).then(a.y.cmp(&b.y)).then(a.stab.cmp(&b.stab))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        rat(n.parse().unwrap(), d.parse().unwrap())
    }

    /// The five-cycle drawing, with a, b lower and c, d, e upper.
    pub(crate) fn five_cycle() -> Representation {
        let pts = [
            ("4", "1/5"),
            ("24/5", "0"),
            ("26/5", "7/10"),
            ("22/5", "3/2"),
            ("7/2", "1"),
        ];
        let stabs = [
            Stab::Lower,
            Stab::Lower,
            Stab::Upper,
            Stab::Upper,
            Stab::Upper,
        ];
        Representation::new(
            rat(1, 2),
            pts.iter()
                .zip(stabs)
                .map(|((x, y), st)| Square::new(r(x), r(y), st))
                .collect(),
        )
    }

    fn layout(xs: &[(i64, i64, Stab)], eps: Rational) -> Representation {
        Representation::new(
            eps,
            xs.iter()
                .map(|&(x, y, s)| Square::new(int(x), int(y), s))
                .collect(),
        )
    }

    #[test]
    fn five_cycle_intersection_graph() {
        assert_eq!(intersection_graph(&five_cycle()), Graph::cycle(5));
    }

    #[test]
    fn boundary_contact_counts() {
        let rep = layout(&[(0, 0, Stab::Lower), (1, 0, Stab::Lower)], rat(1, 2));
        assert!(intersection_graph(&rep).has_edge(0, 1));
        let far = Representation::new(
            rat(1, 2),
            vec![
                Square::new(int(0), int(0), Stab::Lower),
                Square::new(rat(5, 2), int(0), Stab::Lower),
            ],
        );
        assert!(intersection_graph(&far).edges.is_empty());
    }

    #[test]
    fn verify_path_layout() {
        let t = Tree::path(5);
        let rep = layout(
            &(0..5).map(|i| (i, 0, Stab::Lower)).collect::<Vec<_>>(),
            rat(1, 2),
        );
        assert!(verify_tree(&rep, &t).passed());
        let mut moved = rep.clone();
        moved.squares[4].x += int(10);
        let report = verify_tree(&moved, &t);
        assert_eq!(
            report.violations,
            vec![Violation::MissingEdge { u: 3, v: 4 }]
        );
    }

    #[test]
    fn verify_claw() {
        let eps = rat(1, 2);
        let rep = Representation::new(
            eps,
            vec![
                Square::new(int(0), int(1), Stab::Lower),
                Square::new(int(-1), int(0), Stab::Lower),
                Square::new(int(1), int(0), Stab::Lower),
                Square::new(int(0), int(1) + eps, Stab::Upper),
            ],
        );
        assert!(verify_tree(&rep, &Tree::star(3)).passed());
    }

    #[test]
    fn verify_reports_stab_violation() {
        let rep = layout(&[(0, 2, Stab::Lower), (1, 1, Stab::Lower)], rat(1, 2));
        let report = verify_tree(&rep, &Tree::path(2));
        assert_eq!(report.violations, vec![Violation::StabViolation { v: 0 }]);
    }

    #[test]
    fn spans() {
        let rep = layout(
            &(0..5).map(|i| (i, 0, Stab::Lower)).collect::<Vec<_>>(),
            rat(1, 2),
        );
        assert_eq!(span(&rep, &[0, 1, 2, 3, 4]), Ok(int(5)));
        assert_eq!(span(&rep, &[2]), Ok(int(1)));
        assert_eq!(
            span(&rep, &[0, 4]),
            Err(GeometryError::DisconnectedProjection)
        );
        let shr = Representation::new(
            rat(1, 2),
            shrink_offsets(5)
                .into_iter()
                .map(|x| Square::new(x, int(2), Stab::Upper))
                .collect(),
        );
        assert_eq!(span(&shr, &[0, 1, 2, 3, 4]), Ok(int(3) + rat(1, 4)));
    }

    #[test]
    fn classify() {
        let deg = |_| 2;
        let right = layout(
            &[
                (0, 0, Stab::Lower),
                (1, 0, Stab::Lower),
                (2, 0, Stab::Lower),
            ],
            rat(1, 2),
        );
        let c = classify_path(&right, &[0, 1, 2], deg);
        assert_eq!(c.kind, PathKind::LowerRight);
        assert!(c.stretched && !c.shrinked);
        let left = layout(
            &[
                (2, 2, Stab::Upper),
                (1, 2, Stab::Upper),
                (0, 2, Stab::Upper),
            ],
            rat(1, 2),
        );
        let c = classify_path(&left, &[0, 1, 2], deg);
        assert_eq!(c.kind, PathKind::UpperLeft);
        assert!(c.stretched);
        let folded = layout(
            &[
                (1, 0, Stab::Lower),
                (0, 2, Stab::Upper),
                (1, 2, Stab::Upper),
            ],
            rat(1, 2),
        );
        assert_eq!(
            classify_path(&folded, &[0, 1, 2], deg).kind,
            PathKind::Folded
        );
    }

    #[test]
    fn shrink_offsets_are_shrinked_without_chords() {
        for k in 2..120 {
            let xs = shrink_offsets(k);
            for i in 0..k {
                for j in i + 1..k {
                    let gap = xs[j] - xs[i];
                    assert!(gap > Rational::zero());
                    assert_eq!(gap <= Rational::one(), j == i + 1, "k={k} i={i} j={j}");
                }
            }
            assert_eq!(xs[k - 1] + Rational::one(), shrinked_span(k), "k={k}");
        }
    }

    #[test]
    fn json_round_trip_and_schema() {
        let rep = five_cycle();
        let text = emit_json(&rep);
        assert!(text.contains("\"schema\": \"suig2/v1\""));
        assert_eq!(parse_json(&text).unwrap(), rep);
        let empty = Representation::new(rat(1, 2), vec![]);
        assert_eq!(parse_json(&emit_json(&empty)).unwrap(), empty);
        assert!(parse_json(
            "{\"schema\":\"other\",\"epsilon\":{\"num\":1,\"den\":2},\"squares\":[]}"
        )
        .is_err());
    }

    #[test]
    fn svg_shapes() {
        let rep = layout(&[(0, 0, Stab::Lower), (1, 0, Stab::Lower)], rat(1, 2));
        let svg = emit_svg(&rep);
        assert_eq!(svg.matches("<rect").count(), 2);
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg, emit_svg(&rep));
        assert_eq!(emit_svg(&five_cycle()).matches("<rect").count(), 5);
        assert_eq!(
            emit_svg(&Representation::new(rat(1, 2), vec![]))
                .matches("<rect")
                .count(),
            0
        );
    }
}
