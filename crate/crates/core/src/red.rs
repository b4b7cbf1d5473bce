//! Red edges, the extended red path, and the decomposition into red vertices,
//! agents and tails.
//!
//! An edge is red when both components left by deleting it contain a claw.

use serde::Serialize;
use thiserror::Error;

use crate::tree::{Tree, Vertex, VertexSet};

/// Red edges as `(min, max)` pairs, sorted.
pub type RedEdgeSet = Vec<(Vertex, Vertex)>;

/// All red edges in one rooted pass.
///
/// For the edge between `p` and its child `c`, the child side has a claw iff
/// some vertex of `c`'s subtree other than `c` has degree at least three, or
/// `deg(c) >= 4`; the parent side is the complement, with `p` in the role of `c`.
pub fn red_edges(t: &Tree) -> RedEdgeSet {
    let n = t.n();
    let (parent, order) = t.rooted(0);
    let branch = |v: Vertex| usize::from(t.degree(v) >= 3);
    let total: usize = (0..n).map(branch).sum();
    let mut below = vec![0usize; n];
    for &v in order.iter().rev() {
        below[v] += branch(v);
        if let Some(p) = parent[v] {
            below[p] += below[v];
        }
    }
    let mut red = Vec::new();
    for &c in &order {
        let Some(p) = parent[c] else { continue };
        let child_side = below[c] - branch(c) > 0 || t.degree(c) >= 4;
        let parent_side = total - below[c] - branch(p) > 0 || t.degree(p) >= 4;
        if child_side && parent_side {
            red.push((c.min(p), c.max(p)));
        }
    }
    red.sort_unstable();
    red
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RedPathOutcome {
    NoRedEdges,
    /// Red edges form one path, listed end to end.
    Path(Vec<Vertex>),
    /// A vertex with three or more red edges, or a vertex of a second red component.
    NotAPath(Vertex),
}

/// Checks that the red edges induce a single path.
pub fn red_path_or_fail(t: &Tree, red: &RedEdgeSet) -> RedPathOutcome {
    if red.is_empty() {
        return RedPathOutcome::NoRedEdges;
    }
    let mut red_adj: Vec<Vec<Vertex>> = vec![Vec::new(); t.n()];
    for &(u, v) in red {
        red_adj[u].push(v);
        red_adj[v].push(u);
    }
    if let Some(v) = (0..t.n()).find(|&v| red_adj[v].len() >= 3) {
        return RedPathOutcome::NotAPath(v);
    }
    // A forest of maximum degree two: walk to an endpoint of the first edge's component.
    let (mut prev, mut start) = (red[0].1, red[0].0);
    while let Some(w) = red_adj[start].iter().copied().find(|&w| w != prev) {
        if w == red[0].0 {
            break;
        }
        prev = start;
        start = w;
    }
    let mut path = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(w) = red_adj[cur].iter().copied().find(|&w| Some(w) != prev) {
        prev = Some(cur);
        cur = w;
        path.push(cur);
    }
    if path.len() - 1 != red.len() {
        let on_path: VertexSet = path.iter().copied().collect();
        let stray = red
            .iter()
            .map(|&(u, _)| u)
            .find(|u| !on_path.contains(u))
            .expect("a red edge lies off the walked path");
        return RedPathOutcome::NotAPath(stray);
    }
    RedPathOutcome::Path(path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathOrigin {
    FromRedPath,
    NoRedEdgeSpecialVertex,
}

/// The path `a_1 ... a_k` of red vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedRedPath {
    pub vertices: Vec<Vertex>,
    pub origin: PathOrigin,
}

impl ExtendedRedPath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn reversed(&self) -> ExtendedRedPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        ExtendedRedPath {
            vertices,
            origin: self.origin,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RedError {
    #[error("no vertex has a closed neighborhood containing every branch vertex")]
    NoSpecialVertex,
    #[error("red edges do not induce a path (witness {0})")]
    NotAPath(Vertex),
    #[error("vertex {0} is neither red, an agent, nor on a tail")]
    MalformedPeriphery(Vertex),
}

/// Orients a path so the endpoint of larger degree comes first, then smaller id.
fn orient(t: &Tree, mut path: Vec<Vertex>) -> Vec<Vertex> {
    let (first, last) = (path[0], path[path.len() - 1]);
    let key = |v: Vertex| (std::cmp::Reverse(t.degree(v)), v);
    if key(last) < key(first) {
        path.reverse();
    }
    path
}

/// Builds the extended red path from the red-path check.
///
/// With red edges, each red-path endpoint of degree two is extended by its other
/// edge. Without red edges, a special vertex whose closed neighborhood holds all
/// branch vertices is chosen (largest degree, then smallest id); the path is that
/// vertex alone, or its two neighbors and itself when it has degree two.
pub fn extended_red_path(t: &Tree, outcome: &RedPathOutcome) -> Result<ExtendedRedPath, RedError> {
    match outcome {
        RedPathOutcome::NotAPath(v) => Err(RedError::NotAPath(*v)),
        RedPathOutcome::Path(p) => {
            let mut path = p.clone();
            for end in [0, 1] {
                let (tip, inner) = if end == 0 {
                    (path[0], path[1])
                } else {
                    (path[path.len() - 1], path[path.len() - 2])
                };
                if t.degree(tip) == 2 {
                    let ext = t
                        .neighbors(tip)
                        .iter()
                        .copied()
                        .find(|&w| w != inner)
                        .expect("degree-two vertex has another neighbor");
                    if end == 0 {
                        path.insert(0, ext);
                    } else {
                        path.push(ext);
                    }
                }
            }
            Ok(ExtendedRedPath {
                vertices: orient(t, path),
                origin: PathOrigin::FromRedPath,
            })
        }
        RedPathOutcome::NoRedEdges => {
            let v = special_vertex(t).ok_or(RedError::NoSpecialVertex)?;
            let vertices = if t.degree(v) == 2 {
                let nb = t.neighbors(v);
                orient(t, vec![nb[0], v, nb[1]])
            } else {
                vec![v]
            };
            Ok(ExtendedRedPath {
                vertices,
                origin: PathOrigin::NoRedEdgeSpecialVertex,
            })
        }
    }
}

/// A vertex `v` with `N[v]` containing every branch vertex; largest degree first, then smallest id.
pub fn special_vertex(t: &Tree) -> Option<Vertex> {
    let branch = t.branch_vertices();
    let first = *branch.iter().next()?;
    let mut candidates: Vec<Vertex> = std::iter::once(first)
        .chain(t.neighbors(first).iter().copied())
        .filter(|&c| {
            branch
                .iter()
                .all(|&b| b == c || t.neighbors(c).contains(&b))
        })
        .collect();
    candidates.sort_by_key(|&c| (std::cmp::Reverse(t.degree(c)), c));
    candidates.first().copied()
}

/// An agent with its two tails (either may be empty), long tail first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Agent {
    pub vertex: Vertex,
    pub long_tail: Vec<Vertex>,
    pub short_tail: Vec<Vertex>,
}

impl Agent {
    pub fn tails(&self) -> impl Iterator<Item = &Vec<Vertex>> {
        [&self.long_tail, &self.short_tail]
            .into_iter()
            .filter(|t| !t.is_empty())
    }
}

/// Red vertices with their agents (neighbors off the path) and tails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub path: ExtendedRedPath,
    /// `agents[i]` belongs to `path.vertices[i]`, ordered by vertex id.
    pub agents: Vec<Vec<Agent>>,
}

impl Decomposition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("decomposition serializes")
    }

    pub fn reversed(&self) -> Decomposition {
        let mut agents = self.agents.clone();
        agents.reverse();
        Decomposition {
            path: self.path.reversed(),
            agents,
        }
    }

    pub fn tail_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.agents
            .iter()
            .flatten()
            .flat_map(|a| a.long_tail.iter().chain(&a.short_tail).copied())
    }
}

/// Splits the tree into red vertices, agents and tails.
pub fn decompose(t: &Tree, a: &ExtendedRedPath) -> Result<Decomposition, RedError> {
    let n = t.n();
    let mut owner = vec![false; n];
    for &v in &a.vertices {
        owner[v] = true;
    }
    let mut agents = Vec::with_capacity(a.len());
    for (i, &r) in a.vertices.iter().enumerate() {
        let mut mine = Vec::new();
        let mut nbrs: Vec<Vertex> = t
            .neighbors(r)
            .iter()
            .copied()
            .filter(|&w| {
                let prev = i.checked_sub(1).map(|j| a.vertices[j]);
                let next = a.vertices.get(i + 1).copied();
                Some(w) != prev && Some(w) != next
            })
            .collect();
        nbrs.sort_unstable();
        for z in nbrs {
            if owner[z] {
                return Err(RedError::MalformedPeriphery(z));
            }
            owner[z] = true;
            if t.degree(z) > 3 {
                return Err(RedError::MalformedPeriphery(z));
            }
            let mut tails = Vec::new();
            for &start in t.neighbors(z).iter().filter(|&&w| w != r) {
                let mut tail = Vec::new();
                let (mut prev, mut cur) = (z, start);
                loop {
                    if owner[cur] || t.degree(cur) > 2 {
                        return Err(RedError::MalformedPeriphery(cur));
                    }
                    owner[cur] = true;
                    tail.push(cur);
                    match t.neighbors(cur).iter().copied().find(|&w| w != prev) {
                        Some(w) => {
                            prev = cur;
                            cur = w;
                        }
                        None => break,
                    }
                }
                tails.push(tail);
            }
            tails.sort_by_key(|tl| (std::cmp::Reverse(tl.len()), tl[0]));
            let mut it = tails.into_iter();
            mine.push(Agent {
                vertex: z,
                long_tail: it.next().unwrap_or_default(),
                short_tail: it.next().unwrap_or_default(),
            });
        }
        agents.push(mine);
    }
    if let Some(v) = (0..n).find(|&v| !owner[v]) {
        return Err(RedError::MalformedPeriphery(v));
    }
    Ok(Decomposition {
        path: a.clone(),
        agents,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// u=0 (leaves 1, 2) - p1=3 - p2=4 - p3=5 - v=6 (leaves 7, 8)
    pub(crate) fn double_spider() -> Tree {
        Tree::from_edges(&[
            (0, 1),
            (0, 2),
            (0, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (6, 8),
        ])
        .unwrap()
    }

    /// Center 0, legs 0 - x_i - w_i with two leaves on each w_i.
    pub(crate) fn three_claw_star() -> Tree {
        let mut edges = Vec::new();
        let mut next = 1;
        for _ in 0..3 {
            let (x, w) = (next, next + 1);
            edges.extend([(0, x), (x, w), (w, next + 2), (w, next + 3)]);
            next += 4;
        }
        Tree::from_edges(&edges).unwrap()
    }

    fn brute_red(t: &Tree) -> RedEdgeSet {
        let mut red: Vec<_> = t
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| t.component_has_claw((u, v), u) && t.component_has_claw((u, v), v))
            .collect();
        red.sort_unstable();
        red
    }

    #[test]
    fn red_edge_examples() {
        assert!(red_edges(&Tree::path(7)).is_empty());
        assert_eq!(red_edges(&double_spider()), vec![(3, 4), (4, 5)]);
        let star = three_claw_star();
        assert_eq!(red_edges(&star), vec![(0, 1), (0, 5), (0, 9)]);
        assert_eq!(red_edges(&star), brute_red(&star));
    }

    #[test]
    fn red_path_examples() {
        let p6 = Tree::path(6);
        assert_eq!(
            red_path_or_fail(&p6, &red_edges(&p6)),
            RedPathOutcome::NoRedEdges
        );
        let ds = double_spider();
        let out = red_path_or_fail(&ds, &red_edges(&ds));
        let RedPathOutcome::Path(p) = out else {
            panic!("{out:?}")
        };
        assert!(p == vec![3, 4, 5] || p == vec![5, 4, 3]);
        let star = three_claw_star();
        assert_eq!(
            red_path_or_fail(&star, &red_edges(&star)),
            RedPathOutcome::NotAPath(0)
        );
    }

    #[test]
    fn disconnected_red_edges_are_reported() {
        // Not reachable from a real tree's red set, but the check handles it.
        let t = Tree::path(6);
        let out = red_path_or_fail(&t, &vec![(0, 1), (3, 4)]);
        assert!(matches!(out, RedPathOutcome::NotAPath(v) if v == 3 || v == 0));
    }

    #[test]
    fn extended_paths() {
        let ds = double_spider();
        let a = extended_red_path(&ds, &red_path_or_fail(&ds, &red_edges(&ds))).unwrap();
        assert_eq!(a.vertices, vec![0, 3, 4, 5, 6]);
        assert_eq!(a.origin, PathOrigin::FromRedPath);

        // Two claw centers 0 and 4 sharing the degree-2 neighbor 1... via m = 2.
        let t = Tree::from_edges(&[
            (0, 1),
            (0, 3),
            (0, 5),
            (0, 2),
            (2, 4),
            (4, 6),
            (4, 7),
            (4, 8),
        ])
        .unwrap();
        // 0 and 4 have degree 4; no red edge since 0-2 leaves 2's side with 4 of degree 3.
        let out = red_path_or_fail(&t, &red_edges(&t));
        if out == RedPathOutcome::NoRedEdges {
            let a = extended_red_path(&t, &out).unwrap();
            assert_eq!(a.vertices, vec![0, 2, 4]);
        }
        let t = Tree::from_edges(&[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let out = red_path_or_fail(&t, &red_edges(&t));
        assert_eq!(out, RedPathOutcome::NoRedEdges);
        let a = extended_red_path(&t, &out).unwrap();
        assert_eq!(a.vertices, vec![0, 3, 4]);
        assert_eq!(a.origin, PathOrigin::NoRedEdgeSpecialVertex);
    }

    #[test]
    fn special_vertex_prefers_degree() {
        // 0 has degree 3, its neighbor 1 has degree 4; both cover the branch set {0, 1}.
        let t = Tree::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)]).unwrap();
        assert_eq!(special_vertex(&t), Some(1));
        assert_eq!(special_vertex(&Tree::path(4)), None);
    }

    #[test]
    fn decompositions() {
        let ds = double_spider();
        let a = extended_red_path(&ds, &red_path_or_fail(&ds, &red_edges(&ds))).unwrap();
        let d = decompose(&ds, &a).unwrap();
        let ids: Vec<Vec<Vertex>> = d
            .agents
            .iter()
            .map(|ag| ag.iter().map(|x| x.vertex).collect())
            .collect();
        assert_eq!(ids, vec![vec![1, 2], vec![], vec![], vec![], vec![7, 8]]);
        assert!(d.tail_vertices().next().is_none());

        // K_{1,4} with one leg subdivided into a 4-path.
        let t = Tree::spider(&[1, 1, 1, 4]);
        let single = ExtendedRedPath {
            vertices: vec![0],
            origin: PathOrigin::NoRedEdgeSpecialVertex,
        };
        let d = decompose(&t, &single).unwrap();
        assert_eq!(d.agents[0].len(), 4);
        let long = d.agents[0]
            .iter()
            .find(|ag| !ag.long_tail.is_empty())
            .unwrap();
        assert_eq!(long.long_tail.len(), 3);
        assert!(long.short_tail.is_empty());

        let d = decompose(&Tree::star(3), &single).unwrap();
        assert_eq!(d.agents[0].len(), 3);
        assert!(d.tail_vertices().next().is_none());
    }

    #[test]
    fn malformed_periphery() {
        // Branch vertex 5 sits two steps from the red vertex 0.
        let t = Tree::from_edges(&[(0, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        let single = ExtendedRedPath {
            vertices: vec![0],
            origin: PathOrigin::NoRedEdgeSpecialVertex,
        };
        assert_eq!(decompose(&t, &single), Err(RedError::MalformedPeriphery(2)));
    }
}
