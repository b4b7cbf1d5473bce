//! Tree data model, edge-list parsing and elementary structural queries.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

/// Vertex identifier. Vertices of a tree on `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("input contains no edges")]
    EmptyInput,
    #[error("not a tree: {0}")]
    NotATree(String),
}

/// An undirected tree with contiguous vertex ids.
#[derive(Clone, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, {:?})", self.n(), self.edges)
    }
}

impl Tree {
    /// The tree with a single vertex and no edges.
    pub fn singleton() -> Self {
        Tree {
            adj: vec![Vec::new()],
            edges: Vec::new(),
        }
    }

    /// Builds a tree from an edge list. Vertex count is `1 + max id`.
    pub fn from_edges(edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        if edges.is_empty() {
            return Err(TreeError::EmptyInput);
        }
        let n = 1 + edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
        Self::with_vertex_count(n, edges)
    }

    /// Builds a tree on exactly `n` vertices. Accepts `n = 1` with no edges.
    pub fn with_vertex_count(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyInput);
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::NotATree(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(TreeError::NotATree(format!("self-loop at {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(TreeError::NotATree(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            norm.push(key);
        }
        if norm.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} edges on {} vertices",
                norm.len(),
                n
            )));
        }
        let tree = Tree { adj, edges: norm };
        if tree.bfs_order(0).len() != n {
            return Err(TreeError::NotATree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].contains(&b)
    }

    /// Vertices of degree at least three.
    pub fn branch_vertices(&self) -> VertexSet {
        (0..self.n()).filter(|&v| self.degree(v) >= 3).collect()
    }

    /// Breadth-first order from `root`.
    pub fn bfs_order(&self, root: Vertex) -> Vec<Vertex> {
        let mut order = Vec::with_capacity(self.n());
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    /// Parent array of the tree rooted at `root` (`parent[root] = None`) plus BFS order.
    pub fn rooted(&self, root: Vertex) -> (Vec<Option<Vertex>>, Vec<Vertex>) {
        let order = self.bfs_order(root);
        let mut parent = vec![None; self.n()];
        for &u in &order {
            for &w in &self.adj[u] {
                if Some(w) != parent[u] {
                    parent[w] = Some(u);
                }
            }
        }
        (parent, order)
    }

    /// Whether the component of `T - {removed}` containing `side` contains a claw.
    ///
    /// Uses the degree criterion: some vertex other than `side` on that side has
    /// degree at least three, or `side` itself has degree at least four.
    /// This is a per-call traversal; [`crate::red::red_edges`] evaluates it for all
    /// edges at once in linear time.
    pub fn component_has_claw(&self, removed: (Vertex, Vertex), side: Vertex) -> bool {
        let other = if removed.0 == side {
            removed.1
        } else {
            debug_assert_eq!(removed.1, side);
            removed.0
        };
        debug_assert!(self.has_edge(side, other));
        if self.degree(side) >= 4 {
            return true;
        }
        let mut stack = vec![(side, other)];
        while let Some((u, from)) = stack.pop() {
            for &w in &self.adj[u] {
                if w != from {
                    if self.degree(w) >= 3 {
                        return true;
                    }
                    stack.push((w, u));
                }
            }
        }
        false
    }

    /// Serializes as an edge list, one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        if self.n() == 1 {
            out.push_str("0\n");
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Tree {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Tree::with_vertex_count(self.n(), &edges).expect("relabeling preserves tree shape")
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Tree {
        assert!(n >= 1);
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::with_vertex_count(n, &edges).unwrap()
    }

    /// Star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Tree {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Tree::with_vertex_count(k + 1, &edges).unwrap()
    }

    /// Spider with center 0 and legs of the given lengths (a leg of length 0 is ignored).
    pub fn spider(legs: &[usize]) -> Tree {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Tree::with_vertex_count(next, &edges).unwrap()
    }
}

/// A set of vertex ids, kept sorted.
pub type VertexSet = BTreeSet<Vertex>;

/// Parses the edge-list text format: one `u v` pair per line, `#` comments.
///
/// A file whose only content is a single vertex id (`0`) denotes the one-vertex tree.
pub fn parse_tree(text: &str) -> Result<Tree, TreeError> {
    let (n, edges) = parse_edge_list(text)?;
    if edges.is_empty() {
        return Ok(Tree::singleton());
    }
    Tree::with_vertex_count(n, &edges)
}

/// Parses the edge-list format without requiring a tree; returns the vertex
/// count (one more than the largest id) and the edges in file order.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(Vertex, Vertex)>), TreeError> {
    let mut edges = Vec::new();
    let mut singleton = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let parse = |t: &str| {
            t.parse::<Vertex>().map_err(|_| TreeError::Parse {
                line: idx + 1,
                msg: format!("invalid vertex id {t:?}"),
            })
        };
        match toks.as_slice() {
            [u, v] => edges.push((parse(u)?, parse(v)?)),
            [u] if parse(u)? == 0 && edges.is_empty() => singleton = true,
            _ => {
                return Err(TreeError::Parse {
                    line: idx + 1,
                    msg: format!("expected two vertex ids, found {}", toks.len()),
                })
            }
        }
    }
    if edges.is_empty() {
        return if singleton {
            Ok((1, edges))
        } else {
            Err(TreeError::EmptyInput)
        };
    }
    if singleton {
        return Err(TreeError::Parse {
            line: 1,
            msg: "single vertex line mixed with edges".into(),
        });
    }
    let n = 1 + edges.iter().map(|&(u, v)| u.max(v)).max().unwrap();
    let mut present = vec![false; n];
    for &(u, v) in &edges {
        present[u] = true;
        present[v] = true;
    }
    if let Some(gap) = present.iter().position(|p| !p) {
        return Err(TreeError::Parse {
            line: 0,
            msg: format!("vertex ids must be contiguous; {gap} is missing"),
        });
    }
    Ok((n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_spider() -> Tree {
        // u=0 with leaves 1,2; path 0-3-4-5-6; v=6 with leaves 7,8
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

    #[test]
    fn parses_path_and_claw() {
        let p = parse_tree("0 1\n1 2").unwrap();
        assert_eq!(p.n(), 3);
        assert_eq!(p.degree(1), 2);
        let c = parse_tree("# claw\n0 1\n0 2\n\n0 3\n").unwrap();
        assert_eq!(c.degree(0), 3);
        assert_eq!(c.branch_vertices(), VertexSet::from([0]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_tree("0 1\n1 2\n2 0"),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(
            parse_tree("0 1\n2 3"),
            Err(TreeError::NotATree(_))
        ));
        assert!(matches!(parse_tree("0 x"), Err(TreeError::Parse { .. })));
        assert!(matches!(parse_tree("0 1 2"), Err(TreeError::Parse { .. })));
        assert!(matches!(
            parse_tree("# nothing\n"),
            Err(TreeError::EmptyInput)
        ));
        assert!(matches!(
            parse_tree("0 2\n2 3"),
            Err(TreeError::Parse { .. })
        ));
        assert!(matches!(parse_tree("0 0"), Err(TreeError::NotATree(_))));
        assert!(matches!(
            parse_tree("0 1\n1 0"),
            Err(TreeError::NotATree(_))
        ));
    }

    #[test]
    fn single_vertex_file() {
        assert_eq!(parse_tree("0\n").unwrap().n(), 1);
        assert_eq!(
            parse_tree(&Tree::singleton().to_edge_list()).unwrap(),
            Tree::singleton()
        );
    }

    #[test]
    fn degrees() {
        assert_eq!(Tree::star(4).degree(0), 4);
        assert_eq!(Tree::star(4).degree(3), 1);
        assert_eq!(Tree::path(3).degree(1), 2);
    }

    #[test]
    fn branch_vertex_sets() {
        assert!(Tree::path(5).branch_vertices().is_empty());
        assert_eq!(Tree::star(3).branch_vertices(), VertexSet::from([0]));
        assert_eq!(double_spider().branch_vertices(), VertexSet::from([0, 6]));
    }

    #[test]
    fn claw_containment() {
        let p = Tree::path(5);
        for &(u, v) in p.edges() {
            assert!(!p.component_has_claw((u, v), u));
            assert!(!p.component_has_claw((u, v), v));
        }
        let ds = double_spider();
        assert!(ds.component_has_claw((4, 5), 4));
        assert!(ds.component_has_claw((0, 3), 3) && !ds.component_has_claw((0, 3), 0));
        let k14 = Tree::star(4);
        assert!(k14.component_has_claw((0, 1), 0));
        assert!(!k14.component_has_claw((0, 1), 1));
    }
}
