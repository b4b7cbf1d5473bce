//! Non-isomorphic free trees by leaf extension and canonical-form deduplication.

use std::collections::BTreeMap;

use crate::tree::{Tree, Vertex};

/// Isomorphism-invariant encoding: AHU string rooted at the center
/// (minimum over both rootings for bicentral trees).
pub fn canonical_form(t: &Tree) -> String {
    centers(t)
        .into_iter()
        .map(|c| ahu(t, c))
        .min()
        .expect("a tree has at least one center")
}

/// The one or two vertices of minimum eccentricity.
pub fn centers(t: &Tree) -> Vec<Vertex> {
    let n = t.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in t.neighbors(leaf) {
                if deg[w] > 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
            deg[leaf] = 0;
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn ahu(t: &Tree, root: Vertex) -> String {
    let (parent, order) = t.rooted(root);
    let mut code: Vec<String> = vec![String::new(); t.n()];
    for &v in order.iter().rev() {
        let mut kids: Vec<&str> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| Some(w) != parent[v])
            .map(|&w| code[w].as_str())
            .collect();
        kids.sort_unstable();
        let mut s = String::with_capacity(2 + kids.iter().map(|k| k.len()).sum::<usize>());
        s.push('(');
        for k in kids {
            s.push_str(k);
        }
        s.push(')');
        code[v] = s;
    }
    std::mem::take(&mut code[root])
}

/// One representative per isomorphism class of trees on `n` vertices,
/// ordered by canonical form.
pub fn enumerate_trees(n: usize) -> Vec<Tree> {
    assert!(
        (1..=16).contains(&n),
        "enumeration supports 1..=16 vertices"
    );
    let mut level: BTreeMap<String, Tree> = BTreeMap::new();
    let single = Tree::singleton();
    level.insert(canonical_form(&single), single);
    for size in 2..=n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..t.n() {
                let mut edges = t.edges().to_vec();
                edges.push((v, size - 1));
                let grown =
                    Tree::with_vertex_count(size, &edges).expect("leaf extension is a tree");
                next.entry(canonical_form(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Tree::from_edges(&[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let b = a.relabel(&[4, 2, 0, 1, 3]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&Tree::path(5)));
    }

    #[test]
    fn small_classes() {
        let four = enumerate_trees(4);
        assert!(four.iter().any(|t| t.max_degree() == 3));
        assert!(four.iter().any(|t| t.max_degree() == 2));
    }
}
