use serde::Serialize;

use crate::geometry::{classify_path, int, Representation};
use crate::red::{decompose, extended_red_path, red_edges, red_path_or_fail};
use crate::tree::{Tree, Vertex};

/// A way a representation departs from the canonical shape the recognizer aims for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeViolation {
    /// Consecutive vertices of the extended red path are not one unit apart
    /// in a consistent direction.
    RedPathNotStretched { from: Vertex, to: Vertex },
    /// A tail that changes stab or is not a shrinked monotone run.
    TailNotShrinked { agent: Vertex, head: Vertex },
    /// Consecutive red vertices in different stabs where one is not a branch vertex.
    BridgeAtNonBranch { left: Vertex, right: Vertex },
    /// Consecutive red vertices of degree four sharing a stab.
    DegreeFourPairSameStab { left: Vertex, right: Vertex },
}

impl std::fmt::Display for ShapeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ShapeViolation::RedPathNotStretched { from, to } => {
                write!(f, "red path step {from} -> {to} is not a unit step")
            }
            ShapeViolation::TailNotShrinked { agent, head } => {
                write!(
                    f,
                    "tail at {head} (agent {agent}) is not a shrinked single-stab run"
                )
            }
            ShapeViolation::BridgeAtNonBranch { left, right } => {
                write!(
                    f,
                    "red vertices {left} and {right} switch stab without both branching"
                )
            }
            ShapeViolation::DegreeFourPairSameStab { left, right } => {
                write!(
                    f,
                    "degree-four red vertices {left} and {right} share a stab"
                )
            }
        }
    }
}

/// Checks a representation of `t` against the canonical shape. Trees without
/// a usable red structure (rejected ones) have nothing to check; a path is its
/// own red path.
pub fn shape_violations(t: &Tree, r: &Representation) -> Vec<ShapeViolation> {
    let mut out = Vec::new();
    if t.max_degree() <= 2 {
        let Some(start) = (0..t.n()).find(|&v| t.degree(v) <= 1) else {
            return out;
        };
        let order = t.bfs_order(start);
        check_stretched(r, &order, &mut out);
        return out;
    }
    if t.max_degree() > 4 {
        return out;
    }
    let outcome = red_path_or_fail(t, &red_edges(t));
    let Ok(d) = extended_red_path(t, &outcome).and_then(|p| decompose(t, &p)) else {
        return out;
    };
    let a = &d.path.vertices;
    check_stretched(r, a, &mut out);
    for w in a.windows(2) {
        let (u, v) = (w[0], w[1]);
        let same = r.squares[u].stab == r.squares[v].stab;
        if !same && (t.degree(u) < 3 || t.degree(v) < 3) {
            out.push(ShapeViolation::BridgeAtNonBranch { left: u, right: v });
        }
        if same && t.degree(u) == 4 && t.degree(v) == 4 {
            out.push(ShapeViolation::DegreeFourPairSameStab { left: u, right: v });
        }
    }
    for agent in d.agents.iter().flatten() {
        for tail in agent.tails() {
            let single_stab = tail
                .iter()
                .all(|&v| r.squares[v].stab == r.squares[tail[0]].stab);
            let ok = single_stab
                && (tail.len() == 1 || classify_path(r, tail, |v| t.degree(v)).shrinked);
            if !ok {
                out.push(ShapeViolation::TailNotShrinked {
                    agent: agent.vertex,
                    head: tail[0],
                });
            }
        }
    }
    out
}

fn check_stretched(r: &Representation, path: &[Vertex], out: &mut Vec<ShapeViolation>) {
    let step = |u: Vertex, v: Vertex| r.squares[v].x - r.squares[u].x;
    let Some(first) = path.windows(2).next().map(|w| step(w[0], w[1])) else {
        return;
    };
    let dir = if first < int(0) { int(-1) } else { int(1) };
    for w in path.windows(2) {
        if step(w[0], w[1]) != dir {
            out.push(ShapeViolation::RedPathNotStretched {
                from: w[0],
                to: w[1],
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{default_epsilon, Square, Stab};
    use crate::recognizer::{recognize, Recognition};
    use crate::red::tests::double_spider;

    #[test]
    fn recognizer_output_is_canonical() {
        for t in [Tree::path(6), Tree::spider(&[3, 1, 4, 2]), double_spider()] {
            let Recognition::Accept(r) = recognize(&t) else {
                panic!("expected accept");
            };
            assert_eq!(shape_violations(&t, &r), vec![]);
        }
    }

    #[test]
    fn flags_a_bent_path() {
        let t = Tree::path(3);
        let squares = [0, 1, 3]
            .map(|x| Square::new(int(x), int(0), Stab::Lower))
            .to_vec();
        let r = Representation::new(default_epsilon(), squares);
        assert_eq!(
            shape_violations(&t, &r),
            vec![ShapeViolation::RedPathNotStretched { from: 1, to: 2 }]
        );
    }
}
