//! Brute-force 2SUIG feasibility for small trees.
//!
//! The search works from the definition alone: pick a stab for every vertex,
//! then decide for every non-adjacent pair how its squares are kept apart
//! (left of, right of, or vertically separated when the stabs differ), with
//! all geometric requirements kept as exact difference constraints. It knows
//! nothing about red edges or canonical layouts, which is what makes it a
//! useful check on [`crate::recognizer`].

mod crosscheck;
pub mod diffsys;
pub mod enumerate;
mod search;

use std::time::{Duration, Instant};

use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{default_epsilon, int, verify_tree, Rational, Representation, Square, Stab};
use crate::tree::{Tree, Vertex};

pub use crosscheck::{cross_check, CrossCheckReport, CrossCheckRow, Decision};
pub use diffsys::{solve_difference_system, Constraint, DifferenceSystem, Feasibility};
pub use enumerate::enumerate_trees;

use search::{Apsp, IWeight};

/// Hard cap on the tree size the oracle accepts.
pub const MAX_N_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_n: usize,
    pub epsilon: Rational,
    pub time_budget: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_n: 9,
            epsilon: default_epsilon(),
            time_budget: None,
        }
    }
}

/// Search statistics attached to a rejection: every branch was refuted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExhaustedProof {
    pub stab_assignments: u64,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleOutcome {
    Accept(Representation),
    Reject(ExhaustedProof),
}

impl OracleOutcome {
    pub fn accepted(&self) -> bool {
        matches!(self, OracleOutcome::Accept(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("tree has {n} vertices, above the limit of {max_n}")]
    TooLarge { n: usize, max_n: usize },
    #[error("time budget exceeded before the search finished")]
    BudgetExceeded,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    /// `u` entirely left of `v`.
    Before,
    /// `u` entirely right of `v`.
    After,
    /// Vertical separation of a lower/upper pair.
    Apart,
}

const CHOICES: [Choice; 3] = [Choice::Before, Choice::After, Choice::Apart];

#[derive(Debug, Clone, Copy)]
struct Pair {
    u: Vertex,
    v: Vertex,
    /// `(lower, upper)` when the stabs differ.
    cross: Option<(Vertex, Vertex)>,
}

#[derive(Clone)]
struct Node {
    x: Apsp,
    y: Apsp,
    open: Vec<usize>,
    chosen: Vec<(usize, Choice)>,
}

struct Search<'a> {
    tree: &'a Tree,
    stabs: Vec<Stab>,
    pairs: Vec<Pair>,
    scale: i64,
    eps_num: i64,
    epsilon: Rational,
    deadline: Option<Instant>,
    nodes: u64,
}

enum Step {
    Found(Representation),
    Exhausted,
    Timeout,
}

impl<'a> Search<'a> {
    fn separation(&self) -> IWeight {
        IWeight::new(-self.scale, true)
    }

    fn option_constraint(&self, p: &Pair, c: Choice) -> Option<(bool, Vertex, Vertex)> {
        // (on_y, a, b): x_a - x_b < -1
        match c {
            Choice::Before => Some((false, p.u, p.v)),
            Choice::After => Some((false, p.v, p.u)),
            Choice::Apart => p.cross.map(|(low, up)| (true, low, up)),
        }
    }

    fn root(&self) -> Option<Node> {
        let n = self.tree.n();
        let s = self.scale;
        let mut x = Apsp::new(n);
        let mut y = Apsp::new(n + 1);
        let z = n;
        let mut ok = true;
        for &(u, v) in self.tree.edges() {
            ok &= x.add(u, v, IWeight::new(s, false));
            ok &= x.add(v, u, IWeight::new(s, false));
            if self.stabs[u] != self.stabs[v] {
                let (low, up) = if self.stabs[u] == Stab::Lower {
                    (u, v)
                } else {
                    (v, u)
                };
                ok &= y.add(up, low, IWeight::new(s, false));
            }
        }
        // Mirror symmetry: the first neighbor of vertex 0 is not to its left.
        if let Some(&w) = self.tree.neighbors(0).first() {
            ok &= x.add(0, w, IWeight::ZERO);
        }
        for v in 0..n {
            let (lo, hi) = match self.stabs[v] {
                Stab::Lower => (0, s),
                Stab::Upper => (s + self.eps_num, 2 * s + self.eps_num),
            };
            ok &= y.add(v, z, IWeight::new(hi, false));
            ok &= y.add(z, v, IWeight::new(-lo, false));
        }
        ok.then(|| Node {
            x,
            y,
            open: (0..self.pairs.len()).collect(),
            chosen: Vec::new(),
        })
    }

    fn apply(&self, node: &mut Node, pi: usize, c: Choice) -> bool {
        let (on_y, a, b) = self
            .option_constraint(&self.pairs[pi], c)
            .expect("valid choice");
        node.chosen.push((pi, c));
        let w = self.separation();
        if on_y {
            node.y.add(a, b, w)
        } else {
            node.x.add(a, b, w)
        }
    }

    /// Drops satisfied pairs and applies forced choices until nothing changes.
    /// Returns the branching pair with its candidate choices, `Ok(None)` when
    /// every pair is settled, or `Err(())` on a contradiction.
    fn propagate(&self, node: &mut Node) -> Result<Option<(usize, Vec<Choice>)>, ()> {
        let w = self.separation();
        loop {
            let mut changed = false;
            let mut best: Option<(usize, Vec<Choice>)> = None;
            let mut i = 0;
            while i < node.open.len() {
                let pi = node.open[i];
                let p = self.pairs[pi];
                let mut viable = Vec::with_capacity(3);
                let mut satisfied = false;
                for c in CHOICES {
                    let Some((on_y, a, b)) = self.option_constraint(&p, c) else {
                        continue;
                    };
                    let m = if on_y { &node.y } else { &node.x };
                    if m.implied(a, b, w) {
                        satisfied = true;
                        break;
                    }
                    if m.consistent(a, b, w) {
                        viable.push(c);
                    }
                }
                if satisfied {
                    node.open.swap_remove(i);
                    continue;
                }
                match viable.len() {
                    0 => return Err(()),
                    1 => {
                        node.open.swap_remove(i);
                        if !self.apply(node, pi, viable[0]) {
                            return Err(());
                        }
                        changed = true;
                        continue;
                    }
                    k => {
                        let better = match &best {
                            None => true,
                            Some((bp, bv)) => k < bv.len() || (k == bv.len() && pi < *bp),
                        };
                        if better {
                            best = Some((pi, viable));
                        }
                    }
                }
                i += 1;
            }
            if !changed {
                return Ok(best);
            }
        }
    }

    fn dfs(&mut self, mut node: Node) -> Step {
        self.nodes += 1;
        if let Some(d) = self.deadline {
            if self.nodes.is_multiple_of(64) && Instant::now() >= d {
                return Step::Timeout;
            }
        }
        match self.propagate(&mut node) {
            Err(()) => Step::Exhausted,
            Ok(None) => Step::Found(self.realize(&node)),
            Ok(Some((pi, choices))) => {
                let pos = node.open.iter().position(|&q| q == pi).unwrap();
                node.open.swap_remove(pos);
                for c in choices {
                    let mut child = node.clone();
                    if !self.apply(&mut child, pi, c) {
                        continue;
                    }
                    match self.dfs(child) {
                        Step::Exhausted => {}
                        other => return other,
                    }
                }
                Step::Exhausted
            }
        }
    }

    /// Rebuilds the chosen constraints with exact bounds and solves them.
    fn realize(&self, node: &Node) -> Representation {
        let n = self.tree.n();
        let one = int(1);
        let mut xs = DifferenceSystem::new(n);
        let mut ys = DifferenceSystem::new(n + 1);
        let z = n;
        for &(u, v) in self.tree.edges() {
            xs.push(Constraint::le(u, v, one));
            xs.push(Constraint::le(v, u, one));
            if self.stabs[u] != self.stabs[v] {
                let (low, up) = if self.stabs[u] == Stab::Lower {
                    (u, v)
                } else {
                    (v, u)
                };
                ys.push(Constraint::le(up, low, one));
            }
        }
        for v in 0..n {
            let (lo, hi) = match self.stabs[v] {
                Stab::Lower => (Rational::zero(), one),
                Stab::Upper => (one + self.epsilon, int(2) + self.epsilon),
            };
            ys.push(Constraint::le(v, z, hi));
            ys.push(Constraint::le(z, v, -lo));
        }
        for &(pi, c) in &node.chosen {
            let (on_y, a, b) = self.option_constraint(&self.pairs[pi], c).unwrap();
            let con = Constraint::lt(a, b, -one);
            if on_y {
                ys.push(con)
            } else {
                xs.push(con)
            }
        }
        let (Feasibility::Feasible(xv), Feasibility::Feasible(yv)) =
            (solve_difference_system(&xs), solve_difference_system(&ys))
        else {
            panic!("search bookkeeping accepted an infeasible system");
        };
        let x0 = xv[0];
        let squares = (0..n)
            .map(|v| Square::new(xv[v] - x0, yv[v] - yv[z], self.stabs[v]))
            .collect();
        Representation::new(self.epsilon, squares)
    }
}

/// Decides whether `t` has a 2SUIG representation by exhaustive search.
///
/// Acceptance carries a representation that has passed [`verify_tree`].
/// Stab assignments are tried in a fixed order with vertex 0 lower, so the
/// result is deterministic.
pub fn brute_force_2suig(t: &Tree, cfg: &SearchConfig) -> Result<OracleOutcome, OracleError> {
    if cfg.max_n > MAX_N_CAP {
        return Err(OracleError::InvalidConfig(format!(
            "max_n {} exceeds the cap of {MAX_N_CAP}",
            cfg.max_n
        )));
    }
    if cfg.epsilon <= Rational::zero() || cfg.epsilon >= int(1) {
        return Err(OracleError::InvalidConfig(
            "epsilon must lie in (0, 1)".into(),
        ));
    }
    let n = t.n();
    if n > cfg.max_n {
        return Err(OracleError::TooLarge {
            n,
            max_n: cfg.max_n,
        });
    }
    let scale = *cfg.epsilon.denom();
    let eps_num = *cfg.epsilon.numer();
    let deadline = cfg.time_budget.map(|b| Instant::now() + b);
    let mut proof = ExhaustedProof::default();

    for mask in 0u32..(1u32 << (n - 1)) {
        let stabs: Vec<Stab> = (0..n)
            .map(|v| {
                if v > 0 && mask >> (v - 1) & 1 == 1 {
                    Stab::Upper
                } else {
                    Stab::Lower
                }
            })
            .collect();
        // Same-stab squares always overlap vertically, so each stab induces a
        // unit interval graph; within a tree that means disjoint paths.
        let claw_in_stab = (0..n).any(|v| {
            t.neighbors(v)
                .iter()
                .filter(|&&w| stabs[w] == stabs[v])
                .count()
                > 2
        });
        if claw_in_stab {
            continue;
        }
        if let Some(d) = deadline {
            if Instant::now() >= d {
                return Err(OracleError::BudgetExceeded);
            }
        }
        proof.stab_assignments += 1;
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if t.has_edge(u, v) {
                    continue;
                }
                let cross = match (stabs[u], stabs[v]) {
                    (Stab::Lower, Stab::Upper) => Some((u, v)),
                    (Stab::Upper, Stab::Lower) => Some((v, u)),
                    _ => None,
                };
                pairs.push(Pair { u, v, cross });
            }
        }
        let mut search = Search {
            tree: t,
            stabs,
            pairs,
            scale,
            eps_num,
            epsilon: cfg.epsilon,
            deadline,
            nodes: 0,
        };
        let step = match search.root() {
            Some(root) => search.dfs(root),
            None => Step::Exhausted,
        };
        proof.nodes += search.nodes;
        match step {
            Step::Found(rep) => {
                let report = verify_tree(&rep, t);
                assert!(
                    report.passed(),
                    "oracle produced an invalid representation: {:?}",
                    report.violations
                );
                return Ok(OracleOutcome::Accept(rep));
            }
            Step::Timeout => return Err(OracleError::BudgetExceeded),
            Step::Exhausted => {}
        }
    }
    Ok(OracleOutcome::Reject(proof))
}
