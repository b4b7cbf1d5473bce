//! Linear-time recognition of trees that are 2SUIGs.
//!
//! Trees with a vertex of degree five or more, or whose red edges do not form
//! a path, are rejected outright. Trees with at most one branch vertex get a
//! direct layout. Everything else is placed stage by stage along the extended
//! red path, once for each orientation of the path.

mod shape;
mod single;
pub mod stage;

use serde::Serialize;

use crate::geometry::{default_epsilon, verify_tree, Rational, Representation, Square};
use crate::red::{
    decompose, extended_red_path, red_edges, red_path_or_fail, Decomposition, RedError,
};
use crate::tree::{Tree, Vertex};

pub use shape::{shape_violations, ShapeViolation};
pub use single::layout_single_branch;
pub use stage::{
    choose_optimized, place_a1, place_a1_singleton, place_ak, place_middle, stab_of_a2,
    tail_budget, AgentRole, Corner, Exit, PlacementState, StabRelation, StageInput, StageOutcome,
};

/// Why a tree was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    DegreeExceeded {
        vertex: Vertex,
        degree: usize,
    },
    RedSubgraphNotPath {
        vertex: Vertex,
    },
    NoSpecialVertex,
    /// A vertex that is neither red, an agent, nor on a tail.
    MalformedPeriphery {
        vertex: Vertex,
    },
    /// No placement of red vertex `index` (1-based along the path) survived.
    StageFailure {
        index: usize,
        red: Vertex,
        tried: usize,
        violations: Vec<String>,
    },
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::DegreeExceeded { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree} > 4")
            }
            Certificate::RedSubgraphNotPath { vertex } => {
                write!(f, "red edges do not form a path at vertex {vertex}")
            }
            Certificate::NoSpecialVertex => write!(f, "no vertex is adjacent to every branch vertex"),
            Certificate::MalformedPeriphery { vertex } => {
                write!(f, "vertex {vertex} is a branch vertex away from the red path")
            }
            Certificate::StageFailure {
                index,
                red,
                tried,
                violations,
            } => write!(
                f,
                "no placement for red vertex {red} (position {index}, {tried} corner assignments): {}",
                violations.join(", ")
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Accept(Representation),
    Reject(Certificate),
}

impl Recognition {
    pub fn accepted(&self) -> bool {
        matches!(self, Recognition::Accept(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecognizerConfig {
    pub epsilon: Rational,
}

impl Default for RecognizerConfig {
    fn default() -> Self {
        RecognizerConfig {
            epsilon: default_epsilon(),
        }
    }
}

impl From<RedError> for Certificate {
    fn from(e: RedError) -> Self {
        match e {
            RedError::NoSpecialVertex => Certificate::NoSpecialVertex,
            RedError::NotAPath(v) => Certificate::RedSubgraphNotPath { vertex: v },
            RedError::MalformedPeriphery(v) => Certificate::MalformedPeriphery { vertex: v },
        }
    }
}

/// Recognizes with the default gap `eps = 1/2`.
pub fn recognize(t: &Tree) -> Recognition {
    recognize_with(t, &RecognizerConfig::default())
}

/// The red-structure analysis alone: degree check, red path and decomposition.
///
/// Returns `Ok(None)` for trees with at most one branch vertex.
pub fn analyze(t: &Tree) -> Result<Option<Decomposition>, Certificate> {
    if let Some(v) = (0..t.n()).find(|&v| t.degree(v) > 4) {
        return Err(Certificate::DegreeExceeded {
            vertex: v,
            degree: t.degree(v),
        });
    }
    if (0..t.n()).filter(|&v| t.degree(v) >= 3).nth(1).is_none() {
        return Ok(None);
    }
    let outcome = red_path_or_fail(t, &red_edges(t));
    let path = extended_red_path(t, &outcome)?;
    Ok(Some(decompose(t, &path)?))
}

pub fn recognize_with(t: &Tree, cfg: &RecognizerConfig) -> Recognition {
    let d = match analyze(t) {
        Err(c) => return Recognition::Reject(c),
        Ok(None) => return accept(t, layout_single_branch(t, cfg.epsilon)),
        Ok(Some(d)) => d,
    };
    let forward = run_stages(t, &d);
    let result = match forward {
        Ok(state) => Ok(state),
        Err(cert) => run_stages(t, &d.reversed()).map_err(|_| cert),
    };
    match result {
        Err(cert) => Recognition::Reject(cert),
        Ok(state) => {
            let squares: Vec<Square> = stage::squares_of(&state, t.n(), cfg.epsilon)
                .into_iter()
                .enumerate()
                .map(|(v, s)| s.unwrap_or_else(|| panic!("vertex {v} was never placed")))
                .collect();
            accept(t, Representation::new(cfg.epsilon, squares))
        }
    }
}

fn accept(t: &Tree, r: Representation) -> Recognition {
    let report = verify_tree(&r, t);
    assert!(
        report.passed(),
        "internal error: recognizer produced an invalid representation: {:?}",
        report.violations
    );
    Recognition::Accept(r)
}

/// Runs the stage loop along the path and returns the optimized final placement.
pub fn run_stages(t: &Tree, d: &Decomposition) -> Result<PlacementState, Certificate> {
    let a = &d.path.vertices;
    let k = a.len();
    let mut states: Vec<PlacementState> = Vec::new();
    for i in 1..=k {
        let input = StageInput {
            index: i,
            red: a[i - 1],
            red_degree: t.degree(a[i - 1]),
            agents: &d.agents[i - 1],
        };
        let mut merged = StageOutcome::default();
        if i == 1 {
            merged = if k == 1 {
                place_a1_singleton(&input)
            } else {
                place_a1(&input)
            };
        } else {
            for s in &states {
                let out = if i == k {
                    place_ak(s, &input)
                } else {
                    place_middle(s, &input)
                };
                merged.tried = merged.tried.max(out.tried);
                merged.violations.extend(out.violations);
                merged.candidates.extend(out.candidates);
            }
        }
        if merged.candidates.is_empty() {
            return Err(Certificate::StageFailure {
                index: i,
                red: a[i - 1],
                tried: merged.tried,
                violations: merged.violations.into_iter().map(String::from).collect(),
            });
        }
        states = stage::prune(merged.candidates);
    }
    Ok(choose_optimized(&states).clone())
}
