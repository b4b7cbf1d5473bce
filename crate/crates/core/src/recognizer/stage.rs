//! Stage-wise placement of the red path `a_1 ... a_k` and its associates.
//!
//! Red vertex `a_i` sits at `x = i`. A stage picks a stab and a contact level
//! for `a_i`, a corner for each agent, and an exit (direction and stab) for each
//! tail. The choice fixes every separation the squares need, which is a system
//! of difference constraints; its leftmost solution is the placement. Squares
//! far from the stab gap never touch the other stab, so only a bounded
//! interface (the rightmost occupied x per stab and the near squares of the
//! last stages) carries over to the next stage.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::geometry::{int, shrink_offsets, Rational, Square, Stab};
use crate::red::Agent;
use crate::tree::Vertex;

/// Highest contact level. Two squares in different stabs may touch iff their
/// levels sum to more than this; level 0 squares touch nothing across the gap.
pub const MAX_LEVEL: u8 = 2;

/// States kept between stages after dominance pruning.
const STATE_CAP: usize = 1024;

/// Strict separations keep this much daylight, in units.
const SLACK: i64 = 1;

/// Corner of the red square an agent attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    LowerLeft,
    UpperLeft,
    UpperRight,
    LowerRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::LowerLeft,
        Corner::UpperLeft,
        Corner::UpperRight,
        Corner::LowerRight,
    ];

    pub fn stab(self) -> Stab {
        match self {
            Corner::LowerLeft | Corner::LowerRight => Stab::Lower,
            Corner::UpperLeft | Corner::UpperRight => Stab::Upper,
        }
    }

    pub fn is_left(self) -> bool {
        matches!(self, Corner::LowerLeft | Corner::UpperLeft)
    }
}

/// Direction and stab of a tail leaving its agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Exit {
    pub rightward: bool,
    pub stab: Stab,
}

/// Corner and tail exits chosen for one agent; `exits` follows the long tail, then the short one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AgentRole {
    pub agent: Vertex,
    pub corner: Corner,
    pub exits: Vec<Exit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Placed {
    v: Vertex,
    /// In units of `1/UNIT`.
    x: i64,
    stab: Stab,
    level: u8,
}

#[derive(Debug)]
struct Batch {
    /// `(vertex, x, stab, level)`.
    squares: Vec<(Vertex, Rational, Stab, u8)>,
    parent: Option<Arc<Batch>>,
}

/// A partial placement after stage `index`.
#[derive(Debug, Clone)]
pub struct PlacementState {
    pub index: usize,
    pub red: Vertex,
    pub red_degree: usize,
    pub red_stab: Stab,
    pub red_level: u8,
    /// Rightmost x per stab (lower, upper) over placed squares other than the
    /// current red, in units.
    frontier: [Option<i64>; 2],
    /// Rightmost x over the squares placed in this stage, in units.
    extent: i64,
    pub upper_count: usize,
    pub roles: Vec<AgentRole>,
    near: Vec<Placed>,
    batch: Arc<Batch>,
}

impl PlacementState {
    /// Every placed square so far, as `(vertex, x, stab, level)`.
    pub fn placed(&self) -> Vec<(Vertex, Rational, Stab, u8)> {
        let mut out = Vec::new();
        let mut cur = Some(&self.batch);
        while let Some(b) = cur {
            out.extend(b.squares.iter().copied());
            cur = b.parent.as_ref();
        }
        out
    }

    /// Rightmost x in stab `s` over placed squares other than the current red.
    pub fn frontier(&self, s: Stab) -> Option<Rational> {
        self.frontier[s as usize].map(from_units)
    }

    fn interface_key(&self) -> InterfaceKey {
        let near = self.near.iter().map(|p| (p.x, p.stab, p.level)).collect();
        (self.red_stab, self.red_level, near)
    }

    fn rightmost(&self, s: Stab) -> Option<i64> {
        let own = (self.red_stab == s).then_some(x_red(self.index));
        self.frontier[s as usize].max(own)
    }

    fn order(&self, other: &Self) -> Ordering {
        let key = |s: &Self| (s.extent, s.frontier[0].max(s.frontier[1]), s.upper_count);
        key(self)
            .cmp(&key(other))
            .then_with(|| self.roles.cmp(&other.roles))
    }
}

/// The y coordinate of a square with the given contact level.
pub fn level_y(stab: Stab, level: u8, epsilon: Rational) -> Rational {
    let depth = if level == 0 {
        Rational::zero()
    } else {
        let m = int(i64::from(MAX_LEVEL));
        let step = (int(1) - epsilon) / (m - int(1));
        (int(1) + epsilon) / int(2) + (int(i64::from(level)) - (m + int(1)) / int(2)) * step
    };
    match stab {
        Stab::Lower => depth,
        Stab::Upper => int(2) + epsilon - depth,
    }
}

/// Squares of a finished placement, indexed by vertex.
pub fn squares_of(state: &PlacementState, n: usize, epsilon: Rational) -> Vec<Option<Square>> {
    let mut out = vec![None; n];
    for (v, x, stab, level) in state.placed() {
        out[v] = Some(Square::new(x, level_y(stab, level, epsilon), stab));
    }
    out
}

/// Whether adjacent red vertices of the given degrees share a stab.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabRelation {
    Same,
    Different,
}

/// Two adjacent red vertices of degree four cannot share a stab; otherwise the
/// default is the same stab.
pub fn stab_of_a2(d1: usize, d2: usize) -> StabRelation {
    if d1 == 4 && d2 == 4 {
        StabRelation::Different
    } else {
        StabRelation::Same
    }
}

/// Room test for a right tail and a later left tail facing each other across
/// `m` unit gaps; `alpha_v`, `alpha_w` are the independence numbers of the two
/// agent-plus-tail paths. The case selects the corner pattern of the agents.
pub fn tail_budget(case: u8, m: u32, alpha_v: u32, alpha_w: u32) -> bool {
    let total = alpha_v + alpha_w;
    let need = match case {
        1 => total,
        2 | 4 => total.saturating_sub(1),
        3 => total.saturating_sub(2),
        _ => panic!("tail budget case must be 1..=4"),
    };
    need <= m
}

/// The candidate with the smallest rightmost extent; ties go to fewer upper
/// squares, then to the smallest role assignment.
pub fn choose_optimized(candidates: &[PlacementState]) -> &PlacementState {
    candidates
        .iter()
        .min_by(|a, b| a.order(b))
        .expect("choose_optimized needs a candidate")
}

/// What a stage needs to know about `a_i`.
#[derive(Debug, Clone)]
pub struct StageInput<'a> {
    /// 1-based position on the red path; also the x coordinate of the red square.
    pub index: usize,
    pub red: Vertex,
    pub red_degree: usize,
    pub agents: &'a [Agent],
}

/// Candidates produced by a stage with the bookkeeping for a failure certificate.
#[derive(Debug, Clone, Default)]
pub struct StageOutcome {
    pub candidates: Vec<PlacementState>,
    /// Corner assignments of the agents considered.
    pub tried: usize,
    pub violations: BTreeSet<&'static str>,
    seen: u32,
}

impl StageOutcome {
    fn note(&mut self, why: &'static str) {
        self.seen |= reason_bit(why);
    }

    fn note_mask(&mut self, mask: u32) {
        self.seen |= mask;
    }
}

/// Stage for `a_1` when the red path has at least two vertices.
pub fn place_a1(input: &StageInput) -> StageOutcome {
    expand(None, input)
}

/// Stage for a red path of one vertex, which may have four agents.
pub fn place_a1_singleton(input: &StageInput) -> StageOutcome {
    expand(None, input)
}

/// Stage for `a_i` with `1 < i < k`.
pub fn place_middle(state: &PlacementState, input: &StageInput) -> StageOutcome {
    expand(Some(state), input)
}

/// Stage for the last red vertex.
pub fn place_ak(state: &PlacementState, input: &StageInput) -> StageOutcome {
    expand(Some(state), input)
}

/// Constraint weights and solutions are integers in units of `1/UNIT`.
const UNIT: i64 = 32;

fn from_units(u: i64) -> Rational {
    Rational::new(u, UNIT)
}

fn units(w: Rational) -> i64 {
    assert!(
        UNIT % w.denom() == 0,
        "offset {w} is not a multiple of 1/{UNIT}"
    );
    w.numer() * (UNIT / w.denom())
}

/// Variables a stage system can hold: the red origin, four agents, eight tails.
const MAX_VARS: usize = 16;
const INF: i64 = i64::MAX / 4;

/// Reasons a system can fail, one bit each.
const REASONS: [&str; 14] = [
    "bridge-needs-branch",
    "degree-four-pair",
    "agent-reach",
    "tail-reach",
    "same-stab-gap",
    "contact-gap",
    "stab-frontier",
    "tail-budget",
    "red-blocked",
    "red-contact",
    "agent-contact",
    "bridge-contact",
    "unanchored",
    "other",
];

fn reason_bit(why: &str) -> u32 {
    let k = REASONS
        .iter()
        .position(|&r| r == why)
        .unwrap_or(REASONS.len() - 1);
    1 << k
}

/// Difference constraints `x_b - x_a <= w` kept as all-pairs shortest paths,
/// so each new constraint costs one quadratic update and a contradiction shows
/// up as soon as it is added. Variable 0 is the origin.
#[derive(Debug, Clone)]
struct System {
    n: usize,
    /// `d[a][b]`: tightest known bound on `x_b - x_a`.
    d: [[i64; MAX_VARS]; MAX_VARS],
    /// Reasons behind each bound.
    why: [[u32; MAX_VARS]; MAX_VARS],
    broken: u32,
}

impl Default for System {
    fn default() -> Self {
        System {
            n: 0,
            d: [[INF; MAX_VARS]; MAX_VARS],
            why: [[0; MAX_VARS]; MAX_VARS],
            broken: 0,
        }
    }
}

impl System {
    fn fresh(&mut self) -> usize {
        assert!(self.n < MAX_VARS, "stage system has too many variables");
        self.d[self.n][self.n] = 0;
        self.n += 1;
        self.n - 1
    }

    fn le(&mut self, a: usize, b: usize, w: i64, why: &'static str) {
        if self.broken != 0 || w >= self.d[a][b] {
            return;
        }
        let bit = reason_bit(why);
        if self.d[b][a] < INF && self.d[b][a] + w < 0 {
            self.broken = self.why[b][a] | bit;
            return;
        }
        let n = self.n;
        for i in 0..n {
            let dia = self.d[i][a];
            if dia >= INF {
                continue;
            }
            for j in 0..n {
                let dbj = self.d[b][j];
                if dbj >= INF {
                    continue;
                }
                let cand = dia + w + dbj;
                if cand < self.d[i][j] {
                    self.d[i][j] = cand;
                    self.why[i][j] = self.why[i][a] | bit | self.why[b][j];
                }
            }
        }
    }

    /// Whether the constraints are consistent and pin every variable from the
    /// left; on failure, the reasons as a bit mask.
    fn solve(&self) -> Result<(), u32> {
        if self.broken != 0 {
            Err(self.broken)
        } else if (0..self.n).any(|v| self.d[v][0] >= INF) {
            Err(reason_bit("unanchored"))
        } else {
            Ok(())
        }
    }

    /// Leftmost solution in units: each variable as far left as its lower bounds allow.
    fn value(&self, v: usize) -> i64 {
        -self.d[v][0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Red,
    Agent(usize),
    Tail(usize),
}

/// Squares rigidly attached to one variable, all in one stab.
#[derive(Debug, Clone)]
struct Item {
    kind: Kind,
    var: usize,
    stab: Stab,
    /// `(vertex, offset, level)`; the first entry is the head. Only the head
    /// may have a positive level.
    squares: Vec<(Vertex, Rational, u8)>,
    /// Head offset and extent, in units.
    head: i64,
    lo: i64,
    hi: i64,
    /// Intended offset from the red square, in units; decides which side of
    /// another item this one goes.
    nominal: i64,
}

impl Item {
    fn new(
        kind: Kind,
        var: usize,
        stab: Stab,
        squares: Vec<(Vertex, Rational, u8)>,
        nominal: i64,
    ) -> Item {
        let lo = units(
            squares
                .iter()
                .map(|s| s.1)
                .min()
                .expect("item has a square"),
        );
        let hi = units(
            squares
                .iter()
                .map(|s| s.1)
                .max()
                .expect("item has a square"),
        );
        let head = units(squares[0].1);
        Item {
            kind,
            var,
            stab,
            squares,
            head,
            lo,
            hi,
            nominal,
        }
    }

    fn head(&self) -> i64 {
        self.head
    }

    fn level(&self) -> u8 {
        self.squares[0].2
    }
}

fn owner_edge(a: Kind, b: Kind) -> bool {
    matches!(
        (a, b),
        (Kind::Red, Kind::Agent(_)) | (Kind::Agent(_), Kind::Red)
    ) || matches!((a, b), (Kind::Agent(j), Kind::Tail(l)) | (Kind::Tail(l), Kind::Agent(j)) if j == l)
}

/// Whether two non-adjacent items of one stage must be kept more than one apart.
fn must_separate(a: &Item, b: &Item) -> bool {
    a.stab == b.stab || a.level() + b.level() > MAX_LEVEL
}

/// Puts item `l` entirely left of item `r`: whole runs within a stab, heads across stabs.
fn separate(sys: &mut System, l: &Item, r: &Item) {
    if l.stab == r.stab {
        sys.le(r.var, l.var, r.lo - l.hi - UNIT - SLACK, "same-stab-gap");
    } else {
        sys.le(
            r.var,
            l.var,
            r.head() - l.head() - UNIT - SLACK,
            "contact-gap",
        );
    }
}

struct Ctx<'a> {
    prev: Option<&'a PlacementState>,
    input: &'a StageInput<'a>,
    red_stab: Stab,
    red_level: u8,
    out: &'a mut StageOutcome,
}

/// The x coordinate of red square `i`, in units.
fn x_red(i: usize) -> i64 {
    i as i64 * UNIT
}

/// Constraints between a new item and the squares of earlier stages.
fn against_prev(sys: &mut System, prev: Option<&PlacementState>, it: &Item, i: usize) {
    let Some(p) = prev else { return };
    if let Some(r) = p.rightmost(it.stab) {
        let why = if matches!(it.kind, Kind::Tail(_)) {
            "tail-budget"
        } else {
            "stab-frontier"
        };
        sys.le(it.var, 0, it.lo - r - UNIT - SLACK, why);
    }
    if it.level() == 0 {
        return;
    }
    let abs_nominal = x_red(i) + it.nominal;
    for q in &p.near {
        if q.stab == it.stab || q.level + it.level() <= MAX_LEVEL {
            continue;
        }
        if abs_nominal > q.x {
            sys.le(it.var, 0, it.head() - q.x - UNIT - SLACK, "contact-gap");
        } else {
            sys.le(0, it.var, q.x - UNIT - SLACK - it.head(), "contact-gap");
        }
    }
}

/// Runs one stage from `prev` (or from scratch for `a_1`).
pub(crate) fn expand(prev: Option<&PlacementState>, input: &StageInput) -> StageOutcome {
    let mut out = StageOutcome {
        tried: (0..input.agents.len()).map(|j| 4 - j).product(),
        ..StageOutcome::default()
    };
    let i = input.index;
    let stabs: &[Stab] = if prev.is_none() {
        &[Stab::Lower]
    } else {
        &[Stab::Lower, Stab::Upper]
    };
    for &s in stabs {
        if let Some(p) = prev {
            if p.red_stab != s {
                if p.red_degree < 3 || input.red_degree < 3 {
                    out.note("bridge-needs-branch");
                    continue;
                }
            } else if stab_of_a2(p.red_degree, input.red_degree) == StabRelation::Different {
                out.note("degree-four-pair");
                continue;
            }
            if p.frontier[s as usize].is_some_and(|r| r >= x_red(i - 1)) {
                out.note("red-blocked");
                continue;
            }
        }
        for level in 0..=MAX_LEVEL {
            if let Some(p) = prev {
                if p.red_stab != s && p.red_level + level <= MAX_LEVEL {
                    out.note("bridge-contact");
                    continue;
                }
                let bad = p.near.iter().any(|q| {
                    q.v != p.red
                        && q.stab != s
                        && q.level + level > MAX_LEVEL
                        && (q.x - x_red(i)).abs() <= UNIT
                });
                if bad {
                    out.note("red-contact");
                    continue;
                }
            }
            let mut sys = System::default();
            sys.fresh();
            let red_item = Item::new(
                Kind::Red,
                0,
                s,
                vec![(input.red, from_units(x_red(i)), level)],
                0,
            );
            let mut ctx = Ctx {
                prev,
                input,
                red_stab: s,
                red_level: level,
                out: &mut out,
            };
            let mut used = [false; 4];
            let mut roles = Vec::new();
            assign(
                &mut ctx,
                &mut sys,
                &mut vec![red_item],
                &mut used,
                &mut roles,
                0,
            );
        }
    }
    out.violations = (0..REASONS.len())
        .filter(|k| out.seen >> k & 1 == 1)
        .map(|k| REASONS[k])
        .collect();
    out
}

fn assign(
    ctx: &mut Ctx,
    sys: &mut System,
    items: &mut Vec<Item>,
    used: &mut [bool; 4],
    roles: &mut Vec<AgentRole>,
    j: usize,
) {
    let agents = ctx.input.agents;
    if j == agents.len() {
        match sys.solve() {
            Ok(()) => finish(ctx, items, roles, sys),
            Err(why) => ctx.out.note_mask(why),
        }
        return;
    }
    let i = ctx.input.index;
    let agent = &agents[j];
    let tails: Vec<&Vec<Vertex>> = agent.tails().collect();
    for (ci, corner) in Corner::ALL.into_iter().enumerate() {
        if used[ci] {
            continue;
        }
        let t = corner.stab();
        let side = if corner.is_left() { -1 } else { 1 };
        let cross_red = t != ctx.red_stab;
        if cross_red && ctx.red_level == 0 {
            ctx.out.note("agent-contact");
            continue;
        }
        used[ci] = true;
        for exits in exit_choices(tails.len(), side, ctx.red_stab) {
            let has_cross_tail = exits.iter().any(|e| e.stab != t);
            let levels: Vec<u8> = if cross_red {
                let min = MAX_LEVEL + 1 - ctx.red_level;
                if has_cross_tail {
                    (min..=MAX_LEVEL).collect()
                } else {
                    vec![min]
                }
            } else if has_cross_tail {
                (1..=MAX_LEVEL).collect()
            } else {
                vec![0]
            };
            for lz in levels {
                let mut sys2 = sys.clone();
                let base = items.len();
                let zvar = sys2.fresh();
                let zn = side * UNIT / 2;
                items.push(Item::new(
                    Kind::Agent(j),
                    zvar,
                    t,
                    vec![(agent.vertex, Rational::zero(), lz)],
                    zn,
                ));
                // |x_z - i| <= 1
                sys2.le(0, zvar, x_red(i) + UNIT, "agent-reach");
                sys2.le(zvar, 0, UNIT - x_red(i), "agent-reach");
                for (tail, e) in tails.iter().zip(&exits) {
                    let d = if e.rightward { 1 } else { -1 };
                    let offs = shrink_offsets(tail.len());
                    let nominal = zn + d * UNIT / 2;
                    let fvar = sys2.fresh();
                    let lf = if e.stab == t { 0 } else { MAX_LEVEL + 1 - lz };
                    let sq = tail
                        .iter()
                        .zip(&offs)
                        .enumerate()
                        .map(|(k, (&v, o))| (v, int(d) * *o, if k == 0 { lf } else { 0 }))
                        .collect();
                    items.push(Item::new(Kind::Tail(j), fvar, e.stab, sq, nominal));
                    sys2.le(zvar, fvar, UNIT, "tail-reach");
                    sys2.le(fvar, zvar, UNIT, "tail-reach");
                    if e.stab == t {
                        // The head lies on its side of the agent; a second square sits
                        // just beyond the head and must clear the agent.
                        let reach = if tail.len() >= 2 { UNIT } else { 0 };
                        if d > 0 {
                            sys2.le(fvar, zvar, -reach, "tail-reach");
                        } else {
                            sys2.le(zvar, fvar, -reach, "tail-reach");
                        }
                    }
                }
                let mut ties = Vec::new();
                for a in base..items.len() {
                    against_prev(&mut sys2, ctx.prev, &items[a], i);
                    for b in 0..a {
                        if owner_edge(items[a].kind, items[b].kind)
                            || !must_separate(&items[a], &items[b])
                        {
                            continue;
                        }
                        match items[a].nominal.cmp(&items[b].nominal) {
                            Ordering::Less => separate(&mut sys2, &items[a], &items[b]),
                            Ordering::Greater => separate(&mut sys2, &items[b], &items[a]),
                            Ordering::Equal => ties.push((a, b)),
                        }
                    }
                }
                // Items aimed at the same spot may go either way round.
                for mask in 0..1u32 << ties.len() {
                    let mut sys3 = sys2.clone();
                    for (bit, &(a, b)) in ties.iter().enumerate() {
                        if mask >> bit & 1 == 0 {
                            separate(&mut sys3, &items[a], &items[b]);
                        } else {
                            separate(&mut sys3, &items[b], &items[a]);
                        }
                    }
                    match sys3.solve() {
                        Ok(_) => {
                            roles.push(AgentRole {
                                agent: agent.vertex,
                                corner,
                                exits: exits.clone(),
                            });
                            assign(ctx, &mut sys3, items, used, roles, j + 1);
                            roles.pop();
                        }
                        Err(why) => ctx.out.note_mask(why),
                    }
                }
                items.truncate(base);
            }
        }
        used[ci] = false;
    }
}

/// Exits for an agent's tails: distinct, and never back across the red
/// square inside the red square's own stab.
fn exit_choices(tails: usize, side: i64, red_stab: Stab) -> Vec<Vec<Exit>> {
    let all: Vec<Exit> = [false, true]
        .into_iter()
        .flat_map(|rightward| [Stab::Lower, Stab::Upper].map(|stab| Exit { rightward, stab }))
        .filter(|e| {
            let inward = e.rightward != (side > 0);
            !(inward && e.stab == red_stab)
        })
        .collect();
    match tails {
        0 => vec![Vec::new()],
        1 => all.iter().map(|&e| vec![e]).collect(),
        _ => all
            .iter()
            .flat_map(|&a| {
                all.iter()
                    .filter(move |&&b| b != a)
                    .map(move |&b| vec![a, b])
            })
            .collect(),
    }
}

fn finish(ctx: &mut Ctx, items: &[Item], roles: &[AgentRole], sys: &System) {
    let i = ctx.input.index;
    let mut squares = Vec::new();
    let mut frontier = match ctx.prev {
        Some(p) => [p.rightmost(Stab::Lower), p.rightmost(Stab::Upper)],
        None => [None, None],
    };
    let mut extent = x_red(i);
    let window = x_red(i) - 2 * UNIT;
    let mut near: Vec<Placed> = ctx
        .prev
        .map(|p| p.near.iter().copied().filter(|q| q.x >= window).collect())
        .unwrap_or_default();
    for it in items {
        let base = sys.value(it.var);
        let base_exact = from_units(base);
        squares.extend(
            it.squares
                .iter()
                .map(|&(v, off, level)| (v, base_exact + off, it.stab, level)),
        );
        extent = extent.max(base + it.hi);
        if it.kind != Kind::Red {
            let f = &mut frontier[it.stab as usize];
            *f = (*f).max(Some(base + it.hi));
        }
        if it.level() > 0 && base + it.head() >= window {
            near.push(Placed {
                v: it.squares[0].0,
                x: base + it.head(),
                stab: it.stab,
                level: it.level(),
            });
        }
    }
    near.sort_by_key(|p| (p.x, p.stab, p.level, p.v));
    let upper_count = squares.iter().filter(|q| q.2 == Stab::Upper).count()
        + ctx.prev.map_or(0, |p| p.upper_count);
    let batch = Arc::new(Batch {
        squares,
        parent: ctx.prev.map(|p| Arc::clone(&p.batch)),
    });
    ctx.out.candidates.push(PlacementState {
        index: i,
        red: ctx.input.red,
        red_degree: ctx.input.red_degree,
        red_stab: ctx.red_stab,
        red_level: ctx.red_level,
        frontier,
        extent,
        upper_count,
        roles: roles.to_vec(),
        near,
        batch,
    });
}

/// Red stab, red level and the squares a later stage can still touch.
type InterfaceKey = (Stab, u8, Vec<(i64, Stab, u8)>);

/// Keeps the candidates no other candidate beats on both frontiers with the
/// same interface, capped at a fixed number in optimized order.
pub fn prune(mut states: Vec<PlacementState>) -> Vec<PlacementState> {
    states.sort_by(|a, b| a.order(b));
    let mut groups: BTreeMap<InterfaceKey, Vec<PlacementState>> = BTreeMap::new();
    let mut order = Vec::new();
    for s in states {
        let key = s.interface_key();
        let group = groups.entry(key.clone()).or_default();
        let dominated = group
            .iter()
            .any(|g| g.frontier[0] <= s.frontier[0] && g.frontier[1] <= s.frontier[1]);
        if !dominated {
            if group.is_empty() {
                order.push(key);
            }
            group.push(s);
        }
    }
    let kept: Vec<PlacementState> = order
        .into_iter()
        .flat_map(|k| groups.remove(&k).unwrap_or_default())
        .collect();
    // States on the frontier trade-off curve of their red stab and level go first,
    // so the cap never drops the only state that leaves one stab open.
    let front = |s: &PlacementState| {
        !kept.iter().any(|g| {
            (g.red_stab, g.red_level) == (s.red_stab, s.red_level)
                && g.frontier[0] <= s.frontier[0]
                && g.frontier[1] <= s.frontier[1]
                && g.frontier != s.frontier
        })
    };
    let mut ranked: Vec<(bool, PlacementState)> =
        kept.iter().map(|s| (!front(s), s.clone())).collect();
    ranked.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.order(&b.1)));
    ranked.truncate(STATE_CAP);
    let mut kept: Vec<PlacementState> = ranked.into_iter().map(|(_, s)| s).collect();
    kept.sort_by(|a, b| a.order(b));
    kept
}
