//! The decision procedure for `F*(H)` membership: does `G` admit a proper edge
//! colouring without a rainbow copy of `H`?
//!
//! Exact mode backtracks over the edges in a fixed order, giving each edge a
//! colour in restricted-growth form (so colour renamings are explored once).
//! Copies of `H` are precomputed; a copy can only stay non-rainbow through a
//! pair of its vertex-disjoint edges sharing a colour, and a branch is cut as
//! soon as some copy has no such pair left that could still become equal.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::clock::Timer;
use crate::colour::{greedy_proper, EdgeColouring};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::subgraph::{rainbow_copy, subgraph_copies_capped, DEFAULT_COPY_CAP};

const NONE: u32 = u32::MAX;
const CHECK_EVERY: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Member,
    NonMember,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Sampled,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Member => "member",
            Status::NonMember => "non_member",
            Status::Unknown => "unknown",
        }
    }
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
        }
    }
}

/// Which copies are re-examined after an edge is coloured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prune {
    /// Only copies whose last edge (in search order) was just coloured.
    Completion,
    /// Every copy near the coloured edge, cutting copies that can no longer
    /// acquire a repeated colour.
    Lookahead,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeOrder {
    /// Next edge maximises incidences with edges already ordered.
    Greedy,
    Lexicographic,
}

/// Search limits. `nodes` counts colour assignments tried.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub nodes: u64,
    pub secs: Option<f64>,
    pub copy_cap: usize,
    pub threads: usize,
    pub prune: Prune,
    pub order: EdgeOrder,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            nodes: 100_000_000,
            secs: None,
            copy_cap: DEFAULT_COPY_CAP,
            threads: 1,
            prune: Prune::Lookahead,
            order: EdgeOrder::Greedy,
        }
    }
}

impl Budget {
    pub fn with_nodes(nodes: u64) -> Self {
        Budget {
            nodes,
            ..Budget::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub trials: u64,
}

/// Outcome of an `F*(H)` membership query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub status: Status,
    /// Rainbow-`H`-free proper colouring; present iff `status` is `NonMember`.
    pub certificate: Option<EdgeColouring>,
    pub mode: Mode,
    pub stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl MembershipVerdict {
    fn new(status: Status, certificate: Option<EdgeColouring>, mode: Mode, stats: SearchStats) -> Self {
        MembershipVerdict {
            status,
            certificate,
            mode,
            stats,
            reason: None,
        }
    }

    pub fn is_member(&self) -> bool {
        self.status == Status::Member
    }

    pub fn is_exact_member(&self) -> bool {
        self.status == Status::Member && self.mode == Mode::Exact
    }

    fn with_reason(mut self, r: impl Into<String>) -> Self {
        self.reason = Some(r.into());
        self
    }
}

/// Search order over edge indices.
pub fn edge_order(g: &Graph, order: EdgeOrder) -> Vec<usize> {
    let m = g.m();
    if order == EdgeOrder::Lexicographic || m == 0 {
        return (0..m).collect();
    }
    let ends = g.edges();
    let first = (0..m)
        .max_by_key(|&e| (g.degree(ends[e].0) + g.degree(ends[e].1), std::cmp::Reverse(e)))
        .unwrap();
    let mut out = vec![first];
    let mut placed = vec![false; m];
    placed[first] = true;
    // incidences with placed edges, per edge
    let mut score = vec![0usize; m];
    let bump = |score: &mut Vec<usize>, e: usize| {
        let (a, b) = ends[e];
        for (f, &(x, y)) in ends.iter().enumerate() {
            if f != e && (x == a || x == b || y == a || y == b) {
                score[f] += 1;
            }
        }
    };
    bump(&mut score, first);
    while out.len() < m {
        let next = (0..m)
            .filter(|&e| !placed[e])
            .max_by_key(|&e| (score[e], std::cmp::Reverse(e)))
            .unwrap();
        placed[next] = true;
        out.push(next);
        bump(&mut score, next);
    }
    out
}

/// Immutable part of one search.
struct Problem<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    words: usize,
    /// Vertex-disjoint edge pairs of each copy.
    pairs: Vec<Vec<(u32, u32)>>,
    /// Copies to re-check after colouring each edge.
    touch: Vec<Vec<u32>>,
}

impl<'a> Problem<'a> {
    fn plain(g: &'a Graph, order: EdgeOrder) -> Self {
        Problem {
            g,
            order: edge_order(g, order),
            words: g.m().max(1).div_ceil(64),
            pairs: Vec::new(),
            touch: vec![Vec::new(); g.m()],
        }
    }

    fn with_copies(g: &'a Graph, copies: &[Vec<usize>], budget: &Budget) -> Self {
        let mut p = Problem::plain(g, budget.order);
        let ends = g.edges();
        let disjoint = |e: usize, f: usize| {
            let (a, b) = ends[e];
            let (c, d) = ends[f];
            a != c && a != d && b != c && b != d
        };
        p.pairs = copies
            .iter()
            .map(|edges| {
                let mut out = Vec::new();
                for (i, &e) in edges.iter().enumerate() {
                    for &f in &edges[i + 1..] {
                        if disjoint(e, f) {
                            out.push((e as u32, f as u32));
                        }
                    }
                }
                out
            })
            .collect();
        let mut pos = vec![0; g.m()];
        for (i, &e) in p.order.iter().enumerate() {
            pos[e] = i;
        }
        match budget.prune {
            Prune::Completion => {
                for (id, edges) in copies.iter().enumerate() {
                    let last = *edges.iter().max_by_key(|&&e| pos[e]).unwrap();
                    p.touch[last].push(id as u32);
                }
            }
            Prune::Lookahead => {
                let mut stamp = vec![usize::MAX; g.m()];
                for (id, edges) in copies.iter().enumerate() {
                    for &e in edges {
                        let (a, b) = ends[e];
                        for (f, &(x, y)) in ends.iter().enumerate() {
                            let near = f == e || x == a || x == b || y == a || y == b;
                            if near && stamp[f] != id {
                                stamp[f] = id;
                                p.touch[f].push(id as u32);
                            }
                        }
                    }
                }
            }
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flow {
    /// Leaf accepted (certificate found or visitor stopped).
    Found,
    Exhausted,
    OutOfBudget,
    Cancelled,
}

struct Shared {
    nodes: AtomicU64,
    found_at: AtomicUsize,
}

struct State<'p, 'a> {
    p: &'p Problem<'a>,
    colour: Vec<u32>,
    used: Vec<u64>,
    ncol: u32,
    nodes: u64,
    flushed: u64,
    limit: u64,
    timer: Timer,
    secs: Option<f64>,
    shared: Option<(&'p Shared, usize)>,
}

impl<'p, 'a> State<'p, 'a> {
    fn new(p: &'p Problem<'a>, budget: &Budget, timer: Timer) -> Self {
        State {
            p,
            colour: vec![NONE; p.g.m()],
            used: vec![0; p.g.n() * p.words],
            ncol: 0,
            nodes: 0,
            flushed: 0,
            limit: budget.nodes,
            timer,
            secs: budget.secs,
            shared: None,
        }
    }

    #[inline]
    fn is_used(&self, v: usize, c: u32) -> bool {
        self.used[v * self.p.words + (c as usize >> 6)] >> (c & 63) & 1 == 1
    }

    #[inline]
    fn toggle(&mut self, v: usize, c: u32) {
        self.used[v * self.p.words + (c as usize >> 6)] ^= 1 << (c & 63);
    }

    fn assign(&mut self, e: usize, c: u32) {
        let (u, v) = self.p.g.edges()[e];
        self.colour[e] = c;
        self.toggle(u, c);
        self.toggle(v, c);
    }

    fn unassign(&mut self, e: usize, c: u32) {
        let (u, v) = self.p.g.edges()[e];
        self.colour[e] = NONE;
        self.toggle(u, c);
        self.toggle(v, c);
    }

    /// `false` when some copy touched by `e` can no longer avoid being rainbow.
    fn consistent(&self, e: usize) -> bool {
        let ends = self.p.g.edges();
        'copies: for &id in &self.p.touch[e] {
            let mut alive = false;
            for &(f, h) in &self.p.pairs[id as usize] {
                let (cf, ch) = (self.colour[f as usize], self.colour[h as usize]);
                match (cf != NONE, ch != NONE) {
                    (true, true) => {
                        if cf == ch {
                            continue 'copies;
                        }
                    }
                    (true, false) | (false, true) => {
                        if !alive {
                            let (set, open) = if cf != NONE { (cf, h) } else { (ch, f) };
                            let (x, y) = ends[open as usize];
                            if !self.is_used(x, set) && !self.is_used(y, set) {
                                alive = true;
                            }
                        }
                    }
                    (false, false) => alive = true,
                }
            }
            if !alive {
                return false;
            }
        }
        true
    }

    fn tick(&mut self) -> Option<Flow> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Some(Flow::OutOfBudget);
        }
        if !self.nodes.is_multiple_of(CHECK_EVERY) {
            return None;
        }
        if let Some((shared, index)) = self.shared {
            let total = shared.nodes.fetch_add(self.nodes - self.flushed, Ordering::Relaxed)
                + (self.nodes - self.flushed);
            self.flushed = self.nodes;
            if total > self.limit {
                return Some(Flow::OutOfBudget);
            }
            if shared.found_at.load(Ordering::Relaxed) < index {
                return Some(Flow::Cancelled);
            }
        }
        if let Some(s) = self.secs {
            if self.timer.elapsed_secs() > s {
                return Some(Flow::OutOfBudget);
            }
        }
        None
    }

    fn dfs(&mut self, pos: usize, stop_at: usize, leaf: &mut dyn FnMut(&Self) -> ControlFlow<()>) -> Flow {
        if pos == stop_at {
            return match leaf(self) {
                ControlFlow::Break(()) => Flow::Found,
                ControlFlow::Continue(()) => Flow::Exhausted,
            };
        }
        let e = self.p.order[pos];
        let (u, v) = self.p.g.edges()[e];
        let top = self.ncol;
        for c in 0..=top {
            if c as usize >= self.p.g.m() {
                break;
            }
            if self.is_used(u, c) || self.is_used(v, c) {
                continue;
            }
            if let Some(stop) = self.tick() {
                return stop;
            }
            self.assign(e, c);
            if c == top {
                self.ncol += 1;
            }
            let flow = if self.consistent(e) {
                self.dfs(pos + 1, stop_at, leaf)
            } else {
                Flow::Exhausted
            };
            if c == top {
                self.ncol -= 1;
            }
            self.unassign(e, c);
            if flow != Flow::Exhausted {
                return flow;
            }
        }
        Flow::Exhausted
    }

    fn certificate(&self) -> EdgeColouring {
        EdgeColouring::normalized(&self.colour)
    }
}

/// Visits every proper colouring of `g` in restricted-growth normal form once.
///
/// Returns the number visited, or a budget error carrying the partial count.
pub fn enumerate_proper_colourings<F>(g: &Graph, budget: &Budget, mut visit: F) -> Result<u64>
where
    F: FnMut(&EdgeColouring) -> ControlFlow<()>,
{
    let p = Problem::plain(g, budget.order);
    let mut st = State::new(&p, budget, Timer::start());
    let mut count = 0u64;
    let flow = st.dfs(0, g.m(), &mut |s: &State| {
        count += 1;
        visit(&s.certificate())
    });
    match flow {
        Flow::OutOfBudget | Flow::Cancelled => Err(Error::Budget {
            what: "proper colouring enumeration".into(),
            partial: count,
        }),
        _ => Ok(count),
    }
}

/// Exact search for a proper colouring of `g` with no rainbow copy of `h`.
///
/// `NonMember` comes with the colouring found, `Member` means the whole
/// (pruned) colouring tree was exhausted, `Unknown` means a budget ran out.
pub fn find_rainbow_free_colouring(g: &Graph, h: &Graph, budget: &Budget) -> MembershipVerdict {
    let timer = Timer::start();
    let stats = |nodes| SearchStats {
        nodes,
        elapsed_ms: timer.elapsed_ms(),
        trials: 0,
    };
    let copies = match subgraph_copies_capped(g, h, budget.copy_cap) {
        Ok(c) => c,
        Err(e) => {
            return MembershipVerdict::new(Status::Unknown, None, Mode::Exact, stats(0))
                .with_reason(e.to_string())
        }
    };
    if copies.is_empty() {
        return MembershipVerdict::new(Status::NonMember, Some(greedy_proper(g)), Mode::Exact, stats(0));
    }
    let edge_sets: Vec<Vec<usize>> = copies.into_iter().map(|c| c.edges).collect();
    let p = Problem::with_copies(g, &edge_sets, budget);
    if p.pairs.iter().any(|pairs| pairs.is_empty()) {
        // that copy is rainbow under every proper colouring
        return MembershipVerdict::new(Status::Member, None, Mode::Exact, stats(0));
    }
    if budget.threads > 1 {
        return parallel_search(&p, budget, timer);
    }
    let mut st = State::new(&p, budget, timer);
    let mut cert = None;
    let flow = st.dfs(0, g.m(), &mut |s: &State| {
        cert = Some(s.certificate());
        ControlFlow::Break(())
    });
    let nodes = st.nodes;
    match flow {
        Flow::Found => MembershipVerdict::new(Status::NonMember, cert, Mode::Exact, stats(nodes)),
        Flow::Exhausted => MembershipVerdict::new(Status::Member, None, Mode::Exact, stats(nodes)),
        Flow::OutOfBudget | Flow::Cancelled => {
            MembershipVerdict::new(Status::Unknown, None, Mode::Exact, stats(nodes))
                .with_reason("search budget exhausted")
        }
    }
}

/// Splits the tree at a shallow depth and searches the subtrees on
/// `budget.threads` workers. The first subtree in sequential order that holds
/// a certificate decides, so the verdict matches the sequential search.
fn parallel_search(p: &Problem<'_>, budget: &Budget, timer: Timer) -> MembershipVerdict {
    let m = p.g.m();
    let want = budget.threads * 8;
    let mut prefixes: Vec<Vec<u32>> = Vec::new();
    let mut depth = 1.min(m);
    let mut prefix_nodes = 0;
    loop {
        prefixes.clear();
        let mut st = State::new(p, budget, timer);
        let order = &p.order;
        let flow = st.dfs(0, depth, &mut |s: &State| {
            prefixes.push(order[..depth].iter().map(|&e| s.colour[e]).collect());
            ControlFlow::Continue(())
        });
        prefix_nodes += st.nodes;
        if flow == Flow::OutOfBudget {
            return MembershipVerdict::new(
                Status::Unknown,
                None,
                Mode::Exact,
                SearchStats {
                    nodes: prefix_nodes,
                    elapsed_ms: timer.elapsed_ms(),
                    trials: 0,
                },
            )
            .with_reason("search budget exhausted");
        }
        if prefixes.len() >= want || depth >= m || prefixes.is_empty() {
            break;
        }
        depth += 1;
    }
    let shared = Shared {
        nodes: AtomicU64::new(prefix_nodes),
        found_at: AtomicUsize::new(usize::MAX),
    };
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<(Flow, Option<EdgeColouring>)>>> = Mutex::new(vec![None; prefixes.len()]);
    std::thread::scope(|scope| {
        for _ in 0..budget.threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= prefixes.len() {
                    break;
                }
                if shared.found_at.load(Ordering::Relaxed) < i {
                    results.lock().unwrap()[i] = Some((Flow::Cancelled, None));
                    continue;
                }
                let mut st = State::new(p, budget, timer);
                st.shared = Some((&shared, i));
                for (k, &c) in prefixes[i].iter().enumerate() {
                    st.assign(p.order[k], c);
                    st.ncol = st.ncol.max(c + 1);
                }
                let mut cert = None;
                let flow = st.dfs(depth, m, &mut |s: &State| {
                    cert = Some(s.certificate());
                    ControlFlow::Break(())
                });
                shared.nodes.fetch_add(st.nodes - st.flushed, Ordering::Relaxed);
                if flow == Flow::Found {
                    shared.found_at.fetch_min(i, Ordering::Relaxed);
                }
                results.lock().unwrap()[i] = Some((flow, cert));
            });
        }
    });
    let stats = SearchStats {
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed_ms: timer.elapsed_ms(),
        trials: 0,
    };
    for r in results.into_inner().unwrap() {
        match r {
            Some((Flow::Exhausted, _)) => continue,
            Some((Flow::Found, cert)) => {
                return MembershipVerdict::new(Status::NonMember, cert, Mode::Exact, stats)
            }
            _ => {
                return MembershipVerdict::new(Status::Unknown, None, Mode::Exact, stats)
                    .with_reason("search budget exhausted")
            }
        }
    }
    MembershipVerdict::new(Status::Member, None, Mode::Exact, stats)
}

/// Draws random proper colourings looking for a rainbow-`h`-free one.
///
/// Never returns `Member`: a hit yields `NonMember` with its certificate,
/// otherwise `Unknown` in sampled mode.
pub fn sample_membership(g: &Graph, h: &Graph, trials: u64, seed: u64) -> MembershipVerdict {
    let timer = Timer::start();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = g.m();
    let ends = g.edges();
    let mut order: Vec<usize> = (0..m).collect();
    for t in 1..=trials.max(1) {
        order.shuffle(&mut rng);
        let mut raw = vec![NONE; m];
        let mut class_size: Vec<u32> = Vec::new();
        let mut at_vertex: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
        for &e in &order {
            let (u, v) = ends[e];
            let feasible: Vec<u32> = (0..class_size.len() as u32)
                .filter(|c| !at_vertex[u].contains(c) && !at_vertex[v].contains(c))
                .collect();
            let total: u32 = feasible.iter().map(|&c| class_size[c as usize] + 1).sum::<u32>() + 1;
            let mut pick = rng.gen_range(0..total);
            let mut chosen = class_size.len() as u32;
            for &c in &feasible {
                let w = class_size[c as usize] + 1;
                if pick < w {
                    chosen = c;
                    break;
                }
                pick -= w;
            }
            if chosen as usize == class_size.len() {
                class_size.push(0);
            }
            class_size[chosen as usize] += 1;
            at_vertex[u].push(chosen);
            at_vertex[v].push(chosen);
            raw[e] = chosen;
        }
        let phi = EdgeColouring::normalized(&raw);
        if rainbow_copy(g, h, phi.colours()).is_none() {
            return MembershipVerdict::new(
                Status::NonMember,
                Some(phi),
                Mode::Sampled,
                SearchStats {
                    nodes: 0,
                    elapsed_ms: timer.elapsed_ms(),
                    trials: t,
                },
            );
        }
    }
    MembershipVerdict::new(
        Status::Unknown,
        None,
        Mode::Sampled,
        SearchStats {
            nodes: 0,
            elapsed_ms: timer.elapsed_ms(),
            trials: trials.max(1),
        },
    )
    .with_reason("no rainbow-free colouring among the samples")
}

/// Exact search first; falls back to sampling when the exact search runs out
/// of budget.
pub fn decide_membership(g: &Graph, h: &Graph, budget: &Budget, trials: u64, seed: u64) -> MembershipVerdict {
    let exact = find_rainbow_free_colouring(g, h, budget);
    if exact.status != Status::Unknown || trials == 0 {
        return exact;
    }
    let mut sampled = sample_membership(g, h, trials, seed);
    sampled.stats.nodes = exact.stats.nodes;
    sampled
}

/// Budget plus sampling fallback, shared by every routine that issues
/// membership queries.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: Budget,
    /// Sampling trials used after the exact search gives up; 0 disables.
    pub trials: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: Budget::default(),
            trials: 200,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn exact(budget: Budget) -> Self {
        SearchConfig {
            budget,
            trials: 0,
            seed: 0,
        }
    }

    pub fn decide(&self, g: &Graph, h: &Graph) -> MembershipVerdict {
        decide_membership(g, h, &self.budget, self.trials, self.seed)
    }
}

/// Verdicts keyed by the canonical forms of `(G, H)`.
///
/// Only certificate-free verdicts (`Member`, `Unknown`) are stored, since a
/// certificate is tied to one labelling.
#[derive(Debug, Default)]
pub struct VerdictMemo {
    map: HashMap<(CanonicalForm, CanonicalForm), MembershipVerdict>,
    hits: u64,
}

impl VerdictMemo {
    pub fn new() -> Self {
        VerdictMemo::default()
    }

    pub fn decide(&mut self, g: &Graph, h: &Graph, cfg: &SearchConfig) -> MembershipVerdict {
        let key = (canonical_form(g), canonical_form(h));
        if let Some(v) = self.map.get(&key) {
            self.hits += 1;
            return v.clone();
        }
        let v = cfg.decide(g, h);
        if v.certificate.is_none() {
            self.map.insert(key, v.clone());
        }
        v
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
