//! Kászonyi–Tuza parameters of a graph family and the linear saturation bound
//! `u·n + ⌊(d−1)(n−u)/2⌋ − C(u+1, 2)`.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{add_edge, complete, join, Graph};
use crate::independence::{for_each_independent_set, independence_number};
use crate::saturation::{prsat_report, Holds};
use crate::search::{SearchConfig, Status, VerdictMemo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KtParams {
    pub u: usize,
    pub d: usize,
    pub n: usize,
}

/// `|V(G)| − α(G) − 1`, clamped at 0 for edgeless graphs.
pub fn kt_u(g: &Graph) -> usize {
    g.n().saturating_sub(independence_number(g) + 1)
}

/// Least `|N(x) ∩ S|` over independent sets `S` of size `|V(G)| − u − 1` and
/// vertices `x ∉ S`; `None` when no such pair exists.
pub fn kt_d(g: &Graph, u: usize) -> Option<usize> {
    let size = g.n().checked_sub(u + 1)?;
    if size >= g.n() {
        return None;
    }
    let mut best: Option<usize> = None;
    let _ = for_each_independent_set(g, size, |s| {
        for x in 0..g.n() {
            if s >> x & 1 == 0 {
                let d = (g.row(x) & s).count_ones() as usize;
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        if best == Some(0) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    best
}

/// The bound, in exact integer arithmetic.
pub fn kt_bound(p: KtParams) -> Result<i64> {
    if p.n < p.u {
        return Err(Error::pre(format!("kt bound needs n >= u, got n={} u={}", p.n, p.u)));
    }
    let (u, d, n) = (p.u as i64, p.d as i64, p.n as i64);
    Ok(u * n + ((d - 1) * (n - u)).div_euclid(2) - (u + 1) * u / 2)
}

/// Starts from `K_u + empty(n − u)` and adds, in lexicographic order, every
/// non-edge whose addition keeps the graph outside `F*(H)`. Once `G + e` is in
/// `F*(H)` it stays there as `G` grows, so one pass suffices.
///
/// The result is checked to be properly rainbow `H`-saturated.
pub fn greedy_kt_saturate(h: &Graph, n: usize, u: usize, cfg: &SearchConfig) -> Result<Graph> {
    if u > n {
        return Err(Error::pre(format!("u={u} exceeds n={n}")));
    }
    let exact = SearchConfig { trials: 0, ..*cfg };
    let mut g = join(&complete(u)?, &Graph::empty(n - u)?)?;
    match exact.decide(&g, h).status {
        Status::NonMember => {}
        Status::Member => {
            return Err(Error::pre(format!("K_{u} + empty({}) already lies in F*(H)", n - u)))
        }
        Status::Unknown => return Err(budget("starting graph")),
    }
    let mut memo = VerdictMemo::new();
    for (a, b) in g.non_edges() {
        let ge = add_edge(&g, a, b)?;
        match memo.decide(&ge, h, &exact).status {
            Status::NonMember => g = ge,
            Status::Member => {}
            Status::Unknown => return Err(budget(&format!("non-edge ({a},{b})"))),
        }
    }
    match prsat_report(&g, h, &exact, None, &mut memo).holds {
        Holds::Yes => Ok(g),
        Holds::Unknown => Err(budget("post-verification")),
        Holds::No => Err(Error::pre("greedy completion is not saturated".to_string())),
    }
}

fn budget(what: &str) -> Error {
    Error::Budget {
        what: format!("greedy completion: {what} undecided"),
        partial: 0,
    }
}
