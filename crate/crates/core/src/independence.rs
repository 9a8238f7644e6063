//! Independent sets on bit rows.

use std::ops::ControlFlow;

use crate::graph::{bits, vertex_mask, Graph};

/// Exact independence number by branch and bound.
pub fn independence_number(g: &Graph) -> usize {
    let mut best = 0;
    mis(g, vertex_mask(g.n()), 0, &mut best);
    best
}

fn mis(g: &Graph, cand: u64, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // a vertex of degree <= 1 inside `cand` can always be taken
    let mut pick = None;
    let mut max_deg = (0, 0);
    for v in bits(cand) {
        let d = (g.row(v) & cand).count_ones();
        if d <= 1 {
            pick = Some(v);
            break;
        }
        if d > max_deg.0 {
            max_deg = (d, v);
        }
    }
    if let Some(v) = pick {
        mis(g, cand & !(g.row(v) | 1 << v), size + 1, best);
        return;
    }
    let v = max_deg.1;
    mis(g, cand & !(g.row(v) | 1 << v), size + 1, best);
    mis(g, cand & !(1 << v), size, best);
}

/// Visits every independent set of exactly `size` vertices, as a bit mask.
pub fn for_each_independent_set<F>(g: &Graph, size: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(u64) -> ControlFlow<()>,
{
    walk(g, vertex_mask(g.n()), 0, size, &mut visit)
}

fn walk<F>(g: &Graph, cand: u64, chosen: u64, need: usize, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(u64) -> ControlFlow<()>,
{
    if need == 0 {
        return visit(chosen);
    }
    let mut cand = cand;
    while cand.count_ones() as usize >= need {
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        walk(g, cand & !g.row(v), chosen | 1 << v, need - 1, visit)?;
    }
    ControlFlow::Continue(())
}

pub fn clique_number(g: &Graph) -> usize {
    independence_number(&crate::graph::complement(g))
}
