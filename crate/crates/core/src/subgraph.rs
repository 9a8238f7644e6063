//! Non-induced subgraph embedding: copy enumeration, containment tests and
//! colour-constrained searches.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, strip_isolated, vertex_mask, Graph};

/// Default cap on the number of distinct copies collected by [`subgraph_copies`].
pub const DEFAULT_COPY_CAP: usize = 1_000_000;

/// One copy of a pattern inside a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Copy {
    /// `vertex_map[p]` is the host vertex carrying pattern vertex `p`.
    pub vertex_map: Vec<usize>,
    /// Host edge indices covered by the copy, ascending.
    pub edges: Vec<usize>,
}

/// A pattern with its isolated vertices split off and a matching order.
#[derive(Clone, Debug)]
pub(crate) struct Pattern {
    pub core: Graph,
    /// Original id of each core vertex.
    pub orig: Vec<usize>,
    pub orig_n: usize,
}

impl Pattern {
    pub fn new(h: &Graph) -> Self {
        let orig: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
        Pattern {
            core: strip_isolated(h),
            orig,
            orig_n: h.n(),
        }
    }

    /// Whether a host with `n` vertices has room for the isolated pattern vertices.
    pub fn fits(&self, n: usize) -> bool {
        self.orig_n <= n
    }

    /// Pattern edges as pairs of core vertices.
    pub fn edges(&self) -> &[(usize, usize)] {
        self.core.edges()
    }
}

/// Matching order: each next vertex has the most already-placed neighbours.
#[derive(Clone, Debug)]
pub(crate) struct Plan {
    order: Vec<usize>,
    /// For position `i`, the positions `< i` of its pattern neighbours.
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    pub fn new(p: &Graph, start: &[usize]) -> Self {
        let k = p.n();
        let mut order: Vec<usize> = start.to_vec();
        let mut placed = order.iter().fold(0u64, |m, &v| m | 1 << v);
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    (
                        (p.row(v) & placed).count_ones(),
                        p.degree(v),
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            order.push(next);
            placed |= 1 << next;
        }
        let mut pos = vec![0; k];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| bits(p.row(v)).map(|u| pos[u]).filter(|&j| j < i).collect())
            .collect();
        let degree = order.iter().map(|&v| p.degree(v)).collect();
        Plan {
            order,
            back,
            degree,
        }
    }
}

/// Backtracking embedder. `colours`, when present, restricts to copies whose
/// edges carry pairwise distinct colours.
pub(crate) struct Embedder<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    plan: Plan,
    index: Vec<u32>,
    colours: Option<&'a [u32]>,
    host_deg: Vec<usize>,
}

impl<'a> Embedder<'a> {
    pub fn new(host: &'a Graph, pattern: &'a Graph, start: &[usize], colours: Option<&'a [u32]>) -> Self {
        Embedder {
            host,
            pattern,
            plan: Plan::new(pattern, start),
            index: host.edge_index_table(),
            colours,
            host_deg: (0..host.n()).map(|v| host.degree(v)).collect(),
        }
    }

    /// Visits every embedding; `fixed` pre-assigns the first order positions.
    /// The visitor receives `map[pattern_vertex] = host_vertex`.
    pub fn run<F>(&self, fixed: &[usize], mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let k = self.pattern.n();
        let mut at = vec![usize::MAX; k];
        let mut used_colours = Vec::new();
        let mut used = 0u64;
        for (i, &x) in fixed.iter().enumerate() {
            if !self.admissible(i, x, &at, used, &mut used_colours) {
                return ControlFlow::Continue(());
            }
            at[i] = x;
            used |= 1 << x;
        }
        let mut map = vec![0; k];
        self.extend(fixed.len(), &mut at, used, &mut used_colours, &mut map, &mut visit)
    }

    /// Checks placing order position `i` on host vertex `x`; on success pushes
    /// the colours of the new edges.
    fn admissible(&self, i: usize, x: usize, at: &[usize], used: u64, used_colours: &mut Vec<u32>) -> bool {
        if used >> x & 1 == 1 || self.host_deg[x] < self.plan.degree[i] {
            return false;
        }
        let n = self.host.n();
        let base = used_colours.len();
        for &j in &self.plan.back[i] {
            let e = self.index[x * n + at[j]];
            if e == u32::MAX {
                used_colours.truncate(base);
                return false;
            }
            if let Some(col) = self.colours {
                let c = col[e as usize];
                if used_colours.contains(&c) {
                    used_colours.truncate(base);
                    return false;
                }
                used_colours.push(c);
            }
        }
        true
    }

    fn extend<F>(
        &self,
        i: usize,
        at: &mut [usize],
        used: u64,
        used_colours: &mut Vec<u32>,
        map: &mut [usize],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let k = at.len();
        if i == k {
            for (pos, &v) in self.plan.order.iter().enumerate() {
                map[v] = at[pos];
            }
            return visit(map);
        }
        let mut cand = vertex_mask(self.host.n()) & !used;
        for &j in &self.plan.back[i] {
            cand &= self.host.row(at[j]);
        }
        for x in bits(cand) {
            let base = used_colours.len();
            if !self.admissible(i, x, at, used, used_colours) {
                continue;
            }
            at[i] = x;
            let flow = self.extend(i + 1, at, used | 1 << x, used_colours, map, visit);
            used_colours.truncate(base);
            flow?;
        }
        ControlFlow::Continue(())
    }

    pub fn edge_set(&self, map: &[usize]) -> Vec<usize> {
        let n = self.host.n();
        let mut e: Vec<usize> = self
            .pattern
            .edges()
            .iter()
            .map(|&(a, b)| self.index[map[a] * n + map[b]] as usize)
            .collect();
        e.sort_unstable();
        e
    }
}

fn full_vertex_map(pat: &Pattern, host_n: usize, core_map: &[usize]) -> Vec<usize> {
    let mut out = vec![usize::MAX; pat.orig_n];
    let mut taken = 0u64;
    for (c, &x) in core_map.iter().enumerate() {
        out[pat.orig[c]] = x;
        taken |= 1 << x;
    }
    let mut spare = bits(vertex_mask(host_n) & !taken);
    for slot in out.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = spare.next().expect("host has room for isolated pattern vertices");
    }
    out
}

/// All copies of `h` in `g`, one per distinct host edge set, in discovery order.
///
/// Isolated pattern vertices are placed on the lowest unused host vertices.
pub fn subgraph_copies(g: &Graph, h: &Graph) -> Result<Vec<Copy>> {
    subgraph_copies_capped(g, h, DEFAULT_COPY_CAP)
}

pub fn subgraph_copies_capped(g: &Graph, h: &Graph, cap: usize) -> Result<Vec<Copy>> {
    let pat = Pattern::new(h);
    if !pat.fits(g.n()) {
        return Ok(Vec::new());
    }
    if pat.core.n() == 0 {
        return Ok(vec![Copy {
            vertex_map: full_vertex_map(&pat, g.n(), &[]),
            edges: Vec::new(),
        }]);
    }
    let emb = Embedder::new(g, &pat.core, &[], None);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut overflow = false;
    let _ = emb.run(&[], |map| {
        let edges = emb.edge_set(map);
        if seen.insert(edges.clone()) {
            if out.len() >= cap {
                overflow = true;
                return ControlFlow::Break(());
            }
            out.push(Copy {
                vertex_map: full_vertex_map(&pat, g.n(), map),
                edges,
            });
        }
        ControlFlow::Continue(())
    });
    if overflow {
        return Err(Error::Budget {
            what: format!("copy cap {cap} exceeded"),
            partial: out.len() as u64,
        });
    }
    Ok(out)
}

/// Whether `g` contains `h` as a (not necessarily induced) subgraph.
pub fn contains_subgraph(g: &Graph, h: &Graph, ignore_isolated: bool) -> bool {
    let pat = Pattern::new(h);
    if !ignore_isolated && !pat.fits(g.n()) {
        return false;
    }
    if pat.core.m() > g.m() || pat.core.n() > g.n() {
        return false;
    }
    if pat.core.n() == 0 {
        return true;
    }
    let emb = Embedder::new(g, &pat.core, &[], None);
    emb.run(&[], |_| ControlFlow::Break(())).is_break()
}

/// Finds a copy of `h` in `g` that uses the edge `{u, v}` of `g`.
pub fn copy_through_edge(g: &Graph, h: &Graph, u: usize, v: usize) -> Option<Copy> {
    let pat = Pattern::new(h);
    if !pat.fits(g.n()) || !g.has_edge(u, v) {
        return None;
    }
    let mut found = None;
    for &(a, b) in pat.edges() {
        let emb = Embedder::new(g, &pat.core, &[a, b], None);
        for (x, y) in [(u, v), (v, u)] {
            let flow = emb.run(&[x, y], |map| {
                found = Some(Copy {
                    vertex_map: full_vertex_map(&pat, g.n(), map),
                    edges: emb.edge_set(map),
                });
                ControlFlow::Break(())
            });
            if flow.is_break() {
                return found;
            }
        }
    }
    None
}

/// Finds a copy of `h` whose edges have pairwise distinct colours under `colours`
/// (indexed like `g.edges()`).
pub fn rainbow_copy(g: &Graph, h: &Graph, colours: &[u32]) -> Option<Copy> {
    let pat = Pattern::new(h);
    if !pat.fits(g.n()) {
        return None;
    }
    if pat.core.n() == 0 {
        return Some(Copy {
            vertex_map: full_vertex_map(&pat, g.n(), &[]),
            edges: Vec::new(),
        });
    }
    let emb = Embedder::new(g, &pat.core, &[], Some(colours));
    let mut found = None;
    let _ = emb.run(&[], |map| {
        found = Some(Copy {
            vertex_map: full_vertex_map(&pat, g.n(), map),
            edges: emb.edge_set(map),
        });
        ControlFlow::Break(())
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_union, multiple, path, star};

    #[test]
    fn copy_counts() {
        let k3 = complete(3).unwrap();
        let k4 = complete(4).unwrap();
        assert_eq!(subgraph_copies(&k4, &k3).unwrap().len(), 4);
        assert_eq!(subgraph_copies(&complete(6).unwrap(), &k4).unwrap().len(), 15);
        let two_k2 = multiple(2, &complete(2).unwrap()).unwrap();
        let copies = subgraph_copies(&path(4).unwrap(), &two_k2).unwrap();
        assert_eq!(copies.len(), 1);
        assert_eq!(copies[0].edges, vec![0, 2]);
    }

    #[test]
    fn copies_respect_structure() {
        let g = cycle(5).unwrap();
        let h = path(4).unwrap();
        for c in subgraph_copies(&g, &h).unwrap() {
            assert_eq!(c.edges.len(), h.m());
            for &(a, b) in h.edges() {
                assert!(g.has_edge(c.vertex_map[a], c.vertex_map[b]));
            }
        }
    }

    #[test]
    fn isolated_pattern_vertices_need_room() {
        let h = disjoint_union(&complete(3).unwrap(), &Graph::empty(2).unwrap()).unwrap();
        assert!(subgraph_copies(&complete(4).unwrap(), &h).unwrap().is_empty());
        let copies = subgraph_copies(&complete(5).unwrap(), &h).unwrap();
        assert_eq!(copies.len(), 10);
        assert!(!contains_subgraph(&complete(4).unwrap(), &h, false));
        assert!(contains_subgraph(&complete(4).unwrap(), &h, true));
    }

    #[test]
    fn containment_examples() {
        assert!(contains_subgraph(&cycle(5).unwrap(), &path(4).unwrap(), false));
        assert!(!contains_subgraph(&star(3).unwrap(), &path(4).unwrap(), false));
        let p3k2 = disjoint_union(&path(3).unwrap(), &complete(2).unwrap()).unwrap();
        let two_k2 = multiple(2, &complete(2).unwrap()).unwrap();
        assert!(contains_subgraph(&p3k2, &two_k2, false));
    }

    #[test]
    fn copy_cap_is_enforced() {
        match subgraph_copies_capped(&complete(8).unwrap(), &complete(3).unwrap(), 10) {
            Err(Error::Budget { partial, .. }) => assert_eq!(partial, 10),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn through_edge() {
        let p4 = path(4).unwrap();
        let two_k2 = multiple(2, &complete(2).unwrap()).unwrap();
        let g = crate::graph::add_edge(&p4, 0, 2).unwrap();
        assert!(copy_through_edge(&g, &two_k2, 0, 2).is_none());
        let c = copy_through_edge(&g, &two_k2, 0, 1).unwrap();
        assert!(c.edges.contains(&g.edge_index(0, 1).unwrap()));
    }
}
