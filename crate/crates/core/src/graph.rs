//! Small simple graphs stored as one `u64` neighbourhood row per vertex.
//!
//! Every graph keeps its edge list sorted lexicographically by `(u, v)` with
//! `u < v`; colourings, copies and certificates all index into that list.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count (matches the single-byte graph6 size field).
pub const MAX_VERTICES: usize = 62;

/// Immutable simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            edges: Vec::new(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::pre(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::pre(format!("loop at vertex {u}")));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Self::from_rows(adj)
    }

    /// Builds a graph from adjacency rows, checking symmetry and irreflexivity.
    pub fn from_rows(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity(n));
        }
        let mask = vertex_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::pre(format!("row {v} has bits beyond n={n}")));
            }
            if row >> v & 1 == 1 {
                return Err(Error::pre(format!("loop at vertex {v}")));
            }
            for u in bits(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::pre(format!("asymmetric pair ({v},{u})")));
                }
            }
        }
        Ok(Self::from_rows_unchecked(adj))
    }

    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in bits(adj[u] >> u >> 1) {
                edges.push((u, u + 1 + v));
            }
        }
        Graph { n, adj, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Position of edge `{u, v}` in the edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Dense `n*n` lookup table from vertex pair to edge index (`u32::MAX` for non-edges).
    pub fn edge_index_table(&self) -> Vec<u32> {
        let mut t = vec![u32::MAX; self.n * self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            t[u * self.n + v] = i as u32;
            t[v * self.n + u] = i as u32;
        }
        t
    }

    /// Non-edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&r| r == 0).count()
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for (v, &row) in self.adj.iter().enumerate() {
            let mut r = 0u64;
            for u in bits(row) {
                r |= 1 << perm[u];
            }
            adj[perm[v]] = r;
        }
        Graph::from_rows_unchecked(adj)
    }

    /// Subgraph induced by the vertices in `mask`, relabelled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits(mask & vertex_mask(self.n)).collect();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| bits(self.adj[v] & mask).fold(0u64, |r, u| r | 1 << pos[u]))
            .collect();
        Graph::from_rows_unchecked(adj)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::encode(self))
    }
}

#[inline]
pub(crate) fn vertex_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bit positions of a word, lowest first.
#[inline]
pub fn bits(mut w: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if w == 0 {
            None
        } else {
            let i = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i)
        }
    })
}

/// The named families used as building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Complete,
    Empty,
    Path,
    Cycle,
    Star,
    CompleteBipartite,
}

/// Builds a standard graph.
///
/// Labelling: paths and cycles run `0-1-..-(n-1)`; the star `K_{1,k}` has centre 0
/// and leaves `1..=k`; `K_{a,b}` has parts `0..a` and `a..a+b`.
pub fn standard_graph(kind: StandardKind, params: &[usize]) -> Result<Graph> {
    let want = match kind {
        StandardKind::CompleteBipartite => 2,
        _ => 1,
    };
    if params.len() != want {
        return Err(Error::pre(format!(
            "{kind:?} takes {want} parameter(s), got {}",
            params.len()
        )));
    }
    match kind {
        StandardKind::Complete => complete(params[0]),
        StandardKind::Empty => Graph::empty(params[0]),
        StandardKind::Path => path(params[0]),
        StandardKind::Cycle => cycle(params[0]),
        StandardKind::Star => star(params[0]),
        StandardKind::CompleteBipartite => complete_bipartite(params[0], params[1]),
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }
    let mask = vertex_mask(n);
    Ok(Graph::from_rows_unchecked(
        (0..n).map(|v| mask & !(1 << v)).collect(),
    ))
}

/// Path on `n` vertices (so `path(4)` is P4 with three edges).
pub fn path(n: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::pre(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// The star `K_{1,k}`.
pub fn star(k: usize) -> Result<Graph> {
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Graph::from_edges(k + 1, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let g = Graph::empty(a)?;
    let h = Graph::empty(b)?;
    join(&g, &h)
}

/// `G ∪ H`: vertices of `h` are shifted by `g.n()`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }
    let mut adj = g.adj.clone();
    adj.extend(h.adj.iter().map(|&r| r << g.n));
    Ok(Graph::from_rows_unchecked(adj))
}

/// `G + H`: disjoint union plus every edge between the two vertex sets.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }
    let g_mask = vertex_mask(g.n);
    let h_mask = vertex_mask(h.n) << g.n;
    let mut adj: Vec<u64> = g.adj.iter().map(|&r| r | h_mask).collect();
    adj.extend(h.adj.iter().map(|&r| (r << g.n) | g_mask));
    Ok(Graph::from_rows_unchecked(adj))
}

pub fn complement(g: &Graph) -> Graph {
    let mask = vertex_mask(g.n);
    Graph::from_rows_unchecked(
        (0..g.n)
            .map(|v| !g.adj[v] & mask & !(1 << v))
            .collect(),
    )
}

/// `G + uv`; fails if `uv` is already an edge.
pub fn add_edge(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    if u >= g.n || v >= g.n || u == v {
        return Err(Error::pre(format!("({u},{v}) is not a vertex pair of an {}-vertex graph", g.n)));
    }
    if g.has_edge(u, v) {
        return Err(Error::pre(format!("({u},{v}) is already an edge")));
    }
    let mut adj = g.adj.clone();
    adj[u] |= 1 << v;
    adj[v] |= 1 << u;
    Ok(Graph::from_rows_unchecked(adj))
}

/// `G - uv`; fails if `uv` is not an edge.
pub fn delete_edge(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    if !g.has_edge(u, v) {
        return Err(Error::pre(format!("({u},{v}) is not an edge")));
    }
    let mut adj = g.adj.clone();
    adj[u] &= !(1 << v);
    adj[v] &= !(1 << u);
    Ok(Graph::from_rows_unchecked(adj))
}

/// Removes degree-0 vertices and relabels the rest contiguously (order preserved).
pub fn strip_isolated(g: &Graph) -> Graph {
    let keep = g
        .adj
        .iter()
        .enumerate()
        .filter(|(_, &r)| r != 0)
        .fold(0u64, |m, (v, _)| m | 1 << v);
    g.induced(keep)
}

/// `k` disjoint copies of `g`.
pub fn multiple(k: usize, g: &Graph) -> Result<Graph> {
    let mut out = Graph::empty(0)?;
    for _ in 0..k {
        out = disjoint_union(&out, g)?;
    }
    Ok(out)
}
