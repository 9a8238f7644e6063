//! Brute-force reference implementations. They share nothing with the
//! library beyond reading a `Graph`'s vertex count and edge list, and are
//! only fast enough for very small inputs.
#![allow(dead_code)]

use prsat_core::Graph;

#[derive(Clone, Debug)]
pub struct Small {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<Vec<bool>>,
}

impl Small {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        let mut list = Vec::new();
        for &(a, b) in edges {
            let (a, b) = (a.min(b), a.max(b));
            if a != b && !adj[a][b] {
                adj[a][b] = true;
                adj[b][a] = true;
                list.push((a, b));
            }
        }
        list.sort();
        Small { n, edges: list, adj }
    }

    pub fn of(g: &Graph) -> Self {
        Small::new(g.n(), g.edges())
    }

    /// The graph with edge set given by `mask` over the pairs of `0..n` in
    /// lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let pairs = pairs(n);
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        Small::new(n, &edges)
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        pairs(self.n).into_iter().filter(|&(a, b)| !self.adj[a][b]).collect()
    }

    pub fn plus(&self, e: (usize, usize)) -> Small {
        let mut edges = self.edges.clone();
        edges.push(e);
        Small::new(self.n, &edges)
    }

    pub fn minus(&self, i: usize) -> Small {
        let mut edges = self.edges.clone();
        edges.remove(i);
        Small::new(self.n, &edges)
    }

    /// Drops isolated vertices, keeping the order of the rest.
    pub fn stripped(&self) -> Small {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.adj[v].iter().any(|&x| x)).collect();
        let pos = |v: usize| keep.iter().position(|&k| k == v).unwrap();
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
        Small::new(keep.len(), &edges)
    }

    fn edge_id(&self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        self.edges.iter().position(|&e| e == key).unwrap()
    }

    pub fn relabel(&self, perm: &[usize]) -> Small {
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        Small::new(self.n, &edges)
    }
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            v.push((a, b));
        }
    }
    v
}

/// Every injective map of `h` into `g` that sends edges to edges, reported
/// as the list of `g`'s edge indices it uses. Stops when `visit` says so.
pub fn for_each_copy(g: &Small, h: &Small, mut visit: impl FnMut(&[usize]) -> bool) {
    if h.n > g.n {
        return;
    }
    let mut map = vec![usize::MAX; h.n];
    let mut used = vec![false; g.n];
    fn rec(
        g: &Small,
        h: &Small,
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == h.n {
            let ids: Vec<usize> = h.edges.iter().map(|&(a, b)| g.edge_id(map[a], map[b])).collect();
            return visit(&ids);
        }
        for v in 0..g.n {
            if used[v] {
                continue;
            }
            if (0..i).any(|j| h.adj[i][j] && !g.adj[v][map[j]]) {
                continue;
            }
            map[i] = v;
            used[v] = true;
            let go_on = rec(g, h, i + 1, map, used, visit);
            used[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(g, h, 0, &mut map, &mut used, &mut visit);
}

pub fn contains(g: &Small, h: &Small) -> bool {
    let mut found = false;
    for_each_copy(g, h, |_| {
        found = true;
        false
    });
    found
}

/// Whether `g + e` has a copy of `h` through `e`.
pub fn new_copy_through(g: &Small, e: (usize, usize), h: &Small) -> bool {
    let ge = g.plus(e);
    let id = ge.edge_id(e.0, e.1);
    let mut found = false;
    for_each_copy(&ge, h, |ids| {
        found = ids.contains(&id);
        !found
    });
    found
}

pub fn is_proper(g: &Small, colours: &[u32]) -> bool {
    colours.len() == g.m()
        && (0..g.m()).all(|i| {
            (i + 1..g.m()).all(|j| {
                let ((a, b), (c, d)) = (g.edges[i], g.edges[j]);
                let touch = a == c || a == d || b == c || b == d;
                !touch || colours[i] != colours[j]
            })
        })
}

pub fn has_rainbow(g: &Small, colours: &[u32], h: &Small) -> bool {
    let mut found = false;
    for_each_copy(g, h, |ids| {
        let mut seen: Vec<u32> = ids.iter().map(|&i| colours[i]).collect();
        seen.sort();
        seen.dedup();
        found = seen.len() == ids.len();
        !found
    });
    found
}

/// All proper colourings up to renaming colours (restricted growth strings
/// over the edge list). Stops when `visit` returns false.
pub fn for_each_proper_colouring(g: &Small, mut visit: impl FnMut(&[u32]) -> bool) {
    let mut colours = vec![0u32; g.m()];
    fn rec(g: &Small, i: usize, top: u32, colours: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        if i == g.m() {
            return visit(colours);
        }
        let (a, b) = g.edges[i];
        for c in 0..=top {
            let clash = (0..i).any(|j| {
                let (x, y) = g.edges[j];
                colours[j] == c && (x == a || x == b || y == a || y == b)
            });
            if clash {
                continue;
            }
            colours[i] = c;
            if !rec(g, i + 1, top.max(c + 1), colours, visit) {
                return false;
            }
        }
        true
    }
    rec(g, 0, 0, &mut colours, &mut visit);
}

pub fn count_proper_colourings(g: &Small) -> u64 {
    let mut count = 0;
    for_each_proper_colouring(g, |_| {
        count += 1;
        true
    });
    count
}

pub fn rainbow_free_colouring(g: &Small, h: &Small) -> Option<Vec<u32>> {
    let mut out = None;
    for_each_proper_colouring(g, |c| {
        if has_rainbow(g, c, h) {
            true
        } else {
            out = Some(c.to_vec());
            false
        }
    });
    out
}

/// Every proper colouring of `g` contains a rainbow `h`.
pub fn member(g: &Small, h: &Small) -> bool {
    rainbow_free_colouring(g, h).is_none()
}

/// A member none of whose single-edge deletions is a member.
pub fn minimal_member(g: &Small, h: &Small) -> bool {
    member(g, h) && (0..g.m()).all(|i| !member(&g.minus(i).stripped(), h))
}

pub fn sat(g: &Small, h: &Small) -> bool {
    !contains(g, h) && g.non_edges().iter().all(|&e| contains(&g.plus(e), h))
}

pub fn ssat(g: &Small, h: &Small) -> bool {
    g.non_edges().iter().all(|&e| new_copy_through(g, e, h))
}

/// `h`-free, and some order of adding the non-edges creates a new copy of
/// `h` at every step. Explores every reachable edge set.
pub fn wsat(g: &Small, h: &Small) -> bool {
    if contains(g, h) {
        return false;
    }
    let missing = g.non_edges();
    let k = missing.len();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![0u64];
    while let Some(s) = stack.pop() {
        if s.count_ones() as usize == k {
            return true;
        }
        if !seen.insert(s) {
            continue;
        }
        let mut cur = g.clone();
        for (i, &e) in missing.iter().enumerate() {
            if s >> i & 1 == 1 {
                cur = cur.plus(e);
            }
        }
        for (i, &e) in missing.iter().enumerate() {
            if s >> i & 1 == 0 && new_copy_through(&cur, e, h) {
                stack.push(s | 1 << i);
            }
        }
    }
    false
}

/// Properly rainbow `h`-saturated, straight from the definition.
pub fn prsat(g: &Small, h: &Small) -> bool {
    !member(g, h) && g.non_edges().iter().all(|&e| member(&g.plus(e), h))
}

/// Least edge count over all labelled graphs on `n` vertices satisfying `p`,
/// scanning edge counts upwards.
pub fn min_edges(n: usize, p: impl Fn(&Small) -> bool) -> Option<usize> {
    let total = n * (n - 1) / 2;
    let mut masks: Vec<u64> = (0u64..1 << total).collect();
    masks.sort_by_key(|m| m.count_ones());
    let mut best: Option<usize> = None;
    for mask in masks {
        let m = mask.count_ones() as usize;
        if best.is_some_and(|b| m > b) {
            break;
        }
        if best.is_none() && p(&Small::from_mask(n, mask)) {
            best = Some(m);
        }
    }
    best
}

pub fn bell(m: usize) -> u64 {
    // Bell triangle
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn mask_of(g: &Small) -> u64 {
    let pairs = pairs(g.n);
    g.edges.iter().map(|e| 1u64 << pairs.iter().position(|p| p == e).unwrap()).sum()
}

/// Isomorphism-class representative: the least edge mask over all
/// relabellings.
pub fn class_key(g: &Small) -> u64 {
    permutations(g.n).iter().map(|p| mask_of(&g.relabel(p))).min().unwrap()
}

pub fn isomorphic(a: &Small, b: &Small) -> bool {
    a.n == b.n && a.m() == b.m() && class_key(a) == class_key(b)
}

/// Number of isomorphism classes of graphs on `n` vertices with `m` edges
/// (any `m` when `None`).
pub fn class_count(n: usize, m: Option<usize>) -> usize {
    let total = n * (n - 1) / 2;
    let mut keys = std::collections::HashSet::new();
    for mask in 0u64..1 << total {
        if m.is_none_or(|m| mask.count_ones() as usize == m) {
            keys.insert(class_key(&Small::from_mask(n, mask)));
        }
    }
    keys.len()
}
