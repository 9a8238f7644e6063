//! Exact canonical labelling by individualisation and refinement.
//!
//! The search tree individualises one vertex of the first non-singleton cell
//! at every level and refines to an equitable partition. Each leaf yields a
//! relabelled adjacency matrix; the canonical form is the lexicographically
//! largest one. Subtrees are skipped only when a discovered automorphism maps
//! them onto subtrees that were already explored, so the result is exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{bits, Graph};
use crate::graph6;

/// graph6 string of the canonical representative of an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Canonical form of the graph encoded by a graph6 string.
    pub fn parse(g6: &str) -> crate::error::Result<Self> {
        Ok(canonical_form(&graph6::decode(g6)?))
    }

    /// Decodes the representative graph.
    pub fn graph(&self) -> Graph {
        graph6::decode(&self.0).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let (_, canon) = canonical_labelling(g);
    CanonicalForm(graph6::encode(&canon))
}

/// Returns `(perm, canon)` with `canon == g.relabel(&perm)`.
pub fn canonical_labelling(g: &Graph) -> (Vec<usize>, Graph) {
    let n = g.n();
    if n <= 1 {
        return ((0..n).collect(), g.clone());
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let root = refine(g, vec![(0..n).collect()]);
    let mut path = Vec::new();
    search.descend(root, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    let canon = g.relabel(&best.label);
    (best.label, canon)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.m() == h.m() && canonical_form(g) == canonical_form(h)
}

type Cells = Vec<Vec<usize>>;

struct Leaf {
    cert: Vec<u64>,
    /// `label[v]` is the canonical position of vertex `v`.
    label: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` to abandon everything below the node at depth `level`.
    fn descend(&mut self, cells: Cells, path: &mut Vec<usize>) -> Option<usize> {
        let depth = path.len();
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, path);
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = next[target].iter().copied().filter(|&u| u != v).collect();
            next[target] = vec![v];
            next.insert(target + 1, rest);
            let next = refine(self.g, next);
            path.push(v);
            let jump = self.descend(next, path);
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &Cells, path: &[usize]) -> Option<usize> {
        let n = self.g.n();
        let mut label = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            label[c[0]] = i;
        }
        let mut cert = vec![0u64; n];
        for v in 0..n {
            cert[label[v]] = bits(self.g.row(v)).fold(0u64, |r, u| r | 1 << label[u]);
        }
        let leaf = Leaf {
            cert,
            label,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                label: leaf.label.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if leaf.cert == first.cert {
            let level = common_prefix(&leaf.path, &first.path);
            self.autos.push(automorphism(&leaf.label, &first.label));
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let level = common_prefix(&leaf.path, &best.path);
                self.autos.push(automorphism(&leaf.label, &best.label));
                Some(level)
            }
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Less => None,
        }
    }

    /// Whether `v` lies in the orbit of an explored child under the automorphisms
    /// found so far that fix `path` pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if path.iter().all(|&x| gamma[x] == x) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}

/// Automorphism sending the vertex at canonical position `i` under `a` to the
/// vertex at position `i` under `b`.
fn automorphism(a: &[usize], b: &[usize]) -> Vec<usize> {
    let n = a.len();
    let mut at_b = vec![0; n];
    for (v, &i) in b.iter().enumerate() {
        at_b[i] = v;
    }
    (0..n).map(|v| at_b[a[v]]).collect()
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Refines an ordered partition to the coarsest equitable refinement.
///
/// Cells are split by neighbour counts into each other cell, fragments ordered by
/// count. Only cell structure drives the splitting, so the procedure commutes
/// with relabelling.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    loop {
        let mut changed = false;
        let mut si = 0;
        while si < cells.len() {
            let splitter = cells[si].iter().fold(0u64, |m, &v| m | 1 << v);
            let mut ci = 0;
            while ci < cells.len() {
                if cells[ci].len() > 1 {
                    let mut keyed: Vec<(u32, usize)> = cells[ci]
                        .iter()
                        .map(|&v| ((g.row(v) & splitter).count_ones(), v))
                        .collect();
                    if keyed.iter().any(|&(k, _)| k != keyed[0].0) {
                        keyed.sort_unstable();
                        let mut frags: Vec<Vec<usize>> = Vec::new();
                        let mut last = u32::MAX;
                        for (k, v) in keyed {
                            if k != last {
                                frags.push(Vec::new());
                                last = k;
                            }
                            frags.last_mut().unwrap().push(v);
                        }
                        let added = frags.len() - 1;
                        cells.splice(ci..=ci, frags);
                        ci += added;
                        changed = true;
                    }
                }
                ci += 1;
            }
            si += 1;
        }
        if !changed {
            return cells;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_union, path};

    #[test]
    fn relabelled_paths_agree() {
        let p = path(4).unwrap();
        let q = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }

    #[test]
    fn c4_differs_from_triangle_plus_point() {
        let c4 = cycle(4).unwrap();
        let k3k1 = disjoint_union(&complete(3).unwrap(), &Graph::empty(1).unwrap()).unwrap();
        assert_ne!(canonical_form(&c4), canonical_form(&k3k1));
    }

    #[test]
    fn labelling_is_consistent() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (0, 5)]).unwrap();
        let (perm, canon) = canonical_labelling(&g);
        assert_eq!(g.relabel(&perm), canon);
        assert_eq!(canonical_form(&canon).graph(), canon);
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        for n in [10, 20, 40, 62] {
            let k = complete(n).unwrap();
            assert_eq!(canonical_form(&k).graph(), k);
            assert_eq!(canonical_form(&Graph::empty(n).unwrap()).graph().m(), 0);
        }
        let c = cycle(50).unwrap();
        assert_eq!(canonical_form(&c).graph().m(), 50);
    }
}
