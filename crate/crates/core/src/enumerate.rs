//! Isomorph-free enumeration of graphs on a fixed vertex count, one edge level
//! at a time.
//!
//! Level `m` is obtained by adding every non-edge to every representative of
//! level `m - 1` and deduplicating by canonical form. Every `m`-edge graph
//! arises this way, so each level is complete. Levels are sorted by canonical
//! form, which fixes the enumeration order.

use std::collections::HashSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{add_edge, Graph};

/// Default vertex limit for enumeration.
pub const DEFAULT_MAX_VERTICES: usize = 10;
/// Default cap on the number of classes held for one level.
pub const DEFAULT_MAX_CLASSES: usize = 2_000_000;

#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    pub max_vertices: usize,
    pub max_classes: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_vertices: DEFAULT_MAX_VERTICES,
            max_classes: DEFAULT_MAX_CLASSES,
        }
    }
}

/// Walks the edge levels `0, 1, 2, ...` of `n`-vertex graphs.
pub struct GraphLevels {
    n: usize,
    limits: EnumLimits,
    level: usize,
    reps: Vec<(CanonicalForm, Graph)>,
}

impl GraphLevels {
    pub fn new(n: usize, limits: EnumLimits) -> Result<Self> {
        if n > limits.max_vertices {
            return Err(Error::pre(format!(
                "enumeration limited to {} vertices, asked for {n}",
                limits.max_vertices
            )));
        }
        let g = Graph::empty(n)?;
        Ok(GraphLevels {
            n,
            limits,
            level: 0,
            reps: vec![(canonical_form(&g), g)],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edge count of the current level.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn max_level(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    /// Representatives of the current level, sorted by canonical form.
    pub fn current(&self) -> &[(CanonicalForm, Graph)] {
        &self.reps
    }

    /// Moves to the next edge level. Returns `Ok(false)` past the complete graph.
    pub fn advance(&mut self) -> Result<bool> {
        if self.level >= self.max_level() {
            return Ok(false);
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (_, g) in &self.reps {
            for (u, v) in g.non_edges() {
                let h = add_edge(g, u, v)?;
                let cf = canonical_form(&h);
                if seen.insert(cf.clone()) {
                    if next.len() >= self.limits.max_classes {
                        return Err(Error::Budget {
                            what: format!(
                                "class cap {} reached at level {} of n={}",
                                self.limits.max_classes,
                                self.level + 1,
                                self.n
                            ),
                            partial: next.len() as u64,
                        });
                    }
                    next.push((cf, h));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        // store the canonical representative so labelling is reproducible
        self.reps = next.into_iter().map(|(cf, _)| {
            let g = cf.graph();
            (cf, g)
        }).collect();
        self.level += 1;
        Ok(true)
    }
}

/// One representative per isomorphism class of `n`-vertex `m`-edge graphs.
pub fn enumerate_graphs(n: usize, m: usize) -> Result<Vec<Graph>> {
    enumerate_graphs_with(n, m, EnumLimits::default())
}

pub fn enumerate_graphs_with(n: usize, m: usize, limits: EnumLimits) -> Result<Vec<Graph>> {
    let mut levels = GraphLevels::new(n, limits)?;
    if m > levels.max_level() {
        return Err(Error::pre(format!("{n} vertices admit at most {} edges", levels.max_level())));
    }
    while levels.level() < m {
        levels.advance()?;
    }
    Ok(levels.current().iter().map(|(_, g)| g.clone()).collect())
}
