//! Edge colourings: normal form, properness and rainbow copies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::subgraph::{rainbow_copy, Copy};

/// Colour ids aligned with a graph's edge list, in restricted-growth normal
/// form: the first occurrence of colour `c` precedes the first occurrence of `c + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeColouring {
    colours: Vec<u32>,
}

impl EdgeColouring {
    /// Renames arbitrary colour ids into normal form.
    pub fn normalized(raw: &[u32]) -> Self {
        let mut rename = std::collections::HashMap::new();
        let colours = raw
            .iter()
            .map(|&c| {
                let next = rename.len() as u32;
                *rename.entry(c).or_insert(next)
            })
            .collect();
        EdgeColouring { colours }
    }

    /// Accepts ids that are already in normal form.
    pub fn from_normal(colours: Vec<u32>) -> Result<Self> {
        let mut next = 0u32;
        for (i, &c) in colours.iter().enumerate() {
            if c > next {
                return Err(Error::pre(format!(
                    "colour {c} at position {i} appears before colour {next}"
                )));
            }
            if c == next {
                next += 1;
            }
        }
        Ok(EdgeColouring { colours })
    }

    pub fn colours(&self) -> &[u32] {
        &self.colours
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn num_colours(&self) -> usize {
        self.colours.iter().max().map_or(0, |&c| c as usize + 1)
    }

    /// Colour classes `E_c` as lists of edge indices.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_colours()];
        for (e, &c) in self.colours.iter().enumerate() {
            out[c as usize].push(e);
        }
        out
    }
}

/// A colouring together with the edge list it refers to; this is the JSON
/// certificate shape `{"edges": [[u, v], ...], "colours": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub edges: Vec<(usize, usize)>,
    pub colours: Vec<u32>,
}

impl Certificate {
    pub fn new(g: &Graph, phi: &EdgeColouring) -> Self {
        Certificate {
            edges: g.edges().to_vec(),
            colours: phi.colours().to_vec(),
        }
    }

    /// Re-aligns the certificate with `g`'s edge list.
    pub fn colouring_for(&self, g: &Graph) -> Result<EdgeColouring> {
        if self.edges.len() != self.colours.len() {
            return Err(Error::Shape {
                expected: self.edges.len(),
                got: self.colours.len(),
            });
        }
        if self.edges.len() != g.m() {
            return Err(Error::Shape {
                expected: g.m(),
                got: self.edges.len(),
            });
        }
        let mut raw = vec![0u32; g.m()];
        let mut seen = vec![false; g.m()];
        for (&(u, v), &c) in self.edges.iter().zip(&self.colours) {
            let e = g
                .edge_index(u, v)
                .ok_or_else(|| Error::pre(format!("certificate edge ({u},{v}) not in graph")))?;
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::pre(format!("certificate repeats edge ({u},{v})")));
            }
            raw[e] = c;
        }
        Ok(EdgeColouring::normalized(&raw))
    }
}

fn check_shape(g: &Graph, phi: &EdgeColouring) -> Result<()> {
    if phi.len() != g.m() {
        return Err(Error::Shape {
            expected: g.m(),
            got: phi.len(),
        });
    }
    Ok(())
}

/// Whether no two incident edges share a colour.
pub fn is_proper(g: &Graph, phi: &EdgeColouring) -> Result<bool> {
    check_shape(g, phi)?;
    let mut at_vertex: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    for (&(u, v), &c) in g.edges().iter().zip(phi.colours()) {
        for w in [u, v] {
            if at_vertex[w].contains(&c) {
                return Ok(false);
            }
            at_vertex[w].push(c);
        }
    }
    Ok(true)
}

/// A copy of `h` in `g` whose edges all get distinct colours, if one exists.
/// Properness of `phi` is not assumed.
pub fn has_rainbow(g: &Graph, phi: &EdgeColouring, h: &Graph) -> Result<Option<Copy>> {
    check_shape(g, phi)?;
    Ok(rainbow_copy(g, h, phi.colours()))
}

/// Greedy proper colouring in edge-list order (first fit).
pub fn greedy_proper(g: &Graph) -> EdgeColouring {
    let mut at_vertex: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    let mut raw = Vec::with_capacity(g.m());
    for &(u, v) in g.edges() {
        let c = (0u32..)
            .find(|c| !at_vertex[u].contains(c) && !at_vertex[v].contains(c))
            .unwrap();
        at_vertex[u].push(c);
        at_vertex[v].push(c);
        raw.push(c);
    }
    EdgeColouring::normalized(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn properness_examples() {
        let k3 = complete(3).unwrap();
        assert!(is_proper(&k3, &EdgeColouring::normalized(&[0, 1, 2])).unwrap());
        let p3 = path(3).unwrap();
        assert!(!is_proper(&p3, &EdgeColouring::normalized(&[0, 0])).unwrap());
        // K4 edges: 01 02 03 12 13 23; matchings {01,23} {02,13} {03,12}
        let k4 = complete(4).unwrap();
        let phi = EdgeColouring::normalized(&[0, 1, 2, 2, 1, 0]);
        assert!(is_proper(&k4, &phi).unwrap());
        assert!(matches!(
            is_proper(&k4, &EdgeColouring::normalized(&[0, 1])),
            Err(Error::Shape { expected: 6, got: 2 })
        ));
    }

    #[test]
    fn rainbow_examples() {
        let k4 = complete(4).unwrap();
        let phi = EdgeColouring::normalized(&[0, 1, 2, 2, 1, 0]);
        assert!(has_rainbow(&k4, &phi, &path(4).unwrap()).unwrap().is_none());
        let tri = has_rainbow(&k4, &phi, &complete(3).unwrap()).unwrap().unwrap();
        assert_eq!(tri.edges.len(), 3);
        let k3 = complete(3).unwrap();
        let c = has_rainbow(&k3, &greedy_proper(&k3), &k3).unwrap().unwrap();
        assert_eq!(c.edges, vec![0, 1, 2]);
    }

    #[test]
    fn normal_form() {
        let phi = EdgeColouring::normalized(&[7, 3, 7, 9]);
        assert_eq!(phi.colours(), &[0, 1, 0, 2]);
        assert!(EdgeColouring::from_normal(vec![0, 2]).is_err());
        assert_eq!(phi.classes(), vec![vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn certificate_realigns() {
        let k3 = complete(3).unwrap();
        let cert = Certificate {
            edges: vec![(1, 2), (0, 1), (0, 2)],
            colours: vec![5, 6, 7],
        };
        assert_eq!(cert.colouring_for(&k3).unwrap().colours(), &[0, 1, 2]);
        let json = serde_json::to_string(&Certificate::new(&k3, &greedy_proper(&k3))).unwrap();
        assert_eq!(json, r#"{"edges":[[0,1],[0,2],[1,2]],"colours":[0,1,2]}"#);
    }
}
