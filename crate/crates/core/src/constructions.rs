//! Witness graphs with closed-form sizes, their explicit rainbow-free
//! colourings, and verification drivers.
//!
//! Labellings:
//!
//! * `k4_saturated(n)`: `K_2 + ((k−1)K_4 ∪ K_m)` with `k = ⌈(n−2)/4⌉`,
//!   `m = n − 4k + 2`. Vertices 0 and 1 form the `K_2`; then the `K_4` blocks in
//!   order, then the `K_m`.
//! * `k4_forcing`: `K_3 + (K_3 ∪ K_1)`. 0..3 is the joined triangle, 3..6 the
//!   other triangle, 6 the `K_1`.
//! * `cycle_witness(k, y_size)`: `X = 0..ℓ` with `ℓ = ⌈k/2⌉` is a clique fully
//!   joined to `Y = ℓ..ℓ+y_size`, except that vertex 1 keeps only the first `z`
//!   vertices of `Y`.
//! * `bipartite_witness(k, l)`: `K_{k, k(k−1)(l−1)+l}` with the small side first.
//! * `star_union_k2(k, n)`: `K_ℓ ∪ empty(n−ℓ)` with `ℓ = 2⌈k/2⌉ + 2`.
//! * `k3_union_k2(n)`: `K_6 ∪ empty(n−6)`.
//! * `matching_mk2(m, n)`: clique on `X = 0..m`; `x_i` is joined to
//!   `y_{i,j} = m + i(m−1) + (j−1)` for `j = 1..m−1`; the rest is isolated.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::colour::EdgeColouring;
use crate::error::{Error, Result};
use crate::graph::{complete, complete_bipartite, cycle, disjoint_union, join, multiple, star, Graph, MAX_VERTICES};
use crate::saturation::{prsat_report, Holds, SaturationReport};
use crate::search::{MembershipVerdict, SearchConfig, Status, VerdictMemo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionId {
    K4Saturated,
    K4Forcing,
    CycleWitness,
    BipartiteWitness,
    StarUnionK2,
    K3UnionK2,
    MatchingMk2,
}

impl ConstructionId {
    pub const ALL: [ConstructionId; 7] = [
        ConstructionId::K4Saturated,
        ConstructionId::K4Forcing,
        ConstructionId::CycleWitness,
        ConstructionId::BipartiteWitness,
        ConstructionId::StarUnionK2,
        ConstructionId::K3UnionK2,
        ConstructionId::MatchingMk2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionId::K4Saturated => "k4_saturated",
            ConstructionId::K4Forcing => "k4_forcing",
            ConstructionId::CycleWitness => "cycle_witness",
            ConstructionId::BipartiteWitness => "bipartite_witness",
            ConstructionId::StarUnionK2 => "star_union_k2",
            ConstructionId::K3UnionK2 => "k3_union_k2",
            ConstructionId::MatchingMk2 => "matching_mk2",
        }
    }

    /// Saturated-graph ids; the others are `F*(H)` members.
    pub fn is_saturated(self) -> bool {
        !matches!(
            self,
            ConstructionId::K4Forcing | ConstructionId::CycleWitness | ConstructionId::BipartiteWitness
        )
    }

    fn keys(self) -> &'static [&'static str] {
        match self {
            ConstructionId::K4Saturated | ConstructionId::K3UnionK2 => &["n"],
            ConstructionId::K4Forcing => &[],
            ConstructionId::CycleWitness => &["k", "y_size"],
            ConstructionId::BipartiteWitness => &["k", "l"],
            ConstructionId::StarUnionK2 => &["k", "n"],
            ConstructionId::MatchingMk2 => &["m", "n"],
        }
    }
}

impl std::str::FromStr for ConstructionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::pre(format!("unknown construction {s:?}")))
    }
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A validated recipe. `params` holds every parameter, defaults filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub id: ConstructionId,
    pub params: BTreeMap<String, usize>,
    pub expected_edges: usize,
    pub target: Graph,
    /// Set when a parameter is outside the range the construction is meant
    /// for (currently only a small `y_size`).
    pub off_spec: bool,
}

impl Serialize for ConstructionSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConstructionSpec", 5)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("expected_edges", &self.expected_edges)?;
        st.serialize_field("target", &crate::graph6::encode(&self.target))?;
        st.serialize_field("off_spec", &self.off_spec)?;
        st.end()
    }
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn cycle_z(k: usize) -> usize {
    match k {
        8 => 5,
        _ if k % 2 == 1 => 1,
        _ => 2,
    }
}

fn range_err(id: ConstructionId, what: &str) -> Error {
    Error::pre(format!("{id}: {what}"))
}

impl ConstructionSpec {
    pub fn new(id: ConstructionId, params: &[(&str, usize)]) -> Result<Self> {
        let map = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        ConstructionSpec::from_map(id, map)
    }

    pub fn from_map(id: ConstructionId, mut params: BTreeMap<String, usize>) -> Result<Self> {
        for key in params.keys() {
            if !id.keys().contains(&key.as_str()) {
                return Err(range_err(id, &format!("unexpected parameter {key:?}")));
            }
        }
        let get = |params: &BTreeMap<String, usize>, key: &str| {
            params
                .get(key)
                .copied()
                .ok_or_else(|| range_err(id, &format!("missing parameter {key:?}")))
        };
        let cap = |n: usize| {
            if n > MAX_VERTICES {
                Err(Error::Capacity(n))
            } else {
                Ok(())
            }
        };
        let mut off_spec = false;
        let (expected_edges, target) = match id {
            ConstructionId::K4Saturated => {
                let n = get(&params, "n")?;
                if n < 6 {
                    return Err(range_err(id, "needs n >= 6"));
                }
                cap(n)?;
                let k = (n - 2).div_ceil(4);
                let diff = n as i64 - 4 * k as i64;
                let twice = 7 * n as i64 + diff * diff;
                ((twice / 2 - 8) as usize, complete(4)?)
            }
            ConstructionId::K4Forcing => (2 * choose2(3) + 3 * 4, complete(4)?),
            ConstructionId::CycleWitness => {
                let k = get(&params, "k")?;
                if k < 7 {
                    return Err(range_err(id, "needs k >= 7"));
                }
                let l = k.div_ceil(2);
                let y = *params.entry("y_size".into()).or_insert(5 * l);
                let z = cycle_z(k);
                if y < z {
                    return Err(range_err(id, &format!("y_size must be at least z = {z}")));
                }
                off_spec = y < 5 * l;
                cap(l + y)?;
                (choose2(l) + l * y - (y - z), cycle(k)?)
            }
            ConstructionId::BipartiteWitness => {
                let k = get(&params, "k")?;
                let l = get(&params, "l")?;
                if k < 1 || l < k {
                    return Err(range_err(id, "needs 1 <= k <= l"));
                }
                let b = k * (k - 1) * (l - 1) + l;
                cap(k + b)?;
                (k * b, complete_bipartite(k, l)?)
            }
            ConstructionId::StarUnionK2 => {
                let k = get(&params, "k")?;
                let n = get(&params, "n")?;
                if k < 1 {
                    return Err(range_err(id, "needs k >= 1"));
                }
                let l = 2 * k.div_ceil(2) + 2;
                if n < l {
                    return Err(range_err(id, &format!("needs n >= {l}")));
                }
                cap(n)?;
                (choose2(l), disjoint_union(&star(k)?, &complete(2)?)?)
            }
            ConstructionId::K3UnionK2 => {
                let n = get(&params, "n")?;
                if n < 6 {
                    return Err(range_err(id, "needs n >= 6"));
                }
                cap(n)?;
                (15, disjoint_union(&complete(3)?, &complete(2)?)?)
            }
            ConstructionId::MatchingMk2 => {
                let m = get(&params, "m")?;
                let n = get(&params, "n")?;
                if m < 3 {
                    return Err(range_err(id, "needs m >= 3"));
                }
                if n < m * m {
                    return Err(range_err(id, "needs n >= m^2"));
                }
                cap(n)?;
                (3 * choose2(m), multiple(m, &complete(2)?)?)
            }
        };
        Ok(ConstructionSpec {
            id,
            params,
            expected_edges,
            target,
            off_spec,
        })
    }

    /// Parses `"<id> key=value ..."`; whitespace and newlines both separate
    /// tokens, `#` starts a comment, and the id may also be given as `id=...`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut id = None;
        let mut params = BTreeMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split_whitespace() {
                match tok.split_once('=') {
                    Some(("id", v)) => id = Some(v.parse::<ConstructionId>()?),
                    Some((k, v)) => {
                        let v = v
                            .parse::<usize>()
                            .map_err(|_| Error::pre(format!("parameter {k}: {v:?} is not a count")))?;
                        params.insert(k.to_string(), v);
                    }
                    None if id.is_none() => id = Some(tok.parse::<ConstructionId>()?),
                    None => return Err(Error::pre(format!("unexpected token {tok:?}"))),
                }
            }
        }
        let id = id.ok_or_else(|| Error::pre("construction id missing"))?;
        ConstructionSpec::from_map(id, params)
    }

    pub fn param(&self, key: &str) -> usize {
        self.params[key]
    }
}

/// Builds the graph; its edge count always equals `spec.expected_edges`.
pub fn build(spec: &ConstructionSpec) -> Result<Graph> {
    let g = match spec.id {
        ConstructionId::K4Saturated => {
            let n = spec.param("n");
            let k = (n - 2).div_ceil(4);
            let m = n + 2 - 4 * k;
            let mut blocks = multiple(k - 1, &complete(4)?)?;
            blocks = disjoint_union(&blocks, &complete(m)?)?;
            join(&complete(2)?, &blocks)?
        }
        ConstructionId::K4Forcing => {
            let k3 = complete(3)?;
            join(&k3, &disjoint_union(&k3, &Graph::empty(1)?)?)?
        }
        ConstructionId::CycleWitness => {
            let k = spec.param("k");
            let y = spec.param("y_size");
            let l = k.div_ceil(2);
            let z = cycle_z(k);
            let mut edges = Vec::new();
            for a in 0..l {
                for b in a + 1..l {
                    edges.push((a, b));
                }
                for j in 0..y {
                    if a != 1 || j < z {
                        edges.push((a, l + j));
                    }
                }
            }
            Graph::from_edges(l + y, &edges)?
        }
        ConstructionId::BipartiteWitness => {
            let (k, l) = (spec.param("k"), spec.param("l"));
            complete_bipartite(k, k * (k - 1) * (l - 1) + l)?
        }
        ConstructionId::StarUnionK2 => {
            let k = spec.param("k");
            let l = 2 * k.div_ceil(2) + 2;
            disjoint_union(&complete(l)?, &Graph::empty(spec.param("n") - l)?)?
        }
        ConstructionId::K3UnionK2 => disjoint_union(&complete(6)?, &Graph::empty(spec.param("n") - 6)?)?,
        ConstructionId::MatchingMk2 => {
            let (m, n) = (spec.param("m"), spec.param("n"));
            let mut edges = Vec::new();
            for a in 0..m {
                for b in a + 1..m {
                    edges.push((a, b));
                }
                for j in 1..m {
                    edges.push((a, y_index(m, a, j)));
                }
            }
            Graph::from_edges(n, &edges)?
        }
    };
    assert_eq!(
        g.m(),
        spec.expected_edges,
        "{} edge count disagrees with its closed form",
        spec.id
    );
    Ok(g)
}

fn y_index(m: usize, i: usize, j: usize) -> usize {
    m + i * (m - 1) + (j - 1)
}

/// 1-factor of the pair `{a, b}` in the round-robin factorisation of `K_l`
/// (`l` even): `0..l−1` sit on a circle, `l − 1` is the centre.
fn round_robin(a: usize, b: usize, l: usize) -> u32 {
    let p = l - 1;
    if a == p {
        return b as u32;
    }
    if b == p {
        return a as u32;
    }
    // 2 is invertible mod the odd p
    ((a + b) * p.div_ceil(2) % p) as u32
}

fn round_robin_clique(g: &Graph, l: usize) -> EdgeColouring {
    let raw: Vec<u32> = g.edges().iter().map(|&(a, b)| round_robin(a, b, l)).collect();
    EdgeColouring::normalized(&raw)
}

/// The explicit rainbow-`target`-free colouring for saturated-graph ids.
pub fn canonical_colouring(spec: &ConstructionSpec) -> Result<Option<EdgeColouring>> {
    let g = build(spec)?;
    let phi = match spec.id {
        ConstructionId::K4Saturated => {
            // each block B with u, v forms a K_6 (or a smaller clique); local
            // index 5 is u, 0 is v, so uv lies in factor 0, which is shared
            let block = |x: usize| if x < 2 { None } else { Some((x - 2) / 4) };
            let local = |x: usize| match x {
                0 => 5,
                1 => 0,
                _ => (x - 2) % 4 + 1,
            };
            let raw: Vec<u32> = g
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let f = round_robin(local(a), local(b), 6);
                    match block(b) {
                        Some(i) if f != 0 => 5 * i as u32 + f,
                        _ => 0,
                    }
                })
                .collect();
            EdgeColouring::normalized(&raw)
        }
        ConstructionId::StarUnionK2 => round_robin_clique(&g, 2 * spec.param("k").div_ceil(2) + 2),
        ConstructionId::K3UnionK2 => round_robin_clique(&g, 6),
        ConstructionId::MatchingMk2 => {
            let m = spec.param("m") as u32;
            let mut fresh = m;
            let raw: Vec<u32> = g
                .edges()
                .iter()
                .map(|&(_, b)| {
                    if (b as u32) < m {
                        fresh += 1;
                        fresh - 1
                    } else {
                        (b as u32 - m) % (m - 1) + 1
                    }
                })
                .collect();
            EdgeColouring::normalized(&raw)
        }
        _ => return Ok(None),
    };
    Ok(Some(phi))
}

/// Result of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// Saturated-graph ids: the full properly-rainbow-saturation report.
    Saturation(SaturationReport),
    /// Forcing ids: `F*(target)` membership of the built graph.
    Membership { verdict: MembershipVerdict, off_spec: bool },
}

impl Verification {
    /// `Yes` for a saturated graph or an exact member; `No` for a failed
    /// predicate or a certificate of non-membership.
    pub fn holds(&self) -> Holds {
        match self {
            Verification::Saturation(r) => r.holds,
            Verification::Membership { verdict, .. } => match verdict.status {
                Status::Member => Holds::Yes,
                Status::NonMember => Holds::No,
                Status::Unknown => Holds::Unknown,
            },
        }
    }
}

pub fn verify(spec: &ConstructionSpec, cfg: &SearchConfig) -> Result<Verification> {
    let g = build(spec)?;
    if spec.id.is_saturated() {
        let phi = canonical_colouring(spec)?;
        let report = prsat_report(&g, &spec.target, cfg, phi.as_ref(), &mut VerdictMemo::new());
        Ok(Verification::Saturation(report))
    } else {
        Ok(Verification::Membership {
            verdict: cfg.decide(&g, &spec.target),
            off_spec: spec.off_spec,
        })
    }
}
