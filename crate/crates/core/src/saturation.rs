//! Saturation predicates and exact minimum-edge searches.
//!
//! Four notions are supported. `Prsat` (properly rainbow saturated): `G` has
//! a proper colouring with no rainbow `H`, and every `G + e` lies in `F*(H)`.
//! `Sat`: `G` is `H`-free and every `G + e` contains `H`. `Ssat`: every `G + e`
//! has a copy of `H` through `e`. `Wsat`: `G` is `H`-free and repeatedly
//! adding edges that close a copy of `H` reaches the complete graph.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::canon::CanonicalForm;
use crate::colour::{has_rainbow, is_proper, EdgeColouring};
use crate::enumerate::{EnumLimits, GraphLevels};
use crate::error::{Error, Result};
use crate::graph::{add_edge, Graph};
use crate::search::{MembershipVerdict, Mode, SearchConfig, Status, VerdictMemo};
use crate::subgraph::{contains_subgraph, copy_through_edge, Copy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SatKind {
    Prsat,
    Sat,
    Ssat,
    Wsat,
}

impl SatKind {
    pub const ALL: [SatKind; 4] = [SatKind::Prsat, SatKind::Sat, SatKind::Ssat, SatKind::Wsat];

    pub fn as_str(self) -> &'static str {
        match self {
            SatKind::Prsat => "prsat",
            SatKind::Sat => "sat",
            SatKind::Ssat => "ssat",
            SatKind::Wsat => "wsat",
        }
    }
}

impl std::str::FromStr for SatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SatKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::pre(format!("unknown saturation kind {s:?}")))
    }
}

impl fmt::Display for SatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Holds {
    Yes,
    No,
    Unknown,
}

impl Holds {
    pub fn as_str(self) -> &'static str {
        match self {
            Holds::Yes => "yes",
            Holds::No => "no",
            Holds::Unknown => "unknown",
        }
    }
}

/// What was established for one non-edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// `F*(H)` membership of `G + e`.
    Verdict(MembershipVerdict),
    /// A copy of `H` in `G + e` (through `e` where the notion requires it).
    Copy(Copy),
    /// No qualifying copy exists.
    NoCopy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonEdgeCheck {
    pub edge: (usize, usize),
    pub evidence: Evidence,
}

/// Where a saturation condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    /// The condition on `G` itself fails: `G` lies in `F*(H)` (prsat) or
    /// contains `H` (sat, wsat).
    Base,
    /// Adding this non-edge does not produce what the notion requires. For
    /// wsat this is a non-edge the closure never reaches.
    NonEdge((usize, usize)),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub kind: SatKind,
    pub holds: Holds,
    /// Rainbow-`H`-free proper colouring of `G` (prsat only).
    pub base_certificate: Option<EdgeColouring>,
    /// Verdict on `G` itself when a search was needed.
    pub base_verdict: Option<MembershipVerdict>,
    /// Non-edges examined, in lexicographic order. Checking stops at the
    /// first definite failure.
    pub per_nonedge: Vec<NonEdgeCheck>,
    pub failure_witness: Option<Failure>,
}

impl SaturationReport {
    fn new(kind: SatKind) -> Self {
        SaturationReport {
            kind,
            holds: Holds::Unknown,
            base_certificate: None,
            base_verdict: None,
            per_nonedge: Vec::new(),
            failure_witness: None,
        }
    }

    fn fail(mut self, f: Failure) -> Self {
        self.holds = Holds::No;
        self.failure_witness = Some(f);
        self
    }
}

/// Properly rainbow `H`-saturated test with a fresh memo.
pub fn is_properly_rainbow_saturated(g: &Graph, h: &Graph, cfg: &SearchConfig) -> SaturationReport {
    prsat_report(g, h, cfg, None, &mut VerdictMemo::new())
}

/// Like [`is_properly_rainbow_saturated`], but tries `base` as the
/// condition-(1) witness before searching, and shares `memo`.
pub fn prsat_report(
    g: &Graph,
    h: &Graph,
    cfg: &SearchConfig,
    base: Option<&EdgeColouring>,
    memo: &mut VerdictMemo,
) -> SaturationReport {
    let mut report = SaturationReport::new(SatKind::Prsat);
    let seeded = base.filter(|phi| {
        is_proper(g, phi).unwrap_or(false) && matches!(has_rainbow(g, phi, h), Ok(None))
    });
    let cert = match seeded {
        Some(phi) => phi.clone(),
        None => {
            let v = cfg.decide(g, h);
            let status = v.status;
            let cert = v.certificate.clone();
            report.base_verdict = Some(v);
            match (status, cert) {
                (Status::NonMember, Some(c)) => c,
                (Status::Member, _) => return report.fail(Failure::Base),
                _ => return report,
            }
        }
    };
    report.base_certificate = Some(cert.clone());
    let mut unknown = false;
    for (u, v) in g.non_edges() {
        let ge = add_edge(g, u, v).expect("non-edge");
        let evidence = nonedge_verdict(g, &ge, h, (u, v), &cert, cfg, memo);
        let status = evidence.status;
        report.per_nonedge.push(NonEdgeCheck {
            edge: (u, v),
            evidence: Evidence::Verdict(evidence),
        });
        match status {
            Status::Member => {}
            Status::NonMember => return report.fail(Failure::NonEdge((u, v))),
            Status::Unknown => unknown = true,
        }
    }
    report.holds = if unknown { Holds::Unknown } else { Holds::Yes };
    report
}

/// Decides `G + e` in `F*(H)`, first trying to extend the base certificate.
fn nonedge_verdict(
    g: &Graph,
    ge: &Graph,
    h: &Graph,
    (u, v): (usize, usize),
    cert: &EdgeColouring,
    cfg: &SearchConfig,
    memo: &mut VerdictMemo,
) -> MembershipVerdict {
    let e = ge.edge_index(u, v).expect("added edge");
    let extend = |c: u32| {
        let mut raw = Vec::with_capacity(ge.m());
        raw.extend_from_slice(&cert.colours()[..e]);
        raw.push(c);
        raw.extend_from_slice(&cert.colours()[e..]);
        EdgeColouring::normalized(&raw)
    };
    let fresh = cert.num_colours() as u32;
    // every copy of H in G is non-rainbow under `cert`, so only copies through
    // e matter; without one, a fresh colour on e is already a certificate
    let through = copy_through_edge(ge, h, u, v).is_some();
    let mut candidates: Vec<u32> = Vec::new();
    if through {
        let ends = g.edges();
        let blocked: Vec<u32> = ends
            .iter()
            .zip(cert.colours())
            .filter(|((a, b), _)| *a == u || *a == v || *b == u || *b == v)
            .map(|(_, &c)| c)
            .collect();
        candidates.extend((0..fresh).filter(|c| !blocked.contains(c)));
    }
    candidates.push(fresh);
    for c in candidates {
        let phi = extend(c);
        if !through || matches!(has_rainbow(ge, &phi, h), Ok(None)) {
            return MembershipVerdict {
                status: Status::NonMember,
                certificate: Some(phi),
                mode: Mode::Exact,
                stats: Default::default(),
                reason: Some("extends the base certificate".into()),
            };
        }
    }
    memo.decide(ge, h, cfg)
}

/// Classical `H`-saturation.
pub fn is_classically_saturated(g: &Graph, h: &Graph) -> SaturationReport {
    let mut report = SaturationReport::new(SatKind::Sat);
    if contains_subgraph(g, h, false) {
        return report.fail(Failure::Base);
    }
    for (u, v) in g.non_edges() {
        let ge = add_edge(g, u, v).expect("non-edge");
        // G is H-free, so any copy in G + e uses e
        match copy_through_edge(&ge, h, u, v) {
            Some(c) => report.per_nonedge.push(NonEdgeCheck {
                edge: (u, v),
                evidence: Evidence::Copy(c),
            }),
            None => {
                report.per_nonedge.push(NonEdgeCheck {
                    edge: (u, v),
                    evidence: Evidence::NoCopy,
                });
                return report.fail(Failure::NonEdge((u, v)));
            }
        }
    }
    report.holds = Holds::Yes;
    report
}

/// `H`-semi-saturation: `G` need not be `H`-free.
pub fn is_semi_saturated(g: &Graph, h: &Graph) -> SaturationReport {
    let mut report = SaturationReport::new(SatKind::Ssat);
    match first_nonedge_without_copy(g, h, &mut report.per_nonedge) {
        Some(e) => report.fail(Failure::NonEdge(e)),
        None => {
            report.holds = Holds::Yes;
            report
        }
    }
}

fn first_nonedge_without_copy(g: &Graph, h: &Graph, log: &mut Vec<NonEdgeCheck>) -> Option<(usize, usize)> {
    for (u, v) in g.non_edges() {
        let ge = add_edge(g, u, v).expect("non-edge");
        match copy_through_edge(&ge, h, u, v) {
            Some(c) => log.push(NonEdgeCheck {
                edge: (u, v),
                evidence: Evidence::Copy(c),
            }),
            None => {
                log.push(NonEdgeCheck {
                    edge: (u, v),
                    evidence: Evidence::NoCopy,
                });
                return Some((u, v));
            }
        }
    }
    None
}

/// Weak `H`-saturation via greedy closure. Adding an edge never destroys a
/// copy through another non-edge, so the order in which closable edges are
/// added does not change the final graph.
pub fn is_weakly_saturated(g: &Graph, h: &Graph) -> SaturationReport {
    let mut report = SaturationReport::new(SatKind::Wsat);
    if contains_subgraph(g, h, false) {
        return report.fail(Failure::Base);
    }
    let closure = weak_closure(g, h, &mut report.per_nonedge);
    match closure.non_edges().first() {
        Some(&e) => report.fail(Failure::NonEdge(e)),
        None => {
            report.holds = Holds::Yes;
            report
        }
    }
}

/// Greedy closure under "add a non-edge lying in a copy of `H`".
pub fn weak_closure(g: &Graph, h: &Graph, log: &mut Vec<NonEdgeCheck>) -> Graph {
    let mut cur = g.clone();
    loop {
        let mut grew = false;
        for (u, v) in cur.non_edges() {
            let ge = add_edge(&cur, u, v).expect("non-edge");
            if let Some(c) = copy_through_edge(&ge, h, u, v) {
                log.push(NonEdgeCheck {
                    edge: (u, v),
                    evidence: Evidence::Copy(c),
                });
                cur = ge;
                grew = true;
            }
        }
        if !grew {
            return cur;
        }
    }
}

/// Runs the predicate for `kind`.
pub fn saturation_report(kind: SatKind, g: &Graph, h: &Graph, cfg: &SearchConfig) -> SaturationReport {
    match kind {
        SatKind::Prsat => is_properly_rainbow_saturated(g, h, cfg),
        SatKind::Sat => is_classically_saturated(g, h),
        SatKind::Ssat => is_semi_saturated(g, h),
        SatKind::Wsat => is_weakly_saturated(g, h),
    }
}

/// Classes scanned and how they came out, for one edge count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelScan {
    pub edges: usize,
    pub classes: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub kind: Option<SatKind>,
    pub n: usize,
    /// Least edge count with a witness; absent if no level produced one.
    pub value: Option<usize>,
    /// Lexicographically least canonical form among witnesses at `value`.
    pub witness: Option<CanonicalForm>,
    pub scanned: Vec<LevelScan>,
    /// False when some class was left undecided; `value` is then only an
    /// upper bound.
    pub exact: bool,
    /// Set when enumeration stopped early on its own budget.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped_at_level: Option<usize>,
}

/// Minimum edge count of an `n`-vertex graph satisfying `pred`, scanning
/// isomorphism classes level by level in canonical order.
pub fn min_edges_with<F>(n: usize, limits: EnumLimits, mut pred: F) -> Result<ExtremalResult>
where
    F: FnMut(&Graph) -> Holds,
{
    let mut levels = GraphLevels::new(n, limits)?;
    let mut result = ExtremalResult {
        kind: None,
        n,
        value: None,
        witness: None,
        scanned: Vec::new(),
        exact: true,
        stopped_at_level: None,
    };
    loop {
        let mut scan = LevelScan {
            edges: levels.level(),
            ..LevelScan::default()
        };
        let mut found = None;
        let _ = levels.current().iter().try_for_each(|(cf, g)| {
            scan.classes += 1;
            match pred(g) {
                Holds::Yes => {
                    found = Some(cf.clone());
                    return ControlFlow::Break(());
                }
                Holds::Unknown => scan.unknown += 1,
                Holds::No => {}
            }
            ControlFlow::Continue(())
        });
        if scan.unknown > 0 {
            result.exact = false;
        }
        result.scanned.push(scan);
        if let Some(cf) = found {
            result.value = Some(scan.edges);
            result.witness = Some(cf);
            return Ok(result);
        }
        match levels.advance() {
            Ok(true) => {}
            Ok(false) => return Ok(result),
            Err(Error::Budget { .. }) => {
                result.exact = false;
                result.stopped_at_level = Some(levels.level() + 1);
                return Ok(result);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Exact `prsat`, `sat`, `ssat` or `wsat` number for `n` vertices.
pub fn exact_number(kind: SatKind, n: usize, h: &Graph, cfg: &SearchConfig) -> Result<ExtremalResult> {
    exact_number_with(kind, n, h, cfg, EnumLimits::default())
}

pub fn exact_number_with(
    kind: SatKind,
    n: usize,
    h: &Graph,
    cfg: &SearchConfig,
    limits: EnumLimits,
) -> Result<ExtremalResult> {
    let mut memo = VerdictMemo::new();
    let mut res = min_edges_with(n, limits, |g| match kind {
        SatKind::Prsat => {
            // properly rainbow saturated graphs are semi-saturated; that test
            // needs no colouring search
            if first_nonedge_without_copy(g, h, &mut Vec::new()).is_some() {
                return Holds::No;
            }
            prsat_report(g, h, cfg, None, &mut memo).holds
        }
        _ => saturation_report(kind, g, h, cfg).holds,
    })?;
    res.kind = Some(kind);
    Ok(res)
}

/// Classical saturation for a family: no member is a subgraph of `G`, and
/// every `G + e` contains one.
pub fn is_family_saturated(g: &Graph, family: &[Graph]) -> bool {
    if family.iter().any(|f| contains_subgraph(g, f, false)) {
        return false;
    }
    g.non_edges().into_iter().all(|(u, v)| {
        let ge = add_edge(g, u, v).expect("non-edge");
        family.iter().any(|f| copy_through_edge(&ge, f, u, v).is_some())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, disjoint_union, multiple, path, star};

    fn k3() -> Graph {
        complete(3).unwrap()
    }

    fn k3k2() -> Graph {
        disjoint_union(&k3(), &complete(2).unwrap()).unwrap()
    }

    #[test]
    fn prsat_examples() {
        let cfg = SearchConfig::default();
        let g = disjoint_union(&complete(6).unwrap(), &Graph::empty(1).unwrap()).unwrap();
        let r = is_properly_rainbow_saturated(&g, &k3k2(), &cfg);
        assert_eq!(r.holds, Holds::Yes);
        assert_eq!(r.per_nonedge.len(), 6);
        assert!(r.base_certificate.is_some());

        let r = is_properly_rainbow_saturated(&star(4).unwrap(), &k3(), &cfg);
        assert_eq!(r.holds, Holds::Yes);

        let r = is_properly_rainbow_saturated(&Graph::empty(5).unwrap(), &k3(), &cfg);
        assert_eq!(r.holds, Holds::No);
        assert_eq!(r.failure_witness, Some(Failure::NonEdge((0, 1))));

        let r = is_properly_rainbow_saturated(&complete(4).unwrap(), &k3(), &cfg);
        assert_eq!(r.failure_witness, Some(Failure::Base));
    }

    #[test]
    fn classical_examples() {
        assert_eq!(is_classically_saturated(&star(4).unwrap(), &k3()).holds, Holds::Yes);
        assert_eq!(is_classically_saturated(&complete(4).unwrap(), &k3()).holds, Holds::No);
        assert_eq!(is_classically_saturated(&cycle(5).unwrap(), &k3()).holds, Holds::Yes);
    }

    #[test]
    fn semi_examples() {
        assert_eq!(is_semi_saturated(&star(4).unwrap(), &k3()).holds, Holds::Yes);
        let r = is_semi_saturated(&path(4).unwrap(), &multiple(2, &complete(2).unwrap()).unwrap());
        assert_eq!(r.failure_witness, Some(Failure::NonEdge((0, 2))));
        assert_eq!(is_semi_saturated(&complete(5).unwrap(), &cycle(4).unwrap()).holds, Holds::Yes);
    }

    #[test]
    fn weak_examples() {
        assert_eq!(is_weakly_saturated(&star(4).unwrap(), &k3()).holds, Holds::Yes);
        assert_eq!(is_weakly_saturated(&Graph::empty(4).unwrap(), &k3()).holds, Holds::No);
        let g = disjoint_union(&complete(2).unwrap(), &Graph::empty(2).unwrap()).unwrap();
        assert_eq!(is_weakly_saturated(&g, &k3()).holds, Holds::No);
    }

    #[test]
    fn exact_numbers_for_triangle() {
        let cfg = SearchConfig::default();
        let r = exact_number(SatKind::Prsat, 5, &k3(), &cfg).unwrap();
        assert_eq!(r.value, Some(4));
        assert!(r.exact);
        assert!(crate::canon::are_isomorphic(&r.witness.unwrap().graph(), &star(4).unwrap()));
        for kind in [SatKind::Sat, SatKind::Wsat] {
            assert_eq!(exact_number(kind, 5, &k3(), &cfg).unwrap().value, Some(4));
        }
        assert_eq!(exact_number(SatKind::Ssat, 6, &k3(), &cfg).unwrap().value, Some(5));
    }

    #[test]
    fn kind_parses() {
        assert_eq!("wsat".parse::<SatKind>().unwrap(), SatKind::Wsat);
        assert!("rsat".parse::<SatKind>().is_err());
    }
}
