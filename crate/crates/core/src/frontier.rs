//! Rainbow Ramsey numbers `R*(P_3, H)` and minimal members of `F*(H)`.
//!
//! An edge colouring of `K_n` has no monochromatic `P_3` exactly when it is
//! proper, so `R*(P_3, H)` is the least `n` with `K_n ∈ F*(H)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, CanonicalForm};
use crate::enumerate::{EnumLimits, GraphLevels};
use crate::error::{Error, Result};
use crate::graph::{complete, delete_edge, strip_isolated, Graph};
use crate::kt::{kt_d, kt_u};
use crate::search::{find_rainbow_free_colouring, MembershipVerdict, Mode, SearchConfig, Status, VerdictMemo};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyResult {
    pub value: Option<usize>,
    pub searched_up_to: usize,
    pub per_n: BTreeMap<usize, MembershipVerdict>,
}

/// Decides `K_n ∈ F*(H)` for `n = |V(H)|, …, n_max`, stopping at the first
/// member (larger complete graphs contain it) or the first unknown.
pub fn rainbow_ramsey_p3(h: &Graph, n_max: usize, cfg: &SearchConfig) -> Result<RamseyResult> {
    let mut res = RamseyResult {
        value: None,
        searched_up_to: 0,
        per_n: BTreeMap::new(),
    };
    for n in h.n()..=n_max {
        let v = find_rainbow_free_colouring(&complete(n)?, h, &cfg.budget);
        let status = v.status;
        res.per_n.insert(n, v);
        res.searched_up_to = n;
        match status {
            Status::Member => {
                res.value = Some(n);
                break;
            }
            Status::Unknown => break,
            Status::NonMember => {}
        }
    }
    Ok(res)
}

/// `M*(H)` truncated to graphs with at most `max_order` non-isolated vertices
/// and `max_edges` edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalFamily {
    /// Canonical forms, sorted.
    pub members: Vec<CanonicalForm>,
    pub max_order: usize,
    pub max_edges: usize,
    /// True iff every verdict inside the bounds was exact.
    pub complete_up_to_bounds: bool,
    /// Graphs whose membership or minimality stayed undecided.
    pub undecided: Vec<CanonicalForm>,
    /// Every `F*(H)` member met inside the bounds.
    pub all_members: Vec<CanonicalForm>,
}

/// Finds the minimal elements of `F*(H)` within the bounds.
///
/// A member `G` is minimal iff no `G − e` (isolated vertices stripped) is a
/// member: `F*(H)` is closed under adding edges and vertices, so a member
/// proper subgraph would sit inside some `G − e`.
pub fn minimal_members(h: &Graph, max_order: usize, max_edges: usize, cfg: &SearchConfig) -> Result<MinimalFamily> {
    // classes by edge count, isolated vertices stripped
    let mut by_level: Vec<Vec<(CanonicalForm, Graph)>> = vec![Vec::new(); max_edges + 1];
    let mut seen = std::collections::HashSet::new();
    let mut levels = GraphLevels::new(max_order, EnumLimits::default())?;
    loop {
        if levels.level() > max_edges {
            break;
        }
        for (_, g) in levels.current() {
            let s = strip_isolated(g);
            let cf = canonical_form(&s);
            if seen.insert(cf.clone()) {
                by_level[s.m()].push((cf, s));
            }
        }
        if !levels.advance()? {
            break;
        }
    }
    let mut status: HashMap<CanonicalForm, Status> = HashMap::new();
    let mut memo = VerdictMemo::new();
    let mut family = MinimalFamily {
        members: Vec::new(),
        max_order,
        max_edges,
        complete_up_to_bounds: true,
        undecided: Vec::new(),
        all_members: Vec::new(),
    };
    for level in &mut by_level {
        level.sort_by(|a, b| a.0.cmp(&b.0));
        for (cf, g) in level.iter() {
            let v = memo.decide(g, h, cfg);
            let st = match (v.status, v.mode) {
                (Status::Member, Mode::Exact) => Status::Member,
                (Status::NonMember, _) => Status::NonMember,
                _ => Status::Unknown,
            };
            status.insert(cf.clone(), st);
            match st {
                Status::NonMember => continue,
                Status::Unknown => {
                    family.complete_up_to_bounds = false;
                    family.undecided.push(cf.clone());
                    continue;
                }
                Status::Member => family.all_members.push(cf.clone()),
            }
            let mut minimal = Some(true);
            for &(a, b) in g.edges() {
                let sub = canonical_form(&strip_isolated(&delete_edge(g, a, b)?));
                match status.get(&sub) {
                    Some(Status::Member) => {
                        minimal = Some(false);
                        break;
                    }
                    Some(Status::NonMember) => {}
                    Some(Status::Unknown) | None => minimal = None,
                }
            }
            match minimal {
                Some(true) => family.members.push(cf.clone()),
                Some(false) => {}
                None => {
                    family.complete_up_to_bounds = false;
                    family.undecided.push(cf.clone());
                }
            }
        }
    }
    family.members.sort();
    family.all_members.sort();
    family.undecided.sort();
    Ok(family)
}

/// Upper bounds `(u, d)` on the family parameters of `F*(H)` read off an
/// exact member `W`.
pub fn family_params_from_witness(h: &Graph, w: &Graph, cfg: &SearchConfig) -> Result<(usize, Option<usize>)> {
    let v = find_rainbow_free_colouring(w, h, &cfg.budget);
    match (v.status, v.mode) {
        (Status::Member, Mode::Exact) => {}
        (Status::NonMember, _) => return Err(Error::pre("witness is not in F*(H)")),
        _ => return Err(Error::pre("witness membership undecided within budget")),
    }
    let u = kt_u(w);
    Ok((u, kt_d(w, u)))
}
