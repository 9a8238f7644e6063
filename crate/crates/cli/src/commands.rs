use prsat_core::cache::VerdictCache;
use prsat_core::constructions::{build, canonical_colouring, verify, ConstructionSpec};
use prsat_core::frontier::{minimal_members, rainbow_ramsey_p3};
use prsat_core::graph6;
use prsat_core::named::parse_graph;
use prsat_core::report::{Inputs, RunReport};
use prsat_core::reproduce::{verify_paper, Profile, RowStatus};
use prsat_core::saturation::{exact_number, saturation_report, Evidence, Holds, SatKind};
use prsat_core::search::{MembershipVerdict, Mode, SearchConfig, Status};
use prsat_core::{Certificate, Graph};
use serde_json::json;

use crate::{CliError, Exit};

pub struct Ctx {
    pub cfg: SearchConfig,
    pub cache: Option<VerdictCache>,
}

pub type Outcome = Result<(RunReport, Exit), CliError>;

fn graph(arg: &str) -> Result<Graph, CliError> {
    parse_graph(arg).map_err(|e| CliError::Usage(format!("graph {arg:?}: {e}")))
}

fn to_value<T: serde::Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serialisable")
}

fn holds_exit(h: Holds) -> Exit {
    match h {
        Holds::Yes => Exit::Holds,
        Holds::No => Exit::Fails,
        Holds::Unknown => Exit::Unknown,
    }
}

/// A membership verdict, consulting and updating the cache. On a cached
/// `non_member` the search is rerun only to recover a certificate.
fn membership(ctx: &mut Ctx, g: &Graph, h: &Graph) -> Result<(MembershipVerdict, bool), CliError> {
    let hit = ctx.cache.as_ref().and_then(|c| c.get(g, h));
    let (verdict, cached) = match hit {
        Some((Status::Member, mode)) => (
            MembershipVerdict {
                status: Status::Member,
                certificate: None,
                mode,
                stats: Default::default(),
                reason: None,
            },
            true,
        ),
        Some((status, mode)) => {
            let mut v = ctx.cfg.decide(g, h);
            if v.status != Status::Member {
                v.status = status;
                v.mode = mode;
            }
            (v, true)
        }
        None => (ctx.cfg.decide(g, h), false),
    };
    if let Some(c) = ctx.cache.as_mut() {
        c.record(g, h, verdict.status, verdict.mode)?;
    }
    Ok((verdict, cached))
}

fn membership_report(command: &str, ctx: &mut Ctx, g_arg: &str, h_arg: &str) -> Result<(RunReport, Status), CliError> {
    let (g, h) = (graph(g_arg)?, graph(h_arg)?);
    let (v, cached) = membership(ctx, &g, &h)?;
    let mut r = RunReport::new(command, Inputs::default().with_g(&g).with_h(&h), &ctx.cfg);
    r.mode = v.mode.as_str().into();
    r.certificate = v.certificate.as_ref().map(|phi| Certificate::new(&g, phi));
    r.cached = cached;
    r.details = json!({ "stats": v.stats, "reason": v.reason });
    Ok((r, v.status))
}

pub fn member(ctx: &mut Ctx, g: &str, h: &str) -> Outcome {
    let (mut r, status) = membership_report("member", ctx, g, h)?;
    r.verdict = status.as_str().into();
    let exit = match status {
        Status::Member => Exit::Holds,
        Status::NonMember => Exit::Fails,
        Status::Unknown => Exit::Unknown,
    };
    Ok((r, exit))
}

/// Looks for a rainbow-`H`-free proper colouring; holds when one is found.
pub fn colour(ctx: &mut Ctx, g: &str, h: &str) -> Outcome {
    let (mut r, status) = membership_report("colour", ctx, g, h)?;
    let holds = match status {
        Status::NonMember => Holds::Yes,
        Status::Unknown => Holds::Unknown,
        Status::Member => Holds::No,
    };
    r.verdict = holds.as_str().into();
    Ok((r, holds_exit(holds)))
}

pub fn saturated(ctx: &mut Ctx, kind: SatKind, g: &str, h: &str) -> Outcome {
    let (g, h) = (graph(g)?, graph(h)?);
    let rep = saturation_report(kind, &g, &h, &ctx.cfg);
    let sampled = rep.base_verdict.iter().any(|v| v.mode == Mode::Sampled)
        || rep
            .per_nonedge
            .iter()
            .any(|c| matches!(&c.evidence, Evidence::Verdict(v) if v.mode == Mode::Sampled));
    let mut r = RunReport::new("saturated", Inputs::default().with_g(&g).with_h(&h), &ctx.cfg);
    r.verdict = rep.holds.as_str().into();
    r.mode = if sampled { "sampled" } else { "exact" }.into();
    r.certificate = rep.base_certificate.as_ref().map(|phi| Certificate::new(&g, phi));
    r.details = to_value(&rep);
    Ok((r, holds_exit(rep.holds)))
}

pub fn number(ctx: &mut Ctx, kind: SatKind, n: usize, h: &str) -> Outcome {
    let h = graph(h)?;
    let res = exact_number(kind, n, &h, &ctx.cfg)?;
    let mut r = RunReport::new(
        "number",
        Inputs {
            n: Some(n),
            ..Inputs::default()
        }
        .with_h(&h),
        &ctx.cfg,
    );
    r.verdict = if res.exact { "exact" } else { "inexact" }.into();
    r.value = res.value;
    r.witness = res.witness.as_ref().map(ToString::to_string);
    r.details = to_value(&res);
    Ok((r, if res.exact { Exit::Holds } else { Exit::Unknown }))
}

fn spec_from_args(args: &[String]) -> Result<ConstructionSpec, CliError> {
    ConstructionSpec::parse(&args.join(" ")).map_err(|e| CliError::Usage(e.to_string()))
}

fn spec_text(spec: &ConstructionSpec) -> String {
    let mut s = spec.id.as_str().to_string();
    for (k, v) in &spec.params {
        s.push_str(&format!(" {k}={v}"));
    }
    s
}

pub fn construct(ctx: &mut Ctx, args: &[String]) -> Outcome {
    let spec = spec_from_args(args)?;
    let g = build(&spec)?;
    let inputs = Inputs {
        spec: Some(spec_text(&spec)),
        ..Inputs::default()
    }
    .with_h(&spec.target);
    let mut r = RunReport::new("construct", inputs, &ctx.cfg);
    r.verdict = "built".into();
    r.value = Some(g.m());
    r.witness = Some(graph6::encode(&g));
    r.certificate = canonical_colouring(&spec)?.map(|phi| Certificate::new(&g, &phi));
    r.details = json!({ "spec": spec, "n": g.n(), "m": g.m() });
    Ok((r, Exit::Holds))
}

pub fn verify_construction(ctx: &mut Ctx, args: &[String]) -> Outcome {
    let spec = spec_from_args(args)?;
    let g = build(&spec)?;
    let v = verify(&spec, &ctx.cfg)?;
    let inputs = Inputs {
        spec: Some(spec_text(&spec)),
        ..Inputs::default()
    }
    .with_g(&g)
    .with_h(&spec.target);
    let mut r = RunReport::new("verify-construction", inputs, &ctx.cfg);
    let holds = v.holds();
    r.verdict = holds.as_str().into();
    r.mode = match &v {
        prsat_core::constructions::Verification::Membership { verdict, .. } => verdict.mode.as_str().into(),
        prsat_core::constructions::Verification::Saturation(rep) => {
            let sampled = rep
                .per_nonedge
                .iter()
                .any(|c| matches!(&c.evidence, Evidence::Verdict(v) if v.mode == Mode::Sampled));
            if sampled { "sampled" } else { "exact" }.into()
        }
    };
    r.details = to_value(&v);
    Ok((r, holds_exit(holds)))
}

pub fn ramsey(ctx: &mut Ctx, h: &str, n_max: usize) -> Outcome {
    let h = graph(h)?;
    if n_max < h.n() {
        return Err(CliError::Usage(format!("--nmax must be at least |H| = {}", h.n())));
    }
    let res = rainbow_ramsey_p3(&h, n_max, &ctx.cfg)?;
    let mut r = RunReport::new(
        "ramsey",
        Inputs {
            n: Some(n_max),
            ..Inputs::default()
        }
        .with_h(&h),
        &ctx.cfg,
    );
    let per_n: serde_json::Map<String, serde_json::Value> = res
        .per_n
        .iter()
        .map(|(n, v)| (n.to_string(), json!({ "status": v.status, "mode": v.mode, "nodes": v.stats.nodes })))
        .collect();
    r.details = json!({ "searched_up_to": res.searched_up_to, "per_n": per_n });
    r.value = res.value;
    let last = res.per_n.values().last().map(|v| v.status);
    let (verdict, exit) = match (res.value, last) {
        (Some(_), _) => ("exact", Exit::Holds),
        (None, Some(Status::Unknown)) => ("unknown", Exit::Unknown),
        // every K_n up to n_max has a rainbow-free colouring
        _ => ("above_nmax", Exit::Fails),
    };
    r.verdict = verdict.into();
    Ok((r, exit))
}

pub fn minimal(ctx: &mut Ctx, h: &str, max_order: usize, max_edges: usize) -> Outcome {
    let h = graph(h)?;
    let fam = minimal_members(&h, max_order, max_edges, &ctx.cfg)?;
    let mut r = RunReport::new(
        "minimal",
        Inputs {
            n: Some(max_order),
            ..Inputs::default()
        }
        .with_h(&h),
        &ctx.cfg,
    );
    r.verdict = if fam.complete_up_to_bounds { "complete" } else { "incomplete" }.into();
    r.value = Some(fam.members.len());
    r.details = to_value(&fam);
    let exit = if fam.complete_up_to_bounds { Exit::Holds } else { Exit::Unknown };
    Ok((r, exit))
}

pub fn verify_table(ctx: &mut Ctx, profile: Profile) -> Outcome {
    let rows = verify_paper(profile);
    let failed = rows.iter().filter(|r| r.status == RowStatus::Fail).count();
    let mut r = RunReport::new("verify-paper", Inputs::default(), &ctx.cfg);
    r.verdict = if failed == 0 { "pass" } else { "fail" }.into();
    r.mode = if rows.iter().any(|r| r.status == RowStatus::EvidenceOnly) {
        "sampled"
    } else {
        "exact"
    }
    .into();
    r.value = Some(failed);
    r.details = json!({ "profile": profile, "rows": rows });
    Ok((r, if failed == 0 { Exit::Holds } else { Exit::Fails }))
}
