//! Acceptance gate: one PASS/FAIL line per criterion. Library results are
//! compared against the brute-force oracles in `common` wherever the
//! instance is small enough for them.

mod common;

use std::ops::ControlFlow;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::Small;
use prsat_core::constructions::{build, canonical_colouring, verify, ConstructionId, ConstructionSpec};
use prsat_core::frontier::{family_params_from_witness, minimal_members, rainbow_ramsey_p3};
use prsat_core::graph::{complete, complete_bipartite, cycle, disjoint_union, multiple, path};
use prsat_core::kt::{kt_bound, KtParams};
use prsat_core::named::parse_named;
use prsat_core::saturation::{exact_number, Holds, SatKind};
use prsat_core::search::{enumerate_proper_colourings, find_rainbow_free_colouring, Budget, Mode, SearchConfig, Status};
use prsat_core::{canonical_form, graph6, CanonicalForm, Graph};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Ok(detail.into())
    } else {
        Err(detail.into())
    }
}

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

fn g(name: &str) -> Graph {
    parse_named(name).unwrap()
}

fn spec(id: ConstructionId, params: &[(&str, usize)]) -> ConstructionSpec {
    ConstructionSpec::new(id, params).unwrap()
}

fn forms(gs: &[Graph]) -> Vec<CanonicalForm> {
    let mut v: Vec<_> = gs.iter().map(canonical_form).collect();
    v.sort();
    v
}

fn show(v: &[CanonicalForm]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn prsat_k3() -> Outcome {
    let k3 = g("K3");
    let k3s = Small::of(&k3);
    let mut detail = Vec::new();
    for n in 4..=6 {
        let lib = exact_number(SatKind::Prsat, n, &k3, &cfg()).map_err(|e| e.to_string())?;
        // every triangle is rainbow under a proper colouring, so the oracle
        // may use the definition with plain containment above n = 5
        let oracle = if n <= 5 {
            common::min_edges(n, |s| common::prsat(s, &k3s))
        } else {
            common::min_edges(n, |s| common::sat(s, &k3s))
        };
        if !(lib.exact && lib.value == Some(n - 1) && oracle == Some(n - 1)) {
            return Err(format!("n={n}: library {:?} (exact {}), oracle {oracle:?}", lib.value, lib.exact));
        }
        detail.push(format!("n={n}: {}", n - 1));
    }
    Ok(detail.join(", "))
}

fn sat_wsat_k3() -> Outcome {
    let k3 = g("K3");
    let k3s = Small::of(&k3);
    for n in 4..=6 {
        let sat = exact_number(SatKind::Sat, n, &k3, &cfg()).map_err(|e| e.to_string())?;
        let wsat = exact_number(SatKind::Wsat, n, &k3, &cfg()).map_err(|e| e.to_string())?;
        // (k-2)(n-k+2) + C(k-2,2) at k = 3
        let closed = n - 1;
        let o_sat = common::min_edges(n, |s| common::sat(s, &k3s));
        let o_wsat = if n <= 5 { common::min_edges(n, |s| common::wsat(s, &k3s)) } else { Some(closed) };
        let all = [sat.value, wsat.value, o_sat, o_wsat];
        if !(sat.exact && wsat.exact && all.iter().all(|&v| v == Some(closed))) {
            return Err(format!("n={n}: sat {:?}, wsat {:?}, oracle {o_sat:?} {o_wsat:?}", sat.value, wsat.value));
        }
    }
    Ok("n-1 for n=4..6".into())
}

fn ramsey_k4() -> Outcome {
    let (k4, k6, k7) = (g("K4"), g("K6"), g("K7"));
    let v6 = find_rainbow_free_colouring(&k6, &k4, &Budget::default());
    let phi = v6.certificate.ok_or("no certificate for K6")?;
    let ok6 = v6.mode == Mode::Exact
        && common::is_proper(&Small::of(&k6), phi.colours())
        && !common::has_rainbow(&Small::of(&k6), phi.colours(), &Small::of(&k4));
    let v7 = find_rainbow_free_colouring(&k7, &k4, &Budget::default());
    let r = rainbow_ramsey_p3(&k4, 8, &cfg()).map_err(|e| e.to_string())?;
    check(
        ok6 && v7.status == Status::Member && v7.mode == Mode::Exact && r.value == Some(7),
        format!(
            "K6 certificate with {} colours checked; K7 {} after {} nodes; R = {:?}",
            phi.num_colours(),
            v7.status.as_str(),
            v7.stats.nodes,
            r.value
        ),
    )
}

fn k4_construction() -> Outcome {
    let forcing = Small::of(&g("K3+(K3uK1)"));
    let k4 = Small::of(&g("K4"));
    for (n, want) in [(6, 15), (7, 17)] {
        let s = spec(ConstructionId::K4Saturated, &[("n", n)]);
        let gr = build(&s).map_err(|e| e.to_string())?;
        let small = Small::of(&gr);
        let phi = canonical_colouring(&s).map_err(|e| e.to_string())?.ok_or("no colouring")?;
        let blocks = phi.num_colours();
        let base_ok = common::is_proper(&small, phi.colours()) && !common::has_rainbow(&small, phi.colours(), &k4);
        let forced = small.non_edges().iter().all(|&e| common::contains(&small.plus(e), &forcing));
        let lib = verify(&s, &cfg()).map_err(|e| e.to_string())?.holds();
        if !(gr.m() == want && base_ok && forced && lib == Holds::Yes) {
            return Err(format!(
                "n={n}: {} edges, colouring ok {base_ok}, forcing subgraph {forced}, verify {}",
                gr.m(),
                lib.as_str()
            ));
        }
        if n == 7 && blocks != 7 {
            return Err(format!("n=7 colouring uses {blocks} colours"));
        }
    }
    Ok("n=6: 15 edges, n=7: 17 edges, saturated".into())
}

fn forcing_member() -> Outcome {
    let f = build(&spec(ConstructionId::K4Forcing, &[])).map_err(|e| e.to_string())?;
    let oracle_shape = common::isomorphic(&Small::of(&f), &Small::of(&g("K3+(K3uK1)")));
    let v = find_rainbow_free_colouring(&f, &g("K4"), &Budget::default());
    check(
        oracle_shape && v.status == Status::Member && v.mode == Mode::Exact,
        format!("{} ({} nodes)", v.status.as_str(), v.stats.nodes),
    )
}

fn saturated_construction(id: ConstructionId, params: &[(&str, usize)], edges: usize) -> Outcome {
    let s = spec(id, params);
    let gr = build(&s).map_err(|e| e.to_string())?;
    let small = Small::of(&gr);
    let h = Small::of(&s.target);
    let phi = canonical_colouring(&s).map_err(|e| e.to_string())?.ok_or("no colouring")?;
    let base_ok = common::is_proper(&small, phi.colours()) && !common::has_rainbow(&small, phi.colours(), &h);
    let lib = verify(&s, &cfg()).map_err(|e| e.to_string())?.holds();
    check(
        gr.m() == edges && base_ok && lib == Holds::Yes,
        format!("{} edges, base colouring checked {base_ok}, verify {}", gr.m(), lib.as_str()),
    )
}

fn minimal_families() -> Outcome {
    let p4 = g("P4");
    let fam = minimal_members(&p4, 7, 8, &cfg()).map_err(|e| e.to_string())?;
    let t5 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
    let want = forms(&[t5.clone(), cycle(5).unwrap(), cycle(7).unwrap()]);
    let p4s = Small::of(&p4);
    let oracle_ok = [&t5, &cycle(5).unwrap(), &cycle(7).unwrap()]
        .iter()
        .all(|w| common::minimal_member(&Small::of(w), &p4s));
    let tk2 = multiple(2, &complete(2).unwrap()).unwrap();
    let fam2 = minimal_members(&tk2, 6, 8, &cfg()).map_err(|e| e.to_string())?;
    let p3k2 = disjoint_union(&path(3).unwrap(), &complete(2).unwrap()).unwrap();
    let oracle2 = common::minimal_member(&Small::of(&p3k2), &Small::of(&tk2));
    check(
        fam.complete_up_to_bounds
            && fam.members == want
            && oracle_ok
            && fam2.complete_up_to_bounds
            && fam2.members == forms(&[p3k2])
            && oracle2,
        format!("P4: {}; 2K2: {}", show(&fam.members), show(&fam2.members)),
    )
}

fn semi_saturation() -> Outcome {
    let mut detail = Vec::new();
    let bounds: [(&str, fn(usize) -> usize); 2] = [("P4", |n| n / 2), ("K3", |n| n - 1)];
    for (name, bound) in bounds {
        let h = g(name);
        let hs = Small::of(&h);
        for n in [5, 6] {
            let oracle = common::min_edges(n, |s| common::ssat(s, &hs)).ok_or("oracle found nothing")?;
            let lib = exact_number(SatKind::Ssat, n, &h, &cfg()).map_err(|e| e.to_string())?;
            if !(lib.exact && lib.value == Some(oracle) && oracle >= bound(n)) {
                return Err(format!("{name} n={n}: library {:?}, oracle {oracle}, bound {}", lib.value, bound(n)));
            }
            detail.push(format!("ssat({n},{name}) = {oracle} >= {}", bound(n)));
        }
    }
    Ok(detail.join(", "))
}

fn kt_bounds() -> Outcome {
    for k in 7..=12usize {
        let u = k.div_ceil(2) - 1;
        let z = if k % 2 == 1 { 1 } else if k == 8 { 5 } else { 2 };
        for n in k..=80usize {
            let got = kt_bound(KtParams { u, d: z, n }).map_err(|e| e.to_string())?;
            // u n + floor((z-1)(n-u)/2) - C(u+1,2), evaluated by hand
            let direct = (u * n) as i64 + ((z as i64 - 1) * (n - u) as i64).div_euclid(2) - (u * (u + 1) / 2) as i64;
            let (ki, ni) = (k as i64, n as i64);
            let closed = match k {
                8 => 5 * ni - 12,
                _ if k % 2 == 1 => (ki - 1) * ni / 2 + (1 - ki * ki) / 8,
                _ => ((ki - 1) * 4 * ni + 4 - ki * ki).div_euclid(8),
            };
            if got != direct || got != closed {
                return Err(format!("k={k} n={n}: bound {got}, direct {direct}, closed form {closed}"));
            }
        }
    }
    let mut k5 = Vec::new();
    for n in 6..=60i64 {
        let ours = kt_bound(KtParams { u: 6, d: 9, n: n as usize }).map_err(|e| e.to_string())?;
        let printed = (21 * n).div_euclid(2) - 48;
        if ours != 10 * n - 45 || ours > printed {
            return Err(format!("K5 row n={n}: {ours} vs printed {printed}"));
        }
        if n == 10 {
            k5.push(format!("K5 at n=10: bound {ours}, printed closed form {printed}"));
        }
    }
    Ok(format!("k=7..12 agree, C8 row 5n-12; {}", k5.join("")))
}

fn bipartite_witness() -> Outcome {
    let c4 = complete_bipartite(2, 2).unwrap();
    let w = build(&spec(ConstructionId::BipartiteWitness, &[("k", 2), ("l", 2)])).map_err(|e| e.to_string())?;
    let v = find_rainbow_free_colouring(&w, &c4, &Budget::default());
    let oracle = common::member(&Small::of(&w), &Small::of(&c4));
    let params = family_params_from_witness(&c4, &w, &cfg()).map_err(|e| e.to_string())?;
    check(
        w == complete_bipartite(2, 4).unwrap() && v.status == Status::Member && v.mode == Mode::Exact && oracle && params == (1, Some(4)),
        format!("{} (oracle agrees {oracle}); params {params:?}", v.status.as_str()),
    )
}

fn property_suites() -> Outcome {
    let k2 = complete(2).unwrap();
    for m in 1..=5 {
        let lib = enumerate_proper_colourings(&multiple(m, &k2).unwrap(), &Budget::default(), |_| ControlFlow::Continue(()))
            .map_err(|e| e.to_string())?;
        if lib != common::bell(m) {
            return Err(format!("{m}K2: {lib} colourings, Bell number {}", common::bell(m)));
        }
    }
    for name in ["C5", "K4", "K2,3", "P3uK2", "K1,4"] {
        let s = Small::of(&g(name));
        let lib = enumerate_proper_colourings(&g(name), &Budget::default(), |_| ControlFlow::Continue(())).unwrap();
        if lib != common::count_proper_colourings(&s) {
            return Err(format!("{name}: colouring count disagrees"));
        }
    }
    // upward closure: members stay members after adding an edge or vertex
    let spider = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
    for (gm, h) in [(g("C5"), "P4"), (spider, "P4"), (g("K2,4"), "C4"), (g("P3uK2"), "2K2")] {
        let sm = Small::of(&gm);
        if !common::member(&sm, &Small::of(&g(h))) {
            return Err(format!("{} is not in F*({h})", graph6::encode(&gm)));
        }
        let mut grown = vec![prsat_core::graph::disjoint_union(&gm, &complete(1).unwrap()).unwrap()];
        for e in sm.non_edges().into_iter().take(3) {
            grown.push(prsat_core::graph::add_edge(&gm, e.0, e.1).unwrap());
        }
        for bigger in grown {
            if find_rainbow_free_colouring(&bigger, &g(h), &Budget::default()).status != Status::Member {
                return Err(format!("{} left F*({h})", graph6::encode(&bigger)));
            }
        }
    }
    // canonical forms under relabelling, against the oracle's classes
    let perms = common::permutations(6);
    for name in ["C6", "P3uK2uK1", "K2,4", "K3+E3", "2K2uE2"] {
        let base = g(name);
        let cf = canonical_form(&base);
        for p in perms.iter().step_by(37) {
            if canonical_form(&base.relabel(p)) != cf {
                return Err(format!("{name} relabelled by {p:?} changed its canonical form"));
            }
        }
    }
    let mut classes = std::collections::HashSet::new();
    for mask in 0u64..1 << 6 {
        let s = Small::from_mask(4, mask);
        classes.insert(canonical_form(&Graph::from_edges(4, &s.edges).unwrap()));
    }
    if classes.len() != common::class_count(4, None) || classes.len() != 11 {
        return Err(format!("{} classes on 4 vertices", classes.len()));
    }
    if graph6::encode(&complete(4).unwrap()) != "C~" || graph6::encode(&cycle(5).unwrap()) != "Dhc" {
        return Err("graph6 reference strings".into());
    }
    for name in ["K1", "K7", "C8", "K2,4", "P3uK2", "E5"] {
        let x = g(name);
        if graph6::decode(&graph6::encode(&x)).unwrap() != x {
            return Err(format!("graph6 round trip of {name}"));
        }
    }
    Ok("Bell counts, colouring counts, upward closure, canonical invariance, graph6".into())
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("prsat(n,K3) = n-1 for n=4,5,6", Box::new(prsat_k3)),
        ("sat(n,K3) = wsat(n,K3) = n-1 for n=4,5,6", Box::new(sat_wsat_k3)),
        ("R*(P3,K4) = 7", Box::new(ramsey_k4)),
        ("K4 construction at n=6,7", Box::new(k4_construction)),
        ("K3+(K3uK1) in F*(K4)", Box::new(forcing_member)),
        ("K6uK1 properly rainbow K3uK2-saturated", Box::new(|| saturated_construction(ConstructionId::K3UnionK2, &[("n", 7)], 15))),
        ("matching construction m=3 n=9 saturated", Box::new(|| saturated_construction(ConstructionId::MatchingMk2, &[("m", 3), ("n", 9)], 9))),
        ("K6uK1 properly rainbow K1,3uK2-saturated", Box::new(|| saturated_construction(ConstructionId::StarUnionK2, &[("k", 3), ("n", 7)], 15))),
        ("minimal members of F*(P4) and F*(2K2)", Box::new(minimal_families)),
        ("semi-saturation lower bounds n=5,6", Box::new(semi_saturation)),
        ("KT bound closed forms", Box::new(kt_bounds)),
        ("K2,4 in F*(C4), witness parameters", Box::new(bipartite_witness)),
        ("property suites", Box::new(property_suites)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(d) => println!("PASS {:>2} {name} [{ms} ms]: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{ms} ms]: {d}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
