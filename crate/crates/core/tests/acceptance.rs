//! Acceptance criteria 1–9. Runs as a plain binary (no libtest harness) so
//! that each criterion prints exactly one PASS/FAIL line.

mod common;

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zxparam::circuit::{circuit_state_diagram, circuit_to_diagram, emit_circuit, parse_circuit};
use zxparam::diagram::{find_gadgets, Diagram, EdgeKind, VertexId};
use zxparam::gen::{random_circuit, random_clifford_circuit, random_diagram, random_phase_circuit, DiagramShape};
use zxparam::phase::{ParamId, Phase};
use zxparam::rewrite::{
    boundary_pivot, gadget_fusion, gadget_id_fuse, gadget_pivot, local_complement_simp, pivot_simp,
    remove_scalar_spiders, simplify, terminal_violations, Rule, Schedule,
};
use zxparam::teleport::{phase_teleport, phase_teleport_with};
use zxparam::verify::proportional::ratio;
use zxparam::verify::sim::state;
use zxparam::verify::{ap_form, brute_force_min, check_reduction, optimality_certificate, tensor_eval};
use zxparam::{Assignment, ParseError};

use common::{compare_constant, samples, Compare, TOL};

const RULES: [Rule; 7] = [
    Rule::LocalComp,
    Rule::Pivot,
    Rule::GadgetPivot,
    Rule::BoundaryPivot,
    Rule::GadgetFusion,
    Rule::GadgetIdFuse,
    Rule::ScalarRemoval,
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn base_diagram(rng: &mut ChaCha8Rng, max_params: usize) -> Diagram {
    let params = rng.gen_range(0..=max_params.min(2));
    let shape = DiagramShape {
        inputs: rng.gen_range(0..=2),
        outputs: rng.gen_range(2..=6),
        internal: rng.gen_range(2..=5),
        params,
        gadgets: rng.gen_range(0..=(max_params - params).min(2)),
        edge_prob: rng.gen_range(0.25..0.6),
    };
    random_diagram(rng, &shape)
}

fn boundary_spiders(d: &Diagram) -> Vec<VertexId> {
    d.spiders().filter(|&v| d.is_boundary_spider(v)).collect()
}

fn random_subset(rng: &mut ChaCha8Rng, vs: &[VertexId], p: f64) -> Vec<VertexId> {
    vs.iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

/// A random diagram with at least one site for `rule`, at most four
/// parameters and at most eight open wires.
fn instance(rule: Rule, rng: &mut ChaCha8Rng) -> Diagram {
    match rule {
        Rule::LocalComp | Rule::Pivot => base_diagram(rng, 4),
        Rule::GadgetPivot => {
            let mut d = base_diagram(rng, 3);
            let bs = boundary_spiders(&d);
            let w = d.add_spider(Phase::param("w") + &Phase::clifford(rng.gen_range(0..4)));
            for v in random_subset(rng, &bs, 0.5) {
                d.set_edge(w, v, EdgeKind::Hadamard);
            }
            let u = d.add_spider(Phase::clifford(2 * rng.gen_range(0..2)));
            d.set_edge(u, w, EdgeKind::Hadamard);
            for v in random_subset(rng, &bs, 0.5) {
                d.set_edge(u, v, EdgeKind::Hadamard);
            }
            d
        }
        Rule::BoundaryPivot => {
            let mut d = base_diagram(rng, 4);
            let bs = boundary_spiders(&d);
            let u = d.add_spider(Phase::clifford(2 * rng.gen_range(0..2)));
            let mut nb = random_subset(rng, &bs, 0.4);
            if nb.is_empty() {
                nb.push(*bs.choose(rng).unwrap());
            }
            for v in nb {
                d.set_edge(u, v, EdgeKind::Hadamard);
            }
            d
        }
        Rule::GadgetFusion => {
            let mut d = base_diagram(rng, 2);
            let spiders: Vec<VertexId> = d.spiders().filter(|&v| !d.is_gadget_axis(v)).collect();
            let mut nb = random_subset(rng, &spiders, 0.4);
            if nb.is_empty() {
                nb.push(*spiders.choose(rng).unwrap());
            }
            for name in ["f0", "f1"] {
                let axis = d.add_spider(Phase::clifford(2 * rng.gen_range(0..2)));
                let leaf = d.add_spider(Phase::param(name) + &Phase::clifford(rng.gen_range(0..4)));
                d.set_edge(axis, leaf, EdgeKind::Hadamard);
                for &v in &nb {
                    d.set_edge(axis, v, EdgeKind::Hadamard);
                }
            }
            d
        }
        Rule::GadgetIdFuse => {
            let mut d = base_diagram(rng, 3);
            let spiders: Vec<VertexId> = d.spiders().filter(|&v| d.gadget_axis_of(v).is_none()).collect();
            let target = *spiders.choose(rng).unwrap();
            let axis = d.add_spider(Phase::clifford(2 * rng.gen_range(0..2)));
            let leaf = d.add_spider(Phase::param("i0") + &Phase::clifford(rng.gen_range(0..4)));
            d.set_edge(axis, leaf, EdgeKind::Hadamard);
            d.set_edge(axis, target, EdgeKind::Hadamard);
            d
        }
        Rule::ScalarRemoval => {
            let mut d = base_diagram(rng, 3);
            if rng.gen_bool(0.5) {
                // Phase π would make the whole diagram zero.
                d.add_spider(Phase::clifford(*[0, 1, 3].choose(rng).unwrap()));
            } else {
                let axis = d.add_spider(Phase::clifford(2 * rng.gen_range(0..2)));
                let leaf = d.add_spider(Phase::param("s0") + &Phase::clifford(rng.gen_range(0..4)));
                d.set_edge(axis, leaf, EdgeKind::Hadamard);
            }
            d
        }
    }
}

/// Applies `rule` at a random applicable site, or returns `None`.
fn apply_somewhere(d: &Diagram, rule: Rule, rng: &mut ChaCha8Rng) -> Option<Diagram> {
    let vs: Vec<VertexId> = d.spiders().collect();
    let mut pairs: Vec<(VertexId, VertexId)> = Vec::new();
    for &a in &vs {
        for &b in &vs {
            if a != b {
                pairs.push((a, b));
            }
        }
    }
    pairs.shuffle(rng);
    let gadgets = find_gadgets(d);
    let try_pair = |f: fn(&mut Diagram, VertexId, VertexId) -> Result<_, _>| {
        pairs.iter().find_map(|&(a, b)| {
            let mut e = d.clone();
            f(&mut e, a, b).ok().map(|_| e)
        })
    };
    match rule {
        Rule::LocalComp => {
            let mut vs = vs.clone();
            vs.shuffle(rng);
            vs.into_iter().find_map(|v| {
                let mut e = d.clone();
                local_complement_simp(&mut e, v).ok().map(|_| e)
            })
        }
        Rule::Pivot => try_pair(pivot_simp),
        Rule::GadgetPivot => try_pair(gadget_pivot),
        Rule::BoundaryPivot => try_pair(boundary_pivot),
        Rule::GadgetFusion => gadgets.iter().enumerate().find_map(|(i, g1)| {
            gadgets[i + 1..].iter().find_map(|g2| {
                let mut e = d.clone();
                gadget_fusion(&mut e, g1, g2).ok().map(|_| e)
            })
        }),
        Rule::GadgetIdFuse => gadgets.iter().find_map(|g| {
            let mut e = d.clone();
            gadget_id_fuse(&mut e, g).ok().map(|_| e)
        }),
        Rule::ScalarRemoval => {
            let mut e = d.clone();
            (!remove_scalar_spiders(&mut e).is_empty()).then_some(e)
        }
    }
}

fn params_of(d: &Diagram) -> Vec<ParamId> {
    d.all_params().into_iter().collect()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut parts = Vec::new();
    let mut pass = true;
    for rule in RULES {
        let (mut ok, mut failed, mut attempts) = (0, 0, 0);
        let mut first_failure = None;
        while ok + failed < 100 && attempts < 20_000 {
            attempts += 1;
            let d = instance(rule, &mut rng);
            let Some(after) = apply_somewhere(&d, rule, &mut rng) else { continue };
            let params = params_of(&d);
            // Two samples per parameter ({0, π} on each) plus two random points.
            let pts = samples(&params, 2, &mut rng);
            match compare_constant(&d, &after, &pts) {
                Compare::Constant => ok += 1,
                Compare::Degenerate => {}
                Compare::Fails(msg) => {
                    failed += 1;
                    first_failure.get_or_insert(msg);
                }
            }
        }
        let rule_pass = failed == 0 && ok == 100;
        pass &= rule_pass;
        parts.push(match first_failure {
            None => format!("{rule:?} {ok}/100"),
            Some(m) => format!("{rule:?} {ok}/{} ({m})", ok + failed),
        });
    }
    Outcome {
        pass,
        detail: format!("constant-ratio soundness, tol {TOL:e}: {}", parts.join(", ")),
    }
}

/// The corpus shared by criteria 2 and 4.
fn corpus(seed: u64, count: usize, max_qubits: usize, max_params: usize) -> Vec<zxparam::Circuit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_qubits);
            let g = rng.gen_range(0..=30);
            let k = rng.gen_range(0..=max_params);
            if i % 2 == 0 {
                random_phase_circuit(&mut rng, n, g, k)
            } else {
                random_circuit(&mut rng, n, g, k)
            }
        })
        .collect()
}

fn criterion_2() -> Outcome {
    let circuits = corpus(2, 200, 8, 6);
    let (mut ok, mut reduced) = (0, 0);
    let mut first_failure = None;
    for (i, c) in circuits.iter().enumerate() {
        let result = phase_teleport(c)
            .map_err(|e| e.to_string())
            .and_then(|(out, map)| {
                if map.params_out() < c.num_params() {
                    reduced += 1;
                }
                check_reduction(c, &out, &map, 5, TOL, i as u64).map_err(|e| e.to_string())
            });
        match result {
            Ok(r) if r.holds => ok += 1,
            Ok(r) => {
                first_failure.get_or_insert(format!("circuit {i}: deviation {:e}", r.max_deviation));
            }
            Err(e) => {
                first_failure.get_or_insert(format!("circuit {i}: {e}"));
            }
        }
    }
    Outcome {
        pass: ok == circuits.len(),
        detail: format!(
            "{ok}/{} circuits pass check_reduction (structured + 5 random samples, tol {TOL:e}); {reduced} had parameters merged{}",
            circuits.len(),
            first_failure.map(|m| format!("; first failure {m}")).unwrap_or_default()
        ),
    }
}

fn criterion_3() -> Outcome {
    let c = parse_circuit("qreg 1\nrz(t0) 0\nrz(t1) 0\n").unwrap();
    match phase_teleport(&c) {
        Ok((out, map)) => {
            let row = map.to_string();
            let pass = c.num_params() == 2 && out.num_params() == 1 && row.trim_end() == "u0 = t0 + t1";
            Outcome {
                pass,
                detail: format!("{} -> {} parameters, row `{}`", c.num_params(), out.num_params(), row.trim_end()),
            }
        }
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn criterion_4() -> Outcome {
    let circuits = corpus(2, 200, 8, 6);
    let mut ok = 0;
    let mut first_failure = None;
    for (i, c) in circuits.iter().enumerate() {
        let d = circuit_to_diagram(c).unwrap();
        let (out, _) = simplify(d);
        let terminal = terminal_violations(&out);
        match optimality_certificate(&out) {
            Ok(cert) if cert.passes && terminal.is_empty() => ok += 1,
            Ok(cert) => {
                first_failure.get_or_insert(format!("circuit {i}: {:?} {:?}", cert.failures, terminal));
            }
            Err(e) => {
                first_failure.get_or_insert(format!("circuit {i}: {e}"));
            }
        }
    }
    Outcome {
        pass: ok == circuits.len(),
        detail: format!(
            "{ok}/{} terminal diagrams pass the optimality certificate{}",
            circuits.len(),
            first_failure.map(|m| format!("; first failure {m}")).unwrap_or_default()
        ),
    }
}

fn criterion_5() -> Outcome {
    let circuits = corpus(5, 50, 6, 4);
    let mut ok = 0;
    let mut merged = 0;
    let mut first_failure = None;
    for (i, c) in circuits.iter().enumerate() {
        let optimised = phase_teleport(c).map(|(out, _)| out.num_params());
        let oracle = brute_force_min(c, TOL).map(|(n, _)| n);
        match (optimised, oracle) {
            (Ok(a), Ok(b)) if a == b => {
                ok += 1;
                if a < c.num_params() {
                    merged += 1;
                }
            }
            (a, b) => {
                first_failure.get_or_insert(format!("circuit {i}: optimiser {a:?}, oracle {b:?}"));
            }
        }
    }
    Outcome {
        pass: ok == circuits.len(),
        detail: format!(
            "{ok}/{} circuits: brute-force minimum equals optimiser count ({merged} with merges){}",
            circuits.len(),
            first_failure.map(|m| format!("; first failure {m}")).unwrap_or_default()
        ),
    }
}

fn criterion_6() -> Outcome {
    let circuits = corpus(6, 30, 8, 6);
    let mut ok = 0;
    let mut first_failure = None;
    for (i, c) in circuits.iter().enumerate() {
        let a = phase_teleport_with(c, Schedule::Seeded(11)).map(|(o, _)| o.num_params());
        let b = phase_teleport_with(c, Schedule::Seeded(29)).map(|(o, _)| o.num_params());
        match (a, b) {
            (Ok(x), Ok(y)) if x == y => ok += 1,
            (a, b) => {
                first_failure.get_or_insert(format!("circuit {i}: {a:?} vs {b:?}"));
            }
        }
    }
    Outcome {
        pass: ok == circuits.len(),
        detail: format!(
            "{ok}/{} circuits give equal counts under schedule seeds 11 and 29{}",
            circuits.len(),
            first_failure.map(|m| format!("; first failure {m}")).unwrap_or_default()
        ),
    }
}

fn criterion_7() -> Outcome {
    let circuits = corpus(2, 200, 8, 6);
    let mut ok = 0;
    let mut first_failure = None;
    for (i, c) in circuits.iter().enumerate() {
        let once = phase_teleport(c).unwrap().0;
        let twice = phase_teleport(&once).unwrap().0;
        if twice.num_params() == once.num_params() {
            ok += 1;
        } else {
            first_failure.get_or_insert(format!("circuit {i}: {} then {}", once.num_params(), twice.num_params()));
        }
    }
    Outcome {
        pass: ok == circuits.len(),
        detail: format!(
            "{ok}/{} optimised circuits keep their count when re-optimised{}",
            circuits.len(),
            first_failure.map(|m| format!("; first failure {m}")).unwrap_or_default()
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = 0;
    let mut first_failure = None;
    for i in 0..50 {
        let n = rng.gen_range(1..=6);
        let g = rng.gen_range(0..=25);
        let c = random_clifford_circuit(&mut rng, n, g);
        let d = circuit_state_diagram(&c).unwrap();
        let result = ap_form(&d).map_err(|e| e.to_string()).and_then(|ap| {
            let t = tensor_eval(&d, &Assignment::new()).map_err(|e| e.to_string())?;
            let psi = state(&c, &Assignment::new()).map_err(|e| e.to_string())?;
            let rebuilt = ap.reconstruct();
            for (name, reference) in [("tensor", &t.amplitudes), ("simulator", &psi)] {
                let (l, dev) = ratio(reference, &rebuilt);
                if l.norm() == 0.0 || dev > TOL {
                    return Err(format!("{name} deviation {dev:e}"));
                }
            }
            Ok(())
        });
        match result {
            Ok(()) => ok += 1,
            Err(e) => {
                first_failure.get_or_insert(format!("state {i}: {e}"));
            }
        }
    }
    Outcome {
        pass: ok == 50,
        detail: format!(
            "{ok}/50 Clifford states reconstruct proportionally from AP form, against tensor and simulator (tol {TOL:e}){}",
            first_failure.map(|m| format!("; first failure {m}")).unwrap_or_default()
        ),
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=8);
        let g = rng.gen_range(0..=30);
        let k = rng.gen_range(0..=6);
        let c = random_circuit(&mut rng, n, g, k);
        if parse_circuit(&emit_circuit(&c)).as_ref() == Ok(&c) {
            ok += 1;
        }
    }
    let syntax = matches!(parse_circuit("qreg 2\nfoo 0\n"), Err(ParseError::Syntax { line: 2, .. }));
    let constant = matches!(
        parse_circuit("qreg 1\nrz(0.25pi) 0\n"),
        Err(ParseError::NonCliffordConstant { line: 2, .. })
    );
    let repeated = matches!(
        parse_circuit("qreg 1\nrz(a) 0\nrz(a) 0\n"),
        Err(ParseError::RepeatedParameter { line: 3, .. })
    );
    Outcome {
        pass: ok == 100 && syntax && constant && repeated,
        detail: format!(
            "{ok}/100 round trips; syntax error {}, non-Clifford constant {}, repeated parameter {}",
            if syntax { "raised" } else { "MISSING" },
            if constant { "raised" } else { "MISSING" },
            if repeated { "raised" } else { "MISSING" },
        ),
    }
}

fn main() {
    let criteria: [(u8, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let filter: Vec<u8> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (n, f) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {n}: {} ({:.1}s) {}",
            if o.pass { "PASS" } else { "FAIL" },
            secs,
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
}
