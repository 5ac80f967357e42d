//! Acceptance suite: one pass/fail line per criterion. Exits non-zero if any
//! criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use regproof::examples::{
    add_system, allpos_system, dist_system, min_rules, min_system, Delta, ExampleJudgment, Graph,
};
use regproof::ground::{
    flex_regular_bruteforce, random_generalized_ground_system, random_ground_system, GroundSystem,
};
use regproof::{
    prove_inductive, prove_regular, prove_regular_co, prove_regular_under,
    validate_bounded_proof_graph, validate_proof_graph, GeneralizedSystem, Hypotheses,
    InferenceSystem, Lasso, ProofGraph, SearchOutcome,
};

const BIG: u64 = 100_000;
const VALIDATION_BUDGET: u64 = 1_000_000;
const UNFOLD_DEPTH: usize = 6;

/// Certificate checks collected from every suite for criterion 8.
#[derive(Default)]
struct Integrity {
    checked: usize,
    failures: Vec<String>,
}

impl Integrity {
    fn plain<S: InferenceSystem>(&mut self, sys: &S, cert: &ProofGraph<S::Judgment>) -> bool {
        self.checked += 1;
        let ok =
            validate_proof_graph(sys, cert).is_ok() && unfold_coherent(sys, cert, UNFOLD_DEPTH);
        if !ok {
            self.failures.push(format!("certificate for {}", cert.root));
        }
        ok
    }

    fn bounded<R, C>(
        &mut self,
        gen: &GeneralizedSystem<R, C>,
        cert: &ProofGraph<R::Judgment>,
    ) -> bool
    where
        R: InferenceSystem,
        C: InferenceSystem<Judgment = R::Judgment>,
    {
        self.checked += 1;
        let ok = validate_bounded_proof_graph(gen, cert, VALIDATION_BUDGET)
            .map(|v| v.is_valid())
            .unwrap_or(false)
            && unfold_coherent(&gen.rules, cert, UNFOLD_DEPTH);
        if !ok {
            self.failures
                .push(format!("bounded certificate for {}", cert.root));
        }
        ok
    }

    fn tree<S: InferenceSystem>(&mut self, sys: &S, t: &regproof::FiniteTree<S::Judgment>) -> bool {
        self.checked += 1;
        let ok = tree_is_proof(sys, t);
        if !ok {
            self.failures.push(format!("finite tree for {}", t.root));
        }
        ok
    }
}

struct Report {
    failed: usize,
}

impl Report {
    fn record(
        &mut self,
        id: u32,
        name: &str,
        limit: Option<Duration>,
        run: impl FnOnce() -> Result<String, String>,
    ) {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed >= limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("[PASS] criterion {id:>2}: {name} ({detail}; {elapsed:.2?})"),
            Err(detail) => {
                self.failed += 1;
                println!("[FAIL] criterion {id:>2}: {name} ({detail}; {elapsed:.2?})");
            }
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn four_node(integrity: &mut Integrity) -> Result<String, String> {
    let sys = dist_system(Graph::four_node());
    let expected = [
        ("a", Delta::Finite(2)),
        ("b", Delta::Finite(1)),
        ("c", Delta::Finite(0)),
        ("d", Delta::Infinite),
    ];
    for (v, delta) in expected {
        let goal = ExampleJudgment::dist(v, "c", delta);
        let out = prove_regular(&sys, &goal, BIG).unwrap();
        let cert = out
            .certificate()
            .ok_or_else(|| format!("{goal} not proved: {out:?}"))?;
        check(integrity.plain(&sys, cert), || {
            format!("bad certificate for {goal}")
        })?;
        if v == "a" {
            check(cert.len() == 4, || {
                format!("certificate for {goal} has {} nodes", cert.len())
            })?;
        }
    }
    for delta in Graph::four_node().candidate_distances() {
        if delta == Delta::Finite(2) {
            continue;
        }
        let goal = ExampleJudgment::dist("a", "c", delta);
        let out = prove_regular(&sys, &goal, BIG).unwrap();
        check(out.is_refuted(), || format!("{goal}: {out:?}"))?;
    }
    Ok("4 proved, 4 refuted, 4-node certificate".into())
}

fn stream_minimum(integrity: &mut Integrity) -> Result<String, String> {
    let rules = min_rules();
    let gen = min_system();
    for z in 0..=2 {
        let goal = ExampleJudgment::min(z, Lasso::repeat(2));
        let plain = prove_regular(&rules, &goal, BIG).unwrap();
        let cert = plain
            .certificate()
            .ok_or_else(|| format!("{goal} not proved without corules"))?;
        check(integrity.plain(&rules, cert), || {
            format!("bad certificate for {goal}")
        })?;
        let bounded = prove_regular_co(&gen, &goal, BIG).unwrap();
        match (z, &bounded) {
            (2, SearchOutcome::Proved(cert)) => check(integrity.bounded(&gen, cert), || {
                format!("bad bounded certificate for {goal}")
            })?,
            (0 | 1, SearchOutcome::Refuted) => {}
            _ => return Err(format!("{goal} with coaxiom: {bounded:?}")),
        }
    }
    Ok("plain: 0,1,2 proved; with coaxiom: only 2".into())
}

fn oracle_equivalence(integrity: &mut Integrity) -> Result<String, String> {
    let mut judgments = 0;
    for seed in 0..600 {
        let g = random_ground_system(seed, 6, 12);
        let rfp = g.rfp_bruteforce().unwrap();
        check(rfp == g.gfp(), || format!("seed {seed}: rfp != gfp"))?;
        let lfp = g.lfp();
        for j in g.universe() {
            judgments += 1;
            let reg = prove_regular(&g, j, BIG).unwrap();
            match &reg {
                SearchOutcome::Proved(c) => {
                    check(rfp.contains(j), || {
                        format!("seed {seed}: {j} proved outside rfp")
                    })?;
                    check(integrity.plain(&g, c), || {
                        format!("seed {seed}: bad certificate for {j}")
                    })?;
                }
                SearchOutcome::Refuted => check(!rfp.contains(j), || {
                    format!("seed {seed}: {j} refuted inside rfp")
                })?,
                SearchOutcome::OutOfFuel { .. } => {
                    return Err(format!("seed {seed}: {j} out of fuel"))
                }
            }
            let ind = prove_inductive(&g, j, BIG).unwrap();
            match &ind {
                SearchOutcome::Proved(t) => {
                    check(lfp.contains(j), || {
                        format!("seed {seed}: {j} inductively proved outside lfp")
                    })?;
                    check(integrity.tree(&g, t), || {
                        format!("seed {seed}: bad tree for {j}")
                    })?;
                }
                SearchOutcome::Refuted => check(!lfp.contains(j), || {
                    format!("seed {seed}: {j} refuted inside lfp")
                })?,
                SearchOutcome::OutOfFuel { .. } => {
                    return Err(format!("seed {seed}: {j} out of fuel (inductive)"))
                }
            }
        }
    }
    Ok(format!(
        "600 systems, {judgments} judgments, 0 disagreements"
    ))
}

fn corule_equivalence(integrity: &mut Integrity) -> Result<String, String> {
    let mut judgments = 0;
    for seed in 0..600 {
        let (gi, gco) = random_generalized_ground_system(seed, 6, 12, 4);
        let flex = flex_regular_bruteforce(&gi, &gco).unwrap();
        let gen = GeneralizedSystem::new(&gi, &gco);
        for j in gi.universe() {
            judgments += 1;
            match prove_regular_co(&gen, j, BIG).unwrap() {
                SearchOutcome::Proved(c) => {
                    check(flex.contains(j), || {
                        format!("seed {seed}: {j} proved outside flex")
                    })?;
                    check(integrity.bounded(&gen, &c), || {
                        format!("seed {seed}: bad certificate for {j}")
                    })?;
                }
                SearchOutcome::Refuted => check(!flex.contains(j), || {
                    format!("seed {seed}: {j} refuted inside flex")
                })?,
                SearchOutcome::OutOfFuel { .. } => {
                    return Err(format!("seed {seed}: {j} out of fuel"))
                }
            }
        }
    }
    Ok(format!(
        "600 systems, {judgments} judgments, 0 disagreements"
    ))
}

fn particular_cases() -> Result<String, String> {
    let mut systems = 0;
    for seed in 0..600 {
        for g in [
            random_ground_system(seed, 6, 12),
            random_generalized_ground_system(seed, 6, 12, 4).0,
        ] {
            systems += 1;
            let none = GroundSystem::new(g.universe().iter().cloned(), vec![]);
            let all = GroundSystem::all_axioms(g.universe());
            check(
                flex_regular_bruteforce(&g, &none).unwrap() == g.lfp(),
                || format!("seed {seed}: empty corules differ from lfp"),
            )?;
            check(
                flex_regular_bruteforce(&g, &all).unwrap() == g.rfp_bruteforce().unwrap(),
                || format!("seed {seed}: all-axiom corules differ from rfp"),
            )?;
            // the searches agree on the same two cases
            let gen_none = GeneralizedSystem::new(&g, &none);
            let gen_all = GeneralizedSystem::new(&g, &all);
            for j in g.universe() {
                let co_none = prove_regular_co(&gen_none, j, BIG).unwrap().is_proved();
                let co_all = prove_regular_co(&gen_all, j, BIG).unwrap().is_proved();
                check(co_none == g.lfp().contains(j), || {
                    format!("seed {seed}: {j} empty-corule search")
                })?;
                check(
                    co_all == prove_regular(&g, j, BIG).unwrap().is_proved(),
                    || format!("seed {seed}: {j} all-axiom search"),
                )?;
            }
        }
    }
    Ok(format!("{systems} systems, 0 disagreements"))
}

fn distances(integrity: &mut Integrity) -> Result<String, String> {
    let mut pairs = 0;
    for seed in 0..200 {
        let graph = random_graph(seed, 5);
        let sys = dist_system(graph.clone());
        let nodes: Vec<&str> = graph.nodes().collect();
        for v in &nodes {
            for u in &nodes {
                pairs += 1;
                let truth = bfs_distance(&graph, v, u);
                for delta in graph.candidate_distances() {
                    let goal = ExampleJudgment::dist(v, u, delta);
                    match prove_regular(&sys, &goal, 10 * BIG).unwrap() {
                        SearchOutcome::Proved(c) => {
                            check(delta == truth, || {
                                format!("seed {seed}: {goal} proved, true distance {truth}")
                            })?;
                            check(integrity.plain(&sys, &c), || {
                                format!("seed {seed}: bad certificate for {goal}")
                            })?;
                        }
                        SearchOutcome::Refuted => {
                            check(delta != truth, || format!("seed {seed}: {goal} refuted"))?
                        }
                        SearchOutcome::OutOfFuel { .. } => {
                            return Err(format!("seed {seed}: {goal} out of fuel"))
                        }
                    }
                }
            }
        }
    }
    Ok(format!("200 graphs, {pairs} node pairs, 0 disagreements"))
}

fn addition(integrity: &mut Integrity) -> Result<String, String> {
    let gen = add_system(10).unwrap();
    let mut rng = rng(7);
    for i in 0..250 {
        let r1 = random_lasso(&mut rng, 3, 3, 10);
        let r2 = random_lasso(&mut rng, 3, 3, 10);
        let (sum, carry) = long_addition(&r1, &r2, 10);
        check(
            stream_value(&r1, 10) + stream_value(&r2, 10)
                == stream_value(&sum, 10) + Q::from_integer(carry as i128),
            || format!("pair {i}: oracle identity fails for {r1} + {r2}"),
        )?;
        let goal = ExampleJudgment::add(10, r1.clone(), r2.clone(), sum.clone(), carry);
        match prove_regular_co(&gen, &goal, BIG).unwrap() {
            SearchOutcome::Proved(c) => check(integrity.bounded(&gen, &c), || {
                format!("bad certificate for {goal}")
            })?,
            other => return Err(format!("{goal}: {other:?}")),
        }
        for wrong in [carry - 1, carry + 1] {
            let goal = ExampleJudgment::add(10, r1.clone(), r2.clone(), sum.clone(), wrong);
            let out = prove_regular_co(&gen, &goal, BIG).unwrap();
            check(out.is_refuted(), || format!("{goal}: {out:?}"))?;
        }
    }
    Ok("250 pairs proved, 500 perturbed carries refuted".into())
}

fn streams_beyond_examples(integrity: &mut Integrity) -> Result<(), String> {
    // stream suites other than the named examples also feed criterion 8
    let mut rng = rng(11);
    let allpos = allpos_system();
    let gen = min_system();
    for _ in 0..200 {
        let s = random_lasso(&mut rng, 3, 3, 4);
        let goal = ExampleJudgment::all_pos(s.clone());
        if let SearchOutcome::Proved(c) = prove_regular(&allpos, &goal, BIG).unwrap() {
            check(integrity.plain(&allpos, &c), || {
                format!("bad certificate for {goal}")
            })?;
        }
        let goal = ExampleJudgment::min(s.minimum(), s);
        if let SearchOutcome::Proved(c) = prove_regular_co(&gen, &goal, BIG).unwrap() {
            check(integrity.bounded(&gen, &c), || {
                format!("bad certificate for {goal}")
            })?;
        }
    }
    Ok(())
}

fn monotonicity() -> Result<String, String> {
    let mut rng = rng(3);
    let mut triples = 0;
    let mut reruns = 0;
    let mut seed = 0;
    while triples < 1200 {
        seed += 1;
        let g = random_ground_system(seed, 6, 12);
        let universe: Vec<String> = g.universe().iter().cloned().collect();
        for _ in 0..4 {
            let hyps: Hypotheses<String> = universe
                .iter()
                .filter(|_| rng.gen_bool(0.3))
                .cloned()
                .collect();
            let j = universe.choose(&mut rng).unwrap();
            let SearchOutcome::Proved(run) = prove_regular_under(&g, &hyps, j, BIG).unwrap() else {
                continue;
            };
            check(run.used.is_subset(hyps.as_set()), || {
                format!("seed {seed}: used hypotheses escape H")
            })?;
            triples += 1;
            for _ in 0..3 {
                let bigger: Hypotheses<String> = universe
                    .iter()
                    .filter(|h| run.used.contains(*h) || rng.gen_bool(0.5))
                    .cloned()
                    .collect();
                reruns += 1;
                let again = prove_regular_under(&g, &bigger, j, BIG).unwrap();
                check(again.is_proved(), || {
                    format!(
                        "seed {seed}: {j} accepted under {:?} but not under {:?}",
                        hyps, bigger
                    )
                })?;
            }
        }
    }
    Ok(format!(
        "{triples} accepting triples, {reruns} superset re-runs, 0 violations"
    ))
}

fn canonical_equality() -> Result<String, String> {
    fn lcm(a: usize, b: usize) -> usize {
        fn gcd(a: usize, b: usize) -> usize {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        a / gcd(a, b) * b
    }
    let mut rng = rng(5);
    let mut equal = 0;
    for _ in 0..5000 {
        let raw = |rng: &mut rand_chacha::ChaCha8Rng| {
            let p = rng.gen_range(0..=4);
            let c = rng.gen_range(1..=4);
            (random_digits(rng, p, 2), random_digits(rng, c, 2))
        };
        let (p1, c1) = raw(&mut rng);
        let (p2, c2) = raw(&mut rng);
        let n = p1.len() + p2.len() + 2 * lcm(c1.len(), c2.len());
        let direct = |p: &[i64], c: &[i64]| -> Vec<i64> {
            p.iter().chain(c.iter().cycle()).take(n).copied().collect()
        };
        let bounded_equal = direct(&p1, &c1) == direct(&p2, &c2);
        let l1 = Lasso::canonicalize(p1.clone(), c1.clone()).unwrap();
        let l2 = Lasso::canonicalize(p2.clone(), c2.clone()).unwrap();
        check((l1 == l2) == bounded_equal, || {
            format!("{p1:?}|{c1:?} vs {p2:?}|{c2:?}")
        })?;
        equal += bounded_equal as usize;
    }
    Ok(format!("5000 pairs ({equal} equal), 0 violations"))
}

fn main() {
    let mut report = Report { failed: 0 };
    let mut integrity = Integrity::default();
    let secs = Duration::from_secs;

    report.record(
        1,
        "distance example on the four-node graph",
        Some(secs(1)),
        || four_node(&mut integrity),
    );
    report.record(
        2,
        "stream minimum with and without coaxiom",
        Some(secs(1)),
        || stream_minimum(&mut integrity),
    );
    report.record(
        3,
        "regular/inductive search vs brute-force oracles",
        Some(secs(60)),
        || oracle_equivalence(&mut integrity),
    );
    report.record(
        4,
        "corule-bounded search vs brute-force oracle",
        Some(secs(60)),
        || corule_equivalence(&mut integrity),
    );
    report.record(
        5,
        "particular corule sets collapse to lfp / rfp",
        None,
        particular_cases,
    );
    report.record(
        6,
        "distances on all small random graphs vs BFS",
        Some(secs(120)),
        || distances(&mut integrity),
    );
    report.record(
        7,
        "digit-stream addition vs long addition",
        Some(secs(60)),
        || addition(&mut integrity),
    );
    report.record(8, "certificate integrity across all suites", None, || {
        streams_beyond_examples(&mut integrity)?;
        check(integrity.failures.is_empty(), || {
            integrity.failures.join("; ")
        })?;
        Ok(format!(
            "{} certificates valid and unfold-coherent to depth {UNFOLD_DEPTH}",
            integrity.checked
        ))
    });
    report.record(9, "hypothesis monotonicity", None, monotonicity);
    report.record(
        10,
        "canonical lasso equality vs bounded unfolding",
        None,
        canonical_equality,
    );

    if report.failed > 0 {
        println!("{} criteria failed", report.failed);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
