//! Oracles and generators shared by the integration tests. None of them go
//! through the search engines.

#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regproof::examples::{Delta, Graph};
use regproof::proofgraph::unfold;
use regproof::{
    validate_finite_tree, FiniteTree, InferenceSystem, Lasso, ProofGraph, RuleInstance,
};

pub type Q = Ratio<i128>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shortest-path length from `from` to `to`, by breadth-first search.
pub fn bfs_distance(graph: &Graph, from: &str, to: &str) -> Delta {
    let mut dist: BTreeMap<&str, u32> = BTreeMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            return Delta::Finite(dist[v]);
        }
        for w in graph.successors(v).into_iter().flatten() {
            if !dist.contains_key(w.as_str()) {
                dist.insert(w, dist[v] + 1);
                queue.push_back(w);
            }
        }
    }
    Delta::Infinite
}

/// A seeded random graph with 1 to `max_nodes` nodes named `n0`, `n1`, ...
pub fn random_graph(seed: u64, max_nodes: usize) -> Graph {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=max_nodes);
    let density = rng.gen_range(0.15..0.6);
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut g = Graph::new();
    for a in &names {
        g.add_node(a);
    }
    for a in &names {
        for b in &names {
            if rng.gen_bool(density) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

pub fn random_digits(rng: &mut ChaCha8Rng, len: usize, base: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(0..base)).collect()
}

/// A random lasso with prefix of length `0..=max_prefix` and cycle of length
/// `1..=max_cycle` over digits `0..base`.
pub fn random_lasso(rng: &mut ChaCha8Rng, max_prefix: usize, max_cycle: usize, base: i64) -> Lasso {
    let p = rng.gen_range(0..=max_prefix);
    let c = rng.gen_range(1..=max_cycle);
    let prefix = random_digits(rng, p, base);
    let cycle = random_digits(rng, c, base);
    Lasso::canonicalize(prefix, cycle).unwrap()
}

fn digits_value(digits: &[i64], base: i128) -> i128 {
    digits.iter().fold(0, |acc, d| acc * base + *d as i128)
}

/// The real number `Σ d_i · base^{-i}` denoted by a digit stream, via the
/// geometric series of its cycle.
pub fn stream_value(s: &Lasso, base: u32) -> Q {
    let b = base as i128;
    let n = s.prefix().len() as u32;
    let m = s.cycle().len() as u32;
    let shift = b.pow(n);
    Q::new(digits_value(s.prefix(), b), shift)
        + Q::new(digits_value(s.cycle(), b), shift * (b.pow(m) - 1))
}

/// Adds two digit streams by exact arithmetic followed by long division:
/// the integer part is the carry and the fractional part is expanded digit by
/// digit until a remainder repeats.
pub fn long_addition(r1: &Lasso, r2: &Lasso, base: u32) -> (Lasso, i64) {
    let v = stream_value(r1, base) + stream_value(r2, base);
    let carry = v.floor();
    let frac = v - carry;
    let b = base as i128;
    let den = *frac.denom();
    let mut rem = *frac.numer();
    let mut seen: BTreeMap<i128, usize> = BTreeMap::new();
    let mut digits = Vec::new();
    while !seen.contains_key(&rem) {
        seen.insert(rem, digits.len());
        digits.push(((rem * b) / den) as i64);
        rem = (rem * b) % den;
    }
    let start = seen[&rem];
    let sum = Lasso::canonicalize(digits[..start].to_vec(), digits[start..].to_vec()).unwrap();
    (sum, carry.to_integer() as i64)
}

/// Truncation coherence and rule-instance checks for the first `max_depth`
/// levels of the tree a certificate denotes.
pub fn unfold_coherent<S: InferenceSystem>(
    sys: &S,
    cert: &ProofGraph<S::Judgment>,
    max_depth: usize,
) -> bool {
    let mut checked = BTreeMap::new();
    (0..=max_depth).all(|d| {
        let t = unfold(cert, d);
        let next = unfold(cert, d + 1);
        next.truncate(d) == t && inner_nodes_are_rules(sys, &next, d + 1, &mut checked)
    })
}

fn inner_nodes_are_rules<S: InferenceSystem>(
    sys: &S,
    t: &FiniteTree<S::Judgment>,
    depth: usize,
    checked: &mut BTreeMap<RuleInstance<S::Judgment>, bool>,
) -> bool {
    if depth == 0 {
        return true;
    }
    let rule = t.root_rule();
    let ok = match checked.get(&rule) {
        Some(ok) => *ok,
        None => {
            let ok = sys.rules_for(&t.root).contains(&rule);
            checked.insert(rule, ok);
            ok
        }
    };
    ok && t
        .children
        .iter()
        .all(|c| inner_nodes_are_rules(sys, c, depth - 1, checked))
}

pub fn tree_is_proof<S: InferenceSystem>(sys: &S, t: &FiniteTree<S::Judgment>) -> bool {
    validate_finite_tree(sys, t)
}
