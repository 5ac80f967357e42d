//! Explicit finite inference systems and brute-force fixed-point oracles.
//!
//! These are deliberately naive: they compute the inductive, coinductive,
//! regular and corule-bounded interpretations straight from the inference
//! operator, independently of the search engines.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::system::{InferenceSystem, Judgment, RuleInstance};

/// Largest universe the subset-enumerating oracles accept.
pub const BRUTE_FORCE_CAP: usize = 16;

/// A finite inference system with all rules listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSystem<J: Ord> {
    universe: BTreeSet<J>,
    rules: Vec<RuleInstance<J>>,
    by_conclusion: BTreeMap<J, Vec<usize>>,
}

impl<J: Judgment> GroundSystem<J> {
    /// Builds a system whose universe is `extra` plus every judgment mentioned
    /// by a rule. Repeated rules are kept once.
    pub fn new<I>(extra: I, rules: Vec<RuleInstance<J>>) -> Self
    where
        I: IntoIterator<Item = J>,
    {
        let mut universe: BTreeSet<J> = extra.into_iter().collect();
        let mut kept: Vec<RuleInstance<J>> = Vec::with_capacity(rules.len());
        for rule in rules {
            if kept.contains(&rule) {
                continue;
            }
            universe.extend(rule.premises.iter().cloned());
            universe.insert(rule.conclusion.clone());
            kept.push(rule);
        }
        let mut by_conclusion: BTreeMap<J, Vec<usize>> = BTreeMap::new();
        for (i, r) in kept.iter().enumerate() {
            by_conclusion
                .entry(r.conclusion.clone())
                .or_default()
                .push(i);
        }
        GroundSystem {
            universe,
            rules: kept,
            by_conclusion,
        }
    }

    pub fn from_rules(rules: Vec<RuleInstance<J>>) -> Self {
        Self::new([], rules)
    }

    pub fn universe(&self) -> &BTreeSet<J> {
        &self.universe
    }

    pub fn rules(&self) -> &[RuleInstance<J>] {
        &self.rules
    }

    /// The same rules over a larger universe.
    pub fn with_universe<I: IntoIterator<Item = J>>(&self, extra: I) -> Self {
        Self::new(
            self.universe.iter().cloned().chain(extra),
            self.rules.clone(),
        )
    }

    /// Keeps only the rules whose conclusion lies in `keep`. The universe is
    /// unchanged.
    pub fn restrict(&self, keep: &BTreeSet<J>) -> Self {
        Self::new(
            self.universe.iter().cloned(),
            self.rules
                .iter()
                .filter(|r| keep.contains(&r.conclusion))
                .cloned()
                .collect(),
        )
    }

    /// One axiom per universe judgment.
    pub fn all_axioms(universe: &BTreeSet<J>) -> Self {
        Self::new(
            universe.iter().cloned(),
            universe.iter().cloned().map(RuleInstance::axiom).collect(),
        )
    }

    /// The inference operator: conclusions of rules whose premises all lie in `x`.
    pub fn inf_op(&self, x: &BTreeSet<J>) -> Result<BTreeSet<J>> {
        if let Some(stray) = x.iter().find(|j| !self.universe.contains(*j)) {
            return Err(Error::NotInUniverse(stray.to_string()));
        }
        Ok(self.step(x))
    }

    fn step(&self, x: &BTreeSet<J>) -> BTreeSet<J> {
        self.rules
            .iter()
            .filter(|r| r.premises.is_subset(x))
            .map(|r| r.conclusion.clone())
            .collect()
    }

    /// Least fixed point, by iteration from the empty set.
    pub fn lfp(&self) -> BTreeSet<J> {
        let mut x = BTreeSet::new();
        loop {
            let next = self.step(&x);
            if next == x {
                return x;
            }
            x = next;
        }
    }

    /// Greatest fixed point, by iteration from the universe.
    pub fn gfp(&self) -> BTreeSet<J> {
        let mut x = self.universe.clone();
        loop {
            let next = self.step(&x);
            if next == x {
                return x;
            }
            x = next;
        }
    }

    /// Union of all post-fixed subsets of the universe.
    ///
    /// On a finite universe every subset is compact, so this must coincide
    /// with [`gfp`](Self::gfp); a mismatch panics.
    pub fn rfp_bruteforce(&self) -> Result<BTreeSet<J>> {
        let universe: Vec<&J> = self.universe.iter().collect();
        let n = universe.len();
        if n > BRUTE_FORCE_CAP {
            return Err(Error::UniverseTooLarge {
                size: n,
                cap: BRUTE_FORCE_CAP,
            });
        }
        let index: BTreeMap<&J, usize> =
            universe.iter().enumerate().map(|(i, j)| (*j, i)).collect();
        let masks: Vec<(u32, usize)> = self
            .rules
            .iter()
            .map(|r| {
                let premises = r.premises.iter().fold(0u32, |m, p| m | 1 << index[p]);
                (premises, index[&r.conclusion])
            })
            .collect();
        let mut union = 0u32;
        for subset in 0u32..(1u32 << n) {
            let image = masks
                .iter()
                .filter(|(p, _)| p & subset == *p)
                .fold(0u32, |m, (_, c)| m | 1 << c);
            if subset & image == subset {
                union |= subset;
            }
        }
        let rfp: BTreeSet<J> = (0..n)
            .filter(|i| union & (1 << i) != 0)
            .map(|i| universe[i].clone())
            .collect();
        assert_eq!(
            rfp,
            self.gfp(),
            "rational fixed point differs from gfp on a finite universe"
        );
        Ok(rfp)
    }
}

/// Regular interpretation of `⟨rules, corules⟩`: the regular interpretation
/// of `rules` restricted to conclusions with a finite proof in rules ∪ corules.
pub fn flex_regular_bruteforce<J: Judgment>(
    rules: &GroundSystem<J>,
    corules: &GroundSystem<J>,
) -> Result<BTreeSet<J>> {
    let universe: BTreeSet<J> = rules
        .universe()
        .union(corules.universe())
        .cloned()
        .collect();
    let union = GroundSystem::new(
        universe.iter().cloned(),
        rules
            .rules()
            .iter()
            .chain(corules.rules())
            .cloned()
            .collect(),
    );
    let bounded = union.lfp();
    rules
        .with_universe(universe)
        .restrict(&bounded)
        .rfp_bruteforce()
}

impl<J: Judgment> InferenceSystem for GroundSystem<J> {
    type Judgment = J;

    fn rules_for(&self, judgment: &J) -> Vec<RuleInstance<J>> {
        self.by_conclusion
            .get(judgment)
            .map(|ids| ids.iter().map(|&i| self.rules[i].clone()).collect())
            .unwrap_or_default()
    }
}

fn atom(i: usize) -> String {
    let letter = (b'a' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

fn random_rules(rng: &mut ChaCha8Rng, atoms: &[String], count: usize) -> Vec<RuleInstance<String>> {
    (0..count)
        .map(|_| {
            let arity = rng.gen_range(0..=3.min(atoms.len()));
            let premises: Vec<String> = (0..arity)
                .map(|_| atoms[rng.gen_range(0..atoms.len())].clone())
                .collect();
            RuleInstance::new(premises, atoms[rng.gen_range(0..atoms.len())].clone())
        })
        .collect()
}

/// A seeded random ground system over atoms `a`, `b`, ...: at most
/// `max_universe` judgments, at most `max_rules` rules, premise sets of size
/// at most 3.
///
/// # Panics
/// If `max_universe` is zero.
pub fn random_ground_system(
    seed: u64,
    max_universe: usize,
    max_rules: usize,
) -> GroundSystem<String> {
    assert!(
        max_universe >= 1,
        "a ground system needs a non-empty universe"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_universe);
    let atoms: Vec<String> = (0..n).map(atom).collect();
    let count = rng.gen_range(0..=max_rules);
    let rules = random_rules(&mut rng, &atoms, count);
    GroundSystem::new(atoms, rules)
}

/// [`random_ground_system`] plus at most `max_corules` random corules over the
/// same universe.
pub fn random_generalized_ground_system(
    seed: u64,
    max_universe: usize,
    max_rules: usize,
    max_corules: usize,
) -> (GroundSystem<String>, GroundSystem<String>) {
    let rules = random_ground_system(seed, max_universe, max_rules);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let atoms: Vec<String> = rules.universe().iter().cloned().collect();
    let count = rng.gen_range(0..=max_corules);
    let corules = GroundSystem::new(atoms.clone(), random_rules(&mut rng, &atoms, count));
    (rules, corules)
}
