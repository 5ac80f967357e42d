//! Proof search.
//!
//! Regular derivability is decided through its inductive characterization:
//! judgments of the form `H ⊢ j`, where `H` is a finite set of circular
//! hypotheses, derived by two rules:
//!
//! * **hp**: `H ⊢ j` holds outright when `j ∈ H`;
//! * **unfold**: for a rule `⟨{j1..jn}, j⟩` of the system, `H ⊢ j` holds when
//!   `H ∪ {j} ⊢ ji` holds for every premise.
//!
//! `∅ ⊢ j` is finitely derivable iff `j` has a regular proof tree. The
//! search here is the deterministic variant that applies a hypothesis as soon
//! as one matches. Under corules, hp additionally requires `j` to have a finite
//! proof in rules ∪ corules.
//!
//! Inductive (well-founded) search prunes a branch when its judgment already
//! occurs on the path from the root: any finite proof with such a repetition
//! contains a smaller one without it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use crate::certificate::{FiniteTree, ProofGraph, SearchOutcome};
use crate::error::{Error, Result};
use crate::system::{distinct_rules, GeneralizedSystem, InferenceSystem, Judgment, RuleInstance};

/// Negative-cache entries kept before the table is flushed.
const REJECTED_CAPACITY: usize = 1 << 20;

/// Raised when a search runs out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted;

/// Remaining budget, in rule applications attempted.
#[derive(Clone, Debug)]
pub struct Fuel {
    limit: u64,
    used: u64,
}

impl Fuel {
    /// `None` for a zero budget.
    pub fn new(limit: u64) -> Option<Fuel> {
        (limit > 0).then_some(Fuel { limit, used: 0 })
    }

    pub fn spend(&mut self) -> std::result::Result<(), Exhausted> {
        if self.used >= self.limit {
            return Err(Exhausted);
        }
        self.used += 1;
        Ok(())
    }

    pub fn consumed(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used
    }
}

fn fuel_for(budget: u64) -> Result<Fuel> {
    Fuel::new(budget).ok_or(Error::ZeroBudget)
}

/// A finite set of circular hypotheses.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hypotheses<J>(BTreeSet<J>);

impl<J: Judgment> Hypotheses<J> {
    pub fn new() -> Self {
        Hypotheses(BTreeSet::new())
    }

    pub fn contains(&self, j: &J) -> bool {
        self.0.contains(j)
    }

    /// A copy extended with `j`.
    pub fn with(&self, j: &J) -> Self {
        let mut next = self.0.clone();
        next.insert(j.clone());
        Hypotheses(next)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn as_set(&self) -> &BTreeSet<J> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<J: Judgment> FromIterator<J> for Hypotheses<J> {
    fn from_iter<I: IntoIterator<Item = J>>(iter: I) -> Self {
        Hypotheses(iter.into_iter().collect())
    }
}

/// An accepting run of the hypothesis search for one judgment.
///
/// `assignment` holds the rule chosen at every unfold step of the run, and
/// `used` the hypotheses the run closed branches with. Every premise of an
/// assigned rule is either assigned or in `used`, so the entry stays valid
/// under any hypothesis set containing `used`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoEntry<J> {
    pub judgment: J,
    pub used: BTreeSet<J>,
    pub assignment: BTreeMap<J, RuleInstance<J>>,
}

/// Turns an accepting run into a proof graph rooted at its judgment.
///
/// For a run under no hypotheses the result passes
/// [`validate_proof_graph`](crate::certificate::validate_proof_graph).
pub fn extract_certificate<J: Judgment>(run: &MemoEntry<J>) -> ProofGraph<J> {
    ProofGraph::new(run.judgment.clone(), run.assignment.clone()).prune_unreachable()
}

/// Decides whether a hypothesis may close a branch.
trait Gate<J> {
    fn admits(&mut self, j: &J, fuel: &mut Fuel) -> std::result::Result<bool, Exhausted>;
}

struct Open;

impl<J> Gate<J> for Open {
    fn admits(&mut self, _: &J, _: &mut Fuel) -> std::result::Result<bool, Exhausted> {
        Ok(true)
    }
}

/// Depth-first search for finite proof trees with path-repetition pruning.
///
/// Finite proofs do not depend on the search context, so successes are cached
/// by judgment. Failures are cached by exact path.
pub(crate) struct InductiveProver<S: InferenceSystem> {
    sys: S,
    proved: HashMap<S::Judgment, FiniteTree<S::Judgment>>,
    refuted: HashSet<S::Judgment>,
    rejected: HashSet<(BTreeSet<S::Judgment>, S::Judgment)>,
}

impl<S: InferenceSystem> InductiveProver<S> {
    pub(crate) fn new(sys: S) -> Self {
        InductiveProver {
            sys,
            proved: HashMap::new(),
            refuted: HashSet::new(),
            rejected: HashSet::new(),
        }
    }

    pub(crate) fn prove(
        &mut self,
        goal: &S::Judgment,
        fuel: &mut Fuel,
    ) -> std::result::Result<Option<FiniteTree<S::Judgment>>, Exhausted> {
        let result = self.search(&mut BTreeSet::new(), goal, fuel)?;
        if result.is_none() {
            self.refuted.insert(goal.clone());
        }
        Ok(result)
    }

    fn search(
        &mut self,
        path: &mut BTreeSet<S::Judgment>,
        j: &S::Judgment,
        fuel: &mut Fuel,
    ) -> std::result::Result<Option<FiniteTree<S::Judgment>>, Exhausted> {
        if path.contains(j) || self.refuted.contains(j) {
            return Ok(None);
        }
        if let Some(tree) = self.proved.get(j) {
            return Ok(Some(tree.clone()));
        }
        let key = (path.clone(), j.clone());
        if self.rejected.contains(&key) {
            return Ok(None);
        }
        path.insert(j.clone());
        let found = self.try_rules(path, j, fuel);
        path.remove(j);
        match found? {
            Some(tree) => {
                self.proved.insert(j.clone(), tree.clone());
                Ok(Some(tree))
            }
            None => {
                if self.rejected.len() >= REJECTED_CAPACITY {
                    self.rejected.clear();
                }
                self.rejected.insert(key);
                Ok(None)
            }
        }
    }

    fn try_rules(
        &mut self,
        path: &mut BTreeSet<S::Judgment>,
        j: &S::Judgment,
        fuel: &mut Fuel,
    ) -> std::result::Result<Option<FiniteTree<S::Judgment>>, Exhausted> {
        'rules: for rule in distinct_rules(&self.sys, j) {
            fuel.spend()?;
            let mut children = Vec::with_capacity(rule.premises.len());
            for p in &rule.premises {
                match self.search(path, p, fuel)? {
                    Some(t) => children.push(t),
                    None => continue 'rules,
                }
            }
            return Ok(Some(FiniteTree::node(j.clone(), children)));
        }
        Ok(None)
    }
}

impl<S: InferenceSystem> Gate<S::Judgment> for InductiveProver<S> {
    fn admits(&mut self, j: &S::Judgment, fuel: &mut Fuel) -> std::result::Result<bool, Exhausted> {
        Ok(self.prove(j, fuel)?.is_some())
    }
}

type Accepted<J> = Rc<MemoEntry<J>>;
type Blockers<J> = Rc<BTreeSet<J>>;

/// Result of one step of the hypothesis search.
enum Step<J> {
    Accept(Accepted<J>),
    /// The search failed. The set holds every judgment the failed
    /// exploration found absent from its hypotheses: the failure carries over
    /// to any hypothesis set disjoint from it.
    Reject(Blockers<J>),
}

/// The hypothesis search, parameterized by the check applied before a
/// hypothesis closes a branch.
///
/// Memoization relies on hypothesis monotonicity: if `H ⊢ j` is derivable
/// then so is `H' ⊢ j` for every `H' ⊇ H`.
/// * An accepting run is reused under any `H` containing the hypotheses it
///   used.
/// * A failure explored under `H` would be explored identically under
///   `H ∪ H'` whenever `H'` avoids every judgment the exploration found
///   absent, so it fails there too, and by monotonicity under `H'` itself.
struct LoopSearch<S: InferenceSystem, G> {
    sys: S,
    gate: G,
    accepted: HashMap<S::Judgment, Vec<Accepted<S::Judgment>>>,
    rejected: HashMap<S::Judgment, Vec<Blockers<S::Judgment>>>,
    rejected_len: usize,
}

impl<S: InferenceSystem, G: Gate<S::Judgment>> LoopSearch<S, G> {
    fn new(sys: S, gate: G) -> Self {
        LoopSearch {
            sys,
            gate,
            accepted: HashMap::new(),
            rejected: HashMap::new(),
            rejected_len: 0,
        }
    }

    fn search(
        &mut self,
        hyps: &Hypotheses<S::Judgment>,
        j: &S::Judgment,
        fuel: &mut Fuel,
    ) -> std::result::Result<Step<S::Judgment>, Exhausted> {
        if hyps.contains(j) {
            // A refused hypothesis means `j` has no finite proof with corules;
            // such a judgment is underivable under every hypothesis set, so
            // unfolding it again cannot help (and would not terminate).
            return Ok(if self.gate.admits(j, fuel)? {
                Step::Accept(Rc::new(MemoEntry {
                    judgment: j.clone(),
                    used: BTreeSet::from([j.clone()]),
                    assignment: BTreeMap::new(),
                }))
            } else {
                Step::Reject(Rc::default())
            });
        }
        if let Some(hit) = self
            .accepted
            .get(j)
            .and_then(|entries| entries.iter().find(|e| e.used.is_subset(hyps.as_set())))
        {
            return Ok(Step::Accept(Rc::clone(hit)));
        }
        if let Some(hit) = self.rejected.get(j).and_then(|entries| {
            entries
                .iter()
                .find(|absent| absent.is_disjoint(hyps.as_set()))
        }) {
            return Ok(Step::Reject(Rc::clone(hit)));
        }

        let inner = hyps.with(j);
        let mut absent = BTreeSet::from([j.clone()]);
        'rules: for rule in distinct_rules(&self.sys, j) {
            fuel.spend()?;
            let mut parts = Vec::with_capacity(rule.premises.len());
            for p in &rule.premises {
                match self.search(&inner, p, fuel)? {
                    Step::Accept(entry) => parts.push(entry),
                    Step::Reject(blockers) => {
                        absent.extend(blockers.iter().cloned());
                        continue 'rules;
                    }
                }
            }
            let entry = Rc::new(merge(j, rule, &parts));
            self.accepted
                .entry(j.clone())
                .or_default()
                .push(Rc::clone(&entry));
            return Ok(Step::Accept(entry));
        }

        if self.rejected_len >= REJECTED_CAPACITY {
            self.rejected.clear();
            self.rejected_len = 0;
        }
        let absent = Rc::new(absent);
        self.rejected_len += 1;
        self.rejected
            .entry(j.clone())
            .or_default()
            .push(Rc::clone(&absent));
        Ok(Step::Reject(absent))
    }

    fn run(
        &mut self,
        hyps: &Hypotheses<S::Judgment>,
        goal: &S::Judgment,
        fuel: &mut Fuel,
    ) -> SearchOutcome<MemoEntry<S::Judgment>> {
        match self.search(hyps, goal, fuel) {
            Ok(Step::Accept(entry)) => SearchOutcome::Proved((*entry).clone()),
            Ok(Step::Reject(_)) => SearchOutcome::Refuted,
            Err(Exhausted) => SearchOutcome::OutOfFuel {
                consumed: fuel.consumed(),
            },
        }
    }
}

fn merge<J: Judgment>(j: &J, rule: RuleInstance<J>, parts: &[Rc<MemoEntry<J>>]) -> MemoEntry<J> {
    let mut used = BTreeSet::new();
    let mut assignment = BTreeMap::new();
    assignment.insert(j.clone(), rule);
    for part in parts {
        used.extend(part.used.iter().filter(|h| *h != j).cloned());
        for (k, r) in &part.assignment {
            assignment.entry(k.clone()).or_insert_with(|| r.clone());
        }
    }
    MemoEntry {
        judgment: j.clone(),
        used,
        assignment,
    }
}

fn to_graph<J: Judgment>(outcome: SearchOutcome<MemoEntry<J>>) -> SearchOutcome<ProofGraph<J>> {
    match outcome {
        SearchOutcome::Proved(entry) => SearchOutcome::Proved(extract_certificate(&entry)),
        SearchOutcome::Refuted => SearchOutcome::Refuted,
        SearchOutcome::OutOfFuel { consumed } => SearchOutcome::OutOfFuel { consumed },
    }
}

/// Searches for a regular proof tree of `goal`, returning a proof graph on
/// success.
pub fn prove_regular<S: InferenceSystem>(
    sys: &S,
    goal: &S::Judgment,
    budget: u64,
) -> Result<SearchOutcome<ProofGraph<S::Judgment>>> {
    let mut fuel = fuel_for(budget)?;
    Ok(to_graph(LoopSearch::new(sys, Open).run(
        &Hypotheses::new(),
        goal,
        &mut fuel,
    )))
}

/// Runs the regular search for `goal` starting from the hypotheses `hyps`.
pub fn prove_regular_under<S: InferenceSystem>(
    sys: &S,
    hyps: &Hypotheses<S::Judgment>,
    goal: &S::Judgment,
    budget: u64,
) -> Result<SearchOutcome<MemoEntry<S::Judgment>>> {
    let mut fuel = fuel_for(budget)?;
    Ok(LoopSearch::new(sys, Open).run(hyps, goal, &mut fuel))
}

/// Searches for a regular proof tree of `goal` in the rules of `gen` whose
/// nodes all have finite proofs in rules ∪ corules.
///
/// The budget is shared between the outer search and the finite-proof checks.
pub fn prove_regular_co<R, C>(
    gen: &GeneralizedSystem<R, C>,
    goal: &R::Judgment,
    budget: u64,
) -> Result<SearchOutcome<ProofGraph<R::Judgment>>>
where
    R: InferenceSystem,
    C: InferenceSystem<Judgment = R::Judgment>,
{
    prove_regular_co_under(gen, &Hypotheses::new(), goal, budget).map(to_graph)
}

/// [`prove_regular_co`] starting from the hypotheses `hyps`.
pub fn prove_regular_co_under<R, C>(
    gen: &GeneralizedSystem<R, C>,
    hyps: &Hypotheses<R::Judgment>,
    goal: &R::Judgment,
    budget: u64,
) -> Result<SearchOutcome<MemoEntry<R::Judgment>>>
where
    R: InferenceSystem,
    C: InferenceSystem<Judgment = R::Judgment>,
{
    let mut fuel = fuel_for(budget)?;
    let gate = InductiveProver::new(gen.union());
    Ok(LoopSearch::new(&gen.rules, gate).run(hyps, goal, &mut fuel))
}

/// Searches for a finite proof tree of `goal`.
pub fn prove_inductive<S: InferenceSystem>(
    sys: &S,
    goal: &S::Judgment,
    budget: u64,
) -> Result<SearchOutcome<FiniteTree<S::Judgment>>> {
    let mut fuel = fuel_for(budget)?;
    Ok(match InductiveProver::new(sys).prove(goal, &mut fuel) {
        Ok(Some(tree)) => SearchOutcome::Proved(tree),
        Ok(None) => SearchOutcome::Refuted,
        Err(Exhausted) => SearchOutcome::OutOfFuel {
            consumed: fuel.consumed(),
        },
    })
}
