//! Proof certificates and their checkers.
//!
//! A [`ProofGraph`] is a finite post-fixed point `X ⊆ F_I(X)` together with one
//! witnessing rule per element. Checking one against a system is the regular
//! coinduction principle in executable form; [`validate_bounded_proof_graph`]
//! adds the boundedness condition required under corules.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::search::{Fuel, InductiveProver};
use crate::system::{distinct_rules, GeneralizedSystem, InferenceSystem, Judgment, RuleInstance};

/// A finite graph of judgments with one chosen rule per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofGraph<J> {
    pub root: J,
    pub assignment: BTreeMap<J, RuleInstance<J>>,
}

impl<J: Judgment> ProofGraph<J> {
    pub fn new(root: J, assignment: BTreeMap<J, RuleInstance<J>>) -> Self {
        ProofGraph { root, assignment }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &J> {
        self.assignment.keys()
    }

    /// Judgments reachable from the root along premise edges, restricted to keys.
    pub fn reachable(&self) -> BTreeSet<J> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        if self.assignment.contains_key(&self.root) {
            seen.insert(self.root.clone());
            queue.push_back(&self.root);
        }
        while let Some(j) = queue.pop_front() {
            for p in &self.assignment[j].premises {
                if self.assignment.contains_key(p) && seen.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Drops keys that cannot be reached from the root.
    pub fn prune_unreachable(mut self) -> Self {
        let keep = self.reachable();
        self.assignment.retain(|j, _| keep.contains(j));
        self
    }
}

/// A finite proof tree. Children are kept sorted by their root judgment and
/// have pairwise distinct roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTree<J> {
    pub root: J,
    pub children: Vec<FiniteTree<J>>,
}

impl<J: Judgment> FiniteTree<J> {
    pub fn leaf(root: J) -> Self {
        FiniteTree {
            root,
            children: Vec::new(),
        }
    }

    pub fn node(root: J, mut children: Vec<FiniteTree<J>>) -> Self {
        children.sort_by(|a, b| a.root.cmp(&b.root));
        FiniteTree { root, children }
    }

    /// Depth in edges; a lone leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(FiniteTree::size).sum::<usize>()
    }

    /// Cuts the tree so that nodes at depth `depth` become leaves.
    pub fn truncate(&self, depth: usize) -> Self {
        FiniteTree {
            root: self.root.clone(),
            children: if depth == 0 {
                Vec::new()
            } else {
                self.children
                    .iter()
                    .map(|c| c.truncate(depth - 1))
                    .collect()
            },
        }
    }

    pub fn labels(&self) -> BTreeSet<J> {
        let mut out = BTreeSet::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut BTreeSet<J>) {
        out.insert(self.root.clone());
        for c in &self.children {
            c.collect_labels(out);
        }
    }

    /// The rule instance used at the root of this tree.
    pub fn root_rule(&self) -> RuleInstance<J> {
        RuleInstance::new(
            self.children.iter().map(|c| c.root.clone()),
            self.root.clone(),
        )
    }
}

/// Checks that `tree` is a finite proof tree of `sys`: every node, with its
/// children's labels as premises, is a rule of the system.
pub fn validate_finite_tree<S: InferenceSystem>(sys: &S, tree: &FiniteTree<S::Judgment>) -> bool {
    let rule = tree.root_rule();
    rule.premises.len() == tree.children.len()
        && distinct_rules(sys, &tree.root).contains(&rule)
        && tree.children.iter().all(|c| validate_finite_tree(sys, c))
}

/// Result of a search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<C> {
    Proved(C),
    Refuted,
    OutOfFuel { consumed: u64 },
}

impl<C> SearchOutcome<C> {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, SearchOutcome::Refuted)
    }

    pub fn is_out_of_fuel(&self) -> bool {
        matches!(self, SearchOutcome::OutOfFuel { .. })
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            SearchOutcome::Proved(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_certificate(self) -> Option<C> {
        match self {
            SearchOutcome::Proved(c) => Some(c),
            _ => None,
        }
    }

    pub fn map<D>(self, f: impl FnOnce(C) -> D) -> SearchOutcome<D> {
        match self {
            SearchOutcome::Proved(c) => SearchOutcome::Proved(f(c)),
            SearchOutcome::Refuted => SearchOutcome::Refuted,
            SearchOutcome::OutOfFuel { consumed } => SearchOutcome::OutOfFuel { consumed },
        }
    }
}

/// The first condition a certificate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation<J> {
    RootNotAssigned(J),
    ConclusionMismatch { node: J, conclusion: J },
    RuleNotInSystem { node: J, rule: RuleInstance<J> },
    MissingPremise { node: J, premise: J },
    Unreachable(J),
    Unbounded(J),
}

impl<J: fmt::Display> fmt::Display for Violation<J> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RootNotAssigned(j) => write!(f, "root {j} has no assigned rule"),
            Violation::ConclusionMismatch { node, conclusion } => {
                write!(f, "node {node} is assigned a rule concluding {conclusion}")
            }
            Violation::RuleNotInSystem { node, rule } => {
                write!(
                    f,
                    "rule {rule} assigned to {node} is not a rule of the system"
                )
            }
            Violation::MissingPremise { node, premise } => {
                write!(f, "premise {premise} of {node} is not a node of the graph")
            }
            Violation::Unreachable(j) => write!(f, "node {j} is unreachable from the root"),
            Violation::Unbounded(j) => {
                write!(f, "node {j} has no finite proof using rules and corules")
            }
        }
    }
}

/// Checks a regular-derivation certificate: the key set is finite, closed
/// under premises, reachable from the root, and every assigned rule is one the
/// system emits for its node.
///
/// On failure, reports the violation at the least offending node.
pub fn validate_proof_graph<S: InferenceSystem>(
    sys: &S,
    cert: &ProofGraph<S::Judgment>,
) -> std::result::Result<(), Violation<S::Judgment>> {
    if !cert.assignment.contains_key(&cert.root) {
        return Err(Violation::RootNotAssigned(cert.root.clone()));
    }
    let reachable = cert.reachable();
    for (node, rule) in &cert.assignment {
        if &rule.conclusion != node {
            return Err(Violation::ConclusionMismatch {
                node: node.clone(),
                conclusion: rule.conclusion.clone(),
            });
        }
        if !distinct_rules(sys, node).contains(rule) {
            return Err(Violation::RuleNotInSystem {
                node: node.clone(),
                rule: rule.clone(),
            });
        }
        if let Some(p) = rule
            .premises
            .iter()
            .find(|p| !cert.assignment.contains_key(*p))
        {
            return Err(Violation::MissingPremise {
                node: node.clone(),
                premise: p.clone(),
            });
        }
        if !reachable.contains(node) {
            return Err(Violation::Unreachable(node.clone()));
        }
    }
    Ok(())
}

/// Verdict of [`validate_bounded_proof_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedVerdict<J> {
    Valid,
    Invalid(Violation<J>),
    OutOfFuel,
}

impl<J> BoundedVerdict<J> {
    pub fn is_valid(&self) -> bool {
        matches!(self, BoundedVerdict::Valid)
    }
}

/// Checks a certificate against a system with corules: structurally against
/// the rules, and every node must have a finite proof in rules ∪ corules.
///
/// `budget` is shared by all the finite-proof searches.
pub fn validate_bounded_proof_graph<R, C>(
    gen: &GeneralizedSystem<R, C>,
    cert: &ProofGraph<R::Judgment>,
    budget: u64,
) -> Result<BoundedVerdict<R::Judgment>>
where
    R: InferenceSystem,
    C: InferenceSystem<Judgment = R::Judgment>,
{
    let mut fuel = Fuel::new(budget).ok_or(Error::ZeroBudget)?;
    if let Err(v) = validate_proof_graph(&gen.rules, cert) {
        return Ok(BoundedVerdict::Invalid(v));
    }
    let mut prover = InductiveProver::new(gen.union());
    for node in cert.nodes() {
        match prover.prove(node, &mut fuel) {
            Ok(Some(_)) => {}
            Ok(None) => return Ok(BoundedVerdict::Invalid(Violation::Unbounded(node.clone()))),
            Err(_) => return Ok(BoundedVerdict::OutOfFuel),
        }
    }
    Ok(BoundedVerdict::Valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::from_fn;

    type J = &'static str;

    fn sys() -> impl InferenceSystem<Judgment = J> {
        from_fn(|j: &J| match *j {
            "a" => vec![RuleInstance::new(["b"], "a"), RuleInstance::axiom("a")],
            "b" => vec![RuleInstance::new(["a"], "b")],
            "c" => vec![RuleInstance::new(["c"], "c")],
            _ => vec![],
        })
    }

    fn graph(root: J, rules: &[RuleInstance<J>]) -> ProofGraph<J> {
        ProofGraph::new(
            root,
            rules.iter().map(|r| (r.conclusion, r.clone())).collect(),
        )
    }

    #[test]
    fn accepts_axiom_node() {
        let g = graph("a", &[RuleInstance::axiom("a")]);
        assert_eq!(validate_proof_graph(&sys(), &g), Ok(()));
    }

    #[test]
    fn accepts_cycle() {
        let g = graph(
            "a",
            &[RuleInstance::new(["b"], "a"), RuleInstance::new(["a"], "b")],
        );
        assert_eq!(validate_proof_graph(&sys(), &g), Ok(()));
    }

    #[test]
    fn rejects_missing_premise() {
        let g = graph("a", &[RuleInstance::new(["b"], "a")]);
        assert_eq!(
            validate_proof_graph(&sys(), &g),
            Err(Violation::MissingPremise {
                node: "a",
                premise: "b"
            })
        );
    }

    #[test]
    fn rejects_foreign_rule() {
        let g = graph("b", &[RuleInstance::axiom("b")]);
        assert!(matches!(
            validate_proof_graph(&sys(), &g),
            Err(Violation::RuleNotInSystem { node: "b", .. })
        ));
    }

    #[test]
    fn rejects_unreachable_node_and_missing_root() {
        let g = graph(
            "a",
            &[RuleInstance::axiom("a"), RuleInstance::new(["c"], "c")],
        );
        assert_eq!(
            validate_proof_graph(&sys(), &g),
            Err(Violation::Unreachable("c"))
        );
        let g = graph("b", &[RuleInstance::axiom("a")]);
        assert_eq!(
            validate_proof_graph(&sys(), &g),
            Err(Violation::RootNotAssigned("b"))
        );
    }

    #[test]
    fn rejects_mismatched_conclusion() {
        let mut g = graph("a", &[RuleInstance::axiom("a")]);
        g.assignment.insert("a", RuleInstance::axiom("c"));
        assert!(matches!(
            validate_proof_graph(&sys(), &g),
            Err(Violation::ConclusionMismatch { .. })
        ));
    }

    #[test]
    fn first_violation_follows_judgment_order() {
        // both b and c are broken; b comes first
        let g = graph(
            "a",
            &[
                RuleInstance::new(["b", "c"], "a"),
                RuleInstance::new(["z"], "b"),
                RuleInstance::new(["y"], "c"),
            ],
        );
        assert!(matches!(
            validate_proof_graph(&sys(), &g),
            Err(Violation::RuleNotInSystem { node: "a", .. })
        ));
    }

    #[test]
    fn truncate_and_depth() {
        let t = FiniteTree::node(
            "a",
            vec![FiniteTree::node("b", vec![FiniteTree::leaf("a")])],
        );
        assert_eq!(t.depth(), 2);
        assert_eq!(
            t.truncate(1),
            FiniteTree::node("a", vec![FiniteTree::leaf("b")])
        );
        assert_eq!(t.truncate(0), FiniteTree::leaf("a"));
        assert!(validate_finite_tree(&sys(), &FiniteTree::leaf("a")));
        assert!(validate_finite_tree(&sys(), &t));
        assert!(!validate_finite_tree(&sys(), &t.truncate(1)));
    }
}
