//! Judgments, rule instances and the backward-enumeration contract that every
//! inference system in this crate implements.

use std::collections::{BTreeSet, HashSet};
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::marker::PhantomData;

/// An element of the universe of judgments.
///
/// Judgments are opaque to the search engines: they only need to be compared,
/// ordered (for deterministic iteration and canonical output), hashed and
/// rendered. Any type with those capabilities is a judgment.
pub trait Judgment: Clone + Eq + Ord + Hash + Debug + Display {}

impl<T: Clone + Eq + Ord + Hash + Debug + Display> Judgment for T {}

/// A rule instance `⟨premises, conclusion⟩` with a finite set of premises.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleInstance<J> {
    pub premises: BTreeSet<J>,
    pub conclusion: J,
}

impl<J: Judgment> RuleInstance<J> {
    pub fn new<I: IntoIterator<Item = J>>(premises: I, conclusion: J) -> Self {
        RuleInstance {
            premises: premises.into_iter().collect(),
            conclusion,
        }
    }

    /// A rule with no premises.
    pub fn axiom(conclusion: J) -> Self {
        RuleInstance {
            premises: BTreeSet::new(),
            conclusion,
        }
    }

    pub fn is_axiom(&self) -> bool {
        self.premises.is_empty()
    }
}

impl<J: Display> Display for RuleInstance<J> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "] => {}", self.conclusion)
    }
}

/// An inference system given by backward enumeration.
///
/// `rules_for(j)` returns the rule instances whose conclusion is `j`, with the
/// side conditions of any meta-rule already applied. The list must be finite
/// and must not depend on anything but `j`.
pub trait InferenceSystem {
    type Judgment: Judgment;

    fn rules_for(&self, judgment: &Self::Judgment) -> Vec<RuleInstance<Self::Judgment>>;
}

impl<S: InferenceSystem + ?Sized> InferenceSystem for &S {
    type Judgment = S::Judgment;

    fn rules_for(&self, judgment: &Self::Judgment) -> Vec<RuleInstance<Self::Judgment>> {
        (**self).rules_for(judgment)
    }
}

impl<S: InferenceSystem + ?Sized> InferenceSystem for Box<S> {
    type Judgment = S::Judgment;

    fn rules_for(&self, judgment: &Self::Judgment) -> Vec<RuleInstance<Self::Judgment>> {
        (**self).rules_for(judgment)
    }
}

/// Enumerates the rules of `sys` for `judgment`, dropping repeated rules and
/// anything whose conclusion is not `judgment`.
pub fn distinct_rules<S: InferenceSystem>(
    sys: &S,
    judgment: &S::Judgment,
) -> Vec<RuleInstance<S::Judgment>> {
    let mut seen = HashSet::new();
    sys.rules_for(judgment)
        .into_iter()
        .filter(|r| &r.conclusion == judgment)
        .filter(|r| seen.insert(r.clone()))
        .collect()
}

/// The system with no rules.
pub struct EmptySystem<J>(PhantomData<fn() -> J>);

impl<J> EmptySystem<J> {
    pub fn new() -> Self {
        EmptySystem(PhantomData)
    }
}

impl<J> Default for EmptySystem<J> {
    fn default() -> Self {
        Self::new()
    }
}

impl<J: Judgment> InferenceSystem for EmptySystem<J> {
    type Judgment = J;

    fn rules_for(&self, _: &J) -> Vec<RuleInstance<J>> {
        Vec::new()
    }
}

/// An inference system backed by a closure.
pub struct FnSystem<J, F> {
    enumerate: F,
    _judgment: PhantomData<fn() -> J>,
}

/// Wraps a backward enumerator closure as an [`InferenceSystem`].
pub fn from_fn<J, F>(enumerate: F) -> FnSystem<J, F>
where
    J: Judgment,
    F: Fn(&J) -> Vec<RuleInstance<J>>,
{
    FnSystem {
        enumerate,
        _judgment: PhantomData,
    }
}

impl<J, F> InferenceSystem for FnSystem<J, F>
where
    J: Judgment,
    F: Fn(&J) -> Vec<RuleInstance<J>>,
{
    type Judgment = J;

    fn rules_for(&self, judgment: &J) -> Vec<RuleInstance<J>> {
        (self.enumerate)(judgment)
    }
}

/// The union `I ∪ CO` of two systems over the same judgments.
#[derive(Clone, Debug)]
pub struct Union<A, B> {
    left: A,
    right: B,
}

/// Builds the union of two systems: rules of `left` first, then those of
/// `right`, with duplicates removed.
pub fn union_system<A, B>(left: A, right: B) -> Union<A, B>
where
    A: InferenceSystem,
    B: InferenceSystem<Judgment = A::Judgment>,
{
    Union { left, right }
}

impl<A, B> InferenceSystem for Union<A, B>
where
    A: InferenceSystem,
    B: InferenceSystem<Judgment = A::Judgment>,
{
    type Judgment = A::Judgment;

    fn rules_for(&self, judgment: &Self::Judgment) -> Vec<RuleInstance<Self::Judgment>> {
        let mut seen = HashSet::new();
        self.left
            .rules_for(judgment)
            .into_iter()
            .chain(self.right.rules_for(judgment))
            .filter(|r| seen.insert(r.clone()))
            .collect()
    }
}

/// An inference system with corules `⟨I, CO⟩`.
#[derive(Clone, Debug)]
pub struct GeneralizedSystem<R, C> {
    pub rules: R,
    pub corules: C,
}

impl<R, C> GeneralizedSystem<R, C>
where
    R: InferenceSystem,
    C: InferenceSystem<Judgment = R::Judgment>,
{
    pub fn new(rules: R, corules: C) -> Self {
        GeneralizedSystem { rules, corules }
    }

    /// The system `I ∪ CO` used for boundedness checks.
    pub fn union(&self) -> Union<&R, &C> {
        union_system(&self.rules, &self.corules)
    }
}
