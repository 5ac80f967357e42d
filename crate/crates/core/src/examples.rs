//! Worked inference systems over rational streams and finite graphs.
//!
//! Each system enumerates rules backwards, with its meta-rule side conditions
//! already applied. Where a meta-rule has infinitely many instances for one
//! conclusion, the enumerator restricts the instances to a finite set that
//! loses no derivable judgment; each system documents its choice.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::streams::Lasso;
use crate::system::{InferenceSystem, RuleInstance};

/// A distance: a natural number or infinity. `Infinite` sorts last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Delta {
    Finite(u32),
    Infinite,
}

impl Delta {
    pub fn succ(self) -> Delta {
        match self {
            Delta::Finite(n) => Delta::Finite(n + 1),
            Delta::Infinite => Delta::Infinite,
        }
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::Finite(n) => write!(f, "{n}"),
            Delta::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Delta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Delta> {
        match s.trim() {
            "inf" | "∞" => Ok(Delta::Infinite),
            n => n.parse().map(Delta::Finite).map_err(|_| Error::Parse {
                what: "distance",
                input: s.to_string(),
            }),
        }
    }
}

/// Judgments of the example systems.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExampleJudgment {
    /// Every element of the stream is positive.
    AllPos(Lasso),
    /// The distance from `from` to `to` in graph `graph` is `delta`.
    Dist {
        graph: u32,
        from: String,
        to: String,
        delta: Delta,
    },
    /// `value` is the minimum of the stream.
    Min(i64, Lasso),
    /// `[s1] + [s2] = [sum] + carry`, reading streams as digits after the
    /// point in `base`.
    Add {
        base: u32,
        s1: Lasso,
        s2: Lasso,
        sum: Lasso,
        carry: i64,
    },
}

impl ExampleJudgment {
    pub fn all_pos(s: Lasso) -> Self {
        ExampleJudgment::AllPos(s)
    }

    pub fn dist(from: &str, to: &str, delta: Delta) -> Self {
        ExampleJudgment::Dist {
            graph: 0,
            from: from.to_string(),
            to: to.to_string(),
            delta,
        }
    }

    pub fn min(value: i64, s: Lasso) -> Self {
        ExampleJudgment::Min(value, s)
    }

    pub fn add(base: u32, s1: Lasso, s2: Lasso, sum: Lasso, carry: i64) -> Self {
        ExampleJudgment::Add {
            base,
            s1,
            s2,
            sum,
            carry,
        }
    }
}

impl fmt::Display for ExampleJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleJudgment::AllPos(s) => write!(f, "allpos({s})"),
            ExampleJudgment::Dist {
                graph,
                from,
                to,
                delta,
            } => {
                f.write_str("dist")?;
                if *graph != 0 {
                    write!(f, "@{graph}")?;
                }
                write!(f, "({from}, {to}, {delta})")
            }
            ExampleJudgment::Min(x, s) => write!(f, "min({x}, {s})"),
            ExampleJudgment::Add {
                base,
                s1,
                s2,
                sum,
                carry,
            } => write!(f, "add{base}({s1}, {s2}, {sum}, {carry})"),
        }
    }
}

/// Parses the rendering produced by `Display`.
impl FromStr for ExampleJudgment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "judgment",
            input: s.to_string(),
        };
        let s = s.trim();
        let open = s.find('(').ok_or_else(err)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(err)?;
        let args: Vec<&str> = body.split(", ").collect();
        let head = &s[..open];
        let int = |x: &str| x.trim().parse::<i64>().map_err(|_| err());
        match (head, args.as_slice()) {
            ("allpos", [l]) => Ok(ExampleJudgment::AllPos(l.parse()?)),
            ("min", [x, l]) => Ok(ExampleJudgment::Min(int(x)?, l.parse()?)),
            (h, [from, to, delta]) if h.starts_with("dist") => {
                let graph = match h.strip_prefix("dist").unwrap() {
                    "" => 0,
                    rest => rest
                        .strip_prefix('@')
                        .ok_or_else(err)?
                        .parse()
                        .map_err(|_| err())?,
                };
                Ok(ExampleJudgment::Dist {
                    graph,
                    from: from.to_string(),
                    to: to.to_string(),
                    delta: delta.parse()?,
                })
            }
            (h, [s1, s2, sum, carry]) if h.starts_with("add") => Ok(ExampleJudgment::Add {
                base: h[3..].parse().map_err(|_| err())?,
                s1: s1.parse()?,
                s2: s2.parse()?,
                sum: sum.parse()?,
                carry: int(carry)?,
            }),
            _ => Err(err()),
        }
    }
}

type Rules = Vec<RuleInstance<ExampleJudgment>>;

/// `allPos(x : s)` from `allPos(s)` when `x > 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AllPosSystem;

pub fn allpos_system() -> AllPosSystem {
    AllPosSystem
}

impl InferenceSystem for AllPosSystem {
    type Judgment = ExampleJudgment;

    fn rules_for(&self, j: &ExampleJudgment) -> Rules {
        match j {
            ExampleJudgment::AllPos(s) if s.head() > 0 => {
                vec![RuleInstance::new(
                    [ExampleJudgment::AllPos(s.tail())],
                    j.clone(),
                )]
            }
            _ => Vec::new(),
        }
    }
}

/// A finite directed graph given by its successor function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: BTreeMap<String, BTreeSet<String>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, node: &str) {
        self.adjacency.entry(node.to_string()).or_default();
    }

    /// Adds an edge, declaring both endpoints.
    pub fn add_edge(&mut self, from: &str, to: &str) {
        self.add_node(to);
        self.adjacency
            .entry(from.to_string())
            .or_default()
            .insert(to.to_string());
    }

    pub fn from_edges(nodes: &[&str], edges: &[(&str, &str)]) -> Self {
        let mut g = Graph::new();
        for n in nodes {
            g.add_node(n);
        }
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    /// The four-node graph `a ⇄ b`, `a → d`, `b → c`, `d → d`.
    pub fn four_node() -> Self {
        Graph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "d"), ("b", "a"), ("b", "c"), ("d", "d")],
        )
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.adjacency.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn successors(&self, node: &str) -> Option<&BTreeSet<String>> {
        self.adjacency.get(node)
    }

    /// Distances considered by [`DistSystem`]: `0..|V|` and infinity.
    pub fn candidate_distances(&self) -> Vec<Delta> {
        (0..self.len() as u32)
            .map(Delta::Finite)
            .chain([Delta::Infinite])
            .collect()
    }
}

/// Graph distance:
/// `dist(v, v, 0)` as an axiom, and `dist(v, u, 1 + min δi)` from
/// `dist(vi, u, δi)` for all successors `vi` of `v ≠ u` (`min ∅ = ∞`).
///
/// Premise distances range over `0..|V|` and `∞`. A shortest path has at most
/// `|V| - 1` edges, so the true distance of every pair is always a candidate
/// and no correct judgment loses its derivation.
#[derive(Clone, Debug)]
pub struct DistSystem {
    graph: Graph,
    id: u32,
}

pub fn dist_system(graph: Graph) -> DistSystem {
    DistSystem { graph, id: 0 }
}

impl DistSystem {
    /// Tags the judgments of this system with a graph id other than 0.
    pub fn with_id(graph: Graph, id: u32) -> Self {
        DistSystem { graph, id }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn judgment(&self, from: &str, to: &str, delta: Delta) -> ExampleJudgment {
        ExampleJudgment::Dist {
            graph: self.id,
            from: from.to_string(),
            to: to.to_string(),
            delta,
        }
    }

    /// Every way of picking premise distances whose minimum is `min`.
    fn assignments(&self, arity: usize, min: Delta) -> Vec<Vec<Delta>> {
        let choices: Vec<Delta> = self
            .graph
            .candidate_distances()
            .into_iter()
            .filter(|d| *d >= min)
            .collect();
        let mut out = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |d| {
                        let mut next = prefix.clone();
                        next.push(*d);
                        next
                    })
                })
                .collect();
        }
        out.retain(|ds| ds.contains(&min));
        out
    }
}

impl InferenceSystem for DistSystem {
    type Judgment = ExampleJudgment;

    fn rules_for(&self, j: &ExampleJudgment) -> Rules {
        let ExampleJudgment::Dist {
            graph,
            from,
            to,
            delta,
        } = j
        else {
            return Vec::new();
        };
        if *graph != self.id || !self.graph.candidate_distances().contains(delta) {
            return Vec::new();
        }
        let (Some(next), Some(_)) = (self.graph.successors(from), self.graph.successors(to)) else {
            return Vec::new();
        };
        if from == to {
            return if *delta == Delta::Finite(0) {
                vec![RuleInstance::axiom(j.clone())]
            } else {
                Vec::new()
            };
        }
        let min = match delta {
            Delta::Finite(0) => return Vec::new(),
            Delta::Finite(n) => Delta::Finite(n - 1),
            Delta::Infinite => Delta::Infinite,
        };
        if next.is_empty() {
            return if *delta == Delta::Infinite {
                vec![RuleInstance::axiom(j.clone())]
            } else {
                Vec::new()
            };
        }
        self.assignments(next.len(), min)
            .into_iter()
            .map(|ds| {
                let premises = next.iter().zip(ds).map(|(v, d)| self.judgment(v, to, d));
                RuleInstance::new(premises, j.clone())
            })
            .collect()
    }
}

/// `min(z, x : s)` from `min(y, s)` when `z = min{x, y}`.
///
/// For a conclusion `min(z, x : s)` the premise value `y` is drawn from `z`
/// itself and the elements `e` of `s` with `min{x, e} = z`. Taking `y = z`
/// suffices without corules; with the coaxiom the hypothesis closing a cycle
/// must be the true minimum of the cycled stream, which is one of its
/// elements, hence the extra candidates.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinRules;

/// The coaxiom `min(x, x : s)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinCoaxiom;

pub fn min_rules() -> MinRules {
    MinRules
}

pub fn min_system() -> crate::system::GeneralizedSystem<MinRules, MinCoaxiom> {
    crate::system::GeneralizedSystem::new(MinRules, MinCoaxiom)
}

impl InferenceSystem for MinRules {
    type Judgment = ExampleJudgment;

    fn rules_for(&self, j: &ExampleJudgment) -> Rules {
        let ExampleJudgment::Min(z, s) = j else {
            return Vec::new();
        };
        let (x, rest) = (s.head(), s.tail());
        if *z > x {
            return Vec::new();
        }
        let mut candidates = vec![*z];
        candidates.extend(
            rest.elements()
                .into_iter()
                .filter(|e| e != z && x.min(*e) == *z),
        );
        candidates
            .into_iter()
            .map(|y| RuleInstance::new([ExampleJudgment::Min(y, rest.clone())], j.clone()))
            .collect()
    }
}

impl InferenceSystem for MinCoaxiom {
    type Judgment = ExampleJudgment;

    fn rules_for(&self, j: &ExampleJudgment) -> Rules {
        match j {
            ExampleJudgment::Min(z, s) if *z == s.head() => vec![RuleInstance::axiom(j.clone())],
            _ => Vec::new(),
        }
    }
}

/// Lowest and highest carry admitted by the coaxiom.
pub const CARRY_RANGE: std::ops::RangeInclusive<i64> = -1..=2;

/// Digit-stream addition:
/// `add(d1 : r1, d2 : r2, (x mod b) : r, x div b)` from `add(r1, r2, r, c)`
/// where `x = d1 + d2 + c`.
///
/// Backwards, the premise carry is determined by the conclusion:
/// `c = b·c_out + d − d1 − d2`. The rule is emitted only when that carry lies
/// in `-1..=2`. A carry outside the window can never reach the coaxiom
/// (it only moves further away at each step), so such judgments have no
/// finite proof with corules and never belong to the bounded interpretation;
/// cutting them keeps the backward search finite.
#[derive(Clone, Copy, Debug)]
pub struct AddRules {
    base: u32,
}

/// The coaxiom `add(r1, r2, r, c)` for `c ∈ -1..=2`.
#[derive(Clone, Copy, Debug)]
pub struct AddCoaxiom {
    base: u32,
}

pub fn add_system(base: u32) -> Result<crate::system::GeneralizedSystem<AddRules, AddCoaxiom>> {
    if !(2..=36).contains(&base) {
        return Err(Error::BaseOutOfRange(base));
    }
    Ok(crate::system::GeneralizedSystem::new(
        AddRules { base },
        AddCoaxiom { base },
    ))
}

fn digits_ok(base: u32, streams: [&Lasso; 3]) -> bool {
    streams
        .iter()
        .all(|s| s.elements().iter().all(|d| (0..base as i64).contains(d)))
}

impl InferenceSystem for AddRules {
    type Judgment = ExampleJudgment;

    fn rules_for(&self, j: &ExampleJudgment) -> Rules {
        let ExampleJudgment::Add {
            base,
            s1,
            s2,
            sum,
            carry,
        } = j
        else {
            return Vec::new();
        };
        if *base != self.base || !digits_ok(self.base, [s1, s2, sum]) {
            return Vec::new();
        }
        let b = self.base as i64;
        let premise_carry = b * carry + sum.head() - s1.head() - s2.head();
        if !CARRY_RANGE.contains(&premise_carry) {
            return Vec::new();
        }
        let premise =
            ExampleJudgment::add(self.base, s1.tail(), s2.tail(), sum.tail(), premise_carry);
        vec![RuleInstance::new([premise], j.clone())]
    }
}

impl InferenceSystem for AddCoaxiom {
    type Judgment = ExampleJudgment;

    fn rules_for(&self, j: &ExampleJudgment) -> Rules {
        match j {
            ExampleJudgment::Add {
                base,
                s1,
                s2,
                sum,
                carry,
            } if *base == self.base
                && CARRY_RANGE.contains(carry)
                && digits_ok(self.base, [s1, s2, sum]) =>
            {
                vec![RuleInstance::axiom(j.clone())]
            }
            _ => Vec::new(),
        }
    }
}
