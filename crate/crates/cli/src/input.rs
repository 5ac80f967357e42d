//! Readers for the text formats the command line accepts.

use std::collections::BTreeSet;

use regproof::examples::{Delta, ExampleJudgment, Graph};
use regproof::ground::GroundSystem;
use regproof::{Lasso, RuleInstance};

use crate::CliError;

/// A ground system file: rules, optional corules, optional declared universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundFile {
    pub rules: GroundSystem<String>,
    pub corules: Option<GroundSystem<String>>,
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line: Some(line),
        message: message.into(),
    }
}

fn is_atom(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn atom(line: usize, s: &str) -> Result<String, CliError> {
    let s = s.trim();
    if is_atom(s) {
        Ok(s.to_string())
    } else {
        Err(parse_error(
            line,
            format!("`{s}` is not a judgment identifier"),
        ))
    }
}

fn atom_list(line: usize, s: &str) -> Result<Vec<String>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|a| atom(line, a)).collect()
}

/// Strips a trailing `#` comment and surrounding blanks.
fn content(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Parses the line-oriented ground format:
///
/// ```text
/// # comment
/// universe: a, b, c
/// rule: [a, b] => c
/// corule: [] => a
/// ```
///
/// Rules are numbered from 1 in file order, rules and corules together.
pub fn parse_ground_file(text: &str) -> Result<GroundFile, CliError> {
    let mut universe: Option<BTreeSet<String>> = None;
    let mut rules = Vec::new();
    let mut corules = Vec::new();
    let mut seen_corule = false;
    let mut numbered: Vec<(usize, RuleInstance<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let (key, rest) = body
            .split_once(':')
            .ok_or_else(|| parse_error(line, "expected `rule:`, `corule:` or `universe:`"))?;
        match key.trim() {
            "universe" => {
                if universe.is_some() {
                    return Err(parse_error(line, "universe declared twice"));
                }
                universe = Some(atom_list(line, rest)?.into_iter().collect());
            }
            kind @ ("rule" | "corule") => {
                let (lhs, rhs) = rest
                    .split_once("=>")
                    .ok_or_else(|| parse_error(line, "expected `[premises] => conclusion`"))?;
                let inner = lhs
                    .trim()
                    .strip_prefix('[')
                    .and_then(|l| l.strip_suffix(']'))
                    .ok_or_else(|| parse_error(line, "premises must be enclosed in `[...]`"))?;
                let premises = atom_list(line, inner)?;
                let conclusion = atom(line, rhs)?;
                let index = numbered.len() + 1;
                let set: BTreeSet<String> = premises.iter().cloned().collect();
                if set.len() != premises.len() {
                    return Err(CliError::Invariant {
                        rule: index,
                        message: "a premise is repeated".into(),
                    });
                }
                let rule = RuleInstance::new(set, conclusion);
                numbered.push((index, rule.clone()));
                if kind == "rule" {
                    rules.push(rule);
                } else {
                    seen_corule = true;
                    corules.push(rule);
                }
            }
            other => return Err(parse_error(line, format!("unknown entry `{other}`"))),
        }
    }

    let declared = universe.unwrap_or_default();
    if !declared.is_empty() {
        for (index, rule) in &numbered {
            if let Some(j) = rule
                .premises
                .iter()
                .chain([&rule.conclusion])
                .find(|j| !declared.contains(*j))
            {
                return Err(CliError::Invariant {
                    rule: *index,
                    message: format!("judgment `{j}` is outside the declared universe"),
                });
            }
        }
    }

    let rules = GroundSystem::new(declared.iter().cloned(), rules);
    let corules = seen_corule.then(|| GroundSystem::new(declared.iter().cloned(), corules));
    Ok(GroundFile { rules, corules })
}

/// Parses a graph file of `node a -> b, d` lines. A node with no
/// successors may be written `node c` or `node c ->`.
pub fn parse_graph_file(text: &str) -> Result<Graph, CliError> {
    let mut graph = Graph::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let rest = body
            .strip_prefix("node ")
            .ok_or_else(|| parse_error(line, "expected `node <name> -> <successors>`"))?;
        let (name, succ) = rest.split_once("->").unwrap_or((rest, ""));
        let name = atom(line, name)?;
        graph.add_node(&name);
        for s in atom_list(line, succ)? {
            graph.add_edge(&name, &s);
        }
    }
    Ok(graph)
}

fn goal_error(goal: &str, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line: None,
        message: format!("goal `{goal}`: {}", message.into()),
    }
}

fn lasso(goal: &str, s: &str) -> Result<Lasso, CliError> {
    s.parse()
        .map_err(|_| goal_error(goal, format!("`{s}` is not a lasso `p1,p2|c1,c2`")))
}

fn integer(goal: &str, s: &str) -> Result<i64, CliError> {
    s.parse()
        .map_err(|_| goal_error(goal, format!("`{s}` is not an integer")))
}

/// Parses a ground goal: a single judgment identifier.
pub fn parse_ground_goal(goal: &str) -> Result<String, CliError> {
    let goal = goal.trim();
    if is_atom(goal) {
        Ok(goal.to_string())
    } else {
        Err(goal_error(goal, "expected a judgment identifier"))
    }
}

/// `allpos |1`
pub fn parse_allpos_goal(goal: &str) -> Result<ExampleJudgment, CliError> {
    match goal.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["allpos", s] => Ok(ExampleJudgment::all_pos(lasso(goal, s)?)),
        _ => Err(goal_error(goal, "expected `allpos <lasso>`")),
    }
}

/// `dist a c 2`, `dist a c inf`
pub fn parse_dist_goal(goal: &str, graph: &Graph) -> Result<ExampleJudgment, CliError> {
    match goal.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dist", from, to, delta] => {
            for node in [from, to] {
                if graph.successors(node).is_none() {
                    return Err(goal_error(
                        goal,
                        format!("`{node}` is not a node of the graph"),
                    ));
                }
            }
            let delta: Delta = delta
                .parse()
                .map_err(|_| goal_error(goal, format!("`{delta}` is not a distance")))?;
            if !graph.candidate_distances().contains(&delta) {
                return Err(goal_error(goal, "distance exceeds the number of nodes"));
            }
            Ok(ExampleJudgment::dist(from, to, delta))
        }
        _ => Err(goal_error(
            goal,
            "expected `dist <from> <to> <distance|inf>`",
        )),
    }
}

/// `min 0 |2`
pub fn parse_min_goal(goal: &str) -> Result<ExampleJudgment, CliError> {
    match goal.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["min", x, s] => Ok(ExampleJudgment::min(integer(goal, x)?, lasso(goal, s)?)),
        _ => Err(goal_error(goal, "expected `min <value> <lasso>`")),
    }
}

/// `add 1|3 |6 2|0 0`, digits checked against `base`.
pub fn parse_add_goal(goal: &str, base: u32) -> Result<ExampleJudgment, CliError> {
    match goal.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["add", r1, r2, r, c] => {
            let streams = [lasso(goal, r1)?, lasso(goal, r2)?, lasso(goal, r)?];
            if let Some(d) = streams
                .iter()
                .flat_map(Lasso::elements)
                .find(|d| !(0..base as i64).contains(d))
            {
                return Err(goal_error(
                    goal,
                    format!("digit {d} is outside base {base}"),
                ));
            }
            let [s1, s2, sum] = streams;
            Ok(ExampleJudgment::add(base, s1, s2, sum, integer(goal, c)?))
        }
        _ => Err(goal_error(goal, "expected `add <r1> <r2> <sum> <carry>`")),
    }
}
