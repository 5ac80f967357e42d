//! Unfolding proof graphs into tree prefixes, and rendering certificates.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certificate::{FiniteTree, ProofGraph};
use crate::error::{Error, Result};
use crate::system::{Judgment, RuleInstance};

/// The depth-`depth` truncation of the (possibly infinite) proof tree a graph
/// denotes. The tree is unique: the root is labelled by the graph root and each
/// node's children are the unfoldings of its assigned rule's premises.
///
/// # Panics
/// If a premise reached before the cut is not a key of the graph; validate the
/// certificate first.
pub fn unfold<J: Judgment>(cert: &ProofGraph<J>, depth: usize) -> FiniteTree<J> {
    unfold_from(cert, &cert.root, depth)
}

fn unfold_from<J: Judgment>(cert: &ProofGraph<J>, node: &J, depth: usize) -> FiniteTree<J> {
    if depth == 0 {
        return FiniteTree::leaf(node.clone());
    }
    let rule = cert
        .assignment
        .get(node)
        .unwrap_or_else(|| panic!("{node} is not a node of the proof graph"));
    // premises iterate in judgment order, which is the order FiniteTree keeps
    FiniteTree {
        root: node.clone(),
        children: rule
            .premises
            .iter()
            .map(|p| unfold_from(cert, p, depth - 1))
            .collect(),
    }
}

/// Upper bound on the number of distinct subtrees of the unfolded tree.
pub fn distinct_subtree_bound<J: Judgment>(cert: &ProofGraph<J>) -> usize {
    cert.assignment.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// `node`/`edge` lines for graph viewers.
    GraphText,
    /// A JSON record of root and assignment.
    StructuredText,
}

pub fn render<J: Judgment>(cert: &ProofGraph<J>, format: Format) -> String {
    match format {
        Format::GraphText => render_graph_text(cert),
        Format::StructuredText => render_structured(cert),
    }
}

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One `node <id> "<judgment>"` line per key and one `edge <id> <id>` line per
/// premise. Ids follow the judgment order starting at 0.
pub fn render_graph_text<J: Judgment>(cert: &ProofGraph<J>) -> String {
    let ids: BTreeMap<&J, usize> = cert.assignment.keys().zip(0..).collect();
    let mut out = String::new();
    for (j, id) in &ids {
        writeln!(out, "node {id} \"{}\"", quote(&j.to_string())).unwrap();
    }
    for (j, rule) in &cert.assignment {
        for p in &rule.premises {
            if let Some(target) = ids.get(p) {
                writeln!(out, "edge {} {target}", ids[j]).unwrap();
            }
        }
    }
    out
}

/// Graph-text for a finite tree; ids number the nodes in preorder.
pub fn render_tree_graph_text<J: Judgment>(tree: &FiniteTree<J>) -> String {
    fn walk<J: Judgment>(
        t: &FiniteTree<J>,
        next: &mut usize,
        nodes: &mut String,
        edges: &mut String,
    ) -> usize {
        let id = *next;
        *next += 1;
        writeln!(nodes, "node {id} \"{}\"", quote(&t.root.to_string())).unwrap();
        for c in &t.children {
            let child = walk(c, next, nodes, edges);
            writeln!(edges, "edge {id} {child}").unwrap();
        }
        id
    }
    let (mut nodes, mut edges) = (String::new(), String::new());
    walk(tree, &mut 0, &mut nodes, &mut edges);
    nodes + &edges
}

#[derive(Serialize, Deserialize)]
struct NodeRecord {
    judgment: String,
    premises: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphRecord {
    root: String,
    nodes: Vec<NodeRecord>,
}

#[derive(Serialize, Deserialize)]
struct TreeRecord {
    judgment: String,
    children: Vec<TreeRecord>,
}

/// Pretty-printed JSON `{ "root": ..., "nodes": [{ "judgment", "premises" }] }`
/// with nodes and premises in judgment order.
pub fn render_structured<J: Judgment>(cert: &ProofGraph<J>) -> String {
    let record = GraphRecord {
        root: cert.root.to_string(),
        nodes: cert
            .assignment
            .iter()
            .map(|(j, r)| NodeRecord {
                judgment: j.to_string(),
                premises: r.premises.iter().map(ToString::to_string).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&record).expect("records serialize") + "\n"
}

fn parse_judgment<J: FromStr>(s: &str) -> Result<J> {
    s.parse().map_err(|_| Error::Parse {
        what: "judgment",
        input: s.to_string(),
    })
}

/// Reads back the output of [`render_structured`].
pub fn parse_structured<J: Judgment + FromStr>(text: &str) -> Result<ProofGraph<J>> {
    let record: GraphRecord = serde_json::from_str(text).map_err(|e| Error::Parse {
        what: "proof graph",
        input: e.to_string(),
    })?;
    let mut assignment = BTreeMap::new();
    for node in record.nodes {
        let conclusion: J = parse_judgment(&node.judgment)?;
        let premises = node
            .premises
            .iter()
            .map(|p| parse_judgment(p))
            .collect::<Result<Vec<J>>>()?;
        assignment.insert(conclusion.clone(), RuleInstance::new(premises, conclusion));
    }
    Ok(ProofGraph::new(parse_judgment(&record.root)?, assignment))
}

/// JSON rendering of a finite tree, `{ "judgment", "children" }` nested.
pub fn render_tree_structured<J: Judgment>(tree: &FiniteTree<J>) -> String {
    fn record<J: Judgment>(t: &FiniteTree<J>) -> TreeRecord {
        TreeRecord {
            judgment: t.root.to_string(),
            children: t.children.iter().map(record).collect(),
        }
    }
    serde_json::to_string_pretty(&record(tree)).expect("records serialize") + "\n"
}
