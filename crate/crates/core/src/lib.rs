//! Proof search and certificate checking for finitary inference systems,
//! under the inductive, regular (cyclic) and corule-bounded regular
//! interpretations.
//!
//! * [`system`]: judgments, rules and the backward-enumeration contract.
//! * [`certificate`]: proof graphs, finite trees and their checkers.
//! * [`search`]: inductive search and hypothesis-based regular search.
//! * [`proofgraph`]: unfolding and rendering certificates.
//! * [`ground`]: explicit finite systems and brute-force fixed-point oracles.
//! * [`streams`]: rational streams as lassos.
//! * [`examples`]: stream positivity, graph distance, stream minimum and
//!   digit-stream addition.

pub mod certificate;
pub mod error;
pub mod examples;
pub mod ground;
pub mod proofgraph;
pub mod search;
pub mod streams;
pub mod system;

pub use certificate::{
    validate_bounded_proof_graph, validate_finite_tree, validate_proof_graph, BoundedVerdict,
    FiniteTree, ProofGraph, SearchOutcome, Violation,
};
pub use error::{Error, Result};
pub use search::{
    extract_certificate, prove_inductive, prove_regular, prove_regular_co, prove_regular_co_under,
    prove_regular_under, Hypotheses, MemoEntry,
};
pub use streams::Lasso;
pub use system::{
    from_fn, union_system, EmptySystem, GeneralizedSystem, InferenceSystem, Judgment, RuleInstance,
};
