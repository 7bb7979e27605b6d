//! Tree and branch decompositions of k-outerplanar graphs.
//!
//! Given a plane embedding with outerplanarity index `k`, [`decompose`]
//! returns a tree decomposition of width at most `3k - 1` and
//! [`branch_decompose`] returns branch decompositions of width at most
//! `2k + 1`, both in `O(kn)` time. The crate also ships independent
//! validators, exact brute-force oracles for small graphs and a seeded
//! instance generator.

pub mod bench;
pub mod branch;
pub mod embedding;
pub mod expand;
pub mod forest;
pub mod generator;
pub mod graph;
pub mod io;
pub mod layers;
pub mod pipeline;
pub mod treedec;
pub mod verify;

mod dsu;

pub use branch::{
    build_branch, restrict_to_minor, BranchComponent, BranchDecomposition, EdgeOrigin,
};
pub use embedding::{build_embedding, Embedding, EmbeddingError};
pub use expand::{contract_record, expand_high_degree, ExpansionRecord};
pub use forest::{
    classify, spanning_forest, strip, Fact, ForestError, SpanningForest, StrippingTrace,
    VertexKind, WheelBranchLabels,
};
pub use generator::{canned, generate, GenError, GenSpec};
pub use graph::Graph;
pub use io::{
    parse_bd, parse_emb, parse_td, write_bd, write_emb, write_forest, write_td, ParseError,
};
pub use layers::{compute_face_layers, compute_layers, compute_vertex_layers, LayerAssignment};
pub use pipeline::{
    branch_decompose, decompose, run_branch, run_tree, BranchRun, FrontEnd, PhaseTimings, TreeRun,
};
pub use treedec::{
    build_open_face_tree, decompose_outerplanar, fill_bags, shrink, OpenFaceTree, TdError,
    TreeDecomposition,
};
pub use verify::{
    check_bd, check_td, fundamental_cycle, oracle_branchwidth, oracle_treewidth, remember_numbers,
    BdViolation, OracleError, RememberError, RememberReport, TdViolation,
};
