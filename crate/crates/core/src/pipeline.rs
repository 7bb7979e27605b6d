//! End-to-end decomposition pipelines.

use std::time::{Duration, Instant};

use crate::branch::{build_branch, rename_edges, restrict_to_minor, BranchDecomposition};
use crate::embedding::Embedding;
use crate::expand::{expand_high_degree, ExpansionRecord};
use crate::forest::{spanning_forest, ForestError, SpanningForest, StrippingTrace};
use crate::layers::{compute_layers, LayerAssignment};
use crate::treedec::{
    build_open_face_tree, decompose_outerplanar, fill_bags, shrink_owned, TdError,
    TreeDecomposition,
};

/// Wall time spent in each named phase, in execution order.
pub type PhaseTimings = Vec<(&'static str, Duration)>;

/// Layers, degree expansion and spanning forest: the part shared by both
/// decompositions.
///
/// The input is first renumbered in breadth-first order for memory
/// locality, so `layers` and the expanded graph use the new numbering. The
/// expansion record maps expanded vertices straight to input vertices, and
/// `edge_old` gives the input id of every expanded edge below
/// `record.original_edges`.
#[derive(Clone, Debug)]
pub struct FrontEnd {
    pub layers: LayerAssignment,
    pub expanded: Embedding,
    pub record: ExpansionRecord,
    pub edge_old: Vec<usize>,
    pub forest: SpanningForest,
    pub trace: StrippingTrace,
    pub timings: PhaseTimings,
}

/// Renumbered input with its layers.
struct Layered {
    local: Embedding,
    vertex_old: Vec<usize>,
    edge_old: Vec<usize>,
    layers: LayerAssignment,
    timings: PhaseTimings,
}

impl Layered {
    fn new(emb: &Embedding) -> Self {
        let t = Instant::now();
        let (local, vertex_old, edge_old) = emb.relabel_bfs();
        let mut timings = vec![("relabel", t.elapsed())];
        let t = Instant::now();
        let layers = compute_layers(&local);
        timings.push(("layers", t.elapsed()));
        Layered {
            local,
            vertex_old,
            edge_old,
            layers,
            timings,
        }
    }
}

impl FrontEnd {
    pub fn run(emb: &Embedding) -> Result<Self, ForestError> {
        Self::from_layered(Layered::new(emb))
    }

    fn from_layered(l: Layered) -> Result<Self, ForestError> {
        let mut timings = l.timings;
        let t = Instant::now();
        let (expanded, mut record) = expand_high_degree(&l.local, &l.layers.face_layer);
        record.rename_originals(&l.vertex_old);
        timings.push(("expand", t.elapsed()));
        let t = Instant::now();
        let (forest, trace) = spanning_forest(&expanded)?;
        timings.push(("forest", t.elapsed()));
        Ok(FrontEnd {
            layers: l.layers,
            expanded,
            record,
            edge_old: l.edge_old,
            forest,
            trace,
            timings,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TreeRun {
    pub td: TreeDecomposition,
    pub k: usize,
    /// Absent for edge-less and outerplanar inputs, which skip the forest.
    pub front: Option<FrontEnd>,
    pub timings: PhaseTimings,
}

/// Tree decomposition of width at most `3k - 1` (at most 2 when `k = 1`).
/// Disconnected inputs give a single tree whose component parts are
/// joined at node 0.
pub fn decompose(emb: &Embedding) -> Result<TreeDecomposition, TdError> {
    Ok(run_tree(emb)?.td)
}

pub fn run_tree(emb: &Embedding) -> Result<TreeRun, TdError> {
    let layered = Layered::new(emb);
    let k = layered.layers.index_k;
    if emb.m() == 0 || k == 1 {
        let mut timings = layered.timings;
        let t = Instant::now();
        let td = match emb.m() {
            0 => TreeDecomposition::singletons(emb.n()),
            _ => decompose_outerplanar(emb)?,
        };
        timings.push(("outerplanar", t.elapsed()));
        return Ok(TreeRun {
            td,
            k,
            front: None,
            timings,
        });
    }
    let front = FrontEnd::from_layered(layered)?;
    let mut timings = front.timings.clone();
    let t = Instant::now();
    let oft = build_open_face_tree(&front.expanded, &front.forest, &front.trace)?;
    timings.push(("face-tree", t.elapsed()));
    let t = Instant::now();
    let filled = fill_bags(&front.expanded, &front.forest, &oft);
    timings.push(("bags", t.elapsed()));
    let t = Instant::now();
    let td = shrink_owned(filled, &front.record);
    timings.push(("shrink", t.elapsed()));
    Ok(TreeRun {
        td,
        k,
        front: Some(front),
        timings,
    })
}

#[derive(Clone, Debug)]
pub struct BranchRun {
    pub bd: BranchDecomposition,
    /// Decomposition of the expanded graph, before restriction.
    pub expanded_bd: BranchDecomposition,
    pub k: usize,
    pub front: FrontEnd,
    pub timings: PhaseTimings,
}

/// Branch decompositions of width at most `2k + 1`, one per connected
/// component with at least one edge.
pub fn branch_decompose(emb: &Embedding) -> Result<BranchDecomposition, ForestError> {
    Ok(run_branch(emb)?.bd)
}

pub fn run_branch(emb: &Embedding) -> Result<BranchRun, ForestError> {
    let front = FrontEnd::run(emb)?;
    let mut timings = front.timings.clone();
    let t = Instant::now();
    let expanded_bd = build_branch(&front.expanded, &front.forest);
    timings.push(("branch", t.elapsed()));
    let t = Instant::now();
    let mut bd = restrict_to_minor(&expanded_bd, &front.record, &front.expanded);
    rename_edges(&mut bd, &front.edge_old);
    timings.push(("restrict", t.elapsed()));
    Ok(BranchRun {
        bd,
        expanded_bd,
        k: front.layers.index_k,
        front,
        timings,
    })
}
