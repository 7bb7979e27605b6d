//! Maximal spanning forests with small remember numbers on plane graphs of
//! maximum degree 3.
//!
//! **Stripping.** Repeatedly deleting every edge on the outer face assigns
//! each face its stripping number `s(f)`: the number of rounds after which
//! it has merged into the outer face. This is the distance from the outer
//! faces in the edge-dual graph. An edge leaves in round
//! `min(s(f1), s(f2)) + 1`. After `k'` rounds only edges whose sides both
//! have the maximal stripping number remain; they form the residual forest
//! `T_0`, stored with step 0.
//!
//! **Building.** The rounds are replayed from the inside out. Round `i`
//! removed the graph `R`; its edges between a face of number `i - 1` and
//! one of number `i` form vertex-disjoint cycles (wheels), the rest are
//! bridges (branches). Each wheel vertex is classified as
//!
//! * α when its third edge belongs to a branch,
//! * β when its third edge belongs to the forest built so far,
//! * γ otherwise (and every vertex that is on a branch only).
//!
//! Every edge of `R` is added to the forest except, on each wheel, the edge
//! closing the cycle and the edge right before every β vertex whose tree
//! was already reached earlier on the same wheel.

use std::fmt;

use thiserror::Error;

use crate::dsu::Dsu;
use crate::embedding::{Embedding, NIL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fact {
    /// Wheels are vertex-disjoint, and forest trees never touch branches.
    DisjointWheels,
    /// Missing edges separate faces of different stripping number.
    MissingSeparates,
    /// No face is reached from two lower faces through missing edges.
    NoAlternation,
    /// Adjacent faces differ in stripping number by at most one.
    AdjacentWithinOne,
    /// At most one missing edge between any pair of faces.
    OneMissingPerPair,
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, text) = match self {
            Fact::DisjointWheels => (1, "wheels are vertex-disjoint and trees avoid branches"),
            Fact::MissingSeparates => (2, "missing edges separate different stripping numbers"),
            Fact::NoAlternation => (3, "no face hangs below two faces"),
            Fact::AdjacentWithinOne => (4, "adjacent stripping numbers differ by at most one"),
            Fact::OneMissingPerPair => (5, "at most one missing edge per face pair"),
        };
        write!(f, "fact {n} ({text})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("vertex {vertex} has degree {degree}; expand the graph first")]
    DegreeTooHigh { vertex: usize, degree: usize },
    #[error("stripping step {step}: vertex {vertex} lies on {wheel_edges} wheel edges")]
    MalformedLayer {
        step: usize,
        vertex: usize,
        wheel_edges: usize,
    },
    #[error("adding edge {edge} closes a cycle")]
    CycleCreated { edge: usize },
    #[error("skipping edge {edge} leaves its endpoints disconnected")]
    NotMaximal { edge: usize },
    #[error("{fact} violated at {witness}")]
    FactViolation { fact: Fact, witness: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrippingTrace {
    /// Stripping step that removed each edge, in `1..=k_prime`; 0 marks the
    /// residual forest.
    pub step_of_edge: Vec<usize>,
    /// Stripping number of each face; outer faces have 0.
    pub stripping_number: Vec<usize>,
    pub k_prime: usize,
}

impl StrippingTrace {
    /// Edges removed by stripping step `i`.
    pub fn removed_at(&self, i: usize) -> Vec<usize> {
        (0..self.step_of_edge.len())
            .filter(|&e| self.step_of_edge[e] == i)
            .collect()
    }

    /// Step value handled by building step `j` (1-based).
    pub fn step_for_build(&self, j: usize) -> usize {
        self.k_prime + 1 - j
    }

    /// Whether `e` is present before building step `j`.
    fn present_before(&self, e: usize, step: usize) -> bool {
        let s = self.step_of_edge[e];
        s == 0 || s > step
    }
}

pub fn strip(emb: &Embedding) -> StrippingTrace {
    let nf = emb.face_count();
    let mut s = vec![NIL; nf];
    let mut queue: Vec<usize> = (0..nf).filter(|&f| emb.is_outer(f)).collect();
    for &f in &queue {
        s[f] = 0;
    }
    let mut head = 0;
    while head < queue.len() {
        let f = queue[head];
        head += 1;
        for h in emb.face_boundary(f) {
            let g = emb.face_of(h ^ 1);
            if s[g] == NIL {
                s[g] = s[f] + 1;
                queue.push(g);
            }
        }
    }
    let max_s = s.iter().copied().max().unwrap_or(0);
    let k_prime = if emb.m() == 0 { 0 } else { max_s.max(1) };
    let step_of_edge = (0..emb.m())
        .map(|e| {
            let (a, b) = emb.faces_of_edge(e);
            let t = s[a].min(s[b]) + 1;
            if t > k_prime {
                0
            } else {
                t
            }
        })
        .collect();
    StrippingTrace {
        step_of_edge,
        stripping_number: s,
        k_prime,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Alpha,
    Beta,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelBranchLabels {
    /// Label of every vertex touched by the removed graph; `None` elsewhere.
    pub kind: Vec<Option<VertexKind>>,
    /// Wheel index of every wheel vertex; `None` for branch-only vertices.
    pub wheel_of: Vec<Option<usize>>,
    /// Vertex cycles of the wheels, each starting at its lowest α vertex
    /// (else lowest β, else lowest vertex) and keeping the lower-numbered
    /// face on the left.
    pub wheels: Vec<Vec<usize>>,
    /// Edge cycles matching `wheels`: `wheel_edges[w][p]` joins positions
    /// `p` and `p + 1`.
    pub wheel_edges: Vec<Vec<usize>>,
    /// Edges of the removed graph that are not on a wheel.
    pub branch_edges: Vec<usize>,
}

/// Labels the graph removed at building step `j` (1-based).
pub fn classify(
    emb: &Embedding,
    trace: &StrippingTrace,
    j: usize,
) -> Result<WheelBranchLabels, ForestError> {
    check_degree(emb)?;
    let step = trace.step_for_build(j);
    let edges = trace.removed_at(step);
    classify_edges(emb, trace, &wheel_flags(emb, trace), step, &edges)
}

fn check_degree(emb: &Embedding) -> Result<(), ForestError> {
    match (0..emb.n()).find(|&v| emb.degree(v) > 3) {
        Some(v) => Err(ForestError::DegreeTooHigh {
            vertex: v,
            degree: emb.degree(v),
        }),
        None => Ok(()),
    }
}

/// Whether each edge separates faces of different stripping number.
fn wheel_flags(emb: &Embedding, trace: &StrippingTrace) -> Vec<bool> {
    (0..emb.m())
        .map(|e| {
            let (a, b) = emb.faces_of_edge(e);
            trace.stripping_number[a] != trace.stripping_number[b]
        })
        .collect()
}

fn classify_edges(
    emb: &Embedding,
    trace: &StrippingTrace,
    is_wheel: &[bool],
    step: usize,
    edges: &[usize],
) -> Result<WheelBranchLabels, ForestError> {
    let n = emb.n();
    let mut kind: Vec<Option<VertexKind>> = vec![None; n];
    let mut wheel_of: Vec<Option<usize>> = vec![None; n];
    let mut touched = Vec::new();
    let mut branch_edges = Vec::new();
    for &e in edges {
        let (u, v) = emb.edge_endpoints(e);
        for x in [u, v] {
            if kind[x].is_none() {
                kind[x] = Some(VertexKind::Gamma);
                touched.push(x);
            }
        }
        if !is_wheel[e] {
            branch_edges.push(e);
        }
    }
    // Wheel degree and third edge of every touched vertex.
    for &x in &touched {
        let mut wheel_deg = 0;
        let mut has_branch = false;
        let mut has_forest = false;
        for h in emb.around(x) {
            let e = h / 2;
            if trace.step_of_edge[e] == step {
                if is_wheel[e] {
                    wheel_deg += 1;
                } else {
                    has_branch = true;
                }
            } else if trace.present_before(e, step) {
                has_forest = true;
            }
        }
        match wheel_deg {
            0 if has_forest => {
                return Err(ForestError::FactViolation {
                    fact: Fact::DisjointWheels,
                    witness: format!("branch vertex {x} touches the forest"),
                })
            }
            0 => {}
            2 => {
                kind[x] = Some(if has_branch {
                    VertexKind::Alpha
                } else if has_forest {
                    VertexKind::Beta
                } else {
                    VertexKind::Gamma
                });
            }
            _ if wheel_deg > 2 => {
                return Err(ForestError::FactViolation {
                    fact: Fact::DisjointWheels,
                    witness: format!("vertex {x} lies on {wheel_deg} wheel edges"),
                })
            }
            _ => {
                return Err(ForestError::MalformedLayer {
                    step,
                    vertex: x,
                    wheel_edges: wheel_deg,
                })
            }
        }
    }

    let mut wheels = Vec::new();
    let mut wheel_edges = Vec::new();
    let mut seen = vec![false; n];
    for &x in &touched {
        if seen[x]
            || !emb
                .around(x)
                .any(|h| trace.step_of_edge[h / 2] == step && is_wheel[h / 2])
        {
            continue;
        }
        // Collect the cycle, then pick its start vertex.
        let mut cycle = Vec::new();
        let mut v = x;
        let mut came = NIL;
        loop {
            seen[v] = true;
            cycle.push(v);
            let h = emb
                .around(v)
                .find(|&h| {
                    h / 2 != came
                        && trace.step_of_edge[h / 2] == step
                        && is_wheel[h / 2]
                })
                .unwrap();
            came = h / 2;
            v = emb.target(h);
            if v == x {
                break;
            }
        }
        let rank = |v: usize| match kind[v] {
            Some(VertexKind::Alpha) => 0,
            Some(VertexKind::Beta) => 1,
            _ => 2,
        };
        let start = *cycle.iter().min_by_key(|&&v| (rank(v), v)).unwrap();
        let s = &trace.stripping_number;
        let h0 = emb
            .around(start)
            .find(|&h| {
                let e = h / 2;
                trace.step_of_edge[e] == step
                    && is_wheel[e]
                    && s[emb.face_of(h)] < s[emb.face_of(h ^ 1)]
            })
            .unwrap();
        let id = wheels.len();
        let mut verts = Vec::with_capacity(cycle.len());
        let mut es = Vec::with_capacity(cycle.len());
        let mut h = h0;
        loop {
            let v = emb.origin(h);
            wheel_of[v] = Some(id);
            verts.push(v);
            es.push(h / 2);
            let w = emb.target(h);
            if w == start {
                break;
            }
            h = emb
                .around(w)
                .find(|&g| {
                    g / 2 != h / 2
                        && trace.step_of_edge[g / 2] == step
                        && is_wheel[g / 2]
                })
                .unwrap();
        }
        wheels.push(verts);
        wheel_edges.push(es);
    }
    Ok(WheelBranchLabels {
        kind,
        wheel_of,
        wheels,
        wheel_edges,
        branch_edges,
    })
}

/// Edges of the removed graph left out by the wheel rule. `tree_of` maps a
/// vertex to the tree of the current forest containing it.
fn omitted_edges(
    labels: &WheelBranchLabels,
    mut tree_of: impl FnMut(usize) -> usize,
) -> Vec<usize> {
    let mut omit = Vec::new();
    let mut seen_tree = std::collections::HashSet::new();
    for (verts, es) in labels.wheels.iter().zip(&labels.wheel_edges) {
        let has_special = verts
            .iter()
            .any(|&v| labels.kind[v] != Some(VertexKind::Gamma));
        if !has_special {
            omit.push(*es.iter().min().unwrap());
            continue;
        }
        seen_tree.clear();
        for (p, &v) in verts.iter().enumerate() {
            if labels.kind[v] == Some(VertexKind::Beta) && !seen_tree.insert(tree_of(v)) {
                omit.push(es[p - 1]);
            }
        }
        omit.push(es[es.len() - 1]);
    }
    omit
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningForest {
    pub in_forest: Vec<bool>,
    /// Parent vertex in the rooted forest; `None` for roots.
    pub parent: Vec<Option<usize>>,
    /// Forest edge to the parent; `None` for roots.
    pub parent_edge: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    pub component: Vec<usize>,
    /// Root of every component, the lowest vertex id in it.
    pub roots: Vec<usize>,
}

impl SpanningForest {
    /// Roots the given acyclic edge set at the lowest vertex of every
    /// component.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], in_forest: Vec<bool>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if in_forest[e] {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        Self::rooted(n, in_forest, |u| adj[u].clone().into_iter())
    }

    fn from_embedding(emb: &Embedding, in_forest: Vec<bool>) -> Self {
        let flags = in_forest.clone();
        Self::rooted(emb.n(), in_forest, |u| {
            emb.around(u)
                .filter(|&h| flags[h / 2])
                .map(|h| (emb.target(h), h / 2))
        })
    }

    fn rooted<I: Iterator<Item = (usize, usize)>>(
        n: usize,
        in_forest: Vec<bool>,
        mut tree_neighbors: impl FnMut(usize) -> I,
    ) -> Self {
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut depth = vec![0; n];
        let mut component = vec![NIL; n];
        let mut roots = Vec::new();
        let mut queue = Vec::with_capacity(n);
        for r in 0..n {
            if component[r] != NIL {
                continue;
            }
            let c = roots.len();
            roots.push(r);
            component[r] = c;
            queue.clear();
            queue.push(r);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for (w, e) in tree_neighbors(u) {
                    if component[w] == NIL {
                        component[w] = c;
                        parent[w] = Some(u);
                        parent_edge[w] = Some(e);
                        depth[w] = depth[u] + 1;
                        queue.push(w);
                    }
                }
            }
        }
        SpanningForest {
            in_forest,
            parent,
            parent_edge,
            depth,
            component,
            roots,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.in_forest.iter().filter(|&&b| b).count()
    }

    pub fn forest_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.in_forest.len()).filter(move |&e| self.in_forest[e])
    }

    pub fn missing_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.in_forest.len()).filter(move |&e| !self.in_forest[e])
    }
}

/// Strips the embedding and rebuilds a maximal spanning forest layer by
/// layer. The input must have maximum degree 3.
pub fn spanning_forest(emb: &Embedding) -> Result<(SpanningForest, StrippingTrace), ForestError> {
    check_degree(emb)?;
    let trace = strip(emb);
    let m = emb.m();
    let mut by_step = vec![Vec::new(); trace.k_prime + 1];
    for e in 0..m {
        by_step[trace.step_of_edge[e]].push(e);
    }
    let mut in_forest = vec![false; m];
    let mut dsu = Dsu::new(emb.n());
    for &e in &by_step[0] {
        let (u, v) = emb.edge_endpoints(e);
        if !dsu.union(u, v) {
            return Err(ForestError::CycleCreated { edge: e });
        }
        in_forest[e] = true;
    }
    let mut skip = vec![false; m];
    let is_wheel = wheel_flags(emb, &trace);
    for j in 1..=trace.k_prime {
        let step = trace.step_for_build(j);
        let edges = &by_step[step];
        let labels = classify_edges(emb, &trace, &is_wheel, step, edges)?;
        let omit = omitted_edges(&labels, |v| dsu.find(v));
        for &e in &omit {
            skip[e] = true;
        }
        for &e in edges.iter().filter(|&&e| !skip[e]) {
            let (u, v) = emb.edge_endpoints(e);
            if !dsu.union(u, v) {
                return Err(ForestError::CycleCreated { edge: e });
            }
            in_forest[e] = true;
        }
        for &e in &omit {
            let (u, v) = emb.edge_endpoints(e);
            if dsu.find(u) != dsu.find(v) {
                return Err(ForestError::NotMaximal { edge: e });
            }
        }
    }
    let forest = SpanningForest::from_embedding(emb, in_forest);
    Ok((forest, trace))
}
