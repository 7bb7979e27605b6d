//! Branch decompositions of width at most `max(2, er + 1)` built from a
//! maximal spanning forest of a graph of maximum degree 3.
//!
//! The forest itself is the skeleton. A forest edge between two vertices
//! of degree at least 2 is subdivided and gets a pendant leaf for its σ
//! image; a forest edge at a degree-1 vertex uses that vertex's node as its
//! leaf; a missing edge hangs a new leaf off its smaller endpoint. Leaves
//! that represent nothing are pruned and degree-2 nodes suppressed until
//! every node has degree 1 or 3.

use std::collections::HashMap;
use std::mem;

use crate::embedding::Embedding;
use crate::expand::ExpansionRecord;
use crate::forest::SpanningForest;

/// Where a decomposition tree edge comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeOrigin {
    /// One of the two halves of a forest edge, or the forest edge itself
    /// when one endpoint is a leaf of the graph.
    Forest(usize),
    /// The pendant edge holding the leaf of a graph edge.
    Leaf(usize),
}

/// Decomposition of one connected component with at least one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchComponent {
    pub node_count: usize,
    pub tree_edges: Vec<(usize, usize)>,
    /// `(node, graph edge)` pairs, sorted by edge.
    pub leaves: Vec<(usize, usize)>,
    /// Constructor edges merged into every tree edge by suppression.
    pub origins: Vec<Vec<EdgeOrigin>>,
    pub width: usize,
}

/// One decomposition per connected component that has edges, ordered by
/// the smallest edge id of the component.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BranchDecomposition {
    pub components: Vec<BranchComponent>,
}

impl BranchDecomposition {
    pub fn width(&self) -> usize {
        self.components.iter().map(|c| c.width).max().unwrap_or(0)
    }
}

/// Mutable tree with edge removal and degree-2 suppression.
struct Skeleton {
    ends: Vec<(usize, usize)>,
    origins: Vec<Vec<EdgeOrigin>>,
    alive: Vec<bool>,
    incident: Vec<Vec<usize>>,
    degree: Vec<usize>,
    node_alive: Vec<bool>,
    sigma: Vec<Option<usize>>,
}

impl Skeleton {
    fn new(nodes: usize) -> Self {
        Skeleton {
            ends: Vec::new(),
            origins: Vec::new(),
            alive: Vec::new(),
            incident: vec![Vec::new(); nodes],
            degree: vec![0; nodes],
            node_alive: vec![true; nodes],
            sigma: vec![None; nodes],
        }
    }

    fn add_node(&mut self) -> usize {
        self.incident.push(Vec::new());
        self.degree.push(0);
        self.node_alive.push(true);
        self.sigma.push(None);
        self.incident.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize, origins: Vec<EdgeOrigin>) {
        let id = self.ends.len();
        self.ends.push((a, b));
        self.origins.push(origins);
        self.alive.push(true);
        self.incident[a].push(id);
        self.incident[b].push(id);
        self.degree[a] += 1;
        self.degree[b] += 1;
    }

    fn other(&self, t: usize, x: usize) -> usize {
        let (a, b) = self.ends[t];
        if a == x {
            b
        } else {
            a
        }
    }

    fn live_edges(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[x]
            .iter()
            .copied()
            .filter(move |&t| self.alive[t])
    }

    /// Removes unlabeled nodes of degree at most 1 until none is left.
    fn prune(&mut self) {
        let mut work: Vec<usize> = (0..self.degree.len()).rev().collect();
        while let Some(x) = work.pop() {
            if !self.node_alive[x] || self.sigma[x].is_some() || self.degree[x] > 1 {
                continue;
            }
            self.node_alive[x] = false;
            let first = self.live_edges(x).next();
            if let Some(t) = first {
                self.alive[t] = false;
                let y = self.other(t, x);
                self.degree[y] -= 1;
                self.degree[x] = 0;
                work.push(y);
            }
        }
    }

    /// Replaces every node of degree 2 by an edge between its neighbors.
    fn suppress(&mut self) {
        for x in 0..self.degree.len() {
            if !self.node_alive[x] || self.degree[x] != 2 {
                continue;
            }
            let ts: Vec<usize> = self.live_edges(x).collect();
            let (a, b) = (self.other(ts[0], x), self.other(ts[1], x));
            let mut origins = mem::take(&mut self.origins[ts[0]]);
            origins.append(&mut mem::take(&mut self.origins[ts[1]]));
            origins.sort_unstable();
            self.alive[ts[0]] = false;
            self.alive[ts[1]] = false;
            self.node_alive[x] = false;
            self.degree[x] = 0;
            self.degree[a] -= 1;
            self.degree[b] -= 1;
            self.add_edge(a, b, origins);
        }
        // Leftover incident lists only hold dead edges; drop them.
        for list in &mut self.incident {
            list.retain(|&t| self.alive[t]);
        }
    }

    /// Splits the live tree into components with dense local node ids.
    /// `endpoints` gives the graph endpoints used for middle sets.
    fn into_components(self, endpoints: impl Fn(usize) -> (usize, usize)) -> BranchDecomposition {
        let nodes = self.degree.len();
        let mut comp = vec![usize::MAX; nodes];
        let mut local = vec![usize::MAX; nodes];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for s in 0..nodes {
            if !self.node_alive[s] || comp[s] != usize::MAX {
                continue;
            }
            let c = members.len();
            let mut list = vec![s];
            comp[s] = c;
            let mut head = 0;
            while head < list.len() {
                let x = list[head];
                head += 1;
                for t in self.live_edges(x) {
                    let y = self.other(t, x);
                    if comp[y] == usize::MAX {
                        comp[y] = c;
                        list.push(y);
                    }
                }
            }
            list.sort_unstable();
            for (i, &x) in list.iter().enumerate() {
                local[x] = i;
            }
            members.push(list);
        }
        let mut parts: Vec<BranchComponent> = members
            .iter()
            .map(|list| BranchComponent {
                node_count: list.len(),
                tree_edges: Vec::new(),
                leaves: list
                    .iter()
                    .filter_map(|&x| self.sigma[x].map(|e| (local[x], e)))
                    .collect(),
                origins: Vec::new(),
                width: 0,
            })
            .collect();
        for t in 0..self.ends.len() {
            if self.alive[t] {
                let (a, b) = self.ends[t];
                let part = &mut parts[comp[a]];
                part.tree_edges.push((local[a], local[b]));
                part.origins.push(self.origins[t].clone());
            }
        }
        for part in &mut parts {
            part.leaves.sort_unstable_by_key(|&(_, e)| e);
            part.width = width_of(part, &endpoints);
        }
        parts.sort_by_key(|p| p.leaves.first().map(|&(_, e)| e));
        BranchDecomposition { components: parts }
    }
}

/// Largest middle set, by merging per-vertex leaf counts up a rooting of
/// the tree, smaller maps into larger ones. A map keeps only the vertices
/// with some but not all of their edges below, so its size is the order of
/// the edge above.
fn width_of(part: &BranchComponent, endpoints: &impl Fn(usize) -> (usize, usize)) -> usize {
    if part.tree_edges.is_empty() {
        return 0;
    }
    let mut total: HashMap<usize, usize> = HashMap::new();
    let mut leaf_edge = vec![None; part.node_count];
    for &(x, e) in &part.leaves {
        leaf_edge[x] = Some(e);
        let (u, v) = endpoints(e);
        *total.entry(u).or_default() += 1;
        *total.entry(v).or_default() += 1;
    }
    let mut adj = vec![Vec::new(); part.node_count];
    for &(a, b) in &part.tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut order = Vec::with_capacity(part.node_count);
    let mut parent = vec![usize::MAX; part.node_count];
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut maps: Vec<HashMap<usize, usize>> = vec![HashMap::new(); part.node_count];
    let mut width = 0;
    for &x in order.iter().rev() {
        let mut map = mem::take(&mut maps[x]);
        if let Some(e) = leaf_edge[x] {
            let (u, v) = endpoints(e);
            for w in [u, v] {
                bump(&mut map, &total, w, 1);
            }
        }
        if x == 0 {
            break;
        }
        width = width.max(map.len());
        let p = parent[x];
        let mut into = mem::take(&mut maps[p]);
        if into.len() < map.len() {
            mem::swap(&mut into, &mut map);
        }
        for (w, c) in map {
            bump(&mut into, &total, w, c);
        }
        maps[p] = into;
    }
    width
}

fn bump(map: &mut HashMap<usize, usize>, total: &HashMap<usize, usize>, w: usize, by: usize) {
    let c = map.entry(w).or_default();
    *c += by;
    if *c == total[&w] {
        map.remove(&w);
    }
}

/// Builds the decomposition of the (degree at most 3) embedded graph from
/// one of its maximal spanning forests.
pub fn build_branch(emb: &Embedding, forest: &SpanningForest) -> BranchDecomposition {
    let n = emb.n();
    let mut sk = Skeleton::new(n);
    for e in 0..emb.m() {
        let (u, v) = emb.edge_endpoints(e);
        if forest.in_forest[e] {
            match (emb.degree(u), emb.degree(v)) {
                (du, dv) if du >= 2 && dv >= 2 => {
                    let w = sk.add_node();
                    let x = sk.add_node();
                    sk.add_edge(u, w, vec![EdgeOrigin::Forest(e)]);
                    sk.add_edge(w, v, vec![EdgeOrigin::Forest(e)]);
                    sk.add_edge(w, x, vec![EdgeOrigin::Leaf(e)]);
                    sk.sigma[x] = Some(e);
                }
                (du, _) => {
                    sk.add_edge(u, v, vec![EdgeOrigin::Forest(e)]);
                    sk.sigma[if du == 1 { u } else { v }] = Some(e);
                }
            }
        } else {
            let x = sk.add_node();
            sk.add_edge(u.min(v), x, vec![EdgeOrigin::Leaf(e)]);
            sk.sigma[x] = Some(e);
        }
    }
    sk.prune();
    sk.suppress();
    sk.into_components(|e| emb.edge_endpoints(e))
}

/// Restricts a decomposition of the expanded graph to the original graph:
/// leaves of expansion-path edges go, the rest is pruned and suppressed,
/// and middle sets are taken over original vertices.
pub fn restrict_to_minor(
    bd: &BranchDecomposition,
    rec: &ExpansionRecord,
    expanded: &Embedding,
) -> BranchDecomposition {
    let m = rec.original_edges;
    let endpoints = |e: usize| {
        let (u, v) = expanded.edge_endpoints(e);
        (rec.contract(u), rec.contract(v))
    };
    let mut out = BranchDecomposition::default();
    for part in &bd.components {
        let mut sk = Skeleton::new(part.node_count);
        for (&(a, b), origins) in part.tree_edges.iter().zip(&part.origins) {
            sk.add_edge(a, b, origins.clone());
        }
        for &(x, e) in &part.leaves {
            if e < m {
                sk.sigma[x] = Some(e);
            }
        }
        sk.prune();
        sk.suppress();
        out.components
            .extend(sk.into_components(endpoints).components);
    }
    out.components
        .sort_by_key(|p| p.leaves.first().map(|&(_, e)| e));
    out
}

/// Renames the graph edges carried by the leaves, restoring the leaf and
/// component orders.
pub(crate) fn rename_edges(bd: &mut BranchDecomposition, names: &[usize]) {
    for part in &mut bd.components {
        for leaf in &mut part.leaves {
            leaf.1 = names[leaf.1];
        }
        part.leaves.sort_unstable_by_key(|&(_, e)| e);
    }
    bd.components
        .sort_by_key(|p| p.leaves.first().map(|&(_, e)| e));
}
