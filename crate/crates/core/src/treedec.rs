//! Tree decompositions: the outerplanar elimination, bag filling along
//! fundamental cycles, and relabeling back through an expansion.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::embedding::Embedding;
use crate::expand::ExpansionRecord;
use crate::forest::{Fact, ForestError, SpanningForest, StrippingTrace};
use crate::layers::compute_layers;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdError {
    #[error("graph is not outerplanar in this embedding (index {k})")]
    NotOuterplanar { k: usize },
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// Bags joined by tree edges. Bags are stored back to back; node `i`
/// owns `items[start[i]..start[i + 1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    start: Vec<usize>,
    items: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Default for TreeDecomposition {
    fn default() -> Self {
        TreeDecomposition {
            start: vec![0],
            items: Vec::new(),
            edges: Vec::new(),
        }
    }
}

impl TreeDecomposition {
    pub fn new<B: AsRef<[usize]>>(bags: impl IntoIterator<Item = B>, edges: Vec<(usize, usize)>) -> Self {
        let mut td = TreeDecomposition {
            edges,
            ..Self::default()
        };
        for bag in bags {
            td.push_bag(bag.as_ref());
        }
        td
    }

    /// Appends a bag and returns its node id.
    pub fn push_bag(&mut self, bag: &[usize]) -> usize {
        self.items.extend_from_slice(bag);
        self.start.push(self.items.len());
        self.start.len() - 2
    }

    pub fn bag(&self, node: usize) -> &[usize] {
        &self.items[self.start[node]..self.start[node + 1]]
    }

    pub fn bags(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.start.windows(2).map(|w| &self.items[w[0]..w[1]])
    }

    /// Largest bag size minus one; 0 when there are no bags.
    pub fn width(&self) -> usize {
        self.bags().map(<[usize]>::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn node_count(&self) -> usize {
        self.start.len() - 1
    }

    /// One singleton bag per vertex, on a star around node 0.
    pub fn singletons(n: usize) -> Self {
        TreeDecomposition {
            start: (0..=n).collect(),
            items: (0..n).collect(),
            edges: (1..n).map(|i| (0, i)).collect(),
        }
    }

    /// Relabels every vertex through `f`, then sorts each bag and drops
    /// repeats, in place.
    fn map_vertices(&mut self, f: impl Fn(usize) -> usize) {
        let mut write = 0;
        let mut lo = 0;
        for i in 0..self.node_count() {
            let hi = self.start[i + 1];
            let bag = &mut self.items[lo..hi];
            for v in bag.iter_mut() {
                *v = f(*v);
            }
            bag.sort_unstable();
            let begin = write;
            for r in lo..hi {
                let v = self.items[r];
                if write == begin || self.items[write - 1] != v {
                    self.items[write] = v;
                    write += 1;
                }
            }
            lo = hi;
            self.start[i + 1] = write;
        }
        self.items.truncate(write);
    }
}

enum Attach {
    Root,
    Single(usize),
    Pair(usize, usize),
}

/// Width-2 decomposition of an outerplanar embedding by repeatedly
/// eliminating a vertex of degree at most 2.
pub fn decompose_outerplanar(emb: &Embedding) -> Result<TreeDecomposition, TdError> {
    let k = compute_layers(emb).index_k;
    if k != 1 {
        return Err(TdError::NotOuterplanar { k });
    }
    let n = emb.n();
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| emb.neighbors(v).collect()).collect();
    let mut alive = vec![true; n];
    // Vertices of degree at most 1 go first, so forests get width 1.
    let mut low: Vec<usize> = (0..n).rev().filter(|&v| adj[v].len() <= 1).collect();
    let mut two: Vec<usize> = (0..n).rev().filter(|&v| adj[v].len() == 2).collect();
    let mut records: Vec<(Vec<usize>, Attach)> = Vec::with_capacity(n);
    let mut left = n;
    while let Some(v) = low.pop().or_else(|| two.pop()) {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        let mut nb: Vec<usize> = adj[v].iter().copied().collect();
        nb.sort_unstable();
        match nb[..] {
            [] => {
                records.push((vec![v], Attach::Root));
                alive[v] = false;
                left -= 1;
            }
            [w] if adj[w].len() == 1 => {
                records.push((sorted(vec![v, w]), Attach::Root));
                adj[v].clear();
                adj[w].clear();
                alive[v] = false;
                alive[w] = false;
                left -= 2;
            }
            [w] => {
                records.push((sorted(vec![v, w]), Attach::Single(w)));
                adj[w].remove(&v);
                adj[v].clear();
                alive[v] = false;
                left -= 1;
                match adj[w].len() {
                    0 | 1 => low.push(w),
                    2 => two.push(w),
                    _ => {}
                }
            }
            [w, x] => {
                records.push((sorted(vec![v, w, x]), Attach::Pair(w, x)));
                adj[w].remove(&v);
                adj[x].remove(&v);
                adj[v].clear();
                adj[w].insert(x);
                adj[x].insert(w);
                alive[v] = false;
                left -= 1;
                for y in [x, w] {
                    match adj[y].len() {
                        0 | 1 => low.push(y),
                        2 => two.push(y),
                        _ => {}
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    if left > 0 {
        return Err(TdError::NotOuterplanar { k });
    }

    let mut td = TreeDecomposition::default();
    let mut single: HashMap<usize, usize> = HashMap::new();
    let mut pair: HashMap<(usize, usize), usize> = HashMap::new();
    for (bag, attach) in records.into_iter().rev() {
        let id = td.node_count();
        let parent = match attach {
            Attach::Root => (id > 0).then_some(0),
            Attach::Single(w) => Some(single[&w]),
            Attach::Pair(w, x) => Some(pair[&(w.min(x), w.max(x))]),
        };
        if let Some(p) = parent {
            td.edges.push((p, id));
        }
        for (i, &a) in bag.iter().enumerate() {
            single.insert(a, id);
            for &b in &bag[i + 1..] {
                pair.insert((a, b), id);
            }
        }
        td.push_bag(&bag);
    }
    Ok(td)
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Faces linked by the edges missing from the spanning forest, rooted at
/// the outer faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenFaceTree {
    pub roots: Vec<usize>,
    /// Parent face of every non-root face.
    pub parent: Vec<Option<usize>>,
    /// Missing edge joining a face to its parent.
    pub parent_edge: Vec<Option<usize>>,
    /// All faces, deepest stripping number first.
    pub order: Vec<usize>,
}

impl OpenFaceTree {
    /// Missing edges in leaf-to-root order.
    pub fn missing_edges_bottom_up(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().filter_map(move |&f| self.parent_edge[f])
    }
}

pub fn build_open_face_tree(
    emb: &Embedding,
    forest: &SpanningForest,
    trace: &StrippingTrace,
) -> Result<OpenFaceTree, ForestError> {
    let s = &trace.stripping_number;
    let nf = emb.face_count();
    let violation = |fact: Fact, witness: String| Err(ForestError::FactViolation { fact, witness });
    for e in 0..emb.m() {
        let (a, b) = emb.faces_of_edge(e);
        if s[a].abs_diff(s[b]) > 1 {
            return violation(
                Fact::AdjacentWithinOne,
                format!("edge {e} between faces {a} and {b}"),
            );
        }
    }
    let mut parent = vec![None; nf];
    let mut parent_edge = vec![None; nf];
    let mut seen_pair = HashSet::new();
    for e in forest.missing_edges() {
        let (a, b) = emb.faces_of_edge(e);
        if s[a] == s[b] {
            return violation(
                Fact::MissingSeparates,
                format!("edge {e} between faces {a} and {b}"),
            );
        }
        let (up, down) = if s[a] < s[b] { (a, b) } else { (b, a) };
        if !seen_pair.insert((up, down)) {
            return violation(
                Fact::OneMissingPerPair,
                format!("edge {e} between faces {up} and {down}"),
            );
        }
        if parent[down].is_some() {
            return violation(
                Fact::NoAlternation,
                format!("face {down} reached again by edge {e}"),
            );
        }
        parent[down] = Some(up);
        parent_edge[down] = Some(e);
    }
    let roots: Vec<usize> = (0..nf).filter(|&f| emb.is_outer(f)).collect();
    if let Some(f) = (0..nf).find(|&f| !emb.is_outer(f) && parent[f].is_none()) {
        return violation(Fact::NoAlternation, format!("face {f} has no parent"));
    }
    let max_s = s.iter().copied().max().unwrap_or(0);
    let mut buckets = vec![Vec::new(); max_s + 1];
    for f in 0..nf {
        buckets[s[f]].push(f);
    }
    let order = buckets.into_iter().rev().flatten().collect();
    Ok(OpenFaceTree {
        roots,
        parent,
        parent_edge,
        order,
    })
}

/// Tree decomposition over the forest subdivided at every edge: node `v`
/// for each vertex and node `n + r` for the `r`-th forest edge. For every
/// missing edge the smaller endpoint is added to all nodes of its
/// fundamental cycle except the other endpoint's vertex node.
pub fn fill_bags(
    emb: &Embedding,
    forest: &SpanningForest,
    oft: &OpenFaceTree,
) -> TreeDecomposition {
    fill_bags_impl(emb, forest, oft, false).0
}

/// As [`fill_bags`], also returning the nodes augmented for every missing
/// edge.
pub fn fill_bags_traced(
    emb: &Embedding,
    forest: &SpanningForest,
    oft: &OpenFaceTree,
) -> (TreeDecomposition, Vec<(usize, Vec<usize>)>) {
    fill_bags_impl(emb, forest, oft, true)
}

fn fill_bags_impl(
    emb: &Embedding,
    forest: &SpanningForest,
    oft: &OpenFaceTree,
    traced: bool,
) -> (TreeDecomposition, Vec<(usize, Vec<usize>)>) {
    let n = emb.n();
    let mut node_of_edge = vec![usize::MAX; emb.m()];
    let mut base: Vec<(usize, usize)> = (0..n).map(|v| (v, usize::MAX)).collect();
    let mut edges = Vec::with_capacity(2 * n);
    for e in forest.forest_edges() {
        let (u, v) = emb.edge_endpoints(e);
        let id = base.len();
        node_of_edge[e] = id;
        base.push((u, v));
        edges.push((u, id));
        edges.push((v, id));
    }
    for &r in &forest.roots[1.min(forest.roots.len())..] {
        edges.push((forest.roots[0], r));
    }

    // Compact copies of the forest arrays for the climbs below.
    let up: Vec<(u32, u32, u32)> = (0..n)
        .map(|z| match (forest.parent[z], forest.parent_edge[z]) {
            (Some(p), Some(pe)) => (p as u32, node_of_edge[pe] as u32, forest.depth[z] as u32),
            _ => (u32::MAX, u32::MAX, 0),
        })
        .collect();

    // (node, vertex) additions, applied once every bag's size is known
    let mut added: Vec<(u32, u32)> = Vec::new();
    let mut trace = Vec::new();
    let mut touched: Vec<usize> = Vec::new();
    for e in oft.missing_edges_bottom_up() {
        let (a, b) = emb.edge_endpoints(e);
        let (v, w) = (a.min(b), a.max(b));
        touched.clear();
        let (mut x, mut y) = (v, w);
        while x != y {
            let climb_x = up[x].2 >= up[y].2;
            let z = if climb_x { x } else { y };
            let (p, edge_node, _) = up[z];
            assert!(p != u32::MAX, "endpoints of a missing edge share a tree");
            if z != v {
                touched.push(z);
            }
            touched.push(edge_node as usize);
            if climb_x {
                x = p as usize;
            } else {
                y = p as usize;
            }
        }
        if x != v && x != w {
            touched.push(x);
        }
        added.extend(touched.iter().filter(|&&node| node != w).map(|&node| (node as u32, v as u32)));
        if traced {
            let mut nodes: Vec<usize> = touched.iter().copied().filter(|&t| t != w).collect();
            nodes.sort_unstable();
            trace.push((e, nodes));
        }
    }

    let mut extra = vec![0usize; base.len()];
    for &(node, _) in &added {
        extra[node as usize] += 1;
    }
    let mut start = Vec::with_capacity(base.len() + 1);
    start.push(0);
    let mut fill = Vec::with_capacity(base.len());
    for (&(_, v), &k) in base.iter().zip(&extra) {
        let here = *start.last().unwrap();
        fill.push(here);
        start.push(here + 1 + usize::from(v != usize::MAX) + k);
    }
    let mut items = vec![0; *start.last().unwrap()];
    for (i, &(u, v)) in base.iter().enumerate() {
        items[fill[i]] = u;
        fill[i] += 1;
        if v != usize::MAX {
            items[fill[i]] = v;
            fill[i] += 1;
        }
    }
    for &(node, v) in &added {
        let node = node as usize;
        items[fill[node]] = v as usize;
        fill[node] += 1;
    }
    let mut td = TreeDecomposition { start, items, edges };
    td.map_vertices(|v| v);
    (td, trace)
}

/// Replaces every expansion vertex by its original vertex.
pub fn shrink(td: &TreeDecomposition, rec: &ExpansionRecord) -> TreeDecomposition {
    shrink_owned(td.clone(), rec)
}

pub(crate) fn shrink_owned(mut td: TreeDecomposition, rec: &ExpansionRecord) -> TreeDecomposition {
    td.map_vertices(|v| rec.backward[v]);
    td
}
