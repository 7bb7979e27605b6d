//! Validators and exact oracles.
//!
//! Nothing here reuses the constructors' traversal code: forests are
//! re-rooted by breadth-first search, fundamental cycles are found by path
//! search, and middle sets are counted from scratch.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::branch::{BranchComponent, BranchDecomposition};
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TdViolation {
    #[error("decomposition tree: {0}")]
    NotATree(String),
    #[error("bag {node} holds vertex {vertex}, which is out of range")]
    VertexOutOfRange { node: usize, vertex: usize },
    #[error("vertex {0} is in no bag")]
    UncoveredVertex(usize),
    #[error("edge {u}-{v} is in no bag")]
    UncoveredEdge { u: usize, v: usize },
    #[error("bags holding vertex {vertex} are not connected ({nodes} bags, {links} links)")]
    Disconnected {
        vertex: usize,
        nodes: usize,
        links: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BdViolation {
    #[error("component {component}: {detail}")]
    NotATree { component: usize, detail: String },
    #[error("component {component}: node {node} has degree {degree}")]
    BadDegree {
        component: usize,
        node: usize,
        degree: usize,
    },
    #[error("component {component}: leaf {node} carries no edge")]
    UnlabeledLeaf { component: usize, node: usize },
    #[error("component {component}: node {node} is not a leaf but carries edge {edge}")]
    InnerNodeLabeled {
        component: usize,
        node: usize,
        edge: usize,
    },
    #[error("component {component}: node {node} carries two edges")]
    NodeLabeledTwice { component: usize, node: usize },
    #[error("edge {0} does not exist")]
    EdgeOutOfRange(usize),
    #[error("edge {0} is mapped to two leaves")]
    DuplicateEdge(usize),
    #[error("edge {0} is mapped to no leaf")]
    UnmappedEdge(usize),
    #[error("component {component} mixes edges of different graph components")]
    MixedComponents { component: usize },
    #[error("component {component} records width {recorded}, actual {actual}")]
    WrongWidth {
        component: usize,
        recorded: usize,
        actual: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RememberError {
    #[error("forest edges contain a cycle")]
    NotAForest,
    #[error("edge {0} joins two different forest trees")]
    NotSpanning(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} = {got} exceeds the oracle limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
}

/// Checks the three tree-decomposition conditions plus tree shape.
pub fn check_td(graph: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let nodes = td.node_count();
    if nodes == 0 {
        return match graph.n() {
            0 => Ok(()),
            _ => Err(TdViolation::UncoveredVertex(0)),
        };
    }
    if td.edges.len() != nodes - 1 {
        return Err(TdViolation::NotATree(format!(
            "{} nodes but {} edges",
            nodes,
            td.edges.len()
        )));
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in &td.edges {
        if a >= nodes || b >= nodes {
            return Err(TdViolation::NotATree(format!("edge {a}-{b} out of range")));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if reach_count(&adj, 0) != nodes {
        return Err(TdViolation::NotATree("disconnected".into()));
    }

    let mut bags: Vec<Vec<usize>> = td.bags().map(<[usize]>::to_vec).collect();
    for (i, bag) in bags.iter_mut().enumerate() {
        bag.sort_unstable();
        bag.dedup();
        if let Some(&v) = bag.iter().find(|&&v| v >= graph.n()) {
            return Err(TdViolation::VertexOutOfRange { node: i, vertex: v });
        }
    }
    let mut occurrences = vec![0usize; graph.n()];
    for bag in &bags {
        for &v in bag {
            occurrences[v] += 1;
        }
    }
    if let Some(v) = occurrences.iter().position(|&c| c == 0) {
        return Err(TdViolation::UncoveredVertex(v));
    }

    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for bag in &bags {
        for (i, &a) in bag.iter().enumerate() {
            for &b in &bag[i + 1..] {
                pairs.insert((a, b));
            }
        }
    }
    for &(u, v) in graph.edges() {
        if !pairs.contains(&(u.min(v), u.max(v))) {
            return Err(TdViolation::UncoveredEdge { u, v });
        }
    }

    // In a tree, the nodes holding v are connected iff the tree edges
    // inside that set number one less than the nodes.
    let mut links = vec![0usize; graph.n()];
    for &(a, b) in &td.edges {
        let (small, large) = if bags[a].len() <= bags[b].len() {
            (a, b)
        } else {
            (b, a)
        };
        for &v in &bags[small] {
            if bags[large].binary_search(&v).is_ok() {
                links[v] += 1;
            }
        }
    }
    for v in 0..graph.n() {
        if links[v] + 1 != occurrences[v] {
            return Err(TdViolation::Disconnected {
                vertex: v,
                nodes: occurrences[v],
                links: links[v],
            });
        }
    }
    Ok(())
}

fn reach_count(adj: &[Vec<usize>], start: usize) -> usize {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut count = 0;
    while let Some(x) = queue.pop_front() {
        count += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    count
}

/// Validates a branch decomposition and returns its width. Every graph edge
/// must be the σ image of exactly one leaf, and each part must cover one
/// connected component of the graph.
pub fn check_bd(graph: &Graph, bd: &BranchDecomposition) -> Result<usize, BdViolation> {
    let (_, comp_of) = graph.components();
    let mut owner = vec![usize::MAX; graph.m()];
    let mut width = 0;
    for (c, part) in bd.components.iter().enumerate() {
        check_part_shape(c, part)?;
        let mut graph_comp = None;
        for &(_, e) in &part.leaves {
            if e >= graph.m() {
                return Err(BdViolation::EdgeOutOfRange(e));
            }
            if owner[e] != usize::MAX {
                return Err(BdViolation::DuplicateEdge(e));
            }
            owner[e] = c;
            let gc = comp_of[graph.edge(e).0];
            if *graph_comp.get_or_insert(gc) != gc {
                return Err(BdViolation::MixedComponents { component: c });
            }
        }
        let actual = middle_set_orders(graph, part)
            .into_iter()
            .max()
            .unwrap_or(0);
        if actual != part.width {
            return Err(BdViolation::WrongWidth {
                component: c,
                recorded: part.width,
                actual,
            });
        }
        width = width.max(actual);
    }
    if let Some(e) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(BdViolation::UnmappedEdge(e));
    }
    // One part per graph component with edges.
    let mut parts_per_comp: HashMap<usize, usize> = HashMap::new();
    for part in &bd.components {
        if let Some(&(_, e)) = part.leaves.first() {
            *parts_per_comp.entry(comp_of[graph.edge(e).0]).or_default() += 1;
        }
    }
    if let Some((_, _)) = parts_per_comp.iter().find(|(_, &k)| k > 1) {
        let c = bd
            .components
            .iter()
            .position(|p| {
                p.leaves
                    .first()
                    .is_some_and(|&(_, e)| parts_per_comp[&comp_of[graph.edge(e).0]] > 1)
            })
            .unwrap();
        return Err(BdViolation::MixedComponents { component: c });
    }
    Ok(width)
}

fn check_part_shape(c: usize, part: &BranchComponent) -> Result<(), BdViolation> {
    let nodes = part.node_count;
    let not_tree = |detail: String| {
        Err(BdViolation::NotATree {
            component: c,
            detail,
        })
    };
    if nodes == 0 {
        return not_tree("no nodes".into());
    }
    if part.tree_edges.len() != nodes - 1 {
        return not_tree(format!(
            "{} nodes but {} edges",
            nodes,
            part.tree_edges.len()
        ));
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in &part.tree_edges {
        if a >= nodes || b >= nodes || a == b {
            return not_tree(format!("bad edge {a}-{b}"));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if reach_count(&adj, 0) != nodes {
        return not_tree("disconnected".into());
    }
    let mut label = vec![None; nodes];
    for &(x, e) in &part.leaves {
        if x >= nodes {
            return not_tree(format!("leaf node {x} out of range"));
        }
        if label[x].is_some() {
            return Err(BdViolation::NodeLabeledTwice {
                component: c,
                node: x,
            });
        }
        label[x] = Some(e);
    }
    for x in 0..nodes {
        let d = adj[x].len();
        match (d, label[x]) {
            (0, Some(_)) if nodes == 1 => {}
            (1, Some(_)) | (3, None) => {}
            (1, None) => {
                return Err(BdViolation::UnlabeledLeaf {
                    component: c,
                    node: x,
                })
            }
            (3, Some(e)) => {
                return Err(BdViolation::InnerNodeLabeled {
                    component: c,
                    node: x,
                    edge: e,
                })
            }
            _ => {
                return Err(BdViolation::BadDegree {
                    component: c,
                    node: x,
                    degree: d,
                })
            }
        }
    }
    Ok(())
}

/// Order of every tree edge of a part, in `tree_edges` order.
///
/// A vertex is in the middle set of the edge above node `c` (rooting at
/// node 0) iff the subtree of `c` holds some but not all of its leaves,
/// i.e. iff that edge lies on the Steiner tree of its leaves below their
/// lowest common ancestor. Per vertex this is marked by +1 on each leaf,
/// -1 on the meeting point of DFS-consecutive leaves, and -1 on the common
/// ancestor of all of them; subtree sums then give the orders.
pub fn middle_set_orders(graph: &Graph, part: &BranchComponent) -> Vec<usize> {
    let nodes = part.node_count;
    if part.tree_edges.is_empty() {
        return Vec::new();
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in &part.tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; nodes];
    let mut depth = vec![0; nodes];
    let mut pre = vec![0; nodes];
    let mut order = Vec::with_capacity(nodes);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(x) = stack.pop() {
        pre[x] = order.len();
        order.push(x);
        for &y in adj[x].iter().rev() {
            if parent[y] == usize::MAX {
                parent[y] = x;
                depth[y] = depth[x] + 1;
                stack.push(y);
            }
        }
    }
    let levels = usize::BITS as usize - nodes.leading_zeros() as usize;
    let mut up = vec![parent.clone()];
    for l in 1..levels.max(1) {
        let prev = &up[l - 1];
        up.push((0..nodes).map(|x| prev[prev[x]]).collect());
    }
    let lca = |mut a: usize, mut b: usize| {
        if depth[a] < depth[b] {
            std::mem::swap(&mut a, &mut b);
        }
        let diff = depth[a] - depth[b];
        for (l, row) in up.iter().enumerate() {
            if diff >> l & 1 == 1 {
                a = row[a];
            }
        }
        if a == b {
            return a;
        }
        for row in up.iter().rev() {
            if row[a] != row[b] {
                a = row[a];
                b = row[b];
            }
        }
        parent[a]
    };

    let mut leaves_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(x, e) in &part.leaves {
        let (u, v) = graph.edge(e);
        leaves_of.entry(u).or_default().push(x);
        leaves_of.entry(v).or_default().push(x);
    }
    let mut mark = vec![0i64; nodes];
    for list in leaves_of.values_mut() {
        list.sort_unstable_by_key(|&x| pre[x]);
        for &x in list.iter() {
            mark[x] += 1;
        }
        for w in list.windows(2) {
            mark[lca(w[0], w[1])] -= 1;
        }
        mark[lca(list[0], list[list.len() - 1])] -= 1;
    }
    for &x in order.iter().rev() {
        if x != 0 {
            mark[parent[x]] += mark[x];
        }
    }
    part.tree_edges
        .iter()
        .map(|&(a, b)| {
            let child = if parent[a] == b && a != 0 { a } else { b };
            mark[child] as usize
        })
        .collect()
}

/// Middle-set orders by explicit leaf bipartition, one tree search per edge.
pub fn middle_set_orders_naive(graph: &Graph, part: &BranchComponent) -> Vec<usize> {
    let nodes = part.node_count;
    let mut adj = vec![Vec::new(); nodes];
    for (i, &(a, b)) in part.tree_edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut edge_at = vec![None; nodes];
    for &(x, e) in &part.leaves {
        edge_at[x] = Some(e);
    }
    (0..part.tree_edges.len())
        .map(|cut| {
            let mut side = vec![false; nodes];
            let start = part.tree_edges[cut].0;
            side[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &(y, i) in &adj[x] {
                    if i != cut && !side[y] {
                        side[y] = true;
                        stack.push(y);
                    }
                }
            }
            let mut here = HashSet::new();
            let mut there = HashSet::new();
            for x in 0..nodes {
                if let Some(e) = edge_at[x] {
                    let (u, v) = graph.edge(e);
                    let set = if side[x] { &mut here } else { &mut there };
                    set.insert(u);
                    set.insert(v);
                }
            }
            here.intersection(&there).count()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RememberReport {
    pub vr: usize,
    pub er: usize,
    /// Fundamental cycles through each vertex.
    pub per_vertex: Vec<usize>,
    /// Fundamental cycles through each edge; a missing edge lies on its own
    /// cycle only.
    pub per_edge: Vec<usize>,
}

/// Vertex and edge remember numbers of a spanning forest given as edge
/// flags.
pub fn remember_numbers(
    graph: &Graph,
    in_forest: &[bool],
) -> Result<RememberReport, RememberError> {
    let n = graph.n();
    let mut adj = vec![Vec::new(); n];
    let mut forest_edges = 0;
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if in_forest[e] {
            adj[u].push((v, e));
            adj[v].push((u, e));
            forest_edges += 1;
        }
    }
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut depth = vec![0usize; n];
    let mut tree = vec![usize::MAX; n];
    let mut trees = 0;
    for r in 0..n {
        if tree[r] != usize::MAX {
            continue;
        }
        tree[r] = r;
        trees += 1;
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if tree[y] == usize::MAX {
                    tree[y] = r;
                    parent[y] = (x, e);
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    if forest_edges != n - trees {
        return Err(RememberError::NotAForest);
    }
    let mut per_vertex = vec![0; n];
    let mut per_edge = vec![0; graph.m()];
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        if in_forest[e] {
            continue;
        }
        if tree[u] != tree[v] {
            return Err(RememberError::NotSpanning(e));
        }
        per_edge[e] += 1;
        let (mut a, mut b) = (u, v);
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            per_vertex[a] += 1;
            per_edge[parent[a].1] += 1;
            a = parent[a].0;
        }
        per_vertex[a] += 1;
    }
    Ok(RememberReport {
        vr: per_vertex.iter().copied().max().unwrap_or(0),
        er: per_edge.iter().copied().max().unwrap_or(0),
        per_vertex,
        per_edge,
    })
}

/// Vertices and forest edges of the fundamental cycle of missing edge `e`,
/// both sorted. The forest path is found by breadth-first search.
pub fn fundamental_cycle(
    graph: &Graph,
    in_forest: &[bool],
    e: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let (s, t) = graph.edge(e);
    let mut adj = vec![Vec::new(); graph.n()];
    for (f, &(u, v)) in graph.edges().iter().enumerate() {
        if in_forest[f] {
            adj[u].push((v, f));
            adj[v].push((u, f));
        }
    }
    let mut from = vec![None; graph.n()];
    let mut seen = vec![false; graph.n()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &(y, f) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                from[y] = Some((x, f));
                queue.push_back(y);
            }
        }
    }
    if !seen[t] {
        return None;
    }
    let mut verts = vec![t];
    let mut edges = Vec::new();
    let mut x = t;
    while let Some((p, f)) = from[x] {
        verts.push(p);
        edges.push(f);
        x = p;
    }
    verts.sort_unstable();
    edges.sort_unstable();
    Some((verts, edges))
}

pub const TW_ORACLE_LIMIT: usize = 10;
pub const BW_ORACLE_LIMIT: usize = 8;

/// Exact treewidth by dynamic programming over vertex subsets: the best
/// elimination of a set `S` first eliminates `S - v` and then `v`, whose
/// cost is the number of vertices outside `S` it reaches through `S - v`.
pub fn oracle_treewidth(graph: &Graph) -> Result<usize, OracleError> {
    let n = graph.n();
    if n > TW_ORACLE_LIMIT {
        return Err(OracleError::TooLarge {
            what: "n",
            got: n,
            limit: TW_ORACLE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut nb = vec![0u32; n];
    for &(u, v) in graph.edges() {
        nb[u] |= 1 << v;
        nb[v] |= 1 << u;
    }
    let q = |s: u32, v: usize| -> i64 {
        // vertices outside s + v reachable from v through s
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut outside = 0u32;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = nb[x] & !seen;
            seen |= fresh;
            outside |= fresh & !s;
            frontier |= fresh & s;
        }
        outside.count_ones() as i64
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![i64::MAX; 1 << n];
    tw[0] = -1;
    for s in 1..=full {
        let mut best = i64::MAX;
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            best = best.min(tw[rest as usize].max(q(rest, v)));
        }
        tw[s as usize] = best;
    }
    Ok(tw[full as usize].max(0) as usize)
}

/// Exact branchwidth by enumerating every unrooted cubic tree with one leaf
/// per edge. Disconnected graphs take the maximum over their components;
/// components with at most one edge count 0.
pub fn oracle_branchwidth(graph: &Graph) -> Result<usize, OracleError> {
    let m = graph.m();
    if m > BW_ORACLE_LIMIT {
        return Err(OracleError::TooLarge {
            what: "m",
            got: m,
            limit: BW_ORACLE_LIMIT,
        });
    }
    let (count, comp) = graph.components();
    let mut best = 0;
    for c in 0..count {
        let edges: Vec<(usize, usize)> = graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, _)| comp[u] == c)
            .collect();
        if edges.len() >= 2 {
            best = best.max(connected_branchwidth(&edges));
        }
    }
    Ok(best)
}

fn connected_branchwidth(edges: &[(usize, usize)]) -> usize {
    let m = edges.len();
    if m == 2 {
        let (a, b) = (edges[0], edges[1]);
        return [a.0, a.1].iter().filter(|&&x| x == b.0 || x == b.1).count();
    }
    // Leaves are nodes 0..m (leaf i holds edge i), inner nodes follow.
    let mut tree: Vec<(usize, usize)> = vec![(0, m), (1, m), (2, m)];
    let mut best = usize::MAX;
    grow(edges, &mut tree, 3, m + 1, &mut best);
    best
}

fn grow(
    edges: &[(usize, usize)],
    tree: &mut Vec<(usize, usize)>,
    next_leaf: usize,
    next_inner: usize,
    best: &mut usize,
) {
    let m = edges.len();
    if next_leaf == m {
        *best = (*best).min(tree_width(edges, tree, next_inner));
        return;
    }
    for i in 0..tree.len() {
        let (a, b) = tree[i];
        let w = next_inner;
        tree[i] = (a, w);
        tree.push((w, b));
        tree.push((w, next_leaf));
        grow(edges, tree, next_leaf + 1, next_inner + 1, best);
        tree.pop();
        tree.pop();
        tree[i] = (a, b);
    }
}

fn tree_width(edges: &[(usize, usize)], tree: &[(usize, usize)], nodes: usize) -> usize {
    let m = edges.len();
    let mut adj = vec![Vec::new(); nodes];
    for (i, &(a, b)) in tree.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut width = 0;
    for cut in 0..tree.len() {
        let mut side = vec![false; nodes];
        let start = tree[cut].0;
        side[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(y, i) in &adj[x] {
                if i != cut && !side[y] {
                    side[y] = true;
                    stack.push(y);
                }
            }
        }
        let mut here = HashSet::new();
        let mut there = HashSet::new();
        for (leaf, &(u, v)) in edges.iter().enumerate().take(m) {
            let set = if side[leaf] { &mut here } else { &mut there };
            set.insert(u);
            set.insert(v);
        }
        width = width.max(here.intersection(&there).count());
    }
    width
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    fn complete(n: usize) -> Graph {
        let mut es = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                es.push((i, j));
            }
        }
        Graph::new(n, es)
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    fn c5_bags() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4]]
    }

    fn c5_td() -> TreeDecomposition {
        TreeDecomposition::new(c5_bags(), vec![(0, 1), (1, 2)])
    }

    #[test]
    fn td_checks() {
        let g = cycle(5);
        assert_eq!(check_td(&g, &c5_td()), Ok(()));

        let mut bags = c5_bags();
        bags[2] = vec![0, 3];
        let td = TreeDecomposition::new(bags, vec![(0, 1), (1, 2)]);
        assert_eq!(check_td(&g, &td), Err(TdViolation::UncoveredVertex(4)));

        let mut bags = c5_bags();
        bags[1] = vec![2, 3, 4];
        bags.push(vec![0, 1]);
        let td = TreeDecomposition::new(bags, vec![(0, 1), (1, 2), (2, 3)]);
        // vertex 0 now sits in bags 0, 2, 3 but not in 1
        assert!(matches!(
            check_td(&g, &td),
            Err(TdViolation::Disconnected { vertex: 0, .. })
        ));

        let mut bags = c5_bags();
        bags[0] = vec![0, 1];
        let td = TreeDecomposition::new(bags, vec![(0, 1), (1, 2)]);
        assert_eq!(
            check_td(&g, &td),
            Err(TdViolation::UncoveredEdge { u: 1, v: 2 })
        );

        let mut td = c5_td();
        td.edges.push((0, 2));
        assert!(matches!(check_td(&g, &td), Err(TdViolation::NotATree(_))));
    }

    fn claw_bd() -> BranchDecomposition {
        // C3 with leaves 0, 1, 2 around centre 3
        BranchDecomposition {
            components: vec![BranchComponent {
                node_count: 4,
                tree_edges: vec![(0, 3), (1, 3), (2, 3)],
                leaves: vec![(0, 0), (1, 1), (2, 2)],
                origins: vec![Vec::new(); 3],
                width: 2,
            }],
        }
    }

    #[test]
    fn bd_checks() {
        let g = cycle(3);
        assert_eq!(check_bd(&g, &claw_bd()), Ok(2));

        let mut bd = claw_bd();
        bd.components[0].leaves[1].1 = 0;
        assert_eq!(check_bd(&g, &bd), Err(BdViolation::DuplicateEdge(0)));

        let mut bd = claw_bd();
        let part = &mut bd.components[0];
        part.node_count = 5;
        part.tree_edges.push((3, 4));
        part.leaves.push((4, 2));
        part.leaves.remove(2);
        part.tree_edges[2] = (2, 4);
        // node 3 now has degree 3 and node 4 degree 2
        assert!(matches!(
            check_bd(&g, &bd),
            Err(BdViolation::BadDegree { node: 4, .. }) | Err(BdViolation::UnlabeledLeaf { .. })
        ));

        let g4 = Graph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        let bd = BranchDecomposition {
            components: vec![BranchComponent {
                node_count: 5,
                tree_edges: vec![(0, 4), (1, 4), (2, 4), (3, 4)],
                leaves: vec![(0, 0), (1, 1), (2, 2), (3, 3)],
                origins: vec![Vec::new(); 4],
                width: 1,
            }],
        };
        assert_eq!(
            check_bd(&g4, &bd),
            Err(BdViolation::BadDegree {
                component: 0,
                node: 4,
                degree: 4
            })
        );
    }

    #[test]
    fn fast_and_naive_middle_sets_agree() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]);
        // caterpillar: leaves 0..5 on spine 5-6-7
        let part = BranchComponent {
            node_count: 8,
            tree_edges: vec![(0, 5), (1, 5), (5, 6), (2, 6), (6, 7), (3, 7), (4, 7)],
            leaves: vec![(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)],
            origins: vec![Vec::new(); 7],
            width: 0,
        };
        assert_eq!(
            middle_set_orders(&g, &part),
            middle_set_orders_naive(&g, &part)
        );
        assert_eq!(
            middle_set_orders_naive(&g, &part),
            vec![2, 2, 2, 2, 3, 2, 2]
        );
    }

    #[test]
    fn remember_numbers_basic() {
        let g = cycle(6);
        let mut flags = vec![true; 6];
        flags[5] = false;
        let r = remember_numbers(&g, &flags).unwrap();
        assert_eq!((r.vr, r.er), (1, 1));
        let t = path(5);
        let r = remember_numbers(&t, &[true; 4]).unwrap();
        assert_eq!((r.vr, r.er), (0, 0));
        assert_eq!(
            remember_numbers(&g, &[true; 6]),
            Err(RememberError::NotAForest)
        );
        let two = Graph::new(4, vec![(0, 1), (2, 3), (1, 2)]);
        assert_eq!(
            remember_numbers(&two, &[true, true, false]),
            Err(RememberError::NotSpanning(2))
        );
    }

    #[test]
    fn remember_numbers_hand_count() {
        // K4 with star forest at 3: three triangles 3-a-b, each outer edge
        // on one cycle, each spoke on two, every vertex on two or three.
        let k4 = complete(4);
        let flags: Vec<bool> = k4.edges().iter().map(|&(u, v)| u == 3 || v == 3).collect();
        let r = remember_numbers(&k4, &flags).unwrap();
        assert_eq!(r.per_vertex, vec![2, 2, 2, 3]);
        assert_eq!((r.vr, r.er), (3, 2));
    }

    #[test]
    fn fundamental_cycle_of_c6() {
        let g = cycle(6);
        let mut flags = vec![true; 6];
        flags[5] = false;
        let (vs, es) = fundamental_cycle(&g, &flags, 5).unwrap();
        assert_eq!(vs, (0..6).collect::<Vec<_>>());
        assert_eq!(es, (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn treewidth_oracle() {
        assert_eq!(oracle_treewidth(&complete(2)).unwrap(), 1);
        assert_eq!(oracle_treewidth(&complete(3)).unwrap(), 2);
        assert_eq!(oracle_treewidth(&complete(4)).unwrap(), 3);
        assert_eq!(oracle_treewidth(&path(7)).unwrap(), 1);
        assert_eq!(oracle_treewidth(&cycle(5)).unwrap(), 2);
        assert_eq!(oracle_treewidth(&Graph::new(3, vec![])).unwrap(), 0);
        assert!(oracle_treewidth(&path(11)).is_err());
    }

    #[test]
    fn branchwidth_oracle() {
        assert_eq!(oracle_branchwidth(&path(2)).unwrap(), 0);
        assert_eq!(oracle_branchwidth(&cycle(3)).unwrap(), 2);
        assert_eq!(oracle_branchwidth(&path(3)).unwrap(), 1);
        // only stars have branchwidth 1
        assert_eq!(oracle_branchwidth(&path(4)).unwrap(), 2);
        let star = Graph::new(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(oracle_branchwidth(&star).unwrap(), 1);
        assert_eq!(oracle_branchwidth(&complete(4)).unwrap(), 3);
        assert_eq!(oracle_branchwidth(&cycle(6)).unwrap(), 2);
        assert!(oracle_branchwidth(&cycle(9)).is_err());
    }
}
