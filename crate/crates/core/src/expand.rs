//! Degree reduction: every vertex of degree `d >= 4` becomes a path of
//! `d - 2` vertices of degree 3.
//!
//! The path runs along the incident face of lowest layer, which ends up
//! touching every path vertex, so no vertex moves to a deeper layer and the
//! outerplanarity index is unchanged. The original graph is the minor
//! obtained by contracting each path.
//!
//! Edge ids `0..m` and face ids of the input survive unchanged; path edges
//! are appended after them. The first path vertex keeps the original id and
//! the others get fresh ids after all existing vertices.

use crate::embedding::{Embedding, NIL};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRecord {
    /// Replacement path of every original vertex (a singleton when the
    /// vertex was not expanded).
    pub forward: Vec<Vec<usize>>,
    /// Original vertex of every vertex of the expanded graph.
    pub backward: Vec<usize>,
    /// Number of edges of the original graph; expanded edges with a smaller
    /// id are the original edges.
    pub original_edges: usize,
}

impl ExpansionRecord {
    pub fn identity(n: usize, m: usize) -> Self {
        ExpansionRecord {
            forward: (0..n).map(|v| vec![v]).collect(),
            backward: (0..n).collect(),
            original_edges: m,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.backward.len() == self.forward.len()
    }

    pub fn original_vertices(&self) -> usize {
        self.forward.len()
    }

    pub fn contract(&self, v: usize) -> usize {
        self.backward[v]
    }

    /// Renames the original vertices: original vertex `v` becomes
    /// `names[v]`.
    pub fn rename_originals(&mut self, names: &[usize]) {
        for b in &mut self.backward {
            *b = names[*b];
        }
        let mut forward = vec![Vec::new(); self.forward.len()];
        for (v, path) in self.forward.drain(..).enumerate() {
            forward[names[v]] = path;
        }
        self.forward = forward;
    }

    /// Maps a vertex set of the expanded graph to the original graph
    /// (sorted, without repeats).
    pub fn contract_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&v| self.backward[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Relabels a family of vertex sets through the backward map.
pub fn contract_record(sets: &[Vec<usize>], rec: &ExpansionRecord) -> Vec<Vec<usize>> {
    sets.iter().map(|s| rec.contract_set(s)).collect()
}

/// Expands all vertices of degree at least 4. `face_layers` must be the
/// face layers of `emb`; ties between incident faces of equal layer go to
/// the lower face id.
pub fn expand_high_degree(emb: &Embedding, face_layers: &[usize]) -> (Embedding, ExpansionRecord) {
    let n = emb.n();
    let m = emb.m();
    let extra: usize = (0..n).map(|v| emb.degree(v).saturating_sub(3)).sum();
    if extra == 0 {
        return (emb.clone(), ExpansionRecord::identity(n, m));
    }
    let mut origin: Vec<usize> = (0..emb.half_edge_count()).map(|h| emb.origin(h)).collect();
    let mut next: Vec<usize> = (0..emb.half_edge_count())
        .map(|h| emb.next_around(h))
        .collect();
    let mut first: Vec<usize> = (0..n)
        .map(|v| emb.first_half_edge(v).unwrap_or(NIL))
        .collect();
    origin.reserve(2 * extra);
    next.reserve(2 * extra);
    first.reserve(extra);
    let mut forward: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut backward: Vec<usize> = (0..n).collect();

    for v in 0..n {
        let d = emb.degree(v);
        if d < 4 {
            continue;
        }
        let hs: Vec<usize> = emb.around(v).collect();
        let c = (0..d)
            .min_by_key(|&i| {
                let f = emb.face_of(hs[(i + 1) % d]);
                (face_layers[f], f, i)
            })
            .unwrap();
        let h = |i: usize| hs[(c + i) % d];
        let len = d - 2;
        let mut path = vec![v];
        for _ in 1..len {
            path.push(first.len());
            backward.push(v);
            first.push(NIL);
        }
        // a[i] runs path[i] -> path[i + 1], its twin a[i] ^ 1 runs back.
        let a: Vec<usize> = (0..len - 1)
            .map(|i| {
                let e = origin.len();
                origin.push(path[i]);
                origin.push(path[i + 1]);
                next.push(NIL);
                next.push(NIL);
                e
            })
            .collect();
        let mut set_ring = |p: usize, ring: [usize; 3], origin: &mut Vec<usize>| {
            for j in 0..3 {
                origin[ring[j]] = p;
                next[ring[j]] = ring[(j + 1) % 3];
            }
            first[p] = ring[0];
        };
        set_ring(path[0], [h(1), h(2), a[0]], &mut origin);
        for i in 1..len - 1 {
            set_ring(path[i], [a[i - 1] ^ 1, h(i + 2), a[i]], &mut origin);
        }
        set_ring(path[len - 1], [a[len - 2] ^ 1, h(d - 1), h(0)], &mut origin);
        forward[v] = path;
    }

    let n2 = first.len();
    let mut out =
        Embedding::assemble(n2, origin, next, first).expect("expansion keeps the embedding plane");
    debug_assert_eq!(out.face_count(), emb.face_count());
    out.set_outer_faces((0..emb.face_count()).map(|f| emb.is_outer(f)).collect());
    (
        out,
        ExpansionRecord {
            forward,
            backward,
            original_edges: m,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{canned, generate, GenSpec};
    use crate::layers::compute_layers;
    use proptest::prelude::*;

    fn expand(emb: &Embedding) -> (Embedding, ExpansionRecord) {
        expand_high_degree(emb, &compute_layers(emb).face_layer)
    }

    fn contracted_edges(ex: &Embedding, rec: &ExpansionRecord) -> Vec<(usize, usize)> {
        let mut es: Vec<_> = ex
            .edge_list()
            .into_iter()
            .map(|(u, v)| (rec.contract(u), rec.contract(v)))
            .filter(|(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        es.sort();
        es
    }

    fn sorted_edges(emb: &Embedding) -> Vec<(usize, usize)> {
        let mut es: Vec<_> = emb
            .edge_list()
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        es.sort();
        es
    }

    #[test]
    fn degree_five_becomes_three_vertex_path() {
        let emb = canned("star5").unwrap();
        let (ex, rec) = expand(&emb);
        assert_eq!(rec.forward[0].len(), 3);
        assert_eq!(ex.n(), 8);
        assert!(ex.max_degree() <= 3);
        for &p in &rec.forward[0] {
            assert_eq!(ex.degree(p), 3);
            assert_eq!(rec.contract(p), 0);
        }
        assert_eq!(contracted_edges(&ex, &rec), sorted_edges(&emb));
    }

    #[test]
    fn degree_three_graph_is_untouched() {
        let emb = canned("k4").unwrap();
        let (ex, rec) = expand(&emb);
        assert!(rec.is_identity());
        assert_eq!(ex.rotations(), emb.rotations());
    }

    #[test]
    fn grid_interior_vertex_becomes_pair() {
        let emb = canned("grid4x4").unwrap();
        let (ex, rec) = expand(&emb);
        for v in [5, 6, 9, 10] {
            assert_eq!(rec.forward[v].len(), 2);
        }
        assert_eq!(ex.n(), 20);
        assert_eq!(compute_layers(&ex).index_k, 2);
        // The path runs along the lowest-layer face: the corner of 5 towards
        // the outer ring is the face of layer 1 spanned by 0, 1, 4, 5.
        let fl = compute_layers(&emb).face_layer;
        let fl2 = compute_layers(&ex).face_layer;
        assert_eq!(fl, fl2);
    }

    #[test]
    fn contract_sets() {
        let emb = canned("star4").unwrap();
        let (_, rec) = expand(&emb);
        let path = rec.forward[0].clone();
        assert_eq!(rec.contract_set(&[path[0], path[1], 3]), vec![0, 3]);
        assert_eq!(rec.contract_set(&path), vec![0]);
        let id = ExpansionRecord::identity(4, 3);
        assert_eq!(contract_record(&[vec![3, 1]], &id), vec![vec![1, 3]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn expansion_invariants(k in 1usize..5, extra in 0usize..120, seed in any::<u64>(), chords in 0.0f64..1.0) {
            let spec = GenSpec { k, n_target: 3 * k + extra, seed, chord_density: chords, spoke_density: 0.4 };
            let emb = generate(&spec).unwrap();
            let la = compute_layers(&emb);
            let (ex, rec) = expand_high_degree(&emb, &la.face_layer);
            let la2 = compute_layers(&ex);
            prop_assert!(ex.max_degree() <= 3);
            prop_assert_eq!(la2.index_k, la.index_k);
            prop_assert_eq!(&la2.face_layer, &la.face_layer);
            prop_assert!(ex.n() <= 2 * emb.m().max(1));
            prop_assert_eq!(contracted_edges(&ex, &rec), sorted_edges(&emb));
            for e in 0..emb.m() {
                prop_assert_eq!(
                    (rec.contract(ex.edge_endpoints(e).0), rec.contract(ex.edge_endpoints(e).1)),
                    emb.edge_endpoints(e)
                );
            }
            for v in 0..emb.n() {
                prop_assert_eq!(rec.forward[v].len(), if emb.degree(v) >= 4 { emb.degree(v) - 2 } else { 1 });
                for &p in &rec.forward[v] {
                    prop_assert_eq!(la2.vertex_layer[p], la.vertex_layer[v]);
                }
            }
        }
    }
}
