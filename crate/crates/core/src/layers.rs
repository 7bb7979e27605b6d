//! Vertex layers, face layers and the outerplanarity index.
//!
//! Layer 1 holds the vertices on the outer face. Deleting them merges every
//! face they touch into the new outer face, whose vertices form layer 2,
//! and so on. The peeling is carried out as a breadth-first sweep over
//! vertex/face incidences, so each face boundary and each rotation is
//! scanned once.
//!
//! Components of a disconnected embedding each carry their own outer face
//! and are peeled side by side.

use crate::embedding::{Embedding, NIL};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerAssignment {
    pub vertex_layer: Vec<usize>,
    /// Outer faces have layer 0; any other face gets the step at which it
    /// merges into the outer face.
    pub face_layer: Vec<usize>,
    /// Outerplanarity index of the embedding; 0 only for the empty graph.
    pub index_k: usize,
}

pub fn compute_layers(emb: &Embedding) -> LayerAssignment {
    let roots: Vec<bool> = (0..emb.face_count()).map(|f| emb.is_outer(f)).collect();
    layers_from(emb, &roots)
}

pub fn compute_vertex_layers(emb: &Embedding) -> LayerAssignment {
    compute_layers(emb)
}

pub fn compute_face_layers(emb: &Embedding) -> Vec<usize> {
    compute_layers(emb).face_layer
}

pub fn outerplanarity_index(emb: &Embedding) -> usize {
    compute_layers(emb).index_k
}

/// Peels starting from an arbitrary set of layer-0 faces.
pub(crate) fn layers_from(emb: &Embedding, roots: &[bool]) -> LayerAssignment {
    let mut vertex_layer = vec![NIL; emb.n()];
    let mut face_layer = vec![NIL; emb.face_count()];
    let mut frontier: Vec<usize> = (0..emb.face_count()).filter(|&f| roots[f]).collect();
    for &f in &frontier {
        face_layer[f] = 0;
    }
    let mut layer = 0;
    let mut fresh = Vec::new();
    while !frontier.is_empty() {
        layer += 1;
        fresh.clear();
        for &f in &frontier {
            for h in emb.face_boundary(f) {
                let v = emb.origin(h);
                if vertex_layer[v] == NIL {
                    vertex_layer[v] = layer;
                    fresh.push(v);
                }
            }
        }
        frontier.clear();
        for &v in &fresh {
            for h in emb.around(v) {
                let f = emb.face_of(h);
                if face_layer[f] == NIL {
                    face_layer[f] = layer;
                    frontier.push(f);
                }
            }
        }
    }
    for l in vertex_layer.iter_mut().filter(|l| **l == NIL) {
        // Isolated vertices, and anything unreachable from the roots.
        *l = 1;
    }
    for l in face_layer.iter_mut().filter(|l| **l == NIL) {
        *l = 0;
    }
    let index_k = vertex_layer.iter().copied().max().unwrap_or(0);
    LayerAssignment {
        vertex_layer,
        face_layer,
        index_k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{canned, generate, GenSpec};
    use proptest::prelude::*;

    #[test]
    fn cycle_is_outerplanar() {
        let emb = canned("c5").unwrap();
        let la = compute_layers(&emb);
        assert_eq!(la.index_k, 1);
        assert!(la.vertex_layer.iter().all(|&l| l == 1));
        let inner = (0..emb.face_count()).find(|&f| !emb.is_outer(f)).unwrap();
        assert_eq!(la.face_layer[inner], 1);
    }

    #[test]
    fn k4_centre_is_second_layer() {
        let emb = canned("k4").unwrap();
        let la = compute_layers(&emb);
        assert_eq!(la.vertex_layer, vec![1, 1, 1, 2]);
        assert_eq!(la.index_k, 2);
        for f in 0..emb.face_count() {
            assert_eq!(la.face_layer[f], if emb.is_outer(f) { 0 } else { 1 });
        }
    }

    #[test]
    fn grid_5x5_has_three_rings() {
        let la = compute_layers(&canned("grid5x5").unwrap());
        assert_eq!(la.index_k, 3);
        assert_eq!(la.vertex_layer[12], 3);
        assert_eq!(la.vertex_layer[6], 2);
        assert_eq!(la.vertex_layer[0], 1);
    }

    #[test]
    fn nested_triangles_innermost_face() {
        let emb = canned("nested").unwrap();
        let la = compute_layers(&emb);
        assert_eq!(la.index_k, 2);
        let mut layers: Vec<_> = la.face_layer.clone();
        layers.sort();
        // outer, three spoke quadrilaterals, inner triangle
        assert_eq!(layers, vec![0, 1, 1, 1, 2]);
    }

    #[test]
    fn edgeless_graphs() {
        let emb = Embedding::from_rotations(3, &[vec![], vec![], vec![]], &[]).unwrap();
        assert_eq!(compute_layers(&emb).index_k, 1);
        let empty = Embedding::from_rotations(0, &[], &[]).unwrap();
        assert_eq!(compute_layers(&empty).index_k, 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// Deleting every edge at a layer-1 vertex moves all deeper vertices
        /// up by exactly one layer, as long as their component still sees
        /// the unbounded region.
        #[test]
        fn peeling_one_layer_shifts_the_rest(k in 2usize..5, extra in 0usize..40, seed in any::<u64>()) {
            let emb = generate(&GenSpec::new(k, 3 * k + extra, seed)).unwrap();
            let la = compute_layers(&emb);
            let doomed: Vec<usize> = (0..emb.m())
                .filter(|&e| {
                    let (u, v) = emb.edge_endpoints(e);
                    la.vertex_layer[u] == 1 || la.vertex_layer[v] == 1
                })
                .collect();
            let (inner, _, exterior) = emb.delete_edges_exterior(&doomed);
            let peeled = layers_from(&inner, &exterior);
            let mut sees_outside = vec![false; inner.component_count()];
            for h in 0..inner.half_edge_count() {
                if exterior[inner.face_of(h)] {
                    sees_outside[inner.component_of(inner.origin(h))] = true;
                }
            }
            for v in 0..emb.n() {
                if la.vertex_layer[v] >= 2 && sees_outside[inner.component_of(v)] {
                    prop_assert_eq!(peeled.vertex_layer[v], la.vertex_layer[v] - 1, "vertex {}", v);
                }
            }
            prop_assert_eq!(peeled.index_k.max(1), la.index_k - 1);
        }
    }
}
