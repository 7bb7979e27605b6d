//! Combinatorial plane embeddings stored as half-edge rotation systems.
//!
//! Conventions used throughout the crate:
//!
//! * every undirected edge `e` owns half-edges `2e` and `2e + 1`, so the
//!   twin of `h` is `h ^ 1`;
//! * rotations list neighbors **clockwise**;
//! * the face of a half-edge `u -> v` is the face on its left, and the face
//!   walk continues with the clockwise successor of the twin at `v`.
//!
//! Every connected component with at least one edge carries exactly one
//! outer face. The caller designates it through a directed-edge hint; it is
//! never guessed from face sizes.

use std::collections::HashMap;

use thiserror::Error;

use crate::dsu::Dsu;
use crate::graph::Graph;

pub(crate) const NIL: usize = usize::MAX;

// Internal index storage; halves the footprint of the hot arrays.
type Ix = u32;
const NIL_IX: Ix = Ix::MAX;

fn wide(x: Ix) -> usize {
    if x == NIL_IX {
        NIL
    } else {
        x as usize
    }
}

fn narrow(x: usize) -> Ix {
    if x == NIL {
        NIL_IX
    } else {
        x as Ix
    }
}

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;
pub type HalfEdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("expected {expected} rotation lists, got {found}")]
    RotationCount { expected: usize, found: usize },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("asymmetric rotation: {u} lists {v} but {v} does not list {u}")]
    AsymmetricRotation { u: usize, v: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error(
        "not a plane embedding: component of vertex {vertex} has v={v}, e={e}, f={f} (v - e + f != 2)"
    )]
    EulerViolation {
        vertex: usize,
        v: usize,
        e: usize,
        f: usize,
    },
    #[error("outer-face hint {u}->{v} is not an edge")]
    BadHint { u: usize, v: usize },
    #[error("hints designate two different outer faces in the component of vertex {0}")]
    ConflictingHints(usize),
    #[error("component of vertex {0} has no outer-face hint")]
    MissingOuterFace(usize),
    #[error("{0} half-edges exceed the supported size")]
    TooLarge(usize),
}

/// Immutable half-edge embedding with extracted faces.
#[derive(Clone, Debug)]
pub struct Embedding {
    n: usize,
    origin: Vec<Ix>,
    next: Vec<Ix>,
    prev: Vec<Ix>,
    first: Vec<Ix>,
    degree: Vec<Ix>,
    face: Vec<Ix>,
    face_start: Vec<Ix>,
    face_len: Vec<Ix>,
    outer: Vec<bool>,
    outer_face: Option<usize>,
    hints: Vec<(usize, usize)>,
    component: Vec<Ix>,
    component_count: usize,
}

/// Builds an embedding from clockwise rotation lists and a single
/// outer-face hint (`hint.0 -> hint.1`, outer face on the left).
pub fn build_embedding(
    n: usize,
    rotations: &[Vec<usize>],
    hint: (usize, usize),
) -> Result<Embedding, EmbeddingError> {
    Embedding::from_rotations(n, rotations, &[hint])
}

impl Embedding {
    /// Builds an embedding from clockwise rotation lists. Each component
    /// with edges needs one hint; edge ids are assigned in order of first
    /// appearance `(u, v)` with `u < v` while scanning vertices in order.
    pub fn from_rotations(
        n: usize,
        rotations: &[Vec<usize>],
        hints: &[(usize, usize)],
    ) -> Result<Self, EmbeddingError> {
        if rotations.len() != n {
            return Err(EmbeddingError::RotationCount {
                expected: n,
                found: rotations.len(),
            });
        }
        let mut half: HashMap<(usize, usize), usize> = HashMap::new();
        let mut origin = Vec::new();
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if v >= n {
                    return Err(EmbeddingError::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(EmbeddingError::SelfLoop(u));
                }
                if u < v {
                    if half.contains_key(&(u, v)) {
                        return Err(EmbeddingError::DuplicateEdge { u, v });
                    }
                    let h = origin.len();
                    origin.push(u);
                    origin.push(v);
                    half.insert((u, v), h);
                    half.insert((v, u), h + 1);
                }
            }
        }
        let h_count = origin.len();
        let mut placed = vec![false; h_count];
        let mut next = vec![NIL; h_count];
        let mut first = vec![NIL; n];
        for (u, rot) in rotations.iter().enumerate() {
            let mut ring = Vec::with_capacity(rot.len());
            for &v in rot {
                let h = match half.get(&(u, v)) {
                    Some(&h) => h,
                    None => return Err(EmbeddingError::AsymmetricRotation { u, v }),
                };
                if placed[h] {
                    return Err(EmbeddingError::DuplicateEdge {
                        u: u.min(v),
                        v: u.max(v),
                    });
                }
                placed[h] = true;
                ring.push(h);
            }
            for i in 0..ring.len() {
                next[ring[i]] = ring[(i + 1) % ring.len()];
            }
            if let Some(&h) = ring.first() {
                first[u] = h;
            }
        }
        if let Some(h) = placed.iter().position(|p| !p) {
            // `h` is listed by its twin's origin only.
            return Err(EmbeddingError::AsymmetricRotation {
                u: origin[h ^ 1],
                v: origin[h],
            });
        }
        let mut emb = Self::assemble(n, origin, next, first)?;
        emb.apply_hints(hints)?;
        Ok(emb)
    }

    /// Assembles an embedding from raw half-edge arrays and extracts faces.
    /// Outer faces are left unset.
    pub(crate) fn assemble(
        n: usize,
        origin: Vec<usize>,
        next: Vec<usize>,
        first: Vec<usize>,
    ) -> Result<Self, EmbeddingError> {
        let h_count = origin.len();
        debug_assert_eq!(h_count % 2, 0);
        if h_count.max(n) >= NIL_IX as usize {
            return Err(EmbeddingError::TooLarge(h_count));
        }
        let origin: Vec<Ix> = origin.into_iter().map(narrow).collect();
        let next: Vec<Ix> = next.into_iter().map(narrow).collect();
        let first: Vec<Ix> = first.into_iter().map(narrow).collect();
        let mut prev = vec![NIL_IX; h_count];
        let mut degree = vec![0; n];
        for h in 0..h_count {
            prev[next[h] as usize] = h as Ix;
            degree[origin[h] as usize] += 1;
        }

        let mut face = vec![NIL_IX; h_count];
        let mut face_start = Vec::new();
        let mut face_len = Vec::new();
        for h in 0..h_count {
            if face[h] != NIL_IX {
                continue;
            }
            let id = face_start.len() as Ix;
            let mut g = h;
            let mut len = 0;
            loop {
                face[g] = id;
                len += 1;
                g = next[g ^ 1] as usize;
                if g == h {
                    break;
                }
            }
            face_start.push(h as Ix);
            face_len.push(len);
        }

        let mut dsu = Dsu::new(n);
        for e in 0..h_count / 2 {
            dsu.union(origin[2 * e] as usize, origin[2 * e + 1] as usize);
        }
        let mut label = vec![NIL_IX; n];
        let mut component = vec![NIL_IX; n];
        let mut component_count = 0;
        for v in 0..n {
            let r = dsu.find(v);
            if label[r] == NIL_IX {
                label[r] = component_count as Ix;
                component_count += 1;
            }
            component[v] = label[r];
        }

        let emb = Embedding {
            n,
            outer: vec![false; face_start.len()],
            origin,
            next,
            prev,
            first,
            degree,
            face,
            face_start,
            face_len,
            outer_face: None,
            hints: Vec::new(),
            component,
            component_count,
        };
        emb.check_euler()?;
        Ok(emb)
    }

    fn check_euler(&self) -> Result<(), EmbeddingError> {
        let c = self.component_count;
        let mut vs = vec![0usize; c];
        let mut es = vec![0usize; c];
        let mut fs = vec![0usize; c];
        let mut witness = vec![NIL; c];
        for v in 0..self.n {
            let k = self.component[v] as usize;
            vs[k] += 1;
            if witness[k] == NIL {
                witness[k] = v;
            }
        }
        for e in 0..self.m() {
            es[self.component[self.origin[2 * e] as usize] as usize] += 1;
        }
        for &h in &self.face_start {
            fs[self.component[self.origin[h as usize] as usize] as usize] += 1;
        }
        for k in 0..c {
            if es[k] > 0 && vs[k] + fs[k] != es[k] + 2 {
                return Err(EmbeddingError::EulerViolation {
                    vertex: witness[k],
                    v: vs[k],
                    e: es[k],
                    f: fs[k],
                });
            }
        }
        Ok(())
    }

    fn apply_hints(&mut self, hints: &[(usize, usize)]) -> Result<(), EmbeddingError> {
        let mut comp_outer = vec![NIL; self.component_count];
        for &(u, v) in hints {
            if u >= self.n || v >= self.n {
                return Err(EmbeddingError::BadHint { u, v });
            }
            let h = self
                .half_edge(u, v)
                .ok_or(EmbeddingError::BadHint { u, v })?;
            let f = self.face[h] as usize;
            let k = self.component[u] as usize;
            if comp_outer[k] != NIL && comp_outer[k] != f {
                return Err(EmbeddingError::ConflictingHints(u));
            }
            comp_outer[k] = f;
        }
        for v in 0..self.n {
            if self.degree[v] > 0 && comp_outer[self.component[v] as usize] == NIL {
                return Err(EmbeddingError::MissingOuterFace(v));
            }
        }
        for &f in comp_outer.iter().filter(|&&f| f != NIL) {
            self.outer[f] = true;
        }
        self.hints = hints.to_vec();
        self.outer_face = hints
            .first()
            .map(|&(u, v)| self.face[self.half_edge(u, v).unwrap()] as usize);
        Ok(())
    }

    /// Marks outer faces from per-face flags and derives canonical hints
    /// (the smallest half-edge of each outer face, in component order).
    pub(crate) fn set_outer_faces(&mut self, outer: Vec<bool>) {
        debug_assert_eq!(outer.len(), self.face_count());
        self.outer = outer;
        let mut hint_of = vec![NIL; self.component_count];
        for h in 0..self.origin.len() {
            let f = self.face[h] as usize;
            if self.outer[f] && self.face_start[f] as usize == h {
                let k = self.component[self.origin[h] as usize] as usize;
                if hint_of[k] == NIL {
                    hint_of[k] = h;
                }
            }
        }
        self.hints = hint_of
            .into_iter()
            .filter(|&h| h != NIL)
            .map(|h| (self.origin[h] as usize, self.origin[h ^ 1] as usize))
            .collect();
        self.outer_face = self
            .hints
            .first()
            .map(|&(u, v)| self.face[self.half_edge(u, v).unwrap()] as usize);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.origin.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_start.len()
    }

    pub fn origin(&self, h: HalfEdgeId) -> VertexId {
        self.origin[h] as usize
    }

    pub fn target(&self, h: HalfEdgeId) -> VertexId {
        self.origin[h ^ 1] as usize
    }

    pub fn twin(&self, h: HalfEdgeId) -> HalfEdgeId {
        h ^ 1
    }

    /// Clockwise successor of `h` around its origin.
    pub fn next_around(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.next[h] as usize
    }

    pub fn prev_around(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.prev[h] as usize
    }

    /// Successor of `h` along the boundary of the face on its left.
    pub fn face_next(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.next[h ^ 1] as usize
    }

    pub fn face_of(&self, h: HalfEdgeId) -> FaceId {
        self.face[h] as usize
    }

    pub fn face_len(&self, f: FaceId) -> usize {
        self.face_len[f] as usize
    }

    pub fn face_start(&self, f: FaceId) -> HalfEdgeId {
        self.face_start[f] as usize
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degree[v] as usize
    }

    pub fn max_degree(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0) as usize
    }

    /// First half-edge of the rotation at `v`, if `v` has any edge.
    pub fn first_half_edge(&self, v: VertexId) -> Option<HalfEdgeId> {
        (self.first[v] != NIL_IX).then_some(self.first[v] as usize)
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.origin[2 * e] as usize, self.origin[2 * e + 1] as usize)
    }

    /// The faces on the two sides of `e`; equal for bridges.
    pub fn faces_of_edge(&self, e: EdgeId) -> (FaceId, FaceId) {
        (self.face[2 * e] as usize, self.face[2 * e + 1] as usize)
    }

    /// Half-edges leaving `v` in clockwise order.
    pub fn around(&self, v: VertexId) -> Around<'_> {
        Around {
            emb: self,
            start: wide(self.first[v]),
            cur: wide(self.first[v]),
        }
    }

    /// Half-edges of face `f` in boundary order.
    pub fn face_boundary(&self, f: FaceId) -> FaceWalk<'_> {
        FaceWalk {
            emb: self,
            start: self.face_start[f] as usize,
            cur: self.face_start[f] as usize,
        }
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.around(v).map(move |h| self.origin[h ^ 1] as usize)
    }

    /// Half-edge `u -> v`, if the edge exists.
    pub fn half_edge(&self, u: VertexId, v: VertexId) -> Option<HalfEdgeId> {
        self.around(u).find(|&h| self.origin[h ^ 1] as usize == v)
    }

    /// Clockwise rotation lists, each starting at the vertex's first half-edge.
    pub fn rotations(&self) -> Vec<Vec<VertexId>> {
        (0..self.n).map(|v| self.neighbors(v).collect()).collect()
    }

    pub fn is_outer(&self, f: FaceId) -> bool {
        self.outer[f]
    }

    /// The outer face designated by the first hint.
    pub fn outer_face(&self) -> Option<FaceId> {
        self.outer_face
    }

    /// Outer faces of all components with edges.
    pub fn outer_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.face_count()).filter(move |&f| self.outer[f])
    }

    /// Directed-edge hints designating the outer faces.
    pub fn hints(&self) -> &[(usize, usize)] {
        &self.hints
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component[v] as usize
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        (0..self.m()).map(|e| self.edge_endpoints(e)).collect()
    }

    /// Abstract graph with the same vertex and edge ids.
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.n, self.edge_list())
    }

    /// The same embedding with vertices numbered in breadth-first order,
    /// so that neighbors get nearby ids. Edge ids follow the usual scan
    /// convention for the new numbering. Returns the embedding, the old id
    /// of every new vertex and the old id of every new edge.
    pub fn relabel_bfs(&self) -> (Embedding, Vec<VertexId>, Vec<EdgeId>) {
        let n = self.n;
        let mut new_of = vec![NIL; n];
        let mut order = Vec::with_capacity(n);
        for s in 0..n {
            if new_of[s] != NIL {
                continue;
            }
            new_of[s] = order.len();
            order.push(s);
            let mut head = order.len() - 1;
            while head < order.len() {
                let u = order[head];
                head += 1;
                for v in self.neighbors(u) {
                    if new_of[v] == NIL {
                        new_of[v] = order.len();
                        order.push(v);
                    }
                }
            }
        }

        let hc = self.half_edge_count();
        let mut edge_new = vec![NIL; self.m()];
        let mut edge_old = Vec::with_capacity(self.m());
        for &u in &order {
            for h in self.around(u) {
                if edge_new[h / 2] == NIL {
                    edge_new[h / 2] = edge_old.len();
                    edge_old.push(h / 2);
                }
            }
        }
        // The half-edge leaving the smaller new endpoint comes first.
        let new_half = |h: usize| {
            let lower = new_of[self.origin[h] as usize] < new_of[self.origin[h ^ 1] as usize];
            2 * edge_new[h / 2] + usize::from(!lower)
        };
        let mut origin = vec![0; hc];
        let mut next = vec![0; hc];
        let mut old_half = vec![0; hc];
        for h in 0..hc {
            let g = new_half(h);
            origin[g] = new_of[self.origin[h] as usize];
            next[g] = new_half(self.next[h] as usize);
            old_half[g] = h;
        }
        let first = order
            .iter()
            .map(|&u| {
                if self.first[u] == NIL_IX {
                    NIL
                } else {
                    new_half(self.first[u] as usize)
                }
            })
            .collect();
        let mut out = Embedding::assemble(n, origin, next, first)
            .expect("relabeling keeps the embedding plane");
        let outer = (0..out.face_count())
            .map(|f| self.outer[self.face[old_half[out.face_start[f] as usize]] as usize])
            .collect();
        out.set_outer_faces(outer);
        (out, order, edge_old)
    }

    /// Removes a set of edges, keeping the rotation order of the survivors.
    /// Surviving edges are renumbered densely in their original order.
    pub fn delete_edges(&self, edges: &[EdgeId]) -> Embedding {
        self.delete_edges_mapped(edges).0
    }

    /// As [`Embedding::delete_edges`], also returning the old id of every
    /// surviving edge.
    pub fn delete_edges_mapped(&self, edges: &[EdgeId]) -> (Embedding, Vec<EdgeId>) {
        let (emb, kept, _) = self.delete_edges_exterior(edges);
        (emb, kept)
    }

    /// Also flags the new faces that lie in the unbounded region of the
    /// original drawing, i.e. those merged with an old outer face.
    pub(crate) fn delete_edges_exterior(
        &self,
        edges: &[EdgeId],
    ) -> (Embedding, Vec<EdgeId>, Vec<bool>) {
        let mut deleted = vec![false; self.m()];
        for &e in edges {
            deleted[e] = true;
        }
        let mut new_id = vec![NIL; self.m()];
        let mut kept = Vec::new();
        for e in 0..self.m() {
            if !deleted[e] {
                new_id[e] = kept.len();
                kept.push(e);
            }
        }
        let map_h = |h: usize| 2 * new_id[h / 2] + (h & 1);

        let mut origin = vec![NIL; 2 * kept.len()];
        let mut next = vec![NIL; 2 * kept.len()];
        let mut first = vec![NIL; self.n];
        for v in 0..self.n {
            let ring: Vec<usize> = self
                .around(v)
                .filter(|&h| !deleted[h / 2])
                .map(map_h)
                .collect();
            for i in 0..ring.len() {
                origin[ring[i]] = v;
                next[ring[i]] = ring[(i + 1) % ring.len()];
            }
            if let Some(&h) = ring.first() {
                first[v] = h;
            }
        }
        let mut emb = Embedding::assemble(self.n, origin, next, first)
            .expect("deleting edges keeps the embedding plane");

        // Old faces merge across deleted edges into the regions of the new
        // drawing. Regions holding an old outer face are unbounded; every
        // other region is enclosed by a non-outer face of exactly one
        // component, and all remaining boundary cycles in it are outer.
        let mut region = Dsu::new(self.face_count());
        for e in (0..self.m()).filter(|&e| deleted[e]) {
            region.union(self.face[2 * e] as usize, self.face[2 * e + 1] as usize);
        }
        let nf = emb.face_count();
        let region_of: Vec<usize> = (0..nf)
            .map(|f| {
                let h = emb.face_start[f] as usize;
                region.find(self.face[kept[h / 2] * 2 + (h & 1)] as usize)
            })
            .collect();
        let mut region_faces: HashMap<usize, Vec<usize>> = HashMap::new();
        for f in 0..nf {
            region_faces.entry(region_of[f]).or_default().push(f);
        }
        let comp_of_face = |emb: &Embedding, f: usize| {
            emb.component[emb.origin[emb.face_start[f] as usize] as usize] as usize
        };
        let mut comp_faces = vec![Vec::new(); emb.component_count];
        for f in 0..nf {
            comp_faces[comp_of_face(&emb, f)].push(f);
        }
        let mut comp_outer = vec![NIL; emb.component_count];
        let mut seen_region = vec![false; self.face_count()];
        let mut queue = Vec::new();
        let mut exterior = vec![false; nf];
        for f in (0..self.face_count()).filter(|&f| self.outer[f]) {
            let r = region.find(f);
            if seen_region[r] {
                continue;
            }
            seen_region[r] = true;
            for &g in region_faces.get(&r).into_iter().flatten() {
                exterior[g] = true;
                let k = comp_of_face(&emb, g);
                if comp_outer[k] == NIL {
                    comp_outer[k] = g;
                    queue.push(k);
                }
            }
        }
        loop {
            while let Some(k) = queue.pop() {
                for &g in &comp_faces[k] {
                    let r = region_of[g];
                    if g == comp_outer[k] || seen_region[r] {
                        continue;
                    }
                    seen_region[r] = true;
                    for &g2 in &region_faces[&r] {
                        let k2 = comp_of_face(&emb, g2);
                        if k2 != k && comp_outer[k2] == NIL {
                            comp_outer[k2] = g2;
                            queue.push(k2);
                        }
                    }
                }
            }
            // Only reachable for components the nesting walk cannot place.
            match (0..emb.component_count)
                .find(|&k| comp_outer[k] == NIL && !comp_faces[k].is_empty())
            {
                Some(k) => {
                    comp_outer[k] = comp_faces[k][0];
                    queue.push(k);
                }
                None => break,
            }
        }
        let mut outer = vec![false; nf];
        for &f in comp_outer.iter().filter(|&&f| f != NIL) {
            outer[f] = true;
        }
        emb.set_outer_faces(outer);
        (emb, kept, exterior)
    }
}

pub struct Around<'a> {
    emb: &'a Embedding,
    start: usize,
    cur: usize,
}

impl Iterator for Around<'_> {
    type Item = HalfEdgeId;

    fn next(&mut self) -> Option<HalfEdgeId> {
        if self.cur == NIL {
            return None;
        }
        let h = self.cur;
        self.cur = self.emb.next[h] as usize;
        if self.cur == self.start {
            self.cur = NIL;
        }
        Some(h)
    }
}

pub struct FaceWalk<'a> {
    emb: &'a Embedding,
    start: usize,
    cur: usize,
}

impl Iterator for FaceWalk<'_> {
    type Item = HalfEdgeId;

    fn next(&mut self) -> Option<HalfEdgeId> {
        if self.cur == NIL {
            return None;
        }
        let h = self.cur;
        self.cur = self.emb.face_next(h);
        if self.cur == self.start {
            self.cur = NIL;
        }
        Some(h)
    }
}
