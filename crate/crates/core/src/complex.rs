//! Combinatorial 0/1/2-complexes.
//!
//! A complex stores a nonempty vertex set, edges attached to vertices through
//! two named slots (the attached 0-sphere), and faces attached through a
//! boundary walk (a chosen cycle of the attaching circle). Identifiers are
//! dense integers assigned at construction; user-facing names are kept
//! separately and only matter for serialization.

use std::fmt;

use crate::error::{Error, Result};

macro_rules! id_type {
    ($name:ident, $prefix:literal) => {
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(u32);

        impl $name {
            /// Ids are dense indices scoped to one complex; callers are
            /// responsible for pairing an id with the right complex.
            pub fn from_index(i: usize) -> Self {
                $name(i as u32)
            }

            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }
    };
}

id_type!(VertexId, "v");
id_type!(EdgeId, "e");
id_type!(FaceId, "f");

/// Traversal direction of an edge: `Forward` runs slot A to slot B.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum EdgeDir {
    Forward,
    Backward,
}

impl EdgeDir {
    pub fn flip(self) -> Self {
        match self {
            EdgeDir::Forward => EdgeDir::Backward,
            EdgeDir::Backward => EdgeDir::Forward,
        }
    }

    pub fn sign(self) -> char {
        match self {
            EdgeDir::Forward => '+',
            EdgeDir::Backward => '-',
        }
    }
}

/// An edge together with one of its two orientations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub edge: EdgeId,
    pub dir: EdgeDir,
}

impl OrientedEdge {
    pub fn forward(edge: EdgeId) -> Self {
        OrientedEdge { edge, dir: EdgeDir::Forward }
    }

    pub fn backward(edge: EdgeId) -> Self {
        OrientedEdge { edge, dir: EdgeDir::Backward }
    }

    pub fn inverse(self) -> Self {
        OrientedEdge { edge: self.edge, dir: self.dir.flip() }
    }
}

impl fmt::Debug for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.edge, self.dir.sign())
    }
}

/// An edge record: the attaching map of a 0-sphere, stored as two slots.
/// The edge is a loop exactly when both slots hold the same vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeRec {
    pub slot_a: VertexId,
    pub slot_b: VertexId,
}

impl EdgeRec {
    pub fn is_loop(&self) -> bool {
        self.slot_a == self.slot_b
    }

    /// Slot pair in traversal order for the given direction.
    pub fn ends(&self, dir: EdgeDir) -> (VertexId, VertexId) {
        match dir {
            EdgeDir::Forward => (self.slot_a, self.slot_b),
            EdgeDir::Backward => (self.slot_b, self.slot_a),
        }
    }
}

/// A face record: one chosen boundary walk of the attaching circle.
/// Consecutive oriented edges must chain head-to-tail, cyclically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceRec {
    pub walk: Vec<OrientedEdge>,
}

impl FaceRec {
    /// The stored walk as a cyclic path. Walks are nonempty in valid complexes.
    pub fn walk_path(&self, c: &Complex2) -> crate::path::PathSeq {
        debug_assert!(!self.walk.is_empty());
        crate::path::PathSeq::new(c.tail(self.walk[0]), self.walk.clone())
    }
}

/// Dimension marker. A 0-complex has no edges, a 1-complex no faces.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dim {
    Zero,
    One,
    Two,
}

impl Dim {
    pub fn as_u8(self) -> u8 {
        match self {
            Dim::Zero => 0,
            Dim::One => 1,
            Dim::Two => 2,
        }
    }
}

#[derive(Clone, Debug, Default)]
struct CellNames {
    vertices: Vec<String>,
    edges: Vec<String>,
    faces: Vec<String>,
}

/// A finite combinatorial complex of dimension at most 2.
///
/// Immutable once constructed; all analysis operations are read-only.
#[derive(Clone, Debug)]
pub struct Complex2 {
    dim: Dim,
    n_vertices: usize,
    pub(crate) edges: Vec<EdgeRec>,
    pub(crate) faces: Vec<FaceRec>,
    names: Option<CellNames>,
}

impl PartialEq for Complex2 {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.n_vertices == other.n_vertices
            && self.edges == other.edges
            && self.faces == other.faces
            && self.vertices().all(|v| self.vertex_name(v) == other.vertex_name(v))
            && self.edge_ids().all(|e| self.edge_name(e) == other.edge_name(e))
            && self.face_ids().all(|f| self.face_name(f) == other.face_name(f))
    }
}

impl Eq for Complex2 {}

impl Complex2 {
    pub fn builder(dim: Dim) -> ComplexBuilder {
        ComplexBuilder::new(dim)
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub(crate) fn is_named(&self) -> bool {
        self.names.is_some()
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator {
        (0..self.n_vertices).map(VertexId::from_index)
    }

    pub fn edge_ids(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator {
        (0..self.edges.len()).map(EdgeId::from_index)
    }

    pub fn face_ids(&self) -> impl DoubleEndedIterator<Item = FaceId> + ExactSizeIterator {
        (0..self.faces.len()).map(FaceId::from_index)
    }

    pub fn oriented_edges(&self) -> impl Iterator<Item = OrientedEdge> {
        (0..self.edges.len()).flat_map(|i| {
            let e = EdgeId::from_index(i);
            [OrientedEdge::forward(e), OrientedEdge::backward(e)]
        })
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.n_vertices
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.index() < self.edges.len()
    }

    pub fn contains_face(&self, f: FaceId) -> bool {
        f.index() < self.faces.len()
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeRec {
        &self.edges[e.index()]
    }

    pub fn face(&self, f: FaceId) -> &FaceRec {
        &self.faces[f.index()]
    }

    pub fn tail(&self, oe: OrientedEdge) -> VertexId {
        self.edge(oe.edge).ends(oe.dir).0
    }

    pub fn head(&self, oe: OrientedEdge) -> VertexId {
        self.edge(oe.edge).ends(oe.dir).1
    }

    pub fn vertex_name(&self, v: VertexId) -> String {
        match &self.names {
            Some(n) => n.vertices[v.index()].clone(),
            None => format!("v{}", v.index()),
        }
    }

    pub fn edge_name(&self, e: EdgeId) -> String {
        match &self.names {
            Some(n) => n.edges[e.index()].clone(),
            None => format!("e{}", e.index()),
        }
    }

    pub fn face_name(&self, f: FaceId) -> String {
        match &self.names {
            Some(n) => n.faces[f.index()].clone(),
            None => format!("f{}", f.index()),
        }
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices().find(|&v| self.vertex_name(v) == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edge_ids().find(|&e| self.edge_name(e) == name)
    }

    pub fn face_by_name(&self, name: &str) -> Option<FaceId> {
        self.face_ids().find(|&f| self.face_name(f) == name)
    }

    /// Number of edge incidences at `v`, loops counted twice. Equals the
    /// number of oriented edges leaving `v`.
    pub fn vertex_degree(&self, v: VertexId) -> Result<usize> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut d = 0;
        for e in &self.edges {
            if e.slot_a == v {
                d += 1;
            }
            if e.slot_b == v {
                d += 1;
            }
        }
        Ok(d)
    }

    /// Length of the boundary walk of `f`.
    pub fn face_degree(&self, f: FaceId) -> Result<usize> {
        if !self.contains_face(f) {
            return Err(Error::UnknownFace(f));
        }
        Ok(self.faces[f.index()].walk.len())
    }

    /// ‖vertices‖ − ‖edges‖ + ‖faces‖.
    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Oriented edges leaving `v`, in id order.
    pub fn leaving(&self, v: VertexId) -> Vec<OrientedEdge> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let id = EdgeId::from_index(i);
            if e.slot_a == v {
                out.push(OrientedEdge::forward(id));
            }
            if e.slot_b == v {
                out.push(OrientedEdge::backward(id));
            }
        }
        out
    }

    /// Leaving oriented edges for every vertex in one pass.
    pub fn leaving_all(&self) -> Vec<Vec<OrientedEdge>> {
        let mut out = vec![Vec::new(); self.n_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            let id = EdgeId::from_index(i);
            out[e.slot_a.index()].push(OrientedEdge::forward(id));
            out[e.slot_b.index()].push(OrientedEdge::backward(id));
        }
        out
    }

    /// Degree of every vertex in one pass, loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.n_vertices];
        for e in &self.edges {
            out[e.slot_a.index()] += 1;
            out[e.slot_b.index()] += 1;
        }
        out
    }

    /// For every edge, the list of `(face, walk position)` occurrences across
    /// all boundary walks, in face/position order.
    pub fn edge_face_occurrences(&self) -> Vec<Vec<(FaceId, usize)>> {
        let mut occ = vec![Vec::new(); self.edges.len()];
        for (fi, face) in self.faces.iter().enumerate() {
            for (pos, oe) in face.walk.iter().enumerate() {
                occ[oe.edge.index()].push((FaceId::from_index(fi), pos));
            }
        }
        occ
    }

    /// Faces incident to edge `e` (deduplicated, id order).
    pub fn faces_at_edge(&self, e: EdgeId) -> Vec<FaceId> {
        let mut out: Vec<FaceId> = Vec::new();
        for (fi, face) in self.faces.iter().enumerate() {
            if face.walk.iter().any(|oe| oe.edge == e) {
                out.push(FaceId::from_index(fi));
            }
        }
        out
    }

    /// Component index per vertex, using edge connectivity only.
    pub(crate) fn vertex_components(&self) -> (Vec<usize>, usize) {
        let mut uf = crate::util::UnionFind::new(self.n_vertices);
        for e in &self.edges {
            let (a, b) = (e.slot_a.index(), e.slot_b.index());
            if a < self.n_vertices && b < self.n_vertices {
                uf.union(a, b);
            }
        }
        let mut comp = vec![usize::MAX; self.n_vertices];
        let mut count = 0;
        for v in 0..self.n_vertices {
            let r = uf.find(v);
            if comp[r] == usize::MAX {
                comp[r] = count;
                count += 1;
            }
            comp[v] = comp[r];
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n_vertices > 0 && self.vertex_components().1 == 1
    }

    /// Splits the complex into its connected components. Each component
    /// carries its induced edges and every face whose walk lies inside it.
    pub fn connected_components(&self) -> Vec<Complex2> {
        let (comp, count) = self.vertex_components();
        let mut out = Vec::with_capacity(count);
        for c in 0..count {
            let mut b = ComplexBuilder::new(self.dim);
            let mut vmap = vec![None; self.n_vertices];
            for v in self.vertices() {
                if comp[v.index()] == c {
                    vmap[v.index()] = Some(b.named_vertex(self.vertex_name(v)));
                }
            }
            let mut emap = vec![None; self.edges.len()];
            for e in self.edge_ids() {
                let rec = self.edge(e);
                if let (Some(a), Some(bv)) = (vmap[rec.slot_a.index()], vmap[rec.slot_b.index()]) {
                    emap[e.index()] = Some(b.named_edge(self.edge_name(e), a, bv));
                }
            }
            for f in self.face_ids() {
                let walk = &self.face(f).walk;
                if walk.iter().all(|oe| emap[oe.edge.index()].is_some()) {
                    let new_walk = walk
                        .iter()
                        .map(|oe| OrientedEdge { edge: emap[oe.edge.index()].unwrap(), dir: oe.dir })
                        .collect();
                    b.named_face(self.face_name(f), new_walk);
                }
            }
            out.push(b.build_unchecked());
        }
        out
    }

    /// Checks every structural invariant; an empty report means the complex
    /// is well formed.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.n_vertices == 0 {
            violations.push(Violation::NoVertices);
        }
        if self.dim == Dim::Zero && !self.edges.is_empty() {
            violations.push(Violation::DimensionForbidsEdges);
        }
        if self.dim != Dim::Two && !self.faces.is_empty() {
            violations.push(Violation::DimensionForbidsFaces);
        }
        for (i, e) in self.edges.iter().enumerate() {
            let id = EdgeId::from_index(i);
            if e.slot_a.index() >= self.n_vertices {
                violations.push(Violation::DanglingEndpoint { edge: id, slot: 'a' });
            }
            if e.slot_b.index() >= self.n_vertices {
                violations.push(Violation::DanglingEndpoint { edge: id, slot: 'b' });
            }
        }
        for (i, f) in self.faces.iter().enumerate() {
            let id = FaceId::from_index(i);
            if f.walk.is_empty() {
                violations.push(Violation::EmptyWalk { face: id });
                continue;
            }
            let mut walk_ok = true;
            for (pos, oe) in f.walk.iter().enumerate() {
                if oe.edge.index() >= self.edges.len() {
                    violations.push(Violation::UnknownWalkEdge { face: id, position: pos });
                    walk_ok = false;
                }
            }
            if !walk_ok {
                continue;
            }
            let n = f.walk.len();
            for pos in 0..n {
                let here = f.walk[pos];
                let next = f.walk[(pos + 1) % n];
                if self.head(here) != self.tail(next) {
                    violations.push(Violation::BrokenWalk { face: id, position: pos });
                }
            }
        }
        if let Some(names) = &self.names {
            for (kind, list) in [('v', &names.vertices), ('e', &names.edges), ('f', &names.faces)] {
                let mut seen = std::collections::HashSet::new();
                for name in list {
                    if !seen.insert(name.clone()) {
                        violations.push(Violation::DuplicateName { kind, name: name.clone() });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

/// One broken invariant, naming the offending cell and rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    NoVertices,
    DimensionForbidsEdges,
    DimensionForbidsFaces,
    DanglingEndpoint { edge: EdgeId, slot: char },
    EmptyWalk { face: FaceId },
    UnknownWalkEdge { face: FaceId, position: usize },
    BrokenWalk { face: FaceId, position: usize },
    DuplicateName { kind: char, name: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "vertex set may not be empty"),
            Violation::DimensionForbidsEdges => write!(f, "0-complex may not have edges"),
            Violation::DimensionForbidsFaces => write!(f, "complex of dimension < 2 may not have faces"),
            Violation::DanglingEndpoint { edge, slot } => {
                write!(f, "dangling endpoint: edge {edge:?} slot {slot} references a missing vertex")
            }
            Violation::EmptyWalk { face } => write!(f, "face {face:?} has an empty boundary walk"),
            Violation::UnknownWalkEdge { face, position } => {
                write!(f, "face {face:?} walk position {position} references a missing edge")
            }
            Violation::BrokenWalk { face, position } => {
                write!(f, "face {face:?} walk breaks between positions {position} and next")
            }
            Violation::DuplicateName { kind, name } => write!(f, "duplicate {kind} name {name:?}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental construction of a complex. `build` validates, `build_unchecked`
/// returns the raw complex for validation-reporting paths.
#[derive(Clone, Debug)]
pub struct ComplexBuilder {
    dim: Dim,
    vertices: Vec<Option<String>>,
    edges: Vec<EdgeRec>,
    edge_names: Vec<Option<String>>,
    faces: Vec<FaceRec>,
    face_names: Vec<Option<String>>,
}

impl ComplexBuilder {
    pub fn new(dim: Dim) -> Self {
        ComplexBuilder {
            dim,
            vertices: Vec::new(),
            edges: Vec::new(),
            edge_names: Vec::new(),
            faces: Vec::new(),
            face_names: Vec::new(),
        }
    }

    pub fn vertex(&mut self) -> VertexId {
        self.vertices.push(None);
        VertexId::from_index(self.vertices.len() - 1)
    }

    pub fn named_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(Some(name.into()));
        VertexId::from_index(self.vertices.len() - 1)
    }

    pub fn edge(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        self.edges.push(EdgeRec { slot_a: a, slot_b: b });
        self.edge_names.push(None);
        EdgeId::from_index(self.edges.len() - 1)
    }

    pub fn named_edge(&mut self, name: impl Into<String>, a: VertexId, b: VertexId) -> EdgeId {
        let id = self.edge(a, b);
        self.edge_names[id.index()] = Some(name.into());
        id
    }

    pub fn face(&mut self, walk: Vec<OrientedEdge>) -> FaceId {
        self.faces.push(FaceRec { walk });
        self.face_names.push(None);
        FaceId::from_index(self.faces.len() - 1)
    }

    pub fn named_face(&mut self, name: impl Into<String>, walk: Vec<OrientedEdge>) -> FaceId {
        let id = self.face(walk);
        self.face_names[id.index()] = Some(name.into());
        id
    }

    pub fn build_unchecked(self) -> Complex2 {
        let any_named = self.vertices.iter().any(Option::is_some)
            || self.edge_names.iter().any(Option::is_some)
            || self.face_names.iter().any(Option::is_some);
        let names = any_named.then(|| CellNames {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, n)| n.clone().unwrap_or_else(|| format!("v{i}")))
                .collect(),
            edges: self
                .edge_names
                .iter()
                .enumerate()
                .map(|(i, n)| n.clone().unwrap_or_else(|| format!("e{i}")))
                .collect(),
            faces: self
                .face_names
                .iter()
                .enumerate()
                .map(|(i, n)| n.clone().unwrap_or_else(|| format!("f{i}")))
                .collect(),
        });
        Complex2 {
            dim: self.dim,
            n_vertices: self.vertices.len(),
            edges: self.edges,
            faces: self.faces,
            names,
        }
    }

    pub fn build(self) -> std::result::Result<Complex2, ValidationReport> {
        let c = self.build_unchecked();
        let report = c.validate();
        if report.is_ok() {
            Ok(c)
        } else {
            Err(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::tetrahedron;

    #[test]
    fn minimal_zero_complex_is_valid() {
        let mut b = Complex2::builder(Dim::Zero);
        b.vertex();
        let c = b.build_unchecked();
        assert!(c.validate().is_ok());
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn dangling_endpoint_is_reported() {
        let mut b = Complex2::builder(Dim::One);
        let v = b.vertex();
        b.edge(v, VertexId::from_index(7));
        let c = b.build_unchecked();
        let report = c.validate();
        assert!(!report.is_ok());
        assert!(matches!(report.violations[0], Violation::DanglingEndpoint { slot: 'b', .. }));
    }

    #[test]
    fn tetrahedron_is_valid_and_chi_two() {
        let t = tetrahedron();
        let c = t.complex();
        assert!(c.validate().is_ok());
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.edge_count(), 6);
        assert_eq!(c.face_count(), 4);
        assert_eq!(c.euler_characteristic(), 2);
    }

    #[test]
    fn degrees() {
        let mut b = Complex2::builder(Dim::One);
        let v = b.vertex();
        let w = b.vertex();
        b.edge(v, v); // loop
        let c = b.build_unchecked();
        assert_eq!(c.vertex_degree(v).unwrap(), 2);
        assert_eq!(c.vertex_degree(w).unwrap(), 0);
        assert!(c.vertex_degree(VertexId::from_index(9)).is_err());

        let t = tetrahedron();
        for v in t.complex().vertices() {
            assert_eq!(t.complex().vertex_degree(v).unwrap(), 3);
        }
        for f in t.complex().face_ids() {
            assert_eq!(t.complex().face_degree(f).unwrap(), 3);
        }
    }

    #[test]
    fn loop_walk_counts_multiplicity() {
        // 1 vertex, 1 loop, 1 face traversing the loop twice.
        let mut b = Complex2::builder(Dim::Two);
        let v = b.vertex();
        let e = b.edge(v, v);
        let f = b.face(vec![OrientedEdge::forward(e), OrientedEdge::forward(e)]);
        let c = b.build_unchecked();
        assert!(c.validate().is_ok());
        assert_eq!(c.face_degree(f).unwrap(), 2);
    }

    #[test]
    fn components() {
        let mut b = Complex2::builder(Dim::Zero);
        b.vertex();
        b.vertex();
        let c = b.build_unchecked();
        assert_eq!(c.connected_components().len(), 2);

        let t = tetrahedron();
        assert_eq!(t.complex().connected_components().len(), 1);
    }

    #[test]
    fn component_carries_faces() {
        // tetrahedron plus an isolated vertex
        let t = tetrahedron();
        let src = t.complex();
        let mut b = Complex2::builder(Dim::Two);
        let mut vs = Vec::new();
        for v in src.vertices() {
            vs.push(b.named_vertex(src.vertex_name(v)));
        }
        b.vertex();
        for e in src.edge_ids() {
            let rec = src.edge(e);
            b.edge(vs[rec.slot_a.index()], vs[rec.slot_b.index()]);
        }
        for f in src.face_ids() {
            b.face(src.face(f).walk.clone());
        }
        let c = b.build_unchecked();
        let comps = c.connected_components();
        assert_eq!(comps.len(), 2);
        let sizes: Vec<usize> = comps.iter().map(|k| k.face_count()).collect();
        assert!(sizes.contains(&4) && sizes.contains(&0));
    }

    #[test]
    fn handshake_on_tetrahedron() {
        let t = tetrahedron();
        let c = t.complex();
        let total: usize = c.vertices().map(|v| c.vertex_degree(v).unwrap()).sum();
        assert_eq!(total, 2 * c.edge_count());
    }
}
