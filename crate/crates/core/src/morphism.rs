//! Morphisms of complexes and isomorphism search.
//!
//! A morphism carries a vertex map, a per-edge target plus slot matching (the
//! isomorphism of the attached 0-spheres), and a per-face target plus a
//! dihedral alignment of the attaching circles (rotation offset, optional
//! reflection). The commuting conditions are checked by [`Morphism::check`].

use std::ops::ControlFlow;

use crate::complex::{Complex2, EdgeId, FaceId, OrientedEdge, VertexId};
use crate::error::{Error, Result};
use crate::path::{CycleClass, PathSeq};

/// How the two slots of an edge's 0-sphere are matched by a morphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlotMatching {
    Straight,
    Swapped,
}

impl SlotMatching {
    pub fn compose(self, then: SlotMatching) -> SlotMatching {
        if self == then {
            SlotMatching::Straight
        } else {
            SlotMatching::Swapped
        }
    }
}

/// A dihedral alignment of two combinatorial circles of the same length:
/// walk position `j` maps to `offset + j`, or to `offset - j` when reflected
/// (indices mod `len`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CircleIso {
    pub len: usize,
    pub offset: usize,
    pub reflected: bool,
}

impl CircleIso {
    pub fn identity(len: usize) -> Self {
        CircleIso { len, offset: 0, reflected: false }
    }

    /// `then ∘ self`, both alignments of circles of the same length.
    pub fn compose(self, then: CircleIso) -> Result<CircleIso> {
        if self.len != then.len {
            return Err(Error::DomainMismatch(format!(
                "circle lengths differ: {} vs {}",
                self.len, then.len
            )));
        }
        let n = self.len;
        let offset = if then.reflected {
            (then.offset + n - self.offset % n) % n
        } else {
            (self.offset + then.offset) % n
        };
        Ok(CircleIso { len: n, offset, reflected: self.reflected ^ then.reflected })
    }

    pub fn inverse(self) -> CircleIso {
        if self.reflected {
            self
        } else {
            CircleIso { len: self.len, offset: (self.len - self.offset % self.len) % self.len, reflected: false }
        }
    }
}

/// A morphism between complexes. Maps are dense vectors indexed by source id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Morphism {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<(EdgeId, SlotMatching)>,
    pub face_map: Vec<(FaceId, CircleIso)>,
}

impl Morphism {
    pub fn identity(c: &Complex2) -> Morphism {
        Morphism {
            vertex_map: c.vertices().collect(),
            edge_map: c.edge_ids().map(|e| (e, SlotMatching::Straight)).collect(),
            face_map: c
                .face_ids()
                .map(|f| (f, CircleIso::identity(c.face(f).walk.len())))
                .collect(),
        }
    }

    pub fn apply_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }

    pub fn apply_edge(&self, e: EdgeId) -> (EdgeId, SlotMatching) {
        self.edge_map[e.index()]
    }

    pub fn apply_face(&self, f: FaceId) -> (FaceId, CircleIso) {
        self.face_map[f.index()]
    }

    pub fn apply_oriented_edge(&self, oe: OrientedEdge) -> OrientedEdge {
        let (target, matching) = self.edge_map[oe.edge.index()];
        let dir = match matching {
            SlotMatching::Straight => oe.dir,
            SlotMatching::Swapped => oe.dir.flip(),
        };
        OrientedEdge { edge: target, dir }
    }

    pub fn apply_path(&self, p: &PathSeq) -> PathSeq {
        PathSeq::new(
            self.apply_vertex(p.start),
            p.steps.iter().map(|&oe| self.apply_oriented_edge(oe)).collect(),
        )
    }

    /// Image of a cycle; `target` is needed to recanonicalize.
    pub fn apply_cycle(&self, target: &Complex2, c: &CycleClass) -> CycleClass {
        CycleClass::from_cyclic_path(target, self.apply_path(c.representative()))
            .expect("image of a cyclic path is cyclic")
    }

    /// Verifies the morphism conditions between `src` and `dst`: ranges,
    /// endpoint compatibility per slot matching, and the boundary-walk
    /// condition per face alignment.
    pub fn check(&self, src: &Complex2, dst: &Complex2) -> Result<()> {
        if self.vertex_map.len() != src.vertex_count()
            || self.edge_map.len() != src.edge_count()
            || self.face_map.len() != src.face_count()
        {
            return Err(Error::DomainMismatch("map sizes differ from source complex".into()));
        }
        for &v in &self.vertex_map {
            if !dst.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        for (i, &(target, matching)) in self.edge_map.iter().enumerate() {
            if !dst.contains_edge(target) {
                return Err(Error::UnknownEdge(target));
            }
            let e = src.edge(crate::complex::EdgeId::from_index(i));
            let e2 = dst.edge(target);
            let (ia, ib) = (self.apply_vertex(e.slot_a), self.apply_vertex(e.slot_b));
            let ok = match matching {
                SlotMatching::Straight => ia == e2.slot_a && ib == e2.slot_b,
                SlotMatching::Swapped => ia == e2.slot_b && ib == e2.slot_a,
            };
            if !ok {
                return Err(Error::DomainMismatch(format!(
                    "edge e{i} endpoints do not commute with the slot matching"
                )));
            }
        }
        for (i, &(target, iso)) in self.face_map.iter().enumerate() {
            if !dst.contains_face(target) {
                return Err(Error::UnknownFace(target));
            }
            let f = crate::complex::FaceId::from_index(i);
            if !self.face_condition_holds(src, dst, f, target, iso) {
                return Err(Error::DomainMismatch(format!(
                    "face f{i} walk does not commute with the circle isomorphism"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn face_condition_holds(
        &self,
        src: &Complex2,
        dst: &Complex2,
        f: FaceId,
        target: FaceId,
        iso: CircleIso,
    ) -> bool {
        let w = &src.face(f).walk;
        let w2 = &dst.face(target).walk;
        let n = w.len();
        if w2.len() != n || iso.len != n {
            return false;
        }
        for j in 0..n {
            let img = self.apply_oriented_edge(w[j]);
            let expected = if iso.reflected {
                w2[(iso.offset + n - 1 - j % n) % n].inverse()
            } else {
                w2[(j + iso.offset) % n]
            };
            if img != expected {
                return false;
            }
        }
        true
    }

    /// Whether all three cell maps are bijections onto `dst`.
    pub fn is_bijective(&self, dst: &Complex2) -> bool {
        fn bijective(n: usize, it: impl Iterator<Item = usize>) -> bool {
            let mut seen = vec![false; n];
            let mut count = 0;
            for i in it {
                if i >= n || seen[i] {
                    return false;
                }
                seen[i] = true;
                count += 1;
            }
            count == n
        }
        bijective(dst.vertex_count(), self.vertex_map.iter().map(|v| v.index()))
            && bijective(dst.edge_count(), self.edge_map.iter().map(|(e, _)| e.index()))
            && bijective(dst.face_count(), self.face_map.iter().map(|(f, _)| f.index()))
    }

    /// Two-sided inverse, when this morphism is an isomorphism.
    pub fn inverse(&self, dst: &Complex2) -> Option<Morphism> {
        if !self.is_bijective(dst) {
            return None;
        }
        let mut vertex_map = vec![VertexId::from_index(0); self.vertex_map.len()];
        for (i, &v) in self.vertex_map.iter().enumerate() {
            vertex_map[v.index()] = VertexId::from_index(i);
        }
        let mut edge_map = vec![(EdgeId::from_index(0), SlotMatching::Straight); self.edge_map.len()];
        for (i, &(e, m)) in self.edge_map.iter().enumerate() {
            edge_map[e.index()] = (EdgeId::from_index(i), m);
        }
        let mut face_map = vec![(FaceId::from_index(0), CircleIso::identity(1)); self.face_map.len()];
        for (i, &(f, iso)) in self.face_map.iter().enumerate() {
            face_map[f.index()] = (FaceId::from_index(i), iso.inverse());
        }
        Some(Morphism { vertex_map, edge_map, face_map })
    }
}

/// `then ∘ first`. Fails if the intermediate ids or circle lengths disagree.
pub fn compose(then: &Morphism, first: &Morphism) -> Result<Morphism> {
    let mut vertex_map = Vec::with_capacity(first.vertex_map.len());
    for &v in &first.vertex_map {
        if v.index() >= then.vertex_map.len() {
            return Err(Error::DomainMismatch("vertex image outside composing domain".into()));
        }
        vertex_map.push(then.vertex_map[v.index()]);
    }
    let mut edge_map = Vec::with_capacity(first.edge_map.len());
    for &(e, m1) in &first.edge_map {
        if e.index() >= then.edge_map.len() {
            return Err(Error::DomainMismatch("edge image outside composing domain".into()));
        }
        let (e2, m2) = then.edge_map[e.index()];
        edge_map.push((e2, m1.compose(m2)));
    }
    let mut face_map = Vec::with_capacity(first.face_map.len());
    for &(f, iso1) in &first.face_map {
        if f.index() >= then.face_map.len() {
            return Err(Error::DomainMismatch("face image outside composing domain".into()));
        }
        let (f2, iso2) = then.face_map[f.index()];
        face_map.push((f2, iso1.compose(iso2)?));
    }
    Ok(Morphism { vertex_map, edge_map, face_map })
}

fn loops_at(c: &Complex2, v: VertexId) -> usize {
    c.edges.iter().filter(|e| e.is_loop() && e.slot_a == v).count()
}

fn edges_between(c: &Complex2, a: VertexId, b: VertexId) -> usize {
    c.edges
        .iter()
        .filter(|e| (e.slot_a == a && e.slot_b == b) || (e.slot_a == b && e.slot_b == a))
        .count()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

struct IsoSearch<'a> {
    a: &'a Complex2,
    b: &'a Complex2,
    deg_a: Vec<usize>,
    deg_b: Vec<usize>,
    vmap: Vec<Option<VertexId>>,
    vused: Vec<bool>,
}

impl<'a> IsoSearch<'a> {
    fn run(a: &'a Complex2, b: &'a Complex2, visit: &mut dyn FnMut(&Morphism) -> ControlFlow<()>) {
        if a.vertex_count() != b.vertex_count()
            || a.edge_count() != b.edge_count()
            || a.face_count() != b.face_count()
        {
            return;
        }
        let deg_a: Vec<usize> = a.vertices().map(|v| a.vertex_degree(v).unwrap()).collect();
        let deg_b: Vec<usize> = b.vertices().map(|v| b.vertex_degree(v).unwrap()).collect();
        if sorted(deg_a.clone()) != sorted(deg_b.clone()) {
            return;
        }
        let fdeg_a: Vec<usize> = a.face_ids().map(|f| a.face(f).walk.len()).collect();
        let fdeg_b: Vec<usize> = b.face_ids().map(|f| b.face(f).walk.len()).collect();
        if sorted(fdeg_a) != sorted(fdeg_b) {
            return;
        }
        let mut s = IsoSearch {
            a,
            b,
            deg_a,
            deg_b,
            vmap: vec![None; a.vertex_count()],
            vused: vec![false; b.vertex_count()],
        };
        let _ = s.assign_vertex(0, visit);
    }

    fn assign_vertex(&mut self, i: usize, visit: &mut dyn FnMut(&Morphism) -> ControlFlow<()>) -> ControlFlow<()> {
        if i == self.a.vertex_count() {
            let vm: Vec<VertexId> = self.vmap.iter().map(|v| v.unwrap()).collect();
            return self.assign_edges(&vm, visit);
        }
        let v = VertexId::from_index(i);
        for j in 0..self.b.vertex_count() {
            if self.vused[j] {
                continue;
            }
            let w = VertexId::from_index(j);
            if self.deg_a[i] != self.deg_b[j] || loops_at(self.a, v) != loops_at(self.b, w) {
                continue;
            }
            let compatible = (0..i).all(|k| {
                let u = VertexId::from_index(k);
                let mapped = self.vmap[k].unwrap();
                edges_between(self.a, v, u) == edges_between(self.b, w, mapped)
            });
            if !compatible {
                continue;
            }
            self.vmap[i] = Some(w);
            self.vused[j] = true;
            if self.assign_vertex(i + 1, visit).is_break() {
                return ControlFlow::Break(());
            }
            self.vmap[i] = None;
            self.vused[j] = false;
        }
        ControlFlow::Continue(())
    }

    fn assign_edges(&self, vm: &[VertexId], visit: &mut dyn FnMut(&Morphism) -> ControlFlow<()>) -> ControlFlow<()> {
        let mut emap: Vec<Option<(EdgeId, SlotMatching)>> = vec![None; self.a.edge_count()];
        let mut eused = vec![false; self.b.edge_count()];
        self.assign_edge(0, vm, &mut emap, &mut eused, visit)
    }

    fn assign_edge(
        &self,
        i: usize,
        vm: &[VertexId],
        emap: &mut Vec<Option<(EdgeId, SlotMatching)>>,
        eused: &mut Vec<bool>,
        visit: &mut dyn FnMut(&Morphism) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.a.edge_count() {
            let em: Vec<(EdgeId, SlotMatching)> = emap.iter().map(|e| e.unwrap()).collect();
            return self.assign_faces(vm, &em, visit);
        }
        let rec = self.a.edge(EdgeId::from_index(i));
        let (ia, ib) = (vm[rec.slot_a.index()], vm[rec.slot_b.index()]);
        for j in 0..self.b.edge_count() {
            if eused[j] {
                continue;
            }
            let cand = EdgeId::from_index(j);
            let rec2 = self.b.edge(cand);
            let mut matchings: Vec<SlotMatching> = Vec::with_capacity(2);
            if rec2.slot_a == ia && rec2.slot_b == ib {
                matchings.push(SlotMatching::Straight);
            }
            if rec2.slot_a == ib && rec2.slot_b == ia && (rec.is_loop() || !matchings.contains(&SlotMatching::Straight)) {
                matchings.push(SlotMatching::Swapped);
            }
            for m in matchings {
                emap[i] = Some((cand, m));
                eused[j] = true;
                if self.assign_edge(i + 1, vm, emap, eused, visit).is_break() {
                    return ControlFlow::Break(());
                }
                emap[i] = None;
                eused[j] = false;
            }
        }
        ControlFlow::Continue(())
    }

    fn assign_faces(
        &self,
        vm: &[VertexId],
        em: &[(EdgeId, SlotMatching)],
        visit: &mut dyn FnMut(&Morphism) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let partial = Morphism {
            vertex_map: vm.to_vec(),
            edge_map: em.to_vec(),
            face_map: Vec::new(),
        };
        let mut fmap: Vec<Option<(FaceId, CircleIso)>> = vec![None; self.a.face_count()];
        let mut fused = vec![false; self.b.face_count()];
        self.assign_face(0, &partial, &mut fmap, &mut fused, visit)
    }

    fn assign_face(
        &self,
        i: usize,
        partial: &Morphism,
        fmap: &mut Vec<Option<(FaceId, CircleIso)>>,
        fused: &mut Vec<bool>,
        visit: &mut dyn FnMut(&Morphism) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.a.face_count() {
            let full = Morphism {
                vertex_map: partial.vertex_map.clone(),
                edge_map: partial.edge_map.clone(),
                face_map: fmap.iter().map(|f| f.unwrap()).collect(),
            };
            debug_assert!(full.check(self.a, self.b).is_ok());
            return visit(&full);
        }
        let f = FaceId::from_index(i);
        let n = self.a.face(f).walk.len();
        for j in 0..self.b.face_count() {
            if fused[j] {
                continue;
            }
            let cand = FaceId::from_index(j);
            if self.b.face(cand).walk.len() != n {
                continue;
            }
            for reflected in [false, true] {
                for offset in 0..n {
                    let iso = CircleIso { len: n, offset, reflected };
                    if !partial.face_condition_holds(self.a, self.b, f, cand, iso) {
                        continue;
                    }
                    fmap[i] = Some((cand, iso));
                    fused[j] = true;
                    if self.assign_face(i + 1, partial, fmap, fused, visit).is_break() {
                        return ControlFlow::Break(());
                    }
                    fmap[i] = None;
                    fused[j] = false;
                }
            }
        }
        ControlFlow::Continue(())
    }
}

/// Enumerates isomorphisms of `a` with `b`, stopping when the visitor breaks.
pub(crate) fn for_each_isomorphism(
    a: &Complex2,
    b: &Complex2,
    mut visit: impl FnMut(&Morphism) -> ControlFlow<()>,
) {
    IsoSearch::run(a, b, &mut visit);
}

/// Backtracking search for an isomorphism of finite complexes, with
/// degree-sequence pruning. Intended for desk-scale inputs.
pub fn find_isomorphism(a: &Complex2, b: &Complex2) -> Option<Morphism> {
    let mut found = None;
    for_each_isomorphism(a, b, |m| {
        found = Some(m.clone());
        ControlFlow::Break(())
    });
    found
}
