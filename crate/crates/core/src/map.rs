//! Maps: connected subcomplexes of oriented combinatorial spheres, together
//! with the inherited face orientations and the contours of the removed
//! faces.
//!
//! Every oriented edge of a map appears exactly once counted across the
//! chosen boundary walks of its faces and its contours. Submap contours are
//! traced inside the spherical closure by walking along chosen boundary walks
//! and rotating across removed edges.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::complex::{Complex2, Dim, EdgeDir, EdgeId, FaceId, OrientedEdge, VertexId};
use crate::error::{Error, Result};
use crate::morphism::{for_each_isomorphism, Morphism};
use crate::path::{classify_cycle, subpath_of_cycle, ArcRec, CycleClass, PathSeq};
use crate::surface::{
    find_coherent_orientation, is_coherent, is_combinatorial_disc, is_combinatorial_sphere,
    skeleton_is_circle, OrientFlag, OrientationChoice,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapKind {
    Trivial,
    Spherical,
    Nontrivial,
}

/// A map: connected complex, chosen face orientations, contour cycles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapStruct {
    complex: Complex2,
    orientation: OrientationChoice,
    contours: Vec<CycleClass>,
    kind: MapKind,
}

/// Result of re-attaching faces along the contours of a map.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub sphere: MapStruct,
    /// Inclusion of the map's complex into the sphere's.
    pub embedding: Morphism,
    pub improper: BTreeSet<FaceId>,
}

/// Classification flags of a map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MapFlags {
    pub simple: bool,
    pub disc: bool,
    pub exceptional: bool,
    pub degenerate: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArcPosition {
    External,
    Internal,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InternalKind {
    InterFacial,
    IntroFacial,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntroDirection {
    Outward,
    Inward,
}

/// Where an arc sits in a map: on a contour or inside, between how many
/// faces, and (for intro-facial oriented arcs of disc maps) whether it points
/// towards the contour.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcClassification {
    pub incident_faces: Vec<FaceId>,
    pub position: ArcPosition,
    pub internal_kind: Option<InternalKind>,
    pub intro_direction: Option<IntroDirection>,
}

/// A subcomplex selection for [`MapStruct::submap`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Selection {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
    pub faces: BTreeSet<FaceId>,
}

impl Selection {
    pub fn full(c: &Complex2) -> Selection {
        Selection {
            vertices: c.vertices().collect(),
            edges: c.edge_ids().collect(),
            faces: c.face_ids().collect(),
        }
    }

    pub fn single_vertex(v: VertexId) -> Selection {
        Selection { vertices: [v].into(), ..Default::default() }
    }

    /// The given faces plus every edge and vertex their walks touch.
    pub fn faces_with_boundary(c: &Complex2, faces: impl IntoIterator<Item = FaceId>) -> Selection {
        let mut sel = Selection::default();
        for f in faces {
            sel.faces.insert(f);
            for oe in &c.face(f).walk {
                sel.edges.insert(oe.edge);
            }
        }
        for &e in &sel.edges {
            let rec = c.edge(e);
            sel.vertices.insert(rec.slot_a);
            sel.vertices.insert(rec.slot_b);
        }
        sel
    }
}

fn slot(oe: OrientedEdge) -> usize {
    2 * oe.edge.index() + (oe.dir == EdgeDir::Backward) as usize
}

/// Navigation over an oriented sphere: which face's chosen walk covers each
/// oriented edge, and the walk successor.
struct SphereNav {
    chosen: Vec<Vec<OrientedEdge>>,
    covering: Vec<(FaceId, usize)>,
}

impl SphereNav {
    fn build(c: &Complex2, theta: &OrientationChoice) -> Result<SphereNav> {
        let chosen: Vec<Vec<OrientedEdge>> =
            c.face_ids().map(|f| theta.chosen_walk(c, f)).collect();
        let mut covering = vec![None; 2 * c.edge_count()];
        for (fi, walk) in chosen.iter().enumerate() {
            for (pos, &oe) in walk.iter().enumerate() {
                let s = slot(oe);
                if covering[s].is_some() {
                    return Err(Error::InvalidMap(
                        "an oriented edge is covered more than once".into(),
                    ));
                }
                covering[s] = Some((FaceId::from_index(fi), pos));
            }
        }
        let covering: Option<Vec<(FaceId, usize)>> = covering.into_iter().collect();
        let covering = covering.ok_or_else(|| {
            Error::InvalidMap("an oriented edge is not covered by any chosen walk".into())
        })?;
        Ok(SphereNav { chosen, covering })
    }

    fn face_of(&self, oe: OrientedEdge) -> FaceId {
        self.covering[slot(oe)].0
    }

    fn next(&self, oe: OrientedEdge) -> OrientedEdge {
        let (f, pos) = self.covering[slot(oe)];
        let walk = &self.chosen[f.index()];
        walk[(pos + 1) % walk.len()]
    }
}

impl MapStruct {
    /// A spherical map: an oriented combinatorial sphere.
    pub fn spherical(complex: Complex2, orientation: OrientationChoice) -> Result<MapStruct> {
        if !is_combinatorial_sphere(&complex) {
            return Err(Error::NotASphere);
        }
        if orientation.face_count() != complex.face_count() || !is_coherent(&complex, &orientation)
        {
            return Err(Error::InvalidMap("orientation is not coherent".into()));
        }
        Ok(MapStruct { complex, orientation, contours: Vec::new(), kind: MapKind::Spherical })
    }

    /// Trusted construction for sphere-preserving generator moves; skips the
    /// sphere and coherence validation.
    pub(crate) fn spherical_unchecked(complex: Complex2, orientation: OrientationChoice) -> MapStruct {
        MapStruct { complex, orientation, contours: Vec::new(), kind: MapKind::Spherical }
    }

    /// A spherical map with the deterministic coherent orientation.
    pub fn spherical_auto(complex: Complex2) -> Result<MapStruct> {
        if !is_combinatorial_sphere(&complex) {
            return Err(Error::NotASphere);
        }
        let theta = find_coherent_orientation(&complex)?
            .expect("a combinatorial sphere is orientable");
        MapStruct::spherical(complex, theta)
    }

    /// The trivial map on a fresh single vertex.
    pub fn trivial() -> MapStruct {
        let mut b = Complex2::builder(Dim::Two);
        let v = b.vertex();
        let complex = b.build_unchecked();
        MapStruct {
            complex,
            orientation: OrientationChoice::all_as_stored(0),
            contours: vec![CycleClass::trivial(v)],
            kind: MapKind::Trivial,
        }
    }

    /// Reassembles a map from parsed parts, validating the map invariants
    /// and inferring the kind.
    pub fn from_parts(
        complex: Complex2,
        orientation: OrientationChoice,
        contours: Vec<CycleClass>,
    ) -> Result<MapStruct> {
        if !complex.validate().is_ok() {
            return Err(Error::InvalidMap("underlying complex is not well formed".into()));
        }
        if !complex.is_connected() {
            return Err(Error::InvalidMap("a map must be connected".into()));
        }
        if orientation.face_count() != complex.face_count() {
            return Err(Error::InvalidMap("orientation must cover exactly the faces".into()));
        }
        // trivial map
        if complex.vertex_count() == 1
            && complex.edge_count() == 0
            && complex.face_count() == 0
            && contours.len() == 1
            && contours[0].is_empty()
        {
            return Ok(MapStruct { complex, orientation, contours, kind: MapKind::Trivial });
        }
        if contours.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidMap(
                "a trivial contour is only allowed on the trivial map".into(),
            ));
        }
        for contour in &contours {
            if !contour.representative().is_valid_in(&complex) {
                return Err(Error::InvalidMap("contour is not a cycle in the complex".into()));
            }
        }
        // every oriented edge exactly once across chosen walks and contours
        let mut covered = vec![false; 2 * complex.edge_count()];
        let mut cover = |oe: OrientedEdge| -> Result<()> {
            let s = slot(oe);
            if covered[s] {
                return Err(Error::InvalidMap(
                    "an oriented edge is covered more than once".into(),
                ));
            }
            covered[s] = true;
            Ok(())
        };
        for f in complex.face_ids() {
            for oe in orientation.chosen_walk(&complex, f) {
                cover(oe)?;
            }
        }
        for contour in &contours {
            for &oe in &contour.representative().steps {
                cover(oe)?;
            }
        }
        if covered.iter().any(|&b| !b) {
            return Err(Error::InvalidMap(
                "an oriented edge is neither in a face contour nor in a map contour".into(),
            ));
        }
        let kind = if contours.is_empty() {
            if !is_combinatorial_sphere(&complex) {
                return Err(Error::InvalidMap(
                    "a map without contours must be an oriented sphere".into(),
                ));
            }
            MapKind::Spherical
        } else {
            MapKind::Nontrivial
        };
        let mut contours = contours;
        contours.sort_by(|a, b| a.representative().steps.cmp(&b.representative().steps));
        Ok(MapStruct { complex, orientation, contours, kind })
    }

    pub fn complex(&self) -> &Complex2 {
        &self.complex
    }

    pub fn orientation(&self) -> &OrientationChoice {
        &self.orientation
    }

    pub fn contours(&self) -> &[CycleClass] {
        &self.contours
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn is_degenerate(&self) -> bool {
        self.complex.face_count() == 0
    }

    /// The contour of a proper face: its chosen boundary cycle.
    pub fn face_contour(&self, f: FaceId) -> CycleClass {
        let walk = self.orientation.chosen_walk(&self.complex, f);
        let start = self.complex.tail(walk[0]);
        CycleClass::from_cyclic_path(&self.complex, PathSeq::new(start, walk))
            .expect("chosen walk is cyclic")
    }

    fn nav(&self) -> Result<SphereNav> {
        debug_assert_eq!(self.kind, MapKind::Spherical);
        SphereNav::build(&self.complex, &self.orientation)
    }

    /// Attaches one new face per contour, recovering the spherical closure.
    pub fn spherical_closure(&self) -> Result<ClosureResult> {
        match self.kind {
            MapKind::Trivial => Err(Error::NoClosure("the trivial map has no closure".into())),
            MapKind::Spherical => Ok(ClosureResult {
                sphere: self.clone(),
                embedding: Morphism::identity(&self.complex),
                improper: BTreeSet::new(),
            }),
            MapKind::Nontrivial => {
                let mut b = Complex2::builder(Dim::Two);
                for v in self.complex.vertices() {
                    b.named_vertex(self.complex.vertex_name(v));
                }
                for e in self.complex.edge_ids() {
                    let rec = self.complex.edge(e);
                    b.named_edge(self.complex.edge_name(e), rec.slot_a, rec.slot_b);
                }
                let mut taken: BTreeSet<String> =
                    self.complex.face_ids().map(|f| self.complex.face_name(f)).collect();
                for f in self.complex.face_ids() {
                    b.named_face(self.complex.face_name(f), self.complex.face(f).walk.clone());
                }
                let mut improper = BTreeSet::new();
                for (k, contour) in self.contours.iter().enumerate() {
                    let mut name = format!("f{}", self.complex.face_count() + k);
                    while !taken.insert(name.clone()) {
                        name.push('_');
                    }
                    improper.insert(b.named_face(name, contour.representative().steps.clone()));
                }
                let complex = b.build().map_err(|r| {
                    Error::NoClosure(format!("closure complex is invalid: {:?}", r.violations))
                })?;
                let mut flags = self.orientation.flags().to_vec();
                flags.extend(std::iter::repeat_n(OrientFlag::AsStored, self.contours.len()));
                let theta = OrientationChoice::from_flags(flags);
                if !is_combinatorial_sphere(&complex) {
                    return Err(Error::NoClosure(
                        "contours do not close the map into a sphere".into(),
                    ));
                }
                let embedding = Morphism {
                    vertex_map: self.complex.vertices().collect(),
                    edge_map: self
                        .complex
                        .edge_ids()
                        .map(|e| (e, crate::morphism::SlotMatching::Straight))
                        .collect(),
                    face_map: self
                        .complex
                        .face_ids()
                        .map(|f| {
                            (f, crate::morphism::CircleIso::identity(self.complex.face(f).walk.len()))
                        })
                        .collect(),
                };
                let sphere = MapStruct::spherical(complex, theta)
                    .map_err(|e| Error::NoClosure(format!("closure is not spherical: {e}")))?;
                debug_assert!(embedding.check(&self.complex, &sphere.complex).is_ok());
                Ok(ClosureResult { sphere, embedding, improper })
            }
        }
    }

    /// The connected subcomplex on `sel` with the inherited map structure.
    pub fn submap(&self, sel: &Selection) -> Result<MapStruct> {
        self.submap_with_embedding(sel).map(|(m, _)| m)
    }

    /// Like [`MapStruct::submap`], also returning the inclusion of the
    /// submap's complex into this map's complex.
    pub fn submap_with_embedding(&self, sel: &Selection) -> Result<(MapStruct, Morphism)> {
        self.validate_selection(sel)?;
        if self.kind == MapKind::Trivial {
            // the only admissible selection is the single vertex
            return Ok((self.clone(), Morphism::identity(&self.complex)));
        }
        let (sub, embedding) = extract_subcomplex(&self.complex, sel);
        if sel.edges.is_empty() {
            // connectivity forces a single vertex: the trivial map
            let v = VertexId::from_index(0);
            let map = MapStruct {
                complex: sub,
                orientation: OrientationChoice::all_as_stored(0),
                contours: vec![CycleClass::trivial(v)],
                kind: MapKind::Trivial,
            };
            return Ok((map, embedding));
        }
        let nav_owner;
        let nav = if self.kind == MapKind::Spherical {
            nav_owner = self.nav()?;
            &nav_owner
        } else {
            let closure = self.spherical_closure()?;
            nav_owner = SphereNav::build(&closure.sphere.complex, &closure.sphere.orientation)?;
            &nav_owner
        };

        // inherited orientation, reindexed
        let flags: Vec<OrientFlag> = sel
            .faces
            .iter()
            .map(|&f| self.orientation.flag(f))
            .collect();
        let orientation = OrientationChoice::from_flags(flags);

        // map from ambient ids to subcomplex ids
        let edge_new: std::collections::BTreeMap<EdgeId, EdgeId> = sel
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, EdgeId::from_index(i)))
            .collect();

        // trace the uncovered oriented edges into contours
        let total_steps_cap = 4 * nav.covering.len();
        let mut visited: BTreeSet<usize> = BTreeSet::new();
        let mut contours = Vec::new();
        for &e in &sel.edges {
            for dir in [EdgeDir::Forward, EdgeDir::Backward] {
                let x0 = OrientedEdge { edge: e, dir };
                if sel.faces.contains(&nav.face_of(x0)) || visited.contains(&slot(x0)) {
                    continue;
                }
                let mut steps_ambient = Vec::new();
                let mut x = x0;
                let mut guard = 0usize;
                loop {
                    visited.insert(slot(x));
                    steps_ambient.push(x);
                    // successor: continue along the covering walk, rotating
                    // across removed edges
                    let mut y = nav.next(x);
                    while !sel.edges.contains(&y.edge) {
                        y = nav.next(y.inverse());
                        guard += 1;
                        if guard > total_steps_cap {
                            return Err(Error::InvalidMap("contour trace does not close".into()));
                        }
                    }
                    if y == x0 {
                        break;
                    }
                    x = y;
                    guard += 1;
                    if guard > total_steps_cap {
                        return Err(Error::InvalidMap("contour trace does not close".into()));
                    }
                }
                let steps: Vec<OrientedEdge> = steps_ambient
                    .iter()
                    .map(|oe| OrientedEdge { edge: edge_new[&oe.edge], dir: oe.dir })
                    .collect();
                let start = sub.tail(steps[0]);
                let contour = CycleClass::from_cyclic_path(&sub, PathSeq::new(start, steps))
                    .expect("traced contour is cyclic");
                contours.push(contour);
            }
        }
        contours.sort_by(|a, b| a.representative().steps.cmp(&b.representative().steps));
        let kind = if contours.is_empty() { MapKind::Spherical } else { MapKind::Nontrivial };
        if kind == MapKind::Spherical && !is_combinatorial_sphere(&sub) {
            return Err(Error::InvalidMap(
                "selection covers all boundaries but is not a sphere".into(),
            ));
        }
        let map = MapStruct { complex: sub, orientation, contours, kind };
        Ok((map, embedding))
    }

    fn validate_selection(&self, sel: &Selection) -> Result<()> {
        if sel.vertices.is_empty() {
            return Err(Error::SelectionNotClosed("no vertices selected".into()));
        }
        for &v in &sel.vertices {
            if !self.complex.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        for &e in &sel.edges {
            if !self.complex.contains_edge(e) {
                return Err(Error::UnknownEdge(e));
            }
            let rec = self.complex.edge(e);
            if !sel.vertices.contains(&rec.slot_a) || !sel.vertices.contains(&rec.slot_b) {
                return Err(Error::SelectionNotClosed(format!(
                    "edge {e:?} selected without both endpoints"
                )));
            }
        }
        for &f in &sel.faces {
            if !self.complex.contains_face(f) {
                return Err(Error::UnknownFace(f));
            }
            if self.complex.face(f).walk.iter().any(|oe| !sel.edges.contains(&oe.edge)) {
                return Err(Error::SelectionNotClosed(format!(
                    "face {f:?} selected without its boundary edges"
                )));
            }
        }
        // connectivity of the selected graph
        let verts: Vec<VertexId> = sel.vertices.iter().copied().collect();
        let index_of = |v: VertexId| verts.binary_search(&v).unwrap();
        let mut uf = crate::util::UnionFind::new(verts.len());
        for &e in &sel.edges {
            let rec = self.complex.edge(e);
            uf.union(index_of(rec.slot_a), index_of(rec.slot_b));
        }
        if !uf.all_same() {
            return Err(Error::DisconnectedSelection);
        }
        Ok(())
    }

    /// Classifies the map: simple, disc, exceptional, degenerate.
    pub fn classify(&self) -> MapFlags {
        let simple = self.contours_are_simple_and_disjoint();
        let disc = self.contours.len() == 1;
        let exceptional = self.kind == MapKind::Spherical && skeleton_is_circle(&self.complex);
        let degenerate = self.complex.face_count() == 0;
        if simple {
            debug_assert!(
                self.every_edge_face_incident(),
                "a simple map must have every edge incident with some face"
            );
        }
        if disc {
            debug_assert_eq!(
                simple,
                is_combinatorial_disc(&self.complex),
                "a disc map is simple iff its complex is a combinatorial disc"
            );
        }
        MapFlags { simple, disc, exceptional, degenerate }
    }

    fn contours_are_simple_and_disjoint(&self) -> bool {
        for contour in &self.contours {
            if !classify_cycle(&self.complex, contour).map(|f| f.simple_cycle).unwrap_or(false) {
                return false;
            }
        }
        for i in 0..self.contours.len() {
            for j in i + 1..self.contours.len() {
                let a = self.contours[i].vertex_set(&self.complex);
                let b = self.contours[j].vertex_set(&self.complex);
                if !a.is_disjoint(&b) {
                    return false;
                }
            }
        }
        true
    }

    fn every_edge_face_incident(&self) -> bool {
        let occ = crate::surface::edge_occurrence_counts(&self.complex);
        occ.iter().all(|&n| n > 0)
    }

    /// Faces the oriented arc `u` is incident to (it or its inverse is a
    /// subpath of one of their boundary cycles).
    pub fn arc_incident_faces(&self, u: &PathSeq) -> Vec<FaceId> {
        crate::analysis::faces_incident_to_arc(&self.complex, u)
    }

    /// Classifies an oriented arc of this map.
    pub fn classify_arc(&self, u: &PathSeq) -> Result<ArcClassification> {
        ArcRec::new(&self.complex, u.clone())?;
        let incident_faces = self.arc_incident_faces(u);
        if incident_faces.is_empty() {
            return Err(Error::ArcNotIncident);
        }
        let external = self.contours.iter().any(|c| {
            subpath_of_cycle(&self.complex, u, c)
                || subpath_of_cycle(&self.complex, u, &c.inverse(&self.complex))
        });
        if external {
            return Ok(ArcClassification {
                incident_faces,
                position: ArcPosition::External,
                internal_kind: None,
                intro_direction: None,
            });
        }
        let internal_kind = if incident_faces.len() >= 2 {
            InternalKind::InterFacial
        } else {
            InternalKind::IntroFacial
        };
        let intro_direction = if internal_kind == InternalKind::IntroFacial
            && self.contours.len() == 1
        {
            if self.is_outward(u) {
                Some(IntroDirection::Outward)
            } else if self.is_outward(&u.inverse(&self.complex)) {
                Some(IntroDirection::Inward)
            } else {
                None
            }
        } else {
            None
        };
        Ok(ArcClassification {
            incident_faces,
            position: ArcPosition::Internal,
            internal_kind: Some(internal_kind),
            intro_direction,
        })
    }

    /// Is `u` an initial subpath of a simple path ending on the contour?
    /// Reachability from the head of `u` to a contour vertex in the graph
    /// minus the other vertices of `u`.
    fn is_outward(&self, u: &PathSeq) -> bool {
        let c = &self.complex;
        let targets: BTreeSet<VertexId> = self
            .contours
            .iter()
            .flat_map(|contour| contour.vertex_set(c))
            .collect();
        let end = u.end(c);
        if targets.contains(&end) {
            return true;
        }
        if u.start == end {
            // a closed arc cannot be simply extended past its base vertex
            return false;
        }
        let blocked: BTreeSet<VertexId> = u.vertices(c).into_iter().filter(|&v| v != end).collect();
        let banned_first = u.steps.last().map(|&oe| oe.inverse());
        let mut queue = std::collections::VecDeque::new();
        let mut seen = BTreeSet::new();
        queue.push_back(end);
        seen.insert(end);
        let mut first = true;
        while let Some(at) = queue.pop_front() {
            for oe in c.leaving(at) {
                if first && Some(oe) == banned_first {
                    continue;
                }
                let to = c.head(oe);
                if targets.contains(&to) {
                    return true;
                }
                if blocked.contains(&to) || seen.contains(&to) {
                    continue;
                }
                seen.insert(to);
                queue.push_back(to);
            }
            first = false;
        }
        false
    }

    /// Cuts the simple disc map bounded by `c` out of this disc map, if `c`
    /// runs clockwise (against the face orientations). Returns `None` for the
    /// counterclockwise direction.
    pub fn cut_out(&self, cutting: &CycleClass) -> Result<Option<(MapStruct, Morphism)>> {
        if self.contours.len() != 1 {
            return Err(Error::NotADiscMap);
        }
        if cutting.is_empty() {
            return Err(Error::TrivialCycle);
        }
        if !cutting.representative().is_valid_in(&self.complex) {
            return Err(Error::PathNotEmbedded);
        }
        if !classify_cycle(&self.complex, cutting)?.simple_cycle {
            return Err(Error::NotSimpleCycle);
        }
        let closure = self.spherical_closure()?;
        let sphere = &closure.sphere;
        let nav = sphere.nav()?;
        let cut_edges = cutting.edge_set();

        // face regions: union across every edge not on the cutting cycle
        let nf = sphere.complex.face_count();
        let mut uf = crate::util::UnionFind::new(nf);
        for e in sphere.complex.edge_ids() {
            if cut_edges.contains(&e) {
                continue;
            }
            let fa = nav.face_of(OrientedEdge::forward(e)).index();
            let fb = nav.face_of(OrientedEdge::backward(e)).index();
            uf.union(fa, fb);
        }
        let roots: BTreeSet<usize> = (0..nf).map(|i| uf.find(i)).collect();
        if roots.len() != 2 {
            return Err(Error::NotSeparating);
        }
        let improper = *closure.improper.iter().next().expect("disc map closure has one improper face");
        let improper_root = uf.find(improper.index());
        let candidate_faces: Vec<FaceId> = (0..nf)
            .filter(|&i| uf.find(i) != improper_root)
            .map(FaceId::from_index)
            .collect();

        let mut sel = Selection::faces_with_boundary(&sphere.complex, candidate_faces);
        sel.edges.extend(cut_edges.iter().copied());
        for &e in &cut_edges {
            let rec = sphere.complex.edge(e);
            sel.vertices.insert(rec.slot_a);
            sel.vertices.insert(rec.slot_b);
        }
        let (sub, embedding) = sphere.submap_with_embedding(&sel)?;
        let flags = sub.classify();
        if !(flags.disc && flags.simple) {
            return Err(Error::InvalidMap("cut-out region is not a simple disc".into()));
        }
        // All cells of the cut-out lie in this map, with unchanged ids.
        debug_assert!(embedding.check(&sub.complex, &self.complex).is_ok());
        let image = embedding.apply_cycle(&self.complex, &sub.contours[0]);
        if &image == cutting {
            Ok(Some((sub, embedding)))
        } else if image == cutting.inverse(&self.complex) {
            Ok(None)
        } else {
            Err(Error::InvalidMap("cut-out contour does not match the cutting cycle".into()))
        }
    }
}

fn extract_subcomplex(ambient: &Complex2, sel: &Selection) -> (Complex2, Morphism) {
    let mut b = Complex2::builder(ambient.dim());
    let mut vertex_map = Vec::new();
    let mut vnew = std::collections::BTreeMap::new();
    for &v in &sel.vertices {
        let id = b.named_vertex(ambient.vertex_name(v));
        vnew.insert(v, id);
        vertex_map.push(v);
    }
    let mut edge_map = Vec::new();
    let mut enew = std::collections::BTreeMap::new();
    for &e in &sel.edges {
        let rec = ambient.edge(e);
        let id = b.named_edge(ambient.edge_name(e), vnew[&rec.slot_a], vnew[&rec.slot_b]);
        enew.insert(e, id);
        edge_map.push((e, crate::morphism::SlotMatching::Straight));
    }
    let mut face_map = Vec::new();
    for &f in &sel.faces {
        let walk: Vec<OrientedEdge> = ambient
            .face(f)
            .walk
            .iter()
            .map(|oe| OrientedEdge { edge: enew[&oe.edge], dir: oe.dir })
            .collect();
        let len = walk.len();
        b.named_face(ambient.face_name(f), walk);
        face_map.push((f, crate::morphism::CircleIso::identity(len)));
    }
    (b.build_unchecked(), Morphism { vertex_map, edge_map, face_map })
}

/// Removes faces from a spherical map, remembering their contours.
pub fn make_map(closure: &MapStruct, removed: &BTreeSet<FaceId>) -> Result<MapStruct> {
    if closure.kind() != MapKind::Spherical {
        return Err(Error::InvalidMap("make_map requires a spherical map".into()));
    }
    for &f in removed {
        if !closure.complex().contains_face(f) {
            return Err(Error::UnknownFace(f));
        }
    }
    if removed.is_empty() {
        return Ok(closure.clone());
    }
    if closure.complex().vertex_count() == 1
        && closure.complex().edge_count() == 0
        && removed.len() == closure.complex().face_count()
    {
        return Ok(MapStruct::trivial());
    }
    let mut sel = Selection::full(closure.complex());
    for f in removed {
        sel.faces.remove(f);
    }
    closure.submap(&sel)
}

/// Does `zeta` paste `candidate` into `target` along `c`: a morphism that
/// preserves chosen face orientations, is injective on faces, and carries the
/// candidate's contour to `c`?
pub fn verify_pasting(
    target: &MapStruct,
    candidate: &MapStruct,
    zeta: &Morphism,
    c: &CycleClass,
) -> bool {
    let flags = candidate.classify();
    if !(flags.disc && flags.simple) {
        return false;
    }
    if zeta.check(candidate.complex(), target.complex()).is_err() {
        return false;
    }
    // preserves chosen orientations
    for f in candidate.complex().face_ids() {
        let (img, iso) = zeta.apply_face(f);
        let expected = if iso.reflected {
            candidate.orientation().flag(f).flip()
        } else {
            candidate.orientation().flag(f)
        };
        if target.orientation().flag(img) != expected {
            return false;
        }
    }
    // injective on faces
    let mut seen = BTreeSet::new();
    for f in candidate.complex().face_ids() {
        if !seen.insert(zeta.apply_face(f).0) {
            return false;
        }
    }
    let image = zeta.apply_cycle(target.complex(), &candidate.contours()[0]);
    &image == c
}

/// Isomorphism of maps: a complex isomorphism that preserves the chosen face
/// orientations and carries contours to contours.
pub fn find_map_isomorphism(a: &MapStruct, b: &MapStruct) -> Option<Morphism> {
    if a.kind() != b.kind() || a.contours().len() != b.contours().len() {
        return None;
    }
    let mut found = None;
    for_each_isomorphism(a.complex(), b.complex(), |m| {
        let preserves_orientation = a.complex().face_ids().all(|f| {
            let (img, iso) = m.apply_face(f);
            let expected = if iso.reflected {
                a.orientation().flag(f).flip()
            } else {
                a.orientation().flag(f)
            };
            b.orientation().flag(img) == expected
        });
        if !preserves_orientation {
            return ControlFlow::Continue(());
        }
        let mut images: Vec<CycleClass> = a
            .contours()
            .iter()
            .map(|c| m.apply_cycle(b.complex(), c))
            .collect();
        images.sort_by(|x, y| x.representative().steps.cmp(&y.representative().steps));
        let mut expected: Vec<CycleClass> = b.contours().to_vec();
        expected.sort_by(|x, y| x.representative().steps.cmp(&y.representative().steps));
        if images != expected {
            return ControlFlow::Continue(());
        }
        found = Some(m.clone());
        ControlFlow::Break(())
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{polygon_double, tetrahedron};
    use crate::surface::is_combinatorial_disc;

    fn tetra_minus(faces: &[usize]) -> MapStruct {
        let t = tetrahedron();
        let removed: BTreeSet<FaceId> = faces.iter().map(|&i| FaceId::from_index(i)).collect();
        make_map(&t, &removed).unwrap()
    }

    #[test]
    fn make_map_examples() {
        let disc = tetra_minus(&[3]);
        assert_eq!(disc.kind(), MapKind::Nontrivial);
        assert_eq!(disc.contours().len(), 1);
        assert_eq!(disc.contours()[0].len(), 3);
        assert_eq!(disc.complex().edge_count(), 6, "same 1-skeleton");

        let t = tetrahedron();
        let unchanged = make_map(&t, &BTreeSet::new()).unwrap();
        assert_eq!(unchanged.kind(), MapKind::Spherical);

        let pd = polygon_double(3).unwrap();
        let both: BTreeSet<FaceId> = pd.complex().face_ids().collect();
        let degen = make_map(&pd, &both).unwrap();
        assert!(degen.is_degenerate());
        assert_eq!(degen.contours().len(), 2);
        assert_eq!(degen.complex().vertex_count(), 3);
        assert_eq!(degen.complex().edge_count(), 3);
    }

    #[test]
    fn contour_is_the_removed_face_chosen_cycle() {
        let t = tetrahedron();
        let f = FaceId::from_index(3);
        let expected = t.face_contour(f);
        let m = tetra_minus(&[3]);
        // make_map keeps the whole 1-skeleton, so ids line up and the traced
        // contour must equal the removed face's chosen cycle
        assert_eq!(&m.contours()[0], &expected);
    }

    #[test]
    fn closure_round_trip() {
        for removed in [vec![3], vec![1, 2]] {
            let m = tetra_minus(&removed);
            let closure = m.spherical_closure().unwrap();
            assert!(is_combinatorial_sphere(closure.sphere.complex()));
            assert_eq!(closure.improper.len(), removed.len());
            let back = make_map(&closure.sphere, &closure.improper).unwrap();
            assert!(find_map_isomorphism(&m, &back).is_some());
        }
        assert!(MapStruct::trivial().spherical_closure().is_err());
    }

    #[test]
    fn submap_examples() {
        let t = tetrahedron();
        let full = t.submap(&Selection::full(t.complex())).unwrap();
        assert_eq!(full.kind(), MapKind::Spherical);

        // one face and its boundary: the disc map of that face
        let sel = Selection::faces_with_boundary(t.complex(), [FaceId::from_index(0)]);
        let disc = t.submap(&sel).unwrap();
        assert_eq!(disc.contours().len(), 1);
        assert!(disc.classify().disc);
        assert!(disc.classify().simple);
        assert!(is_combinatorial_disc(disc.complex()));
        // its contour runs against the face's chosen cycle
        let contour = &disc.contours()[0];
        let face_cycle = disc.face_contour(FaceId::from_index(0));
        assert_eq!(contour, &face_cycle.inverse(disc.complex()));

        // a single vertex yields the trivial map
        let tv = t.submap(&Selection::single_vertex(VertexId::from_index(2))).unwrap();
        assert_eq!(tv.kind(), MapKind::Trivial);

        // a disconnected selection errors
        let mut sel = Selection::single_vertex(VertexId::from_index(0));
        sel.vertices.insert(VertexId::from_index(1));
        assert_eq!(t.submap(&sel), Err(Error::DisconnectedSelection));
    }

    #[test]
    fn classify_examples() {
        let disc = tetra_minus(&[0]);
        let flags = disc.classify();
        assert!(flags.simple && flags.disc && !flags.exceptional && !flags.degenerate);

        let pd = polygon_double(4).unwrap();
        assert!(pd.classify().exceptional);
        assert!(!tetrahedron().classify().exceptional);

        let trivial = MapStruct::trivial();
        let tf = trivial.classify();
        assert!(tf.disc && tf.degenerate && !tf.simple);
    }

    #[test]
    fn figure_eight_contours_are_not_simple() {
        // sphere with two triangles sharing exactly one vertex, plus a
        // hexagonal outer face; removing the two triangles leaves contours
        // meeting at the shared vertex
        let mut b = Complex2::builder(Dim::Two);
        let hub = b.vertex();
        let a1 = b.vertex();
        let a2 = b.vertex();
        let b1 = b.vertex();
        let b2 = b.vertex();
        let e = [
            b.edge(hub, a1),
            b.edge(a1, a2),
            b.edge(a2, hub),
            b.edge(hub, b1),
            b.edge(b1, b2),
            b.edge(b2, hub),
        ];
        b.face(vec![
            OrientedEdge::forward(e[0]),
            OrientedEdge::forward(e[1]),
            OrientedEdge::forward(e[2]),
        ]);
        b.face(vec![
            OrientedEdge::forward(e[3]),
            OrientedEdge::forward(e[4]),
            OrientedEdge::forward(e[5]),
        ]);
        b.face(vec![
            OrientedEdge::backward(e[2]),
            OrientedEdge::backward(e[1]),
            OrientedEdge::backward(e[0]),
            OrientedEdge::backward(e[5]),
            OrientedEdge::backward(e[4]),
            OrientedEdge::backward(e[3]),
        ]);
        let c = b.build().expect("wedge sphere is well formed");
        assert!(is_combinatorial_sphere(&c));
        let sphere = MapStruct::spherical_auto(c).unwrap();
        let removed: BTreeSet<FaceId> =
            [FaceId::from_index(0), FaceId::from_index(1)].into();
        let m = make_map(&sphere, &removed).unwrap();
        assert_eq!(m.contours().len(), 2);
        assert!(!m.classify().simple, "contours share the hub vertex");
    }

    #[test]
    fn arc_classification_on_tetra_disc() {
        let m = tetra_minus(&[3]);
        let contour_edge = *m.contours()[0].edge_set().iter().next().unwrap();
        let oe = OrientedEdge::forward(contour_edge);
        let u = PathSeq::new(m.complex().tail(oe), vec![oe]);
        let cls = m.classify_arc(&u).unwrap();
        assert_eq!(cls.position, ArcPosition::External);

        let internal_edge = m
            .complex()
            .edge_ids()
            .find(|e| !m.contours()[0].edge_set().contains(e))
            .unwrap();
        let oe = OrientedEdge::forward(internal_edge);
        let u = PathSeq::new(m.complex().tail(oe), vec![oe]);
        let cls = m.classify_arc(&u).unwrap();
        assert_eq!(cls.position, ArcPosition::Internal);
        assert_eq!(cls.internal_kind, Some(InternalKind::InterFacial));
        assert_eq!(cls.incident_faces.len(), 2);
    }

    /// Dumbbell sphere: two loop vertices joined by a bridge the big face
    /// traverses twice.
    pub(crate) fn dumbbell_sphere() -> MapStruct {
        let mut bld = Complex2::builder(Dim::Two);
        let u = bld.vertex();
        let w = bld.vertex();
        let a = bld.edge(u, u);
        let b = bld.edge(w, w);
        let c = bld.edge(u, w);
        bld.face(vec![
            OrientedEdge::forward(a),
            OrientedEdge::forward(c),
            OrientedEdge::forward(b),
            OrientedEdge::backward(c),
        ]);
        bld.face(vec![OrientedEdge::backward(a)]);
        bld.face(vec![OrientedEdge::backward(b)]);
        let complex = bld.build().unwrap();
        assert!(is_combinatorial_sphere(&complex));
        MapStruct::spherical(complex, OrientationChoice::all_as_stored(3)).unwrap()
    }

    #[test]
    fn intro_facial_arc_direction() {
        let sphere = dumbbell_sphere();
        let m = make_map(&sphere, &[FaceId::from_index(1)].into()).unwrap();
        assert_eq!(m.contours().len(), 1, "disc map");
        let bridge = EdgeId::from_index(2);
        let fwd = OrientedEdge::forward(bridge); // u -> w, away from the contour at u
        let u_fwd = PathSeq::new(m.complex().tail(fwd), vec![fwd]);
        let cls = m.classify_arc(&u_fwd).unwrap();
        assert_eq!(cls.position, ArcPosition::Internal);
        assert_eq!(cls.internal_kind, Some(InternalKind::IntroFacial));
        assert_eq!(cls.intro_direction, Some(IntroDirection::Inward));
        let u_bwd = u_fwd.inverse(m.complex());
        let cls = m.classify_arc(&u_bwd).unwrap();
        assert_eq!(cls.intro_direction, Some(IntroDirection::Outward));
    }

    #[test]
    fn cut_out_examples() {
        let m = tetra_minus(&[3]);
        // the map's own contour cuts out the maximal simple disc submap
        let contour = m.contours()[0].clone();
        let (disc, zeta) = m.cut_out(&contour).unwrap().expect("contour cuts out");
        assert_eq!(disc.complex().face_count(), 3);
        assert!(verify_pasting(&m, &disc, &zeta, &contour));
        // reversed: absent
        assert!(m.cut_out(&contour.inverse(m.complex())).unwrap().is_none());

        // the boundary of a single proper face, contour-directed
        let f = FaceId::from_index(0);
        let face_cycle = m.face_contour(f);
        let clockwise = face_cycle.inverse(m.complex());
        let (one, zeta) = m.cut_out(&clockwise).unwrap().expect("clockwise face boundary cuts");
        assert_eq!(one.complex().face_count(), 1);
        assert!(verify_pasting(&m, &one, &zeta, &clockwise));
        assert!(m.cut_out(&face_cycle).unwrap().is_none());

        // error cases
        assert_eq!(
            m.cut_out(&CycleClass::trivial(VertexId::from_index(0))),
            Err(Error::TrivialCycle)
        );
        let t = tetrahedron();
        assert_eq!(t.cut_out(&contour), Err(Error::NotADiscMap));
    }

    #[test]
    fn pasting_rejects_face_collapse_and_shift() {
        let m = tetra_minus(&[3]);
        let contour = m.contours()[0].clone();
        let (disc, zeta) = m.cut_out(&contour).unwrap().unwrap();
        // collapse two faces onto one: no longer injective
        let mut bad = zeta.clone();
        bad.face_map[1] = bad.face_map[0];
        assert!(!verify_pasting(&m, &disc, &bad, &contour));
        // a different cycle must be rejected
        let other = m.face_contour(FaceId::from_index(0));
        assert!(!verify_pasting(&m, &disc, &zeta, &other));
    }

    #[test]
    fn submap_of_a_disc_map_merges_contours_across_removed_edges() {
        // drop one internal edge of the tetra disc map: the two faces at it
        // must go too, and the tracing merges their boundary into the contour
        let m = tetra_minus(&[3]);
        let internal = m
            .complex()
            .edge_ids()
            .find(|e| !m.contours()[0].edge_set().contains(e))
            .unwrap();
        let killed: Vec<FaceId> = m.complex().faces_at_edge(internal);
        assert_eq!(killed.len(), 2);
        let mut sel = Selection::full(m.complex());
        sel.edges.remove(&internal);
        for f in &killed {
            sel.faces.remove(f);
        }
        let sub = m.submap(&sel).unwrap();
        assert_eq!(sub.complex().face_count(), 1);
        assert_eq!(sub.complex().edge_count(), 5);
        // counting invariant: every oriented edge exactly once
        let mut covered = vec![0u8; 2 * sub.complex().edge_count()];
        for f in sub.complex().face_ids() {
            for oe in sub.orientation().chosen_walk(sub.complex(), f) {
                covered[slot(oe)] += 1;
            }
        }
        for contour in sub.contours() {
            for &oe in &contour.representative().steps {
                covered[slot(oe)] += 1;
            }
        }
        assert!(covered.iter().all(|&n| n == 1));
        // the submap closes into a sphere again (a different one than the
        // original closure)
        let closure = sub.spherical_closure().unwrap();
        assert!(is_combinatorial_sphere(closure.sphere.complex()));
    }

    #[test]
    fn map_isomorphism_across_relabeling() {
        let m = tetra_minus(&[3]);
        // rebuild the same disc map with scrambled vertex order
        let src = m.complex();
        let mut b = Complex2::builder(Dim::Two);
        let perm = [3usize, 1, 0, 2];
        let mut vmap = vec![VertexId::from_index(0); 4];
        for &p in &perm {
            vmap[p] = b.vertex();
        }
        let mut emap = Vec::new();
        for e in src.edge_ids() {
            let rec = src.edge(e);
            emap.push(b.edge(vmap[rec.slot_a.index()], vmap[rec.slot_b.index()]));
        }
        for f in src.face_ids() {
            let walk = src
                .face(f)
                .walk
                .iter()
                .map(|oe| OrientedEdge { edge: emap[oe.edge.index()], dir: oe.dir })
                .collect();
            b.face(walk);
        }
        let relabeled_complex = b.build().unwrap();
        let contour_steps: Vec<OrientedEdge> = m.contours()[0]
            .representative()
            .steps
            .iter()
            .map(|oe| OrientedEdge { edge: emap[oe.edge.index()], dir: oe.dir })
            .collect();
        let start = relabeled_complex.tail(contour_steps[0]);
        let contour =
            CycleClass::from_cyclic_path(&relabeled_complex, PathSeq::new(start, contour_steps))
                .unwrap();
        let relabeled = MapStruct::from_parts(
            relabeled_complex,
            m.orientation().clone(),
            vec![contour],
        )
        .unwrap();
        let iso = find_map_isomorphism(&m, &relabeled).expect("maps are isomorphic");
        assert!(iso.check(m.complex(), relabeled.complex()).is_ok());
        // a map with a different contour orientation is not isomorphic
        let flipped = MapStruct::from_parts(
            m.complex().clone(),
            m.orientation().flipped(),
            vec![m.contours()[0].inverse(m.complex())],
        )
        .unwrap();
        assert!(find_map_isomorphism(&m, &flipped).is_none());
    }

    #[test]
    fn from_parts_validates_coverage() {
        let t = tetrahedron();
        let bad = MapStruct::from_parts(
            t.complex().clone(),
            t.orientation().clone(),
            vec![t.face_contour(FaceId::from_index(0))],
        );
        assert!(bad.is_err(), "extra contour double-covers oriented edges");

        let ok = MapStruct::from_parts(
            t.complex().clone(),
            t.orientation().clone(),
            Vec::new(),
        )
        .unwrap();
        assert_eq!(ok.kind(), MapKind::Spherical);
    }
}
