//! Recognition of combinatorial circles, surfaces, spheres and discs, and
//! coherent orientation of surfaces.
//!
//! Surface-hood is decided from local data: how often each edge occurs across
//! all boundary walks, and the link at every vertex. The link at `v` is the
//! graph whose nodes are the oriented edges leaving `v` and whose edges are
//! the face corners at `v`; on a closed surface it must be a single cycle, on
//! a surface with boundary a single cycle or a single open path.

use crate::complex::{Complex2, FaceId, OrientedEdge};
use crate::error::{Error, Result};
use crate::path::CycleClass;

/// Orientation flag of a face relative to its stored walk.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrientFlag {
    AsStored,
    Reversed,
}

impl OrientFlag {
    pub fn flip(self) -> Self {
        match self {
            OrientFlag::AsStored => OrientFlag::Reversed,
            OrientFlag::Reversed => OrientFlag::AsStored,
        }
    }
}

/// A face together with one of its orientations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct OrientedFace {
    pub face: FaceId,
    pub orientation: OrientFlag,
}

impl OrientedFace {
    pub fn inverse(self) -> Self {
        OrientedFace { face: self.face, orientation: self.orientation.flip() }
    }
}

/// An orientation choice: one flag per face.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientationChoice {
    flags: Vec<OrientFlag>,
}

impl OrientationChoice {
    pub fn all_as_stored(face_count: usize) -> Self {
        OrientationChoice { flags: vec![OrientFlag::AsStored; face_count] }
    }

    pub fn from_flags(flags: Vec<OrientFlag>) -> Self {
        OrientationChoice { flags }
    }

    pub fn face_count(&self) -> usize {
        self.flags.len()
    }

    pub fn flag(&self, f: FaceId) -> OrientFlag {
        self.flags[f.index()]
    }

    pub fn flags(&self) -> &[OrientFlag] {
        &self.flags
    }

    /// The opposite orientation: every flag flipped.
    pub fn flipped(&self) -> Self {
        OrientationChoice { flags: self.flags.iter().map(|f| f.flip()).collect() }
    }

    /// The chosen boundary walk of `f`: the stored walk, or its inverse.
    pub fn chosen_walk(&self, c: &Complex2, f: FaceId) -> Vec<OrientedEdge> {
        let walk = &c.face(f).walk;
        match self.flags[f.index()] {
            OrientFlag::AsStored => walk.clone(),
            OrientFlag::Reversed => walk.iter().rev().map(|oe| oe.inverse()).collect(),
        }
    }
}

/// Boundary cycle of an oriented face: the stored walk's cycle, or its
/// inverse for the reversed orientation.
pub fn boundary_cycle(c: &Complex2, of: OrientedFace) -> CycleClass {
    let walk = c.face(of.face).walk_path(c);
    let cycle = CycleClass::from_cyclic_path(c, walk).expect("face walk is a valid cyclic path");
    match of.orientation {
        OrientFlag::AsStored => cycle,
        OrientFlag::Reversed => cycle.inverse(c),
    }
}

/// Occurrence count of every edge across all face walks, each loop traversal
/// counted once per direction.
pub fn edge_occurrence_counts(c: &Complex2) -> Vec<usize> {
    let mut occ = vec![0usize; c.edge_count()];
    for f in c.face_ids() {
        for oe in &c.face(f).walk {
            occ[oe.edge.index()] += 1;
        }
    }
    occ
}

/// Per-vertex link: nodes are oriented edges leaving the vertex, link edges
/// are face corners.
struct VertexLink {
    nodes: Vec<OrientedEdge>,
    /// corner endpoints as indices into `nodes`
    corners: Vec<(usize, usize)>,
}

fn vertex_links(c: &Complex2) -> Vec<VertexLink> {
    let mut links: Vec<VertexLink> = c
        .leaving_all()
        .into_iter()
        .map(|nodes| VertexLink { nodes, corners: Vec::new() })
        .collect();
    let node_index = |link: &VertexLink, oe: OrientedEdge| -> usize {
        link.nodes.iter().position(|&x| x == oe).expect("leaving edge is a link node")
    };
    for f in c.face_ids() {
        let walk = &c.face(f).walk;
        let n = walk.len();
        for i in 0..n {
            let out = walk[i];
            let inc = walk[(i + n - 1) % n];
            let v = c.tail(out);
            let link = &mut links[v.index()];
            let a = node_index(link, inc.inverse());
            let b = node_index(link, out);
            link.corners.push((a, b));
        }
    }
    links
}

impl VertexLink {
    fn node_corner_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.nodes.len()];
        for &(a, b) in &self.corners {
            counts[a] += 1;
            counts[b] += 1;
        }
        counts
    }

    fn is_connected(&self) -> bool {
        let mut uf = crate::util::UnionFind::new(self.nodes.len());
        for &(a, b) in &self.corners {
            uf.union(a, b);
        }
        uf.all_same()
    }

    /// Single closed cycle through every node.
    fn is_single_cycle(&self) -> bool {
        self.is_connected() && self.node_corner_counts().iter().all(|&d| d == 2)
    }

    /// Single cycle or single open path through every node.
    fn is_cycle_or_path(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        let counts = self.node_corner_counts();
        if counts.iter().any(|&d| d > 2) {
            return false;
        }
        let endpoints = counts.iter().filter(|&&d| d < 2).count();
        endpoints == 0 || endpoints == 2
    }
}

/// Circle condition on the 1-skeleton alone: connected, nonempty edge set,
/// every vertex of degree exactly 2, as many vertices as edges.
pub(crate) fn skeleton_is_circle(c: &Complex2) -> bool {
    if c.edge_count() == 0 || !c.is_connected() {
        return false;
    }
    c.degrees().iter().all(|&d| d == 2) && c.vertex_count() == c.edge_count()
}

/// True for a finite connected 1-complex with nonempty edge set where every
/// vertex has degree exactly 2 (so ‖vertices‖ = ‖edges‖). Complexes with
/// faces are not circles.
pub fn is_combinatorial_circle(c: &Complex2) -> bool {
    c.face_count() == 0 && skeleton_is_circle(c)
}

/// Every edge occurs exactly twice across the face walks and every vertex
/// link is a single cycle. Connectivity is not required.
pub fn is_closed_surface(c: &Complex2) -> bool {
    if c.face_count() == 0 {
        return false;
    }
    if edge_occurrence_counts(c).iter().any(|&n| n != 2) {
        return false;
    }
    vertex_links(c).iter().all(|l| l.is_single_cycle())
}

/// Closed surface or surface with boundary (edge occurrences in {1, 2},
/// links single cycles or single open paths).
pub fn is_surface(c: &Complex2) -> bool {
    if c.face_count() == 0 {
        return false;
    }
    if edge_occurrence_counts(c).iter().any(|&n| n == 0 || n > 2) {
        return false;
    }
    vertex_links(c).iter().all(|l| l.is_cycle_or_path())
}

/// Connected closed surface with Euler characteristic 2.
pub fn is_combinatorial_sphere(c: &Complex2) -> bool {
    is_closed_surface(c) && c.is_connected() && c.euler_characteristic() == 2
}

/// Connected surface with χ = 1 whose boundary edges form one circle.
pub fn is_combinatorial_disc(c: &Complex2) -> bool {
    if !is_surface(c) || !c.is_connected() || c.euler_characteristic() != 1 {
        return false;
    }
    let occ = edge_occurrence_counts(c);
    let boundary: Vec<crate::complex::EdgeId> = c
        .edge_ids()
        .filter(|e| occ[e.index()] == 1)
        .collect();
    if boundary.is_empty() {
        return false;
    }
    // induced boundary subgraph must be a single circle
    let mut b = Complex2::builder(crate::complex::Dim::One);
    let mut vmap = vec![None; c.vertex_count()];
    for &e in &boundary {
        let rec = c.edge(e);
        for v in [rec.slot_a, rec.slot_b] {
            if vmap[v.index()].is_none() {
                vmap[v.index()] = Some(b.vertex());
            }
        }
        b.edge(vmap[rec.slot_a.index()].unwrap(), vmap[rec.slot_b.index()].unwrap());
    }
    is_combinatorial_circle(&b.build_unchecked())
}

/// Is `theta` coherent: does every oriented edge get covered at most once by
/// the chosen boundary walks?
pub fn is_coherent(c: &Complex2, theta: &OrientationChoice) -> bool {
    if theta.face_count() != c.face_count() {
        return false;
    }
    let mut covered = vec![false; 2 * c.edge_count()];
    for f in c.face_ids() {
        for oe in theta.chosen_walk(c, f) {
            let slot = 2 * oe.edge.index() + (oe.dir == crate::complex::EdgeDir::Backward) as usize;
            if covered[slot] {
                return false;
            }
            covered[slot] = true;
        }
    }
    true
}

/// Finds a coherent orientation of a combinatorial surface, or `None` when
/// the surface is non-orientable. Deterministic: the lowest-id face of every
/// face-adjacency component is seeded as-stored and constraints propagate
/// across shared edges.
pub fn find_coherent_orientation(c: &Complex2) -> Result<Option<OrientationChoice>> {
    if !is_surface(c) {
        return Err(Error::NotASurface);
    }
    // signed occurrences per edge: (face, direction parity)
    let mut occurrences: Vec<Vec<(FaceId, bool)>> = vec![Vec::new(); c.edge_count()];
    for f in c.face_ids() {
        for oe in &c.face(f).walk {
            occurrences[oe.edge.index()]
                .push((f, oe.dir == crate::complex::EdgeDir::Forward));
        }
    }
    let mut flags: Vec<Option<OrientFlag>> = vec![None; c.face_count()];
    for seed in c.face_ids() {
        if flags[seed.index()].is_some() {
            continue;
        }
        flags[seed.index()] = Some(OrientFlag::AsStored);
        let mut queue = vec![seed];
        while let Some(f) = queue.pop() {
            let my_flag = flags[f.index()].unwrap();
            for oe in &c.face(f).walk {
                let occ = &occurrences[oe.edge.index()];
                if occ.len() != 2 {
                    continue;
                }
                let (pair, same_dir) = {
                    let (f0, d0) = occ[0];
                    let (f1, d1) = occ[1];
                    if f0 == f && f1 == f {
                        // intro-facial within one face: coherent only if the
                        // two traversals run in opposite directions
                        if d0 == d1 {
                            return Ok(None);
                        }
                        continue;
                    }
                    if f0 == f {
                        (f1, d0 == d1)
                    } else {
                        (f0, d0 == d1)
                    }
                };
                // same traversal direction forces opposite flags
                let needed = if same_dir { my_flag.flip() } else { my_flag };
                match flags[pair.index()] {
                    None => {
                        flags[pair.index()] = Some(needed);
                        queue.push(pair);
                    }
                    Some(existing) if existing != needed => return Ok(None),
                    Some(_) => {}
                }
            }
        }
    }
    let theta = OrientationChoice::from_flags(flags.into_iter().map(Option::unwrap).collect());
    if is_coherent(c, &theta) {
        Ok(Some(theta))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Dim, OrientedEdge};
    use crate::gen::{polygon_double, tetrahedron};

    fn circle_loop() -> Complex2 {
        let mut b = Complex2::builder(Dim::One);
        let v = b.vertex();
        b.edge(v, v);
        b.build_unchecked()
    }

    pub(crate) fn torus() -> Complex2 {
        // one vertex, two loops a and b, one square face a b a⁻¹ b⁻¹
        let mut bld = Complex2::builder(Dim::Two);
        let v = bld.vertex();
        let a = bld.edge(v, v);
        let b = bld.edge(v, v);
        bld.face(vec![
            OrientedEdge::forward(a),
            OrientedEdge::forward(b),
            OrientedEdge::backward(a),
            OrientedEdge::backward(b),
        ]);
        bld.build_unchecked()
    }

    pub(crate) fn projective_plane() -> Complex2 {
        // one vertex, one loop, one face traversing it twice forward
        let mut bld = Complex2::builder(Dim::Two);
        let v = bld.vertex();
        let e = bld.edge(v, v);
        bld.face(vec![OrientedEdge::forward(e), OrientedEdge::forward(e)]);
        bld.build_unchecked()
    }

    pub(crate) fn bigon_sphere() -> Complex2 {
        // two vertices, one edge, one face e e⁻¹: a sphere with a single face
        let mut bld = Complex2::builder(Dim::Two);
        let v = bld.vertex();
        let w = bld.vertex();
        let e = bld.edge(v, w);
        bld.face(vec![OrientedEdge::forward(e), OrientedEdge::backward(e)]);
        bld.build_unchecked()
    }

    #[test]
    fn circle_recognition() {
        assert!(is_combinatorial_circle(&circle_loop()));

        let mut b = Complex2::builder(Dim::One);
        let v0 = b.vertex();
        let v1 = b.vertex();
        let v2 = b.vertex();
        b.edge(v0, v1);
        b.edge(v1, v2);
        let path = b.build_unchecked();
        assert!(!is_combinatorial_circle(&path));

        let mut b = Complex2::builder(Dim::One);
        for _ in 0..2 {
            let vs: Vec<_> = (0..3).map(|_| b.vertex()).collect();
            for i in 0..3 {
                b.edge(vs[i], vs[(i + 1) % 3]);
            }
        }
        let two_triangles = b.build_unchecked();
        assert!(!is_combinatorial_circle(&two_triangles));
    }

    #[test]
    fn closed_surface_recognition() {
        assert!(is_closed_surface(tetrahedron().complex()));
        assert!(is_closed_surface(&torus()));
        assert!(is_closed_surface(&bigon_sphere()));
        assert!(is_closed_surface(&projective_plane()));

        // one triangle alone has boundary
        let mut b = Complex2::builder(Dim::Two);
        let vs: Vec<_> = (0..3).map(|_| b.vertex()).collect();
        let es: Vec<_> = (0..3).map(|i| b.edge(vs[i], vs[(i + 1) % 3])).collect();
        b.face(es.iter().map(|&e| OrientedEdge::forward(e)).collect());
        let triangle = b.build_unchecked();
        assert!(!is_closed_surface(&triangle));
        assert!(is_surface(&triangle));
    }

    #[test]
    fn wedge_of_spheres_is_not_a_surface() {
        // two loop-doubles sharing one vertex: the link at the shared vertex
        // is two circles
        let mut b = Complex2::builder(Dim::Two);
        let v = b.vertex();
        let e1 = b.edge(v, v);
        let e2 = b.edge(v, v);
        b.face(vec![OrientedEdge::forward(e1)]);
        b.face(vec![OrientedEdge::backward(e1)]);
        b.face(vec![OrientedEdge::forward(e2)]);
        b.face(vec![OrientedEdge::backward(e2)]);
        let wedge = b.build_unchecked();
        assert!(wedge.validate().is_ok());
        assert!(!is_closed_surface(&wedge));
        assert!(!is_combinatorial_sphere(&wedge));
    }

    #[test]
    fn sphere_and_disc_recognition() {
        for n in 1..=5 {
            assert!(is_combinatorial_sphere(polygon_double(n).unwrap().complex()));
        }
        assert!(is_combinatorial_sphere(&bigon_sphere()));
        assert!(!is_combinatorial_sphere(&torus()));
        assert_eq!(torus().euler_characteristic(), 0);

        // single square face with 4 distinct vertices is a disc
        let mut b = Complex2::builder(Dim::Two);
        let vs: Vec<_> = (0..4).map(|_| b.vertex()).collect();
        let es: Vec<_> = (0..4).map(|i| b.edge(vs[i], vs[(i + 1) % 4])).collect();
        b.face(es.iter().map(|&e| OrientedEdge::forward(e)).collect());
        let square = b.build_unchecked();
        assert!(is_combinatorial_disc(&square));
        assert!(!is_combinatorial_disc(tetrahedron().complex()));
    }

    #[test]
    fn boundary_cycles_of_inverse_faces_are_inverse() {
        let s = polygon_double(1).unwrap();
        let c = s.complex();
        let f = crate::complex::FaceId::from_index(0);
        let fwd = boundary_cycle(c, OrientedFace { face: f, orientation: OrientFlag::AsStored });
        let rev = boundary_cycle(c, OrientedFace { face: f, orientation: OrientFlag::Reversed });
        assert_eq!(fwd.inverse(c), rev);
        // in the loop double, the two faces' as-stored cycles are mutually inverse
        let g = crate::complex::FaceId::from_index(1);
        let other = boundary_cycle(c, OrientedFace { face: g, orientation: OrientFlag::AsStored });
        assert_eq!(fwd.inverse(c), other);
    }

    #[test]
    fn coherent_orientation_found_and_unique_up_to_flip() {
        let t = tetrahedron();
        let c = t.complex();
        let theta = find_coherent_orientation(c).unwrap().expect("tetrahedron is orientable");
        assert!(is_coherent(c, &theta));
        assert!(is_coherent(c, &theta.flipped()));
    }

    #[test]
    fn flipping_one_stored_walk_flips_the_flag() {
        let t = tetrahedron();
        let c = t.complex();
        let mut flipped = c.clone();
        let w = &mut flipped.faces[2].walk;
        *w = w.iter().rev().map(|oe| oe.inverse()).collect();
        assert!(flipped.validate().is_ok());
        let theta = find_coherent_orientation(&flipped)
            .unwrap()
            .expect("still orientable");
        assert!(is_coherent(&flipped, &theta));
        assert_eq!(theta.flag(crate::complex::FaceId::from_index(2)), OrientFlag::Reversed);
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let pp = projective_plane();
        assert_eq!(find_coherent_orientation(&pp), Ok(None));
    }

    #[test]
    fn orientation_requires_a_surface() {
        let c = circle_loop();
        assert_eq!(find_coherent_orientation(&c), Err(Error::NotASurface));
    }
}
