//! Deterministic and seeded constructions of combinatorial spheres, used as
//! fixtures and as the corpus behind the property suites.
//!
//! The two local moves (edge subdivision, face splitting) both preserve
//! sphere-hood and χ = 2; seeded generation applies them from a polygon
//! double. Generation is deterministic per seed (ChaCha8).

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{validate_arc_system, ArcSystem};
use crate::complex::{Complex2, Dim, EdgeId, FaceId, OrientedEdge};
use crate::error::{Error, ParseError, Result};
use crate::map::MapStruct;
use crate::path::{maximal_arcs, ArcRec};
use crate::surface::{OrientFlag, OrientationChoice};

/// Two faces glued along an n-gon boundary: the minimal sphere on a circle
/// skeleton (an exceptional map).
pub fn polygon_double(n: usize) -> Result<MapStruct> {
    if n == 0 {
        return Err(Error::InvalidGenOp("polygon_double requires n >= 1".into()));
    }
    let mut b = Complex2::builder(Dim::Two);
    let vs: Vec<_> = (0..n).map(|_| b.vertex()).collect();
    let es: Vec<_> = (0..n).map(|i| b.edge(vs[i], vs[(i + 1) % n])).collect();
    b.face(es.iter().map(|&e| OrientedEdge::forward(e)).collect());
    b.face(es.iter().rev().map(|&e| OrientedEdge::backward(e)).collect());
    let complex = b.build().expect("polygon double is well formed");
    MapStruct::spherical(complex, OrientationChoice::all_as_stored(2))
}

/// The boundary of a tetrahedron with a coherent choice of walks.
pub fn tetrahedron() -> MapStruct {
    let mut b = Complex2::builder(Dim::Two);
    let v: Vec<_> = (0..4).map(|_| b.vertex()).collect();
    let e01 = b.edge(v[0], v[1]);
    let e02 = b.edge(v[0], v[2]);
    let e03 = b.edge(v[0], v[3]);
    let e12 = b.edge(v[1], v[2]);
    let e13 = b.edge(v[1], v[3]);
    let e23 = b.edge(v[2], v[3]);
    b.face(vec![OrientedEdge::forward(e01), OrientedEdge::forward(e12), OrientedEdge::backward(e02)]);
    b.face(vec![OrientedEdge::forward(e03), OrientedEdge::backward(e13), OrientedEdge::backward(e01)]);
    b.face(vec![OrientedEdge::forward(e13), OrientedEdge::backward(e23), OrientedEdge::backward(e12)]);
    b.face(vec![OrientedEdge::forward(e02), OrientedEdge::forward(e23), OrientedEdge::backward(e03)]);
    let complex = b.build().expect("tetrahedron is well formed");
    MapStruct::spherical(complex, OrientationChoice::all_as_stored(4))
        .expect("tetrahedron is an oriented sphere")
}

fn copy_vertices_edges(c: &Complex2) -> crate::complex::ComplexBuilder {
    let mut b = Complex2::builder(c.dim());
    let named = c.is_named();
    for v in c.vertices() {
        if named {
            b.named_vertex(c.vertex_name(v));
        } else {
            b.vertex();
        }
    }
    for e in c.edge_ids() {
        let rec = c.edge(e);
        if named {
            b.named_edge(c.edge_name(e), rec.slot_a, rec.slot_b);
        } else {
            b.edge(rec.slot_a, rec.slot_b);
        }
    }
    b
}

/// Replaces edge `e` by two edges through a fresh vertex, updating every
/// incident face walk. Adds one vertex and one edge; χ is preserved.
pub fn subdivide_edge(s: &MapStruct, e: EdgeId) -> Result<MapStruct> {
    let c = s.complex();
    if !c.contains_edge(e) {
        return Err(Error::UnknownEdge(e));
    }
    let named = c.is_named();
    let mut b = Complex2::builder(c.dim());
    for v in c.vertices() {
        if named {
            b.named_vertex(c.vertex_name(v));
        } else {
            b.vertex();
        }
    }
    let mid = if named {
        b.named_vertex(format!("v{}_{}", c.vertex_count(), c.edge_name(e)))
    } else {
        b.vertex()
    };
    for old in c.edge_ids() {
        let rec = c.edge(old);
        let (a, bb) = if old == e { (rec.slot_a, mid) } else { (rec.slot_a, rec.slot_b) };
        if named {
            b.named_edge(c.edge_name(old), a, bb);
        } else {
            b.edge(a, bb);
        }
    }
    let second = if named {
        b.named_edge(format!("e{}_{}", c.edge_count(), c.edge_name(e)), mid, c.edge(e).slot_b)
    } else {
        b.edge(mid, c.edge(e).slot_b)
    };
    for f in c.face_ids() {
        let mut walk = Vec::new();
        for &oe in &c.face(f).walk {
            if oe.edge == e {
                match oe.dir {
                    crate::complex::EdgeDir::Forward => {
                        walk.push(OrientedEdge::forward(e));
                        walk.push(OrientedEdge::forward(second));
                    }
                    crate::complex::EdgeDir::Backward => {
                        walk.push(OrientedEdge::backward(second));
                        walk.push(OrientedEdge::backward(e));
                    }
                }
            } else {
                walk.push(oe);
            }
        }
        if named {
            b.named_face(c.face_name(f), walk);
        } else {
            b.face(walk);
        }
    }
    let complex = b
        .build()
        .map_err(|r| Error::InvalidGenOp(format!("subdivision broke the complex: {:?}", r.violations)))?;
    Ok(MapStruct::spherical_unchecked(complex, s.orientation().clone()))
}

/// Splits face `f` along a new edge between the vertices at positions `i` and
/// `j` of its chosen walk. Adds one edge and one face; χ is preserved.
pub fn split_face(s: &MapStruct, f: FaceId, i: usize, j: usize) -> Result<MapStruct> {
    let c = s.complex();
    if !c.contains_face(f) {
        return Err(Error::UnknownFace(f));
    }
    let walk = s.orientation().chosen_walk(c, f);
    let d = walk.len();
    if d < 2 || i == j || i >= d || j >= d {
        return Err(Error::InvalidGenOp(format!(
            "split_face needs two distinct positions below the degree (got {i}, {j} on degree {d})"
        )));
    }
    let (i, j) = (i.min(j), i.max(j));
    let u = c.tail(walk[i]);
    let v = c.tail(walk[j]);
    let mut b = copy_vertices_edges(c);
    let named = c.is_named();
    let chord = if named {
        b.named_edge(format!("e{}_{}", c.edge_count(), c.face_name(f)), u, v)
    } else {
        b.edge(u, v)
    };
    let mut first: Vec<OrientedEdge> = walk[i..j].to_vec();
    first.push(OrientedEdge::backward(chord));
    let mut second: Vec<OrientedEdge> = walk[j..].to_vec();
    second.extend_from_slice(&walk[..i]);
    second.push(OrientedEdge::forward(chord));
    for old in c.face_ids() {
        let w = if old == f { first.clone() } else { c.face(old).walk.clone() };
        if named {
            b.named_face(c.face_name(old), w);
        } else {
            b.face(w);
        }
    }
    if named {
        b.named_face(format!("f{}_{}", c.face_count(), c.face_name(f)), second);
    } else {
        b.face(second);
    }
    let complex = b
        .build()
        .map_err(|r| Error::InvalidGenOp(format!("split broke the complex: {:?}", r.violations)))?;
    let mut flags = s.orientation().flags().to_vec();
    flags[f.index()] = OrientFlag::AsStored;
    flags.push(OrientFlag::AsStored);
    Ok(MapStruct::spherical_unchecked(complex, OrientationChoice::from_flags(flags)))
}

/// One sphere-preserving generation step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenOp {
    Initial(usize),
    Subdivide(EdgeId),
    Split(FaceId, usize, usize),
}

/// The replayable log of a seeded generation run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenLog(pub Vec<GenOp>);

impl fmt::Display for GenLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.0 {
            match op {
                GenOp::Initial(n) => writeln!(f, "init {n}")?,
                GenOp::Subdivide(e) => writeln!(f, "subdivide e{}", e.index())?,
                GenOp::Split(face, i, j) => writeln!(f, "split f{} {i} {j}", face.index())?,
            }
        }
        Ok(())
    }
}

impl FromStr for GenLog {
    type Err = Error;

    fn from_str(s: &str) -> Result<GenLog> {
        let mut ops = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fail = |msg: &str| Error::Parse(ParseError::new(lineno + 1, msg));
            let mut words = line.split_whitespace();
            match words.next() {
                Some("init") => {
                    let n: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| fail("init needs a polygon size"))?;
                    ops.push(GenOp::Initial(n));
                }
                Some("subdivide") => {
                    let idx = words
                        .next()
                        .and_then(|w| w.strip_prefix('e'))
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| fail("subdivide needs an edge like e3"))?;
                    ops.push(GenOp::Subdivide(EdgeId::from_index(idx)));
                }
                Some("split") => {
                    let idx: usize = words
                        .next()
                        .and_then(|w| w.strip_prefix('f'))
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| fail("split needs a face like f1"))?;
                    let i = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| fail("split needs two walk positions"))?;
                    let j = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| fail("split needs two walk positions"))?;
                    ops.push(GenOp::Split(FaceId::from_index(idx), i, j));
                }
                Some(other) => return Err(fail(&format!("unknown generator op {other:?}"))),
                None => unreachable!(),
            }
            if words.next().is_some() {
                return Err(fail("trailing tokens"));
            }
        }
        Ok(GenLog(ops))
    }
}

/// Reapplies a generation log from scratch.
pub fn replay(log: &GenLog) -> Result<MapStruct> {
    let mut ops = log.0.iter();
    let mut sphere = match ops.next() {
        Some(&GenOp::Initial(n)) => polygon_double(n)?,
        _ => return Err(Error::InvalidGenOp("log must start with an init op".into())),
    };
    for op in ops {
        sphere = match *op {
            GenOp::Initial(_) => return Err(Error::InvalidGenOp("init op after the first".into())),
            GenOp::Subdivide(e) => subdivide_edge(&sphere, e)?,
            GenOp::Split(f, i, j) => split_face(&sphere, f, i, j)?,
        };
    }
    Ok(sphere)
}

/// Seeded random sphere: a polygon double followed by `n_ops` random local
/// moves. Deterministic per seed.
pub fn random_sphere(seed: u64, n_ops: usize) -> (MapStruct, GenLog) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=4);
    let mut sphere = polygon_double(k).expect("k >= 1");
    let mut log = vec![GenOp::Initial(k)];
    for _ in 0..n_ops {
        let c = sphere.complex();
        let op = if rng.gen_bool(0.5) {
            GenOp::Subdivide(EdgeId::from_index(rng.gen_range(0..c.edge_count())))
        } else {
            let f = FaceId::from_index(rng.gen_range(0..c.face_count()));
            let d = c.face(f).walk.len();
            if d < 2 {
                GenOp::Subdivide(EdgeId::from_index(rng.gen_range(0..c.edge_count())))
            } else {
                let i = rng.gen_range(0..d);
                let mut j = rng.gen_range(0..d - 1);
                if j >= i {
                    j += 1;
                }
                GenOp::Split(f, i, j)
            }
        };
        sphere = match op {
            GenOp::Initial(_) => unreachable!(),
            GenOp::Subdivide(e) => subdivide_edge(&sphere, e).expect("subdivision preserves spheres"),
            GenOp::Split(f, i, j) => split_face(&sphere, f, i, j).expect("splitting preserves spheres"),
        };
        log.push(op);
    }
    (sphere, GenLog(log))
}

/// Picks a random valid arc system on a sphere by rejection sampling random
/// nonempty subsets of an arc pool until [`validate_arc_system`] accepts one.
/// A singleton arc always validates, so sampling terminates.
pub fn random_arc_system(d: &Complex2, rng: &mut impl Rng) -> ArcSystem {
    let maximal = maximal_arcs(d);
    let disjoint = maximal
        .iter()
        .enumerate()
        .all(|(i, a)| maximal.iter().skip(i + 1).all(|b| !a.overlaps(b)));
    let pool: Vec<ArcRec> = if disjoint && !maximal.is_empty() && rng.gen_bool(0.5) {
        maximal
    } else {
        d.edge_ids()
            .map(|e| {
                let oe = OrientedEdge::forward(e);
                ArcRec::new(d, crate::path::PathSeq::new(d.tail(oe), vec![oe]))
                    .expect("a single edge is an arc")
            })
            .collect()
    };
    let mut indices: Vec<usize> = (0..pool.len()).collect();
    for _ in 0..50 {
        indices.shuffle(rng);
        let take = rng.gen_range(1..=indices.len());
        let subset: Vec<ArcRec> = indices[..take].iter().map(|&i| pool[i].clone()).collect();
        if let Ok(sys) = validate_arc_system(d, subset) {
            return sys;
        }
    }
    validate_arc_system(d, vec![pool[indices[0]].clone()])
        .expect("a single arc satisfies the chain condition vacuously")
}
