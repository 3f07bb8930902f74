//! Paths, cycles, their classifications, and arcs.
//!
//! A path alternates vertices and oriented edges; only the start vertex and
//! the steps are stored, the intermediate vertices being implied. A cycle is
//! the set of all cyclic shifts of a cyclic path; we keep the
//! lexicographically least rotation as the canonical representative so cycles
//! can be compared and hashed.

use std::collections::BTreeSet;

use crate::complex::{Complex2, EdgeId, OrientedEdge, VertexId};
use crate::error::{Error, Result};

/// A path: a start vertex and a (possibly empty) run of oriented edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PathSeq {
    pub start: VertexId,
    pub steps: Vec<OrientedEdge>,
}

impl PathSeq {
    pub fn new(start: VertexId, steps: Vec<OrientedEdge>) -> Self {
        PathSeq { start, steps }
    }

    pub fn trivial(at: VertexId) -> Self {
        PathSeq { start: at, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self, c: &Complex2) -> VertexId {
        self.steps.last().map_or(self.start, |&oe| c.head(oe))
    }

    pub fn is_cyclic(&self, c: &Complex2) -> bool {
        self.end(c) == self.start
    }

    /// Vertex sequence `v0, v1, ..., vn` (length `len + 1`).
    pub fn vertices(&self, c: &Complex2) -> Vec<VertexId> {
        let mut vs = Vec::with_capacity(self.steps.len() + 1);
        vs.push(self.start);
        for &oe in &self.steps {
            vs.push(c.head(oe));
        }
        vs
    }

    /// True when the start exists and consecutive steps chain head-to-tail.
    pub fn is_valid_in(&self, c: &Complex2) -> bool {
        if !c.contains_vertex(self.start) {
            return false;
        }
        let mut at = self.start;
        for &oe in &self.steps {
            if !c.contains_edge(oe.edge) || c.tail(oe) != at {
                return false;
            }
            at = c.head(oe);
        }
        true
    }

    pub fn inverse(&self, c: &Complex2) -> PathSeq {
        PathSeq {
            start: self.end(c),
            steps: self.steps.iter().rev().map(|oe| oe.inverse()).collect(),
        }
    }

    pub fn concat(&self, c: &Complex2, other: &PathSeq) -> Result<PathSeq> {
        if self.end(c) != other.start {
            return Err(Error::ConcatMismatch);
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(PathSeq { start: self.start, steps })
    }

    /// Set of underlying edges used by the path.
    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.steps.iter().map(|oe| oe.edge).collect()
    }
}

/// Path classification flags. A path is reduced when it has no `e e⁻¹`
/// subpath; simple when it is nontrivial, reduced, and no intermediate
/// vertex occurs more than once.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PathFlags {
    pub reduced: bool,
    pub simple: bool,
}

pub fn classify_path(c: &Complex2, p: &PathSeq) -> Result<PathFlags> {
    if !p.is_valid_in(c) {
        return Err(Error::PathNotEmbedded);
    }
    let reduced = p.steps.windows(2).all(|w| w[1] != w[0].inverse());
    let simple = !p.is_empty() && reduced && intermediates_unique(&p.vertices(c));
    Ok(PathFlags { reduced, simple })
}

/// No vertex at positions 1..n-1 of the vertex sequence occurs twice anywhere
/// in the sequence.
fn intermediates_unique(vs: &[VertexId]) -> bool {
    let n = vs.len();
    for i in 1..n.saturating_sub(1) {
        for j in 0..n {
            if j != i && vs[j] == vs[i] {
                return false;
            }
        }
    }
    true
}

/// A cycle: the shift class of a cyclic path, stored canonically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycleClass {
    rep: PathSeq,
}

impl CycleClass {
    /// Canonicalizes a cyclic path by rotating its steps to the
    /// lexicographically least sequence (by edge id, then direction).
    pub fn from_cyclic_path(c: &Complex2, p: PathSeq) -> Result<CycleClass> {
        if !p.is_valid_in(c) {
            return Err(Error::PathNotEmbedded);
        }
        if !p.is_cyclic(c) {
            return Err(Error::ConcatMismatch);
        }
        if p.is_empty() {
            return Ok(CycleClass { rep: p });
        }
        let n = p.steps.len();
        let best = (0..n)
            .min_by(|&i, &j| rotation_cmp(&p.steps, i, j))
            .unwrap();
        let mut steps = Vec::with_capacity(n);
        steps.extend_from_slice(&p.steps[best..]);
        steps.extend_from_slice(&p.steps[..best]);
        let start = c.tail(steps[0]);
        Ok(CycleClass { rep: PathSeq { start, steps } })
    }

    pub fn trivial(at: VertexId) -> CycleClass {
        CycleClass { rep: PathSeq::trivial(at) }
    }

    pub fn representative(&self) -> &PathSeq {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.steps.is_empty()
    }

    /// All cyclic shifts of the canonical representative.
    pub fn shifts(&self, c: &Complex2) -> Vec<PathSeq> {
        if self.is_empty() {
            return vec![self.rep.clone()];
        }
        let n = self.rep.steps.len();
        (0..n)
            .map(|r| {
                let mut steps = Vec::with_capacity(n);
                steps.extend_from_slice(&self.rep.steps[r..]);
                steps.extend_from_slice(&self.rep.steps[..r]);
                PathSeq { start: c.tail(steps[0]), steps }
            })
            .collect()
    }

    pub fn inverse(&self, c: &Complex2) -> CycleClass {
        CycleClass::from_cyclic_path(c, self.rep.inverse(c)).expect("inverse of a cycle is a cycle")
    }

    /// Vertices visited by the cycle (tails of all steps; the base vertex for
    /// a trivial cycle).
    pub fn vertex_set(&self, c: &Complex2) -> BTreeSet<VertexId> {
        if self.is_empty() {
            return [self.rep.start].into();
        }
        self.rep.steps.iter().map(|&oe| c.tail(oe)).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.rep.edge_set()
    }

    pub fn contains_oriented_edge(&self, oe: OrientedEdge) -> bool {
        self.rep.steps.contains(&oe)
    }
}

fn rotation_cmp(steps: &[OrientedEdge], i: usize, j: usize) -> std::cmp::Ordering {
    let n = steps.len();
    for k in 0..n {
        let a = steps[(i + k) % n];
        let b = steps[(j + k) % n];
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Cycle classification flags, each quantified over all cyclic shifts of the
/// representative.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CycleFlags {
    pub cyclically_reduced: bool,
    pub reduced_cycle: bool,
    pub simple_cycle: bool,
}

pub fn classify_cycle(c: &Complex2, cycle: &CycleClass) -> Result<CycleFlags> {
    if !cycle.rep.is_valid_in(c) {
        return Err(Error::PathNotEmbedded);
    }
    let shifts = cycle.shifts(c);
    // A trivial cyclic path is reduced and cyclically reduced, but not simple.
    let mut cyclically_reduced = true;
    let mut reduced_cycle = true;
    let mut simple_cycle = !cycle.is_empty();
    for shift in &shifts {
        let flags = classify_path(c, shift)?;
        let cyc_red = flags.reduced
            && match (shift.steps.first(), shift.steps.last()) {
                (Some(&first), Some(&last)) => first != last.inverse(),
                _ => true,
            };
        if !cyc_red {
            cyclically_reduced = false;
            reduced_cycle = false;
        }
        if !flags.simple {
            simple_cycle = false;
        }
    }
    Ok(CycleFlags { cyclically_reduced, reduced_cycle, simple_cycle })
}

/// Is `p` a subpath of some power of a representative of `cycle`?
pub fn subpath_of_cycle(c: &Complex2, p: &PathSeq, cycle: &CycleClass) -> bool {
    if p.is_empty() {
        return cycle.vertex_set(c).contains(&p.start);
    }
    let n = cycle.len();
    if n == 0 {
        return false;
    }
    let steps = &cycle.rep.steps;
    'shift: for r in 0..n {
        for (k, &step) in p.steps.iter().enumerate() {
            if steps[(r + k) % n] != step {
                continue 'shift;
            }
        }
        return true;
    }
    false
}

/// Does the path set `S` cover `cycle`? Requires that no oriented edge occurs
/// more than once in the cycle.
pub fn covers_cycle(c: &Complex2, cycle: &CycleClass, paths: &[PathSeq]) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for &oe in &cycle.rep.steps {
        if !seen.insert(oe) {
            return Err(Error::RepeatedOrientedEdge);
        }
    }
    for p in paths {
        if p.is_empty() || !subpath_of_cycle(c, p, cycle) {
            return Ok(false);
        }
    }
    let covered: BTreeSet<OrientedEdge> =
        paths.iter().flat_map(|p| p.steps.iter().copied()).collect();
    Ok(cycle.rep.steps.iter().all(|oe| covered.contains(oe)))
}

/// A non-oriented arc: a pair of mutually inverse oriented arcs, stored as the
/// lexicographically smaller of the two representative paths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ArcRec {
    rep: PathSeq,
}

impl ArcRec {
    /// Validates arc-hood (simple path, all intermediate vertices of ambient
    /// degree 2) and canonicalizes the representative.
    pub fn new(c: &Complex2, p: PathSeq) -> Result<ArcRec> {
        let flags = classify_path(c, &p).map_err(|_| Error::NotAnArc("path not embedded".into()))?;
        if !flags.simple {
            return Err(Error::NotAnArc("representative is not a simple path".into()));
        }
        let vs = p.vertices(c);
        for &v in &vs[1..vs.len() - 1] {
            if c.vertex_degree(v)? != 2 {
                return Err(Error::NotAnArc(format!(
                    "intermediate vertex {v:?} has degree != 2"
                )));
            }
        }
        let inv = p.inverse(c);
        let rep = if path_key(&inv) < path_key(&p) { inv } else { p };
        Ok(ArcRec { rep })
    }

    pub fn representative(&self) -> &PathSeq {
        &self.rep
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.rep.edge_set()
    }

    pub fn intermediate_vertices(&self, c: &Complex2) -> Vec<VertexId> {
        let vs = self.rep.vertices(c);
        vs[1..vs.len() - 1].to_vec()
    }

    pub fn overlaps(&self, other: &ArcRec) -> bool {
        !self.edge_set().is_disjoint(&other.edge_set())
    }

    /// The two associated oriented arcs, representative first.
    pub fn oriented(&self, c: &Complex2) -> [PathSeq; 2] {
        [self.rep.clone(), self.rep.inverse(c)]
    }
}

fn path_key(p: &PathSeq) -> (Vec<OrientedEdge>, VertexId) {
    (p.steps.clone(), p.start)
}

/// All maximal arcs of a graph (or a 1-skeleton). On circle components the
/// maximal arcs are the full-cycle paths, one per start vertex; they overlap
/// pairwise, which matches the exceptional-map situation, and are all
/// returned.
pub fn maximal_arcs(c: &Complex2) -> Vec<ArcRec> {
    let mut result: BTreeSet<ArcRec> = BTreeSet::new();
    let degree: Vec<usize> = c.vertices().map(|v| c.vertex_degree(v).unwrap()).collect();
    let mut edge_on_chain = vec![false; c.edge_count()];

    // Chains out of junction vertices (degree != 2).
    for v in c.vertices() {
        if degree[v.index()] == 2 {
            continue;
        }
        for start in c.leaving(v) {
            let mut steps = vec![start];
            let mut at = c.head(start);
            let mut arrived = start;
            while degree[at.index()] == 2 && at != v {
                let next = c
                    .leaving(at)
                    .into_iter()
                    .find(|&oe| oe != arrived.inverse())
                    .expect("degree-2 vertex has a second edge end");
                steps.push(next);
                arrived = next;
                at = c.head(next);
            }
            for s in &steps {
                edge_on_chain[s.edge.index()] = true;
            }
            let path = PathSeq::new(v, steps);
            result.insert(ArcRec::new(c, path).expect("chain from a junction is an arc"));
        }
    }

    // Circle components: every vertex has degree 2 and no chain reached them.
    let mut edge_seen = edge_on_chain;
    for e in c.edge_ids() {
        if edge_seen[e.index()] {
            continue;
        }
        // walk the component once to list it and mark its edges
        let mut cycle_steps = vec![OrientedEdge::forward(e)];
        edge_seen[e.index()] = true;
        let anchor = c.tail(OrientedEdge::forward(e));
        let mut at = c.head(OrientedEdge::forward(e));
        let mut arrived = OrientedEdge::forward(e);
        while at != anchor {
            let next = c
                .leaving(at)
                .into_iter()
                .find(|&oe| oe != arrived.inverse())
                .expect("circle component vertex has a second edge end");
            edge_seen[next.edge.index()] = true;
            cycle_steps.push(next);
            arrived = next;
            at = c.head(next);
        }
        let n = cycle_steps.len();
        for r in 0..n {
            let mut steps = Vec::with_capacity(n);
            steps.extend_from_slice(&cycle_steps[r..]);
            steps.extend_from_slice(&cycle_steps[..r]);
            let start = c.tail(steps[0]);
            result.insert(
                ArcRec::new(c, PathSeq::new(start, steps))
                    .expect("full rotation of a circle component is an arc"),
            );
        }
    }

    result.into_iter().collect()
}

/// All simple nontrivial cycles of the complex's 1-skeleton, as oriented
/// cycle classes (both directions of each curve appear). Desk-scale
/// enumeration used by the cut-out machinery's tests.
pub fn simple_cycles(c: &Complex2) -> Vec<CycleClass> {
    let mut found: BTreeSet<Vec<OrientedEdge>> = BTreeSet::new();
    let mut out = Vec::new();
    for base in c.vertices() {
        let mut stack = vec![base];
        let mut steps: Vec<OrientedEdge> = Vec::new();
        dfs_cycles(c, base, &mut stack, &mut steps, &mut found, &mut out);
    }
    out
}

fn dfs_cycles(
    c: &Complex2,
    base: VertexId,
    stack: &mut Vec<VertexId>,
    steps: &mut Vec<OrientedEdge>,
    found: &mut BTreeSet<Vec<OrientedEdge>>,
    out: &mut Vec<CycleClass>,
) {
    let at = *stack.last().unwrap();
    for oe in c.leaving(at) {
        if let Some(&last) = steps.last() {
            if oe == last.inverse() {
                continue;
            }
        }
        let to = c.head(oe);
        if to == base {
            steps.push(oe);
            // closing step must not cancel against the first step
            if steps[0] != steps.last().unwrap().inverse() {
                let cycle = CycleClass::from_cyclic_path(c, PathSeq::new(base, steps.clone()))
                    .expect("closed dfs walk is cyclic");
                if classify_cycle(c, &cycle).unwrap().simple_cycle
                    && found.insert(cycle.representative().steps.clone())
                {
                    out.push(cycle);
                }
            }
            steps.pop();
            continue;
        }
        if stack.contains(&to) {
            continue;
        }
        stack.push(to);
        steps.push(oe);
        dfs_cycles(c, base, stack, steps, found, out);
        steps.pop();
        stack.pop();
    }
}
