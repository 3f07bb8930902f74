//! Line-oriented text format for complexes, maps and arc lists, plus DOT
//! export.
//!
//! ```text
//! complex2              # header: complex0 | complex1 | complex2
//! vertex v1             # one vertex per line
//! edge e1 v1 v2         # edge name, slot-A vertex, slot-B vertex
//! face f1 = e1+ e2-     # boundary walk; + runs slot A to slot B
//! orientation f1 +      # map files: chosen orientation (+ as stored)
//! contour = e1+ e2-     # map files: one contour per line
//! arc = e1+ e2+         # arc files: one arc per line
//! ```
//!
//! Names are `[A-Za-z0-9_.]+` and unique per cell kind; `#` starts a comment.
//! Cells must be declared before they are referenced. Parsing then
//! serializing reproduces a serialized file byte for byte.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::complex::{Complex2, Dim, EdgeDir, FaceId, OrientedEdge, VertexId};
use crate::error::{Error, ParseError, Result};
use crate::map::MapStruct;
use crate::path::{ArcRec, CycleClass, PathSeq};
use crate::surface::{OrientFlag, OrientationChoice};

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Everything a single file can carry: the complex plus optional map
/// structure and arc lines.
#[derive(Clone, Debug)]
pub struct Document {
    pub complex: Complex2,
    pub orientation: OrientationChoice,
    pub contours: Vec<CycleClass>,
    pub arcs: Vec<ArcRec>,
}

struct Parser {
    builder_dim: Option<Dim>,
    vertices: Vec<(String, VertexId)>,
    vertex_ids: HashMap<String, VertexId>,
    edge_ids: HashMap<String, crate::complex::EdgeId>,
    face_ids: HashMap<String, FaceId>,
    builder: crate::complex::ComplexBuilder,
    orientation_lines: Vec<(usize, String, OrientFlag)>,
    contour_lines: Vec<(usize, Vec<(String, EdgeDir)>)>,
    arc_lines: Vec<(usize, Vec<(String, EdgeDir)>)>,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, msg)
}

fn parse_walk_token(lineno: usize, token: &str) -> std::result::Result<(String, EdgeDir), ParseError> {
    let (name, sign) = token.split_at(token.len().saturating_sub(1));
    let dir = match sign {
        "+" => EdgeDir::Forward,
        "-" => EdgeDir::Backward,
        _ => return Err(err(lineno, format!("walk token {token:?} must end in + or -"))),
    };
    if !valid_name(name) {
        return Err(err(lineno, format!("invalid edge name {name:?}")));
    }
    Ok((name.to_string(), dir))
}

impl Parser {
    fn new() -> Parser {
        Parser {
            builder_dim: None,
            vertices: Vec::new(),
            vertex_ids: HashMap::new(),
            edge_ids: HashMap::new(),
            face_ids: HashMap::new(),
            builder: Complex2::builder(Dim::Two),
            orientation_lines: Vec::new(),
            contour_lines: Vec::new(),
            arc_lines: Vec::new(),
        }
    }

    fn line(&mut self, lineno: usize, raw: &str) -> std::result::Result<(), ParseError> {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            return Ok(());
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let keyword = tokens[0];
        if self.builder_dim.is_none() {
            let dim = match keyword {
                "complex0" => Dim::Zero,
                "complex1" => Dim::One,
                "complex2" => Dim::Two,
                other => {
                    return Err(err(
                        lineno,
                        format!("expected a complex0/complex1/complex2 header, found {other:?}"),
                    ))
                }
            };
            if tokens.len() != 1 {
                return Err(err(lineno, "header takes no arguments"));
            }
            self.builder_dim = Some(dim);
            self.builder = Complex2::builder(dim);
            return Ok(());
        }
        match keyword {
            "vertex" => {
                if tokens.len() != 2 {
                    return Err(err(lineno, "vertex takes exactly one name"));
                }
                let name = tokens[1];
                if !valid_name(name) {
                    return Err(err(lineno, format!("invalid vertex name {name:?}")));
                }
                if self.vertex_ids.contains_key(name) {
                    return Err(err(lineno, format!("duplicate vertex name {name:?}")));
                }
                let id = self.builder.named_vertex(name);
                self.vertex_ids.insert(name.to_string(), id);
                self.vertices.push((name.to_string(), id));
                Ok(())
            }
            "edge" => {
                if tokens.len() != 4 {
                    return Err(err(lineno, "edge takes a name and two vertex names"));
                }
                let name = tokens[1];
                if !valid_name(name) {
                    return Err(err(lineno, format!("invalid edge name {name:?}")));
                }
                if self.edge_ids.contains_key(name) {
                    return Err(err(lineno, format!("duplicate edge name {name:?}")));
                }
                let a = *self
                    .vertex_ids
                    .get(tokens[2])
                    .ok_or_else(|| err(lineno, format!("unknown vertex {:?}", tokens[2])))?;
                let b = *self
                    .vertex_ids
                    .get(tokens[3])
                    .ok_or_else(|| err(lineno, format!("unknown vertex {:?}", tokens[3])))?;
                let id = self.builder.named_edge(name, a, b);
                self.edge_ids.insert(name.to_string(), id);
                Ok(())
            }
            "face" => {
                if tokens.len() < 4 || tokens[2] != "=" {
                    return Err(err(lineno, "face syntax: face <name> = <edge><+|-> ..."));
                }
                let name = tokens[1];
                if !valid_name(name) {
                    return Err(err(lineno, format!("invalid face name {name:?}")));
                }
                if self.face_ids.contains_key(name) {
                    return Err(err(lineno, format!("duplicate face name {name:?}")));
                }
                let walk = self.parse_walk(lineno, &tokens[3..])?;
                // the walk must chain cyclically
                let n = walk.len();
                let peek = self.builder.clone().build_unchecked();
                for i in 0..n {
                    if peek.head(walk[i]) != peek.tail(walk[(i + 1) % n]) {
                        return Err(err(
                            lineno,
                            format!("boundary walk of face {name:?} breaks after step {}", i + 1),
                        ));
                    }
                }
                let id = self.builder.named_face(name, walk);
                self.face_ids.insert(name.to_string(), id);
                Ok(())
            }
            "orientation" => {
                if tokens.len() != 3 {
                    return Err(err(lineno, "orientation syntax: orientation <face> <+|->"));
                }
                let flag = match tokens[2] {
                    "+" => OrientFlag::AsStored,
                    "-" => OrientFlag::Reversed,
                    other => return Err(err(lineno, format!("orientation must be + or -, found {other:?}"))),
                };
                self.orientation_lines.push((lineno, tokens[1].to_string(), flag));
                Ok(())
            }
            "contour" => {
                if tokens.len() < 2 || tokens[1] != "=" {
                    return Err(err(lineno, "contour syntax: contour = [<edge><+|-> ...]"));
                }
                let walk = tokens[2..]
                    .iter()
                    .map(|t| parse_walk_token(lineno, t))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                self.contour_lines.push((lineno, walk));
                Ok(())
            }
            "arc" => {
                if tokens.len() < 3 || tokens[1] != "=" {
                    return Err(err(lineno, "arc syntax: arc = <edge><+|-> ..."));
                }
                let walk = tokens[2..]
                    .iter()
                    .map(|t| parse_walk_token(lineno, t))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                self.arc_lines.push((lineno, walk));
                Ok(())
            }
            other => Err(err(lineno, format!("unknown keyword {other:?}"))),
        }
    }

    fn parse_walk(
        &self,
        lineno: usize,
        tokens: &[&str],
    ) -> std::result::Result<Vec<OrientedEdge>, ParseError> {
        tokens
            .iter()
            .map(|t| {
                let (name, dir) = parse_walk_token(lineno, t)?;
                let edge = *self
                    .edge_ids
                    .get(&name)
                    .ok_or_else(|| err(lineno, format!("unknown edge {name:?}")))?;
                Ok(OrientedEdge { edge, dir })
            })
            .collect()
    }

    fn finish(self) -> std::result::Result<Document, ParseError> {
        let Parser {
            builder,
            builder_dim,
            face_ids,
            edge_ids,
            orientation_lines,
            contour_lines,
            arc_lines,
            ..
        } = self;
        if builder_dim.is_none() {
            return Err(err(0, "missing complex header"));
        }
        let complex = builder.build_unchecked();
        let report = complex.validate();
        if let Some(v) = report.violations.first() {
            return Err(err(0, format!("invalid complex: {v}")));
        }
        let mut flags = vec![OrientFlag::AsStored; complex.face_count()];
        for (lineno, name, flag) in orientation_lines {
            let f = face_ids
                .get(&name)
                .ok_or_else(|| err(lineno, format!("unknown face {name:?}")))?;
            flags[f.index()] = flag;
        }
        let resolve_walk = |lineno: usize, walk: &[(String, EdgeDir)]| {
            walk.iter()
                .map(|(name, dir)| {
                    let edge = *edge_ids
                        .get(name)
                        .ok_or_else(|| err(lineno, format!("unknown edge {name:?}")))?;
                    Ok(OrientedEdge { edge, dir: *dir })
                })
                .collect::<std::result::Result<Vec<_>, ParseError>>()
        };
        let mut contours = Vec::new();
        for (lineno, walk) in &contour_lines {
            if walk.is_empty() {
                if complex.vertex_count() != 1 {
                    return Err(err(
                        *lineno,
                        "an empty contour is only valid on a single-vertex complex",
                    ));
                }
                contours.push(CycleClass::trivial(VertexId::from_index(0)));
                continue;
            }
            let steps = resolve_walk(*lineno, walk)?;
            let start = complex.tail(steps[0]);
            let cycle = CycleClass::from_cyclic_path(&complex, PathSeq::new(start, steps))
                .map_err(|e| err(*lineno, format!("contour is not a cycle: {e}")))?;
            contours.push(cycle);
        }
        let mut arcs = Vec::new();
        for (lineno, walk) in &arc_lines {
            let steps = resolve_walk(*lineno, walk)?;
            let start = complex.tail(steps[0]);
            let arc = ArcRec::new(&complex, PathSeq::new(start, steps))
                .map_err(|e| err(*lineno, format!("not an arc: {e}")))?;
            arcs.push(arc);
        }
        Ok(Document {
            orientation: OrientationChoice::from_flags(flags),
            complex,
            contours,
            arcs,
        })
    }
}

/// Parses a full document (complex plus any map/arc lines).
pub fn parse_document(text: &str) -> std::result::Result<Document, ParseError> {
    let mut p = Parser::new();
    for (i, line) in text.lines().enumerate() {
        p.line(i + 1, line)?;
    }
    p.finish()
}

/// Parses a complex, ignoring any map or arc lines in the file.
pub fn parse_complex(text: &str) -> std::result::Result<Complex2, ParseError> {
    parse_document(text).map(|d| d.complex)
}

/// Parses a map file: complex, orientation lines, contour lines.
pub fn parse_map(text: &str) -> Result<MapStruct> {
    let doc = parse_document(text)?;
    MapStruct::from_parts(doc.complex, doc.orientation, doc.contours)
}

/// Parses an arcs file (`arc = ...` lines only) against a known complex.
pub fn parse_arcs(text: &str, ambient: &Complex2) -> Result<Vec<ArcRec>> {
    let mut arcs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] != "arc" || tokens.len() < 3 || tokens[1] != "=" {
            return Err(err(lineno, "arc files hold lines of the form: arc = <edge><+|-> ...").into());
        }
        let steps = tokens[2..]
            .iter()
            .map(|t| {
                let (name, dir) = parse_walk_token(lineno, t)?;
                let edge = ambient
                    .edge_by_name(&name)
                    .ok_or_else(|| err(lineno, format!("unknown edge {name:?}")))?;
                Ok(OrientedEdge { edge, dir })
            })
            .collect::<std::result::Result<Vec<_>, ParseError>>()?;
        let start = ambient.tail(steps[0]);
        let arc = ArcRec::new(ambient, PathSeq::new(start, steps))
            .map_err(|e| Error::Parse(err(lineno, format!("not an arc: {e}"))))?;
        arcs.push(arc);
    }
    Ok(arcs)
}

fn walk_token(c: &Complex2, oe: OrientedEdge) -> String {
    format!("{}{}", c.edge_name(oe.edge), oe.dir.sign())
}

/// Serializes a complex deterministically, cells in id order.
pub fn serialize_complex(c: &Complex2) -> String {
    let mut out = String::new();
    let header = match c.dim() {
        Dim::Zero => "complex0",
        Dim::One => "complex1",
        Dim::Two => "complex2",
    };
    let _ = writeln!(out, "{header}");
    for v in c.vertices() {
        let _ = writeln!(out, "vertex {}", c.vertex_name(v));
    }
    for e in c.edge_ids() {
        let rec = c.edge(e);
        let _ = writeln!(
            out,
            "edge {} {} {}",
            c.edge_name(e),
            c.vertex_name(rec.slot_a),
            c.vertex_name(rec.slot_b)
        );
    }
    for f in c.face_ids() {
        let walk: Vec<String> = c.face(f).walk.iter().map(|&oe| walk_token(c, oe)).collect();
        let _ = writeln!(out, "face {} = {}", c.face_name(f), walk.join(" "));
    }
    out
}

/// Serializes a map: the complex, explicit orientation lines, one contour
/// line per contour.
pub fn serialize_map(m: &MapStruct) -> String {
    let c = m.complex();
    let mut out = serialize_complex(c);
    for f in c.face_ids() {
        let sign = match m.orientation().flag(f) {
            OrientFlag::AsStored => '+',
            OrientFlag::Reversed => '-',
        };
        let _ = writeln!(out, "orientation {} {}", c.face_name(f), sign);
    }
    for contour in m.contours() {
        if contour.is_empty() {
            let _ = writeln!(out, "contour =");
            continue;
        }
        let walk: Vec<String> = contour
            .representative()
            .steps
            .iter()
            .map(|&oe| walk_token(c, oe))
            .collect();
        let _ = writeln!(out, "contour = {}", walk.join(" "));
    }
    out
}

/// Serializes arcs as an arc file referencing the ambient's edge names.
pub fn serialize_arcs(c: &Complex2, arcs: &[ArcRec]) -> String {
    let mut out = String::new();
    for arc in arcs {
        let walk: Vec<String> = arc
            .representative()
            .steps
            .iter()
            .map(|&oe| walk_token(c, oe))
            .collect();
        let _ = writeln!(out, "arc = {}", walk.join(" "));
    }
    out
}

/// Deterministic DOT export of a 1-complex; node names come from the
/// complex's vertex names.
pub fn export_dot(g: &Complex2) -> Result<String> {
    if g.face_count() != 0 {
        return Err(Error::NotAGraph);
    }
    let mut out = String::new();
    let _ = writeln!(out, "graph c2x {{");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{}\";", g.vertex_name(v));
    }
    for e in g.edge_ids() {
        let rec = g.edge(e);
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\";",
            g.vertex_name(rec.slot_a),
            g.vertex_name(rec.slot_b)
        );
    }
    let _ = writeln!(out, "}}");
    Ok(out)
}
