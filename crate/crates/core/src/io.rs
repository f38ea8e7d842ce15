//! Text formats: graph documents, multiwebs and bare connections.
//!
//! Documents are JSON. Errors carry the line of the offending field or
//! array element so malformed hand-written files are easy to fix.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::algebra::{format_rational, parse_rational, Rational, RingMatrix};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::graph::{Cilia, Color, Edge, EmbeddedGraph, Surface};
use crate::multiweb::Multiweb;

/// A graph together with the optional data a document may carry.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    /// Connection rank.
    pub n: usize,
    pub graph: EmbeddedGraph,
    pub cilia: Option<Cilia>,
    pub connection: Option<Connection>,
    /// Per-edge variable names.
    pub weights: Option<Vec<String>>,
}

impl GraphDocument {
    pub fn new(n: usize, graph: EmbeddedGraph) -> Self {
        GraphDocument {
            n,
            graph,
            cilia: None,
            connection: None,
            weights: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    n: usize,
    vertices: Vec<Color>,
    edges: Vec<[usize; 2]>,
    rotations: Vec<Vec<usize>>,
    #[serde(default)]
    cilia: Option<Vec<usize>>,
    surface: Surface,
    #[serde(default)]
    connection: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    weights: Option<Vec<String>>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::input(Some(e.line()).filter(|&l| l > 0), e.to_string())
}

/// 1-based line of `offset` in `text`.
fn line_at(text: &str, offset: usize) -> usize {
    text[..offset].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Byte offset just past the `"key":` of a top-level field.
fn key_offset(text: &str, key: &str) -> Option<usize> {
    let pat = format!("\"{key}\"");
    let mut depth = 0i32;
    let mut in_str = false;
    let mut escaped = false;
    for (i, ch) in text.char_indices() {
        if in_str {
            if escaped {
                escaped = false;
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_str = false;
            }
            continue;
        }
        match ch {
            '{' | '[' => depth += 1,
            '}' | ']' => depth -= 1,
            '"' => {
                if depth == 1 && text[i..].starts_with(&pat) {
                    let rest = &text[i + pat.len()..];
                    let colon = rest.find(|c: char| !c.is_whitespace())?;
                    if rest[colon..].starts_with(':') {
                        return Some(i + pat.len() + colon + 1);
                    }
                }
                in_str = true;
            }
            _ => {}
        }
    }
    None
}

fn key_line(text: &str, key: &str) -> Option<usize> {
    key_offset(text, key).map(|o| line_at(text, o))
}

/// Line of element `index` of the top-level array field `key`.
fn element_line(text: &str, key: &str, index: usize) -> Option<usize> {
    let start = key_offset(text, key)?;
    let mut depth = 0i32;
    let mut count = 0usize;
    let mut in_str = false;
    let mut escaped = false;
    let mut seeking = true;
    for (i, ch) in text[start..].char_indices() {
        let at = start + i;
        if in_str {
            if escaped {
                escaped = false;
            } else if ch == '\\' {
                escaped = true;
            } else if ch == '"' {
                in_str = false;
            }
            continue;
        }
        if depth == 1 && seeking && !ch.is_whitespace() && ch != ']' {
            if count == index {
                return Some(line_at(text, at));
            }
            seeking = false;
        }
        match ch {
            '[' | '{' => depth += 1,
            ']' | '}' => {
                depth -= 1;
                if depth == 0 {
                    return None;
                }
            }
            ',' if depth == 1 => {
                count += 1;
                seeking = true;
            }
            '"' => in_str = true,
            _ => {}
        }
    }
    None
}

fn parse_matrix(
    rows: &[Vec<String>],
    n: usize,
) -> std::result::Result<RingMatrix<Rational>, String> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(format!("matrix is not {n}x{n}"));
    }
    let mut out = Vec::with_capacity(n);
    for r in rows {
        out.push(
            r.iter()
                .map(|s| parse_rational(s))
                .collect::<std::result::Result<Vec<_>, _>>()?,
        );
    }
    Ok(RingMatrix::from_rows(out))
}

pub fn parse_graph_document(text: &str) -> Result<GraphDocument> {
    let raw: RawGraph = serde_json::from_str(text).map_err(json_error)?;
    let at = |key: &str, i: usize, msg: String| {
        Error::input(element_line(text, key, i).or(key_line(text, key)), msg)
    };
    let nv = raw.vertices.len();
    let ne = raw.edges.len();
    let mut edges = Vec::with_capacity(ne);
    for (i, &[b, w]) in raw.edges.iter().enumerate() {
        if b >= nv || w >= nv {
            return Err(at(
                "edges",
                i,
                format!("edge {i} names a vertex out of range"),
            ));
        }
        if raw.vertices[b] != Color::Black || raw.vertices[w] != Color::White {
            return Err(at(
                "edges",
                i,
                format!("edge {i} must be listed as [black, white]"),
            ));
        }
        edges.push(Edge {
            id: i,
            black: b,
            white: w,
        });
    }
    if raw.rotations.len() != nv {
        return Err(Error::input(
            key_line(text, "rotations"),
            format!("{} rotations for {nv} vertices", raw.rotations.len()),
        ));
    }
    let mut seen = vec![0u8; ne];
    for (v, rot) in raw.rotations.iter().enumerate() {
        for &e in rot {
            if e >= ne {
                return Err(at("rotations", v, format!("vertex {v}: unknown edge {e}")));
            }
            if edges[e].black != v && edges[e].white != v {
                return Err(at(
                    "rotations",
                    v,
                    format!("vertex {v}: edge {e} is not incident"),
                ));
            }
            seen[e] += 1;
        }
        if rot.len() != rot.iter().collect::<std::collections::BTreeSet<_>>().len() {
            return Err(at("rotations", v, format!("vertex {v}: repeated edge")));
        }
    }
    if let Some(e) = seen.iter().position(|&c| c != 2) {
        return Err(at(
            "edges",
            e,
            format!("edge {e} is missing from a rotation"),
        ));
    }
    let graph =
        EmbeddedGraph::new(raw.vertices, edges, raw.rotations, raw.surface).map_err(|e| {
            let msg = e.to_string();
            let key = if ["seam", "punctur", "surface"]
                .iter()
                .any(|k| msg.contains(k))
            {
                "surface"
            } else {
                "rotations"
            };
            Error::input(key_line(text, key), msg)
        })?;
    if let Some(c) = &raw.cilia {
        if c.len() != nv {
            return Err(Error::input(
                key_line(text, "cilia"),
                format!("{} cilia for {nv} vertices", c.len()),
            ));
        }
        if let Some(v) = (0..nv).find(|&v| c[v] >= graph.degree(v).max(1)) {
            return Err(at(
                "cilia",
                v,
                format!("cilium of vertex {v} exceeds its degree"),
            ));
        }
    }
    let connection = match raw.connection {
        None => None,
        Some(list) => {
            if list.len() != ne {
                return Err(Error::input(
                    key_line(text, "connection"),
                    format!("{} matrices for {ne} edges", list.len()),
                ));
            }
            let mut mats = Vec::with_capacity(ne);
            for (e, rows) in list.iter().enumerate() {
                mats.push(
                    parse_matrix(rows, raw.n)
                        .map_err(|m| at("connection", e, format!("edge {e}: {m}")))?,
                );
            }
            Some(Connection::new(raw.n, mats)?)
        }
    };
    if let Some(w) = &raw.weights {
        if w.len() != ne {
            return Err(Error::input(
                key_line(text, "weights"),
                format!("{} weights for {ne} edges", w.len()),
            ));
        }
    }
    Ok(GraphDocument {
        n: raw.n,
        graph,
        cilia: raw.cilia,
        connection,
        weights: raw.weights,
    })
}

fn compact<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn push_list(out: &mut String, key: &str, items: &[String], last: bool) {
    out.push_str(&format!("  \"{key}\": [\n"));
    for (i, it) in items.iter().enumerate() {
        let sep = if i + 1 < items.len() { "," } else { "" };
        out.push_str(&format!("    {it}{sep}\n"));
    }
    out.push_str(if last { "  ]\n" } else { "  ],\n" });
}

fn matrix_strings(m: &RingMatrix<Rational>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| format_rational(m.get(i, j)))
                .collect()
        })
        .collect()
}

/// One edge, rotation or matrix per line.
pub fn write_graph_document(doc: &GraphDocument) -> String {
    let g = &doc.graph;
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"n\": {},\n", doc.n));
    out.push_str(&format!("  \"vertices\": {},\n", compact(g.colors())));
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|e| compact(&[e.black, e.white]))
        .collect();
    push_list(&mut out, "edges", &edges, false);
    let rots: Vec<String> = g.rotations().iter().map(compact).collect();
    let tail = doc.connection.is_none() && doc.weights.is_none();
    push_list(&mut out, "rotations", &rots, false);
    if let Some(c) = &doc.cilia {
        out.push_str(&format!("  \"cilia\": {},\n", compact(c)));
    }
    let sep = if tail { "" } else { "," };
    out.push_str(&format!("  \"surface\": {}{sep}\n", compact(g.surface())));
    if let Some(c) = &doc.connection {
        let mats: Vec<String> = c
            .matrices()
            .iter()
            .map(|m| compact(&matrix_strings(m)))
            .collect();
        push_list(&mut out, "connection", &mats, doc.weights.is_none());
    }
    if let Some(w) = &doc.weights {
        out.push_str(&format!("  \"weights\": {}\n", compact(w)));
    }
    out.push_str("}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMultiweb {
    n: usize,
    multiplicities: BTreeMap<String, u8>,
}

/// `{"n": 3, "multiplicities": {"0": 1, "4": 2}}`; absent edges are 0.
pub fn parse_multiweb(g: &EmbeddedGraph, text: &str) -> Result<Multiweb> {
    let raw: RawMultiweb = serde_json::from_str(text).map_err(json_error)?;
    let line = key_line(text, "multiplicities");
    let mut mult = vec![0u8; g.num_edges()];
    for (k, &v) in &raw.multiplicities {
        let e: usize = k
            .parse()
            .map_err(|_| Error::input(line, format!("edge key {k:?} is not an integer")))?;
        if e >= mult.len() {
            return Err(Error::input(line, format!("unknown edge {e}")));
        }
        mult[e] = v;
    }
    Multiweb::new(g, raw.n, mult).map_err(|e| Error::input(line, e.to_string()))
}

pub fn write_multiweb(m: &Multiweb) -> String {
    let mut map = serde_json::Map::new();
    for e in m.support() {
        map.insert(e.to_string(), Value::from(m.mult(e)));
    }
    let mut out = serde_json::Map::new();
    out.insert("n".into(), Value::from(m.rank()));
    out.insert("multiplicities".into(), Value::Object(map));
    let mut s = compact(&Value::Object(out));
    s.push('\n');
    s
}

/// A bare JSON array of `n x n` matrices of rational strings, one per edge.
pub fn parse_connection(text: &str, n: usize, num_edges: usize) -> Result<Connection> {
    let list: Vec<Vec<Vec<String>>> = serde_json::from_str(text).map_err(json_error)?;
    if list.len() != num_edges {
        return Err(Error::input(
            Some(1),
            format!("{} matrices for {num_edges} edges", list.len()),
        ));
    }
    let mut mats = Vec::with_capacity(num_edges);
    for (e, rows) in list.iter().enumerate() {
        mats.push(parse_matrix(rows, n).map_err(|m| Error::input(None, format!("edge {e}: {m}")))?);
    }
    Connection::new(n, mats)
}

pub fn write_connection(c: &Connection) -> String {
    let mats: Vec<String> = c
        .matrices()
        .iter()
        .map(|m| compact(&matrix_strings(m)))
        .collect();
    format!("[\n  {}\n]\n", mats.join(",\n  "))
}
