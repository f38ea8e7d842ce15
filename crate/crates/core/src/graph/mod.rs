//! Embedded bipartite multigraphs on genus-zero surfaces.
//!
//! Rotations are stored counterclockwise at every vertex. Each edge `e` has
//! two darts: `2e` runs black to white, `2e + 1` white to black. Faces are
//! traced keeping the face on the left of every dart and numbered in order of
//! their smallest dart.

mod generators;
mod signs;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generators::{
    cube, cycle, grid, grid_subgraph, k33_torus, parallel_edge, path_bundle, theta, GraphBuilder,
};
pub use signs::{flip_at_vertex, kasteleyn_signs, solve_gf2, KasteleynSigns};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub black: usize,
    pub white: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Disk,
    Annulus,
    Pants,
    /// A rotation system with no surface claims; faces are traced but the
    /// Euler characteristic is not checked.
    Bare,
}

/// Dual path between two punctured faces, given by indices into
/// `Surface::punctured_faces`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seam {
    pub from: usize,
    pub to: usize,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    pub kind: SurfaceKind,
    #[serde(default)]
    pub punctured_faces: Vec<usize>,
    #[serde(default)]
    pub seams: Vec<Seam>,
}

impl Surface {
    pub fn disk() -> Self {
        Surface {
            kind: SurfaceKind::Disk,
            punctured_faces: Vec::new(),
            seams: Vec::new(),
        }
    }

    pub fn bare() -> Self {
        Surface {
            kind: SurfaceKind::Bare,
            punctured_faces: Vec::new(),
            seams: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|d| d / 2)
    }
}

/// Per-vertex index into the rotation of the half-edge a vertex's reading
/// order starts from.
pub type Cilia = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    colors: Vec<Color>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
    surface: Surface,
    faces: Vec<Face>,
    dart_face: Vec<usize>,
    /// Position of each dart's edge in the rotation of the dart's tail.
    tail_pos: Vec<usize>,
    seam_signs: Vec<Vec<(usize, i64)>>,
}

impl EmbeddedGraph {
    /// Validates the rotation system, traces faces and checks the surface.
    pub fn new(
        colors: Vec<Color>,
        edges: Vec<Edge>,
        rotation: Vec<Vec<usize>>,
        surface: Surface,
    ) -> Result<Self> {
        let nv = colors.len();
        if rotation.len() != nv {
            return Err(Error::Graph(format!(
                "{} rotations for {} vertices",
                rotation.len(),
                nv
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.id != i {
                return Err(Error::Graph(format!(
                    "edge at position {i} has id {}",
                    e.id
                )));
            }
            if e.black >= nv || e.white >= nv {
                return Err(Error::Graph(format!("edge {i} has an unknown endpoint")));
            }
            if colors[e.black] != Color::Black || colors[e.white] != Color::White {
                return Err(Error::Graph(format!(
                    "edge {i} must join a black vertex to a white vertex"
                )));
            }
        }
        let blacks = colors.iter().filter(|c| **c == Color::Black).count();
        if blacks * 2 != nv || nv == 0 {
            return Err(Error::Graph(format!(
                "{blacks} black and {} white vertices; need equal nonzero counts",
                nv - blacks
            )));
        }

        let mut tail_pos = vec![usize::MAX; 2 * edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for (k, &e) in rot.iter().enumerate() {
                let edge = edges.get(e).ok_or_else(|| {
                    Error::Graph(format!("rotation of vertex {v} names unknown edge {e}"))
                })?;
                let dart = match colors[v] {
                    Color::Black if edge.black == v => 2 * e,
                    Color::White if edge.white == v => 2 * e + 1,
                    _ => {
                        return Err(Error::Graph(format!(
                            "rotation of vertex {v} names edge {e}, which is not incident to it"
                        )))
                    }
                };
                if tail_pos[dart] != usize::MAX {
                    return Err(Error::Graph(format!(
                        "edge {e} appears twice in the rotation of vertex {v}"
                    )));
                }
                tail_pos[dart] = k;
            }
        }
        if let Some(d) = tail_pos.iter().position(|&p| p == usize::MAX) {
            let e = &edges[d / 2];
            let v = if d % 2 == 0 { e.black } else { e.white };
            return Err(Error::Graph(format!(
                "edge {} is missing from the rotation of vertex {v}",
                d / 2
            )));
        }

        let mut g = EmbeddedGraph {
            colors,
            edges,
            rotation,
            surface,
            faces: Vec::new(),
            dart_face: Vec::new(),
            tail_pos,
            seam_signs: Vec::new(),
        };
        g.trace_faces();
        g.check_surface()?;
        Ok(g)
    }

    fn trace_faces(&mut self) {
        let nd = 2 * self.edges.len();
        let mut dart_face = vec![usize::MAX; nd];
        let mut faces = Vec::new();
        for start in 0..nd {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut d = start;
            while dart_face[d] == usize::MAX {
                dart_face[d] = id;
                darts.push(d);
                d = self.next_dart_in_face(d);
            }
            faces.push(Face { darts });
        }
        self.faces = faces;
        self.dart_face = dart_face;
    }

    /// The dart following `d` around its left face.
    pub fn next_dart_in_face(&self, d: usize) -> usize {
        let head = self.dart_head(d);
        let rot = &self.rotation[head];
        let i = self.tail_pos[d ^ 1];
        let k = (i + rot.len() - 1) % rot.len();
        self.out_dart(head, rot[k])
    }

    fn check_surface(&mut self) -> Result<()> {
        if self.surface.kind == SurfaceKind::Bare {
            return Ok(());
        }
        if !self.is_connected() {
            return Err(Error::Graph("graph is not connected".into()));
        }
        let chi = self.num_vertices() as i64 - self.num_edges() as i64 + self.faces.len() as i64;
        if chi != 2 {
            return Err(Error::Graph(format!(
                "rotation system has Euler characteristic {chi}; a genus-zero surface needs 2"
            )));
        }
        let (punctures, seams) = match self.surface.kind {
            SurfaceKind::Disk => (0..=1, 0),
            SurfaceKind::Annulus => (2..=2, 1),
            SurfaceKind::Pants => (3..=3, 2),
            SurfaceKind::Bare => unreachable!(),
        };
        let p = self.surface.punctured_faces.len();
        if !punctures.contains(&p) {
            return Err(Error::Graph(format!(
                "{:?} surface with {p} punctured faces",
                self.surface.kind
            )));
        }
        if let Some(&f) = self
            .surface
            .punctured_faces
            .iter()
            .find(|&&f| f >= self.faces.len())
        {
            return Err(Error::Graph(format!("punctured face {f} does not exist")));
        }
        if self.surface.seams.len() != seams {
            return Err(Error::Graph(format!(
                "{:?} surface needs {seams} seams, found {}",
                self.surface.kind,
                self.surface.seams.len()
            )));
        }
        let mut signs = Vec::new();
        for (i, seam) in self.surface.seams.iter().enumerate() {
            signs.push(
                self.seam_crossings(seam)
                    .map_err(|m| Error::Graph(format!("seam {i}: {m}")))?,
            );
        }
        self.seam_signs = signs;
        Ok(())
    }

    /// Per seam edge, `+1` when the seam steps from the left face of the
    /// black-to-white dart to its right face, `-1` otherwise.
    fn seam_crossings(&self, seam: &Seam) -> std::result::Result<Vec<(usize, i64)>, String> {
        let pf = &self.surface.punctured_faces;
        let (from, to) = match (pf.get(seam.from), pf.get(seam.to)) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Err("endpoint is not a punctured face index".into()),
        };
        let mut cur = from;
        let mut out = Vec::new();
        for &e in &seam.edges {
            if e >= self.edges.len() {
                return Err(format!("unknown edge {e}"));
            }
            let (l, r) = (self.left_face(e), self.right_face(e));
            if l == r {
                return Err(format!("edge {e} has the same face on both sides"));
            }
            if l == cur {
                out.push((e, 1));
                cur = r;
            } else if r == cur {
                out.push((e, -1));
                cur = l;
            } else {
                return Err(format!("edge {e} does not border face {cur}"));
            }
        }
        if cur != to {
            return Err(format!("ends at face {cur}, expected face {to}"));
        }
        Ok(out)
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Vertex count of each color.
    pub fn half_size(&self) -> usize {
        self.colors.len() / 2
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == Color::Black)
            .collect()
    }

    pub fn white_vertices(&self) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == Color::White)
            .collect()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let edge = &self.edges[e];
        if edge.black == v {
            edge.white
        } else {
            edge.black
        }
    }

    /// Dart leaving `v` along edge `e`.
    pub fn out_dart(&self, v: usize, e: usize) -> usize {
        match self.colors[v] {
            Color::Black => 2 * e,
            Color::White => 2 * e + 1,
        }
    }

    pub fn dart_tail(&self, d: usize) -> usize {
        let e = &self.edges[d / 2];
        if d.is_multiple_of(2) {
            e.black
        } else {
            e.white
        }
    }

    pub fn dart_head(&self, d: usize) -> usize {
        self.dart_tail(d ^ 1)
    }

    /// Index of `e` in the rotation of its endpoint `v`.
    pub fn position(&self, v: usize, e: usize) -> usize {
        self.tail_pos[self.out_dart(v, e)]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn dart_face(&self, d: usize) -> usize {
        self.dart_face[d]
    }

    /// Face on the left of edge `e` traversed black to white.
    pub fn left_face(&self, e: usize) -> usize {
        self.dart_face[2 * e]
    }

    pub fn right_face(&self, e: usize) -> usize {
        self.dart_face[2 * e + 1]
    }

    /// Face containing the sector between `rotation(v)[k]` and
    /// `rotation(v)[k + 1]`.
    pub fn corner_face(&self, v: usize, k: usize) -> usize {
        let rot = &self.rotation[v];
        self.dart_face[self.out_dart(v, rot[k % rot.len()])]
    }

    pub fn is_punctured(&self, f: usize) -> bool {
        self.surface.punctured_faces.contains(&f)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &e in &self.rotation[v] {
                let u = self.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Replaces the surface markings, re-validating them.
    pub fn with_surface(&self, surface: Surface) -> Result<Self> {
        EmbeddedGraph::new(
            self.colors.clone(),
            self.edges.clone(),
            self.rotation.clone(),
            surface,
        )
    }

    /// Seam edge crossing signs, one list per seam.
    pub fn seam_signs(&self) -> &[Vec<(usize, i64)>] {
        &self.seam_signs
    }

    /// Net signed crossing of a closed walk with each seam.
    pub fn seam_winding(&self, walk: &ClosedWalk) -> Result<Vec<i64>> {
        let darts = self.walk_darts(walk)?;
        Ok(self
            .seam_signs
            .iter()
            .map(|signs| {
                let mut total = 0;
                for &(e, s) in signs {
                    for &d in &darts {
                        if d / 2 == e {
                            total += if d % 2 == 0 { s } else { -s };
                        }
                    }
                }
                total
            })
            .collect())
    }

    /// True iff the walk has zero net crossing with every seam.
    pub fn is_contractible(&self, walk: &ClosedWalk) -> Result<bool> {
        match self.surface.kind {
            SurfaceKind::Disk => {
                self.walk_darts(walk)?;
                Ok(true)
            }
            SurfaceKind::Bare => Err(Error::Unsupported(
                "contractibility needs a disk, annulus or pants surface".into(),
            )),
            _ => Ok(self.seam_winding(walk)?.iter().all(|&w| w == 0)),
        }
    }

    /// Darts of a closed walk, checking that it is connected and closes up.
    pub fn walk_darts(&self, walk: &ClosedWalk) -> Result<Vec<usize>> {
        let mut v = walk.start;
        if v >= self.num_vertices() {
            return Err(Error::Graph(format!("walk starts at unknown vertex {v}")));
        }
        let mut darts = Vec::with_capacity(walk.edges.len());
        for &e in &walk.edges {
            if e >= self.edges.len() {
                return Err(Error::Graph(format!("walk uses unknown edge {e}")));
            }
            let edge = &self.edges[e];
            if edge.black != v && edge.white != v {
                return Err(Error::Graph(format!(
                    "walk edge {e} is not incident to vertex {v}"
                )));
            }
            darts.push(self.out_dart(v, e));
            v = self.other_end(e, v);
        }
        if v != walk.start {
            return Err(Error::Graph("walk does not close up".into()));
        }
        Ok(darts)
    }

    /// Face boundary as a closed walk starting at the tail of its first dart.
    pub fn face_walk(&self, f: usize) -> ClosedWalk {
        let face = &self.faces[f];
        ClosedWalk {
            start: self.dart_tail(face.darts[0]),
            edges: face.edges().collect(),
        }
    }

    /// Shortest dual path from face `from` to face `to`, crossing edges in
    /// increasing id order at each step and never passing through a face in
    /// `avoid` (endpoints excepted). Empty when `from == to`.
    pub fn dual_path(&self, from: usize, to: usize, avoid: &[usize]) -> Option<Vec<usize>> {
        if from == to {
            return Some(Vec::new());
        }
        let nf = self.faces.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; nf];
        let mut seen = vec![false; nf];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
        for e in 0..self.edges.len() {
            let (l, r) = (self.left_face(e), self.right_face(e));
            if l != r {
                adj[l].push((e, r));
                adj[r].push((e, l));
            }
        }
        while let Some(f) = queue.pop_front() {
            if f == to {
                break;
            }
            if f != from && avoid.contains(&f) {
                continue;
            }
            for &(e, h) in &adj[f] {
                if !seen[h] {
                    seen[h] = true;
                    prev[h] = Some((f, e));
                    queue.push_back(h);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut f = to;
        while let Some((p, e)) = prev[f] {
            path.push(e);
            f = p;
        }
        path.reverse();
        Some(path)
    }

    /// Puts the graph on an annulus or pants with seams found by dual
    /// breadth-first search. For pants the first seam avoids the second
    /// puncture and the second seam avoids the faces the first one passes
    /// through.
    pub fn with_punctures(&self, kind: SurfaceKind, punctured: Vec<usize>) -> Result<Self> {
        let mut seams = Vec::new();
        let bad = |i: usize| Error::Graph(format!("no dual path for seam {i}"));
        match kind {
            SurfaceKind::Annulus if punctured.len() == 2 => {
                let edges = self
                    .dual_path(punctured[0], punctured[1], &[])
                    .ok_or_else(|| bad(0))?;
                seams.push(Seam {
                    from: 0,
                    to: 1,
                    edges,
                });
            }
            SurfaceKind::Pants if punctured.len() == 3 => {
                // Keep the first seam out of the middle puncture when possible.
                let first = self
                    .dual_path(punctured[0], punctured[2], &punctured[1..2])
                    .or_else(|| self.dual_path(punctured[0], punctured[2], &[]))
                    .ok_or_else(|| bad(0))?;
                let mut interior = Vec::new();
                let mut f = punctured[0];
                for &e in &first {
                    f = if self.left_face(e) == f {
                        self.right_face(e)
                    } else {
                        self.left_face(e)
                    };
                    interior.push(f);
                }
                interior.pop();
                interior.push(punctured[0]);
                let second = self
                    .dual_path(punctured[1], punctured[2], &interior)
                    .ok_or_else(|| bad(1))?;
                seams.push(Seam {
                    from: 0,
                    to: 2,
                    edges: first,
                });
                seams.push(Seam {
                    from: 1,
                    to: 2,
                    edges: second,
                });
            }
            SurfaceKind::Disk | SurfaceKind::Bare => {}
            _ => {
                return Err(Error::Graph(format!(
                    "{kind:?} surface with {} punctures",
                    punctured.len()
                )))
            }
        }
        self.with_surface(Surface {
            kind,
            punctured_faces: punctured,
            seams,
        })
    }

    /// Checks that `matching` (edge ids) is a perfect matching.
    pub fn check_matching(&self, matching: &[usize]) -> Result<()> {
        let mut covered = vec![false; self.num_vertices()];
        for &e in matching {
            let edge = self
                .edges
                .get(e)
                .ok_or_else(|| Error::Graph(format!("matching names unknown edge {e}")))?;
            for v in [edge.black, edge.white] {
                if covered[v] {
                    return Err(Error::Graph(format!("vertex {v} is matched twice")));
                }
                covered[v] = true;
            }
        }
        if let Some(v) = covered.iter().position(|c| !c) {
            return Err(Error::Graph(format!("vertex {v} is unmatched")));
        }
        Ok(())
    }

    /// Cilia pointing, at both ends of every matched edge, into the face on
    /// the left of that edge run black to white.
    pub fn positive_cilia(&self, matching: &[usize]) -> Result<Cilia> {
        self.check_matching(matching)?;
        let mut cilia = vec![0; self.num_vertices()];
        for &e in matching {
            let edge = &self.edges[e];
            let db = self.degree(edge.black);
            let dw = self.degree(edge.white);
            cilia[edge.black] = (self.position(edge.black, e) + 1) % db;
            cilia[edge.white] = (self.position(edge.white, e) + dw - 1) % dw;
        }
        Ok(cilia)
    }

    /// Face holding the cilium of `v`: the sector just before the first
    /// half-edge in the vertex's reading direction.
    pub fn cilium_face(&self, v: usize, c: usize) -> usize {
        let d = self.degree(v);
        match self.colors[v] {
            Color::Black => self.corner_face(v, (c + d - 1) % d),
            Color::White => self.corner_face(v, c),
        }
    }

    /// Number of cilia in each face.
    pub fn cilia_per_face(&self, cilia: &[usize]) -> Vec<usize> {
        let mut count = vec![0; self.faces.len()];
        for (v, &c) in cilia.iter().enumerate() {
            if self.degree(v) > 0 {
                count[self.cilium_face(v, c)] += 1;
            }
        }
        count
    }

    /// Some perfect matching, found by augmenting paths; `None` if there is
    /// none.
    pub fn find_matching(&self) -> Option<Vec<usize>> {
        let nv = self.num_vertices();
        let mut mate_edge: Vec<Option<usize>> = vec![None; nv];
        for b in self.black_vertices() {
            let mut visited = vec![false; nv];
            if !self.augment(b, &mut visited, &mut mate_edge) {
                return None;
            }
        }
        let mut out: Vec<usize> = self
            .white_vertices()
            .into_iter()
            .filter_map(|w| mate_edge[w])
            .collect();
        out.sort_unstable();
        Some(out)
    }

    fn augment(&self, b: usize, visited: &mut [bool], mate_edge: &mut [Option<usize>]) -> bool {
        let mut incident: Vec<usize> = self.rotation[b].clone();
        incident.sort_unstable();
        for e in incident {
            let w = self.edges[e].white;
            if visited[w] {
                continue;
            }
            visited[w] = true;
            let free = match mate_edge[w] {
                None => true,
                Some(f) => self.augment(self.edges[f].black, visited, mate_edge),
            };
            if free {
                mate_edge[w] = Some(e);
                return true;
            }
        }
        false
    }

    /// Number of perfect matchings by exhaustive search.
    pub fn count_matchings(&self) -> u64 {
        let blacks = self.black_vertices();
        let mut used = vec![false; self.num_vertices()];
        fn rec(g: &EmbeddedGraph, blacks: &[usize], i: usize, used: &mut [bool]) -> u64 {
            if i == blacks.len() {
                return 1;
            }
            let mut total = 0;
            for &e in g.rotation(blacks[i]) {
                let w = g.edge(e).white;
                if !used[w] {
                    used[w] = true;
                    total += rec(g, blacks, i + 1, used);
                    used[w] = false;
                }
            }
            total
        }
        rec(self, &blacks, 0, &mut used)
    }
}

/// A closed walk given by its start vertex and the edges it traverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl ClosedWalk {
    /// The walk traversed twice.
    pub fn doubled(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&self.edges);
        ClosedWalk {
            start: self.start,
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle_faces() {
        let g = cycle(2);
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 4));
    }

    #[test]
    fn theta_faces() {
        let g = theta(3);
        assert_eq!(g.faces().len(), 3);
        assert!(g.faces().iter().all(|f| f.len() == 2));
        let total: usize = g.faces().iter().map(Face::len).sum();
        assert_eq!(total, 2 * g.num_edges());
    }

    #[test]
    fn bad_rotation_is_rejected() {
        let g = theta(3);
        let mut rot = g.rotations().to_vec();
        rot[1].reverse();
        let err = EmbeddedGraph::new(
            g.colors().to_vec(),
            g.edges().to_vec(),
            rot,
            Surface::disk(),
        );
        assert!(matches!(err, Err(Error::Graph(m)) if m.contains("Euler")));
        let mut rot = g.rotations().to_vec();
        rot[0] = vec![0, 1];
        let err = EmbeddedGraph::new(
            g.colors().to_vec(),
            g.edges().to_vec(),
            rot,
            Surface::disk(),
        );
        assert!(matches!(err, Err(Error::Graph(m)) if m.contains("missing")));
    }

    #[test]
    fn cilia_on_matched_edges_share_a_face() {
        let g = theta(3);
        let c = g.positive_cilia(&[0]).unwrap();
        let fb = g.cilium_face(0, c[0]);
        let fw = g.cilium_face(1, c[1]);
        assert_eq!(fb, fw);
        assert!(g.faces()[fb].edges().any(|e| e == 0));
        assert!(g.positive_cilia(&[0, 1]).is_err());
    }

    #[test]
    fn grid_cilia_even_on_every_face() {
        let g = grid(6, 6);
        // Brick pattern: horizontal dimers in every row.
        let m = g.find_matching().unwrap();
        let c = g.positive_cilia(&m).unwrap();
        assert!(g.cilia_per_face(&c).iter().all(|k| k % 2 == 0));
    }

    #[test]
    fn matchings_counted() {
        assert_eq!(cycle(2).count_matchings(), 2);
        assert_eq!(theta(3).count_matchings(), 3);
        assert_eq!(grid(2, 3).count_matchings(), 3);
        assert_eq!(grid(4, 4).count_matchings(), 36);
    }

    #[test]
    fn dual_paths() {
        let g = grid(2, 4);
        let outer = g.faces().iter().position(|f| f.len() == 8).unwrap();
        let inner = (0..g.faces().len()).find(|&f| f != outer).unwrap();
        let p = g.dual_path(inner, outer, &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(g.dual_path(outer, outer, &[]), Some(vec![]));
    }
}
