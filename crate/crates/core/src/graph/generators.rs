use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

use super::{Color, Edge, EmbeddedGraph, Surface, SurfaceKind};

/// Builds a rotation system from edge directions at each endpoint.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    colors: Vec<Color>,
    coords: Vec<(f64, f64)>,
    edges: Vec<Edge>,
    angles: Vec<Vec<(f64, usize)>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, color: Color) -> usize {
        self.add_vertex_at(color, 0.0, 0.0)
    }

    pub fn add_vertex_at(&mut self, color: Color, x: f64, y: f64) -> usize {
        self.colors.push(color);
        self.coords.push((x, y));
        self.angles.push(Vec::new());
        self.colors.len() - 1
    }

    /// Edge leaving `u` at angle `au` and arriving at `v` from angle `av`,
    /// both measured counterclockwise from east.
    pub fn add_edge(&mut self, u: usize, v: usize, au: f64, av: f64) -> usize {
        let id = self.edges.len();
        let (black, white) = if self.colors[u] == Color::Black {
            (u, v)
        } else {
            (v, u)
        };
        self.edges.push(Edge { id, black, white });
        self.angles[u].push((au.rem_euclid(2.0 * PI), id));
        self.angles[v].push((av.rem_euclid(2.0 * PI), id));
        id
    }

    /// Straight edge between placed vertices.
    pub fn add_segment(&mut self, u: usize, v: usize) -> usize {
        let (xu, yu) = self.coords[u];
        let (xv, yv) = self.coords[v];
        let a = (yv - yu).atan2(xv - xu);
        self.add_edge(u, v, a, a + PI)
    }

    pub fn build(self, surface: Surface) -> Result<EmbeddedGraph> {
        let rotation = self
            .angles
            .into_iter()
            .map(|mut a| {
                a.sort_by(|x, y| x.0.total_cmp(&y.0));
                a.into_iter().map(|(_, e)| e).collect()
            })
            .collect();
        EmbeddedGraph::new(self.colors, self.edges, rotation, surface)
    }
}

fn parity_color(i: usize) -> Color {
    if i.is_multiple_of(2) {
        Color::Black
    } else {
        Color::White
    }
}

/// Path of vertices `0, 1, …, len` (alternating black, white) with
/// `bundles[i]` parallel edges between vertex `i` and `i + 1`.
/// `bundles.len()` must be odd.
pub fn path_bundle(bundles: &[usize]) -> EmbeddedGraph {
    assert!(
        bundles.len() % 2 == 1,
        "path needs an even number of vertices"
    );
    let mut b = GraphBuilder::new();
    for i in 0..=bundles.len() {
        b.add_vertex_at(parity_color(i), i as f64, 0.0);
    }
    let eps = 0.3 / bundles.iter().copied().max().unwrap_or(1) as f64;
    for (i, &p) in bundles.iter().enumerate() {
        let mid = (p as f64 - 1.0) / 2.0;
        for j in 0..p {
            let d = eps * (mid - j as f64);
            b.add_edge(i, i + 1, d, PI - d);
        }
    }
    b.build(Surface::disk()).expect("path of bundles is planar")
}

/// Two vertices joined by `k` parallel edges.
pub fn theta(k: usize) -> EmbeddedGraph {
    path_bundle(&[k])
}

/// One black and one white vertex joined by a single edge.
pub fn parallel_edge() -> EmbeddedGraph {
    theta(1)
}

/// Cycle of length `2k`.
pub fn cycle(k: usize) -> EmbeddedGraph {
    let n = 2 * k;
    let mut b = GraphBuilder::new();
    for i in 0..n {
        let t = 2.0 * PI * i as f64 / n as f64;
        b.add_vertex_at(parity_color(i), t.cos(), t.sin());
    }
    for i in 0..n {
        let j = (i + 1) % n;
        if n == 2 {
            b.add_edge(i, j, 0.3 * (i as f64 + 1.0), PI - 0.3 * (i as f64 + 1.0));
        } else {
            b.add_segment(i, j);
        }
    }
    b.build(Surface::disk()).expect("cycle is planar")
}

/// `rows x cols` square grid; vertex `(r, c)` has id `r * cols + c` and is
/// black when `r + c` is even.
pub fn grid(rows: usize, cols: usize) -> EmbeddedGraph {
    grid_keeping(rows, cols, |_| true)
}

fn grid_builder(rows: usize, cols: usize) -> (GraphBuilder, Vec<(usize, usize)>) {
    let mut b = GraphBuilder::new();
    for r in 0..rows {
        for c in 0..cols {
            b.add_vertex_at(parity_color(r + c), c as f64, r as f64);
        }
    }
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                pairs.push((v, v + 1));
            }
            if r + 1 < rows {
                pairs.push((v, v + cols));
            }
        }
    }
    (b, pairs)
}

fn grid_keeping(rows: usize, cols: usize, keep: impl Fn(usize) -> bool) -> EmbeddedGraph {
    let (mut b, pairs) = grid_builder(rows, cols);
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if keep(i) {
            b.add_segment(u, v);
        }
    }
    b.build(Surface::disk())
        .expect("grid subgraph is planar and connected")
}

/// Grid with up to `removals` edges deleted at random (seeded), skipping
/// any deletion that would disconnect the graph.
pub fn grid_subgraph(rows: usize, cols: usize, removals: usize, seed: u64) -> EmbeddedGraph {
    let (_, pairs) = grid_builder(rows, cols);
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut removed: Vec<usize> = Vec::new();
    for cand in order {
        if removed.len() == removals {
            break;
        }
        removed.push(cand);
        if !connected(rows * cols, &pairs, &removed) {
            removed.pop();
        }
    }
    grid_keeping(rows, cols, |i| !removed.contains(&i))
}

fn connected(nv: usize, pairs: &[(usize, usize)], removed: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = nv;
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if removed.contains(&i) {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps == 1
}

/// The 3-cube drawn as two nested squares.
pub fn cube() -> EmbeddedGraph {
    let mut b = GraphBuilder::new();
    let corners = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
    for (s, scale) in [(0, 2.0), (1, 1.0)] {
        for (i, (x, y)) in corners.iter().enumerate() {
            b.add_vertex_at(parity_color(i + s), x * scale, y * scale);
        }
    }
    for i in 0..4 {
        b.add_segment(i, (i + 1) % 4);
        b.add_segment(4 + i, 4 + (i + 1) % 4);
        b.add_segment(i, 4 + i);
    }
    b.build(Surface::disk()).expect("cube is planar")
}

/// `K_{3,3}` with a torus rotation system whose three faces are hexagons.
/// Returned with a bare surface since the torus is not a supported surface.
pub fn k33_torus() -> EmbeddedGraph {
    let colors = vec![
        Color::Black,
        Color::Black,
        Color::Black,
        Color::White,
        Color::White,
        Color::White,
    ];
    let mut edges = Vec::new();
    for bl in 0..3 {
        for w in 3..6 {
            let id = edges.len();
            edges.push(Edge {
                id,
                black: bl,
                white: w,
            });
        }
    }
    let base: Vec<Vec<usize>> = (0..6)
        .map(|v| {
            edges
                .iter()
                .filter(|e| e.black == v || e.white == v)
                .map(|e| e.id)
                .collect()
        })
        .collect();
    for mask in 0..64u32 {
        let rotation: Vec<Vec<usize>> = base
            .iter()
            .enumerate()
            .map(|(v, r)| {
                if mask >> v & 1 == 1 {
                    vec![r[0], r[2], r[1]]
                } else {
                    r.clone()
                }
            })
            .collect();
        let g = EmbeddedGraph::new(colors.clone(), edges.clone(), rotation, Surface::bare())
            .expect("valid rotation system");
        if g.faces().len() == 3 && g.faces().iter().all(|f| f.len() == 6) {
            return g;
        }
    }
    unreachable!("K33 has a hexagonal torus embedding")
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Disk => "disk",
            SurfaceKind::Annulus => "annulus",
            SurfaceKind::Pants => "pants",
            SurfaceKind::Bare => "bare",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_graphs_are_planar() {
        for g in [
            cycle(2),
            cycle(3),
            theta(4),
            grid(3, 4),
            cube(),
            path_bundle(&[2, 1, 3]),
        ] {
            let chi = g.num_vertices() as i64 - g.num_edges() as i64 + g.faces().len() as i64;
            assert_eq!(chi, 2);
        }
        assert_eq!(cube().faces().len(), 6);
    }

    #[test]
    fn subgraphs_stay_connected_and_deterministic() {
        let a = grid_subgraph(2, 5, 3, 11);
        let b = grid_subgraph(2, 5, 3, 11);
        assert_eq!(a, b);
        assert!(a.is_connected());
        assert!(a.num_edges() < grid(2, 5).num_edges());
    }

    #[test]
    fn k33_has_three_hexagons() {
        let g = k33_torus();
        assert_eq!(g.faces().len(), 3);
        assert_eq!(g.num_edges(), 9);
    }
}
