use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

use super::Multiweb;

/// Colour sets per edge as bitmasks: bit `i` is colour `i + 1`. `white[e]`
/// is the set seen from the white end, `black[e]` from the black end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub white: Vec<u16>,
    pub black: Vec<u16>,
}

impl Coloring {
    /// Colours of edge `e` at its white end, in `1..=n`.
    pub fn white_colors(&self, e: usize) -> Vec<usize> {
        mask_colors(self.white[e])
    }

    pub fn black_colors(&self, e: usize) -> Vec<usize> {
        mask_colors(self.black[e])
    }

    pub fn is_edge_coloring(&self) -> bool {
        self.white == self.black
    }
}

fn mask_colors(m: u16) -> Vec<usize> {
    (0..16).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Edge-n-coloring read off a height function on faces: crossing an edge
/// of multiplicity `k` from its right face to its left face raises the
/// height by `k` (mod `n`), and the edge gets colours `a, a+1, …, a+k-1`
/// where `a` is the height of its right face. Heights start at 0 on face 0.
pub fn height_coloring(g: &EmbeddedGraph, m: &Multiweb) -> Result<Coloring> {
    m.check(g)?;
    let n = m.rank() as i64;
    let nf = g.faces().len();
    let mut h: Vec<Option<i64>> = vec![None; nf];
    let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); nf];
    for e in 0..g.num_edges() {
        let (l, r) = (g.left_face(e), g.right_face(e));
        let k = m.mult(e) as i64;
        adj[r].push((e, l, k));
        adj[l].push((e, r, -k));
    }
    h[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        let hf = h[f].expect("visited");
        for &(e, to, dk) in &adj[f] {
            let want = (hf + dk).rem_euclid(n);
            match h[to] {
                None => {
                    h[to] = Some(want);
                    queue.push_back(to);
                }
                Some(x) if x != want => {
                    return Err(Error::Multiweb(format!(
                        "height function is inconsistent across edge {e}"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let mut masks = vec![0u16; g.num_edges()];
    for e in m.support() {
        let a = h[g.right_face(e)].expect("dual graph is connected");
        for i in 0..m.mult(e) as i64 {
            masks[e] |= 1 << ((a + i).rem_euclid(n));
        }
    }
    let c = Coloring {
        white: masks.clone(),
        black: masks,
    };
    debug_assert!(is_valid_coloring(g, m, &c));
    Ok(c)
}

/// Checks set sizes and that the sets at every vertex partition the colours.
pub fn is_valid_coloring(g: &EmbeddedGraph, m: &Multiweb, c: &Coloring) -> bool {
    let full: u16 = ((1u32 << m.rank()) - 1) as u16;
    for e in 0..g.num_edges() {
        let k = m.mult(e) as u32;
        if c.white[e].count_ones() != k || c.black[e].count_ones() != k {
            return false;
        }
    }
    for v in 0..g.num_vertices() {
        let mut seen = 0u16;
        for &e in g.rotation(v) {
            let s = if g.edge(e).black == v {
                c.black[e]
            } else {
                c.white[e]
            };
            if seen & s != 0 {
                return false;
            }
            seen |= s;
        }
        if seen != full {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, grid, theta};
    use crate::multiweb::enumerate_multiwebs;

    #[test]
    fn tripled_edges_get_every_colour() {
        let g = cycle(2);
        let m = Multiweb::new(&g, 3, vec![3, 0, 3, 0]).unwrap();
        let c = height_coloring(&g, &m).unwrap();
        assert_eq!(c.white[0], 0b111);
        assert_eq!(c.white[2], 0b111);
    }

    #[test]
    fn alternating_cycle_single_edges_share_colour() {
        let g = cycle(2);
        let m = Multiweb::new(&g, 3, vec![1, 2, 1, 2]).unwrap();
        let c = height_coloring(&g, &m).unwrap();
        assert!(is_valid_coloring(&g, &m, &c));
        assert_eq!(c.white[0], c.white[2]);
    }

    #[test]
    fn theta_singletons_partition() {
        let g = theta(3);
        let m = Multiweb::new(&g, 3, vec![1, 1, 1]).unwrap();
        let c = height_coloring(&g, &m).unwrap();
        assert_eq!(c.white[0] | c.white[1] | c.white[2], 0b111);
        assert!(c.white.iter().all(|s| s.count_ones() == 1));
    }

    #[test]
    fn every_grid_multiweb_colours() {
        let g = grid(3, 4);
        for m in enumerate_multiwebs(&g, 3) {
            let c = height_coloring(&g, &m).unwrap();
            assert!(is_valid_coloring(&g, &m, &c));
        }
    }
}
