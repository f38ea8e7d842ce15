use std::collections::VecDeque;

use crate::error::{Error, Result};

use super::EmbeddedGraph;

/// Edge signs, `+1` or `-1`, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KasteleynSigns(pub Vec<i8>);

impl KasteleynSigns {
    pub fn sign(&self, e: usize) -> i64 {
        self.0[e] as i64
    }

    pub fn all_positive(num_edges: usize) -> Self {
        KasteleynSigns(vec![1; num_edges])
    }

    pub fn minus_count(&self) -> usize {
        self.0.iter().filter(|&&s| s < 0).count()
    }

    /// Whether every face of length `l` has `(l/2 + 1) mod 2` minus signs,
    /// counted mod 2.
    pub fn satisfies_face_rule(&self, g: &EmbeddedGraph) -> bool {
        g.faces().iter().all(|f| {
            let minus = f.edges().filter(|&e| self.0[e] < 0).count();
            minus % 2 == (f.len() / 2 + 1) % 2
        })
    }
}

/// Solves the face sign system over GF(2), with the edges of a
/// breadth-first spanning tree from vertex 0 pinned to `+1` and every
/// remaining free variable set to `+1`.
pub fn kasteleyn_signs(g: &EmbeddedGraph) -> Result<KasteleynSigns> {
    if !g.is_connected() {
        return Err(Error::Graph(
            "Kasteleyn signs need a connected graph".into(),
        ));
    }
    let ne = g.num_edges();
    let words = ne.div_ceil(64);
    let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
    for f in g.faces() {
        let mut bits = vec![0u64; words];
        for e in f.edges() {
            bits[e / 64] ^= 1 << (e % 64);
        }
        rows.push((bits, (f.len() / 2 + 1) % 2 == 1));
    }
    for e in spanning_tree(g) {
        let mut bits = vec![0u64; words];
        bits[e / 64] |= 1 << (e % 64);
        rows.push((bits, false));
    }
    let x = solve_gf2(rows, ne)
        .ok_or_else(|| Error::Graph("Kasteleyn sign system has no solution".into()))?;
    let signs = KasteleynSigns(x.into_iter().map(|b| if b { -1 } else { 1 }).collect());
    debug_assert!(signs.satisfies_face_rule(g));
    Ok(signs)
}

fn spanning_tree(g: &EmbeddedGraph) -> Vec<usize> {
    let mut seen = vec![false; g.num_vertices()];
    let mut tree = Vec::new();
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        let mut inc = g.rotation(v).to_vec();
        inc.sort_unstable();
        for e in inc {
            let u = g.other_end(e, v);
            if !seen[u] {
                seen[u] = true;
                tree.push(e);
                queue.push_back(u);
            }
        }
    }
    tree
}

/// Gaussian elimination over GF(2). Each row is a bitset over `nvars`
/// variables plus a right-hand side. Free variables are set to 0.
pub fn solve_gf2(mut rows: Vec<(Vec<u64>, bool)>, nvars: usize) -> Option<Vec<bool>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[w] & b != 0) else {
            continue;
        };
        rows.swap(r, p);
        let (pivot_bits, pivot_rhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[w] & b != 0 {
                for (x, y) in row.0.iter_mut().zip(&pivot_bits) {
                    *x ^= y;
                }
                row.1 ^= pivot_rhs;
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; nvars];
    for (row, col) in pivots {
        x[col] = rows[row].1;
    }
    Some(x)
}

/// Flips the sign of every edge at `v`; the face rule is preserved.
pub fn flip_at_vertex(g: &EmbeddedGraph, signs: &KasteleynSigns, v: usize) -> KasteleynSigns {
    let mut out = signs.clone();
    for &e in g.rotation(v) {
        out.0[e] = -out.0[e];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{cycle, grid, theta};
    use super::*;

    #[test]
    fn four_cycle_has_one_minus() {
        let g = cycle(2);
        let s = kasteleyn_signs(&g).unwrap();
        assert_eq!(s.minus_count() % 2, 1);
        assert!(s.satisfies_face_rule(&g));
    }

    #[test]
    fn theta_all_positive() {
        let s = kasteleyn_signs(&theta(3)).unwrap();
        assert_eq!(s.minus_count(), 0);
    }

    #[test]
    fn grid_signs_checked_face_by_face() {
        for (r, c) in [(2, 3), (3, 4), (4, 4)] {
            let g = grid(r, c);
            let s = kasteleyn_signs(&g).unwrap();
            assert!(s.satisfies_face_rule(&g));
            assert_eq!(s, kasteleyn_signs(&g).unwrap());
            let t = flip_at_vertex(&g, &s, 1);
            assert_ne!(s, t);
            assert!(t.satisfies_face_rule(&g));
        }
    }

    #[test]
    fn inconsistent_system_detected() {
        let rows = vec![(vec![0b11u64], true), (vec![0b11u64], false)];
        assert_eq!(solve_gf2(rows, 2), None);
    }
}
