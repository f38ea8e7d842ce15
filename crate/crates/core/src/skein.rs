//! SL3 skein moves on 3-multiwebs inside a fixed graph, reduction of
//! annulus multiwebs to loop classes, and the pants theta coefficient.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rat, Rational, RingMatrix};
use crate::connection::{is_flat, Connection};
use crate::error::{Error, Result};
use crate::graph::{kasteleyn_signs, ClosedWalk, EmbeddedGraph, SurfaceKind};
use crate::kasteleyn::det_tilde;
use crate::multiweb::Multiweb;

/// A maximal path of alternating single and double edges. Open chains run
/// between trivalent vertices; `vertices` has one more entry than `edges`.
/// Closed chains repeat no vertex and `vertices[0]` is where the walk starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
    pub closed: bool,
    /// Only for closed chains.
    pub contractible: Option<bool>,
}

impl Chain {
    pub fn ends(&self) -> Option<(usize, usize)> {
        if self.closed {
            None
        } else {
            Some((self.vertices[0], *self.vertices.last().expect("nonempty")))
        }
    }

    pub fn walk(&self) -> ClosedWalk {
        ClosedWalk {
            start: self.vertices[0],
            edges: self.edges.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStructure {
    pub chains: Vec<Chain>,
    pub trivalent: Vec<usize>,
}

fn check_rank(m: &Multiweb) -> Result<()> {
    if m.rank() != 3 {
        return Err(Error::Skein(format!(
            "skein moves need rank 3, got {}",
            m.rank()
        )));
    }
    Ok(())
}

fn is_trivalent(g: &EmbeddedGraph, m: &Multiweb, v: usize) -> bool {
    g.rotation(v).iter().filter(|&&e| m.mult(e) == 1).count() == 3
}

/// Web edges (multiplicity 1 or 2) at `v` other than `skip`.
fn web_edges(g: &EmbeddedGraph, m: &Multiweb, v: usize) -> Vec<usize> {
    g.rotation(v)
        .iter()
        .copied()
        .filter(|&e| matches!(m.mult(e), 1 | 2))
        .collect()
}

pub fn find_chains(g: &EmbeddedGraph, m: &Multiweb) -> Result<ChainStructure> {
    check_rank(m)?;
    m.check(g)?;
    let trivalent: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| is_trivalent(g, m, v))
        .collect();
    let mut used = vec![false; g.num_edges()];
    let mut chains = Vec::new();
    for &t in &trivalent {
        for e0 in web_edges(g, m, t) {
            if used[e0] {
                continue;
            }
            let mut edges = vec![e0];
            let mut vertices = vec![t];
            used[e0] = true;
            let mut v = g.other_end(e0, t);
            let mut last = e0;
            while !is_trivalent(g, m, v) {
                vertices.push(v);
                let next = web_edges(g, m, v)
                    .into_iter()
                    .find(|&f| f != last)
                    .expect("chain vertices have two web edges");
                used[next] = true;
                edges.push(next);
                v = g.other_end(next, v);
                last = next;
            }
            vertices.push(v);
            chains.push(Chain {
                edges,
                vertices,
                closed: false,
                contractible: None,
            });
        }
    }
    for e0 in 0..g.num_edges() {
        if used[e0] || !matches!(m.mult(e0), 1 | 2) {
            continue;
        }
        let start = g.edge(e0).black;
        let mut edges = vec![e0];
        let mut vertices = vec![start];
        used[e0] = true;
        let mut v = g.other_end(e0, start);
        let mut last = e0;
        while v != start {
            vertices.push(v);
            let next = web_edges(g, m, v)
                .into_iter()
                .find(|&f| f != last)
                .expect("chain vertices have two web edges");
            used[next] = true;
            edges.push(next);
            v = g.other_end(next, v);
            last = next;
        }
        let walk = ClosedWalk {
            start,
            edges: edges.clone(),
        };
        let contractible = Some(g.is_contractible(&walk)?);
        chains.push(Chain {
            edges,
            vertices,
            closed: true,
            contractible,
        });
    }
    Ok(ChainStructure { chains, trivalent })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SkeinTerm {
    pub coefficient: BigUint,
    pub multiweb: Multiweb,
}

/// Contractible closed chain → 3 × (doubled edges tripled, single edges removed).
pub fn apply_loop_move(g: &EmbeddedGraph, m: &Multiweb, chain: &Chain) -> Result<SkeinTerm> {
    check_rank(m)?;
    if !chain.closed {
        return Err(Error::Skein("loop move needs a closed chain".into()));
    }
    if !g.is_contractible(&chain.walk())? {
        return Err(Error::Skein("loop move needs a contractible chain".into()));
    }
    let mut mult = m.multiplicities().to_vec();
    for &e in &chain.edges {
        mult[e] = match mult[e] {
            1 => 0,
            2 => 3,
            k => {
                return Err(Error::Skein(format!(
                    "edge {e} has multiplicity {k} in a chain"
                )))
            }
        };
    }
    Ok(SkeinTerm {
        coefficient: BigUint::from(3u32),
        multiweb: Multiweb::new(g, 3, mult)?,
    })
}

/// Faces on either side of a simple cycle; returns true when one side
/// contains no punctured face and no web edge.
fn bounds_empty_disk(g: &EmbeddedGraph, m: &Multiweb, walk: &ClosedWalk) -> Result<bool> {
    let darts = g.walk_darts(walk)?;
    let on_cycle: HashSet<usize> = walk.edges.iter().copied().collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.faces().len()];
    for e in 0..g.num_edges() {
        if !on_cycle.contains(&e) {
            let (l, r) = (g.left_face(e), g.right_face(e));
            adj[l].push((e, r));
            adj[r].push((e, l));
        }
    }
    'side: for seed in [darts[0], darts[0] ^ 1] {
        let f0 = g.dart_face(seed);
        let mut seen = vec![false; g.faces().len()];
        seen[f0] = true;
        let mut queue = VecDeque::from([f0]);
        while let Some(f) = queue.pop_front() {
            if g.is_punctured(f) {
                continue 'side;
            }
            for &(e, h) in &adj[f] {
                if matches!(m.mult(e), 1 | 2) {
                    continue 'side;
                }
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Checks a bigon or square: a closed walk through `corners` trivalent
/// vertices and otherwise chain vertices, bounding an empty disk.
fn check_cycle(g: &EmbeddedGraph, m: &Multiweb, walk: &ClosedWalk, corners: usize) -> Result<()> {
    check_rank(m)?;
    let darts = g.walk_darts(walk)?;
    let mut seen = HashSet::new();
    let mut count = 0;
    for &d in &darts {
        let v = g.dart_tail(d);
        if !seen.insert(v) {
            return Err(Error::Skein("cycle is not simple".into()));
        }
        if is_trivalent(g, m, v) {
            count += 1;
        }
        if !matches!(m.mult(d / 2), 1 | 2) {
            return Err(Error::Skein(format!("edge {} is not a web edge", d / 2)));
        }
    }
    if count != corners {
        return Err(Error::Skein(format!(
            "cycle has {count} trivalent vertices, expected {corners}"
        )));
    }
    if !bounds_empty_disk(g, m, walk)? {
        return Err(Error::Skein("cycle does not bound an empty disk".into()));
    }
    Ok(())
}

/// The two resolutions: every other edge of the cycle up by one, the rest
/// down by one, in both phases.
fn alternate(g: &EmbeddedGraph, m: &Multiweb, walk: &ClosedWalk) -> Result<[SkeinTerm; 2]> {
    let make = |phase: usize| -> Result<SkeinTerm> {
        let mut mult = m.multiplicities().to_vec();
        for (i, &e) in walk.edges.iter().enumerate() {
            mult[e] = if i % 2 == phase {
                mult[e] + 1
            } else {
                mult[e] - 1
            };
        }
        Ok(SkeinTerm {
            coefficient: BigUint::one(),
            multiweb: Multiweb::new(g, 3, mult)?,
        })
    };
    Ok([make(0)?, make(1)?])
}

pub fn apply_bigon_move(
    g: &EmbeddedGraph,
    m: &Multiweb,
    bigon: &ClosedWalk,
) -> Result<[SkeinTerm; 2]> {
    check_cycle(g, m, bigon, 2)?;
    alternate(g, m, bigon)
}

pub fn apply_square_move(
    g: &EmbeddedGraph,
    m: &Multiweb,
    square: &ClosedWalk,
) -> Result<[SkeinTerm; 2]> {
    check_cycle(g, m, square, 4)?;
    alternate(g, m, square)
}

/// Chain `c` read from trivalent vertex `from`.
fn oriented(c: &Chain, from: usize) -> Vec<usize> {
    if c.vertices[0] == from {
        c.edges.clone()
    } else {
        c.edges.iter().rev().copied().collect()
    }
}

fn other_end(c: &Chain, v: usize) -> usize {
    let (a, b) = c.ends().expect("open chain");
    if a == v {
        b
    } else {
        a
    }
}

/// Sorted chain ids of a cycle and its `(vertex, chain)` steps.
type Found = (Vec<usize>, Vec<(usize, usize)>);

/// Cycles through trivalent vertices of the chain graph with `len` chains,
/// each listed once, starting at its smallest vertex.
fn chain_cycles(cs: &ChainStructure, len: usize) -> Vec<ClosedWalk> {
    let open: Vec<usize> = (0..cs.chains.len())
        .filter(|&i| !cs.chains[i].closed)
        .collect();
    let mut at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in &open {
        let (a, b) = cs.chains[i].ends().expect("open chain");
        at.entry(a).or_default().push(i);
        at.entry(b).or_default().push(i);
    }
    let mut out = Vec::new();
    let mut keys = HashSet::new();
    fn extend(
        cs: &ChainStructure,
        at: &BTreeMap<usize, Vec<usize>>,
        len: usize,
        path: &mut Vec<(usize, usize)>,
        out: &mut Vec<Found>,
    ) {
        let start = path[0].0;
        let (v, _) = *path.last().expect("nonempty");
        let c = path.last().expect("nonempty").1;
        let next_v = other_end(&cs.chains[c], v);
        if path.len() == len {
            if next_v == start {
                let mut ids: Vec<usize> = path.iter().map(|p| p.1).collect();
                ids.sort_unstable();
                out.push((ids, path.clone()));
            }
            return;
        }
        if next_v == start || path.iter().any(|p| p.0 == next_v) || next_v < start {
            return;
        }
        for &c2 in at.get(&next_v).map(Vec::as_slice).unwrap_or(&[]) {
            if path.iter().any(|p| p.1 == c2) {
                continue;
            }
            path.push((next_v, c2));
            extend(cs, at, len, path, out);
            path.pop();
        }
    }
    let mut found = Vec::new();
    for (&v, list) in &at {
        for &c in list {
            let mut path = vec![(v, c)];
            extend(cs, &at, len, &mut path, &mut found);
        }
    }
    for (ids, path) in found {
        if !keys.insert(ids) {
            continue;
        }
        let mut edges = Vec::new();
        for &(v, c) in &path {
            edges.extend(oriented(&cs.chains[c], v));
        }
        out.push(ClosedWalk {
            start: path[0].0,
            edges,
        });
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Loop(Chain),
    Bigon(ClosedWalk),
    Square(ClosedWalk),
}

/// Every applicable move, loops first, then bigons, then squares.
pub fn applicable_moves(g: &EmbeddedGraph, m: &Multiweb) -> Result<Vec<Move>> {
    let cs = find_chains(g, m)?;
    let mut out: Vec<Move> = cs
        .chains
        .iter()
        .filter(|c| c.contractible == Some(true))
        .cloned()
        .map(Move::Loop)
        .collect();
    for walk in chain_cycles(&cs, 2) {
        if bounds_empty_disk(g, m, &walk)? {
            out.push(Move::Bigon(walk));
        }
    }
    for walk in chain_cycles(&cs, 4) {
        if bounds_empty_disk(g, m, &walk)? {
            out.push(Move::Square(walk));
        }
    }
    Ok(out)
}

pub fn apply_move(g: &EmbeddedGraph, m: &Multiweb, mv: &Move) -> Result<Vec<SkeinTerm>> {
    Ok(match mv {
        Move::Loop(c) => vec![apply_loop_move(g, m, c)?],
        Move::Bigon(w) => apply_bigon_move(g, m, w)?.to_vec(),
        Move::Square(w) => apply_square_move(g, m, w)?.to_vec(),
    })
}

/// `(trivalent vertices, single edges)`; every move lowers it.
pub fn complexity(g: &EmbeddedGraph, m: &Multiweb) -> (usize, usize) {
    let t = (0..g.num_vertices())
        .filter(|&v| is_trivalent(g, m, v))
        .count();
    let s = m.support().filter(|&e| m.mult(e) == 1).count();
    (t, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveOrder {
    /// Loops, then bigons, then squares, in edge-id order.
    Canonical,
    /// A seeded random choice among all applicable moves.
    Shuffled(u64),
}

/// `(j, k)` → coefficient. With single edges read black to white, the `j`
/// loops run counterclockwise (east on the annulus grid, whose top row is
/// the inner boundary) and pick up `Tr A` under the monodromy connection;
/// the `k` loops run clockwise and pick up `Tr A⁻¹`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReductionResult {
    pub classes: BTreeMap<(u32, u32), BigUint>,
}

impl ReductionResult {
    pub fn coefficient(&self, j: u32, k: u32) -> BigUint {
        self.classes.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, j: u32, k: u32, c: &BigUint) {
        *self.classes.entry((j, k)).or_default() += c;
    }

    pub fn merge(&mut self, other: &ReductionResult) {
        for (&(j, k), c) in &other.classes {
            self.add(j, k, c);
        }
    }

    /// `Σ C_{j,k} x^j y^k`.
    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        self.classes
            .iter()
            .map(|(&(j, k), c)| {
                Rational::from_integer(BigInt::from(c.clone())) * x.pow(j as i32) * y.pow(k as i32)
            })
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// Loop class of a reduced multiweb: all web edges lie on noncontractible
/// closed chains.
pub fn classify_reduced(g: &EmbeddedGraph, m: &Multiweb) -> Result<Option<(u32, u32)>> {
    let cs = find_chains(g, m)?;
    if !cs.trivalent.is_empty() || cs.chains.iter().any(|c| c.contractible != Some(false)) {
        return Ok(None);
    }
    let (mut j, mut k) = (0, 0);
    for c in &cs.chains {
        // Walk so that single edges go from black to white.
        let i = c
            .edges
            .iter()
            .position(|&e| m.mult(e) == 1)
            .expect("closed chains have single edges");
        let e0 = c.edges[i];
        let n = c.edges.len();
        let forward = c.vertices[i] == g.edge(e0).black;
        let edges: Vec<usize> = if forward {
            (0..n).map(|t| c.edges[(i + t) % n]).collect()
        } else {
            (0..n).map(|t| c.edges[(i + n - t) % n]).collect()
        };
        let walk = ClosedWalk {
            start: g.edge(e0).black,
            edges,
        };
        let w = g.seam_winding(&walk)?;
        match w.first().copied() {
            Some(-1) => j += 1,
            Some(1) => k += 1,
            other => return Err(Error::Skein(format!("reduced loop has winding {other:?}"))),
        }
    }
    Ok(Some((j, k)))
}

/// Rewrites `m` until every term is a union of noncontractible loops and
/// tripled edges, then tallies the loop classes. On a disk everything
/// lands in class `(0, 0)`.
pub fn reduce_annulus_with(
    g: &EmbeddedGraph,
    m: &Multiweb,
    order: MoveOrder,
) -> Result<ReductionResult> {
    if !matches!(g.surface().kind, SurfaceKind::Annulus | SurfaceKind::Disk) {
        return Err(Error::Unsupported(
            "reduction to loop classes needs a disk or an annulus".into(),
        ));
    }
    check_rank(m)?;
    let mut rng = match order {
        MoveOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        MoveOrder::Canonical => None,
    };
    let mut work: BTreeMap<Multiweb, BigUint> = BTreeMap::from([(m.clone(), BigUint::one())]);
    let mut result = ReductionResult::default();
    while let Some((cur, coeff)) = work.pop_first() {
        if let Some((j, k)) = classify_reduced(g, &cur)? {
            result.add(j, k, &coeff);
            continue;
        }
        let moves = applicable_moves(g, &cur)?;
        let mv = match rng.as_mut() {
            Some(r) => moves.choose(r),
            None => moves.first(),
        }
        .ok_or_else(|| Error::Skein("unreduced multiweb admits no move".into()))?;
        let before = complexity(g, &cur);
        for t in apply_move(g, &cur, mv)? {
            if complexity(g, &t.multiweb) >= before {
                return Err(Error::Skein("move did not lower the complexity".into()));
            }
            *work.entry(t.multiweb).or_default() += &coeff * &t.coefficient;
        }
    }
    Ok(result)
}

pub fn reduce_annulus(g: &EmbeddedGraph, m: &Multiweb) -> Result<ReductionResult> {
    reduce_annulus_with(g, m, MoveOrder::Canonical)
}

/// The pants monodromies `A(a)` and `B(a)`.
pub fn pants_matrices(a: &Rational) -> (RingMatrix<Rational>, RingMatrix<Rational>) {
    let (z, o) = (rat(0), rat(1));
    let am = RingMatrix::from_rows(vec![
        vec![o.clone(), a.clone(), o.clone()],
        vec![z.clone(), o.clone(), o.clone()],
        vec![z.clone(), z.clone(), o.clone()],
    ]);
    let bm = RingMatrix::from_rows(vec![
        vec![o.clone(), z.clone(), z.clone()],
        vec![o.clone(), o.clone(), z.clone()],
        vec![-a.clone(), -(a * a), o],
    ]);
    (am, bm)
}

/// Flat rank-3 connection: seam `i` carries `M_i` on edges it crosses from
/// left to right and `M_i⁻¹` otherwise.
pub fn seam_matrix_connection(
    g: &EmbeddedGraph,
    seams: &[RingMatrix<Rational>],
) -> Result<Connection> {
    let signs = g.seam_signs();
    if signs.len() != seams.len() {
        return Err(Error::Connection(format!(
            "{} seam matrices for {} seams",
            seams.len(),
            signs.len()
        )));
    }
    let mut mats = vec![RingMatrix::<Rational>::identity(3); g.num_edges()];
    for (list, mat) in signs.iter().zip(seams) {
        let inv = mat.inverse()?;
        for &(e, s) in list {
            let step = if s > 0 { mat } else { &inv };
            mats[e] = step.matmul(&mats[e]);
        }
    }
    let c = Connection::new(3, mats)?;
    if !is_flat(g, &c)? {
        return Err(Error::Connection("seam connection is not flat".into()));
    }
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PantsReport {
    pub z0: BigInt,
    pub z1: BigInt,
    /// Exponents `(s1, s2)` with `A^{s1}` on the first seam and `B^{s2}` on
    /// the second.
    pub variant: (i32, i32),
    /// Coefficients of `det K̃` in `a`, lowest first, sign-normalized.
    pub coefficients: Vec<String>,
}

/// `det K̃ = Z0 + Z1 (6 + a²)` for a graph on a pair of pants.
pub fn pants_z1(g: &EmbeddedGraph) -> Result<PantsReport> {
    if g.surface().kind != SurfaceKind::Pants {
        return Err(Error::Unsupported(
            "theta coefficient needs a pants surface".into(),
        ));
    }
    let signs = kasteleyn_signs(g)?;
    let points: Vec<i64> = (-2..=2).collect();
    for variant in [(1, -1), (1, 1), (-1, 1), (-1, -1)] {
        let mut values = Vec::with_capacity(points.len());
        for &p in &points {
            let (am, bm) = pants_matrices(&rat(p));
            let a1 = if variant.0 > 0 { am } else { am.inverse()? };
            let b1 = if variant.1 > 0 { bm } else { bm.inverse()? };
            let c = seam_matrix_connection(g, &[a1, b1])?;
            values.push(det_tilde(g, &c, &signs)?);
        }
        let coeffs = interpolate(&points, &values);
        let even_only = coeffs[1].is_zero() && coeffs[3].is_zero() && coeffs[4].is_zero();
        if !even_only {
            continue;
        }
        let flip = coeffs[0].is_negative();
        let coeffs: Vec<Rational> = coeffs
            .into_iter()
            .map(|c| if flip { -c } else { c })
            .collect();
        let z1 = &coeffs[2];
        let z0 = &coeffs[0] - z1 * rat(6);
        if !z0.is_integer() || !z1.is_integer() {
            return Err(Error::Skein("theta coefficients are not integers".into()));
        }
        return Ok(PantsReport {
            z0: z0.to_integer(),
            z1: z1.to_integer(),
            variant,
            coefficients: coeffs.iter().map(crate::algebra::format_rational).collect(),
        });
    }
    Err(Error::Skein(
        "odd powers of a survive in every seam variant; the theta web occurs in both orientations"
            .into(),
    ))
}

/// Coefficients (lowest first) of the polynomial through `(x_i, y_i)`.
fn interpolate(xs: &[i64], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        // Basis polynomial for node i, built up factor by factor.
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * rat(xs[j]);
            }
            basis = next;
            denom *= rat(xs[i] - xs[j]);
        }
        for (d, c) in basis.iter().enumerate() {
            out[d] += c * &ys[i] / &denom;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::build_annulus_grid;
    use crate::graph::{cycle, theta};
    use crate::multiweb::{count_colorings, enumerate_multiwebs};

    #[test]
    fn chains_of_small_webs() {
        let g = cycle(2);
        let m = Multiweb::new(&g, 3, vec![3, 0, 3, 0]).unwrap();
        assert!(find_chains(&g, &m).unwrap().chains.is_empty());
        let m = Multiweb::new(&g, 3, vec![1, 2, 1, 2]).unwrap();
        let cs = find_chains(&g, &m).unwrap();
        assert_eq!(cs.chains.len(), 1);
        assert!(cs.chains[0].closed);
        let g = theta(3);
        let m = Multiweb::new(&g, 3, vec![1, 1, 1]).unwrap();
        let cs = find_chains(&g, &m).unwrap();
        assert_eq!(cs.chains.len(), 3);
        assert_eq!(cs.trivalent.len(), 2);
    }

    #[test]
    fn loop_move_triples() {
        let g = cycle(2);
        let m = Multiweb::new(&g, 3, vec![1, 2, 1, 2]).unwrap();
        let cs = find_chains(&g, &m).unwrap();
        let t = apply_loop_move(&g, &m, &cs.chains[0]).unwrap();
        assert_eq!(t.coefficient, BigUint::from(3u32));
        assert_eq!(t.multiweb.multiplicities(), &[0, 3, 0, 3]);
        assert_eq!(
            count_colorings(&g, &m).unwrap(),
            BigUint::from(3u32) * count_colorings(&g, &t.multiweb).unwrap()
        );
    }

    #[test]
    fn theta_bigon() {
        let g = theta(3);
        let m = Multiweb::new(&g, 3, vec![1, 1, 1]).unwrap();
        let moves = applicable_moves(&g, &m).unwrap();
        let bigon = moves
            .iter()
            .find_map(|mv| match mv {
                Move::Bigon(w) if w.edges.contains(&0) && w.edges.contains(&1) => Some(w.clone()),
                _ => None,
            })
            .unwrap();
        let [a, b] = apply_bigon_move(&g, &m, &bigon).unwrap();
        let mut got = vec![
            a.multiweb.multiplicities().to_vec(),
            b.multiweb.multiplicities().to_vec(),
        ];
        got.sort();
        assert_eq!(got, vec![vec![0, 2, 1], vec![2, 0, 1]]);
    }

    #[test]
    fn counts_are_conserved_by_every_move() {
        let g = crate::graph::grid(3, 4);
        for m in enumerate_multiwebs(&g, 3) {
            let before = count_colorings(&g, &m).unwrap();
            for mv in applicable_moves(&g, &m).unwrap() {
                let after: BigUint = apply_move(&g, &m, &mv)
                    .unwrap()
                    .iter()
                    .map(|t| &t.coefficient * count_colorings(&g, &t.multiweb).unwrap())
                    .sum();
                assert_eq!(before, after, "{mv:?}");
            }
        }
    }

    #[test]
    fn annulus_totals() {
        for (mm, n) in [(1, 2), (3, 2), (1, 3)] {
            let grid = build_annulus_grid(mm, n).unwrap();
            let g = &grid.graph;
            let mut total = ReductionResult::default();
            for m in enumerate_multiwebs(g, 3) {
                total.merge(&reduce_annulus(g, &m).unwrap());
            }
            let z = BigUint::from(g.count_matchings()).pow(3);
            assert_eq!(
                total.evaluate(&rat(3), &rat(3)),
                Rational::from_integer(z.into())
            );
            assert_eq!(total.coefficient(1, 0), total.coefficient(0, 1));
        }
    }

    #[test]
    fn reduction_is_order_independent() {
        let grid = build_annulus_grid(3, 2).unwrap();
        let g = &grid.graph;
        for (i, m) in enumerate_multiwebs(g, 3).enumerate().step_by(7) {
            let a = reduce_annulus(g, &m).unwrap();
            let b = reduce_annulus_with(g, &m, MoveOrder::Shuffled(i as u64)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let xs: Vec<i64> = (-2..=2).collect();
        let ys: Vec<Rational> = xs.iter().map(|&x| rat(7 + 3 * x * x - x * x * x)).collect();
        let c = interpolate(&xs, &ys);
        assert_eq!(c, vec![rat(7), rat(0), rat(3), rat(-1), rat(0)]);
    }

    #[test]
    fn theta_on_pants() {
        let g = theta(3);
        let g = g.with_punctures(SurfaceKind::Pants, vec![0, 1, 2]).unwrap();
        let r = pants_z1(&g).unwrap();
        assert_eq!(r.z1, BigInt::from(1));
        assert_eq!(r.z0, BigInt::from(21));
    }

    #[test]
    fn both_theta_orientations_are_rejected() {
        let g = crate::graph::grid(2, 4)
            .with_punctures(SurfaceKind::Pants, vec![0, 2, 3])
            .unwrap();
        assert!(matches!(pants_z1(&g), Err(Error::Skein(_))));
        let g = crate::graph::grid(2, 4)
            .with_punctures(SurfaceKind::Pants, vec![0, 1, 2])
            .unwrap();
        let r = pants_z1(&g).unwrap();
        assert_eq!((r.z0, r.z1), (BigInt::from(101), BigInt::from(4)));
    }

    #[test]
    fn disk_inside_pants() {
        let g = cycle(2);
        let outer = (0..g.faces().len())
            .max_by_key(|&f| g.faces()[f].len())
            .unwrap();
        let g = g
            .with_punctures(SurfaceKind::Pants, vec![outer; 3])
            .unwrap();
        let r = pants_z1(&g).unwrap();
        assert_eq!(r.z1, BigInt::from(0));
        assert_eq!(r.z0, BigInt::from(8));
    }
}
