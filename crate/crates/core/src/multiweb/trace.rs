use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use crate::algebra::{permutation_sign, Ring};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::graph::{Color, EmbeddedGraph};

use super::Multiweb;

/// An ordered set partition at a vertex: one colour mask per support edge
/// in reading order, with the signature of the concatenated colour list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    pub sets: Vec<u16>,
    pub sign: i64,
}

/// All ordered partitions of `{0..n}` into blocks of the given sizes.
pub fn vertex_partitions(n: usize, sizes: &[usize]) -> Vec<VertexPartition> {
    fn rec(
        sizes: &[usize],
        i: usize,
        free: u16,
        sets: &mut Vec<u16>,
        out: &mut Vec<VertexPartition>,
    ) {
        if i == sizes.len() {
            if free == 0 {
                let listing: Vec<u32> = sets
                    .iter()
                    .flat_map(|&s| (0..16).filter(move |b| s >> b & 1 == 1))
                    .collect();
                out.push(VertexPartition {
                    sets: sets.clone(),
                    sign: permutation_sign(&listing),
                });
            }
            return;
        }
        for sub in subsets_of(free, sizes[i]) {
            sets.push(sub);
            rec(sizes, i + 1, free & !sub, sets, out);
            sets.pop();
        }
    }
    let mut out = Vec::new();
    let full = ((1u32 << n) - 1) as u16;
    rec(sizes, 0, full, &mut Vec::new(), &mut out);
    out
}

/// Subsets of `mask` with exactly `k` elements, in increasing order.
fn subsets_of(mask: u16, k: usize) -> Vec<u16> {
    let mut out = Vec::new();
    let mut sub = mask;
    loop {
        if sub.count_ones() as usize == k {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out.reverse();
    out
}

fn mask_list(m: u16) -> Vec<usize> {
    (0..16).filter(|i| m >> i & 1 == 1).collect()
}

/// Support edges of `v` from the cilium: counterclockwise at black
/// vertices, clockwise at white ones.
fn reading_order(g: &EmbeddedGraph, m: &Multiweb, v: usize, cilium: usize) -> Vec<usize> {
    let rot = g.rotation(v);
    let d = rot.len();
    (0..d)
        .map(|i| match g.color(v) {
            Color::Black => rot[(cilium + i) % d],
            Color::White => rot[(cilium + d - i % d) % d],
        })
        .filter(|&e| m.mult(e) > 0)
        .collect()
}

fn check_cilia(g: &EmbeddedGraph, cilia: &[usize]) -> Result<()> {
    if cilia.len() != g.num_vertices() {
        return Err(Error::Graph(format!(
            "{} cilia for {} vertices",
            cilia.len(),
            g.num_vertices()
        )));
    }
    for (v, &c) in cilia.iter().enumerate() {
        if c >= g.degree(v).max(1) {
            return Err(Error::Graph(format!(
                "cilium of vertex {v} is out of range"
            )));
        }
    }
    Ok(())
}

enum Minors<'a, R: Ring> {
    /// Identity connection: the minor is 1 when the two sets agree.
    Kronecker,
    General {
        conn: &'a Connection<R>,
        cache: HashMap<(usize, u16, u16), R>,
    },
}

impl<R: Ring> Minors<'_, R> {
    fn get(&mut self, e: usize, s: u16, t: u16) -> R {
        match self {
            Minors::Kronecker => {
                if s == t {
                    R::one()
                } else {
                    R::zero()
                }
            }
            Minors::General { conn, cache } => cache
                .entry((e, s, t))
                .or_insert_with(|| conn.matrix(e).minor(&mask_list(s), &mask_list(t)))
                .clone(),
        }
    }
}

/// Frontier dynamic programme over white vertices for the set-valued
/// coloring sum. Black vertices are contracted, through a memoised tensor,
/// as soon as all of their whites have been placed.
fn coloring_sum<R: Ring>(
    g: &EmbeddedGraph,
    m: &Multiweb,
    cilia: Option<&[usize]>,
    mut minors: Minors<'_, R>,
) -> R {
    let n = m.rank();
    let nv = g.num_vertices();
    let order: Vec<Vec<usize>> = (0..nv)
        .map(|v| reading_order(g, m, v, cilia.map_or(0, |c| c[v])))
        .collect();
    let kronecker = matches!(minors, Minors::Kronecker);

    let whites = g.white_vertices();
    let mut slot = vec![usize::MAX; g.num_edges()];
    for (i, e) in m.support().enumerate() {
        slot[e] = i;
    }
    let nslots = m.support().count();
    let mut white_step = vec![0; nv];
    for (i, &w) in whites.iter().enumerate() {
        white_step[w] = i;
    }
    let mut completes: Vec<Vec<usize>> = vec![Vec::new(); whites.len()];
    for b in g.black_vertices() {
        let last = order[b]
            .iter()
            .map(|&e| white_step[g.edge(e).white])
            .max()
            .expect("every vertex has positive degree");
        completes[last].push(b);
    }

    let mut tensor_memo: HashMap<(usize, Vec<u16>), R> = HashMap::new();
    let mut states: HashMap<Vec<u16>, R> = HashMap::from([(vec![0u16; nslots], R::one())]);

    for (step, &w) in whites.iter().enumerate() {
        let sizes: Vec<usize> = order[w].iter().map(|&e| m.mult(e)).collect();
        let parts = vertex_partitions(n, &sizes);
        let mut next: HashMap<Vec<u16>, R> = HashMap::new();
        for (key, val) in &states {
            'part: for p in &parts {
                let mut k2 = key.clone();
                for (&e, &s) in order[w].iter().zip(&p.sets) {
                    k2[slot[e]] = s;
                }
                if kronecker {
                    // Sets meeting at a black vertex must be disjoint.
                    for &e in &order[w] {
                        let b = g.edge(e).black;
                        let mut seen = 0u16;
                        for &f in &order[b] {
                            let s = k2[slot[f]];
                            if seen & s != 0 {
                                continue 'part;
                            }
                            seen |= s;
                        }
                    }
                }
                let mut v = if cilia.is_some() && p.sign < 0 {
                    val.negated()
                } else {
                    val.clone()
                };
                for &b in &completes[step] {
                    let masks: Vec<u16> = order[b].iter().map(|&e| k2[slot[e]]).collect();
                    let t = tensor_memo
                        .entry((b, masks.clone()))
                        .or_insert_with(|| {
                            black_tensor(
                                n,
                                &order[b],
                                &masks,
                                cilia.is_some(),
                                kronecker,
                                &mut minors,
                            )
                        })
                        .clone();
                    if t.is_zero() {
                        continue 'part;
                    }
                    v = v.times(&t);
                    for &e in &order[b] {
                        k2[slot[e]] = 0;
                    }
                }
                match next.get_mut(&k2) {
                    Some(acc) => *acc = acc.plus(&v),
                    None => {
                        next.insert(k2, v);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    states.into_values().fold(R::zero(), |acc, v| acc.plus(&v))
}

/// `Σ_T sign(T) ∏_e minor_e(S_e, T_e)` over partitions `T` at a black vertex.
fn black_tensor<R: Ring>(
    n: usize,
    edges: &[usize],
    s_masks: &[u16],
    signed: bool,
    kronecker: bool,
    minors: &mut Minors<'_, R>,
) -> R {
    if kronecker {
        let mut seen = 0u16;
        for &s in s_masks {
            if seen & s != 0 {
                return R::zero();
            }
            seen |= s;
        }
        if !signed {
            return R::one();
        }
        let listing: Vec<usize> = s_masks.iter().flat_map(|&s| mask_list(s)).collect();
        return R::from_i64(permutation_sign(&listing));
    }
    let sizes: Vec<usize> = s_masks.iter().map(|s| s.count_ones() as usize).collect();
    let mut total = R::zero();
    for p in vertex_partitions(n, &sizes) {
        let mut term = if signed {
            R::from_i64(p.sign)
        } else {
            R::one()
        };
        for ((&e, &s), &t) in edges.iter().zip(s_masks).zip(&p.sets) {
            let mn = minors.get(e, s, t);
            if mn.is_zero() {
                term = R::zero();
                break;
            }
            term = term.times(&mn);
        }
        if !term.is_zero() {
            total = total.plus(&term);
        }
    }
    total
}

/// Web-trace of `m` for connection `c` and cilia `cilia`: the signed sum
/// over set-valued colorings of the products of connection minors.
pub fn trace<R: Ring>(
    g: &EmbeddedGraph,
    m: &Multiweb,
    c: &Connection<R>,
    cilia: &[usize],
) -> Result<R> {
    m.check(g)?;
    c.check_graph(g)?;
    if c.rank() != m.rank() {
        return Err(Error::Connection(format!(
            "connection has rank {}, multiweb has rank {}",
            c.rank(),
            m.rank()
        )));
    }
    check_cilia(g, cilia)?;
    Ok(coloring_sum(
        g,
        m,
        Some(cilia),
        Minors::General {
            conn: c,
            cache: HashMap::new(),
        },
    ))
}

/// Trace for the identity connection: the signed count of edge colorings.
pub fn trace_identity(g: &EmbeddedGraph, m: &Multiweb, cilia: &[usize]) -> Result<BigInt> {
    m.check(g)?;
    check_cilia(g, cilia)?;
    Ok(coloring_sum::<BigInt>(g, m, Some(cilia), Minors::Kronecker))
}

/// Number of edge-n-colorings of `m`.
pub fn count_colorings(g: &EmbeddedGraph, m: &Multiweb) -> Result<BigUint> {
    m.check(g)?;
    let c = coloring_sum::<BigInt>(g, m, None, Minors::Kronecker);
    Ok(c.abs().to_biguint().expect("nonnegative"))
}

/// Brute-force `Σ ∏_v c_v` over explicit edge colorings, one edge at a time.
pub fn signed_coloring_count(g: &EmbeddedGraph, m: &Multiweb, cilia: &[usize]) -> Result<BigInt> {
    m.check(g)?;
    check_cilia(g, cilia)?;
    let n = m.rank();
    let support: Vec<usize> = m.support().collect();
    let order: Vec<Vec<usize>> = (0..g.num_vertices())
        .map(|v| reading_order(g, m, v, cilia[v]))
        .collect();
    let mut used = vec![0u16; g.num_vertices()];
    let mut masks = vec![0u16; g.num_edges()];
    let mut total = BigInt::from(0);
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &EmbeddedGraph,
        m: &Multiweb,
        n: usize,
        support: &[usize],
        order: &[Vec<usize>],
        i: usize,
        used: &mut [u16],
        masks: &mut [u16],
        total: &mut BigInt,
    ) {
        if i == support.len() {
            let mut sign = 1;
            for edges in order {
                let listing: Vec<usize> = edges.iter().flat_map(|&e| mask_list(masks[e])).collect();
                sign *= permutation_sign(&listing);
            }
            *total += sign;
            return;
        }
        let e = support[i];
        let (b, w) = (g.edge(e).black, g.edge(e).white);
        let free = !(used[b] | used[w]) & (((1u32 << n) - 1) as u16);
        for s in subsets_of(free, m.mult(e)) {
            used[b] |= s;
            used[w] |= s;
            masks[e] = s;
            rec(g, m, n, support, order, i + 1, used, masks, total);
            used[b] &= !s;
            used[w] &= !s;
        }
        masks[e] = 0;
    }
    rec(
        g, m, n, &support, &order, 0, &mut used, &mut masks, &mut total,
    );
    Ok(total)
}

/// Contraction of codeterminants at black vertices with dual codeterminants
/// at white vertices, written out as a sum over one permutation per vertex.
/// Only for proper multiwebs on small graphs.
pub fn tensor_trace_oracle<R: Ring>(
    g: &EmbeddedGraph,
    m: &Multiweb,
    c: &Connection<R>,
    cilia: &[usize],
) -> Result<R> {
    m.check(g)?;
    c.check_graph(g)?;
    check_cilia(g, cilia)?;
    if !m.is_proper() {
        return Err(Error::Multiweb(
            "tensor oracle needs a proper multiweb".into(),
        ));
    }
    if c.rank() != m.rank() {
        return Err(Error::Connection("rank mismatch".into()));
    }
    let n = m.rank();
    let nv = g.num_vertices();
    let order: Vec<Vec<usize>> = (0..nv).map(|v| reading_order(g, m, v, cilia[v])).collect();
    let perms: Vec<(Vec<usize>, i64)> = permutations(n)
        .into_iter()
        .map(|p| {
            let s = permutation_sign(&p);
            (p, s)
        })
        .collect();
    // Visit vertices breadth-first so edges close early and prune zeros.
    let mut visit = Vec::with_capacity(nv);
    let mut seen = vec![false; nv];
    for root in 0..nv {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        visit.push(root);
        let mut i = visit.len() - 1;
        while i < visit.len() {
            let v = visit[i];
            for &e in &order[v] {
                let u = g.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    visit.push(u);
                }
            }
            i += 1;
        }
    }
    // colour[e] = (colour at black end, colour at white end)
    let mut color: Vec<(Option<usize>, Option<usize>)> = vec![(None, None); g.num_edges()];

    struct Ctx<'a, R: Ring> {
        g: &'a EmbeddedGraph,
        c: &'a Connection<R>,
        order: &'a [Vec<usize>],
        perms: &'a [(Vec<usize>, i64)],
        visit: &'a [usize],
    }
    fn rec<R: Ring>(
        ctx: &Ctx<'_, R>,
        i: usize,
        acc: R,
        color: &mut [(Option<usize>, Option<usize>)],
    ) -> R {
        if i == ctx.visit.len() {
            return acc;
        }
        let v = ctx.visit[i];
        let black = ctx.g.color(v) == Color::Black;
        let mut total = R::zero();
        'perm: for (p, sign) in ctx.perms {
            let mut a = if *sign < 0 {
                acc.negated()
            } else {
                acc.clone()
            };
            for (k, &e) in ctx.order[v].iter().enumerate() {
                let slot = &mut color[e];
                if black {
                    slot.0 = Some(p[k]);
                } else {
                    slot.1 = Some(p[k]);
                }
                if let (Some(cb), Some(cw)) = *slot {
                    let entry = ctx.c.matrix(e).get(cw, cb);
                    if entry.is_zero() {
                        for &f in &ctx.order[v][..=k] {
                            if black {
                                color[f].0 = None;
                            } else {
                                color[f].1 = None;
                            }
                        }
                        continue 'perm;
                    }
                    a = a.times(entry);
                }
            }
            total = total.plus(&rec(ctx, i + 1, a, color));
            for &e in &ctx.order[v] {
                if black {
                    color[e].0 = None;
                } else {
                    color[e].1 = None;
                }
            }
        }
        total
    }
    let ctx = Ctx {
        g,
        c,
        order: &order,
        perms: &perms,
        visit: &visit,
    };
    Ok(rec(&ctx, 0, R::one(), &mut color))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
