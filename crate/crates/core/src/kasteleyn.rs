//! Block Kasteleyn matrices with a matrix connection, and the comparison of
//! their determinant with the sum of multiweb traces.

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    coefficient, det_fraction_free, Field, MultiPoly, Rational, Ring, RingMatrix,
};
use crate::connection::{identity_connection, monodromy, Connection};
use crate::error::{Error, Result};
use crate::graph::{kasteleyn_signs, Cilia, ClosedWalk, EmbeddedGraph, KasteleynSigns};
use crate::multiweb::{enumerate_multiwebs, trace, Multiweb};

/// `K̃`: the Kasteleyn matrix with each entry replaced by an `n x n` block.
#[derive(Debug, Clone, PartialEq)]
pub struct KasteleynBlockMatrix<R: Ring> {
    pub n: usize,
    pub whites: Vec<usize>,
    pub blacks: Vec<usize>,
    pub matrix: RingMatrix<R>,
}

/// Block `(w, b)` is `ε_e φ_e` summed over the edges joining `b` and `w`.
pub fn assemble<R: Ring>(
    g: &EmbeddedGraph,
    c: &Connection<R>,
    s: &KasteleynSigns,
) -> Result<KasteleynBlockMatrix<R>> {
    c.check_graph(g)?;
    if s.0.len() != g.num_edges() {
        return Err(Error::Graph(format!(
            "{} signs for {} edges",
            s.0.len(),
            g.num_edges()
        )));
    }
    let n = c.rank();
    let whites = g.white_vertices();
    let blacks = g.black_vertices();
    if whites.len() != blacks.len() {
        return Err(Error::Graph("graph is not balanced".into()));
    }
    let mut index = vec![0; g.num_vertices()];
    for (i, &w) in whites.iter().enumerate() {
        index[w] = i;
    }
    for (i, &b) in blacks.iter().enumerate() {
        index[b] = i;
    }
    let size = n * whites.len();
    let mut matrix = RingMatrix::<R>::zeros(size, size);
    for e in g.edges() {
        let (r0, c0) = (n * index[e.white], n * index[e.black]);
        let phi = c.matrix(e.id);
        for i in 0..n {
            for j in 0..n {
                let x = phi.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let x = if s.sign(e.id) < 0 {
                    x.negated()
                } else {
                    x.clone()
                };
                let cur = matrix.get(r0 + i, c0 + j).plus(&x);
                matrix.set(r0 + i, c0 + j, cur);
            }
        }
    }
    Ok(KasteleynBlockMatrix {
        n,
        whites,
        blacks,
        matrix,
    })
}

pub fn det_tilde<R: Ring>(g: &EmbeddedGraph, c: &Connection<R>, s: &KasteleynSigns) -> Result<R> {
    let k = assemble(g, c, s)?;
    Ok(det_fraction_free(&k.matrix)?)
}

/// Global sign `s` with `s · det K̃ = Σ Tr(m)`. For `n` even it is `+1`. For
/// `n` odd it is read off the identity connection, where the trace sum is
/// the positive partition function and `det K̃ = (det K)^n`.
pub fn sign_normalization(g: &EmbeddedGraph, n: usize, s: &KasteleynSigns) -> Result<i64> {
    if n.is_multiple_of(2) {
        return Ok(1);
    }
    let d: Rational = det_tilde(g, &identity_connection(g, 1), s)?;
    Ok(if d.is_negative() { -1 } else { 1 })
}

/// Cilia used on both sides of the comparison: positive cilia from a
/// perfect matching when one exists, else every cilium at position 0.
pub fn default_cilia(g: &EmbeddedGraph) -> Result<Cilia> {
    match g.find_matching() {
        Some(mm) => g.positive_cilia(&mm),
        None => Ok(vec![0; g.num_vertices()]),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainReport<R> {
    pub det: R,
    pub trace_sum: R,
    pub sign: i64,
    pub matches: bool,
    pub multiwebs: usize,
}

/// Computes `det K̃` and the sum of traces over all multiwebs independently.
pub fn verify_main(g: &EmbeddedGraph, c: &Connection) -> Result<MainReport<Rational>> {
    let s = kasteleyn_signs(g)?;
    let n = c.rank();
    let cilia = default_cilia(g)?;
    let (det, sums) = rayon::join(
        || det_tilde(g, c, &s),
        || {
            let webs: Vec<Multiweb> = enumerate_multiwebs(g, n).collect();
            let total = webs
                .par_iter()
                .map(|m| trace(g, m, c, &cilia))
                .try_reduce(<Rational as Ring>::zero, |a, b| Ok(a.plus(&b)));
            total.map(|t| (t, webs.len()))
        },
    );
    let det = det?;
    let (trace_sum, multiwebs) = sums?;
    let sign = sign_normalization(g, n, &s)?;
    let matches = if sign < 0 { -det.clone() } else { det.clone() } == trace_sum;
    Ok(MainReport {
        det,
        trace_sum,
        sign,
        matches,
        multiwebs,
    })
}

/// Trace of `m` as the coefficient of `∏ x_e^{m_e}` in `det K̃` with
/// `x_e φ_e` on the support of `m`. Edges off the support are zeroed, or kept
/// with weight 1 when `zero_others` is false.
pub fn trace_via_det_with(
    g: &EmbeddedGraph,
    m: &Multiweb,
    c: &Connection,
    zero_others: bool,
) -> Result<Rational> {
    m.check(g)?;
    c.check_graph(g)?;
    if c.rank() != m.rank() {
        return Err(Error::Connection("rank mismatch".into()));
    }
    let s = kasteleyn_signs(g)?;
    let mut var = vec![None; g.num_edges()];
    for (i, e) in m.support().enumerate() {
        var[e] = Some(i);
    }
    let poly = c.map(|e, phi| match var[e] {
        Some(i) => phi.map(|x| MultiPoly::var(i).scale(x)),
        None if zero_others => RingMatrix::zeros(phi.rows(), phi.cols()),
        None => phi.map(|x| MultiPoly::constant(x.clone())),
    });
    let det = det_tilde(g, &poly, &s)?;
    let exps: Vec<u32> = m.support().map(|e| m.mult(e) as u32).collect();
    let coeff = coefficient(&det, &exps);
    Ok(if sign_normalization(g, m.rank(), &s)? < 0 {
        -coeff
    } else {
        coeff
    })
}

pub fn trace_via_det(g: &EmbeddedGraph, m: &Multiweb, c: &Connection) -> Result<Rational> {
    trace_via_det_with(g, m, c, true)
}

/// Trace of the `k`-th exterior power: the `k`-th elementary symmetric
/// function of the eigenvalues, from power sums by Newton's identities.
pub fn exterior_power_trace<F: Field>(m: &RingMatrix<F>, k: usize) -> F {
    let mut p = Vec::with_capacity(k + 1);
    p.push(F::from_i64(m.rows() as i64));
    let mut power = m.clone();
    for _ in 1..=k {
        p.push(power.trace());
        power = power.matmul(m);
    }
    let mut e = vec![F::one()];
    for j in 1..=k {
        let mut acc = F::zero();
        for i in 1..=j {
            let term = e[j - i].times(&p[i]);
            acc = if i % 2 == 1 {
                acc.plus(&term)
            } else {
                acc.minus(&term)
            };
        }
        let inv = F::from_i64(j as i64).inverse().expect("nonzero integer");
        e.push(acc.times(&inv));
    }
    e[k].clone()
}

/// For `n = 2`: loops of single edges, each starting with its smallest edge
/// traversed from the black end.
pub fn loops_of(g: &EmbeddedGraph, m: &Multiweb) -> Vec<ClosedWalk> {
    let mut used = vec![false; g.num_edges()];
    let mut loops = Vec::new();
    for e0 in m.support().filter(|&e| m.mult(e) == 1) {
        if used[e0] {
            continue;
        }
        let start = g.edge(e0).black;
        let mut edges = vec![e0];
        used[e0] = true;
        let mut v = g.edge(e0).white;
        let mut last = e0;
        loop {
            // A rank-two multiweb has exactly two single edges at each
            // vertex of a loop.
            let next = g
                .rotation(v)
                .iter()
                .copied()
                .find(|&f| f != last && m.mult(f) == 1)
                .expect("single edges form cycles");
            if next == e0 {
                break;
            }
            used[next] = true;
            edges.push(next);
            v = g.other_end(next, v);
            last = next;
        }
        loops.push(ClosedWalk { start, edges });
    }
    loops
}

/// `Σ_m ∏_{doubled e} det φ_e ∏_{loops} Tr(monodromy)` over 2-multiwebs.
pub fn loop_formula_n2(g: &EmbeddedGraph, c: &Connection) -> Result<Rational> {
    if c.rank() != 2 {
        return Err(Error::Connection("loop formula needs rank 2".into()));
    }
    let mut total = <Rational as Ring>::zero();
    for m in enumerate_multiwebs(g, 2) {
        let mut term = <Rational as Ring>::one();
        for e in m.support().filter(|&e| m.mult(e) == 2) {
            term = term.times(&c.matrix(e).det()?);
        }
        for walk in loops_of(g, &m) {
            term = term.times(&monodromy(g, c, &walk)?.trace());
        }
        total = total.plus(&term);
    }
    Ok(total)
}
