//! n-multiwebs: enumeration, colorings, traces and sampling.

mod coloring;
mod sample;
mod trace;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::EmbeddedGraph;

pub use coloring::{height_coloring, is_valid_coloring, Coloring};
pub use sample::{partition_function, sample_multiweb, MultiwebSampler};
pub use trace::{
    count_colorings, signed_coloring_count, tensor_trace_oracle, trace, trace_identity,
    vertex_partitions, VertexPartition,
};

/// Edge multiplicities summing to `n` at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Multiweb {
    n: usize,
    #[serde(rename = "multiplicities")]
    mult: Vec<u8>,
}

impl Multiweb {
    /// Validates the degree condition against `g`.
    pub fn new(g: &EmbeddedGraph, n: usize, mult: Vec<u8>) -> Result<Self> {
        let m = Multiweb { n, mult };
        m.check(g)?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(n: usize, mult: Vec<u8>) -> Self {
        Multiweb { n, mult }
    }

    pub fn check(&self, g: &EmbeddedGraph) -> Result<()> {
        if self.mult.len() != g.num_edges() {
            return Err(Error::Multiweb(format!(
                "{} multiplicities for {} edges",
                self.mult.len(),
                g.num_edges()
            )));
        }
        for v in 0..g.num_vertices() {
            let d: usize = g.rotation(v).iter().map(|&e| self.mult[e] as usize).sum();
            if d != self.n {
                return Err(Error::Multiweb(format!(
                    "vertex {v} has degree {d}, expected {}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mult(&self, e: usize) -> usize {
        self.mult[e] as usize
    }

    pub fn multiplicities(&self) -> &[u8] {
        &self.mult
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.mult.len()).filter(|&e| self.mult[e] > 0)
    }

    pub fn is_proper(&self) -> bool {
        self.mult.iter().all(|&k| k <= 1)
    }

    pub fn with_mult(&self, e: usize, k: usize) -> Self {
        let mut out = self.clone();
        out.mult[e] = k as u8;
        out
    }
}

/// All `n`-multiwebs of `g`, edges in ascending id with multiplicities
/// tried from high to low.
pub fn enumerate_multiwebs(g: &EmbeddedGraph, n: usize) -> MultiwebIter {
    MultiwebIter::new(g, n)
}

/// Backtracking enumerator; each degree-feasible multiplicity function is
/// produced exactly once.
pub struct MultiwebIter {
    n: usize,
    ends: Vec<(usize, usize)>,
    /// Per edge, the endpoints for which it is the last incident edge.
    closes: Vec<Vec<usize>>,
    /// Per edge and endpoint, incident edges still unassigned after it.
    after: Vec<(usize, usize)>,
    rem: Vec<usize>,
    cur: Vec<Option<u8>>,
    started: bool,
    done: bool,
}

impl MultiwebIter {
    fn new(g: &EmbeddedGraph, n: usize) -> Self {
        let ne = g.num_edges();
        let ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.black, e.white)).collect();
        let mut last = vec![None; g.num_vertices()];
        let mut seen = vec![0usize; g.num_vertices()];
        let mut after = Vec::with_capacity(ne);
        for (e, &(b, w)) in ends.iter().enumerate() {
            last[b] = Some(e);
            last[w] = Some(e);
            seen[b] += 1;
            seen[w] += 1;
            after.push((g.degree(b) - seen[b], g.degree(w) - seen[w]));
        }
        let mut closes = vec![Vec::new(); ne];
        let mut isolated = false;
        for (v, l) in last.iter().enumerate() {
            match l {
                Some(e) => closes[*e].push(v),
                None => isolated = true,
            }
        }
        MultiwebIter {
            n,
            ends,
            closes,
            after,
            rem: vec![n; g.num_vertices()],
            cur: vec![None; ne],
            started: false,
            done: isolated && n > 0 || ne == 0,
        }
    }

    fn try_value(&mut self, d: usize, start: usize) -> bool {
        let (b, w) = self.ends[d];
        let hi = start.min(self.rem[b]).min(self.rem[w]);
        let (ab, aw) = self.after[d];
        for k in (0..=hi).rev() {
            let rb = self.rem[b] - k;
            let rw = self.rem[w] - k;
            if rb > self.n * ab || rw > self.n * aw {
                // Lower k only makes the remainder larger.
                return false;
            }
            self.rem[b] = rb;
            self.rem[w] = rw;
            if self.closes[d].iter().all(|&v| self.rem[v] == 0) {
                self.cur[d] = Some(k as u8);
                return true;
            }
            self.rem[b] += k;
            self.rem[w] += k;
        }
        false
    }

    fn undo(&mut self, d: usize) -> Option<usize> {
        let k = self.cur[d].take()? as usize;
        let (b, w) = self.ends[d];
        self.rem[b] += k;
        self.rem[w] += k;
        Some(k)
    }
}

impl MultiwebIter {
    /// Unassigns edges below `d` until one can still take a smaller value.
    fn retreat(&mut self, mut d: usize) -> Option<(usize, usize)> {
        while d > 0 {
            d -= 1;
            let k = self.undo(d).expect("assigned edge");
            if k > 0 {
                return Some((d, k - 1));
            }
        }
        None
    }
}

impl Iterator for MultiwebIter {
    type Item = Multiweb;

    fn next(&mut self) -> Option<Multiweb> {
        if self.done {
            return None;
        }
        let ne = self.ends.len();
        let resume = if self.started {
            self.retreat(ne)
        } else {
            self.started = true;
            Some((0, self.n))
        };
        let Some((mut d, mut start)) = resume else {
            self.done = true;
            return None;
        };
        loop {
            if self.try_value(d, start) {
                d += 1;
                start = self.n;
                if d == ne {
                    let mult = self.cur.iter().map(|c| c.expect("assigned edge")).collect();
                    return Some(Multiweb::new_unchecked(self.n, mult));
                }
            } else {
                match self.retreat(d) {
                    Some((d2, s2)) => {
                        d = d2;
                        start = s2;
                    }
                    None => {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}
