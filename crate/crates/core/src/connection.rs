//! Matrix connections on edges, stored black to white.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ratio, Field, Rational, Ring, RingMatrix};
use crate::error::{Error, Result};
use crate::graph::{ClosedWalk, Color, EmbeddedGraph};

/// One `n x n` matrix per edge: parallel transport from the black endpoint
/// to the white endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<R: Ring = Rational> {
    n: usize,
    mats: Vec<RingMatrix<R>>,
}

impl<R: Ring> Connection<R> {
    pub fn new(n: usize, mats: Vec<RingMatrix<R>>) -> Result<Self> {
        if let Some(e) = mats.iter().position(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Connection(format!("edge {e} matrix is not {n}x{n}")));
        }
        Ok(Connection { n, mats })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix(&self, e: usize) -> &RingMatrix<R> {
        &self.mats[e]
    }

    pub fn matrices(&self) -> &[RingMatrix<R>] {
        &self.mats
    }

    pub fn set_matrix(&mut self, e: usize, m: RingMatrix<R>) {
        assert_eq!((m.rows(), m.cols()), (self.n, self.n));
        self.mats[e] = m;
    }

    pub fn map<S: Ring>(
        &self,
        f: impl Fn(usize, &RingMatrix<R>) -> RingMatrix<S>,
    ) -> Connection<S> {
        Connection {
            n: self.n,
            mats: self.mats.iter().enumerate().map(|(e, m)| f(e, m)).collect(),
        }
    }

    pub fn check_graph(&self, g: &EmbeddedGraph) -> Result<()> {
        if self.mats.len() != g.num_edges() {
            return Err(Error::Connection(format!(
                "{} matrices for {} edges",
                self.mats.len(),
                g.num_edges()
            )));
        }
        Ok(())
    }
}

pub fn identity_connection(g: &EmbeddedGraph, n: usize) -> Connection {
    Connection {
        n,
        mats: vec![RingMatrix::identity(n); g.num_edges()],
    }
}

/// Rank-1 connection with the given scalar weights.
pub fn scalar_connection<R: Ring>(weights: Vec<R>) -> Connection<R> {
    Connection {
        n: 1,
        mats: weights
            .into_iter()
            .map(|w| RingMatrix::from_rows(vec![vec![w]]))
            .collect(),
    }
}

/// Product of 3 to 6 elementary shears `I + c E_ij` with small rational `c`.
pub fn random_sl_matrix(n: usize, rng: &mut impl Rng) -> RingMatrix<Rational> {
    let mut m = RingMatrix::<Rational>::identity(n);
    if n < 2 {
        return m;
    }
    let count = rng.gen_range(3..=6);
    for _ in 0..count {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut num = rng.gen_range(-3..=2i64);
        if num >= 0 {
            num += 1;
        }
        let den = rng.gen_range(1..=3i64);
        let mut shear = RingMatrix::<Rational>::identity(n);
        shear.set(i, j, ratio(num, den));
        m = shear.matmul(&m);
    }
    m
}

/// Seeded random connection with every edge matrix in `SL_n(Q)`.
pub fn random_sl(g: &EmbeddedGraph, n: usize, seed: u64) -> Connection {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Connection {
        n,
        mats: (0..g.num_edges())
            .map(|_| random_sl_matrix(n, &mut rng))
            .collect(),
    }
}

/// Seeded random unimodular matrix per vertex.
pub fn random_gauge(g: &EmbeddedGraph, n: usize, seed: u64) -> Vec<RingMatrix<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..g.num_vertices())
        .map(|_| random_sl_matrix(n, &mut rng))
        .collect()
}

/// `φ'_bw = A_w⁻¹ φ_bw A_b`.
pub fn gauge_transform(
    g: &EmbeddedGraph,
    c: &Connection,
    gauge: &[RingMatrix<Rational>],
) -> Result<Connection> {
    c.check_graph(g)?;
    if gauge.len() != g.num_vertices() {
        return Err(Error::Connection(format!(
            "{} gauge matrices for {} vertices",
            gauge.len(),
            g.num_vertices()
        )));
    }
    let mut inverses = Vec::with_capacity(gauge.len());
    for (v, a) in gauge.iter().enumerate() {
        if a.rows() != c.rank() || a.cols() != c.rank() {
            return Err(Error::Connection(format!(
                "gauge matrix at vertex {v} has the wrong size"
            )));
        }
        inverses.push(
            a.inverse().map_err(|_| {
                Error::Connection(format!("gauge matrix at vertex {v} is singular"))
            })?,
        );
    }
    let mats = g
        .edges()
        .iter()
        .map(|e| {
            inverses[e.white]
                .matmul(c.matrix(e.id))
                .matmul(&gauge[e.black])
        })
        .collect();
    Ok(Connection { n: c.rank(), mats })
}

/// Ordered product along a closed walk: the matrix for each step multiplies
/// on the left, and white-to-black steps use the inverse.
pub fn monodromy<F: Field>(
    g: &EmbeddedGraph,
    c: &Connection<F>,
    walk: &ClosedWalk,
) -> Result<RingMatrix<F>> {
    let darts = g.walk_darts(walk)?;
    let mut m = RingMatrix::<F>::identity(c.rank());
    for d in darts {
        let e = d / 2;
        let step = if d % 2 == 0 {
            c.matrix(e).clone()
        } else {
            c.matrix(e)
                .inverse()
                .map_err(|_| Error::Connection(format!("edge {e} matrix is singular")))?
        };
        m = step.matmul(&m);
    }
    Ok(m)
}

/// Whether the monodromy around every unpunctured face is the identity.
pub fn is_flat<F: Field>(g: &EmbeddedGraph, c: &Connection<F>) -> Result<bool> {
    for f in 0..g.faces().len() {
        if g.is_punctured(f) {
            continue;
        }
        if !monodromy(g, c, &g.face_walk(f))?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Walk that starts at a white vertex is rotated to start at a black one,
/// so monodromies of cycles can be compared from a canonical base.
pub fn rebase_walk(g: &EmbeddedGraph, walk: &ClosedWalk, steps: usize) -> ClosedWalk {
    let mut start = walk.start;
    for &e in walk.edges.iter().take(steps) {
        start = g.other_end(e, start);
    }
    let k = steps % walk.edges.len().max(1);
    let mut edges = walk.edges[k..].to_vec();
    edges.extend_from_slice(&walk.edges[..k]);
    ClosedWalk { start, edges }
}

/// Start vertex colour helper for tests and reports.
pub fn walk_starts_black(g: &EmbeddedGraph, walk: &ClosedWalk) -> bool {
    g.color(walk.start) == Color::Black
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::graph::{cycle, theta};

    #[test]
    fn identity_and_rank_one() {
        let g = theta(3);
        let c = identity_connection(&g, 3);
        assert!(c.matrices().iter().all(|m| m.is_identity()));
        let c1 = random_sl(&g, 1, 5);
        assert!(c1.matrices().iter().all(|m| m.get(0, 0) == &rat(1)));
    }

    #[test]
    fn random_sl_is_unimodular_and_seeded() {
        let g = cycle(3);
        for n in 1..=4 {
            for seed in 0..100 {
                let c = random_sl(&g, n, seed);
                assert!(c.matrices().iter().all(|m| m.det().unwrap() == rat(1)));
            }
        }
        assert_eq!(random_sl(&g, 3, 9), random_sl(&g, 3, 9));
        assert_ne!(random_sl(&g, 3, 9), random_sl(&g, 3, 10));
    }

    #[test]
    fn gauge_round_trip_and_composition() {
        let g = cycle(2);
        let c = random_sl(&g, 3, 1);
        let a = random_gauge(&g, 3, 2);
        let b = random_gauge(&g, 3, 3);
        let id = vec![RingMatrix::identity(3); g.num_vertices()];
        assert_eq!(gauge_transform(&g, &c, &id).unwrap(), c);
        let inv: Vec<_> = a.iter().map(|m| m.inverse().unwrap()).collect();
        let there = gauge_transform(&g, &c, &a).unwrap();
        assert_eq!(gauge_transform(&g, &there, &inv).unwrap(), c);
        let ab: Vec<_> = a.iter().zip(&b).map(|(x, y)| x.matmul(y)).collect();
        let twice = gauge_transform(&g, &gauge_transform(&g, &c, &a).unwrap(), &b).unwrap();
        assert_eq!(twice, gauge_transform(&g, &c, &ab).unwrap());
        let mut singular = id.clone();
        singular[0] = RingMatrix::zeros(3, 3);
        assert!(gauge_transform(&g, &c, &singular).is_err());
    }

    #[test]
    fn theta_monodromy_is_b_inverse_a() {
        let g = theta(3);
        let c = random_sl(&g, 3, 4);
        let walk = ClosedWalk {
            start: 0,
            edges: vec![0, 1],
        };
        let m = monodromy(&g, &c, &walk).unwrap();
        let expect = c.matrix(1).inverse().unwrap().matmul(c.matrix(0));
        assert_eq!(m, expect);
        let other = rebase_walk(&g, &walk, 1);
        assert!(!walk_starts_black(&g, &other));
        assert_eq!(monodromy(&g, &c, &other).unwrap().trace(), m.trace());
    }

    #[test]
    fn flatness() {
        let g = cycle(2);
        assert!(is_flat(&g, &identity_connection(&g, 3)).unwrap());
        let gauged =
            gauge_transform(&g, &identity_connection(&g, 3), &random_gauge(&g, 3, 8)).unwrap();
        assert!(is_flat(&g, &gauged).unwrap());
        let mut bent = identity_connection(&g, 3);
        let mut shear = RingMatrix::identity(3);
        shear.set(0, 1, rat(2));
        bent.set_matrix(0, shear);
        assert!(!is_flat(&g, &bent).unwrap());
    }
}
