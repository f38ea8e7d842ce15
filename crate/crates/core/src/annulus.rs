//! Square grids on an annulus: seam-variable determinants, the SL3 trace
//! polynomial in `u = Tr(A)/3` and `v = Tr(A⁻¹)/3`, crossing probabilities
//! and crossing exponents.

use std::f64::consts::PI;

use num_traits::{Signed, Zero};

use crate::algebra::{
    coefficient, product_over_char_roots, rat, rational_to_f64, LaurentPoly, Monomial, MultiPoly,
    Rational, RingMatrix,
};
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::graph::{kasteleyn_signs, Color, Edge, EmbeddedGraph, Seam, Surface, SurfaceKind};
use crate::kasteleyn::det_tilde;

/// The grid `G_{2m,n}`: vertex `(x, y)` with `x < 2m`, `1 <= y <= n` has id
/// `(y - 1) * 2m + x` and is black when `x + y` is even. The seam runs up
/// the column of wrap-around edges between `x = 2m - 1` and `x = 0`.
#[derive(Debug, Clone)]
pub struct AnnulusGrid {
    pub m: usize,
    pub n: usize,
    pub graph: EmbeddedGraph,
    /// Wrap-around edges, bottom row first.
    pub seam_edges: Vec<usize>,
}

impl AnnulusGrid {
    pub fn vertex(&self, x: usize, y: usize) -> usize {
        (y - 1) * 2 * self.m + x
    }

    /// `+1` when the black end of a seam edge is its west end.
    pub fn seam_orientation(&self, e: usize) -> i64 {
        let w = 2 * self.m;
        if self.graph.edge(e).black % w == w - 1 {
            1
        } else {
            -1
        }
    }
}

pub fn build_annulus_grid(m: usize, n: usize) -> Result<AnnulusGrid> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "half-circumference {m} must be odd"
        )));
    }
    if n == 0 {
        return Err(Error::Unsupported("height must be positive".into()));
    }
    let w = 2 * m;
    let id = |x: usize, y: usize| (y - 1) * w + x;
    let nv = w * n;
    let colors: Vec<Color> = (0..nv)
        .map(|v| {
            if (v % w + v / w + 1).is_multiple_of(2) {
                Color::Black
            } else {
                Color::White
            }
        })
        .collect();
    let mut edges = Vec::new();
    let mut east = vec![0; nv];
    let mut north = vec![None; nv];
    let add = |a: usize, b: usize, edges: &mut Vec<Edge>| {
        let (black, white) = if colors[a] == Color::Black {
            (a, b)
        } else {
            (b, a)
        };
        edges.push(Edge {
            id: edges.len(),
            black,
            white,
        });
        edges.len() - 1
    };
    for y in 1..=n {
        for x in 0..w {
            east[id(x, y)] = add(id(x, y), id((x + 1) % w, y), &mut edges);
        }
    }
    for y in 1..n {
        for x in 0..w {
            north[id(x, y)] = Some(add(id(x, y), id(x, y + 1), &mut edges));
        }
    }
    let rotation: Vec<Vec<usize>> = (0..nv)
        .map(|v| {
            let (x, y) = (v % w, v / w + 1);
            let mut r = vec![east[v]];
            r.extend(north[v]);
            r.push(east[id((x + w - 1) % w, y)]);
            if y > 1 {
                r.extend(north[id(x, y - 1)]);
            }
            r
        })
        .collect();
    let seam_edges: Vec<usize> = (1..=n).map(|y| east[id(w - 1, y)]).collect();
    let bare = EmbeddedGraph::new(colors, edges, rotation, Surface::bare())?;
    // The bottom boundary lies to the right of the eastward edge out of (0, 1).
    let d = bare.out_dart(id(0, 1), east[id(0, 1)]);
    let bottom = bare.dart_face(d ^ 1);
    let top_dart = bare.out_dart(id(0, n), east[id(0, n)]);
    let top = bare.dart_face(top_dart);
    let surface = Surface {
        kind: SurfaceKind::Annulus,
        punctured_faces: vec![bottom, top],
        seams: vec![Seam {
            from: 0,
            to: 1,
            edges: seam_edges.clone(),
        }],
    };
    let graph = bare.with_surface(surface)?;
    Ok(AnnulusGrid {
        m,
        n,
        graph,
        seam_edges,
    })
}

/// Scalar connection with `z` on seam edges (`z⁻¹` when the black end is
/// east) and 1 elsewhere.
pub fn seam_connection(grid: &AnnulusGrid) -> Connection<LaurentPoly> {
    let mut weights = vec![LaurentPoly::constant(rat(1)); grid.graph.num_edges()];
    for &e in &grid.seam_edges {
        weights[e] = LaurentPoly::monomial(grid.seam_orientation(e), rat(1));
    }
    crate::connection::scalar_connection(weights)
}

/// `det K(z)` exactly as computed, before any normalization.
pub fn det_kz_raw(grid: &AnnulusGrid) -> Result<LaurentPoly> {
    let s = kasteleyn_signs(&grid.graph)?;
    det_tilde(&grid.graph, &seam_connection(grid), &s)
}

/// `det K(z)` shifted so its exponents run over `-d..=d`, or `-d..=d+1`
/// when the span is odd.
pub fn det_kz(m: usize, n: usize) -> Result<LaurentPoly> {
    let raw = det_kz_raw(&build_annulus_grid(m, n)?)?;
    Ok(symmetrize(&raw))
}

fn symmetrize(p: &LaurentPoly) -> LaurentPoly {
    match (p.min_exponent(), p.max_exponent()) {
        (Some(lo), Some(hi)) => p.shift(-(lo + (hi - lo) / 2)),
        _ => p.clone(),
    }
}

/// The constants `α_k = -cos θ_k + sqrt(1 + cos² θ_k)`, `θ_k = πk/(n+1)`.
#[derive(Debug, Clone)]
pub struct AnnulusSpectrum {
    pub theta: Vec<f64>,
    pub alpha: Vec<f64>,
}

impl AnnulusSpectrum {
    pub fn new(n: usize) -> Self {
        let theta: Vec<f64> = (1..=n).map(|k| PI * k as f64 / (n + 1) as f64).collect();
        let alpha = theta
            .iter()
            .map(|t| -t.cos() + (1.0 + t.cos() * t.cos()).sqrt())
            .collect();
        AnnulusSpectrum { theta, alpha }
    }

    /// `α_k` for `k` in `1..=n`.
    pub fn alpha(&self, k: usize) -> f64 {
        self.alpha[k - 1]
    }
}

/// Product formula for `|det K_{2m,n}(z)|`.
pub fn closed_form(m: usize, n: usize, z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::Unsupported("closed form needs z > 0".into()));
    }
    if m.is_multiple_of(2) {
        return Err(Error::Unsupported(format!(
            "half-circumference {m} must be odd"
        )));
    }
    let sp = AnnulusSpectrum::new(n);
    let mut p = if n % 2 == 1 {
        z.sqrt() + 1.0 / z.sqrt()
    } else {
        1.0
    };
    for k in 1..=n / 2 {
        let a = sp.alpha(k).powi(2 * m as i32);
        p *= (z + a) * (z + 1.0 / a) / z;
    }
    Ok(p.abs())
}

/// Fit of the exact determinant against the product formula: `det K(z) =
/// sign · z^t · closed_form(z)` where `t` may be a half-integer.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormFit {
    pub sign: i64,
    pub z_power: f64,
    pub max_rel_err: f64,
}

pub fn fit_closed_form(m: usize, n: usize, points: &[f64]) -> Result<ClosedFormFit> {
    let raw = det_kz_raw(&build_annulus_grid(m, n)?)?;
    let sign = if raw.eval(&rat(1)).is_negative() {
        -1
    } else {
        1
    };
    let ratio2 = raw.eval_f64(2.0).abs() / closed_form(m, n, 2.0)?;
    let z_power = (2.0 * ratio2.log2()).round() / 2.0;
    let mut max_rel_err: f64 = 0.0;
    for &z in points {
        let exact = raw.eval_f64(z);
        let model = sign as f64 * z.powf(z_power) * closed_form(m, n, z)?;
        max_rel_err = max_rel_err.max(((exact - model) / model).abs());
    }
    Ok(ClosedFormFit {
        sign,
        z_power,
        max_rel_err,
    })
}

/// `det K̃` for a connection with monodromy `A ∈ SL3` around the annulus,
/// as a polynomial in `u` (variable 0) and `v` (variable 1). Normalized to be
/// positive at `u = v = 1`.
pub fn det_uv(m: usize, n: usize) -> Result<MultiPoly> {
    let raw = det_kz_raw(&build_annulus_grid(m, n)?)?;
    // xyz = 1, so any power of z can be cleared first.
    let (_, q) = raw.to_polynomial();
    let deg = q.degree_in(0);
    let coeffs: Vec<MultiPoly> = (0..=deg)
        .map(|i| MultiPoly::constant(coefficient(&q, &[i])))
        .collect();
    let p = product_over_char_roots(&coeffs);
    Ok(if p.eval(&[rat(1), rat(1)]).is_negative() {
        p.scale(&rat(-1))
    } else {
        p
    })
}

/// `P(u, v) = det K̃(u, v) / det K̃(1, 1)`.
pub fn pgf(m: usize, n: usize) -> Result<MultiPoly> {
    let d = det_uv(m, n)?;
    let total = d.eval(&[rat(1), rat(1)]);
    if total.is_zero() {
        return Err(Error::Unsupported("partition function is zero".into()));
    }
    Ok(d.scale(&(Rational::from_integer(1.into()) / total)))
}

/// Probability `c_{j,k}` of `j` loops of one orientation and `k` of the other.
pub fn crossing_probability(p: &MultiPoly, j: u32, k: u32) -> Rational {
    p.coefficient(&Monomial::new(&[j, k]))
}

/// Table of `c_{j,k}` as `(j, k, probability)`, nonzero entries only.
pub fn crossing_table(p: &MultiPoly) -> Vec<(u32, u32, Rational)> {
    let mut out: Vec<(u32, u32, Rational)> = p
        .terms()
        .map(|(mono, c)| (mono.exponent(0), mono.exponent(1), c.clone()))
        .collect();
    out.sort_by_key(|t| (t.0 + t.1, t.0));
    out
}

/// Exact mean number of loops of one orientation: `∂P/∂u` at `(1, 1)`.
pub fn exact_mean(m: usize, n: usize) -> Result<Rational> {
    Ok(pgf(m, n)?.derivative(0).eval(&[rat(1), rat(1)]))
}

/// `Σ_{j ≤ n/2} 3α_j^{2m} / (1 + α_j^{2m})²`.
pub fn mean_crossings(m: usize, n: usize) -> Result<f64> {
    if n % 2 == 1 {
        return Err(Error::Unsupported(
            "the finite mean formula needs even height".into(),
        ));
    }
    let sp = AnnulusSpectrum::new(n);
    Ok((1..=n / 2)
        .map(|j| {
            let a = sp.alpha(j).powi(2 * m as i32);
            3.0 * a / ((1.0 + a) * (1.0 + a))
        })
        .sum())
}

/// `Σ_{ℓ < terms} 3q^{2ℓ+1} / (1 + q^{2ℓ+1})²` with `q = e^{-πτ}`.
pub fn asymptotic_mean(tau: f64, terms: usize) -> f64 {
    let q = (-PI * tau).exp();
    (0..terms)
        .map(|l| {
            let x = q.powi(2 * l as i32 + 1);
            3.0 * x / ((1.0 + x) * (1.0 + x))
        })
        .sum()
}

/// `(τ, mean)` samples of the asymptotic mean on an evenly spaced grid.
pub fn mean_curve(tau_min: f64, tau_max: f64, points: usize, terms: usize) -> Vec<(f64, f64)> {
    let steps = points.max(2) - 1;
    (0..=steps)
        .map(|i| {
            let t = tau_min + (tau_max - tau_min) * i as f64 / steps as f64;
            (t, asymptotic_mean(t, terms))
        })
        .collect()
}

/// `δ_{j,k} = ⌈2(j² + jk + k²)/3⌉`.
pub fn crossing_exponent(j: u64, k: u64) -> u64 {
    (2 * (j * j + j * k + k * k)).div_ceil(3)
}

/// Direct minimization of `ΣL₁ + 2ΣL₂ + 2ΣM₁ + ΣM₂` over sets of odd
/// integers with `L₁ ∩ M₁ = L₂ ∩ M₂ = ∅`, `|L₁| + |L₂| = j`, `|M₁| + |M₂| = k`.
pub fn crossing_exponent_oracle(j: usize, k: usize) -> u64 {
    let odds: Vec<u64> = (0..(j + k).max(1)).map(|i| 2 * i as u64 + 1).collect();
    // best[l][m]: cheapest way to take l "u" and m "v" picks from one side.
    let side = |wu: u64, wv: u64| {
        let mut best = vec![vec![u64::MAX; k + 1]; j + 1];
        let total = 3usize.pow(odds.len() as u32);
        for code in 0..total {
            let (mut c, mut l, mut mm, mut cost) = (code, 0, 0, 0);
            for &o in &odds {
                match c % 3 {
                    1 => {
                        l += 1;
                        cost += wu * o;
                    }
                    2 => {
                        mm += 1;
                        cost += wv * o;
                    }
                    _ => {}
                }
                c /= 3;
            }
            if l <= j && mm <= k && cost < best[l][mm] {
                best[l][mm] = cost;
            }
        }
        best
    };
    let a = side(1, 2);
    let b = side(2, 1);
    let mut best = u64::MAX;
    for l1 in 0..=j {
        for m1 in 0..=k {
            let (x, y) = (a[l1][m1], b[j - l1][k - m1]);
            if x != u64::MAX && y != u64::MAX {
                best = best.min(x + y);
            }
        }
    }
    best
}

/// Lowest power of `q` in the `u^j v^k` coefficient of the formal product
/// `∏_i (1 + 3q^{2i+1}u + 3q^{4i+2}v + q^{6i+3})(1 + 3q^{2i+1}v + 3q^{4i+2}u + q^{6i+3})`,
/// with enough factors that later ones cannot lower it.
pub fn formal_crossing_exponent(j: u32, k: u32) -> Option<u32> {
    let factors = (j + k) as usize + 1;
    let q = |p: u32| MultiPoly::monomial(Monomial::var(2, p), rat(1));
    let (u, v) = (MultiPoly::var(0), MultiPoly::var(1));
    let three = rat(3);
    let mut prod = MultiPoly::constant(rat(1));
    for i in 0..factors as u32 {
        let a = &(&(&MultiPoly::constant(rat(1)) + &(&q(2 * i + 1) * &u).scale(&three))
            + &(&q(4 * i + 2) * &v).scale(&three))
            + &q(6 * i + 3);
        let b = &(&(&MultiPoly::constant(rat(1)) + &(&q(2 * i + 1) * &v).scale(&three))
            + &(&q(4 * i + 2) * &u).scale(&three))
            + &q(6 * i + 3);
        prod = prune(&(&(&prod * &a) * &b), j, k);
    }
    prod.terms()
        .filter(|(mono, _)| mono.exponent(0) == j && mono.exponent(1) == k)
        .map(|(mono, _)| mono.exponent(2))
        .min()
}

fn prune(p: &MultiPoly, j: u32, k: u32) -> MultiPoly {
    MultiPoly::from_terms(
        p.terms()
            .filter(|(mono, _)| mono.exponent(0) <= j && mono.exponent(1) <= k)
            .map(|(mono, c)| (mono.clone(), c.clone())),
    )
}

/// Elementary symmetric images `(u, v) = (Tr(A)/3, Tr(A⁻¹)/3)` of a
/// diagonal matrix with entries `x, y, 1/(xy)`.
pub fn diagonal_uv(x: &Rational, y: &Rational) -> (Rational, Rational, RingMatrix<Rational>) {
    let one = rat(1);
    let z = &one / &(x * y);
    let u = (x + y + &z) / rat(3);
    let v = (&one / x + &one / y + &one / &z) / rat(3);
    let mut a = RingMatrix::zeros(3, 3);
    a.set(0, 0, x.clone());
    a.set(1, 1, y.clone());
    a.set(2, 2, z);
    (u, v, a)
}

/// Rank-3 connection with `A` (or `A⁻¹` against the seam) on seam edges.
pub fn monodromy_connection(grid: &AnnulusGrid, a: &RingMatrix<Rational>) -> Result<Connection> {
    let inv = a.inverse()?;
    let mats = (0..grid.graph.num_edges())
        .map(|e| {
            if !grid.seam_edges.contains(&e) {
                RingMatrix::identity(3)
            } else if grid.seam_orientation(e) > 0 {
                a.clone()
            } else {
                inv.clone()
            }
        })
        .collect();
    Connection::new(3, mats)
}

pub fn rational_mean_f64(m: usize, n: usize) -> Result<f64> {
    Ok(rational_to_f64(&exact_mean(m, n)?))
}
