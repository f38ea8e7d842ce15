use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use webtrace_core::algebra::coefficient;
use webtrace_core::algebra::{rat, Rational};
use webtrace_core::annulus::{build_annulus_grid, det_uv, monodromy_connection};
use webtrace_core::connection::random_sl_matrix;
use webtrace_core::kasteleyn::default_cilia;
use webtrace_core::multiweb::{count_colorings, enumerate_multiwebs, trace, trace_identity};
use webtrace_core::skein::{applicable_moves, apply_move, reduce_annulus, ReductionResult};

#[test]
fn flat_traces_match_loop_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, n) in [(1, 2), (3, 2), (1, 3)] {
        let grid = build_annulus_grid(m, n).unwrap();
        let g = &grid.graph;
        let cilia = default_cilia(g).unwrap();
        let mats: Vec<_> = (0..3).map(|_| random_sl_matrix(3, &mut rng)).collect();
        let conns: Vec<_> = mats
            .iter()
            .map(|a| {
                (
                    monodromy_connection(&grid, a).unwrap(),
                    a.trace(),
                    a.inverse().unwrap().trace(),
                )
            })
            .collect();
        for web in enumerate_multiwebs(g, 3) {
            let r = reduce_annulus(g, &web).unwrap();
            let count = Rational::from_integer(count_colorings(g, &web).unwrap().into());
            let sign = Rational::from_integer(trace_identity(g, &web, &cilia).unwrap()) / count;
            for (c, x, y) in &conns {
                let want = &sign * r.evaluate(x, y);
                assert_eq!(trace(g, &web, c, &cilia).unwrap(), want, "{web:?}");
            }
        }
    }
}

#[test]
fn signed_loop_classes_match_the_determinant() {
    for (m, n) in [(1, 2), (3, 2), (1, 3)] {
        let grid = build_annulus_grid(m, n).unwrap();
        let g = &grid.graph;
        let cilia = default_cilia(g).unwrap();
        let mut signed: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        let mut total = ReductionResult::default();
        for web in enumerate_multiwebs(g, 3) {
            let r = reduce_annulus(g, &web).unwrap();
            let s = trace_identity(g, &web, &cilia).unwrap().signum();
            for (&jk, c) in &r.classes {
                *signed.entry(jk).or_default() += &s * BigInt::from(c.clone());
            }
            total.merge(&r);
        }
        let d = det_uv(m, n).unwrap();
        let flip = if signed.get(&(0, 0)).is_some_and(|c| c.is_negative()) {
            -1
        } else {
            1
        };
        for (&(j, k), c) in &signed {
            let want = coefficient(&d, &[j, k]);
            // det_uv is written in u = Tr A / 3 and v = Tr A⁻¹ / 3.
            let scaled = c * flip * BigInt::from(3).pow(j + k);
            assert_eq!(Rational::from_integer(scaled), want, "({j},{k})");
        }
        assert_eq!(
            total.evaluate(&rat(3), &rat(3)),
            Rational::from_integer(BigInt::from(g.count_matchings()).pow(3))
        );
    }
}

#[test]
fn moves_preserve_flat_traces() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (m, n) in [(3, 2), (1, 3)] {
        let grid = build_annulus_grid(m, n).unwrap();
        let g = &grid.graph;
        let cilia = default_cilia(g).unwrap();
        let c = monodromy_connection(&grid, &random_sl_matrix(3, &mut rng)).unwrap();
        let mut checked = 0;
        for web in enumerate_multiwebs(g, 3) {
            let before = trace(g, &web, &c, &cilia).unwrap();
            for mv in applicable_moves(g, &web).unwrap() {
                let after = apply_move(g, &web, &mv)
                    .unwrap()
                    .iter()
                    .map(|t| {
                        Rational::from_integer(BigInt::from(t.coefficient.clone()))
                            * trace(g, &t.multiweb, &c, &cilia).unwrap()
                    })
                    .fold(rat(0), |a, b| a + b);
                assert_eq!(before, after, "{web:?} {mv:?}");
                checked += 1;
            }
        }
        assert!(checked > 20);
    }
}
