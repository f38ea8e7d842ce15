use webtrace_core::algebra::Rational;
use webtrace_core::connection::{identity_connection, monodromy, random_sl};
use webtrace_core::graph::{
    cycle, grid, grid_subgraph, path_bundle, theta, ClosedWalk, EmbeddedGraph,
};
use webtrace_core::kasteleyn::{
    default_cilia, exterior_power_trace, trace_via_det, trace_via_det_with, verify_main,
};
use webtrace_core::multiweb::{count_colorings, enumerate_multiwebs, trace, Multiweb};

fn suite() -> Vec<EmbeddedGraph> {
    let mut out = vec![theta(3), cycle(2), cycle(4), grid(2, 3), grid(2, 4)];
    out.push(path_bundle(&[2, 1, 3]));
    out.push(path_bundle(&[3, 2, 2, 1, 2]));
    for seed in 0..6 {
        out.push(grid_subgraph(2, 5, 2, seed));
        out.push(grid_subgraph(2, 4, 1, seed));
    }
    out.retain(|g| g.num_vertices() <= 10 && g.is_connected());
    out
}

#[test]
fn determinant_equals_trace_sum() {
    for g in suite() {
        for n in 1..=3 {
            for seed in 0..5 {
                let r = verify_main(&g, &random_sl(&g, n, seed)).unwrap();
                assert!(r.matches, "n={n} seed={seed}: {r:?}");
            }
        }
    }
}

#[test]
fn no_matching_gives_zero_on_both_sides() {
    for seed in 0..40 {
        let g = grid_subgraph(3, 4, 4, seed);
        if g.count_matchings() != 0 {
            continue;
        }
        let r = verify_main(&g, &identity_connection(&g, 3)).unwrap();
        assert_eq!(r.det, Rational::from_integer(0.into()));
        assert_eq!(r.trace_sum, Rational::from_integer(0.into()));
        return;
    }
    panic!("no unmatched graph in the sample");
}

#[test]
fn coefficient_extraction_matches_trace() {
    for g in [theta(3), cycle(2), grid(2, 3), path_bundle(&[2, 1, 2])] {
        for n in 1..=3 {
            let c = random_sl(&g, n, 3);
            let cilia = default_cilia(&g).unwrap();
            for m in enumerate_multiwebs(&g, n) {
                let t = trace(&g, &m, &c, &cilia).unwrap();
                assert_eq!(trace_via_det(&g, &m, &c).unwrap(), t);
            }
        }
    }
}

#[test]
fn zeroed_and_unit_off_support_edges_agree() {
    let g = grid(2, 3);
    let c = random_sl(&g, 2, 8);
    for m in enumerate_multiwebs(&g, 2) {
        assert_eq!(
            trace_via_det_with(&g, &m, &c, true).unwrap(),
            trace_via_det_with(&g, &m, &c, false).unwrap()
        );
    }
}

#[test]
fn identity_coefficients_count_colorings() {
    let g = grid(2, 3);
    let c = identity_connection(&g, 3);
    for m in enumerate_multiwebs(&g, 3) {
        let want = Rational::from_integer(count_colorings(&g, &m).unwrap().into());
        assert_eq!(trace_via_det(&g, &m, &c).unwrap(), want);
    }
}

#[test]
fn closed_chain_is_exterior_power_trace() {
    for n in 2..=4 {
        for k in 1..n {
            let g = cycle(3);
            let mult: Vec<u8> = (0..6)
                .map(|i| if i % 2 == 0 { k } else { n - k } as u8)
                .collect();
            let m = Multiweb::new(&g, n, mult).unwrap();
            let start = g.edge(0).black;
            let mut edges = vec![0];
            let mut v = g.edge(0).white;
            while v != start {
                let last = *edges.last().unwrap();
                let e = *g.rotation(v).iter().find(|&&f| f != last).unwrap();
                edges.push(e);
                v = g.other_end(e, v);
            }
            let walk = ClosedWalk { start, edges };
            let cilia = default_cilia(&g).unwrap();
            for seed in 0..4 {
                let c = random_sl(&g, n, seed);
                let want = exterior_power_trace(&monodromy(&g, &c, &walk).unwrap(), k);
                let t = trace(&g, &m, &c, &cilia).unwrap();
                assert!(t == want || t == -want.clone(), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn tripled_chain_has_trace_one() {
    let g = cycle(3);
    let m = Multiweb::new(&g, 3, vec![3, 0, 3, 0, 3, 0]).unwrap();
    let c = random_sl(&g, 3, 2);
    assert_eq!(
        trace_via_det(&g, &m, &c).unwrap(),
        Rational::from_integer(1.into())
    );
}
