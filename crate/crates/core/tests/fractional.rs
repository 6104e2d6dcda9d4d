mod common;

use common::*;
use multicut_core::graph::vdist_weighted;
use multicut_core::oracle::exact_integral_multicut;
use multicut_core::{
    exact_capped_vertex_cut_small, exact_fractional_multicut_small, fractional_multicut,
    menger_min_vertex_cut, min_capped_vertex_cut, min_capped_vertex_cut_flow, Error, LpConfig,
};
use rand::Rng;

const CAPS: [f64; 5] = [0.15, 0.25, 0.5, 0.75, 1.0];

#[test]
fn capped_cut_matches_explicit_path_lp() {
    let mut rng = rng(101);
    let mut compared = 0;
    for _ in 0..250 {
        let n = rng.random_range(3..=12);
        let g = {
            let p = rng.random_range(0.15..0.4);
            random_digraph(&mut rng, n, p)
        };
        let frozen: Vec<bool> = (0..n).map(|_| rng.random_bool(0.1)).collect();
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s == t {
            continue;
        }
        let cap = CAPS[rng.random_range(0..CAPS.len())];
        let explicit = exact_capped_vertex_cut_small(&g, &frozen, s, t, cap);
        let generated = min_capped_vertex_cut(&g, &frozen, s, t, cap, &LpConfig::default());
        let flow = min_capped_vertex_cut_flow(&g, &frozen, s, t, cap);
        match (explicit, generated, flow) {
            (Ok(a), Ok(b), Ok(c)) => {
                assert!(
                    (a.value - b.value).abs() < 1e-6,
                    "{} vs {}",
                    a.value,
                    b.value
                );
                assert!(
                    (a.value - c.value).abs() < 1e-6,
                    "{} vs {}",
                    a.value,
                    c.value
                );
                compared += 1;
            }
            (Err(Error::Infeasible(_)), Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => {}
            other => panic!("solvers disagree: {other:?}"),
        }
    }
    assert!(compared >= 100, "{compared}");
}

#[test]
fn separation_certificate_and_cap() {
    let mut rng = rng(102);
    for _ in 0..200 {
        let n = rng.random_range(4..=16);
        let g = random_digraph(&mut rng, n, 0.3);
        let frozen: Vec<bool> = (0..n).map(|_| rng.random_bool(0.1)).collect();
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s == t {
            continue;
        }
        let cap = CAPS[rng.random_range(0..CAPS.len())];
        for res in [
            min_capped_vertex_cut(&g, &frozen, s, t, cap, &LpConfig::default()),
            min_capped_vertex_cut_flow(&g, &frozen, s, t, cap),
        ] {
            let Ok(r) = res else { continue };
            let eff: Vec<f64> = (0..n)
                .map(|v| if frozen[v] { 1.0 } else { r.weights.get(v) })
                .collect();
            assert!(r
                .weights
                .as_slice()
                .iter()
                .all(|&x| (0.0..=cap + 1e-9).contains(&x)));
            if let Some(d) = vdist_weighted(&g, &eff, s)[t].finite() {
                assert!(d >= 1.0 - 1e-6, "certificate {d}");
            }
        }
    }
}

#[test]
fn enlarging_frozen_never_raises_value() {
    let mut rng = rng(103);
    for _ in 0..150 {
        let n = rng.random_range(4..=14);
        let g = random_digraph(&mut rng, n, 0.3);
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s == t {
            continue;
        }
        let mut frozen: Vec<bool> = (0..n).map(|_| rng.random_bool(0.1)).collect();
        let cap = CAPS[rng.random_range(0..CAPS.len())];
        let Ok(before) = min_capped_vertex_cut(&g, &frozen, s, t, cap, &LpConfig::default()) else {
            continue;
        };
        frozen[rng.random_range(0..n)] = true;
        let after = min_capped_vertex_cut(&g, &frozen, s, t, cap, &LpConfig::default()).unwrap();
        assert!(after.value <= before.value + 1e-9);
    }
}

#[test]
fn menger_equals_uncapped_single_pair() {
    let mut rng = rng(104);
    let mut done = 0;
    while done < 120 {
        let n = rng.random_range(3..=15);
        let g = {
            let p = rng.random_range(0.2..0.6);
            random_dag(&mut rng, n, p)
        };
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s == t || g.has_arc(s, t) {
            continue;
        }
        let frozen = vec![false; n];
        let flow = menger_min_vertex_cut(&g, s, t).unwrap() as f64;
        let lp = min_capped_vertex_cut(&g, &frozen, s, t, 1.0, &LpConfig::default()).unwrap();
        assert!((lp.value - flow).abs() < 1e-6, "{} vs {flow}", lp.value);
        done += 1;
    }
}

#[test]
fn multicut_lp_sandwich_and_explicit_agreement() {
    let mut rng = rng(105);
    for _ in 0..150 {
        let n = rng.random_range(3..=9);
        let inst = random_vertex_instance(&mut rng, n, false);
        let generated = fractional_multicut(&inst, &LpConfig::default()).unwrap();
        let explicit = exact_fractional_multicut_small(&inst).unwrap();
        assert!((generated.value - explicit.value).abs() < 1e-6);
        let exact = exact_integral_multicut(&inst, 24).unwrap();
        assert!(generated.value <= exact.cost + 1e-6);
    }
}

#[test]
fn edge_flavor_lp_matches_explicit() {
    let mut rng = rng(106);
    for _ in 0..100 {
        let n = rng.random_range(3..=7);
        let inst = random_edge_instance(&mut rng, n);
        if inst.graph.arc_count() > 20 {
            continue;
        }
        let generated = fractional_multicut(&inst, &LpConfig::default()).unwrap();
        let explicit = exact_fractional_multicut_small(&inst).unwrap();
        assert!((generated.value - explicit.value).abs() < 1e-6);
    }
}
