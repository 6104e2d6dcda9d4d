mod common;

use common::*;
use multicut_core::oracle::{
    enumerate_demand_paths, exact_integral_multicut, exact_integral_multicut_naive,
};
use multicut_core::{
    check_cut, empirical_gap, gupta_baseline, vertex_cut_main, AlgoConfig, Demands, Error,
};
use rand::Rng;

#[test]
fn branch_and_bound_equals_naive() {
    let mut rng = rng(301);
    let mut compared = 0;
    for i in 0..300 {
        let inst = if i % 2 == 0 {
            let n = rng.random_range(3..=14);
            let unit = rng.random_bool(0.3);
            random_vertex_instance(&mut rng, n, unit)
        } else {
            let n = rng.random_range(3..=6);
            random_edge_instance(&mut rng, n)
        };
        if inst.cuttable_elements().len() > 14 {
            continue;
        }
        let fast = exact_integral_multicut(&inst, 14);
        let slow = exact_integral_multicut_naive(&inst, 14);
        match (fast, slow) {
            (Ok(a), Ok(b)) => {
                assert_eq!(a, b);
                assert!(check_cut(&inst, &a).unwrap().is_empty());
                compared += 1;
            }
            (Err(Error::Infeasible(_)), Err(Error::Infeasible(_))) => {}
            other => panic!("oracles disagree: {other:?}"),
        }
    }
    assert!(compared >= 150, "{compared}");
}

#[test]
fn integral_optimum_hits_every_path() {
    let mut rng = rng(302);
    for _ in 0..100 {
        let n = rng.random_range(3..=10);
        let inst = random_vertex_instance(&mut rng, n, false);
        let cut = exact_integral_multicut(&inst, 24).unwrap();
        for path in enumerate_demand_paths(&inst, 100_000).unwrap() {
            assert!(path.iter().any(|&v| cut.contains(v)));
        }
    }
}

#[test]
fn sandwich_on_threshold_instances() {
    let mut rng = rng(303);
    let mut checked = 0;
    while checked < 80 {
        let n = rng.random_range(3..=12);
        let inst = random_threshold_instance(&mut rng, n);
        if inst.cuttable_elements().len() > 12 {
            continue;
        }
        let Demands::Threshold(l) = inst.demands else {
            unreachable!()
        };
        let report = empirical_gap(&inst).unwrap();
        assert!(report.fractional_opt <= report.integral_opt + 1e-6);
        let mut cfg = AlgoConfig::new(l, rng.random());
        cfg.trials = Some(1);
        for cut in [
            vertex_cut_main(&inst.graph, &cfg).unwrap().cut,
            gupta_baseline(&inst.graph, &cfg).unwrap().cut,
        ] {
            assert!(report.integral_opt <= cut.cost + 1e-9);
        }
        checked += 1;
    }
}
