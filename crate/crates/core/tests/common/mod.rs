//! Random instances and brute-force checkers shared by the integration tests.

#![allow(dead_code)]

use multicut_core::graph::{vdist_unweighted, Demands, DirectedGraph, Flavor, Instance};
use multicut_core::instances::{gen_layered, gen_random_dag, Family, GeneratorSpec};
use multicut_core::{check_cut, CutSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random digraph, cycles allowed.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DirectedGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    DirectedGraph::new(n, arcs).unwrap()
}

pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> DirectedGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    DirectedGraph::new(n, arcs).unwrap()
}

/// Longest unweighted vertex distance over reachable pairs.
pub fn max_vdist(g: &DirectedGraph) -> usize {
    (0..g.node_count())
        .flat_map(|s| vdist_unweighted(g, s).into_iter().flatten())
        .max()
        .unwrap_or(0)
}

/// Layered or random-DAG threshold instance with `n` nodes and a threshold
/// `L` in `[1, max(1, longest distance)]`.
pub fn random_threshold_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let seed = rng.random();
    let mut spec = if rng.random_bool(0.5) {
        GeneratorSpec::new(Family::Layered, n, 1.0, seed)
    } else {
        GeneratorSpec::new(Family::RandomDag, n, 1.0, seed)
    };
    spec.arc_prob = rng.random_range(0.15..0.6);
    let mut inst = match spec.family {
        Family::Layered => gen_layered(&spec).unwrap(),
        _ => gen_random_dag(&spec).unwrap(),
    };
    let top = max_vdist(&inst.graph).clamp(1, n);
    let l = rng.random_range(1..=top) as f64;
    inst.demands = Demands::Threshold(l);
    inst
}

/// Random pairs `(s, t)`, `s != t`, not joined by an arc.
pub fn random_pairs(rng: &mut ChaCha8Rng, g: &DirectedGraph, count: usize) -> Vec<(usize, usize)> {
    let n = g.node_count();
    let mut out = Vec::new();
    for _ in 0..count * 4 {
        if out.len() == count {
            break;
        }
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s != t && !g.has_arc(s, t) && !out.contains(&(s, t)) {
            out.push((s, t));
        }
    }
    out
}

/// Vertex-flavor instance with explicit demands, costs and weights.
pub fn random_vertex_instance(rng: &mut ChaCha8Rng, n: usize, unit_costs: bool) -> Instance {
    let g = {
        let p = rng.random_range(0.15..0.45);
        random_digraph(rng, n, p)
    };
    let costs = (0..n)
        .map(|_| {
            if unit_costs {
                1.0
            } else {
                rng.random_range(0.2..5.0)
            }
        })
        .collect();
    let weights = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
    let k = rng.random_range(1..=3);
    let pairs = random_pairs(rng, &g, k);
    Instance::new(
        g,
        Flavor::Vertex,
        costs,
        Some(weights),
        Demands::Pairs(pairs),
    )
    .unwrap()
}

/// Edge-flavor instance whose arc weights span every label class.
pub fn random_edge_instance(rng: &mut ChaCha8Rng, n: usize) -> Instance {
    let g = {
        let p = rng.random_range(0.15..0.45);
        random_digraph(rng, n, p)
    };
    let m = g.arc_count();
    let costs = (0..m).map(|_| rng.random_range(0.5..3.0)).collect();
    let weights = (0..m)
        .map(|_| match rng.random_range(0..4) {
            0 => 0.0,
            1 => rng.random_range(0.0..1.0 / (2.0 * n as f64)),
            2 => rng.random_range(0.0..1.0),
            _ => rng.random_range(1.0..2.0),
        })
        .collect();
    let mut pairs = Vec::new();
    for _ in 0..12 {
        let (s, t) = (rng.random_range(0..n), rng.random_range(0..n));
        if s != t && !pairs.contains(&(s, t)) && pairs.len() < 3 {
            pairs.push((s, t));
        }
    }
    Instance::new(g, Flavor::Edge, costs, Some(weights), Demands::Pairs(pairs)).unwrap()
}

/// A valid cut obtained by dropping random elements from the cut of all
/// cuttable elements while it stays valid. `None` if even that is invalid.
pub fn random_minimal_cut(rng: &mut ChaCha8Rng, inst: &Instance) -> Option<CutSet> {
    let mut elems = inst.cuttable_elements();
    let all = CutSet::new(inst, elems.clone()).unwrap();
    if !check_cut(inst, &all).unwrap().is_empty() {
        return None;
    }
    let mut order = elems.clone();
    order.shuffle(rng);
    for e in order {
        let trial: Vec<usize> = elems.iter().copied().filter(|&x| x != e).collect();
        if check_cut(inst, &CutSet::new(inst, trial.clone()).unwrap())
            .unwrap()
            .is_empty()
        {
            elems = trial;
        }
    }
    Some(CutSet::new(inst, elems).unwrap())
}

/// Every simple `s -> t` path as its interior vertex list, by recursion.
pub fn simple_paths(g: &DirectedGraph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(
        g: &DirectedGraph,
        u: usize,
        t: usize,
        on: &mut [bool],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for &(v, _) in g.out_arcs(u) {
            if v == t {
                out.push(cur.clone());
            } else if !on[v] {
                on[v] = true;
                cur.push(v);
                go(g, v, t, on, cur, out);
                cur.pop();
                on[v] = false;
            }
        }
    }
    let mut on = vec![false; g.node_count()];
    on[s] = true;
    let mut out = Vec::new();
    go(g, s, t, &mut on, &mut Vec::new(), &mut out);
    out
}
