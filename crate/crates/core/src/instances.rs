//! Instance generators. All generators are pure functions of their spec,
//! seed included.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Demands, DirectedGraph, Flavor, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Figure1,
    Layered,
    RandomDag,
    Path,
    Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    /// Layer count for `Layered`; 0 picks `ceil(n^(3/4))`.
    pub layers: usize,
    /// Layer width for `Layered` (0 spreads `n` evenly over the layers),
    /// column count for `Grid`.
    pub width: usize,
    /// Arc probability between consecutive layers, or between `i < j` in
    /// `RandomDag`.
    pub arc_prob: f64,
    pub seed: u64,
    /// Threshold `L` attached as the demand specification.
    pub threshold: f64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, threshold: f64, seed: u64) -> Self {
        Self {
            family,
            n,
            layers: 0,
            width: 0,
            arc_prob: 0.5,
            seed,
            threshold,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.arc_prob) {
            return Err(Error::InvalidConfig(format!(
                "arc probability {} outside [0, 1]",
                self.arc_prob
            )));
        }
        if !(self.threshold.is_finite() && self.threshold > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "threshold {} must be positive",
                self.threshold
            )));
        }
        if self.family != Family::Figure1 && self.n == 0 && self.layers * self.width == 0 {
            return Err(Error::InvalidConfig("generator needs n > 0".into()));
        }
        Ok(())
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    match spec.family {
        Family::Figure1 => Ok(gen_figure1()),
        Family::Layered => gen_layered(spec),
        Family::RandomDag => gen_random_dag(spec),
        Family::Path => gen_path(spec.n, spec.threshold),
        Family::Grid => gen_grid(spec),
    }
}

/// Node ids of the `figure1` gadget.
pub mod figure1 {
    pub const S1: usize = 0;
    pub const S2: usize = 1;
    pub const S3: usize = 2;
    pub const T1: usize = 3;
    pub const T2: usize = 4;
    pub const T3: usize = 5;
    pub const A: usize = 6;
    pub const B: usize = 7;
    pub const C: usize = 8;
}

/// Nine-node edge instance whose integral multicut costs 2 while the
/// fractional optimum is 3/2: a directed triangle `a -> b -> c -> a` with
/// each demand routed through two consecutive triangle arcs.
pub fn gen_figure1() -> Instance {
    use figure1::*;
    let arcs = [
        (A, B),
        (B, C),
        (C, A),
        (S1, A),
        (C, T1),
        (S2, C),
        (B, T2),
        (S3, B),
        (A, T3),
    ];
    let graph = DirectedGraph::new(9, arcs).expect("static graph");
    let m = graph.arc_count();
    Instance::new(
        graph,
        Flavor::Edge,
        vec![1.0; m],
        None,
        Demands::Pairs(vec![(S1, T1), (S2, T2), (S3, T3)]),
    )
    .expect("static instance")
}

/// Directed path `0 -> 1 -> ... -> n-1` with unit costs.
pub fn gen_path(n: usize, threshold: f64) -> Result<Instance> {
    let graph = DirectedGraph::new(n, (1..n).map(|i| (i - 1, i)))?;
    Instance::unit_threshold(graph, threshold)
}

/// Layer sizes used by [`gen_layered`].
pub fn layer_sizes(spec: &GeneratorSpec) -> Vec<usize> {
    if spec.layers > 0 && spec.width > 0 {
        return vec![spec.width; spec.layers];
    }
    let n = spec.n;
    let layers = if spec.layers > 0 {
        spec.layers.min(n)
    } else {
        (libm::ceil(libm::pow(n as f64, 0.75)) as usize).clamp(1, n.max(1))
    };
    let base = n / layers;
    let extra = n % layers;
    (0..layers).map(|i| base + usize::from(i < extra)).collect()
}

/// Layered graph with arcs only between consecutive layers. Every node has
/// at least one arc from the previous layer and one into the next, so nodes
/// `k` layers apart are at vertex distance exactly `k - 1` when reachable.
pub fn gen_layered(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let sizes = layer_sizes(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut start = Vec::with_capacity(sizes.len());
    let mut n = 0;
    for &s in &sizes {
        start.push(n);
        n += s;
    }
    let mut arcs = Vec::new();
    for i in 1..sizes.len() {
        let (prev, cur) = (start[i - 1], start[i]);
        let mut has_out = vec![false; sizes[i - 1]];
        let mut has_in = vec![false; sizes[i]];
        for a in 0..sizes[i - 1] {
            for b in 0..sizes[i] {
                if rng.random_bool(spec.arc_prob) {
                    arcs.push((prev + a, cur + b));
                    has_out[a] = true;
                    has_in[b] = true;
                }
            }
        }
        for (b, seen) in has_in.iter().enumerate() {
            if !seen {
                let a = rng.random_range(0..sizes[i - 1]);
                arcs.push((prev + a, cur + b));
                has_out[a] = true;
            }
        }
        for (a, seen) in has_out.iter().enumerate() {
            if !seen {
                let b = rng.random_range(0..sizes[i]);
                arcs.push((prev + a, cur + b));
            }
        }
    }
    let graph = DirectedGraph::new(n, arcs)?;
    Instance::unit_threshold(graph, spec.threshold)
}

/// Random DAG on `0..n`: each arc `i -> j`, `i < j`, present with
/// probability `arc_prob`.
pub fn gen_random_dag(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(spec.arc_prob) {
                arcs.push((i, j));
            }
        }
    }
    let graph = DirectedGraph::new(n, arcs)?;
    Instance::unit_threshold(graph, spec.threshold)
}

/// Grid with `width` columns and arcs to the right and downward neighbor.
pub fn gen_grid(spec: &GeneratorSpec) -> Result<Instance> {
    spec.validate()?;
    let cols = if spec.width > 0 {
        spec.width
    } else {
        (libm::ceil(libm::sqrt(spec.n as f64)) as usize).max(1)
    };
    let rows = spec.n.div_ceil(cols).max(1);
    let n = rows * cols;
    let mut arcs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                arcs.push((v, v + 1));
            }
            if r + 1 < rows {
                arcs.push((v, v + cols));
            }
        }
    }
    let graph = DirectedGraph::new(n, arcs)?;
    Instance::unit_threshold(graph, spec.threshold)
}
