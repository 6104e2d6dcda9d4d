//! JSON run reports. Every field except `wall_ms` is a function of the
//! inputs.

use multicut_core::cutter::RunTrace;
use multicut_core::Instance;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::format::serialize;

/// SHA-256 of the canonical serialization, as `sha256:<hex>`.
pub fn instance_digest(inst: &Instance) -> String {
    let hash = Sha256::digest(serialize(inst).as_bytes());
    format!("sha256:{}", hex::encode(hash))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub algo: String,
    #[serde(rename = "L")]
    pub l: Option<f64>,
    pub seed: u64,
    pub trials: Option<usize>,
    pub trace: bool,
}

/// The threshold instance the algorithm actually ran on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolvedEcho {
    pub nodes: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub reductions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochEcho {
    pub epoch: usize,
    pub mass_at_start: f64,
    pub pairs_at_start: usize,
    pub rounds: usize,
    pub cap: f64,
    pub mass_replaced: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundEcho {
    pub round: usize,
    pub epoch: usize,
    /// 1-indexed demand pair of the round.
    pub pair: (usize, usize),
    pub d: f64,
    /// 1-indexed nodes added to the cut.
    pub added: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEcho {
    pub seed: u64,
    pub trigger_factor: f64,
    pub epochs: Vec<EpochEcho>,
    pub rounds: Vec<RoundEcho>,
}

impl From<&RunTrace> for TraceEcho {
    fn from(t: &RunTrace) -> Self {
        Self {
            seed: t.seed,
            trigger_factor: t.trigger_factor,
            epochs: t
                .epochs
                .iter()
                .map(|e| EpochEcho {
                    epoch: e.epoch,
                    mass_at_start: e.mass_at_start,
                    pairs_at_start: e.pairs_at_start,
                    rounds: e.rounds,
                    cap: e.cap,
                    mass_replaced: e.mass_replaced,
                })
                .collect(),
            rounds: t
                .rounds
                .iter()
                .map(|r| RoundEcho {
                    round: r.round,
                    epoch: r.epoch,
                    pair: (r.pair.0 + 1, r.pair.1 + 1),
                    d: r.d,
                    added: r.added.iter().map(|v| v + 1).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance_digest: String,
    pub command: String,
    pub config: ConfigEcho,
    pub flavor: String,
    /// 1-indexed cut elements: node ids, or positions in the canonical arc
    /// order for the edge flavor.
    pub cut: Vec<usize>,
    pub cut_cost: f64,
    pub fractional_value: Option<f64>,
    pub epochs: usize,
    pub rounds: usize,
    pub trials: usize,
    pub wall_ms: f64,
    pub seed: u64,
    pub valid: bool,
    pub solved: SolvedEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceEcho>,
}

impl RunReport {
    /// The report with the wall time zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_ms: 0.0,
            ..self.clone()
        }
    }
}
