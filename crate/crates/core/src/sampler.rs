//! The biased random construction: words whose `k`-th letter is 1 with
//! probability `p_k = 1/2 + c sqrt(ln n / k)` (and 1 outright up to the
//! threshold `k0 = floor(16 c^2 ln n)`), which are prefix normal with
//! probability approaching 1 for `c > sqrt 2`.
//!
//! Alongside the sampler itself: exact expected prefix-window gaps, the
//! per-word entropy of the construction in bits, and the entropy
//! counting step that converts (entropy, success probability) into a
//! lower bound on the number of prefix normal words.
//!
//! All randomness flows through the derivation contract in
//! [`crate::rng`], so every report is reproducible from
//! `(master_seed, trial count)` alone, independent of worker count.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::rng::trial_stream;
use crate::word::BinaryWord;
use crate::{Error, Result};

/// Two-sided 95% normal quantile, for the reported Wilson radius.
pub const Z_95: f64 = 1.959_963_984_540_054;
/// Two-sided 99.9% normal quantile, used by the bit-frequency audits.
pub const Z_999: f64 = 3.290_526_731_491_925_5;

/// Parameters of the construction: length `n`, bias constant `c`, and
/// the master seed all trials derive from.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    n: usize,
    c: f64,
    master_seed: u64,
    k0: usize,
    ln_n: f64,
    bias_prefix: OnceLock<Vec<f64>>,
}

impl ConstructionParams {
    /// Requires `n >= 1` and `c > 0`; derives `k0 = floor(16 c^2 ln n)`.
    pub fn new(n: usize, c: f64, master_seed: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::Invalid(format!(
                "c must be a positive real, got {c}"
            )));
        }
        let ln_n = (n as f64).ln();
        let k0 = (16.0 * c * c * ln_n).floor() as usize;
        Ok(ConstructionParams {
            n,
            c,
            master_seed,
            k0,
            ln_n,
            bias_prefix: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// The deterministic threshold `k0 = floor(16 c^2 ln n)`.
    pub fn k0(&self) -> usize {
        self.k0
    }

    /// Natural log of `n`, the log convention everywhere here.
    pub fn ln_n(&self) -> f64 {
        self.ln_n
    }

    /// Whether every position is forced to 1 (`k0 >= n`), which makes
    /// the construction deterministic.
    pub fn is_degenerate(&self) -> bool {
        self.k0 >= self.n
    }

    /// The bias `p_k`: 1 for `k <= k0`, else `1/2 + c sqrt(ln n / k)`
    /// (which then lies in `[1/2, 3/4]`). Positions are 1-based.
    pub fn bias(&self, k: usize) -> Result<f64> {
        if k < 1 || k > self.n {
            return Err(Error::PositionOutOfRange { k, n: self.n });
        }
        Ok(self.bias_unchecked(k))
    }

    fn bias_unchecked(&self, k: usize) -> f64 {
        if k <= self.k0 {
            1.0
        } else {
            0.5 + self.c * (self.ln_n / k as f64).sqrt()
        }
    }

    /// Cumulative bias sums `P[m] = p_1 + ... + p_m`, built once.
    fn bias_prefix(&self) -> &[f64] {
        self.bias_prefix.get_or_init(|| {
            let mut sums = Vec::with_capacity(self.n + 1);
            sums.push(0.0);
            for k in 1..=self.n {
                sums.push(sums[k - 1] + self.bias_unchecked(k));
            }
            sums
        })
    }

    /// Draws the word for one trial: bit `k` is 1 with probability
    /// `p_k`, independently, from the stream `(master_seed, trial_index)`.
    pub fn sample(&self, trial_index: u64) -> BinaryWord {
        let mut rng = trial_stream(self.master_seed, trial_index);
        BinaryWord::from_bits((1..=self.n).map(|k| rng.next_f64() < self.bias_unchecked(k)))
    }

    /// Samples `trials` words and counts how many pass the reduced
    /// prefix normality check. Trials are independent streams, so the
    /// count (and hence the whole report) does not depend on how they
    /// are partitioned across threads.
    pub fn pn_rate(&self, trials: u64) -> Result<ExperimentReport> {
        if trials < 1 {
            return Err(Error::Invalid("need at least one trial".into()));
        }
        let successes = if self.is_degenerate() {
            // Every p_k = 1: the all-ones word, which is prefix normal.
            trials
        } else {
            (0..trials)
                .into_par_iter()
                .filter(|&trial| self.sample(trial).is_prefix_normal_reduced())
                .count() as u64
        };
        Ok(ExperimentReport::new(self.clone(), trials, successes))
    }

    /// Exact expected gap
    /// `mu = E(|w[1,k]|_1 - |w[j+1,j+k]|_1) = sum p_i (prefix) + sum (1 - p_i) (window) - k`,
    /// for a window in the reduced range `k <= j <= n-k`.
    pub fn expected_gap(&self, k: usize, j: usize) -> Result<f64> {
        if k < 1 || j < k || j + k > self.n {
            return Err(Error::WindowOutOfRange { k, j, n: self.n });
        }
        let sums = self.bias_prefix();
        Ok(sums[k] - (sums[j + k] - sums[j]))
    }

    /// `mu* = mu + k`, the expectation of the associated sum of `2k`
    /// Bernoulli variables.
    pub fn expected_gap_star(&self, k: usize, j: usize) -> Result<f64> {
        Ok(self.expected_gap(k, j)? + k as f64)
    }

    /// Entropy of the construction in bits:
    /// `sum_{k > k0} H_b(p_k)`; zero in the degenerate regime.
    pub fn construction_entropy(&self) -> f64 {
        let mut total = 0.0;
        for k in self.k0 + 1..=self.n {
            total +=
                bounds::binary_entropy(self.bias_unchecked(k)).expect("biases are probabilities");
        }
        total
    }

    /// `n` minus the construction entropy: the bits the bias costs.
    pub fn entropy_deficit(&self) -> f64 {
        self.n as f64 - self.construction_entropy()
    }
}

/// Lower bound on `log2` of the number of prefix normal words implied
/// by a construction with `entropy_bits` of entropy succeeding with
/// probability `success_prob`:
/// `(entropy_bits - n (1 - success_prob) - 1) / success_prob`.
///
/// The chain: conditioned on landing in the target set the word takes
/// at most `|B|` values (entropy at most `log2 |B|`), a failed word
/// takes at most `2^n` values, and the success indicator carries at
/// most one bit.
pub fn entropy_count_lower_bound(entropy_bits: f64, success_prob: f64, n: usize) -> Result<f64> {
    if !(success_prob > 0.0 && success_prob <= 1.0) {
        return Err(Error::InvalidProbability(success_prob));
    }
    Ok((entropy_bits - n as f64 * (1.0 - success_prob) - 1.0) / success_prob)
}

/// Wilson score interval for `successes / trials` at normal quantile
/// `z`, as `(center, radius)`. Valid even when the rate sits at 0 or 1.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials >= 1, "need at least one trial");
    assert!(successes <= trials, "successes cannot exceed trials");
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let radius = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    (center, radius)
}

/// Header of the experiment table.
pub const EXPERIMENT_CSV_HEADER: &str =
    "n,c,k0,trials,successes,rate,wilson95,entropy_bits,deficit_bits";

/// Outcome of a sampling experiment: success counts with a Wilson 95%
/// radius, plus the entropy bookkeeping of the construction.
#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub params: ConstructionParams,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub wilson_radius: f64,
    pub entropy_bits: f64,
}

/// Flat serialization mirror of the CSV columns.
#[derive(Serialize)]
struct ExperimentRow {
    n: usize,
    c: f64,
    k0: usize,
    trials: u64,
    successes: u64,
    rate: f64,
    wilson95: f64,
    entropy_bits: f64,
    deficit_bits: f64,
}

impl ExperimentReport {
    fn new(params: ConstructionParams, trials: u64, successes: u64) -> Self {
        let (_, radius) = wilson_interval(successes, trials, Z_95);
        let entropy_bits = params.construction_entropy();
        ExperimentReport {
            params,
            trials,
            successes,
            rate: successes as f64 / trials as f64,
            wilson_radius: radius,
            entropy_bits,
        }
    }

    pub fn deficit_bits(&self) -> f64 {
        self.params.n() as f64 - self.entropy_bits
    }

    fn row(&self) -> ExperimentRow {
        ExperimentRow {
            n: self.params.n(),
            c: self.params.c(),
            k0: self.params.k0(),
            trials: self.trials,
            successes: self.successes,
            rate: self.rate,
            wilson95: self.wilson_radius,
            entropy_bits: self.entropy_bits,
            deficit_bits: self.deficit_bits(),
        }
    }

    pub fn csv_row(&self) -> String {
        let r = self.row();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            r.n,
            r.c,
            r.k0,
            r.trials,
            r.successes,
            r.rate,
            r.wilson95,
            r.entropy_bits,
            r.deficit_bits
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.row()).expect("plain numeric struct")
    }

    /// JSON text with the fields in CSV column order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.row()).expect("plain numeric struct")
    }
}
