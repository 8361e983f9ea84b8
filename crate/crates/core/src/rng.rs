//! Deterministic pseudo-randomness for experiments.
//!
//! Reproducibility contract — this derivation is part of the public
//! interface, so independent implementations can replay runs bit for bit:
//!
//! * the generator is SplitMix64: the state advances by the 64-bit
//!   constant `0x9E37_79B9_7F4A_7C15` and each output is the advanced
//!   state passed through [`mix64`];
//! * trial `t` of an experiment with master seed `s` draws from a
//!   SplitMix64 stream whose initial state is `mix64(s ^ mix64(t))`;
//! * a uniform draw in `[0, 1)` takes the top 53 bits of one output:
//!   `(x >> 11) as f64 * 2^-53`;
//! * bounded draws use rejection on the low bits, so they are exactly
//!   uniform.
//!
//! Trials are therefore independent streams indexed by `(s, t)` alone:
//! partitioning trials across any number of workers cannot change any
//! sampled word.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 output permutation (xor-shift 30, multiply, xor-shift
/// 27, multiply, xor-shift 31).
pub fn mix64(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x
}

/// SplitMix64 stream.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` (rejection sampling, exactly uniform).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        // Reject draws from the tail that does not divide evenly.
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }
}

/// The per-trial stream for `(master_seed, trial_index)`.
pub fn trial_stream(master_seed: u64, trial_index: u64) -> SplitMix64 {
    SplitMix64::new(mix64(master_seed ^ mix64(trial_index)))
}
