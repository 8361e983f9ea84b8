//! The Catalan-block family: for `n` a multiple of `2t` (with
//! `n >= 4t`), every word
//!
//! ```text
//! w = (10)^t 1^{2t} c_1 c_2 ... c_{(n-4t)/(2t)}
//! ```
//!
//! with each `c_i` a Catalan sequence of length `2t` has the same
//! prefix normal form `1^{2t} (01)^{(n-2t)/2}`. Since the blocks can be
//! chosen independently, a single equivalence class contains at least
//! `C_t^{(n-4t)/(2t)}` words.
//!
//! A *Catalan sequence* here is a binary word of length `2t` with `t`
//! ones in which every prefix is at most half ones; there are exactly
//! `C_t` of them ([`bounds::catalan_number`]).

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::rng::trial_stream;
use crate::word::BinaryWord;
use crate::{Error, Result};

/// Exhaustive verification refuses to build more words than this.
pub const EXHAUSTIVE_CAP: u64 = 1_000_000;

/// Sampled verification materializes all Catalan sequences once; past
/// this `t` the pool itself is unreasonably large.
pub const SAMPLED_T_CAP: u64 = 12;

/// Whether `b` is a Catalan sequence for this `t`: length `2t`, every
/// prefix at most half ones, exactly `t` ones in total.
pub fn is_catalan_sequence(b: &BinaryWord, t: u64) -> bool {
    if b.len() as u64 != 2 * t || b.count_ones() as u64 != t {
        return false;
    }
    (1..=b.len()).all(|i| 2 * b.rank(i) as usize <= i)
}

/// Streams the Catalan sequences of length `2t` in lexicographic order;
/// the stream has exactly `C_t` elements.
pub fn iter_catalan_sequences(t: u64) -> CatalanSequences {
    CatalanSequences {
        t,
        bits: Vec::with_capacity(2 * t as usize),
        ones: 0,
        zeros: 0,
        started: false,
        done: false,
    }
}

/// Lexicographic depth-first generation. A partial sequence never dead-
/// ends: zeros can always be finished first, ones after, so the local
/// feasibility checks below are exact.
pub struct CatalanSequences {
    t: u64,
    bits: Vec<bool>,
    ones: u64,
    zeros: u64,
    started: bool,
    done: bool,
}

impl CatalanSequences {
    fn can_push(&self, bit: bool) -> bool {
        if bit {
            // Prefix condition 2 * ones <= length for the new prefix.
            self.ones < self.t && 2 * (self.ones + 1) <= self.bits.len() as u64 + 1
        } else {
            self.zeros < self.t
        }
    }

    fn push(&mut self, bit: bool) {
        self.bits.push(bit);
        if bit {
            self.ones += 1;
        } else {
            self.zeros += 1;
        }
    }

    fn pop(&mut self) -> Option<bool> {
        let bit = self.bits.pop()?;
        if bit {
            self.ones -= 1;
        } else {
            self.zeros -= 1;
        }
        Some(bit)
    }

    fn descend(&mut self) {
        while (self.bits.len() as u64) < 2 * self.t {
            let bit = !self.can_push(false);
            debug_assert!(self.can_push(bit));
            self.push(bit);
        }
    }
}

impl Iterator for CatalanSequences {
    type Item = BinaryWord;

    fn next(&mut self) -> Option<BinaryWord> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
            return Some(BinaryWord::from_bits(self.bits.iter().copied()));
        }
        loop {
            match self.pop() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(true) => continue,
                Some(false) => {
                    if self.can_push(true) {
                        self.push(true);
                        self.descend();
                        return Some(BinaryWord::from_bits(self.bits.iter().copied()));
                    }
                }
            }
        }
    }
}

/// A fully specified construction word: length, block scale, and the
/// chosen Catalan blocks.
#[derive(Clone, Debug)]
pub struct CatalanBlockSpec {
    n: usize,
    t: u64,
    blocks: Vec<BinaryWord>,
}

impl CatalanBlockSpec {
    /// Validates the shape (`2t | n`, `n >= 4t`, exactly `(n-4t)/(2t)`
    /// blocks) and every block.
    pub fn new(n: usize, t: u64, blocks: Vec<BinaryWord>) -> Result<Self> {
        validate_shape(n, t)?;
        let expected = block_count(n, t);
        if blocks.len() != expected {
            return Err(Error::Invalid(format!(
                "expected {expected} blocks for n={n}, t={t}, got {}",
                blocks.len()
            )));
        }
        for (i, block) in blocks.iter().enumerate() {
            if !is_catalan_sequence(block, t) {
                return Err(Error::Invalid(format!(
                    "block {i} ({block}) is not a Catalan sequence for t={t}"
                )));
            }
        }
        Ok(CatalanBlockSpec { n, t, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn blocks(&self) -> &[BinaryWord] {
        &self.blocks
    }
}

fn validate_shape(n: usize, t: u64) -> Result<()> {
    if t < 1 {
        return Err(Error::Invalid("t must be at least 1".into()));
    }
    let period = 2 * t as usize;
    if !n.is_multiple_of(period) || n < 2 * period {
        return Err(Error::Invalid(format!(
            "n={n} must be a multiple of 2t={period} and at least 4t={}",
            2 * period
        )));
    }
    Ok(())
}

fn block_count(n: usize, t: u64) -> usize {
    (n - 4 * t as usize) / (2 * t as usize)
}

/// Concatenates `(10)^t 1^{2t} c_1 ... c_m`.
pub fn build_word(spec: &CatalanBlockSpec) -> BinaryWord {
    let t = spec.t as usize;
    let head = (0..t).flat_map(|_| [true, false]);
    let run = std::iter::repeat_n(true, 2 * t);
    let tail = spec
        .blocks
        .iter()
        .flat_map(|b| b.iter_bits().collect::<Vec<_>>());
    BinaryWord::from_bits(head.chain(run).chain(tail))
}

/// The common prefix normal form of the family: `1^{2t} (01)^{(n-2t)/2}`.
pub fn target_pnf(n: usize, t: u64) -> Result<BinaryWord> {
    if t < 1 {
        return Err(Error::Invalid("t must be at least 1".into()));
    }
    let two_t = 2 * t as usize;
    if !n.is_multiple_of(2) || n < two_t {
        return Err(Error::Invalid(format!(
            "target form needs n even and n >= 2t; got n={n}, t={t}"
        )));
    }
    let run = std::iter::repeat_n(true, two_t);
    let pairs = (0..(n - two_t) / 2).flat_map(|_| [false, true]);
    Ok(BinaryWord::from_bits(run.chain(pairs)))
}

/// How block choices are checked: all of them, or a seeded uniform
/// sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerificationMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Result of checking that built words share the target prefix normal
/// form. Serializes to the report contract
/// `{n, t, mode, checked, failures, class_size_log2_bound}`.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub t: u64,
    pub mode: String,
    pub checked: u64,
    pub failures: u64,
    pub class_size_log2_bound: f64,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain report struct")
    }

    /// JSON text in declared field order:
    /// `{n, t, mode, checked, failures, class_size_log2_bound}`.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain report struct")
    }
}

/// Checks `prefix_normal_form(build_word(spec)) == target_pnf(n, t)`
/// over block choices: every choice in exhaustive mode (capped at
/// [`EXHAUSTIVE_CAP`] words), or `samples` uniform draws in sampled
/// mode. A correct implementation reports zero failures.
pub fn verify_construction(n: usize, t: u64, mode: VerificationMode) -> Result<VerificationReport> {
    validate_shape(n, t)?;
    let sequences: Vec<BinaryWord> = iter_catalan_sequences_checked(t, &mode)?;
    let pool = sequences.len() as u64;
    let m = block_count(n, t);
    let target = target_pnf(n, t)?;
    let bound = class_size_log2_lower_bound(n, t)?;

    fn count_failures<F>(
        sequences: &[BinaryWord],
        n: usize,
        t: u64,
        target: &BinaryWord,
        indices: F,
        total: u64,
    ) -> u64
    where
        F: Fn(u64) -> Vec<usize> + Sync,
    {
        (0..total)
            .into_par_iter()
            .filter(|&i| {
                let blocks: Vec<BinaryWord> = indices(i)
                    .into_iter()
                    .map(|b| sequences[b].clone())
                    .collect();
                let spec = CatalanBlockSpec { n, t, blocks };
                build_word(&spec).prefix_normal_form() != *target
            })
            .count() as u64
    }

    let (mode_name, checked, failures) = match mode {
        VerificationMode::Exhaustive => {
            let total = BigUint::from(pool).pow(m as u32);
            let total = match total.to_u64() {
                Some(v) if v <= EXHAUSTIVE_CAP => v,
                _ => {
                    return Err(Error::InfeasibleExhaustive {
                        total: total.to_string(),
                        cap: EXHAUSTIVE_CAP,
                    })
                }
            };
            // Tuple i decodes as base-`pool` digits, one per block.
            let decode = |i: u64| -> Vec<usize> {
                let mut digits = Vec::with_capacity(m);
                let mut rest = i;
                for _ in 0..m {
                    digits.push((rest % pool) as usize);
                    rest /= pool;
                }
                digits
            };
            (
                "exhaustive",
                total,
                count_failures(&sequences, n, t, &target, decode, total),
            )
        }
        VerificationMode::Sampled { samples, seed } => {
            if samples < 1 {
                return Err(Error::Invalid("need at least one sample".into()));
            }
            let draw = |i: u64| -> Vec<usize> {
                let mut rng = trial_stream(seed, i);
                (0..m).map(|_| rng.next_below(pool) as usize).collect()
            };
            (
                "sampled",
                samples,
                count_failures(&sequences, n, t, &target, draw, samples),
            )
        }
    };

    Ok(VerificationReport {
        n,
        t,
        mode: mode_name.to_string(),
        checked,
        failures,
        class_size_log2_bound: bound.log2,
    })
}

fn iter_catalan_sequences_checked(t: u64, mode: &VerificationMode) -> Result<Vec<BinaryWord>> {
    if matches!(mode, VerificationMode::Sampled { .. }) && t > SAMPLED_T_CAP {
        return Err(Error::Invalid(format!(
            "sampled verification materializes the Catalan pool and is capped at t = {SAMPLED_T_CAP}, got t = {t}"
        )));
    }
    Ok(iter_catalan_sequences(t).collect())
}

/// The class-size bound `C_t^{(n-4t)/(2t)}`: its exact `log2` and, for
/// small arguments, the exact big integer itself.
#[derive(Clone, Debug)]
pub struct ClassSizeBound {
    /// `((n - 4t) / (2t)) * log2(C_t)`.
    pub log2: f64,
    /// The exact count, when its size is reasonable (at most ~2^21 bits).
    pub exact: Option<BigUint>,
}

/// Lower bound on the size of the class of [`target_pnf`], from the
/// number of distinct block choices.
pub fn class_size_log2_lower_bound(n: usize, t: u64) -> Result<ClassSizeBound> {
    validate_shape(n, t)?;
    let m = block_count(n, t);
    let catalan = bounds::catalan_number(t);
    let log2 = m as f64 * log2_biguint(&catalan);
    // C_t has fewer than 2t bits, so the power has fewer than 2tm <= n.
    let exact = if n <= 1 << 21 {
        Some(catalan.pow(m as u32))
    } else {
        None
    };
    Ok(ClassSizeBound { log2, exact })
}

/// `log2` of a positive big integer, composed in log space from its top
/// 64 bits so that arbitrarily large inputs stay exact to f64 precision.
fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in u64") as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("exactly 64 bits");
    (top as f64).log2() + shift as f64
}

/// The conventional block scale for a given `n`: the largest `t` with
/// `2t | n`, `n >= 4t`, and `t <= sqrt(n ln n)` (natural log). Returns
/// `None` when no compatible `t` exists (odd `n` or `n < 4`).
pub fn compatible_t(n: usize) -> Option<u64> {
    if n < 4 || !n.is_multiple_of(2) {
        return None;
    }
    let limit = ((n as f64) * (n as f64).ln()).sqrt();
    let mut best = None;
    for t in 1..=(n / 4) as u64 {
        if n.is_multiple_of(2 * t as usize) && (t as f64) <= limit {
            best = Some(t);
        }
    }
    best
}
