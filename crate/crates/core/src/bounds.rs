//! Closed-form analytic quantities: binary entropy, Hoeffding tails,
//! exact and Stirling-bounded binomial tails, density thresholds, and
//! Catalan numbers.
//!
//! Log convention: every `log n` in a probabilistic formula is the
//! natural logarithm (so `exp{-c^2 log n} = n^{-c^2}` holds exactly);
//! entropies are in bits (base 2). This is the single place the
//! convention is fixed — [`sampler`](crate::sampler) inherits it.
//!
//! The exact binomial tails are computed with integer arithmetic and a
//! single high-precision division, so the `>=`/`<=` audits against the
//! Stirling and Hoeffding bounds are not polluted by floating error.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::word::BinaryWord;
use crate::{Error, Result};

/// Binary entropy in bits: `-p log2 p - (1-p) log2 (1-p)`, with
/// `0 log 0 := 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(binary_entropy_unchecked(p))
}

pub(crate) fn binary_entropy_unchecked(p: f64) -> f64 {
    if p == 0.0 || p == 1.0 {
        return 0.0;
    }
    let q = 1.0 - p;
    -p * p.log2() - q * q.log2()
}

/// Truncated series for the binary entropy around `p = 1/2`:
/// `1 - (1/(2 ln 2)) * sum_{m=1..terms} (1-2p)^{2m} / (m(2m-1))`.
///
/// Converges for `|1 - 2p| < 1`; an independent route to
/// [`binary_entropy`] used by the audits.
pub fn binary_entropy_series(p: f64, terms: usize) -> f64 {
    let x2 = (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
    let mut power = 1.0;
    let mut sum = 0.0;
    for m in 1..=terms {
        power *= x2;
        sum += power / (m as f64 * (2 * m - 1) as f64);
    }
    1.0 - sum / (2.0 * std::f64::consts::LN_2)
}

/// Hoeffding tail bound for a sum `X` of `n_vars` independent variables
/// in `[0, 1]`: `P(X - E X >= x) <= exp(-2 x^2 / n_vars)`, clamped to 1.
pub fn hoeffding_tail(n_vars: u64, x: f64) -> f64 {
    assert!(n_vars >= 1, "need at least one variable");
    assert!(x >= 0.0, "deviation must be nonnegative");
    (-2.0 * x * x / n_vars as f64).exp().min(1.0)
}

/// `num / den` as an `f64`, via one exact big-integer division scaled to
/// ~64 significant bits. Relative error is at most a few units in the
/// last place even when the ratio is far below 1.
fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero());
    if num.is_zero() {
        return 0.0;
    }
    let shift = den.bits() as i64 - num.bits() as i64 + 64;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    q.to_f64().expect("quotient has ~64 bits") * (-shift as f64).exp2()
}

/// Exact binomial tail `P(Bin(k, 1/2) > d)` (strict) or
/// `P(Bin(k, 1/2) >= d)` (non-strict). `d < 0` gives 1; thresholds past
/// `k` give 0.
pub fn binomial_tail_exact(k: u64, d: i64, strict: bool) -> f64 {
    let lo = if strict { d + 1 } else { d };
    if lo <= 0 {
        return 1.0;
    }
    let lo = lo as u64;
    if lo > k {
        return 0.0;
    }
    let mut sum = BigUint::zero();
    let mut coeff = BigUint::one(); // C(k, k)
    let mut i = k;
    loop {
        sum += &coeff;
        if i == lo {
            break;
        }
        // C(k, i-1) = C(k, i) * i / (k - i + 1), exact at every step.
        coeff = coeff * i / (k - i + 1);
        i -= 1;
    }
    ratio_to_f64(&sum, &(BigUint::one() << k))
}

/// All upper tails of `Bin(k, 1/2)` in one pass:
/// `tails[d] = P(Bin(k, 1/2) >= d)` for `d = 0..=k`.
pub fn binomial_upper_tails(k: u64) -> Vec<f64> {
    let den = BigUint::one() << k;
    let mut tails = vec![0.0; k as usize + 1];
    let mut cumulative = BigUint::zero();
    let mut coeff = BigUint::one(); // C(k, k)
    let mut d = k;
    loop {
        cumulative += &coeff;
        tails[d as usize] = ratio_to_f64(&cumulative, &den);
        if d == 0 {
            break;
        }
        coeff = coeff * d / (k - d + 1);
        d -= 1;
    }
    tails
}

/// `P(Bin(k, 1/2) - k/2 >= x)` for `x` given in half-steps
/// (`x = half_steps / 2`), exactly.
pub fn binomial_centered_tail(k: u64, half_steps: u64) -> f64 {
    // X - k/2 >= x  <=>  2X >= k + 2x  <=>  X >= ceil((k + 2x) / 2).
    let doubled = k + half_steps;
    let threshold = doubled.div_ceil(2);
    binomial_tail_exact(k, threshold as i64, false)
}

/// The two Stirling-type lower bounds on `P(Bin(k, 1/2) >= lambda k)`.
#[derive(Clone, Copy, Debug)]
pub struct StirlingBounds {
    /// `2^{k H_b(lambda) - k} / sqrt(8 k lambda (1 - lambda))`.
    pub tight: f64,
    /// `2^{k H_b(lambda) - k} / sqrt(2 k)`.
    pub loose: f64,
}

/// Lower bounds on the binomial upper tail at an integral threshold
/// `lambda * k`, valid for `1/2 < lambda < 1`.
pub fn stirling_tail_lower(k: u64, lambda: f64) -> Result<StirlingBounds> {
    if !(lambda > 0.5 && lambda < 1.0) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let product = lambda * k as f64;
    if (product - product.round()).abs() > 1e-9 {
        return Err(Error::LambdaKNotIntegral { lambda, k, product });
    }
    let kf = k as f64;
    let numerator = (kf * (binary_entropy_unchecked(lambda) - 1.0)).exp2();
    Ok(StirlingBounds {
        tight: numerator / (8.0 * kf * lambda * (1.0 - lambda)).sqrt(),
        loose: numerator / (2.0 * kf).sqrt(),
    })
}

/// The 1-richness threshold `k/2 + c sqrt(k ln n)` that mid-range
/// prefixes of prefix normal words must exceed.
pub fn density_threshold(n: usize, c: f64, k: u64) -> f64 {
    density_threshold_from_log((n as f64).ln(), c, k)
}

fn density_threshold_from_log(ln_n: f64, c: f64, k: u64) -> f64 {
    k as f64 / 2.0 + c * (k as f64 * ln_n).sqrt()
}

/// Audits the density condition: every `k` in
/// `[ceil(ln n), floor(sqrt n)]` whose prefix ones count falls below
/// [`density_threshold`]. An empty result means the word satisfies the
/// condition at this `c`.
pub fn density_violations(w: &BinaryWord, c: f64) -> Vec<usize> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let lo = (n as f64).ln().ceil() as usize;
    let hi = ((n as f64).sqrt().floor() as usize).min(n);
    (lo..=hi)
        .filter(|&k| (w.rank(k) as f64) < density_threshold(n, c, k as u64))
        .collect()
}

/// `beta_t = exp(-2^{3-t} d_0 / 3)`; in `(0, 1)` whenever `d_0 > 0`, and
/// each step satisfies `beta_t = beta_{t+1}^2`.
pub fn beta(t: i64, d0: f64) -> f64 {
    assert!(d0 > 0.0, "d0 must be positive");
    let scale = ((3 - t) as f64).exp2();
    (-scale * d0 / 3.0).exp()
}

/// Parameters for the block-scale tail audit: `d0 = c sqrt(ln n)`, with
/// `t0` the smallest `t` such that `4^t >= ln n` and `t1` the largest
/// with `4^t <= sqrt n`.
#[derive(Clone, Copy, Debug)]
pub struct TailAuditParams {
    n: usize,
    c: f64,
    d0: f64,
    t0: i64,
    t1: i64,
}

impl TailAuditParams {
    pub fn new(n: usize, c: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(
                "n must be at least 2 so that ln n > 0".into(),
            ));
        }
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::Invalid(format!("c must be positive, got {c}")));
        }
        let ln_n = (n as f64).ln();
        let sqrt_n = (n as f64).sqrt();
        let mut t0 = 0i64;
        while (t0 as f64 * 2.0).exp2() < ln_n {
            t0 += 1;
        }
        let mut t1 = 0i64;
        while ((t1 + 1) as f64 * 2.0).exp2() <= sqrt_n {
            t1 += 1;
        }
        Ok(TailAuditParams {
            n,
            c,
            d0: c * ln_n.sqrt(),
            t0,
            t1,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d0(&self) -> f64 {
        self.d0
    }

    pub fn t0(&self) -> i64 {
        self.t0
    }

    pub fn t1(&self) -> i64 {
        self.t1
    }

    pub fn beta_t(&self, t: i64) -> f64 {
        beta(t, self.d0)
    }

    /// The block-scale tail estimate
    /// `n^{-2c^2 (t - t0 + 1) / 3} * beta_t^j / (1 - beta_t)`, evaluated
    /// with natural-log powers of `n`. Reporting only — the estimate is
    /// asymptotic, so nothing asserts Monte Carlo frequencies against it.
    pub fn claim_rhs(&self, t: i64, j: u64) -> Result<f64> {
        if t < self.t0 || t > self.t1 {
            return Err(Error::TOutOfRange {
                t,
                t0: self.t0,
                t1: self.t1,
            });
        }
        let ln_n = (self.n as f64).ln();
        let power = (-(2.0 * self.c * self.c * (t - self.t0 + 1) as f64 / 3.0) * ln_n).exp();
        let beta_t = self.beta_t(t);
        assert!(
            j <= i32::MAX as u64,
            "j={j} is far outside any meaningful range for the tail estimate"
        );
        Ok(power * beta_t.powi(j as i32) / (1.0 - beta_t))
    }

    /// Monte Carlo estimate of the event probability the closed-form
    /// [`TailAuditParams::claim_rhs`] estimates: for a uniformly random
    /// word, the chance that every prefix of length `4^s`
    /// (`t0 <= s < t`) holds at least `2^{2s-1} + 2^s d0` ones and the
    /// prefix of length `4^t` holds at least `j` more than that.
    ///
    /// Exploratory only: the closed form is asymptotic, so callers
    /// compare the two numbers by eye, never by assertion.
    pub fn event_tail_monte_carlo(&self, t: i64, j: u64, trials: u64, seed: u64) -> Result<f64> {
        if t < self.t0 || t > self.t1 {
            return Err(Error::TOutOfRange {
                t,
                t0: self.t0,
                t1: self.t1,
            });
        }
        if trials < 1 {
            return Err(Error::Invalid("need at least one trial".into()));
        }
        let prefix_len = (t as f64 * 2.0).exp2() as usize; // 4^t <= sqrt n
        let hits = (0..trials)
            .filter(|&trial| {
                let mut rng = crate::rng::trial_stream(seed, trial);
                let mut ones = 0u64;
                let mut position = 0usize;
                for s in self.t0..=t {
                    let block_end = (s as f64 * 2.0).exp2() as usize;
                    while position < block_end.min(prefix_len) {
                        ones += rng.next_u64() & 1;
                        position += 1;
                    }
                    let mut threshold = ((2 * s - 1) as f64).exp2() + (s as f64).exp2() * self.d0;
                    if s == t {
                        threshold += j as f64;
                    }
                    if (ones as f64) < threshold {
                        return false;
                    }
                }
                true
            })
            .count();
        Ok(hits as f64 / trials as f64)
    }
}

/// Exact Catalan number `C_t = binom(2t, t) / (t + 1)`.
pub fn catalan_number(t: u64) -> BigUint {
    let mut binom = BigUint::one();
    for i in 0..t {
        // C(2t, i+1) = C(2t, i) * (2t - i) / (i + 1), exact stepwise.
        binom = binom * (2 * t - i) / (i + 1);
    }
    binom / (t + 1)
}

/// Header of the tail audit table.
pub const TAIL_AUDIT_CSV_HEADER: &str =
    "k,lambda,exact_tail,stirling_tight,stirling_loose,hoeffding";

/// One row of the tail audit: the exact tail against its three bounds.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TailAuditRow {
    pub k: u64,
    pub lambda: f64,
    pub exact_tail: f64,
    pub stirling_tight: f64,
    pub stirling_loose: f64,
    pub hoeffding: f64,
}

impl TailAuditRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.k,
            self.lambda,
            self.exact_tail,
            self.stirling_tight,
            self.stirling_loose,
            self.hoeffding
        )
    }

    /// True when a bound that should sit below the exact tail does not.
    pub fn violates(&self) -> bool {
        self.exact_tail < self.stirling_tight || self.stirling_tight < self.stirling_loose
    }
}

/// Evaluates one audit row at an integral threshold `lambda * k`.
pub fn tail_audit_row(k: u64, lambda: f64) -> Result<TailAuditRow> {
    let bounds = stirling_tail_lower(k, lambda)?;
    let d = (lambda * k as f64).round() as i64;
    let exact_tail = binomial_tail_exact(k, d, false);
    let x = d as f64 - k as f64 / 2.0;
    Ok(TailAuditRow {
        k,
        lambda,
        exact_tail,
        stirling_tight: bounds.tight,
        stirling_loose: bounds.loose,
        hoeffding: hoeffding_tail(k, x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_trivial_points() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.5), Err(Error::InvalidProbability(1.5)));
        assert_eq!(binary_entropy(-0.1), Err(Error::InvalidProbability(-0.1)));
    }

    #[test]
    fn entropy_quarter_point() {
        // -1/4 log2(1/4) - 3/4 log2(3/4) = 0.8112781244591328...
        assert!((binary_entropy(0.25).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn entropy_matches_series_near_half() {
        // Direct evaluation and the truncated series agree near p = 1/2.
        let mut p = 0.40;
        while p <= 0.60 {
            let direct = binary_entropy(p).unwrap();
            let series = binary_entropy_series(p, 20);
            assert!(
                (direct - series).abs() < 1e-12,
                "p={p}: {direct} vs {series}"
            );
            p += 0.01;
        }
        // Frozen: both routes give 0.992774... at p = 0.45.
        assert!((binary_entropy(0.45).unwrap() - 0.992_774).abs() < 1e-6);
        assert!((binary_entropy_series(0.45, 20) - 0.992_774).abs() < 1e-6);
    }

    #[test]
    fn entropy_symmetry_and_peak() {
        let mut p = 0.0;
        while p <= 0.5 {
            let low = binary_entropy(p).unwrap();
            let high = binary_entropy(1.0 - p).unwrap();
            assert!((low - high).abs() <= 1e-15, "H({p}) != H({})", 1.0 - p);
            assert!(low <= 1.0);
            p += 0.003;
        }
    }

    #[test]
    fn hoeffding_examples() {
        assert_eq!(hoeffding_tail(10, 0.0), 1.0);
        assert!((hoeffding_tail(100, 10.0) - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn binomial_tail_examples() {
        // P(Bin(4,1/2) > 2) = (C(4,3) + C(4,4)) / 16 = 5/16.
        assert_eq!(binomial_tail_exact(4, 2, true), 0.3125);
        assert_eq!(binomial_tail_exact(4, -1, true), 1.0);
        assert_eq!(binomial_tail_exact(4, -1, false), 1.0);
        // P(Bin(10,1/2) >= 7) = 176/1024.
        assert_eq!(binomial_tail_exact(10, 7, false), 0.171875);
        assert_eq!(binomial_tail_exact(10, 10, true), 0.0);
        assert_eq!(binomial_tail_exact(10, 0, false), 1.0);
    }

    #[test]
    fn upper_tails_match_single_evaluations() {
        for k in [0u64, 1, 5, 10, 33, 64] {
            let tails = binomial_upper_tails(k);
            assert_eq!(tails.len(), k as usize + 1);
            for d in 0..=k {
                assert_eq!(
                    tails[d as usize],
                    binomial_tail_exact(k, d as i64, false),
                    "k={k} d={d}"
                );
            }
        }
    }

    #[test]
    fn centered_tail_examples() {
        // P(Bin(10,1/2) - 5 >= 2) = P(X >= 7) = 176/1024.
        assert_eq!(binomial_centered_tail(10, 4), 0.171875);
        // Half-step: P(Bin(10,1/2) - 5 >= 1.5) = P(X >= 6.5) = P(X >= 7).
        assert_eq!(binomial_centered_tail(10, 3), 0.171875);
        // Odd k: P(Bin(5,1/2) - 2.5 >= 0.5) = P(X >= 3) = 1/2.
        assert_eq!(binomial_centered_tail(5, 1), 0.5);
    }

    #[test]
    fn ratio_conversion_handles_tiny_and_large() {
        let one = BigUint::one();
        assert_eq!(ratio_to_f64(&BigUint::zero(), &one), 0.0);
        assert_eq!(
            ratio_to_f64(&one, &(BigUint::one() << 500usize)),
            (-500.0f64).exp2()
        );
        assert_eq!(
            ratio_to_f64(&(BigUint::one() << 80usize), &one),
            (80.0f64).exp2()
        );
        let three = BigUint::from(3u32);
        assert!((ratio_to_f64(&one, &three) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn stirling_example_k10() {
        let b = stirling_tail_lower(10, 0.7).unwrap();
        // Frozen from direct evaluation; the exact tail 0.171875 dominates.
        assert!((b.tight - 0.10718).abs() < 1e-4, "tight={}", b.tight);
        assert!((b.loose - 0.09825).abs() < 1e-4, "loose={}", b.loose);
        let exact = binomial_tail_exact(10, 7, false);
        assert!(exact >= b.tight && b.tight >= b.loose);
    }

    #[test]
    fn stirling_rejects_bad_lambda() {
        assert!(matches!(
            stirling_tail_lower(10, 0.5),
            Err(Error::LambdaOutOfRange(_))
        ));
        assert!(matches!(
            stirling_tail_lower(10, 1.0),
            Err(Error::LambdaOutOfRange(_))
        ));
        assert!(matches!(
            stirling_tail_lower(10, 0.73),
            Err(Error::LambdaKNotIntegral { .. })
        ));
    }

    #[test]
    fn stirling_holds_on_a_grid() {
        for k in [12u64, 50, 100] {
            let tails = binomial_upper_tails(k);
            for d in k / 2 + 1..k {
                let lambda = d as f64 / k as f64;
                let b = stirling_tail_lower(k, lambda).unwrap();
                let exact = tails[d as usize];
                assert!(
                    exact >= b.tight,
                    "k={k} lambda={lambda}: {exact} < {}",
                    b.tight
                );
                assert!(b.tight >= b.loose, "k={k} lambda={lambda}");
            }
        }
    }

    #[test]
    fn density_threshold_examples() {
        assert_eq!(density_threshold(100, 0.0, 16), 8.0);
        // ln 256 = 5.545177...; 8 + 0.2 sqrt(16 * ln 256) = 9.8838560...
        assert!((density_threshold(256, 0.2, 16) - 9.883_856_036).abs() < 1e-8);
        // With ln n = 4 exactly: 2 + sqrt(16) = 6.
        assert_eq!(density_threshold_from_log(4.0, 1.0, 4), 6.0);
    }

    #[test]
    fn density_violations_edges() {
        // rank[k] = k >= k/2 + c sqrt(k ln n) for all k >= ln n once
        // c <= 1/2, so the all-ones word passes the audit there.
        let all_ones = BinaryWord::ones_word(64);
        assert!(density_violations(&all_ones, 0.5).is_empty());
        // At n = 3 the audit range [ceil(ln n), floor(sqrt n)] is empty.
        assert!(density_violations(&BinaryWord::ones_word(3), 5.0).is_empty());
        let all_zeros = BinaryWord::zeros(100);
        // ln 100 = 4.605 -> k in [5, 10], all violated at rank 0.
        assert_eq!(density_violations(&all_zeros, 0.1), vec![5, 6, 7, 8, 9, 10]);
        assert!(density_violations(&BinaryWord::zeros(0), 1.0).is_empty());
    }

    #[test]
    fn beta_examples() {
        assert!((beta(3, 3.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!((beta(1, 3.0) - (-4.0f64).exp()).abs() < 1e-15);
        for t in -2..8 {
            let d0 = 2.5;
            let b = beta(t, d0);
            assert!(b > 0.0 && b < 1.0);
            // beta_t = beta_{t+1}^2.
            let next = beta(t + 1, d0);
            assert!((next * next - b).abs() / b < 1e-12, "t={t}");
        }
    }

    #[test]
    fn tail_audit_params_brackets() {
        let p = TailAuditParams::new(4096, 1.5).unwrap();
        let ln_n = 4096f64.ln();
        // 4^{t0-1} < ln n <= 4^{t0} and 4^{t1} <= sqrt n < 4^{t1+1}.
        assert!(((p.t0() - 1) as f64 * 2.0).exp2() < ln_n);
        assert!(ln_n <= (p.t0() as f64 * 2.0).exp2());
        assert!((p.t1() as f64 * 2.0).exp2() <= 64.0);
        assert!(64.0 < ((p.t1() + 1) as f64 * 2.0).exp2());
        assert_eq!((p.t0(), p.t1()), (2, 3));
        assert!(p.d0() > 0.0);
        assert!(TailAuditParams::new(1, 1.0).is_err());
        assert!(TailAuditParams::new(100, 0.0).is_err());
    }

    #[test]
    fn claim_rhs_examples() {
        let p = TailAuditParams::new(4096, 1.5).unwrap();
        let n = 4096f64;

        // j = 0, t = t0: n^{-2 c^2 / 3} / (1 - beta_{t0}).
        let direct = p.claim_rhs(p.t0(), 0).unwrap();
        let by_hand = n.powf(-2.0 * 1.5 * 1.5 / 3.0) / (1.0 - p.beta_t(p.t0()));
        assert!((direct - by_hand).abs() / by_hand < 1e-12);

        // t = t0 + 1, j = 2: product of the three factors, composed
        // independently via powf.
        let t = p.t0() + 1;
        let direct = p.claim_rhs(t, 2).unwrap();
        let beta_t = (-(2.0f64).powi((3 - t) as i32) * p.d0() / 3.0).exp();
        let by_hand = n.powf(-2.0 * 1.5 * 1.5 * 2.0 / 3.0) * beta_t * beta_t / (1.0 - beta_t);
        assert!((direct - by_hand).abs() / by_hand < 1e-12);

        // Monotone decreasing in j for fixed t.
        let mut previous = f64::INFINITY;
        for j in 0..10 {
            let value = p.claim_rhs(t, j).unwrap();
            assert!(value < previous);
            previous = value;
        }

        assert!(matches!(
            p.claim_rhs(p.t1() + 1, 0),
            Err(Error::TOutOfRange { .. })
        ));
        assert!(matches!(
            p.claim_rhs(p.t0() - 1, 0),
            Err(Error::TOutOfRange { .. })
        ));
    }

    #[test]
    fn event_tail_monte_carlo_is_exploratory() {
        // Low bias constant so the events have visible probability at
        // this scale; print the closed-form estimate next to the Monte
        // Carlo frequency without asserting an order between them (the
        // closed form is asymptotic).
        let p = TailAuditParams::new(4096, 0.25).unwrap();
        for t in p.t0()..=p.t1() {
            let estimate = p.event_tail_monte_carlo(t, 0, 20_000, 17).unwrap();
            let closed_form = p.claim_rhs(t, 0).unwrap();
            assert!((0.0..=1.0).contains(&estimate));
            println!("t={t}: monte carlo {estimate:.6} vs closed form {closed_form:.6}");
        }
        // Deterministic given the seed.
        assert_eq!(
            p.event_tail_monte_carlo(p.t0(), 1, 5_000, 3).unwrap(),
            p.event_tail_monte_carlo(p.t0(), 1, 5_000, 3).unwrap()
        );
        assert!(matches!(
            p.event_tail_monte_carlo(p.t1() + 1, 0, 10, 0),
            Err(Error::TOutOfRange { .. })
        ));
    }

    #[test]
    fn catalan_values() {
        let values: Vec<u64> = (0..=10)
            .map(|t| catalan_number(t).to_u64().unwrap())
            .collect();
        assert_eq!(values, [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]);
    }

    #[test]
    fn tail_audit_row_is_consistent() {
        let row = tail_audit_row(10, 0.7).unwrap();
        assert_eq!(row.exact_tail, 0.171875);
        assert!(!row.violates());
        assert!(row.hoeffding >= row.exact_tail);
        let csv = row.csv_row();
        assert!(csv.starts_with("10,0.7,"));
    }
}
