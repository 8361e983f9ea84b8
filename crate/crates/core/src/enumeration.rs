//! Exhaustive enumeration of prefix normal words and equivalence-class
//! counting.
//!
//! Two independent routes exist for everything countable here: a
//! depth-first enumerator built on [`IncrementalState`] (prefix
//! normality is closed under taking prefixes, which justifies the
//! pruning), and naive filters over all `2^n` words that serve as
//! oracles. Counts are arbitrary precision throughout; the exhaustive
//! scans themselves are only feasible up to roughly `n = 30` for
//! [`count_prefix_normal_naive`] and `n = 24` for the class scans.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::word::{BinaryWord, IncrementalState, Profile};
use crate::{Error, Result};

/// Scans over all `2^n` words enumerate a `u64` mask.
const MAX_SCAN_LEN: usize = 63;

fn word_from_mask(mask: u64, n: usize) -> BinaryWord {
    BinaryWord::from_bits((0..n).map(|i| mask >> i & 1 != 0))
}

fn assert_scan_feasible(n: usize, what: &str) {
    assert!(
        n <= MAX_SCAN_LEN,
        "{what} scans all 2^n words and cannot run at n = {n}"
    );
}

/// Exact number of prefix normal words of length `n`, by depth-first
/// extension.
pub fn count_prefix_normal(n: usize) -> BigUint {
    let mut state = IncrementalState::empty();
    count_extensions(&mut state, n)
}

fn count_extensions(state: &mut IncrementalState, remaining: usize) -> BigUint {
    if remaining == 0 {
        return BigUint::one();
    }
    let mut total = BigUint::zero();
    for bit in [false, true] {
        if state.try_extend(bit) {
            total += count_extensions(state, remaining - 1);
            state.pop();
        }
    }
    total
}

/// Independent oracle: filters all `2^n` words through the definitional
/// predicate.
pub fn count_prefix_normal_naive(n: usize) -> BigUint {
    assert_scan_feasible(n, "count_prefix_normal_naive");
    let count = (0u64..1 << n)
        .into_par_iter()
        .filter(|&mask| word_from_mask(mask, n).is_prefix_normal_definition())
        .count();
    BigUint::from(count)
}

/// Same count as [`count_prefix_normal`], split across workers by
/// partitioning on prefix normal prefixes of length `split_depth` and
/// combining with a commutative sum. The partition depth (and the
/// worker count) must not affect the result.
pub fn count_prefix_normal_partitioned(n: usize, split_depth: usize) -> BigUint {
    let depth = split_depth.min(n);
    let prefixes: Vec<BinaryWord> = iter_prefix_normal(depth).collect();
    prefixes
        .par_iter()
        .map(|prefix| {
            let mut state =
                IncrementalState::new(prefix).expect("enumerated prefixes are prefix normal");
            count_extensions(&mut state, n - depth)
        })
        .sum()
}

/// Streams every prefix normal word of length `n` exactly once, in
/// lexicographic order.
pub fn iter_prefix_normal(n: usize) -> PrefixNormalIter {
    PrefixNormalIter {
        n,
        state: IncrementalState::empty(),
        started: false,
        done: false,
    }
}

/// Lexicographic depth-first traversal; appending `0` always preserves
/// prefix normality, so descending by zeros reaches the first word and
/// backtracking flips the deepest extendable `0` to `1`.
pub struct PrefixNormalIter {
    n: usize,
    state: IncrementalState,
    started: bool,
    done: bool,
}

impl Iterator for PrefixNormalIter {
    type Item = BinaryWord;

    fn next(&mut self) -> Option<BinaryWord> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
            return Some(self.state.word());
        }
        loop {
            match self.state.pop() {
                None => {
                    self.done = true;
                    return None;
                }
                Some(true) => continue,
                Some(false) => {
                    if self.state.try_extend(true) {
                        self.descend();
                        return Some(self.state.word());
                    }
                }
            }
        }
    }
}

impl PrefixNormalIter {
    fn descend(&mut self) {
        while self.state.len() < self.n {
            let extended = self.state.try_extend(false);
            debug_assert!(extended, "appending 0 preserves prefix normality");
        }
    }
}

/// Number of words sharing `pnf`'s profile, by exhaustive scan over all
/// `2^n` candidates. The input must itself be prefix normal.
pub fn class_size(pnf: &BinaryWord) -> Result<BigUint> {
    if !pnf.is_prefix_normal_definition() {
        return Err(Error::NotPrefixNormal);
    }
    let n = pnf.len();
    assert_scan_feasible(n, "class_size");
    let target = pnf.profile();
    let count = (0u64..1 << n)
        .into_par_iter()
        .filter(|&mask| word_from_mask(mask, n).profile() == target)
        .count();
    Ok(BigUint::from(count))
}

/// Accelerated route to [`class_size`]: depth-first over prefixes,
/// pruning when a suffix window already exceeds the target profile or
/// the remaining positions cannot reach the target ones count. Leaves
/// still verify full profile equality.
pub fn class_size_pruned(pnf: &BinaryWord) -> Result<BigUint> {
    if !pnf.is_prefix_normal_definition() {
        return Err(Error::NotPrefixNormal);
    }
    let target = pnf.profile();
    let mut dfs = CappedDfs {
        caps: target.values().to_vec(),
        n: pnf.len(),
        target: &target,
        bits: Vec::new(),
        suffix_ones: vec![0],
        count: BigUint::zero(),
    };
    dfs.run();
    Ok(dfs.count)
}

struct CappedDfs<'a> {
    caps: Vec<u32>,
    n: usize,
    target: &'a Profile,
    bits: Vec<bool>,
    /// `suffix_ones[k]` = ones among the last `k` bits of the prefix.
    suffix_ones: Vec<u32>,
    count: BigUint,
}

impl CappedDfs<'_> {
    fn run(&mut self) {
        if self.n == 0 {
            self.count += 1u32;
            return;
        }
        self.visit();
    }

    fn visit(&mut self) {
        let m = self.bits.len();
        for bit in [false, true] {
            if !self.admissible(bit) {
                continue;
            }
            self.push(bit);
            if self.bits.len() == self.n {
                // Caps guarantee no window exceeds the target; equality
                // of the whole profile still needs the leaf check.
                if self.word().profile() == *self.target {
                    self.count += 1u32;
                }
            } else {
                self.visit();
            }
            self.pop(bit);
            debug_assert_eq!(self.bits.len(), m);
        }
    }

    fn admissible(&self, bit: bool) -> bool {
        let m = self.bits.len();
        let b = bit as u32;
        let total = self.caps[self.n];
        // Enough positions left to reach the target ones count.
        let ones_after = self.suffix_ones[m] + b;
        let slack = (self.n - m - 1) as u32;
        if ones_after + slack < total || ones_after > total {
            return false;
        }
        if bit {
            // Every suffix window of the extended prefix stays within
            // the target profile; appending 0 cannot create an excess.
            for k in 1..=m + 1 {
                if self.suffix_ones[k - 1] + 1 > self.caps[k] {
                    return false;
                }
            }
        }
        true
    }

    fn push(&mut self, bit: bool) {
        let b = bit as u32;
        let m = self.bits.len();
        self.bits.push(bit);
        self.suffix_ones.push(0);
        for k in (1..=m + 1).rev() {
            self.suffix_ones[k] = self.suffix_ones[k - 1] + b;
        }
    }

    fn pop(&mut self, bit: bool) {
        let b = bit as u32;
        self.bits.pop();
        let m = self.bits.len();
        for k in 1..=m + 1 {
            self.suffix_ones[k - 1] = self.suffix_ones[k] - b;
        }
        self.suffix_ones.pop();
    }

    fn word(&self) -> BinaryWord {
        BinaryWord::from_bits(self.bits.iter().copied())
    }
}

/// Class sizes of every equivalence class of length `n`, keyed by
/// prefix normal form, from one exhaustive pass over all `2^n` words.
pub fn class_census(n: usize) -> HashMap<BinaryWord, BigUint> {
    assert_scan_feasible(n, "class_census");
    let mut census: HashMap<BinaryWord, BigUint> = HashMap::new();
    for mask in 0u64..1 << n {
        let pnf = word_from_mask(mask, n).prefix_normal_form();
        *census.entry(pnf).or_default() += 1u32;
    }
    census
}

/// One equivalence class: its prefix normal form and its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub pnf: BinaryWord,
    pub size: BigUint,
}

/// The largest equivalence class at length `n`; ties go to the
/// lexicographically smallest witness (a convention, the maximum itself
/// is what matters).
pub fn max_class_size(n: usize) -> ClassReport {
    let mut best: Option<ClassReport> = None;
    for (pnf, size) in class_census(n) {
        let better = match &best {
            None => true,
            Some(current) => size > current.size || (size == current.size && pnf < current.pnf),
        };
        if better {
            best = Some(ClassReport { pnf, size });
        }
    }
    best.expect("every length has at least one class")
}

/// Parses a fixture file: one `n<TAB>count` row per line, `#` comments
/// and blank lines allowed.
pub fn parse_fixture(text: &str) -> Result<Vec<(usize, BigUint)>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| Error::Invalid(format!("fixture line {}: {what}: {raw:?}", idx + 1));
        let mut parts = line.split('\t');
        let n = parts
            .next()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| bad("expected an integer n"))?;
        let count = parts
            .next()
            .and_then(|s| s.trim().parse::<BigUint>().ok())
            .ok_or_else(|| bad("expected an integer count"))?;
        if parts.next().is_some() {
            return Err(bad("trailing fields"));
        }
        rows.push((n, count));
    }
    Ok(rows)
}

fn biguint_as_string<S: Serializer>(
    value: &BigUint,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&value.to_string())
}

/// Header of the enumeration table.
pub const ENUMERATION_CSV_HEADER: &str = "n,count_pn,max_class,witness";

/// One row of the enumeration table: exact counts are emitted as decimal
/// strings so no consumer is forced through floating point.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationRow {
    pub n: usize,
    #[serde(serialize_with = "biguint_as_string")]
    pub count_pn: BigUint,
    #[serde(serialize_with = "biguint_as_string")]
    pub max_class: BigUint,
    pub witness: String,
}

/// Computes the full table row for one length.
pub fn enumeration_row(n: usize) -> EnumerationRow {
    let report = max_class_size(n);
    EnumerationRow {
        n,
        count_pn: count_prefix_normal(n),
        max_class: report.size,
        witness: report.pnf.to_string(),
    }
}

impl EnumerationRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.n, self.count_pn, self.max_class, self.witness
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn count_u64(n: usize) -> u64 {
        count_prefix_normal(n).to_u64().unwrap()
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_u64(0), 1);
        assert_eq!(count_u64(3), 5);
        assert_eq!(count_u64(5), 14);
    }

    #[test]
    fn count_matches_naive_filter() {
        for n in 0..=12 {
            assert_eq!(
                count_prefix_normal(n),
                count_prefix_normal_naive(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn partitioned_count_is_partition_independent() {
        for n in [6usize, 9, 12] {
            let reference = count_prefix_normal(n);
            for depth in [0usize, 1, 3, 5, 12] {
                assert_eq!(
                    count_prefix_normal_partitioned(n, depth),
                    reference,
                    "n={n} depth={depth}"
                );
            }
        }
    }

    #[test]
    fn iter_examples() {
        let words: Vec<String> = iter_prefix_normal(1).map(|w| w.to_string()).collect();
        assert_eq!(words, ["0", "1"]);
        let words: Vec<String> = iter_prefix_normal(2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["00", "10", "11"]);
        let words: Vec<String> = iter_prefix_normal(3).map(|w| w.to_string()).collect();
        assert_eq!(words, ["000", "100", "101", "110", "111"]);
        let words: Vec<BinaryWord> = iter_prefix_normal(0).collect();
        assert_eq!(words, [w("")]);
    }

    #[test]
    fn iter_is_sorted_complete_and_prefix_normal() {
        for n in 0..=11 {
            let words: Vec<BinaryWord> = iter_prefix_normal(n).collect();
            assert_eq!(BigUint::from(words.len()), count_prefix_normal(n));
            for pair in words.windows(2) {
                assert!(pair[0] < pair[1], "not strictly increasing at n={n}");
            }
            for word in &words {
                assert!(word.is_prefix_normal_definition());
                assert_eq!(word.len(), n);
            }
        }
    }

    #[test]
    fn class_size_examples() {
        assert_eq!(class_size(&w("11")).unwrap(), BigUint::from(1u32));
        assert_eq!(class_size(&w("10")).unwrap(), BigUint::from(2u32));
        assert_eq!(class_size(&w("100")).unwrap(), BigUint::from(3u32));
        assert_eq!(class_size(&w("011")), Err(Error::NotPrefixNormal));
        assert_eq!(class_size_pruned(&w("011")), Err(Error::NotPrefixNormal));
        // Empty word: the single empty class.
        assert_eq!(class_size(&w("")).unwrap(), BigUint::one());
    }

    #[test]
    fn pruned_class_size_agrees_with_scan() {
        for n in 0..=10 {
            for pnf in iter_prefix_normal(n) {
                assert_eq!(class_size_pruned(&pnf), class_size(&pnf), "{pnf}");
            }
        }
    }

    #[test]
    fn census_partitions_the_cube() {
        for n in 0..=10 {
            let census = class_census(n);
            let total: BigUint = census.values().sum();
            assert_eq!(total, BigUint::one() << n, "n={n}");
            for (pnf, size) in &census {
                assert!(pnf.is_prefix_normal_definition());
                assert_eq!(Some(size), census.get(pnf));
                assert_eq!(class_size(pnf).unwrap(), *size, "{pnf}");
            }
            // Exactly the prefix normal words appear as keys.
            assert_eq!(BigUint::from(census.len()), count_prefix_normal(n));
        }
    }

    #[test]
    fn max_class_examples() {
        let report = max_class_size(2);
        assert_eq!(
            (
                report.pnf.to_string().as_str(),
                report.size.to_u64().unwrap()
            ),
            ("10", 2)
        );
        let report = max_class_size(3);
        assert_eq!(
            (
                report.pnf.to_string().as_str(),
                report.size.to_u64().unwrap()
            ),
            ("100", 3)
        );
        let report = max_class_size(4);
        assert_eq!(
            (
                report.pnf.to_string().as_str(),
                report.size.to_u64().unwrap()
            ),
            ("1000", 4)
        );
        let report = max_class_size(0);
        assert_eq!(report.size, BigUint::one());
    }

    #[test]
    fn fixture_parsing() {
        let text = "# comment\n0\t1\n\n3\t5\n18\t25574\n";
        let rows = parse_fixture(text).unwrap();
        assert_eq!(
            rows,
            vec![
                (0, BigUint::from(1u32)),
                (3, BigUint::from(5u32)),
                (18, BigUint::from(25574u32))
            ]
        );
        assert!(parse_fixture("oops\t1").is_err());
        assert!(parse_fixture("1\ttwo").is_err());
        assert!(parse_fixture("1\t2\t3").is_err());
        assert!(parse_fixture("5").is_err());
    }

    #[test]
    fn enumeration_rows_serialize() {
        let row = enumeration_row(5);
        assert_eq!(row.csv_row(), "5,14,5,10000");
        let json = serde_json::to_string(&row).unwrap();
        assert_eq!(
            json,
            r#"{"n":5,"count_pn":"14","max_class":"5","witness":"10000"}"#
        );
    }
}
