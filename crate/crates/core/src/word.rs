//! Binary words, their profiles, and prefix normality.
//!
//! The profile of a word `w` of length `n` is the map `f(k)` giving the
//! maximum number of 1s over all windows of length `k`, for `k = 0..=n`.
//! `w` is prefix normal when every `f(k)` is attained by the prefix of
//! length `k`, and the *prefix normal form* of `w` is the unique word
//! whose length-`k` prefix contains exactly `f(k)` ones — the
//! lexicographically maximal member of `w`'s equivalence class.
//!
//! Windows are addressed as half-open ranges: `ones_in(j, k)` counts 1s
//! among positions `j..j+k` (0-based), so the prefix of length `k` is
//! window `(0, k)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::{Error, Result};

const LIMB_BITS: usize = 64;

/// An immutable binary word with a precomputed rank (prefix ones) table.
///
/// Equality, ordering, and hashing consider only the bit content; order
/// is lexicographic with `'0' < '1'` and shorter words before their
/// extensions.
#[derive(Clone)]
pub struct BinaryWord {
    /// Bit `i` lives at `limbs[i / 64] >> (i % 64) & 1`.
    limbs: Vec<u64>,
    len: usize,
    /// `rank[i]` = number of 1s among the first `i` bits; `rank[0] = 0`.
    rank: Vec<u32>,
}

impl BinaryWord {
    /// Builds a word from bits, leftmost first.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut limbs = Vec::new();
        let mut rank = vec![0u32];
        let mut len = 0usize;
        let mut ones = 0u32;
        for b in bits {
            if len.is_multiple_of(LIMB_BITS) {
                limbs.push(0);
            }
            if b {
                *limbs.last_mut().expect("limb pushed above") |= 1u64 << (len % LIMB_BITS);
                ones += 1;
            }
            len += 1;
            rank.push(ones);
        }
        assert!(
            len < u32::MAX as usize,
            "word length exceeds rank table range"
        );
        BinaryWord { limbs, len, rank }
    }

    /// The all-zeros word of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self::from_bits(std::iter::repeat_n(false, n))
    }

    /// The all-ones word of length `n`.
    pub fn ones_word(n: usize) -> Self {
        Self::from_bits(std::iter::repeat_n(true, n))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Total number of 1s.
    pub fn count_ones(&self) -> u32 {
        self.rank[self.len]
    }

    /// Bit at 0-based position `i`.
    pub fn bit(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range for length {}",
            self.len
        );
        (self.limbs[i / LIMB_BITS] >> (i % LIMB_BITS)) & 1 != 0
    }

    /// Number of 1s among the first `i` bits (`0 <= i <= n`).
    pub fn rank(&self, i: usize) -> u32 {
        self.rank[i]
    }

    /// Number of 1s in the window `j..j+k`.
    pub fn ones_in(&self, j: usize, k: usize) -> u32 {
        self.rank[j + k] - self.rank[j]
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    /// The profile `f(0..=n)`: for each window length the maximum ones
    /// count over all windows, computed by an O(n^2) sweep over the rank
    /// table.
    pub fn profile(&self) -> Profile {
        let n = self.len;
        let mut values = Vec::with_capacity(n + 1);
        values.push(0u32);
        for k in 1..=n {
            let mut best = 0;
            for j in 0..=n - k {
                let ones = self.rank[j + k] - self.rank[j];
                if ones > best {
                    best = ones;
                }
            }
            values.push(best);
        }
        Profile { values }
    }

    /// Same profile through the packed representation: window counts come
    /// from machine-word popcounts instead of the rank table. Bit-exact
    /// with [`BinaryWord::profile`]; mainly useful for words that fit in
    /// a few limbs.
    pub fn profile_bitparallel(&self) -> Profile {
        let n = self.len;
        let mut values = Vec::with_capacity(n + 1);
        values.push(0u32);
        for k in 1..=n {
            let mut best = 0;
            for j in 0..=n - k {
                let ones = self.popcount_window(j, k);
                if ones > best {
                    best = ones;
                }
            }
            values.push(best);
        }
        Profile { values }
    }

    /// Popcount of the window `j..j+k` read straight off the limbs.
    fn popcount_window(&self, j: usize, k: usize) -> u32 {
        debug_assert!(j + k <= self.len);
        let mut count = 0u32;
        let mut pos = j;
        let mut remaining = k;
        while remaining > 0 {
            let limb = self.limbs[pos / LIMB_BITS];
            let off = pos % LIMB_BITS;
            let take = (LIMB_BITS - off).min(remaining);
            let chunk = limb >> off;
            let masked = if take == LIMB_BITS {
                chunk
            } else {
                chunk & ((1u64 << take) - 1)
            };
            count += masked.count_ones();
            pos += take;
            remaining -= take;
        }
        count
    }

    /// The unique word whose length-`k` prefix has exactly `f(k)` ones,
    /// for this word's profile `f`: its prefix normal form.
    pub fn prefix_normal_form(&self) -> BinaryWord {
        self.profile().prefix_normal_word()
    }

    /// Definitional prefix normality: every window of every length has
    /// at most as many 1s as the prefix of the same length. This is the
    /// test oracle — a literal transcription of the definition with the
    /// full `0 <= j <= n-k` range.
    pub fn is_prefix_normal_definition(&self) -> bool {
        let n = self.len;
        for k in 0..=n {
            let prefix = self.rank[k];
            for j in 0..=n - k {
                if self.rank[j + k] - self.rank[j] > prefix {
                    return false;
                }
            }
        }
        true
    }

    /// Prefix normality via the reduced window range `k <= j <= n-k`:
    /// windows overlapping the prefix cancel against it, so only the
    /// disjoint ones need checking.
    pub fn is_prefix_normal_reduced(&self) -> bool {
        let n = self.len;
        for k in 1..=n {
            let prefix = self.rank[k];
            let mut j = k;
            while j + k <= n {
                if self.rank[j + k] - self.rank[j] > prefix {
                    return false;
                }
                j += 1;
            }
        }
        true
    }

    /// Whether `self` and `other` share a profile (equivalently, a
    /// prefix normal form). Words of different lengths are not
    /// comparable.
    pub fn equivalent(&self, other: &BinaryWord) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self.profile() == other.profile())
    }

    /// Word formed by the first `m` bits.
    pub fn prefix(&self, m: usize) -> BinaryWord {
        assert!(m <= self.len);
        Self::from_bits((0..m).map(|i| self.bit(i)))
    }
}

impl PartialEq for BinaryWord {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.limbs == other.limbs
    }
}

impl Eq for BinaryWord {}

impl Hash for BinaryWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        self.limbs.hash(state);
    }
}

impl Ord for BinaryWord {
    fn cmp(&self, other: &Self) -> Ordering {
        let common_limbs = self.limbs.len().min(other.limbs.len());
        for i in 0..common_limbs {
            let diff = self.limbs[i] ^ other.limbs[i];
            if diff != 0 {
                // Lowest differing bit is the leftmost differing position.
                let bit = diff.trailing_zeros() as usize;
                let pos = i * LIMB_BITS + bit;
                if pos >= self.len.min(other.len) {
                    break;
                }
                let ours = (self.limbs[i] >> bit) & 1;
                return if ours == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BinaryWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                found => return Err(Error::ParseWord { found }),
            }
        }
        Ok(Self::from_bits(bits))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({self})")
    }
}

/// The profile `f(0..=n)` of a word: the canonical invariant of an
/// equivalence class.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    values: Vec<u32>,
}

impl Profile {
    /// Validates the profile invariants: `f(0) = 0` and unit steps
    /// `f(k) <= f(k+1) <= f(k) + 1`.
    pub fn from_values(values: Vec<u32>) -> Result<Self> {
        if values.is_empty() || values[0] != 0 {
            return Err(Error::Invalid("profile must start with f(0) = 0".into()));
        }
        for k in 0..values.len() - 1 {
            if values[k + 1] < values[k] || values[k + 1] > values[k] + 1 {
                return Err(Error::Invalid(format!(
                    "profile step f({}) = {} -> f({}) = {} is not in {{0, +1}}",
                    k,
                    values[k],
                    k + 1,
                    values[k + 1]
                )));
            }
        }
        Ok(Profile { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Length of the originating word.
    pub fn word_len(&self) -> usize {
        self.values.len() - 1
    }

    /// `f(n)`: the total ones count of any word with this profile.
    pub fn total_ones(&self) -> u32 {
        *self.values.last().expect("profile is nonempty")
    }

    /// The word whose `k`-th bit is `f(k) - f(k-1)`; by construction its
    /// length-`k` prefix has exactly `f(k)` ones.
    pub fn prefix_normal_word(&self) -> BinaryWord {
        BinaryWord::from_bits(self.values.windows(2).map(|w| w[1] > w[0]))
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile{:?}", self.values)
    }
}

/// Incremental prefix normality checker for left-to-right extension.
///
/// Holds a prefix normal word and decides in O(n) whether appending a
/// bit keeps it prefix normal: the only windows a new last bit creates
/// are the suffix windows, so it suffices to compare, for each `k`, the
/// ones count of the last `k` bits against the first `k` bits. The state
/// keeps both tables and supports backtracking, which is what the
/// depth-first enumerators are built on.
#[derive(Clone, Debug)]
pub struct IncrementalState {
    bits: Vec<bool>,
    /// `rank[i]` = ones among the first `i` bits.
    rank: Vec<u32>,
    /// `suffix_ones[k]` = ones among the last `k` bits.
    suffix_ones: Vec<u32>,
}

impl Default for IncrementalState {
    fn default() -> Self {
        Self::empty()
    }
}

impl IncrementalState {
    /// State for the empty word (prefix normal by convention).
    pub fn empty() -> Self {
        IncrementalState {
            bits: Vec::new(),
            rank: vec![0],
            suffix_ones: vec![0],
        }
    }

    /// State seeded from an existing word; rejects words that are not
    /// prefix normal, since the incremental argument relies on it.
    pub fn new(word: &BinaryWord) -> Result<Self> {
        if !word.is_prefix_normal_definition() {
            return Err(Error::NotPrefixNormal);
        }
        let mut state = Self::empty();
        for b in word.iter_bits() {
            let ok = state.try_extend(b);
            debug_assert!(ok, "prefixes of a prefix normal word are prefix normal");
        }
        Ok(state)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Ones count of the held word.
    pub fn ones(&self) -> u32 {
        self.rank[self.bits.len()]
    }

    /// Whether appending `bit` keeps the word prefix normal; pushes the
    /// bit and returns `true` if so, leaves the state untouched and
    /// returns `false` otherwise.
    pub fn try_extend(&mut self, bit: bool) -> bool {
        let m = self.bits.len();
        if bit {
            // Appending 1: each suffix window of the new word gains this
            // 1, so demand suffix_ones[k-1] + 1 <= rank[k] for k <= m.
            // (k = m+1 compares the whole word against itself.)
            for k in 1..=m {
                if self.suffix_ones[k - 1] + 1 > self.rank[k] {
                    return false;
                }
            }
        }
        // Appending 0 never breaks prefix normality: suffix windows keep
        // their counts and suffix_ones[k-1] <= rank[k-1] <= rank[k].
        let b = bit as u32;
        self.bits.push(bit);
        self.rank.push(self.rank[m] + b);
        self.suffix_ones.push(0);
        for k in (1..=m + 1).rev() {
            self.suffix_ones[k] = self.suffix_ones[k - 1] + b;
        }
        true
    }

    /// Removes the last bit, returning it; `None` on the empty word.
    pub fn pop(&mut self) -> Option<bool> {
        let bit = self.bits.pop()?;
        let b = bit as u32;
        let m = self.bits.len();
        self.rank.pop();
        for k in 1..=m + 1 {
            self.suffix_ones[k - 1] = self.suffix_ones[k] - b;
        }
        self.suffix_ones.pop();
        Some(bit)
    }

    /// Materializes the held word.
    pub fn word(&self) -> BinaryWord {
        BinaryWord::from_bits(self.bits.iter().copied())
    }
}
