//! Prefix normal binary words.
//!
//! A binary word is *prefix normal* when no window (contiguous subword)
//! contains more 1s than the prefix of the same length. This crate is a
//! research toolkit around that class of words:
//!
//! * [`word`] — binary words, profiles, prefix normal forms, the
//!   normality predicates, and an incremental extension checker;
//! * [`enumeration`] — exhaustive enumeration and equivalence-class
//!   counting, with brute-force oracles and committed integer-sequence
//!   fixtures;
//! * [`sampler`] — a biased random construction that produces prefix
//!   normal words with high probability, plus the entropy accounting
//!   that turns its success rate into a counting bound;
//! * [`bounds`] — closed-form tail and entropy numerics: binary entropy,
//!   Hoeffding tails, exact and Stirling-bounded binomial tails, density
//!   thresholds, Catalan numbers;
//! * [`catalan_blocks`] — the Catalan-block family: exponentially many words
//!   sharing a single prefix normal form, with exhaustive and sampled
//!   verification.
//!
//! Words serialize as ASCII strings over `{'0','1'}`, leftmost character
//! first. All public types are immutable after construction and safe to
//! share across threads; randomized operations are deterministic given a
//! master seed (see [`rng`] for the exact derivation contract).
//!
//! ## Quick example
//!
//! ```rust
//! use pnw_core::BinaryWord;
//! use pnw_core::enumeration::count_prefix_normal;
//!
//! let w: BinaryWord = "01010".parse().unwrap();
//! assert!(!w.is_prefix_normal_definition());
//! assert_eq!(w.profile().values(), &[0, 1, 1, 2, 2, 2]);
//! assert_eq!(w.prefix_normal_form().to_string(), "10100");
//!
//! assert_eq!(count_prefix_normal(5), 14u32.into());
//! ```

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod bounds;
pub mod catalan_blocks;
pub mod enumeration;
pub mod rng;
pub mod sampler;
pub mod word;

pub use word::{BinaryWord, IncrementalState, Profile};

/// Errors across the toolkit.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("invalid character {found:?} in word string (expected '0' or '1')")]
    ParseWord { found: char },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("word is not prefix normal")]
    NotPrefixNormal,

    #[error("position k={k} out of range 1..={n}")]
    PositionOutOfRange { k: usize, n: usize },

    #[error("window (k={k}, j={j}) outside the reduced range k <= j <= n-k for n={n}")]
    WindowOutOfRange { k: usize, j: usize, n: usize },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("lambda={0} outside the open interval (1/2, 1)")]
    LambdaOutOfRange(f64),

    #[error("lambda*k = {product} is not integral (lambda={lambda}, k={k})")]
    LambdaKNotIntegral { lambda: f64, k: u64, product: f64 },

    #[error("t={t} outside [{t0}, {t1}]")]
    TOutOfRange { t: i64, t0: i64, t1: i64 },

    #[error(
        "exhaustive verification would build {total} words, above the cap {cap}; use sampled mode"
    )]
    InfeasibleExhaustive { total: String, cap: u64 },

    #[error("{0}")]
    Invalid(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
