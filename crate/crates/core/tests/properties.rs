//! Property-based and exhaustive invariants across modules.

use num_bigint::BigUint;
use proptest::prelude::*;

use pnw_core::catalan_blocks::target_pnf;
use pnw_core::enumeration::{class_size, iter_prefix_normal, max_class_size};
use pnw_core::{BinaryWord, IncrementalState};

fn word_from(bits: &[bool]) -> BinaryWord {
    BinaryWord::from_bits(bits.iter().copied())
}

proptest! {
    #[test]
    fn profile_is_monotone_with_unit_steps(bits in prop::collection::vec(any::<bool>(), 0..=64)) {
        let word = word_from(&bits);
        let profile = word.profile();
        let values = profile.values();
        prop_assert_eq!(values[0], 0);
        prop_assert_eq!(values[bits.len()], word.count_ones());
        for k in 0..bits.len() {
            prop_assert!(values[k] <= values[k + 1]);
            prop_assert!(values[k + 1] <= values[k] + 1);
        }
    }

    #[test]
    fn bitparallel_profile_matches_rank_path(bits in prop::collection::vec(any::<bool>(), 0..=160)) {
        let word = word_from(&bits);
        prop_assert_eq!(word.profile(), word.profile_bitparallel());
    }

    #[test]
    fn normal_form_is_an_equivalent_fixed_point(bits in prop::collection::vec(any::<bool>(), 0..=48)) {
        let word = word_from(&bits);
        let pnf = word.prefix_normal_form();
        prop_assert!(pnf.is_prefix_normal_definition());
        prop_assert!(word.equivalent(&pnf).unwrap());
        prop_assert_eq!(pnf.prefix_normal_form(), pnf.clone());
        prop_assert!(pnf >= word);
        prop_assert_eq!(word.is_prefix_normal_definition(), pnf == word);
    }

    #[test]
    fn reduced_check_equals_definition(bits in prop::collection::vec(any::<bool>(), 0..=18)) {
        let word = word_from(&bits);
        prop_assert_eq!(word.is_prefix_normal_definition(), word.is_prefix_normal_reduced());
    }

    #[test]
    fn incremental_extension_agrees_with_definition(
        bits in prop::collection::vec(any::<bool>(), 0..=24),
        extra in any::<bool>(),
    ) {
        // Grow a prefix normal word by the proposed bits (skipping any
        // that would break normality), then test one more extension
        // against the definitional oracle.
        let mut state = IncrementalState::empty();
        for bit in bits {
            state.try_extend(bit);
        }
        let word = state.word();
        prop_assert!(word.is_prefix_normal_definition());
        let extended = BinaryWord::from_bits(word.iter_bits().chain([extra]));
        prop_assert_eq!(state.try_extend(extra), extended.is_prefix_normal_definition());
    }
}

#[test]
fn prefixes_of_prefix_normal_words_stay_normal_up_to_14() {
    for n in [13usize, 14] {
        for word in iter_prefix_normal(n) {
            for m in 0..=n {
                assert!(
                    word.prefix(m).is_prefix_normal_definition(),
                    "{word} prefix of length {m}"
                );
            }
        }
    }
}

#[test]
fn normal_form_is_lexicographically_maximal_up_to_12() {
    for n in 0..=12usize {
        for mask in 0u64..1 << n {
            let word = BinaryWord::from_bits((0..n).map(|i| mask >> i & 1 != 0));
            assert!(word.prefix_normal_form() >= word, "{word}");
        }
    }
}

#[test]
fn max_class_dominates_catalan_block_classes() {
    // Every valid block parameterization at enumerable lengths.
    for n in (4..=14usize).step_by(2) {
        let maximum = max_class_size(n).size;
        for t in 1..=(n / 4) as u64 {
            if n % (2 * t as usize) != 0 {
                continue;
            }
            let target = target_pnf(n, t).unwrap();
            let class = class_size(&target).unwrap();
            assert!(
                maximum >= class,
                "n={n} t={t}: max {maximum} < class {class}"
            );
        }
    }
}

#[test]
fn pruned_class_sizes_agree_with_the_scan_through_14() {
    // The accelerated depth-first counter must agree with the
    // exhaustive candidate scan on every class up to n = 14 (smaller
    // lengths are covered by the module tests).
    for n in [13usize, 14] {
        for pnf in iter_prefix_normal(n) {
            assert_eq!(
                pnw_core::enumeration::class_size_pruned(&pnf).unwrap(),
                class_size(&pnf).unwrap(),
                "{pnf}"
            );
        }
    }
}

#[test]
fn enumeration_order_is_strict_and_complete_at_13() {
    let words: Vec<BinaryWord> = iter_prefix_normal(13).collect();
    for pair in words.windows(2) {
        assert!(pair[0] < pair[1]);
    }
    assert_eq!(
        BigUint::from(words.len()),
        pnw_core::enumeration::count_prefix_normal(13)
    );
    assert!(words.iter().all(BinaryWord::is_prefix_normal_definition));
}
