mod common;

use proptest::prelude::*;
use ternary::catalog::{generate, load_str};
use ternary::format::{write_sequence, Format};
use ternary::{lift, verify, TernarySequence};

use common::{apply_linear, expected_lift_multiset, independent, multiset, naive_is_ternary};

fn invertible_map(dim: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..1u32 << dim, dim as usize).prop_filter("singular", |m| independent(m))
}

/// A ternary permutation of dimension `dim` (2, 5, 6, 7 or 8) moved by a
/// random invertible linear map.
fn ternary_sequence(dim: u32) -> impl Strategy<Value = TernarySequence> {
    let base = generate(dim).unwrap();
    invertible_map(dim).prop_map(move |m| {
        let words = base
            .decimals()
            .iter()
            .map(|&w| apply_linear(&m, w))
            .collect();
        TernarySequence::from_decimals(dim, words).unwrap()
    })
}

fn any_candidate() -> impl Strategy<Value = (u32, Vec<u32>)> {
    (2u32..=6).prop_flat_map(|dim| {
        let len = (1usize << dim) - 1;
        let shuffled = Just((1..1u32 << dim).collect::<Vec<_>>())
            .prop_shuffle()
            .boxed();
        let raw = prop::collection::vec(0..1u32 << dim, len).boxed();
        let lengths = prop::collection::vec(1..1u32 << dim, 0..len + 3).boxed();
        (Just(dim), prop_oneof![shuffled, raw, lengths])
    })
}

fn near_valid() -> impl Strategy<Value = (u32, Vec<u32>)> {
    prop_oneof![Just(2u32), Just(5), Just(6)].prop_flat_map(|dim| {
        let len = (1usize << dim) - 1;
        (ternary_sequence(dim), 0..len, 0..len).prop_map(move |(seq, i, j)| {
            let mut v = seq.decimals().to_vec();
            v.swap(i, j);
            (dim, v)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn verify_matches_naive_on_random_input((dim, words) in any_candidate()) {
        let seq = TernarySequence::from_decimals(dim, words.clone()).unwrap();
        prop_assert_eq!(verify(&seq).unwrap().valid(), naive_is_ternary(dim, &words));
    }

    #[test]
    fn verify_matches_naive_near_solutions((dim, words) in near_valid()) {
        let seq = TernarySequence::from_decimals(dim, words.clone()).unwrap();
        prop_assert_eq!(verify(&seq).unwrap().valid(), naive_is_ternary(dim, &words));
    }

    #[test]
    fn linear_images_stay_ternary(seq in prop_oneof![ternary_sequence(5), ternary_sequence(6)]) {
        prop_assert!(verify(&seq).unwrap().valid());
    }

    #[test]
    fn lift_output_is_ternary_with_expected_words(
        seq in prop_oneof![
            ternary_sequence(5),
            ternary_sequence(6),
            ternary_sequence(7),
            ternary_sequence(8),
        ]
    ) {
        let lifted = lift(&seq).unwrap();
        prop_assert_eq!(lifted.dim(), seq.dim() + 2);
        prop_assert_eq!(lifted.len(), 4 * seq.len() + 3);
        prop_assert!(verify(&lifted).unwrap().valid());
        prop_assert!(naive_is_ternary(lifted.dim(), lifted.decimals()));
        prop_assert_eq!(multiset(lifted.decimals()), expected_lift_multiset(seq.decimals()));
    }

    #[test]
    fn listings_round_trip(
        seq in prop_oneof![ternary_sequence(2), ternary_sequence(5), ternary_sequence(7)],
        binary in any::<bool>(),
    ) {
        let format = if binary { Format::Binary } else { Format::Decimal };
        let text = write_sequence(&seq, format);
        let loaded = load_str(&text, None).unwrap();
        prop_assert_eq!(loaded.format, format);
        prop_assert!(loaded.report.valid());
        prop_assert_eq!(loaded.sequence, seq);
    }
}
