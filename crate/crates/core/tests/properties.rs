use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use domino_towers::asymptotics::{parse_decimal, to_decimal};
use domino_towers::enumerate::{enumerate, BaseSelector, EnumerationRequest};
use domino_towers::model::{buildable_by_placement, validate};
use domino_towers::oeis::parse_bfile;
use domino_towers::series::{build_c, build_r, Method};
use domino_towers::{BlockCounts, Counts, Domino, TowerClass, TowerShape};

/// Every tower with at most seven dominoes.
fn towers() -> &'static [TowerShape] {
    static ALL: OnceLock<Vec<TowerShape>> = OnceLock::new();
    ALL.get_or_init(|| {
        (1..=7)
            .flat_map(|n| enumerate(&EnumerationRequest::new(n, BaseSelector::All)).unwrap())
            .collect()
    })
}

fn any_tower() -> impl Strategy<Value = TowerShape> {
    (0..towers().len()).prop_map(|i| towers()[i].clone())
}

fn convex_tower() -> impl Strategy<Value = TowerShape> {
    any_tower().prop_filter("convex", TowerShape::is_convex)
}

proptest! {
    #[test]
    fn towers_are_valid_and_buildable(shape in any_tower()) {
        prop_assert!(validate(shape.dominoes()));
        prop_assert!(buildable_by_placement(shape.dominoes()));
    }

    #[test]
    fn canonical_form_ignores_translation(shape in any_tower(), dx in -20i32..20, dy in -20i32..20) {
        let moved: Vec<Domino> = shape.dominoes().iter().map(|d| Domino::new(d.x + dx, d.y + dy)).collect();
        prop_assert_eq!(TowerShape::new(moved).unwrap(), shape);
    }

    #[test]
    fn mirroring_is_an_involution_that_swaps_skew(shape in any_tower()) {
        let mirrored = shape.mirror();
        prop_assert_eq!(mirrored.mirror(), shape.clone());
        let expected = match shape.classify() {
            TowerClass::RightSkewed => TowerClass::LeftSkewed,
            TowerClass::LeftSkewed => TowerClass::RightSkewed,
            other => other,
        };
        prop_assert_eq!(mirrored.classify(), expected);
    }

    #[test]
    fn dissection_round_trips(shape in convex_tower()) {
        let cut = shape.dissect().unwrap();
        prop_assert_eq!(cut.upper.base_b(), shape.max_row_b());
        if let Some(lower) = &cut.lower {
            prop_assert!(lower.is_supporting());
            prop_assert!(lower.max_row_b() < shape.max_row_b());
        }
        prop_assert_eq!(cut.recombine().unwrap(), shape);
    }

    #[test]
    fn block_counts_reduce_at_two(b in 0u32..30, n in 0u32..30) {
        let mut base = Counts::new();
        let mut general = BlockCounts::new(2).unwrap();
        prop_assert_eq!(base.g(b, n), general.g(b, n));
        prop_assert_eq!(base.h(b, n), general.h(b, n));
        prop_assert_eq!(base.r(b, n), general.r(b, n));
    }

    #[test]
    fn convex_counts_match_series(b in 1u32..10, n in 0usize..60) {
        let series = build_c(b, n).unwrap();
        let want = BigInt::from(Counts::new().c(b, n as u32));
        prop_assert_eq!(series.coeff(n), Some(&want));
    }

    #[test]
    fn convex_towers_are_a_subset(n in 1u32..40) {
        let mut counts = Counts::new();
        let convex: BigUint = (1..=n).map(|b| counts.c(b, n)).sum();
        prop_assert!(convex <= BigUint::from(4u32).pow(n - 1));
    }

    #[test]
    fn truncation_commutes_with_building(b in 1u32..7, low in 0usize..25, extra in 0usize..25) {
        let high = build_r(b, low + extra, Method::ClosedForm).unwrap();
        prop_assert_eq!(high.truncate(low), build_r(b, low, Method::Functional).unwrap());
    }

    #[test]
    fn decimals_round_trip(int in 0u64..1000, frac in 0u64..100_000, negative: bool) {
        let text = format!("{}{int}.{frac:05}", if negative && (int, frac) != (0, 0) { "-" } else { "" });
        prop_assert_eq!(to_decimal(&parse_decimal(&text).unwrap(), 5), text);
    }

    #[test]
    fn bfiles_round_trip(offset in 0i64..5, values in prop::collection::vec(any::<i64>(), 1..40)) {
        let text: String = values.iter().enumerate().map(|(i, v)| format!("{} {v}\r\n", offset + i as i64)).collect();
        let seq = parse_bfile("A000001", &text).unwrap();
        prop_assert_eq!(seq.offset, offset);
        prop_assert_eq!(seq.values, values.into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
