use jacobi_core::enums::{jacobi, split_jacobi, weight_enumerator, BlockPartition};
use jacobi_core::gf2::{d_plus, BinaryCode, GfVector};
use jacobi_core::mpoly::{swap_xy, MPoly, Var};
use jacobi_core::xform::{macwilliams, split_macwilliams};
use proptest::prelude::*;

fn code_strategy(max_n: usize) -> impl Strategy<Value = BinaryCode> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<u64>(), 0..=n)
            .prop_map(move |rows| BinaryCode::new(n, rows.into_iter().map(|w| GfVector::from_u64(n, w)).collect()).unwrap())
    })
}

fn all_sets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
}

/// Keeps the terms of a genus-2 polynomial that only use labels `(a, 0)` and relabels them `(a)`.
fn restrict_last_row(p: &MPoly) -> MPoly {
    let kept = p
        .terms()
        .filter(|(m, _)| m.pairs().iter().all(|(v, _)| v.label & 1 == 0))
        .map(|(m, c)| (m.clone(), c.clone()));
    MPoly::from_terms(kept).rename(|v| Var::new(v.kind, v.block, v.label >> 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn complement_exchanges_families(code in code_strategy(8), g in 1usize..=2) {
        let n = code.len();
        for set in all_sets(n) {
            let rest: Vec<usize> = (1..=n).filter(|i| !set.contains(i)).collect();
            prop_assert_eq!(jacobi(&code, &rest, g).unwrap(), swap_xy(&jacobi(&code, &set, g).unwrap()));
        }
    }

    #[test]
    fn macwilliams_on_every_set(code in code_strategy(6), g in 1usize..=2) {
        let dual = code.dual();
        for set in all_sets(code.len()) {
            let left = macwilliams(&jacobi(&code, &set, g).unwrap(), g, code.dim()).unwrap();
            prop_assert_eq!(left, jacobi(&dual, &set, g).unwrap());
        }
    }

    #[test]
    fn split_macwilliams_two_blocks(code in code_strategy(7).prop_filter("two blocks", |c| c.len() >= 2), cut in 1usize..7, mask in any::<u8>()) {
        let n = code.len();
        let cut = 1 + cut % (n - 1);
        let blocks = vec![(1..=cut).collect::<Vec<_>>(), (cut + 1..=n).collect()];
        let sets = blocks.iter().map(|b| b.iter().copied().filter(|i| mask >> (i - 1) & 1 == 1).collect()).collect();
        let part = BlockPartition::new(n, blocks, sets).unwrap();
        let left = split_macwilliams(&split_jacobi(&code, &part, 2).unwrap(), 2, 2, code.dim()).unwrap();
        prop_assert_eq!(left, split_jacobi(&code.dual(), &part, 2).unwrap());
    }

    #[test]
    fn value_at_all_ones_counts_tuples(code in code_strategy(8), g in 1usize..=2) {
        let w = weight_enumerator(&code, g).unwrap();
        let total: jacobi_core::Rational = w.terms().map(|(_, c)| c.clone()).sum();
        prop_assert_eq!(total, jacobi_core::Rational::from_integer((1u64 << (g * code.dim())).into()));
    }
}

#[test]
fn genus_two_restricts_to_genus_one() {
    let d8 = d_plus(8).unwrap();
    for set in [vec![], vec![1], vec![2, 5, 7], (1..=8).collect()] {
        let two = jacobi(&d8, &set, 2).unwrap();
        assert_eq!(restrict_last_row(&two), jacobi(&d8, &set, 1).unwrap(), "T = {set:?}");
    }
}

#[test]
fn split_with_one_block_is_jacobi() {
    let d8 = d_plus(8).unwrap();
    let part = BlockPartition::single(8, &[1, 4]).unwrap();
    assert_eq!(split_jacobi(&d8, &part, 2).unwrap(), jacobi(&d8, &[1, 4], 2).unwrap());
}
