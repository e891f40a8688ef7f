use jacobi_core::invar::{check_invariance, genus_group, molien, molien_bigraded, span_dimension};
use jacobi_core::tables::{genus2_basis_tables, j8_basis, Direct, SearchOptions};
use num_traits::Zero;

#[test]
fn genus_two_group_is_closed() {
    let g = genus_group(2).unwrap();
    assert_eq!(g.order(), 92160);
    assert!(g.spot_check(200, 7));
}

#[test]
fn genus_two_series_lives_in_degrees_divisible_by_eight() {
    let s = molien(&genus_group(2).unwrap(), 24).unwrap();
    for d in 0..=24 {
        if d % 8 != 0 {
            assert!(s.at(d).is_zero(), "t^{d}");
        }
    }
    // the bigraded series refines the plain one
    let b = molien_bigraded(&genus_group(2).unwrap(), 16).unwrap();
    let row: num_bigint::BigInt = (0..=16).map(|t| b[t][16 - t].clone()).sum();
    assert_eq!(&row, s.at(16));
}

#[test]
fn degree_eight_basis_is_invariant_in_genus_two() {
    let basis = j8_basis(&Direct, 2).unwrap();
    for (set, p) in &basis {
        assert!(check_invariance(p, 2).unwrap().invariant, "T = {set:?}");
    }
    let polys: Vec<_> = basis.into_iter().map(|(_, p)| p).collect();
    assert_eq!(span_dimension(&polys).rank, 10);
}

#[test]
fn degree_sixteen_counts() {
    let tables = genus2_basis_tables(&Direct, 16, &SearchOptions::default()).unwrap();
    let r16 = &tables[1];
    assert!(r16.certified());
    assert_eq!(r16.totals(), vec![1, 1, 3, 3, 5, 5, 6, 6, 8, 6, 6, 5, 5, 3, 3, 1, 1]);
    assert_eq!(r16.total, 68);
    assert!(r16.rows.iter().all(|r| r.sources.iter().map(|s| s.1).sum::<usize>() == r.total));
}
