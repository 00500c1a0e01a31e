//! The verification harness end to end: every configured (p, n) row must
//! rebuild its witness, run the exact pipeline, and match the claimed
//! maximum.

use repdim::catalog::{default_nmax, verification_table};

#[test]
fn every_configured_row_passes() {
    for p in [2u64, 3, 5, 7] {
        let nmax = default_nmax(p).expect("configured prime");
        let rows = verification_table(p, nmax, 0).expect("table runs");
        assert_eq!(rows.len(), nmax as usize);
        for row in &rows {
            assert!(
                row.pass,
                "p={} n={} claimed={} computed={} error={:?}",
                row.p, row.n, row.claimed, row.computed, row.error
            );
            assert!(row.error.is_none());
            assert!(row.computed <= row.bounds.eq2);
            assert!(row.bounds.eq2 <= row.bounds.fp);
        }
    }
}

#[test]
fn headline_rows_match_the_known_maxima() {
    let rows2 = verification_table(2, 7, 0).expect("table runs");
    let by_n = |n: u32| rows2.iter().find(|r| r.n == n).expect("row exists");
    assert_eq!(by_n(5).computed, 5);
    assert_eq!(by_n(6).computed, 8);
    assert_eq!(by_n(7).computed, 10);
    assert_eq!(by_n(7).witness, "exceptional128");

    let rows3 = verification_table(3, 5, 0).expect("table runs");
    let by_n = |n: u32| rows3.iter().find(|r| r.n == n).expect("row exists");
    assert_eq!(by_n(4).computed, 4);
    assert_eq!(by_n(4).witness, "product(cyclic(3),heisenberg(3,2,1))");
    assert_eq!(by_n(5).computed, 9);

    let rows5 = verification_table(5, 4, 0).expect("table runs");
    assert_eq!(rows5.last().expect("rows").computed, 6);

    let rows7 = verification_table(7, 3, 0).expect("table runs");
    assert_eq!(rows7.last().expect("rows").computed, 7);
}

#[test]
fn out_of_range_requests_are_rejected() {
    assert!(verification_table(2, 8, 0).is_err());
    assert!(verification_table(11, 2, 0).is_err());
    assert!(verification_table(4, 2, 0).is_err());
}

#[test]
fn dimension_formula_holds_at_order_512() {
    // dim(K) * sqrt|V| beyond the mandated instances: the shape used for
    // odd exponents >= 9 at p = 2, here with |V| = 64 and dim(K) = 3
    let g = repdim::catalog::heisenberg_group(2, 6, 3, 0).expect("within caps");
    assert_eq!(g.order(), 512);
    let table = repdim::reptheory::CharacterTable::compute(&g).expect("table");
    let census = table.degree_census();
    assert_eq!(census.get(&1), Some(&64));
    assert_eq!(census.get(&8), Some(&7));
    let result = repdim::rdim::min_faithful_dim(&table).expect("solver");
    assert_eq!(result.value, 24);
    assert_eq!(result.witness_degrees, vec![8, 8, 8]);
}
