//! Property-based invariants: parse/format round trips, table axioms on
//! catalog groups, and composition-series invariance.

use proptest::prelude::*;
use sigma_groups::{
    builtin_catalog, enumerate_subgroups, make_family, parse_partition, realize_entry,
    CatalogEntry, NamedFamilySpec, Permutation, SigmaPartition,
};

proptest! {
    #[test]
    fn permutation_text_round_trips(ranks in prop::collection::vec(0u32..1000, 1..12)) {
        let mut order: Vec<u16> = (0..ranks.len() as u16).collect();
        order.sort_by_key(|&i| (ranks[i as usize], i));
        let p = Permutation::from_images(order).unwrap();
        let text = p.to_string();
        let back = sigma_groups::parse_permutation(&text, p.degree()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn partition_text_round_trips(assign in prop::collection::vec(0usize..4, 0..6)) {
        let primes = [2u64, 3, 5, 7, 11, 13];
        let mut classes: Vec<Vec<u64>> = Vec::new();
        for (i, &class) in assign.iter().enumerate() {
            while classes.len() <= class {
                classes.push(Vec::new());
            }
            classes[class].push(primes[i]);
        }
        classes.retain(|c| !c.is_empty());
        if classes.is_empty() {
            return Ok(());
        }
        let part = SigmaPartition::from_classes(classes).unwrap();
        let back = parse_partition(part.text()).unwrap();
        for &p in &primes {
            for &q in &primes {
                prop_assert_eq!(
                    part.lookup(p) == part.lookup(q),
                    back.lookup(p) == back.lookup(q)
                );
            }
        }
        // Unlisted primes stay in their own singleton classes.
        prop_assert_eq!(back.lookup(17), part.lookup(17));
        prop_assert!(back.lookup(17) != back.lookup(19));
    }

    #[test]
    fn multiplication_is_associative_on_sampled_triples(
        pick in 0usize..4,
        a in 0u16..24,
        b in 0u16..24,
        c in 0u16..24,
    ) {
        let specs = [
            NamedFamilySpec::Symmetric(4),
            NamedFamilySpec::Quaternion,
            NamedFamilySpec::Dihedral(6),
            NamedFamilySpec::ModularP { p: 2, m: 4 },
        ];
        let g = make_family(&specs[pick]).unwrap();
        let n = g.order() as u16;
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(g.inv(a), a), g.mul(a, g.inv(a)));
    }
}

#[test]
fn cayley_rows_and_columns_are_permutations() {
    for spec in [
        NamedFamilySpec::Symmetric(4),
        NamedFamilySpec::Alternating(5),
        NamedFamilySpec::Cyclic(30),
    ] {
        let g = make_family(&spec).unwrap();
        let n = g.order() as u16;
        for a in 0..n {
            let mut row: Vec<u16> = (0..n).map(|b| g.mul(a, b)).collect();
            let mut col: Vec<u16> = (0..n).map(|b| g.mul(b, a)).collect();
            row.sort_unstable();
            col.sort_unstable();
            let all: Vec<u16> = (0..n).collect();
            assert_eq!(row, all);
            assert_eq!(col, all);
        }
    }
}

#[test]
fn composition_factor_multisets_ignore_series_tiebreaks() {
    for entry in builtin_catalog(60) {
        let g = realize_entry(&entry).unwrap();
        let lat = enumerate_subgroups(g).unwrap();
        let mut first = lat.chief_series_with_tiebreak(false).factor_orders;
        let mut last = lat.chief_series_with_tiebreak(true).factor_orders;
        first.sort_unstable();
        last.sort_unstable();
        assert_eq!(first, last, "{}", entry.name);
    }
}

#[test]
fn catalog_entries_round_trip_through_json() {
    for entry in builtin_catalog(100) {
        let line = serde_json::to_string(&entry).unwrap();
        let back: CatalogEntry = serde_json::from_str(&line).unwrap();
        assert_eq!(back.name, entry.name);
        assert_eq!(back.degree, entry.degree);
        assert_eq!(back.generators, entry.generators);
        assert_eq!(back.expected_order, entry.expected_order);
        let g = realize_entry(&back).unwrap();
        assert_eq!(Some(g.order()), entry.expected_order);
    }
}
