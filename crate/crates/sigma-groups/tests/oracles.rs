//! Brute-force oracles built on raw table multiplication only. Everything
//! here (closure, normality, cores, products, depth chains) is written
//! from scratch so it cannot share a bug with the lattice or reachability
//! code it cross-checks; the pinned constants in the unit tests were first
//! derived from these oracles.

use sigma_groups::{
    classify_p_group, direct_product, enumerate_subgroups, has_sylow_tower, is_nilpotent,
    is_soluble, make_family, product_set, sigma_bases, CayleyGroup, NamedFamilySpec, PGroupClass,
    SigmaPartition, SubnormalityContext,
};
use std::collections::BTreeSet;

fn identity(g: &CayleyGroup) -> u16 {
    let n = g.order() as u16;
    (0..n)
        .find(|&e| (0..n).all(|a| g.mul(e, a) == a && g.mul(a, e) == a))
        .expect("identity element")
}

fn inv(g: &CayleyGroup, id: u16, a: u16) -> u16 {
    let n = g.order() as u16;
    (0..n).find(|&x| g.mul(a, x) == id).expect("inverse")
}

fn closure(g: &CayleyGroup, id: u16, seed: &[u16]) -> Vec<u16> {
    let n = g.order() as usize;
    let mut inside = vec![false; n];
    inside[id as usize] = true;
    let mut members = vec![id];
    for &s in seed {
        if !inside[s as usize] {
            inside[s as usize] = true;
            members.push(s);
        }
    }
    loop {
        let mut grew = false;
        for i in 0..members.len() {
            for j in 0..members.len() {
                let p = g.mul(members[i], members[j]);
                if !inside[p as usize] {
                    inside[p as usize] = true;
                    members.push(p);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    members.sort_unstable();
    members
}

/// Every subgroup arising as the closure of at most three elements.
/// Complete whenever every subgroup is 3-generated, which holds for all
/// groups used here (none contains an elementary abelian 2-group of
/// order 16).
fn all_subgroups(g: &CayleyGroup) -> Vec<Vec<u16>> {
    let n = g.order() as u16;
    let id = identity(g);
    let mut seen: BTreeSet<Vec<u16>> = BTreeSet::new();
    seen.insert(vec![id]);
    for a in 0..n {
        seen.insert(closure(g, id, &[a]));
        for b in a + 1..n {
            seen.insert(closure(g, id, &[a, b]));
            for c in b + 1..n {
                seen.insert(closure(g, id, &[a, b, c]));
            }
        }
    }
    let mut out: Vec<Vec<u16>> = seen.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

fn conjugate(g: &CayleyGroup, id: u16, set: &[u16], by: u16) -> Vec<u16> {
    let byi = inv(g, id, by);
    let mut out: Vec<u16> = set.iter().map(|&x| g.mul(g.mul(by, x), byi)).collect();
    out.sort_unstable();
    out
}

fn is_normal(g: &CayleyGroup, id: u16, h: &[u16], k: &[u16]) -> bool {
    k.iter().all(|&x| conjugate(g, id, h, x) == h)
}

fn product(g: &CayleyGroup, a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut out: BTreeSet<u16> = BTreeSet::new();
    for &x in a {
        for &y in b {
            out.insert(g.mul(x, y));
        }
    }
    out.into_iter().collect()
}

fn intersect(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().filter(|x| b.contains(x)).copied().collect()
}

fn is_subset(a: &[u16], b: &[u16]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// Largest subgroup of h normal in k: the intersection of the k-conjugates.
fn core(g: &CayleyGroup, id: u16, k: &[u16], h: &[u16]) -> Vec<u16> {
    let mut c = h.to_vec();
    for &x in k {
        c = intersect(&c, &conjugate(g, id, h, x));
        if c.len() == 1 {
            break;
        }
    }
    c
}

fn is_prime_power(mut n: u64) -> bool {
    if n < 2 {
        return n == 1;
    }
    let p = (2..).find(|p| n % p == 0).unwrap();
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn engine_nodes(lat: &sigma_groups::SubgroupLattice) -> BTreeSet<Vec<u16>> {
    (0..lat.node_count() as u32)
        .map(|i| {
            let mut v: Vec<u16> = lat.node(i).iter().collect();
            v.sort_unstable();
            v
        })
        .collect()
}

#[test]
fn subgroup_enumeration_matches_three_generator_closure() {
    for (spec, expected) in [
        (NamedFamilySpec::Symmetric(4), Some(30)),
        (NamedFamilySpec::Quaternion, Some(6)),
        (NamedFamilySpec::Alternating(4), Some(10)),
        (NamedFamilySpec::Dihedral(6), None),
        (NamedFamilySpec::Cyclic(12), None),
    ] {
        let g = make_family(&spec).unwrap();
        let oracle: BTreeSet<Vec<u16>> = all_subgroups(&g).into_iter().collect();
        if let Some(count) = expected {
            assert_eq!(oracle.len(), count, "{:?}", spec);
        }
        let lat = enumerate_subgroups(make_family(&spec).unwrap()).unwrap();
        assert_eq!(engine_nodes(&lat), oracle, "{:?}", spec);
    }
}

#[test]
fn product_sizes_obey_the_counting_law_and_match_the_engine() {
    let g = make_family(&NamedFamilySpec::Symmetric(4)).unwrap();
    let subs = all_subgroups(&g);
    let lat = enumerate_subgroups(make_family(&NamedFamilySpec::Symmetric(4)).unwrap()).unwrap();
    for a in &subs {
        for b in &subs {
            let ab = product(&g, a, b);
            let meet = intersect(a, b);
            assert_eq!(ab.len() * meet.len(), a.len() * b.len());
            let ia = lat
                .index_of(&lat.group().set_from_indices(a.iter().copied()))
                .unwrap();
            let ib = lat
                .index_of(&lat.group().set_from_indices(b.iter().copied()))
                .unwrap();
            let engine_ab = product_set(lat.group(), lat.node(ia), lat.node(ib)).unwrap();
            let mut engine: Vec<u16> = engine_ab.iter().collect();
            engine.sort_unstable();
            assert_eq!(engine, ab);
        }
    }
}

/// Iterated normal closure, written directly on the table.
fn subnormal_by_descent(g: &CayleyGroup, id: u16, h: &[u16], full: &[u16]) -> bool {
    let mut k = full.to_vec();
    loop {
        let mut seeds = Vec::new();
        for &x in &k {
            seeds.extend(conjugate(g, id, h, x));
        }
        let next = closure(g, id, &seeds);
        if next == k {
            return k == h;
        }
        k = next;
    }
}

#[test]
fn transposition_is_not_subnormal_in_s4() {
    let g = make_family(&NamedFamilySpec::Symmetric(4)).unwrap();
    let id = identity(&g);
    let full: Vec<u16> = (0..g.order() as u16).collect();
    let subs = all_subgroups(&g);
    // Transpositions move exactly two points; double transpositions move four.
    let two_cycles: Vec<&Vec<u16>> = subs
        .iter()
        .filter(|s| s.len() == 2)
        .filter(|s| {
            let x = s.iter().find(|&&e| e != id).unwrap();
            let moved = g
                .perm(*x)
                .images()
                .iter()
                .enumerate()
                .filter(|&(i, &img)| img != i as u16)
                .count();
            moved == 2
        })
        .collect();
    assert_eq!(two_cycles.len(), 6);
    for t in &two_cycles {
        assert!(!subnormal_by_descent(&g, id, t, &full));
    }
    let double: Vec<&Vec<u16>> = subs
        .iter()
        .filter(|s| s.len() == 2)
        .filter(|s| !two_cycles.contains(s))
        .collect();
    assert_eq!(double.len(), 3);
    for d in &double {
        assert!(subnormal_by_descent(&g, id, d, &full));
    }
}

/// Exact-depth sets by repeated maximal-subgroup steps, maximality checked
/// by scanning for strictly intermediate subgroups.
fn depth_sets(subs: &[Vec<u16>], full_idx: usize, levels: usize) -> Vec<Vec<usize>> {
    let maximal_in = |h: usize, k: usize| {
        h != k
            && is_subset(&subs[h], &subs[k])
            && !(0..subs.len()).any(|l| {
                l != h
                    && l != k
                    && subs[l].len() > subs[h].len()
                    && subs[l].len() < subs[k].len()
                    && is_subset(&subs[h], &subs[l])
                    && is_subset(&subs[l], &subs[k])
            })
    };
    let mut out = vec![vec![full_idx]];
    for _ in 0..levels {
        let prev = out.last().unwrap();
        let mut next: Vec<usize> = (0..subs.len())
            .filter(|&h| prev.iter().any(|&k| maximal_in(h, k)))
            .collect();
        next.dedup();
        out.push(next);
    }
    out
}

#[test]
fn depth_four_is_where_s4_turns_reachable_under_the_minimal_partition() {
    let g = make_family(&NamedFamilySpec::Symmetric(4)).unwrap();
    let id = identity(&g);
    let subs = all_subgroups(&g);
    let full_idx = subs.iter().position(|s| s.len() == 24).unwrap();

    // Reachability from the top, one table-level edge test per pair: a step
    // counts when the smaller is normal in the larger or the larger's order
    // over the core is a prime power.
    let edge = |h: usize, k: usize| {
        if h == k || !is_subset(&subs[h], &subs[k]) {
            return false;
        }
        if is_normal(&g, id, &subs[h], &subs[k]) {
            return true;
        }
        let c = core(&g, id, &subs[k], &subs[h]);
        is_prime_power((subs[k].len() / c.len()) as u64)
    };
    let mut reach = vec![false; subs.len()];
    reach[full_idx] = true;
    loop {
        let mut grew = false;
        for h in 0..subs.len() {
            if !reach[h] && (0..subs.len()).any(|k| reach[k] && edge(h, k)) {
                reach[h] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    let levels = depth_sets(&subs, full_idx, 4);
    let all_reached = |level: &[usize]| level.iter().all(|&i| reach[i]);
    assert!(!all_reached(&levels[1]));
    assert!(!all_reached(&levels[2]));
    assert!(!all_reached(&levels[3]));
    assert!(all_reached(&levels[4]));

    let minimal = SigmaPartition::minimal();
    let lat = enumerate_subgroups(make_family(&NamedFamilySpec::Symmetric(4)).unwrap()).unwrap();
    let ctx = SubnormalityContext::new(&lat, &minimal);
    assert_eq!(ctx.m_sigma(), 4);
    for (i, sub) in subs.iter().enumerate() {
        let node = lat
            .index_of(&lat.group().set_from_indices(sub.iter().copied()))
            .unwrap();
        assert_eq!(ctx.is_sigma_subnormal(node), reach[i]);
    }
}

#[test]
fn s4_has_no_sylow_tower_because_no_sylow_is_normal() {
    let g = make_family(&NamedFamilySpec::Symmetric(4)).unwrap();
    let id = identity(&g);
    let full: Vec<u16> = (0..24).collect();
    let subs = all_subgroups(&g);
    // A tower's first term equals a normal Hall subgroup, which under the
    // per-prime partition means a normal Sylow subgroup.
    let normal_sylow = subs
        .iter()
        .any(|s| (s.len() == 8 || s.len() == 3) && is_normal(&g, id, s, &full));
    assert!(!normal_sylow);
    let lat = enumerate_subgroups(make_family(&NamedFamilySpec::Symmetric(4)).unwrap()).unwrap();
    assert!(!has_sylow_tower(&lat));
}

#[test]
fn chief_factor_widths_pin_the_rank_of_s4() {
    let g = make_family(&NamedFamilySpec::Symmetric(4)).unwrap();
    let id = identity(&g);
    let full: Vec<u16> = (0..24).collect();
    let subs = all_subgroups(&g);
    let normals: Vec<&Vec<u16>> = subs.iter().filter(|s| is_normal(&g, id, s, &full)).collect();
    assert_eq!(normals.len(), 4);

    // Greedy minimal steps through normal subgroups give a chief series.
    let mut factors = Vec::new();
    let mut cur = normals[0].clone();
    while cur.len() < 24 {
        let next = normals
            .iter()
            .filter(|n| n.len() > cur.len() && is_subset(&cur, n))
            .min_by_key(|n| n.len())
            .unwrap();
        factors.push((next.len() / cur.len()) as u64);
        cur = next.to_vec();
    }
    assert_eq!(factors, vec![4, 3, 2]);
    let width = |mut f: u64| {
        let p = (2..).find(|p| f % p == 0).unwrap();
        let mut k = 0;
        while f % p == 0 {
            f /= p;
            k += 1;
        }
        k
    };
    assert_eq!(factors.iter().map(|&f| width(f)).max(), Some(2));

    let lat = enumerate_subgroups(make_family(&NamedFamilySpec::Symmetric(4)).unwrap()).unwrap();
    assert_eq!(lat.rank().unwrap(), 2);
    let mut engine_factors = lat.chief_series().factor_orders;
    engine_factors.sort_unstable();
    let mut oracle_factors = factors;
    oracle_factors.sort_unstable();
    assert_eq!(engine_factors, oracle_factors);
}

#[test]
fn s3_carries_exactly_three_permutable_hall_systems() {
    let g = make_family(&NamedFamilySpec::Symmetric(3)).unwrap();
    let subs = all_subgroups(&g);
    let twos: Vec<&Vec<u16>> = subs.iter().filter(|s| s.len() == 2).collect();
    let threes: Vec<&Vec<u16>> = subs.iter().filter(|s| s.len() == 3).collect();
    assert_eq!((twos.len(), threes.len()), (3, 1));
    let mut count = 0;
    for a in &twos {
        for b in &threes {
            if product(&g, a, b) == product(&g, b, a) {
                count += 1;
            }
        }
    }
    assert_eq!(count, 3);

    let lat = enumerate_subgroups(make_family(&NamedFamilySpec::Symmetric(3)).unwrap()).unwrap();
    assert_eq!(sigma_bases(&lat, &SigmaPartition::minimal()).len(), 3);
}

#[test]
fn order_profiles_pin_the_p_group_classifications() {
    // Order 8, one involution, no element of order 8: the quaternion group.
    let q8 = make_family(&NamedFamilySpec::Quaternion).unwrap();
    let id = identity(&q8);
    let order_of = |g: &CayleyGroup, a: u16| {
        let mut x = a;
        let mut k = 1u64;
        while x != id {
            x = g.mul(x, a);
            k += 1;
        }
        k
    };
    let involutions = (0..8).filter(|&a| order_of(&q8, a) == 2).count();
    let max_order = (0..8).map(|a| order_of(&q8, a)).max().unwrap();
    assert_eq!((involutions, max_order), (1, 4));
    assert_eq!(classify_p_group(&q8).unwrap(), PGroupClass::Quaternion);

    // Order 16 with a, b satisfying a^8 = b^2 = 1, b a b^-1 = a^5, b outside
    // the cyclic part: the modular presentation.
    let m = make_family(&NamedFamilySpec::ModularP { p: 2, m: 4 }).unwrap();
    let mid = identity(&m);
    let order_of_m = |a: u16| {
        let mut x = a;
        let mut k = 1u64;
        while x != mid {
            x = m.mul(x, a);
            k += 1;
        }
        k
    };
    let mut presented = false;
    for a in 0..16 {
        if order_of_m(a) != 8 {
            continue;
        }
        let a_closure = closure(&m, mid, &[a]);
        let a5 = {
            let mut x = a;
            for _ in 0..4 {
                x = m.mul(x, a);
            }
            x
        };
        for b in 0..16 {
            if order_of_m(b) == 2 && !a_closure.contains(&b) {
                let conj = m.mul(m.mul(b, a), inv(&m, mid, b));
                if conj == a5 {
                    presented = true;
                }
            }
        }
    }
    assert!(presented);
    assert!((0..16).any(|x| {
        (0..16).any(|y| m.mul(x, y) != m.mul(y, x))
    }));
    assert_eq!(classify_p_group(&m).unwrap(), PGroupClass::Modular);
}

#[test]
fn unique_sylow_counts_decide_nilpotency() {
    let q8c3 = direct_product(
        &make_family(&NamedFamilySpec::Quaternion).unwrap(),
        &make_family(&NamedFamilySpec::Cyclic(3)).unwrap(),
    )
    .unwrap();
    let subs = all_subgroups(&q8c3);
    let sylow8 = subs.iter().filter(|s| s.len() == 8).count();
    let sylow3 = subs.iter().filter(|s| s.len() == 3).count();
    assert_eq!((sylow8, sylow3), (1, 1));
    assert!(is_nilpotent(&q8c3).unwrap());

    let s4 = make_family(&NamedFamilySpec::Symmetric(4)).unwrap();
    let s4_subs = all_subgroups(&s4);
    assert_eq!(s4_subs.iter().filter(|s| s.len() == 8).count(), 3);
    assert!(!is_nilpotent(&s4).unwrap());
}

#[test]
fn a5_is_perfect_hence_insoluble() {
    let g = make_family(&NamedFamilySpec::Alternating(5)).unwrap();
    let id = identity(&g);
    let n = g.order() as u16;
    let mut commutators = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let c = g.mul(
                g.mul(g.mul(inv(&g, id, x), inv(&g, id, y)), x),
                y,
            );
            commutators.push(c);
        }
    }
    let derived = closure(&g, id, &commutators);
    assert_eq!(derived.len(), 60);
    assert!(!is_soluble(&g));
}
