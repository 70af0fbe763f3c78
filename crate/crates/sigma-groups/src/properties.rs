//! Structural property suites swept over the catalog. Each check counts
//! the instances it inspected and the violations it found; a passing sweep
//! has zero violations everywhere. Sampling is deterministic (ascending
//! node ids with a fixed stride), so counts are reproducible.

use crate::analysis::{CaseAnalysis, CheckReport};
use crate::bitset::BitSet;
use crate::group::{
    classify_p_group, factorize, generated_subgroup, is_nilpotent, quotient_group, CayleyGroup,
    PGroupClass,
};
use crate::lattice::{enumerate_subgroups, is_soluble, SubgroupLattice};
use crate::sigma::{
    complete_hall_sets, hall_subgroups, is_sigma_dispersive, is_sigma_nilpotent, is_sigma_soluble,
    sigma_bases, verify_dispersive_witness, ClassId, SigmaPartition,
};
use crate::subnormal::{is_irreducible_pair, is_subnormal, verify_subnormal_witness};
use crate::Error;
use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

const SAMPLE_CAP: usize = 6;
const HALL_SET_CAP: usize = 40;
const BASIS_CAP: usize = 12;
const QUOTIENT_CAP: usize = 3;
const SUBLATTICE_CAP: usize = 5;

struct Check {
    name: &'static str,
    instances: u64,
    violations: u64,
    detail: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            instances: 0,
            violations: 0,
            detail: None,
        }
    }

    fn note(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            if self.detail.is_none() {
                self.detail = Some(detail());
            }
        }
    }

    fn into_report(self) -> CheckReport {
        CheckReport {
            name: self.name.into(),
            instances: self.instances,
            violations: self.violations,
            detail: self.detail,
        }
    }
}

/// Up to cap node ids out of the set, spread evenly, ascending.
fn sample_nodes(set: &BitSet, cap: usize) -> Vec<u32> {
    let all: Vec<u32> = set.iter().map(|i| i as u32).collect();
    if all.len() <= cap {
        return all;
    }
    let stride = all.len().div_ceil(cap);
    all.into_iter().step_by(stride).collect()
}

/// A quotient of the parent by one normal subgroup, with its own lattice
/// and the element projection map.
pub struct QuotientStudy {
    pub node: u32,
    pub lat: SubgroupLattice,
    pub proj: Vec<u16>,
}

/// Partition-independent data for one group, shared by every partition's
/// suite run: plain subnormality per node, sampled quotients, the Frattini
/// quotient, and a cache of subgroup lattices keyed by node.
pub struct GroupStudy {
    pub lat: SubgroupLattice,
    pub soluble: bool,
    pub nilpotent: bool,
    pub subnormal_mask: BitSet,
    pub quotients: Vec<QuotientStudy>,
    pub frattini_lat: Option<SubgroupLattice>,
    sub_lattices: RefCell<HashMap<u32, SubgroupLattice>>,
}

impl GroupStudy {
    pub fn new(lat: SubgroupLattice) -> Result<Self, Error> {
        let g = lat.group();
        let soluble = is_soluble(g);
        let nilpotent = is_nilpotent(g)?;
        let mut subnormal_mask = BitSet::new(lat.node_count());
        for i in 0..lat.node_count() as u32 {
            if is_subnormal(g, lat.node(i))? {
                subnormal_mask.insert(i as usize);
            }
        }
        let mut quotients = Vec::new();
        for i in lat.normal_mask().iter() {
            if quotients.len() == QUOTIENT_CAP {
                break;
            }
            let i = i as u32;
            if lat.node_order(i) == 1 {
                continue;
            }
            let (q, proj) = quotient_group(g, lat.node(i))?;
            quotients.push(QuotientStudy {
                node: i,
                lat: enumerate_subgroups(q)?,
                proj,
            });
        }
        let phi = lat.frattini_subgroup();
        let frattini_lat = if phi.order() == 1 {
            None
        } else {
            let (q, _) = quotient_group(g, &phi)?;
            Some(enumerate_subgroups(q)?)
        };
        Ok(GroupStudy {
            lat,
            soluble,
            nilpotent,
            subnormal_mask,
            quotients,
            frattini_lat,
            sub_lattices: RefCell::new(HashMap::new()),
        })
    }

    /// Lattice of the subgroup at a node, built once and cached.
    fn sub_lattice<T>(&self, node: u32, f: impl FnOnce(&SubgroupLattice) -> T) -> Result<T, Error> {
        let mut cache = self.sub_lattices.borrow_mut();
        if !cache.contains_key(&node) {
            let h = self.lat.node_as_group(node)?;
            cache.insert(node, enumerate_subgroups(h)?);
        }
        Ok(f(&cache[&node]))
    }
}

fn orderings_of(classes: &[ClassId]) -> Vec<Vec<ClassId>> {
    if classes.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &c) in classes.iter().enumerate() {
        let mut rest = classes.to_vec();
        rest.remove(i);
        for mut tail in orderings_of(&rest) {
            tail.insert(0, c);
            out.push(tail);
        }
    }
    out
}

fn pi_part(part: &SigmaPartition, n: u64, pi: &BTreeSet<ClassId>) -> u64 {
    pi.iter().map(|&c| part.part_of(n, c)).product()
}

fn nonempty_subsets(classes: &[ClassId]) -> Vec<BTreeSet<ClassId>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << classes.len()) {
        let set: BTreeSet<ClassId> = classes
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| c)
            .collect();
        out.push(set);
    }
    out
}

/// The partition-dependent suite for one case.
pub fn partition_suite(
    study: &GroupStudy,
    case: &CaseAnalysis,
) -> Result<Vec<CheckReport>, Error> {
    let lat = &study.lat;
    let g = lat.group();
    let part = case.part;
    let classes: Vec<ClassId> = part.sigma_of(g.order()).into_iter().collect();
    let mut reports = Vec::new();

    // Hall member arithmetic: order times index is |G|, order supported on
    // the class and index off it.
    let mut c = Check::new("hall_member_arithmetic");
    for hs in complete_hall_sets(lat, part).into_iter().take(HALL_SET_CAP) {
        for &(cls, node) in &hs.members {
            let order = lat.node_order(node);
            let index = g.order() / order;
            let single: BTreeSet<ClassId> = [cls].into_iter().collect();
            c.note(
                order * index == g.order()
                    && part.is_pi_number(order, &single)
                    && part.is_pi_prime_number(index, &single),
                || format!("hall member node {} order {} index {}", node, order, index),
            );
        }
    }
    reports.push(c.into_report());

    // Normal Hall subgroups tower in every class order.
    let mut c = Check::new("normal_hall_towers_all_orderings");
    if case.flags.sigma_nilpotent {
        for ordering in orderings_of(&classes) {
            let w = is_sigma_dispersive(lat, part, Some(&ordering))?;
            let ok = match &w {
                Some(w) => verify_dispersive_witness(lat, part, w).is_ok(),
                None => false,
            };
            c.note(ok, || format!("no verified tower for ordering {:?}", ordering));
        }
    }
    reports.push(c.into_report());

    // A group with a central series has normal Hall subgroups everywhere.
    let mut c = Check::new("nilpotent_group_normal_halls");
    if study.nilpotent {
        c.note(case.flags.sigma_nilpotent, || {
            "nilpotent group without normal Hall system".into()
        });
    }
    reports.push(c.into_report());

    // Soluble groups carry a pairwise permutable complete Hall system.
    let mut c = Check::new("soluble_has_permutable_hall_system");
    if study.soluble {
        c.note(!sigma_bases(lat, part).is_empty(), || {
            "no pairwise permutable complete Hall system".into()
        });
    }
    reports.push(c.into_report());

    // Maximal subgroup indices concentrate on one class.
    let mut c = Check::new("maximal_index_primary");
    if case.flags.sigma_soluble {
        for &m in lat.maximal_subgroups() {
            let index = g.order() / lat.node_order(m);
            c.note(part.is_sigma_primary(index), || {
                format!("maximal node {} has mixed-class index {}", m, index)
            });
        }
    }
    reports.push(c.into_report());

    // Every class is the index class of some maximal subgroup.
    let mut c = Check::new("maximal_index_covers_classes");
    if case.flags.sigma_soluble {
        for &cls in &classes {
            let single: BTreeSet<ClassId> = [cls].into_iter().collect();
            let hit = lat.maximal_subgroups().iter().any(|&m| {
                let index = g.order() / lat.node_order(m);
                index > 1 && part.is_pi_number(index, &single)
            });
            c.note(hit, || {
                format!("no maximal subgroup with index in class {:?}", cls)
            });
        }
    }
    reports.push(c.into_report());

    // A tower of the Frattini quotient lifts to the group, per ordering.
    let mut c = Check::new("frattini_quotient_tower_lifts");
    for ordering in orderings_of(&classes) {
        match &study.frattini_lat {
            None => c.note(true, String::new),
            Some(ql) => {
                let q_classes: Vec<ClassId> =
                    part.sigma_of(ql.group().order()).into_iter().collect();
                if q_classes != classes {
                    c.note(false, || "quotient lost a prime class".into());
                    continue;
                }
                let q_tower = is_sigma_dispersive(ql, part, Some(&ordering))?.is_some();
                let g_tower = is_sigma_dispersive(lat, part, Some(&ordering))?.is_some();
                c.note(!q_tower || g_tower, || {
                    format!("tower for {:?} exists over Frattini quotient only", ordering)
                });
            }
        }
    }
    reports.push(c.into_report());

    // Every subnormal subgroup has a qualifying chain.
    let mut c = Check::new("subnormal_implies_sigma_subnormal");
    for i in 0..lat.node_count() {
        if study.subnormal_mask.contains(i) {
            c.note(case.ctx.is_sigma_subnormal(i as u32), || {
                format!("subnormal node {} unreachable", i)
            });
        }
    }
    reports.push(c.into_report());

    // When every class meets one prime, the two notions coincide.
    let mut c = Check::new("one_prime_per_class_matches_plain");
    if g.primes().len() == classes.len() {
        for i in 0..lat.node_count() {
            c.note(
                case.ctx.is_sigma_subnormal(i as u32) == study.subnormal_mask.contains(i),
                || format!("node {} splits the two notions", i),
            );
        }
    }
    reports.push(c.into_report());

    let reachable = case.ctx.reachable_mask().clone();
    let sub_sample = sample_nodes(&reachable, SAMPLE_CAP);
    let full_mask = BitSet::full(lat.node_count());
    let all_sample = sample_nodes(&full_mask, SAMPLE_CAP);
    let mut within: HashMap<u32, BitSet> = HashMap::new();
    let mut within_of = |k: u32, ctx: &crate::subnormal::SubnormalityContext| -> BitSet {
        within
            .entry(k)
            .or_insert_with(|| ctx.reachable_within(k))
            .clone()
    };

    // Intersecting with any subgroup stays reachable inside it.
    let mut c = Check::new("intersection_descends_to_subgroup");
    for &a in &sub_sample {
        for &k in &all_sample {
            let meet = lat.node(a).intersection(lat.node(k));
            let m = lat.index_of(&meet).expect("meet of subgroups is a subgroup");
            let inside = within_of(k, &case.ctx);
            c.note(inside.contains(m as usize), || {
                format!("meet {} of {} and {} not reachable within {}", m, a, k, k)
            });
        }
    }
    reports.push(c.into_report());

    // Chains compose through an intermediate subgroup.
    let mut c = Check::new("relative_chain_composes");
    for &a in &sub_sample {
        let inside = within_of(a, &case.ctx);
        for k in sample_nodes(&inside, SAMPLE_CAP) {
            c.note(case.ctx.is_sigma_subnormal(k), || {
                format!("node {} reachable within {} but not in the group", k, a)
            });
        }
    }
    reports.push(c.into_report());

    // Meets and joins of reachable subgroups are reachable.
    let mut c = Check::new("join_and_meet_stay_subnormal");
    for &a in &sub_sample {
        for &k in &sub_sample {
            let meet = lat.node(a).intersection(lat.node(k));
            let m = lat.index_of(&meet).expect("meet is a subgroup");
            c.note(case.ctx.is_sigma_subnormal(m), || {
                format!("meet {} of {} and {}", m, a, k)
            });
            let join = generated_subgroup(g, &lat.node(a).union(lat.node(k)))?;
            let j = lat.index_of(&join).expect("join closure is a subgroup");
            c.note(case.ctx.is_sigma_subnormal(j), || {
                format!("join {} of {} and {}", j, a, k)
            });
        }
    }
    reports.push(c.into_report());

    // Images in quotients stay reachable; preimages come back reachable.
    let mut c_img = Check::new("image_in_quotient_stays_subnormal");
    let mut c_pre = Check::new("preimage_returns_subnormal");
    for q in &study.quotients {
        let qg = q.lat.group();
        let qctx = crate::subnormal::SubnormalityContext::new(&q.lat, part);
        for &a in &sub_sample {
            let an = crate::group::product_set(g, lat.node(a), lat.node(q.node))?;
            let mut bits = BitSet::new(qg.order() as usize);
            for x in an.iter() {
                bits.insert(q.proj[x as usize] as usize);
            }
            let image = qg.set_from_bits(bits);
            match q.lat.index_of(&image) {
                None => c_img.note(false, || "image set is not a subgroup node".into()),
                Some(m) => c_img.note(qctx.is_sigma_subnormal(m), || {
                    format!("image of node {} in quotient by {}", a, q.node)
                }),
            }
        }
        for x in sample_nodes(qctx.reachable_mask(), SAMPLE_CAP) {
            let xset = q.lat.node(x);
            let mut bits = BitSet::new(g.order() as usize);
            for e in 0..g.order() as usize {
                if xset.bits().contains(q.proj[e] as usize) {
                    bits.insert(e);
                }
            }
            let pre = g.set_from_bits(bits);
            match lat.index_of(&pre) {
                None => c_pre.note(false, || "preimage set is not a subgroup node".into()),
                Some(m) => c_pre.note(case.ctx.is_sigma_subnormal(m), || {
                    format!("preimage of quotient node {} by {}", x, q.node)
                }),
            }
        }
    }
    reports.push(c_img.into_report());
    reports.push(c_pre.into_report());

    // A reachable subgroup meets every Hall subgroup it shares classes
    // with, in a Hall subgroup of its own.
    let mut c = Check::new("hall_meets_subnormal_subgroup");
    for pi in nonempty_subsets(&classes) {
        for h in hall_subgroups(lat, part, &pi).into_iter().take(4) {
            if lat.node_order(h) == 1 {
                continue;
            }
            for &a in &sub_sample {
                let a_order = lat.node_order(a);
                if part.is_pi_prime_number(a_order, &pi) {
                    continue;
                }
                let meet = lat.node(a).intersection(lat.node(h));
                let ok = meet.order() > 1 && meet.order() == pi_part(part, a_order, &pi);
                c.note(ok, || {
                    format!(
                        "node {} meets hall {} in order {} (want {})",
                        a,
                        h,
                        meet.order(),
                        pi_part(part, a_order, &pi)
                    )
                });
            }
        }
    }
    reports.push(c.into_report());

    // A reachable Hall subgroup is normal.
    let mut c = Check::new("subnormal_hall_is_normal");
    for pi in nonempty_subsets(&classes) {
        for h in hall_subgroups(lat, part, &pi) {
            if case.ctx.is_sigma_subnormal(h) {
                c.note(lat.is_normal_node(h), || {
                    format!("reachable hall node {} not normal", h)
                });
            }
        }
    }
    reports.push(c.into_report());

    // If a whole depth level is reachable, the level above has normal
    // Hall systems throughout.
    let mut c = Check::new("reachable_depth_forces_normal_halls_above");
    for n in 2..=lat.max_depth() + 1 {
        let (all_reach, _) = case.ctx.all_n_maximal_subnormal(n);
        if !all_reach {
            continue;
        }
        for h in sample_nodes(&lat.n_maximal_set(n - 1), SUBLATTICE_CAP) {
            let ok = study.sub_lattice(h, |sl| is_sigma_nilpotent(sl, part))?;
            c.note(ok, || {
                format!("depth {} node {} lacks a normal Hall system", n - 1, h)
            });
        }
    }
    reports.push(c.into_report());

    // Reachability of a full depth level descends one level.
    let mut c = Check::new("reachability_descends_depth");
    for n in 1..=lat.max_depth() {
        let (up, _) = case.ctx.all_n_maximal_subnormal(n);
        if up {
            let (down, _) = case.ctx.all_n_maximal_subnormal(n + 1);
            c.note(down, || format!("level {} reachable but {} is not", n, n + 1));
        }
    }
    reports.push(c.into_report());

    // An irreducible pair inside a permutable Hall system pins the partner
    // to an elementary abelian Sylow subgroup.
    let mut c = Check::new("irreducible_pair_forces_elementary_sylow");
    if case.flags.sigma_soluble {
        for basis in sigma_bases(lat, part).into_iter().take(BASIS_CAP) {
            for &(_, hi) in &basis.members {
                for &(_, hj) in &basis.members {
                    if hi == hj {
                        continue;
                    }
                    if is_irreducible_pair(lat, hi, hj)? {
                        c.note(is_elementary_abelian_sylow(g, lat, hj), || {
                            format!("pair ({}, {}) partner not elementary abelian Sylow", hi, hj)
                        });
                    }
                }
            }
        }
    }
    reports.push(c.into_report());

    // Emitted witness chains and towers survive independent re-checks.
    let mut c = Check::new("witness_chains_reverify");
    for a in sample_nodes(&reachable, 8) {
        let w = case.ctx.witness(a).expect("reachable nodes have witnesses");
        c.note(verify_subnormal_witness(lat, part, &w).is_ok(), || {
            format!("chain witness for node {}", a)
        });
    }
    if let Some(w) = &case.dispersive {
        c.note(verify_dispersive_witness(lat, part, w).is_ok(), || {
            "dispersive witness".into()
        });
    }
    reports.push(c.into_report());

    Ok(reports)
}

/// Abelian, exponent p, and full p-part of the parent order.
fn is_elementary_abelian_sylow(g: &CayleyGroup, lat: &SubgroupLattice, node: u32) -> bool {
    let set = lat.node(node);
    let order = set.order();
    let factors = factorize(order);
    if factors.len() != 1 {
        return false;
    }
    let p = factors[0].0;
    if order != pi_part_single(g.order(), p) {
        return false;
    }
    for x in set.iter() {
        let o = g.element_order(x);
        if o != 1 && o != p {
            return false;
        }
        for y in set.iter() {
            if g.mul(x, y) != g.mul(y, x) {
                return false;
            }
        }
    }
    true
}

fn pi_part_single(n: u64, p: u64) -> u64 {
    let mut part = 1;
    let mut n = n;
    while n % p == 0 {
        part *= p;
        n /= p;
    }
    part
}

/// The partition-free suite for one group: Sylow shapes under deep
/// subnormality, rank-two structure, and the fixed-partition solubility
/// cross-checks.
pub fn group_suite(study: &GroupStudy) -> Result<Vec<CheckReport>, Error> {
    let lat = &study.lat;
    let g = lat.group();
    let mut reports = Vec::new();

    let one = SigmaPartition::one();
    let minimal = SigmaPartition::minimal();

    let mut c = Check::new("single_class_always_soluble");
    c.note(is_sigma_soluble(lat, &one), || {
        "single-class chief factors not primary".into()
    });
    reports.push(c.into_report());

    let mut c = Check::new("per_prime_solubility_matches");
    c.note(is_sigma_soluble(lat, &minimal) == study.soluble, || {
        "per-prime chief factor test disagrees with derived series".into()
    });
    reports.push(c.into_report());

    // With every subgroup at some depth subnormal and enough primes, each
    // Sylow subgroup is normal or of a pinned isomorphism type.
    let mut c = Check::new("sylow_shape_when_deep_subnormal");
    if study.soluble {
        let primes = g.primes();
        let qualifying = (1..=primes.len() + 1).any(|n| {
            lat.n_maximal_set(n)
                .iter()
                .all(|i| study.subnormal_mask.contains(i))
        });
        if qualifying {
            for &p in &primes {
                let p_part = pi_part_single(g.order(), p);
                let sylows: Vec<u32> = (0..lat.node_count() as u32)
                    .filter(|&i| lat.node_order(i) == p_part)
                    .collect();
                let all_normal = sylows.iter().all(|&s| lat.is_normal_node(s));
                if all_normal {
                    c.note(true, String::new);
                    continue;
                }
                let shape = study.sub_lattice(sylows[0], |sl| classify_p_group(sl.group()))??;
                c.note(
                    matches!(
                        shape,
                        PGroupClass::Cyclic
                            | PGroupClass::CyclicTimesP
                            | PGroupClass::Modular
                            | PGroupClass::Quaternion
                    ),
                    || format!("Sylow {}-subgroup has shape {}", p, shape.as_str()),
                );
            }
        }
    }
    reports.push(c.into_report());

    // Chief factors forced to width two: the top prime's Sylow subgroup is
    // normal past 3, and missing 2 or 3 forces a tower.
    let mut c = Check::new("rank_two_top_prime_sylow_normal");
    let mut c2 = Check::new("rank_two_missing_small_prime_towers");
    if study.soluble && g.order() > 1 && lat.rank()? == 2 {
        let primes = g.primes();
        let top = *primes.last().expect("nontrivial group");
        if top > 3 {
            let p_part = pi_part_single(g.order(), top);
            let normal = (0..lat.node_count() as u32)
                .any(|i| lat.node_order(i) == p_part && lat.is_normal_node(i));
            c.note(normal, || {
                format!("Sylow {}-subgroup not normal at rank two", top)
            });
        }
        if !primes.contains(&2) || !primes.contains(&3) {
            let tower = is_sigma_dispersive(lat, &minimal, None)?.is_some();
            c2.note(tower, || "no Sylow tower despite missing small prime".into());
        }
    }
    reports.push(c.into_report());
    reports.push(c2.into_report());

    Ok(reports)
}
