//! Partitions of the primes and the predicates built on them: class sets of
//! an integer, Hall subgroups for a class set, complete Hall systems and
//! their permutable variants, chief-factor solubility, normal-Hall
//! nilpotency, and dispersive normal towers with verifiable witnesses.

use crate::bitset::BitSet;
use crate::group::{factorize, is_prime, product_set};
use crate::lattice::SubgroupLattice;
use crate::Error;
use std::collections::BTreeSet;
use std::fmt;

/// Identity of one partition class. A partition lists finitely many
/// classes; every prime outside them is assigned by policy, either to its
/// own singleton class or (for the one-class partition) to the single
/// universal class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassId {
    /// The universal class of the one-class partition.
    Whole,
    /// Index into the listed classes.
    Listed(u32),
    /// Singleton class of an unlisted prime.
    Singleton(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPartition {
    classes: Vec<Vec<u64>>,
    one_class: bool,
    text: String,
}

impl SigmaPartition {
    /// Every prime in its own class.
    pub fn minimal() -> Self {
        SigmaPartition {
            classes: Vec::new(),
            one_class: false,
            text: "minimal".into(),
        }
    }

    /// All primes in a single class.
    pub fn one() -> Self {
        SigmaPartition {
            classes: Vec::new(),
            one_class: true,
            text: "one".into(),
        }
    }

    /// Explicit classes; unlisted primes fall to singleton classes. Classes
    /// are kept in the given order (class ids are positional).
    pub fn from_classes(classes: Vec<Vec<u64>>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for class in &classes {
            if class.is_empty() {
                return Err(Error::BadPartition("empty class".into()));
            }
            for &p in class {
                if !is_prime(p) {
                    return Err(Error::BadPartition(format!("{} is not prime", p)));
                }
                if !seen.insert(p) {
                    return Err(Error::BadPartition(format!(
                        "prime {} appears in two classes",
                        p
                    )));
                }
            }
        }
        let text = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("|");
        Ok(SigmaPartition {
            classes,
            one_class: false,
            text,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn lookup(&self, p: u64) -> ClassId {
        debug_assert!(is_prime(p));
        if self.one_class {
            return ClassId::Whole;
        }
        for (i, class) in self.classes.iter().enumerate() {
            if class.contains(&p) {
                return ClassId::Listed(i as u32);
            }
        }
        ClassId::Singleton(p)
    }

    /// Human-readable label of a class: its primes, comma-joined.
    pub fn class_label(&self, id: ClassId) -> String {
        match id {
            ClassId::Whole => "all".into(),
            ClassId::Listed(i) => self.classes[i as usize]
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(","),
            ClassId::Singleton(p) => p.to_string(),
        }
    }

    /// Classes meeting the prime divisors of n.
    pub fn sigma_of(&self, n: u64) -> BTreeSet<ClassId> {
        debug_assert!(n >= 1);
        factorize(n).iter().map(|&(p, _)| self.lookup(p)).collect()
    }

    /// At most one class meets n (n = 1 qualifies).
    pub fn is_sigma_primary(&self, n: u64) -> bool {
        self.sigma_of(n).len() <= 1
    }

    /// All prime divisors of n lie in classes of pi.
    pub fn is_pi_number(&self, n: u64, pi: &BTreeSet<ClassId>) -> bool {
        self.sigma_of(n).is_subset(pi)
    }

    /// No prime divisor of n lies in a class of pi.
    pub fn is_pi_prime_number(&self, n: u64, pi: &BTreeSet<ClassId>) -> bool {
        self.sigma_of(n).is_disjoint(pi)
    }

    /// Largest divisor of n supported on the given class.
    pub fn part_of(&self, n: u64, id: ClassId) -> u64 {
        factorize(n)
            .iter()
            .filter(|&&(p, _)| self.lookup(p) == id)
            .map(|&(p, e)| p.pow(e))
            .product()
    }
}

impl fmt::Display for SigmaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text)
    }
}

/// Grammar: "minimal", "one", or classes of comma-separated primes joined
/// by "|", e.g. "2,3|5".
pub fn parse_partition(text: &str) -> Result<SigmaPartition, Error> {
    let t = text.trim();
    match t {
        "" => Err(Error::BadPartition("empty partition text".into())),
        "minimal" => Ok(SigmaPartition::minimal()),
        "one" => Ok(SigmaPartition::one()),
        _ => {
            let classes: Vec<Vec<u64>> = t
                .split('|')
                .map(|class| {
                    class
                        .split(',')
                        .map(|tok| {
                            let tok = tok.trim();
                            tok.parse::<u64>().map_err(|_| {
                                Error::BadPartition(format!("bad prime token {:?}", tok))
                            })
                        })
                        .collect::<Result<Vec<u64>, Error>>()
                })
                .collect::<Result<_, _>>()?;
            SigmaPartition::from_classes(classes)
        }
    }
}

/// One Hall subgroup per class of sigma(G), stored as lattice node ids
/// keyed by class, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallSet {
    pub members: Vec<(ClassId, u32)>,
}

impl HallSet {
    pub fn member(&self, id: ClassId) -> Option<u32> {
        self.members
            .iter()
            .find(|&&(c, _)| c == id)
            .map(|&(_, n)| n)
    }
}

/// All subgroups whose order is a pi-number and whose index is a
/// pi'-number. May be empty.
pub fn hall_subgroups(
    l: &SubgroupLattice,
    part: &SigmaPartition,
    pi: &BTreeSet<ClassId>,
) -> Vec<u32> {
    let full = l.group().order();
    (0..l.node_count() as u32)
        .filter(|&i| {
            let h = l.node_order(i);
            part.is_pi_number(h, pi) && part.is_pi_prime_number(full / h, pi)
        })
        .collect()
}

fn single(id: ClassId) -> BTreeSet<ClassId> {
    let mut s = BTreeSet::new();
    s.insert(id);
    s
}

/// Per-class Hall subgroup lists over sigma(G), ascending by class.
pub fn hall_lists(l: &SubgroupLattice, part: &SigmaPartition) -> Vec<(ClassId, Vec<u32>)> {
    part.sigma_of(l.group().order())
        .into_iter()
        .map(|cls| (cls, hall_subgroups(l, part, &single(cls))))
        .collect()
}

/// Cartesian product of the per-class Hall lists.
pub fn complete_hall_sets(l: &SubgroupLattice, part: &SigmaPartition) -> Vec<HallSet> {
    let lists = hall_lists(l, part);
    if lists.iter().any(|(_, v)| v.is_empty()) {
        return Vec::new();
    }
    let mut out = vec![Vec::new()];
    for (cls, list) in &lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for &n in list {
                let mut row: Vec<(ClassId, u32)> = prefix.clone();
                row.push((*cls, n));
                next.push(row);
            }
        }
        out = next;
    }
    out.into_iter().map(|members| HallSet { members }).collect()
}

/// G possesses a complete Hall set for the partition.
pub fn is_sigma_group(l: &SubgroupLattice, part: &SigmaPartition) -> bool {
    hall_lists(l, part).iter().all(|(_, v)| !v.is_empty())
}

/// Complete Hall sets whose members pairwise permute.
pub fn sigma_bases(l: &SubgroupLattice, part: &SigmaPartition) -> Vec<HallSet> {
    let g = l.group();
    complete_hall_sets(l, part)
        .into_iter()
        .filter(|hs| {
            for a in 0..hs.members.len() {
                for b in (a + 1)..hs.members.len() {
                    let (sa, sb) = (l.node(hs.members[a].1), l.node(hs.members[b].1));
                    let ab = product_set(g, sa, sb).expect("same group");
                    let ba = product_set(g, sb, sa).expect("same group");
                    if ab != ba {
                        return false;
                    }
                }
            }
            true
        })
        .collect()
}

/// Every chief factor is sigma-primary. Factor orders alone decide this.
pub fn is_sigma_soluble(l: &SubgroupLattice, part: &SigmaPartition) -> bool {
    l.chief_series()
        .factor_orders
        .iter()
        .all(|&f| part.is_sigma_primary(f))
}

/// For every class of sigma(G), Hall subgroups exist and are all normal.
pub fn is_sigma_nilpotent(l: &SubgroupLattice, part: &SigmaPartition) -> bool {
    hall_lists(l, part)
        .iter()
        .all(|(_, list)| !list.is_empty() && list.iter().all(|&n| l.is_normal_node(n)))
}

/// A normal tower 1 = G_1 < ... < G_(t+1) = G with G_i H_i = G_(i+1) for
/// Hall subgroups H_i taken class by class along `ordering`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DispersiveWitness {
    pub ordering: Vec<ClassId>,
    /// Node ids, ascending; length is |ordering| + 1.
    pub series: Vec<u32>,
    /// Node ids of the Hall subgroup used at each step; length |ordering|.
    pub halls: Vec<u32>,
}

impl DispersiveWitness {
    pub fn hall_set(&self) -> HallSet {
        let mut members: Vec<(ClassId, u32)> = self
            .ordering
            .iter()
            .copied()
            .zip(self.halls.iter().copied())
            .collect();
        members.sort_by_key(|&(c, _)| c);
        HallSet { members }
    }
}

/// Searches for a dispersive tower. With `ordering` fixed only that class
/// order is tried; otherwise all orderings of sigma(G) are searched in
/// lexicographic class order and the first witness in canonical order is
/// returned. Groups without a complete Hall set get None.
pub fn is_sigma_dispersive(
    l: &SubgroupLattice,
    part: &SigmaPartition,
    ordering: Option<&[ClassId]>,
) -> Result<Option<DispersiveWitness>, Error> {
    let classes: Vec<ClassId> = part.sigma_of(l.group().order()).into_iter().collect();
    if let Some(requested) = ordering {
        let mut sorted: Vec<ClassId> = requested.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted != classes {
            return Err(Error::BadPartition(format!(
                "ordering must enumerate the {} classes of sigma(G) exactly once",
                classes.len()
            )));
        }
    }
    if !is_sigma_group(l, part) {
        return Ok(None);
    }
    let lists = hall_lists(l, part);
    let hall_of = |cls: ClassId| -> &[u32] {
        lists
            .iter()
            .find(|&&(c, _)| c == cls)
            .map(|(_, v)| v.as_slice())
            .unwrap()
    };

    let mut series = vec![l.trivial_idx()];
    let mut halls = Vec::new();
    match ordering {
        Some(fixed) => {
            if search_tower(l, part, fixed, 0, &mut series, &mut halls, &hall_of) {
                return Ok(Some(DispersiveWitness {
                    ordering: fixed.to_vec(),
                    series,
                    halls,
                }));
            }
            Ok(None)
        }
        None => {
            let mut perm = Vec::new();
            let mut used = vec![false; classes.len()];
            Ok(search_orderings(
                l, part, &classes, &mut used, &mut perm, &hall_of,
            ))
        }
    }
}

fn search_orderings<'a>(
    l: &SubgroupLattice,
    part: &SigmaPartition,
    classes: &[ClassId],
    used: &mut Vec<bool>,
    perm: &mut Vec<ClassId>,
    hall_of: &impl Fn(ClassId) -> &'a [u32],
) -> Option<DispersiveWitness> {
    if perm.len() == classes.len() {
        let mut series = vec![l.trivial_idx()];
        let mut halls = Vec::new();
        if search_tower(l, part, perm, 0, &mut series, &mut halls, hall_of) {
            return Some(DispersiveWitness {
                ordering: perm.clone(),
                series,
                halls,
            });
        }
        return None;
    }
    for i in 0..classes.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        perm.push(classes[i]);
        if let Some(w) = search_orderings(l, part, classes, used, perm, hall_of) {
            return Some(w);
        }
        perm.pop();
        used[i] = false;
    }
    None
}

fn search_tower<'a>(
    l: &SubgroupLattice,
    part: &SigmaPartition,
    ordering: &[ClassId],
    step: usize,
    series: &mut Vec<u32>,
    halls: &mut Vec<u32>,
    hall_of: &impl Fn(ClassId) -> &'a [u32],
) -> bool {
    if step == ordering.len() {
        debug_assert_eq!(*series.last().unwrap(), l.full_idx());
        return true;
    }
    let g = l.group();
    let cur = *series.last().unwrap();
    let cls = ordering[step];
    let target = l.node_order(cur) * part.part_of(g.order(), cls);
    for cand in l.sup_mask(cur).iter() {
        let cand = cand as u32;
        if l.node_order(cand) != target || !l.is_normal_node(cand) {
            continue;
        }
        for &h in hall_of(cls) {
            let prod = product_set(g, l.node(cur), l.node(h)).expect("same group");
            if &prod == l.node(cand) {
                series.push(cand);
                halls.push(h);
                if search_tower(l, part, ordering, step + 1, series, halls, hall_of) {
                    return true;
                }
                series.pop();
                halls.pop();
                break;
            }
        }
    }
    false
}

/// Dispersive under the partition with every prime in its own class.
pub fn has_sylow_tower(l: &SubgroupLattice) -> bool {
    is_sigma_dispersive(l, &SigmaPartition::minimal(), None)
        .expect("no fixed ordering given")
        .is_some()
}

/// Re-verifies a dispersive witness from first principles: ordering shape,
/// series normality by direct conjugation, order arithmetic, Hall order and
/// index arithmetic, and the product-set equalities.
pub fn verify_dispersive_witness(
    l: &SubgroupLattice,
    part: &SigmaPartition,
    w: &DispersiveWitness,
) -> Result<(), String> {
    let g = l.group();
    let classes: BTreeSet<ClassId> = part.sigma_of(g.order());
    let claimed: BTreeSet<ClassId> = w.ordering.iter().copied().collect();
    if claimed != classes || w.ordering.len() != classes.len() {
        return Err("ordering is not a permutation of sigma(G)".into());
    }
    if w.series.len() != w.ordering.len() + 1 || w.halls.len() != w.ordering.len() {
        return Err("series/hall lengths do not match the ordering".into());
    }
    if l.node_order(w.series[0]) != 1 {
        return Err("series does not start at the trivial subgroup".into());
    }
    if *w.series.last().unwrap() != l.full_idx() {
        return Err("series does not end at the whole group".into());
    }
    for (i, &cls) in w.ordering.iter().enumerate() {
        let (lo, hi, h) = (w.series[i], w.series[i + 1], w.halls[i]);
        let lo_set = l.node(lo);
        let hi_set = l.node(hi);
        let h_set = l.node(h);
        if !lo_set.is_subset(hi_set) {
            return Err(format!("series step {} is not ascending", i));
        }
        if !crate::group::is_normal_in(g, hi_set, &g.full_set()) {
            return Err(format!("series member {} is not normal", i + 1));
        }
        let class_part = part.part_of(g.order(), cls);
        if hi_set.order() != lo_set.order() * class_part {
            return Err(format!("series step {} has wrong order arithmetic", i));
        }
        if h_set.order() != class_part
            || !part.is_pi_prime_number(g.order() / class_part, &single(cls))
        {
            return Err(format!("hall member {} is not a Hall subgroup", i));
        }
        let prod = product_set(g, lo_set, h_set).map_err(|e| e.to_string())?;
        if &prod != hi_set {
            return Err(format!("product equality fails at step {}", i));
        }
    }
    if !crate::group::is_normal_in(g, l.node(w.series[0]), &g.full_set()) {
        return Err("trivial series member is not normal".into());
    }
    Ok(())
}

/// Mask over node ids: subgroups whose order is sigma-primary.
pub fn sigma_primary_node_mask(l: &SubgroupLattice, part: &SigmaPartition) -> BitSet {
    let mut mask = BitSet::new(l.node_count());
    for i in 0..l.node_count() {
        if part.is_sigma_primary(l.node_order(i as u32)) {
            mask.insert(i);
        }
    }
    mask
}
