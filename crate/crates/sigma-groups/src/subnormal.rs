//! Subnormality, plain and relative to a prime partition.
//!
//! Plain subnormality descends by iterated normal closure. The relative
//! variant is reachability over comparable lattice pairs: a step from H up
//! to K counts when H is normal in K or when K over the core of H is a
//! one-class number. A reverse search from the whole group yields shortest
//! witness chains with deterministic parents.

use crate::bitset::BitSet;
use crate::group::{product_set, CayleyGroup, ElementSet};
use crate::lattice::SubgroupLattice;
use crate::sigma::SigmaPartition;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Normal,
    PrimaryQuotient,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Normal => "normal",
            StepKind::PrimaryQuotient => "sigma-primary-quotient",
        }
    }
}

/// Ascending chain of node ids from the subgroup to the whole group, with
/// the kind justifying each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubnormalWitness {
    pub chain: Vec<u32>,
    pub kinds: Vec<StepKind>,
}

/// Normal closure of h inside k (h must lie in k): the subgroup generated
/// by all k-conjugates of h.
pub fn normal_closure(g: &CayleyGroup, h: &ElementSet, k: &ElementSet) -> Result<ElementSet, Error> {
    let mut seed = BitSet::new(g.order() as usize);
    for x in k.iter() {
        for y in h.iter() {
            seed.insert(g.conj(x, y) as usize);
        }
    }
    generated_from_bits(g, seed)
}

fn generated_from_bits(g: &CayleyGroup, seed: BitSet) -> Result<ElementSet, Error> {
    let gens: Vec<u16> = seed.iter().map(|i| i as u16).collect();
    Ok(g.set_from_bits(crate::group::closure_from(g, &gens)))
}

/// Iterated normal closure: K_0 = G, K_(i+1) = closure of h under
/// K_i-conjugation. h is subnormal exactly when the descent stops at h.
pub fn is_subnormal(g: &CayleyGroup, h: &ElementSet) -> Result<bool, Error> {
    if !g.is_subgroup(h) {
        return Err(Error::BadGroup("subnormality needs a subgroup".into()));
    }
    let mut k = g.full_set();
    loop {
        let next = normal_closure(g, h, &k)?;
        if next == k {
            return Ok(&k == h);
        }
        k = next;
    }
}

/// Reachability context for one lattice and partition. `reachable` marks
/// the nodes with a chain to the whole group; parents encode one shortest
/// chain per node, preferring normal steps and low node ids.
pub struct SubnormalityContext<'a> {
    lat: &'a SubgroupLattice,
    part: &'a SigmaPartition,
    reachable: BitSet,
    parent: Vec<u32>,
    kind: Vec<StepKind>,
}

impl<'a> SubnormalityContext<'a> {
    pub fn new(lat: &'a SubgroupLattice, part: &'a SigmaPartition) -> Self {
        let n = lat.node_count();
        let full = lat.full_idx();
        let mut reachable = BitSet::new(n);
        let mut parent = vec![full; n];
        let mut kind = vec![StepKind::Normal; n];
        reachable.insert(full as usize);

        if part.is_sigma_primary(lat.group().order()) {
            // Any step quotient divides a one-class number, so every
            // subgroup reaches the top in a single step.
            for h in 0..n as u32 {
                if h == full {
                    continue;
                }
                reachable.insert(h as usize);
                kind[h as usize] = if lat.is_normal_node(h) {
                    StepKind::Normal
                } else {
                    StepKind::PrimaryQuotient
                };
            }
            return SubnormalityContext {
                lat,
                part,
                reachable,
                parent,
                kind,
            };
        }

        let mut frontier = vec![full];
        while let Some(k) = frontier.pop() {
            let mut next = Vec::new();
            for h in lat.sub_mask(k).iter() {
                let h = h as u32;
                if h == k || reachable.contains(h as usize) {
                    continue;
                }
                if let Some(step) = edge_kind(lat, part, h, k) {
                    reachable.insert(h as usize);
                    parent[h as usize] = k;
                    kind[h as usize] = step;
                    next.push(h);
                }
            }
            // Breadth order: finish this level before descending further.
            frontier.splice(0..0, next);
        }
        SubnormalityContext {
            lat,
            part,
            reachable,
            parent,
            kind,
        }
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.lat
    }

    pub fn partition(&self) -> &SigmaPartition {
        self.part
    }

    pub fn is_sigma_subnormal(&self, h: u32) -> bool {
        self.reachable.contains(h as usize)
    }

    pub fn reachable_mask(&self) -> &BitSet {
        &self.reachable
    }

    pub fn witness(&self, h: u32) -> Option<SubnormalWitness> {
        if !self.reachable.contains(h as usize) {
            return None;
        }
        let mut chain = vec![h];
        let mut kinds = Vec::new();
        let mut cur = h;
        while cur != self.lat.full_idx() {
            kinds.push(self.kind[cur as usize]);
            cur = self.parent[cur as usize];
            chain.push(cur);
        }
        Some(SubnormalWitness { chain, kinds })
    }

    /// Reachability restricted to subgroups of the node k, with k as top.
    pub fn reachable_within(&self, k: u32) -> BitSet {
        let mut seen = BitSet::new(self.lat.node_count());
        seen.insert(k as usize);
        let mut frontier = vec![k];
        while let Some(top) = frontier.pop() {
            for h in self.lat.sub_mask(top).iter() {
                let h = h as u32;
                if h == top || seen.contains(h as usize) {
                    continue;
                }
                if edge_kind(self.lat, self.part, h, top).is_some() {
                    seen.insert(h as usize);
                    frontier.push(h);
                }
            }
        }
        seen
    }

    /// Least n >= 1 such that every n-maximal subgroup is reachable; 0 for
    /// the trivial group. Empty depth sets hold vacuously, so this is
    /// always defined.
    pub fn m_sigma(&self) -> u32 {
        if self.lat.group().order() == 1 {
            return 0;
        }
        for n in 1.. {
            let set = self.lat.n_maximal_set(n as usize);
            if set.is_subset(&self.reachable) {
                return n;
            }
        }
        unreachable!()
    }

    /// True when every subgroup at depth exactly n is reachable, plus how
    /// many subgroups that covered.
    pub fn all_n_maximal_subnormal(&self, n: usize) -> (bool, usize) {
        let set = self.lat.n_maximal_set(n);
        (set.is_subset(&self.reachable), set.count())
    }
}

/// Step validity for a comparable pair h < k, preferring the normal kind.
fn edge_kind(
    lat: &SubgroupLattice,
    part: &SigmaPartition,
    h: u32,
    k: u32,
) -> Option<StepKind> {
    if lat.is_normal_in_node(h, k) {
        return Some(StepKind::Normal);
    }
    let quotient = lat.node_order(k) / lat.core_order(k, h);
    if part.is_sigma_primary(quotient) {
        return Some(StepKind::PrimaryQuotient);
    }
    None
}

/// Re-verifies a witness chain from first principles: ascending proper
/// inclusions ending at the whole group, and each step justified by direct
/// conjugation or by a core quotient supported on one class.
pub fn verify_subnormal_witness(
    lat: &SubgroupLattice,
    part: &SigmaPartition,
    w: &SubnormalWitness,
) -> Result<(), String> {
    if w.chain.is_empty() || w.chain.len() != w.kinds.len() + 1 {
        return Err("chain and kinds lengths disagree".into());
    }
    if *w.chain.last().unwrap() != lat.full_idx() {
        return Err("chain does not end at the whole group".into());
    }
    let g = lat.group();
    for i in 0..w.kinds.len() {
        let (lo, hi) = (w.chain[i], w.chain[i + 1]);
        let lo_set = lat.node(lo);
        let hi_set = lat.node(hi);
        if !lo_set.is_subset(hi_set) || lo == hi {
            return Err(format!("step {} is not a proper ascent", i));
        }
        match w.kinds[i] {
            StepKind::Normal => {
                if !crate::group::is_normal_in(g, lo_set, hi_set) {
                    return Err(format!("step {} claims normality falsely", i));
                }
            }
            StepKind::PrimaryQuotient => {
                let mut core = lo_set.clone();
                for x in hi_set.iter() {
                    let conj = crate::group::conjugate_set(g, lo_set, x);
                    core = core.intersection(&conj);
                }
                let quotient = hi_set.order() / core.order();
                if !part.is_sigma_primary(quotient) {
                    return Err(format!("step {} quotient {} spans classes", i, quotient));
                }
            }
        }
    }
    Ok(())
}

/// AB = BA as sets and a is maximal in the product.
pub fn is_irreducible_pair(lat: &SubgroupLattice, a: u32, b: u32) -> Result<bool, Error> {
    if a == b {
        return Ok(false);
    }
    let g = lat.group();
    let ab = product_set(g, lat.node(a), lat.node(b))?;
    let ba = product_set(g, lat.node(b), lat.node(a))?;
    if ab != ba {
        return Ok(false);
    }
    let prod = lat
        .index_of(&ab)
        .expect("a permutable product is a subgroup");
    if prod == a {
        return Ok(false);
    }
    let between = (0..lat.node_count() as u32)
        .filter(|&x| lat.is_sub(a, x) && lat.is_sub(x, prod))
        .count();
    Ok(between == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generated_subgroup, make_family, NamedFamilySpec};
    use crate::lattice::enumerate_subgroups;
    use crate::perm::parse_permutation;
    use crate::sigma::parse_partition;

    fn lat(spec: &NamedFamilySpec) -> SubgroupLattice {
        enumerate_subgroups(make_family(spec).unwrap()).unwrap()
    }

    fn node_of_cycles(l: &SubgroupLattice, cycles: &str) -> u32 {
        let g = l.group();
        let p = parse_permutation(cycles, g.degree()).unwrap();
        let i = g.element_index(&p).unwrap();
        let seed = g.set_from_indices([0u16, i]);
        let set = generated_subgroup(g, &seed).unwrap();
        l.index_of(&set).unwrap()
    }

    #[test]
    fn transposition_subgroup_is_not_subnormal_in_s4() {
        let l = lat(&NamedFamilySpec::Symmetric(4));
        let g = l.group();
        let t = node_of_cycles(&l, "(1 2)");
        assert!(!is_subnormal(g, l.node(t)).unwrap());
        let d = node_of_cycles(&l, "(1 2)(3 4)");
        assert!(is_subnormal(g, l.node(d)).unwrap());
    }

    #[test]
    fn minimal_partition_reachability_matches_plain_subnormality() {
        let min = parse_partition("minimal").unwrap();
        for spec in [
            NamedFamilySpec::Symmetric(4),
            NamedFamilySpec::Dihedral(6),
            NamedFamilySpec::Alternating(5),
        ] {
            let l = lat(&spec);
            let ctx = SubnormalityContext::new(&l, &min);
            for i in 0..l.node_count() as u32 {
                let plain = is_subnormal(l.group(), l.node(i)).unwrap();
                assert_eq!(plain, ctx.is_sigma_subnormal(i), "node {} of {}", i, l.group().name());
            }
        }
    }

    #[test]
    fn coarse_partition_admits_more_chains() {
        let l = lat(&NamedFamilySpec::Symmetric(4));
        let part = parse_partition("2,3").unwrap();
        let ctx = SubnormalityContext::new(&l, &part);
        let t = node_of_cycles(&l, "(1 2)");
        assert!(ctx.is_sigma_subnormal(t));
        let w = ctx.witness(t).unwrap();
        verify_subnormal_witness(&l, &part, &w).unwrap();
    }

    #[test]
    fn m_sigma_values() {
        let min = parse_partition("minimal").unwrap();
        let s4 = lat(&NamedFamilySpec::Symmetric(4));
        assert_eq!(SubnormalityContext::new(&s4, &min).m_sigma(), 4);
        let s3 = lat(&NamedFamilySpec::Symmetric(3));
        assert_eq!(SubnormalityContext::new(&s3, &min).m_sigma(), 2);
        let c6 = lat(&NamedFamilySpec::Cyclic(6));
        assert_eq!(SubnormalityContext::new(&c6, &min).m_sigma(), 1);
        let c1 = lat(&NamedFamilySpec::Cyclic(1));
        assert_eq!(SubnormalityContext::new(&c1, &min).m_sigma(), 0);
    }

    #[test]
    fn one_class_groups_reach_everywhere() {
        let min = parse_partition("minimal").unwrap();
        let q8 = lat(&NamedFamilySpec::Quaternion);
        let ctx = SubnormalityContext::new(&q8, &min);
        for i in 0..q8.node_count() as u32 {
            assert!(ctx.is_sigma_subnormal(i));
            let w = ctx.witness(i).unwrap();
            verify_subnormal_witness(&q8, &min, &w).unwrap();
        }
    }

    #[test]
    fn witnesses_survive_reverification() {
        let min = parse_partition("minimal").unwrap();
        let l = lat(&NamedFamilySpec::Symmetric(4));
        let ctx = SubnormalityContext::new(&l, &min);
        for i in 0..l.node_count() as u32 {
            if let Some(w) = ctx.witness(i) {
                verify_subnormal_witness(&l, &min, &w).unwrap();
                assert_eq!(w.chain[0], i);
            }
        }
    }

    #[test]
    fn relative_reachability_within_a_node() {
        let min = parse_partition("minimal").unwrap();
        let l = lat(&NamedFamilySpec::Symmetric(4));
        let ctx = SubnormalityContext::new(&l, &min);
        let a4 = (0..l.node_count() as u32)
            .find(|&i| l.node_order(i) == 12)
            .unwrap();
        let inside = ctx.reachable_within(a4);
        // V4 and its pieces are subnormal in A4; order-3 points are not.
        for i in inside.iter().map(|i| i as u32) {
            assert!(l.is_sub(i, a4));
            assert_ne!(l.node_order(i), 3);
        }
        assert!(inside.count() > 1);
    }

    #[test]
    fn irreducible_pairs() {
        let s3 = lat(&NamedFamilySpec::Symmetric(3));
        let c3 = (0..s3.node_count() as u32)
            .find(|&i| s3.node_order(i) == 3)
            .unwrap();
        let c2 = (0..s3.node_count() as u32)
            .find(|&i| s3.node_order(i) == 2)
            .unwrap();
        assert!(is_irreducible_pair(&s3, c3, c2).unwrap());
        assert!(!is_irreducible_pair(&s3, c3, c3).unwrap());
        let c2s: Vec<u32> = (0..s3.node_count() as u32)
            .filter(|&i| s3.node_order(i) == 2)
            .collect();
        assert!(!is_irreducible_pair(&s3, c2s[0], c2s[1]).unwrap());

        let c8 = lat(&NamedFamilySpec::Cyclic(8));
        let two = (0..c8.node_count() as u32)
            .find(|&i| c8.node_order(i) == 2)
            .unwrap();
        let four = (0..c8.node_count() as u32)
            .find(|&i| c8.node_order(i) == 4)
            .unwrap();
        assert!(is_irreducible_pair(&c8, two, four).unwrap());
    }
}
