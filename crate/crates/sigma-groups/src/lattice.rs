//! Full subgroup lattice of a Cayley group: nodes in canonical order, cover
//! relations, depth sets, normality data, chief series, rank, solubility,
//! and the Frattini subgroup.
//!
//! Enumeration is by iterated single-element extension starting from the
//! cyclic subgroups. Canonical node order is (order ascending, then bit
//! pattern), and every tie-break downstream uses it, so witnesses and
//! exports are reproducible.

use crate::bitset::BitSet;
use crate::group::{
    closure_from, conjugate_set, generated_subgroup, subgroup_group, CayleyGroup, ElementSet,
};
use crate::Error;
use std::collections::HashMap;

pub const DEFAULT_LATTICE_CAP: u64 = 128;

pub struct SubgroupLattice {
    group: CayleyGroup,
    nodes: Vec<ElementSet>,
    node_index: HashMap<ElementSet, u32>,
    /// sub[j] = node ids i with nodes[i] a subset of nodes[j] (including j).
    sub: Vec<BitSet>,
    /// sup[i] = node ids j with nodes[j] a superset of nodes[i] (including i).
    sup: Vec<BitSet>,
    covers_down: Vec<Vec<u32>>,
    covers_up: Vec<Vec<u32>>,
    /// conj_node[x][i] = node id of the conjugate of nodes[i] by element x.
    conj_node: Vec<Vec<u32>>,
    normalizers: Vec<ElementSet>,
    normal_mask: BitSet,
    depth_sets: Vec<BitSet>,
    trivial_idx: u32,
    full_idx: u32,
}

pub fn enumerate_subgroups(group: CayleyGroup) -> Result<SubgroupLattice, Error> {
    enumerate_subgroups_with_cap(group, DEFAULT_LATTICE_CAP)
}

pub fn enumerate_subgroups_with_cap(group: CayleyGroup, cap: u64) -> Result<SubgroupLattice, Error> {
    if group.order() > cap {
        return Err(Error::TooLarge {
            order: group.order(),
            cap,
            context: "subgroup lattice",
        });
    }
    let n = group.order() as usize;

    // Discovery: trivial and cyclic subgroups, then single-element
    // extensions. Each node keeps a small generating set so extension
    // closures run over a handful of generators.
    let mut found: HashMap<BitSet, usize> = HashMap::new();
    let mut sets: Vec<BitSet> = Vec::new();
    let mut gens: Vec<Vec<u16>> = Vec::new();
    let push = |sets: &mut Vec<BitSet>, gens: &mut Vec<Vec<u16>>,
                    found: &mut HashMap<BitSet, usize>,
                    bits: BitSet,
                    g: Vec<u16>| {
        if !found.contains_key(&bits) {
            found.insert(bits.clone(), sets.len());
            sets.push(bits);
            gens.push(g);
        }
    };
    push(&mut sets, &mut gens, &mut found, BitSet::singleton(n, 0), vec![]);
    for e in 1..n as u16 {
        let bits = closure_from(&group, &[e]);
        push(&mut sets, &mut gens, &mut found, bits, vec![e]);
    }
    let mut next = 0;
    while next < sets.len() {
        let bits = sets[next].clone();
        let seed = gens[next].clone();
        next += 1;
        for e in 1..n as u16 {
            if bits.contains(e as usize) {
                continue;
            }
            let mut ext = seed.clone();
            ext.push(e);
            let closed = closure_from(&group, &ext);
            push(&mut sets, &mut gens, &mut found, closed, ext);
        }
    }

    sets.sort();
    let nodes: Vec<ElementSet> = sets
        .iter()
        .map(|b| group.set_from_indices(b.iter().map(|i| i as u16)))
        .collect();
    let count = nodes.len();
    let node_index: HashMap<ElementSet, u32> = nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i as u32))
        .collect();

    let mut sub = vec![BitSet::new(count); count];
    let mut sup = vec![BitSet::new(count); count];
    for i in 0..count {
        for j in i..count {
            if nodes[i].bits().is_subset(nodes[j].bits()) {
                sub[j].insert(i);
                sup[i].insert(j);
            }
        }
    }

    let mut covers_down = vec![Vec::new(); count];
    let mut covers_up = vec![Vec::new(); count];
    for i in 0..count {
        for j in sup[i].iter() {
            if j == i {
                continue;
            }
            if sup[i].intersection_count(&sub[j]) == 2 {
                covers_down[j].push(i as u32);
                covers_up[i].push(j as u32);
            }
        }
    }

    let conj_node: Vec<Vec<u32>> = if group.is_abelian() {
        let column: Vec<u32> = (0..count as u32).collect();
        vec![column; n]
    } else {
        let mut by_elem = vec![vec![0u32; count]; n];
        for (i, node) in nodes.iter().enumerate() {
            for x in 0..n as u16 {
                let image = conjugate_set(&group, node, x);
                let id = *node_index
                    .get(&image)
                    .expect("conjugate of a subgroup is a subgroup");
                by_elem[x as usize][i] = id;
            }
        }
        by_elem
    };

    let mut normalizers = Vec::with_capacity(count);
    let mut normal_mask = BitSet::new(count);
    for i in 0..count {
        let norm = group.set_from_indices(
            (0..n as u16).filter(|&x| conj_node[x as usize][i] == i as u32),
        );
        if norm.order() == group.order() {
            normal_mask.insert(i);
        }
        normalizers.push(norm);
    }

    let full_idx = (count - 1) as u32;
    let trivial_idx = 0u32;
    debug_assert_eq!(nodes[full_idx as usize].order(), group.order());
    debug_assert_eq!(nodes[trivial_idx as usize].order(), 1);

    let mut depth_sets = Vec::new();
    let mut frontier = BitSet::singleton(count, full_idx as usize);
    while !frontier.is_empty() {
        depth_sets.push(frontier.clone());
        let mut next_frontier = BitSet::new(count);
        for i in frontier.iter() {
            for &c in &covers_down[i] {
                next_frontier.insert(c as usize);
            }
        }
        frontier = next_frontier;
    }

    Ok(SubgroupLattice {
        group,
        nodes,
        node_index,
        sub,
        sup,
        covers_down,
        covers_up,
        conj_node,
        normalizers,
        normal_mask,
        depth_sets,
        trivial_idx,
        full_idx,
    })
}

impl SubgroupLattice {
    pub fn group(&self) -> &CayleyGroup {
        &self.group
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: u32) -> &ElementSet {
        &self.nodes[i as usize]
    }

    pub fn nodes(&self) -> &[ElementSet] {
        &self.nodes
    }

    pub fn node_order(&self, i: u32) -> u64 {
        self.nodes[i as usize].order()
    }

    pub fn index_of(&self, s: &ElementSet) -> Option<u32> {
        self.node_index.get(s).copied()
    }

    pub fn trivial_idx(&self) -> u32 {
        self.trivial_idx
    }

    pub fn full_idx(&self) -> u32 {
        self.full_idx
    }

    /// nodes[i] contained in nodes[j].
    pub fn is_sub(&self, i: u32, j: u32) -> bool {
        self.sub[j as usize].contains(i as usize)
    }

    /// Node ids contained in nodes[j], including j.
    pub fn sub_mask(&self, j: u32) -> &BitSet {
        &self.sub[j as usize]
    }

    /// Node ids containing nodes[i], including i.
    pub fn sup_mask(&self, i: u32) -> &BitSet {
        &self.sup[i as usize]
    }

    /// Maximal subgroups of nodes[j].
    pub fn covers_down(&self, j: u32) -> &[u32] {
        &self.covers_down[j as usize]
    }

    /// Nodes in which nodes[i] is maximal.
    pub fn covers_up(&self, i: u32) -> &[u32] {
        &self.covers_up[i as usize]
    }

    pub fn maximal_subgroups(&self) -> &[u32] {
        self.covers_down(self.full_idx)
    }

    pub fn normalizer(&self, i: u32) -> &ElementSet {
        &self.normalizers[i as usize]
    }

    /// nodes[h] normal in nodes[k]; requires h contained in k.
    pub fn is_normal_in_node(&self, h: u32, k: u32) -> bool {
        debug_assert!(self.is_sub(h, k));
        self.nodes[k as usize]
            .bits()
            .is_subset(self.normalizers[h as usize].bits())
    }

    pub fn is_normal_node(&self, i: u32) -> bool {
        self.normal_mask.contains(i as usize)
    }

    /// Mask over node ids of subgroups normal in the whole group.
    pub fn normal_mask(&self) -> &BitSet {
        &self.normal_mask
    }

    pub fn conjugate_node(&self, i: u32, by: u16) -> u32 {
        self.conj_node[by as usize][i as usize]
    }

    /// Order of the largest subgroup of nodes[h] normal in nodes[k].
    pub fn core_order(&self, k: u32, h: u32) -> u64 {
        debug_assert!(self.is_sub(h, k));
        let mut core = self.nodes[h as usize].bits().clone();
        for x in self.nodes[k as usize].iter() {
            core.intersect_with(self.nodes[self.conj_node[x as usize][h as usize] as usize].bits());
            if core.count() == 1 {
                break;
            }
        }
        core.count() as u64
    }

    /// Largest n with a nonempty depth set (longest maximal chain length).
    pub fn max_depth(&self) -> usize {
        self.depth_sets.len() - 1
    }

    /// Node ids reachable from the whole group by exactly n cover steps.
    pub fn n_maximal_set(&self, n: usize) -> BitSet {
        self.depth_sets
            .get(n)
            .cloned()
            .unwrap_or_else(|| BitSet::new(self.nodes.len()))
    }

    /// Intersection of all maximal subgroups; the whole group when none
    /// exist (trivial group).
    pub fn frattini_subgroup(&self) -> ElementSet {
        let maximal = self.maximal_subgroups();
        let mut acc = self.nodes[self.full_idx as usize].clone();
        for &m in maximal {
            acc = acc.intersection(&self.nodes[m as usize]);
        }
        acc
    }

    /// Greedy chief series: each step takes the canonically first normal
    /// subgroup minimal among those strictly above the current term. The
    /// `from_top` flag flips the tie-break (canonically last) to exercise
    /// series-independence of the factor multiset.
    pub fn chief_series_with_tiebreak(&self, take_last: bool) -> ChiefSeries {
        let count = self.nodes.len();
        let mut chain = vec![self.trivial_idx];
        let mut factor_orders = Vec::new();
        while *chain.last().unwrap() != self.full_idx {
            let cur = *chain.last().unwrap();
            let mut candidates = self.sup[cur as usize].intersection(&self.normal_mask);
            candidates.remove(cur as usize);
            debug_assert!(!candidates.is_empty());
            let mut chosen = None;
            for nid in candidates.iter() {
                if self.sub[nid].intersection_count(&candidates) == 1 {
                    chosen = Some(nid as u32);
                    if !take_last {
                        break;
                    }
                }
            }
            let next = chosen.expect("normal lattice always has a minimal candidate");
            factor_orders.push(self.node_order(next) / self.node_order(cur));
            chain.push(next);
            debug_assert!(chain.len() <= count);
        }
        ChiefSeries {
            chain,
            factor_orders,
        }
    }

    pub fn chief_series(&self) -> ChiefSeries {
        self.chief_series_with_tiebreak(false)
    }

    /// Largest k over chief factors of order p^k. Defined for soluble
    /// groups only.
    pub fn rank(&self) -> Result<u32, Error> {
        if !is_soluble(&self.group) {
            return Err(Error::BadGroup(format!(
                "{}: rank is defined for soluble groups",
                self.group.name()
            )));
        }
        let series = self.chief_series();
        let mut best = 0;
        for &f in &series.factor_orders {
            let fact = crate::group::factorize(f);
            debug_assert_eq!(fact.len(), 1, "soluble chief factor must be a prime power");
            best = best.max(fact[0].1);
        }
        Ok(best)
    }

    /// DOT rendering of the cover DAG; nodes labeled "order:index", normal
    /// subgroups double-circled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph subgroups {\n  rankdir=BT;\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let peripheries = if self.normal_mask.contains(i) { 2 } else { 1 };
            out.push_str(&format!(
                "  n{} [label=\"{}:{}\" peripheries={}];\n",
                i,
                node.order(),
                i,
                peripheries
            ));
        }
        for (j, down) in self.covers_down.iter().enumerate() {
            for &i in down {
                out.push_str(&format!("  n{} -> n{};\n", i, j));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, node)| {
                serde_json::json!({
                    "index": i,
                    "order": node.order(),
                    "elements": node.iter().collect::<Vec<u16>>(),
                    "normal": self.normal_mask.contains(i),
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .covers_down
            .iter()
            .enumerate()
            .flat_map(|(j, down)| {
                down.iter()
                    .map(move |&i| serde_json::json!({"from": i, "to": j}))
            })
            .collect();
        serde_json::json!({
            "group": self.group.name(),
            "order": self.group.order(),
            "nodes": nodes,
            "covers": edges,
        })
    }

    /// The node materialized as a group in its own right.
    pub fn node_as_group(&self, i: u32) -> Result<CayleyGroup, Error> {
        let name = format!("{}[{}:{}]", self.group.name(), self.node_order(i), i);
        subgroup_group(&self.group, &self.nodes[i as usize], &name)
    }
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    /// Node ids, ascending from the trivial subgroup to the whole group.
    pub chain: Vec<u32>,
    /// Successive index of each step.
    pub factor_orders: Vec<u64>,
}

/// Derived series reaches the trivial subgroup.
pub fn is_soluble(g: &CayleyGroup) -> bool {
    let mut current = g.full_set();
    loop {
        let next = derived_subgroup(g, &current);
        if next.order() == current.order() {
            return next.order() == 1;
        }
        current = next;
    }
}

/// Subgroup generated by all commutators of the given subgroup.
pub fn derived_subgroup(g: &CayleyGroup, h: &ElementSet) -> ElementSet {
    let elems: Vec<u16> = h.iter().collect();
    let mut seed = Vec::new();
    for &a in &elems {
        for &b in &elems {
            let comm = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            seed.push(comm);
        }
    }
    seed.sort_unstable();
    seed.dedup();
    let set = g.set_from_indices(seed);
    generated_subgroup(g, &set).expect("commutator seed belongs to the same group")
}
