//! Cayley-table groups and element-set algebra.
//!
//! A group is materialized from permutation generators by breadth-first
//! closure; elements are indexed in discovery order with the identity at
//! index 0, and every downstream canonical form depends on that fixed
//! indexing. Subsets of a group are dense bitsets tagged with the owning
//! group's id so sets from different groups cannot be mixed up silently.

use crate::bitset::BitSet;
use crate::perm::{lcm, parse_permutation, Permutation};
use crate::Error;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

/// Hard cap on materialized group order; tables are order^2 entries.
pub const ENGINE_ORDER_CAP: usize = 2048;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

pub struct CayleyGroup {
    id: u64,
    name: String,
    degree: usize,
    perms: Vec<Permutation>,
    table: Vec<u16>,
    inverses: Vec<u16>,
    orders: Vec<u64>,
    factorization: Vec<(u64, u32)>,
    abelian: bool,
}

/// A subset of a group's elements, tagged with the owning group's id.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    group_id: u64,
    bits: BitSet,
}

impl ElementSet {
    pub fn group_id(&self) -> u64 {
        self.group_id
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    /// Number of elements in the set.
    pub fn order(&self) -> u64 {
        self.bits.count() as u64
    }

    pub fn contains(&self, idx: u16) -> bool {
        self.bits.contains(idx as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.bits.iter().map(|i| i as u16)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.group_id == other.group_id && self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.group_id, other.group_id);
        ElementSet {
            group_id: self.group_id,
            bits: self.bits.intersection(&other.bits),
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        debug_assert_eq!(self.group_id, other.group_id);
        ElementSet {
            group_id: self.group_id,
            bits: self.bits.union(&other.bits),
        }
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ElementSet(g{}, {:?})", self.group_id, self.bits)
    }
}

impl CayleyGroup {
    /// Builds a group from an already closed permutation list. The first
    /// permutation must be the identity; the list order becomes the element
    /// indexing.
    fn from_closed_perms(name: String, degree: usize, perms: Vec<Permutation>) -> Result<Self, Error> {
        let n = perms.len();
        if n == 0 || !perms[0].is_identity() {
            return Err(Error::BadGroup(format!(
                "{}: element list must start with the identity",
                name
            )));
        }
        if n > ENGINE_ORDER_CAP {
            return Err(Error::TooLarge {
                order: n as u64,
                cap: ENGINE_ORDER_CAP as u64,
                context: "group construction",
            });
        }
        let mut index: HashMap<&Permutation, u16> = HashMap::with_capacity(n);
        for (i, p) in perms.iter().enumerate() {
            if p.degree() != degree {
                return Err(Error::BadGroup(format!("{}: mixed degrees", name)));
            }
            if index.insert(p, i as u16).is_some() {
                return Err(Error::BadGroup(format!("{}: duplicate element", name)));
            }
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod = perms[a].compose(&perms[b]);
                let idx = *index.get(&prod).ok_or_else(|| {
                    Error::BadGroup(format!("{}: element list not closed under product", name))
                })?;
                table[a * n + b] = idx;
            }
        }
        let mut inverses = vec![0u16; n];
        for a in 0..n {
            let mut found = false;
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverses[a] = b as u16;
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::BadGroup(format!("{}: element without inverse", name)));
            }
        }
        let orders = perms.iter().map(|p| p.order()).collect();
        let mut abelian = true;
        'outer: for a in 0..n {
            for b in (a + 1)..n {
                if table[a * n + b] != table[b * n + a] {
                    abelian = false;
                    break 'outer;
                }
            }
        }
        Ok(CayleyGroup {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            name,
            degree,
            perms,
            table,
            inverses,
            orders,
            factorization: factorize(n as u64),
            abelian,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.perms.len() as u64
    }

    fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.len() + b as usize]
    }

    pub fn inv(&self, a: u16) -> u16 {
        self.inverses[a as usize]
    }

    /// g x g^{-1}.
    pub fn conj(&self, g: u16, x: u16) -> u16 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn perm(&self, a: u16) -> &Permutation {
        &self.perms[a as usize]
    }

    pub fn element_order(&self, a: u16) -> u64 {
        self.orders[a as usize]
    }

    pub fn element_index(&self, p: &Permutation) -> Option<u16> {
        self.perms.iter().position(|q| q == p).map(|i| i as u16)
    }

    /// Prime factorization of |G| as (prime, exponent) pairs, ascending.
    pub fn prime_factorization(&self) -> &[(u64, u32)] {
        &self.factorization
    }

    pub fn primes(&self) -> Vec<u64> {
        self.factorization.iter().map(|&(p, _)| p).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn trivial_set(&self) -> ElementSet {
        ElementSet {
            group_id: self.id,
            bits: BitSet::singleton(self.len(), 0),
        }
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet {
            group_id: self.id,
            bits: BitSet::full(self.len()),
        }
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet {
            group_id: self.id,
            bits: BitSet::new(self.len()),
        }
    }

    pub fn set_from_bits(&self, bits: BitSet) -> ElementSet {
        debug_assert_eq!(bits.len(), self.len());
        ElementSet {
            group_id: self.id,
            bits,
        }
    }

    pub fn set_from_indices<I: IntoIterator<Item = u16>>(&self, iter: I) -> ElementSet {
        let mut bits = BitSet::new(self.len());
        for i in iter {
            bits.insert(i as usize);
        }
        ElementSet {
            group_id: self.id,
            bits,
        }
    }

    pub fn owns(&self, s: &ElementSet) -> bool {
        s.group_id == self.id
    }

    fn check_owned(&self, s: &ElementSet, what: &str) -> Result<(), Error> {
        if !self.owns(s) {
            return Err(Error::GroupMismatch(format!(
                "{} belongs to group id {}, expected {} ({})",
                what, s.group_id, self.id, self.name
            )));
        }
        Ok(())
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> ElementSet {
        let n = self.len();
        let mut bits = BitSet::new(n);
        for a in 0..n as u16 {
            if (0..n as u16).all(|b| self.mul(a, b) == self.mul(b, a)) {
                bits.insert(a as usize);
            }
        }
        ElementSet {
            group_id: self.id,
            bits,
        }
    }

    /// True when the set contains the identity and is closed under the
    /// table product (sufficient for a subgroup in a finite group).
    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        if !self.owns(s) || !s.contains(0) {
            return false;
        }
        let elems: Vec<u16> = s.iter().collect();
        elems
            .iter()
            .all(|&a| elems.iter().all(|&b| s.contains(self.mul(a, b))))
    }
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// Closure of the generators under composition, breadth-first; elements are
/// indexed in discovery order with the identity first.
pub fn group_from_generators(
    name: &str,
    degree: usize,
    gens: &[Permutation],
) -> Result<CayleyGroup, Error> {
    if degree == 0 {
        return Err(Error::BadGroup(format!("{}: degree must be positive", name)));
    }
    for g in gens {
        if g.degree() != degree {
            return Err(Error::BadGroup(format!(
                "{}: generator degree {} does not match {}",
                name,
                g.degree(),
                degree
            )));
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    seen.insert(identity, 0);
    let mut next = 0;
    while next < elems.len() {
        if elems.len() > ENGINE_ORDER_CAP {
            return Err(Error::TooLarge {
                order: elems.len() as u64,
                cap: ENGINE_ORDER_CAP as u64,
                context: "generator closure",
            });
        }
        let current = elems[next].clone();
        next += 1;
        for g in gens {
            let prod = current.compose(g);
            if !seen.contains_key(&prod) {
                seen.insert(prod.clone(), elems.len());
                elems.push(prod);
            }
        }
    }
    CayleyGroup::from_closed_perms(name.to_string(), degree, elems)
}

/// Convenience wrapper parsing cycle-notation generator strings.
pub fn group_from_cycles(name: &str, degree: usize, gens: &[&str]) -> Result<CayleyGroup, Error> {
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|t| parse_permutation(t, degree))
        .collect::<Result<_, _>>()?;
    group_from_generators(name, degree, &perms)
}

/// Named construction recipes for the builtin families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedFamilySpec {
    /// C_n, any n >= 1.
    Cyclic(u32),
    /// Dihedral group of order 2n, n >= 3.
    Dihedral(u32),
    /// S_n for 3 <= n <= 5.
    Symmetric(u32),
    /// A_n for 4 <= n <= 5.
    Alternating(u32),
    /// Q8.
    Quaternion,
    /// Order p^m with presentation a^(p^(m-1)) = b^p = 1,
    /// b^-1 a b = a^(1 + p^(m-2)); requires m >= 3.
    ModularP { p: u32, m: u32 },
}

pub fn make_family(spec: &NamedFamilySpec) -> Result<CayleyGroup, Error> {
    let (name, degree, gens) = family_generators(spec)?;
    group_from_generators(&name, degree, &gens)
}

/// Name, degree, and generating permutations for a family member; the same
/// data make_family closes over.
pub fn family_generators(
    spec: &NamedFamilySpec,
) -> Result<(String, usize, Vec<Permutation>), Error> {
    match *spec {
        NamedFamilySpec::Cyclic(n) => {
            if n == 0 {
                return Err(Error::BadGroup("cyclic: n must be >= 1".into()));
            }
            let name = format!("C{}", n);
            if n == 1 {
                return Ok((name, 1, Vec::new()));
            }
            let images: Vec<u16> = (0..n as u16).map(|x| (x + 1) % n as u16).collect();
            Ok((name, n as usize, vec![Permutation::from_images(images)?]))
        }
        NamedFamilySpec::Dihedral(n) => {
            if n < 3 {
                return Err(Error::BadGroup("dihedral: n must be >= 3".into()));
            }
            let rot: Vec<u16> = (0..n as u16).map(|x| (x + 1) % n as u16).collect();
            let flip: Vec<u16> = (0..n as u16).map(|x| (n as u16 - 1) - x).collect();
            let gens = vec![Permutation::from_images(rot)?, Permutation::from_images(flip)?];
            Ok((format!("D{}", 2 * n), n as usize, gens))
        }
        NamedFamilySpec::Symmetric(n) => {
            if !(3..=5).contains(&n) {
                return Err(Error::BadGroup("symmetric: n must be 3..=5".into()));
            }
            let deg = n as usize;
            let gens = vec![
                parse_permutation("(1 2)", deg)?,
                parse_permutation(&cycle_string(1, n), deg)?,
            ];
            Ok((format!("S{}", n), deg, gens))
        }
        NamedFamilySpec::Alternating(n) => {
            if !(4..=5).contains(&n) {
                return Err(Error::BadGroup("alternating: n must be 4..=5".into()));
            }
            let deg = n as usize;
            let second = if n == 4 { "(1 2)(3 4)".to_string() } else { cycle_string(1, 5) };
            let gens = vec![
                parse_permutation("(1 2 3)", deg)?,
                parse_permutation(&second, deg)?,
            ];
            Ok((format!("A{}", n), deg, gens))
        }
        NamedFamilySpec::Quaternion => {
            let gens = vec![
                parse_permutation("(1 2 3 4)(5 6 7 8)", 8)?,
                parse_permutation("(1 5 3 7)(2 8 4 6)", 8)?,
            ];
            Ok(("Q8".into(), 8, gens))
        }
        NamedFamilySpec::ModularP { p, m } => modular_p_generators(p, m),
    }
}

fn cycle_string(from: u32, to: u32) -> String {
    let pts: Vec<String> = (from..=to).map(|x| x.to_string()).collect();
    format!("({})", pts.join(" "))
}

/// The modular group of order p^m acting as affine maps on Z_(p^(m-1)):
/// a is x -> x+1 and b is x -> r^-1 x with r = 1 + p^(m-2), so that
/// b^-1 a b = a^r holds exactly.
fn modular_p_generators(p: u32, m: u32) -> Result<(String, usize, Vec<Permutation>), Error> {
    if !is_prime(p as u64) {
        return Err(Error::BadGroup(format!("modular_p: p = {} is not prime", p)));
    }
    if m < 3 {
        return Err(Error::BadGroup("modular_p: m must be >= 3".into()));
    }
    let order = (p as u64).checked_pow(m).filter(|&o| o <= ENGINE_ORDER_CAP as u64);
    let order = order.ok_or(Error::TooLarge {
        order: 0,
        cap: ENGINE_ORDER_CAP as u64,
        context: "modular_p construction",
    })?;
    let n = (p as u64).pow(m - 1);
    let r = (1 + (p as u64).pow(m - 2)) % n;
    let r_inv = mod_inverse(r, n).expect("r is a unit mod p^(m-1)");
    let a: Vec<u16> = (0..n).map(|x| ((x + 1) % n) as u16).collect();
    let b: Vec<u16> = (0..n).map(|x| ((r_inv * x) % n) as u16).collect();
    let gens = vec![Permutation::from_images(a)?, Permutation::from_images(b)?];
    Ok((format!("Mod{}", order), n as usize, gens))
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % n as i128 + n as i128) % n as i128) as u64)
}

/// Componentwise product on pairs, elements indexed lexicographically:
/// pair (i, j) gets index i * |B| + j.
pub fn direct_product(a: &CayleyGroup, b: &CayleyGroup) -> Result<CayleyGroup, Error> {
    let (na, nb) = (a.len(), b.len());
    let n = na.checked_mul(nb).filter(|&n| n <= ENGINE_ORDER_CAP);
    let n = n.ok_or(Error::TooLarge {
        order: na as u64 * nb as u64,
        cap: ENGINE_ORDER_CAP as u64,
        context: "direct product",
    })?;
    let degree = a.degree + b.degree;
    let mut perms = Vec::with_capacity(n);
    for i in 0..na {
        for j in 0..nb {
            let mut images: Vec<u16> = a.perms[i].images().to_vec();
            images.extend(b.perms[j].images().iter().map(|&x| x + a.degree as u16));
            perms.push(Permutation::from_images(images)?);
        }
    }
    let mut table = vec![0u16; n * n];
    for i1 in 0..na {
        for j1 in 0..nb {
            let lhs = i1 * nb + j1;
            for i2 in 0..na {
                let ai = a.table[i1 * na + i2] as usize;
                for j2 in 0..nb {
                    let bj = b.table[j1 * nb + j2] as usize;
                    table[lhs * n + i2 * nb + j2] = (ai * nb + bj) as u16;
                }
            }
        }
    }
    let mut inverses = vec![0u16; n];
    let mut orders = vec![0u64; n];
    for i in 0..na {
        for j in 0..nb {
            let idx = i * nb + j;
            inverses[idx] = (a.inverses[i] as usize * nb + b.inverses[j] as usize) as u16;
            orders[idx] = lcm(a.orders[i], b.orders[j]);
        }
    }
    Ok(CayleyGroup {
        id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
        name: format!("{}x{}", a.name, b.name),
        degree,
        perms,
        table,
        inverses,
        orders,
        factorization: factorize(n as u64),
        abelian: a.abelian && b.abelian,
    })
}

/// Quotient by a normal subgroup. Returns the quotient (acting on its own
/// cosets by left translation) and the projection element index -> coset
/// index. Coset indices follow the minimal-representative order, so the
/// identity coset is index 0.
pub fn quotient_group(g: &CayleyGroup, n: &ElementSet) -> Result<(CayleyGroup, Vec<u16>), Error> {
    g.check_owned(n, "quotient kernel")?;
    if !g.is_subgroup(n) {
        return Err(Error::BadGroup(format!("{}: quotient kernel is not a subgroup", g.name)));
    }
    if !is_normal_in(g, n, &g.full_set()) {
        return Err(Error::BadGroup(format!("{}: quotient kernel is not normal", g.name)));
    }
    let size = g.len();
    let mut rep = vec![u16::MAX; size];
    for e in 0..size as u16 {
        if rep[e as usize] != u16::MAX {
            continue;
        }
        let mut members: Vec<u16> = n.iter().map(|x| g.mul(e, x)).collect();
        members.sort_unstable();
        let r = members[0];
        for m in members {
            rep[m as usize] = r;
        }
    }
    let mut reps: Vec<u16> = rep.to_vec();
    reps.sort_unstable();
    reps.dedup();
    let coset_of_rep: HashMap<u16, u16> = reps.iter().enumerate().map(|(i, &r)| (r, i as u16)).collect();
    let proj: Vec<u16> = rep.iter().map(|r| coset_of_rep[r]).collect();
    let q = reps.len();
    let perms: Vec<Permutation> = reps
        .iter()
        .map(|&rc| {
            let images: Vec<u16> = reps.iter().map(|&rx| proj[g.mul(rc, rx) as usize]).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<_, _>>()?;
    let name = format!("{}/N{}", g.name, n.order());
    let quot = CayleyGroup::from_closed_perms(name, q, perms)?;
    Ok((quot, proj))
}

/// The subgroup H materialized as a group in its own right, reusing the
/// parent's permutation action. Parent element indexing induces the new
/// indexing, so the identity stays first.
pub fn subgroup_group(g: &CayleyGroup, h: &ElementSet, name: &str) -> Result<CayleyGroup, Error> {
    g.check_owned(h, "subgroup")?;
    if !g.is_subgroup(h) {
        return Err(Error::BadGroup(format!("{}: set is not a subgroup", g.name)));
    }
    let perms: Vec<Permutation> = h.iter().map(|i| g.perms[i as usize].clone()).collect();
    CayleyGroup::from_closed_perms(name.to_string(), g.degree, perms)
}

/// The set product AB = {ab : a in A, b in B}.
pub fn product_set(g: &CayleyGroup, a: &ElementSet, b: &ElementSet) -> Result<ElementSet, Error> {
    g.check_owned(a, "left factor")?;
    g.check_owned(b, "right factor")?;
    let mut bits = BitSet::new(g.len());
    for x in a.iter() {
        for y in b.iter() {
            bits.insert(g.mul(x, y) as usize);
        }
    }
    Ok(ElementSet {
        group_id: g.id,
        bits,
    })
}

/// AB = BA as sets.
pub fn is_permutable(g: &CayleyGroup, a: &ElementSet, b: &ElementSet) -> Result<bool, Error> {
    Ok(product_set(g, a, b)? == product_set(g, b, a)?)
}

/// Smallest subgroup containing the seed set (semigroup closure suffices in
/// a finite group). The empty seed generates the trivial subgroup.
pub fn generated_subgroup(g: &CayleyGroup, seed: &ElementSet) -> Result<ElementSet, Error> {
    g.check_owned(seed, "seed")?;
    let gens: Vec<u16> = seed.iter().collect();
    Ok(ElementSet {
        group_id: g.id,
        bits: closure_from(g, &gens),
    })
}

/// Closure from generator indices; used internally where the seed is already
/// a list of element indices.
pub(crate) fn closure_from(g: &CayleyGroup, gens: &[u16]) -> BitSet {
    let mut bits = BitSet::singleton(g.len(), 0);
    let mut queue: Vec<u16> = vec![0];
    let mut qi = 0;
    while qi < queue.len() {
        let x = queue[qi];
        qi += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !bits.contains(y as usize) {
                bits.insert(y as usize);
                queue.push(y);
            }
        }
    }
    bits
}

/// {g x g^-1 : x in s}.
pub fn conjugate_set(g: &CayleyGroup, s: &ElementSet, by: u16) -> ElementSet {
    debug_assert!(g.owns(s));
    let mut bits = BitSet::new(g.len());
    for x in s.iter() {
        bits.insert(g.conj(by, x) as usize);
    }
    ElementSet {
        group_id: g.id,
        bits,
    }
}

/// H closed under conjugation by every element of K.
pub fn is_normal_in(g: &CayleyGroup, h: &ElementSet, k: &ElementSet) -> bool {
    debug_assert!(g.owns(h) && g.owns(k));
    k.iter().all(|x| {
        h.iter().all(|y| h.contains(g.conj(x, y)))
    })
}

/// Largest subgroup of H normal in K: the intersection of the K-conjugates
/// of H. H must be a subgroup of K.
pub fn core_in(g: &CayleyGroup, k: &ElementSet, h: &ElementSet) -> Result<ElementSet, Error> {
    g.check_owned(k, "ambient subgroup")?;
    g.check_owned(h, "cored subgroup")?;
    if !h.is_subset(k) {
        return Err(Error::BadGroup("core_in: H must be contained in K".into()));
    }
    let mut core = h.clone();
    for x in k.iter() {
        if core.order() == 1 {
            break;
        }
        core = core.intersection(&conjugate_set(g, h, x));
    }
    Ok(core)
}

/// Whether the group's upper central series reaches the whole group.
pub fn is_nilpotent(g: &CayleyGroup) -> Result<bool, Error> {
    let z = g.center();
    if z.order() == g.order() {
        return Ok(true);
    }
    if z.order() == 1 {
        return Ok(false);
    }
    let (q, _) = quotient_group(g, &z)?;
    is_nilpotent(&q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PGroupClass {
    Cyclic,
    CyclicTimesP,
    Modular,
    Quaternion,
    Other,
}

impl PGroupClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PGroupClass::Cyclic => "cyclic",
            PGroupClass::CyclicTimesP => "cyclic_times_p",
            PGroupClass::Modular => "modular",
            PGroupClass::Quaternion => "quaternion",
            PGroupClass::Other => "other",
        }
    }
}

/// Structural tag for a p-group, tested in priority order: cyclic, then
/// cyclic times prime, then modular, then quaternion, then other.
pub fn classify_p_group(g: &CayleyGroup) -> Result<PGroupClass, Error> {
    let fact = g.prime_factorization();
    if fact.len() != 1 {
        return Err(Error::BadGroup(format!(
            "{}: classify_p_group needs a nontrivial p-group",
            g.name
        )));
    }
    let (p, m) = fact[0];
    let order = g.order();
    let exponent = (0..g.len() as u16).map(|i| g.element_order(i)).max().unwrap();
    if exponent == order {
        return Ok(PGroupClass::Cyclic);
    }
    if g.is_abelian() && exponent * p == order {
        return Ok(PGroupClass::CyclicTimesP);
    }
    if !g.is_abelian() && m >= 3 && is_modular_presentation(g, p, m) {
        return Ok(PGroupClass::Modular);
    }
    if order == 8 && !g.is_abelian() {
        let involutions = (0..g.len() as u16).filter(|&i| g.element_order(i) == 2).count();
        if involutions == 1 {
            return Ok(PGroupClass::Quaternion);
        }
    }
    Ok(PGroupClass::Other)
}

/// Some pair (a, b) satisfies a^(p^(m-1)) = b^p = 1, b not a power of a,
/// b^-1 a b = a^(1 + p^(m-2)).
fn is_modular_presentation(g: &CayleyGroup, p: u64, m: u32) -> bool {
    let half = p.pow(m - 1);
    let target_exp = (1 + p.pow(m - 2)) % half;
    for a in 1..g.len() as u16 {
        if g.element_order(a) != half {
            continue;
        }
        let mut powers = vec![0u16; half as usize];
        let mut acc = 0u16;
        for pw in powers.iter_mut() {
            *pw = acc;
            acc = g.mul(acc, a);
        }
        let in_a: BitSet = {
            let mut b = BitSet::new(g.len());
            for &x in &powers {
                b.insert(x as usize);
            }
            b
        };
        let target = powers[target_exp as usize];
        for b in 1..g.len() as u16 {
            if in_a.contains(b as usize) || g.element_order(b) != p {
                continue;
            }
            let conj = g.mul(g.mul(g.inv(b), a), b);
            if conj == target {
                return true;
            }
        }
    }
    false
}
