//! Group supply: a builtin list of named families closed under direct
//! products up to an order cap, ingestion of line-delimited generator
//! files, and enumeration of the partitions of a prime set.

use crate::group::{family_generators, group_from_generators, is_prime, NamedFamilySpec};
use crate::perm::{parse_permutation, Permutation};
use crate::sigma::SigmaPartition;
use crate::Error;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: u16,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

/// Closes the generators and checks the declared order if present.
pub fn realize_entry(entry: &CatalogEntry) -> Result<crate::group::CayleyGroup, Error> {
    let degree = entry.degree as usize;
    let gens = entry
        .generators
        .iter()
        .map(|s| parse_permutation(s, degree))
        .collect::<Result<Vec<_>, _>>()?;
    let g = group_from_generators(&entry.name, degree, &gens)?;
    if let Some(expected) = entry.expected_order {
        if g.order() != expected {
            return Err(Error::Catalog(format!(
                "{}: closure order {} does not match expected {}",
                entry.name,
                g.order(),
                expected
            )));
        }
    }
    Ok(g)
}

/// Exact name match first, then a 0-based index into the list.
pub fn resolve_entry<'a>(entries: &'a [CatalogEntry], key: &str) -> Result<&'a CatalogEntry, Error> {
    if let Some(e) = entries.iter().find(|e| e.name == key) {
        return Ok(e);
    }
    if let Ok(i) = key.parse::<usize>() {
        if i < entries.len() {
            return Ok(&entries[i]);
        }
    }
    Err(Error::UnknownGroup(key.into()))
}

fn family_entry(spec: &NamedFamilySpec, order: u64, tag: &str) -> CatalogEntry {
    let (name, degree, gens) = family_generators(spec).expect("family parameters are valid");
    CatalogEntry {
        name,
        degree: degree as u16,
        generators: gens.iter().map(|p| p.to_string()).collect(),
        expected_order: Some(order),
        tags: vec![tag.into()],
    }
}

/// Special linear group of degree two over the three-element field, acting
/// on the eight nonzero vectors, numbered (x, y) -> x + 3y.
fn linear_entry() -> CatalogEntry {
    CatalogEntry {
        name: "SL(2,3)".into(),
        degree: 8,
        generators: vec!["(3 4 5)(6 8 7)".into(), "(1 3 2 6)(4 5 8 7)".into()],
        expected_order: Some(24),
        tags: vec!["linear".into()],
    }
}

/// One factor per base entry; products carry the flattened multiset sorted
/// by (order, name), which also names the product.
#[derive(Clone)]
struct Flat {
    entry: CatalogEntry,
    factors: Vec<(u64, String)>,
}

fn product_of(a: &Flat, b: &Flat) -> Flat {
    let (first, second) = if (a.order(), &a.entry.name) <= (b.order(), &b.entry.name) {
        (a, b)
    } else {
        (b, a)
    };
    let mut factors = first.factors.clone();
    factors.extend(second.factors.iter().cloned());
    factors.sort();
    let name = factors
        .iter()
        .map(|(_, n)| n.as_str())
        .collect::<Vec<_>>()
        .join("x");
    let shift = first.entry.degree;
    let degree = first.entry.degree + second.entry.degree;
    let mut generators = first.entry.generators.clone();
    for s in &second.entry.generators {
        let p = parse_permutation(s, second.entry.degree as usize).expect("stored generator");
        let mut images: Vec<u16> = (0..shift).collect();
        images.extend(p.images().iter().map(|&x| x + shift));
        generators.push(Permutation::from_images(images).expect("shifted images").to_string());
    }
    Flat {
        entry: CatalogEntry {
            name,
            degree,
            generators,
            expected_order: Some(first.order() * second.order()),
            tags: vec!["product".into()],
        },
        factors,
    }
}

impl Flat {
    fn order(&self) -> u64 {
        self.entry.expected_order.expect("builtin orders are declared")
    }
}

/// Deterministic builtin list: cyclic, dihedral, symmetric, alternating,
/// quaternion, modular, one linear group, then the closure under pairwise
/// direct products within the cap. Deduplicated by name and sorted by
/// (order, name).
pub fn builtin_catalog(max_order: u64) -> Vec<CatalogEntry> {
    let mut flats: Vec<Flat> = Vec::new();
    let push = |spec: NamedFamilySpec, order: u64, tag: &str, flats: &mut Vec<Flat>| {
        if order <= max_order {
            let entry = family_entry(&spec, order, tag);
            let factors = vec![(order, entry.name.clone())];
            flats.push(Flat { entry, factors });
        }
    };
    for n in 1..=max_order.min(crate::group::ENGINE_ORDER_CAP as u64) {
        push(NamedFamilySpec::Cyclic(n as u32), n, "cyclic", &mut flats);
    }
    let mut n = 3u64;
    while 2 * n <= max_order {
        push(NamedFamilySpec::Dihedral(n as u32), 2 * n, "dihedral", &mut flats);
        n += 1;
    }
    for (n, order) in [(3u32, 6u64), (4, 24), (5, 120)] {
        push(NamedFamilySpec::Symmetric(n), order, "symmetric", &mut flats);
    }
    for (n, order) in [(4u32, 12u64), (5, 60)] {
        push(NamedFamilySpec::Alternating(n), order, "alternating", &mut flats);
    }
    push(NamedFamilySpec::Quaternion, 8, "quaternion", &mut flats);
    for p in [2u32, 3, 5, 7] {
        for m in 3..=11u32 {
            let order = (p as u64).pow(m);
            if order > max_order {
                break;
            }
            push(NamedFamilySpec::ModularP { p, m }, order, "modular", &mut flats);
        }
    }
    if 24 <= max_order {
        flats.push(Flat {
            factors: vec![(24, "SL(2,3)".into())],
            entry: linear_entry(),
        });
    }

    let mut seen: HashSet<String> = flats.iter().map(|f| f.entry.name.clone()).collect();
    loop {
        let mut fresh: Vec<Flat> = Vec::new();
        for i in 0..flats.len() {
            for j in i..flats.len() {
                let (a, b) = (&flats[i], &flats[j]);
                if a.order() == 1 || b.order() == 1 || a.order() * b.order() > max_order {
                    continue;
                }
                let prod = product_of(a, b);
                if seen.insert(prod.entry.name.clone()) {
                    fresh.push(prod);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        flats.extend(fresh);
    }
    let mut entries: Vec<CatalogEntry> = flats.into_iter().map(|f| f.entry).collect();
    entries.sort_by(|a, b| {
        (a.expected_order, &a.name).cmp(&(b.expected_order, &b.name))
    });
    entries
}

/// Catalog file contents: the entries that parsed and closed cleanly, plus
/// one message per rejected line.
pub struct LoadedCatalog {
    pub entries: Vec<CatalogEntry>,
    pub errors: Vec<String>,
}

/// Line-delimited entries; blank lines and lines starting with '#' are
/// skipped. A bad line is reported with its number and does not abort the
/// rest of the file.
pub fn load_catalog(path: &Path) -> Result<LoadedCatalog, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match serde_json::from_str::<CatalogEntry>(line) {
            Err(e) => errors.push(format!("line {}: {}", idx + 1, e)),
            Ok(entry) => match realize_entry(&entry) {
                Err(e) => errors.push(format!("line {}: {}", idx + 1, e)),
                Ok(_) => entries.push(entry),
            },
        }
    }
    Ok(LoadedCatalog { entries, errors })
}

/// All set partitions of the given primes, coarsest first, each completed
/// by the singleton policy for unlisted primes. The empty set yields the
/// all-singletons partition alone.
pub fn prime_partitions(primes: &[u64]) -> Result<Vec<SigmaPartition>, Error> {
    let mut ps = primes.to_vec();
    ps.sort_unstable();
    ps.dedup();
    for &p in &ps {
        if !is_prime(p) {
            return Err(Error::BadPartition(format!("{} is not prime", p)));
        }
    }
    if ps.len() > 4 {
        return Err(Error::TooLarge {
            order: ps.len() as u64,
            cap: 4,
            context: "prime partition enumeration",
        });
    }
    if ps.is_empty() {
        return Ok(vec![SigmaPartition::minimal()]);
    }
    let mut out = Vec::new();
    let mut code = vec![0usize; ps.len()];
    grow(&ps, &mut code, 1, &mut out);
    Ok(out)
}

/// Restricted growth strings in lexicographic order: position i may reuse
/// any earlier block id or open the next one.
fn grow(ps: &[u64], code: &mut Vec<usize>, pos: usize, out: &mut Vec<SigmaPartition>) {
    if pos == ps.len() {
        let blocks = code.iter().max().unwrap() + 1;
        let mut classes = vec![Vec::new(); blocks];
        for (i, &b) in code.iter().enumerate() {
            classes[b].push(ps[i]);
        }
        out.push(SigmaPartition::from_classes(classes).expect("primes are distinct"));
        return;
    }
    let max = *code[..pos].iter().max().unwrap();
    for b in 0..=max + 1 {
        code[pos] = b;
        grow(ps, code, pos + 1, out);
    }
    code[pos] = 0;
}
