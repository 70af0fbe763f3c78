//! Permutations in image form with cycle-notation parsing and printing.

use crate::Error;
use std::fmt;

/// A permutation of {0, .., degree-1} stored as its image vector.
///
/// Composition convention: `a.compose(&b)` applies `b` first, then `a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img as usize >= n || seen[img as usize] {
                return Err(Error::BadPermutation(format!(
                    "image list {:?} is not a bijection on 0..{}",
                    images, n
                )));
            }
            seen[img as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    /// `self` after `other`: (self.compose(other))(x) = self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u16 == img)
    }

    /// Cycle decomposition over 1-based points, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<u16>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u16 + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, lcm)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Parses disjoint cycle notation on 1-based points, e.g. "(1 2 3)(4 5)".
/// "()" is the identity. Points must not repeat across cycles.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation, Error> {
    if degree == 0 || degree > u16::MAX as usize {
        return Err(Error::BadPermutation(format!("unusable degree {}", degree)));
    }
    let mut images: Vec<u16> = (0..degree as u16).collect();
    let mut moved = vec![false; degree];
    let bad = |msg: String| Error::BadPermutation(format!("{:?}: {}", text, msg));

    let body = text.trim();
    if body.is_empty() {
        return Err(bad("empty string".into()));
    }
    let mut rest = body;
    let mut any_cycle = false;
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| bad("expected '('".into()))?;
        if !rest[..open].trim().is_empty() {
            return Err(bad("stray text between cycles".into()));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| bad("unclosed cycle".into()))?;
        if close < open {
            return Err(bad("')' before '('".into()));
        }
        let inner = &rest[open + 1..close];
        rest = &rest[close + 1..];
        any_cycle = true;

        let points: Vec<usize> = inner
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| bad(format!("bad point {:?}", t)))
            })
            .collect::<Result<_, _>>()?;
        if points.is_empty() {
            continue;
        }
        for &p in &points {
            if p == 0 || p > degree {
                return Err(bad(format!("point {} out of range 1..={}", p, degree)));
            }
            if moved[p - 1] {
                return Err(bad(format!("point {} appears twice", p)));
            }
            moved[p - 1] = true;
        }
        for w in 0..points.len() {
            let src = points[w] - 1;
            let dst = points[(w + 1) % points.len()] - 1;
            images[src] = dst as u16;
        }
    }
    if !any_cycle {
        return Err(bad("no cycles found".into()));
    }
    Permutation::from_images(images)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
