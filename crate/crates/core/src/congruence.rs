//! Congruences of a finite semilattice and complementary factor pairs.
//!
//! A partition is stored as its restricted growth string: `labels[x]` is the
//! index of the block containing `x`, blocks numbered by their least element.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::iso::ElementMap;
use crate::semilattice::Semilattice;

pub const DEFAULT_CONGRUENCE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("not a partition of 0..{n}: {reason}")]
    NotAPartition { n: usize, reason: String },
    #[error("partition is not compatible with join: {x} ~ {y} but {x} v {z} !~ {y} v {z}")]
    NotACongruence { x: usize, y: usize, z: usize },
    #[error("carrier of size {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    labels: Vec<usize>,
    block_count: usize,
}

impl Congruence {
    /// Normalizes arbitrary block labels to restricted growth form.
    pub fn from_labels<T: Eq + Clone>(labels: &[T]) -> Self {
        let mut seen: Vec<T> = Vec::new();
        let labels = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(l.clone());
                    seen.len() - 1
                }
            })
            .collect();
        Congruence { labels, block_count: seen.len() }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, CongruenceError> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(CongruenceError::NotAPartition { n, reason: "empty block".into() });
            }
            for &x in block {
                if x >= n {
                    return Err(CongruenceError::NotAPartition {
                        n,
                        reason: format!("element {x} out of range"),
                    });
                }
                if labels[x] != usize::MAX {
                    return Err(CongruenceError::NotAPartition {
                        n,
                        reason: format!("element {x} appears twice"),
                    });
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(CongruenceError::NotAPartition { n, reason: format!("element {x} missing") });
        }
        Ok(Congruence::from_labels(&labels))
    }

    /// The identity relation.
    pub fn discrete(n: usize) -> Self {
        Congruence { labels: (0..n).collect(), block_count: n }
    }

    /// The all relation.
    pub fn total(n: usize) -> Self {
        Congruence { labels: vec![0; n], block_count: n.min(1) }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (x, &l) in self.labels.iter().enumerate() {
            blocks[l].push(x);
        }
        blocks
    }

    pub fn block_of(&self, x: usize) -> Vec<usize> {
        (0..self.size()).filter(|&y| self.related(x, y)).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count == self.size()
    }

    pub fn is_total(&self) -> bool {
        self.block_count <= 1
    }

    /// Inclusion of relations: every block of `self` lies in a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| !self.related(x, y) || other.related(x, y)))
    }

    pub fn intersection(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self.labels.iter().copied().zip(other.labels.iter().copied()).collect();
        Congruence::from_labels(&pairs)
    }
}

impl Ord for Congruence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.block_count
            .cmp(&other.block_count)
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl PartialOrd for Congruence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{:?}", self.blocks())
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compatibility {
    Compatible,
    /// `x` and `y` share a block but `x v z` and `y v z` do not.
    Violated { x: usize, y: usize, z: usize },
}

impl Compatibility {
    pub fn holds(&self) -> bool {
        matches!(self, Compatibility::Compatible)
    }
}

/// Join-compatibility of a partition given by blocks.
pub fn is_congruence(a: &Semilattice, blocks: &[Vec<usize>]) -> Result<Compatibility, CongruenceError> {
    let theta = Congruence::from_blocks(a.size(), blocks)?;
    Ok(compatibility(a, &theta))
}

/// First violation `(x, y, z)` with `x < y` in lexicographic order.
pub fn compatibility(a: &Semilattice, theta: &Congruence) -> Compatibility {
    for x in a.elements() {
        for y in x + 1..a.size() {
            if !theta.related(x, y) {
                continue;
            }
            for z in a.elements() {
                if !theta.related(a.join(x, z), a.join(y, z)) {
                    return Compatibility::Violated { x, y, z };
                }
            }
        }
    }
    Compatibility::Compatible
}

pub fn all_congruences(a: &Semilattice) -> Result<Vec<Congruence>, CongruenceError> {
    all_congruences_with_cap(a, DEFAULT_CONGRUENCE_CAP)
}

/// Every join-compatible partition, sorted by block count and then by
/// restricted growth string.
pub fn all_congruences_with_cap(a: &Semilattice, cap: usize) -> Result<Vec<Congruence>, CongruenceError> {
    let n = a.size();
    if n > cap {
        return Err(CongruenceError::CapExceeded { n, cap });
    }
    let mut found = Vec::new();
    let mut labels = vec![0; n];
    grow(a, &mut labels, 0, 0, &mut found);
    found.sort();
    Ok(found)
}

/// Extends a restricted growth prefix `labels[..k]` in lexicographic order,
/// discarding prefixes already incompatible on their own elements. The
/// prefix test is partial, so complete strings are checked in full.
fn grow(a: &Semilattice, labels: &mut Vec<usize>, k: usize, blocks: usize, out: &mut Vec<Congruence>) {
    let n = a.size();
    if k == n {
        let theta = Congruence { labels: labels.clone(), block_count: blocks };
        if compatibility(a, &theta).holds() {
            out.push(theta);
        }
        return;
    }
    for l in 0..=blocks {
        labels[k] = l;
        if prefix_compatible(a, labels, k) {
            grow(a, labels, k + 1, blocks.max(l + 1), out);
        }
    }
}

fn prefix_compatible(a: &Semilattice, labels: &[usize], k: usize) -> bool {
    // Triples involving k whose joins both fall inside the prefix.
    for y in 0..k {
        if labels[y] != labels[k] {
            continue;
        }
        for z in 0..=k {
            let (u, v) = (a.join(k, z), a.join(y, z));
            if u <= k && v <= k && labels[u] != labels[v] {
                return false;
            }
        }
    }
    for x in 0..=k {
        for y in 0..x {
            if labels[x] != labels[y] {
                continue;
            }
            let (u, v) = (a.join(x, k), a.join(y, k));
            if u <= k && v <= k && labels[u] != labels[v] {
                return false;
            }
        }
    }
    true
}

/// The quotient `A / theta` on blocks in canonical order, and the class map.
pub fn quotient(a: &Semilattice, theta: &Congruence) -> Result<(Semilattice, ElementMap), CongruenceError> {
    if theta.size() != a.size() {
        return Err(CongruenceError::NotAPartition {
            n: a.size(),
            reason: format!("partition has {} elements", theta.size()),
        });
    }
    if let Compatibility::Violated { x, y, z } = compatibility(a, theta) {
        return Err(CongruenceError::NotACongruence { x, y, z });
    }
    let blocks = theta.blocks();
    let k = blocks.len();
    let join = (0..k * k)
        .map(|i| theta.class_of(a.join(blocks[i / k][0], blocks[i % k][0])))
        .collect();
    let names = a.names().map(|_| {
        blocks
            .iter()
            .map(|b| b.iter().map(|&x| a.label(x)).collect::<Vec<_>>().join("+"))
            .collect()
    });
    let q = Semilattice::from_flat(k, join, names).expect("quotient by a congruence is a semilattice");
    Ok((q, ElementMap::new(theta.labels.clone(), k)))
}

/// A pair `(theta, delta)` whose natural map `a -> (a/delta, a/theta)` is an
/// isomorphism onto `A/delta x A/theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruencePair {
    pub theta: Congruence,
    pub delta: Congruence,
    /// Into the product carrier, `(a/delta, a/theta)` at `d * |A/theta| + t`.
    pub natural_map: ElementMap,
}

impl CongruencePair {
    pub fn is_trivial(&self) -> bool {
        self.theta.is_discrete() || self.delta.is_discrete()
    }

    pub fn swapped(&self) -> CongruencePair {
        CongruencePair::test(&self.delta, &self.theta).expect("swap of a factor pair is a factor pair")
    }

    /// The natural map, when it is a bijection. Each component is a
    /// homomorphism, so bijectivity is all that needs checking.
    pub fn test(theta: &Congruence, delta: &Congruence) -> Option<CongruencePair> {
        let n = theta.size();
        if theta.block_count() * delta.block_count() != n {
            return None;
        }
        let images: Vec<usize> = (0..n)
            .map(|x| delta.class_of(x) * theta.block_count() + theta.class_of(x))
            .collect();
        let natural_map = ElementMap::new(images, n);
        natural_map.is_bijective().then(|| CongruencePair {
            theta: theta.clone(),
            delta: delta.clone(),
            natural_map,
        })
    }
}

pub fn complementary_factor_pairs(a: &Semilattice) -> Result<Vec<CongruencePair>, CongruenceError> {
    complementary_factor_pairs_with_cap(a, DEFAULT_CONGRUENCE_CAP)
}

/// All ordered complementary pairs, in canonical order of `(theta, delta)`.
pub fn complementary_factor_pairs_with_cap(
    a: &Semilattice,
    cap: usize,
) -> Result<Vec<CongruencePair>, CongruenceError> {
    let congruences = all_congruences_with_cap(a, cap)?;
    let mut pairs = Vec::new();
    for theta in &congruences {
        for delta in &congruences {
            if let Some(pair) = CongruencePair::test(theta, delta) {
                pairs.push(pair);
            }
        }
    }
    Ok(pairs)
}
