//! Finite join-semilattices up to isomorphism, and the search for models
//! that satisfy all direct-sum axioms but one.
//!
//! Removing a minimal element from a join-semilattice leaves a
//! join-semilattice, so every structure of size `n` is obtained from one of
//! size `n - 1` by adjoining a new minimal element below a suitable up-set.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::directsum::{check_axioms, first_failure, Axiom, AxiomReport, SummandPair};
use crate::iso::{canonical_form, CanonicalForm};
use crate::semilattice::Semilattice;

pub const DEFAULT_ENUMERATION_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("size {n} is outside 1..={cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("{0} is not one of the five defining axioms")]
    UnknownAxiom(Axiom),
}

pub fn enumerate_semilattices(n: usize) -> Result<Vec<Semilattice>, EnumerateError> {
    enumerate_semilattices_with_cap(n, DEFAULT_ENUMERATION_CAP)
}

/// One representative per isomorphism class, each relabelled to its
/// canonical form, sorted by canonical join table.
pub fn enumerate_semilattices_with_cap(n: usize, cap: usize) -> Result<Vec<Semilattice>, EnumerateError> {
    Ok(corpus_with_cap(n, cap)?.pop().unwrap_or_default())
}

/// All levels `1..=max_n` of the corpus; entry `k` holds size `k + 1`.
pub fn corpus(max_n: usize) -> Result<Vec<Vec<Semilattice>>, EnumerateError> {
    corpus_with_cap(max_n, DEFAULT_ENUMERATION_CAP)
}

fn corpus_with_cap(max_n: usize, cap: usize) -> Result<Vec<Vec<Semilattice>>, EnumerateError> {
    if max_n == 0 || max_n > cap {
        return Err(EnumerateError::CapExceeded { n: max_n, cap });
    }
    let mut levels = vec![vec![Semilattice::chain(1)]];
    while levels.len() < max_n {
        let next = extend_level(levels.last().expect("nonempty"));
        levels.push(next);
    }
    Ok(levels)
}

fn extend_level(level: &[Semilattice]) -> Vec<Semilattice> {
    let mut found: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
    for s in level {
        for a in minimal_extensions(s) {
            found.insert(canonical_form(&a).0, ());
        }
    }
    found
        .into_keys()
        .map(|form| {
            Semilattice::from_flat(form.size, form.table, None).expect("canonical tables are valid")
        })
        .collect()
}

/// Every semilattice obtained from `s` by adding one new minimal element
/// (index `s.size()`).
fn minimal_extensions(s: &Semilattice) -> Vec<Semilattice> {
    let m = s.size();
    let mut out = Vec::new();
    for mask in 1u64..(1 << m) {
        let up: Vec<usize> = (0..m).filter(|&x| mask >> x & 1 == 1).collect();
        let up_closed = up.iter().all(|&x| (0..m).all(|y| !s.leq(x, y) || mask >> y & 1 == 1));
        if !up_closed {
            continue;
        }
        // the new element joins with s at the least member of up ∩ ↑s
        let mut joins = Vec::with_capacity(m);
        for x in 0..m {
            let bounds: Vec<usize> = up.iter().copied().filter(|&u| s.leq(x, u)).collect();
            match bounds.iter().copied().find(|&u| bounds.iter().all(|&v| s.leq(u, v))) {
                Some(u) => joins.push(u),
                None => break,
            }
        }
        if joins.len() < m {
            continue;
        }
        let n = m + 1;
        let mut table = vec![0; n * n];
        for x in 0..m {
            for y in 0..m {
                table[x * n + y] = s.join(x, y);
            }
            table[x * n + m] = joins[x];
            table[m * n + x] = joins[x];
        }
        table[m * n + m] = m;
        out.push(Semilattice::from_flat(n, table, None).expect("extension is a semilattice"));
    }
    out
}

/// Join-closed nonempty subsets, ordered by size and then lexicographically.
pub fn join_closed_subsets(a: &Semilattice) -> Vec<Vec<usize>> {
    let n = a.size();
    assert!(n < 64, "subset enumeration needs fewer than 64 elements");
    let mut out: Vec<Vec<usize>> = (1u64..(1 << n))
        .filter(|&mask| {
            (0..n).all(|x| {
                mask >> x & 1 == 0
                    || (0..n).all(|y| mask >> y & 1 == 0 || mask >> a.join(x, y) & 1 == 1)
            })
        })
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect())
        .collect();
    out.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    out
}

/// A model satisfying every defining axiom except `failed_axiom`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub a: Semilattice,
    /// Position of `a` within its size level of the corpus.
    pub index: usize,
    pub pair: SummandPair,
    pub failed_axiom: Axiom,
    pub report: AxiomReport,
}

pub fn independence_search(axiom: Axiom, max_n: usize) -> Result<Option<Witness>, EnumerateError> {
    independence_search_with_cap(axiom, max_n, DEFAULT_ENUMERATION_CAP)
}

/// Scans sizes `1..=max_n`, structures in corpus order, then `c`, `I1`, `I2`
/// in canonical order, and returns the first model failing exactly `axiom`.
pub fn independence_search_with_cap(
    axiom: Axiom,
    max_n: usize,
    cap: usize,
) -> Result<Option<Witness>, EnumerateError> {
    if !Axiom::DEFINING.contains(&axiom) {
        return Err(EnumerateError::UnknownAxiom(axiom));
    }
    let levels = corpus_with_cap(max_n, cap)?;
    // The others, cheapest first.
    let others: Vec<Axiom> = [Axiom::Onto, Axiom::Exi, Axiom::Abs, Axiom::Mod2, Axiom::Mod1]
        .into_iter()
        .filter(|&ax| ax != axiom)
        .collect();
    for level in &levels {
        for (index, a) in level.iter().enumerate() {
            if let Some(pair) = search_structure(a, axiom, &others) {
                let report = check_axioms(a, &pair).expect("search only yields valid pairs");
                debug_assert_eq!(report.failed().first(), Some(&axiom));
                return Ok(Some(Witness { a: a.clone(), index, pair, failed_axiom: axiom, report }));
            }
        }
    }
    Ok(None)
}

fn search_structure(a: &Semilattice, axiom: Axiom, others: &[Axiom]) -> Option<SummandPair> {
    let n = a.size();
    let subsets = join_closed_subsets(a);
    for c in a.elements() {
        for i1 in &subsets {
            for i2 in &subsets {
                if axiom != Axiom::Onto && i1.len() * i2.len() < n {
                    continue;
                }
                let sp = SummandPair { c, i1: i1.clone(), i2: i2.clone() };
                if others.iter().all(|&ax| first_failure(a, &sp, ax).is_none())
                    && first_failure(a, &sp, axiom).is_some()
                {
                    return Some(sp);
                }
            }
        }
    }
    None
}
