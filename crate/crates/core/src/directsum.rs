//! Generalized direct sums `A = I1 (+)_c I2`.
//!
//! Equations involving the partial meet are read with three-valued
//! semantics: `s = t` holds when both sides are undefined, or both are
//! defined and equal. With meets as `Option<usize>` this is plain `==`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::congruence::{compatibility, Congruence, CongruencePair};
use crate::iso::ElementMap;
use crate::semilattice::{direct_product, Product, Semilattice, SemilatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectSumError {
    #[error("summand I{which} is empty")]
    EmptySummand { which: u8 },
    #[error("element {0} is not in the carrier")]
    NoSuchElement(usize),
    #[error("summand I{which} is not a subsemilattice: {source}")]
    NotSubsemilattice { which: u8, source: SemilatticeError },
    #[error("not a direct sum: {0} fails")]
    NotADirectSum(Axiom),
    #[error("phi relates ({x1},{x2}) to {count} elements")]
    InternalContradiction { x1: usize, x2: usize, count: usize },
    #[error("congruences do not form a complementary factor pair")]
    NotComplementaryPair,
}

/// The axioms of a c-direct sum, plus `ori`, which `exi` implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Mod1,
    Mod2,
    Abs,
    Exi,
    Onto,
    Ori,
}

impl Axiom {
    /// The five defining axioms, in report order.
    pub const DEFINING: [Axiom; 5] = [Axiom::Mod1, Axiom::Mod2, Axiom::Abs, Axiom::Exi, Axiom::Onto];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Mod1 => "Mod1",
            Axiom::Mod2 => "Mod2",
            Axiom::Abs => "Abs",
            Axiom::Exi => "exi",
            Axiom::Onto => "onto",
            Axiom::Ori => "ori",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown axiom {0:?} (expected Mod1, Mod2, Abs, exi, onto or ori)")]
pub struct UnknownAxiom(pub String);

impl FromStr for Axiom {
    type Err = UnknownAxiom;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mod1" => Ok(Axiom::Mod1),
            "mod2" => Ok(Axiom::Mod2),
            "abs" => Ok(Axiom::Abs),
            "exi" => Ok(Axiom::Exi),
            "onto" => Ok(Axiom::Onto),
            "ori" => Ok(Axiom::Ori),
            _ => Err(UnknownAxiom(s.to_string())),
        }
    }
}

/// Base element and two candidate summands, each kept sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SummandPair {
    pub c: usize,
    pub i1: Vec<usize>,
    pub i2: Vec<usize>,
}

impl SummandPair {
    pub fn new(
        a: &Semilattice,
        c: usize,
        mut i1: Vec<usize>,
        mut i2: Vec<usize>,
    ) -> Result<Self, DirectSumError> {
        i1.sort_unstable();
        i1.dedup();
        i2.sort_unstable();
        i2.dedup();
        let sp = SummandPair { c, i1, i2 };
        sp.validate(a)?;
        Ok(sp)
    }

    /// `(A, {c})`, the decomposition into `A` and a one-element factor.
    pub fn trivial(a: &Semilattice, c: usize) -> Self {
        SummandPair { c, i1: a.elements().collect(), i2: vec![c] }
    }

    pub fn swapped(&self) -> Self {
        SummandPair { c: self.c, i1: self.i2.clone(), i2: self.i1.clone() }
    }

    pub fn validate(&self, a: &Semilattice) -> Result<(), DirectSumError> {
        if self.c >= a.size() {
            return Err(DirectSumError::NoSuchElement(self.c));
        }
        for (which, set) in [(1, &self.i1), (2, &self.i2)] {
            if set.is_empty() {
                return Err(DirectSumError::EmptySummand { which });
            }
            if let Some(&x) = set.iter().find(|&&x| x >= a.size()) {
                return Err(DirectSumError::NoSuchElement(x));
            }
            a.is_join_closed(set)
                .map_err(|source| DirectSumError::NotSubsemilattice { which, source })?;
        }
        Ok(())
    }
}

/// The four conjuncts of `phi_c(x1, x2, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiWitness {
    pub x1: usize,
    pub x2: usize,
    pub x: usize,
    /// `x = (x v x1) ^ (x v x2)`
    pub dist: bool,
    /// `x1 = (x v x1) ^ (c v x1)`
    pub p1: bool,
    /// `x2 = (x v x2) ^ (c v x2)`
    pub p2: bool,
    /// `x1 v x2 = x v c`
    pub join: bool,
}

impl PhiWitness {
    pub fn holds(&self) -> bool {
        self.dist && self.p1 && self.p2 && self.join
    }
}

pub fn eval_phi(a: &Semilattice, c: usize, x1: usize, x2: usize, x: usize) -> PhiWitness {
    let j = |u, v| a.join(u, v);
    PhiWitness {
        x1,
        x2,
        x,
        dist: a.meet(j(x, x1), j(x, x2)) == Some(x),
        p1: a.meet(j(x, x1), j(c, x1)) == Some(x1),
        p2: a.meet(j(x, x2), j(c, x2)) == Some(x2),
        join: j(x1, x2) == j(x, c),
    }
}

#[inline]
fn phi(a: &Semilattice, c: usize, x1: usize, x2: usize, x: usize) -> bool {
    // join first: it is the cheapest conjunct and fails most often
    a.join(x1, x2) == a.join(x, c) && eval_phi(a, c, x1, x2, x).holds()
}

/// The first tuple violating an axiom, in the axiom's quantifier order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomWitness {
    Mod1 { x: usize, y: usize, x1: usize, x2: usize },
    /// `i` names which instance (`1` or `2`) failed.
    Mod2 { x: usize, y: usize, x1: usize, x2: usize, i: u8 },
    /// `swapped` is false for `x1 ^ (y1 v z2) = x1 ^ (y1 v c)` with
    /// `x1, y1 in I1, z2 in I2`, true for the interchanged form.
    Abs { swapped: bool, x1: usize, y1: usize, z2: usize },
    Exi { x1: usize, x2: usize },
    Onto { x: usize },
    Ori { x1: usize, x2: usize },
}

impl AxiomWitness {
    pub fn render(&self, a: &Semilattice) -> String {
        let l = |x: usize| a.label(x);
        match *self {
            AxiomWitness::Mod1 { x, y, x1, x2 } => {
                format!("x={} y={} x1={} x2={}", l(x), l(y), l(x1), l(x2))
            }
            AxiomWitness::Mod2 { x, y, x1, x2, i } => {
                format!("x={} y={} x1={} x2={} i={}", l(x), l(y), l(x1), l(x2), i)
            }
            AxiomWitness::Abs { swapped: false, x1, y1, z2 } => {
                format!("x1={} y1={} z2={}", l(x1), l(y1), l(z2))
            }
            AxiomWitness::Abs { swapped: true, x1, y1, z2 } => {
                format!("x2={} y2={} z1={} (interchanged)", l(x1), l(y1), l(z2))
            }
            AxiomWitness::Exi { x1, x2 } => format!("no x for x1={} x2={}", l(x1), l(x2)),
            AxiomWitness::Onto { x } => format!("no (x1,x2) for x={}", l(x)),
            AxiomWitness::Ori { x1, x2 } => format!("x1={} x2={}", l(x1), l(x2)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
}

impl From<Option<AxiomWitness>> for AxiomVerdict {
    fn from(witness: Option<AxiomWitness>) -> Self {
        AxiomVerdict { holds: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub mod1: AxiomVerdict,
    pub mod2: AxiomVerdict,
    pub abs: AxiomVerdict,
    pub exi: AxiomVerdict,
    pub onto: AxiomVerdict,
    pub ori: AxiomVerdict,
}

impl AxiomReport {
    pub fn get(&self, axiom: Axiom) -> &AxiomVerdict {
        match axiom {
            Axiom::Mod1 => &self.mod1,
            Axiom::Mod2 => &self.mod2,
            Axiom::Abs => &self.abs,
            Axiom::Exi => &self.exi,
            Axiom::Onto => &self.onto,
            Axiom::Ori => &self.ori,
        }
    }

    /// Conjunction of the five defining axioms.
    pub fn is_direct_sum(&self) -> bool {
        Axiom::DEFINING.iter().all(|&ax| self.get(ax).holds)
    }

    pub fn failed(&self) -> Vec<Axiom> {
        Axiom::DEFINING
            .iter()
            .chain(std::iter::once(&Axiom::Ori))
            .copied()
            .filter(|&ax| !self.get(ax).holds)
            .collect()
    }
}

/// Evaluates one axiom, returning its first failure.
pub(crate) fn first_failure(a: &Semilattice, sp: &SummandPair, axiom: Axiom) -> Option<AxiomWitness> {
    let SummandPair { c, i1, i2 } = sp;
    let c = *c;
    let j = |u: usize, v: usize| a.join(u, v);
    match axiom {
        Axiom::Mod1 => {
            for x in a.elements() {
                let xc = j(x, c);
                for y in a.elements() {
                    for &x1 in i1 {
                        for &x2 in i2 {
                            if !a.leq(j(x1, x2), xc) {
                                continue;
                            }
                            let lhs = a.meet(j(x, x1), j(x, x2)).map(|m| j(m, y));
                            let xy = j(x, y);
                            let rhs = a.meet(j(xy, x1), j(xy, x2));
                            if lhs != rhs {
                                return Some(AxiomWitness::Mod1 { x, y, x1, x2 });
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::Mod2 => {
            for x in a.elements() {
                for y in a.elements() {
                    let xy = j(x, y);
                    for &x1 in i1 {
                        for &x2 in i2 {
                            if !a.leq(x, j(x1, x2)) {
                                continue;
                            }
                            for (i, xi) in [(1u8, x1), (2u8, x2)] {
                                let lhs = a.meet(j(x, xi), j(c, xi)).map(|m| j(m, y));
                                let rhs = a.meet(j(xy, xi), j(j(c, y), xi));
                                if lhs != rhs {
                                    return Some(AxiomWitness::Mod2 { x, y, x1, x2, i });
                                }
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::Abs => {
            for (swapped, own, other) in [(false, i1, i2), (true, i2, i1)] {
                for &x1 in own {
                    for &y1 in own {
                        let base = a.meet(x1, j(y1, c));
                        for &z2 in other {
                            if a.meet(x1, j(y1, z2)) != base {
                                return Some(AxiomWitness::Abs { swapped, x1, y1, z2 });
                            }
                        }
                    }
                }
            }
            None
        }
        Axiom::Exi => {
            for &x1 in i1 {
                for &x2 in i2 {
                    if !a.elements().any(|x| phi(a, c, x1, x2, x)) {
                        return Some(AxiomWitness::Exi { x1, x2 });
                    }
                }
            }
            None
        }
        Axiom::Onto => a
            .elements()
            .find(|&x| !i1.iter().any(|&x1| i2.iter().any(|&x2| phi(a, c, x1, x2, x))))
            .map(|x| AxiomWitness::Onto { x }),
        Axiom::Ori => {
            for &x1 in i1 {
                for &x2 in i2 {
                    if !a.leq(c, j(x1, x2)) {
                        return Some(AxiomWitness::Ori { x1, x2 });
                    }
                }
            }
            None
        }
    }
}

/// Checks every axiom by exhaustive quantification.
pub fn check_axioms(a: &Semilattice, sp: &SummandPair) -> Result<AxiomReport, DirectSumError> {
    sp.validate(a)?;
    let v = |axiom| AxiomVerdict::from(first_failure(a, sp, axiom));
    Ok(AxiomReport {
        mod1: v(Axiom::Mod1),
        mod2: v(Axiom::Mod2),
        abs: v(Axiom::Abs),
        exi: v(Axiom::Exi),
        onto: v(Axiom::Onto),
        ori: v(Axiom::Ori),
    })
}

/// Same verdict as `check_axioms(..).is_direct_sum()`, stopping at the first
/// failing axiom (cheapest first).
pub fn is_direct_sum(a: &Semilattice, sp: &SummandPair) -> Result<bool, DirectSumError> {
    sp.validate(a)?;
    Ok(holds_unchecked(a, sp))
}

pub(crate) fn holds_unchecked(a: &Semilattice, sp: &SummandPair) -> bool {
    // onto needs at least |A| distinct pairs
    if sp.i1.len() * sp.i2.len() < a.size() {
        return false;
    }
    [Axiom::Onto, Axiom::Exi, Axiom::Abs, Axiom::Mod2, Axiom::Mod1]
        .iter()
        .all(|&ax| first_failure(a, sp, ax).is_none())
}

/// `I1 x I2` as a product semilattice; `(p, q)` indexes `(i1[p], i2[q])`.
pub fn summand_product(a: &Semilattice, sp: &SummandPair) -> Result<Product, DirectSumError> {
    let left = a
        .restrict(&sp.i1)
        .map_err(|source| DirectSumError::NotSubsemilattice { which: 1, source })?;
    let right = a
        .restrict(&sp.i2)
        .map_err(|source| DirectSumError::NotSubsemilattice { which: 2, source })?;
    direct_product(&left, &right).map_err(|source| DirectSumError::NotSubsemilattice { which: 1, source })
}

pub(crate) fn require_direct_sum(a: &Semilattice, sp: &SummandPair) -> Result<(), DirectSumError> {
    sp.validate(a)?;
    if !holds_unchecked(a, sp) {
        let failed = check_axioms(a, sp)?.failed();
        return Err(DirectSumError::NotADirectSum(failed[0]));
    }
    Ok(())
}

/// The map `(x1, x2) -> x` defined by `phi_c`, on the carrier of
/// [`summand_product`].
pub fn build_isomorphism(a: &Semilattice, sp: &SummandPair) -> Result<ElementMap, DirectSumError> {
    require_direct_sum(a, sp)?;
    let mut images = Vec::with_capacity(sp.i1.len() * sp.i2.len());
    for &x1 in &sp.i1 {
        for &x2 in &sp.i2 {
            let mut solutions = a.elements().filter(|&x| phi(a, sp.c, x1, x2, x));
            match (solutions.next(), solutions.count()) {
                (Some(x), 0) => images.push(x),
                (first, rest) => {
                    return Err(DirectSumError::InternalContradiction {
                        x1,
                        x2,
                        count: first.map_or(0, |_| 1 + rest),
                    })
                }
            }
        }
    }
    let map = ElementMap::new(images, a.size());
    if !map.is_bijective() {
        let x = (0..a.size()).find(|x| !map.images().contains(x)).unwrap_or(0);
        return Err(DirectSumError::InternalContradiction { x1: x, x2: x, count: 0 });
    }
    Ok(map)
}

/// Canonical projections `pi1: A -> I1`, `pi2: A -> I2`, valued in `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projections {
    pub pi1: ElementMap,
    pub pi2: ElementMap,
}

pub fn projections(a: &Semilattice, sp: &SummandPair) -> Result<Projections, DirectSumError> {
    let iso = build_isomorphism(a, sp)?;
    let inverse = iso.inverse().expect("isomorphism is bijective");
    let k = sp.i2.len();
    let n = a.size();
    let pi1 = a.elements().map(|x| sp.i1[inverse.apply(x) / k]).collect();
    let pi2 = a.elements().map(|x| sp.i2[inverse.apply(x) % k]).collect();
    Ok(Projections { pi1: ElementMap::new(pi1, n), pi2: ElementMap::new(pi2, n) })
}

/// `(theta, delta) -> (c/theta, c/delta)`.
pub fn map_i(
    a: &Semilattice,
    c: usize,
    theta: &Congruence,
    delta: &Congruence,
) -> Result<SummandPair, DirectSumError> {
    if c >= a.size() {
        return Err(DirectSumError::NoSuchElement(c));
    }
    if theta.size() != a.size()
        || delta.size() != a.size()
        || !compatibility(a, theta).holds()
        || !compatibility(a, delta).holds()
        || CongruencePair::test(theta, delta).is_none()
    {
        return Err(DirectSumError::NotComplementaryPair);
    }
    Ok(SummandPair { c, i1: theta.block_of(c), i2: delta.block_of(c) })
}

/// `(I1, I2) -> (ker pi2, ker pi1)`.
pub fn map_k(a: &Semilattice, sp: &SummandPair) -> Result<(Congruence, Congruence), DirectSumError> {
    let Projections { pi1, pi2 } = projections(a, sp)?;
    Ok((Congruence::from_labels(pi2.images()), Congruence::from_labels(pi1.images())))
}
