//! Simplified direct-sum criteria when the base element is the minimum or
//! the maximum of the semilattice.

use std::fmt;

use crate::directsum::{DirectSumError, SummandPair};
use crate::semilattice::Semilattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundedAxiom {
    /// `x1 ^ (y1 v z2) = x1 ^ y1`, both orientations.
    AbsZero,
    /// `I1 v I2 = A`.
    OntoZero,
    /// `I1 v I2 = {1}`.
    ExiOne,
    /// Every element is `x1 ^ x2` for some defined meet.
    OntoOne,
    /// `(x1 ^ x2) v y = (y v x1) ^ (y v x2)`.
    Mod1One,
}

impl fmt::Display for BoundedAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundedAxiom::AbsZero => "Abs'",
            BoundedAxiom::OntoZero => "onto'",
            BoundedAxiom::ExiOne => "exi'",
            BoundedAxiom::OntoOne => "onto'",
            BoundedAxiom::Mod1One => "Mod1'",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundedWitness {
    Abs { swapped: bool, x1: usize, y1: usize, z2: usize },
    Missing { x: usize },
    Exi { x1: usize, x2: usize },
    Mod1 { x1: usize, x2: usize, y: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedReport {
    /// False when the semilattice has no minimum (zero case only).
    pub applicable: bool,
    /// The bound used as base element.
    pub c: Option<usize>,
    pub verdicts: Vec<(BoundedAxiom, Option<BoundedWitness>)>,
    pub holds: bool,
    /// Downward (zero case) or upward (one case) closure of both summands,
    /// reported when `holds`.
    pub closure: Option<bool>,
}

impl BoundedReport {
    fn not_applicable() -> Self {
        BoundedReport { applicable: false, c: None, verdicts: Vec::new(), holds: false, closure: None }
    }

    fn assemble(
        c: usize,
        verdicts: Vec<(BoundedAxiom, Option<BoundedWitness>)>,
        closure: impl FnOnce() -> bool,
    ) -> Self {
        let holds = verdicts.iter().all(|(_, w)| w.is_none());
        BoundedReport { applicable: true, c: Some(c), verdicts, holds, closure: holds.then(closure) }
    }

    pub fn verdict(&self, axiom: BoundedAxiom) -> Option<&Option<BoundedWitness>> {
        self.verdicts.iter().find(|(ax, _)| *ax == axiom).map(|(_, w)| w)
    }
}

fn validate(a: &Semilattice, i1: &[usize], i2: &[usize]) -> Result<(), DirectSumError> {
    SummandPair { c: 0, i1: i1.to_vec(), i2: i2.to_vec() }.validate(a)
}

fn down_closed(a: &Semilattice, set: &[usize]) -> bool {
    set.iter().all(|&x| a.elements().all(|u| !a.leq(u, x) || set.contains(&u)))
}

fn up_closed(a: &Semilattice, set: &[usize]) -> bool {
    set.iter().all(|&x| a.elements().all(|u| !a.leq(x, u) || set.contains(&u)))
}

/// Criterion for `A = I1 (+)_0 I2` with `0` the minimum.
pub fn check_zero_case(a: &Semilattice, i1: &[usize], i2: &[usize]) -> Result<BoundedReport, DirectSumError> {
    validate(a, i1, i2)?;
    let Some(zero) = a.bottom() else {
        return Ok(BoundedReport::not_applicable());
    };
    let mut abs = None;
    'outer: for (swapped, own, other) in [(false, i1, i2), (true, i2, i1)] {
        for &x1 in own {
            for &y1 in own {
                for &z2 in other {
                    if a.meet(x1, a.join(y1, z2)) != a.meet(x1, y1) {
                        abs = Some(BoundedWitness::Abs { swapped, x1, y1, z2 });
                        break 'outer;
                    }
                }
            }
        }
    }
    let onto = a
        .elements()
        .find(|&x| !i1.iter().any(|&x1| i2.iter().any(|&x2| a.join(x1, x2) == x)))
        .map(|x| BoundedWitness::Missing { x });
    Ok(BoundedReport::assemble(
        zero,
        vec![(BoundedAxiom::AbsZero, abs), (BoundedAxiom::OntoZero, onto)],
        || down_closed(a, i1) && down_closed(a, i2),
    ))
}

/// Criterion for `A = I1 (+)_1 I2` with `1` the maximum.
pub fn check_one_case(a: &Semilattice, i1: &[usize], i2: &[usize]) -> Result<BoundedReport, DirectSumError> {
    validate(a, i1, i2)?;
    let one = a.top();
    let mut exi = None;
    'exi: for &x1 in i1 {
        for &x2 in i2 {
            if a.join(x1, x2) != one {
                exi = Some(BoundedWitness::Exi { x1, x2 });
                break 'exi;
            }
        }
    }
    let onto = a
        .elements()
        .find(|&x| !i1.iter().any(|&x1| i2.iter().any(|&x2| a.meet(x1, x2) == Some(x))))
        .map(|x| BoundedWitness::Missing { x });
    let mut mod1 = None;
    'mod1: for &x1 in i1 {
        for &x2 in i2 {
            let m = a.meet(x1, x2);
            for y in a.elements() {
                let lhs = m.map(|m| a.join(m, y));
                let rhs = a.meet(a.join(y, x1), a.join(y, x2));
                if lhs != rhs {
                    mod1 = Some(BoundedWitness::Mod1 { x1, x2, y });
                    break 'mod1;
                }
            }
        }
    }
    Ok(BoundedReport::assemble(
        one,
        vec![(BoundedAxiom::ExiOne, exi), (BoundedAxiom::OntoOne, onto), (BoundedAxiom::Mod1One, mod1)],
        || up_closed(a, i1) && up_closed(a, i2),
    ))
}
