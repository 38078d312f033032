//! Factorization into directly indecomposable factors, the refinement join
//! of two decompositions, and the Boolean structure of factor congruences.

use thiserror::Error;

use crate::congruence::{complementary_factor_pairs_with_cap, Congruence, CongruenceError, DEFAULT_CONGRUENCE_CAP};
use crate::directsum::{
    holds_unchecked, map_i, projections, require_direct_sum, DirectSumError, SummandPair,
};
use crate::iso::{canonical_form, ElementMap};
use crate::semilattice::{direct_product, Semilattice, SemilatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizeError {
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    DirectSum(#[from] DirectSumError),
    #[error(transparent)]
    Semilattice(#[from] SemilatticeError),
    #[error("decompositions use different base elements {0} and {1}")]
    BaseMismatch(usize, usize),
}

/// Which nontrivial complementary pair to split on at each step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitStrategy {
    /// The pair with the smallest `|A/delta|`, earliest in canonical order.
    #[default]
    SmallestQuotient,
    /// The pair at this position (modulo the number of nontrivial pairs).
    Nth(usize),
}

#[derive(Debug, Clone)]
pub struct Factorization {
    pub factors: Vec<Semilattice>,
    /// From `A` onto the iterated product of `factors` (mixed radix, first
    /// factor most significant).
    pub iso: ElementMap,
    pub base: usize,
    coordinates: Vec<Vec<usize>>,
}

impl Factorization {
    pub fn coordinates(&self, x: usize) -> &[usize] {
        &self.coordinates[x]
    }

    /// `F1 x F2 x ... x Fk`, associated to the left.
    pub fn product(&self) -> Result<Semilattice, SemilatticeError> {
        let mut iter = self.factors.iter();
        let mut acc = iter.next().expect("at least one factor").clone();
        for f in iter {
            acc = direct_product(&acc, f)?.semilattice;
        }
        Ok(acc)
    }
}

pub fn factorize(a: &Semilattice, c: usize) -> Result<Factorization, FactorizeError> {
    factorize_with(a, c, SplitStrategy::default(), DEFAULT_CONGRUENCE_CAP)
}

pub fn factorize_with(
    a: &Semilattice,
    c: usize,
    strategy: SplitStrategy,
    cap: usize,
) -> Result<Factorization, FactorizeError> {
    if c >= a.size() {
        return Err(DirectSumError::NoSuchElement(c).into());
    }
    let (factors, coordinates) = split(a, c, strategy, cap)?;

    let keys: Vec<_> = factors.iter().map(|f| canonical_form(f).0).collect();
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by(|&i, &j| keys[i].cmp(&keys[j]));
    let factors: Vec<Semilattice> = order.iter().map(|&i| factors[i].clone()).collect();
    let coordinates: Vec<Vec<usize>> = coordinates
        .iter()
        .map(|coord| order.iter().map(|&i| coord[i]).collect())
        .collect();

    let images = coordinates
        .iter()
        .map(|coord| coord.iter().zip(&factors).fold(0, |acc, (&x, f)| acc * f.size() + x))
        .collect();
    let total = factors.iter().map(Semilattice::size).product();
    Ok(Factorization { factors, iso: ElementMap::new(images, total), base: c, coordinates })
}

type Split = (Vec<Semilattice>, Vec<Vec<usize>>);

fn split(a: &Semilattice, c: usize, strategy: SplitStrategy, cap: usize) -> Result<Split, FactorizeError> {
    let pairs: Vec<_> = complementary_factor_pairs_with_cap(a, cap)?
        .into_iter()
        .filter(|p| !p.is_trivial())
        .collect();
    if pairs.is_empty() {
        return Ok((vec![a.clone()], a.elements().map(|x| vec![x]).collect()));
    }
    let chosen = match strategy {
        SplitStrategy::SmallestQuotient => pairs
            .iter()
            .min_by_key(|p| p.delta.block_count())
            .expect("nonempty"),
        SplitStrategy::Nth(k) => &pairs[k % pairs.len()],
    };
    let sp = map_i(a, c, &chosen.theta, &chosen.delta)?;
    let pr = projections(a, &sp)?;
    let left = a.restrict(&sp.i1)?;
    let right = a.restrict(&sp.i2)?;
    let pos = |set: &[usize], x: usize| set.binary_search(&x).expect("projection lands in summand");
    let (lf, lc) = split(&left, pos(&sp.i1, c), strategy, cap)?;
    let (rf, rc) = split(&right, pos(&sp.i2, c), strategy, cap)?;
    let coordinates = a
        .elements()
        .map(|x| {
            let mut coord = lc[pos(&sp.i1, pr.pi1.apply(x))].clone();
            coord.extend_from_slice(&rc[pos(&sp.i2, pr.pi2.apply(x))]);
            coord
        })
        .collect();
    Ok((lf.into_iter().chain(rf).collect(), coordinates))
}

/// Outcome of [`refine_join`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    /// `I2 ⋎ J2`.
    pub join: Vec<usize>,
    /// `(c, I1 ∩ J1, I2 ⋎ J2)`.
    pub pair: SummandPair,
    pub is_direct_sum: bool,
}

/// Reads `A` as `A1 x A2` through the first decomposition and forms
/// `pi1(J2) x A2`, pulled back to `A`.
pub fn refine_join(
    a: &Semilattice,
    c: usize,
    first: &SummandPair,
    second: &SummandPair,
) -> Result<Refinement, FactorizeError> {
    for sp in [first, second] {
        if sp.c != c {
            return Err(FactorizeError::BaseMismatch(c, sp.c));
        }
        require_direct_sum(a, sp)?;
    }
    let pr = projections(a, first)?;
    let mut image: Vec<usize> = second.i2.iter().map(|&x| pr.pi1.apply(x)).collect();
    image.sort_unstable();
    image.dedup();
    let join: Vec<usize> = a
        .elements()
        .filter(|&x| image.binary_search(&pr.pi1.apply(x)).is_ok())
        .collect();
    let meet: Vec<usize> = first.i1.iter().copied().filter(|x| second.i1.contains(x)).collect();
    let pair = SummandPair { c, i1: meet, i2: join.clone() };
    let is_direct_sum = pair.validate(a).is_ok() && holds_unchecked(a, &pair);
    Ok(Refinement { join, pair, is_direct_sum })
}

/// The factor congruences ordered by inclusion, and whether they form a
/// Boolean lattice.
pub fn factor_congruence_boolean_check(a: &Semilattice) -> Result<bool, FactorizeError> {
    factor_congruence_boolean_check_with_cap(a, DEFAULT_CONGRUENCE_CAP)
}

pub fn factor_congruence_boolean_check_with_cap(a: &Semilattice, cap: usize) -> Result<bool, FactorizeError> {
    let mut elems: Vec<Congruence> = complementary_factor_pairs_with_cap(a, cap)?
        .into_iter()
        .flat_map(|p| [p.theta, p.delta])
        .collect();
    elems.sort();
    elems.dedup();
    Ok(is_boolean_lattice(&elems))
}

/// Structural check on a finite family of partitions under refinement:
/// bounds, binary joins and meets within the family, distributivity and
/// complements.
pub fn is_boolean_lattice(elems: &[Congruence]) -> bool {
    let k = elems.len();
    if k == 0 {
        return false;
    }
    let leq = |i: usize, j: usize| elems[i].refines(&elems[j]);
    let Some(bottom) = (0..k).find(|&b| (0..k).all(|x| leq(b, x))) else {
        return false;
    };
    let Some(top) = (0..k).find(|&t| (0..k).all(|x| leq(x, t))) else {
        return false;
    };
    let n = elems[0].size();
    if elems[bottom] != Congruence::discrete(n) || elems[top] != Congruence::total(n) {
        return false;
    }
    let least = |candidates: Vec<usize>, below: &dyn Fn(usize, usize) -> bool| {
        candidates.iter().copied().find(|&u| candidates.iter().all(|&v| below(u, v)))
    };
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            let upper: Vec<usize> = (0..k).filter(|&u| leq(i, u) && leq(j, u)).collect();
            let lower: Vec<usize> = (0..k).filter(|&u| leq(u, i) && leq(u, j)).collect();
            match (least(upper, &leq), least(lower, &|u, v| leq(v, u))) {
                (Some(u), Some(l)) => {
                    join[i * k + j] = u;
                    meet[i * k + j] = l;
                }
                _ => return false,
            }
        }
    }
    let distributive = (0..k).all(|x| {
        (0..k).all(|y| {
            (0..k).all(|z| meet[x * k + join[y * k + z]] == join[meet[x * k + y] * k + meet[x * k + z]])
        })
    });
    let complemented = (0..k).all(|x| (0..k).any(|y| meet[x * k + y] == bottom && join[x * k + y] == top));
    distributive && complemented
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::isomorphism_check;
    use crate::semilattice::fixtures::*;

    #[test]
    fn indecomposables() {
        let c2 = Semilattice::chain(2);
        let f = factorize(&c2, 0).unwrap();
        assert_eq!(f.factors, vec![c2.clone()]);
        for c in 0..5 {
            let f = factorize(&n5(), c).unwrap();
            assert_eq!(f.factors.len(), 1);
            assert!(isomorphism_check(&f.factors[0], &n5()).is_some());
        }
        let one = Semilattice::chain(1);
        assert_eq!(factorize(&one, 0).unwrap().factors.len(), 1);
    }

    #[test]
    fn diamond_splits_into_two_chains() {
        let a = b2();
        let f = factorize(&a, 0).unwrap();
        assert_eq!(f.factors.len(), 2);
        for factor in &f.factors {
            assert_eq!(factor.rows(), Semilattice::chain(2).rows());
        }
        let prod = f.product().unwrap();
        assert!(f.iso.is_isomorphism(&a, &prod));
    }

    #[test]
    fn refine_with_itself_and_trivial() {
        let a = b2();
        let first = SummandPair::new(&a, 0, vec![0, 1], vec![0, 2]).unwrap();
        let r = refine_join(&a, 0, &first, &first).unwrap();
        assert_eq!(r.join, first.i2);
        assert_eq!(r.pair, first);
        assert!(r.is_direct_sum);
        let r = refine_join(&a, 0, &first, &SummandPair::trivial(&a, 0)).unwrap();
        assert_eq!(r.join, first.i2);
        assert_eq!(r.pair.i1, first.i1);
        assert!(r.is_direct_sum);
        let other = SummandPair::new(&a, 1, vec![1, 3], vec![0, 1]).unwrap();
        assert_eq!(refine_join(&a, 0, &first, &other), Err(FactorizeError::BaseMismatch(0, 1)));
    }

    #[test]
    fn boolean_check_small() {
        assert!(factor_congruence_boolean_check(&Semilattice::chain(2)).unwrap());
        assert!(factor_congruence_boolean_check(&b2()).unwrap());
        assert!(factor_congruence_boolean_check(&n5()).unwrap());
        // a chain of three partitions is not complemented
        let three = [Congruence::discrete(3), Congruence::from_labels(&[0, 0, 1]), Congruence::total(3)];
        assert!(!is_boolean_lattice(&three));
    }
}
