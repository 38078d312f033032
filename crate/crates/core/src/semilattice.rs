//! Finite join-semilattices given by a total join table.
//!
//! Elements are the integers `0..n`. The order is derived from the join
//! (`x <= y` iff `x v y = y`) and the partial meet is computed once, on
//! first use, and cached for the lifetime of the value.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Default bound on the carrier size of a direct product.
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilatticeError {
    #[error("empty carrier")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("entry join({x},{y}) = {value} is out of range 0..{n}")]
    IndexOutOfRange { x: usize, y: usize, value: usize, n: usize },
    #[error("idempotence fails: join({x},{x}) = {value}")]
    IdempotenceViolation { x: usize, value: usize },
    #[error("commutativity fails: join({x},{y}) = {xy} but join({y},{x}) = {yx}")]
    CommutativityViolation { x: usize, y: usize, xy: usize, yx: usize },
    #[error("associativity fails at ({x},{y},{z}): ({x} v {y}) v {z} = {left}, {x} v ({y} v {z}) = {right}")]
    AssociativityViolation { x: usize, y: usize, z: usize, left: usize, right: usize },
    #[error("{got} names given for {n} elements")]
    NameCount { got: usize, n: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("order relation is not antisymmetric or not transitive at ({x},{y})")]
    NotAPartialOrder { x: usize, y: usize },
    #[error("elements {x} and {y} have no least upper bound")]
    NoJoinExists { x: usize, y: usize },
    #[error("product of sizes {left} and {right} exceeds the cap of {cap}")]
    SizeOverflow { left: usize, right: usize, cap: usize },
    #[error("subset is not closed under join: {x} v {y} = {join} is missing")]
    NotJoinClosed { x: usize, y: usize, join: usize },
    #[error("element {0} is not in the carrier")]
    NoSuchElement(usize),
}

/// A validated finite join-semilattice.
pub struct Semilattice {
    n: usize,
    join: Vec<usize>,
    names: Option<Vec<String>>,
    meet: OnceLock<Vec<Option<usize>>>,
}

impl Clone for Semilattice {
    fn clone(&self) -> Self {
        Semilattice {
            n: self.n,
            join: self.join.clone(),
            names: self.names.clone(),
            meet: self.meet.clone(),
        }
    }
}

impl PartialEq for Semilattice {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.join == other.join && self.names == other.names
    }
}

impl Eq for Semilattice {}

impl fmt::Debug for Semilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semilattice")
            .field("n", &self.n)
            .field("join", &self.rows())
            .field("names", &self.names)
            .finish()
    }
}

/// Checks the semilattice laws on a join table, reporting the first violated
/// law (range, idempotence, commutativity, associativity, in that order).
pub fn validate_semilattice(
    table: &[Vec<usize>],
    names: Option<Vec<String>>,
) -> Result<Semilattice, SemilatticeError> {
    let n = table.len();
    if n == 0 {
        return Err(SemilatticeError::Empty);
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(SemilatticeError::NotSquare { row, len: entries.len(), expected: n });
        }
    }
    let flat: Vec<usize> = table.iter().flatten().copied().collect();
    Semilattice::from_flat(n, flat, names)
}

impl Semilattice {
    pub(crate) fn from_flat(
        n: usize,
        join: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self, SemilatticeError> {
        if n == 0 {
            return Err(SemilatticeError::Empty);
        }
        debug_assert_eq!(join.len(), n * n);
        let at = |x: usize, y: usize| join[x * n + y];
        for x in 0..n {
            for y in 0..n {
                let value = at(x, y);
                if value >= n {
                    return Err(SemilatticeError::IndexOutOfRange { x, y, value, n });
                }
            }
        }
        for x in 0..n {
            if at(x, x) != x {
                return Err(SemilatticeError::IdempotenceViolation { x, value: at(x, x) });
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if at(x, y) != at(y, x) {
                    return Err(SemilatticeError::CommutativityViolation {
                        x,
                        y,
                        xy: at(x, y),
                        yx: at(y, x),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = at(x, y);
                for z in 0..n {
                    let left = at(xy, z);
                    let right = at(x, at(y, z));
                    if left != right {
                        return Err(SemilatticeError::AssociativityViolation { x, y, z, left, right });
                    }
                }
            }
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(SemilatticeError::NameCount { got: names.len(), n });
            }
            for (i, name) in names.iter().enumerate() {
                if names[..i].contains(name) {
                    return Err(SemilatticeError::DuplicateName(name.clone()));
                }
            }
        }
        Ok(Semilattice { n, join, names, meet: OnceLock::new() })
    }

    /// Builds a semilattice from an order relation given as a predicate
    /// `le(x, y)`; joins are the least upper bounds.
    pub fn from_order(
        n: usize,
        le: impl Fn(usize, usize) -> bool,
        names: Option<Vec<String>>,
    ) -> Result<Self, SemilatticeError> {
        if n == 0 {
            return Err(SemilatticeError::Empty);
        }
        let rel: Vec<bool> = (0..n * n).map(|i| le(i / n, i % n)).collect();
        let le = |x: usize, y: usize| rel[x * n + y];
        for x in 0..n {
            if !le(x, x) {
                return Err(SemilatticeError::NotAPartialOrder { x, y: x });
            }
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return Err(SemilatticeError::NotAPartialOrder { x, y });
                }
                if le(x, y) {
                    if let Some(z) = (0..n).find(|&z| le(y, z) && !le(x, z)) {
                        return Err(SemilatticeError::NotAPartialOrder { x, y: z });
                    }
                }
            }
        }
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let upper: Vec<usize> = (0..n).filter(|&u| le(x, u) && le(y, u)).collect();
                let least = upper.iter().copied().find(|&u| upper.iter().all(|&v| le(u, v)));
                match least {
                    Some(u) => join[x * n + y] = u,
                    None => return Err(SemilatticeError::NoJoinExists { x, y }),
                }
            }
        }
        Semilattice::from_flat(n, join, names)
    }

    /// The chain `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> Self {
        let join = (0..k * k).map(|i| (i / k).max(i % k)).collect();
        Semilattice::from_flat(k, join, None).expect("chain is a semilattice")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }

    /// Join of a nonempty collection.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.join(a, b))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Greatest lower bound of `{x, y}` when it exists.
    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.meet_table()[x * self.n + y]
    }

    /// Meet of two possibly-undefined terms; undefined if either is.
    pub fn meet_opt(&self, x: Option<usize>, y: Option<usize>) -> Option<usize> {
        self.meet(x?, y?)
    }

    pub fn meet_table(&self) -> &[Option<usize>] {
        self.meet.get_or_init(|| self.compute_meets())
    }

    fn compute_meets(&self) -> Vec<Option<usize>> {
        // The common lower bounds of x and y are closed under join, so the
        // meet exists exactly when that set is nonempty and is its join.
        let n = self.n;
        let downs: Vec<Vec<usize>> = self
            .elements()
            .map(|x| self.elements().filter(|&u| self.leq(u, x)).collect())
            .collect();
        let mut meet = vec![None; n * n];
        for x in 0..n {
            for y in x..n {
                let m = self.join_all(downs[x].iter().copied().filter(|&u| self.leq(u, y)));
                meet[x * n + y] = m;
                meet[y * n + x] = m;
            }
        }
        meet
    }

    pub fn top(&self) -> usize {
        self.join_all(self.elements()).expect("carrier is nonempty")
    }

    pub fn bottom(&self) -> Option<usize> {
        self.elements().find(|&b| self.elements().all(|x| self.leq(b, x)))
    }

    /// Pairs `(x, y)` with `y` covering `x`, in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Result<Self, SemilatticeError> {
        if let Some(list) = &names {
            if list.len() != self.n {
                return Err(SemilatticeError::NameCount { got: list.len(), n: self.n });
            }
        }
        self.names = names;
        Ok(self)
    }

    /// Display label: the element's name, or its index.
    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Looks up an element by name first, then as a decimal index.
    pub fn resolve(&self, token: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|s| s == token) {
                return Some(i);
            }
        }
        token.parse::<usize>().ok().filter(|&i| i < self.n)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.join.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn is_join_closed(&self, subset: &[usize]) -> Result<(), SemilatticeError> {
        let mut member = vec![false; self.n];
        for &x in subset {
            if x >= self.n {
                return Err(SemilatticeError::NoSuchElement(x));
            }
            member[x] = true;
        }
        for &x in subset {
            for &y in subset {
                let j = self.join(x, y);
                if !member[j] {
                    return Err(SemilatticeError::NotJoinClosed { x, y, join: j });
                }
            }
        }
        Ok(())
    }

    /// The subsemilattice on a sorted join-closed subset, relabelled
    /// `0..subset.len()` in the subset's order. Names are carried over.
    pub fn restrict(&self, subset: &[usize]) -> Result<Semilattice, SemilatticeError> {
        self.is_join_closed(subset)?;
        if subset.is_empty() {
            return Err(SemilatticeError::Empty);
        }
        let k = subset.len();
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in subset.iter().enumerate() {
            index[x] = i;
        }
        let join = (0..k * k)
            .map(|i| index[self.join(subset[i / k], subset[i % k])])
            .collect();
        let names = self
            .names
            .as_ref()
            .map(|names| subset.iter().map(|&x| names[x].clone()).collect());
        Semilattice::from_flat(k, join, names)
    }

    /// Invariant profile used to prune isomorphism searches.
    pub(crate) fn profile(&self, x: usize) -> [usize; 5] {
        let top = self.top();
        let down = self.elements().filter(|&u| self.leq(u, x)).count();
        let up = self.elements().filter(|&u| self.leq(x, u)).count();
        let to_top = self.elements().filter(|&u| self.join(x, u) == top).count();
        let join_degree = self.join.iter().filter(|&&j| j == x).count();
        let comparable = self
            .elements()
            .filter(|&u| self.leq(u, x) || self.leq(x, u))
            .count();
        [down, up, to_top, join_degree, comparable]
    }
}

/// `A x B` with componentwise join; `(a, b)` is element `a * |B| + b`.
#[derive(Debug, Clone)]
pub struct Product {
    pub semilattice: Semilattice,
    pub left_size: usize,
    pub right_size: usize,
}

impl Product {
    pub fn pair(&self, a: usize, b: usize) -> usize {
        a * self.right_size + b
    }

    pub fn unpair(&self, p: usize) -> (usize, usize) {
        (p / self.right_size, p % self.right_size)
    }
}

pub fn direct_product(a: &Semilattice, b: &Semilattice) -> Result<Product, SemilatticeError> {
    direct_product_with_cap(a, b, DEFAULT_PRODUCT_CAP)
}

pub fn direct_product_with_cap(
    a: &Semilattice,
    b: &Semilattice,
    cap: usize,
) -> Result<Product, SemilatticeError> {
    let (na, nb) = (a.size(), b.size());
    let n = na.checked_mul(nb).filter(|&n| n <= cap).ok_or(SemilatticeError::SizeOverflow {
        left: na,
        right: nb,
        cap,
    })?;
    let mut join = vec![0; n * n];
    for p in 0..n {
        let (pa, pb) = (p / nb, p % nb);
        for q in 0..n {
            let (qa, qb) = (q / nb, q % nb);
            join[p * n + q] = a.join(pa, qa) * nb + b.join(pb, qb);
        }
    }
    let names = match (a.names(), b.names()) {
        (None, None) => None,
        _ => Some(
            (0..n)
                .map(|p| format!("{}.{}", a.label(p / nb), b.label(p % nb)))
                .collect(),
        ),
    };
    let semilattice = Semilattice::from_flat(n, join, names)?;
    Ok(Product { semilattice, left_size: na, right_size: nb })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// `0 < a < 1`, `0 < b < c < 1`, indexed 0, a=1, b=2, c=3, 1=4.
    pub fn n5() -> Semilattice {
        let covers = [(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)];
        Semilattice::from_order(5, |x, y| x == y || reach(&covers, x, y), None).unwrap()
    }

    /// `0 < a, b < 1` indexed 0, a=1, b=2, 1=3.
    pub fn b2() -> Semilattice {
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3)];
        Semilattice::from_order(4, |x, y| x == y || reach(&covers, x, y), None).unwrap()
    }

    /// Two atoms `a=0`, `b=1` under a top `2`, no bottom.
    pub fn vee() -> Semilattice {
        validate_semilattice(&[vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]], None).unwrap()
    }

    pub fn reach(covers: &[(usize, usize)], x: usize, y: usize) -> bool {
        covers
            .iter()
            .any(|&(u, v)| u == x && (v == y || reach(covers, v, y)))
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    /// Greatest element of the common lower bounds, straight from the definition.
    fn meet_by_definition(a: &Semilattice, x: usize, y: usize) -> Option<usize> {
        let lower: Vec<usize> = a.elements().filter(|&u| a.leq(u, x) && a.leq(u, y)).collect();
        lower.iter().copied().find(|&w| lower.iter().all(|&u| a.leq(u, w)))
    }

    #[test]
    fn two_chain_is_valid() {
        let a = validate_semilattice(&[vec![0, 1], vec![1, 1]], None).unwrap();
        assert_eq!(a.size(), 2);
        assert!(a.leq(0, 1));
        assert!(!a.leq(1, 0));
    }

    #[test]
    fn commutativity_violation_reports_pair() {
        let err = validate_semilattice(&[vec![0, 0], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, SemilatticeError::CommutativityViolation { x: 0, y: 1, xy: 0, yx: 1 });
    }

    #[test]
    fn idempotence_and_range_errors() {
        let err = validate_semilattice(&[vec![1, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, SemilatticeError::IdempotenceViolation { x: 0, value: 1 });
        let err = validate_semilattice(&[vec![0, 2], vec![2, 1]], None).unwrap_err();
        assert_eq!(err, SemilatticeError::IndexOutOfRange { x: 0, y: 1, value: 2, n: 2 });
        let err = validate_semilattice(&[vec![0, 1], vec![1]], None).unwrap_err();
        assert!(matches!(err, SemilatticeError::NotSquare { row: 1, .. }));
    }

    #[test]
    fn associativity_violation_is_detected() {
        // Commutative and idempotent but 0 v (1 v 2) != (0 v 1) v 2.
        let table = vec![vec![0, 0, 2], vec![0, 1, 1], vec![2, 1, 2]];
        let err = validate_semilattice(&table, None).unwrap_err();
        assert!(matches!(err, SemilatticeError::AssociativityViolation { .. }));
        if let SemilatticeError::AssociativityViolation { x, y, z, left, right } = err {
            assert_eq!(table[table[x][y]][z], left);
            assert_eq!(table[x][table[y][z]], right);
            assert_ne!(left, right);
        }
    }

    #[test]
    fn n5_table_satisfies_the_laws_exhaustively() {
        let a = n5();
        let table = a.rows();
        for x in 0..5 {
            assert_eq!(table[x][x], x);
            for y in 0..5 {
                assert_eq!(table[x][y], table[y][x]);
                for z in 0..5 {
                    assert_eq!(table[table[x][y]][z], table[x][table[y][z]]);
                }
            }
        }
        assert!(validate_semilattice(&table, None).is_ok());
        // a v b = a v c = 1
        assert_eq!(a.join(1, 2), 4);
        assert_eq!(a.join(1, 3), 4);
        assert!(!a.leq(1, 3));
    }

    #[test]
    fn meets_on_small_examples() {
        let c3 = Semilattice::chain(3);
        assert_eq!(c3.meet(0, 2), Some(0));
        let v = vee();
        assert_eq!(v.meet(0, 1), None);
        assert_eq!(v.bottom(), None);
        assert_eq!(v.top(), 2);
        let c2 = Semilattice::chain(2);
        let p = direct_product(&c2, &c2).unwrap();
        assert_eq!(p.semilattice.meet(p.pair(0, 1), p.pair(1, 0)), Some(p.pair(0, 0)));
    }

    #[test]
    fn meet_table_matches_definition() {
        for a in [n5(), b2(), vee(), Semilattice::chain(4)] {
            for x in a.elements() {
                for y in a.elements() {
                    assert_eq!(a.meet(x, y), meet_by_definition(&a, x, y));
                }
            }
        }
    }

    #[test]
    fn product_of_two_chains_is_the_diamond() {
        let c2 = Semilattice::chain(2);
        let p = direct_product(&c2, &c2).unwrap().semilattice;
        assert_eq!(p.rows(), b2().rows());
        let one = Semilattice::chain(1);
        let q = direct_product(&n5(), &one).unwrap().semilattice;
        assert_eq!(q.rows(), n5().rows());
    }

    #[test]
    fn product_cap_is_enforced() {
        let c = Semilattice::chain(10);
        let err = direct_product_with_cap(&c, &c, 50).unwrap_err();
        assert_eq!(err, SemilatticeError::SizeOverflow { left: 10, right: 10, cap: 50 });
    }

    #[test]
    fn from_order_rejects_missing_joins() {
        // 0 < 2, 1 < 2, 0 < 3: 2 and 3 have no common upper bound.
        let covers = [(0, 2), (1, 2), (0, 3)];
        let err = Semilattice::from_order(4, |x, y| x == y || reach(&covers, x, y), None)
            .unwrap_err();
        assert!(matches!(err, SemilatticeError::NoJoinExists { .. }));
    }

    #[test]
    fn covers_of_n5() {
        assert_eq!(n5().covers(), vec![(0, 1), (0, 2), (1, 4), (2, 3), (3, 4)]);
    }

    #[test]
    fn restrict_keeps_join() {
        let a = n5();
        let sub = a.restrict(&[0, 2, 3]).unwrap();
        assert_eq!(sub.rows(), Semilattice::chain(3).rows());
        assert!(matches!(a.restrict(&[1, 2]), Err(SemilatticeError::NotJoinClosed { .. })));
    }
}
