//! Element maps between semilattices, isomorphism search and canonical forms.

use itertools::Itertools;

use crate::semilattice::Semilattice;

/// A total function from `0..images.len()` into `0..target_size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementMap {
    images: Vec<usize>,
    target_size: usize,
}

impl ElementMap {
    pub fn new(images: Vec<usize>, target_size: usize) -> Self {
        debug_assert!(images.iter().all(|&y| y < target_size));
        ElementMap { images, target_size }
    }

    pub fn identity(n: usize) -> Self {
        ElementMap::new((0..n).collect(), n)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_size(&self) -> usize {
        self.images.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn is_bijective(&self) -> bool {
        if self.images.len() != self.target_size {
            return false;
        }
        let mut seen = vec![false; self.target_size];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        for &y in &self.images {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn preserves_join(&self, from: &Semilattice, to: &Semilattice) -> bool {
        from.size() == self.source_size()
            && to.size() == self.target_size
            && from.elements().all(|x| {
                from.elements()
                    .all(|y| self.apply(from.join(x, y)) == to.join(self.apply(x), self.apply(y)))
            })
    }

    pub fn is_isomorphism(&self, from: &Semilattice, to: &Semilattice) -> bool {
        self.is_bijective() && self.preserves_join(from, to)
    }

    pub fn inverse(&self) -> Option<ElementMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target_size];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(ElementMap::new(inv, self.images.len()))
    }

    /// `other` after `self`.
    pub fn then(&self, other: &ElementMap) -> ElementMap {
        debug_assert_eq!(self.target_size, other.source_size());
        ElementMap::new(
            self.images.iter().map(|&y| other.apply(y)).collect(),
            other.target_size,
        )
    }
}

/// Finds a join-preserving bijection `A -> B`, if any. The search assigns
/// elements of `A` in index order and tries candidates of `B` in index order,
/// so the first map found is deterministic.
pub fn isomorphism_check(a: &Semilattice, b: &Semilattice) -> Option<ElementMap> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let pa: Vec<_> = a.elements().map(|x| a.profile(x)).collect();
    let pb: Vec<_> = b.elements().map(|x| b.profile(x)).collect();
    if pa.iter().sorted().ne(pb.iter().sorted()) {
        return None;
    }
    let candidates: Vec<Vec<usize>> = a
        .elements()
        .map(|x| b.elements().filter(|&y| pb[y] == pa[x]).collect())
        .collect();
    let mut search = IsoSearch {
        a,
        b,
        candidates: &candidates,
        forward: vec![None; n],
        backward: vec![None; n],
    };
    if search.extend(0) {
        let images = search.forward.into_iter().map(|y| y.unwrap()).collect();
        Some(ElementMap::new(images, n))
    } else {
        None
    }
}

struct IsoSearch<'a> {
    a: &'a Semilattice,
    b: &'a Semilattice,
    candidates: &'a [Vec<usize>],
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, x: usize) -> bool {
        if x == self.a.size() {
            return true;
        }
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.backward[y].is_some() || !self.consistent(x, y) {
                continue;
            }
            self.forward[x] = Some(y);
            self.backward[y] = Some(x);
            if self.extend(x + 1) {
                return true;
            }
            self.forward[x] = None;
            self.backward[y] = None;
        }
        false
    }

    /// Joins of `x` with already-assigned elements must agree with the
    /// partial map in both directions.
    fn consistent(&self, x: usize, y: usize) -> bool {
        let pairs = std::iter::once((x, y)).chain(
            (0..x).map(|u| (u, self.forward[u].expect("prefix is assigned"))),
        );
        for (u, fu) in pairs {
            let ja = self.a.join(x, u);
            let jb = self.b.join(y, fu);
            let image = if ja == x { Some(y) } else { self.forward[ja] };
            let preimage = if jb == y { Some(x) } else { self.backward[jb] };
            if let Some(image) = image {
                if image != jb {
                    return false;
                }
            }
            if let Some(preimage) = preimage {
                if preimage != ja {
                    return false;
                }
            }
        }
        true
    }
}

/// A relabelling-invariant description of a semilattice: the
/// lexicographically least join table over all relabellings that respect an
/// iterated invariant colouring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub size: usize,
    pub table: Vec<usize>,
}

/// Returns the canonical form and the relabelling `old -> new` realizing it.
pub fn canonical_form(a: &Semilattice) -> (CanonicalForm, ElementMap) {
    let n = a.size();
    let colours = stable_colouring(a);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for colour in colours.iter().copied().sorted().dedup() {
        classes.push(a.elements().filter(|&x| colours[x] == colour).collect());
    }

    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut order = Vec::with_capacity(n);
    let mut new_of = vec![0; n];
    let mut table = vec![0; n * n];
    visit_class_orders(&classes, 0, &mut order, &mut |order| {
        for (pos, &x) in order.iter().enumerate() {
            new_of[x] = pos;
        }
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = new_of[a.join(order[i], order[j])];
            }
        }
        if best.as_ref().is_none_or(|(t, _)| table < *t) {
            best = Some((table.clone(), new_of.clone()));
        }
    });
    let (table, new_of) = best.expect("at least one ordering");
    (CanonicalForm { size: n, table }, ElementMap::new(new_of, n))
}

fn visit_class_orders(
    classes: &[Vec<usize>],
    k: usize,
    order: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if k == classes.len() {
        f(order);
        return;
    }
    let class = &classes[k];
    for perm in class.iter().copied().permutations(class.len()) {
        let len = order.len();
        order.extend(perm);
        visit_class_orders(classes, k + 1, order, f);
        order.truncate(len);
    }
}

/// Colour refinement seeded by the order profile. Colours are canonical
/// indices into the sorted list of signatures, so they compare across
/// isomorphic inputs.
fn stable_colouring(a: &Semilattice) -> Vec<usize> {
    let seed: Vec<Vec<usize>> = a.elements().map(|x| a.profile(x).to_vec()).collect();
    let mut colours = rank(&seed);
    loop {
        let signatures: Vec<Vec<usize>> = a
            .elements()
            .map(|x| {
                let mut sig: Vec<usize> = a
                    .elements()
                    .map(|y| colours[y] * a.size() + colours[a.join(x, y)])
                    .collect();
                sig.sort_unstable();
                sig.insert(0, colours[x]);
                sig
            })
            .collect();
        let next = rank(&signatures);
        let classes = |c: &[usize]| c.iter().copied().sorted().dedup().count();
        if classes(&next) == classes(&colours) {
            return next;
        }
        colours = next;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let distinct: Vec<T> = keys.iter().cloned().sorted().dedup().collect();
    keys.iter()
        .map(|k| distinct.binary_search(k).expect("key present"))
        .collect()
}

/// Relabels `a` along a bijection `old -> new`.
pub fn relabel(a: &Semilattice, map: &ElementMap) -> Semilattice {
    let n = a.size();
    let inv = map.inverse().expect("relabelling must be a bijection");
    let join = (0..n * n)
        .map(|i| map.apply(a.join(inv.apply(i / n), inv.apply(i % n))))
        .collect();
    let names = a
        .names()
        .map(|names| (0..n).map(|i| names[inv.apply(i)].clone()).collect());
    Semilattice::from_flat(n, join, names).expect("relabelling preserves the laws")
}
