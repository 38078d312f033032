use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use slat::congruence::{all_congruences, quotient};
use slat::iso::{canonical_form, isomorphism_check, relabel};
use slat::slat::{emit_slat, parse_slat};
use slat::{direct_product, ElementMap, Semilattice};

fn corpus() -> &'static [Semilattice] {
    static CORPUS: OnceLock<Vec<Semilattice>> = OnceLock::new();
    CORPUS.get_or_init(|| slat::enumerate::corpus(5).unwrap().into_iter().flatten().collect())
}

/// A corpus member under a random relabelling.
fn semilattice() -> impl Strategy<Value = Semilattice> {
    (any::<Index>(), any::<u64>()).prop_map(|(i, seed)| {
        let a = i.get(corpus());
        let n = a.size();
        let mut images: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(k, (s >> 33) as usize % (k + 1));
        }
        relabel(a, &ElementMap::new(images, n))
    })
}

fn with_elements() -> impl Strategy<Value = (Semilattice, usize, usize, usize)> {
    semilattice().prop_flat_map(|a| {
        let n = a.size();
        (Just(a), 0..n, 0..n, 0..n)
    })
}

proptest! {
    #[test]
    fn meet_is_commutative_and_associative((a, x, y, z) in with_elements()) {
        prop_assert_eq!(a.meet(x, y), a.meet(y, x));
        prop_assert_eq!(a.meet_opt(a.meet(x, y), Some(z)), a.meet_opt(Some(x), a.meet(y, z)));
        prop_assert_eq!(a.meet(x, x), Some(x));
    }

    #[test]
    fn meet_is_the_greatest_lower_bound((a, x, y, _z) in with_elements()) {
        let lower: Vec<usize> = a.elements().filter(|&w| a.leq(w, x) && a.leq(w, y)).collect();
        match a.meet(x, y) {
            Some(m) => prop_assert!(lower.contains(&m) && lower.iter().all(|&w| a.leq(w, m))),
            None => prop_assert!(lower.is_empty()),
        }
    }

    #[test]
    fn product_meets_are_componentwise(a in semilattice(), b in semilattice()) {
        let prod = direct_product(&a, &b).unwrap();
        for u in prod.semilattice.elements() {
            for v in prod.semilattice.elements() {
                let ((a1, b1), (a2, b2)) = (prod.unpair(u), prod.unpair(v));
                let expected = a.meet(a1, a2).zip(b.meet(b1, b2)).map(|(x, y)| prod.pair(x, y));
                prop_assert_eq!(prod.semilattice.meet(u, v), expected);
            }
        }
    }

    #[test]
    fn slat_text_round_trips(a in semilattice()) {
        let text = emit_slat(&a);
        let b = parse_slat(&text).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(emit_slat(&b), text);
    }

    #[test]
    fn isomorphism_is_symmetric(a in semilattice(), b in semilattice()) {
        let ab = isomorphism_check(&a, &b);
        let ba = isomorphism_check(&b, &a);
        prop_assert_eq!(ab.is_some(), ba.is_some());
        prop_assert_eq!(ab.is_some(), canonical_form(&a).0 == canonical_form(&b).0);
        if let Some(map) = ab {
            prop_assert!(map.is_isomorphism(&a, &b));
            prop_assert!(map.inverse().unwrap().is_isomorphism(&b, &a));
        }
    }

    #[test]
    fn relabelled_copies_share_a_canonical_form(a in semilattice()) {
        let (form, map) = canonical_form(&a);
        let canon = relabel(&a, &map);
        prop_assert!(map.is_isomorphism(&a, &canon));
        prop_assert_eq!(canon.rows().concat(), form.table);
    }

    #[test]
    fn class_maps_preserve_join(a in semilattice(), pick in any::<Index>()) {
        let congruences = all_congruences(&a).unwrap();
        let theta = pick.get(&congruences);
        let (q, class) = quotient(&a, theta).unwrap();
        prop_assert_eq!(q.size(), theta.block_count());
        prop_assert!(class.is_surjective());
        prop_assert!(class.preserves_join(&a, &q));
    }
}
