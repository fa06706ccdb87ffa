//! Randomized invariant checks complementing the exhaustive unit tests.

use eqcat_core::burnside::{burnside_mul, marks_of, BurnsideElement};
use eqcat_core::group::{preset, subgroup_classes};
use eqcat_core::perm::{block_substitution, permutations_of, tensor_perm, Perm};
use eqcat_core::pqr::{Universe, UniversePoint};
use proptest::prelude::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    let perms = permutations_of(n);
    let count = perms.len();
    (0..count).prop_map(move |k| perms[k].clone())
}

proptest! {
    #[test]
    fn perm_compose_associative(
        a in perm_strategy(4),
        b in perm_strategy(4),
        c in perm_strategy(4),
    ) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn perm_inverse_cancels(a in perm_strategy(5)) {
        prop_assert_eq!(a.compose(&a.inverse()), Perm::identity(5));
        prop_assert_eq!(a.inverse().compose(&a), Perm::identity(5));
    }

    #[test]
    fn tensor_respects_composition(
        a in perm_strategy(3),
        b in perm_strategy(3),
        c in perm_strategy(2),
        d in perm_strategy(2),
    ) {
        prop_assert_eq!(
            tensor_perm(&a.compose(&b), &c.compose(&d)),
            tensor_perm(&a, &c).compose(&tensor_perm(&b, &d))
        );
    }

    #[test]
    fn block_substitution_with_identities_is_block_relabeling(
        c in perm_strategy(3),
        sizes in prop::collection::vec(1usize..4, 3),
    ) {
        let ids: Vec<Perm> = sizes.iter().map(|&s| Perm::identity(s)).collect();
        let refs: Vec<&Perm> = ids.iter().collect();
        let beta = block_substitution(&c, &refs);
        // β permutes the blocks as c permutes letters and is a bijection
        let total: usize = sizes.iter().sum();
        let mut seen = vec![false; total];
        for i in 0..total {
            let img = beta.apply(i);
            prop_assert!(!seen[img]);
            seen[img] = true;
        }
    }
}

fn burnside_element(name: &'static str, classes: usize) -> impl Strategy<Value = BurnsideElement> {
    prop::collection::vec(-3i64..4, classes).prop_map(move |coeffs| BurnsideElement {
        group_name: name.to_string(),
        coeffs,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn burnside_mul_commutes_and_marks_are_multiplicative(
        a in burnside_element("S3", 4),
        b in burnside_element("S3", 4),
    ) {
        let g = preset("S3").unwrap();
        let classes = subgroup_classes(&g);
        let ab = burnside_mul(&g, &classes, &a, &b).unwrap();
        let ba = burnside_mul(&g, &classes, &b, &a).unwrap();
        prop_assert_eq!(&ab.coeffs, &ba.coeffs);
        let ma = marks_of(&g, &classes, &a).unwrap();
        let mb = marks_of(&g, &classes, &b).unwrap();
        let mab = marks_of(&g, &classes, &ab).unwrap();
        for k in 0..classes.len() {
            prop_assert_eq!(mab[k], ma[k] * mb[k]);
        }
    }
}

fn universe_point(u: &Universe, class: usize, copy: usize, coset_pick: usize) -> UniversePoint {
    UniversePoint {
        class,
        copy,
        coset: coset_pick % u.orbits[class].size,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_bijection_round_trips_on_arbitrary_copies(
        cls in prop::collection::vec(0usize..4, 3),
        copies in prop::collection::vec(0usize..1000, 3),
        cosets in prop::collection::vec(0usize..6, 3),
    ) {
        let g = preset("S3").unwrap();
        let u = Universe::new(&g, 2);
        let xs: Vec<UniversePoint> = (0..3)
            .map(|i| universe_point(&u, cls[i] % u.classes.len(), copies[i], cosets[i]))
            .collect();
        let y = u.power_forward(3, &xs).unwrap();
        prop_assert_eq!(u.power_backward(3, y).unwrap(), xs);
    }

    #[test]
    fn canonical_bijection_is_equivariant_on_arbitrary_copies(
        cls in prop::collection::vec(0usize..5, 2),
        copies in prop::collection::vec(0usize..1000, 2),
        cosets in prop::collection::vec(0usize..8, 2),
        g_el in 0usize..6,
    ) {
        let g = preset("S3").unwrap();
        let u = Universe::new(&g, 2);
        let xs: Vec<UniversePoint> = (0..2)
            .map(|i| universe_point(&u, cls[i] % u.classes.len(), copies[i], cosets[i]))
            .collect();
        let moved: Vec<UniversePoint> = xs.iter().map(|&p| u.act(g_el, p)).collect();
        prop_assert_eq!(
            u.power_forward(2, &moved).unwrap(),
            u.act(g_el, u.power_forward(2, &xs).unwrap())
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_diagonal_divisibility_chain(
        entries in prop::collection::vec(-9i64..10, 9),
    ) {
        let m: Vec<Vec<i64>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        let d = eqcat_core::nerve::smith_diagonal(m);
        for w in d.windows(2) {
            prop_assert!(w[0] != 0);
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }
}
