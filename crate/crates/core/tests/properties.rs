use proptest::prelude::*;

use coxtori::abelian::abelian_invariants;
use coxtori::permgroup::{centralizer, coxeter_group, Perm};
use coxtori::rootsys::{CoxeterType, RootSystem};
use coxtori::sorth::{is_strongly_orthogonal, wolf_sequence};
use coxtori::weights::weight_orbit;

fn crystallographic() -> Vec<CoxeterType> {
    let mut v: Vec<CoxeterType> = (1..=8).map(CoxeterType::a).collect();
    v.extend((2..=8).map(CoxeterType::b));
    v.extend((3..=8).map(CoxeterType::c));
    v.extend((4..=8).map(CoxeterType::d));
    v.extend([CoxeterType::e(6), CoxeterType::e(7), CoxeterType::e(8), CoxeterType::f4(), CoxeterType::g2()]);
    v
}

fn any_type() -> impl Strategy<Value = CoxeterType> {
    let mut v = crystallographic();
    v.extend([CoxeterType::h(3), CoxeterType::h(4), CoxeterType::i2(5), CoxeterType::i2(7), CoxeterType::i2(12)]);
    proptest::sample::select(v)
}

/// Product of reflections in `word`, read left to right.
fn element(rs: &RootSystem, word: &[usize]) -> Perm {
    word.iter().fold(Perm::identity(rs.num_roots()), |acc, &r| acc.mul(rs.reflection(r % rs.num_roots())))
}

#[test]
fn root_counts_and_orders() {
    let expected: [(CoxeterType, usize, u128); 6] = [
        (CoxeterType::a(4), 20, 120),
        (CoxeterType::b(3), 18, 48),
        (CoxeterType::d(5), 40, 1920),
        (CoxeterType::f4(), 48, 1152),
        (CoxeterType::h(3), 30, 120),
        (CoxeterType::i2(7), 14, 14),
    ];
    for (ct, roots, order) in expected {
        let rs = RootSystem::new(ct);
        assert_eq!(rs.num_roots(), roots, "{ct}");
        assert_eq!(coxeter_group(&rs).order(), order, "{ct}");
    }
}

#[test]
fn wolf_sequences_are_strongly_orthogonal() {
    for ct in crystallographic() {
        let rs = RootSystem::new(ct);
        let so = wolf_sequence(&rs).unwrap().roots;
        for (i, &a) in so.iter().enumerate() {
            for &b in &so[i + 1..] {
                assert!(is_strongly_orthogonal(&rs, a, b), "{ct}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions_negating_their_root(ct in any_type(), r in 0usize..240) {
        let rs = RootSystem::new(ct);
        let r = r % rs.num_roots();
        let s = rs.reflection(r);
        prop_assert!(s.mul(s).is_identity());
        prop_assert_eq!(s.image(r), rs.neg(r));
        prop_assert_eq!(rs.reflection(rs.neg(r)), s);
    }

    #[test]
    fn conjugate_reflection_is_reflection_of_image(ct in any_type(), r in 0usize..240, word in prop::collection::vec(0usize..240, 0..8)) {
        let rs = RootSystem::new(ct);
        let r = r % rs.num_roots();
        let g = element(&rs, &word);
        prop_assert_eq!(&rs.reflection(r).conj(&g), rs.reflection(g.image(r)));
    }

    #[test]
    fn reflections_preserve_sums(ct in any_type(), r in 0usize..240, a in 0usize..240, b in 0usize..240) {
        let rs = RootSystem::new(ct);
        let n = rs.num_roots();
        let (r, a, b) = (r % n, a % n, b % n);
        let s = rs.reflection(r);
        prop_assert_eq!(rs.sum(a, b).map(|c| s.image(c)), rs.sum(s.image(a), s.image(b)));
    }

    #[test]
    fn weight_action_is_a_homomorphism(
        ct in proptest::sample::select(vec![(CoxeterType::a(4), 2), (CoxeterType::d(5), 5), (CoxeterType::e(6), 1), (CoxeterType::e(7), 7)]),
        x in prop::collection::vec(0usize..126, 1..6),
        y in prop::collection::vec(0usize..126, 1..6),
    ) {
        let (ct, fw) = ct;
        let rs = RootSystem::new(ct);
        let ws = weight_orbit(&rs, fw).unwrap();
        let (g, h) = (element(&rs, &x), element(&rs, &y));
        prop_assert_eq!(ws.action(&rs, &g.mul(&h)), ws.action(&rs, &g).mul(&ws.action(&rs, &h)));
    }

    #[test]
    fn centralizers_of_random_elements(ct in any_type(), word in prop::collection::vec(0usize..240, 1..6)) {
        let rs = RootSystem::new(ct);
        let w = coxeter_group(&rs);
        let g = element(&rs, &word);
        let h = w.subgroup(vec![g.clone()]);
        let c = centralizer(&w, &h);
        prop_assert_eq!(w.order() % c.order(), 0);
        prop_assert!(c.generators().iter().all(|x| x.commutes_with(&g)));
        prop_assert!(c.contains(&g));
        // A cyclic group's invariants multiply out to its order.
        let inv = abelian_invariants(&h).unwrap();
        prop_assert_eq!(inv.order(), g.order() as u128);
    }
}
