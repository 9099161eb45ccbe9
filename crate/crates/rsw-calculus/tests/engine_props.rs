use std::collections::BTreeMap;

use proptest::prelude::*;
use rsw_calculus::charclass::VirtualBundle;
use rsw_calculus::engine::{
    change_splitting, check_identities, connected_sum, fiber_sum, localize_b1zero,
    localize_general, wall_cross,
};
use rsw_calculus::model::{fixtures, Chamber, RealFourManifold, SwTable};
use rsw_calculus::ring::{Mod2Class, Monomial, UpToSignClass};

fn class(beta: u32) -> impl Strategy<Value = Mod2Class> {
    let mask = if beta == 0 { 0 } else { (1u64 << beta) - 1 };
    prop::collection::vec(any::<u64>(), 0..5).prop_map(move |bits| {
        Mod2Class::from_monomials(
            beta,
            bits.into_iter().map(|b| Monomial::from_bits(b & mask)),
        )
        .unwrap()
    })
}

fn table(beta: u32) -> impl Strategy<Value = SwTable> {
    prop::collection::btree_map(0u32..10, class(beta), 0..5)
        .prop_map(|t| t.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

fn bundle(beta: u32) -> impl Strategy<Value = VirtualBundle> {
    (class(beta), -8i64..8).prop_map(move |(c, rank)| {
        let total = c
            .add(&c.degree_part(0))
            .unwrap()
            .add(&Mod2Class::one(beta))
            .unwrap();
        VirtualBundle::new(rank, total).unwrap()
    })
}

fn degree_one(beta: u32) -> impl Strategy<Value = Mod2Class> {
    class(beta).prop_map(|c| c.degree_part(1))
}

/// β = 0 record that may enter a fiber sum.
fn fiberable() -> impl Strategy<Value = RealFourManifold> {
    (1i64..4, 1i64..5).prop_map(|(h, sw)| {
        let d = 2 * h;
        let bpm = d as u32;
        let mut m = fixtures::synthetic("F", d, bpm, bpm + 1);
        m.fixed_torus_selfint_zero = true;
        m.fixed_set_connected = false;
        m.spinc[0].sw_mod2.clear();
        m.spinc[0].sw_int = Some(UpToSignClass::scalar(0, sw));
        m
    })
}

fn summable() -> impl Strategy<Value = RealFourManifold> {
    (0i64..4, 2u32..5, 0i64..4, any::<bool>()).prop_map(|(d, bpm, sw, known_deg)| {
        let mut m = fixtures::synthetic("C", d, bpm, bpm + 1);
        m.spinc[0].sw_mod2.clear();
        if d == bpm as i64 && d % 2 == 0 {
            m.spinc[0].sw_int = Some(UpToSignClass::scalar(0, sw));
            if known_deg {
                m.spinc[0].deg_r = Some(UpToSignClass::scalar(0, 2 * sw));
            }
        }
        m
    })
}

proptest! {
    #[test]
    fn wall_crossing_is_an_involution(
        (t, v, d) in (0u32..=4).prop_flat_map(|b| (table(b), bundle(b), -3i64..8))
    ) {
        let once = wall_cross(&t, d, &v).unwrap();
        prop_assert_eq!(wall_cross(&once, d, &v).unwrap(), t);
    }

    #[test]
    fn splitting_change_is_an_involution((t, a) in (0u32..=4).prop_flat_map(|b| (table(b), degree_one(b)))) {
        let once = change_splitting(&t, &a).unwrap();
        prop_assert_eq!(change_splitting(&once, &a).unwrap(), t);
    }

    #[test]
    fn splitting_changes_compose((t, a, b) in (0u32..=4).prop_flat_map(|n| (table(n), degree_one(n), degree_one(n)))) {
        let two = change_splitting(&change_splitting(&t, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(two, change_splitting(&t, &a.add(&b).unwrap()).unwrap());
    }

    #[test]
    fn localization_forms_agree(h in 0i64..6, bpm in 1u32..6, extra in 0u32..8, sw in any::<bool>()) {
        // b₁ = 0, Δ = 2d − b₊ − 1 must be even and nonnegative: b₊ odd.
        let b_plus = 2 * ((bpm + extra) / 2) + 1;
        prop_assume!(b_plus >= bpm);
        let d = h + bpm as i64;
        let big_delta = 2 * d - b_plus as i64 - 1;
        prop_assume!(big_delta >= 0);
        let m = fixtures::synthetic("L", d, bpm, b_plus);
        let known: BTreeMap<u64, bool> = [(0, sw)].into_iter().collect();
        let loc = localize_general(&m, &m.spinc[0], &known, big_delta / 2).unwrap();
        let expected = localize_b1zero(b_plus, b_plus - bpm, sw);
        prop_assert_eq!(loc.ordinary.map(|c| c.constant_term()), Some(expected));
    }

    #[test]
    fn fiber_sum_is_associative(a in fiberable(), b in fiberable(), c in fiberable()) {
        prop_assert!(rsw_calculus::model::validate(&a).is_empty());
        let (ab, sab) = fiber_sum(&a, &b, &a.spinc[0], &b.spinc[0]).unwrap();
        let (ab_c, s1) = fiber_sum(&ab, &c, &sab, &c.spinc[0]).unwrap();
        let (bc, sbc) = fiber_sum(&b, &c, &b.spinc[0], &c.spinc[0]).unwrap();
        let (a_bc, s2) = fiber_sum(&a, &bc, &a.spinc[0], &sbc).unwrap();
        prop_assert_eq!((s1.d, &s1.sw_int, &s1.deg_r, &s1.sw_mod2), (s2.d, &s2.sw_int, &s2.deg_r, &s2.sw_mod2));
        prop_assert_eq!(
            (ab_c.b_plus_total, ab_c.b_plus_minus, ab_c.signature, ab_c.b1_total),
            (a_bc.b_plus_total, a_bc.b_plus_minus, a_bc.signature, a_bc.b1_total)
        );
        prop_assert!(check_identities(&s1, 0, 4, 8).is_empty());
    }

    #[test]
    fn connected_sum_is_commutative(a in summable(), b in summable()) {
        prop_assert!(rsw_calculus::model::validate(&a).is_empty());
        let (m1, s1) = connected_sum(&a, &b, &a.spinc[0], &b.spinc[0], Chamber::Unique).unwrap();
        let (m2, s2) = connected_sum(&b, &a, &b.spinc[0], &a.spinc[0], Chamber::Unique).unwrap();
        prop_assert_eq!((s1.d, &s1.sw_int, &s1.deg_r, &s1.sw_mod2), (s2.d, &s2.sw_int, &s2.deg_r, &s2.sw_mod2));
        prop_assert_eq!((m1.b_plus_minus, m1.signature), (m2.b_plus_minus, m2.signature));
        prop_assert!(rsw_calculus::model::validate(&m1).is_empty(), "{:?}", rsw_calculus::model::validate(&m1));
    }
}
