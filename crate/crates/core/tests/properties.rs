//! Randomized invariants.

mod common;

use std::sync::OnceLock;

use common::at;
use cwb_core::cder::{is_derivation, solve_derivations, Derivation, DerivationSpace};
use cwb_core::cohom::solve_cocycles;
use cwb_core::lca::{tsv_ab, tsv_c, vir, LcaPresentation};
use cwb_core::poly::{rat, Assignment, Poly, Var};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 200, ..ProptestConfig::default() }
}

/// Small polynomials in ∂, λ and the parameter `a`.
fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..2, -5i64..=5, 1i64..=3), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(i, j, k, n, den)| {
                let m = &(&Poly::d().pow(i) * &Poly::lambda().pow(j)) * &Poly::param("a").pow(k);
                m.scale(&rat(n, den))
            })
            .sum()
    })
}

/// Polynomials in ∂ only, as coefficients of an element of the algebra.
fn d_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 0..4)
        .prop_map(|cs| cs.into_iter().enumerate().map(|(t, c)| Poly::d().pow(t as u32).scale(&rat(c, 1))).sum())
}

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-4i64..=4, 1i64..=2)
}

fn algebra() -> impl Strategy<Value = LcaPresentation> {
    prop_oneof![
        Just(vir()),
        Just(tsv_ab()),
        Just(tsv_c()),
        (small_rat(), small_rat())
            .prop_map(|(a, b)| tsv_ab().specialize(&at(&[("a", a.0, a.1), ("b", b.0, b.1)])).unwrap()),
        small_rat().prop_map(|c| tsv_c().specialize(&at(&[("c", c.0, c.1)])).unwrap()),
    ]
}

fn rank3_point() -> impl Strategy<Value = LcaPresentation> {
    prop_oneof![
        (small_rat(), small_rat())
            .prop_map(|(a, b)| tsv_ab().specialize(&at(&[("a", a.0, a.1), ("b", b.0, b.1)])).unwrap()),
        (0i64..=2, Just(0i64)).prop_map(|(a, b)| tsv_ab().specialize(&at(&[("a", a, 1), ("b", b, 1)])).unwrap()),
        small_rat().prop_map(|c| tsv_c().specialize(&at(&[("c", c.0, c.1)])).unwrap()),
    ]
}

/// Derivation spaces solved once for a few algebras.
fn spaces() -> &'static Vec<(LcaPresentation, DerivationSpace)> {
    static CELL: OnceLock<Vec<(LcaPresentation, DerivationSpace)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let algebras = [
            tsv_ab().specialize(&at(&[("a", 3, 2), ("b", 0, 1)])).unwrap(),
            tsv_ab().specialize(&at(&[("a", 1, 1), ("b", 0, 1)])).unwrap(),
            tsv_ab().specialize(&at(&[("a", -2, 3), ("b", 5, 1)])).unwrap(),
            tsv_c().specialize(&at(&[("c", 1, 2)])).unwrap(),
        ];
        algebras.into_iter().map(|a| (a.clone(), solve_derivations(&a, (4, 4)))).collect()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &Poly::zero(), x.clone());
        prop_assert_eq!(&x * &Poly::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
        prop_assert!((&x * &Poly::zero()).is_zero());
    }

    #[test]
    fn substitution_composes(x in poly(), f in poly(), g in poly(), h in poly()) {
        // first σ: ∂ ↦ f, λ ↦ g; then τ: ∂ ↦ h
        let sigma = [(Var::D, f.clone()), (Var::Lambda, g.clone())];
        let tau = [(Var::D, h.clone())];
        let step = x.substitute(&sigma).unwrap().substitute(&tau).unwrap();
        let composed = [(Var::D, f.substitute(&tau).unwrap()), (Var::Lambda, g.substitute(&tau).unwrap())];
        prop_assert_eq!(step, x.substitute(&composed).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map(x in poly(), y in poly(), f in poly(), a in small_rat()) {
        let sigma = [(Var::Lambda, f.clone())];
        let s = |p: &Poly| p.substitute(&sigma).unwrap();
        prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
        let pt: Assignment = at(&[("a", a.0, a.1)]);
        prop_assert_eq!((&x * &y).specialize(&pt), &x.specialize(&pt) * &y.specialize(&pt));
    }

    #[test]
    fn inner_maps_are_derivations(a in algebra(), x in prop::collection::vec(d_poly(), 3)) {
        let x: Vec<Poly> = x.into_iter().take(a.rank()).collect();
        let ad = Derivation::inner(&a, &x);
        let r = is_derivation(&a, &ad);
        prop_assert!(r.passed, "{}", r);
    }

    #[test]
    fn inner_inside_all(k in 0usize..4, x in prop::collection::vec(d_poly(), 3)) {
        let (a, space) = &spaces()[k];
        let ad = Derivation::inner(a, &x);
        let v = ad.to_vector(space.bounds).expect("fits the box");
        prop_assert!(space.all.contains(&v));
        prop_assert!(space.is_inner(&ad));
    }

    #[test]
    fn cocycles_split(a in rank3_point(), deg in 2u32..=6) {
        let s = solve_cocycles(&a, deg);
        prop_assert_eq!(s.dim_z2(), s.dim_b2() + s.dim_h2());
        for r in s.representatives() {
            prop_assert!(s.is_cocycle(&r));
            prop_assert!(!s.is_coboundary(&r));
        }
    }
}
