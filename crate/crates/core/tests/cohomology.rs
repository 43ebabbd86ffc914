//! Second cohomology with trivial coefficients and central extensions.

mod common;

use common::{at, cocycle, int, l, p, q};
use cwb_core::cohom::{
    check_cocycle, coboundary, explore_cocycles, extend, shift_section, solve_cocycles, solve_cocycles_quadratic,
    Cocycle, CocycleSolution, DEFAULT_DEGREE,
};
use cwb_core::gdb::{v_ab, GdBialgebra};
use cwb_core::lca::{check_axioms, tsv_ab, tsv_c, vir, LcaPresentation};
use cwb_core::linalg::SolutionSpace;
use cwb_core::poly::{Assignment, Poly};

fn tsv(a: (i64, i64), b: (i64, i64)) -> LcaPresentation {
    tsv_ab().specialize(&at(&[("a", a.0, a.1), ("b", b.0, b.1)])).unwrap()
}

/// Does `B² + span(expected)` equal `B² + span(H² representatives)`?
fn same_classes(sol: &CocycleSolution, expected: &[Cocycle]) -> bool {
    let mut vectors = sol.b2.basis.clone();
    vectors.extend(expected.iter().map(|c| c.to_vector(sol.degree).expect("fits the degree bound")));
    let theirs = SolutionSpace::span(sol.z2.ncols, &vectors);
    theirs.dim() == sol.dim_b2() + expected.len() && theirs.same_span(&sol.h2_space())
}

fn alpha(a: &LcaPresentation) -> Cocycle {
    cocycle(a, &[("L", "L", l().pow(3))])
}

#[test]
fn virasoro() {
    let a = vir();
    let s = solve_cocycles(&a, DEFAULT_DEGREE);
    assert_eq!(s.dim_h2(), 1);
    assert!(same_classes(&s, &[alpha(&a)]));
}

#[test]
fn generic_two_parameter_family() {
    let a = tsv_ab();
    let s = solve_cocycles(&a, DEFAULT_DEGREE);
    assert_eq!(s.dim_h2(), 1);
    assert!(same_classes(&s, &[alpha(&a)]));
    let g: Vec<String> = s.genericity.iter().map(|p| p.to_string()).collect();
    for needed in ["a", "b", "a - 1"] {
        assert!(g.contains(&needed.to_string()), "{g:?}");
    }
}

#[test]
fn special_points() {
    for (a, b, dim) in [(0, 0, 3), (2, 0, 3), (1, 0, 3), (1, 5, 1), (2, 3, 1)] {
        let s = solve_cocycles(&tsv((a, 1), (b, 1)), DEFAULT_DEGREE);
        assert_eq!(s.dim_h2(), dim, "TSV({a}, {b})");
    }
}

#[test]
fn cocycle_count_at_a_2_b_0() {
    // three inner coboundaries plus the three classes: six free constants in all
    let s = solve_cocycles(&tsv((2, 1), (0, 1)), DEFAULT_DEGREE);
    assert_eq!((s.dim_b2(), s.dim_h2(), s.z2.dim()), (3, 3, 6));
}

#[test]
fn bases_at_special_points() {
    let t = tsv((0, 1), (0, 1));
    let s = solve_cocycles(&t, DEFAULT_DEGREE);
    let beta = cocycle(&t, &[("L", "Y", int(1))]);
    let gamma = cocycle(&t, &[("L", "Y", l())]);
    assert!(same_classes(&s, &[alpha(&t), beta, gamma]));

    let t = tsv((2, 1), (0, 1));
    let s = solve_cocycles(&t, DEFAULT_DEGREE);
    let iota = cocycle(&t, &[("L", "Y", l().pow(3))]);
    let kappa = cocycle(&t, &[("Y", "Y", l().pow(3)), ("L", "M", l().pow(3))]);
    assert!(same_classes(&s, &[alpha(&t), iota, kappa]));

    let t = tsv((1, 1), (0, 1));
    let s = solve_cocycles(&t, DEFAULT_DEGREE);
    let theta = cocycle(&t, &[("L", "Y", l().pow(2))]);
    let omega = cocycle(&t, &[("Y", "M", int(1))]);
    assert!(same_classes(&s, &[alpha(&t), theta, omega]));
}

#[test]
fn one_parameter_family() {
    let t = tsv_c();
    let s = solve_cocycles(&t, DEFAULT_DEGREE);
    assert_eq!(s.dim_h2(), 1);
    assert!(same_classes(&s, &[alpha(&t)]));

    let t0 = tsv_c().specialize(&at(&[("c", 0, 1)])).unwrap();
    let s = solve_cocycles(&t0, DEFAULT_DEGREE);
    assert_eq!(s.dim_h2(), 2);
    let beta = cocycle(&t0, &[("L", "M", int(1)), ("Y", "Y", &int(-2) * &l())]);
    assert!(same_classes(&s, &[alpha(&t0), beta]));
}

#[test]
fn exploration_finds_the_special_points() {
    let found = explore_cocycles(&tsv_ab(), DEFAULT_DEGREE);
    let dim_at = |pairs: &[(&str, i64, i64)]| {
        let want: Assignment = at(pairs);
        found.iter().find(|(a, _)| *a == want).map(|(_, s)| s.dim_h2())
    };
    assert_eq!(dim_at(&[]), Some(1));
    assert_eq!(dim_at(&[("a", 0, 1), ("b", 0, 1)]), Some(3));
    assert_eq!(dim_at(&[("a", 1, 1), ("b", 0, 1)]), Some(3));
    assert_eq!(dim_at(&[("a", 2, 1), ("b", 0, 1)]), Some(3));
}

/// Raising the degree bound past 6 adds nothing.
#[test]
fn degree_bound_is_stable() {
    for t in [tsv((0, 1), (0, 1)), tsv((2, 1), (0, 1)), tsv_c()] {
        let lo = solve_cocycles(&t, DEFAULT_DEGREE);
        let hi = solve_cocycles(&t, DEFAULT_DEGREE + 2);
        assert!(lo.agrees_with(&hi), "{}", t.name);
    }
}

fn v(a: i64, b: i64) -> GdBialgebra {
    v_ab().specialize(&at(&[("a", a, 1), ("b", b, 1)]))
}

#[test]
fn quadratic_route_agrees() {
    let generic = solve_cocycles_quadratic(&v_ab()).unwrap();
    assert!(generic.agrees_with(&solve_cocycles(&tsv_ab(), DEFAULT_DEGREE)));
    for (a, b) in [(0, 0), (2, 0), (1, 0)] {
        let quad = solve_cocycles_quadratic(&v(a, b)).unwrap();
        let direct = solve_cocycles(&tsv((a, 1), (b, 1)), DEFAULT_DEGREE);
        assert_eq!(quad.dim_h2(), direct.dim_h2(), "({a}, {b})");
        assert!(quad.agrees_with(&direct), "({a}, {b})");
    }
}

fn all_representatives() -> Vec<(LcaPresentation, Cocycle)> {
    let mut out = Vec::new();
    for t in [
        vir(),
        tsv_ab(),
        tsv((0, 1), (0, 1)),
        tsv((2, 1), (0, 1)),
        tsv((1, 1), (0, 1)),
        tsv_c(),
        tsv_c().specialize(&at(&[("c", 0, 1)])).unwrap(),
    ] {
        for r in solve_cocycles(&t, DEFAULT_DEGREE).representatives() {
            out.push((t.clone(), r));
        }
    }
    out
}

#[test]
fn extensions_by_representatives() {
    for (t, r) in all_representatives() {
        assert!(check_cocycle(&t, &r).passed);
        let ext = extend(&t, &r).unwrap();
        assert_eq!(ext.rank(), t.rank() + 1);
        assert!(ext.central[t.rank()]);
        let check = check_axioms(&ext);
        assert!(check.passed, "{}: {check}", r.render("r"));
    }
}

#[test]
fn extension_by_a_coboundary_splits() {
    let t = tsv((3, 2), (1, 1));
    let zero = extend(&t, &Cocycle::zero(&t.gens)).unwrap();
    let shifts: [Vec<Poly>; 3] =
        [vec![int(1), int(0), int(0)], vec![q(1, 2), int(-3), int(2)], vec![int(0), q(2, 3), int(5)]];
    for c in shifts {
        let beta = coboundary(&t, &c);
        let ext = extend(&t, &beta).unwrap();
        assert!(!ext.same_table(&zero));
        assert!(shift_section(&ext, &c).same_table(&zero), "shift {c:?}");
    }
}

#[test]
fn non_cocycles_are_rejected() {
    let t = tsv_c();
    let bad = cocycle(&t, &[("L", "L", l().pow(2))]);
    assert!(extend(&t, &bad).is_err());
    let bad = cocycle(&t, &[("L", "Y", p("c"))]);
    assert!(!check_cocycle(&t, &bad).passed);
}
