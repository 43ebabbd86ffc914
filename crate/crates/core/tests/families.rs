//! The shipped `.lca` files and the built-in families agree, and every
//! family satisfies the axioms symbolically.

use std::path::PathBuf;

use cwb_core::dsl::{parse, render};
use cwb_core::gdb::v_ab;
use cwb_core::lca::{check_axioms, check_jacobi, check_skew, dsv, sv, tsv_ab, tsv_c, vir, LcaPresentation};

fn family(file: &str) -> cwb_core::dsl::AlgebraDoc {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../families").join(file);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse(&text).unwrap_or_else(|e| panic!("{file}:{e}"))
}

fn cases() -> Vec<(&'static str, LcaPresentation)> {
    vec![("vir.lca", vir()), ("sv.lca", sv()), ("dsv.lca", dsv()), ("tsv_ab.lca", tsv_ab()), ("tsv_c.lca", tsv_c())]
}

#[test]
fn files_match_builtins() {
    for (file, a) in cases() {
        let doc = family(file);
        assert!(doc.algebra.same_table(&a), "{file}");
        assert_eq!(doc.algebra.params, a.params, "{file}");
        assert!(!doc.jobs.is_empty(), "{file} has no jobs");
    }
}

#[test]
fn bialgebra_file_matches_builtin() {
    let doc = family("v_ab.lca");
    assert_eq!(doc.gd.as_ref().unwrap().circ, v_ab().circ);
    assert_eq!(doc.gd.as_ref().unwrap().lie, v_ab().lie);
    assert!(doc.algebra.same_table(&tsv_ab()));
}

#[test]
fn files_survive_a_round_trip() {
    for file in ["vir.lca", "sv.lca", "dsv.lca", "tsv_ab.lca", "tsv_c.lca", "v_ab.lca"] {
        let doc = family(file);
        let again = parse(&render(&doc)).unwrap();
        assert!(again.algebra.same_table(&doc.algebra), "{file}");
        assert_eq!(again.jobs, doc.jobs, "{file}");
        assert_eq!(again.gd, doc.gd, "{file}");
    }
}

#[test]
fn axioms_hold_with_zero_residual() {
    for (name, a) in cases() {
        let skew = check_skew(&a);
        let jacobi = check_jacobi(&a);
        assert!(skew.passed, "{name}: {skew}");
        assert!(jacobi.passed, "{name}: {jacobi}");
        assert!(skew.witness.is_none() && jacobi.witness.is_none());
    }
}

#[test]
fn a_broken_bracket_is_caught() {
    let mut a = tsv_ab();
    // [L λ M] with the wrong λ-coefficient
    a.set_skew(0, 2, 2, &cwb_core::poly::Poly::d() + &cwb_core::poly::Poly::lambda());
    let r = check_axioms(&a);
    assert!(!r.passed);
    assert!(r.witness.is_some());
}
