//! Gel'fand–Dorfman bialgebras and quadratic Lie conformal algebras.
#![allow(clippy::needless_range_loop)]

mod common;

use common::{at, p};
use cwb_core::gdb::{v_ab, GdBialgebra, GdError};
use cwb_core::lca::{check_axioms, tsv_ab, tsv_c, vir};
use cwb_core::poly::{rat, Poly, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn v_ab_is_a_bialgebra() {
    let g = v_ab();
    assert!(g.check_novikov().passed);
    assert!(g.check_lie().passed);
    assert!(g.check_gd_compat().passed);
}

#[test]
fn v_ab_gives_tsv_ab() {
    let t = v_ab().to_quadratic().unwrap();
    assert!(t.same_table(&tsv_ab()));
    assert!(check_axioms(&t).passed);
}

#[test]
fn one_parameter_family_is_not_quadratic() {
    match GdBialgebra::from_quadratic(&tsv_c()) {
        Err(GdError::NonQuadratic { i, j, k, monomial }) => {
            assert_eq!((i.as_str(), j.as_str(), k.as_str()), ("Y", "Y", "M"));
            assert_eq!(monomial, "d^2");
        }
        other => panic!("expected a non-quadratic witness, got {other:?}"),
    }
}

#[test]
fn virasoro_comes_from_an_idempotent() {
    let mut g = GdBialgebra::new("Vir", &["L"], &[]);
    g.circ[0][0][0] = Poly::one();
    assert!(g.to_quadratic().unwrap().same_table(&vir()));
}

#[test]
fn broken_compatibility_has_a_witness() {
    // keep [L, Y] = -bY but drop [L, M] = -2bM
    let mut g = v_ab().specialize(&at(&[("a", 2, 1), ("b", 1, 1)]));
    g.set_lie(0, 2, 2, Poly::zero());
    let r = g.check_gd_compat();
    assert!(!r.passed);
    assert!(r.witness.is_some());
    assert!(g.to_quadratic().is_err());
}

/// Coordinates of a change of basis and its inverse.
struct Basis {
    p: Vec<Vec<Rat>>,
    inv: Vec<Vec<Rat>>,
}

fn zero() -> Rat {
    rat(0, 1)
}

fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().cloned().chain((0..n).map(|j| if i == j { rat(1, 1) } else { zero() })).collect())
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != zero())?;
        a.swap(c, piv);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && a[r][c] != zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn random_basis(rng: &mut ChaCha8Rng, n: usize) -> Basis {
    loop {
        let p: Vec<Vec<Rat>> =
            (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))).collect()).collect();
        if let Some(inv) = invert(&p) {
            return Basis { p, inv };
        }
    }
}

/// The same bialgebra written in the basis `f_i = Σ_a p[a][i] e_a`.
fn transport(g: &GdBialgebra, b: &Basis) -> GdBialgebra {
    let n = g.dim();
    let mut out = g.clone();
    for (table, new) in [(&g.circ, &mut out.circ), (&g.lie, &mut out.lie)] {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = Poly::zero();
                    for x in 0..n {
                        for y in 0..n {
                            for z in 0..n {
                                let w = &(&b.p[x][i] * &b.p[y][j]) * &b.inv[k][z];
                                if w != zero() && !table[x][y][z].is_zero() {
                                    acc += table[x][y][z].scale(&w);
                                }
                            }
                        }
                    }
                    new[i][j][k] = acc;
                }
            }
        }
    }
    out
}

/// The bialgebra spanned by some basis vectors of a closed subspace.
fn restrict(g: &GdBialgebra, keep: &[usize]) -> GdBialgebra {
    let names: Vec<&str> = keep.iter().map(|&i| g.basis[i].as_str()).collect();
    let mut out = GdBialgebra::new(&g.name, &names, &[]);
    for (x, &i) in keep.iter().enumerate() {
        for (y, &j) in keep.iter().enumerate() {
            for (z, &k) in keep.iter().enumerate() {
                out.circ[x][y][z] = g.circ[i][j][k].clone();
                out.lie[x][y][z] = g.lie[i][j][k].clone();
            }
        }
    }
    out
}

#[test]
fn randomized_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6764);
    // subspaces of V(a,b) closed under both products
    let subspaces: [&[usize]; 5] = [&[0, 1, 2], &[0, 2], &[1, 2], &[0], &[2]];
    for round in 0..20 {
        let a = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let b = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let full = v_ab().specialize(&[("a".to_string(), a.clone()), ("b".to_string(), b.clone())].into());
        let keep = subspaces[round % subspaces.len()];
        let sub = restrict(&full, keep);
        let g = transport(&sub, &random_basis(&mut rng, keep.len()));
        let check = g.check_all();
        assert!(check.passed, "round {round}: {check}");
        let quad = g.to_quadratic().unwrap();
        assert!(check_axioms(&quad).passed, "round {round}");
        let back = GdBialgebra::from_quadratic(&quad).unwrap();
        assert_eq!(back.circ, g.circ, "round {round}");
        assert_eq!(back.lie, g.lie, "round {round}");
    }
}

#[test]
fn symbolic_round_trip() {
    let back = GdBialgebra::from_quadratic(&tsv_ab()).unwrap();
    assert_eq!(back.circ, v_ab().circ);
    assert_eq!(back.lie, v_ab().lie);
    assert!(back.circ[0][1][1] == &p("a") - &Poly::one());
}
