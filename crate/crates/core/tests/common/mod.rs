//! Helpers shared by the integration tests.
#![allow(dead_code)]

use cwb_core::cohom::Cocycle;
use cwb_core::lca::LcaPresentation;
use cwb_core::poly::{rat, Assignment, Poly, Var};

pub fn d() -> Poly {
    Poly::d()
}

pub fn l() -> Poly {
    Poly::lambda()
}

pub fn p(name: &str) -> Poly {
    Poly::param(name)
}

pub fn int(n: i64) -> Poly {
    Poly::int(n)
}

pub fn q(n: i64, den: i64) -> Poly {
    Poly::ratio(n, den)
}

/// `a=3/2,b=0` style assignment from `(name, numerator, denominator)`.
pub fn at(pairs: &[(&str, i64, i64)]) -> Assignment {
    pairs.iter().map(|(k, n, den)| (k.to_string(), rat(*n, *den))).collect()
}

/// A cocycle given on some pairs; skew partners get `-p(-λ)`.
pub fn cocycle(a: &LcaPresentation, entries: &[(&str, &str, Poly)]) -> Cocycle {
    let mut c = Cocycle::zero(&a.gens);
    for (x, y, v) in entries {
        let i = a.gen_index(x).unwrap();
        let j = a.gen_index(y).unwrap();
        c.values[i][j] = v.clone();
        if i != j {
            c.values[j][i] = -v.subst_var(Var::Lambda, &-l());
        }
    }
    c
}
