use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::gcd::content_in;
use super::poly::Poly;
use super::symbol::Symbol;
use super::Rat;

/// Largest |constant| or |leading| coefficient we try to factor by trial
/// division.
const FACTOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > FACTOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a univariate polynomial in `x`, by the rational root
/// theorem. Returns `None` when `p` is not univariate in `x`.
pub fn rational_roots(p: &Poly, x: &Symbol) -> Option<Vec<Rat>> {
    if p.symbols().iter().any(|s| s != x) {
        return None;
    }
    if p.is_zero() {
        return None;
    }
    let p = p.integer_normalized();
    let deg = p.degree(x.clone()).unwrap_or(0);
    let coeff = |k: u32| p.coeff_extract(x.clone(), k).as_constant().unwrap();
    let low = (0..=deg).find(|&k| !coeff(k).is_zero()).unwrap();
    let mut roots = BTreeSet::new();
    if low > 0 {
        roots.insert(Rat::zero());
    }
    let a0 = coeff(low).to_integer();
    let an = coeff(deg).to_integer();
    let (Some(ps), Some(qs)) = (divisors(&a0), divisors(&an)) else {
        return Some(roots.into_iter().collect());
    };
    let eval = |r: &Rat| {
        let mut acc = Rat::zero();
        for k in (0..=deg).rev() {
            acc = acc * r + coeff(k);
        }
        acc
    };
    for num in &ps {
        for den in &qs {
            if !num.gcd(den).eq(&BigInt::from(1)) {
                continue;
            }
            for sign in [1, -1] {
                let r = Rat::new(num * sign, den.clone());
                if eval(&r).is_zero() {
                    roots.insert(r);
                }
            }
        }
    }
    Some(roots.into_iter().collect())
}

/// Values `v` such that setting parameter `name = v` makes `p` vanish
/// identically in the remaining symbols.
///
/// These are the rational roots of the part of `p` that depends on `name`
/// alone (the content of `p` with respect to every other symbol).
pub fn param_root_candidates(p: &Poly, name: &str) -> Vec<Rat> {
    let x = Symbol::param(name);
    if !p.contains(&x) {
        return Vec::new();
    }
    let mut part = p.clone();
    for s in p.symbols() {
        if s != x {
            part = content_in(&part, &s);
        }
    }
    // `content_in` collapses to the gcd of coefficients, which is free of `s`
    // but may still involve other symbols; repeat until univariate.
    while part.symbols().iter().any(|s| *s != x) {
        let s = part.symbols().into_iter().find(|s| *s != x).unwrap();
        part = content_in(&part, &s);
    }
    rational_roots(&part, &x).unwrap_or_default()
}
