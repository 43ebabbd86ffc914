use num_traits::Zero;

use super::monomial::Monomial;
use super::poly::Poly;
use super::symbol::Symbol;

/// Coefficients of `p` as a polynomial in `x`, indexed by degree.
fn coefficients(p: &Poly, x: &Symbol) -> Vec<Poly> {
    let deg = p.degree(x.clone()).unwrap_or(0) as usize;
    let mut out = vec![Poly::zero(); deg + 1];
    for (m, c) in p.terms() {
        let (rest, e) = m.without(x);
        out[e as usize].add_term(rest, c.clone());
    }
    out
}

fn lead_in(p: &Poly, x: &Symbol) -> (u32, Poly) {
    let d = p.degree(x.clone()).unwrap_or(0);
    (d, p.coeff_extract(x.clone(), d))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content_in(p: &Poly, x: &Symbol) -> Poly {
    let mut g = Poly::zero();
    for c in coefficients(p, x) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn monomial_gcd(m: &Monomial, p: &Poly) -> Poly {
    let mut factors: Vec<(Symbol, u32)> = m.factors().to_vec();
    for (pm, _) in p.terms() {
        for (s, e) in factors.iter_mut() {
            *e = (*e).min(pm.exponent(s));
        }
    }
    Poly::term(Monomial::from_factors(factors), num_traits::One::one())
}

/// Greatest common divisor over ℚ, normalized to integer coefficients with
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.integer_normalized();
    }
    if b.is_zero() {
        return a.integer_normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 {
        let (m, _) = a.terms().next().unwrap();
        return monomial_gcd(m, b);
    }
    if b.len() == 1 {
        let (m, _) = b.terms().next().unwrap();
        return monomial_gcd(m, a);
    }
    if a == b {
        return a.integer_normalized();
    }
    let syms_a = a.symbols();
    let syms_b = b.symbols();
    // A symbol present in only one operand cannot divide the gcd.
    if let Some(x) = syms_a.symmetric_difference(&syms_b).next() {
        let (with, other) = if syms_a.contains(x) { (a, b) } else { (b, a) };
        return gcd(&content_in(with, x), other);
    }
    let x = syms_a.iter().next().unwrap().clone();
    let ca = content_in(a, &x);
    let cb = content_in(b, &x);
    let c = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, &x);
    (&c * &g).integer_normalized()
}

/// Gcd of two polynomials primitive in `x`, via primitive pseudo-remainders.
fn primitive_prs(mut a: Poly, mut b: Poly, x: &Symbol) -> Poly {
    if a.degree(x.clone()) < b.degree(x.clone()) {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.degree(x.clone()) == Some(0) {
            // b is free of x and primitive, hence a unit
            return Poly::one();
        }
        let r = pseudo_rem(&a, &b, x);
        a = b;
        b = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, x);
            r.div_exact(&c).expect("content divides")
        };
    }
    a
}

fn pseudo_rem(a: &Poly, b: &Poly, x: &Symbol) -> Poly {
    let (db, lb) = lead_in(b, x);
    let mut r = a.clone();
    while !r.is_zero() {
        let (dr, lr) = lead_in(&r, x);
        if dr < db {
            break;
        }
        let shift = Poly::term(Monomial::var(x.clone(), dr - db), num_traits::One::one());
        r = &(&r * &lb) - &(&(&lr * &shift) * b);
    }
    r
}

#[allow(dead_code)]
pub(crate) fn is_unit(p: &Poly) -> bool {
    p.is_constant() && !p.is_zero() && !p.leading_coeff().is_zero()
}
