use std::collections::BTreeMap;

use crate::poly::{Poly, Symbol, Var};
use crate::report::{VerifyReport, Witness};

use super::{flip, LcaPresentation};

fn kill_d(p: Poly) -> Poly {
    p.subst_var(Var::D, &Poly::zero())
}

/// `[e_i λ e_j] + [e_j_{−λ−∂} e_i]`, componentwise.
pub fn skew_residual(a: &LcaPresentation, i: usize, j: usize) -> Vec<Poly> {
    (0..a.rank())
        .map(|k| {
            let r = a.entry(i, j, k) + &flip(a.entry(j, i, k));
            if a.central[k] {
                kill_d(r)
            } else {
                r
            }
        })
        .collect()
}

pub fn check_skew(a: &LcaPresentation) -> VerifyReport {
    let n = a.rank();
    let mut cases = 0;
    for i in 0..n {
        for j in i..n {
            cases += 1;
            for (k, r) in skew_residual(a, i, j).into_iter().enumerate() {
                if !r.is_zero() {
                    let w = Witness {
                        at: vec![a.gens[i].clone(), a.gens[j].clone()],
                        component: Some(a.gens[k].clone()),
                        residual: r.to_string(),
                    };
                    return VerifyReport::fail("skew", &a.name, cases, w);
                }
            }
        }
    }
    VerifyReport::pass("skew", &a.name, cases)
}

/// Substituted copies of the table used by the Jacobi expansion.
struct Shifted {
    n: usize,
    /// P(λ+∂, μ)
    outer_left: Vec<Poly>,
    /// P(−λ−μ, λ)
    composed: Vec<Poly>,
    /// P(μ+∂, λ)
    outer_right: Vec<Poly>,
    /// P(∂, λ+μ)
    at_sum: Vec<Poly>,
    /// P(∂, μ)
    at_mu: Vec<Poly>,
}

impl Shifted {
    fn new(a: &LcaPresentation) -> Shifted {
        let n = a.rank();
        let (d, l, m) = (Poly::d(), Poly::lambda(), Poly::mu());
        let subs = |pairs: [(Var, Poly); 2]| -> Vec<Poly> {
            let map: BTreeMap<Symbol, Poly> = pairs.into_iter().map(|(v, p)| (Symbol::Var(v), p)).collect();
            let mut out = Vec::with_capacity(n * n * n);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        out.push(a.entry(i, j, k).subst(&map));
                    }
                }
            }
            out
        };
        Shifted {
            n,
            outer_left: subs([(Var::D, &l + &d), (Var::Lambda, m.clone())]),
            composed: subs([(Var::D, -&(&l + &m)), (Var::Lambda, l.clone())]),
            outer_right: subs([(Var::D, &m + &d), (Var::Lambda, l.clone())]),
            at_sum: subs([(Var::D, d.clone()), (Var::Lambda, &l + &m)]),
            at_mu: subs([(Var::D, d.clone()), (Var::Lambda, m.clone())]),
        }
    }

    fn at<'a>(&self, v: &'a [Poly], i: usize, j: usize, k: usize) -> &'a Poly {
        &v[(i * self.n + j) * self.n + k]
    }
}

fn jacobi_with(a: &LcaPresentation, s: &Shifted, i: usize, j: usize, l: usize) -> Vec<Poly> {
    let n = a.rank();
    let mut out = vec![Poly::zero(); n];
    for k in 0..n {
        let t1 = s.at(&s.outer_left, j, l, k);
        let t2 = s.at(&s.composed, i, j, k);
        let t3 = s.at(&s.outer_right, i, l, k);
        for (m, o) in out.iter_mut().enumerate() {
            if !t1.is_zero() {
                let p = a.entry(i, k, m);
                if !p.is_zero() {
                    *o += t1 * p;
                }
            }
            if !t2.is_zero() {
                let p = s.at(&s.at_sum, k, l, m);
                if !p.is_zero() {
                    *o -= &(t2 * p);
                }
            }
            if !t3.is_zero() {
                let p = s.at(&s.at_mu, j, k, m);
                if !p.is_zero() {
                    *o -= &(t3 * p);
                }
            }
        }
    }
    for (m, o) in out.iter_mut().enumerate() {
        if a.central[m] {
            *o = kill_d(std::mem::take(o));
        }
    }
    out
}

/// `[e_i λ [e_j μ e_l]] − [[e_i λ e_j]_{λ+μ} e_l] − [e_j μ [e_i λ e_l]]`,
/// componentwise, as polynomials in ∂, λ, μ.
pub fn jacobi_residual(a: &LcaPresentation, i: usize, j: usize, l: usize) -> Vec<Poly> {
    jacobi_with(a, &Shifted::new(a), i, j, l)
}

/// Every Jacobi residual component, in triple order.
pub(crate) fn all_jacobi_residuals(a: &LcaPresentation) -> Vec<((usize, usize, usize), Vec<Poly>)> {
    let s = Shifted::new(a);
    let n = a.rank();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                out.push(((i, j, l), jacobi_with(a, &s, i, j, l)));
            }
        }
    }
    out
}

pub fn check_jacobi(a: &LcaPresentation) -> VerifyReport {
    let mut cases = 0;
    for ((i, j, l), res) in all_jacobi_residuals(a) {
        cases += 1;
        if let Some((m, r)) = res.into_iter().enumerate().find(|(_, r)| !r.is_zero()) {
            let w = Witness {
                at: vec![a.gens[i].clone(), a.gens[j].clone(), a.gens[l].clone()],
                component: Some(a.gens[m].clone()),
                residual: r.to_string(),
            };
            return VerifyReport::fail("jacobi", &a.name, cases, w);
        }
    }
    VerifyReport::pass("jacobi", &a.name, cases)
}

/// Skew-symmetry, then Jacobi.
pub fn check_axioms(a: &LcaPresentation) -> VerifyReport {
    let skew = check_skew(a);
    if !skew.passed {
        return skew;
    }
    let jac = check_jacobi(a);
    VerifyReport::all("axioms", &a.name, [skew, jac])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::{dsv, vir};
    use crate::poly::rat;

    #[test]
    fn virasoro_passes() {
        let r = check_axioms(&vir());
        assert!(r.passed);
        assert_eq!(r.cases, 2);
    }

    #[test]
    fn wrong_weight_of_m_breaks_jacobi_on_l_y_y() {
        let mut a = dsv();
        a.set_skew(0, 2, 2, &Poly::d() - &Poly::lambda().scale(&rat(3, 1)));
        assert!(check_skew(&a).passed);
        let r = check_jacobi(&a);
        let w = r.witness.expect("a witness");
        assert_eq!(w.at, ["L", "Y", "Y"]);
        assert_eq!(w.component.as_deref(), Some("M"));
        assert!(!jacobi_residual(&a, 0, 1, 1)[2].is_zero());
    }

    #[test]
    fn one_sided_bracket_breaks_skew() {
        let mut a = vir();
        a.set(0, 0, 0, Poly::d());
        let r = check_skew(&a);
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap().at, ["L", "L"]);
    }

    #[test]
    fn central_components_ignore_d() {
        let mut a = LcaPresentation::new("ext", &["L", "C"], &[]);
        a.central[1] = true;
        a.set_skew(0, 0, 0, &Poly::d() + &Poly::lambda().scale(&rat(2, 1)));
        a.set(0, 0, 1, Poly::lambda().pow(3));
        assert!(skew_residual(&a, 0, 0)[1].is_zero());
        assert!(check_axioms(&a).passed);
    }
}
