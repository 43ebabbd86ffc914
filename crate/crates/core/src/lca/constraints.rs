use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::linalg::{LinalgError, LinearSystem};
use crate::poly::{substitute_ratfn, Poly, RatFn, Symbol};

use super::checks::{all_jacobi_residuals, skew_residual};
use super::{LcaError, LcaPresentation};

/// Solved values of a set of unknown parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSolution {
    /// `(unknown, value)` in the order the unknowns were given; values only
    /// involve `free` unknowns and non-unknown parameters.
    pub solved: Vec<(String, RatFn)>,
    pub free: Vec<String>,
    pub genericity: Vec<Poly>,
}

impl ConstraintSolution {
    pub fn value(&self, name: &str) -> Option<&RatFn> {
        self.solved.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

impl fmt::Display for ConstraintSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.solved.iter().map(|(n, v)| format!("{n} = {v}")).collect();
        write!(f, "{}", parts.join(", "))?;
        if !self.free.is_empty() {
            write!(f, "; free {}", self.free.join(", "))?;
        }
        Ok(())
    }
}

/// Coefficient equations (in the formal variables) of every skew and Jacobi
/// residual.
fn axiom_equations(a: &LcaPresentation) -> Vec<Poly> {
    let n = a.rank();
    let mut residuals = Vec::new();
    for i in 0..n {
        for j in i..n {
            residuals.extend(skew_residual(a, i, j));
        }
    }
    for (_, r) in all_jacobi_residuals(a) {
        residuals.extend(r);
    }
    let mut eqs = BTreeSet::new();
    for r in residuals {
        for (_, c) in r.var_coefficients() {
            eqs.insert(c.integer_normalized());
        }
    }
    eqs.into_iter().filter(|p| !p.is_zero()).collect()
}

fn unknown_degree(p: &Poly, unknowns: &BTreeSet<Symbol>) -> Option<(u32, String)> {
    p.terms()
        .map(|(m, _)| {
            let (u, _) = m.split(|s| unknowns.contains(s));
            (u.total_degree(), u.to_string())
        })
        .max_by_key(|(d, _)| *d)
}

/// Solves the axioms of `a` for the named parameters.
///
/// Works in stages: each stage solves the equations that are affine in the
/// remaining unknowns, substitutes, and repeats. Equations that never become
/// affine are rejected with the offending monomial.
pub fn solve_parameter_constraints(a: &LcaPresentation, unknowns: &[&str]) -> Result<ConstraintSolution, LcaError> {
    if let Some(u) = unknowns.iter().find(|u| !a.params.iter().any(|p| p == *u)) {
        return Err(LcaError::UnknownParam(u.to_string()));
    }
    let mut eqs = axiom_equations(a);
    let mut active: Vec<Symbol> = unknowns.iter().map(|u| Symbol::param(u)).collect();
    let mut values: BTreeMap<Symbol, RatFn> = BTreeMap::new();
    let mut genericity = BTreeSet::new();
    while !eqs.is_empty() {
        let set: BTreeSet<Symbol> = active.iter().cloned().collect();
        let (linear, rest): (Vec<Poly>, Vec<Poly>) =
            eqs.into_iter().partition(|e| unknown_degree(e, &set).is_none_or(|(d, _)| d <= 1));
        if linear.is_empty() {
            let (_, m) = unknown_degree(&rest[0], &set).expect("nonempty equation");
            return Err(LinalgError::Nonlinear(m).into());
        }
        let sys = LinearSystem::from_identities(&active, linear)?;
        let sol = sys.solve_affine();
        let Some(part) = &sol.particular else {
            let why = if sol.obstructions.is_empty() {
                "inconsistent equations".to_string()
            } else {
                sol.obstructions.iter().map(|p| format!("{p} = 0")).collect::<Vec<_>>().join(", ")
            };
            return Err(LcaError::Infeasible(why));
        };
        genericity.extend(sol.homogeneous.genericity.iter().cloned());
        let mut stage: BTreeMap<Symbol, RatFn> = BTreeMap::new();
        for (p, sym) in active.iter().enumerate() {
            if sol.free.contains(&p) {
                continue;
            }
            let mut v = part[p].clone();
            for (k, &f) in sol.free.iter().enumerate() {
                let coef = &sol.homogeneous.basis[k][p];
                if !coef.is_zero() {
                    v = &v + &(coef * &RatFn::from(Poly::symbol(active[f].clone())));
                }
            }
            stage.insert(sym.clone(), v);
        }
        for v in values.values_mut() {
            *v = subst_value(v, &stage);
        }
        values.extend(stage.clone());
        active.retain(|s| !stage.contains_key(s));
        let mut next = BTreeSet::new();
        for e in rest {
            let r = substitute_ratfn(&e, &stage).num().integer_normalized();
            if !r.is_zero() {
                next.insert(r);
            }
        }
        eqs = next.into_iter().collect();
    }
    let solved =
        unknowns.iter().filter_map(|u| values.get(&Symbol::param(u)).map(|v| (u.to_string(), v.clone()))).collect();
    let free = active.iter().map(|s| s.to_string()).collect();
    Ok(ConstraintSolution { solved, free, genericity: genericity.into_iter().collect() })
}

fn subst_value(v: &RatFn, map: &BTreeMap<Symbol, RatFn>) -> RatFn {
    let num = substitute_ratfn(v.num(), map);
    let den = substitute_ratfn(v.den(), map);
    num.checked_div(&den).expect("solved values keep nonzero denominators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    /// The rank-3 ansatz with symbolic α, β, γ.
    fn ansatz() -> LcaPresentation {
        let names = ["alpha1", "alpha2", "beta1", "beta2", "gamma1", "gamma2"];
        let p = |n: &str| Poly::param(n);
        let mut t = LcaPresentation::new("ansatz", &["L", "Y", "M"], &names);
        let (d, l) = (Poly::d(), Poly::lambda());
        t.set_skew(0, 0, 0, &d + &l.scale(&rat(2, 1)));
        t.set_skew(0, 1, 1, &(&d + &(&p("alpha1") * &l)) + &p("alpha2"));
        t.set_skew(0, 2, 2, &(&d + &(&p("beta1") * &l)) + &p("beta2"));
        // only the (Y, Y) entry itself; its skew partner is part of the ansatz
        t.set(1, 1, 2, &(&d + &(&p("gamma1") * &l)) + &p("gamma2"));
        t
    }

    #[test]
    fn recovers_the_two_parameter_family() {
        let a = ansatz();
        let sol = solve_parameter_constraints(&a, &["gamma1", "gamma2", "beta1", "beta2", "alpha1", "alpha2"]).unwrap();
        assert_eq!(sol.value("gamma1").unwrap(), &RatFn::from(2));
        assert_eq!(sol.value("gamma2").unwrap(), &RatFn::zero());
        assert_eq!(sol.value("beta2").unwrap().to_string(), "2*alpha2");
        assert_eq!(sol.value("beta1").unwrap().to_string(), "2*alpha1 - 2");
        assert_eq!(sol.free, vec!["alpha1", "alpha2"]);
    }

    #[test]
    fn no_unknowns_on_a_valid_algebra() {
        let t = super::super::tsv_ab();
        let sol = solve_parameter_constraints(&t, &[]).unwrap();
        assert!(sol.solved.is_empty());
    }

    #[test]
    fn undeclared_unknown() {
        let t = super::super::vir();
        assert!(matches!(solve_parameter_constraints(&t, &["q"]), Err(LcaError::UnknownParam(_))));
    }
}
