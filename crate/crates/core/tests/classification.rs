//! Solving the axioms for unknown structure constants.

mod common;

use common::{d, int, l, p};
use cwb_core::lca::{solve_parameter_constraints, LcaPresentation};
use cwb_core::poly::RatFn;

/// `[L λ Y] = (∂+α1λ+α2)Y`, `[L λ M] = (∂+β1λ+β2)M`, `[Y λ Y] = P·M`.
fn ansatz(yy: cwb_core::poly::Poly, extra: &[&str]) -> LcaPresentation {
    let mut names = vec!["alpha1", "alpha2", "beta1", "beta2"];
    names.extend_from_slice(extra);
    let mut t = LcaPresentation::new("ansatz", &["L", "Y", "M"], &names);
    t.set_skew(0, 0, 0, &d() + &(&int(2) * &l()));
    t.set_skew(0, 1, 1, &(&d() + &(&p("alpha1") * &l())) + &p("alpha2"));
    t.set_skew(0, 2, 2, &(&d() + &(&p("beta1") * &l())) + &p("beta2"));
    // skew-symmetry of (Y, Y) is one of the constraints, so set it alone
    t.set(1, 1, 2, yy);
    t
}

fn value(sol: &cwb_core::lca::ConstraintSolution, name: &str) -> String {
    sol.value(name).unwrap_or_else(|| panic!("{name} not solved in {sol}")).to_string()
}

#[test]
fn linear_yy_bracket() {
    let yy = &(&d() + &(&p("gamma1") * &l())) + &p("gamma2");
    let a = ansatz(yy, &["gamma1", "gamma2"]);
    let sol = solve_parameter_constraints(&a, &["gamma1", "gamma2", "beta1", "beta2", "alpha1", "alpha2"]).unwrap();
    assert_eq!(sol.value("gamma1"), Some(&RatFn::from(2)));
    assert_eq!(sol.value("gamma2"), Some(&RatFn::zero()));
    assert_eq!(value(&sol, "beta2"), "2*alpha2");
    assert_eq!(value(&sol, "beta1"), "2*alpha1 - 2");
    assert_eq!(sol.free, ["alpha1", "alpha2"]);
    assert_eq!(sol.solved.len(), 4);
}

/// `S(x, y) = x + y + s` gives `P(λ, ∂) = (∂+2λ)(−∂+s)`.
#[test]
fn degree_one_symmetric_factor() {
    let yy = &(&d() + &(&int(2) * &l())) * &(&p("s") - &d());
    let a = ansatz(yy, &["s"]);
    let sol = solve_parameter_constraints(&a, &["beta1", "beta2", "alpha1", "s", "alpha2"]).unwrap();
    assert_eq!(value(&sol, "beta1"), "0");
    assert_eq!(value(&sol, "beta2"), "2*alpha2");
    assert_eq!(value(&sol, "alpha1"), "3/2");
    assert_eq!(value(&sol, "s"), "-2*alpha2");
    assert_eq!(sol.free, ["alpha2"]);
}

#[test]
fn inconsistent_ansatz_fails() {
    // [Y λ Y] = λM can never be skew-symmetric
    let a = ansatz(l(), &[]);
    assert!(solve_parameter_constraints(&a, &["alpha1", "alpha2", "beta1", "beta2"]).is_err());
}
