use std::collections::{BTreeSet, VecDeque};

use crate::poly::{param_root_candidates, Assignment, Poly, Rat};

/// Splits off the rational linear factors `q·x − p` of `cond` for each
/// parameter `x`; whatever is left over is kept as one factor.
///
/// The result is a set of normalized polynomials whose product vanishes
/// exactly where `cond` does.
pub fn rational_factors(cond: &Poly) -> Vec<Poly> {
    let mut rest = cond.integer_normalized();
    let mut out = BTreeSet::new();
    if rest.is_constant() {
        return Vec::new();
    }
    for name in cond.params() {
        for r in param_root_candidates(&rest, &name) {
            let lin = (&(Poly::param(&name).scale(&Rat::from_integer(r.denom().clone())))
                - &Poly::constant(Rat::from_integer(r.numer().clone())))
                .integer_normalized();
            while let Some(q) = rest.div_exact(&lin) {
                rest = q;
            }
            out.insert(lin);
        }
    }
    if !rest.is_constant() {
        out.insert(rest.integer_normalized());
    }
    out.into_iter().collect()
}

/// Single-parameter points `(name, value)` at which some condition vanishes
/// identically in the other parameters.
pub fn candidate_points<'a>(conditions: impl IntoIterator<Item = &'a Poly>) -> Vec<(String, Rat)> {
    let mut out = BTreeSet::new();
    for c in conditions {
        for name in c.params() {
            for r in param_root_candidates(c, &name) {
                out.insert((name.clone(), r));
            }
        }
    }
    out.into_iter().collect()
}

/// Solves at the generic point and then, recursively, at every rational point
/// where a recorded condition vanishes.
///
/// `solve` receives the parameter assignment and returns its result together
/// with the conditions it assumed. Points are visited breadth first, each
/// distinct assignment once; the generic solve comes first.
pub fn explore<R>(mut solve: impl FnMut(&Assignment) -> (R, Vec<Poly>)) -> Vec<(Assignment, R)> {
    let mut seen: BTreeSet<Assignment> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    queue.push_back(Assignment::new());
    seen.insert(Assignment::new());
    while let Some(at) = queue.pop_front() {
        let (res, conds) = solve(&at);
        for (name, value) in candidate_points(conds.iter()) {
            if at.contains_key(&name) {
                continue;
            }
            let mut next = at.clone();
            next.insert(name, value);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push((at, res));
    }
    out
}

/// Renders an assignment as `a=3/2,b=0`.
pub fn format_assignment(at: &Assignment) -> String {
    at.iter().map(|(k, v)| format!("{k}={}", crate::poly::format_rat(v))).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn factors_split_rational_roots() {
        let a = Poly::param("a");
        let p = &(&a - &Poly::int(1)) * &(&a - &Poly::int(2));
        let f: Vec<String> = rational_factors(&p).iter().map(|p| p.to_string()).collect();
        assert_eq!(f, vec!["a - 2", "a - 1"]);
        let q = &a.scale(&rat(2, 1)) - &Poly::int(3);
        assert_eq!(rational_factors(&q.scale(&rat(-5, 1))), vec![q]);
    }

    #[test]
    fn exploration_descends_into_joint_points() {
        // generic needs a != 0; at a = 0 we need b != 0
        let visited = explore(|at| {
            let conds = match at.get("a") {
                None => vec![Poly::param("a")],
                Some(_) if !at.contains_key("b") => vec![Poly::param("b")],
                _ => vec![],
            };
            ((), conds)
        });
        let pts: Vec<String> = visited.iter().map(|(a, _)| format_assignment(a)).collect();
        assert_eq!(pts, vec!["", "a=0", "a=0,b=0"]);
    }
}
