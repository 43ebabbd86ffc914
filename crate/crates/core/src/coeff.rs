//! Finite windows of the coefficient algebra Coeff(R).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::lca::LcaPresentation;
use crate::poly::{Poly, Rat, Var};
use crate::report::{VerifyReport, Witness};

/// `(generator, index)`: the basis element `e_n`.
pub type Mode = (usize, i64);

/// Formal sum `Σ coeff · e_{k,p}`.
pub type ModeSum = BTreeMap<Mode, Poly>;

/// A term `coeff · e_{k, m+n−shift}` of a bracket with symbolic indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftTerm {
    pub gen: usize,
    pub shift: u32,
    pub coeff: Poly,
}

/// `x(x−1)…(x−r+1)`
fn falling(x: &Poly, r: u32) -> Poly {
    let mut acc = Poly::one();
    for t in 0..r {
        acc = &acc * &(x - &Poly::int(t as i64));
    }
    acc
}

/// The j-th products `a_(j) b` split as `coef[(j, r, k)]` of `∂^r e_k`.
fn products(a: &LcaPresentation, i: usize, j: usize) -> Vec<(u32, u32, usize, Poly)> {
    let mut out = Vec::new();
    for (k, p) in a.bracket_gens(i, j).iter().enumerate() {
        let dl = p.degree(Var::Lambda).unwrap_or(0);
        for jj in 0..=dl {
            let cj = p.coeff_extract(Var::Lambda, jj);
            let dd = cj.degree(Var::D).unwrap_or(0);
            for r in 0..=dd {
                let c = cj.coeff_extract(Var::D, r);
                if !c.is_zero() {
                    out.push((jj, r, k, c));
                }
            }
        }
    }
    out
}

/// `[e_i,m , e_j,n]` with `m`, `n` given as polynomials.
///
/// Expands `[a λ b] = Σ λ^j/j! a_(j)b`, uses `[a_m, b_n] = Σ_j C(m,j)
/// (a_(j)b)_{m+n−j}` and reduces `(∂^r e)_p = (−1)^r p(p−1)…(p−r+1) e_{p−r}`.
pub fn bracket_terms(a: &LcaPresentation, i: usize, j: usize, m: &Poly, n: &Poly) -> Vec<ShiftTerm> {
    let mut acc: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
    let sum = m + n;
    for (jj, r, k, c) in products(a, i, j) {
        // C(m, j)·j! cancels the 1/j! of the expansion
        let idx = &sum - &Poly::int(jj as i64);
        let mut t = &(&falling(m, jj) * &c) * &falling(&idx, r);
        if r % 2 == 1 {
            t = -t;
        }
        *acc.entry((k, jj + r)).or_default() += t;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((gen, shift), coeff)| ShiftTerm { gen, shift, coeff }).collect()
}

/// Brackets with symbolic indices `m`, `n` (parameters named `m` and `n`).
pub fn symbolic_bracket(a: &LcaPresentation, i: usize, j: usize) -> Vec<ShiftTerm> {
    bracket_terms(a, i, j, &Poly::param("m"), &Poly::param("n"))
}

/// All brackets `[e_i,m , e_j,n]` with `|m|, |n| ≤ radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffWindow {
    pub radius: i64,
    pub gens: Vec<String>,
    pub brackets: BTreeMap<(Mode, Mode), ModeSum>,
}

pub fn build_window(a: &LcaPresentation, radius: i64) -> CoeffWindow {
    let n = a.rank();
    let mut brackets = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for m in -radius..=radius {
                for q in -radius..=radius {
                    let terms = bracket_terms(a, i, j, &Poly::int(m), &Poly::int(q));
                    let mut sum = ModeSum::new();
                    for t in terms {
                        sum.insert((t.gen, m + q - t.shift as i64), t.coeff);
                    }
                    brackets.insert(((i, m), (j, q)), sum);
                }
            }
        }
    }
    CoeffWindow { radius, gens: a.gens.clone(), brackets }
}

fn add_scaled(acc: &mut ModeSum, s: &ModeSum, c: &Poly) {
    for (k, v) in s {
        let e = acc.entry(*k).or_default();
        *e += c * v;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

impl CoeffWindow {
    fn in_range(&self, p: i64) -> bool {
        p.abs() <= self.radius
    }

    pub fn get(&self, x: Mode, y: Mode) -> Option<&ModeSum> {
        self.brackets.get(&(x, y))
    }

    /// `[x, s]` for a formal sum `s`, if every term is inside the window.
    fn bracket_sum(&self, x: Mode, s: &ModeSum) -> Option<ModeSum> {
        let mut acc = ModeSum::new();
        for (y, c) in s {
            if !self.in_range(y.1) {
                return None;
            }
            add_scaled(&mut acc, self.get(x, *y)?, c);
        }
        Some(acc)
    }

    pub fn render_mode(&self, (k, p): Mode) -> String {
        format!("{}_{p}", self.gens[k])
    }

    pub fn render_sum(&self, s: &ModeSum) -> String {
        if s.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = s
            .iter()
            .rev()
            .map(|(mode, c)| {
                let e = self.render_mode(*mode);
                if c.is_one() {
                    e
                } else if (-c).is_one() {
                    format!("-{e}")
                } else if c.len() == 1 && c.is_constant() {
                    format!("{c}*{e}")
                } else {
                    format!("({c})*{e}")
                }
            })
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }

    /// One line per nonzero bracket, in index order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for ((x, y), s) in &self.brackets {
            if s.is_empty() {
                continue;
            }
            let _ = writeln!(out, "[{}, {}] = {}", self.render_mode(*x), self.render_mode(*y), self.render_sum(s));
        }
        out
    }

    /// `[x, y] = −[y, x]` on every window pair.
    pub fn check_antisymmetry(&self) -> VerifyReport {
        let mut cases = 0;
        for ((x, y), s) in &self.brackets {
            cases += 1;
            let mut r = s.clone();
            if let Some(t) = self.get(*y, *x) {
                add_scaled(&mut r, t, &Poly::one());
            }
            if !r.is_empty() {
                let w = Witness {
                    at: vec![self.render_mode(*x), self.render_mode(*y)],
                    component: None,
                    residual: self.render_sum(&r),
                };
                return VerifyReport::fail("coeff-antisymmetry", "window", cases, w);
            }
        }
        VerifyReport::pass("coeff-antisymmetry", "window", cases)
    }

    /// Jacobi sum on every triple whose nested brackets stay in the window.
    pub fn check_window_jacobi(&self) -> VerifyReport {
        let n = self.gens.len();
        let r = self.radius;
        let modes: Vec<Mode> = (0..n).flat_map(|k| (-r..=r).map(move |p| (k, p))).collect();
        let mut cases = 0;
        for &x in &modes {
            for &y in &modes {
                for &z in &modes {
                    let (Some(yz), Some(zx), Some(xy)) = (self.get(y, z), self.get(z, x), self.get(x, y)) else {
                        continue;
                    };
                    let (Some(a), Some(b), Some(c)) =
                        (self.bracket_sum(x, yz), self.bracket_sum(y, zx), self.bracket_sum(z, xy))
                    else {
                        continue;
                    };
                    cases += 1;
                    let mut sum = a;
                    add_scaled(&mut sum, &b, &Poly::one());
                    add_scaled(&mut sum, &c, &Poly::one());
                    if !sum.is_empty() {
                        let w = Witness {
                            at: vec![self.render_mode(x), self.render_mode(y), self.render_mode(z)],
                            component: None,
                            residual: self.render_sum(&sum),
                        };
                        return VerifyReport::fail("coeff-jacobi", "window", cases, w);
                    }
                }
            }
        }
        VerifyReport::pass("coeff-jacobi", "window", cases)
    }

    /// Overwrites one bracket coefficient (and nothing else).
    pub fn set_coeff(&mut self, x: Mode, y: Mode, out: Mode, c: Rat) {
        let s = self.brackets.entry((x, y)).or_default();
        if c == Rat::from_integer(0.into()) {
            s.remove(&out);
        } else {
            s.insert(out, Poly::constant(c));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::vir;

    #[test]
    fn witt_bracket() {
        let w = build_window(&vir(), 6);
        let s = w.get((0, 2), (0, 3)).unwrap();
        assert_eq!(w.render_sum(s), "-L_4");
    }

    #[test]
    fn symbolic_virasoro_bracket() {
        let t = symbolic_bracket(&vir(), 0, 0);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].shift, 1);
        assert_eq!(t[0].coeff, &Poly::param("m") - &Poly::param("n"));
    }

    #[test]
    fn virasoro_window_is_a_lie_algebra() {
        let w = build_window(&vir(), 6);
        assert!(w.check_antisymmetry().passed);
        let r = w.check_window_jacobi();
        assert!(r.passed && r.cases > 0, "{r}");
    }

    #[test]
    fn corrupted_constant_is_caught() {
        let mut w = build_window(&vir(), 4);
        w.set_coeff((0, 1), (0, 1), (0, 1), Rat::from_integer(5.into()));
        assert!(!w.check_window_jacobi().passed || !w.check_antisymmetry().passed);
        let mut w = build_window(&vir(), 4);
        // keep antisymmetry intact so only Jacobi can notice
        w.set_coeff((0, 2), (0, 1), (0, 2), Rat::from_integer(2.into()));
        w.set_coeff((0, 1), (0, 2), (0, 2), Rat::from_integer((-2).into()));
        assert!(w.check_antisymmetry().passed);
        assert!(!w.check_window_jacobi().passed);
    }
}
