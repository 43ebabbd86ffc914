//! Gel'fand–Dorfman bialgebras and quadratic Lie conformal algebras.

use thiserror::Error;

use crate::lca::LcaPresentation;
use crate::poly::{rat, Assignment, Monomial, Poly, Symbol, Var};
use crate::report::{VerifyReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GdError {
    #[error("{0}")]
    Axiom(String),
    #[error("[{i} l {j}] has term {monomial} in {k}; not a quadratic algebra")]
    NonQuadratic { i: String, j: String, k: String, monomial: String },
    #[error("[{i} l {j}]: the l-coefficient does not symmetrize the d-coefficient")]
    StarMismatch { i: String, j: String },
    #[error("central generators have no bialgebra counterpart")]
    Central,
}

/// A Novikov product `∘` and a Lie bracket on one space.
///
/// `circ[i][j][k]` is the `e_k` coordinate of `e_i ∘ e_j`; likewise `lie`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdBialgebra {
    pub name: String,
    pub basis: Vec<String>,
    pub params: Vec<String>,
    pub circ: Vec<Vec<Vec<Poly>>>,
    pub lie: Vec<Vec<Vec<Poly>>>,
}

type Vector = Vec<Poly>;

/// A named identity on basis triples, returning its residual.
type Identity<'a> = (&'a str, &'a dyn Fn(&[Poly], &[Poly], &[Poly]) -> Vector);

fn product(table: &[Vec<Vec<Poly>>], x: &[Poly], y: &[Poly]) -> Vector {
    let n = x.len();
    let mut out = vec![Poly::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let c = xi * yj;
            for (k, o) in out.iter_mut().enumerate() {
                let t = &table[i][j][k];
                if !t.is_zero() {
                    *o += &c * t;
                }
            }
        }
    }
    out
}

fn sub(x: &[Poly], y: &[Poly]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn add(x: &[Poly], y: &[Poly]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

impl GdBialgebra {
    /// Zero products on the given basis.
    pub fn new(name: &str, basis: &[&str], params: &[&str]) -> GdBialgebra {
        let n = basis.len();
        GdBialgebra {
            name: name.into(),
            basis: basis.iter().map(|b| b.to_string()).collect(),
            params: params.iter().map(|p| p.to_string()).collect(),
            circ: vec![vec![vec![Poly::zero(); n]; n]; n],
            lie: vec![vec![vec![Poly::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![Poly::zero(); self.dim()];
        v[i] = Poly::one();
        v
    }

    pub fn circ(&self, x: &[Poly], y: &[Poly]) -> Vector {
        product(&self.circ, x, y)
    }

    pub fn bracket(&self, x: &[Poly], y: &[Poly]) -> Vector {
        product(&self.lie, x, y)
    }

    /// `a ∗ b = a∘b + b∘a`
    pub fn star(&self, x: &[Poly], y: &[Poly]) -> Vector {
        add(&self.circ(x, y), &self.circ(y, x))
    }

    /// Assigns values to some parameters.
    pub fn specialize(&self, at: &Assignment) -> GdBialgebra {
        let mut out = self.clone();
        out.params.retain(|p| !at.contains_key(p));
        for t in out.circ.iter_mut().chain(out.lie.iter_mut()).flatten().flatten() {
            *t = t.specialize(at);
        }
        out
    }

    /// Sets `[e_i, e_j]` and `[e_j, e_i]` together.
    pub fn set_lie(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        self.lie[j][i][k] = -&p;
        self.lie[i][j][k] = p;
    }

    fn render(&self, v: &[Poly]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| format!("({p})*{}", self.basis[k]))
            .collect();
        parts.join(" + ")
    }

    fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.dim();
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
    }

    fn first_failure(&self, check: &str, identities: &[Identity<'_>]) -> VerifyReport {
        let mut cases = 0;
        for (i, j, k) in self.triples() {
            let (a, b, c) = (self.unit(i), self.unit(j), self.unit(k));
            for (label, f) in identities {
                cases += 1;
                let r = f(&a, &b, &c);
                if r.iter().any(|p| !p.is_zero()) {
                    let w = Witness {
                        at: vec![self.basis[i].clone(), self.basis[j].clone(), self.basis[k].clone()],
                        component: Some(label.to_string()),
                        residual: self.render(&r),
                    };
                    return VerifyReport::fail(check, &self.name, cases, w);
                }
            }
        }
        VerifyReport::pass(check, &self.name, cases)
    }

    /// Left-symmetry and right-commutativity of `∘`.
    pub fn check_novikov(&self) -> VerifyReport {
        let left = |a: &[Poly], b: &[Poly], c: &[Poly]| {
            let lhs = sub(&self.circ(&self.circ(a, b), c), &self.circ(a, &self.circ(b, c)));
            let rhs = sub(&self.circ(&self.circ(b, a), c), &self.circ(b, &self.circ(a, c)));
            sub(&lhs, &rhs)
        };
        let right =
            |a: &[Poly], b: &[Poly], c: &[Poly]| sub(&self.circ(&self.circ(a, b), c), &self.circ(&self.circ(a, c), b));
        self.first_failure("novikov", &[("left-symmetry", &left), ("right-commutativity", &right)])
    }

    /// Antisymmetry and Jacobi of the bracket.
    pub fn check_lie(&self) -> VerifyReport {
        let anti = |a: &[Poly], b: &[Poly], _: &[Poly]| add(&self.bracket(a, b), &self.bracket(b, a));
        let jacobi = |a: &[Poly], b: &[Poly], c: &[Poly]| {
            let x = self.bracket(a, &self.bracket(b, c));
            let y = self.bracket(b, &self.bracket(c, a));
            let z = self.bracket(c, &self.bracket(a, b));
            add(&add(&x, &y), &z)
        };
        self.first_failure("lie", &[("antisymmetry", &anti), ("jacobi", &jacobi)])
    }

    /// `[a∘b, c] − [a∘c, b] + [a,b]∘c − [a,c]∘b − a∘[b,c] = 0`
    pub fn check_gd_compat(&self) -> VerifyReport {
        let compat = |a: &[Poly], b: &[Poly], c: &[Poly]| {
            let t1 = self.bracket(&self.circ(a, b), c);
            let t2 = self.bracket(&self.circ(a, c), b);
            let t3 = self.circ(&self.bracket(a, b), c);
            let t4 = self.circ(&self.bracket(a, c), b);
            let t5 = self.circ(a, &self.bracket(b, c));
            sub(&sub(&add(&sub(&t1, &t2), &t3), &t4), &t5)
        };
        self.first_failure("gd-compat", &[("compatibility", &compat)])
    }

    pub fn check_all(&self) -> VerifyReport {
        let reports = [self.check_novikov(), self.check_lie(), self.check_gd_compat()];
        VerifyReport::all("gd", &self.name, reports)
    }

    /// The quadratic algebra `[a λ b] = ∂(b∘a) + [b,a] + λ(b∗a)`.
    pub fn to_quadratic(&self) -> Result<LcaPresentation, GdError> {
        let check = self.check_all();
        if !check.passed {
            return Err(GdError::Axiom(check.to_string()));
        }
        Ok(self.to_quadratic_unchecked())
    }

    pub(crate) fn to_quadratic_unchecked(&self) -> LcaPresentation {
        let names: Vec<&str> = self.basis.iter().map(String::as_str).collect();
        let params: Vec<&str> = self.params.iter().map(String::as_str).collect();
        let mut a = LcaPresentation::new(&self.name, &names, &params);
        let (d, l) = (Poly::d(), Poly::lambda());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for k in 0..self.dim() {
                    let circ_ji = &self.circ[j][i][k];
                    let star = circ_ji + &self.circ[i][j][k];
                    let p = &(&(&d * circ_ji) + &self.lie[j][i][k]) + &(&l * &star);
                    a.set(i, j, k, p);
                }
            }
        }
        a
    }

    /// Reads a bialgebra off a quadratic presentation.
    pub fn from_quadratic(a: &LcaPresentation) -> Result<GdBialgebra, GdError> {
        if a.central.iter().any(|c| *c) {
            return Err(GdError::Central);
        }
        let names: Vec<&str> = a.gens.iter().map(String::as_str).collect();
        let params: Vec<&str> = a.params.iter().map(String::as_str).collect();
        let mut g = GdBialgebra::new(&a.name, &names, &params);
        let n = a.rank();
        let d = Monomial::var(Symbol::Var(Var::D), 1);
        let l = Monomial::var(Symbol::Var(Var::Lambda), 1);
        let mut star = vec![vec![vec![Poly::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let coeffs = a.entry(i, j, k).var_coefficients();
                    // report the leading offender
                    if let Some(m) = coeffs.keys().rev().find(|m| !(m.is_one() || **m == d || **m == l)) {
                        return Err(GdError::NonQuadratic {
                            i: a.gens[i].clone(),
                            j: a.gens[j].clone(),
                            k: a.gens[k].clone(),
                            monomial: m.to_string(),
                        });
                    }
                    for (m, c) in coeffs {
                        if m.is_one() {
                            g.lie[j][i][k] = c;
                        } else if m == d {
                            g.circ[j][i][k] = c;
                        } else {
                            star[j][i][k] = c;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if star[j][i][k] != &g.circ[j][i][k] + &g.circ[i][j][k] {
                        return Err(GdError::StarMismatch { i: a.gens[i].clone(), j: a.gens[j].clone() });
                    }
                }
            }
        }
        Ok(g)
    }
}

/// V(a,b): the bialgebra whose quadratic algebra is TSV(a,b).
pub fn v_ab_at(a: &Poly, b: &Poly) -> GdBialgebra {
    let mut params: Vec<String> = a.params().into_iter().chain(b.params()).collect();
    params.sort();
    params.dedup();
    let names: Vec<&str> = params.iter().map(String::as_str).collect();
    let mut g = GdBialgebra::new("V", &["L", "Y", "M"], &names);
    let (lg, y, m) = (0, 1, 2);
    let one = Poly::one();
    g.circ[lg][lg][lg] = one.clone();
    g.circ[lg][y][y] = a - &one;
    g.circ[y][lg][y] = one.clone();
    g.circ[lg][m][m] = &a.scale(&rat(2, 1)) - &Poly::int(3);
    g.circ[m][lg][m] = one.clone();
    g.circ[y][y][m] = one;
    g.set_lie(lg, y, y, -b);
    g.set_lie(lg, m, m, b.scale(&rat(-2, 1)));
    g
}

pub fn v_ab() -> GdBialgebra {
    v_ab_at(&Poly::param("a"), &Poly::param("b"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lca::{check_axioms, tsv_ab, tsv_c, vir};

    #[test]
    fn v_ab_is_a_gd_bialgebra() {
        let r = v_ab().check_all();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn nonabelian_lie_product_is_not_novikov() {
        // ∘ = bracket of sl2-like [e,f]=h, [h,e]=2e, [h,f]=-2f
        let mut g = GdBialgebra::new("sl2", &["e", "f", "h"], &[]);
        let set = |t: &mut Vec<Vec<Vec<Poly>>>, i: usize, j: usize, k: usize, c: i64| {
            t[i][j][k] = Poly::int(c);
            t[j][i][k] = Poly::int(-c);
        };
        set(&mut g.circ, 0, 1, 2, 1);
        set(&mut g.circ, 2, 0, 0, 2);
        set(&mut g.circ, 2, 1, 1, -2);
        assert!(!g.check_novikov().passed);
    }

    #[test]
    fn one_dimensional_idempotent_gives_virasoro() {
        let mut g = GdBialgebra::new("Vir", &["L"], &[]);
        g.circ[0][0][0] = Poly::one();
        assert!(g.check_all().passed);
        assert!(g.to_quadratic().unwrap().same_table(&vir()));
    }

    #[test]
    fn v_ab_gives_tsv() {
        let q = v_ab().to_quadratic().unwrap();
        assert!(q.same_table(&tsv_ab()));
        assert!(check_axioms(&q).passed);
        assert_eq!(GdBialgebra::from_quadratic(&tsv_ab()).unwrap().circ, v_ab().circ);
    }

    #[test]
    fn tsv_c_is_not_quadratic() {
        let err = GdBialgebra::from_quadratic(&tsv_c()).unwrap_err();
        assert_eq!(err.to_string(), "[Y l Y] has term d^2 in M; not a quadratic algebra");
    }

    #[test]
    fn zero_products() {
        let g = GdBialgebra::new("zero", &["x", "y"], &[]);
        assert!(g.check_gd_compat().passed);
        let a = g.to_quadratic().unwrap();
        assert!(a.is_abelian());
        assert_eq!(GdBialgebra::from_quadratic(&a).unwrap(), g);
    }
}
