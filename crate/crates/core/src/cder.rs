//! Conformal derivations within a degree box.
//!
//! A conformal-linear map is stored on generators, `d_λ(e_i) = Σ_j
//! D_ij(λ, ∂) e_j`, and extended by `d_λ(p(∂)u) = p(∂+λ) d_λ(u)`.

use serde::Serialize;

use crate::lca::LcaPresentation;
use crate::linalg::{complement_basis, explore, rational_factors, LinearSystem, SolutionSpace};
use crate::poly::{Assignment, Monomial, Poly, RatFn, Symbol, Var};
use crate::report::{VerifyReport, Witness};

/// Degree bounds used when none are given.
pub const DEFAULT_BOUNDS: (u32, u32) = (4, 4);

/// Coordinates of `c[i][j][s][t]`, the coefficient of `λ^s ∂^t` in `D_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivationAnsatz {
    pub rank: usize,
    pub deg_l: u32,
    pub deg_d: u32,
}

impl DerivationAnsatz {
    fn block(&self) -> usize {
        (self.deg_l as usize + 1) * (self.deg_d as usize + 1)
    }

    pub fn ncols(&self) -> usize {
        self.rank * self.rank * self.block()
    }

    /// Pairs in lexicographic order, then λ-degree and ∂-degree descending.
    pub fn col(&self, i: usize, j: usize, s: u32, t: u32) -> usize {
        (i * self.rank + j) * self.block()
            + (self.deg_l - s) as usize * (self.deg_d as usize + 1)
            + (self.deg_d - t) as usize
    }

    pub fn slot(&self, col: usize) -> (usize, usize, u32, u32) {
        let pair = col / self.block();
        let r = col % self.block();
        let w = self.deg_d as usize + 1;
        (pair / self.rank, pair % self.rank, self.deg_l - (r / w) as u32, self.deg_d - (r % w) as u32)
    }

    pub fn generic(&self, gens: &[String]) -> Derivation {
        let mut out = Derivation::zero(gens);
        for i in 0..self.rank {
            for j in 0..self.rank {
                for s in 0..=self.deg_l {
                    for t in 0..=self.deg_d {
                        let m = &Poly::lambda().pow(s) * &Poly::d().pow(t);
                        out.values[i][j] += &Poly::unknown(self.col(i, j, s, t) as u32) * &m;
                    }
                }
            }
        }
        out
    }
}

/// A conformal-linear map given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub gens: Vec<String>,
    /// `values[i][j]` is the `e_j` coordinate of `d_λ(e_i)`.
    pub values: Vec<Vec<Poly>>,
}

impl Derivation {
    pub fn zero(gens: &[String]) -> Derivation {
        let n = gens.len();
        Derivation { gens: gens.to_vec(), values: vec![vec![Poly::zero(); n]; n] }
    }

    /// `ad(x)_λ(u) = [x λ u]` for `x = Σ_j x_j(∂) e_j`.
    pub fn inner(a: &LcaPresentation, x: &[Poly]) -> Derivation {
        let n = a.rank();
        let mut out = Derivation::zero(&a.gens);
        let neg_l = -&Poly::lambda();
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            let left = xj.subst_var(Var::D, &neg_l);
            for i in 0..n {
                for k in 0..n {
                    let p = a.entry(j, i, k);
                    if !p.is_zero() {
                        out.values[i][k] += &left * p;
                    }
                }
            }
        }
        out
    }

    pub fn from_vector(gens: &[String], bounds: (u32, u32), v: &[RatFn]) -> Derivation {
        let ansatz = DerivationAnsatz { rank: gens.len(), deg_l: bounds.0, deg_d: bounds.1 };
        let mut den = Poly::one();
        for e in v {
            if !e.den().is_one() {
                den = &den * &e.den().div_exact(&crate::poly::gcd(&den, e.den())).expect("gcd divides");
            }
        }
        let mut out = Derivation::zero(gens);
        for (c, e) in v.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let scaled = (e * &RatFn::from(den.clone())).into_poly().expect("denominator cleared");
            let (i, j, s, t) = ansatz.slot(c);
            out.values[i][j] += &scaled * &(&Poly::lambda().pow(s) * &Poly::d().pow(t));
        }
        out
    }

    /// Coordinates within the bounds, or `None` if some entry does not fit.
    pub fn to_vector(&self, bounds: (u32, u32)) -> Option<Vec<RatFn>> {
        let ansatz = DerivationAnsatz { rank: self.gens.len(), deg_l: bounds.0, deg_d: bounds.1 };
        let mut v = vec![RatFn::zero(); ansatz.ncols()];
        for (i, row) in self.values.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                for (m, c) in p.var_coefficients() {
                    let (s, t) = (m.exponent(&Symbol::Var(Var::Lambda)), m.exponent(&Symbol::Var(Var::D)));
                    if s > bounds.0 || t > bounds.1 || m.total_degree() != s + t {
                        return None;
                    }
                    v[ansatz.col(i, j, s, t)] = RatFn::from(c);
                }
            }
        }
        Some(v)
    }

    /// `R(L)=M; R(Y)=0`-style rendering of the nonzero images.
    pub fn render(&self, label: &str) -> String {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, row)| row.iter().any(|p| !p.is_zero()))
            .map(|(i, row)| {
                let terms: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(j, p)| {
                        let g = &self.gens[j];
                        if p.is_one() {
                            g.clone()
                        } else if p.len() == 1 && !p.to_string().starts_with('-') {
                            format!("{p}*{g}")
                        } else {
                            format!("({p})*{g}")
                        }
                    })
                    .collect();
                format!("{label}({})={}", self.gens[i], terms.join(" + "))
            })
            .collect();
        if parts.is_empty() {
            format!("{label}=0")
        } else {
            parts.join("; ")
        }
    }
}

fn subst2(p: &Poly, d: &Poly, l: &Poly) -> Poly {
    p.substitute(&[(Var::D, d.clone()), (Var::Lambda, l.clone())]).expect("variables only")
}

/// `d_λ[e_i μ e_l] − [(d_λ e_i)_{λ+μ} e_l] − [e_i μ (d_λ e_l)]` for every pair,
/// componentwise, as polynomials in ∂, λ, μ.
pub fn derivation_residuals(a: &LcaPresentation, d: &Derivation) -> Vec<((usize, usize), Vec<Poly>)> {
    let n = a.rank();
    let (dd, l, m) = (Poly::d(), Poly::lambda(), Poly::mu());
    let d_plus_l = &dd + &l;
    let d_plus_m = &dd + &m;
    let neg_sum = -&(&l + &m);
    let sum = &l + &m;
    // D_ij(λ, −λ−μ) and D_lj(λ, ∂+μ)
    let left: Vec<Vec<Poly>> =
        d.values.iter().map(|r| r.iter().map(|p| p.subst_var(Var::D, &neg_sum)).collect()).collect();
    let right: Vec<Vec<Poly>> =
        d.values.iter().map(|r| r.iter().map(|p| p.subst_var(Var::D, &d_plus_m)).collect()).collect();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for lg in 0..n {
            let mut res = vec![Poly::zero(); n];
            for k in 0..n {
                let p = a.entry(i, lg, k);
                if p.is_zero() {
                    continue;
                }
                let shifted = subst2(p, &d_plus_l, &m);
                for (mm, r) in res.iter_mut().enumerate() {
                    if !d.values[k][mm].is_zero() {
                        *r += &shifted * &d.values[k][mm];
                    }
                }
            }
            for j in 0..n {
                if !left[i][j].is_zero() {
                    for (mm, r) in res.iter_mut().enumerate() {
                        let p = a.entry(j, lg, mm);
                        if !p.is_zero() {
                            *r -= &(&left[i][j] * &p.subst_var(Var::Lambda, &sum));
                        }
                    }
                }
                if !right[lg][j].is_zero() {
                    for (mm, r) in res.iter_mut().enumerate() {
                        let p = a.entry(i, j, mm);
                        if !p.is_zero() {
                            *r -= &(&right[lg][j] * &p.subst_var(Var::Lambda, &m));
                        }
                    }
                }
            }
            out.push(((i, lg), res));
        }
    }
    out
}

pub fn is_derivation(a: &LcaPresentation, d: &Derivation) -> VerifyReport {
    let mut cases = 0;
    for ((i, l), res) in derivation_residuals(a, d) {
        cases += 1;
        if let Some((k, r)) = res.iter().enumerate().find(|(_, r)| !r.is_zero()) {
            let w = Witness {
                at: vec![a.gens[i].clone(), a.gens[l].clone()],
                component: Some(a.gens[k].clone()),
                residual: r.to_string(),
            };
            return VerifyReport::fail("derivation", &a.name, cases, w);
        }
    }
    VerifyReport::pass("derivation", &a.name, cases)
}

/// All derivations in a degree box, the inner ones, and the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationSpace {
    pub gens: Vec<String>,
    pub bounds: (u32, u32),
    pub all: SolutionSpace,
    pub inner: SolutionSpace,
    #[serde(skip)]
    pub outer: Vec<Vec<RatFn>>,
    #[serde(serialize_with = "ser_polys")]
    pub genericity: Vec<Poly>,
}

fn ser_polys<S: serde::Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

impl DerivationSpace {
    pub fn outer_dim(&self) -> usize {
        self.outer.len()
    }

    pub fn representatives(&self) -> Vec<Derivation> {
        self.outer.iter().map(|v| Derivation::from_vector(&self.gens, self.bounds, v)).collect()
    }

    pub fn render_representatives(&self) -> Vec<String> {
        let names = ["R", "S", "T", "U", "V", "W"];
        self.representatives().iter().enumerate().map(|(k, d)| d.render(names.get(k).copied().unwrap_or("X"))).collect()
    }

    /// True if `d` fits the bounds and is `ad(x)` for some `x` in the box.
    pub fn is_inner(&self, d: &Derivation) -> bool {
        d.to_vector(self.bounds).is_some_and(|v| self.inner.contains(&v))
    }
}

/// Inner derivations `ad(∂^t e_j)` combined so that every coefficient fits
/// the box.
fn inner_space(a: &LcaPresentation, ansatz: &DerivationAnsatz) -> SolutionSpace {
    let n = a.rank();
    let top = ansatz.deg_l + ansatz.deg_d;
    let mut gens = Vec::new();
    for j in 0..n {
        for t in 0..=top {
            let mut x = vec![Poly::zero(); n];
            x[j] = Poly::d().pow(t);
            gens.push(Derivation::inner(a, &x));
        }
    }
    // weights w_g with Σ w_g·ad_g inside the box
    let fits = |m: &Monomial| {
        let s = m.exponent(&Symbol::Var(Var::Lambda));
        let t = m.exponent(&Symbol::Var(Var::D));
        s <= ansatz.deg_l && t <= ansatz.deg_d
    };
    let mut outside = Vec::new();
    for i in 0..n {
        for k in 0..n {
            let mut e = Poly::zero();
            for (g, d) in gens.iter().enumerate() {
                let over: Poly = Poly::from_terms(
                    d.values[i][k].terms().filter(|(m, _)| !fits(m)).map(|(m, c)| (m.clone(), c.clone())),
                );
                if !over.is_zero() {
                    e += &over * &Poly::unknown(g as u32);
                }
            }
            outside.push(e);
        }
    }
    let weights: Vec<Symbol> = (0..gens.len() as u32).map(Symbol::Unknown).collect();
    let ker = LinearSystem::from_identities(&weights, outside).expect("linear in the weights").nullspace();
    let big = DerivationAnsatz { rank: n, deg_l: top + 2, deg_d: top + 2 };
    let coords: Vec<Vec<RatFn>> =
        gens.iter().map(|g| g.to_vector((big.deg_l, big.deg_d)).expect("generators fit the big box")).collect();
    let vectors: Vec<Vec<RatFn>> = ker
        .basis
        .iter()
        .map(|w| {
            let mut v = vec![RatFn::zero(); ansatz.ncols()];
            for (wg, gv) in w.iter().zip(&coords) {
                if wg.is_zero() {
                    continue;
                }
                for (c, e) in gv.iter().enumerate() {
                    let (i, k, s, t) = big.slot(c);
                    if !e.is_zero() && s <= ansatz.deg_l && t <= ansatz.deg_d {
                        let col = ansatz.col(i, k, s, t);
                        v[col] = &v[col] + &(wg * e);
                    }
                }
            }
            v
        })
        .collect();
    let mut s = SolutionSpace::span(ansatz.ncols(), &vectors);
    s.genericity.extend(ker.genericity);
    s
}

/// Solves the derivation identity within `bounds = (deg_λ, deg_∂)`.
pub fn solve_derivations(a: &LcaPresentation, bounds: (u32, u32)) -> DerivationSpace {
    let ansatz = DerivationAnsatz { rank: a.rank(), deg_l: bounds.0, deg_d: bounds.1 };
    let d = ansatz.generic(&a.gens);
    let exprs = derivation_residuals(a, &d).into_iter().flat_map(|(_, r)| r);
    let unknowns: Vec<Symbol> = (0..ansatz.ncols() as u32).map(Symbol::Unknown).collect();
    let all = LinearSystem::from_identities(&unknowns, exprs).expect("linear in the unknowns").nullspace();
    let inner = inner_space(a, &ansatz);
    let (outer, g) = complement_basis(ansatz.ncols(), &inner.basis, &all.basis);
    let mut conds = std::collections::BTreeSet::new();
    for c in all.genericity.iter().chain(&inner.genericity).chain(&g) {
        conds.extend(rational_factors(c));
    }
    DerivationSpace { gens: a.gens.clone(), bounds, all, inner, outer, genericity: conds.into_iter().collect() }
}

/// Generic solve followed by every special point its conditions suggest.
pub fn explore_derivations(a: &LcaPresentation, bounds: (u32, u32)) -> Vec<(Assignment, DerivationSpace)> {
    explore(|at| {
        let s = solve_derivations(&a.specialize(at).expect("explored points use declared parameters"), bounds);
        let conds = s.genericity.clone();
        (s, conds)
    })
}
