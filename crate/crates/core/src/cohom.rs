//! Central extensions by a one-dimensional center and the second cohomology.
//!
//! A 2-cocycle is stored as the table `α_λ(e_i, e_j) ∈ ℚ(params)[λ]`. It is
//! extended to ∂-multiples by `α_λ(p(∂)a, b) = p(−λ)α_λ(a, b)` and
//! `α_λ(a, p(∂)b) = p(λ)α_λ(a, b)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::gdb::{GdBialgebra, GdError};
use crate::lca::{LcaError, LcaPresentation};
use crate::linalg::{complement_basis, explore, rational_factors, LinalgError, LinearSystem, Mat, SolutionSpace};
use crate::poly::{Assignment, Poly, RatFn, Symbol, Var};
use crate::report::{VerifyReport, Witness};

/// λ-degree bound used when none is given.
pub const DEFAULT_DEGREE: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("not a 2-cocycle: {0}")]
    NotCocycle(String),
    #[error("the Novikov product is not onto; degree 3 truncation is not justified")]
    NotSurjective,
    #[error("cocycle table has {found} generators, algebra has {rank}")]
    RankMismatch { rank: usize, found: usize },
    #[error(transparent)]
    Gd(#[from] GdError),
    #[error(transparent)]
    Lca(#[from] LcaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Coordinates of the unknown coefficients `c[i][j][t]` of `λ^t` in
/// `α_λ(e_i, e_j)`, `t ≤ degree`.
///
/// Columns run over the pairs `(i, j)` in lexicographic order and, inside a
/// pair, from the top degree down, so leftmost pivots favour high powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleAnsatz {
    pub rank: usize,
    pub degree: u32,
}

impl CocycleAnsatz {
    pub fn ncols(&self) -> usize {
        self.rank * self.rank * (self.degree as usize + 1)
    }

    pub fn col(&self, i: usize, j: usize, t: u32) -> usize {
        (i * self.rank + j) * (self.degree as usize + 1) + (self.degree - t) as usize
    }

    /// `(i, j, t)` of a column.
    pub fn slot(&self, col: usize) -> (usize, usize, u32) {
        let w = self.degree as usize + 1;
        let pair = col / w;
        (pair / self.rank, pair % self.rank, self.degree - (col % w) as u32)
    }

    pub fn unknowns(&self) -> Vec<Symbol> {
        (0..self.ncols() as u32).map(Symbol::Unknown).collect()
    }

    /// The general cocycle with one unknown per coefficient.
    pub fn generic(&self, gens: &[String]) -> Cocycle {
        let mut values = vec![vec![Poly::zero(); self.rank]; self.rank];
        for (i, row) in values.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                for t in 0..=self.degree {
                    *v += &Poly::unknown(self.col(i, j, t) as u32) * &Poly::lambda().pow(t);
                }
            }
        }
        Cocycle { gens: gens.to_vec(), values }
    }
}

/// A bilinear map `α_λ` on generators, valued in polynomials in λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub gens: Vec<String>,
    pub values: Vec<Vec<Poly>>,
}

impl Cocycle {
    pub fn zero(gens: &[String]) -> Cocycle {
        let n = gens.len();
        Cocycle { gens: gens.to_vec(), values: vec![vec![Poly::zero(); n]; n] }
    }

    /// Builds the table of a coordinate vector, clearing denominators by a
    /// common parameter polynomial.
    pub fn from_vector(gens: &[String], degree: u32, v: &[RatFn]) -> Cocycle {
        let ansatz = CocycleAnsatz { rank: gens.len(), degree };
        let mut den = Poly::one();
        for e in v {
            if !e.den().is_one() {
                den = &den * &e.den().div_exact(&crate::poly::gcd(&den, e.den())).expect("gcd divides");
            }
        }
        let mut out = Cocycle::zero(gens);
        for (c, e) in v.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let scaled = (e * &RatFn::from(den.clone())).into_poly().expect("denominator cleared");
            let (i, j, t) = ansatz.slot(c);
            out.values[i][j] += &scaled * &Poly::lambda().pow(t);
        }
        out
    }

    /// Coordinates in the given ansatz; `None` if some value has a larger
    /// λ-degree or involves ∂.
    pub fn to_vector(&self, degree: u32) -> Option<Vec<RatFn>> {
        let ansatz = CocycleAnsatz { rank: self.gens.len(), degree };
        let mut v = vec![RatFn::zero(); ansatz.ncols()];
        for (i, row) in self.values.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.degree(Var::Lambda).unwrap_or(0) > degree
                    || p.symbols().iter().any(|s| s.is_var() && *s != Symbol::Var(Var::Lambda))
                {
                    return None;
                }
                for t in 0..=degree {
                    v[ansatz.col(i, j, t)] = RatFn::from(p.coeff_extract(Var::Lambda, t));
                }
            }
        }
        Some(v)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Poly::is_zero)
    }

    /// `b(L,M)=1; b(Y,Y)=-2*l`: the nonzero values on pairs `i ≤ j`.
    pub fn render(&self, label: &str) -> String {
        let mut parts = Vec::new();
        for (i, row) in self.values.iter().enumerate() {
            for (j, p) in row.iter().enumerate().skip(i) {
                if !p.is_zero() {
                    parts.push(format!("{label}({},{})={p}", self.gens[i], self.gens[j]));
                }
            }
        }
        if parts.is_empty() {
            format!("{label}=0")
        } else {
            parts.join("; ")
        }
    }
}

fn kill_d(p: &Poly) -> Poly {
    p.subst_var(Var::D, &Poly::zero())
}

fn subst2(p: &Poly, d: Poly, l: Poly) -> Poly {
    p.substitute(&[(Var::D, d), (Var::Lambda, l)]).expect("variables only")
}

/// Every cocycle identity as `(generators, residual)`: skew-symmetry on pairs
/// `i ≤ j` (a polynomial in λ), then the cocycle condition on all triples (a
/// polynomial in λ, μ).
pub fn cocycle_identities(a: &LcaPresentation, alpha: &Cocycle) -> Vec<(Vec<usize>, Poly)> {
    let n = a.rank();
    let (l, m) = (Poly::lambda(), Poly::mu());
    let neg_l = -&l;
    let sum = &l + &m;
    let at = |p: &Poly, x: &Poly| p.subst_var(Var::Lambda, x);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let r = &alpha.values[i][j] + &at(&alpha.values[j][i], &neg_l);
            out.push((vec![i, j], r));
        }
    }
    // α_μ(e_j, e_k) and α_{λ+μ}(e_k, e_l), computed once
    let at_mu: Vec<Vec<Poly>> = alpha.values.iter().map(|r| r.iter().map(|p| at(p, &m)).collect()).collect();
    let at_sum: Vec<Vec<Poly>> = alpha.values.iter().map(|r| r.iter().map(|p| at(p, &sum)).collect()).collect();
    for i in 0..n {
        for j in 0..n {
            for lg in 0..n {
                let mut r = Poly::zero();
                for k in 0..n {
                    let p1 = a.entry(j, lg, k);
                    if !p1.is_zero() && !alpha.values[i][k].is_zero() {
                        r += &subst2(p1, l.clone(), m.clone()) * &alpha.values[i][k];
                    }
                    let p2 = a.entry(i, lg, k);
                    if !p2.is_zero() && !at_mu[j][k].is_zero() {
                        r -= &(&subst2(p2, m.clone(), l.clone()) * &at_mu[j][k]);
                    }
                    let p3 = a.entry(i, j, k);
                    if !p3.is_zero() && !at_sum[k][lg].is_zero() {
                        r -= &(&subst2(p3, -&sum, l.clone()) * &at_sum[k][lg]);
                    }
                }
                out.push((vec![i, j, lg], r));
            }
        }
    }
    out
}

pub fn check_cocycle(a: &LcaPresentation, alpha: &Cocycle) -> VerifyReport {
    let mut cases = 0;
    for (at, r) in cocycle_identities(a, alpha) {
        cases += 1;
        if !r.is_zero() {
            let w = Witness {
                at: at.iter().map(|&i| a.gens[i].clone()).collect(),
                component: None,
                residual: r.to_string(),
            };
            return VerifyReport::fail("cocycle", &a.name, cases, w);
        }
    }
    VerifyReport::pass("cocycle", &a.name, cases)
}

/// `δc(e_i, e_j)_λ = Σ_k P_ijk(0, λ)·c_k`, the cocycle of the section shift
/// `e_k ↦ e_k + c_k𝔠`.
pub fn coboundary(a: &LcaPresentation, c: &[Poly]) -> Cocycle {
    let mut out = Cocycle::zero(&a.gens);
    for i in 0..a.rank() {
        for j in 0..a.rank() {
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    out.values[i][j] += &kill_d(a.entry(i, j, k)) * ck;
                }
            }
        }
    }
    out
}

/// Cocycles, coboundaries and chosen representatives of H².
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleSolution {
    pub gens: Vec<String>,
    pub degree: u32,
    pub z2: SolutionSpace,
    pub b2: SolutionSpace,
    #[serde(skip)]
    pub h2: Vec<Vec<RatFn>>,
    #[serde(serialize_with = "ser_polys")]
    pub genericity: Vec<Poly>,
}

fn ser_polys<S: serde::Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

/// `a`, `b`, …, `z`, `a1`, … for representative labels.
pub fn label(k: usize) -> String {
    let c = (b'a' + (k % 26) as u8) as char;
    if k < 26 {
        c.to_string()
    } else {
        format!("{c}{}", k / 26)
    }
}

impl CocycleSolution {
    fn ansatz(&self) -> CocycleAnsatz {
        CocycleAnsatz { rank: self.gens.len(), degree: self.degree }
    }

    pub fn dim_z2(&self) -> usize {
        self.z2.dim()
    }

    pub fn dim_b2(&self) -> usize {
        self.b2.dim()
    }

    pub fn dim_h2(&self) -> usize {
        self.h2.len()
    }

    pub fn representatives(&self) -> Vec<Cocycle> {
        self.h2.iter().map(|v| Cocycle::from_vector(&self.gens, self.degree, v)).collect()
    }

    /// One line per representative, labelled `a`, `b`, ….
    pub fn render_representatives(&self) -> Vec<String> {
        self.representatives().iter().enumerate().map(|(k, c)| c.render(&label(k))).collect()
    }

    /// True if `alpha` (within the degree bound) is a coboundary.
    pub fn is_coboundary(&self, alpha: &Cocycle) -> bool {
        alpha.to_vector(self.degree).is_some_and(|v| self.b2.contains(&v))
    }

    pub fn is_cocycle(&self, alpha: &Cocycle) -> bool {
        alpha.to_vector(self.degree).is_some_and(|v| self.z2.contains(&v))
    }

    /// The span of `Z²` modulo `B²`, as a space of the same coordinates.
    pub fn h2_space(&self) -> SolutionSpace {
        let mut vectors = self.b2.basis.clone();
        vectors.extend(self.h2.iter().cloned());
        SolutionSpace::span(self.ansatz().ncols(), &vectors)
    }

    /// The same solution written in a larger degree bound.
    pub fn with_degree(&self, degree: u32) -> CocycleSolution {
        assert!(degree >= self.degree, "can only raise the degree bound");
        let from = self.ansatz();
        let to = CocycleAnsatz { rank: from.rank, degree };
        let move_vec = |v: &Vec<RatFn>| {
            let mut w = vec![RatFn::zero(); to.ncols()];
            for (c, e) in v.iter().enumerate() {
                let (i, j, t) = from.slot(c);
                w[to.col(i, j, t)] = e.clone();
            }
            w
        };
        let move_space = |s: &SolutionSpace| SolutionSpace {
            ncols: to.ncols(),
            basis: s.basis.iter().map(move_vec).collect(),
            genericity: s.genericity.clone(),
        };
        CocycleSolution {
            gens: self.gens.clone(),
            degree,
            z2: move_space(&self.z2),
            b2: move_space(&self.b2),
            h2: self.h2.iter().map(move_vec).collect(),
            genericity: self.genericity.clone(),
        }
    }

    /// Same cohomology: equal `Z²`, `B²` and `Z²/B²` spans.
    pub fn agrees_with(&self, other: &CocycleSolution) -> bool {
        let d = self.degree.max(other.degree);
        let (x, y) = (self.with_degree(d), other.with_degree(d));
        x.dim_h2() == y.dim_h2()
            && x.z2.same_span(&y.z2)
            && x.b2.same_span(&y.b2)
            && x.h2_space().same_span(&y.h2_space())
    }
}

fn normalized_conditions<'a>(conds: impl IntoIterator<Item = &'a Poly>) -> Vec<Poly> {
    let mut out = BTreeSet::new();
    for c in conds {
        out.extend(rational_factors(c));
    }
    out.into_iter().collect()
}

fn finish(a: &LcaPresentation, degree: u32, z2: SolutionSpace) -> CocycleSolution {
    let ansatz = CocycleAnsatz { rank: a.rank(), degree };
    let cob: Vec<Vec<RatFn>> = (0..a.rank())
        .filter_map(|k| {
            let mut c = vec![Poly::zero(); a.rank()];
            c[k] = Poly::one();
            coboundary(a, &c).to_vector(degree)
        })
        .collect();
    let b2 = SolutionSpace::span(ansatz.ncols(), &cob);
    let (h2, g) = complement_basis(ansatz.ncols(), &b2.basis, &z2.basis);
    let genericity = normalized_conditions(z2.genericity.iter().chain(&b2.genericity).chain(&g));
    CocycleSolution { gens: a.gens.clone(), degree, z2, b2, h2, genericity }
}

/// Solves the cocycle conditions for all `α` of λ-degree at most `degree`.
pub fn solve_cocycles(a: &LcaPresentation, degree: u32) -> CocycleSolution {
    let ansatz = CocycleAnsatz { rank: a.rank(), degree };
    let alpha = ansatz.generic(&a.gens);
    let exprs = cocycle_identities(a, &alpha).into_iter().map(|(_, r)| r);
    let sys = LinearSystem::from_identities(&ansatz.unknowns(), exprs).expect("cocycle identities are linear");
    finish(a, degree, sys.nullspace())
}

/// Re-solves at every rational parameter point where a recorded condition
/// vanishes, starting with the generic solve.
pub fn explore_cocycles(a: &LcaPresentation, degree: u32) -> Vec<(Assignment, CocycleSolution)> {
    explore(|at| {
        let s = solve_cocycles(&a.specialize(at).expect("explored points use declared parameters"), degree);
        let conds = s.genericity.clone();
        (s, conds)
    })
}

/// The bialgebra route: the finite conditions on `α_0, …, α_3` for a
/// quadratic algebra whose Novikov product is onto.
pub fn solve_cocycles_quadratic(g: &GdBialgebra) -> Result<CocycleSolution, CohomError> {
    let a = g.to_quadratic()?;
    let n = g.dim();
    let units: Vec<Vec<Poly>> = (0..n).map(|i| g.unit(i)).collect();

    let mut image = Mat::new(n);
    for x in &units {
        for y in &units {
            image.push_row(g.circ(x, y).into_iter().map(RatFn::from).enumerate());
        }
    }
    if image.rank() < n {
        return Err(CohomError::NotSurjective);
    }

    let ansatz = CocycleAnsatz { rank: n, degree: 3 };
    let alpha = |t: u32, x: &[Poly], y: &[Poly]| -> Poly {
        let mut s = Poly::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                if !xi.is_zero() && !yj.is_zero() {
                    s += &(xi * yj) * &Poly::unknown(ansatz.col(i, j, t) as u32);
                }
            }
        }
        s
    };
    let two = Poly::int(2);
    let three = Poly::int(3);
    let mut eqs = Vec::new();
    for x in &units {
        for y in &units {
            for t in 0..=3u32 {
                let sign = if t % 2 == 1 { Poly::one() } else { -&Poly::one() };
                eqs.push(&alpha(t, x, y) - &(&sign * &alpha(t, y, x)));
            }
            for z in &units {
                let zy = g.circ(z, y);
                let xy = g.circ(x, y);
                let yx = g.circ(y, x);
                let br_zy = g.bracket(z, y);
                let br_yx = g.bracket(y, x);
                let br_zx = g.bracket(z, x);
                let star_yz = g.star(y, z);
                let star_xz = g.star(x, z);
                eqs.push(&alpha(3, x, &zy) - &alpha(3, &xy, z));
                eqs.push(&alpha(3, &xy, z) - &alpha(3, &yx, z));
                eqs.push(&(&alpha(2, x, &zy) + &alpha(3, x, &br_zy)) - &(&alpha(2, &xy, z) + &alpha(3, &br_yx, z)));
                eqs.push(
                    &(&alpha(2, x, &star_yz) + &alpha(2, &yx, z))
                        - &(&(&two * &alpha(2, &xy, z)) + &(&three * &alpha(3, &br_yx, z))),
                );
                eqs.push(&(&alpha(1, x, &zy) + &alpha(2, x, &br_zy)) - &(&alpha(1, &xy, z) + &alpha(2, &br_yx, z)));
                eqs.push(
                    &(&alpha(1, x, &star_yz) - &alpha(1, y, &star_xz))
                        - &(&(&alpha(1, &xy, z) - &alpha(1, &yx, z)) + &(&two * &alpha(2, &br_yx, z))),
                );
                eqs.push(
                    &(&(&alpha(0, x, &zy) + &alpha(1, x, &br_zy)) - &alpha(0, y, &star_xz))
                        - &(&alpha(0, &xy, z) + &alpha(1, &br_yx, z)),
                );
                eqs.push(&(&alpha(0, x, &br_zy) - &alpha(0, y, &br_zx)) - &alpha(0, &br_yx, z));
            }
        }
    }
    let sys = LinearSystem::from_identities(&ansatz.unknowns(), eqs)?;
    let mut sol = finish(&a, 3, sys.nullspace());
    let mut g_all: BTreeSet<Poly> = sol.genericity.into_iter().collect();
    g_all.extend(normalized_conditions(image.nullspace().genericity.iter()));
    sol.genericity = g_all.into_iter().collect();
    Ok(sol)
}

/// Name for the central generator that does not clash with `gens`.
fn center_name(gens: &[String]) -> String {
    let mut name = "C".to_string();
    let mut k = 1;
    while gens.contains(&name) {
        name = format!("C{k}");
        k += 1;
    }
    name
}

/// `R ⊕ ℂ𝔠` with `[a λ b] ↦ [a λ b] + α_λ(a, b)𝔠`.
pub fn extend(a: &LcaPresentation, alpha: &Cocycle) -> Result<LcaPresentation, CohomError> {
    if alpha.gens.len() != a.rank() {
        return Err(CohomError::RankMismatch { rank: a.rank(), found: alpha.gens.len() });
    }
    let check = check_cocycle(a, alpha);
    if !check.passed {
        return Err(CohomError::NotCocycle(check.to_string()));
    }
    Ok(extend_unchecked(a, alpha))
}

fn extend_unchecked(a: &LcaPresentation, alpha: &Cocycle) -> LcaPresentation {
    let n = a.rank();
    let mut gens: Vec<&str> = a.gens.iter().map(String::as_str).collect();
    let c = center_name(&a.gens);
    gens.push(&c);
    let params: Vec<&str> = a.params.iter().map(String::as_str).collect();
    let mut out = LcaPresentation::new(&format!("{}_ext", a.name), &gens, &params);
    out.central[..n].copy_from_slice(&a.central);
    out.central[n] = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.set(i, j, k, a.entry(i, j, k).clone());
            }
            out.set(i, j, n, alpha.values[i][j].clone());
        }
    }
    out
}

/// Rewrites an extension in the generators `e_k + c_k𝔠`, where `𝔠` is the
/// last generator.
pub fn shift_section(ext: &LcaPresentation, c: &[Poly]) -> LcaPresentation {
    let n = ext.rank() - 1;
    let mut out = ext.clone();
    for i in 0..n {
        for j in 0..n {
            let mut v = ext.entry(i, j, n).clone();
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    v -= &(&kill_d(ext.entry(i, j, k)) * ck);
                }
            }
            out.set(i, j, n, v);
        }
    }
    out
}

/// Cocycles keyed by label, for reports.
pub fn representative_table(sol: &CocycleSolution) -> BTreeMap<String, String> {
    sol.render_representatives().into_iter().enumerate().map(|(k, r)| (label(k), r)).collect()
}
