//! Finite free Lie conformal algebras given by structure polynomials.

mod builtin;
mod checks;
mod constraints;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::poly::{Assignment, Poly, Var};

pub use builtin::{builtin, cur, dsv, sv, tsv_ab, tsv_ab_at, tsv_c, tsv_c_at, vir, Family};
pub use checks::{check_axioms, check_jacobi, check_skew, jacobi_residual, skew_residual};
pub use constraints::{solve_parameter_constraints, ConstraintSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcaError {
    #[error("element has {found} coordinates, algebra has rank {rank}")]
    RankMismatch { rank: usize, found: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("`{0}` is not a declared parameter")]
    UnknownParam(String),
    #[error("table entry [{i} {j}] uses `{var}`; only d and l are allowed")]
    ForeignVariable { i: String, j: String, var: String },
    #[error("constraints have no solution: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `[e_i λ e_j] = Σ_k table[i][j][k](∂, λ) e_k`.
///
/// A generator flagged `central` is killed by ∂; its table rows and columns
/// are zero and its coefficients never involve ∂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcaPresentation {
    pub name: String,
    pub gens: Vec<String>,
    pub params: Vec<String>,
    pub central: Vec<bool>,
    table: Vec<Vec<Vec<Poly>>>,
}

/// Element of the free ℂ[∂]-module: one ∂-polynomial per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub coords: Vec<Poly>,
}

/// Value of a λ-bracket: one (∂, λ)-polynomial per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaValue {
    pub coords: Vec<Poly>,
}

impl Element {
    /// The generator `e_i` of a rank-`n` algebra.
    pub fn gen(n: usize, i: usize) -> Element {
        let mut coords = vec![Poly::zero(); n];
        coords[i] = Poly::one();
        Element { coords }
    }

    /// Applies ∂.
    pub fn d(&self) -> Element {
        Element { coords: self.coords.iter().map(|c| c * &Poly::d()).collect() }
    }
}

impl LambdaValue {
    pub fn scale(&self, p: &Poly) -> LambdaValue {
        LambdaValue { coords: self.coords.iter().map(|c| c * p).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }
}

impl LcaPresentation {
    /// The abelian algebra on the given generators.
    pub fn new(name: &str, gens: &[&str], params: &[&str]) -> LcaPresentation {
        let n = gens.len();
        LcaPresentation {
            name: name.into(),
            gens: gens.iter().map(|g| g.to_string()).collect(),
            params: params.iter().map(|p| p.to_string()).collect(),
            central: vec![false; n],
            table: vec![vec![vec![Poly::zero(); n]; n]; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_index(&self, name: &str) -> Result<usize, LcaError> {
        self.gens.iter().position(|g| g == name).ok_or_else(|| LcaError::UnknownGenerator(name.into()))
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.table[i][j][k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        self.table[i][j][k] = p;
    }

    /// Sets `[e_i λ e_j]` and its skew partner `[e_j λ e_i]`.
    pub fn set_skew(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        let partner = -&flip(&p);
        self.table[i][j][k] = p;
        self.table[j][i][k] = if self.central[k] { partner.subst_var(Var::D, &Poly::zero()) } else { partner };
    }

    /// `[e_i λ e_j]` as a vector.
    pub fn bracket_gens(&self, i: usize, j: usize) -> &[Poly] {
        &self.table[i][j]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().flatten().flatten().all(Poly::is_zero)
    }

    /// λ-bracket of two elements, extended by sesquilinearity.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<LambdaValue, LcaError> {
        let n = self.rank();
        for e in [x, y] {
            if e.coords.len() != n {
                return Err(LcaError::RankMismatch { rank: n, found: e.coords.len() });
            }
        }
        let minus_l = -&Poly::lambda();
        let l_plus_d = &Poly::lambda() + &Poly::d();
        let mut out = vec![Poly::zero(); n];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let left = xi.subst_var(Var::D, &minus_l);
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let right = yj.subst_var(Var::D, &l_plus_d);
                let f = &left * &right;
                for (k, p) in self.table[i][j].iter().enumerate() {
                    if !p.is_zero() {
                        out[k] += &f * p;
                    }
                }
            }
        }
        for (k, c) in out.iter_mut().enumerate() {
            if self.central[k] {
                *c = c.subst_var(Var::D, &Poly::zero());
            }
        }
        Ok(LambdaValue { coords: out })
    }

    /// Assigns values to some parameters.
    pub fn specialize(&self, at: &Assignment) -> Result<LcaPresentation, LcaError> {
        if let Some(p) = at.keys().find(|p| !self.params.contains(p)) {
            return Err(LcaError::UnknownParam(p.clone()));
        }
        let mut out = self.clone();
        out.params.retain(|p| !at.contains_key(p));
        for p in out.table.iter_mut().flatten().flatten() {
            *p = p.specialize(at);
        }
        Ok(out)
    }

    /// True if the tables agree (names and parameters are ignored).
    pub fn same_table(&self, other: &LcaPresentation) -> bool {
        self.gens == other.gens && self.central == other.central && self.table == other.table
    }

    /// Nonzero brackets `(i, j) ↦ [e_i λ e_j]` in generator order.
    pub fn nonzero_brackets(&self) -> BTreeMap<(usize, usize), Vec<Poly>> {
        let mut out = BTreeMap::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if self.table[i][j].iter().any(|p| !p.is_zero()) {
                    out.insert((i, j), self.table[i][j].clone());
                }
            }
        }
        out
    }

    /// Renders `Σ_k p_k·e_k` as `(d + 2*l)*L + 3*M`.
    pub fn render_value(&self, coords: &[Poly]) -> String {
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| {
                let g = &self.gens[k];
                if p.is_one() {
                    g.clone()
                } else if p.len() == 1 && !p.to_string().starts_with('-') {
                    format!("{p}*{g}")
                } else {
                    format!("({p})*{g}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// `p(∂, λ) ↦ p(∂, −λ−∂)`.
pub fn flip(p: &Poly) -> Poly {
    p.subst_var(Var::Lambda, &-&(&Poly::lambda() + &Poly::d()))
}

impl fmt::Display for LcaPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}({}) on {}", self.name, self.params.join(","), self.gens.join(","))?;
        for ((i, j), v) in self.nonzero_brackets() {
            if i <= j {
                writeln!(f, "  [{} l {}] = {}", self.gens[i], self.gens[j], self.render_value(&v))?;
            }
        }
        Ok(())
    }
}
