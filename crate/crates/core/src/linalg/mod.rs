//! Exact linear algebra over ℚ(params) with genericity bookkeeping.

pub mod cases;
mod echelon;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::poly::{Assignment, Monomial, Poly, PolyError, RatFn, Symbol};

use echelon::{poly_row, Echelon, PivotPolicy};

pub use cases::{candidate_points, explore, format_assignment, rational_factors};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({row}, {col}): denominator `{den}` vanishes")]
    VanishingDenominator { row: usize, col: usize, den: String },
    #[error("equation is not linear in the unknowns: monomial `{0}`")]
    Nonlinear(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Sparse matrix of rational functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    ncols: usize,
    rows: Vec<Vec<(usize, RatFn)>>,
}

impl Mat {
    pub fn new(ncols: usize) -> Mat {
        Mat { ncols, rows: Vec::new() }
    }

    pub fn from_dense(ncols: usize, rows: Vec<Vec<RatFn>>) -> Mat {
        let mut m = Mat::new(ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
            m.push_row(r.into_iter().enumerate());
        }
        m
    }

    pub fn push_row(&mut self, row: impl IntoIterator<Item = (usize, RatFn)>) {
        let mut r: Vec<(usize, RatFn)> = row.into_iter().filter(|(_, e)| !e.is_zero()).collect();
        r.sort_by_key(|(c, _)| *c);
        assert!(r.last().is_none_or(|(c, _)| *c < self.ncols), "column out of range");
        self.rows.push(r);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> RatFn {
        self.rows[r].iter().find(|(k, _)| *k == c).map(|(_, e)| e.clone()).unwrap_or_default()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, RatFn)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// Assigns parameter values entrywise.
    pub fn specialize(&self, at: &Assignment) -> Result<Mat, LinalgError> {
        let mut out = Mat::new(self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut row = Vec::with_capacity(r.len());
            for (c, e) in r {
                let v = e.specialize(at).map_err(|_| LinalgError::VanishingDenominator {
                    row: i,
                    col: *c,
                    den: e.den().integer_normalized().to_string(),
                })?;
                row.push((*c, v));
            }
            out.push_row(row);
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[RatFn]) -> Vec<RatFn> {
        self.rows.iter().map(|r| r.iter().fold(RatFn::zero(), |acc, (c, e)| &acc + &(e * &v[*c]))).collect()
    }

    fn echelon(&self, policy: PivotPolicy) -> Echelon {
        let mut e = Echelon::new(self.ncols, policy);
        for r in &self.rows {
            e.insert(poly_row(r.iter().cloned()));
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.echelon(PivotPolicy::Sparse).rank()
    }

    pub fn nullspace(&self) -> SolutionSpace {
        let e = self.echelon(PivotPolicy::Sparse);
        SolutionSpace { ncols: self.ncols, basis: e.nullspace(), genericity: e.genericity().iter().cloned().collect() }
    }
}

/// A basis of a subspace of ℚ(params)^n together with the parameter
/// polynomials assumed nonzero while computing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSpace {
    pub ncols: usize,
    #[serde(serialize_with = "ser_vectors")]
    pub basis: Vec<Vec<RatFn>>,
    #[serde(serialize_with = "ser_polys")]
    pub genericity: Vec<Poly>,
}

fn ser_vectors<S: serde::Serializer>(v: &[Vec<RatFn>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        let r: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

fn ser_polys<S: serde::Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&p.to_string())?;
    }
    seq.end()
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The whole space ℚ(params)^n.
    pub fn full(ncols: usize) -> SolutionSpace {
        let basis = (0..ncols)
            .map(|i| {
                let mut v = vec![RatFn::zero(); ncols];
                v[i] = RatFn::one();
                v
            })
            .collect();
        SolutionSpace { ncols, basis, genericity: Vec::new() }
    }

    /// Spans `vectors`, keeping a canonical reduced echelon basis.
    pub fn span(ncols: usize, vectors: &[Vec<RatFn>]) -> SolutionSpace {
        let (basis, genericity) = rref(ncols, vectors);
        SolutionSpace { ncols, basis, genericity }
    }

    pub fn contains(&self, v: &[RatFn]) -> bool {
        let mut e = Echelon::new(self.ncols, PivotPolicy::Sparse);
        for b in &self.basis {
            e.insert(poly_row(b.iter().cloned().enumerate()));
        }
        e.reduce(poly_row(v.iter().cloned().enumerate())).is_empty()
    }

    /// True if both spaces have the same span.
    pub fn same_span(&self, other: &SolutionSpace) -> bool {
        self.dim() == other.dim() && other.basis.iter().all(|v| self.contains(v))
    }

    /// Canonical reduced echelon basis (leftmost pivots normalized to 1).
    pub fn canonical(&self) -> SolutionSpace {
        let mut s = SolutionSpace::span(self.ncols, &self.basis);
        let mut g: BTreeSet<Poly> = s.genericity.into_iter().collect();
        g.extend(self.genericity.iter().cloned());
        s.genericity = g.into_iter().collect();
        s
    }

    pub fn specialize(&self, at: &Assignment) -> Result<SolutionSpace, LinalgError> {
        let mut basis = Vec::with_capacity(self.basis.len());
        for (i, v) in self.basis.iter().enumerate() {
            let mut w = Vec::with_capacity(v.len());
            for (c, e) in v.iter().enumerate() {
                w.push(e.specialize(at).map_err(|_| LinalgError::VanishingDenominator {
                    row: i,
                    col: c,
                    den: e.den().integer_normalized().to_string(),
                })?);
            }
            basis.push(w);
        }
        Ok(SolutionSpace { ncols: self.ncols, basis, genericity: Vec::new() })
    }
}

/// Reduced echelon form with leftmost pivots; returns rows and genericity.
pub fn rref(ncols: usize, vectors: &[Vec<RatFn>]) -> (Vec<Vec<RatFn>>, Vec<Poly>) {
    let mut e = Echelon::new(ncols, PivotPolicy::Leftmost);
    for v in vectors {
        e.insert(poly_row(v.iter().cloned().enumerate()));
    }
    (e.normalized_rows(), e.genericity().iter().cloned().collect())
}

/// Reduces each vector modulo the span of `modulus` (clearing the modulus'
/// leftmost pivot columns) and returns the canonical echelon basis of what is
/// left.
pub fn complement_basis(ncols: usize, modulus: &[Vec<RatFn>], vectors: &[Vec<RatFn>]) -> (Vec<Vec<RatFn>>, Vec<Poly>) {
    let mut m = Echelon::new(ncols, PivotPolicy::Leftmost);
    for v in modulus {
        m.insert(poly_row(v.iter().cloned().enumerate()));
    }
    let mut out = Echelon::new(ncols, PivotPolicy::Leftmost);
    for v in vectors {
        let r = m.reduce(poly_row(v.iter().cloned().enumerate()));
        out.insert(r);
    }
    let mut g: BTreeSet<Poly> = m.genericity().clone();
    g.extend(out.genericity().iter().cloned());
    (out.normalized_rows(), g.into_iter().collect())
}

/// Solution set of an inhomogeneous system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    /// A solution with all free unknowns zero; `None` if the system is
    /// inconsistent for generic parameters.
    pub particular: Option<Vec<RatFn>>,
    pub homogeneous: SolutionSpace,
    /// Index of the free unknown behind each homogeneous basis vector.
    pub free: Vec<usize>,
    /// Parameter polynomials that must all vanish for the system to be
    /// consistent. Empty when consistent generically.
    pub obstructions: Vec<Poly>,
}

impl AffineSolution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// Every condition worth exploring: genericity plus obstructions.
    pub fn conditions(&self) -> Vec<Poly> {
        let mut s: BTreeSet<Poly> = self.homogeneous.genericity.iter().cloned().collect();
        for o in &self.obstructions {
            s.extend(rational_factors(o));
        }
        s.into_iter().collect()
    }
}

/// Linear equations `Σ_k coeff_k·u_k + constant = 0` in named unknowns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub unknowns: Vec<Symbol>,
    pub rows: Vec<(Vec<(usize, Poly)>, Poly)>,
}

impl LinearSystem {
    /// Collects, for every expression and every monomial in the formal
    /// variables, the coefficient equation in the unknowns.
    pub fn from_identities(
        unknowns: &[Symbol],
        exprs: impl IntoIterator<Item = Poly>,
    ) -> Result<LinearSystem, LinalgError> {
        let index: BTreeMap<&Symbol, usize> = unknowns.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut sys = LinearSystem { unknowns: unknowns.to_vec(), rows: Vec::new() };
        for e in exprs {
            let mut eqs: BTreeMap<Monomial, (BTreeMap<usize, Poly>, Poly)> = BTreeMap::new();
            for (m, c) in e.terms() {
                let (unk, rest) = m.split(|s| index.contains_key(s));
                let (vars, params) = rest.split(Symbol::is_var);
                let slot = eqs.entry(vars).or_default();
                let term = Poly::term(params, c.clone());
                match unk.factors() {
                    [] => slot.1 += term,
                    [(s, 1)] => *slot.0.entry(index[s]).or_default() += term,
                    _ => return Err(LinalgError::Nonlinear(unk.to_string())),
                }
            }
            for (_, (coeffs, constant)) in eqs {
                let coeffs: Vec<(usize, Poly)> = coeffs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
                if coeffs.is_empty() && constant.is_zero() {
                    continue;
                }
                sys.rows.push((coeffs, constant));
            }
        }
        Ok(sys)
    }

    pub fn nunknowns(&self) -> usize {
        self.unknowns.len()
    }

    /// Coefficient matrix of the homogeneous part.
    pub fn matrix(&self) -> Mat {
        let mut m = Mat::new(self.nunknowns());
        for (r, _) in &self.rows {
            m.push_row(r.iter().map(|(c, p)| (*c, RatFn::from(p.clone()))));
        }
        m
    }

    /// Kernel of the homogeneous part (constants are ignored).
    pub fn nullspace(&self) -> SolutionSpace {
        let n = self.nunknowns();
        let mut e = Echelon::new(n, PivotPolicy::Sparse);
        for (r, _) in &self.rows {
            e.insert(r.clone());
        }
        SolutionSpace { ncols: n, basis: e.nullspace(), genericity: e.genericity().iter().cloned().collect() }
    }

    pub fn solve_affine(&self) -> AffineSolution {
        let n = self.nunknowns();
        let mut e = Echelon::with_limit(n + 1, n, PivotPolicy::Sparse);
        for (r, c) in &self.rows {
            let mut row = r.clone();
            if !c.is_zero() {
                row.push((n, c.clone()));
            }
            e.insert(row);
        }
        let mut obstructions: BTreeSet<Poly> = BTreeSet::new();
        let mut consistent = true;
        for r in e.residue() {
            let c = &r.iter().find(|(k, _)| *k == n).expect("residue lives in the constant column").1;
            if c.is_constant() {
                consistent = false;
            } else {
                obstructions.insert(c.integer_normalized());
                consistent = false;
            }
        }
        let genericity: Vec<Poly> = e.genericity().iter().cloned().collect();
        let basis = e
            .nullspace()
            .into_iter()
            .map(|mut v| {
                v.truncate(n);
                v
            })
            .collect();
        let particular = consistent.then(|| {
            let mut v = e.particular(n);
            v.truncate(n);
            v
        });
        // a constant obstruction means no parameter value helps
        let hopeless = e.residue().iter().any(|r| r.iter().any(|(k, c)| *k == n && c.is_constant()));
        let free = (0..n).filter(|c| !e.is_pivot(*c)).collect();
        AffineSolution {
            free,
            particular,
            homogeneous: SolutionSpace { ncols: n, basis, genericity },
            obstructions: if hopeless { Vec::new() } else { obstructions.into_iter().collect() },
        }
    }
}
