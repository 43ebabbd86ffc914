use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::poly::{gcd, Poly, Rat, RatFn};

use super::cases::rational_factors;

/// A sparse row of polynomial entries, sorted by column, no zeros.
pub(crate) type PolyRow = Vec<(usize, Poly)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PivotPolicy {
    /// Leftmost nonzero column; gives the canonical reduced echelon form.
    Leftmost,
    /// Prefer parameter-free entries, then the leftmost of lowest degree.
    Sparse,
}

#[derive(Clone, Debug)]
struct PivotRow {
    pivot: usize,
    entries: PolyRow,
}

impl PivotRow {
    fn pivot_entry(&self) -> &Poly {
        entry(&self.entries, self.pivot).expect("pivot present")
    }
}

fn entry(row: &PolyRow, col: usize) -> Option<&Poly> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// Incremental fraction-free reduced echelon form over ℚ[params].
///
/// Pivot rows are kept fully reduced against one another. Every
/// parameter-dependent pivot and every parameter-dependent row content that
/// gets divided out is recorded as a genericity condition.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    ncols: usize,
    limit: usize,
    policy: PivotPolicy,
    rows: Vec<PivotRow>,
    by_col: BTreeMap<usize, usize>,
    residue: Vec<PolyRow>,
    genericity: BTreeSet<Poly>,
}

/// `a·x + b·y` on sparse rows.
fn combine(a: &Poly, x: &PolyRow, b: &Poly, y: &PolyRow) -> PolyRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a * &x[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, b * &y[j - 1].1)
        } else {
            i += 1;
            j += 1;
            (ci, &(a * &x[i - 1].1) + &(b * &y[j - 1].1))
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

fn is_unit(p: &Poly) -> bool {
    p.is_constant()
}

impl Echelon {
    pub(crate) fn new(ncols: usize, policy: PivotPolicy) -> Echelon {
        Echelon::with_limit(ncols, ncols, policy)
    }

    /// Columns at or beyond `limit` are never chosen as pivots.
    pub(crate) fn with_limit(ncols: usize, limit: usize, policy: PivotPolicy) -> Echelon {
        Echelon {
            ncols,
            limit,
            policy,
            rows: Vec::new(),
            by_col: BTreeMap::new(),
            residue: Vec::new(),
            genericity: BTreeSet::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_pivot(&self, col: usize) -> bool {
        self.by_col.contains_key(&col)
    }

    pub(crate) fn genericity(&self) -> &BTreeSet<Poly> {
        &self.genericity
    }

    /// Rows that reduced to entries in non-pivot columns only.
    pub(crate) fn residue(&self) -> &[PolyRow] {
        &self.residue
    }

    fn note(&mut self, p: &Poly) {
        if !is_unit(p) {
            for f in rational_factors(p) {
                self.genericity.insert(f);
            }
        }
    }

    /// Divides out the polynomial content, recording it if it is not a unit.
    fn make_primitive(&mut self, row: &mut PolyRow) {
        let mut g = Poly::zero();
        for (_, e) in row.iter() {
            g = gcd(&g, e);
            if g.is_one() {
                break;
            }
        }
        if !g.is_constant() {
            self.note(&g);
            for (_, e) in row.iter_mut() {
                *e = e.div_exact(&g).expect("content divides");
            }
        }
        // rational normalization keeps coefficients small
        normalize_scale(row);
    }

    /// Reduces `row` against the current pivots.
    pub(crate) fn reduce(&self, mut row: PolyRow) -> PolyRow {
        loop {
            let hit = row.iter().find_map(|(c, e)| self.by_col.get(c).map(|&k| (k, e.clone())));
            let Some((k, e)) = hit else {
                return row;
            };
            let prow = &self.rows[k];
            let p = prow.pivot_entry();
            row = if let Some(pc) = p.as_constant() {
                combine(&Poly::one(), &row, &(-&e.scale(&pc.recip())), &prow.entries)
            } else {
                combine(p, &row, &(-&e), &prow.entries)
            };
        }
    }

    fn choose_pivot(&self, row: &PolyRow) -> Option<usize> {
        let candidates = row.iter().filter(|(c, _)| *c < self.limit);
        match self.policy {
            PivotPolicy::Leftmost => candidates.map(|(c, _)| *c).next(),
            PivotPolicy::Sparse => candidates
                .min_by_key(|(c, e)| (!e.is_constant(), e.total_degree().unwrap_or(0), e.len(), *c))
                .map(|(c, _)| *c),
        }
    }

    /// Adds a row; returns true if it increased the rank.
    pub(crate) fn insert(&mut self, row: PolyRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        if self.choose_pivot(&row).is_none() {
            // keep parameter factors: they are exactly the obstruction
            normalize_scale(&mut row);
            self.residue.push(row);
            return false;
        }
        self.make_primitive(&mut row);
        let pivot = self.choose_pivot(&row).expect("pivot columns survive scaling");
        let p = entry(&row, pivot).unwrap().clone();
        self.note(&p);
        // keep existing rows reduced
        for k in 0..self.rows.len() {
            let Some(e) = entry(&self.rows[k].entries, pivot).cloned() else {
                continue;
            };
            let mut updated = if let Some(pc) = p.as_constant() {
                combine(&Poly::one(), &self.rows[k].entries, &(-&e.scale(&pc.recip())), &row)
            } else {
                combine(&p, &self.rows[k].entries, &(-&e), &row)
            };
            self.make_primitive(&mut updated);
            self.rows[k].entries = updated;
        }
        self.by_col.insert(pivot, self.rows.len());
        self.rows.push(PivotRow { pivot, entries: row });
        true
    }

    /// Basis of the kernel: one vector per non-pivot column below the limit,
    /// with that coordinate set to 1 and the other free coordinates 0.
    pub(crate) fn nullspace(&self) -> Vec<Vec<RatFn>> {
        let free: Vec<usize> = (0..self.limit).filter(|c| !self.by_col.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![RatFn::zero(); self.ncols];
                v[f] = RatFn::one();
                for r in &self.rows {
                    if let Some(e) = entry(&r.entries, f) {
                        v[r.pivot] =
                            RatFn::new(-e, r.pivot_entry().clone()).expect("pivot is a nonzero parameter polynomial");
                    }
                }
                v
            })
            .collect()
    }

    /// Pivot rows scaled so the pivot entry is 1, ordered by pivot column.
    pub(crate) fn normalized_rows(&self) -> Vec<Vec<RatFn>> {
        let mut order: Vec<&PivotRow> = self.rows.iter().collect();
        order.sort_by_key(|r| r.pivot);
        order
            .into_iter()
            .map(|r| {
                let p = r.pivot_entry().clone();
                let mut v = vec![RatFn::zero(); self.ncols];
                for (c, e) in &r.entries {
                    v[*c] = RatFn::new(e.clone(), p.clone()).expect("pivot is a nonzero parameter polynomial");
                }
                v
            })
            .collect()
    }

    /// Value of the pivot variable for each pivot row when every free
    /// variable is zero and column `rhs` holds the constant term.
    pub(crate) fn particular(&self, rhs: usize) -> Vec<RatFn> {
        let mut v = vec![RatFn::zero(); self.ncols];
        for r in &self.rows {
            if let Some(e) = entry(&r.entries, rhs) {
                v[r.pivot] = RatFn::new(-e, r.pivot_entry().clone()).expect("pivot is a nonzero parameter polynomial");
            }
        }
        v
    }
}

/// Clears rational denominators and common integer factors.
fn normalize_scale(row: &mut PolyRow) {
    use num_bigint::BigInt;
    use num_traits::One;
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, e) in row.iter() {
        for (_, c) in e.terms() {
            den = num_integer::lcm(den, c.denom().clone());
        }
    }
    for (_, e) in row.iter() {
        for (_, c) in e.terms() {
            num = num_integer::gcd(num, (c * Rat::from_integer(den.clone())).to_integer());
        }
    }
    if num.is_zero() {
        return;
    }
    let f = Rat::new(den, num);
    if f.is_one() {
        return;
    }
    for (_, e) in row.iter_mut() {
        *e = e.scale(&f);
    }
}

/// Converts a row of rational functions to polynomial entries by clearing
/// denominators.
pub(crate) fn poly_row(row: impl IntoIterator<Item = (usize, RatFn)>) -> PolyRow {
    let row: Vec<(usize, RatFn)> = row.into_iter().filter(|(_, e)| !e.is_zero()).collect();
    let mut l = Poly::one();
    for (_, e) in &row {
        if !e.den().is_one() {
            let g = gcd(&l, e.den());
            l = &l * &e.den().div_exact(&g).expect("gcd divides");
        }
    }
    let mut out: PolyRow = row
        .into_iter()
        .map(|(c, e)| {
            let f = l.div_exact(e.den()).expect("lcm is a multiple");
            (c, &f * e.num())
        })
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[(usize, Poly)]) -> PolyRow {
        v.to_vec()
    }

    #[test]
    fn rank_and_kernel_of_identity() {
        let mut e = Echelon::new(2, PivotPolicy::Sparse);
        assert!(e.insert(row(&[(0, Poly::one())])));
        assert!(e.insert(row(&[(1, Poly::one())])));
        assert_eq!(e.rank(), 2);
        assert!(e.nullspace().is_empty());
    }

    #[test]
    fn parameter_pivot_is_recorded() {
        let am1 = &Poly::param("a") - &Poly::one();
        let mut e = Echelon::new(2, PivotPolicy::Sparse);
        e.insert(row(&[(0, am1.clone())]));
        assert_eq!(e.nullspace().len(), 1);
        assert!(e.genericity().contains(&am1));
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let a = Poly::param("a");
        let mut e = Echelon::new(3, PivotPolicy::Leftmost);
        assert!(e.insert(row(&[(0, Poly::one()), (1, a.clone())])));
        assert!(e.insert(row(&[(1, Poly::one()), (2, Poly::one())])));
        let sum = row(&[(0, Poly::one()), (1, &a + &Poly::one()), (2, Poly::one())]);
        assert!(!e.insert(sum));
        let ker = e.nullspace();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0][2], RatFn::one());
        assert_eq!(ker[0][1], RatFn::from(-1));
        assert_eq!(ker[0][0], RatFn::from(a));
    }
}
