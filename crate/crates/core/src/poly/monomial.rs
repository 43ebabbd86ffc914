use std::cmp::Ordering;
use std::fmt;

use super::symbol::Symbol;

/// A power product of symbols, stored as `(symbol, exponent)` pairs sorted by
/// symbol with no zero exponents.
///
/// Ordering is a block order: the variable part is compared first
/// (graded-lexicographic with `d > l > m > …`), then the remaining symbols
/// (again graded-lexicographic). Both blocks are graded, so the order is a
/// monomial order and multivariate division by a single polynomial is exact.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(sym: Symbol, exp: u32) -> Monomial {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(sym, exp)])
        }
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Symbol, u32)>) -> Monomial {
        let mut v: Vec<(Symbol, u32)> = factors.into_iter().filter(|(_, e)| *e > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(v.len());
        for (s, e) in v {
            match out.last_mut() {
                Some((ls, le)) if *ls == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn exponent(&self, sym: &Symbol) -> u32 {
        self.0.binary_search_by(|(s, _)| s.cmp(sym)).map(|i| self.0[i].1).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        let b = &other.0;
        for (s, e) in &self.0 {
            if j < b.len() && b[j].0 < *s {
                return None;
            }
            if j < b.len() && b[j].0 == *s {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s.clone(), e - b[j].1)),
                }
                j += 1;
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Splits off every factor whose symbol satisfies `pred`.
    pub fn split(&self, pred: impl Fn(&Symbol) -> bool) -> (Monomial, Monomial) {
        let (yes, no): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(s, _)| pred(s));
        (Monomial(yes), Monomial(no))
    }

    pub fn without(&self, sym: &Symbol) -> (Monomial, u32) {
        let e = self.exponent(sym);
        if e == 0 {
            return (self.clone(), 0);
        }
        (Monomial(self.0.iter().filter(|(s, _)| s != sym).cloned().collect()), e)
    }

    fn block_cmp(a: &[(Symbol, u32)], b: &[(Symbol, u32)]) -> Ordering {
        let da: u32 = a.iter().map(|(_, e)| e).sum();
        let db: u32 = b.iter().map(|(_, e)| e).sum();
        da.cmp(&db).then_with(|| lex_cmp(a, b))
    }
}

/// Lexicographic comparison of sparse exponent vectors; earlier symbols are
/// more significant and a missing symbol has exponent zero.
fn lex_cmp(a: &[(Symbol, u32)], b: &[(Symbol, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Vars sort before every other symbol kind, so each block is a prefix.
        let va = self.0.iter().take_while(|(s, _)| s.is_var()).count();
        let vb = other.0.iter().take_while(|(s, _)| s.is_var()).count();
        Monomial::block_cmp(&self.0[..va], &other.0[..vb])
            .then_with(|| Monomial::block_cmp(&self.0[va..], &other.0[vb..]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut factors: Vec<&(Symbol, u32)> = self.0.iter().collect();
        factors.sort_by(|a, b| a.0.display_key().cmp(&b.0.display_key()));
        for (k, (s, e)) in factors.into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn m(f: &[(Symbol, u32)]) -> Monomial {
        Monomial::from_factors(f.iter().cloned())
    }

    #[test]
    fn ordering_is_graded_on_vars_first() {
        let d = Symbol::Var(Var::D);
        let l = Symbol::Var(Var::Lambda);
        let a = Symbol::param("a");
        assert!(m(&[(d.clone(), 1)]) > m(&[(l.clone(), 1)]));
        assert!(m(&[(l.clone(), 2)]) > m(&[(d.clone(), 1)]));
        // any var beats any pure-parameter monomial
        assert!(m(&[(l.clone(), 1)]) > m(&[(a.clone(), 5)]));
        assert!(m(&[(l.clone(), 1), (a.clone(), 1)]) > m(&[(l.clone(), 1)]));
    }

    #[test]
    fn division_and_multiplication_agree() {
        let d = Symbol::Var(Var::D);
        let a = Symbol::param("a");
        let x = m(&[(d.clone(), 2), (a.clone(), 1)]);
        let y = m(&[(d.clone(), 1)]);
        assert_eq!(x.div(&y).unwrap().mul(&y), x);
        assert!(y.div(&x).is_none());
    }
}
