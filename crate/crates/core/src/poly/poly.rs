use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::symbol::{Symbol, Var};
use super::{PolyError, Rat};

/// Numeric values for some parameters.
pub type Assignment = BTreeMap<String, Rat>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so two polynomials
/// are equal exactly when their term maps are equal. Zero coefficients are
/// never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Rat::from_integer(BigInt::from(n)))
    }

    /// The rational `n/d`.
    pub fn ratio(n: i64, d: i64) -> Poly {
        Poly::constant(Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn symbol(s: Symbol) -> Poly {
        Poly::term(Monomial::var(s, 1), Rat::one())
    }

    pub fn var(v: Var) -> Poly {
        Poly::symbol(Symbol::Var(v))
    }

    pub fn param(name: &str) -> Poly {
        Poly::symbol(Symbol::param(name))
    }

    pub fn unknown(u: u32) -> Poly {
        Poly::symbol(Symbol::Unknown(u))
    }

    /// `∂`
    pub fn d() -> Poly {
        Poly::var(Var::D)
    }

    /// `λ`
    pub fn lambda() -> Poly {
        Poly::var(Var::Lambda)
    }

    /// `μ`
    pub fn mu() -> Poly {
        Poly::var(Var::Mu)
    }

    pub fn term(m: Monomial, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rat)> {
        self.terms.into_iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rat {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// All symbols that occur.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(s, _)| s.clone())).collect()
    }

    pub fn params(&self) -> BTreeSet<String> {
        self.symbols()
            .into_iter()
            .filter_map(|s| match s {
                Symbol::Param(p) => Some(p.to_string()),
                _ => None,
            })
            .collect()
    }

    pub fn has_vars(&self) -> bool {
        self.terms.keys().any(|m| m.factors().iter().any(|(s, _)| s.is_var()))
    }

    /// True if some term involves a symbol other than a parameter.
    pub fn is_param_only(&self) -> bool {
        self.terms.keys().all(|m| m.factors().iter().all(|(s, _)| s.is_param()))
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    /// Highest exponent of `s`; `None` stands for −∞ (the zero polynomial).
    pub fn degree(&self, s: impl Into<Symbol>) -> Option<u32> {
        let s = s.into();
        self.terms.keys().map(|m| m.exponent(&s)).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining symbols.
    pub fn coeff_extract(&self, v: impl Into<Symbol>, k: u32) -> Poly {
        let v = v.into();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(&v);
            if e == k {
                out.terms.insert(rest, c.clone());
            }
        }
        out
    }

    /// Groups terms by their part in the symbols selected by `pred`.
    ///
    /// `p = Σ_key key · coeffs[key]` where no coefficient contains a selected
    /// symbol.
    pub fn split_by(&self, pred: impl Fn(&Symbol) -> bool) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, rest) = m.split(&pred);
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficients in the formal variables: maps each var-monomial to its
    /// coefficient in the other symbols.
    pub fn var_coefficients(&self) -> BTreeMap<Monomial, Poly> {
        self.split_by(Symbol::is_var)
    }

    /// Simultaneous substitution of polynomials for variables.
    ///
    /// Parameters are field elements and cannot be bound here; use
    /// [`Poly::specialize`] to assign them values.
    pub fn substitute(&self, bindings: &[(Var, Poly)]) -> Result<Poly, PolyError> {
        let map: BTreeMap<Symbol, Poly> = bindings.iter().map(|(v, p)| (Symbol::Var(*v), p.clone())).collect();
        Ok(self.subst(&map))
    }

    /// Like [`Poly::substitute`] but with symbol keys; rejects parameters.
    pub fn substitute_symbols(&self, bindings: &BTreeMap<Symbol, Poly>) -> Result<Poly, PolyError> {
        if let Some(p) = bindings.keys().find(|s| s.is_param()) {
            return Err(PolyError::ParamBinding(p.to_string()));
        }
        Ok(self.subst(bindings))
    }

    /// Unrestricted simultaneous substitution.
    pub(crate) fn subst(&self, bindings: &BTreeMap<Symbol, Poly>) -> Poly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut cache: HashMap<(Symbol, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (bound, free) = m.split(|s| bindings.contains_key(s));
            if bound.is_one() {
                out.add_term(free, c.clone());
                continue;
            }
            let mut acc = Poly::term(free, c.clone());
            for (s, e) in bound.factors() {
                let pw = cache.entry((s.clone(), *e)).or_insert_with(|| bindings[s].pow(*e));
                acc = &acc * &*pw;
            }
            out += acc;
        }
        out
    }

    /// Substitutes one variable.
    pub fn subst_var(&self, v: Var, by: &Poly) -> Poly {
        let mut map = BTreeMap::new();
        map.insert(Symbol::Var(v), by.clone());
        self.subst(&map)
    }

    /// Assigns rational values to parameters; unassigned ones stay symbolic.
    pub fn specialize(&self, assignment: &Assignment) -> Poly {
        if assignment.is_empty() {
            return self.clone();
        }
        let map: BTreeMap<Symbol, Poly> =
            assignment.iter().map(|(k, v)| (Symbol::param(k), Poly::constant(v.clone()))).collect();
        self.subst(&map)
    }

    /// Multivariate exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = Poly::term(qm.clone(), qc.clone());
            rem -= &(&t * d);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Scales to integer coefficients with gcd 1 and a positive leading
    /// coefficient (for example `2*a - 3` rather than `a - 3/2`).
    pub fn integer_normalized(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        for c in self.terms.values() {
            let v = (c * Rat::from_integer(den.clone())).to_integer();
            num = num_integer::gcd(num, v);
        }
        let mut factor = Rat::new(den, num);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Evaluates a polynomial with no symbols other than assigned parameters.
    pub fn eval_const(&self, assignment: &Assignment) -> Option<Rat> {
        self.specialize(assignment).as_constant()
    }
}

/// Total order comparing terms from the leading one down; used only to keep
/// sets of polynomials in a deterministic order.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Poly {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        if self.len() < rhs.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { (&self).$f(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly { (&self).$f(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut acc = Poly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

pub(crate) fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rat(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
