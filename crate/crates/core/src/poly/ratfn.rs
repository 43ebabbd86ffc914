use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::gcd::gcd;
use super::poly::{Assignment, Poly};
use super::{PolyError, Rat};

/// A quotient `num / den` where `den` involves parameters only.
///
/// Kept reduced: `gcd(num, den) = 1` and `den` has leading coefficient 1, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if den.has_vars() {
            return Err(PolyError::VarInDenominator(den.to_string()));
        }
        Ok(RatFn::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            return RatFn::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFn { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.leading_coeff().recip();
        RatFn { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn zero() -> RatFn {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFn {
        RatFn::from(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// True if no parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_param_only(&self) -> bool {
        self.num.is_param_only()
    }

    pub fn into_poly(self) -> Option<Poly> {
        self.den.is_one().then_some(self.num)
    }

    pub fn recip(&self) -> Result<RatFn, PolyError> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn, PolyError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Assigns parameter values; fails if the denominator vanishes.
    pub fn specialize(&self, assignment: &Assignment) -> Result<RatFn, PolyError> {
        let den = self.den.specialize(assignment);
        if den.is_zero() {
            return Err(PolyError::VanishingDenominator(self.den.integer_normalized().to_string()));
        }
        Ok(RatFn::reduced(self.num.specialize(assignment), den))
    }
}

impl Default for RatFn {
    fn default() -> RatFn {
        RatFn::zero()
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> RatFn {
        RatFn { num: p, den: Poly::one() }
    }
}

impl From<Rat> for RatFn {
    fn from(c: Rat) -> RatFn {
        RatFn::from(Poly::constant(c))
    }
}

impl From<i64> for RatFn {
    fn from(n: i64) -> RatFn {
        RatFn::from(Poly::int(n))
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFn::from(num);
            }
            return RatFn::reduced(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFn::reduced(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn::from(&self.num * &rhs.num);
        }
        RatFn::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -self.num, den: self.den }
    }
}

impl Add for RatFn {
    type Output = RatFn;
    fn add(self, rhs: RatFn) -> RatFn {
        &self + &rhs
    }
}

impl Sub for RatFn {
    type Output = RatFn;
    fn sub(self, rhs: RatFn) -> RatFn {
        &self - &rhs
    }
}

impl Mul for RatFn {
    type Output = RatFn;
    fn mul(self, rhs: RatFn) -> RatFn {
        &self * &rhs
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

/// Substitutes rational functions for symbols of a polynomial.
pub fn substitute_ratfn(p: &Poly, map: &std::collections::BTreeMap<super::Symbol, RatFn>) -> RatFn {
    let mut acc = RatFn::zero();
    for (m, c) in p.terms() {
        let (bound, free) = m.split(|s| map.contains_key(s));
        let mut t = RatFn::from(Poly::term(free, c.clone()));
        for (s, e) in bound.factors() {
            for _ in 0..*e {
                t = &t * &map[s];
            }
        }
        acc = &acc + &t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn cancels_common_factor() {
        let a = Poly::param("a");
        let am1 = &a - &Poly::int(1);
        let r = RatFn::new(&am1 * &a, &am1 * &Poly::int(2)).unwrap();
        assert_eq!(r, RatFn::from(a.scale(&rat(1, 2))));
    }

    #[test]
    fn sums_over_common_denominator() {
        let a = Poly::param("a");
        let x = RatFn::new(Poly::one(), &a - &Poly::int(1)).unwrap();
        let y = RatFn::new(&a * &Poly::int(-1), &a - &Poly::int(1)).unwrap();
        assert_eq!(&x + &y, RatFn::from(-1));
    }

    #[test]
    fn specialize_reports_vanishing_denominator() {
        let a = Poly::param("a");
        let x = RatFn::new(Poly::one(), &a - &Poly::int(1)).unwrap();
        let mut at = Assignment::new();
        at.insert("a".into(), rat(1, 1));
        let err = x.specialize(&at).unwrap_err();
        assert_eq!(err, PolyError::VanishingDenominator("a - 1".into()));
    }

    #[test]
    fn rejects_variable_denominator() {
        assert!(RatFn::new(Poly::one(), Poly::lambda()).is_err());
    }
}
