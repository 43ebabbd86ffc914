//! Exact sparse polynomials and rational functions over ℚ.

mod gcd;
mod monomial;
#[allow(clippy::module_inception)]
mod poly;
mod ratfn;
mod roots;
mod symbol;

pub use gcd::{content_in, gcd};
pub use monomial::Monomial;
pub use poly::{Assignment, Poly};
pub use ratfn::{substitute_ratfn, RatFn};
pub use roots::{param_root_candidates, rational_roots};
pub use symbol::{Symbol, Var};

pub(crate) use poly::fmt_rat;

use num_bigint::BigInt;
use thiserror::Error;

/// Exact rational number.
pub type Rat = num_rational::BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational the way the DSL reads it (`3/2`, `-4`).
pub fn format_rat(c: &Rat) -> String {
    fmt_rat(c)
}

/// Parses `3/2`, `-4` or `0`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("parameter `{0}` cannot be bound by substitution")]
    ParamBinding(String),
    #[error("denominator `{0}` involves a formal variable")]
    VarInDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator `{0}` vanishes at this point")]
    VanishingDenominator(String),
}
