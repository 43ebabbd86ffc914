use std::fmt;
use std::sync::Arc;

/// The fixed set of formal indeterminates.
///
/// Declaration order is also the significance order used by the monomial
/// ordering: `∂` is the most significant variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    D,
    Lambda,
    Mu,
    Nu,
    X,
    Y,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::D, Var::Lambda, Var::Mu, Var::Nu, Var::X, Var::Y];

    /// ASCII name used in rendering and by the DSL.
    pub fn name(self) -> &'static str {
        match self {
            Var::D => "d",
            Var::Lambda => "l",
            Var::Mu => "m",
            Var::Nu => "n",
            Var::X => "x",
            Var::Y => "y",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// An indeterminate of a [`Poly`](super::Poly).
///
/// `Var`s are the formal variables of λ-bracket calculus. `Param`s are
/// user-declared parameters that behave as elements of the coefficient field
/// (linear algebra happens over ℚ(params)). `Unknown`s are anonymous
/// coordinates used when a polynomial identity is turned into a linear system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Var(Var),
    Param(Arc<str>),
    Unknown(u32),
}

impl Symbol {
    pub fn param(name: &str) -> Symbol {
        Symbol::Param(Arc::from(name))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Symbol::Var(_))
    }

    pub fn is_param(&self) -> bool {
        matches!(self, Symbol::Param(_))
    }

    /// Rendering rank: params, then variables, then unknowns.
    pub(crate) fn display_key(&self) -> (u8, &Symbol) {
        match self {
            Symbol::Param(_) => (0, self),
            Symbol::Var(_) => (1, self),
            Symbol::Unknown(_) => (2, self),
        }
    }
}

impl From<Var> for Symbol {
    fn from(v: Var) -> Symbol {
        Symbol::Var(v)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Var(v) => f.write_str(v.name()),
            Symbol::Param(p) => f.write_str(p),
            Symbol::Unknown(u) => write!(f, "u{u}"),
        }
    }
}
