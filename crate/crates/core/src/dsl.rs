//! The `.lca` text format.
//!
//! ```text
//! algebra TSV(a,b) {
//!   generators: L, Y, M;
//!   bracket L L = (d + 2*l)*L;
//!   bracket L Y = (d + a*l + b)*Y;
//!   job h2 --deg 6;
//! }
//! ```
//!
//! `d` and `l` stand for ∂ and λ. Each additive term of a bracket carries
//! exactly one generator factor. A clause for `(i, j)` also fixes `(j, i)` by
//! skew-symmetry. `novikov` and `lie` clauses describe a Gel'fand–Dorfman
//! bialgebra instead; `job` lines hold CLI arguments run by `cwb report`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::gdb::GdBialgebra;
use crate::lca::{flip, LcaPresentation};
use crate::poly::{parse_rat, Poly, Rat, Var};

type Position = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct DslError {
    pub line: usize,
    pub col: usize,
    pub kind: DslErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdent(String),
    #[error("two generator factors in one term")]
    TwoGenerators,
    #[error("term without a generator factor")]
    NoGenerator,
    #[error("`{0}` is not allowed in novikov or lie clauses")]
    FormalVariable(String),
    #[error("duplicate clause for ({0}, {1})")]
    Duplicate(String, String),
    #[error("clause for ({0}, {1}) contradicts skew-symmetry of the ({1}, {0}) clause")]
    SkewConflict(String, String),
    #[error("`{0}` is declared twice")]
    Redeclared(String),
    #[error("`{0}` is reserved")]
    Reserved(String),
    #[error("generators must be declared before clauses")]
    NoGenerators,
    #[error("a generator can only be raised to a power in a constant way")]
    GeneratorPower,
    #[error("bad exponent `{0}`")]
    Exponent(String),
}

/// One `job` line: a CLI command and its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub command: String,
    pub args: Vec<String>,
}

/// A parsed `.lca` document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub algebra: LcaPresentation,
    pub gd: Option<GdBialgebra>,
    pub jobs: Vec<Job>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(Rat),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(r) => format!("`{}`", crate::poly::format_rat(r)),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Next token with its position.
    fn next(&mut self) -> Result<(Tok, usize, usize), DslError> {
        self.skip_space();
        let (line, col) = (self.line, self.col);
        let Some(&c) = self.chars.peek() else {
            return Ok((Tok::Eof, line, col));
        };
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = self.chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            return Ok((Tok::Ident(s), line, col));
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while self.chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(self.bump().expect("peeked"));
            }
            // a literal `p/q`; `/` has no other use
            if self.chars.peek() == Some(&'/') {
                self.bump();
                s.push('/');
                while self.chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(self.bump().expect("peeked"));
                }
            }
            return match parse_rat(&s) {
                Some(r) => Ok((Tok::Num(r), line, col)),
                None => Err(DslError {
                    line,
                    col,
                    kind: DslErrorKind::Unexpected { found: format!("`{s}`"), expected: "a rational literal".into() },
                }),
            };
        }
        self.bump();
        let c = if c == '−' { '-' } else { c };
        Ok((Tok::Sym(c), line, col))
    }

    /// Raw text up to (not including) the next `;`.
    fn raw_until_semi(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }
}

/// Linear form `Σ_g coeff_g·g + scalar`.
#[derive(Clone, Debug, Default)]
struct Form {
    gens: BTreeMap<usize, Poly>,
    scalar: Poly,
}

impl Form {
    fn scalar(p: Poly) -> Form {
        Form { gens: BTreeMap::new(), scalar: p }
    }

    fn add(mut self, other: Form, sign: i64) -> Form {
        let s = Poly::int(sign);
        for (g, c) in other.gens {
            let e = self.gens.entry(g).or_default();
            *e += &s * &c;
        }
        self.gens.retain(|_, c| !c.is_zero());
        self.scalar += &s * &other.scalar;
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Clause {
    Bracket,
    Novikov,
    Lie,
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    line: usize,
    col: usize,
    params: Vec<String>,
    gens: Vec<String>,
}

impl Parser<'_> {
    fn err(&self, kind: DslErrorKind) -> DslError {
        DslError { line: self.line, col: self.col, kind }
    }

    fn advance(&mut self) -> Result<Tok, DslError> {
        let (t, line, col) = self.lex.next()?;
        let old = std::mem::replace(&mut self.tok, t);
        self.line = line;
        self.col = col;
        Ok(old)
    }

    fn unexpected(&self, expected: &str) -> DslError {
        self.err(DslErrorKind::Unexpected { found: self.tok.describe(), expected: expected.into() })
    }

    fn expect_sym(&mut self, c: char) -> Result<(), DslError> {
        if self.tok == Tok::Sym(c) {
            self.advance()?;
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match &self.tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.advance()?;
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn declare(&self, name: &str, taken: &[String]) -> Result<(), DslError> {
        if ["d", "l", "algebra", "generators", "bracket", "novikov", "lie", "job", "central"].contains(&name) {
            return Err(self.err(DslErrorKind::Reserved(name.into())));
        }
        if taken.iter().any(|t| t == name) || self.params.iter().any(|t| t == name) {
            return Err(self.err(DslErrorKind::Redeclared(name.into())));
        }
        Ok(())
    }

    fn ident_list(&mut self, taken: &mut Vec<String>, close: char) -> Result<(), DslError> {
        if self.tok == Tok::Sym(close) {
            return Ok(());
        }
        loop {
            let (line, col) = (self.line, self.col);
            let name = self.ident()?;
            self.declare(&name, taken).map_err(|e| DslError { line, col, ..e })?;
            taken.push(name);
            if self.tok == Tok::Sym(',') {
                self.advance()?;
            } else {
                return Ok(());
            }
        }
    }

    fn gen_ref(&mut self) -> Result<usize, DslError> {
        let (line, col) = (self.line, self.col);
        let name = self.ident()?;
        self.gens.iter().position(|g| *g == name).ok_or(DslError { line, col, kind: DslErrorKind::UnknownIdent(name) })
    }

    fn expr(&mut self, clause: Clause) -> Result<Form, DslError> {
        let mut acc = if self.tok == Tok::Sym('-') {
            self.advance()?;
            Form::default().add(self.term(clause)?, -1)
        } else {
            self.term(clause)?
        };
        loop {
            let sign = match self.tok {
                Tok::Sym('+') => 1,
                Tok::Sym('-') => -1,
                _ => return Ok(acc),
            };
            self.advance()?;
            acc = acc.add(self.term(clause)?, sign);
        }
    }

    fn term(&mut self, clause: Clause) -> Result<Form, DslError> {
        let mut acc = self.power(clause)?;
        while self.tok == Tok::Sym('*') {
            self.advance()?;
            let (line, col) = (self.line, self.col);
            let rhs = self.power(clause)?;
            acc = self.mul(acc, rhs).map_err(|kind| DslError { line, col, kind })?;
        }
        Ok(acc)
    }

    fn mul(&self, x: Form, y: Form) -> Result<Form, DslErrorKind> {
        if !x.gens.is_empty() && !y.gens.is_empty() {
            return Err(DslErrorKind::TwoGenerators);
        }
        let (f, s) = if x.gens.is_empty() { (y, x.scalar) } else { (x, y.scalar) };
        if !f.gens.is_empty() && !f.scalar.is_zero() {
            return Err(DslErrorKind::NoGenerator);
        }
        Ok(Form {
            gens: f.gens.into_iter().map(|(g, c)| (g, &c * &s)).filter(|(_, c)| !c.is_zero()).collect(),
            scalar: &f.scalar * &s,
        })
    }

    fn power(&mut self, clause: Clause) -> Result<Form, DslError> {
        let base = self.atom(clause)?;
        if self.tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.advance()?;
        let e = match &self.tok {
            Tok::Num(r) if r.is_integer() && *r >= Rat::from_integer(0.into()) => {
                r.to_integer().try_into().map_err(|_| self.err(DslErrorKind::Exponent(self.tok.describe())))?
            }
            _ => return Err(self.err(DslErrorKind::Exponent(self.tok.describe()))),
        };
        if !base.gens.is_empty() {
            return Err(self.err(DslErrorKind::GeneratorPower));
        }
        self.advance()?;
        Ok(Form::scalar(base.scalar.pow(e)))
    }

    fn atom(&mut self, clause: Clause) -> Result<Form, DslError> {
        match self.tok.clone() {
            Tok::Num(r) => {
                self.advance()?;
                Ok(Form::scalar(Poly::constant(r)))
            }
            Tok::Sym('(') => {
                self.advance()?;
                let f = self.expr(clause)?;
                self.expect_sym(')')?;
                Ok(f)
            }
            Tok::Sym('-') => {
                self.advance()?;
                let f = self.power(clause)?;
                Ok(Form::default().add(f, -1))
            }
            Tok::Ident(s) => {
                if (s == "d" || s == "l") && clause != Clause::Bracket {
                    return Err(self.err(DslErrorKind::FormalVariable(s)));
                }
                let f = if let Some(v) = Var::from_name(&s).filter(|_| s == "d" || s == "l") {
                    Form::scalar(Poly::var(v))
                } else if self.params.contains(&s) {
                    Form::scalar(Poly::param(&s))
                } else if let Some(g) = self.gens.iter().position(|g| *g == s) {
                    Form { gens: [(g, Poly::one())].into(), scalar: Poly::zero() }
                } else {
                    return Err(self.err(DslErrorKind::UnknownIdent(s)));
                };
                self.advance()?;
                Ok(f)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    /// Right-hand side as generator coordinates.
    fn value(&mut self, clause: Clause) -> Result<Vec<Poly>, DslError> {
        let (line, col) = (self.line, self.col);
        let f = self.expr(clause)?;
        if !f.scalar.is_zero() {
            return Err(DslError { line, col, kind: DslErrorKind::NoGenerator });
        }
        let mut v = vec![Poly::zero(); self.gens.len()];
        for (g, c) in f.gens {
            v[g] = c;
        }
        Ok(v)
    }
}

/// Parses a `.lca` document.
pub fn parse(text: &str) -> Result<AlgebraDoc, DslError> {
    let mut p = Parser {
        lex: Lexer { chars: text.chars().peekable(), line: 1, col: 1 },
        tok: Tok::Eof,
        line: 1,
        col: 1,
        params: Vec::new(),
        gens: Vec::new(),
    };
    p.advance()?;
    if p.tok != Tok::Ident("algebra".into()) {
        return Err(p.unexpected("`algebra`"));
    }
    p.advance()?;
    let name = p.ident()?;
    p.expect_sym('(')?;
    let mut params = Vec::new();
    p.ident_list(&mut params, ')')?;
    p.params = params;
    p.expect_sym(')')?;
    let braced = p.tok == Tok::Sym('{');
    if braced {
        p.advance()?;
    }

    let mut central: Vec<String> = Vec::new();
    // coordinates and the (line, col) of the clause
    let mut brackets: BTreeMap<(usize, usize), (Vec<Poly>, Position)> = BTreeMap::new();
    let mut novikov: BTreeMap<(usize, usize), Vec<Poly>> = BTreeMap::new();
    let mut lie: BTreeMap<(usize, usize), Vec<Poly>> = BTreeMap::new();
    let mut jobs = Vec::new();
    loop {
        let (line, col) = (p.line, p.col);
        let kw = match &p.tok {
            Tok::Sym('}') if braced => {
                p.advance()?;
                if p.tok != Tok::Eof {
                    return Err(p.unexpected("end of input"));
                }
                break;
            }
            Tok::Eof if !braced => break,
            Tok::Ident(s) => s.clone(),
            _ => return Err(p.unexpected("a clause")),
        };
        match kw.as_str() {
            "generators" | "central" => {
                p.advance()?;
                p.expect_sym(':')?;
                if kw == "generators" {
                    let mut gens = std::mem::take(&mut p.gens);
                    p.ident_list(&mut gens, ';')?;
                    p.gens = gens;
                } else {
                    let mut c = Vec::new();
                    while p.tok != Tok::Sym(';') {
                        let g = p.gen_ref()?;
                        c.push(p.gens[g].clone());
                        if p.tok == Tok::Sym(',') {
                            p.advance()?;
                        }
                    }
                    central.extend(c);
                }
            }
            "bracket" | "novikov" | "lie" => {
                if p.gens.is_empty() {
                    return Err(p.err(DslErrorKind::NoGenerators));
                }
                p.advance()?;
                let i = p.gen_ref()?;
                let j = p.gen_ref()?;
                p.expect_sym('=')?;
                let clause = match kw.as_str() {
                    "bracket" => Clause::Bracket,
                    "novikov" => Clause::Novikov,
                    _ => Clause::Lie,
                };
                let v = p.value(clause)?;
                let dup =
                    || DslError { line, col, kind: DslErrorKind::Duplicate(p.gens[i].clone(), p.gens[j].clone()) };
                match clause {
                    Clause::Bracket => {
                        if brackets.insert((i, j), (v, (line, col))).is_some() {
                            return Err(dup());
                        }
                    }
                    Clause::Novikov => {
                        if novikov.insert((i, j), v).is_some() {
                            return Err(dup());
                        }
                    }
                    Clause::Lie => {
                        if lie.insert((i, j), v).is_some() || lie.contains_key(&(j, i)) && i != j {
                            return Err(dup());
                        }
                    }
                }
            }
            "job" => {
                let raw = p.lex.raw_until_semi();
                let mut words = raw.split_whitespace().map(String::from);
                let Some(command) = words.next() else {
                    return Err(p.unexpected("a job command"));
                };
                jobs.push(Job { command, args: words.collect() });
                p.advance()?;
            }
            _ => return Err(p.unexpected("a clause")),
        }
        p.expect_sym(';')?;
    }

    let gens: Vec<&str> = p.gens.iter().map(String::as_str).collect();
    let params: Vec<&str> = p.params.iter().map(String::as_str).collect();
    let gd = if novikov.is_empty() && lie.is_empty() {
        None
    } else {
        let mut g = GdBialgebra::new(&name, &gens, &params);
        for ((i, j), v) in novikov {
            g.circ[i][j] = v;
        }
        for ((i, j), v) in lie {
            for (k, c) in v.into_iter().enumerate() {
                g.set_lie(i, j, k, c);
            }
        }
        Some(g)
    };
    let mut algebra = match (&gd, brackets.is_empty()) {
        (Some(g), true) => g.to_quadratic_unchecked(),
        _ => LcaPresentation::new(&name, &gens, &params),
    };
    for c in &central {
        let k = algebra.gen_index(c).expect("checked while parsing");
        algebra.central[k] = true;
    }
    for (&(i, j), (v, (line, col))) in &brackets {
        for (k, c) in v.iter().enumerate() {
            algebra.set(i, j, k, c.clone());
        }
        let partner: Vec<Poly> = v.iter().enumerate().map(|(k, c)| skew_partner(&algebra, k, c)).collect();
        match brackets.get(&(j, i)) {
            Some((w, _)) if i != j => {
                if *w != partner {
                    let (line, col) = (*line.max(&brackets[&(j, i)].1 .0), *col);
                    return Err(DslError {
                        line,
                        col,
                        kind: DslErrorKind::SkewConflict(p.gens[i].clone(), p.gens[j].clone()),
                    });
                }
            }
            _ if i != j => {
                for (k, c) in partner.into_iter().enumerate() {
                    algebra.set(j, i, k, c);
                }
            }
            _ => {}
        }
    }
    Ok(AlgebraDoc { algebra, gd, jobs })
}

fn skew_partner(a: &LcaPresentation, k: usize, c: &Poly) -> Poly {
    let p = -&flip(c);
    if a.central[k] {
        p.subst_var(Var::D, &Poly::zero())
    } else {
        p
    }
}

fn term_list(gens: &[String], coords: &[Poly]) -> String {
    let terms: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(k, p)| {
            let g = &gens[k];
            if p.is_one() {
                g.clone()
            } else if p.len() == 1 && !p.to_string().starts_with('-') {
                format!("{p}*{g}")
            } else {
                format!("({p})*{g}")
            }
        })
        .collect();
    terms.join(" + ")
}

/// Canonical text of a document; `parse` inverts it.
pub fn render(doc: &AlgebraDoc) -> String {
    let a = &doc.algebra;
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}({}) {{", a.name, a.params.join(","));
    let _ = writeln!(out, "  generators: {};", a.gens.join(", "));
    let central: Vec<&str> = a.gens.iter().zip(&a.central).filter(|(_, c)| **c).map(|(g, _)| g.as_str()).collect();
    if !central.is_empty() {
        let _ = writeln!(out, "  central: {};", central.join(", "));
    }
    let derived = doc.gd.as_ref().is_some_and(|g| g.to_quadratic_unchecked().same_table(a));
    if !derived {
        for ((i, j), v) in a.nonzero_brackets() {
            // skew partners are implied unless they disagree
            let implied = i > j && {
                let partner: Vec<Poly> =
                    a.bracket_gens(j, i).iter().enumerate().map(|(k, c)| skew_partner(a, k, c)).collect();
                partner == v
            };
            if !implied {
                let _ = writeln!(out, "  bracket {} {} = {};", a.gens[i], a.gens[j], term_list(&a.gens, &v));
            }
        }
    }
    if let Some(g) = &doc.gd {
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                if g.circ[i][j].iter().any(|p| !p.is_zero()) {
                    let _ = writeln!(
                        out,
                        "  novikov {} {} = {};",
                        g.basis[i],
                        g.basis[j],
                        term_list(&g.basis, &g.circ[i][j])
                    );
                }
            }
        }
        for i in 0..g.dim() {
            for j in i..g.dim() {
                if g.lie[i][j].iter().any(|p| !p.is_zero()) {
                    let _ =
                        writeln!(out, "  lie {} {} = {};", g.basis[i], g.basis[j], term_list(&g.basis, &g.lie[i][j]));
                }
            }
        }
    }
    for job in &doc.jobs {
        let mut line = job.command.clone();
        for a in &job.args {
            line.push(' ');
            line.push_str(a);
        }
        let _ = writeln!(out, "  job {line};");
    }
    out.push_str("}\n");
    out
}

/// Document for a presentation with no jobs.
pub fn document(a: &LcaPresentation) -> AlgebraDoc {
    AlgebraDoc { algebra: a.clone(), gd: None, jobs: Vec::new() }
}
