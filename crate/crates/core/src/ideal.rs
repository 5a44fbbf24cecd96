//! Ideals generated by monomials and binomials, their matrix triple, and the
//! text format used to read and write them.
//!
//! A generator is `x^a - u x^b`. A monomial `x^a` is stored as `b = a`,
//! `u = 0`, so an ideal becomes the plain triple `(M⁺, M⁻, u)` with one row
//! per generator.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{LctError, ParseErrorKind, Result};
use crate::linalg::{IntMatrix, IntVector};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    a: IntVector,
    b: IntVector,
    u: BigRational,
}

impl Generator {
    pub fn monomial(a: IntVector) -> Result<Self> {
        if !a.is_nonnegative() {
            return Err(LctError::NegativeEntry("monomial exponent"));
        }
        Ok(Generator {
            b: a.clone(),
            a,
            u: BigRational::zero(),
        })
    }

    /// `x^a - u x^b`, normalized with [`normalize_generator`].
    pub fn binomial(a: IntVector, b: IntVector, u: BigRational) -> Result<Self> {
        if a.len() != b.len() {
            return Err(LctError::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        normalize_generator(Generator { a, b, u })
    }

    pub fn a(&self) -> &IntVector {
        &self.a
    }

    pub fn b(&self) -> &IntVector {
        &self.b
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn nvars(&self) -> usize {
        self.a.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.u.is_zero()
    }

    /// Common monomial factor `min(a, b)`.
    pub fn monomial_factor(&self) -> IntVector {
        self.a.meet(&self.b)
    }

    /// `a - b`; its positive and negative parts are the exponents of the
    /// irreducible binomial factor.
    pub fn exponent_difference(&self) -> IntVector {
        self.a.sub(&self.b)
    }
}

/// Brings a generator to the canonical encoding.
///
/// `x^a - u x^a` with `u ∉ {0, 1}` is a unit times `x^a`, so it becomes a
/// monomial; `u = 0` forces `b = a`.
pub fn normalize_generator(g: Generator) -> Result<Generator> {
    if !g.a.is_nonnegative() || !g.b.is_nonnegative() {
        return Err(LctError::NegativeEntry("generator exponent"));
    }
    if g.u.is_zero() {
        return Ok(Generator {
            b: g.a.clone(),
            a: g.a,
            u: g.u,
        });
    }
    if g.a == g.b {
        if g.u.is_one() {
            return Err(LctError::ZeroGenerator);
        }
        return Ok(Generator {
            b: g.a.clone(),
            a: g.a,
            u: BigRational::zero(),
        });
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralBinomialIdeal {
    vars: Vec<String>,
    generators: Vec<Generator>,
}

impl GeneralBinomialIdeal {
    pub fn new(vars: Vec<String>, generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() {
            return Err(LctError::EmptyIdeal);
        }
        let n = vars.len();
        if let Some(g) = generators.iter().find(|g| g.nvars() != n) {
            return Err(LctError::DimensionMismatch {
                expected: n,
                found: g.nvars(),
            });
        }
        Ok(GeneralBinomialIdeal { vars, generators })
    }

    /// Same as [`GeneralBinomialIdeal::new`] with variables named `x1..xn`.
    pub fn with_default_names(generators: Vec<Generator>) -> Result<Self> {
        let n = generators.first().ok_or(LctError::EmptyIdeal)?.nvars();
        Self::new(default_names(n), generators)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(Generator::is_monomial)
    }

    pub fn triple(&self) -> IdealTriple {
        triple_of(self)
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// The matrices `M⁺`, `M⁻` (one row per generator) and coefficient vector `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealTriple {
    plus: IntMatrix,
    minus: IntMatrix,
    u: Vec<BigRational>,
}

impl IdealTriple {
    pub fn new(plus: IntMatrix, minus: IntMatrix, u: Vec<BigRational>) -> Result<Self> {
        if plus.nrows() != minus.nrows() || plus.nrows() != u.len() {
            return Err(LctError::DimensionMismatch {
                expected: plus.nrows(),
                found: minus.nrows().min(u.len()),
            });
        }
        if plus.ncols() != minus.ncols() {
            return Err(LctError::DimensionMismatch {
                expected: plus.ncols(),
                found: minus.ncols(),
            });
        }
        if plus.nrows() == 0 {
            return Err(LctError::EmptyIdeal);
        }
        for (i, ui) in u.iter().enumerate() {
            let (p, m) = (plus.row(i), minus.row(i));
            if !p.is_nonnegative() || !m.is_nonnegative() {
                return Err(LctError::NegativeEntry("triple matrix"));
            }
            if ui.is_zero() != (p == m) {
                return Err(LctError::InvalidGenerator(format!(
                    "row {} must have u = 0 exactly when M+ and M- agree",
                    i + 1
                )));
            }
        }
        Ok(IdealTriple { plus, minus, u })
    }

    /// Build from small literal rows and integer coefficients.
    pub fn from_i64(plus: &[&[i64]], minus: &[&[i64]], u: &[i64]) -> Result<Self> {
        Self::new(
            IntMatrix::from_i64_rows(plus),
            IntMatrix::from_i64_rows(minus),
            u.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.u.len()
    }

    pub fn nvars(&self) -> usize {
        self.plus.ncols()
    }

    pub fn plus(&self) -> &IntMatrix {
        &self.plus
    }

    pub fn minus(&self) -> &IntMatrix {
        &self.minus
    }

    pub fn u(&self) -> &[BigRational] {
        &self.u
    }

    /// `M = M⁺ - M⁻`.
    pub fn difference(&self) -> IntMatrix {
        self.plus.sub(&self.minus)
    }

    pub fn generator(&self, i: usize) -> Generator {
        Generator {
            a: self.plus.row(i).clone(),
            b: self.minus.row(i).clone(),
            u: self.u[i].clone(),
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.nrows()).map(|i| self.generator(i)).collect()
    }

    /// Same matrices with a different coefficient vector.
    pub fn with_coefficients(&self, u: Vec<BigRational>) -> Result<Self> {
        Self::new(self.plus.clone(), self.minus.clone(), u)
    }

    pub fn to_ideal(&self) -> GeneralBinomialIdeal {
        GeneralBinomialIdeal {
            vars: default_names(self.nvars()),
            generators: self.generators(),
        }
    }
}

pub fn triple_of(ideal: &GeneralBinomialIdeal) -> IdealTriple {
    let n = ideal.nvars();
    let mut plus = IntMatrix::empty(n);
    let mut minus = IntMatrix::empty(n);
    let mut u = Vec::with_capacity(ideal.generators.len());
    for g in &ideal.generators {
        plus.push_row(g.a.clone())
            .expect("generator length checked");
        minus
            .push_row(g.b.clone())
            .expect("generator length checked");
        u.push(g.u.clone());
    }
    IdealTriple { plus, minus, u }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Slash => "`/`".into(),
        }
    }
}

struct Lexer<'a> {
    line: usize,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Result<Self> {
        let chars: Vec<char> = src.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().expect("digits")), col));
                continue;
            }
            let t = match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                _ => {
                    return Err(LctError::Parse {
                        line,
                        column: col,
                        kind: ParseErrorKind::Unexpected {
                            found: format!("character `{c}`"),
                            expected: "a term",
                        },
                    })
                }
            };
            toks.push((t, col));
            i += 1;
        }
        Ok(Lexer {
            line,
            toks,
            pos: 0,
            end_col: chars.len() + 1,
            _src: src,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |&(_, c)| c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, kind: ParseErrorKind) -> LctError {
        LctError::Parse {
            line: self.line,
            column: self.col(),
            kind,
        }
    }

    fn unexpected(&self, expected: &'static str) -> LctError {
        let found = self.peek().map_or("end of line".to_string(), Tok::describe);
        self.err(ParseErrorKind::Unexpected { found, expected })
    }
}

struct Term {
    coef: BigRational,
    exps: IntVector,
}

fn parse_term(lx: &mut Lexer<'_>, vars: &[String], sign: i32) -> Result<Term> {
    let mut coef = BigRational::from_integer(BigInt::from(sign));
    let mut exps = IntVector::zeros(vars.len());
    let mut factors = 0;

    if let Some(Tok::Int(_)) = lx.peek() {
        let col_tok = lx.col();
        let Some(Tok::Int(num)) = lx.next() else {
            unreachable!()
        };
        let mut q = BigRational::from_integer(num);
        if lx.peek() == Some(&Tok::Slash) {
            lx.next();
            match lx.next() {
                Some(Tok::Int(d)) if !d.is_zero() => q /= BigRational::from_integer(d),
                _ => {
                    lx.pos -= 1;
                    return Err(lx.unexpected("a nonzero denominator"));
                }
            }
        }
        if q.is_zero() {
            return Err(LctError::Parse {
                line: lx.line,
                column: col_tok,
                kind: ParseErrorKind::ZeroCoefficient,
            });
        }
        coef *= q;
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
            }
            // a bare coefficient is the constant monomial
            None | Some(Tok::Plus) | Some(Tok::Minus) => return Ok(Term { coef, exps }),
            _ => return Err(lx.unexpected("`*`, `+`, `-` or end of line")),
        }
    }

    loop {
        let col = lx.col();
        let name = match lx.next() {
            Some(Tok::Ident(s)) => s,
            _ => {
                lx.pos -= 1;
                return Err(lx.unexpected("a variable"));
            }
        };
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .ok_or(LctError::Parse {
                line: lx.line,
                column: col,
                kind: ParseErrorKind::UnknownVariable(name),
            })?;
        let mut e = BigInt::one();
        if lx.peek() == Some(&Tok::Caret) {
            lx.next();
            match lx.peek() {
                Some(Tok::Int(_)) => {
                    let Some(Tok::Int(k)) = lx.next() else {
                        unreachable!()
                    };
                    e = k;
                }
                Some(Tok::Minus) => return Err(lx.err(ParseErrorKind::NegativeExponent)),
                _ => return Err(lx.unexpected("an exponent")),
            }
        }
        let mut entries = exps.into_entries();
        entries[idx] += e;
        exps = IntVector::new(entries)?;
        factors += 1;
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
            }
            _ => break,
        }
    }
    debug_assert!(factors > 0);
    Ok(Term { coef, exps })
}

fn parse_generator(line: &str, lineno: usize, vars: &[String]) -> Result<Generator> {
    let mut lx = Lexer::new(line, lineno)?;
    let mut sign = 1;
    match lx.peek() {
        Some(Tok::Minus) => {
            lx.next();
            sign = -1;
        }
        Some(Tok::Plus) => {
            lx.next();
        }
        _ => {}
    }
    let first = parse_term(&mut lx, vars, sign)?;
    let second_sign = match lx.peek() {
        None => {
            return Generator::monomial(first.exps);
        }
        Some(Tok::Plus) => 1,
        Some(Tok::Minus) => -1,
        _ => return Err(lx.unexpected("`+`, `-` or end of line")),
    };
    lx.next();
    let second = parse_term(&mut lx, vars, second_sign)?;
    if lx.peek().is_some() {
        return Err(lx.err(ParseErrorKind::TooManyTerms));
    }
    // c1 x^a + c2 x^b = c1 (x^a - u x^b) with u = -c2 / c1
    let u = -(second.coef / first.coef);
    Generator::binomial(first.exps, second.exps, u).map_err(|e| match e {
        LctError::ZeroGenerator => LctError::Parse {
            line: lineno,
            column: 1,
            kind: ParseErrorKind::ZeroGenerator,
        },
        other => other,
    })
}

/// Parses the ideal text format.
///
/// ```text
/// vars x1 x2 x3
/// x2^2 - x1*x3
/// x2*x3 - x1^3
/// # comments and blank lines are skipped
/// x3^2 - x1^2*x2
/// ```
pub fn parse_ideal(text: &str) -> Result<GeneralBinomialIdeal> {
    let mut vars: Option<Vec<String>> = None;
    let mut gens = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        match &vars {
            None => vars = Some(parse_header(line, lineno)?),
            Some(v) => gens.push(parse_generator(line, lineno, v)?),
        }
    }
    let Some(vars) = vars else {
        return Err(LctError::Parse {
            line: last_line.max(1),
            column: 1,
            kind: ParseErrorKind::MissingHeader,
        });
    };
    if gens.is_empty() {
        return Err(LctError::Parse {
            line: last_line.max(1),
            column: 1,
            kind: ParseErrorKind::Empty,
        });
    }
    GeneralBinomialIdeal::new(vars, gens)
}

fn parse_header(line: &str, lineno: usize) -> Result<Vec<String>> {
    let mut lx = Lexer::new(line, lineno)?;
    match lx.next() {
        Some(Tok::Ident(s)) if s == "vars" => {}
        _ => {
            lx.pos = 0;
            return Err(lx.err(ParseErrorKind::MissingHeader));
        }
    }
    let mut vars: Vec<String> = Vec::new();
    while let Some(t) = lx.peek().cloned() {
        match t {
            Tok::Ident(s) => {
                if vars.contains(&s) {
                    return Err(lx.err(ParseErrorKind::DuplicateVariable(s)));
                }
                vars.push(s);
                lx.next();
            }
            _ => return Err(lx.unexpected("a variable name")),
        }
    }
    if vars.is_empty() {
        return Err(lx.err(ParseErrorKind::NoVariables));
    }
    Ok(vars)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], e: &IntVector) -> fmt::Result {
    let mut first = true;
    for (name, k) in vars.iter().zip(e.iter()) {
        if k.is_zero() {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k.is_one() {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{k}")?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

/// Canonical rendering in the input grammar.
impl fmt::Display for GeneralBinomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vars {}", self.vars.join(" "))?;
        for g in &self.generators {
            f.write_str("\n")?;
            write_monomial(f, &self.vars, &g.a)?;
            if g.is_monomial() {
                continue;
            }
            // x^a - u x^b: the second term carries coefficient -u
            let c = -g.u.clone();
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
            let mag = c.abs();
            if g.b.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, &self.vars, &g.b)?;
            }
        }
        Ok(())
    }
}
