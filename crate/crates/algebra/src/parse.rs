//! Text syntax for polynomials with Gaussian-rational coefficients.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary | implicit)*
//! unary := ("+" | "-") unary | power
//! power := atom ("^" integer)?
//! atom  := number | "i" | variable | "(" expr ")"
//! ```
//!
//! Division is only allowed by nonzero constants. A name that is not a
//! variable followed by `(` is a function call and rejected as
//! non-polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::{GaussRat, MVPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: `{name}` is not a polynomial operation")]
    NonPolynomial {
        line: usize,
        column: usize,
        name: String,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. } | ParseError::NonPolynomial { line, column, .. } => {
                (*line, *column)
            }
        }
    }

    /// Shift the reported position by the location of an enclosing snippet.
    pub fn offset(self, line: usize, column: usize) -> Self {
        let adjust = |l: usize, c: usize| {
            if l == 1 {
                (line, column + c - 1)
            } else {
                (line + l - 1, c)
            }
        };
        match self {
            ParseError::Syntax {
                line: l,
                column: c,
                message,
            } => {
                let (line, column) = adjust(l, c);
                ParseError::Syntax { line, column, message }
            }
            ParseError::NonPolynomial {
                line: l,
                column: c,
                name,
            } => {
                let (line, column) = adjust(l, c);
                ParseError::NonPolynomial { line, column, name }
            }
        }
    }
}

/// Lexical token shared with other expression parsers.
#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "number {q}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Op(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Split text into numbers, identifiers and the operators `+-*/^()`.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            k += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(k + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            let lit: String = chars[start..k].iter().collect();
            column += k - start;
            let q = decimal(&lit).ok_or_else(|| ParseError::Syntax {
                line: l0,
                column: c0,
                message: format!("malformed number `{lit}`"),
            })?;
            out.push(Spanned {
                tok: Tok::Num(q),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            column += k - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..k].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Spanned {
                tok: Tok::Op(c),
                line: l0,
                column: c0,
            });
            column += 1;
            k += 1;
            continue;
        }
        return Err(ParseError::Syntax {
            line: l0,
            column: c0,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

fn decimal(lit: &str) -> Option<BigRational> {
    let mut parts = lit.split('.');
    let int = parts.next()?;
    let frac = parts.next().unwrap_or("");
    if parts.next().is_some() || (int.is_empty() && frac.is_empty()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(num, den))
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: String) -> ParseError {
        ParseError::Syntax {
            line: at.line,
            column: at.column,
            message,
        }
    }

    fn expr(&mut self) -> Result<MVPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MVPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    let at = self.bump();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.error(&at, "division by a non-constant or zero".to_string()));
                    }
                    let inv = d.constant_term().inv().expect("nonzero constant");
                    acc = acc.scale(&inv);
                }
                // juxtaposition such as `2x` or `3(x + y)`
                Tok::Ident(_) | Tok::Num(_) | Tok::Op('(') => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MVPoly, ParseError> {
        match self.peek().tok {
            Tok::Op('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MVPoly, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        match &at.tok {
            Tok::Num(q) if q.is_integer() && !q.is_negative() => {
                let e: u32 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| self.error(&at, "exponent too large".to_string()))?;
                Ok(base.pow(e))
            }
            other => Err(self.error(&at, format!("expected a nonnegative integer exponent, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<MVPoly, ParseError> {
        let n = self.vars.len();
        let at = self.bump();
        match &at.tok {
            Tok::Num(q) => Ok(MVPoly::constant(n, GaussRat::real(q.clone()))),
            Tok::Ident(name) => {
                let known = name == "i" || self.vars.contains(name);
                if !known && self.peek().tok == Tok::Op('(') {
                    return Err(ParseError::NonPolynomial {
                        line: at.line,
                        column: at.column,
                        name: name.clone(),
                    });
                }
                if name == "i" {
                    return Ok(MVPoly::constant(n, GaussRat::i()));
                }
                match self.vars.iter().position(|v| v == name) {
                    Some(k) => Ok(MVPoly::var(n, k)),
                    None => Err(self.error(&at, format!("unknown variable `{name}`"))),
                }
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::Op(')') {
                    return Err(self.error(&close, format!("expected `)`, found {}", close.tok)));
                }
                Ok(inner)
            }
            other => Err(self.error(&at, format!("unexpected {other}"))),
        }
    }
}

/// Parse a polynomial in the given variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<MVPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, vars };
    let out = p.expr()?;
    let rest = p.peek().clone();
    if rest.tok != Tok::End {
        return Err(p.error(&rest, format!("unexpected {}", rest.tok)));
    }
    Ok(out)
}

/// Identifiers used as variables, in order of first appearance (`i` and
/// names applied as functions are skipped).
pub fn scan_variables(text: &str) -> Result<Vec<String>, ParseError> {
    let toks = tokenize(text)?;
    let mut out: Vec<String> = Vec::new();
    for (k, t) in toks.iter().enumerate() {
        if let Tok::Ident(name) = &t.tok {
            let is_call = toks.get(k + 1).is_some_and(|n| n.tok == Tok::Op('('));
            if name != "i" && !is_call && !out.contains(name) {
                out.push(name.clone());
            }
        }
    }
    Ok(out)
}
