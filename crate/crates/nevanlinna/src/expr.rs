//! Expression trees in one complex variable: constants, the variable,
//! sums, products, nonnegative integer powers and `exp`.

use std::fmt;

use foliation_algebra::parse::{tokenize, Spanned, Tok};
use foliation_algebra::{Coeff, GaussRat, MVPoly, ParseError, TruncatedSeries};
use num_complex::Complex64;
use num_traits::Signed;

use crate::exact::ExpCoeff;
use crate::scaled::Scaled;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(GaussRat),
    Var,
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Exp(Box<Expr>),
}

impl Expr {
    pub fn constant(c: GaussRat) -> Expr {
        Expr::Const(c)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(GaussRat::from_int(n))
    }

    pub fn var() -> Expr {
        Expr::Var
    }

    pub fn as_constant(&self) -> Option<&GaussRat> {
        match self {
            Expr::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_constant().is_some_and(Coeff::is_zero)
    }

    pub fn sum(terms: Vec<Expr>) -> Expr {
        let mut constant = GaussRat::zero();
        let mut rest = Vec::new();
        for t in terms {
            match t {
                Expr::Const(c) => constant += &c,
                Expr::Add(inner) => {
                    for u in inner {
                        match u {
                            Expr::Const(c) => constant += &c,
                            other => rest.push(other),
                        }
                    }
                }
                other => rest.push(other),
            }
        }
        if !constant.is_zero() {
            rest.push(Expr::Const(constant));
        }
        match rest.len() {
            0 => Expr::int(0),
            1 => rest.pop().unwrap(),
            _ => Expr::Add(rest),
        }
    }

    pub fn product(factors: Vec<Expr>) -> Expr {
        let mut constant = GaussRat::one();
        let mut rest = Vec::new();
        for f in factors {
            match f {
                Expr::Const(c) => constant *= &c,
                Expr::Mul(inner) => {
                    for u in inner {
                        match u {
                            Expr::Const(c) => constant *= &c,
                            other => rest.push(other),
                        }
                    }
                }
                other => rest.push(other),
            }
        }
        if constant.is_zero() {
            return Expr::int(0);
        }
        if constant != Coeff::one() || rest.is_empty() {
            rest.insert(0, Expr::Const(constant));
        }
        match rest.len() {
            1 => rest.pop().unwrap(),
            _ => Expr::Mul(rest),
        }
    }

    pub fn powu(self, k: u32) -> Expr {
        match (self, k) {
            (_, 0) => Expr::int(1),
            (e, 1) => e,
            (Expr::Const(c), k) => Expr::Const(c.pow(k)),
            (Expr::Pow(b, j), k) => Expr::Pow(b, j * k),
            (e, k) => Expr::Pow(Box::new(e), k),
        }
    }

    pub fn exp(self) -> Expr {
        if self.is_zero() {
            return Expr::int(1);
        }
        Expr::Exp(Box::new(self))
    }

    pub fn neg(self) -> Expr {
        Expr::product(vec![Expr::int(-1), self])
    }

    pub fn depends_on_var(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var => true,
            Expr::Add(v) | Expr::Mul(v) => v.iter().any(Expr::depends_on_var),
            Expr::Pow(b, _) => b.depends_on_var(),
            Expr::Exp(b) => b.depends_on_var(),
        }
    }

    /// True when no exponential of a non-constant argument occurs, i.e.
    /// the expression is a polynomial in the variable.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var => true,
            Expr::Add(v) | Expr::Mul(v) => v.iter().all(Expr::is_polynomial),
            Expr::Pow(b, _) => b.is_polynomial(),
            Expr::Exp(b) => !b.depends_on_var(),
        }
    }

    /// Coefficients `[c_0, c_1, ...]` when the expression is a polynomial
    /// with Gaussian-rational coefficients.
    pub fn to_univariate(&self) -> Option<Vec<GaussRat>> {
        fn trim(mut v: Vec<GaussRat>) -> Vec<GaussRat> {
            while v.len() > 1 && v.last().is_some_and(Coeff::is_zero) {
                v.pop();
            }
            v
        }
        fn mul(a: &[GaussRat], b: &[GaussRat]) -> Vec<GaussRat> {
            let mut out = vec![GaussRat::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += &(x * y);
                }
            }
            trim(out)
        }
        let out = match self {
            Expr::Const(c) => vec![c.clone()],
            Expr::Var => vec![GaussRat::zero(), GaussRat::one()],
            Expr::Add(v) => {
                let mut acc = vec![GaussRat::zero()];
                for t in v {
                    let p = t.to_univariate()?;
                    if p.len() > acc.len() {
                        acc.resize(p.len(), GaussRat::zero());
                    }
                    for (k, c) in p.iter().enumerate() {
                        acc[k] += c;
                    }
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = vec![GaussRat::one()];
                for t in v {
                    acc = mul(&acc, &t.to_univariate()?);
                }
                acc
            }
            Expr::Pow(b, k) => {
                let p = b.to_univariate()?;
                let mut acc = vec![GaussRat::one()];
                for _ in 0..*k {
                    acc = mul(&acc, &p);
                }
                acc
            }
            Expr::Exp(_) => return None,
        };
        Some(trim(out))
    }

    pub fn derivative(&self) -> Expr {
        match self {
            Expr::Const(_) => Expr::int(0),
            Expr::Var => Expr::int(1),
            Expr::Add(v) => Expr::sum(v.iter().map(Expr::derivative).collect()),
            Expr::Mul(v) => {
                let mut terms = Vec::new();
                for i in 0..v.len() {
                    let d = v[i].derivative();
                    if d.is_zero() {
                        continue;
                    }
                    let mut factors: Vec<Expr> = v.clone();
                    factors[i] = d;
                    terms.push(Expr::product(factors));
                }
                Expr::sum(terms)
            }
            Expr::Pow(b, k) => {
                let d = b.derivative();
                Expr::product(vec![Expr::int(i64::from(*k)), (**b).clone().powu(k - 1), d])
            }
            Expr::Exp(b) => Expr::product(vec![self.clone(), b.derivative()]),
        }
    }

    pub fn eval(&self, t: Complex64) -> Scaled {
        match self {
            Expr::Const(c) => Scaled::new(c.to_complex()),
            Expr::Var => Scaled::new(t),
            Expr::Add(v) => v.iter().fold(Scaled::ZERO, |acc, e| acc + e.eval(t)),
            Expr::Mul(v) => v.iter().fold(Scaled::ONE, |acc, e| acc * e.eval(t)),
            Expr::Pow(b, k) => b.eval(t).powu(*k),
            Expr::Exp(b) => b.eval(t).exp(),
        }
    }

    /// Exact Taylor expansion at `t0` through order `n` in `s = t − t0`.
    /// `None` when an exponential of a transcendental constant would be
    /// needed (for instance `exp(exp(t))` at `t0 ≠ 0`).
    pub fn taylor(&self, t0: &GaussRat, n: usize) -> Option<TruncatedSeries<ExpCoeff>> {
        Some(match self {
            Expr::Const(c) => TruncatedSeries::constant(ExpCoeff::rational(c.clone()), n),
            Expr::Var => TruncatedSeries::new(vec![ExpCoeff::rational(t0.clone()), ExpCoeff::one()], n),
            Expr::Add(v) => {
                let mut acc = TruncatedSeries::zero(n);
                for e in v {
                    acc = acc.add(&e.taylor(t0, n)?);
                }
                acc
            }
            Expr::Mul(v) => {
                let mut acc = TruncatedSeries::constant(ExpCoeff::one(), n);
                for e in v {
                    acc = acc.mul(&e.taylor(t0, n)?);
                }
                acc
            }
            Expr::Pow(b, k) => b.taylor(t0, n)?.pow(*k),
            Expr::Exp(b) => b.taylor(t0, n)?.exp()?,
        })
    }

    /// `p(comps)`, the polynomial `p` evaluated at expressions.
    pub fn compose(p: &MVPoly, comps: &[Expr]) -> Expr {
        assert_eq!(p.nvars(), comps.len());
        let terms = p
            .terms()
            .map(|(e, c)| {
                let mut factors = vec![Expr::Const(c.clone())];
                for (i, &k) in e.iter().enumerate() {
                    if k > 0 {
                        factors.push(comps[i].clone().powu(k));
                    }
                }
                Expr::product(factors)
            })
            .collect();
        Expr::sum(terms)
    }

    pub fn from_series(s: &TruncatedSeries<GaussRat>) -> Expr {
        let terms = s
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| Expr::product(vec![Expr::Const(c.clone()), Expr::Var.powu(k as u32)]))
            .collect();
        Expr::sum(terms)
    }

    pub fn to_text(&self, var: &str) -> String {
        Printer { var }.expr(self)
    }
}

struct Printer<'a> {
    var: &'a str,
}

impl Printer<'_> {
    fn constant(&self, c: &GaussRat, wrap: bool) -> String {
        let s = c.to_string();
        let simple = c.is_real() && c.to_complex().re >= 0.0 && !s.contains('/');
        if wrap && !simple && !s.starts_with('(') {
            format!("({s})")
        } else {
            s
        }
    }

    fn expr(&self, e: &Expr) -> String {
        match e {
            Expr::Add(v) => v.iter().map(|t| self.expr(t)).collect::<Vec<_>>().join(" + "),
            other => self.factor(other),
        }
    }

    fn factor(&self, e: &Expr) -> String {
        match e {
            Expr::Const(c) => self.constant(c, false),
            Expr::Var => self.var.to_string(),
            Expr::Add(_) => format!("({})", self.expr(e)),
            Expr::Mul(v) => v
                .iter()
                .enumerate()
                .map(|(k, f)| match f {
                    Expr::Const(c) => self.constant(c, k > 0),
                    Expr::Add(_) => format!("({})", self.expr(f)),
                    other => self.factor(other),
                })
                .collect::<Vec<_>>()
                .join("*"),
            Expr::Pow(b, k) => {
                let base = match &**b {
                    Expr::Var => self.var.to_string(),
                    Expr::Const(c) => self.constant(c, true),
                    Expr::Exp(_) => self.factor(b),
                    other => format!("({})", self.expr(other)),
                };
                format!("{base}^{k}")
            }
            Expr::Exp(b) => format!("exp({})", self.expr(b)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("t"))
    }
}

/// Parse an entire-function expression in the variable `var`. Allowed:
/// rational and Gaussian constants, `+ - * ^`, juxtaposition, `exp(...)`,
/// and division by nonzero constants.
pub fn parse_expr(text: &str, var: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = ExprParser { toks, pos: 0, var };
    let e = p.expr()?;
    let end = p.peek().clone();
    if end.tok != Tok::End {
        return Err(syntax(&end, format!("unexpected {}", end.tok)));
    }
    Ok(e)
}

fn syntax(at: &Spanned, message: String) -> ParseError {
    ParseError::Syntax {
        line: at.line,
        column: at.column,
        message,
    }
}

struct ExprParser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    var: &'a str,
}

impl ExprParser<'_> {
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

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek().tok {
                Tok::Op('+') => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Op('-') => {
                    self.bump();
                    terms.push(self.term()?.neg());
                }
                _ => return Ok(Expr::sum(terms)),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.unary()?];
        loop {
            match self.peek().tok {
                Tok::Op('*') => {
                    self.bump();
                    factors.push(self.unary()?);
                }
                Tok::Op('/') => {
                    let at = self.bump();
                    let d = self.unary()?;
                    match d.as_constant().and_then(GaussRat::inv) {
                        Some(inv) => factors.push(Expr::Const(inv)),
                        None if d.is_zero() => return Err(syntax(&at, "division by zero".to_string())),
                        None => {
                            return Err(syntax(
                                &at,
                                "division by a non-constant expression: poles are not allowed".to_string(),
                            ))
                        }
                    }
                }
                Tok::Ident(_) | Tok::Num(_) | Tok::Op('(') => factors.push(self.power()?),
                _ => return Ok(Expr::product(factors)),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().tok {
            Tok::Op('-') => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.bump();
        match &at.tok {
            Tok::Num(q) if q.is_integer() && !q.is_negative() => {
                let k: u32 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| syntax(&at, "exponent too large".to_string()))?;
                Ok(base.powu(k))
            }
            Tok::Op('-') => Err(syntax(&at, "negative exponents would create poles".to_string())),
            other => Err(syntax(&at, format!("expected a nonnegative integer exponent, found {other}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.bump();
        match &at.tok {
            Tok::Num(q) => Ok(Expr::Const(GaussRat::real(q.clone()))),
            Tok::Ident(name) if self.peek().tok == Tok::Op('(') && name != self.var => {
                if name != "exp" {
                    return Err(ParseError::NonPolynomial {
                        line: at.line,
                        column: at.column,
                        name: name.clone(),
                    });
                }
                self.bump();
                let inner = self.expr()?;
                self.close()?;
                Ok(inner.exp())
            }
            Tok::Ident(name) if name == self.var => Ok(Expr::Var),
            Tok::Ident(name) if name == "i" => Ok(Expr::Const(GaussRat::i())),
            Tok::Ident(name) => Err(syntax(&at, format!("unknown name `{name}`"))),
            Tok::Op('(') => {
                let inner = self.expr()?;
                self.close()?;
                Ok(inner)
            }
            other => Err(syntax(&at, format!("unexpected {other}"))),
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        let close = self.bump();
        if close.tok != Tok::Op(')') {
            return Err(syntax(&close, format!("expected `)`, found {}", close.tok)));
        }
        Ok(())
    }
}

/// Vanishing order of a Taylor series, `None` if it vanishes through its
/// truncation order.
pub fn exact_order(s: &TruncatedSeries<ExpCoeff>) -> Option<usize> {
    s.coeffs().iter().position(|c| !Coeff::is_zero(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_evaluate() {
        let e = parse_expr("2t exp(-t) + (1/2 + i) t^3", "t").unwrap();
        let t = Complex64::new(0.3, -1.2);
        let want = 2.0 * t * (-t).exp() + Complex64::new(0.5, 1.0) * t.powu(3);
        assert!((e.eval(t).to_complex() - want).norm() < 1e-12);
        let d = e.derivative();
        let want_d = 2.0 * (-t).exp() - 2.0 * t * (-t).exp() + 3.0 * Complex64::new(0.5, 1.0) * t * t;
        assert!((d.eval(t).to_complex() - want_d).norm() < 1e-12);
    }

    #[test]
    fn parser_rejects_poles_and_unknown_functions() {
        assert!(matches!(parse_expr("1/t", "t"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("t^-1", "t"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expr("sin(t)", "t"), Err(ParseError::NonPolynomial { .. })));
        assert!(parse_expr("t/2", "t").is_ok());
    }

    #[test]
    fn text_round_trip() {
        for src in ["t", "exp(2*t)", "-t + 3", "(t - 1/2)*(t + i)^2", "t*exp(-t^2) + (1 - 2*i)", "exp(exp(t))"] {
            let e = parse_expr(src, "t").unwrap();
            let back = parse_expr(&e.to_text("t"), "t").unwrap();
            for z in [Complex64::new(0.4, 0.1), Complex64::new(-1.0, 2.0)] {
                assert!((e.eval(z).to_complex() - back.eval(z).to_complex()).norm() < 1e-9, "{src} -> {}", e.to_text("t"));
            }
        }
    }

    #[test]
    fn exact_taylor_orders() {
        let zero = GaussRat::zero();
        let e = parse_expr("exp(t) - 1 - t", "t").unwrap();
        assert_eq!(exact_order(&e.taylor(&zero, 5).unwrap()), Some(2));
        // t·e^t − e^t·t vanishes identically; at t0 = 1 the coefficients carry e^1
        let one = GaussRat::one();
        let e = parse_expr("(t - 1) exp(2t)", "t").unwrap();
        let s = e.taylor(&one, 4).unwrap();
        assert_eq!(exact_order(&s), Some(1));
        assert_eq!(s.coeff(1), ExpCoeff::exponential(GaussRat::from_int(2)));
        assert!(parse_expr("exp(exp(t))", "t").unwrap().taylor(&one, 3).is_none());
        assert_eq!(parse_expr("(t - 2)^3", "t").unwrap().to_univariate().unwrap().len(), 4);
    }
}
