//! Parametrized entire curves `f: C → (P¹)ⁿ` given in an affine chart,
//! with declared zero data.

use foliation_algebra::{GaussRat, ParseError, TruncatedSeries};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::NevanlinnaError;
use crate::expr::{exact_order, parse_expr, Expr};

pub const DEFAULT_WORKING_RADIUS: f64 = 1024.0;
const NUMERIC_ZERO_TOL: f64 = 1e-8;

/// Which auxiliary function a declared zero belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZeroTarget {
    /// Component `index` (0-based).
    Component { index: usize },
    /// Common zero of all components; the order is the minimum.
    Common,
    /// Zero of `f′`; the order is the minimum over components.
    Derivative,
}

impl ZeroTarget {
    fn label(&self, name: &str) -> String {
        match self {
            ZeroTarget::Component { index } => format!("{name}{}", index + 1),
            ZeroTarget::Common => "both".to_string(),
            ZeroTarget::Derivative => format!("{name}'"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeclaredZero {
    pub target: ZeroTarget,
    pub at: GaussRat,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParametrizedCurve {
    name: String,
    variable: String,
    components: Vec<Expr>,
    declared_zeros: Vec<DeclaredZero>,
    working_radius: f64,
}

impl ParametrizedCurve {
    /// Build a curve and verify every declared zero: its location lies in
    /// the working disk and the vanishing order matches exactly (or
    /// numerically when no exact expansion exists).
    pub fn new(
        components: Vec<Expr>,
        declared_zeros: Vec<DeclaredZero>,
        working_radius: f64,
    ) -> Result<Self, NevanlinnaError> {
        let curve = ParametrizedCurve {
            name: "f".to_string(),
            variable: "t".to_string(),
            components,
            declared_zeros,
            working_radius,
        };
        curve.verify()?;
        Ok(curve)
    }

    pub fn from_components(components: Vec<Expr>) -> Self {
        ParametrizedCurve {
            name: "f".to_string(),
            variable: "t".to_string(),
            components,
            declared_zeros: Vec::new(),
            working_radius: DEFAULT_WORKING_RADIUS,
        }
    }

    /// The polynomial curve with the given truncated series as components.
    pub fn from_series(components: &[TruncatedSeries<GaussRat>]) -> Self {
        Self::from_components(components.iter().map(Expr::from_series).collect())
    }

    fn with_names(mut self, name: &str, variable: &str) -> Self {
        self.name = name.to_string();
        self.variable = variable.to_string();
        self
    }

    fn verify(&self) -> Result<(), NevanlinnaError> {
        for z in &self.declared_zeros {
            if z.at.to_complex().norm() > self.working_radius {
                return Err(NevanlinnaError::ZeroOutsideRadius {
                    at: z.at.to_string(),
                    radius: self.working_radius,
                });
            }
            if let ZeroTarget::Component { index } = z.target {
                if index >= self.dim() {
                    return Err(NevanlinnaError::DimensionMismatch {
                        curve: self.dim(),
                        expected: index + 1,
                    });
                }
            }
            let found = self.order_at(&z.target, &z.at, z.order as usize + 1);
            if found != Some(z.order as usize) {
                return Err(NevanlinnaError::ZeroMismatch {
                    target: z.target.label(&self.name),
                    at: z.at.to_string(),
                    declared: z.order,
                    found: found.map_or_else(|| "a higher order".to_string(), |k| k.to_string()),
                });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn declared_zeros(&self) -> &[DeclaredZero] {
        &self.declared_zeros
    }

    pub fn working_radius(&self) -> f64 {
        self.working_radius
    }

    pub fn set_working_radius(&mut self, r: f64) -> Result<(), NevanlinnaError> {
        self.working_radius = r;
        self.verify()
    }

    pub fn derivative(&self) -> Vec<Expr> {
        self.components.iter().map(Expr::derivative).collect()
    }

    /// Polynomial components: the curve is algebraic.
    pub fn is_algebraic(&self) -> bool {
        self.components.iter().all(Expr::is_polynomial)
    }

    /// Declared zeros of one target as `(location, order)`.
    pub fn zeros(&self, target: &ZeroTarget) -> Vec<(Complex64, u32)> {
        self.declared_zeros
            .iter()
            .filter(|z| &z.target == target)
            .map(|z| (z.at.to_complex(), z.order))
            .collect()
    }

    fn target_functions(&self, target: &ZeroTarget) -> Vec<Expr> {
        match target {
            ZeroTarget::Component { index } => vec![self.components[*index].clone()],
            ZeroTarget::Common => self.components.clone(),
            ZeroTarget::Derivative => self.derivative(),
        }
    }

    /// Vanishing order of the target at `t0`, searched through `max`;
    /// `None` when it vanishes through `max`.
    pub fn order_at(&self, target: &ZeroTarget, t0: &GaussRat, max: usize) -> Option<usize> {
        self.target_functions(target)
            .iter()
            .filter_map(|e| expr_order(e, t0, max))
            .min()
    }

    pub fn to_text(&self) -> String {
        let comps: Vec<String> = self.components.iter().map(|e| e.to_text(&self.variable)).collect();
        let mut out = format!("{}({}) = ({})", self.name, self.variable, comps.join(", "));
        if !self.declared_zeros.is_empty() {
            let items: Vec<String> = self
                .declared_zeros
                .iter()
                .map(|z| format!("{} at {} order {}", z.target.label(&self.name), z.at, z.order))
                .collect();
            out.push_str(" zeros: ");
            out.push_str(&items.join("; "));
        }
        out
    }
}

impl Serialize for ParametrizedCurve {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let comps: Vec<String> = self.components.iter().map(|e| e.to_text(&self.variable)).collect();
        let mut st = s.serialize_struct("ParametrizedCurve", 4)?;
        st.serialize_field("components", &comps)?;
        st.serialize_field("declared_zeros", &self.declared_zeros)?;
        st.serialize_field("variable", &self.variable)?;
        st.serialize_field("working_radius", &self.working_radius)?;
        st.end()
    }
}

/// Order of vanishing of `e` at `t0`: exact when the Taylor expansion is
/// representable, otherwise from numerical derivatives.
pub fn expr_order(e: &Expr, t0: &GaussRat, max: usize) -> Option<usize> {
    if let Some(s) = e.taylor(t0, max) {
        return exact_order(&s);
    }
    let z = t0.to_complex();
    let mut d = e.clone();
    let mut factorial = 1.0;
    for k in 0..=max {
        if k > 0 {
            d = d.derivative();
            factorial *= k as f64;
        }
        if d.eval(z).to_complex().norm() / factorial > NUMERIC_ZERO_TOL {
            return Some(k);
        }
    }
    None
}

/// Parse a curve such as `f(t) = (exp(t), exp(2t))` or
/// `f(t) = (t, t^2) zeros: both at 0`. Zero items are separated by `;`
/// or `,` and read `<target> at <point> [order k]`, with targets `f1`,
/// `f2`, ..., `both` (common zeros) and `f'` (zeros of the derivative).
/// An omitted order is computed.
pub fn parse_curve(text: &str) -> Result<ParametrizedCurve, NevanlinnaError> {
    let (head, tail) = match text.find("zeros:") {
        Some(k) => (&text[..k], Some((k + "zeros:".len(), &text[k + "zeros:".len()..]))),
        None => (text, None),
    };
    let (name, variable, body_start) = match head.find('=') {
        Some(eq) => {
            let lhs = head[..eq].trim();
            let (name, var) = match (lhs.find('('), lhs.ends_with(')')) {
                (Some(open), true) => (lhs[..open].trim(), lhs[open + 1..lhs.len() - 1].trim()),
                _ => (lhs, "t"),
            };
            if !is_identifier(name) || !is_identifier(var) {
                return Err(syntax_at(text, 0, format!("malformed curve header `{lhs}`")).into());
            }
            (name.to_string(), var.to_string(), eq + 1)
        }
        None => ("f".to_string(), "t".to_string(), 0),
    };
    let body = &head[body_start..];
    let mut components = Vec::new();
    for (offset, piece) in split_tuple(body) {
        let start = body_start + offset;
        let (line, col) = line_col(text, start);
        if piece.trim().is_empty() {
            return Err(syntax_at(text, start, "empty curve component".to_string()).into());
        }
        components.push(parse_expr(piece, &variable).map_err(|e| e.offset(line, col))?);
    }
    let mut curve = ParametrizedCurve::from_components(components).with_names(&name, &variable);
    if let Some((start, zeros)) = tail {
        let mut declared = Vec::new();
        let mut offset = 0;
        for item in zeros.split([';', ',']) {
            let item_start = start + offset;
            offset += item.len() + 1;
            if item.trim().is_empty() {
                continue;
            }
            declared.push(parse_zero_item(text, item_start, item, &curve)?);
        }
        curve.declared_zeros = declared;
        curve.verify()?;
    }
    Ok(curve)
}

fn parse_zero_item(
    text: &str,
    start: usize,
    item: &str,
    curve: &ParametrizedCurve,
) -> Result<DeclaredZero, NevanlinnaError> {
    let words: Vec<&str> = item.split_whitespace().collect();
    let bad = |msg: String| -> NevanlinnaError { syntax_at(text, start, msg).into() };
    if words.len() < 3 || words[1] != "at" {
        return Err(bad(format!("expected `<target> at <point> [order k]`, found `{}`", item.trim())));
    }
    let target = match words[0] {
        "both" | "all" | "common" => ZeroTarget::Common,
        w if w.ends_with('\'') || w == "derivative" => ZeroTarget::Derivative,
        w => {
            let index = w
                .strip_prefix(curve.name.as_str())
                .or_else(|| w.strip_prefix('f'))
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|k| (1..=curve.dim()).contains(k))
                .ok_or_else(|| bad(format!("unknown zero target `{w}`")))?;
            ZeroTarget::Component { index: index - 1 }
        }
    };
    let order_pos = words.iter().position(|w| *w == "order");
    let loc_text = words[2..order_pos.unwrap_or(words.len())].join(" ");
    let loc = parse_expr(&loc_text, &curve.variable)?;
    let at = loc
        .as_constant()
        .cloned()
        .ok_or_else(|| bad(format!("zero location `{loc_text}` is not a constant")))?;
    let order = match order_pos {
        Some(p) => words
            .get(p + 1)
            .and_then(|w| w.parse::<u32>().ok())
            .ok_or_else(|| bad("expected an integer after `order`".to_string()))?,
        None => {
            let found = curve.order_at(&target, &at, 64).unwrap_or(0);
            if found == 0 {
                return Err(NevanlinnaError::ZeroMismatch {
                    target: target.label(&curve.name),
                    at: at.to_string(),
                    declared: 1,
                    found: "0".to_string(),
                });
            }
            found as u32
        }
    };
    Ok(DeclaredZero { target, at, order })
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Split `(a, b, c)` at top-level commas; anything else is one piece.
fn split_tuple(body: &str) -> Vec<(usize, &str)> {
    let trimmed_start = body.len() - body.trim_start().len();
    let inner = body.trim();
    let wrapped = inner.starts_with('(') && inner.ends_with(')') && matching_close(inner) == Some(inner.len() - 1);
    if !wrapped {
        return vec![(0, body)];
    }
    let base = trimmed_start + 1;
    let inner = &inner[1..inner.len() - 1];
    let mut out = Vec::new();
    let (mut depth, mut last) = (0i32, 0);
    for (k, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((base + last, &inner[last..k]));
                last = k + 1;
            }
            _ => {}
        }
    }
    out.push((base + last, &inner[last..]));
    if out.len() == 1 {
        return vec![(0, body)];
    }
    out
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(k);
                }
            }
            _ => {}
        }
    }
    None
}

fn line_col(text: &str, byte: usize) -> (usize, usize) {
    let before = &text[..byte];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

fn syntax_at(text: &str, byte: usize, message: String) -> ParseError {
    let (line, column) = line_col(text, byte);
    ParseError::Syntax { line, column, message }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_curves_with_zero_data() {
        let c = parse_curve("f(t) = (exp(t), exp(2t))").unwrap();
        assert_eq!(c.dim(), 2);
        assert!(!c.is_algebraic());

        let c = parse_curve("f(t) = (t, t^2) zeros: both at 0").unwrap();
        assert_eq!(
            c.declared_zeros(),
            &[DeclaredZero {
                target: ZeroTarget::Common,
                at: GaussRat::from_int(0),
                order: 1
            }]
        );
        assert!(c.is_algebraic());

        let c = parse_curve("f(t) = (t^2, t - 1) zeros: f1 at 0 order 2; f2 at 1 order 1").unwrap();
        assert_eq!(c.zeros(&ZeroTarget::Component { index: 1 }), vec![(Complex64::new(1.0, 0.0), 1)]);
        let back = parse_curve(&c.to_text()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_poles_and_wrong_orders() {
        match parse_curve("f(t) = (1/t, t)") {
            Err(NevanlinnaError::Parse(ParseError::Syntax { line, column, .. })) => assert_eq!((line, column), (1, 10)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_curve("f(t) = (t^2, t) zeros: f1 at 0 order 1"),
            Err(NevanlinnaError::ZeroMismatch { .. })
        ));
        assert!(matches!(
            parse_curve("f(t) = (t, t) zeros: f1 at 1"),
            Err(NevanlinnaError::ZeroMismatch { .. })
        ));
    }
}
