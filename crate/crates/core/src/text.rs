//! Parsing of the text form of germs and divisors.
//!
//! A vector field is written `v = (x^2 + y) d/dx + (x*y) d/dy`; the
//! optional header `v(x, y) =` fixes the variable order. Without a header
//! the variables are taken in order of their `d/d·` markers, followed by any
//! remaining names used in coefficients (conventional names `x, y, z` and
//! `z1 … zn` are sorted).

use foliation_algebra::{parse_polynomial, scan_variables, GaussRat, MVPoly, ParseError};
use num_traits::Zero;

use crate::germ::{LogDivisor, VectorFieldGerm};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// 1-based line and column of a byte offset.
fn position(text: &str, byte: usize) -> (usize, usize) {
    let before = &text[..byte];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
    (line, column)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

struct Marker {
    start: usize,
    end: usize,
    var: String,
}

fn find_markers(text: &str) -> Vec<Marker> {
    let mut out = Vec::new();
    let mut from = 0;
    while let Some(k) = text[from..].find("d/d") {
        let start = from + k;
        let preceded = text[..start].chars().next_back().is_some_and(is_ident_char);
        let name: String = text[start + 3..].chars().take_while(|&c| is_ident_char(c)).collect();
        if !preceded && !name.is_empty() {
            let end = start + 3 + name.len();
            out.push(Marker { start, end, var: name });
            from = end;
        } else {
            from = start + 3;
        }
    }
    out
}

/// Split `name(vars) = body`, returning the declared variables and the
/// byte offset of the body.
fn split_header(text: &str) -> Result<(Option<Vec<String>>, usize), ParseError> {
    let Some(eq) = text.find('=') else {
        return Ok((None, 0));
    };
    let head = text[..eq].trim();
    let Some(open) = head.find('(') else {
        if head.chars().all(is_ident_char) && !head.is_empty() {
            return Ok((None, eq + 1));
        }
        let (l, c) = position(text, 0);
        return Err(syntax(l, c, "malformed header before `=`"));
    };
    let name = head[..open].trim();
    if name.is_empty() || !name.chars().all(is_ident_char) || !head.ends_with(')') {
        let (l, c) = position(text, 0);
        return Err(syntax(l, c, "malformed header before `=`"));
    }
    let vars: Vec<String> = head[open + 1..head.len() - 1]
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if vars.iter().any(|v| !v.chars().all(is_ident_char) || v == "i") {
        let (l, c) = position(text, 0);
        return Err(syntax(l, c, "malformed variable list"));
    }
    Ok((Some(vars), eq + 1))
}

fn canonical_order(mut vars: Vec<String>) -> Vec<String> {
    let rank = |v: &str| -> Option<usize> {
        match v {
            "x" => Some(1),
            "y" => Some(2),
            "z" => Some(3),
            _ => v.strip_prefix('z').and_then(|d| d.parse::<usize>().ok()).map(|k| 100 + k),
        }
    };
    if vars.iter().all(|v| rank(v).is_some()) {
        vars.sort_by_key(|v| rank(v));
    }
    vars
}

/// Parse the text form of a vector field germ.
pub fn parse_vector_field(text: &str) -> Result<VectorFieldGerm, ParseError> {
    let (declared, body_start) = split_header(text)?;
    let body = &text[body_start..];
    let markers = find_markers(body);
    let vars = match declared {
        Some(v) => v,
        None => {
            let mut vars: Vec<String> = Vec::new();
            for m in &markers {
                if !vars.contains(&m.var) {
                    vars.push(m.var.clone());
                }
            }
            let mut rest = body.to_string();
            for m in markers.iter().rev() {
                rest.replace_range(m.start..m.end, &" ".repeat(m.end - m.start));
            }
            for name in scan_variables(&rest).map_err(|e| relocate(text, body_start, e))? {
                if !vars.contains(&name) {
                    vars.push(name);
                }
            }
            canonical_order(vars)
        }
    };
    if vars.is_empty() {
        let (l, c) = position(text, body_start);
        return Err(syntax(l, c, "no variables: add a header such as `v(x, y) =`"));
    }
    let n = vars.len();
    let mut components = vec![MVPoly::zero(n); n];
    if markers.is_empty() {
        let trimmed = body.trim();
        if trimmed == "0" {
            return VectorFieldGerm::new(vars, components).map_err(|e| syntax(1, 1, e.to_string()));
        }
        let (l, c) = position(text, body_start);
        return Err(syntax(l, c, "expected terms of the form `(p) d/dx`"));
    }
    let mut seg_start = 0;
    for m in &markers {
        let segment = &body[seg_start..m.start];
        let coefficient = parse_coefficient(segment, &vars)
            .map_err(|e| relocate(text, body_start + seg_start, e))?;
        let Some(slot) = vars.iter().position(|v| *v == m.var) else {
            let (l, c) = position(text, body_start + m.start);
            return Err(syntax(l, c, format!("`d/d{}` names an undeclared variable", m.var)));
        };
        components[slot] = &components[slot] + &coefficient;
        seg_start = m.end;
    }
    let tail = &body[markers.last().expect("nonempty").end..];
    if !tail.trim().is_empty() {
        let offset = body_start + markers.last().expect("nonempty").end + (tail.len() - tail.trim_start().len());
        let (l, c) = position(text, offset);
        return Err(syntax(l, c, "trailing input after the last `d/d` marker"));
    }
    VectorFieldGerm::new(vars, components).map_err(|e| syntax(1, 1, e.to_string()))
}

fn relocate(text: &str, offset: usize, e: ParseError) -> ParseError {
    let (l, c) = position(text, offset);
    e.offset(l, c)
}

/// A coefficient segment: a polynomial, a bare sign, or nothing (`1`).
fn parse_coefficient(segment: &str, vars: &[String]) -> Result<MVPoly, ParseError> {
    let n = vars.len();
    let t = segment.trim();
    match t {
        "" | "+" => return Ok(MVPoly::one(n)),
        "-" => return Ok(MVPoly::constant(n, -GaussRat::from_int(1))),
        _ => {}
    }
    // position errors relative to the segment start, not the trimmed text
    let lead = segment.len() - segment.trim_start().len();
    parse_polynomial(t, vars).map_err(|e| {
        let (l, c) = position(segment, lead);
        e.offset(l, c)
    })
}

/// Parse `D = {1, 2}`, `{1,2}` or `1,2` (1-based axes) into original
/// divisor components.
pub fn parse_divisor(text: &str) -> Result<LogDivisor, ParseError> {
    let body = match text.find('=') {
        Some(eq) => &text[eq + 1..],
        None => text,
    };
    let inner = body.trim().trim_start_matches('{').trim_end_matches('}');
    let mut axes = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let k: usize = part
            .parse()
            .map_err(|_| syntax(1, 1, format!("divisor axis `{part}` is not a positive integer")))?;
        if k == 0 {
            return Err(syntax(1, 1, "divisor axes are numbered from 1"));
        }
        axes.push(k - 1);
    }
    Ok(LogDivisor::original(&axes))
}

/// Parse a point given as comma-separated polynomial constants.
pub fn parse_point(text: &str) -> Result<Vec<GaussRat>, ParseError> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    inner
        .split(',')
        .map(|s| {
            let p = parse_polynomial(s.trim(), &[])?;
            if p.is_zero() {
                Ok(GaussRat::zero())
            } else {
                Ok(p.constant_term())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_forms() {
        let v = parse_vector_field("v = (x^2 + y) d/dx + (x*y) d/dy").unwrap();
        assert_eq!(v.variables(), ["x", "y"]);
        assert_eq!(v.to_text(), "v(x, y) = (x^2 + y) d/dx + (x*y) d/dy");
        let w = parse_vector_field("v = (i*x) d/dx - y d/dy").unwrap();
        assert_eq!(w.component(0).coeff(&[1, 0]), GaussRat::i());
        assert_eq!(w.component(1).coeff(&[0, 1]), GaussRat::from_int(-1));
        assert_eq!(parse_vector_field(&w.to_text()).unwrap(), w);
        let u = parse_vector_field("v = d/dy + x d/dx").unwrap();
        assert_eq!(u.variables(), ["x", "y"]);
        assert!(u.component(1).is_constant());
    }

    #[test]
    fn reports_errors_with_positions() {
        match parse_vector_field("v = exp(x) d/dx") {
            Err(ParseError::NonPolynomial { line: 1, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_vector_field("v = (x +) d/dx") {
            Err(ParseError::Syntax { line: 1, column: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_vector_field("v(x) = y d/dx").is_err());
        assert!(parse_vector_field("v = x").is_err());
    }

    #[test]
    fn header_and_zero_field() {
        let v = parse_vector_field("v(y, x) = x d/dy").unwrap();
        assert_eq!(v.variables(), ["y", "x"]);
        let z = parse_vector_field("v(x, y) = 0").unwrap();
        assert!(z.is_zero());
        assert_eq!(parse_divisor("D = {1, 2}").unwrap().axes(), vec![0, 1]);
        assert_eq!(parse_point("(1/2, -i)").unwrap(), vec![GaussRat::from_ratio(1, 2), -GaussRat::i()]);
    }
}
