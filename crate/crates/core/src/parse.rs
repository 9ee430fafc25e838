//! Text syntax for polynomials and presentation matrices.
//!
//! Polynomials: identifiers for variables, `^` for powers, optional `*`,
//! integer or `p/q` coefficients, parentheses. Example: `3*x*z-2y^2`.
//! Matrices: rows in brackets, `[[x,y],[y,-x]]`; columns are relations.

use std::fmt;

use num_bigint::BigInt;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A positioned syntax error. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Character cursor over a whole document; errors carry absolute positions.
pub struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn set_pos(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn error_at(&self, pos: usize, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let before = &self.src[..pos.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn error(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        self.error_at(self.pos, message, expected)
    }

    /// Skips whitespace and `#`/`//` comments.
    pub fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.pos += rest.len() - trimmed.len();
            if trimmed.starts_with('#') || trimmed.starts_with("//") {
                let end = trimmed.find('\n').unwrap_or(trimmed.len());
                self.pos += end;
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |c| format!("`{c}`"));
            Err(self.error(format!("unexpected {found}"), &[&format!("`{c}`")]))
        }
    }

    pub fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    /// Consumes `word` if it is the next identifier.
    pub fn keyword(&mut self, word: &str) -> bool {
        let save = self.pos;
        match self.ident() {
            Some(w) if w == word => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some(&rest[..end])
    }

    pub fn unsigned(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected an integer", &["integer"]))?;
        d.parse().map_err(|_| self.error_at(start, "integer too large", &[]))
    }
}

/// Parses polynomials over a fixed variable list.
pub struct PolyParser<'v> {
    vars: &'v [String],
    order: MonomialOrder,
}

const TERM_START: &[&str] = &["number", "variable", "`(`", "`-`"];

impl<'v> PolyParser<'v> {
    pub fn new(vars: &'v [String], order: MonomialOrder) -> Self {
        PolyParser { vars, order }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    pub fn parse_expr(&self, cur: &mut Cursor<'_>) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero(self.n(), self.order.clone());
        let mut first = true;
        loop {
            let neg = if cur.eat('-') {
                true
            } else if cur.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.parse_term(cur)?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn starts_factor(&self, cur: &mut Cursor<'_>) -> bool {
        matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(')
    }

    fn parse_term(&self, cur: &mut Cursor<'_>) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_factor(cur)?;
        loop {
            // `*` is optional between factors
            if cur.eat('*') || self.starts_factor(cur) {
                let f = self.parse_factor(cur)?;
                acc = &acc * &f;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_power(&self, cur: &mut Cursor<'_>) -> Result<u32, ParseError> {
        if cur.eat('^') {
            let start = cur.pos();
            let e = cur.unsigned()?;
            u16::try_from(e).map_err(|_| cur.error_at(start, "exponent overflow", &[]))?;
            Ok(e as u32)
        } else {
            Ok(1)
        }
    }

    fn parse_factor(&self, cur: &mut Cursor<'_>) -> Result<Polynomial, ParseError> {
        let c = cur.peek();
        let start = cur.pos();
        match c {
            Some(d) if d.is_ascii_digit() => {
                let num: BigInt = cur.digits().unwrap().parse().unwrap();
                let mut q = Rational::from_bigint(num);
                let save = cur.pos();
                if cur.eat('/') {
                    match cur.digits() {
                        Some(den) => {
                            let den: BigInt = den.parse().unwrap();
                            if den == BigInt::from(0) {
                                return Err(cur.error_at(save, "division by zero", &[]));
                            }
                            q = &q / &Rational::from_bigint(den);
                        }
                        None => {
                            return Err(cur.error("only numeric denominators are allowed", &["integer"]))
                        }
                    }
                }
                let e = self.parse_power(cur)?;
                let mut r = Rational::one();
                for _ in 0..e {
                    r = &r * &q;
                }
                Ok(Polynomial::constant(self.n(), self.order.clone(), r))
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == '_' => {
                let name = cur.ident().unwrap();
                let idx = self.vars.iter().position(|v| v == name).ok_or_else(|| {
                    let expected: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
                    cur.error_at(start, format!("unknown variable `{name}`"), &expected)
                })?;
                let e = self.parse_power(cur)?;
                Ok(Polynomial::monomial(
                    self.n(),
                    self.order.clone(),
                    Monomial::var(self.n(), idx, e as u16),
                    Rational::one(),
                ))
            }
            Some('(') => {
                cur.expect('(')?;
                let inner = self.parse_expr(cur)?;
                cur.expect(')')?;
                let e = self.parse_power(cur)?;
                Ok(inner.pow(e))
            }
            Some(other) => Err(cur.error(format!("unexpected `{other}`"), TERM_START)),
            None => Err(cur.error("unexpected end of input", TERM_START)),
        }
    }

    /// `[[a,b],[c,d]]` into row-major rows.
    pub fn parse_matrix(&self, cur: &mut Cursor<'_>) -> Result<Vec<Vec<Polynomial>>, ParseError> {
        let start = cur.pos();
        cur.expect('[')?;
        let mut rows = Vec::new();
        if !cur.eat(']') {
            loop {
                cur.expect('[')?;
                let mut row = Vec::new();
                if !cur.eat(']') {
                    loop {
                        row.push(self.parse_expr(cur)?);
                        if cur.eat(']') {
                            break;
                        }
                        cur.expect(',')?;
                    }
                }
                rows.push(row);
                if cur.eat(']') {
                    break;
                }
                cur.expect(',')?;
            }
        }
        if let Some(w) = rows.first().map(|r| r.len()) {
            if rows.iter().any(|r| r.len() != w) {
                return Err(cur.error_at(start, "matrix rows have different lengths", &[]));
            }
        }
        Ok(rows)
    }
}

/// Parses a complete polynomial string.
pub fn parse_polynomial(
    text: &str,
    vars: &[String],
    order: &MonomialOrder,
) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(text);
    let p = PolyParser::new(vars, order.clone()).parse_expr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input", &["`+`", "`-`", "`*`", "end of input"]));
    }
    Ok(p)
}

/// Parses a complete matrix string.
pub fn parse_matrix(
    text: &str,
    vars: &[String],
    order: &MonomialOrder,
) -> Result<Vec<Vec<Polynomial>>, ParseError> {
    let mut cur = Cursor::new(text);
    let m = PolyParser::new(vars, order.clone()).parse_matrix(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input", &["end of input"]));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn implicit_multiplication_and_rationals() {
        let vars = v(&["x", "y", "z"]);
        let o = MonomialOrder::DegRevLex;
        let a = parse_polynomial("3*x*z-2y^2", &vars, &o).unwrap();
        let b = parse_polynomial("3 x z - 2*y*y", &vars, &o).unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial("1/2*x + 1/2 x", &vars, &o).unwrap();
        assert_eq!(c, parse_polynomial("x", &vars, &o).unwrap());
        let d = parse_polynomial("(x+y)^2", &vars, &o).unwrap();
        assert_eq!(d, parse_polynomial("x^2+2*x*y+y^2", &vars, &o).unwrap());
    }

    #[test]
    fn unknown_variable_is_positioned() {
        let vars = v(&["x", "y"]);
        let e = parse_polynomial("x +\n  w^2", &vars, &MonomialOrder::DegRevLex).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("unknown variable `w`"));
        assert_eq!(e.expected, vec!["x", "y"]);
    }

    #[test]
    fn malformed_inputs() {
        let vars = v(&["x"]);
        let o = MonomialOrder::DegRevLex;
        assert!(parse_polynomial("x^", &vars, &o).is_err());
        assert!(parse_polynomial("x+", &vars, &o).is_err());
        assert!(parse_polynomial("1/0", &vars, &o).is_err());
        assert!(parse_polynomial("x/x", &vars, &o).is_err());
        assert!(parse_polynomial("x)", &vars, &o).is_err());
        assert!(parse_polynomial("x^70000", &vars, &o).is_err());
    }

    #[test]
    fn matrices() {
        let vars = v(&["x", "y"]);
        let o = MonomialOrder::DegRevLex;
        let m = parse_matrix("[[x,y],[y,-x]]", &vars, &o).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[1][1], parse_polynomial("-x", &vars, &o).unwrap());
        assert!(parse_matrix("[[x,y],[y]]", &vars, &o).is_err());
        assert_eq!(parse_matrix("[]", &vars, &o).unwrap().len(), 0);
    }
}
