//! Text syntax for forms: `a1^b2 - a2^b1`, `(1/(1+m))*(e1^e2 - m*e3^e4)`.
//!
//! `^` and `*` both multiply in the exterior algebra (a scalar is a 0-form),
//! `/` divides by a nonzero 0-form, `**` raises to a nonnegative integer power.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::form::{mask_indices, InvariantForm};
use crate::coeff::{Scalar, SymbolTable};
use crate::error::{Error, Result};

/// Names needed to resolve identifiers in an expression.
#[derive(Clone, Copy)]
pub struct ExprScope<'a> {
    pub generators: &'a [String],
    pub symbols: &'a SymbolTable,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(BigRational),
    Plus,
    Minus,
    Star,
    Pow,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' if chars.get(i + 1) == Some(&'*') => {
                out.push((Tok::Pow, col));
                i += 1;
            }
            '*' => out.push((Tok::Star, col)),
            '^' => out.push((Tok::Caret, col)),
            '/' => out.push((Tok::Slash, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Num(parse_decimal(&s).ok_or_else(|| Error::parse(0, col, format!("bad number `{s}`")))?), col));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => return Err(Error::parse(0, col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if int.is_empty() && frac.is_empty() || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(n, den))
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    scope: ExprScope<'a>,
    dim: usize,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(0, self.col(), msg)
    }

    fn expr(&mut self) -> Result<InvariantForm> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<InvariantForm> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) | Some(Tok::Caret) => {
                    self.pos += 1;
                    acc = acc.wedge(&self.unary()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let rhs = self.unary()?;
                    let s = as_scalar(&rhs).ok_or_else(|| Error::parse(0, col, "division by a form of positive degree"))?;
                    let inv = s.recip().map_err(|_| Error::parse(0, col, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<InvariantForm> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Pow) {
            self.pos += 1;
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Num(q), _)) if q.is_integer() && *q >= BigRational::zero() => {
                    let e: usize = q.to_integer().try_into().map_err(|_| Error::parse(0, col, "exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.wedge_power(e));
                }
                _ => return Err(Error::parse(0, col, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<InvariantForm> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Num(q), _)) => {
                self.pos += 1;
                Ok(InvariantForm::scalar(self.dim, Scalar::from_rational(q)))
            }
            Some((Tok::Ident(name), _)) => {
                self.pos += 1;
                if let Some(g) = self.scope.generators.iter().position(|x| *x == name) {
                    Ok(InvariantForm::generator(self.dim, g))
                } else if let Some(s) = self.scope.symbols.index_of(&name) {
                    Ok(InvariantForm::scalar(self.dim, Scalar::var(s)))
                } else {
                    Err(Error::parse(0, col, format!("unknown identifier `{name}`")))
                }
            }
            Some((Tok::LParen, _)) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some((t, _)) => Err(Error::parse(0, col, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(0, col, "unexpected end of expression")),
        }
    }
}

fn as_scalar(f: &InvariantForm) -> Option<Scalar> {
    if f.terms().all(|(m, _)| m == 0) {
        Some(f.coeff(0))
    } else {
        None
    }
}

/// Parses a form expression. Parse errors report line 0 and a 1-based column
/// within `text`; callers embedding the expression adjust the position.
pub fn parse_form(text: &str, scope: ExprScope<'_>) -> Result<InvariantForm> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::parse(0, 1, "empty expression"));
    }
    let dim = scope.generators.len();
    let mut p = Parser { toks, pos: 0, scope, dim, end_col: text.chars().count() + 1 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

/// Parses an expression that must evaluate to a 0-form.
pub fn parse_scalar(text: &str, scope: ExprScope<'_>) -> Result<Scalar> {
    let f = parse_form(text, scope)?;
    as_scalar(&f).ok_or_else(|| Error::parse(0, 1, "expected a scalar expression"))
}

/// Renders a form in the expression syntax, terms in graded basis order.
pub fn render_form(f: &InvariantForm, generators: &[String], symbol: &dyn Fn(usize) -> String) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mask, c)) in f.sorted_terms().into_iter().enumerate() {
        let mono: Vec<&str> = mask_indices(mask).into_iter().map(|g| generators[g].as_str()).collect();
        let mono = mono.join("^");
        let (neg, coeff) = if c.is_compound() {
            (false, format!("({})", c.render(symbol)))
        } else {
            let s = c.render(symbol);
            match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            }
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&coeff);
        } else if coeff == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&coeff);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

/// Renders using the scope's names.
pub fn render_in(f: &InvariantForm, scope: ExprScope<'_>) -> String {
    render_form(f, scope.generators, &|v| scope.symbols.name(v).to_string())
}

/// Renders a scalar using the scope's names.
pub fn render_scalar(s: &Scalar, symbols: &SymbolTable) -> String {
    s.render(&|v| symbols.name(v).to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::SymbolKind;
    use crate::forms::form::mask_from_indices;

    fn scope_fixture() -> (Vec<String>, SymbolTable) {
        let gens = ["e1", "e2", "e3", "e4"].iter().map(|s| s.to_string()).collect();
        let mut t = SymbolTable::new();
        t.declare("m", SymbolKind::Function).unwrap();
        t.declare("c", SymbolKind::Parameter).unwrap();
        (gens, t)
    }

    #[test]
    fn parses_wedges_and_scalars() {
        let (g, t) = scope_fixture();
        let scope = ExprScope { generators: &g, symbols: &t };
        let f = parse_form("e1^e2 - e3^e4", scope).unwrap();
        assert_eq!(f.coeff(mask_from_indices(&[0, 1])), Scalar::one());
        assert_eq!(f.coeff(mask_from_indices(&[2, 3])), -Scalar::one());
        let h = parse_form("(1/(1+m))*(e1^e2 - e3^e4 + e1^e4 - m*e2^e3)", scope).unwrap();
        let inv = (&Scalar::one() + &Scalar::var(0)).recip().unwrap();
        assert_eq!(h.coeff(mask_from_indices(&[1, 2])), -(&inv * &Scalar::var(0)));
        assert_eq!(h.coeff(mask_from_indices(&[0, 3])), inv);
    }

    #[test]
    fn self_wedge_vanishes() {
        let (g, t) = scope_fixture();
        let scope = ExprScope { generators: &g, symbols: &t };
        assert!(parse_form("e1^e1", scope).unwrap().is_zero());
        assert_eq!(parse_form("e2^e1", scope).unwrap(), -&parse_form("e1^e2", scope).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let (g, t) = scope_fixture();
        let scope = ExprScope { generators: &g, symbols: &t };
        assert!(matches!(parse_form("e1 ^ x9", scope), Err(Error::Parse { column: 6, .. })));
        assert!(matches!(parse_form("e1 / e2", scope), Err(Error::Parse { .. })));
        assert!(matches!(parse_form("(e1", scope), Err(Error::Parse { .. })));
        assert!(matches!(parse_form("1/(m-m)", scope), Err(Error::Parse { .. })));
        assert!(matches!(parse_form("", scope), Err(Error::Parse { .. })));
    }

    #[test]
    fn decimals_and_powers() {
        let (g, t) = scope_fixture();
        let scope = ExprScope { generators: &g, symbols: &t };
        assert_eq!(parse_scalar("0.25", scope).unwrap(), Scalar::from_ratio(1, 4));
        assert_eq!(parse_scalar("m**3", scope).unwrap(), Scalar::var(0).pow(3));
    }

    #[test]
    fn render_round_trip() {
        let (g, t) = scope_fixture();
        let scope = ExprScope { generators: &g, symbols: &t };
        for text in [
            "e1^e2 - e3^e4",
            "2*c*e1^e2^e3 - m**2*e4",
            "(1/(1+m))*(e1^e2 - e3^e4 + e1^e4 - m*e2^e3)",
            "(1/(1-m))*(e1^e2 + e3^e4 + e1^e4 - m*e2^e3)",
            "-3/7 + c*m*e1 - (m - c)/(m*c + 2)*e2^e4",
        ] {
            let f = parse_form(text, scope).unwrap();
            let rendered = render_in(&f, scope);
            assert_eq!(parse_form(&rendered, scope).unwrap(), f, "{text} -> {rendered}");
        }
    }
}
