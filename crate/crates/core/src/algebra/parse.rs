//! Text syntax for elements.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' int)?
//! atom  := int | 'u' | name | gen '(' label (',' label)* ')' | '(' expr ')'
//! ```
//!
//! `u` is the central unit and may take negative exponents. Generators are
//! `a(i,j) c(x,i) d(i,x) e(x,y) f(x)` and the stabilization symbols `s(k,i)`
//! and `t(k,i)`. Any other bare name is a free degree-0 variable. `#` starts a
//! comment running to end of line.

use num_bigint::BigInt;

use super::element::Element;
use super::laurent::LaurentPoly;
use super::symbol::{Label, Symbol};
use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str, line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        let col = k + 1;
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        let single = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line, col });
            k += 1;
            continue;
        }
        if ch.is_ascii_alphanumeric() || ch == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            let word: String = chars[start..k].iter().collect();
            let tok = if word.bytes().all(|b| b.is_ascii_digit()) {
                Tok::Int(word.parse().expect("decimal digits"))
            } else {
                Tok::Name(word)
            };
            out.push(Spanned { tok, line, col });
            continue;
        }
        return Err(ParseError::new(line, col, format!("unexpected character {ch:?}")));
    }
    out.push(Spanned { tok: Tok::Eof, line, col: chars.len() + 1 });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::new(t.line, t.col, msg)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.next();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Element, ParseError> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        match self.next().tok {
            Tok::Int(n) => {
                let v: i64 = n.try_into().map_err(|_| self.err_here("exponent out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err_here("expected integer exponent")),
        }
    }

    fn power(&mut self) -> Result<Element, ParseError> {
        let is_mu = matches!(self.peek(), Tok::Name(n) if n == "u");
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let exp = self.exponent()?;
        if is_mu {
            return Ok(Element::scalar(LaurentPoly::monomial(1, exp)));
        }
        if exp < 0 {
            return Err(self.err_here("negative exponent is only allowed on u"));
        }
        let mut acc = Element::one();
        for _ in 0..exp {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        match self.next().tok {
            Tok::Int(n) => Ok(Label::new(n.to_string())),
            Tok::Name(s) => Ok(Label::new(s)),
            _ => Err(self.err_here("expected label")),
        }
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        match self.next().tok {
            Tok::Int(n) => n.try_into().map_err(|_| self.err_here("index out of range")),
            _ => Err(self.err_here("expected integer index")),
        }
    }

    fn args2(&mut self) -> Result<(Label, Label), ParseError> {
        self.expect(Tok::LParen, "'('")?;
        let x = self.label()?;
        self.expect(Tok::Comma, "','")?;
        let y = self.label()?;
        self.expect(Tok::RParen, "')'")?;
        Ok((x, y))
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        let start = self.pos;
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Element::scalar(LaurentPoly::constant(n))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Name(name) => {
                if *self.peek() != Tok::LParen {
                    if name == "u" {
                        return Ok(Element::mu());
                    }
                    if name.as_bytes()[0].is_ascii_digit() {
                        return Err(ParseError::new(t.line, t.col, format!("invalid name {name:?}")));
                    }
                    return Ok(Element::symbol(Symbol::Var(Label::new(name))));
                }
                let sym = match name.as_str() {
                    "a" => {
                        let (i, j) = self.args2()?;
                        return Ok(Element::arc_pair(i, j));
                    }
                    "c" => {
                        let (x, i) = self.args2()?;
                        Symbol::C(x, i)
                    }
                    "d" => {
                        let (i, x) = self.args2()?;
                        Symbol::D(i, x)
                    }
                    "e" => {
                        let (x, y) = self.args2()?;
                        Symbol::E(x, y)
                    }
                    "f" => {
                        self.expect(Tok::LParen, "'('")?;
                        let x = self.label()?;
                        self.expect(Tok::RParen, "')'")?;
                        Symbol::F(x)
                    }
                    "s" | "t" => {
                        self.expect(Tok::LParen, "'('")?;
                        let pair = self.small_int()?;
                        self.expect(Tok::Comma, "','")?;
                        let degree = self.small_int()?;
                        self.expect(Tok::RParen, "')'")?;
                        if name == "s" {
                            Symbol::StabHi { pair, degree }
                        } else {
                            Symbol::StabLo { pair, degree }
                        }
                    }
                    _ => {
                        self.pos = start;
                        return Err(self.err_here(format!("unknown generator {name:?}")));
                    }
                };
                Ok(Element::symbol(sym))
            }
            _ => {
                self.pos = start;
                Err(self.err_here("expected a term"))
            }
        }
    }
}

fn parse_line(src: &str, line: usize) -> Result<Element, ParseError> {
    let toks = lex(src, line)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses one element. Newlines are treated as whitespace.
pub fn parse_element(src: &str) -> Result<Element, ParseError> {
    let joined: String = src.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join(" ");
    parse_line(&joined, 1)
}

/// A relation line, optionally named with a `name:` prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedElement {
    pub name: String,
    pub element: Element,
}

/// Parses one element per non-blank line. Unnamed lines are named `r1`, `r2`, ...
/// by their position among relation lines.
pub fn parse_lines(src: &str) -> Result<Vec<NamedElement>, ParseError> {
    let mut out = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let (name, expr, offset) = match body.find(':') {
            Some(p) => {
                let name = body[..p].trim();
                if !Label::is_valid(name) {
                    let col = body[..p].find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1;
                    return Err(ParseError::new(line_no, col, format!("invalid relation name {name:?}")));
                }
                (name.to_string(), &body[p + 1..], body[..=p].chars().count())
            }
            None => (format!("r{}", out.len() + 1), body, 0),
        };
        let element = parse_line(expr, line_no).map_err(|mut e| {
            e.col += offset;
            e
        })?;
        out.push(NamedElement { name, element });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;

    fn var(s: &str) -> Element {
        Element::symbol(Symbol::var(s))
    }

    #[test]
    fn relation_with_free_names() {
        let e = parse_element("u*(1+u) + x - y*x").unwrap();
        let mu = Element::mu();
        let expect = &(&(&mu * &(&Element::one() + &mu)) + &var("x")) - &(&var("y") * &var("x"));
        assert_eq!(e, expect);
    }

    #[test]
    fn inverse_power_and_word_order() {
        let e = parse_element("u^-1*x*y*x").unwrap();
        let w = Word::new(vec![Symbol::var("x"), Symbol::var("y"), Symbol::var("x")]);
        assert_eq!(e.coeff(&w), LaurentPoly::monomial(1, -1));
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn diagonal_generator_parses_to_scalar() {
        assert_eq!(parse_element("a(3,3)").unwrap(), Element::scalar(LaurentPoly::one_plus_mu()));
    }

    #[test]
    fn comments_and_names() {
        let src = "# header\nrel1: x - 1  # trailing\n\n y\n";
        let rels = parse_lines(src).unwrap();
        assert_eq!(rels.len(), 2);
        assert_eq!(rels[0].name, "rel1");
        assert_eq!(rels[1].name, "r2");
        assert!(parse_lines("").unwrap().is_empty());
    }

    #[test]
    fn error_positions() {
        let err = parse_lines("x + y\nx + * y\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 5));
        let err = parse_element("g(1,2)").unwrap_err();
        assert!(err.message.contains("unknown generator"));
        let err = parse_lines("r: x + $").unwrap_err();
        assert_eq!((err.line, err.col), (1, 8));
    }

    #[test]
    fn generator_atoms() {
        let e = parse_element("c(A,1)*a(1,2) - d(2,B) + e(A,B) + f(A) + s(0,1) + t(0,1)").unwrap();
        assert_eq!(e.len(), 6);
        assert_eq!(e.to_string(), "-d(2,B) + e(A,B) + f(A) + s(0,1) + t(0,1) + c(A,1)*a(1,2)");
    }
}
