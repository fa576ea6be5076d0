//! Parsing and canonical printing of algebra elements.
//!
//! Grammar: sums of products of factors, where a factor is a rational
//! literal (`3`, `-5/2`), a generator or macro name, an idempotent `id(v)`,
//! a declared inverse `inv(name)`, or a parenthesized expression.

use super::{AlgError, NCElement, Presentation};
use crate::Rat;
use num::{One, Signed};
use std::sync::Arc;

/// Canonical text form: words in the element's term order, unit coefficients
/// suppressed, idempotents printed as `id(v)`.
pub fn print_element(e: &NCElement) -> String {
    if e.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (w, c)) in e.terms.iter().enumerate() {
        let mag = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let name = e.pres.word_name(w);
        if mag.is_one() {
            out.push_str(&name);
        } else {
            out.push_str(&format!("{mag}*{name}"));
        }
    }
    out
}

/// Parses `input` as an element of `pres`.
pub fn parse_element(pres: &Arc<Presentation>, input: &str) -> Result<NCElement, AlgError> {
    let tokens = tokenize(input)?;
    let mut p = Parser {
        pres,
        tokens,
        pos: 0,
    };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(AlgError::Other(format!(
            "unexpected trailing input at `{}`",
            p.describe_current()
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Number(Rat),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Token>, AlgError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: Rat = s
                    .parse()
                    .map_err(|_| AlgError::Other(format!("bad number `{s}`")))?;
                out.push(Token::Number(n));
            }
            _ if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Ident(s));
            }
            _ => return Err(AlgError::Other(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    pres: &'a Arc<Presentation>,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), AlgError> {
        match self.next() {
            Some(got) if got == t => Ok(()),
            other => Err(AlgError::Other(format!(
                "expected {t:?}, found {other:?}"
            ))),
        }
    }

    fn describe_current(&self) -> String {
        match self.peek() {
            Some(t) => format!("{t:?}"),
            None => "end of input".to_string(),
        }
    }

    fn expr(&mut self) -> Result<NCElement, AlgError> {
        let mut negate = false;
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            negate = true;
        } else if let Some(Token::Plus) = self.peek() {
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(op) = self.peek().cloned() {
            match op {
                Token::Plus => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Token::Minus => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<NCElement, AlgError> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NCElement, AlgError> {
        match self.next() {
            Some(Token::Number(n)) => {
                // allow `p/q` rational literals
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Number(d)) if !num::Zero::is_zero(&d) => {
                            Ok(NCElement::scalar(self.pres, n / d))
                        }
                        other => Err(AlgError::Other(format!(
                            "expected nonzero denominator, found {other:?}"
                        ))),
                    }
                } else {
                    Ok(NCElement::scalar(self.pres, n))
                }
            }
            Some(Token::Ident(name)) if name == "id" => {
                self.expect(Token::LParen)?;
                let v = match self.next() {
                    Some(Token::Ident(v)) => v,
                    Some(Token::Number(n)) => n.to_string(),
                    other => {
                        return Err(AlgError::Other(format!(
                            "expected vertex name, found {other:?}"
                        )))
                    }
                };
                self.expect(Token::RParen)?;
                NCElement::idempotent(self.pres, &v)
            }
            Some(Token::Ident(name)) if name == "inv" => {
                self.expect(Token::LParen)?;
                let inner = match self.next() {
                    Some(Token::Ident(n)) => n,
                    other => {
                        return Err(AlgError::Other(format!(
                            "inv(...) takes a declared invertible name, found {other:?}"
                        )))
                    }
                };
                self.expect(Token::RParen)?;
                let target = self.pres.inverses.get(&inner).ok_or_else(|| {
                    AlgError::Other(format!("no declared inverse for `{inner}`"))
                })?;
                self.named(target.clone())
            }
            Some(Token::Ident(name)) => self.named(name),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            other => Err(AlgError::Other(format!(
                "expected factor, found {other:?}"
            ))),
        }
    }

    fn named(&self, name: String) -> Result<NCElement, AlgError> {
        if self.pres.gen_index(&name).is_ok() {
            return NCElement::gen(self.pres, &name);
        }
        if self.pres.macros.contains_key(&name) {
            return NCElement::macro_(self.pres, &name);
        }
        // bare vertex names double as idempotents only via id(v); reject here
        Err(AlgError::UnknownGenerator(name))
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtins;
    use super::*;

    #[test]
    fn parse_and_normalize_invrels2() {
        let p = builtins::a2_loc();
        let e = parse_element(&p, "estar*e*l").unwrap().normal_form();
        assert_eq!(e.display(), "id(1) - l");
    }

    #[test]
    fn parse_rational_coefficients() {
        let p = builtins::laurent("x");
        let e = parse_element(&p, "3/2*x - x + 1/2*x").unwrap();
        let x = NCElement::gen(&p, "x").unwrap();
        assert_eq!(e, x);
    }

    #[test]
    fn parse_inv_and_macros() {
        let p = builtins::a2_loc();
        let e = parse_element(&p, "inv(a1) - l").unwrap().normal_form();
        assert!(e.is_zero());
        let m = parse_element(&p, "a2*a2inv - id(2)").unwrap().normal_form();
        assert!(m.is_zero());
    }

    #[test]
    fn parse_negation_and_parens() {
        let p = builtins::laurent("x");
        let e = parse_element(&p, "-(x - xinv)*x").unwrap().normal_form();
        let expected = parse_element(&p, "1 - x*x").unwrap().normal_form();
        assert_eq!(e, expected);
    }

    #[test]
    fn reject_garbage() {
        let p = builtins::laurent("x");
        assert!(parse_element(&p, "x +").is_err());
        assert!(parse_element(&p, "q?").is_err());
        assert!(parse_element(&p, "y").is_err());
        assert!(parse_element(&p, "x x").is_err());
    }

    #[test]
    fn print_zero_and_coefficients() {
        let p = builtins::laurent("x");
        assert_eq!(NCElement::zero(&p).display(), "0");
        let e = parse_element(&p, "-2*x + 5/3").unwrap();
        assert_eq!(e.display(), "5/3*id(v) - 2*x");
    }
}
