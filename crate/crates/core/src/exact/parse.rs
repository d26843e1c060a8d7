//! A small infix expression parser shared by polynomial input and the
//! formal equation systems.
//!
//! Grammar: sums of products with `+ - * / ^`, parentheses, implicit
//! multiplication (`2λ∂`, `a_e(∂)(c_e(λ+∂) - c_e(-λ))`), rational literals,
//! `I` for the imaginary unit, and call syntax `name(expr)`.

use super::gauss::GaussRat;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(GaussRat),
    Ident(String),
    Call(String, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn is_symbol(c: char) -> bool {
    matches!(c, 'λ' | 'μ' | '∂' | 'α' | 'β' | 'γ')
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '∂'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '∂' || c == '\''
}

fn tokenize(src: &str) -> Result<Vec<Tok>, Error> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if is_symbol(c) {
            // `λ∂`, `∂1∂2`: symbol letters take only trailing digits
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) && !is_symbol(chars[i]) {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else if c == '·' {
            out.push(Tok::Op('*'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in `{}`", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))
        )
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Op('/')) => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ if self.starts_factor() => {
                    let rhs = self.power()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.parse().map_err(|_| self.err("bad exponent"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(self.err("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Num(GaussRat::from(GaussRat::parse_ratio(&n)?))),
            Some(Tok::Ident(name)) => {
                if name == "I" {
                    return Ok(Expr::Num(GaussRat::i()));
                }
                if let Some(Tok::Op('(')) = self.peek() {
                    self.bump();
                    let arg = self.expr()?;
                    match self.bump() {
                        Some(Tok::Op(')')) => Ok(Expr::Call(name, Box::new(arg))),
                        _ => Err(self.err("expected `)`")),
                    }
                } else {
                    Ok(Expr::Ident(name))
                }
            }
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::Op(')')) => Ok(e),
                    _ => Err(self.err("expected `)`")),
                }
            }
            _ => Err(self.err("expected a number, name or `(`")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, Error> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_products_and_calls() {
        let e = parse_expr("2a_e(∂)(c_e(λ+∂) - c_e(-λ))").unwrap();
        match e {
            Expr::Mul(lhs, rhs) => {
                assert!(matches!(*rhs, Expr::Sub(_, _)));
                assert!(matches!(*lhs, Expr::Mul(_, _)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unbalanced() {
        assert!(parse_expr("(x+1").is_err());
        assert!(parse_expr("x+").is_err());
        assert!(parse_expr("").is_err());
        assert!(parse_expr("x $ y").is_err());
    }
}
