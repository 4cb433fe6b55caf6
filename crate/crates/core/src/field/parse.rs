//! Parser for the prefix syntax printed by `Field`'s `Display` impl.
//!
//! ```text
//! expr   := number | "r" | "x" INT | call
//! call   := name "(" args ")"
//! name   := add | mul | div | pow | exp | log | sinh | cosh | affine | rtail
//! ```

use super::Field;
use crate::error::{Error, Result};

pub(super) fn parse(src: &str) -> Result<Field> {
    let mut p = Parser { src, pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')))
            .unwrap_or(rest.len());
        let tok = &rest[..len];
        let v: f64 = tok
            .parse()
            .map_err(|_| self.err(format!("invalid number '{tok}'")))?;
        if !v.is_finite() {
            return Err(self.err("non-finite constant"));
        }
        self.pos += len;
        Ok(v)
    }

    fn args(&mut self) -> Result<Vec<Field>> {
        self.eat('(')?;
        let mut out = vec![self.expr()?];
        while self.peek() == Some(',') {
            self.eat(',')?;
            out.push(self.expr()?);
        }
        self.eat(')')?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<Field> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                Ok(Field::constant(self.number()?))
            }
            Some(_) => self.named(),
        }
    }

    fn named(&mut self) -> Result<Field> {
        let start = self.pos;
        let name = self.ident();
        if name == "r" {
            return Ok(Field::radius());
        }
        if let Some(idx) = name.strip_prefix('x') {
            let i: usize = idx
                .parse()
                .map_err(|_| Error::Parse { pos: start, msg: format!("unknown symbol '{name}'") })?;
            if i == 0 {
                return Err(Error::Parse { pos: start, msg: "coordinates are 1-based".into() });
            }
            return Ok(Field::coord(i - 1));
        }
        let unary = |p: &mut Self| -> Result<Field> {
            let mut a = p.args()?;
            if a.len() != 1 {
                return Err(Error::Parse { pos: start, msg: format!("{name} takes one argument") });
            }
            Ok(a.remove(0))
        };
        match name {
            "add" => Ok(Field::sum(self.args()?)),
            "mul" => Ok(Field::product(self.args()?)),
            "div" => {
                let mut a = self.args()?;
                if a.len() != 2 {
                    return Err(Error::Parse { pos: start, msg: "div takes two arguments".into() });
                }
                let den = a.pop().unwrap();
                Ok(Field::quotient(a.pop().unwrap(), den))
            }
            "pow" => {
                self.eat('(')?;
                let base = self.expr()?;
                self.eat(',')?;
                let e = self.number()?;
                self.eat(')')?;
                Ok(base.powf(e))
            }
            "exp" => Ok(unary(self)?.exp()),
            "log" => Ok(unary(self)?.ln()),
            "sinh" => Ok(unary(self)?.sinh()),
            "cosh" => Ok(unary(self)?.cosh()),
            "rtail" => {
                self.eat('(')?;
                let k = self.number()?;
                self.eat(')')?;
                if k < 1.0 || k.fract() != 0.0 {
                    return Err(Error::Parse { pos: start, msg: "rtail index must be a positive integer".into() });
                }
                Ok(Field::tail_radius(k as usize - 1))
            }
            "affine" => {
                self.eat('(')?;
                let offset = self.number()?;
                let mut terms = Vec::new();
                while self.peek() == Some(',') {
                    self.eat(',')?;
                    let c = self.number()?;
                    self.eat(',')?;
                    terms.push((c, self.expr()?));
                }
                self.eat(')')?;
                Ok(Field::affine(offset, terms))
            }
            "" => Err(self.err("expected an expression")),
            other => Err(Error::Parse { pos: start, msg: format!("unknown function '{other}'") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_examples() {
        let f = parse("pow(r, -0.5)").unwrap();
        assert_eq!(f, Field::radius().powf(-0.5));
        let g = parse("mul(pow(x1, 2), exp(x1))").unwrap();
        assert_eq!(g, Field::product(vec![Field::coord(0).powf(2.0), Field::coord(0).exp()]));
    }

    #[test]
    fn round_trips_every_node_kind() {
        let src = "affine(1.5, -2.0, div(sinh(x2), cosh(rtail(2))), 0.25, log(add(3.0, mul(x1, x3))))";
        let f = parse(src).unwrap();
        let printed = f.to_string();
        assert_eq!(printed, src);
        assert_eq!(parse(&printed).unwrap(), f);
    }

    #[test]
    fn reports_errors_with_position() {
        assert!(matches!(parse("foo(x1)"), Err(Error::Parse { .. })));
        assert!(matches!(parse("x0"), Err(Error::Parse { .. })));
        assert!(matches!(parse("add(x1, x2"), Err(Error::Parse { .. })));
        assert!(matches!(parse("exp(x1, x2)"), Err(Error::Parse { .. })));
        match parse("pow(r, -0.5) junk") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 13),
            other => panic!("unexpected {other:?}"),
        }
    }
}
