//! Text forms of groups and functors.
//!
//! Functor grammar, loosest first:
//!
//! ```text
//! sum  := prod ('+' prod)*
//! prod := comp ('*' comp)*
//! comp := atom ('o' comp)?
//! atom := '(' sum ')' | NAME '^' INT | 'Id' | 'ker(' NAT ')' | 'coker(' NAT ')'
//! NAT  := IDENT '(' INT ')'
//! ```
//!
//! with `NAME` one of `Z T SP L G Lie SLie J Y E W` (`Z^k` is the constant
//! functor, `L` is the exterior power, `G` the divided power).

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::functors::{canonical_nat_trans, PolyFunctor};
use crate::zlinalg::FgAbGroup;

pub fn parse_group(text: &str) -> Result<FgAbGroup> {
    text.parse()
}

pub fn parse_functor(text: &str) -> Result<PolyFunctor> {
    let mut p = Parser { s: text, pos: 0 };
    let f = p.sum()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

impl FromStr for PolyFunctor {
    type Err = Error;

    fn from_str(s: &str) -> Result<PolyFunctor> {
        parse_functor(s)
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                if self.pos == start && c.is_ascii_digit() {
                    break;
                }
                self.pos += 1;
            } else {
                break;
            }
        }
        (self.pos > start).then(|| &self.s[start..self.pos])
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.s[start..self.pos].parse().map_err(|_| Error::ParseError {
            pos: start,
            msg: "expected a non-negative integer".into(),
        })
    }

    /// True if the next token is the composition operator `o`.
    fn at_compose(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        rest.starts_with('o')
            && !rest[1..]
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    fn sum(&mut self) -> Result<PolyFunctor> {
        let mut f = self.prod()?;
        while self.eat('+') {
            let g = self.prod()?;
            f = PolyFunctor::direct_sum(&f, &g);
        }
        Ok(f)
    }

    fn prod(&mut self) -> Result<PolyFunctor> {
        let mut f = self.comp()?;
        while self.eat('*') {
            let g = self.comp()?;
            f = PolyFunctor::tensor_product(&f, &g);
        }
        Ok(f)
    }

    fn comp(&mut self) -> Result<PolyFunctor> {
        let f = self.atom()?;
        if self.at_compose() {
            self.pos += 1;
            let g = self.comp()?;
            return Ok(PolyFunctor::compose(&f, &g));
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<PolyFunctor> {
        if self.eat('(') {
            let f = self.sum()?;
            self.expect(')')?;
            return Ok(f);
        }
        let start = self.pos;
        let Some(name) = self.ident().map(str::to_string) else {
            return Err(self.error("expected a functor"));
        };
        match name.as_str() {
            "Id" => return Ok(PolyFunctor::identity()),
            "ker" | "coker" => {
                self.expect('(')?;
                let at = self.pos;
                let t = self.ident().map(str::to_string).ok_or_else(|| self.error("expected a transformation name"))?;
                self.expect('(')?;
                let n = self.int()?;
                self.expect(')')?;
                self.expect(')')?;
                let t = canonical_nat_trans(&t, n).map_err(|e| match e {
                    Error::UnknownName(s) => Error::ParseError {
                        pos: at,
                        msg: format!("unknown transformation {s}"),
                    },
                    e => e,
                })?;
                return Ok(if name == "ker" {
                    PolyFunctor::kernel_functor(&t)
                } else {
                    PolyFunctor::cokernel_functor(&t)
                });
            }
            _ => {}
        }
        let n = if self.eat('^') {
            self.int()?
        } else if name == "Z" {
            1
        } else {
            return Err(self.error("expected '^'"));
        };
        let min = match name.as_str() {
            "Z" => 0,
            "J" | "Y" | "E" => 2,
            _ => 1,
        };
        if n < min {
            return Err(Error::ParseError {
                pos: start,
                msg: format!("{name} needs degree at least {min}"),
            });
        }
        Ok(match name.as_str() {
            "Z" => PolyFunctor::constant(n),
            "T" => PolyFunctor::tensor(n),
            "SP" => PolyFunctor::sym(n),
            "L" => PolyFunctor::ext(n),
            "G" => PolyFunctor::div(n),
            "Lie" => PolyFunctor::lie(n),
            "SLie" => PolyFunctor::superlie(n)?,
            "J" => PolyFunctor::schur_j(n),
            "Y" => PolyFunctor::schur_y(n),
            "E" => PolyFunctor::schur_e(n),
            "W" => PolyFunctor::w(n),
            _ => {
                return Err(Error::ParseError {
                    pos: start,
                    msg: format!("unknown functor {name}"),
                })
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let f = parse_functor("SP^2 + L^2 * G^2 o T^2").unwrap();
        assert_eq!(f.to_string(), "SP^2 + L^2 * G^2 o T^2");
        assert_eq!(f.degree(), 6);
        let g = parse_functor("(SP^2 + L^2) o Id").unwrap();
        assert_eq!(g.to_string(), "(SP^2 + L^2) o Id");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_functor("L^2 o Foo^3") {
            Err(Error::ParseError { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_functor("L^2 )"), Err(Error::ParseError { pos: 4, .. })));
        assert!(matches!(parse_functor("J^1"), Err(Error::ParseError { .. })));
    }
}
