//! Construction expressions.
//!
//! ```text
//! expr := simplex(d) | cube(d) | cross(d) | dual(expr) | pyramid(expr)
//!       | join(expr,expr) | truncate(expr,v) | sum(expr,expr,fp,fq) | stacked(d,k)
//! ```
//!
//! Whitespace between tokens is ignored; the normalized form has none.

use std::fmt;

use crate::constructions::{self, PolytopeSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Simplex(usize),
    Cube(usize),
    Cross(usize),
    Dual(Box<Expr>),
    Pyramid(Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Truncate(Box<Expr>, usize),
    Sum(Box<Expr>, Box<Expr>, usize, usize),
    Stacked(usize, usize),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Simplex(d) => write!(f, "simplex({d})"),
            Expr::Cube(d) => write!(f, "cube({d})"),
            Expr::Cross(d) => write!(f, "cross({d})"),
            Expr::Dual(e) => write!(f, "dual({e})"),
            Expr::Pyramid(e) => write!(f, "pyramid({e})"),
            Expr::Join(a, b) => write!(f, "join({a},{b})"),
            Expr::Truncate(e, v) => write!(f, "truncate({e},{v})"),
            Expr::Sum(a, b, fp, fq) => write!(f, "sum({a},{b},{fp},{fq})"),
            Expr::Stacked(d, k) => write!(f, "stacked({d},{k})"),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut parser = Parser { text, pos: 0 };
        let expr = parser.expr()?;
        parser.skip_ws();
        if parser.pos < text.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(expr)
    }

    pub fn eval(&self) -> Result<PolytopeSpec> {
        match self {
            Expr::Simplex(d) => constructions::simplex(*d),
            Expr::Cube(d) => constructions::cube(*d),
            Expr::Cross(d) => constructions::cross_polytope(*d),
            Expr::Dual(e) => Ok(constructions::dual(&e.eval()?)),
            Expr::Pyramid(e) => constructions::pyramid(&e.eval()?),
            Expr::Join(a, b) => constructions::free_join(&a.eval()?, &b.eval()?),
            Expr::Truncate(e, v) => constructions::truncate_simple_vertex(&e.eval()?, *v),
            Expr::Sum(a, b, fp, fq) => {
                constructions::connected_sum(&a.eval()?, &b.eval()?, *fp, *fq, None)
            }
            Expr::Stacked(d, k) => constructions::stacked(*d, *k),
        }
    }
}

/// Parses and evaluates a construction expression.
pub fn parse_construction(text: &str) -> Result<PolytopeSpec> {
    Expr::parse(text)?.eval()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{ch}`")))
        }
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(self.error("expected a construction name"));
        }
        self.pos += len;
        Ok(&self.text[start..start + len])
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(self.error("expected a non-negative integer"));
        }
        self.pos += len;
        self.text[start..start + len].parse().map_err(|_| Error::Parse {
            position: start,
            message: "integer too large".into(),
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?.to_string();
        self.expect('(')?;
        let expr = match name.as_str() {
            "simplex" => Expr::Simplex(self.number()?),
            "cube" => Expr::Cube(self.number()?),
            "cross" => Expr::Cross(self.number()?),
            "dual" => Expr::Dual(Box::new(self.expr()?)),
            "pyramid" => Expr::Pyramid(Box::new(self.expr()?)),
            "join" => {
                let a = self.expr()?;
                self.expect(',')?;
                Expr::Join(Box::new(a), Box::new(self.expr()?))
            }
            "truncate" => {
                let e = self.expr()?;
                self.expect(',')?;
                Expr::Truncate(Box::new(e), self.number()?)
            }
            "sum" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(',')?;
                let fp = self.number()?;
                self.expect(',')?;
                Expr::Sum(Box::new(a), Box::new(b), fp, self.number()?)
            }
            "stacked" => {
                let d = self.number()?;
                self.expect(',')?;
                Expr::Stacked(d, self.number()?)
            }
            other => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unknown construction `{other}`"),
                })
            }
        };
        self.expect(')')?;
        Ok(expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let e = Expr::parse(" join( cube(3) , cross( 3 ) ) ").unwrap();
        assert_eq!(e.to_string(), "join(cube(3),cross(3))");
        let e = Expr::parse("sum(truncate(cube(3),0),stacked(3,4),6,0)").unwrap();
        assert_eq!(e.to_string(), "sum(truncate(cube(3),0),stacked(3,4),6,0)");
    }

    #[test]
    fn evaluates() {
        let j = parse_construction("join(cube(3),cross(3))").unwrap();
        assert_eq!((j.dim(), j.n_vertices(), j.n_facets()), (7, 14, 14));
        assert_eq!(j.provenance, "join(cube(3),cross(3))");
        let c = parse_construction("dual(dual(cube(4)))").unwrap();
        assert_eq!(c.matrix(), parse_construction("cube(4)").unwrap().matrix());
        let t = parse_construction("truncate(cube(3),0)").unwrap();
        assert_eq!(t.lattice().f_vector(), &[10, 15, 7]);
    }

    #[test]
    fn provenance_matches_normal_form() {
        for text in [
            "simplex(2)",
            "pyramid(cross(3))",
            "dual(join(simplex(1),cube(2)))",
            "truncate(cube(3),5)",
            "sum(simplex(3),simplex(3),0,1)",
            "stacked(4,2)",
        ] {
            assert_eq!(parse_construction(text).unwrap().provenance, text);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases = [
            ("cube(3", 6),
            ("cube(x)", 5),
            ("blob(3)", 0),
            ("join(cube(3) cross(3))", 13),
            ("cube(3) extra", 8),
            ("", 0),
            ("cube(99999999999999999999999)", 5),
        ];
        for (text, at) in cases {
            match Expr::parse(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, at, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn construction_errors_name_the_subexpression() {
        let err = parse_construction("join(cube(2),truncate(pyramid(cube(2)),4))").unwrap_err();
        match err {
            Error::Construction { expr, .. } => assert_eq!(expr, "truncate(pyramid(cube(2)),4)"),
            other => panic!("{other:?}"),
        }
        assert!(parse_construction("cube(0)").is_err());
    }
}
