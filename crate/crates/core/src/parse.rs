//! Parser for the expression grammar shared by the CLI and the report
//! printers: integer and rational literals (`a/b`), the variable `x`, and
//! for algebra elements the generators `yh` (the ŷ of A_h) or `y` (Weyl),
//! with operators `+ - * ^`, parentheses, and insignificant whitespace.
//! `^` binds tighter than `*`, which binds tighter than `+`/`-`.
//!
//! Factored input is a comma-separated list of `factor^multiplicity` terms,
//! e.g. `x^3,(x-1)^2`.

use crate::ore::{OreAlgebra, OreElement, WeylElement};
use crate::poly::{FactoredPoly, Poly};
use crate::scalar::{Field, Scalar};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().unwrap();
                toks.push((start, Tok::Num(n)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character '{c}'")),
        }
    }
    Ok(toks)
}

/// Expression tree over the three possible generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    X,
    YHat,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.next();
                    let rhs = self.parse_term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Tok::Minus => {
                    self.next();
                    let rhs = self.parse_term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_factor()?;
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Star => {
                    self.next();
                    let rhs = self.parse_factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Tok::Slash => {
                    self.next();
                    let rhs = self.parse_factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.parse_primary()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.next();
            let pos = self.here();
            match self.next() {
                Some((_, Tok::Num(n))) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return err(pos, "expected a nonnegative integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn parse_primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.here();
        match self.next() {
            Some((_, Tok::Num(n))) => Ok(Expr::Int(n)),
            Some((_, Tok::Ident(id))) => match id.as_str() {
                "x" => Ok(Expr::X),
                "yh" => Ok(Expr::YHat),
                "y" => Ok(Expr::Y),
                _ => err(pos, format!("unknown identifier '{id}'")),
            },
            Some((_, Tok::Minus)) => {
                let inner = self.parse_factor()?;
                Ok(Expr::Neg(Box::new(inner)))
            }
            Some((_, Tok::LParen)) => {
                let inner = self.parse_expr()?;
                match self.next() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    _ => err(self.here(), "expected ')'"),
                }
            }
            _ => err(pos, "expected a number, variable, '-' or '('"),
        }
    }
}

pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
    };
    let e = p.parse_expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "unexpected trailing input");
    }
    Ok(e)
}

enum Value {
    Poly(Poly),
    Ore(OreElement),
    Weyl(WeylElement),
}

#[derive(Clone, Copy)]
enum Mode<'a> {
    Poly(Field),
    Ore(&'a OreAlgebra),
    Weyl(Field),
}

impl Value {
    fn constant(&self) -> Option<Scalar> {
        match self {
            Value::Poly(f) => {
                if f.is_constant() {
                    Some(f.coeff(0))
                } else {
                    None
                }
            }
            Value::Ore(a) => {
                let c = a.coeff(0);
                if a.yhat_degree().unwrap_or(0) == 0 && c.is_constant() {
                    Some(c.coeff(0))
                } else {
                    None
                }
            }
            Value::Weyl(a) => {
                let c = a.coeff(0);
                if a.y_degree().unwrap_or(0) == 0 && c.is_constant() {
                    Some(c.coeff(0))
                } else {
                    None
                }
            }
        }
    }
}

fn eval(expr: &Expr, mode: Mode) -> Result<Value, ParseError> {
    let scalar_value = |c: Scalar| match mode {
        Mode::Poly(_) => Value::Poly(Poly::constant(c)),
        Mode::Ore(alg) => Value::Ore(alg.from_scalar(&c)),
        Mode::Weyl(f) => Value::Weyl(WeylElement::from_poly(f, &Poly::constant(c))),
    };
    let field = match mode {
        Mode::Poly(f) | Mode::Weyl(f) => f,
        Mode::Ore(alg) => alg.field(),
    };
    match expr {
        Expr::Int(n) => Ok(scalar_value(field.from_bigint(n))),
        Expr::X => Ok(match mode {
            Mode::Poly(f) => Value::Poly(Poly::x(f)),
            Mode::Ore(alg) => Value::Ore(alg.x()),
            Mode::Weyl(f) => Value::Weyl(WeylElement::x(f)),
        }),
        Expr::YHat => match mode {
            Mode::Ore(alg) => Ok(Value::Ore(alg.yhat())),
            _ => err(0, "'yh' is only valid in an A_h element expression"),
        },
        Expr::Y => match mode {
            Mode::Weyl(f) => Ok(Value::Weyl(WeylElement::y(f))),
            _ => err(0, "'y' is only valid in a Weyl element expression"),
        },
        Expr::Neg(e) => {
            let v = eval(e, mode)?;
            Ok(match v {
                Value::Poly(f) => Value::Poly(f.neg()),
                Value::Ore(a) => Value::Ore(a.neg()),
                Value::Weyl(a) => Value::Weyl(a.neg()),
            })
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sub = matches!(expr, Expr::Sub(..));
            let va = eval(a, mode)?;
            let vb = eval(b, mode)?;
            Ok(match (va, vb) {
                (Value::Poly(f), Value::Poly(g)) => {
                    Value::Poly(if sub { f.sub(&g) } else { f.add(&g) })
                }
                (Value::Ore(f), Value::Ore(g)) => {
                    Value::Ore(if sub { f.sub(&g) } else { f.add(&g) })
                }
                (Value::Weyl(f), Value::Weyl(g)) => {
                    Value::Weyl(if sub { f.sub(&g) } else { f.add(&g) })
                }
                _ => unreachable!("one mode per evaluation"),
            })
        }
        Expr::Mul(a, b) => {
            let va = eval(a, mode)?;
            let vb = eval(b, mode)?;
            Ok(match (va, vb) {
                (Value::Poly(f), Value::Poly(g)) => Value::Poly(f.mul(&g)),
                (Value::Ore(f), Value::Ore(g)) => Value::Ore(f.mul(&g)),
                (Value::Weyl(f), Value::Weyl(g)) => Value::Weyl(f.mul(&g)),
                _ => unreachable!("one mode per evaluation"),
            })
        }
        Expr::Div(a, b) => {
            let va = eval(a, mode)?;
            let vb = eval(b, mode)?;
            let c = vb.constant().ok_or_else(|| ParseError {
                pos: 0,
                msg: "'/' is only valid with a constant divisor".into(),
            })?;
            let inv = c.inv().ok_or_else(|| ParseError {
                pos: 0,
                msg: "division by zero (the divisor vanishes in the active field)".into(),
            })?;
            Ok(match va {
                Value::Poly(f) => Value::Poly(f.mul_scalar(&inv)),
                Value::Ore(f) => Value::Ore(f.mul_scalar(&inv)),
                Value::Weyl(f) => Value::Weyl(f.mul_scalar(&inv)),
            })
        }
        Expr::Pow(a, e) => {
            let va = eval(a, mode)?;
            Ok(match va {
                Value::Poly(f) => Value::Poly(f.pow(*e)),
                Value::Ore(f) => Value::Ore(f.pow(*e)),
                Value::Weyl(f) => Value::Weyl(f.pow(*e)),
            })
        }
    }
}

/// Parse a commutative polynomial in x over the given field.
///
/// ```
/// use ahoch::parse::parse_poly;
/// use ahoch::scalar::Field;
///
/// let f = parse_poly("3/2*x^2*(x - 1) + 1", Field::Rational).unwrap();
/// assert_eq!(f.to_string(), "3/2*x^3 - 3/2*x^2 + 1");
/// // coefficients must live in the active field
/// assert!(parse_poly("1/3*x", Field::Prime(3)).is_err());
/// ```
pub fn parse_poly(input: &str, field: Field) -> Result<Poly, ParseError> {
    let expr = parse_expr(input)?;
    match eval(&expr, Mode::Poly(field))? {
        Value::Poly(f) => Ok(f),
        _ => unreachable!(),
    }
}

/// Parse an element of A_h (generators `x` and `yh`).
pub fn parse_ore(input: &str, alg: &OreAlgebra) -> Result<OreElement, ParseError> {
    let expr = parse_expr(input)?;
    match eval(&expr, Mode::Ore(alg))? {
        Value::Ore(a) => Ok(a),
        _ => unreachable!(),
    }
}

/// Parse an element of the Weyl algebra (generators `x` and `y`).
pub fn parse_weyl(input: &str, field: Field) -> Result<WeylElement, ParseError> {
    let expr = parse_expr(input)?;
    match eval(&expr, Mode::Weyl(field))? {
        Value::Weyl(a) => Ok(a),
        _ => unreachable!(),
    }
}

/// Parse factored input `f1^a1,f2^a2,...`; constant pieces fold into the unit.
pub fn parse_factored(input: &str, field: Field) -> Result<FactoredPoly, ParseError> {
    let mut factors = Vec::new();
    let mut unit = field.one();
    for piece in split_top_level_commas(input) {
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return err(0, "empty factor in factored input");
        }
        let expr = parse_expr(trimmed)?;
        let (base_expr, mult) = match expr {
            Expr::Pow(b, e) => (*b, e),
            other => (other, 1),
        };
        let base = match eval(&base_expr, Mode::Poly(field))? {
            Value::Poly(f) => f,
            _ => unreachable!(),
        };
        if base.is_constant() {
            let c = base.coeff(0);
            if c.is_zero() {
                return err(0, "zero factor in factored input");
            }
            unit = unit.mul(&c.pow(mult as u64));
        } else {
            let lc = base.leading_coeff().unwrap().clone();
            unit = unit.mul(&lc.pow(mult as u64));
            factors.push((base.monic(), mult));
        }
    }
    FactoredPoly::new(unit, factors).map_err(|e| ParseError {
        pos: 0,
        msg: format!("invalid factored polynomial: {e}"),
    })
}

fn split_top_level_commas(input: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in input.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&input[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&input[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn poly_examples() {
        // x^2*(x-1) expands
        let f = parse_poly("x^2*(x-1)", q()).unwrap();
        assert_eq!(f, Poly::from_ints(q(), &[0, 0, -1, 1]));

        let f = parse_poly("3/2*x + 1", q()).unwrap();
        let expected = Poly::x(q())
            .mul_scalar(&q().from_ratio(3, 2).unwrap())
            .add(&Poly::one(q()));
        assert_eq!(f, expected);

        // over F_2, 2*x is the zero polynomial
        let f2 = Field::Prime(2);
        assert!(parse_poly("2*x", f2).unwrap().is_zero());
        assert_eq!(
            parse_poly("x^2", f2).unwrap(),
            Poly::from_ints(f2, &[0, 0, 1])
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_poly("x^", q()).unwrap_err();
        assert_eq!(e.pos, 2);
        let e = parse_poly("x + $", q()).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_poly("x x", q()).is_err());
        assert!(parse_poly("1/3", Field::Prime(3)).is_err());
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(
            parse_poly(" x ^ 2 * ( x - 1 ) ", q()).unwrap(),
            parse_poly("x^2*(x-1)", q()).unwrap()
        );
    }

    #[test]
    fn ore_elements_respect_noncommutativity() {
        let alg = OreAlgebra::new(Poly::from_ints(q(), &[0, 0, 1])).unwrap();
        let a = parse_ore("yh*x", &alg).unwrap();
        let b = parse_ore("x*yh + x^2", &alg).unwrap();
        assert_eq!(a, b);
        assert_ne!(
            parse_ore("yh*x", &alg).unwrap(),
            parse_ore("x*yh", &alg).unwrap()
        );
        assert!(parse_ore("y", &alg).is_err());
        assert!(parse_poly("yh", q()).is_err());
    }

    #[test]
    fn weyl_elements_parse() {
        let w = parse_weyl("y*x", q()).unwrap();
        let expected = WeylElement::term(q(), &Poly::x(q()), 1).add(&WeylElement::one(q()));
        assert_eq!(w, expected);
    }

    #[test]
    fn element_display_round_trips() {
        let alg = OreAlgebra::new(Poly::from_ints(q(), &[0, 0, 1])).unwrap();
        let a = parse_ore("(2*x^2)*yh^1 + x^3 - yh^2", &alg).unwrap();
        let shown = a.to_string();
        assert_eq!(parse_ore(&shown, &alg).unwrap(), a);
    }

    #[test]
    fn factored_input() {
        let f = parse_factored("x^3,(x-1)^2", q()).unwrap();
        assert_eq!(
            f.factors(),
            &[
                (Poly::from_ints(q(), &[0, 1]), 3),
                (Poly::from_ints(q(), &[-1, 1]), 2)
            ]
        );
        assert_eq!(f.expand(), parse_poly("x^3*(x-1)^2", q()).unwrap());

        // constants fold into the unit; non-monic bases are normalized
        let f = parse_factored("2,(2*x-2)^2", q()).unwrap();
        assert_eq!(f.unit(), &q().from_i64(8));
        assert_eq!(f.factors(), &[(Poly::from_ints(q(), &[-1, 1]), 2)]);

        // coprimality is enforced
        assert!(parse_factored("x,x^2", q()).is_err());
    }

    #[test]
    fn poly_print_parse_round_trip() {
        let polys = [
            Poly::from_ints(q(), &[-1, 0, 1]),
            Poly::from_ints(q(), &[0, -3, 0, 2]),
            Poly::constant(q().from_ratio(-7, 3).unwrap()),
            Poly::zero(q()),
        ];
        for f in polys {
            assert_eq!(parse_poly(&f.to_string(), q()).unwrap(), f);
        }
        let f5 = Field::Prime(5);
        let f = Poly::from_ints(f5, &[3, 0, 4, 1]);
        assert_eq!(parse_poly(&f.to_string(), f5).unwrap(), f);
    }
}
