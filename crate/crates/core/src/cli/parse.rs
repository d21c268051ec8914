//! Recursive-descent parser for Laurent polynomial expressions.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := power ('*'? power)*
//! power   := primary ['^' ['+' | '-'] int]
//! primary := int ['/' int] | 'z' int | 't' | 'h' | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so `3/2 h^3` and `z4 h^2` are terms. A power
//! with a negative exponent is only allowed on a unit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{LaurentPoly, Var};
use crate::scalar::Scalar;

const ALL: &[Var] = &[Var::T, Var::H, Var::X, Var::Y];

/// Exponent cap for powers of non-monomials.
const MAX_POWER: i64 = 1000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("z{order} at position {pos} needs a conductor divisible by {needed}, configured {conductor}")]
    Conductor {
        pos: usize,
        order: u32,
        needed: u32,
        conductor: u32,
    },
    #[error("negative power at position {pos} of a non-unit")]
    NegativePower { pos: usize },
    #[error("division by zero at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("exponent at position {pos} is out of range")]
    ExponentRange { pos: usize },
    #[error("variable {var} is not allowed here")]
    Variable { var: Var },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Zeta(u32),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        let start = j;
        while j < chars.len() && chars[j].1.is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let (s, e) = digits(i);
                let lit: String = chars[s..e].iter().map(|c| c.1).collect();
                i = e;
                out.push((pos, Tok::Int(lit.parse().expect("digits"))));
                continue;
            }
            'z' => {
                let (s, e) = digits(i + 1);
                if s == e {
                    return Err(syntax(pos, "expected an order after 'z'"));
                }
                let lit: String = chars[s..e].iter().map(|c| c.1).collect();
                let n: u32 = lit
                    .parse()
                    .ok()
                    .filter(|&n| (1..=10_000).contains(&n))
                    .ok_or_else(|| syntax(pos, format!("root of unity order {lit} out of range")))?;
                i = e;
                out.push((pos, Tok::Zeta(n)));
                continue;
            }
            't' => Tok::Var(Var::T),
            'h' => Tok::Var(Var::H),
            'x' => Tok::Var(Var::X),
            'y' => Tok::Var(Var::Y),
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c => return Err(syntax(pos, format!("unexpected character '{c}'"))),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    conductor: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = LaurentPoly::zero(ALL);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -1
            }
            Some(Tok::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.bump();
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_) | Tok::Zeta(_) | Tok::Var(_) | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
            } else if !self.starts_primary() {
                return Ok(acc);
            }
            let p = self.power()?;
            acc = &acc * &p;
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base = self.primary()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let negative = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let Some(Tok::Int(n)) = self.bump() else {
            return Err(syntax(pos, "expected an integer exponent"));
        };
        let n: i64 = i64::try_from(&n).map_err(|_| ParseError::ExponentRange { pos })?;
        let n = if negative { -n } else { n };
        if base.is_unit() {
            let e = i32::try_from(n).map_err(|_| ParseError::ExponentRange { pos })?;
            let (exps, c) = base.terms().next().expect("unit has a term");
            let costly = !c.is_one() && n.abs() > MAX_POWER;
            if costly || exps.iter().any(|&x| (x as i64).abs() * n.abs() > i32::MAX as i64) {
                return Err(ParseError::ExponentRange { pos });
            }
            return base.pow_signed(e).map_err(|_| ParseError::ZeroDenominator { pos });
        }
        if n < 0 {
            return Err(ParseError::NegativePower { pos });
        }
        if n > MAX_POWER {
            return Err(ParseError::ExponentRange { pos });
        }
        Ok(base.pow(n as u32))
    }

    fn primary(&mut self) -> Result<LaurentPoly, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let mut q = BigRational::from_integer(n);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dpos = self.pos();
                    let Some(Tok::Int(d)) = self.bump() else {
                        return Err(syntax(dpos, "expected an integer denominator"));
                    };
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos: dpos });
                    }
                    q /= BigRational::from_integer(d);
                }
                Ok(LaurentPoly::constant(ALL, Scalar::from_rational(q)))
            }
            Some(Tok::Zeta(order)) => {
                let z = Scalar::zeta(order).demote();
                let needed = z.conductor();
                if !self.conductor.is_multiple_of(needed) {
                    return Err(ParseError::Conductor {
                        pos,
                        order,
                        needed,
                        conductor: self.conductor,
                    });
                }
                Ok(LaurentPoly::constant(ALL, z))
            }
            Some(Tok::Var(v)) => Ok(LaurentPoly::var_pow(ALL, v, 1).expect("var in list")),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(syntax(close, "expected ')'")),
                }
            }
            Some(_) => Err(syntax(pos, "expected a number, z<N>, a variable or '('")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

fn parse_all(text: &str, conductor: u32) -> Result<LaurentPoly, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        conductor: conductor.max(1),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parse over exactly the listed variables; any other variable is an error.
pub fn parse_poly_in(text: &str, vars: &[Var], conductor: u32) -> Result<LaurentPoly, ParseError> {
    let p = parse_all(text, conductor)?;
    p.restrict(vars).map_err(|e| match e {
        crate::poly::PolyError::UnknownVariable(var) => ParseError::Variable { var },
        _ => unreachable!("restrict only reports unknown variables"),
    })
}

/// A polynomial in `h`, or in `t, h` when `t` occurs.
pub fn parse_poly(text: &str, conductor: u32) -> Result<LaurentPoly, ParseError> {
    let p = parse_all(text, conductor)?;
    let has_t = p.terms().any(|(e, _)| e[0] != 0);
    let vars: &[Var] = if has_t { &[Var::T, Var::H] } else { &[Var::H] };
    p.restrict(vars).map_err(|e| match e {
        crate::poly::PolyError::UnknownVariable(var) => ParseError::Variable { var },
        _ => unreachable!("restrict only reports unknown variables"),
    })
}

/// A constant expression.
pub fn parse_scalar(text: &str, conductor: u32) -> Result<Scalar, ParseError> {
    let p = parse_poly_in(text, &[], conductor)?;
    Ok(p.coeff(&[]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hpoly(terms: &[(i32, Scalar)]) -> LaurentPoly {
        LaurentPoly::from_terms(&[Var::H], terms.iter().map(|(e, c)| (vec![*e], c.clone())))
    }

    #[test]
    fn examples() {
        assert_eq!(
            parse_poly("h^2 + 1", 1).unwrap(),
            hpoly(&[(2, Scalar::one()), (0, Scalar::one())])
        );
        assert_eq!(
            parse_poly("h^-1 + 3/2 h^3", 1).unwrap(),
            hpoly(&[(-1, Scalar::one()), (3, Scalar::ratio(3, 2))])
        );
        assert_eq!(parse_poly("z4 h^2", 4).unwrap(), hpoly(&[(2, Scalar::zeta(4))]));
    }

    #[test]
    fn grammar_corners() {
        let sq = parse_poly("(h-1)^2", 1).unwrap();
        assert_eq!(sq, parse_poly("h^2 - 2h + 1", 1).unwrap());
        assert_eq!(parse_poly("(2h)^-1", 1).unwrap(), hpoly(&[(-1, Scalar::ratio(1, 2))]));
        assert_eq!(parse_poly("z2", 1).unwrap(), hpoly(&[(0, Scalar::from(-1))]));
        assert_eq!(parse_poly("-h", 1).unwrap(), hpoly(&[(1, Scalar::from(-1))]));
        assert_eq!(parse_poly("t h - h", 1).unwrap().vars(), &[Var::T, Var::H]);
        assert_eq!(parse_scalar("3/4 - 1", 1).unwrap(), Scalar::ratio(-1, 4));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("h +", 1), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("h ? 1", 1), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("(h", 1), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("z4 h", 1), Err(ParseError::Conductor { needed: 4, .. })));
        assert!(matches!(parse_poly("(h+1)^-1", 1), Err(ParseError::NegativePower { .. })));
        assert!(matches!(parse_poly("1/0", 1), Err(ParseError::ZeroDenominator { .. })));
        assert!(matches!(parse_poly("x + h", 1), Err(ParseError::Variable { var: Var::X })));
        assert!(matches!(parse_poly("h^99999999999", 1), Err(ParseError::ExponentRange { .. })));
    }

    #[test]
    fn display_round_trips() {
        for text in ["3/2*z8^3*h - h^-2", "(1 + z4)*h^2 + z4", "-2*h^2", "h^3 + h^-1"] {
            let p = parse_poly(text, 8).unwrap();
            assert_eq!(parse_poly(&p.to_string(), 8).unwrap(), p, "{text} -> {p}");
        }
    }
}
