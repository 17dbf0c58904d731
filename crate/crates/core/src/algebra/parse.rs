//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' nat]
//! atom   := var | '(' expr ')' | coeff
//! coeff  := integer | integer '/' positive-integer      (rationals only)
//! ```
//!
//! Whitespace is insignificant. A bare coefficient denotes a multiple of the
//! empty word, so outside `K⟨X⟩¹` every top-level term must have zero
//! constant part.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::alphabet::{scan_name, Alphabet};
use crate::algebra::polynomial::{Polynomial, Word};
use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let b = text.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'^' => Some(Tok::Caret),
            b'/' => Some(Tok::Slash),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, i));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Num(n), start));
        } else if let Some(len) = scan_name(&text[i..]) {
            out.push((Tok::Name(text[i..i + len].to_string()), i));
            i += len;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Syntax { position: i, message: format!("unexpected character `{ch}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: Ring,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.at(), message: message.into() })
    }

    /// Parses an expression; `check` enforces the non-unital rule per term.
    fn expr(&mut self, check: bool) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.ring, self.alphabet, true);
        let mut sign = match self.peek() {
            Tok::Plus => {
                self.bump();
                1
            }
            Tok::Minus => {
                self.bump();
                -1
            }
            _ => 1,
        };
        loop {
            let start = self.at();
            let t = self.term()?;
            if check && !t.constant_term().is_zero() {
                return Err(Error::EmptyWordTerm(start));
            }
            acc.add_scaled(&self.ring.from_i64(sign), &t);
            sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => break,
            };
            self.bump();
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Num(n) => match n.to_u32() {
                Some(e) => base.pow(e),
                None => self.fail("exponent too large"),
            },
            _ => {
                self.pos -= 1;
                self.fail("expected a natural number exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let at = self.at();
        match self.bump() {
            Tok::Name(name) => match self.alphabet.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, self.alphabet, true, i)),
                None => Err(Error::UnknownVariable { name, position: at }),
            },
            Tok::LParen => {
                let inner = self.expr(false)?;
                if self.bump() != Tok::RParen {
                    self.pos -= 1;
                    return self.fail("expected `)`");
                }
                Ok(inner)
            }
            Tok::Num(n) => {
                let c = if *self.peek() == Tok::Slash {
                    self.bump();
                    let den_at = self.at();
                    let Tok::Num(d) = self.bump() else {
                        return Err(Error::Syntax { position: den_at, message: "expected a denominator".into() });
                    };
                    if self.ring != Ring::Rationals {
                        return Err(Error::InvalidCoefficient(format!(
                            "fractions are only allowed over Q (at position {at})"
                        )));
                    }
                    if d.is_zero() {
                        return Err(Error::InvalidCoefficient(format!("zero denominator at position {den_at}")));
                    }
                    self.ring.fraction(n, d)?
                } else {
                    self.ring.from_bigint(n)
                };
                Ok(Polynomial::constant(c, self.alphabet))
            }
            Tok::End => Err(Error::Syntax { position: at, message: "unexpected end of input".into() }),
            t => Err(Error::Syntax { position: at, message: format!("unexpected token {}", describe(&t)) }),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::Slash => "`/`",
        Tok::RParen => "`)`",
        Tok::LParen => "`(`",
        Tok::Num(_) => "number",
        Tok::Name(_) => "name",
        Tok::End => "end of input",
    }
}

/// Parses `text` into a canonical polynomial over `alphabet`.
pub fn parse_poly(text: &str, alphabet: &Alphabet, ring: Ring, unital: bool) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ring, alphabet };
    let value = p.expr(!unital)?;
    if *p.peek() != Tok::End {
        return p.fail(format!("unexpected token {}", describe(p.peek())));
    }
    value.with_unital(unital)
}

/// Parses a single coefficient literal of the grammar.
pub fn parse_scalar(text: &str, ring: Ring) -> Result<Coeff> {
    let a = Alphabet::new(Vec::<String>::new())?;
    let p = parse_poly(text, &a, ring, true)?;
    if p.terms().keys().any(|w| !w.is_empty()) {
        return Err(Error::InvalidCoefficient(text.to_string()));
    }
    Ok(p.coeff(&Word::empty()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    #[test]
    fn examples() {
        let z = Ring::Integers;
        let a = xy();
        let p = parse_poly("x^2 - x", &a, z, false).unwrap();
        assert_eq!(p.coeff(&Word(vec![0, 0])), z.one());
        assert_eq!(p.coeff(&Word(vec![0])), z.from_i64(-1));
        assert_eq!(p.len(), 2);
        let p = parse_poly("2*x*y - y*x", &a, z, false).unwrap();
        assert_eq!(p.to_string(), "2*x*y - y*x");
        let p = parse_poly("(x+y)^2", &a, z, false).unwrap();
        assert_eq!(p.to_string(), "x^2 + x*y + y*x + y^2");
    }

    #[test]
    fn errors_carry_positions() {
        let z = Ring::Integers;
        let a = xy();
        match parse_poly("x + w", &a, z, false) {
            Err(Error::UnknownVariable { name, position }) => {
                assert_eq!(name, "w");
                assert_eq!(position, 4);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x + ", &a, z, false), Err(Error::Syntax { position: 4, .. })));
        assert!(matches!(parse_poly("x - 1", &a, z, false), Err(Error::EmptyWordTerm(4))));
        assert!(parse_poly("x - 1", &a, z, true).is_ok());
        assert!(matches!(parse_poly("1/2*x", &a, z, false), Err(Error::InvalidCoefficient(_))));
        assert!(parse_poly("(x", &a, z, false).is_err());
        assert!(parse_poly("x y", &a, z, false).is_err());
    }

    #[test]
    fn rationals_and_prime_fields() {
        let q = Ring::Rationals;
        let a = xy();
        let p = parse_poly("1/2*x - 3/4*y^2", &a, q, false).unwrap();
        assert_eq!(p.to_string(), "-3/4*y^2 + 1/2*x");
        assert_eq!(parse_poly(&p.to_string(), &a, q, false).unwrap(), p);
        let f5 = Ring::prime_field(5).unwrap();
        let p = parse_poly("-x + 7*y", &a, f5, false).unwrap();
        assert_eq!(p.to_string(), "4*x + 2*y");
    }

    #[test]
    fn subscripted_names() {
        let a = Alphabet::new(["t[1,x,1]", "v[x]"]).unwrap();
        let p = parse_poly("t[1,x,1]^2 - v[x]*t[1,x,1]", &a, Ring::Integers, false).unwrap();
        assert_eq!(p.to_string(), "t[1,x,1]^2 - v[x]*t[1,x,1]");
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("-6/4", Ring::Rationals).unwrap().to_string(), "-3/2");
        assert!(parse_scalar("x", Ring::Integers).is_err());
    }
}
