//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*      -- '/' only by nonzero constants
//! unary := ('+' | '-') unary | power
//! power := atom ('^' uint)?
//! atom  := integer | identifier | '(' expr ')'
//! ```

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

/// Largest total degree the parser will build; guards against runaway expansion.
pub const MAX_PARSE_DEGREE: u32 = 512;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Parse { position: i, message: format!("unexpected character {ch:?}") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.offset(), message: message.into() })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    let at = self.offset();
                    let rhs = self.unary()?;
                    if acc.degree().unwrap_or(0) + rhs.degree().unwrap_or(0) > MAX_PARSE_DEGREE {
                        return Err(Error::Parse { position: at, message: "degree too large".into() });
                    }
                    acc = &acc * &rhs;
                }
                Tok::Op('/') => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    let Some(c) = d.constant_value() else {
                        return Err(Error::Parse {
                            position: at,
                            message: "division only by nonzero constants".into(),
                        });
                    };
                    acc = acc.scale(&c.inv());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Op(c @ ('-' | '+')) => {
                let negate = *c == '-';
                // iterate over sign runs instead of recursing
                let mut neg = negate;
                self.bump();
                while let Tok::Op(c @ ('-' | '+')) = self.peek() {
                    neg ^= *c == '-';
                    self.bump();
                }
                let v = self.power()?;
                Ok(if neg { -&v } else { v })
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Tok::Op('^') = self.peek() {
            self.bump();
            match self.bump() {
                Tok::Int(e) => {
                    let at = self.toks[self.pos - 1].1;
                    let deg = base.degree().unwrap_or(0) as u64;
                    let e: u32 = e
                        .try_into()
                        .ok()
                        .filter(|&e: &u32| deg * e as u64 <= MAX_PARSE_DEGREE as u64)
                        .ok_or_else(|| Error::Parse { position: at, message: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return self.err("exponent must be a non-negative integer");
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&v)))
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.bump();
                    Ok(Polynomial::var(self.ring, i))
                }
                None => self.err(format!("unknown identifier {name:?}")),
            },
            Tok::Op('(') => {
                if self.depth >= 200 {
                    return self.err("parentheses nested too deeply");
                }
                self.bump();
                self.depth += 1;
                let e = self.expr()?;
                self.depth -= 1;
                match self.peek() {
                    Tok::Op(')') => {
                        self.bump();
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(format!("unexpected {c:?}")),
        }
    }
}

/// Parses `text` as a polynomial in `ring`; coefficients are read exactly in the ring's field.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, depth: 0, ring };
    let f = p.expr()?;
    match p.peek() {
        Tok::End => Ok(f),
        _ => p.err("trailing input"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::scalar::Field;
    use proptest::prelude::*;

    #[test]
    fn basic_grammar() {
        let r = Ring::standard(Field::Rational, 3);
        let f = parse_polynomial("x^2+y*z", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x^2 + y*z");
        assert_eq!(parse_polynomial(" ( x + y ) ^ 2 ", &r).unwrap().to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(parse_polynomial("x/2 - -y", &r).unwrap().to_string(), "1/2*x + y");
    }

    #[test]
    fn five_variable_form() {
        let r = Ring::standard(Field::Rational, 5);
        let f = parse_polynomial("x5^5 - x4*(x1^2+x2*x3)*(x1^2+x2^2+x2*x3)", &r).unwrap();
        assert_eq!(f.homogeneous_degree(), Some(5));
        let f1 = parse_polynomial("x1^2+x2*x3", &r).unwrap();
        let f2 = parse_polynomial("x1^2+x2^2+x2*x3", &r).unwrap();
        let x4 = parse_polynomial("x4", &r).unwrap();
        let x5 = parse_polynomial("x5", &r).unwrap();
        assert_eq!(f, &x5.pow(5) - &(&(&x4 * &f1) * &f2));
    }

    #[test]
    fn errors_carry_positions() {
        let r = Ring::standard(Field::Rational, 3);
        match parse_polynomial("x^-1", &r) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x + w", &r) {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 4);
                assert!(message.contains("unknown"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x $ y", &r), Err(Error::Parse { position: 2, .. })));
        assert!(parse_polynomial("(x+y", &r).is_err());
        assert!(parse_polynomial("x/y", &r).is_err());
        assert!(parse_polynomial("x y", &r).is_err());
        assert!(parse_polynomial("", &r).is_err());
    }

    #[test]
    fn division_by_zero_in_field() {
        let r = Ring::standard(Field::prime(3).unwrap(), 3);
        assert!(parse_polynomial("x/3", &r).is_err());
        let q = Ring::standard(Field::Rational, 3);
        assert!(parse_polynomial("x/0", &q).is_err());
    }

    fn arb_poly(field: Field) -> impl Strategy<Value = Polynomial> {
        let r = Ring::standard(field, 3);
        prop::collection::vec((prop::collection::vec(0u32..5, 3), -40i64..40, 1i64..7), 0..7).prop_map(move |ts| {
            let f = r.field();
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, a, b)| (Monomial::from_exponents(&e), &f.from_i64(a) / &f.from_i64(b)))
                    .collect::<Vec<_>>(),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip_rational(f in arb_poly(Field::Rational)) {
            prop_assert_eq!(parse_polynomial(&f.to_string(), f.ring()).unwrap(), f);
        }

        #[test]
        fn print_parse_round_trip_prime(f in arb_poly(Field::Prime { p: 32003 })) {
            prop_assert_eq!(parse_polynomial(&f.to_string(), f.ring()).unwrap(), f);
        }

        #[test]
        fn parser_never_panics(s in "[xyz0-9+*^()/ -]{0,20}") {
            let r = Ring::standard(Field::Rational, 3);
            let _ = parse_polynomial(&s, &r);
        }
    }
}
