//! Text syntax for Weyl algebra elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' nat]
//! atom   := 'p' | 'q' | number | '(' expr ')'
//! number := nat ['/' nat] ['i'] | 'i'
//! ```
//!
//! Multiplication is noncommutative and left-associative; `^` binds tighter
//! than `*`. A parenthesised Gaussian rational such as `(3+4i)` is just a
//! constant expression, so `(3+4i)*p` reads as expected.

use thiserror::Error;

use crate::scalar::{ScalarError, ScalarReader};
use crate::{Field, Scalar, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    r: ScalarReader<'a>,
}

impl<'a> Parser<'a> {
    fn fail(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.r.byte_offset(), message)
    }

    fn scalar_err(&self, e: ScalarError) -> ParseError {
        match e {
            ScalarError::Syntax { pos, message } => ParseError::at(self.src, pos, message),
            ScalarError::DivisionByZero => self.fail("zero denominator"),
        }
    }

    fn expr(&mut self) -> Result<WeylElement, ParseError> {
        let mut neg = false;
        match self.r.peek_char() {
            Some('-') | Some('\u{2212}') => {
                self.r.bump();
                neg = true;
            }
            Some('+') => self.r.bump(),
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if neg { -first } else { first };
        loop {
            match self.r.peek_char() {
                Some('+') => {
                    self.r.bump();
                    acc = acc + self.term()?;
                }
                Some('-') | Some('\u{2212}') => {
                    self.r.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylElement, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.r.peek_char() {
                Some('*') | Some('\u{00b7}') => {
                    self.r.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c == 'p' || c == 'q' || c == '(' || c == 'i' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<WeylElement, ParseError> {
        let base = self.atom()?;
        if self.r.peek_char() != Some('^') {
            return Ok(base);
        }
        self.r.bump();
        let start = self.r.byte_offset();
        let e = match self.r.simple_scalar() {
            Ok(Some(s)) => s,
            Ok(None) => return Err(self.fail("expected exponent")),
            Err(e) => return Err(self.scalar_err(e)),
        };
        let n = e
            .to_integer()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| ParseError::at(self.src, start, "exponent must be a natural number"))?;
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Result<WeylElement, ParseError> {
        match self.r.peek_char() {
            Some('p') => {
                self.r.bump();
                Ok(WeylElement::p())
            }
            Some('q') => {
                self.r.bump();
                Ok(WeylElement::q())
            }
            Some('(') => {
                self.r.bump();
                let e = self.expr()?;
                if self.r.peek_char() != Some(')') {
                    return Err(self.fail("expected ')'"));
                }
                self.r.bump();
                Ok(e)
            }
            Some(_) => match self.r.simple_scalar() {
                Ok(Some(s)) => Ok(WeylElement::constant(s)),
                Ok(None) => Err(self.fail("expected 'p', 'q', a number or '('")),
                Err(e) => Err(self.scalar_err(e)),
            },
            None => Err(self.fail("unexpected end of input")),
        }
    }
}

/// Parses and normal-orders an element.
pub fn parse_element(text: &str) -> Result<WeylElement, ParseError> {
    let mut p = Parser {
        src: text,
        r: ScalarReader::new(text),
    };
    let e = p.expr()?;
    if !p.r.at_end() {
        return Err(p.fail("unexpected trailing input"));
    }
    Ok(e)
}

pub fn format_element(x: &WeylElement) -> String {
    x.to_string()
}

/// Parses a bare scalar and reports errors with line/column like elements do.
pub fn parse_scalar_literal(text: &str) -> Result<Scalar, ParseError> {
    crate::parse_scalar(text).map_err(|e| match e {
        ScalarError::Syntax { pos, message } => ParseError::at(text, pos, message),
        ScalarError::DivisionByZero => ParseError::at(text, 0, "zero denominator"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(
            parse_element("-1/2*q^2").unwrap(),
            WeylElement::term(0, 2, Scalar::from_ratio(-1, 2))
        );
        assert_eq!(parse_element("p*q - q*p").unwrap(), WeylElement::one());
        assert_eq!(
            parse_element("q^2*p^2").unwrap(),
            WeylElement::from_terms([
                (2, 2, Scalar::from_i64(1)),
                (1, 1, Scalar::from_i64(-4)),
                (0, 0, Scalar::from_i64(2)),
            ])
        );
        assert_eq!(
            parse_element("(3+4i)*p").unwrap(),
            WeylElement::term(1, 0, Scalar::from_parts(3, 1, 4, 1))
        );
        assert_eq!(parse_element("(1+p*q)*q").unwrap().to_string(), "p*q^2 + q");
        assert_eq!(parse_element("p q").unwrap(), WeylElement::monomial(1, 1));
        assert_eq!(parse_element("2i*p").unwrap().to_string(), "2i*p");
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_element("p + * q").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_element("p\n+ x").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_element("p^q").is_err());
        assert!(parse_element("(p").is_err());
        assert!(parse_element("").is_err());
    }

    prop_compose! {
        fn arb_element()(terms in prop::collection::vec(
            (0u32..5, 0u32..5, -9i64..9, 1i64..5, -9i64..9, 1i64..5), 0..6)) -> WeylElement {
            WeylElement::from_terms(terms.into_iter().map(|(i, j, a, b, c, d)| (i, j, Scalar::from_parts(a, b, c, d))))
        }
    }

    proptest! {
        #[test]
        fn parse_inverts_format(x in arb_element()) {
            prop_assert_eq!(parse_element(&format_element(&x)).unwrap(), x);
        }
    }
}
