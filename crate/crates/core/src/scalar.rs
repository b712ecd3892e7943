//! Gaussian rationals ℚ(i), the default coefficient field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{rational_sqrt, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
}

/// A Gaussian rational `re + im·i`.
///
/// Both parts are reduced `BigRational`s with positive denominators, so
/// structural equality is value equality. The derived order is lexicographic
/// on `(re, im)` and exists only for canonical output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|², always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = rhs.norm_sqr();
        let num = self.clone() * rhs.conj();
        Ok(GaussianRational {
            re: num.re / &n,
            im: num.im / &n,
        })
    }

    /// Machine form `(re_num, re_den, im_num, im_den)`.
    pub fn to_tuple(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        (
            self.re.numer().clone(),
            self.re.denom().clone(),
            self.im.numer().clone(),
            self.im.denom().clone(),
        )
    }

    pub fn from_tuple(re_num: BigInt, re_den: BigInt, im_num: BigInt, im_den: BigInt) -> Result<Self, ScalarError> {
        if re_den.is_zero() || im_den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(GaussianRational {
            re: BigRational::new(re_num, re_den),
            im: BigRational::new(im_num, im_den),
        })
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational::from_rational(r)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational {
                re: self.re * rhs.re,
                im: BigRational::zero(),
            };
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;

    /// Panics on division by zero; use [`GaussianRational::checked_div`] for a `Result`.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("division by zero")
    }
}

impl Field for GaussianRational {
    fn from_rational(r: BigRational) -> Self {
        GaussianRational {
            re: r,
            im: BigRational::zero(),
        }
    }

    fn to_rational(&self) -> Option<BigRational> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if !self.re.is_negative() {
                return rational_sqrt(&self.re).map(GaussianRational::from_rational);
            }
            return rational_sqrt(&-self.re.clone()).map(|s| GaussianRational {
                re: BigRational::zero(),
                im: s,
            });
        }
        // (x + yi)² = a + bi  ⇒  x² = (a + |z|)/2, y = b / 2x
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(2.into());
        let x = rational_sqrt(&((&self.re + modulus) / &two))?;
        if x.is_zero() {
            return None;
        }
        let y = &self.im / (&two * &x);
        let root = GaussianRational { re: x, im: y };
        (root.clone() * root.clone() == *self).then_some(root)
    }

    fn inv(&self) -> Option<Self> {
        GaussianRational::one().checked_div(self).ok()
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl GaussianRational {
    /// True when the printed form contains an internal `+`/`-` and so needs
    /// parentheses when used as a coefficient.
    pub fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else {
                format!("{}i", fmt_rational(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", im_part(&-self.im.clone()))
                } else {
                    write!(f, "{}", im_part(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", fmt_rational(&self.re), sign, im_part(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Cursor-based reader shared with the element parser.
pub(crate) struct ScalarReader<'a> {
    chars: Vec<(usize, char)>,
    src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> ScalarReader<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        ScalarReader {
            chars: src.char_indices().collect(),
            src,
            pos: 0,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map(|c| c.0).unwrap_or(self.src.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> ScalarError {
        ScalarError::Syntax {
            pos: self.offset(),
            message: message.into(),
        }
    }

    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        BigInt::from_str(&s).ok()
    }

    /// `digits ['/' digits]`, unsigned.
    fn unsigned_rational(&mut self) -> Result<Option<BigRational>, ScalarError> {
        self.skip_ws();
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            if den.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            return Ok(Some(BigRational::new(num, den)));
        }
        self.pos = save;
        Ok(Some(BigRational::from_integer(num)))
    }

    /// A single signed real or imaginary piece: `[sign] (rational ['i'] | 'i')`.
    /// Returns `(value, is_imaginary)`.
    fn piece(&mut self, require_sign: bool) -> Result<Option<(BigRational, bool)>, ScalarError> {
        let save = self.pos;
        let neg = match self.sign() {
            Some(n) => n,
            None if require_sign => {
                self.pos = save;
                return Ok(None);
            }
            None => false,
        };
        let mag = self.unsigned_rational()?;
        self.skip_ws();
        let imag = if self.peek() == Some('i') {
            self.pos += 1;
            true
        } else {
            false
        };
        let value = match (mag, imag) {
            (Some(m), _) => m,
            (None, true) => BigRational::one(),
            (None, false) => {
                self.pos = save;
                return Ok(None);
            }
        };
        Ok(Some((if neg { -value } else { value }, imag)))
    }

    /// Reads a full scalar literal starting at the cursor.
    pub(crate) fn scalar(&mut self) -> Result<GaussianRational, ScalarError> {
        let (first, first_imag) = self.piece(false)?.ok_or_else(|| self.err("expected a number or 'i'"))?;
        if first_imag {
            return Ok(GaussianRational {
                re: BigRational::zero(),
                im: first,
            });
        }
        let save = self.pos;
        if let Some((second, true)) = self.piece(true)? {
            return Ok(GaussianRational { re: first, im: second });
        }
        self.pos = save;
        Ok(GaussianRational::from_rational(first))
    }

    /// Like [`Self::scalar`] but without consuming a trailing `±…i`; used for
    /// bare coefficients inside element expressions where `+` separates terms.
    pub(crate) fn simple_scalar(&mut self) -> Result<Option<GaussianRational>, ScalarError> {
        let save = self.pos;
        self.skip_ws();
        let Some(mag) = self.unsigned_rational()? else {
            if self.peek() == Some('i') {
                self.pos += 1;
                return Ok(Some(GaussianRational::i()));
            }
            self.pos = save;
            return Ok(None);
        };
        self.skip_ws();
        if self.peek() == Some('i') {
            self.pos += 1;
            return Ok(Some(GaussianRational {
                re: BigRational::zero(),
                im: mag,
            }));
        }
        Ok(Some(GaussianRational::from_rational(mag)))
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    pub(crate) fn peek_char(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    pub(crate) fn bump(&mut self) {
        self.pos += 1;
    }

    pub(crate) fn byte_offset(&self) -> usize {
        self.offset()
    }
}

/// Parses `rational ('i')? | rational ('+'|'-') rational 'i' | 'i'` (with
/// optional leading sign; `i` may stand without a magnitude).
pub fn parse_scalar(text: &str) -> Result<GaussianRational, ScalarError> {
    let mut r = ScalarReader::new(text);
    let s = r.scalar()?;
    if !r.at_end() {
        return Err(r.err("unexpected trailing input"));
    }
    Ok(s)
}

pub fn format_scalar(s: &GaussianRational) -> String {
    s.to_string()
}

impl FromStr for GaussianRational {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl PartialOrd<i64> for GaussianRational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.to_rational()
            .map(|r| r.cmp(&BigRational::from_integer((*other).into())))
    }
}

impl PartialEq<i64> for GaussianRational {
    fn eq(&self, other: &i64) -> bool {
        self.im.is_zero() && self.re.is_integer() && self.re.numer() == &BigInt::from(*other)
    }
}
