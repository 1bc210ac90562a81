//! Exact arithmetic in the ring of integer Laurent polynomials `Z[t, 1/t]`.
//!
//! Every Alexander polynomial in this crate is a [`LaurentPoly`]. Alexander
//! polynomials are only defined up to multiplication by a unit `±t^n`, so
//! besides the ring operations this module provides a canonical
//! representative of each unit class ([`LaurentPoly::canonical_form`]) and
//! the corresponding equivalence ([`LaurentPoly::equal_up_to_unit`]).
//!
//! Coefficients are arbitrary precision integers, so products never wrap.
//!
//! # Text format
//!
//! Polynomials print with ascending exponents, `*` between coefficient and
//! variable, and `t^-k` for negative powers:
//!
//! ```
//! use toroidal::laurent::LaurentPoly;
//!
//! let p: LaurentPoly = "t^-1 - 1 + t".parse().unwrap();
//! assert_eq!(p.to_string(), "t^-1 - 1 + t");
//! assert_eq!(p.canonical_form().to_string(), "1 - t + t^2");
//! ```
//!
//! The accepted grammar (whitespace is ignored everywhere):
//!
//! ```text
//! poly  := "0" | ["-"] term (("+" | "-") term)*
//! term  := coeff ["*" var] | var
//! var   := "t" ["^" ["-"] digits]
//! coeff := digits
//! ```
//!
//! Terms may repeat an exponent; they are summed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("substitution t -> t^0 is degenerate")]
    ZeroSubstitution,
    #[error("the zero polynomial has no breadth")]
    ZeroBreadth,
    #[error("polynomial parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// An element of `Z[t, 1/t]`, stored sparsely as exponent -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * t^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds `c[0] t^low + c[1] t^(low+1) + ...`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(low + k as i64, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// `±t^n` for some `n`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// Iterates over `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + n, c.clone())).collect(),
        }
    }

    /// Substitutes `t -> t^w`.
    pub fn subst_power(&self, w: u64) -> Result<Self, LaurentError> {
        if w == 0 {
            return Err(LaurentError::ZeroSubstitution);
        }
        let w = i64::try_from(w).expect("winding fits in i64");
        Ok(Self {
            terms: self.terms.iter().map(|(&e, c)| (e * w, c.clone())).collect(),
        })
    }

    /// Substitutes `t -> 1/t`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The representative of `{±t^n · self}` with lowest exponent 0 and a
    /// positive lowest coefficient.
    pub fn canonical_form(&self) -> Self {
        let Some(low) = self.min_exp() else {
            return Self::zero();
        };
        let shifted = self.shift(-low);
        if shifted.terms[&0].is_negative() {
            -shifted
        } else {
            shifted
        }
    }

    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Degree span `max_exp - min_exp`.
    pub fn breadth(&self) -> Result<u64, LaurentError> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as u64),
            _ => Err(LaurentError::ZeroBreadth),
        }
    }

    /// Value at `t = 1`, i.e. the sum of the coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact quotient `self / divisor`, or `None` when `divisor` does not
    /// divide `self` in `Z[t, 1/t]` (or is zero).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (d_lo, d_hi) = (divisor.min_exp()?, divisor.max_exp()?);
        let d_lead = &divisor.terms[&d_hi];
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let floor = self.min_exp().unwrap_or(0) - d_lo;
        while let Some(r_hi) = rem.max_exp() {
            let e = r_hi - d_hi;
            if e < floor {
                return None;
            }
            let (c, r) = rem.terms[&r_hi].div_rem(d_lead);
            if !r.is_zero() {
                return None;
            }
            let term = Self::monomial(c, e);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ if !mag.is_one() => write!(f, "{mag}*")?,
                _ => {}
            }
            match e {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser::new(s).parse()
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, message: impl Into<String>) -> LaurentError {
        LaurentError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        text.parse().ok()
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let negative = self.eat(b'-');
        let mag = self.digits().ok_or_else(|| self.err("expected exponent"))?;
        let mag = i64::try_from(mag).map_err(|_| self.err("exponent out of range"))?;
        Ok(if negative { -mag } else { mag })
    }

    fn term(&mut self) -> Result<(i64, BigInt), LaurentError> {
        let coeff = self.digits();
        let has_var = match (&coeff, self.peek()) {
            (Some(_), Some(b'*')) => {
                self.pos += 1;
                if !self.eat(b't') {
                    return Err(self.err("expected 't' after '*'"));
                }
                true
            }
            (_, Some(b't')) => {
                self.pos += 1;
                true
            }
            (Some(_), _) => false,
            (None, _) => return Err(self.err("expected coefficient or 't'")),
        };
        let exp = if has_var { self.exponent()? } else { 0 };
        Ok((exp, coeff.unwrap_or_else(BigInt::one)))
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut poly = LaurentPoly::zero();
        let mut negative = self.eat(b'-');
        loop {
            let (exp, c) = self.term()?;
            poly.add_term(exp, if negative { -c } else { c });
            match self.peek() {
                None => return Ok(poly),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
            self.pos += 1;
        }
    }
}
