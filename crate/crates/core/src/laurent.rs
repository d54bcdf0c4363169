//! Exact arithmetic in the Laurent polynomial ring `Z[v, v^-1]` together with
//! the quantum integers, factorials and Gaussian binomials built on top of it.
//!
//! A [`LaurentPoly`] is a sparse map from exponent to a nonzero big-integer
//! coefficient. The map is kept canonical (no zero coefficients), so derived
//! equality is ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number; the value of a Laurent polynomial at a rational point.
pub type RationalScalar = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn v() -> Self {
        Self::v_pow(1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True for the units `±v^k` of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor` in `Z[v, v^-1]`.
    ///
    /// Long division from the top exponent down. Fails with
    /// [`Error::NotDivisible`] as soon as a leading coefficient does not divide
    /// or the remainder drops below the lowest possible quotient exponent.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        let (Some(top_y), Some(low_y)) = (divisor.max_exp(), divisor.min_exp()) else {
            return Err(Error::DivisionByZero);
        };
        let Some(low_x) = self.min_exp() else {
            return Ok(Self::zero());
        };
        let lead_y = &divisor.terms[&top_y];
        if divisor.terms.len() == 1 {
            // monomial divisor: termwise
            let mut out = BTreeMap::new();
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(lead_y);
                if !r.is_zero() {
                    return Err(self.not_divisible(divisor));
                }
                out.insert(e - top_y, q);
            }
            return Ok(Self { terms: out });
        }
        let floor = low_x - low_y;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(top_r) = rem.max_exp() {
            let qe = top_r - top_y;
            if qe < floor {
                return Err(self.not_divisible(divisor));
            }
            let (qc, r) = rem.terms[&top_r].div_rem(lead_y);
            if !r.is_zero() {
                return Err(self.not_divisible(divisor));
            }
            for (e, c) in &divisor.terms {
                rem.add_term(e + qe, -(c * &qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    fn not_divisible(&self, divisor: &LaurentPoly) -> Error {
        Error::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        }
    }

    /// Substitutes `v := t`.
    pub fn eval_at(&self, t: &RationalScalar) -> Result<RationalScalar> {
        if self.is_zero() {
            return Ok(RationalScalar::zero());
        }
        if t.is_zero() {
            return Err(Error::EvalAtZero);
        }
        let mut acc = RationalScalar::zero();
        for (e, c) in &self.terms {
            let p = if *e >= 0 {
                num_traits::pow(t.clone(), *e as usize)
            } else {
                num_traits::pow(t.recip(), e.unsigned_abs() as usize)
            };
            acc += p * RationalScalar::from_integer(c.clone());
        }
        Ok(acc)
    }

    /// Parses the textual form, reporting error positions shifted by `offset`.
    pub(crate) fn parse_at(s: &str, offset: usize) -> Result<Self> {
        TextParser {
            src: s.as_bytes(),
            pos: 0,
            offset,
        }
        .poly()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents: `v^4 + 2 - 3v^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if *e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            if *e == 1 {
                f.write_str("v")?;
            } else {
                write!(f, "v^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_at(s, 0)
    }
}

struct TextParser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl TextParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos + self.offset, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn poly(mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                None => break,
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.skip_ws();
            let (e, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            out.add_term(e, c);
            first = false;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(i64, BigInt)> {
        let coeff = match self.digits() {
            Some(ds) => Some(ds.parse::<BigInt>().map_err(|e| self.err(e.to_string()))?),
            None => None,
        };
        self.skip_ws();
        let mut had_star = false;
        if self.peek() == Some(b'*') {
            if coeff.is_none() {
                return Err(self.err("'*' without a coefficient"));
            }
            self.pos += 1;
            had_star = true;
            self.skip_ws();
        }
        if self.peek() != Some(b'v') {
            if had_star {
                return Err(self.err("expected 'v'"));
            }
            return match coeff {
                Some(c) => Ok((0, c)),
                None => Err(self.err("expected a coefficient or 'v'")),
            };
        }
        self.pos += 1;
        let mut exp = 1i64;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let ds = self.digits().ok_or_else(|| self.err("expected exponent"))?;
            exp = ds.parse::<i64>().map_err(|e| self.err(e.to_string()))?;
            if neg {
                exp = -exp;
            }
        }
        Ok((exp, coeff.unwrap_or_else(BigInt::one)))
    }
}

/// JSON form: `[[exponent, "coefficient"], ...]`, ascending exponent.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
        let mut out = LaurentPoly::zero();
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(de::Error::custom)?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// The quantum integer `[r] = (v^r - v^-r) / (v - v^-1)`.
pub fn quantum_int(r: i64) -> LaurentPoly {
    let n = r.abs();
    let sign: i64 = if r < 0 { -1 } else { 1 };
    LaurentPoly::from_terms((0..n).map(|i| (n - 1 - 2 * i, sign)))
}

/// `[m]! = [m][m-1]...[1]`.
pub fn quantum_factorial(m: u32) -> LaurentPoly {
    (1..=m as i64).fold(LaurentPoly::one(), |acc, r| &acc * &quantum_int(r))
}

/// The Gaussian binomial `[r; s] = [r][r-1]...[r-s+1] / [s]!`, zero for `s < 0`.
pub fn gauss_binomial(r: i64, s: i64) -> LaurentPoly {
    if s < 0 {
        return LaurentPoly::zero();
    }
    let num = (0..s).fold(LaurentPoly::one(), |acc, i| &acc * &quantum_int(r - i));
    if num.is_zero() {
        return num;
    }
    num.exact_div(&quantum_factorial(s as u32))
        .expect("Gaussian binomials are integral")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("v + v^-1");
        let b = p("v - v^-1");
        assert_eq!(&a * &b, p("v^2 - v^-2"));
        assert_eq!(&a + &LaurentPoly::zero(), a);
        assert_eq!(&a * &p("v^2 + v^-2"), p("v^3 + v + v^-1 + v^-3"));
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(
            quantum_int(4).exact_div(&quantum_int(2)).unwrap(),
            p("v^2 + v^-2")
        );
        let x = p("3v^5 - 7 + v^-9");
        assert_eq!(x.exact_div(&LaurentPoly::one()).unwrap(), x);
        assert!(matches!(
            quantum_int(3).exact_div(&quantum_int(2)),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(
            x.exact_div(&LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(p("2v").exact_div(&p("4")).is_err());
        assert_eq!(p("4v^3").exact_div(&p("-2v")).unwrap(), p("-2v^2"));
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_int(0).is_zero());
        assert_eq!(quantum_int(2), p("v + v^-1"));
        assert_eq!(quantum_int(-3), p("-v^2 - 1 - v^-2"));
        assert!(quantum_factorial(0).is_one());
        assert_eq!(quantum_factorial(2), p("v + v^-1"));
        assert_eq!(quantum_factorial(3), &p("v + v^-1") * &p("v^2 + 1 + v^-2"));
    }

    #[test]
    fn binomial_examples() {
        for r in -5..5 {
            assert!(gauss_binomial(r, 0).is_one());
        }
        assert!(gauss_binomial(2, 3).is_zero());
        assert_eq!(gauss_binomial(4, 2), p("v^4 + v^2 + 2 + v^-2 + v^-4"));
        assert!(gauss_binomial(-1, 2).is_one());
        assert!(gauss_binomial(3, -1).is_zero());
    }

    #[test]
    fn evaluation() {
        let one = RationalScalar::one();
        assert_eq!(
            p("v + v^-1").eval_at(&one).unwrap(),
            RationalScalar::from_integer(2.into())
        );
        assert_eq!(
            gauss_binomial(4, 2).eval_at(&one).unwrap(),
            RationalScalar::from_integer(6.into())
        );
        let half = RationalScalar::new(1.into(), 2.into());
        assert!(LaurentPoly::zero().eval_at(&half).unwrap().is_zero());
        assert_eq!(
            p("v^-1").eval_at(&half).unwrap(),
            RationalScalar::from_integer(2.into())
        );
        assert_eq!(
            p("v").eval_at(&RationalScalar::zero()),
            Err(Error::EvalAtZero)
        );
    }

    #[test]
    fn text_form() {
        let x = LaurentPoly::from_terms([(4, 1), (0, 2), (-2, -1)]);
        assert_eq!(x.to_string(), "v^4 + 2 - v^-2");
        assert_eq!(p("v").to_string(), "v");
        assert_eq!(p("-3v^2 + 5*v^-1").to_string(), "-3v^2 + 5v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("v - v"), LaurentPoly::zero());
        assert!("v +".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!(matches!(
            "v ^ x".parse::<LaurentPoly>(),
            Err(Error::Parse { pos: 4, .. })
        ));
    }

    #[test]
    fn json_form() {
        let x = p("v^4 + 2 - v^-2");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"[[-2,"-1"],[0,"2"],[4,"1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
    }
}
