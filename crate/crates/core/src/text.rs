//! Text and JSON forms of elements.
//!
//! Text grammar:
//!
//! ```text
//! element := '0' | term ('+' term)*
//! term    := ['(' laurent ')' '*'] factor+
//! factor  := 'e^(' nat ')' | 'K[' nat ',' nat ']' | 'f^(' nat ')'
//! ```
//!
//! A term whose factors form a monomial of the requested orientation is
//! normalized with `reduce_monomial`; any other word is multiplied out.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::schur::{Context, Element, Monomial, Orientation, EF};

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c}) * ")?;
            }
            f.write_str(&format_monomial(m, self.orientation()))?;
        }
        Ok(())
    }
}

/// `e^(a) K[b1,b2] f^(c)` (or the FKE order) with zero powers omitted.
pub fn format_monomial(m: &Monomial, orientation: Orientation) -> String {
    let (left, right) = match orientation {
        Orientation::Ekf => ('e', 'f'),
        Orientation::Fke => ('f', 'e'),
    };
    let mut parts = Vec::with_capacity(3);
    if m.a > 0 {
        parts.push(format!("{left}^({})", m.a));
    }
    parts.push(format!("K[{},{}]", m.b1, m.b2));
    if m.c > 0 {
        parts.push(format!("{right}^({})", m.c));
    }
    parts.join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    E(u32),
    F(u32),
    K(u32, u32),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn factor(&mut self) -> Result<Option<Factor>> {
        self.skip_ws();
        match self.peek() {
            Some(g @ (b'e' | b'f')) => {
                self.pos += 1;
                self.expect(b'^')?;
                self.expect(b'(')?;
                let n = self.nat()?;
                self.expect(b')')?;
                Ok(Some(if g == b'e' {
                    Factor::E(n)
                } else {
                    Factor::F(n)
                }))
            }
            Some(b'K') => {
                self.pos += 1;
                self.expect(b'[')?;
                let b1 = self.nat()?;
                self.expect(b',')?;
                let b2 = self.nat()?;
                self.expect(b']')?;
                Ok(Some(Factor::K(b1, b2)))
            }
            _ => Ok(None),
        }
    }

    fn term(&mut self) -> Result<(LaurentPoly, Vec<Factor>)> {
        self.skip_ws();
        let mut coeff = LaurentPoly::one();
        if self.peek() == Some(b'(') {
            let open = self.pos;
            let close = self.src[open..]
                .find(')')
                .map(|i| open + i)
                .ok_or_else(|| self.err("unclosed '('"))?;
            coeff = LaurentPoly::parse_at(&self.src[open + 1..close], open + 1)?;
            self.pos = close + 1;
            self.expect(b'*')?;
        }
        let mut factors = Vec::new();
        while let Some(fac) = self.factor()? {
            factors.push(fac);
        }
        if factors.is_empty() {
            return Err(self.err("expected e^(n), K[n,n] or f^(n)"));
        }
        Ok((coeff, factors))
    }
}

fn monomial_shape(factors: &[Factor], orientation: Orientation) -> Option<Monomial> {
    let (mut a, mut c) = (0, 0);
    let mut rest = factors;
    let left = |f: &Factor| match (orientation, f) {
        (Orientation::Ekf, Factor::E(n)) | (Orientation::Fke, Factor::F(n)) => Some(*n),
        _ => None,
    };
    let right = |f: &Factor| match (orientation, f) {
        (Orientation::Ekf, Factor::F(n)) | (Orientation::Fke, Factor::E(n)) => Some(*n),
        _ => None,
    };
    if let Some(n) = rest.first().and_then(left) {
        a = n;
        rest = &rest[1..];
    }
    let Some(Factor::K(b1, b2)) = rest.first() else {
        return None;
    };
    rest = &rest[1..];
    if let Some(n) = rest.first().and_then(right) {
        c = n;
        rest = &rest[1..];
    }
    rest.is_empty().then_some(Monomial::new(a, *b1, *b2, c))
}

fn evaluate_word(ctx: &Context, factors: &[Factor], orientation: Orientation) -> Result<Element> {
    for f in factors {
        if let Factor::K(b1, b2) = f {
            if b1 + b2 != ctx.d() {
                return Err(Error::IndexOutOfRange(format!(
                    "K[{b1},{b2}] requires b1 + b2 = {}",
                    ctx.d()
                )));
            }
        }
    }
    if let Some(m) = monomial_shape(factors, orientation) {
        return ctx.reduce_monomial(m, orientation);
    }
    let mut acc = ctx.identity();
    for f in factors {
        acc = match *f {
            Factor::E(n) => acc.right_mul_divided(EF::E, n)?,
            Factor::F(n) => acc.right_mul_divided(EF::F, n)?,
            Factor::K(b1, b2) => acc.right_mul_idempotent((b1, b2))?,
        };
    }
    acc.convert_orientation(orientation)
}

/// Parses the text form into a canonical element of the given orientation.
pub fn parse_element(text: &str, ctx: &Context, orientation: Orientation) -> Result<Element> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    if p.src[p.pos..].trim_end() == "0" {
        return Ok(ctx.zero(orientation));
    }
    let mut out = ctx.zero(orientation);
    loop {
        let (coeff, factors) = p.term()?;
        let value = evaluate_word(ctx, &factors, orientation)?;
        out = &out + &value.scale(&coeff);
        p.skip_ws();
        match p.peek() {
            None => return Ok(out),
            Some(b'+') => p.pos += 1,
            Some(_) => return Err(p.err("expected '+' or end of input")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub a: u32,
    pub b1: u32,
    pub b2: u32,
    pub c: u32,
    pub coeff: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub d: u32,
    pub orientation: Orientation,
    pub terms: Vec<TermJson>,
}

impl From<&Element> for ElementJson {
    fn from(x: &Element) -> Self {
        ElementJson {
            d: x.d(),
            orientation: x.orientation(),
            terms: x
                .terms()
                .map(|(m, c)| TermJson {
                    a: m.a,
                    b1: m.b1,
                    b2: m.b2,
                    c: m.c,
                    coeff: c.clone(),
                })
                .collect(),
        }
    }
}

impl Element {
    pub fn to_json(&self) -> ElementJson {
        ElementJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("element JSON is always serializable")
    }
}

impl ElementJson {
    /// Builds the element in `ctx`, reducing any non-canonical terms.
    pub fn to_element(&self, ctx: &Context) -> Result<Element> {
        if self.d != ctx.d() {
            return Err(Error::ContextMismatch {
                left: ctx.d(),
                right: self.d,
            });
        }
        let mut out = ctx.zero(self.orientation);
        for t in &self.terms {
            let m = Monomial::new(t.a, t.b1, t.b2, t.c);
            let r = ctx.reduce_monomial(m, self.orientation)?;
            out = &out + &r.scale(&t.coeff);
        }
        Ok(out)
    }
}

/// Accepts either the text form or the JSON form (detected by a leading `{`).
/// The result is expressed in `orientation`.
pub fn parse_element_auto(input: &str, ctx: &Context, orientation: Orientation) -> Result<Element> {
    let trimmed = input.trim();
    if trimmed.starts_with('{') {
        let json: ElementJson = serde_json::from_str(trimmed).map_err(|e| {
            Error::parse(
                e.column().saturating_sub(1),
                format!("invalid element JSON: {e}"),
            )
        })?;
        json.to_element(ctx)?.convert_orientation(orientation)
    } else {
        parse_element(trimmed, ctx, orientation)
    }
}
