//! Normal-form multiplication. Everything reduces to right multiplication of
//! an EKF element by a single generator or an idempotent.

use super::{Element, Generator, Monomial, Orientation, EF};
use crate::error::{Error, Result};
use crate::laurent::{quantum_factorial, quantum_int};

impl Element {
    /// `self * g` for a single generator, in `self`'s orientation.
    pub fn right_mul_generator(&self, g: Generator) -> Result<Element> {
        self.in_ekf(|x| x.ekf_right_mul_generator(g))
    }

    /// `self * K[b1,b2]`.
    pub fn right_mul_idempotent(&self, (b1, b2): (u32, u32)) -> Result<Element> {
        self.ctx.check_idempotent(b1, b2)?;
        self.in_ekf(|x| Ok(x.ekf_right_mul_idempotent(b1)))
    }

    /// `self * x^(m)` for `x` = `e` or `f`.
    pub fn right_mul_divided(&self, gen: EF, m: u32) -> Result<Element> {
        self.in_ekf(|x| x.ekf_right_mul_divided(gen, m))
    }

    /// The product `self * rhs`, expressed in `self`'s orientation.
    pub fn multiply(&self, rhs: &Element) -> Result<Element> {
        self.ctx.check_same(&rhs.ctx)?;
        let rhs = rhs.convert_orientation(Orientation::Ekf)?;
        self.in_ekf(|x| {
            let mut out = x.ctx.zero(Orientation::Ekf);
            for (m, c) in &rhs.terms {
                let p = x
                    .ekf_right_mul_divided(EF::E, m.a)?
                    .ekf_right_mul_idempotent(m.b1)
                    .ekf_right_mul_divided(EF::F, m.c)?;
                out.add_scaled(&p, c);
            }
            Ok(out)
        })
    }

    pub fn pow(&self, n: u32) -> Result<Element> {
        let mut acc = self.ctx.identity_in(self.orientation);
        for _ in 0..n {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    fn in_ekf(&self, op: impl FnOnce(&Element) -> Result<Element>) -> Result<Element> {
        match self.orientation {
            Orientation::Ekf => op(self),
            Orientation::Fke => op(&self.convert_orientation(Orientation::Ekf)?)?
                .convert_orientation(Orientation::Fke),
        }
    }

    pub(super) fn ekf_right_mul_generator(&self, g: Generator) -> Result<Element> {
        debug_assert_eq!(self.orientation, Orientation::Ekf);
        let ctx = &self.ctx;
        let mut out = ctx.zero(Orientation::Ekf);
        for (m, coeff) in &self.terms {
            // weight of the right end of the monomial: K[b1+c, b2-c]
            let right1 = (m.b1 + m.c) as i64;
            let right2 = m.b2 as i64 - m.c as i64;
            match g {
                Generator::K1 => out.add_term(*m, coeff.shift(right1)),
                Generator::K1Inv => out.add_term(*m, coeff.shift(-right1)),
                Generator::K2 => out.add_term(*m, coeff.shift(right2)),
                Generator::K2Inv => out.add_term(*m, coeff.shift(-right2)),
                Generator::F => {
                    // e^(a) K f^(c) f = [c+1] e^(a) K f^(c+1)
                    let next = Monomial::new(m.a, m.b1, m.b2, m.c + 1);
                    let r = ctx.reduce_monomial(next, Orientation::Ekf)?;
                    out.add_scaled(&r, &(coeff * &quantum_int(m.c as i64 + 1)));
                }
                Generator::E => {
                    // f^(c) e = e f^(c) - [K1 K2^-1; c-1; 1] f^(c-1), and the
                    // K-binomial acts on K[b1,b2] as [b1 - b2 + c - 1].
                    if m.b1 >= 1 {
                        let moved = Monomial::new(m.a + 1, m.b1 - 1, m.b2 + 1, m.c);
                        let r = ctx.reduce_monomial(moved, Orientation::Ekf)?;
                        out.add_scaled(&r, &(coeff * &quantum_int(m.a as i64 + 1)));
                    }
                    if m.c >= 1 {
                        let s = m.b1 as i64 - m.b2 as i64 + m.c as i64 - 1;
                        let lower = Monomial::new(m.a, m.b1, m.b2, m.c - 1);
                        let r = ctx.reduce_monomial(lower, Orientation::Ekf)?;
                        out.add_scaled(&r, &-(coeff * &quantum_int(s)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Keeps the terms whose right weight is `K[b1', *]`.
    pub(super) fn ekf_right_mul_idempotent(&self, b1: u32) -> Element {
        let mut out = self.ctx.zero(Orientation::Ekf);
        for (m, c) in &self.terms {
            if m.b1 + m.c == b1 {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    pub(super) fn ekf_right_mul_divided(&self, gen: EF, m: u32) -> Result<Element> {
        let g = match gen {
            EF::E => Generator::E,
            EF::F => Generator::F,
        };
        let mut acc = self.clone();
        for _ in 0..m {
            if acc.is_zero() {
                break;
            }
            acc = acc.ekf_right_mul_generator(g)?;
        }
        if m < 2 {
            return Ok(acc);
        }
        let fact = quantum_factorial(m);
        let mut out = self.ctx.zero(Orientation::Ekf);
        for (mono, c) in acc.terms {
            let q = c.exact_div(&fact).map_err(|e| match e {
                Error::NotDivisible { dividend, divisor } => Error::Invariant(format!(
                    "non-integral divided power: `{dividend}` / `{divisor}` at {mono}"
                )),
                other => other,
            })?;
            out.add_term(mono, q);
        }
        Ok(out)
    }
}
