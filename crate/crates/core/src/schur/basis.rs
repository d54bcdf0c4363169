//! Base changes: EKF <-> FKE, and EKF <-> the `e^(a) [K1; b] f^(c)` basis.

use std::collections::BTreeMap;

use super::{Context, Element, Monomial, Orientation, EF};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Coefficients on `e^(a) [K1; b] f^(c)`, keyed by `(a, b, c)`.
pub type KBinomCoeffs = BTreeMap<(u32, u32, u32), LaurentPoly>;

impl Element {
    /// The same algebra element written in the `target` basis.
    pub fn convert_orientation(&self, target: Orientation) -> Result<Element> {
        if self.orientation == target {
            return Ok(self.clone());
        }
        match target {
            Orientation::Ekf => self.fke_to_ekf(),
            // x = sym(sym(x)), and sym(x) is an FKE expression we can multiply out.
            Orientation::Fke => Ok(self.symmetry().fke_to_ekf()?.symmetry()),
        }
    }

    fn fke_to_ekf(&self) -> Result<Element> {
        debug_assert_eq!(self.orientation, Orientation::Fke);
        let one = self.ctx.identity();
        let mut out = self.ctx.zero(Orientation::Ekf);
        for (m, c) in &self.terms {
            let p = one
                .ekf_right_mul_divided(EF::F, m.a)?
                .ekf_right_mul_idempotent(m.b1)
                .ekf_right_mul_divided(EF::E, m.c)?;
            out.add_scaled(&p, c);
        }
        Ok(out)
    }

    /// Coordinates in the basis `{e^(a) [K1; b] f^(c) : a + b + c <= d}`.
    ///
    /// The change of basis is unitriangular: `e^(a) [K1;b] f^(c)` equals
    /// `e^(a) K[b, d-b] f^(c)` plus terms with the same `(a, c)` and larger
    /// `b1`, plus terms of strictly smaller `a` and `c`. Peeling off the
    /// highest, lowest-`b1` term repeatedly therefore inverts it over `Z[v,v^-1]`.
    pub fn change_to_kbinom_basis(&self) -> Result<KBinomCoeffs> {
        let mut rest = self.convert_orientation(Orientation::Ekf)?;
        let d = self.d();
        let mut out = KBinomCoeffs::new();
        let cap = 4 * (d as usize + 1).pow(3) + 16;
        for _ in 0..cap {
            let Some((m, coeff)) = rest
                .terms
                .iter()
                .min_by_key(|(m, _)| (std::cmp::Reverse(m.height()), m.b1, m.a))
                .map(|(m, c)| (*m, c.clone()))
            else {
                return Ok(out);
            };
            if m.a + m.b1 + m.c > d {
                return Err(Error::Invariant(format!(
                    "non-canonical term {m} in K-binomial conversion"
                )));
            }
            let image = self.ctx.kbinom_image(m.a, m.b1, m.c)?;
            if !image.coeff(&m).is_one() {
                return Err(Error::Invariant(format!(
                    "K-binomial base change not unitriangular at {m}"
                )));
            }
            rest.add_scaled(&image, &-&coeff);
            *out.entry((m.a, m.b1, m.c)).or_default() += &coeff;
        }
        Err(Error::Invariant(
            "K-binomial conversion did not terminate".into(),
        ))
    }
}

impl Context {
    /// `e^(a) [K1; b] f^(c)` in the EKF basis, for any `(a, b, c)`.
    pub fn kbinom_image(&self, a: u32, b: u32, c: u32) -> Result<Element> {
        let mut out = self.zero(Orientation::Ekf);
        for &(b1, b2) in self.idempotents() {
            let w = self.binomial(b1 as i64, b as i64);
            if w.is_zero() {
                continue;
            }
            let r = self.reduce_monomial(Monomial::new(a, b1, b2, c), Orientation::Ekf)?;
            out.add_scaled(&r, &w);
        }
        Ok(out)
    }

    /// Inverse of [`Element::change_to_kbinom_basis`]; triples with
    /// `a + b + c > d` are accepted and reduced.
    pub fn change_from_kbinom_basis(&self, coeffs: &KBinomCoeffs) -> Result<Element> {
        let mut out = self.zero(Orientation::Ekf);
        for (&(a, b, c), coeff) in coeffs {
            out.add_scaled(&self.kbinom_image(a, b, c)?, coeff);
        }
        Ok(out)
    }
}
