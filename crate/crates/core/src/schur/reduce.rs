use serde::Serialize;

use super::{Context, Element, Fault, Monomial, Orientation};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Defect of a monomial and the summation range its reduction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionRange {
    pub defect: i64,
    /// Inclusive `(s, min(a, c))`; `None` when the monomial is already
    /// canonical or the sum is empty.
    pub range: Option<(u32, u32)>,
}

impl Context {
    pub fn reduction_range(&self, m: Monomial, orientation: Orientation) -> ReductionRange {
        let s = m.defect(self.d(), orientation);
        let hi = m.a.min(m.c) as i64;
        let range = (s > 0 && s <= hi).then_some((s as u32, hi as u32));
        ReductionRange { defect: s, range }
    }

    /// Rewrites `x^(a) K[b1,b2] y^(c)` in the canonical basis of `orientation`.
    ///
    /// With `s` the defect, a monomial with `s <= 0` is returned as is;
    /// otherwise (EKF)
    ///
    /// `sum_{k=s}^{min(a,c)} (-1)^(k-s) [k-1; s-1] [b1+k; k] e^(a-k) K[b1+k,b2-k] f^(c-k)`
    ///
    /// and the mirror image with `b1`, `b2` exchanged for FKE. Every emitted
    /// term is canonical after this single pass.
    pub fn reduce_monomial(&self, m: Monomial, orientation: Orientation) -> Result<Element> {
        self.check_idempotent(m.b1, m.b2)?;
        let d = self.d();
        let mut out = self.zero(orientation);
        let s = m.defect(d, orientation);
        if s <= 0 || self.fault() == Some(Fault::SkipReduction) {
            out.add_term(m, LaurentPoly::one());
            return Ok(out);
        }
        let s = s as u32;
        for k in s..=m.a.min(m.c) {
            let (lowered, raised) = match orientation {
                Orientation::Ekf => (m.b2, m.b1),
                Orientation::Fke => (m.b1, m.b2),
            };
            if k > lowered {
                return Err(Error::Invariant(format!(
                    "reduction of {m} ({orientation}) reached k = {k} beyond the idempotent index {lowered}"
                )));
            }
            let mut coeff = &self.binomial(k as i64 - 1, s as i64 - 1)
                * &self.binomial((raised + k) as i64, k as i64);
            if (k - s) % 2 == 1 {
                coeff = -coeff;
            }
            let term = match orientation {
                Orientation::Ekf => Monomial::new(m.a - k, m.b1 + k, m.b2 - k, m.c - k),
                Orientation::Fke => Monomial::new(m.a - k, m.b1 - k, m.b2 + k, m.c - k),
            };
            if !term.is_canonical(d, orientation) {
                return Err(Error::Invariant(format!(
                    "reduction of {m} ({orientation}) emitted non-canonical {term}"
                )));
            }
            out.add_term(term, coeff);
        }
        Ok(out)
    }
}
