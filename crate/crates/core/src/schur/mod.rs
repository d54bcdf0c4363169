//! The quantum Schur algebra `S_v(2,d)`, presented by generators `e`, `f`,
//! `K1^±1`, `K2^±1` and worked with in its integral monomial bases
//! `e^(a) K[b1,b2] f^(c)` (EKF) and `f^(a) K[b1,b2] e^(c)` (FKE).
//!
//! Here `K[b1,b2]` is the idempotent `[K1; b1][K2; b2]` with `b1 + b2 = d`.
//! All products are computed in the EKF basis; FKE is reached through the
//! symmetry automorphism `e <-> f`, `K1 <-> K2`.

mod basis;
mod multiply;
mod reduce;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{gauss_binomial, LaurentPoly};

pub use basis::KBinomCoeffs;
pub use reduce::ReductionRange;

/// Order of the divided powers around the idempotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    /// `e^(a) K[b1,b2] f^(c)`
    #[serde(rename = "EKF")]
    Ekf,
    /// `f^(a) K[b1,b2] e^(c)`
    #[serde(rename = "FKE")]
    Fke,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Ekf => Orientation::Fke,
            Orientation::Fke => Orientation::Ekf,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Ekf => "EKF",
            Orientation::Fke => "FKE",
        })
    }
}

/// Deliberate engine faults, used as negative controls for the verification
/// suites. Never set in normal operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// `reduce_monomial` returns its input unchanged.
    SkipReduction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E,
    F,
    K1,
    K1Inv,
    K2,
    K2Inv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KElement {
    K1,
    K2,
    /// `K = v^-d K1^2`
    K,
}

/// Which of the two generators a commutation rule moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EF {
    E,
    F,
}

/// Position of the idempotent relative to the power before commuting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `K[b1,b2] x^a`
    Left,
    /// `x^a K[b1,b2]`
    Right,
}

/// A monomial `x^(a) K[b1,b2] y^(c)`; its orientation is carried by the
/// surrounding [`Element`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub a: u32,
    pub b1: u32,
    pub b2: u32,
    pub c: u32,
}

impl Monomial {
    pub const fn new(a: u32, b1: u32, b2: u32, c: u32) -> Self {
        Self { a, b1, b2, c }
    }

    pub fn idempotent(b1: u32, b2: u32) -> Self {
        Self::new(0, b1, b2, 0)
    }

    pub fn fake_degree(&self, orientation: Orientation) -> u32 {
        match orientation {
            Orientation::Ekf => self.a + self.b1 + self.c,
            Orientation::Fke => self.a + self.b2 + self.c,
        }
    }

    pub fn height(&self) -> u32 {
        self.a + self.c
    }

    /// `s = fake degree - d`; positive exactly when the monomial needs reducing.
    pub fn defect(&self, d: u32, orientation: Orientation) -> i64 {
        self.fake_degree(orientation) as i64 - d as i64
    }

    pub fn is_canonical(&self, d: u32, orientation: Orientation) -> bool {
        self.b1 + self.b2 == d && self.fake_degree(orientation) <= d
    }

    /// Image under the symmetry `e <-> f`, `K1 <-> K2`, which carries an
    /// EKF monomial onto an FKE monomial and back.
    pub fn swapped(&self) -> Self {
        Self::new(self.a, self.b2, self.b1, self.c)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b1, self.b2, self.c)
    }
}

struct Inner {
    d: u32,
    idempotents: Vec<(u32, u32)>,
    binomials: RwLock<HashMap<(i64, i64), LaurentPoly>>,
    fault: Option<Fault>,
}

/// Fixed tensor degree `d` plus cached quantum binomials. Cheap to clone.
#[derive(Clone)]
pub struct Context {
    inner: Arc<Inner>,
}

impl Context {
    pub fn new(d: u32) -> Self {
        Self::build(d, None)
    }

    /// A context whose engine misbehaves in a controlled way.
    pub fn with_fault(d: u32, fault: Fault) -> Self {
        Self::build(d, Some(fault))
    }

    fn build(d: u32, fault: Option<Fault>) -> Self {
        Context {
            inner: Arc::new(Inner {
                d,
                idempotents: (0..=d).map(|b1| (b1, d - b1)).collect(),
                binomials: RwLock::new(HashMap::new()),
                fault,
            }),
        }
    }

    pub fn d(&self) -> u32 {
        self.inner.d
    }

    pub fn fault(&self) -> Option<Fault> {
        self.inner.fault
    }

    /// `(b1, b2)` with `b1 + b2 = d`, `b1` ascending.
    pub fn idempotents(&self) -> &[(u32, u32)] {
        &self.inner.idempotents
    }

    pub fn binomial(&self, r: i64, s: i64) -> LaurentPoly {
        if let Some(p) = self.inner.binomials.read().unwrap().get(&(r, s)) {
            return p.clone();
        }
        let p = gauss_binomial(r, s);
        self.inner
            .binomials
            .write()
            .unwrap()
            .insert((r, s), p.clone());
        p
    }

    pub(crate) fn check_idempotent(&self, b1: u32, b2: u32) -> Result<()> {
        if b1 + b2 != self.d() {
            return Err(Error::IndexOutOfRange(format!(
                "K[{b1},{b2}] requires b1 + b2 = {}",
                self.d()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_same(&self, other: &Context) -> Result<()> {
        if self.d() != other.d() {
            return Err(Error::ContextMismatch {
                left: self.d(),
                right: other.d(),
            });
        }
        Ok(())
    }

    /// Canonical basis monomials in the given orientation, ordered by `(a, b1, c)`.
    pub fn basis(&self, orientation: Orientation) -> Vec<Monomial> {
        let d = self.d();
        let mut out = Vec::new();
        for a in 0..=d {
            for &(b1, b2) in self.idempotents() {
                for c in 0..=d {
                    let m = Monomial::new(a, b1, b2, c);
                    if m.is_canonical(d, orientation) {
                        out.push(m);
                    }
                }
            }
        }
        out
    }

    pub fn zero(&self, orientation: Orientation) -> Element {
        Element {
            ctx: self.clone(),
            orientation,
            terms: BTreeMap::new(),
        }
    }

    /// Sum of all idempotents; it has the same expression in both bases.
    pub fn identity(&self) -> Element {
        self.identity_in(Orientation::Ekf)
    }

    pub fn identity_in(&self, orientation: Orientation) -> Element {
        let mut out = self.zero(orientation);
        for &(b1, b2) in self.idempotents() {
            out.add_term(Monomial::idempotent(b1, b2), LaurentPoly::one());
        }
        out
    }

    /// Scalar multiple of the identity.
    pub fn scalar(&self, s: &LaurentPoly) -> Element {
        self.identity().scale(s)
    }

    /// A single canonical basis monomial with coefficient 1.
    pub fn basis_element(&self, m: Monomial, orientation: Orientation) -> Result<Element> {
        if !m.is_canonical(self.d(), orientation) {
            return Err(Error::IndexOutOfRange(format!(
                "{m} is not a canonical {orientation} monomial for d = {}",
                self.d()
            )));
        }
        let mut out = self.zero(orientation);
        out.add_term(m, LaurentPoly::one());
        Ok(out)
    }

    pub fn idempotent(&self, b1: u32, b2: u32) -> Result<Element> {
        self.check_idempotent(b1, b2)?;
        self.basis_element(Monomial::idempotent(b1, b2), Orientation::Ekf)
    }

    /// Product of two idempotents: `K[p]` when they agree, zero otherwise.
    pub fn idempotent_mul(&self, p: (u32, u32), q: (u32, u32)) -> Result<Element> {
        self.check_idempotent(p.0, p.1)?;
        self.check_idempotent(q.0, q.1)?;
        if p == q {
            self.idempotent(p.0, p.1)
        } else {
            Ok(self.zero(Orientation::Ekf))
        }
    }

    /// Moves `x^a` (`x` = `e` or `f`) across `K[b1,b2]`, returning the
    /// idempotent on the other side, or `None` when the product vanishes.
    ///
    /// * `K[b1,b2] e^a = e^a K[b1-a,b2+a]` if `b1 >= a`
    /// * `e^a K[b1,b2] = K[b1+a,b2-a] e^a` if `b2 >= a`
    /// * `f^a K[b1,b2] = K[b1-a,b2+a] f^a` if `b1 >= a`
    /// * `K[b1,b2] f^a = f^a K[b1+a,b2-a]` if `b2 >= a`
    pub fn commute_power_past_idempotent(
        &self,
        side: Side,
        gen: EF,
        a: u32,
        (b1, b2): (u32, u32),
    ) -> Result<Option<(u32, u32)>> {
        self.check_idempotent(b1, b2)?;
        let lowers_b1 = matches!((side, gen), (Side::Left, EF::E) | (Side::Right, EF::F));
        Ok(if lowers_b1 {
            (b1 >= a).then(|| (b1 - a, b2 + a))
        } else {
            (b2 >= a).then(|| (b1 + a, b2 - a))
        })
    }

    /// `K1`, `K2` or `K = v^-d K1^2`, expanded over the idempotents.
    pub fn k_element(&self, which: KElement) -> Element {
        let d = self.d() as i64;
        let mut out = self.zero(Orientation::Ekf);
        for &(b1, b2) in self.idempotents() {
            let exp = match which {
                KElement::K1 => b1 as i64,
                KElement::K2 => b2 as i64,
                KElement::K => 2 * b1 as i64 - d,
            };
            out.add_term(Monomial::idempotent(b1, b2), LaurentPoly::v_pow(exp));
        }
        out
    }

    /// The generator `x` as an element (`e` or `f` expanded over idempotents).
    pub fn generator(&self, g: Generator) -> Result<Element> {
        self.identity().right_mul_generator(g)
    }

    /// `[K1; b]` (or `[K2; b]` with `second`) expanded over the idempotents.
    pub fn k_binomial(&self, b: i64, second: bool) -> Element {
        let mut out = self.zero(Orientation::Ekf);
        for &(b1, b2) in self.idempotents() {
            let top = if second { b2 } else { b1 };
            out.add_term(Monomial::idempotent(b1, b2), self.binomial(top as i64, b));
        }
        out
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Context")
            .field("d", &self.d())
            .field("fault", &self.fault())
            .finish()
    }
}

/// A `Z[v,v^-1]`-linear combination of monomials of one orientation.
#[derive(Clone)]
pub struct Element {
    ctx: Context,
    orientation: Orientation,
    terms: BTreeMap<Monomial, LaurentPoly>,
}

impl Element {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn d(&self) -> u32 {
        self.ctx.d()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in `(a, b1, c)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// True when every stored monomial is canonical for this orientation.
    pub fn is_canonical(&self) -> bool {
        let d = self.d();
        self.terms
            .keys()
            .all(|m| m.is_canonical(d, self.orientation))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Element, s: &LaurentPoly) {
        debug_assert_eq!(self.orientation, other.orientation);
        if s.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(*m, c * s);
        }
    }

    pub fn scale(&self, s: &LaurentPoly) -> Element {
        let mut out = self.ctx.zero(self.orientation);
        out.add_scaled(self, s);
        out
    }

    /// Same coefficients, other orientation, monomials swapped termwise:
    /// the symmetry automorphism applied to `self`.
    pub fn symmetry(&self) -> Element {
        Element {
            ctx: self.ctx.clone(),
            orientation: self.orientation.flipped(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(), c.clone()))
                .collect(),
        }
    }

    fn assert_compatible(&self, other: &Element) {
        assert_eq!(self.d(), other.d(), "elements from different contexts");
        assert_eq!(
            self.orientation, other.orientation,
            "elements in different orientations"
        );
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.d() == other.d() && self.orientation == other.orientation && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(d={}, {}: {})", self.d(), self.orientation, self)
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics if the operands differ in `d` or orientation.
    fn add(self, rhs: &Element) -> Element {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentPoly::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    /// Panics if the operands differ in `d` or orientation.
    fn sub(self, rhs: &Element) -> Element {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        out.add_scaled(rhs, &LaurentPoly::constant(-1));
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&LaurentPoly::constant(-1))
    }
}
