//! Independent ground truth: the action of the generators on `E^{⊗d}`,
//! built by iterated comultiplication from the 2x2 natural representation.
//!
//! Basis vectors of `E^{⊗d}` are bit strings of length `d`, the first tensor
//! factor being the most significant bit; bit 0 is `e_1`, bit 1 is `e_2`.
//! `K1` acts on a bit string by `v^(#zeros)` and `K2` by `v^(#ones)`.

mod checks;
mod matrix;
mod rank;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::laurent::{quantum_factorial, LaurentPoly};
use crate::schur::{Element, Monomial, Orientation, EF};

pub use checks::{verify_defining_relations, verify_lusztig_identities, LusztigBounds};
pub use matrix::LaurentMatrix;
pub use rank::span_rank;

/// Largest `d` for which a representation is built (dimension `2^d`).
pub const MAX_D: u32 = 10;

/// How `e` and `f` are spread over tensor factors. `K = K1 K2^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coproduct {
    /// `Δe = e⊗1 + K⊗e`, `Δf = f⊗K^-1 + 1⊗f`
    Standard,
    /// `Δe = e⊗K + 1⊗e`, `Δf = f⊗1 + K^-1⊗f`
    Mirrored,
    /// `Δx = x⊗1 + 1⊗x`; not a valid coproduct for the quantum algebra,
    /// kept as a negative control.
    Classical,
}

/// Which diagonal operator a K-binomial is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diag {
    K1,
    K2,
    /// `K1 K2^-1`
    K1K2Inv,
}

pub struct OracleRep {
    d: u32,
    coproduct: Coproduct,
    pub e: LaurentMatrix,
    pub f: LaurentMatrix,
    pub k1: LaurentMatrix,
    pub k1_inv: LaurentMatrix,
    pub k2: LaurentMatrix,
    pub k2_inv: LaurentMatrix,
    divided: Mutex<HashMap<(bool, u32), Arc<LaurentMatrix>>>,
}

/// Builds the representation for degree `d` with the standard coproduct,
/// falling back to the mirrored one if the defining relations fail.
pub fn build_rep(d: u32) -> Result<OracleRep> {
    let mut failures = Vec::new();
    for cop in [Coproduct::Standard, Coproduct::Mirrored] {
        let rep = OracleRep::with_coproduct(d, cop)?;
        let report = verify_defining_relations(&rep);
        if report.pass {
            return Ok(rep);
        }
        let ids: Vec<_> = report.failures().map(|c| c.id.clone()).collect();
        failures.push(format!("{cop:?}: {}", ids.join(", ")));
    }
    Err(Error::CoproductCheckFailed(failures.join("; ")))
}

impl OracleRep {
    /// Builds the matrices without running the relation self-check.
    pub fn with_coproduct(d: u32, coproduct: Coproduct) -> Result<Self> {
        if d > MAX_D {
            return Err(Error::DimensionLimit { d, max: MAX_D });
        }
        let one = LaurentPoly::one;
        let v = LaurentPoly::v;
        let e1 = LaurentMatrix::from_entries(2, [(0, 1, one())]);
        let f1 = LaurentMatrix::from_entries(2, [(1, 0, one())]);
        let k1_1 = LaurentMatrix::diagonal([v(), one()]);
        let k2_1 = LaurentMatrix::diagonal([one(), v()]);
        let kk_1 = LaurentMatrix::diagonal([v(), LaurentPoly::v_pow(-1)]);
        let kk_inv_1 = LaurentMatrix::diagonal([LaurentPoly::v_pow(-1), v()]);
        let id2 = LaurentMatrix::identity(2);

        let mut e = LaurentMatrix::zero(1);
        let mut f = LaurentMatrix::zero(1);
        let mut k1 = LaurentMatrix::identity(1);
        let mut k2 = LaurentMatrix::identity(1);
        // K1 K2^-1 and its inverse on the current tensor power
        let mut kk = LaurentMatrix::identity(1);
        let mut kk_inv = LaurentMatrix::identity(1);
        for _ in 0..d {
            let idn = LaurentMatrix::identity(e.dim());
            let (ne, nf) = match coproduct {
                Coproduct::Standard => (
                    e1.kron(&idn).add(&kk_1.kron(&e)),
                    f1.kron(&kk_inv).add(&id2.kron(&f)),
                ),
                Coproduct::Mirrored => (
                    e1.kron(&kk).add(&id2.kron(&e)),
                    f1.kron(&idn).add(&kk_inv_1.kron(&f)),
                ),
                Coproduct::Classical => (
                    e1.kron(&idn).add(&id2.kron(&e)),
                    f1.kron(&idn).add(&id2.kron(&f)),
                ),
            };
            e = ne;
            f = nf;
            k1 = k1_1.kron(&k1);
            k2 = k2_1.kron(&k2);
            kk = kk_1.kron(&kk);
            kk_inv = kk_inv_1.kron(&kk_inv);
        }
        let dim = 1usize << d;
        let inv = |m: &LaurentMatrix| {
            LaurentMatrix::diagonal((0..dim).map(|i| {
                let p = m.get(i, i);
                let (exp, _) = p.terms().next().expect("diagonal K entries are monomials");
                LaurentPoly::v_pow(-exp)
            }))
        };
        Ok(OracleRep {
            d,
            coproduct,
            k1_inv: inv(&k1),
            k2_inv: inv(&k2),
            e,
            f,
            k1,
            k2,
            divided: Mutex::new(HashMap::new()),
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> usize {
        1usize << self.d
    }

    pub fn coproduct(&self) -> Coproduct {
        self.coproduct
    }

    /// Replaces `e` by its transpose; a deliberately broken representation.
    pub fn with_transposed_e(mut self) -> Self {
        self.e = self.e.transpose();
        self.divided.lock().unwrap().clear();
        self
    }

    pub fn identity(&self) -> LaurentMatrix {
        LaurentMatrix::identity(self.dim())
    }

    /// Exponent of `v` by which `which` acts on basis vector `idx`.
    pub fn weight(&self, which: Diag, idx: usize) -> i64 {
        let ones = idx.count_ones() as i64;
        let zeros = self.d as i64 - ones;
        match which {
            Diag::K1 => zeros,
            Diag::K2 => ones,
            Diag::K1K2Inv => zeros - ones,
        }
    }

    /// `X^n` for a diagonal generator `X`, any integer `n`.
    pub fn diag_power(&self, which: Diag, n: i64) -> LaurentMatrix {
        LaurentMatrix::diagonal(
            (0..self.dim()).map(|i| LaurentPoly::v_pow(n * self.weight(which, i))),
        )
    }

    /// `[X; c; t]`, evaluated entrywise from the product formula
    /// `prod_{i=1}^t (X v^(c-i+1) - X^-1 v^(-c+i-1)) / (v^i - v^-i)`.
    pub fn kbinom(&self, which: Diag, c: i64, t: u32) -> Result<LaurentMatrix> {
        let mut denom = LaurentPoly::one();
        for i in 1..=t as i64 {
            denom = &denom * &(LaurentPoly::v_pow(i) - LaurentPoly::v_pow(-i));
        }
        let mut diag = Vec::with_capacity(self.dim());
        for idx in 0..self.dim() {
            let n = self.weight(which, idx);
            let mut num = LaurentPoly::one();
            for i in 1..=t as i64 {
                let x = n + c - i + 1;
                num = &num * &(LaurentPoly::v_pow(x) - LaurentPoly::v_pow(-x));
            }
            diag.push(num.exact_div(&denom)?);
        }
        Ok(LaurentMatrix::diagonal(diag))
    }

    /// `[K1; b1][K2; b2]` as a matrix; for `b1 + b2 = d` it is a 0/1 projector.
    pub fn idempotent_matrix(&self, b1: u32, b2: u32) -> Result<LaurentMatrix> {
        let p = self
            .kbinom(Diag::K1, 0, b1)?
            .mul(&self.kbinom(Diag::K2, 0, b2)?);
        if b1 + b2 == self.d {
            if let Some((r, _, x)) = p.entries().find(|(_, _, x)| !x.is_one()) {
                return Err(Error::Invariant(format!(
                    "K[{b1},{b2}] has diagonal entry {x} at {r}, not a projector"
                )));
            }
        }
        Ok(p)
    }

    /// `x^(m)` for `x` = `e` or `f`.
    pub fn divided_power(&self, gen: EF, m: u32) -> Result<Arc<LaurentMatrix>> {
        let key = (gen == EF::E, m);
        if let Some(hit) = self.divided.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let g = match gen {
            EF::E => &self.e,
            EF::F => &self.f,
        };
        let mut p = self.identity();
        for _ in 0..m {
            p = p.mul(g);
        }
        let fact = quantum_factorial(m);
        let p = Arc::new(p.exact_div(&fact).map_err(|_| {
            Error::Invariant(format!(
                "{gen:?}^{m} is not divisible by [{m}]! on E^{{⊗{}}}",
                self.d
            ))
        })?);
        self.divided.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    /// Matrix of the word `x^(a) K[b1,b2] y^(c)`, canonical or not.
    pub fn monomial_matrix(&self, m: &Monomial, orientation: Orientation) -> Result<LaurentMatrix> {
        let (left, right) = match orientation {
            Orientation::Ekf => (EF::E, EF::F),
            Orientation::Fke => (EF::F, EF::E),
        };
        let p = self.idempotent_matrix(m.b1, m.b2)?;
        let right = self.divided_power(right, m.c)?;
        Ok(self.divided_power(left, m.a)?.mul(&p).mul(&right))
    }

    pub fn matrix_of_element(&self, x: &Element) -> Result<LaurentMatrix> {
        if x.d() != self.d {
            return Err(Error::ContextMismatch {
                left: self.d,
                right: x.d(),
            });
        }
        let mut out = LaurentMatrix::zero(self.dim());
        for (m, c) in x.terms() {
            out = out.add(&self.monomial_matrix(m, x.orientation())?.scale(c));
        }
        Ok(out)
    }

    pub fn oracle_equal(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.matrix_of_element(x)? == self.matrix_of_element(y)?)
    }
}
