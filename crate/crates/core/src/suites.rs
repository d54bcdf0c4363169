//! Verification suites. Each suite returns a [`Report`] with
//! one entry per check; a failing entry carries the first counterexample.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laurent::{gauss_binomial, LaurentPoly};
use crate::oracle::{
    build_rep, span_rank, verify_defining_relations, verify_lusztig_identities, Coproduct, Diag,
    LaurentMatrix, LusztigBounds, OracleRep, MAX_D,
};
use crate::report::Report;
use crate::schur::{
    Context, Element, Fault, Generator, KBinomCoeffs, KElement, Monomial, Orientation, Side, EF,
};

/// Default largest `d` for suites that only compute symbolically.
pub const SYMBOLIC_MAX_D: u32 = 10;
/// Default largest `d` for suites built around the matrix representation.
pub const ORACLE_MAX_D: u32 = 6;
/// Largest symbolic `d` accepted even with the guard override.
pub const SYMBOLIC_HARD_MAX_D: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Idempotents,
    Reduction,
    Basis,
    Oracle,
    Lusztig,
    All,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Relations,
        Suite::Idempotents,
        Suite::Reduction,
        Suite::Basis,
        Suite::Oracle,
        Suite::Lusztig,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Idempotents => "idempotents",
            Suite::Reduction => "reduction",
            Suite::Basis => "basis",
            Suite::Oracle => "oracle",
            Suite::Lusztig => "lusztig",
            Suite::All => "all",
        }
    }

    /// Largest `d` accepted without the override.
    pub fn default_max_d(self) -> u32 {
        match self {
            Suite::Relations | Suite::Idempotents | Suite::Reduction | Suite::Basis => {
                SYMBOLIC_MAX_D
            }
            Suite::Oracle | Suite::Lusztig | Suite::All => ORACLE_MAX_D,
        }
    }

    fn hard_max_d(self) -> u32 {
        match self {
            Suite::Relations | Suite::Idempotents | Suite::Reduction | Suite::Basis => {
                SYMBOLIC_HARD_MAX_D
            }
            Suite::Oracle | Suite::Lusztig | Suite::All => MAX_D,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// A deliberately broken matrix representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleFault {
    /// Spread `e` and `f` with the cocommutative coproduct `x⊗1 + 1⊗x`.
    ClassicalCoproduct,
    /// Replace the matrix of `e` by its transpose.
    TransposedE,
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Lift the per-suite `d` guards up to the hard caps.
    pub allow_large_d: bool,
    pub fault: Option<Fault>,
    pub oracle_fault: Option<OracleFault>,
    pub seed: u64,
    /// Random triples for the associativity check.
    pub assoc_samples: usize,
    /// Random out-of-range triples for the K-binomial closure check.
    pub closure_samples: usize,
    pub lusztig: LusztigBounds,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            allow_large_d: false,
            fault: None,
            oracle_fault: None,
            seed: 0x5eed,
            assoc_samples: 200,
            closure_samples: 40,
            lusztig: LusztigBounds::default(),
        }
    }
}

impl Options {
    fn context(&self, d: u32) -> Context {
        match self.fault {
            Some(f) => Context::with_fault(d, f),
            None => Context::new(d),
        }
    }

    fn oracle_enabled(&self, d: u32) -> bool {
        d <= if self.allow_large_d {
            MAX_D
        } else {
            ORACLE_MAX_D
        }
    }

    fn rng(&self, d: u32, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ ((d as u64) << 32) ^ salt)
    }
}

/// Rejects `d` beyond the suite's guard (or hard cap with the override).
pub fn check_guard(suite: Suite, d: u32, opts: &Options) -> Result<()> {
    let max = if opts.allow_large_d {
        suite.hard_max_d()
    } else {
        suite.default_max_d()
    };
    if d > max {
        return Err(Error::DimensionLimit { d, max });
    }
    Ok(())
}

pub fn run_suite(suite: Suite, d: u32, opts: &Options) -> Result<Report> {
    check_guard(suite, d, opts)?;
    let ctx = opts.context(d);
    let mut report = Report::new(d, suite.name());
    match suite {
        Suite::Relations => report.extend(relations(&ctx, opts)?),
        Suite::Idempotents => report.extend(idempotents(&ctx, opts)?),
        Suite::Reduction => report.extend(reduction(&ctx, opts)?),
        Suite::Basis => report.extend(basis(&ctx, opts)?),
        Suite::Oracle => report.extend(oracle(&ctx, opts)?),
        Suite::Lusztig => report.extend(lusztig(&ctx, opts)?),
        Suite::All => {
            report.extend(relations(&ctx, opts)?);
            report.extend(idempotents(&ctx, opts)?);
            report.extend(reduction(&ctx, opts)?);
            report.extend(basis(&ctx, opts)?);
            report.extend(oracle(&ctx, opts)?);
            report.extend(lusztig(&ctx, opts)?);
        }
    }
    Ok(report)
}

fn build_oracle(d: u32, opts: &Options) -> Result<OracleRep> {
    match opts.oracle_fault {
        None => build_rep(d),
        Some(OracleFault::ClassicalCoproduct) => OracleRep::with_coproduct(d, Coproduct::Classical),
        Some(OracleFault::TransposedE) => Ok(build_rep(d)?.with_transposed_e()),
    }
}

/// Builds the oracle, recording a failed check if that is impossible.
fn oracle_or_record(
    d: u32,
    opts: &Options,
    report: &mut Report,
    prefix: &str,
) -> Option<OracleRep> {
    match build_oracle(d, opts) {
        Ok(rep) => Some(rep),
        Err(err) => {
            report.record(
                format!("{prefix}.oracle-construction"),
                Some(err.to_string()),
            );
            None
        }
    }
}

/// Runs `f`, turning an engine error into a failing witness.
fn attempt(f: impl FnOnce() -> Result<Option<String>>) -> Option<String> {
    f().unwrap_or_else(|err| Some(format!("error: {err}")))
}

fn differ(lhs: &Element, rhs: &Element, what: impl fmt::Display) -> Option<String> {
    (lhs != rhs).then(|| format!("{what}: {lhs} != {rhs}"))
}

fn matrix_differ(
    lhs: &LaurentMatrix,
    rhs: &LaurentMatrix,
    what: impl fmt::Display,
) -> Option<String> {
    lhs.first_difference(rhs)
        .map(|(r, c, x, y)| format!("{what}: entry ({r},{c}): {x} != {y}"))
}

/// `C(d+3, 3)`, the number of canonical monomials.
pub fn expected_dimension(d: u32) -> usize {
    let d = d as usize;
    (d + 3) * (d + 2) * (d + 1) / 6
}

/// Matrices of elements, with the basis monomial matrices cached.
struct MatrixCache<'a> {
    rep: &'a OracleRep,
    mats: HashMap<(Monomial, Orientation), LaurentMatrix>,
}

impl<'a> MatrixCache<'a> {
    fn new(rep: &'a OracleRep) -> Self {
        Self {
            rep,
            mats: HashMap::new(),
        }
    }

    fn monomial(&mut self, m: Monomial, o: Orientation) -> Result<&LaurentMatrix> {
        if !self.mats.contains_key(&(m, o)) {
            let mat = self.rep.monomial_matrix(&m, o)?;
            self.mats.insert((m, o), mat);
        }
        Ok(&self.mats[&(m, o)])
    }

    fn element(&mut self, x: &Element) -> Result<LaurentMatrix> {
        let mut out = LaurentMatrix::zero(self.rep.dim());
        for (m, c) in x.terms() {
            let mat = self.monomial(*m, x.orientation())?;
            out = out.add(&mat.scale(c));
        }
        Ok(out)
    }
}

fn divided(ctx: &Context, gen: EF, m: u32) -> Result<Element> {
    ctx.identity().right_mul_divided(gen, m)
}

/// `prod_{r in roots} (x - r)` in the algebra.
fn root_product(x: &Element, roots: impl IntoIterator<Item = LaurentPoly>) -> Result<Element> {
    let ctx = x.context();
    let mut acc = ctx.identity();
    for r in roots {
        let factor = x - &ctx.scalar(&r);
        acc = acc.multiply(&factor)?;
    }
    Ok(acc)
}

/// Defining relations, as symbolic identities between elements and, when
/// the representation is available, as matrix identities.
pub fn relations(ctx: &Context, opts: &Options) -> Result<Report> {
    let d = ctx.d();
    let di = d as i64;
    let vp = LaurentPoly::v_pow;
    let mut report = Report::new(d, "relations");
    let one = ctx.identity();
    let e = ctx.generator(Generator::E)?;
    let f = ctx.generator(Generator::F)?;
    let k1 = ctx.k_element(KElement::K1);
    let k2 = ctx.k_element(KElement::K2);
    let k1_inv = ctx.generator(Generator::K1Inv)?;
    let k2_inv = ctx.generator(Generator::K2Inv)?;

    report.record(
        "relations.k-inverse",
        attempt(|| {
            Ok(differ(&k1.multiply(&k1_inv)?, &one, "K1 K1^-1").or(differ(
                &k2.multiply(&k2_inv)?,
                &one,
                "K2 K2^-1",
            )))
        }),
    );
    report.record(
        "relations.k-commute",
        attempt(|| {
            Ok(differ(
                &k1.multiply(&k2)?,
                &k2.multiply(&k1)?,
                "K1 K2 vs K2 K1",
            ))
        }),
    );
    report.record(
        "relations.k1k2-scalar",
        attempt(|| {
            Ok(differ(
                &k1.multiply(&k2)?,
                &ctx.scalar(&vp(di)),
                "K1 K2 = v^d",
            ))
        }),
    );
    report.record(
        "relations.k-conjugation",
        attempt(|| {
            let conj = |k: &Element, k_inv: &Element, x: &Element| -> Result<Element> {
                k.multiply(x)?.multiply(k_inv)
            };
            Ok(
                differ(&conj(&k1, &k1_inv, &e)?, &e.scale(&vp(1)), "K1 e K1^-1")
                    .or(differ(
                        &conj(&k1, &k1_inv, &f)?,
                        &f.scale(&vp(-1)),
                        "K1 f K1^-1",
                    ))
                    .or(differ(
                        &conj(&k2, &k2_inv, &e)?,
                        &e.scale(&vp(-1)),
                        "K2 e K2^-1",
                    ))
                    .or(differ(
                        &conj(&k2, &k2_inv, &f)?,
                        &f.scale(&vp(1)),
                        "K2 f K2^-1",
                    )),
            )
        }),
    );
    report.record(
        "relations.ef-commutator",
        attempt(|| {
            let lhs = &e.multiply(&f)? - &f.multiply(&e)?;
            // sum_{b1} [2 b1 - d] K[b1,b2]
            let mut rhs = ctx.zero(Orientation::Ekf);
            for &(b1, b2) in ctx.idempotents() {
                let q = crate::laurent::quantum_int(2 * b1 as i64 - di);
                rhs.add_term(Monomial::idempotent(b1, b2), q);
            }
            if let Some(w) = differ(&lhs, &rhs, "ef - fe vs sum [2b1-d] K[b1,b2]") {
                return Ok(Some(w));
            }
            // (v^-d K1^2 - v^d K1^-2) / (v - v^-1)
            let num =
                &k1.multiply(&k1)?.scale(&vp(-di)) - &k1_inv.multiply(&k1_inv)?.scale(&vp(di));
            let denom = vp(1) - vp(-1);
            let mut quotient = ctx.zero(Orientation::Ekf);
            for (m, c) in num.terms() {
                quotient.add_term(*m, c.exact_div(&denom)?);
            }
            Ok(differ(
                &lhs,
                &quotient,
                "ef - fe vs (v^-d K1^2 - v^d K1^-2)/(v - v^-1)",
            ))
        }),
    );
    report.record(
        "relations.k-element",
        attempt(|| {
            let k = ctx.k_element(KElement::K);
            Ok(differ(
                &k1.multiply(&k1)?.scale(&vp(-di)),
                &k,
                "v^-d K1^2 vs K",
            ))
        }),
    );
    for (id, x, roots) in [
        (
            "relations.k1-minimal-polynomial",
            &k1,
            (0..=di).map(vp).collect::<Vec<_>>(),
        ),
        (
            "relations.k2-minimal-polynomial",
            &k2,
            (0..=di).map(vp).collect(),
        ),
        (
            "relations.k-minimal-polynomial",
            &ctx.k_element(KElement::K),
            (0..=di).map(|i| vp(di - 2 * i)).collect(),
        ),
    ] {
        report.record(
            id,
            attempt(|| {
                let full = root_product(x, roots.iter().cloned())?;
                if !full.is_zero() {
                    return Ok(Some(format!("product over all roots is {full}")));
                }
                // each root is an eigenvalue, so no factor can be dropped
                for skip in 0..roots.len() {
                    let partial = root_product(
                        x,
                        roots
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| *i != skip)
                            .map(|(_, r)| r.clone()),
                    )?;
                    if partial.is_zero() {
                        return Ok(Some(format!(
                            "product without the factor for {} vanishes",
                            roots[skip]
                        )));
                    }
                }
                Ok(None)
            }),
        );
    }
    report.record(
        "relations.nilpotency",
        attempt(|| {
            for gen in [EF::E, EF::F] {
                if !divided(ctx, gen, d + 1)?.is_zero() {
                    return Ok(Some(format!("{gen:?}^({}) is nonzero", d + 1)));
                }
                if divided(ctx, gen, d)?.is_zero() && d > 0 {
                    return Ok(Some(format!("{gen:?}^({d}) already vanishes")));
                }
            }
            Ok(None)
        }),
    );

    if opts.oracle_enabled(d) {
        if let Some(rep) = oracle_or_record(d, opts, &mut report, "relations") {
            let oracle_report = verify_defining_relations(&rep);
            for c in oracle_report.checks {
                report.record(format!("relations.oracle.{}", c.id), c.witness);
            }
            report.record(
                "relations.oracle.generator-images",
                attempt(|| {
                    for (g, mat) in [
                        (Generator::E, &rep.e),
                        (Generator::F, &rep.f),
                        (Generator::K1, &rep.k1),
                        (Generator::K1Inv, &rep.k1_inv),
                        (Generator::K2, &rep.k2),
                        (Generator::K2Inv, &rep.k2_inv),
                    ] {
                        let img = rep.matrix_of_element(&ctx.generator(g)?)?;
                        if let Some(w) = matrix_differ(&img, mat, format!("{g:?}")) {
                            return Ok(Some(w));
                        }
                    }
                    Ok(None)
                }),
            );
        }
    }
    Ok(report)
}

/// The idempotent calculus: orthogonality, partition of unity, K-binomial
/// vanishing, eigenvalues and the commutation rules past idempotents.
pub fn idempotents(ctx: &Context, opts: &Options) -> Result<Report> {
    let d = ctx.d();
    let mut report = Report::new(d, "idempotents");
    let one = ctx.identity();
    let idem: Vec<(u32, u32)> = ctx.idempotents().to_vec();

    report.record(
        "idempotents.partition-of-unity",
        attempt(|| {
            let mut sum = ctx.zero(Orientation::Ekf);
            for &(b1, b2) in &idem {
                sum = &sum + &ctx.idempotent(b1, b2)?;
            }
            Ok(differ(&sum, &one, "sum of K[b1,b2]"))
        }),
    );
    report.record(
        "idempotents.orthogonal-idempotents",
        attempt(|| {
            for &p in &idem {
                let kp = ctx.idempotent(p.0, p.1)?;
                for &q in &idem {
                    let kq = ctx.idempotent(q.0, q.1)?;
                    let prod = kp.multiply(&kq)?;
                    let want = ctx.idempotent_mul(p, q)?;
                    if let Some(w) = differ(&prod, &want, format!("K{p:?} K{q:?}")) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        }),
    );
    report.record(
        "idempotents.identity-acts-trivially",
        attempt(|| {
            for m in ctx.basis(Orientation::Ekf) {
                let x = ctx.basis_element(m, Orientation::Ekf)?;
                if let Some(w) = differ(&one.multiply(&x)?, &x, format!("1 * {m}")).or(differ(
                    &x.multiply(&one)?,
                    &x,
                    format!("{m} * 1"),
                )) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }),
    );
    report.record(
        "idempotents.k-binomial-product",
        attempt(|| {
            for b1 in 0..=d as i64 + 1 {
                let b2 = d as i64 + 1 - b1;
                let prod = ctx
                    .k_binomial(b1, false)
                    .multiply(&ctx.k_binomial(b2, true))?;
                if !prod.is_zero() {
                    return Ok(Some(format!("[K1;{b1}][K2;{b2}] = {prod}")));
                }
            }
            for &(b1, b2) in &idem {
                let prod = ctx
                    .k_binomial(b1 as i64, false)
                    .multiply(&ctx.k_binomial(b2 as i64, true))?;
                if let Some(w) = differ(
                    &prod,
                    &ctx.idempotent(b1, b2)?,
                    format!("[K1;{b1}][K2;{b2}]"),
                ) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }),
    );
    report.record(
        "idempotents.eigenvalues",
        attempt(|| {
            let k1 = ctx.k_element(KElement::K1);
            let k2 = ctx.k_element(KElement::K2);
            for &(b1, b2) in &idem {
                let k = ctx.idempotent(b1, b2)?;
                if let Some(w) = differ(
                    &k1.multiply(&k)?,
                    &k.scale(&LaurentPoly::v_pow(b1 as i64)),
                    "K1 K",
                )
                .or(differ(
                    &k2.multiply(&k)?,
                    &k.scale(&LaurentPoly::v_pow(b2 as i64)),
                    "K2 K",
                )) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }),
    );
    report.record(
        "idempotents.commutation-rules",
        attempt(|| {
            for gen in [EF::E, EF::F] {
                for a in 0..=d + 1 {
                    let x = divided(ctx, gen, a)?;
                    for &b in &idem {
                        let k = ctx.idempotent(b.0, b.1)?;
                        for side in [Side::Left, Side::Right] {
                            let target = ctx.commute_power_past_idempotent(side, gen, a, b)?;
                            let lhs = match side {
                                Side::Left => k.multiply(&x)?,
                                Side::Right => x.multiply(&k)?,
                            };
                            let rhs = match target {
                                None => ctx.zero(Orientation::Ekf),
                                Some(t) => {
                                    let kt = ctx.idempotent(t.0, t.1)?;
                                    match side {
                                        Side::Left => x.multiply(&kt)?,
                                        Side::Right => kt.multiply(&x)?,
                                    }
                                }
                            };
                            let what = format!("{side:?} {gen:?}^({a}) past K{b:?}");
                            if let Some(w) = differ(&lhs, &rhs, what) {
                                return Ok(Some(w));
                            }
                        }
                    }
                }
            }
            Ok(None)
        }),
    );

    if opts.oracle_enabled(d) {
        if let Some(rep) = oracle_or_record(d, opts, &mut report, "idempotents") {
            report.record(
                "idempotents.oracle.projectors",
                attempt(|| {
                    let mut sum = LaurentMatrix::zero(rep.dim());
                    let mats: Vec<_> = idem
                        .iter()
                        .map(|&(b1, b2)| rep.idempotent_matrix(b1, b2))
                        .collect::<Result<_>>()?;
                    for (i, p) in mats.iter().enumerate() {
                        if !p.is_diagonal() {
                            return Ok(Some(format!("K{:?} is not diagonal", idem[i])));
                        }
                        for (j, q) in mats.iter().enumerate() {
                            let want = if i == j {
                                p.clone()
                            } else {
                                LaurentMatrix::zero(rep.dim())
                            };
                            if let Some(w) = matrix_differ(
                                &p.mul(q),
                                &want,
                                format!("K{:?} K{:?}", idem[i], idem[j]),
                            ) {
                                return Ok(Some(w));
                            }
                        }
                        let img = rep.matrix_of_element(&ctx.idempotent(idem[i].0, idem[i].1)?)?;
                        if let Some(w) = matrix_differ(&img, p, format!("image of K{:?}", idem[i]))
                        {
                            return Ok(Some(w));
                        }
                        sum = sum.add(p);
                    }
                    Ok(matrix_differ(
                        &sum,
                        &rep.identity(),
                        "sum of idempotent matrices",
                    ))
                }),
            );
            report.record(
                "idempotents.oracle.k-binomial-product",
                attempt(|| {
                    for b1 in 0..=d + 1 {
                        let b2 = d + 1 - b1;
                        let p = rep
                            .kbinom(Diag::K1, 0, b1)?
                            .mul(&rep.kbinom(Diag::K2, 0, b2)?);
                        if !p.is_zero() {
                            return Ok(Some(format!("[K1;{b1}][K2;{b2}] has a nonzero entry")));
                        }
                    }
                    Ok(None)
                }),
            );
            report.record(
                "idempotents.oracle.commutation-rules",
                attempt(|| {
                    let zero = LaurentMatrix::zero(rep.dim());
                    for gen in [EF::E, EF::F] {
                        for a in 0..=d + 1 {
                            let x = rep.divided_power(gen, a)?;
                            for &b in &idem {
                                let k = rep.idempotent_matrix(b.0, b.1)?;
                                for side in [Side::Left, Side::Right] {
                                    let target =
                                        ctx.commute_power_past_idempotent(side, gen, a, b)?;
                                    let lhs = match side {
                                        Side::Left => k.mul(&x),
                                        Side::Right => x.mul(&k),
                                    };
                                    let rhs = match target {
                                        None => zero.clone(),
                                        Some(t) => {
                                            let kt = rep.idempotent_matrix(t.0, t.1)?;
                                            match side {
                                                Side::Left => x.mul(&kt),
                                                Side::Right => kt.mul(&x),
                                            }
                                        }
                                    };
                                    let what = format!("{side:?} {gen:?}^({a}) past K{b:?}");
                                    if let Some(w) = matrix_differ(&lhs, &rhs, what) {
                                        return Ok(Some(w));
                                    }
                                }
                            }
                        }
                    }
                    Ok(None)
                }),
            );
        }
    }
    Ok(report)
}

/// All quadruples `(a, b1, d - b1, c)` with `a, c <= d`.
fn raw_words(d: u32) -> impl Iterator<Item = Monomial> {
    (0..=d).flat_map(move |a| {
        (0..=d).flat_map(move |b1| (0..=d).map(move |c| Monomial::new(a, b1, d - b1, c)))
    })
}

/// The reduction formulas: structural soundness, agreement with the
/// generator-by-generator engine, and agreement with the representation.
pub fn reduction(ctx: &Context, opts: &Options) -> Result<Report> {
    let d = ctx.d();
    let mut report = Report::new(d, "reduction");
    for o in [Orientation::Ekf, Orientation::Fke] {
        let tag = o.to_string().to_lowercase();
        report.record(
            format!("reduction.{tag}.canonical-output"),
            attempt(|| {
                for m in raw_words(d) {
                    let r = ctx.reduce_monomial(m, o)?;
                    if let Some((bad, _)) = r.terms().find(|(t, _)| !t.is_canonical(d, o)) {
                        return Ok(Some(format!("{m} reduces to non-canonical {bad}")));
                    }
                    if m.is_canonical(d, o) && r != ctx.basis_element(m, o)? {
                        return Ok(Some(format!("canonical {m} changed to {r}")));
                    }
                }
                Ok(None)
            }),
        );
        report.record(
            format!("reduction.{tag}.engine-agreement"),
            attempt(|| {
                let (left, right) = match o {
                    Orientation::Ekf => (EF::E, EF::F),
                    Orientation::Fke => (EF::F, EF::E),
                };
                for m in raw_words(d) {
                    // the word x^(a) K y^(c) multiplied out one generator at a time
                    let word = divided(ctx, left, m.a)?
                        .right_mul_idempotent((m.b1, m.b2))?
                        .right_mul_divided(right, m.c)?
                        .convert_orientation(o)?;
                    let r = ctx.reduce_monomial(m, o)?;
                    if let Some(w) = differ(&r, &word, format!("{m}")) {
                        return Ok(Some(w));
                    }
                }
                Ok(None)
            }),
        );
    }
    if opts.oracle_enabled(d) {
        if let Some(rep) = oracle_or_record(d, opts, &mut report, "reduction") {
            let mut cache = MatrixCache::new(&rep);
            for o in [Orientation::Ekf, Orientation::Fke] {
                let tag = o.to_string().to_lowercase();
                report.record(
                    format!("reduction.{tag}.oracle"),
                    attempt(|| {
                        for m in raw_words(d).filter(|m| !m.is_canonical(d, o)) {
                            let raw = rep.monomial_matrix(&m, o)?;
                            let reduced = cache.element(&ctx.reduce_monomial(m, o)?)?;
                            if let Some(w) = matrix_differ(&raw, &reduced, format!("{m}")) {
                                return Ok(Some(w));
                            }
                        }
                        Ok(None)
                    }),
                );
            }
        }
    }
    Ok(report)
}

/// The dimension count: the canonical monomials are exactly what the
/// reduction engine produces, and their images are linearly independent.
pub fn dimension(ctx: &Context, opts: &Options) -> Result<Report> {
    let d = ctx.d();
    let mut report = Report::new(d, "dimension");
    let expected = expected_dimension(d);
    for o in [Orientation::Ekf, Orientation::Fke] {
        let tag = o.to_string().to_lowercase();
        let basis = ctx.basis(o);
        report.record(
            format!("dimension.{tag}.count"),
            (basis.len() != expected)
                .then(|| format!("{} canonical monomials, expected {expected}", basis.len())),
        );
        report.record(
            format!("dimension.{tag}.engine-span"),
            attempt(|| {
                let mut seen = BTreeSet::new();
                for m in raw_words(d) {
                    for (t, _) in ctx.reduce_monomial(m, o)?.terms() {
                        seen.insert(*t);
                    }
                }
                let canonical: BTreeSet<_> = basis.iter().copied().collect();
                Ok((seen != canonical).then(|| {
                    let extra: Vec<_> = seen.difference(&canonical).take(3).map(|m| m.to_string()).collect();
                    format!(
                        "reduced words span {} monomials, {expected} canonical; outside the basis: {}",
                        seen.len(),
                        extra.join(" ")
                    )
                }))
            }),
        );
        if opts.oracle_enabled(d) {
            if let Some(rep) = oracle_or_record(d, opts, &mut report, "dimension") {
                report.record(
                    format!("dimension.{tag}.rank"),
                    attempt(|| {
                        let mats: Vec<_> = basis
                            .iter()
                            .map(|m| rep.monomial_matrix(m, o))
                            .collect::<Result<_>>()?;
                        let rank = span_rank(&mats);
                        Ok((rank != expected).then(|| format!("rank {rank}, expected {expected}")))
                    }),
                );
            }
        }
    }
    Ok(report)
}

/// Orientation change and the `e^(a) [K1; b] f^(c)` basis.
pub fn base_change(ctx: &Context, opts: &Options) -> Result<Report> {
    let d = ctx.d();
    let mut report = Report::new(d, "base-change");
    report.record(
        "base-change.orientation-round-trip",
        attempt(|| {
            for o in [Orientation::Ekf, Orientation::Fke] {
                for m in ctx.basis(o) {
                    let x = ctx.basis_element(m, o)?;
                    let y = x.convert_orientation(o.flipped())?;
                    if !y.is_canonical() {
                        return Ok(Some(format!("{m} ({o}) converts to non-canonical {y}")));
                    }
                    if let Some(w) = differ(
                        &y.convert_orientation(o)?,
                        &x,
                        format!("{m} ({o}) there and back"),
                    ) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        }),
    );
    report.record(
        "base-change.kbinom-unitriangular",
        attempt(|| {
            for m in ctx.basis(Orientation::Ekf) {
                let (a, b, c) = (m.a, m.b1, m.c);
                let img = ctx.kbinom_image(a, b, c)?;
                let lead = Monomial::new(a, b, d - b, c);
                if !img.coeff(&lead).is_one() {
                    return Ok(Some(format!(
                        "e^({a}) [K1;{b}] f^({c}) has coefficient {} at {lead}",
                        img.coeff(&lead)
                    )));
                }
                let later = |t: &Monomial| t.height() < a + c || (t.a == a && t.c == c && t.b1 > b);
                let above = img
                    .terms()
                    .map(|(t, _)| *t)
                    .find(|t| *t != lead && !later(t));
                if let Some(t) = above {
                    return Ok(Some(format!(
                        "e^({a}) [K1;{b}] f^({c}) has term {t} above the diagonal"
                    )));
                }
            }
            Ok(None)
        }),
    );
    report.record(
        "base-change.kbinom-round-trip",
        attempt(|| {
            for m in ctx.basis(Orientation::Ekf) {
                let x = ctx.basis_element(m, Orientation::Ekf)?;
                let coords = x.change_to_kbinom_basis()?;
                let back = ctx.change_from_kbinom_basis(&coords)?;
                if let Some(w) = differ(&back, &x, format!("{m} through the K-binomial basis")) {
                    return Ok(Some(w));
                }
                let unit = KBinomCoeffs::from([((m.a, m.b1, m.c), LaurentPoly::one())]);
                let there = ctx
                    .change_from_kbinom_basis(&unit)?
                    .change_to_kbinom_basis()?;
                if there != unit {
                    return Ok(Some(format!(
                        "e^({}) [K1;{}] f^({}) does not round trip",
                        m.a, m.b1, m.c
                    )));
                }
            }
            Ok(None)
        }),
    );
    if opts.oracle_enabled(d) {
        if let Some(rep) = oracle_or_record(d, opts, &mut report, "base-change") {
            let mut rng = opts.rng(d, 0x6_4);
            let mut cache = MatrixCache::new(&rep);
            report.record(
                "base-change.oracle.out-of-range-closure",
                attempt(|| {
                    for _ in 0..opts.closure_samples {
                        let (a, b, c) = loop {
                            let t = (
                                rng.gen_range(0..=d),
                                rng.gen_range(0..=d + 1),
                                rng.gen_range(0..=d),
                            );
                            if t.0 + t.1 + t.2 > d || d == 0 {
                                break t;
                            }
                        };
                        let x = ctx.change_from_kbinom_basis(&KBinomCoeffs::from([(
                            (a, b, c),
                            LaurentPoly::one(),
                        )]))?;
                        if !x.is_canonical() {
                            return Ok(Some(format!("({a},{b},{c}) ingests to non-canonical {x}")));
                        }
                        let fc = rep.divided_power(EF::F, c)?;
                        let raw = rep
                            .divided_power(EF::E, a)?
                            .mul(&rep.kbinom(Diag::K1, 0, b)?)
                            .mul(&fc);
                        if let Some(w) = matrix_differ(
                            &cache.element(&x)?,
                            &raw,
                            format!("e^({a}) [K1;{b}] f^({c})"),
                        ) {
                            return Ok(Some(w));
                        }
                    }
                    Ok(None)
                }),
            );
        }
    }
    Ok(report)
}

/// Dimension count plus base changes.
pub fn basis(ctx: &Context, opts: &Options) -> Result<Report> {
    let mut report = Report::new(ctx.d(), "basis");
    report.extend(dimension(ctx, opts)?);
    report.extend(base_change(ctx, opts)?);
    Ok(report)
}

/// A random element with up to three terms and small coefficients.
fn random_element(
    ctx: &Context,
    basis: &[Monomial],
    o: Orientation,
    rng: &mut ChaCha8Rng,
) -> Element {
    let mut x = ctx.zero(o);
    for _ in 0..rng.gen_range(1..=3) {
        let m = basis[rng.gen_range(0..basis.len())];
        let mut c = LaurentPoly::zero();
        for _ in 0..rng.gen_range(1..=2) {
            let k: i64 = rng.gen_range(-3..=3);
            c = &c + &LaurentPoly::monomial(k, rng.gen_range(-2..=2));
        }
        x.add_term(m, c);
    }
    x
}

/// Multiplication against the representation: homomorphism on basis pairs,
/// integrality, associativity and the symmetry of structure constants.
pub fn oracle(ctx: &Context, opts: &Options) -> Result<Report> {
    let d = ctx.d();
    let mut report = Report::new(d, "oracle");
    let Some(rep) = oracle_or_record(d, opts, &mut report, "oracle") else {
        return Ok(report);
    };
    let mut cache = MatrixCache::new(&rep);
    report.record(
        "oracle.identity",
        attempt(|| {
            Ok(matrix_differ(
                &cache.element(&ctx.identity())?,
                &rep.identity(),
                "identity",
            ))
        }),
    );
    for o in [Orientation::Ekf, Orientation::Fke] {
        let tag = o.to_string().to_lowercase();
        let basis = ctx.basis(o);
        let mut integrality = None;
        let homomorphism = attempt(|| {
            for &x in &basis {
                let ex = ctx.basis_element(x, o)?;
                for &y in &basis {
                    let ey = ctx.basis_element(y, o)?;
                    let p = match ex.multiply(&ey) {
                        Ok(p) => p,
                        Err(err) => {
                            integrality = Some(format!("{x} * {y}: {err}"));
                            return Ok(Some(format!("{x} * {y} failed")));
                        }
                    };
                    if !p.is_canonical() {
                        return Ok(Some(format!("{x} * {y} = {p} is not canonical")));
                    }
                    let lhs = cache.element(&p)?;
                    let my = cache.monomial(y, o)?.clone();
                    let rhs = cache.monomial(x, o)?.mul(&my);
                    if let Some(w) = matrix_differ(&lhs, &rhs, format!("{x} * {y}")) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        });
        report.record(format!("oracle.{tag}.homomorphism"), homomorphism);
        report.record(format!("oracle.{tag}.integrality"), integrality);
    }
    report.record(
        "oracle.associativity",
        attempt(|| {
            let basis = ctx.basis(Orientation::Ekf);
            let mut rng = opts.rng(d, 0xa550c);
            for i in 0..opts.assoc_samples {
                let x = random_element(ctx, &basis, Orientation::Ekf, &mut rng);
                let y = random_element(ctx, &basis, Orientation::Ekf, &mut rng);
                let z = random_element(ctx, &basis, Orientation::Ekf, &mut rng);
                let lhs = x.multiply(&y)?.multiply(&z)?;
                let rhs = x.multiply(&y.multiply(&z)?)?;
                if let Some(w) = differ(&lhs, &rhs, format!("triple {i}: ({x}) ({y}) ({z})")) {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }),
    );
    report.record(
        "oracle.symmetry",
        attempt(|| {
            let basis = ctx.basis(Orientation::Ekf);
            for &x in &basis {
                let ex = ctx.basis_element(x, Orientation::Ekf)?;
                for &y in &basis {
                    let ey = ctx.basis_element(y, Orientation::Ekf)?;
                    let p = ex.multiply(&ey)?;
                    let q = ex.symmetry().multiply(&ey.symmetry())?;
                    if let Some(w) = differ(&q, &p.symmetry(), format!("swapped {x} * {y}")) {
                        return Ok(Some(w));
                    }
                }
            }
            Ok(None)
        }),
    );
    Ok(report)
}

/// The commutation and K-binomial identities as matrix equations.
pub fn lusztig(ctx: &Context, opts: &Options) -> Result<Report> {
    let d = ctx.d();
    let mut report = Report::new(d, "lusztig");
    if let Some(rep) = oracle_or_record(d, opts, &mut report, "lusztig") {
        for c in verify_lusztig_identities(&rep, opts.lusztig).checks {
            report.record(format!("lusztig.{}", c.id), c.witness);
        }
    }
    Ok(report)
}

/// Classical binomial coefficients from Pascal's triangle.
pub fn pascal_triangle(n: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let mut row = vec![1u64; r + 1];
        for s in 1..r {
            row[s] = rows[r - 1][s - 1] + rows[r - 1][s];
        }
        rows.push(row);
    }
    rows
}

/// Identities of quantum integers and Gaussian binomials, and their
/// classical limit, over fixed grids.
pub fn combinatorics() -> Report {
    let vp = LaurentPoly::v_pow;
    let q = crate::laurent::quantum_int;
    let mut report = Report::new(0, "combinatorics");
    let mut w = None;
    'outer: for r in -10..=10i64 {
        for s in -10..=10i64 {
            let rhs = &(&vp(-s) * &q(r)) + &(&vp(r) * &q(s));
            if q(r + s) != rhs {
                w = Some(format!("r={r}, s={s}"));
                break 'outer;
            }
        }
    }
    report.record("combinatorics.quantum-int-addition", w);
    let mut w = None;
    'outer: for r in -10..=10i64 {
        for s in 1..=10i64 {
            let rhs =
                &(&vp(-s) * &gauss_binomial(r, s)) + &(&vp(r - s + 1) * &gauss_binomial(r, s - 1));
            if gauss_binomial(r + 1, s) != rhs {
                w = Some(format!("r={r}, s={s}"));
                break 'outer;
            }
        }
    }
    report.record("combinatorics.binomial-pascal", w);
    let pascal = pascal_triangle(12);
    let one = crate::laurent::RationalScalar::from_integer(1.into());
    let mut w = None;
    'outer: for (r, row) in pascal.iter().enumerate() {
        for (s, &expected) in row.iter().enumerate() {
            let g = gauss_binomial(r as i64, s as i64);
            let at_one = g.eval_at(&one).expect("v = 1 is nonzero");
            if at_one != crate::laurent::RationalScalar::from_integer(expected.into()) {
                w = Some(format!("[{r};{s}] at v=1 is {at_one}, expected {expected}"));
                break 'outer;
            }
            if g.bar() != g || g.terms().any(|(_, c)| c.sign() == num_bigint::Sign::Minus) {
                w = Some(format!(
                    "[{r};{s}] = {g} is not bar-invariant with nonnegative coefficients"
                ));
                break 'outer;
            }
        }
    }
    report.record("combinatorics.classical-limit", w);
    report
}
