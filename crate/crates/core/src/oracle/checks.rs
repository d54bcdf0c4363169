use super::{Diag, LaurentMatrix, OracleRep};
use crate::error::Result;
use crate::laurent::{gauss_binomial, LaurentPoly};
use crate::report::Report;
use crate::schur::EF;

pub(crate) fn mismatch(lhs: &LaurentMatrix, rhs: &LaurentMatrix, context: &str) -> Option<String> {
    lhs.first_difference(rhs).map(|(r, c, x, y)| {
        let ctx = if context.is_empty() {
            String::new()
        } else {
            format!("{context}: ")
        };
        format!("{ctx}entry ({r},{c}): {x} != {y}")
    })
}

fn first_failure(it: impl IntoIterator<Item = Option<String>>) -> Option<String> {
    it.into_iter().flatten().next()
}

/// Product `prod_i (X - root_i)`.
fn root_product(x: &LaurentMatrix, roots: impl IntoIterator<Item = LaurentPoly>) -> LaurentMatrix {
    let id = LaurentMatrix::identity(x.dim());
    roots
        .into_iter()
        .fold(id.clone(), |acc, r| acc.mul(&x.sub(&id.scale(&r))))
}

/// Checks the defining relations of `U_v(gl2)` and the extra relations
/// `K1 K2 = v^d`, `prod (K1 - v^i) = 0` in the representation.
pub fn verify_defining_relations(rep: &OracleRep) -> Report {
    let d = rep.d() as i64;
    let id = rep.identity();
    let v = LaurentPoly::v;
    let vp = LaurentPoly::v_pow;
    let mut report = Report::new(rep.d(), "defining-relations");
    let (e, f, k1, k2, k1i, k2i) = (&rep.e, &rep.f, &rep.k1, &rep.k2, &rep.k1_inv, &rep.k2_inv);

    report.record(
        "k-commute: K1 K2 = K2 K1",
        mismatch(&k1.mul(k2), &k2.mul(k1), ""),
    );
    report.record(
        "k-inverse: K_i K_i^-1 = 1",
        first_failure([
            mismatch(&k1.mul(k1i), &id, "K1"),
            mismatch(&k1i.mul(k1), &id, "K1"),
            mismatch(&k2.mul(k2i), &id, "K2"),
            mismatch(&k2i.mul(k2), &id, "K2"),
        ]),
    );
    report.record(
        "k1-conjugation: K1 e K1^-1 = v e, K1 f K1^-1 = v^-1 f",
        first_failure([
            mismatch(&k1.mul(e).mul(k1i), &e.scale(&v()), "e"),
            mismatch(&k1.mul(f).mul(k1i), &f.scale(&vp(-1)), "f"),
        ]),
    );
    report.record(
        "k2-conjugation: K2 e K2^-1 = v^-1 e, K2 f K2^-1 = v f",
        first_failure([
            mismatch(&k2.mul(e).mul(k2i), &e.scale(&vp(-1)), "e"),
            mismatch(&k2.mul(f).mul(k2i), &f.scale(&v()), "f"),
        ]),
    );
    let comm = e.mul(f).sub(&f.mul(e));
    let num = k1.mul(k2i).sub(&k1i.mul(k2));
    let witness = match num.exact_div(&(v() - vp(-1))) {
        Ok(rhs) => mismatch(&comm, &rhs, ""),
        Err(err) => Some(format!("right-hand side not integral: {err}")),
    };
    report.record(
        "ef-commutator: ef - fe = (K1 K2^-1 - K1^-1 K2)/(v - v^-1)",
        witness,
    );
    report.record(
        "k1k2-scalar: K1 K2 = v^d",
        mismatch(&k1.mul(k2), &id.scale(&vp(d)), ""),
    );
    report.record(
        "k1-minimal-polynomial: prod_{i=0..d} (K1 - v^i) = 0",
        mismatch(
            &root_product(k1, (0..=d).map(vp)),
            &LaurentMatrix::zero(id.dim()),
            "",
        ),
    );
    report.record(
        "k2-minimal-polynomial: prod_{i=0..d} (K2 - v^i) = 0",
        mismatch(
            &root_product(k2, (0..=d).map(vp)),
            &LaurentMatrix::zero(id.dim()),
            "",
        ),
    );
    let k = k1.mul(k1).scale(&vp(-d));
    report.record(
        "k-minimal-polynomial: K = v^-d K1^2, prod_{i=0..d} (K - v^(d-2i)) = 0",
        mismatch(
            &root_product(&k, (0..=d).map(|i| vp(d - 2 * i))),
            &LaurentMatrix::zero(id.dim()),
            "",
        ),
    );
    // every eigenvalue v^i of K1 occurs, so no factor can be dropped
    let witness = (0..=d).find_map(|skip| {
        root_product(k1, (0..=d).filter(|i| *i != skip).map(vp))
            .is_zero()
            .then(|| format!("product without (K1 - v^{skip}) vanishes"))
    });
    report.record("k1-spectrum: K1 spectrum is {1, v, ..., v^d}", witness);
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LusztigBounds {
    /// `c` and `n` range over `-max_c..=max_c`
    pub max_c: i64,
    pub max_t: u32,
    pub max_m: u32,
}

impl Default for LusztigBounds {
    fn default() -> Self {
        Self {
            max_c: 4,
            max_t: 4,
            max_m: 4,
        }
    }
}

/// Checks the commutation and K-binomial identities used by the reduction
/// engine as exact matrix equations over a parameter grid.
pub fn verify_lusztig_identities(rep: &OracleRep, bounds: LusztigBounds) -> Report {
    let mut report = Report::new(rep.d(), "lusztig");
    match lusztig_inner(rep, bounds, &mut report) {
        Ok(()) => {}
        Err(err) => report.record("K-binomial matrices integral", Some(err.to_string())),
    }
    report
}

fn lusztig_inner(rep: &OracleRep, b: LusztigBounds, report: &mut Report) -> Result<()> {
    let vp = LaurentPoly::v_pow;
    let (e, f) = (&rep.e, &rep.f);
    let cs = -b.max_c..=b.max_c;
    let ki = [(Diag::K1, "K1"), (Diag::K2, "K2")];

    let (mut wa, mut wb) = (None, None);
    for n in cs.clone() {
        for (which, name, ve, vf) in [(Diag::K1, "K1", n, -n), (Diag::K2, "K2", -n, n)] {
            let kn = rep.diag_power(which, n);
            let kmn = rep.diag_power(which, -n);
            wa = wa.or_else(|| {
                mismatch(
                    &kn.mul(e).mul(&kmn),
                    &e.scale(&vp(ve)),
                    &format!("{name}, n={n}"),
                )
            });
            wb = wb.or_else(|| {
                mismatch(
                    &kn.mul(f).mul(&kmn),
                    &f.scale(&vp(vf)),
                    &format!("{name}, n={n}"),
                )
            });
        }
    }
    report.record("k-power-e: K_i^n e K_i^-n = v^(±n) e", wa);
    report.record("k-power-f: K_i^n f K_i^-n = v^(∓n) f", wb);

    let (mut wc, mut wd) = (None, None);
    for c in cs.clone() {
        for t in 0..=b.max_t {
            let k1c = rep.kbinom(Diag::K1, c, t)?;
            let k2c = rep.kbinom(Diag::K2, c, t)?;
            if wc.is_none() {
                wc = mismatch(
                    &k1c.mul(e),
                    &e.mul(&rep.kbinom(Diag::K1, c + 1, t)?),
                    &format!("e, c={c}, t={t}"),
                )
                .or(mismatch(
                    &k1c.mul(f),
                    &f.mul(&rep.kbinom(Diag::K1, c - 1, t)?),
                    &format!("f, c={c}, t={t}"),
                ));
            }
            if wd.is_none() {
                wd = mismatch(
                    &k2c.mul(e),
                    &e.mul(&rep.kbinom(Diag::K2, c - 1, t)?),
                    &format!("e, c={c}, t={t}"),
                )
                .or(mismatch(
                    &k2c.mul(f),
                    &f.mul(&rep.kbinom(Diag::K2, c + 1, t)?),
                    &format!("f, c={c}, t={t}"),
                ));
            }
        }
    }
    report.record(
        "k1-binomial-shift: [K1;c;t] e = e [K1;c+1;t], [K1;c;t] f = f [K1;c-1;t]",
        wc,
    );
    report.record(
        "k2-binomial-shift: [K2;c;t] e = e [K2;c-1;t], [K2;c;t] f = f [K2;c+1;t]",
        wd,
    );

    let (mut we, mut wf) = (None, None);
    for m in 1..=b.max_m {
        let x = rep.kbinom(Diag::K1K2Inv, m as i64 - 1, 1)?;
        let fm = rep.divided_power(EF::F, m)?;
        let fm1 = rep.divided_power(EF::F, m - 1)?;
        let em = rep.divided_power(EF::E, m)?;
        let em1 = rep.divided_power(EF::E, m - 1)?;
        we = we.or_else(|| mismatch(&fm.mul(e), &e.mul(&fm).sub(&x.mul(&fm1)), &format!("m={m}")));
        wf = wf.or_else(|| mismatch(&f.mul(&em), &em.mul(f).sub(&em1.mul(&x)), &format!("m={m}")));
    }
    report.record(
        "f-divided-e: f^(m) e = e f^(m) - [K1K2^-1; m-1; 1] f^(m-1)",
        we,
    );
    report.record(
        "f-e-divided: f e^(m) = e^(m) f - e^(m-1) [K1K2^-1; m-1; 1]",
        wf,
    );

    let (mut wg, mut wh, mut wi) = (None, None, None);
    for (which, name) in ki {
        let inv = rep.diag_power(which, -1);
        for t in 0..=b.max_t {
            for c in cs.clone() {
                if wg.is_none() {
                    let lhs = rep.kbinom(which, c + 1, t + 1)?;
                    let rhs = rep
                        .kbinom(which, c, t + 1)?
                        .scale(&vp(t as i64 + 1))
                        .add(&inv.mul(&rep.kbinom(which, c, t)?).scale(&vp(t as i64 - c)));
                    wg = mismatch(&lhs, &rhs, &format!("{name}, c={c}, t={t}"));
                }
                if c >= 0 && wi.is_none() {
                    let lhs = rep.kbinom(which, c, t)?;
                    let mut rhs = LaurentMatrix::zero(rep.dim());
                    for j in 0..=t {
                        let s = &vp(c * (t - j) as i64) * &gauss_binomial(c, j as i64);
                        let term =
                            rep.diag_power(which, -(j as i64))
                                .mul(&rep.kbinom(which, 0, t - j)?);
                        rhs = rhs.add(&term.scale(&s));
                    }
                    wi = mismatch(&lhs, &rhs, &format!("{name}, c={c}, t={t}"));
                }
            }
            for t2 in 0..=b.max_t {
                if wh.is_none() {
                    let lhs = rep
                        .kbinom(which, 0, t)?
                        .mul(&rep.kbinom(which, -(t as i64), t2)?);
                    let rhs = rep
                        .kbinom(which, 0, t + t2)?
                        .scale(&gauss_binomial((t + t2) as i64, t as i64));
                    wh = mismatch(&lhs, &rhs, &format!("{name}, t={t}, t'={t2}"));
                }
            }
        }
    }
    report.record(
        "k-binomial-pascal: [K;c+1;t+1] = v^(t+1)[K;c;t+1] + v^(t-c) K^-1 [K;c;t]",
        wg,
    );
    report.record("k-binomial-product: [K;t][K;-t;t'] = [t+t';t][K;t+t']", wh);
    report.record(
        "k-binomial-expansion: [K;c;t] = sum_j v^(c(t-j)) [c;j] K^-j [K;t-j]",
        wi,
    );
    Ok(())
}
