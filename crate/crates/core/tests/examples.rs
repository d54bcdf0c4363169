//! Worked examples for the public API, checked exactly.

use qschur::oracle::{
    build_rep, span_rank, verify_defining_relations, verify_lusztig_identities, Diag,
    LaurentMatrix, LusztigBounds,
};
use qschur::schur::{KBinomCoeffs, KElement, Side, EF};
use qschur::text::parse_element;
use qschur::{
    gauss_binomial, quantum_factorial, quantum_int, Context, Error, Generator, LaurentPoly,
    Monomial, Orientation,
};

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn ekf(ctx: &Context, a: u32, b1: u32, b2: u32, c: u32) -> qschur::Element {
    ctx.basis_element(Monomial::new(a, b1, b2, c), Orientation::Ekf)
        .unwrap()
}

#[test]
fn laurent_arithmetic() {
    assert_eq!(&lp("v + v^-1") * &lp("v - v^-1"), lp("v^2 - v^-2"));
    assert_eq!(
        &lp("v + v^-1") * &lp("v^2 + v^-2"),
        lp("v^3 + v + v^-1 + v^-3")
    );
    assert_eq!(
        quantum_int(4).exact_div(&quantum_int(2)).unwrap(),
        lp("v^2 + v^-2")
    );
    assert!(matches!(
        quantum_int(3).exact_div(&quantum_int(2)),
        Err(Error::NotDivisible { .. })
    ));
    assert_eq!(lp("v^4 + 2 - 3v^-2").to_string(), "v^4 + 2 - 3v^-2");
}

#[test]
fn quantum_combinatorics() {
    assert!(quantum_int(0).is_zero());
    assert_eq!(quantum_int(-3), lp("-v^2 - 1 - v^-2"));
    assert_eq!(
        quantum_factorial(3),
        &lp("v + v^-1") * &lp("v^2 + 1 + v^-2")
    );
    assert_eq!(gauss_binomial(4, 2), lp("v^4 + v^2 + 2 + v^-2 + v^-4"));
    assert!(gauss_binomial(2, 3).is_zero());
    assert!(gauss_binomial(-1, 2).is_one());
}

#[test]
fn natural_representation() {
    let rep = build_rep(1).unwrap();
    let one = LaurentPoly::one;
    assert_eq!(rep.e, LaurentMatrix::from_entries(2, [(0, 1, one())]));
    assert_eq!(rep.f, LaurentMatrix::from_entries(2, [(1, 0, one())]));
    assert_eq!(rep.k1, LaurentMatrix::diagonal([LaurentPoly::v(), one()]));
    assert_eq!(rep.k2, LaurentMatrix::diagonal([one(), LaurentPoly::v()]));
}

#[test]
fn tensor_square_weights() {
    let rep = build_rep(2).unwrap();
    let vp = LaurentPoly::v_pow;
    assert_eq!(
        rep.k1,
        LaurentMatrix::diagonal([vp(2), vp(1), vp(1), vp(0)])
    );
    assert_eq!(rep.k1.mul(&rep.k2), rep.identity().scale(&vp(2)));
    assert_eq!(*rep.divided_power(EF::E, 1).unwrap(), rep.e);
    assert!(build_rep(1)
        .unwrap()
        .divided_power(EF::E, 2)
        .unwrap()
        .is_zero());
    assert_eq!(*rep.divided_power(EF::F, 0).unwrap(), rep.identity());
}

#[test]
fn trivial_degree() {
    let rep = build_rep(0).unwrap();
    assert_eq!(rep.dim(), 1);
    assert!(rep.e.is_zero() && rep.f.is_zero());
    assert_eq!(rep.k1, LaurentMatrix::identity(1));
    let ctx = Context::new(0);
    assert_eq!(ctx.idempotents(), &[(0, 0)]);
    assert_eq!(ctx.k_element(KElement::K1), ctx.identity());
}

#[test]
fn element_images() {
    let ctx = Context::new(1);
    let rep = build_rep(1).unwrap();
    assert_eq!(
        rep.matrix_of_element(&ctx.identity()).unwrap(),
        rep.identity()
    );
    assert_eq!(
        rep.matrix_of_element(&ctx.idempotent(1, 0).unwrap())
            .unwrap(),
        LaurentMatrix::diagonal([LaurentPoly::one(), LaurentPoly::zero()])
    );
    assert!(rep
        .matrix_of_element(&ctx.zero(Orientation::Ekf))
        .unwrap()
        .is_zero());
    let reduced = ctx
        .reduce_monomial(Monomial::new(1, 0, 1, 1), Orientation::Ekf)
        .unwrap();
    assert!(rep
        .oracle_equal(&reduced, &ctx.idempotent(1, 0).unwrap())
        .unwrap());
    assert!(!rep
        .oracle_equal(&ctx.identity(), &ctx.zero(Orientation::Ekf))
        .unwrap());
    assert_eq!(
        rep.oracle_equal(&Context::new(2).identity(), &ctx.identity()),
        Err(Error::ContextMismatch { left: 1, right: 2 })
    );
}

#[test]
fn relation_reports() {
    for d in [1, 4] {
        let report = verify_defining_relations(&build_rep(d).unwrap());
        assert!(report.pass, "{report}");
    }
    let broken = build_rep(2).unwrap().with_transposed_e();
    let report = verify_defining_relations(&broken);
    let failed: Vec<_> = report.failures().collect();
    assert!(failed
        .iter()
        .any(|c| c.id.starts_with("ef-commutator") && c.witness.is_some()));
}

#[test]
fn commutation_identities() {
    let rep = build_rep(3).unwrap();
    let report = verify_lusztig_identities(&rep, LusztigBounds::default());
    assert!(report.pass, "{report}");
    // [K1;1] [K1;-1;1] = [2;1] [K1;2]
    let lhs = rep
        .kbinom(Diag::K1, 0, 1)
        .unwrap()
        .mul(&rep.kbinom(Diag::K1, -1, 1).unwrap());
    let rhs = rep
        .kbinom(Diag::K1, 0, 2)
        .unwrap()
        .scale(&gauss_binomial(2, 1));
    assert_eq!(lhs, rhs);
}

#[test]
fn ranks() {
    assert_eq!(span_rank(&[]), 0);
    for (d, expected) in [(1, 4), (2, 10)] {
        let ctx = Context::new(d);
        let rep = build_rep(d).unwrap();
        let mats: Vec<_> = ctx
            .basis(Orientation::Ekf)
            .iter()
            .map(|m| rep.monomial_matrix(m, Orientation::Ekf).unwrap())
            .collect();
        assert_eq!(span_rank(&mats), expected);
    }
}

#[test]
fn idempotent_calculus() {
    let ctx = Context::new(2);
    assert_eq!(
        ctx.idempotent_mul((1, 1), (1, 1)).unwrap(),
        ctx.idempotent(1, 1).unwrap()
    );
    assert!(Context::new(1)
        .idempotent_mul((1, 0), (0, 1))
        .unwrap()
        .is_zero());
    assert_eq!(
        ctx.commute_power_past_idempotent(Side::Left, EF::E, 1, (1, 1))
            .unwrap(),
        Some((0, 2))
    );
    assert_eq!(
        ctx.commute_power_past_idempotent(Side::Left, EF::E, 1, (0, 2))
            .unwrap(),
        None
    );
    assert_eq!(
        Context::new(1)
            .commute_power_past_idempotent(Side::Right, EF::E, 1, (0, 1))
            .unwrap(),
        Some((1, 0))
    );
    assert!(matches!(
        ctx.idempotent_mul((2, 1), (1, 1)),
        Err(Error::IndexOutOfRange(_))
    ));
}

#[test]
fn reductions() {
    let ctx = Context::new(1);
    assert_eq!(
        ctx.reduce_monomial(Monomial::new(1, 0, 1, 1), Orientation::Ekf)
            .unwrap(),
        ctx.idempotent(1, 0).unwrap()
    );
    assert!(ctx
        .reduce_monomial(Monomial::new(1, 1, 0, 1), Orientation::Ekf)
        .unwrap()
        .is_zero());
    let ctx = Context::new(2);
    assert_eq!(
        ctx.reduce_monomial(Monomial::new(1, 1, 1, 1), Orientation::Ekf)
            .unwrap(),
        ctx.idempotent(2, 0).unwrap().scale(&lp("v + v^-1"))
    );
    let ctx = Context::new(3);
    let m = Monomial::new(0, 2, 1, 0);
    assert_eq!(
        ctx.reduce_monomial(m, Orientation::Ekf).unwrap(),
        ctx.basis_element(m, Orientation::Ekf).unwrap()
    );
}

#[test]
fn generator_products() {
    let ctx = Context::new(3);
    let k = ctx.idempotent(2, 1).unwrap();
    assert_eq!(
        k.right_mul_generator(Generator::K1).unwrap(),
        k.scale(&LaurentPoly::v_pow(2))
    );
    let ctx = Context::new(1);
    let x = ekf(&ctx, 1, 0, 1, 0);
    assert_eq!(
        x.right_mul_generator(Generator::F).unwrap(),
        ctx.idempotent(1, 0).unwrap()
    );
    assert!(x.right_mul_generator(Generator::E).unwrap().is_zero());
    assert_eq!(x.right_mul_idempotent((0, 1)).unwrap(), x);
    assert!(x.right_mul_idempotent((1, 0)).unwrap().is_zero());
    let y = ekf(&ctx, 0, 0, 1, 1);
    assert_eq!(x.multiply(&y).unwrap(), ctx.idempotent(1, 0).unwrap());
    assert!(x.multiply(&x).unwrap().is_zero());
    assert_eq!(x.multiply(&ctx.identity()).unwrap(), x);
}

#[test]
fn k_elements() {
    let ctx = Context::new(1);
    let v = LaurentPoly::v;
    assert_eq!(
        ctx.k_element(KElement::K1),
        &ctx.idempotent(1, 0).unwrap().scale(&v()) + &ctx.idempotent(0, 1).unwrap()
    );
    assert_eq!(
        ctx.k_element(KElement::K),
        &ctx.idempotent(1, 0).unwrap().scale(&v())
            + &ctx.idempotent(0, 1).unwrap().scale(&LaurentPoly::v_pow(-1))
    );
}

#[test]
fn base_changes() {
    let ctx = Context::new(1);
    let fke = ctx
        .reduce_monomial(Monomial::new(1, 1, 0, 1), Orientation::Fke)
        .unwrap();
    assert_eq!(
        fke.convert_orientation(Orientation::Ekf).unwrap(),
        ctx.idempotent(0, 1).unwrap()
    );
    let word = parse_element("f^(1) K[1,0] e^(1)", &ctx, Orientation::Ekf).unwrap();
    assert_eq!(word, ctx.idempotent(0, 1).unwrap());

    assert_eq!(
        ctx.identity().change_to_kbinom_basis().unwrap(),
        KBinomCoeffs::from([((0, 0, 0), LaurentPoly::one())])
    );
    assert_eq!(
        ctx.idempotent(1, 0)
            .unwrap()
            .change_to_kbinom_basis()
            .unwrap(),
        KBinomCoeffs::from([((0, 1, 0), LaurentPoly::one())])
    );
    let ctx = Context::new(2);
    let k1 = &ctx.idempotent(1, 1).unwrap() + &ctx.idempotent(2, 0).unwrap().scale(&lp("v + v^-1"));
    assert_eq!(ctx.kbinom_image(0, 1, 0).unwrap(), k1);
    assert_eq!(
        k1.change_to_kbinom_basis().unwrap(),
        KBinomCoeffs::from([((0, 1, 0), LaurentPoly::one())])
    );
}

#[test]
fn parsing() {
    let ctx = Context::new(1);
    assert_eq!(
        parse_element("K[1,0] + K[0,1]", &ctx, Orientation::Ekf).unwrap(),
        ctx.identity()
    );
    assert_eq!(
        parse_element("e^(1) K[0,1] f^(1)", &ctx, Orientation::Ekf).unwrap(),
        ctx.idempotent(1, 0).unwrap()
    );
    assert!(matches!(
        parse_element("K[2,0]", &ctx, Orientation::Ekf),
        Err(Error::IndexOutOfRange(_))
    ));
}
