use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qschur::oracle::{build_rep, span_rank};
use qschur::suites::pascal_triangle;
use qschur::text::{parse_element, ElementJson};
use qschur::{gauss_binomial, quantum_int, Context, Element, LaurentPoly, Monomial, Orientation};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..5).prop_map(LaurentPoly::from_terms)
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |x| !x.is_zero())
}

fn orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::Ekf), Just(Orientation::Fke)]
}

/// A random element of the given orientation in degree `d`.
fn element(d: u32, o: Orientation) -> impl Strategy<Value = Element> {
    let ctx = Context::new(d);
    let n = ctx.basis(o).len();
    prop::collection::vec((0..n, laurent()), 0..4).prop_map(move |terms| {
        let basis = ctx.basis(o);
        terms.into_iter().fold(ctx.zero(o), |acc, (i, c)| {
            &acc + &ctx.basis_element(basis[i], o).unwrap().scale(&c)
        })
    })
}

fn degree_and_element(max_d: u32) -> impl Strategy<Value = Element> {
    (0..=max_d, orientation()).prop_flat_map(|(d, o)| element(d, o))
}

fn three_elements(max_d: u32) -> impl Strategy<Value = (Element, Element, Element)> {
    (0..=max_d).prop_flat_map(|d| {
        (
            element(d, Orientation::Ekf),
            element(d, Orientation::Ekf),
            element(d, Orientation::Ekf),
        )
    })
}

proptest! {
    #[test]
    fn ring_axioms(x in laurent(), y in laurent(), z in laurent()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &LaurentPoly::zero(), x.clone());
        prop_assert_eq!(&x * &LaurentPoly::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(-&(-&x), x);
    }

    #[test]
    fn no_zero_coefficients_stored(x in laurent(), y in laurent()) {
        for p in [&x + &y, &x - &y, &x * &y] {
            prop_assert!(p.terms().all(|(_, c)| *c != BigInt::from(0)));
        }
    }

    #[test]
    fn exact_division_inverts_multiplication(q in laurent(), y in nonzero_laurent()) {
        prop_assert_eq!((&q * &y).exact_div(&y).unwrap(), q);
    }

    #[test]
    fn exact_division_is_exact_when_it_succeeds(x in laurent(), y in nonzero_laurent()) {
        if let Ok(q) = x.exact_div(&y) {
            prop_assert_eq!(&q * &y, x);
        }
    }

    #[test]
    fn quantum_integer_addition(r in -10i64..=10, s in -10i64..=10) {
        let rhs = &(&LaurentPoly::v_pow(-s) * &quantum_int(r)) + &(&LaurentPoly::v_pow(r) * &quantum_int(s));
        prop_assert_eq!(quantum_int(r + s), rhs);
    }

    #[test]
    fn quantum_integer_is_antisymmetric(r in -30i64..=30) {
        prop_assert_eq!(quantum_int(-r), -quantum_int(r));
    }

    #[test]
    fn binomial_pascal_rule(r in -10i64..=10, s in 1i64..=10) {
        let rhs = &(&LaurentPoly::v_pow(-s) * &gauss_binomial(r, s))
            + &(&LaurentPoly::v_pow(r - s + 1) * &gauss_binomial(r, s - 1));
        prop_assert_eq!(gauss_binomial(r + 1, s), rhs);
    }

    #[test]
    fn binomial_classical_limit(r in 0usize..=12, s in 0usize..=12) {
        prop_assume!(s <= r);
        let at_one = gauss_binomial(r as i64, s as i64)
            .eval_at(&BigRational::from_integer(1.into()))
            .unwrap();
        prop_assert_eq!(at_one, BigRational::from_integer(pascal_triangle(12)[r][s].into()));
    }

    #[test]
    fn binomial_bar_invariant_and_positive(r in 0i64..=14, s in 0i64..=14) {
        prop_assume!(s <= r);
        let g = gauss_binomial(r, s);
        prop_assert_eq!(g.bar(), g.clone());
        prop_assert!(g.terms().all(|(_, c)| *c > BigInt::from(0)));
    }

    #[test]
    fn negative_lower_index_gives_zero(r in -20i64..=20, s in -20i64..0) {
        prop_assert!(gauss_binomial(r, s).is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map(x in laurent(), y in laurent(), n in 1i64..=5, m in 1i64..=5, neg: bool) {
        let t = BigRational::new(if neg { -n } else { n }.into(), m.into());
        let ex = x.eval_at(&t).unwrap();
        let ey = y.eval_at(&t).unwrap();
        prop_assert_eq!((&x * &y).eval_at(&t).unwrap(), &ex * &ey);
        prop_assert_eq!((&x + &y).eval_at(&t).unwrap(), ex + ey);
    }

    #[test]
    fn laurent_text_and_json_round_trip(x in laurent()) {
        prop_assert_eq!(x.to_string().parse::<LaurentPoly>().unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), x);
    }

    #[test]
    fn element_text_and_json_round_trip(x in degree_and_element(4)) {
        let ctx = x.context().clone();
        let text = x.to_string();
        let back = parse_element(&text, &ctx, x.orientation()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
        let json: ElementJson = serde_json::from_str(&x.to_json_string()).unwrap();
        prop_assert_eq!(json.to_element(&ctx).unwrap(), x);
    }

    #[test]
    fn reduction_emits_canonical_terms(
        d in 0u32..=8, a in 0u32..=9, b1 in 0u32..=8, c in 0u32..=9, o in orientation()
    ) {
        prop_assume!(b1 <= d);
        let ctx = Context::new(d);
        let m = Monomial::new(a, b1, d - b1, c);
        let r = ctx.reduce_monomial(m, o).unwrap();
        prop_assert!(r.is_canonical());
        // the height drops by at least the defect
        let s = m.defect(d, o);
        let bound = if s > 0 { (a + c) as i64 - s } else { (a + c) as i64 };
        prop_assert!(r.terms().all(|(t, _)| t.height() as i64 <= bound));
    }

    #[test]
    fn products_are_canonical_and_match_the_representation(
        (x, y, _) in three_elements(3)
    ) {
        let rep = build_rep(x.d()).unwrap();
        let p = x.multiply(&y).unwrap();
        prop_assert!(p.is_canonical());
        prop_assert_eq!(
            rep.matrix_of_element(&p).unwrap(),
            rep.matrix_of_element(&x).unwrap().mul(&rep.matrix_of_element(&y).unwrap())
        );
    }

    #[test]
    fn multiplication_is_associative_and_bilinear((x, y, z) in three_elements(3)) {
        prop_assert_eq!(
            x.multiply(&y).unwrap().multiply(&z).unwrap(),
            x.multiply(&y.multiply(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.multiply(&(&y + &z)).unwrap(),
            &x.multiply(&y).unwrap() + &x.multiply(&z).unwrap()
        );
    }

    #[test]
    fn symmetry_is_multiplicative((x, y, _) in three_elements(3)) {
        prop_assert_eq!(
            x.symmetry().multiply(&y.symmetry()).unwrap(),
            x.multiply(&y).unwrap().symmetry()
        );
    }

    #[test]
    fn orientation_round_trip(x in degree_and_element(4)) {
        let o = x.orientation();
        let y = x.convert_orientation(o.flipped()).unwrap();
        prop_assert!(y.is_canonical());
        prop_assert_eq!(y.convert_orientation(o).unwrap(), x);
    }

    #[test]
    fn kbinom_round_trip(x in (0u32..=5).prop_flat_map(|d| element(d, Orientation::Ekf))) {
        let coords = x.change_to_kbinom_basis().unwrap();
        let d = x.d();
        prop_assert!(coords.keys().all(|(a, b, c)| a + b + c <= d));
        prop_assert_eq!(x.context().change_from_kbinom_basis(&coords).unwrap(), x);
    }

    #[test]
    fn rank_ignores_dependent_additions(d in 0u32..=2, picks in prop::collection::vec(0usize..10, 1..6), s in nonzero_laurent()) {
        let ctx = Context::new(d);
        let rep = build_rep(d).unwrap();
        let basis = ctx.basis(Orientation::Ekf);
        let mats: Vec<_> = picks
            .iter()
            .map(|i| rep.monomial_matrix(&basis[i % basis.len()], Orientation::Ekf).unwrap())
            .collect();
        let r = span_rank(&mats);
        let mut more = mats.clone();
        more.push(mats[0].scale(&s).add(&mats[mats.len() - 1]));
        prop_assert_eq!(span_rank(&more), r);
        let distinct: std::collections::BTreeSet<_> = picks.iter().map(|i| i % basis.len()).collect();
        prop_assert_eq!(r, distinct.len());
    }
}
