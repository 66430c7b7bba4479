use std::collections::BTreeMap;
use std::sync::Arc;

use erbalg::operators::{
    compatibility_check, falling_factorial_op, infer_weight, jackson_pair, laurent_split, predicted_weight,
    verify_erb_identity, Basis, CompatConstants, RuleOperator, Status, TruncatedAlgebra, Vector, WeightSolution,
};
use erbalg::scalar::{integer, rational, Rational, RingContext, ScalarPoly};
use erbalg::shuffle::ErbWeight;
use erbalg::Error;
use proptest::prelude::*;

fn ring() -> Arc<RingContext> {
    RingContext::new(["lambda", "kappa", "mu", "a", "b"], false).unwrap()
}

fn p(ctx: &Arc<RingContext>, s: &str) -> ScalarPoly {
    ScalarPoly::parse(ctx, s).unwrap()
}

fn weight(ctx: &Arc<RingContext>, l: &str, k: &str) -> ErbWeight {
    ErbWeight::new(p(ctx, l), p(ctx, k)).unwrap()
}

/// `C(x, k)` as an exact rational.
fn choose(x: i64, k: i64) -> Rational {
    (0..k).fold(integer(1), |acc, i| acc * integer(x - i) / integer(i + 1))
}

/// Value at the integer `x` of a vector in the falling-factorial basis,
/// computed through the power basis.
fn value_at(alg: &TruncatedAlgebra, v: &Vector, x: i64) -> ScalarPoly {
    let coeffs = alg.to_power_basis(v).unwrap();
    let mut out = ScalarPoly::zero(alg.context());
    let mut power = integer(1);
    for c in coeffs {
        out = &out + &c.scale(&power);
        power *= integer(x);
    }
    out
}

#[test]
fn jackson_examples() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(12, &ctx).unwrap();
    let (plus, minus) = jackson_pair(&alg, &integer(2)).unwrap();
    let x = alg.element(1);
    assert_eq!(plus.apply(&x).unwrap(), x.scale_rational(&integer(-1)));
    assert_eq!(minus.apply(&x).unwrap(), x.scale_rational(&integer(2)));
    for n in 1..=12 {
        let e = alg.element(n);
        let sum = &plus.apply(&e).unwrap() + &minus.apply(&e).unwrap();
        assert_eq!(sum, e);
    }
    assert!(plus.adjoint(&p(&ctx, "-1")).same_action(&minus));
    assert!(matches!(plus.apply(&alg.one()), Err(Error::OutsideDomain(0))));
    for q in [1, -1] {
        assert!(matches!(
            jackson_pair(&alg, &integer(q)),
            Err(Error::RootOfUnity { .. })
        ));
    }
    assert!(jackson_pair(&alg, &integer(0)).is_err());
}

#[test]
fn jackson_combination() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(24, &ctx).unwrap();
    let (plus, minus) = jackson_pair(&alg, &integer(2)).unwrap();
    let (a, b) = (p(&ctx, "a"), p(&ctx, "b"));
    let q = RuleOperator::combine(&plus, &minus, &a, &b).unwrap();
    for n in 1..=12 {
        let qn = num_traits::pow(integer(2), n as usize);
        let coeff = (&a - &b.scale(&qn)).scale(&(integer(1) - &qn).recip());
        assert_eq!(q.image(n).unwrap(), &alg.element(n).scale(&coeff));
    }
    let probes: Vec<Vector> = (1..=12).map(|n| alg.element(n)).collect();
    let report = verify_erb_identity(&q, &weight(&ctx, "-a - b", "a*b"), &alg, &probes).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.probes_checked, 144);
}

#[test]
fn laurent_examples() {
    let ctx = ring();
    let alg = TruncatedAlgebra::laurent(6, &ctx).unwrap();
    let (plus, minus) = laurent_split(&alg).unwrap();
    let mut v = alg.element(-1);
    v.add_term(0, p(&ctx, "3"));
    v.add_term(2, p(&ctx, "1"));
    let mut expected = alg.element(2);
    expected.add_term(0, p(&ctx, "3"));
    assert_eq!(plus.apply(&v).unwrap(), expected);
    assert_eq!(minus.apply(&v).unwrap(), alg.element(-1));
    assert_eq!(plus.apply(&plus.apply(&v).unwrap()).unwrap(), plus.apply(&v).unwrap());
    assert_eq!(&plus.apply(&v).unwrap() + &minus.apply(&v).unwrap(), v);
    let q = RuleOperator::combine(&plus, &minus, &p(&ctx, "a"), &p(&ctx, "b")).unwrap();
    let probes: Vec<Vector> = (-3..=3).map(|n| alg.element(n)).collect();
    assert!(verify_erb_identity(&q, &weight(&ctx, "-a - b", "a*b"), &alg, &probes)
        .unwrap()
        .passed());
    assert!(laurent_split(&TruncatedAlgebra::laurent(0, &ctx).unwrap()).is_err());
}

#[test]
fn falling_factorial_products_match_binomials() {
    let ctx = ring();
    let alg = TruncatedAlgebra::falling_factorial(12, &ctx).unwrap();
    for j in 0..=6 {
        for k in 0..=6 {
            let prod = alg.mul(&alg.element(j), &alg.element(k)).unwrap();
            for x in -3..=15 {
                assert_eq!(
                    value_at(&alg, &prod, x),
                    ScalarPoly::constant(&ctx, choose(x, j) * choose(x, k)),
                    "t_{j} t_{k} at {x}"
                );
            }
        }
    }
    assert!(matches!(
        alg.mul(&alg.element(7), &alg.element(6)),
        Err(Error::Overflow(_))
    ));
}

#[test]
fn falling_factorial_operator() {
    let ctx = ring();
    let alg = TruncatedAlgebra::falling_factorial(16, &ctx).unwrap();
    let (a, b) = (p(&ctx, "a"), p(&ctx, "b"));
    let q = falling_factorial_op(&alg, &a, &b).unwrap();
    // Q(t_k) = t_k ((a - b) x - a k - b) / (k + 1), checked pointwise
    for k in 0..=8 {
        let image = q.image(k).unwrap();
        for x in -4..=12 {
            let factor = (&a - &b).scale(&integer(x)) - a.scale(&integer(k)) - &b;
            let expected = factor.scale(&(choose(x, k) / integer(k + 1)));
            assert_eq!(value_at(&alg, image, x), expected, "Q(t_{k}) at {x}");
        }
    }
    // Q(t_0) = (a - b) x - b
    let coeffs = alg.to_power_basis(q.image(0).unwrap()).unwrap();
    assert_eq!(coeffs[0], -&b);
    assert_eq!(coeffs[1], &a - &b);
    // a = 1, b = 0 is the shift t_k -> t_{k+1}
    let shift = falling_factorial_op(&alg, &p(&ctx, "1"), &p(&ctx, "0")).unwrap();
    assert_eq!(shift.image(3).unwrap(), &alg.element(4));
    // a = 0, b = 1 is the adjoint -t_k (x + 1) / (k + 1)
    let adj = falling_factorial_op(&alg, &p(&ctx, "0"), &p(&ctx, "1")).unwrap();
    assert!(adj.same_action(&shift.adjoint(&p(&ctx, "1"))));
    for k in 0..=5 {
        for x in 0..=9 {
            let expected = -(choose(x, k) * integer(x + 1) / integer(k + 1));
            assert_eq!(
                value_at(&alg, adj.image(k).unwrap(), x),
                ScalarPoly::constant(&ctx, expected)
            );
        }
    }
    assert!(matches!(q.image(16), Err(Error::Overflow(_))));

    let probes: Vec<Vector> = (0..=6).map(|k| alg.element(k)).collect();
    assert!(verify_erb_identity(&q, &weight(&ctx, "a + b", "a*b"), &alg, &probes)
        .unwrap()
        .passed());
}

#[test]
fn adjoint_examples() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(6, &ctx).unwrap();
    let lambda = p(&ctx, "lambda");
    let zero = RuleOperator::identity(&alg).zero_like(&ctx);
    let adj = zero.adjoint(&lambda);
    assert!(adj.same_action(&RuleOperator::identity(&alg).scale(&-&lambda)));
    let id = RuleOperator::identity(&alg);
    assert!(id.adjoint(&lambda).adjoint(&lambda).same_action(&id));
}

#[test]
fn combine_examples() {
    let ctx = ring();
    let alg = TruncatedAlgebra::laurent(4, &ctx).unwrap();
    let (plus, _) = laurent_split(&alg).unwrap();
    let zero = plus.zero_like(&ctx);
    let same = RuleOperator::combine(&plus, &zero, &p(&ctx, "1"), &p(&ctx, "0")).unwrap();
    assert!(same.same_action(&plus));
    let other = RuleOperator::identity(&TruncatedAlgebra::polynomial(4, &ctx).unwrap());
    assert_eq!(
        RuleOperator::combine(&plus, &other, &p(&ctx, "1"), &p(&ctx, "1")).err(),
        Some(Error::BasisMismatch)
    );

    let w = weight(&ctx, "lambda", "0");
    let consts = CompatConstants::adjoint_pair(&w);
    let predicted = predicted_weight(&w, &w, &p(&ctx, "a"), &p(&ctx, "b"), &consts.gamma12, &consts.gamma21).unwrap();
    assert_eq!(predicted, weight(&ctx, "a*lambda + b*lambda", "a*b*lambda^2"));
}

#[test]
fn scalar_operators() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(8, &ctx).unwrap();
    let probes: Vec<Vector> = (0..=4).map(|n| alg.element(n)).collect();
    let mu = p(&ctx, "mu");
    let op = RuleOperator::scalar_op("mu*id", &alg, alg.basis().labels(), &mu);
    let w = weight(&ctx, "lambda", "-mu^2 - mu*lambda");
    assert!(verify_erb_identity(&op, &w, &alg, &probes).unwrap().passed());
    let zero = op.zero_like(&ctx);
    assert!(verify_erb_identity(&zero, &weight(&ctx, "lambda", "0"), &alg, &probes)
        .unwrap()
        .passed());
    assert!(
        !verify_erb_identity(&zero, &weight(&ctx, "lambda", "kappa"), &alg, &probes)
            .unwrap()
            .passed()
    );
}

#[test]
fn weight_inference() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(8, &ctx).unwrap();
    let (plus, _) = jackson_pair(&alg, &integer(2)).unwrap();
    let probes = vec![alg.element(1), alg.element(2)];
    assert_eq!(
        infer_weight(&plus, &alg, &probes).unwrap(),
        WeightSolution::Unique {
            lambda: "-1".into(),
            kappa: "0".into()
        }
    );
    let all: Vec<Vector> = (0..=3).map(|n| alg.element(n)).collect();
    assert_eq!(
        infer_weight(&RuleOperator::identity(&alg), &alg, &all).unwrap(),
        WeightSolution::Line {
            point: ["-1".into(), "0".into()],
            direction: ["-1".into(), "1".into()]
        }
    );

    // x^n -> n x^n: the single pair (x, x) leaves the line 4 + 2 lambda + kappa = 1
    let images: BTreeMap<i64, Option<Vector>> = (0..=8)
        .map(|n| (n, Some(alg.element(n).scale_rational(&integer(n)))))
        .collect();
    let euler = RuleOperator::new("E", alg.basis(), images);
    let line = infer_weight(&euler, &alg, &[alg.element(1)]).unwrap();
    assert_eq!(
        line,
        WeightSolution::Line {
            point: ["-3/2".into(), "0".into()],
            direction: ["-1/2".into(), "1".into()]
        }
    );
    assert_eq!(infer_weight(&euler, &alg, &probes).unwrap(), WeightSolution::Empty);

    let symbolic = RuleOperator::identity(&alg).scale(&p(&ctx, "a"));
    assert!(matches!(
        infer_weight(&symbolic, &alg, &probes),
        Err(Error::NonNumeric(_))
    ));
}

#[test]
fn compatibility_examples() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(24, &ctx).unwrap();
    let (plus, minus) = jackson_pair(&alg, &integer(2)).unwrap();
    let w = weight(&ctx, "-1", "0");
    let probes: Vec<Vector> = (1..=10).map(|n| alg.element(n)).collect();
    let report = compatibility_check(&plus, &minus, &w, &w, &CompatConstants::adjoint_pair(&w), &alg, &probes).unwrap();
    assert!(report.passed(), "{report}");

    let same = CompatConstants {
        alpha12: p(&ctx, "-1"),
        beta12: p(&ctx, "0"),
        gamma12: p(&ctx, "0"),
        alpha21: p(&ctx, "-1"),
        beta21: p(&ctx, "0"),
        gamma21: p(&ctx, "0"),
    };
    assert!(compatibility_check(&plus, &plus, &w, &w, &same, &alg, &probes)
        .unwrap()
        .passed());

    let wrong = CompatConstants {
        gamma12: p(&ctx, "1"),
        ..CompatConstants::adjoint_pair(&w)
    };
    let report = compatibility_check(&plus, &minus, &w, &w, &wrong, &alg, &probes).unwrap();
    assert_eq!(report.status, Status::Fail);
    assert!(report.counterexample.is_some());

    let bad_side = CompatConstants {
        alpha21: p(&ctx, "5"),
        ..CompatConstants::adjoint_pair(&w)
    };
    assert!(!compatibility_check(&plus, &minus, &w, &w, &bad_side, &alg, &probes)
        .unwrap()
        .passed());
}

#[test]
fn failing_report_names_the_pair() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(8, &ctx).unwrap();
    let (plus, _) = jackson_pair(&alg, &integer(2)).unwrap();
    let probes = vec![alg.element(1), alg.element(2)];
    let report = verify_erb_identity(&plus, &weight(&ctx, "1", "0"), &alg, &probes).unwrap();
    assert_eq!(report.status, Status::Fail);
    let c = report.counterexample.as_ref().unwrap();
    assert_eq!((c.x.as_str(), c.y.as_str()), ("x", "x"));
    assert!(report.to_string().starts_with("FAIL"));
}

#[test]
fn overflow_is_an_error() {
    let ctx = ring();
    let alg = TruncatedAlgebra::polynomial(4, &ctx).unwrap();
    let (plus, _) = jackson_pair(&alg, &integer(2)).unwrap();
    let probes = vec![alg.element(3)];
    assert!(matches!(
        verify_erb_identity(&plus, &weight(&ctx, "-1", "0"), &alg, &probes),
        Err(Error::Overflow(_))
    ));
    assert!(matches!(alg.basis(), Basis::Polynomial { max_degree: 4 }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Roots a, b of t^2 - mu t + kappa turn the weight-1 shift into an
    /// operator of weight (mu, kappa).
    #[test]
    fn rational_roots(an in -5i64..=5, ad in 1i64..=3, bn in -5i64..=5, bd in 1i64..=3) {
        let ctx = ring();
        let alg = TruncatedAlgebra::falling_factorial(12, &ctx).unwrap();
        let (a, b) = (rational(an, ad), rational(bn, bd));
        let one = p(&ctx, "1");
        let shift = falling_factorial_op(&alg, &one, &p(&ctx, "0")).unwrap();
        let q = RuleOperator::combine(
            &shift,
            &shift.adjoint(&one),
            &ScalarPoly::constant(&ctx, a.clone()),
            &ScalarPoly::constant(&ctx, b.clone()),
        ).unwrap();
        let w = ErbWeight::constant(&ctx, &a + &b, &a * &b);
        let probes: Vec<Vector> = (0..=5).map(|k| alg.element(k)).collect();
        prop_assert!(verify_erb_identity(&q, &w, &alg, &probes).unwrap().passed());
    }

    /// Scaling by c multiplies the weight by (c, c^2); the adjoint passes
    /// exactly when the operator does.
    #[test]
    fn scaling_and_adjoint(c in -4i64..=4, l in -3i64..=3, k in -3i64..=3) {
        let ctx = ring();
        let alg = TruncatedAlgebra::laurent(6, &ctx).unwrap();
        let (plus, minus) = laurent_split(&alg).unwrap();
        let probes: Vec<Vector> = (-3..=3).map(|n| alg.element(n)).collect();
        // 2P+ + 3P- has weight (-5, 6)
        let op = RuleOperator::combine(&plus, &minus, &p(&ctx, "2"), &p(&ctx, "3")).unwrap();
        let c = integer(c);
        let scaled = op.scale(&ScalarPoly::constant(&ctx, c.clone()));
        let w = ErbWeight::constant(&ctx, integer(-5) * &c, integer(6) * &c * &c);
        prop_assert!(verify_erb_identity(&scaled, &w, &alg, &probes).unwrap().passed());

        let guess = ErbWeight::constant(&ctx, integer(l), integer(k));
        let direct = verify_erb_identity(&op, &guess, &alg, &probes).unwrap().passed();
        let adjoint = verify_erb_identity(&op.adjoint(&guess.lambda), &guess, &alg, &probes).unwrap().passed();
        prop_assert_eq!(direct, adjoint);
    }
}
