#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;
use quatreg_core::expr::{BinOp, ExprKind, Func};
use quatreg_core::forms::PointForm;
use quatreg_core::{parse, sample, Expr, Quaternion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn node(kind: ExprKind) -> Expr {
    kind.into()
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let literal = prop_oneof![
        (0u32..1000).prop_map(|n| n as f64 / 8.0),
        (prop::num::f64::POSITIVE | prop::num::f64::ZERO).prop_filter("finite", |v| v.is_finite()),
    ];
    let leaf = prop_oneof![
        literal.prop_map(|v| node(ExprKind::Literal(v))),
        (1u8..=4).prop_map(|k| node(ExprKind::Var(k))),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div)
        ];
        let func = prop_oneof![
            Just(Func::Sin),
            Just(Func::Cos),
            Just(Func::Exp),
            Just(Func::Log),
            Just(Func::Sqrt)
        ];
        prop_oneof![
            inner.clone().prop_map(|a| node(ExprKind::Neg(Box::new(a)))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| node(ExprKind::Binary(
                o,
                Box::new(a),
                Box::new(b)
            ))),
            (inner.clone(), -4i32..=6).prop_map(|(a, n)| node(ExprKind::Pow(Box::new(a), n))),
            (func, inner).prop_map(|(f, a)| node(ExprKind::Call(f, Box::new(a)))),
        ]
    })
}

fn arb_quaternion() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion)
}

fn arb_point() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0f64..1.0)
}

proptest! {
    #[test]
    fn print_parse_round_trip(e in arb_expr()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn multiplication_is_associative(a in arb_quaternion(), b in arb_quaternion(), c in arb_quaternion()) {
        prop_assert!(((a * b) * c).approx_eq(&(a * (b * c)), 1e-12));
    }

    #[test]
    fn norm_is_multiplicative(a in arb_quaternion(), b in arb_quaternion()) {
        let lhs = (a * b).norm();
        prop_assert!((lhs - a.norm() * b.norm()).abs() <= 1e-12 * (1.0 + lhs));
    }

    #[test]
    fn inverse_is_two_sided(a in arb_quaternion()) {
        prop_assume!(a.norm() > 1e-3);
        let inv = a.inverse().unwrap();
        prop_assert!((a * inv).approx_eq(&Quaternion::ONE, 1e-12));
        prop_assert!((inv * a).approx_eq(&Quaternion::ONE, 1e-12));
    }

    #[test]
    fn conjugate_reverses_products(a in arb_quaternion(), b in arb_quaternion()) {
        prop_assert!((a * b).conjugate().approx_eq(&(b.conjugate() * a.conjugate()), 1e-12));
    }

    #[test]
    fn symbolic_diff_matches_jets(seed in any::<u64>(), p in arb_point()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = sample::expr(&mut rng, 3);
        let jet = e.eval_jet(p).unwrap();
        for axis in 1..=4 {
            let d = e.diff(axis).unwrap();
            let sym = d.eval_real(p).unwrap();
            let want = jet.grad[axis - 1];
            prop_assert!((sym - want).abs() <= 1e-9 * want.abs().max(1.0), "d{axis}({e}) = {d}: {sym} vs {want}");
            let second = d.eval_jet(p).unwrap().grad;
            for k in 0..4 {
                let want = jet.hess[axis - 1][k];
                prop_assert!((second[k] - want).abs() <= 1e-9 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn jet_value_matches_real_evaluation(seed in any::<u64>(), p in arb_point()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = sample::expr(&mut rng, 4);
        let (jet, real) = (e.eval_jet(p).unwrap().value, e.eval_real(p).unwrap());
        prop_assert!((jet - real).abs() <= 1e-14 * real.abs().max(1.0), "{e}: {jet} vs {real}");
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::point_form(&mut rng, 1, false);
        let b = sample::point_form(&mut rng, 1, false);
        let c = sample::point_form(&mut rng, 2, false);
        let lhs = a.wedge(&b).wedge(&c);
        let rhs = a.wedge(&b.wedge(&c));
        prop_assert!(lhs.max_diff(&rhs) <= 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn odd_real_forms_square_to_zero(seed in any::<u64>(), m in prop::sample::select(vec![1usize, 3])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::point_form(&mut rng, m, true);
        prop_assert_eq!(a.wedge(&a).max_abs(), 0.0);
    }

    #[test]
    fn scalar_forms_act_by_multiplication(q in arb_quaternion(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::point_form(&mut rng, 2, false);
        prop_assert_eq!(PointForm::scalar(q).wedge(&a).max_diff(&a.left_mul(q)), 0.0);
        prop_assert_eq!(a.wedge(&PointForm::scalar(q)).max_diff(&a.right_mul(q)), 0.0);
    }
}
