use num_bigint::BigInt;
use orefield::expr::{canonical, evaluate, parse, Context, Expr, Pos};
use orefield_core::random::{random_fraction, random_poly, random_series};
use orefield_core::{catalog, GroundField, SkewFraction};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const AT: Pos = Pos { line: 1, column: 1 };

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..1000).prop_map(|n| Expr::Int(BigInt::from(n))),
        prop::sample::select(vec!["t", "i", "x", "s", "alpha"]).prop_map(|v| Expr::Var(v.into(), AT)),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 40, 3, |inner| {
        let bin = |f: fn(Box<Expr>, Box<Expr>) -> Expr, inner: BoxedStrategy<Expr>| {
            (inner.clone(), inner).prop_map(move |(a, b)| f(Box::new(a), Box::new(b)))
        };
        let inner = inner.boxed();
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            bin(Expr::Add, inner.clone()),
            bin(Expr::Sub, inner.clone()),
            bin(Expr::Mul, inner.clone()),
            bin(Expr::Div, inner.clone()),
            (inner.clone(), -3i64..6).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            prop::collection::vec(inner.clone(), 1..3).prop_map(|a| Expr::Call("sigma".into(), a, AT)),
            prop::collection::vec(inner, 1..3).prop_map(Expr::Bracket),
        ]
    })
}

/// Values print in the input syntax and evaluate back to themselves.
fn fixpoint(shown: String, ctx: &Context) {
    assert_eq!(canonical(&shown, ctx).unwrap(), shown);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn printed_trees_parse_back(e in tree()) {
        let shown = e.to_string();
        prop_assert_eq!(parse(&shown).unwrap(), e, "{}", shown);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn printed_values_evaluate_to_themselves(seed in any::<u64>(), which in 0usize..3) {
        let field = [GroundField::rationals(), GroundField::gaussian_conjugation(), GroundField::hamilton()][which].clone();
        let ctx = Context::new(field.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        fixpoint(random_poly(&field, &mut rng, 4, 9).to_string(), &ctx);
        fixpoint(random_fraction(&field, &mut rng, 3, 9).to_string(), &ctx);
        let v = rng.gen_range(-3..3);
        fixpoint(random_series(&field, &mut rng, v, v, 6, 9).to_string(), &ctx);
    }

    #[test]
    fn printed_extension_elements_evaluate_to_themselves(seed in any::<u64>()) {
        let sc = catalog::extension("qi-quadratic").unwrap();
        let field = sc.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coords: Vec<SkewFraction> = (0..sc.degree()).map(|_| random_fraction(&field, &mut rng, 2, 5)).collect();
        let a = sc.element(coords).unwrap();
        let ctx = Context::with_scenario(sc);
        fixpoint(a.to_string(), &ctx);
        let back = evaluate(&a.to_string(), &ctx).unwrap();
        prop_assert_eq!(back.to_string(), a.to_string());
    }
}
