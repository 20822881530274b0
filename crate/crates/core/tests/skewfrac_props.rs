use orefield_core::random::{random_fraction, random_ground, random_nonzero_fraction, random_poly};
use orefield_core::skewfrac::center_basis;
use orefield_core::{GroundField, SkewFraction, SkewPolynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> [GroundField; 2] {
    [GroundField::gaussian_conjugation(), GroundField::hamilton()]
}

fn check_field_axioms(k: &GroundField, seed: u64, max_deg: usize) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = random_fraction(k, &mut rng, max_deg, 4);
    let y = random_fraction(k, &mut rng, max_deg, 4);
    let z = random_fraction(k, &mut rng, max_deg, 4);
    prop_assert!((&(&x * &y) * &z).equals(&(&x * &(&y * &z))));
    prop_assert!((&(&x + &y) + &z).equals(&(&x + &(&y + &z))));
    prop_assert!((&x + &y).equals(&(&y + &x)));
    prop_assert!((&x * &(&y + &z)).equals(&(&(&x * &y) + &(&x * &z))));
    prop_assert!((&(&x + &y) * &z).equals(&(&(&x * &z) + &(&y * &z))));
    let u = random_nonzero_fraction(k, &mut rng, max_deg, 4);
    let one = SkewFraction::one(k);
    prop_assert!((&u * &u.inv().unwrap()).equals(&one));
    prop_assert!((&u.inv().unwrap() * &u).equals(&one));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_axioms_gaussian_conjugation(seed in any::<u64>()) {
        check_field_axioms(&GroundField::gaussian_conjugation(), seed, 2)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_hamilton(seed in any::<u64>()) {
        check_field_axioms(&GroundField::hamilton(), seed, 1)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equality_is_compatible_with_arithmetic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            // the same fraction with numerator and denominator scaled on the left
            let num = random_poly(&k, &mut rng, 2, 4);
            let den = random_poly(&k, &mut rng, 2, 4);
            let c = random_poly(&k, &mut rng, 2, 4);
            let x = SkewFraction::new(num.clone(), den.clone()).unwrap();
            let y = SkewFraction::new(&c * &num, &c * &den).unwrap();
            prop_assert!(x.equals(&y));
            prop_assert!(y.equals(&x));
            prop_assert_eq!(&x, &y);
            let z = random_fraction(&k, &mut rng, 2, 4);
            prop_assert!((&x + &z).equals(&(&y + &z)));
            prop_assert!((&x * &z).equals(&(&y * &z)));
            prop_assert!((&z * &x).equals(&(&z * &y)));
        }
    }

    #[test]
    fn invariant_rational_functions_in_t_n_are_central(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let n = k.order();
            let mut parts = Vec::new();
            for _ in 0..2 {
                let coeffs: Vec<_> = (0..3)
                    .flat_map(|_| {
                        let mut block = vec![k.zero(); n];
                        block[0] = k.from_rational(random_ground(&GroundField::rationals(), &mut rng, 5).as_rational().unwrap().clone());
                        block
                    })
                    .collect();
                parts.push(SkewPolynomial::new(&k, coeffs));
            }
            if parts[1].is_zero() {
                continue;
            }
            let c = SkewFraction::new(parts[0].clone(), parts[1].clone()).unwrap();
            prop_assert!(c.is_central(4, &mut rng));
        }
    }
}

#[test]
fn center_of_gaussian_conjugation_is_even_powers() {
    let k = GroundField::gaussian_conjugation();
    let basis = center_basis(&k, 8).unwrap();
    let expected: Vec<SkewPolynomial> = (0..=4).map(|e| SkewPolynomial::monomial(k.one(), 2 * e)).collect();
    assert_eq!(basis, expected);
}
