use orefield_core::random::{random_nonzero_ground, random_poly};
use orefield_core::skewpoly::{coprime_by_modular_rank, gcld, gcld_by_euclid, left_common_multiple, left_common_multiple_by_linear_algebra, ore_witness};
use orefield_core::{GroundField, SkewPolynomial};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> [GroundField; 3] {
    [GroundField::rationals(), GroundField::gaussian_conjugation(), GroundField::hamilton()]
}

fn deg(p: &SkewPolynomial) -> i64 {
    p.degree().map_or(-1, |d| d as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_and_degrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let f = random_poly(&k, &mut rng, 4, 5);
            let g = random_poly(&k, &mut rng, 4, 5);
            let h = random_poly(&k, &mut rng, 4, 5);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
            prop_assert_eq!(deg(&(&f * &g)), deg(&f) + deg(&g));
        }
    }

    #[test]
    fn central_elements_commute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let p = random_poly(&k, &mut rng, 5, 5);
            let tn = SkewPolynomial::monomial(k.one(), k.order());
            prop_assert!(tn.commutes_with(&p));
            for b in k.invariant_basis() {
                if b.is_central() {
                    prop_assert!(SkewPolynomial::constant(b).commutes_with(&p));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn division_identity_and_uniqueness(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let f = random_poly(&k, &mut rng, 8, 5);
            let g = random_poly(&k, &mut rng, 4, 5);
            let (q, r) = f.divmod_right(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f.clone());
            prop_assert!(deg(&r) < deg(&g));
            // re-dividing a constructed dividend recovers its quotient and remainder
            let (q2, r2) = (&(&q * &g) + &r).divmod_right(&g).unwrap();
            prop_assert_eq!((&q2, &r2), (&q, &r));
            let delta = SkewPolynomial::monomial(random_nonzero_ground(&k, &mut rng, 3), rng.gen_range(0..2));
            prop_assert_ne!(&(&(&q + &delta) * &g) + &r, f.clone());

            let (ql, rl) = f.divmod_left(&g).unwrap();
            prop_assert_eq!(&(&g * &ql) + &rl, f);
            prop_assert!(deg(&rl) < deg(&g));
        }
    }

    #[test]
    fn ore_witnesses_and_common_multiples(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let a = random_poly(&k, &mut rng, 3, 4);
            let b = random_poly(&k, &mut rng, 3, 4);
            let (a1, b1) = ore_witness(&a, &b).unwrap();
            prop_assert!(!b1.is_zero());
            prop_assert_eq!(&a * &b1, &b * &a1);

            let (u, v) = left_common_multiple(&a, &b).unwrap();
            prop_assert!(!u.is_zero());
            prop_assert_eq!(&u * &a, &v * &b);
            let (u2, v2) = left_common_multiple_by_linear_algebra(&a, &b).unwrap();
            prop_assert_eq!(&u2 * &a, &v2 * &b);
            prop_assert_eq!(deg(&(&u * &a)), deg(&(&u2 * &a)));

            let c = random_poly(&k, &mut rng, 2, 4);
            let d = gcld(&(&c * &a), &(&c * &b)).unwrap();
            // c is a common left divisor, so it left-divides the gcld
            let (_, rem) = d.divmod_left(&c).unwrap();
            prop_assert!(rem.is_zero());
        }
    }

    #[test]
    fn modular_certificate_agrees_with_euclid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in fields() {
            let c = if rng.gen_bool(0.5) {
                random_poly(&k, &mut rng, 2, 4)
            } else {
                SkewPolynomial::one(&k)
            };
            let a = &c * &random_poly(&k, &mut rng, 4, 4);
            let b = &c * &random_poly(&k, &mut rng, 4, 4);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let euclid = gcld_by_euclid(&a, &b).unwrap();
            prop_assert_eq!(gcld(&a, &b).unwrap(), euclid.clone());
            if coprime_by_modular_rank(&a, &b) {
                prop_assert_eq!(euclid.degree(), Some(0));
            }
        }
    }
}

#[test]
fn certificate_declines_a_shared_factor() {
    let k = GroundField::gaussian_conjugation();
    let i = k.generator();
    let c = SkewPolynomial::new(&k, vec![i.clone(), k.one()]);
    let a = &c * &SkewPolynomial::new(&k, vec![k.from_int(2), k.one()]);
    let b = &c * &SkewPolynomial::new(&k, vec![i, k.from_int(3), k.one()]);
    assert!(!coprime_by_modular_rank(&a, &b));
    assert_eq!(gcld(&a, &b).unwrap(), c.monic_right());
    assert!(coprime_by_modular_rank(&SkewPolynomial::t(&k), &c));
}
