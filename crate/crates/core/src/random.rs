//! Seeded random elements for the property suites and the CLI checks.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::ground::{GroundElement, GroundField};
use crate::laurent::TwistedSeries;
use crate::rational::Q;
use crate::skewfrac::SkewFraction;
use crate::skewpoly::SkewPolynomial;

fn random_q<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Q {
    let n = rng.gen_range(-bound..=bound);
    // an occasional small denominator keeps the suites honest about fractions
    let d = if rng.gen_ratio(1, 6) { rng.gen_range(2..=3) } else { 1 };
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Coordinates drawn from `[-bound, bound]`, sometimes halved or thirded.
pub fn random_ground<R: Rng + ?Sized>(field: &GroundField, rng: &mut R, bound: i64) -> GroundElement {
    let coords = (0..field.dim()).map(|_| random_q(rng, bound)).collect();
    field.from_coords(coords).expect("dimension matches")
}

pub fn random_nonzero_ground<R: Rng + ?Sized>(
    field: &GroundField,
    rng: &mut R,
    bound: i64,
) -> GroundElement {
    loop {
        let a = random_ground(field, rng, bound);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Degree uniform in `0..=max_deg`, leading coefficient nonzero.
pub fn random_poly<R: Rng + ?Sized>(
    field: &GroundField,
    rng: &mut R,
    max_deg: usize,
    bound: i64,
) -> SkewPolynomial {
    let deg = rng.gen_range(0..=max_deg);
    let mut coeffs: Vec<GroundElement> = (0..deg).map(|_| random_ground(field, rng, bound)).collect();
    coeffs.push(random_nonzero_ground(field, rng, bound));
    SkewPolynomial::new(field, coeffs)
}

/// `den⁻¹·num` with independent random parts; zero with small probability.
pub fn random_fraction<R: Rng + ?Sized>(
    field: &GroundField,
    rng: &mut R,
    max_deg: usize,
    bound: i64,
) -> SkewFraction {
    let num = if rng.gen_ratio(1, 20) {
        SkewPolynomial::zero(field)
    } else {
        random_poly(field, rng, max_deg, bound)
    };
    let den = random_poly(field, rng, max_deg, bound);
    SkewFraction::new(num, den).expect("nonzero denominator")
}

pub fn random_nonzero_fraction<R: Rng + ?Sized>(
    field: &GroundField,
    rng: &mut R,
    max_deg: usize,
    bound: i64,
) -> SkewFraction {
    let num = random_poly(field, rng, max_deg, bound);
    let den = random_poly(field, rng, max_deg, bound);
    SkewFraction::new(num, den).expect("nonzero denominator")
}

/// Series with valuation in `min_val..=max_val` and `len` known terms.
pub fn random_series<R: Rng + ?Sized>(
    field: &GroundField,
    rng: &mut R,
    min_val: i64,
    max_val: i64,
    len: usize,
    bound: i64,
) -> TwistedSeries {
    let val = rng.gen_range(min_val..=max_val);
    let mut coeffs = Vec::with_capacity(len);
    coeffs.push(random_nonzero_ground(field, rng, bound));
    for _ in 1..len {
        coeffs.push(random_ground(field, rng, bound));
    }
    TwistedSeries::new(field, val, coeffs, val + len as i64)
}
