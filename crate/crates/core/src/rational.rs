//! Exact rationals.
//!
//! Values whose reduced numerator and denominator fit in an `i64` are kept
//! inline and combined in `i128`; anything larger falls back to
//! `dashu_ratio::RBig`. The representation is canonical, so
//! structural equality is value equality.

use alloc::borrow::Cow;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_int::ops::Gcd;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`, `num > i64::MIN`.
    Small(i64, i64),
    /// Reduced and too large for `Small`.
    Big(RBig),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(Repr);

fn small_from_i128(num: i128, den: i128) -> Option<Q> {
    let (n, d) = (i64::try_from(num).ok()?, i64::try_from(den).ok()?);
    (n != i64::MIN).then_some(Q(Repr::Small(n, d)))
}

/// Reduces `num/den` (with `den != 0`) into canonical form.
fn from_i128(num: i128, den: i128) -> Q {
    debug_assert!(den != 0);
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / g, den / g);
    if d < 0 {
        n = -n;
        d = -d;
    }
    small_from_i128(n, d).unwrap_or_else(|| Q(Repr::Big(raw_big(n, d))))
}

/// `n/d` already reduced with `d > 0`.
fn raw_big(n: i128, d: i128) -> RBig {
    RBig::from_parts(IBig::from(n), UBig::from(d as u128))
}

fn to_ibig(n: &BigInt) -> IBig {
    IBig::from_le_bytes(&n.to_signed_bytes_le())
}

fn to_bigint(n: &IBig) -> BigInt {
    BigInt::from_signed_bytes_le(&n.to_le_bytes())
}

fn from_big(r: RBig) -> Q {
    // `r` is already reduced
    match (i64::try_from(r.numerator()), i64::try_from(r.denominator())) {
        (Ok(n), Ok(d)) if n != i64::MIN => Q(Repr::Small(n, d)),
        _ => Q(Repr::Big(r)),
    }
}

impl Q {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        from_big(RBig::from_parts_signed(to_ibig(&num), to_ibig(&den)))
    }

    pub fn from_integer(n: BigInt) -> Self {
        from_big(RBig::from(to_ibig(&n)))
    }

    fn to_big(&self) -> RBig {
        match &self.0 {
            Repr::Small(n, d) => raw_big(*n as i128, *d as i128),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => (*n).into(),
            Repr::Big(r) => to_bigint(r.numerator()),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => (*d).into(),
            Repr::Big(r) => to_bigint(&IBig::from(r.denominator().clone())),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(r) => r.is_int(),
        }
    }

    /// Truncates toward zero.
    pub fn to_integer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, d) => (n / d).into(),
            Repr::Big(r) => to_bigint(&r.trunc()),
        }
    }

    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(0, _) => panic!("reciprocal of zero"),
            Repr::Small(n, d) if *n < 0 => Q(Repr::Small(-d, -n)),
            Repr::Small(n, d) => Q(Repr::Small(*d, *n)),
            Repr::Big(r) => from_big(RBig::from_parts_signed(
                IBig::from(r.denominator().clone()),
                r.numerator().clone(),
            )),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(r) => r.numerator() < &IBig::ZERO,
        }
    }

    /// Reduces `num/den` for `den > 0`.
    pub(crate) fn from_parts(num: IBig, den: UBig) -> Self {
        from_big(RBig::from_parts(num, den))
    }

    pub(crate) fn to_parts(&self) -> (IBig, UBig) {
        match &self.0 {
            Repr::Small(n, d) => (IBig::from(*n), UBig::from(*d as u64)),
            Repr::Big(r) => (r.numerator().clone(), r.denominator().clone()),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        from_i128(n.into(), 1)
    }
}

impl Zero for Q {
    fn zero() -> Self {
        Q(Repr::Small(0, 1))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
}

impl One for Q {
    fn one() -> Self {
        Q(Repr::Small(1, 1))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }
}

fn big_ref(q: &Q) -> Cow<'_, RBig> {
    match &q.0 {
        Repr::Small(n, d) => Cow::Owned(raw_big(*n as i128, *d as i128)),
        Repr::Big(r) => Cow::Borrowed(r),
    }
}

fn add_ref(a: &Q, b: &Q) -> Q {
    match (&a.0, &b.0) {
        (Repr::Small(0, _), _) => b.clone(),
        (_, Repr::Small(0, _)) => a.clone(),
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            if d1 == d2 {
                return from_i128(*n1 as i128 + *n2 as i128, *d1 as i128);
            }
            let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
            from_i128(n1 * d2 + n2 * d1, d1 * d2)
        }
        _ => from_big(&*big_ref(a) + &*big_ref(b)),
    }
}

fn sub_ref(a: &Q, b: &Q) -> Q {
    match (&a.0, &b.0) {
        (Repr::Small(0, _), _) => -b,
        (_, Repr::Small(0, _)) => a.clone(),
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            if d1 == d2 {
                return from_i128(*n1 as i128 - *n2 as i128, *d1 as i128);
            }
            let (n1, d1, n2, d2) = (*n1 as i128, *d1 as i128, *n2 as i128, *d2 as i128);
            from_i128(n1 * d2 - n2 * d1, d1 * d2)
        }
        _ => from_big(&*big_ref(a) - &*big_ref(b)),
    }
}

fn mul_ref(a: &Q, b: &Q) -> Q {
    match (&a.0, &b.0) {
        (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Q::zero(),
        (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
            // cross-cancel first so the product is already reduced
            let g1 = n1.gcd(d2);
            let g2 = n2.gcd(d1);
            let n = (n1 / g1) as i128 * (n2 / g2) as i128;
            let d = (d1 / g2) as i128 * (d2 / g1) as i128;
            small_from_i128(n, d)
                .unwrap_or_else(|| Q(Repr::Big(raw_big(n, d))))
        }
        _ => from_big(&*big_ref(a) * &*big_ref(b)),
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => Q(Repr::Small(-n, *d)),
            Repr::Big(r) => from_big(-r),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                $body(self, rhs)
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $body(self, &rhs)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &Q) -> Q {
                $body(&self, rhs)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                $body(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, |a: &Q, b: &Q| mul_ref(a, &b.recip()));

macro_rules! assignop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Q> for Q {
            fn $method(&mut self, rhs: &Q) {
                *self = &*self $op rhs;
            }
        }
        impl $tr<Q> for Q {
            fn $method(&mut self, rhs: Q) {
                *self = &*self $op &rhs;
            }
        }
    };
}

assignop!(AddAssign, add_assign, +);
assignop!(SubAssign, sub_assign, -);
assignop!(MulAssign, mul_assign, *);

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |acc, x| acc + x)
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(n1, d1), Repr::Small(n2, d2)) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn q(n: i64) -> Q {
    Q::from(n)
}

pub fn q_frac(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    from_i128(n.into(), d.into())
}

pub fn q_zero() -> Q {
    Q::zero()
}

pub fn q_one() -> Q {
    Q::one()
}

/// `values[i] = nums[i] / den` with `den` the least common denominator.
pub(crate) fn over_common_denominator(values: &[Q]) -> (Vec<IBig>, UBig) {
    let parts: Vec<(IBig, UBig)> = values.iter().map(Q::to_parts).collect();
    let den = parts.iter().fold(UBig::ONE, |acc, (_, d)| {
        if d.is_one() || *d == acc {
            acc
        } else {
            let g = (&acc).gcd(d);
            acc / g * d
        }
    });
    let nums = parts
        .into_iter()
        .map(|(n, d)| if d == den { n } else { n * IBig::from(&den / d) })
        .collect();
    (nums, den)
}

/// Least common multiple of the denominators.
pub fn common_denominator(values: &[Q]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(&v.denom()))
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry. Returns the integer vector.
pub fn primitive_integer_vector(values: &[Q]) -> Vec<BigInt> {
    let den = common_denominator(values);
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() {
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
    }
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in ints.iter_mut() {
                *v = -&*v;
            }
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn big(n: &str, d: &str) -> Q {
        Q::new(n.parse().unwrap(), d.parse().unwrap())
    }

    #[test]
    fn small_arithmetic_matches_big() {
        let vals = [q_frac(3, 4), q_frac(-7, 6), q(0), q(5), q_frac(i64::MAX, 3), q(i64::MIN + 1)];
        for a in &vals {
            for b in &vals {
                let (ba, bb) = (a.to_big(), b.to_big());
                assert_eq!((a + b).to_big(), &ba + &bb);
                assert_eq!((a - b).to_big(), &ba - &bb);
                assert_eq!((a * b).to_big(), &ba * &bb);
                if !b.is_zero() {
                    assert_eq!((a / b).to_big(), &ba / &bb);
                }
                assert_eq!(a.cmp(b), ba.cmp(&bb));
            }
        }
    }

    #[test]
    fn overflow_promotes_and_shrinks_back() {
        let m = q(i64::MAX);
        let sq = &m * &m;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &m;
        assert_eq!(back, m);
        assert!(matches!(back.0, Repr::Small(..)));
        assert_eq!(-q(i64::MIN + 1) - q(1), big("9223372036854775806", "1"));
        assert!(matches!(q(i64::MIN + 1) - q(1), Q(Repr::Big(_))));
        assert_eq!(q(i64::MIN + 1) - q(1), big("-9223372036854775808", "1"));
    }

    #[test]
    fn display_and_helpers() {
        assert_eq!(q_frac(6, -4).to_string(), "-3/2");
        assert_eq!(q_frac(-7, 2).to_integer(), BigInt::from(-3));
        assert_eq!(q_frac(-2, 3).recip(), q_frac(-3, 2));
        assert_eq!(
            primitive_integer_vector(&[q_frac(-1, 2), q_frac(1, 3)]),
            vec![BigInt::from(3), BigInt::from(-2)]
        );
    }
}
