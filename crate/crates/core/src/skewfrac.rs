//! The fraction field `H(t, σ)` as reduced left fractions `den⁻¹·num`.
//!
//! Canonical form: `gcld(den, num) = 1` and `den` monic (leading coefficient
//! normalized on the left). Zero is `1⁻¹·0`. Equality never compares
//! canonical forms; it cross-multiplies through a left common multiple of
//! the denominators.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ground::{GroundElement, GroundField};
use crate::linalg::{self, Side};
use crate::random::random_fraction;
use crate::rational::Q;
use crate::skewpoly::{gcld, left_common_multiple, SkewPolynomial};
use crate::MAX_CENTER_DEGREE;

#[derive(Clone)]
pub struct SkewFraction {
    den: SkewPolynomial,
    num: SkewPolynomial,
}

impl SkewFraction {
    /// `den⁻¹·num` in reduced form.
    pub fn new(num: SkewPolynomial, den: SkewPolynomial) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::MixedFields);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = den.field().clone();
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        // a constant side leaves no common left divisor of positive degree
        let d = if den.degree() == Some(0) || num.degree() == Some(0) {
            SkewPolynomial::one(&field)
        } else {
            gcld(&den, &num)?
        };
        let (den, num) = if d.degree() == Some(0) {
            (den, num)
        } else {
            (den.divmod_left(&d)?.0, num.divmod_left(&d)?.0)
        };
        let c = den.leading().expect("nonzero").inv().expect("nonzero");
        Ok(Self {
            den: den.left_scale(&c),
            num: num.left_scale(&c),
        })
    }

    pub fn zero(field: &GroundField) -> Self {
        Self {
            den: SkewPolynomial::one(field),
            num: SkewPolynomial::zero(field),
        }
    }

    pub fn one(field: &GroundField) -> Self {
        Self::from_poly(SkewPolynomial::one(field))
    }

    pub fn from_poly(p: SkewPolynomial) -> Self {
        let field = p.field().clone();
        Self {
            den: SkewPolynomial::one(&field),
            num: p,
        }
    }

    pub fn constant(c: GroundElement) -> Self {
        Self::from_poly(SkewPolynomial::constant(c))
    }

    pub fn t(field: &GroundField) -> Self {
        Self::from_poly(SkewPolynomial::t(field))
    }

    pub fn field(&self) -> &GroundField {
        self.den.field()
    }

    pub fn den(&self) -> &SkewPolynomial {
        &self.den
    }

    pub fn num(&self) -> &SkewPolynomial {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The polynomial value, if the denominator is a unit.
    pub fn as_polynomial(&self) -> Option<&SkewPolynomial> {
        (self.den.degree() == Some(0)).then_some(&self.num)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::MixedFields);
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        // u·a = v·c = m, so a⁻¹b + c⁻¹d = m⁻¹(u·b + v·d)
        let (u, v) = left_common_multiple(&self.den, &other.den)?;
        let m = &u * &self.den;
        let n = &(&u * &self.num) + &(&v * &other.num);
        Self::new(n, m)
    }

    pub fn neg(&self) -> Self {
        Self {
            den: self.den.clone(),
            num: self.num.neg(),
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::MixedFields);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field()));
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        // b·c⁻¹ = c′⁻¹·b′ where c′·b = b′·c; then a⁻¹b·c⁻¹d = (c′a)⁻¹(b′d)
        let (c1, b1) = left_common_multiple(&self.num, &other.den)?;
        Self::new(&b1 * &other.num, &c1 * &self.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Left multiplication by a ground element.
    pub fn left_scale(&self, c: &GroundElement) -> Result<Self> {
        Self::constant(c.clone()).checked_mul(self)
    }

    /// `self·q⁻¹p` for central polynomials `p`, `q` (in `k^σ[tⁿ]`), which
    /// equals `(q·den)⁻¹·(num·p)` without an Ore step.
    pub fn mul_central(&self, p: &SkewPolynomial, q: &SkewPolynomial) -> Result<Self> {
        debug_assert!(p.commutes_with(&SkewPolynomial::t(p.field())));
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * p, q * &self.den)
    }

    /// Cross-multiplication test: with `c·den_x = d·den_y`, the fractions
    /// agree iff `c·num_x = d·num_y`.
    pub fn equals(&self, other: &Self) -> bool {
        if self.field() != other.field() {
            return false;
        }
        let (c, d) = left_common_multiple(&self.den, &other.den).expect("nonzero denominators");
        &c * &self.num == &d * &other.num
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        (self * other).equals(&(other * self))
    }

    /// Exact criterion: commutes with `t` and with each `e_j`; `trials`
    /// random fractions are a redundancy check.
    pub fn is_central<R: Rng + ?Sized>(&self, trials: usize, rng: &mut R) -> bool {
        let field = self.field();
        if !self.commutes_with(&Self::t(field)) {
            return false;
        }
        if !field
            .h_basis()
            .into_iter()
            .all(|e| self.commutes_with(&Self::constant(e)))
        {
            return false;
        }
        (0..trials).all(|_| self.commutes_with(&random_fraction(field, rng, 3, 3)))
    }

    /// `σ^k` applied to all coefficients.
    pub fn apply_sigma(&self, k: i64) -> Self {
        Self {
            den: self.den.apply_sigma(k),
            num: self.num.apply_sigma(k),
        }
    }

    pub(crate) fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_in(f, var);
        }
        write!(f, "(")?;
        self.den.fmt_in(f, var)?;
        write!(f, ")^-1*(")?;
        self.num.fmt_in(f, var)?;
        write!(f, ")")
    }
}

/// Structural equality of canonical forms. Use [`SkewFraction::equals`] for
/// the cross-multiplication test.
impl PartialEq for SkewFraction {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for SkewFraction {}

impl fmt::Display for SkewFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "t")
    }
}

impl fmt::Debug for SkewFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> core::ops::Add<&'a SkewFraction> for &'a SkewFraction {
    type Output = SkewFraction;
    fn add(self, rhs: &SkewFraction) -> SkewFraction {
        self.checked_add(rhs).expect("operands from the same field")
    }
}

impl<'a> core::ops::Sub<&'a SkewFraction> for &'a SkewFraction {
    type Output = SkewFraction;
    fn sub(self, rhs: &SkewFraction) -> SkewFraction {
        self.checked_sub(rhs).expect("operands from the same field")
    }
}

impl<'a> core::ops::Mul<&'a SkewFraction> for &'a SkewFraction {
    type Output = SkewFraction;
    fn mul(self, rhs: &SkewFraction) -> SkewFraction {
        self.checked_mul(rhs).expect("operands from the same field")
    }
}

impl linalg::DivisionRing for SkewFraction {
    fn zero_like(&self) -> Self {
        Self::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Self::one(self.field())
    }
    fn is_zero(&self) -> bool {
        SkewFraction::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// `ℚ`-basis of the polynomials of degree `≤ max_deg` commuting with `t` and
/// every `e_j`, by exact linear algebra on the rational coordinates.
pub fn center_basis(field: &GroundField, max_deg: usize) -> Result<Vec<SkewPolynomial>> {
    if max_deg > MAX_CENTER_DEGREE {
        return Err(Error::CapExceeded {
            what: "center degree",
            cap: MAX_CENTER_DEGREE,
        });
    }
    let dim = field.dim();
    let nvars = (max_deg + 1) * dim;
    let unknown = |v: usize| {
        let (k, c) = (v / dim, v % dim);
        SkewPolynomial::monomial(field.basis_element(c), k)
    };
    let t = SkewPolynomial::t(field);
    let probes: Vec<SkewPolynomial> = core::iter::once(t)
        .chain(field.h_basis().into_iter().map(SkewPolynomial::constant))
        .collect();
    // one column per unknown: rational coordinates of [f, probe] for each probe
    let ncoords = (max_deg + 2) * dim;
    let columns: Vec<Vec<Q>> = (0..nvars)
        .map(|v| {
            let f = unknown(v);
            let mut col = Vec::with_capacity(probes.len() * ncoords);
            for p in &probes {
                let comm = &(&f * p) - &(p * &f);
                for k in 0..max_deg + 2 {
                    col.extend(comm.coeff(k).coords().iter().cloned());
                }
            }
            col
        })
        .collect();
    let nrows = columns[0].len();
    let rows: Vec<Vec<Q>> = (0..nrows)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let basis = linalg::kernel(&rows, nvars, Side::Right);
    Ok(basis
        .into_iter()
        .map(|v| {
            let coeffs = (0..=max_deg)
                .map(|k| {
                    let coords: Vec<Q> = v[k * dim..(k + 1) * dim].to_vec();
                    field.from_coords(coords).expect("dimension matches")
                })
                .collect();
            SkewPolynomial::new(field, coeffs)
        })
        .filter(|p| !p.coeffs().iter().all(|c| c.coords().iter().all(Zero::is_zero)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use alloc::format;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qi() -> GroundField {
        GroundField::gaussian_conjugation()
    }

    fn lin(f: &GroundField, c0: GroundElement) -> SkewPolynomial {
        SkewPolynomial::new(f, vec![c0, f.one()])
    }

    #[test]
    fn reduces_commutative_fraction() {
        let f = GroundField::rationals();
        let num = SkewPolynomial::new(&f, vec![f.from_int(-1), f.zero(), f.one()]);
        let den = lin(&f, f.from_int(-1));
        let x = SkewFraction::new(num, den).unwrap();
        assert!(x.den().is_one());
        assert_eq!(x.num(), &lin(&f, f.one()));
    }

    #[test]
    fn reduces_twisted_fraction() {
        let f = qi();
        let tmi = lin(&f, -&f.generator());
        let t = SkewPolynomial::t(&f);
        let x = SkewFraction::new(&tmi * &t, tmi.clone()).unwrap();
        assert!(x.den().is_one());
        assert_eq!(x.num(), &t);
        let unreduced = SkewFraction {
            den: tmi.clone(),
            num: &tmi * &t,
        };
        assert!(x.equals(&unreduced));
        assert!(SkewFraction::new(SkewPolynomial::zero(&f), tmi).unwrap().den().is_one());
    }

    #[test]
    fn field_operations() {
        let f = qi();
        let x = SkewFraction::new(lin(&f, f.generator()), lin(&f, -&f.generator())).unwrap();
        assert!((&x * &x.inv().unwrap()).equals(&SkewFraction::one(&f)));
        assert!(!x.equals(&(&x + &SkewFraction::one(&f))));
        let i = SkewFraction::constant(f.generator());
        let t = SkewFraction::t(&f);
        assert!(!(&i * &t).equals(&(&t * &i)));
        assert!((&t * &i).equals(&(&i * &t).neg()));

        let g = GroundField::rationals();
        let tinv = SkewFraction::t(&g).inv().unwrap();
        let two = (&tinv + &tinv).left_scale(&g.from_rational(q(1))).unwrap();
        assert_eq!(format!("{two}"), "(t)^-1*(2)");
    }

    #[test]
    fn centrality() {
        let f = qi();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t2 = SkewFraction::from_poly(SkewPolynomial::monomial(f.one(), 2));
        assert!(t2.is_central(5, &mut rng));
        assert!(!SkewFraction::t(&f).is_central(5, &mut rng));
        assert!(!SkewFraction::constant(f.generator()).is_central(5, &mut rng));
    }

    #[test]
    fn centers() {
        let f = qi();
        let basis = center_basis(&f, 4).unwrap();
        let expected: Vec<_> = [0, 2, 4]
            .iter()
            .map(|&k| SkewPolynomial::monomial(f.one(), k))
            .collect();
        assert_eq!(basis, expected);
        let g = GroundField::rationals();
        assert_eq!(center_basis(&g, 2).unwrap().len(), 3);
        let h = GroundField::hamilton();
        let hb = center_basis(&h, 2).unwrap();
        let expected: Vec<_> = (0..3).map(|k| SkewPolynomial::monomial(h.one(), k)).collect();
        assert_eq!(hb, expected);
        assert!(matches!(center_basis(&f, 9), Err(Error::CapExceeded { .. })));
    }
}
