//! Twisted Laurent series `H((t, σ))` known modulo `t^N`.
//!
//! A series stores its valuation `v`, the coefficients of `t^v … t^{N−1}` and
//! the precision `N`. The zero series (nothing nonzero known) has no
//! coefficients and `v = N`. Precision is propagated pessimistically:
//! sums know `min(N_f, N_g)`, products `min(N_f + v_g, N_g + v_f)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::display::{coefficient_term, power, write_sum, Term};
use crate::error::{Error, Result};
use crate::ground::{GroundElement, GroundField};
use crate::skewfrac::SkewFraction;
use crate::skewpoly::SkewPolynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedSeries {
    field: GroundField,
    valuation: i64,
    coeffs: Vec<GroundElement>,
    precision: i64,
}

impl TwistedSeries {
    /// `Σ coeffs[i]·t^{valuation+i} + O(t^precision)`; coefficients past the
    /// precision are dropped and leading zeros absorbed into the valuation.
    pub fn new(field: &GroundField, valuation: i64, mut coeffs: Vec<GroundElement>, precision: i64) -> Self {
        let len = (precision - valuation).max(0) as usize;
        coeffs.truncate(len);
        coeffs.resize(len, field.zero());
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(field, precision),
            Some(k) => {
                coeffs.drain(..k);
                Self {
                    field: field.clone(),
                    valuation: valuation + k as i64,
                    coeffs,
                    precision,
                }
            }
        }
    }

    /// `O(t^precision)`
    pub fn zero(field: &GroundField, precision: i64) -> Self {
        Self {
            field: field.clone(),
            valuation: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn one(field: &GroundField, precision: i64) -> Self {
        Self::monomial(field.one(), 0, precision)
    }

    /// `c·t^k + O(t^precision)`
    pub fn monomial(c: GroundElement, k: i64, precision: i64) -> Self {
        let field = c.field().clone();
        Self::new(&field, k, vec![c], precision)
    }

    pub fn from_polynomial(p: &SkewPolynomial, precision: i64) -> Self {
        Self::new(p.field(), 0, p.coeffs().to_vec(), precision)
    }

    pub fn field(&self) -> &GroundField {
        &self.field
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Coefficients of `t^v … t^{N−1}`.
    pub fn coeffs(&self) -> &[GroundElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^e`, or `None` past the precision.
    pub fn coeff(&self, e: i64) -> Option<GroundElement> {
        if e >= self.precision {
            return None;
        }
        if e < self.valuation {
            return Some(self.field.zero());
        }
        Some(self.coeffs[(e - self.valuation) as usize].clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::new(&self.field, self.valuation, self.coeffs.clone(), precision)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.precision.min(other.precision);
        let v = self.valuation.min(other.valuation).min(n);
        let coeffs = (v..n)
            .map(|e| &self.coeff(e).expect("below precision") + &other.coeff(e).expect("below precision"))
            .collect();
        Ok(Self::new(&self.field, v, coeffs, n))
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            precision: self.precision,
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Twisted convolution `(fg)_m = Σ_{i+j=m} f_i·σ^i(g_j)`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = (self.precision + other.valuation).min(other.precision + self.valuation);
        let v = self.valuation + other.valuation;
        if self.is_zero() || other.is_zero() || v >= n {
            return Ok(Self::zero(&self.field, n));
        }
        let len = (n - v) as usize;
        let mut out = vec![self.field.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            let shift = self.valuation + i as i64;
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * &b.apply_sigma(shift));
            }
        }
        Ok(Self::new(&self.field, v, out, n))
    }

    /// Writes `f = u·t^v`; `u⁻¹ = Σ g_m t^m` with `g_0 = c_0⁻¹` and
    /// `g_m = −c_0⁻¹ Σ_{i≥1} c_i σ^i(g_{m−i})`; then
    /// `f⁻¹ = Σ σ^{−v}(g_j) t^{j−v}`, known to precision `N − 2v`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let v = self.valuation;
        let len = self.coeffs.len();
        let c0_inv = self.coeffs[0].inv().expect("nonzero leading coefficient");
        let mut g: Vec<GroundElement> = Vec::with_capacity(len);
        g.push(c0_inv.clone());
        for m in 1..len {
            let mut acc = self.field.zero();
            for i in 1..=m {
                let ci = &self.coeffs[i];
                if ci.is_zero() {
                    continue;
                }
                acc = &acc + &(ci * &g[m - i].apply_sigma(i as i64));
            }
            g.push(-&(&c0_inv * &acc));
        }
        let coeffs = g.iter().map(|x| x.apply_sigma(-v)).collect();
        Ok(Self::new(&self.field, -v, coeffs, self.precision - 2 * v))
    }

    /// Image of `den⁻¹·num` under `t ↦ t`, `a ↦ a`, known modulo
    /// `t^precision`.
    pub fn embed(x: &SkewFraction, precision: i64) -> Self {
        let field = x.field();
        if x.is_zero() {
            return Self::zero(field, precision);
        }
        let low = |p: &SkewPolynomial| p.coeffs().iter().position(|c| !c.is_zero()).unwrap() as i64;
        let vd = low(x.den());
        let vn = low(x.num());
        let pd = (precision + 2 * vd - vn).max(vd + 1);
        let pn = (precision + vd).max(vn + 1);
        let den = Self::from_polynomial(x.den(), pd);
        let num = Self::from_polynomial(x.num(), pn);
        let prod = den.inv().expect("nonzero denominator") * &num;
        debug_assert!(prod.precision >= precision);
        prod.truncate(precision)
    }

    /// `self·t^k`, which shifts exponents without twisting coefficients.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            field: self.field.clone(),
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            precision: self.precision + k,
        }
    }

    /// `σ^k` applied to every coefficient.
    pub fn apply_sigma(&self, k: i64) -> Self {
        Self {
            field: self.field.clone(),
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| c.apply_sigma(k)).collect(),
            precision: self.precision,
        }
    }

    /// Whether the series lies in `k^σ((tⁿ))`: invariant central
    /// coefficients, exponents divisible by `n`.
    pub fn is_invariant(&self) -> bool {
        let n = self.field.order() as i64;
        self.coeffs.iter().enumerate().all(|(i, c)| {
            c.is_zero()
                || ((self.valuation + i as i64) % n == 0 && c.in_invariant_subfield() == Ok(true))
        })
    }

    /// Agreement of all coefficients below the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.precision.min(other.precision);
        self.field == other.field && self.truncate(n) == other.truncate(n)
    }
}

impl<'a> core::ops::Add<&'a TwistedSeries> for &'a TwistedSeries {
    type Output = TwistedSeries;
    fn add(self, rhs: &TwistedSeries) -> TwistedSeries {
        self.checked_add(rhs).expect("operands from the same field")
    }
}

impl<'a> core::ops::Sub<&'a TwistedSeries> for &'a TwistedSeries {
    type Output = TwistedSeries;
    fn sub(self, rhs: &TwistedSeries) -> TwistedSeries {
        self.checked_sub(rhs).expect("operands from the same field")
    }
}

impl<'a> core::ops::Mul<&'a TwistedSeries> for &'a TwistedSeries {
    type Output = TwistedSeries;
    fn mul(self, rhs: &TwistedSeries) -> TwistedSeries {
        self.checked_mul(rhs).expect("operands from the same field")
    }
}

impl core::ops::Mul<&TwistedSeries> for TwistedSeries {
    type Output = TwistedSeries;
    fn mul(self, rhs: &TwistedSeries) -> TwistedSeries {
        &self * rhs
    }
}

/// `t^v*(c0 + c1*t + … + O(t^{N−v}))`, exponents relative to `v`.
/// Printed as `t^v*(b_0 + b_1*t + …)`. Moving `t^v` out to the left twists
/// each coefficient by `σ^-v`, so the text reads back as the same series.
impl fmt::Display for TwistedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(t^{})", self.precision);
        }
        let mut terms: Vec<Term> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| coefficient_term(&c.apply_sigma(-self.valuation), &power("t", k as i64)))
            .collect();
        terms.push(Term {
            negative: false,
            body: format!("O(t^{})", self.precision - self.valuation),
        });
        write!(f, "t^{}*(", self.valuation)?;
        write_sum(f, &terms)?;
        write!(f, ")")
    }
}

impl fmt::Debug for TwistedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A root found by Newton lifting, with the residual valuation reached at
/// each doubling step.
#[derive(Debug, Clone)]
pub struct NewtonRoot {
    pub root: TwistedSeries,
    /// `(target precision, valuation of f(ρ))` per iteration.
    pub trace: Vec<(i64, i64)>,
}

/// Evaluates `Σ coeffs[k]·x^k` at a series by Horner's rule.
pub fn eval_series_poly(coeffs: &[TwistedSeries], x: &TwistedSeries) -> TwistedSeries {
    let mut acc = coeffs.last().expect("nonempty polynomial").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Newton lifting of a simple residual root. The coefficients of `f` must lie
/// in `k^σ(tⁿ)`; they are rescaled by a power of `tⁿ` so that the smallest
/// valuation is zero, then `seed` must be a simple root of `f mod t`.
pub fn newton_root(coeffs: &[SkewFraction], seed: &GroundElement, precision: i64) -> Result<NewtonRoot> {
    let field = seed.field().clone();
    let n = field.order() as i64;
    if coeffs.iter().all(SkewFraction::is_zero) {
        return Err(Error::NoResidualRoot("the polynomial is zero".into()));
    }
    if seed.in_invariant_subfield() != Ok(true) {
        return Err(Error::NoResidualRoot(format!(
            "seed {seed} is not in the invariant subfield"
        )));
    }
    let min_val = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| {
            // valuation of a rational function: low(num) − low(den)
            let low = |p: &SkewPolynomial| p.coeffs().iter().position(|a| !a.is_zero()).unwrap() as i64;
            low(c.num()) - low(c.den())
        })
        .min()
        .expect("some coefficient is nonzero");
    if min_val % n != 0 {
        return Err(Error::NotInvariantSeries);
    }
    let series_at = |p: i64| -> Result<Vec<TwistedSeries>> {
        coeffs
            .iter()
            .map(|c| {
                let s = TwistedSeries::embed(c, p + min_val).shift(-min_val);
                if !s.is_invariant() {
                    return Err(Error::NotInvariantSeries);
                }
                Ok(s.truncate(p))
            })
            .collect()
    };
    let deriv = |cs: &[TwistedSeries]| -> Vec<TwistedSeries> {
        cs.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let kk = field.from_int(k as i64);
                TwistedSeries::monomial(kk, 0, c.precision) * c
            })
            .collect()
    };

    let residual = series_at(1)?;
    let rho0 = TwistedSeries::monomial(seed.clone(), 0, 1);
    if !eval_series_poly(&residual, &rho0).is_zero() {
        return Err(Error::NoResidualRoot(format!("{seed} is not a root modulo t")));
    }
    let d = deriv(&residual);
    if d.is_empty() || eval_series_poly(&d, &rho0).is_zero() {
        return Err(Error::NotSimpleRoot);
    }

    let mut rho = rho0;
    let mut p = 1;
    let mut trace = Vec::new();
    while p < precision {
        p = (2 * p).min(precision);
        let cs = series_at(p)?;
        let x = TwistedSeries::new(&field, rho.valuation, rho.coeffs.clone(), p);
        let fx = eval_series_poly(&cs, &x);
        let dfx = eval_series_poly(&deriv(&cs), &x);
        let step = dfx.inv()? * &fx;
        rho = (&x - &step).truncate(p);
        let check = eval_series_poly(&cs, &rho);
        trace.push((p, check.valuation()));
    }
    if precision <= 1 {
        rho = rho.truncate(precision);
    }
    Ok(NewtonRoot { root: rho, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use alloc::format;

    fn qi() -> GroundField {
        GroundField::gaussian_conjugation()
    }

    #[test]
    fn twisted_product() {
        let f = qi();
        let i = f.generator();
        let t = TwistedSeries::monomial(f.one(), 1, 10);
        let s = TwistedSeries::new(&f, 0, vec![i.clone(), i.clone()], 10);
        let prod = &t * &s;
        assert_eq!(prod.coeff(1).unwrap(), -&i);
        assert_eq!(prod.coeff(2).unwrap(), -&i);
        assert_eq!(prod.precision(), 10);
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn inverses() {
        let g = GroundField::rationals();
        let one_minus_t = TwistedSeries::new(&g, 0, vec![g.one(), g.from_int(-1)], 8);
        let inv = one_minus_t.inv().unwrap();
        for e in 0..8 {
            assert_eq!(inv.coeff(e).unwrap(), g.one());
        }
        let f = qi();
        let it = TwistedSeries::monomial(f.generator(), 1, 5);
        let inv = it.inv().unwrap();
        assert_eq!(inv.valuation(), -1);
        assert_eq!(inv.coeff(-1).unwrap(), f.generator());
        assert!((&it * &inv).agrees_with(&TwistedSeries::one(&f, 3)));
        assert!(matches!(TwistedSeries::zero(&f, 4).inv(), Err(Error::ZeroSeries)));
    }

    #[test]
    fn embedding_of_simple_fractions() {
        let g = GroundField::rationals();
        let tinv = SkewFraction::t(&g).inv().unwrap();
        let s = TwistedSeries::embed(&tinv, 6);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.coeffs().len(), 7);
        assert_eq!(format!("{}", TwistedSeries::embed(&tinv, 2)), "t^-1*(1 + O(t^3))");
    }

    #[test]
    fn square_root_of_one_plus_t() {
        let g = GroundField::rationals();
        let c = |k: i64| SkewFraction::constant(g.from_int(k));
        let one_plus_t = &c(1) + &SkewFraction::t(&g);
        let f = [one_plus_t.neg(), c(0), c(1)];
        let r = newton_root(&f, &g.one(), 16).unwrap();
        let expect = [q(1), q_frac(1, 2), q_frac(-1, 8), q_frac(1, 16), q_frac(-5, 128)];
        for (e, v) in expect.iter().enumerate() {
            assert_eq!(r.root.coeff(e as i64).unwrap(), g.from_rational(v.clone()));
        }
        for (p, val) in &r.trace {
            assert!(val >= p);
        }
        let neg = newton_root(&f, &g.from_int(-1), 16).unwrap();
        assert_eq!(neg.root, r.root.neg());
        assert!(matches!(newton_root(&f, &g.from_int(2), 8), Err(Error::NoResidualRoot(_))));
        let sq = [c(0), c(0), c(1)];
        assert!(matches!(newton_root(&sq, &g.zero(), 8), Err(Error::NotSimpleRoot)));
    }
}
