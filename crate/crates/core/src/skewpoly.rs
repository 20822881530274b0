//! The twisted polynomial ring `H[t, σ]`, with `t·a = σ(a)·t`.
//!
//! Coefficients are stored on the left: `Σ a_i tⁱ`. Both Euclidean
//! divisions are provided. Right division `f = q·g + r` is the primitive for
//! left common multiples; left division `f = g·q + r` drives the greatest
//! common left divisor.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::display::{coefficient_term, power, write_sum};
use crate::error::{Error, Result};
use crate::ground::{GroundElement, GroundField};
use crate::linalg::{self, Side};

#[derive(Clone, PartialEq, Eq)]
pub struct SkewPolynomial {
    field: GroundField,
    coeffs: Vec<GroundElement>,
}

impl SkewPolynomial {
    /// Builds `Σ coeffs[i]·tⁱ`, stripping trailing zeros.
    pub fn new(field: &GroundField, mut coeffs: Vec<GroundElement>) -> Self {
        while coeffs.last().is_some_and(GroundElement::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &GroundField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &GroundField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: GroundElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// `c·t^k`
    pub fn monomial(c: GroundElement, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(&field, coeffs)
    }

    pub fn t(field: &GroundField) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn field(&self) -> &GroundField {
        &self.field
    }

    pub fn coeffs(&self) -> &[GroundElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GroundElement> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> GroundElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(
            &self.field,
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        ))
    }

    /// `(fg)_m = Σ_{i+j=m} f_i·σ^i(g_j)`
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * &b.apply_sigma(i as i64));
            }
        }
        Ok(Self::new(&self.field, out))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    /// `c·self`
    pub fn left_scale(&self, c: &GroundElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| c * a).collect())
    }

    /// `self·c`, i.e. `Σ a_i·σ^i(c)·tⁱ`.
    pub fn right_scale(&self, c: &GroundElement) -> Self {
        Self::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * &c.apply_sigma(i as i64))
                .collect(),
        )
    }

    /// `self·t^k`
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(&self.field, coeffs)
    }

    /// Applies `σ^k` to every coefficient (a ring automorphism fixing `t`).
    pub fn apply_sigma(&self, k: i64) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| c.apply_sigma(k)).collect())
    }

    /// `f = q·g + r` with `deg r < deg g`.
    pub fn divmod_right(&self, g: &Self) -> Result<(Self, Self)> {
        self.check(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lg = g.leading().expect("nonzero divisor");
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dg)];
        while r.len() > dg {
            let top = r.len() - 1;
            if !r[top].is_zero() {
                let k = top - dg;
                // c·t^k·g has leading coefficient c·σ^k(lc g)
                let c = &r[top] * &lg.apply_sigma(k as i64).inv().expect("nonzero leading coefficient");
                for (j, gj) in g.coeffs.iter().enumerate() {
                    if gj.is_zero() {
                        continue;
                    }
                    r[k + j] = &r[k + j] - &(&c * &gj.apply_sigma(k as i64));
                }
                q[k] = c;
            }
            r.pop();
        }
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    /// `f = g·q + r` with `deg r < deg g`.
    pub fn divmod_left(&self, g: &Self) -> Result<(Self, Self)> {
        self.check(g)?;
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let lg_inv = g.leading().expect("nonzero divisor").inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dg)];
        while r.len() > dg {
            let top = r.len() - 1;
            if !r[top].is_zero() {
                let k = top - dg;
                // g·c·t^k has leading coefficient lc(g)·σ^dg(c)
                let c = (&lg_inv * &r[top]).apply_sigma(-(dg as i64));
                for (j, gj) in g.coeffs.iter().enumerate() {
                    if gj.is_zero() {
                        continue;
                    }
                    r[k + j] = &r[k + j] - &(gj * &c.apply_sigma(j as i64));
                }
                q[k] = c;
            }
            r.pop();
        }
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    /// `lc⁻¹·self`; zero stays zero.
    pub fn monic_left(&self) -> Self {
        match self.leading() {
            Some(l) => self.left_scale(&l.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// `self·u` with `u = σ^{-deg}(lc⁻¹)`, so the result is monic and
    /// generates the same right ideal.
    pub fn monic_right(&self) -> Self {
        match (self.leading(), self.degree()) {
            (Some(l), Some(d)) => {
                self.right_scale(&l.inv().expect("nonzero").apply_sigma(-(d as i64)))
            }
            _ => self.clone(),
        }
    }

    /// Whether `self·other == other·self`.
    pub fn commutes_with(&self, other: &Self) -> bool {
        self * other == other * self
    }
}

/// Greatest common left divisor: monic `d` with `f = d·f′`, `g = d·g′`,
/// divisible on the left by every common left divisor. Euclid on left
/// division, since `f = g·q + r` preserves common left divisors.
///
/// Coprime inputs, the common case, are recognized by
/// [`coprime_by_modular_rank`] without running Euclid.
pub fn gcld(f: &SkewPolynomial, g: &SkewPolynomial) -> Result<SkewPolynomial> {
    f.check(g)?;
    let unit = matches!(f.degree(), Some(0)) || matches!(g.degree(), Some(0));
    if unit || coprime_by_modular_rank(f, g) {
        return Ok(SkewPolynomial::one(f.field()));
    }
    gcld_by_euclid(f, g)
}

/// [`gcld`] without the modular shortcut.
pub fn gcld_by_euclid(f: &SkewPolynomial, g: &SkewPolynomial) -> Result<SkewPolynomial> {
    f.check(g)?;
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = a.divmod_left(&b)?;
        a = b;
        // a right unit keeps the left divisors and the coefficients small
        b = r.monic_right();
    }
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a.monic_right())
}

/// Sufficient test for `gcld(f, g) = 1` with `deg f = m ≥ 1`, `deg g = n ≥ 1`.
/// The `ℚ`-linear map `(u, v) ↦ f·u + g·v` on `deg u < n`, `deg v < m` is
/// square, and it is injective exactly when `f` and `g` have no common left
/// divisor of positive degree (a kernel element is a common right multiple
/// of degree below `m + n`). Full rank of its matrix mod `p` proves
/// injectivity; `false` means undecided.
pub fn coprime_by_modular_rank(f: &SkewPolynomial, g: &SkewPolynomial) -> bool {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return false;
    };
    if m == 0 || n == 0 {
        return false;
    }
    let field = f.field();
    let dim = field.dim();
    let size = (m + n) * dim;
    let mut rows = Vec::with_capacity(size);
    for (h, shifts) in [(f, n), (g, m)] {
        let Some(coeffs) = h.coeffs.iter().map(|c| field.reduce_mod_p(c)).collect::<Option<Vec<_>>>() else {
            return false;
        };
        for j in 0..shifts {
            for b in 0..dim {
                // coordinates of h·e_b·t^j = Σ h_k σ^k(e_b) t^(k+j)
                let mut row = vec![0u64; size];
                for (k, hk) in coeffs.iter().enumerate() {
                    let Some(c) = field.mul_sigma_basis_mod_p(hk, k, b) else {
                        return false;
                    };
                    row[(k + j) * dim..(k + j + 1) * dim].copy_from_slice(&c);
                }
                rows.push(row);
            }
        }
    }
    crate::modp::full_rank(rows)
}

/// Nonzero `(u, v)` with `u·a = v·c`, from the extended Euclidean algorithm
/// on right division. Both inputs must be nonzero.
pub fn left_common_multiple(
    a: &SkewPolynomial,
    c: &SkewPolynomial,
) -> Result<(SkewPolynomial, SkewPolynomial)> {
    a.check(c)?;
    if a.is_zero() || c.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = a.field();
    // r_i = s_i·a + t_i·c
    let (mut r0, mut r1) = (a.clone(), c.clone());
    let (mut s0, mut s1) = (SkewPolynomial::one(field), SkewPolynomial::zero(field));
    let (mut t0, mut t1) = (SkewPolynomial::zero(field), SkewPolynomial::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divmod_right(&r1)?;
        let (mut s2, mut t2) = (&s0 - &(&q * &s1), &t0 - &(&q * &t1));
        let mut r = r;
        // scaling a whole row on the left keeps r = s·a + t·c
        if let Some(l) = r.leading() {
            let u = l.inv().expect("nonzero");
            r = r.left_scale(&u);
            s2 = s2.left_scale(&u);
            t2 = t2.left_scale(&u);
        }
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    Ok((s1, t1.neg()))
}

/// Independent route to [`left_common_multiple`]: solves `u·a − v·c = 0`
/// for the coefficients of `u`, `v` (unknowns on the left) with
/// `deg u ≤ deg c`, `deg v ≤ deg a`.
pub fn left_common_multiple_by_linear_algebra(
    a: &SkewPolynomial,
    c: &SkewPolynomial,
) -> Result<(SkewPolynomial, SkewPolynomial)> {
    a.check(c)?;
    let (da, dc) = match (a.degree(), c.degree()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::DivisionByZero),
    };
    let field = a.field();
    let ncols = da + dc + 1;
    // row per unknown, column per power of t: u_i·σ^i(a_j) at i + j
    let mut rows = Vec::new();
    for i in 0..=dc {
        let mut row = vec![field.zero(); ncols];
        for (j, aj) in a.coeffs.iter().enumerate() {
            row[i + j] = aj.apply_sigma(i as i64);
        }
        rows.push(row);
    }
    for i in 0..=da {
        let mut row = vec![field.zero(); ncols];
        for (j, cj) in c.coeffs.iter().enumerate() {
            row[i + j] = -&cj.apply_sigma(i as i64);
        }
        rows.push(row);
    }
    let z = linalg::kernel(&rows, rows.len(), Side::Left)
        .into_iter()
        .next()
        .expect("dimension count guarantees a nontrivial solution");
    let u = SkewPolynomial::new(field, z[..=dc].to_vec());
    let v = SkewPolynomial::new(field, z[dc + 1..].to_vec());
    Ok((u, v))
}

/// Right Ore witness: nonzero monic `b1` and `a1` with `a·b1 = b·a1`, so that
/// `b⁻¹a = a1·b1⁻¹`. The coefficients are found by linear algebra over `H`
/// with `deg b1 ≤ deg b`, `deg a1 ≤ deg a`, taking the smallest `deg b1`.
pub fn ore_witness(
    a: &SkewPolynomial,
    b: &SkewPolynomial,
) -> Result<(SkewPolynomial, SkewPolynomial)> {
    a.check(b)?;
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let field = a.field();
    let Some(da) = a.degree() else {
        return Ok((SkewPolynomial::zero(field), SkewPolynomial::one(field)));
    };
    // Unknowns in right form: b1 = Σ t^j β_j, a1 = Σ t^j α_j. Then
    // a·b1 = Σ_m t^m Σ_{i+j=m} σ^{-m}(a_i) β_j, likewise for b·a1.
    for e in db.saturating_sub(da)..=db {
        let ea = da + e - db;
        let nrows = da + e + 1;
        let ncols = (e + 1) + (ea + 1);
        let mut m = vec![vec![field.zero(); ncols]; nrows];
        for (i, ai) in a.coeffs.iter().enumerate() {
            for j in 0..=e {
                let row = i + j;
                m[row][j] = ai.apply_sigma(-(row as i64));
            }
        }
        for (i, bi) in b.coeffs.iter().enumerate() {
            for j in 0..=ea {
                let row = i + j;
                m[row][e + 1 + j] = -&bi.apply_sigma(-(row as i64));
            }
        }
        let Some(z) = linalg::kernel(&m, ncols, Side::Right).into_iter().next() else {
            continue;
        };
        let beta = &z[..=e];
        let alpha = &z[e + 1..];
        let top = beta.iter().rposition(|x| !x.is_zero()).expect("b1 is nonzero");
        let scale = beta[top].inv().expect("nonzero");
        let to_left = |v: &[GroundElement]| {
            SkewPolynomial::new(
                field,
                v.iter()
                    .enumerate()
                    .map(|(j, x)| (x * &scale).apply_sigma(j as i64))
                    .collect(),
            )
        };
        return Ok((to_left(alpha), to_left(beta)));
    }
    unreachable!("the system at deg b1 = deg b always has a nonzero solution")
}

impl<'a> core::ops::Add<&'a SkewPolynomial> for &'a SkewPolynomial {
    type Output = SkewPolynomial;
    fn add(self, rhs: &SkewPolynomial) -> SkewPolynomial {
        self.checked_add(rhs).expect("operands from the same field")
    }
}

impl<'a> core::ops::Sub<&'a SkewPolynomial> for &'a SkewPolynomial {
    type Output = SkewPolynomial;
    fn sub(self, rhs: &SkewPolynomial) -> SkewPolynomial {
        self.checked_sub(rhs).expect("operands from the same field")
    }
}

impl<'a> core::ops::Mul<&'a SkewPolynomial> for &'a SkewPolynomial {
    type Output = SkewPolynomial;
    fn mul(self, rhs: &SkewPolynomial) -> SkewPolynomial {
        self.checked_mul(rhs).expect("operands from the same field")
    }
}

impl SkewPolynomial {
    pub(crate) fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| coefficient_term(c, &power(var, k as i64)))
            .collect();
        write_sum(f, &terms)
    }
}

impl fmt::Display for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "t")
    }
}

impl fmt::Debug for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use alloc::format;

    fn qi() -> GroundField {
        GroundField::gaussian_conjugation()
    }

    fn poly(f: &GroundField, cs: &[(i64, i64)]) -> SkewPolynomial {
        SkewPolynomial::new(
            f,
            cs.iter()
                .map(|&(a, b)| f.from_coords(vec![q(a), q(b)]).unwrap())
                .collect(),
        )
    }

    #[test]
    fn twisted_product_rule() {
        let f = qi();
        let t = SkewPolynomial::t(&f);
        let i = SkewPolynomial::constant(f.generator());
        assert_eq!(&t * &i, poly(&f, &[(0, 0), (0, -1)]));
        assert_eq!(format!("{}", &t * &i), "-[i]*t");
        let tmi = poly(&f, &[(0, -1), (1, 0)]);
        assert_eq!(&tmi * &tmi, poly(&f, &[(-1, 0), (0, 0), (1, 0)]));
    }

    #[test]
    fn worked_division() {
        let f = qi();
        let num = poly(&f, &[(0, 1), (0, 0), (1, 0)]);
        let g = poly(&f, &[(0, -1), (1, 0)]);
        let (q_, r) = num.divmod_right(&g).unwrap();
        assert_eq!(q_, g);
        assert_eq!(r, poly(&f, &[(1, 1)]));
        let (ql, rl) = num.divmod_left(&g).unwrap();
        assert_eq!(&(&g * &ql) + &rl, num);
        assert!(rl.degree().unwrap_or(0) < 1);
        assert!(matches!(
            num.divmod_right(&SkewPolynomial::zero(&f)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn gcld_of_common_left_factor() {
        let f = qi();
        let tmi = poly(&f, &[(0, -1), (1, 0)]);
        let a = &tmi * &poly(&f, &[(1, 0), (1, 0)]);
        let b = &tmi * &SkewPolynomial::t(&f);
        assert_eq!(gcld(&a, &b).unwrap(), tmi);
        let c = SkewPolynomial::constant(f.from_int(3));
        assert!(gcld(&c, &SkewPolynomial::constant(f.generator())).unwrap().is_one());
    }

    #[test]
    fn ore_witness_example() {
        let f = qi();
        let t = SkewPolynomial::t(&f);
        let i = SkewPolynomial::constant(f.generator());
        let (a1, b1) = ore_witness(&t, &i).unwrap();
        assert_eq!(&t * &b1, &i * &a1);
        assert_eq!(b1, SkewPolynomial::one(&f));
        // i⁻¹·t = −i·t
        assert_eq!(a1, (&i * &t).neg());
    }

    #[test]
    fn left_common_multiple_routes_agree() {
        let f = qi();
        let a = poly(&f, &[(1, 2), (0, 1), (3, 0)]);
        let c = poly(&f, &[(0, -1), (2, 1)]);
        let (u, v) = left_common_multiple(&a, &c).unwrap();
        assert_eq!(&u * &a, &v * &c);
        let (u2, v2) = left_common_multiple_by_linear_algebra(&a, &c).unwrap();
        assert_eq!(&u2 * &a, &v2 * &c);
        assert_eq!((&u * &a).monic_left(), (&u2 * &a).monic_left());
    }
}
