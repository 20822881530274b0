//! The commutative field `F(s)`, where `F = k^σ` and `s = tⁿ`, and finite
//! extensions `L = F(s)[x]/(f)`.
//!
//! Elements of `F` are ground elements fixed by `σ`; they are central in `H`,
//! so all arithmetic here is commutative. `F(s)` embeds centrally in
//! `H(t, σ)` through `s ↦ tⁿ`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ground::{GroundElement, GroundField};
use crate::irreducible::is_irreducible_over_q;
use crate::linalg::{self, Side};
use crate::rational::Q;
use crate::skewfrac::SkewFraction;
use crate::skewpoly::SkewPolynomial;
use crate::upoly::QPoly;
use crate::MAX_IRREDUCIBLE_DEGREE;

/// A polynomial in `s` with coefficients in `F`.
#[derive(Clone, PartialEq, Eq)]
pub struct CentralPoly {
    field: GroundField,
    coeffs: Vec<GroundElement>,
}

impl CentralPoly {
    pub fn new(field: &GroundField, mut coeffs: Vec<GroundElement>) -> Self {
        while coeffs.last().is_some_and(GroundElement::is_zero) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_rationals(field: &GroundField, coeffs: &[Q]) -> Self {
        Self::new(field, coeffs.iter().map(|c| field.from_rational(c.clone())).collect())
    }

    pub fn from_ints(field: &GroundField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &GroundField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &GroundField) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn constant(c: GroundElement) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
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

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> GroundElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(&self.field, out)
    }

    pub fn scale(&self, c: &GroundElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; `None` for a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[top - dd + j] = &rem[top - dd + j] - &(&c * d);
                }
                quot[top - dd] = c;
            }
            rem.pop();
        }
        Some((Self::new(&self.field, quot), Self::new(&self.field, rem)))
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(l) => self.scale(&l.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, s: &GroundElement) -> GroundElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * s) + c)
    }

    /// The polynomial `Σ c_k t^{nk}` in `H[t, σ]`.
    pub fn to_skew(&self) -> SkewPolynomial {
        let n = self.field.order();
        let mut coeffs = vec![self.field.zero(); self.coeffs.len().saturating_sub(1) * n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * n] = c.clone();
        }
        SkewPolynomial::new(&self.field, coeffs)
    }

    /// Inverse of [`to_skew`](Self::to_skew); fails unless every coefficient
    /// is invariant and sits at an exponent divisible by `n`.
    pub fn from_skew(p: &SkewPolynomial) -> Result<Self> {
        let field = p.field();
        let n = field.order();
        let mut coeffs = Vec::new();
        for (e, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e % n != 0 || !c.in_invariant_subfield()? {
                return Err(Error::NotCentral);
            }
            let k = e / n;
            coeffs.resize(k + 1, field.zero());
            coeffs[k] = c.clone();
        }
        Ok(Self::new(field, coeffs))
    }
}

impl fmt::Debug for CentralPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_skew())
    }
}

/// A reduced element `num/den` of `F(s)` with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct CentralFn {
    num: CentralPoly,
    den: CentralPoly,
}

impl CentralFn {
    pub fn new(num: CentralPoly, den: CentralPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = den.field().clone();
        if num.is_zero() {
            return Ok(Self::zero(&field));
        }
        let g = num.gcd(&den);
        let num = num.divrem(&g).expect("nonzero").0;
        let den = den.divrem(&g).expect("nonzero").0;
        let lead_inv = den.coeffs.last().expect("nonzero").inv().expect("nonzero");
        Ok(Self {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    pub fn from_poly(p: CentralPoly) -> Self {
        let field = p.field().clone();
        Self {
            num: p,
            den: CentralPoly::one(&field),
        }
    }

    pub fn constant(c: GroundElement) -> Self {
        Self::from_poly(CentralPoly::constant(c))
    }

    pub fn from_int(field: &GroundField, c: i64) -> Self {
        Self::constant(field.from_int(c))
    }

    pub fn zero(field: &GroundField) -> Self {
        Self::from_poly(CentralPoly::zero(field))
    }

    pub fn one(field: &GroundField) -> Self {
        Self::from_poly(CentralPoly::one(field))
    }

    /// The variable `s = tⁿ`.
    pub fn s(field: &GroundField) -> Self {
        Self::from_poly(CentralPoly::new(field, vec![field.zero(), field.one()]))
    }

    pub fn field(&self) -> &GroundField {
        self.den.field()
    }

    pub fn num(&self) -> &CentralPoly {
        &self.num
    }

    pub fn den(&self) -> &CentralPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.degree() == Some(0) && self.num == self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.scale(&-&self.field().one()),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Value at `s = s0`, if the denominator does not vanish there.
    pub fn eval(&self, s0: &GroundElement) -> Option<GroundElement> {
        let d = self.den.eval(s0);
        Some(&self.num.eval(s0) * &d.inv()?)
    }

    /// The central element `den(tⁿ)⁻¹·num(tⁿ)` of `H(t, σ)`.
    pub fn to_fraction(&self) -> SkewFraction {
        SkewFraction::new(self.num.to_skew(), self.den.to_skew()).expect("nonzero denominator")
    }

    /// Recognizes elements of `F(s)` inside `H(t, σ)`.
    pub fn from_fraction(x: &SkewFraction) -> Result<Self> {
        Self::new(CentralPoly::from_skew(x.num())?, CentralPoly::from_skew(x.den())?)
    }
}

impl CentralFn {
    /// Text form in the central variable itself, e.g. `(s)^-1*(1 - 3*s)`.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        fmt::from_fn(move |f| {
            let field = self.field();
            let num = SkewPolynomial::new(field, self.num.coeffs().to_vec());
            if self.den.degree() == Some(0) {
                return num.fmt_in(f, var);
            }
            let den = SkewPolynomial::new(field, self.den.coeffs().to_vec());
            write!(f, "(")?;
            den.fmt_in(f, var)?;
            write!(f, ")^-1*(")?;
            num.fmt_in(f, var)?;
            write!(f, ")")
        })
    }
}

impl fmt::Display for CentralFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fraction())
    }
}

impl fmt::Debug for CentralFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl linalg::DivisionRing for CentralFn {
    fn zero_like(&self) -> Self {
        Self::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Self::one(self.field())
    }
    fn is_zero(&self) -> bool {
        CentralFn::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// An element of `L`, as coordinates in `1, x, …, x^{d−1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct LElem {
    pub coords: Vec<CentralFn>,
}

impl fmt::Debug for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

/// `L = F(s)[x]/(f)` for a monic `f` of degree `d ≥ 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct LField {
    field: GroundField,
    /// Coefficients `f_0 … f_d` with `f_d = 1`.
    f: Vec<CentralFn>,
}

impl fmt::Debug for LField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LField").field("f", &self.f).finish()
    }
}

impl LField {
    pub fn new(field: &GroundField, f: Vec<CentralFn>) -> Result<Self> {
        if f.len() < 2 {
            return Err(Error::ScenarioInvalid {
                check: "f-monic",
                detail: "f must have degree at least 1".into(),
            });
        }
        if !f.last().expect("nonempty").is_one() {
            return Err(Error::ScenarioInvalid {
                check: "f-monic",
                detail: "f must be monic in x".into(),
            });
        }
        Ok(Self {
            field: field.clone(),
            f,
        })
    }

    pub fn field(&self) -> &GroundField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn modulus(&self) -> &[CentralFn] {
        &self.f
    }

    pub fn zero(&self) -> LElem {
        LElem {
            coords: vec![CentralFn::zero(&self.field); self.degree()],
        }
    }

    pub fn one(&self) -> LElem {
        self.constant(CentralFn::one(&self.field))
    }

    pub fn constant(&self, c: CentralFn) -> LElem {
        let mut e = self.zero();
        e.coords[0] = c;
        e
    }

    /// The class of `x`.
    pub fn x(&self) -> LElem {
        self.reduce(vec![CentralFn::zero(&self.field), CentralFn::one(&self.field)])
    }

    pub fn from_coords(&self, coords: Vec<CentralFn>) -> Result<LElem> {
        if coords.len() != self.degree() {
            return Err(Error::ScenarioInvalid {
                check: "coordinates",
                detail: format!("expected {} coordinates, got {}", self.degree(), coords.len()),
            });
        }
        Ok(LElem { coords })
    }

    /// Reduces an arbitrary-length coefficient vector modulo `f`.
    pub fn reduce(&self, mut c: Vec<CentralFn>) -> LElem {
        let d = self.degree();
        while c.len() > d {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for k in 0..d {
                c[base + k] = c[base + k].sub(&top.mul(&self.f[k]));
            }
        }
        c.resize(d, CentralFn::zero(&self.field));
        LElem { coords: c }
    }

    pub fn add(&self, a: &LElem, b: &LElem) -> LElem {
        LElem {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn sub(&self, a: &LElem, b: &LElem) -> LElem {
        LElem {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x.sub(y)).collect(),
        }
    }

    pub fn mul(&self, a: &LElem, b: &LElem) -> LElem {
        let d = self.degree();
        let mut c = vec![CentralFn::zero(&self.field); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] = c[i + j].add(&x.mul(y));
                }
            }
        }
        self.reduce(c)
    }

    pub fn scale(&self, c: &CentralFn, a: &LElem) -> LElem {
        LElem {
            coords: a.coords.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn pow(&self, a: &LElem, e: usize) -> LElem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_zero(&self, a: &LElem) -> bool {
        a.coords.iter().all(CentralFn::is_zero)
    }

    /// Columns `a·x^j`, as a row-major matrix.
    pub fn multiplication_matrix(&self, a: &LElem) -> Vec<Vec<CentralFn>> {
        let d = self.degree();
        let x = self.x();
        let mut col = a.clone();
        let mut cols = Vec::with_capacity(d);
        for _ in 0..d {
            cols.push(col.clone());
            col = self.mul(&col, &x);
        }
        (0..d)
            .map(|r| cols.iter().map(|c| c.coords[r].clone()).collect())
            .collect()
    }

    /// Inverse by solving `a·b = 1`; `None` if `a` is a zero divisor.
    pub fn inv(&self, a: &LElem) -> Option<LElem> {
        let m = self.multiplication_matrix(a);
        let b = linalg::solve(&m, &self.one().coords, Side::Right)?;
        let b = LElem { coords: b };
        (self.mul(a, &b) == self.one()).then_some(b)
    }

    /// `h(g)`, where `h` is read as a polynomial in `x`.
    pub fn compose(&self, h: &LElem, g: &LElem) -> LElem {
        let mut acc = self.zero();
        for c in h.coords.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.constant(c.clone()));
        }
        acc
    }

    /// `f(g)` computed in `L`; zero iff `g` is a root of `f`.
    pub fn eval_modulus(&self, g: &LElem) -> LElem {
        let mut acc = self.zero();
        for c in self.f.iter().rev() {
            acc = self.add(&self.mul(&acc, g), &self.constant(c.clone()));
        }
        acc
    }

    /// Matrix of the `F(s)`-linear map `x ↦ g`: column `m` holds `g^m`.
    pub fn automorphism_matrix(&self, g: &LElem) -> Vec<Vec<CentralFn>> {
        let d = self.degree();
        let mut cols = Vec::with_capacity(d);
        let mut p = self.one();
        for _ in 0..d {
            cols.push(p.clone());
            p = self.mul(&p, g);
        }
        (0..d)
            .map(|r| cols.iter().map(|c| c.coords[r].clone()).collect())
            .collect()
    }

    /// Certifies that `f` is irreducible over `F(s)` by specializing `s` to
    /// small integers: a monic factorization over `F(s)` specializes to one
    /// over `F` wherever the coefficients are defined. Over `F ≠ ℚ` the
    /// specialization is tested through its norm to `ℚ[x]`.
    pub fn certify_irreducible(&self) -> Result<()> {
        let d = self.degree();
        if d == 1 {
            return Ok(());
        }
        let e = self.field.invariant_basis().len();
        if d * e > MAX_IRREDUCIBLE_DEGREE {
            return Err(Error::CapExceeded {
                what: "irreducibility certificate degree",
                cap: MAX_IRREDUCIBLE_DEGREE,
            });
        }
        for s0 in [1i64, -1, 2, -2, 3, -3, 5, 7, 0, 11] {
            let s0 = self.field.from_int(s0);
            let Some(spec) = self.f.iter().map(|c| c.eval(&s0)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            if e == 1 {
                let q: Vec<Q> = spec
                    .iter()
                    .map(|c| c.as_rational().expect("invariant field is Q").clone())
                    .collect();
                if is_irreducible_over_q(&QPoly::new(q))? {
                    return Ok(());
                }
            } else if norm_certifies(&self.field, &spec)? {
                return Ok(());
            }
        }
        Err(Error::ScenarioInvalid {
            check: "f-irreducible",
            detail: String::from("no specialization certifies that f is irreducible"),
        })
    }
}

/// Coordinates of `c ∈ F` in the invariant basis.
fn invariant_coords(field: &GroundField, c: &GroundElement) -> Vec<Q> {
    let basis = field.invariant_basis();
    let dim = field.dim();
    let rows: Vec<Vec<Q>> = (0..dim)
        .map(|r| basis.iter().map(|b| b.coords()[r].clone()).collect())
        .collect();
    linalg::solve(&rows, c.coords(), Side::Right).expect("element of the invariant field")
}

/// Norm `N(x) = det(multiplication by g(x) on F/ℚ)` by interpolation; if it
/// is irreducible over `ℚ`, so is `g` over `F`. Shifts `x ↦ x + k·γ` with a
/// primitive-looking `γ` are tried when the norm is not squarefree.
fn norm_certifies(field: &GroundField, g: &[GroundElement]) -> Result<bool> {
    let basis = field.invariant_basis();
    let e = basis.len();
    let d = g.len() - 1;
    let gamma = basis.last().expect("nonempty basis").clone();
    for shift in 0..4i64 {
        let shift_elem = gamma.scale(&Q::from_integer(shift.into()));
        let npts = d * e + 1;
        let mut xs = Vec::with_capacity(npts);
        let mut ys = Vec::with_capacity(npts);
        for p in 0..npts as i64 {
            let x = &field.from_int(p) + &shift_elem;
            let val = g.iter().rev().fold(field.zero(), |acc, c| &(&acc * &x) + c);
            let cols: Vec<Vec<Q>> = basis.iter().map(|b| invariant_coords(field, &(&val * b))).collect();
            let m: Vec<Vec<Q>> = (0..e)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            xs.push(Q::from_integer(p.into()));
            ys.push(linalg::determinant(&m).expect("square matrix"));
        }
        let norm = interpolate(&xs, &ys);
        if norm.gcd(&norm.derivative()).degree() != Some(0) {
            continue;
        }
        return is_irreducible_over_q(&norm);
    }
    Ok(false)
}

fn interpolate(xs: &[Q], ys: &[Q]) -> QPoly {
    let mut out = QPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = QPoly::one();
        let mut denom = Q::from_integer(1.into());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly::new(vec![-xj.clone(), Q::from_integer(1.into())]));
                denom *= xi - xj;
            }
        }
        out = out.add(&basis.scale(&(yi / denom)));
    }
    out
}
