//! Ground skew fields `H` with a distinguished automorphism `σ` of finite
//! order.
//!
//! Supported fields are number fields `K = ℚ[θ]/(m)` given by a monic integer
//! polynomial (`ℚ` is the case `m = x`), and quaternion algebras `(α, β)_K`
//! with basis `1, i, j, ij`, `i² = α`, `j² = β`, `ji = −ij`. The automorphism
//! is fixed by the image of `θ`; on quaternions it acts coordinate-wise,
//! which requires `σ(α) = α` and `σ(β) = β`.
//!
//! Elements are rational coordinate vectors in the ambient `ℚ`-basis
//! `θ⁰ … θ^{m−1}` (times `1, i, j, ij` for quaternions).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use dashu_int::{IBig, UBig};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::irreducible::is_irreducible_over_q;
use crate::linalg::{self, Side};
use crate::modp;
use crate::rational::{over_common_denominator, Q};
use crate::upoly::QPoly;
use crate::{MAX_IRREDUCIBLE_DEGREE, MAX_SIGMA_ORDER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    NumberField,
    Quaternions,
}

/// Raw description of a ground field, validated by [`GroundField::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    /// Monic integer polynomial defining `K`, ascending coefficients.
    pub modulus: Vec<BigInt>,
    /// Display name of the generator `θ` of `K`.
    pub generator: String,
    /// `σ(θ)` in the power basis of `K`.
    pub sigma_image: Vec<Q>,
    /// Quaternion constants, as elements of `K`.
    pub alpha: Vec<Q>,
    pub beta: Vec<Q>,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        Self {
            kind: FieldKind::Rationals,
            modulus: vec![BigInt::zero(), BigInt::one()],
            generator: String::new(),
            sigma_image: vec![Q::zero()],
            alpha: Vec::new(),
            beta: Vec::new(),
        }
    }

    pub fn number_field(modulus: &[i64], generator: &str, sigma_image: Vec<Q>) -> Self {
        Self {
            kind: FieldKind::NumberField,
            modulus: modulus.iter().map(|&c| BigInt::from(c)).collect(),
            generator: generator.to_string(),
            sigma_image,
            alpha: Vec::new(),
            beta: Vec::new(),
        }
    }

    /// Quaternions `(α, β)` over the number field (or `ℚ`) described by `base`.
    pub fn quaternions(base: FieldDescriptor, alpha: Vec<Q>, beta: Vec<Q>) -> Self {
        Self {
            kind: FieldKind::Quaternions,
            alpha,
            beta,
            ..base
        }
    }

    /// `ℚ(i)` with complex conjugation.
    pub fn gaussian_conjugation() -> Self {
        Self::number_field(&[1, 0, 1], "i", vec![Q::zero(), -Q::one()])
    }

    /// Rational Hamilton quaternions with `σ = Id`.
    pub fn hamilton() -> Self {
        Self::quaternions(Self::rationals(), vec![-Q::one()], vec![-Q::one()])
    }
}

struct FieldData {
    descriptor: FieldDescriptor,
    /// `[K : ℚ]`
    m: usize,
    /// `[H : ℚ]`
    dim: usize,
    quaternion: bool,
    modulus: QPoly,
    /// Coordinates of `θ^(m + r)` for `r = 0 .. m−1`.
    reduce_rows: Vec<Vec<Q>>,
    /// `sigma[p][j]` = coordinates of `σ^p(θ^j)`.
    sigma: Vec<Vec<Vec<Q>>>,
    order: usize,
    alpha: Vec<Q>,
    beta: Vec<Q>,
    alpha_beta: Vec<Q>,
    /// `ℚ`-basis of the invariant subfield `k^σ ⊂ K`, first element `1`.
    invariant_basis: Vec<Vec<Q>>,
    /// `k^σ`-basis of `H`.
    h_basis: Vec<Vec<Q>>,
    /// Inverse of the matrix whose columns are `f_b·e_j`, indexed `j·|F| + b`.
    decomposition: Vec<Vec<Q>>,
    structure: Structure,
    modp: Option<ModpData>,
}

/// Images mod `p` of the structure constants and of `σ`, absent when `p`
/// divides one of their denominators.
struct ModpData {
    structure: Vec<(usize, usize, usize, u64)>,
    /// `sigma[q][b]` = coordinates of `σ^q(e_b)`.
    sigma: Vec<Vec<Vec<u64>>>,
}

/// `e_i·e_j = Σ_k c_ijk e_k` over the ℚ-basis of `H`, with integer
/// numerators over one common denominator.
#[derive(Default)]
struct Structure {
    terms: Vec<(usize, usize, usize, IBig)>,
    den: UBig,
}

/// Shared handle to a validated ground field. Cheap to clone.
#[derive(Clone)]
pub struct GroundField(Arc<FieldData>);

impl PartialEq for GroundField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for GroundField {}

impl fmt::Debug for GroundField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroundField")
            .field("kind", &self.0.descriptor.kind)
            .field("modulus", &self.0.descriptor.modulus)
            .field("order", &self.0.order)
            .finish()
    }
}

// ---- arithmetic in K on coordinate slices ----

fn k_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn k_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn k_neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

fn k_is_zero(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

fn k_scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

fn k_mul(m: usize, reduce_rows: &[Vec<Q>], a: &[Q], b: &[Q]) -> Vec<Q> {
    if m == 1 {
        return vec![&a[0] * &b[0]];
    }
    let mut prod = vec![Q::zero(); 2 * m - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            prod[i + j] += x * y;
        }
    }
    let mut out: Vec<Q> = prod[..m].to_vec();
    for (r, c) in prod[m..].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, row) in out.iter_mut().zip(&reduce_rows[r]) {
            *o += c * row;
        }
    }
    out
}

fn structure_constants(d: &FieldData) -> Structure {
    let unit = |i: usize| {
        let mut v = vec![Q::zero(); d.dim];
        v[i] = Q::one();
        v
    };
    let mut entries = Vec::new();
    for i in 0..d.dim {
        for j in 0..d.dim {
            for (k, c) in d.h_mul_by_components(&unit(i), &unit(j)).into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let values: Vec<Q> = entries.iter().map(|e| e.3.clone()).collect();
    let (nums, den) = over_common_denominator(&values);
    Structure {
        terms: entries.into_iter().zip(nums).map(|((i, j, k, _), n)| (i, j, k, n)).collect(),
        den,
    }
}

fn modp_data(d: &FieldData) -> Option<ModpData> {
    let den = Q::from_parts(1.into(), d.structure.den.clone());
    let structure = d
        .structure
        .terms
        .iter()
        .map(|(i, j, k, c)| Some((*i, *j, *k, modp::reduce(&(&Q::from_parts(c.clone(), UBig::ONE) * &den))?)))
        .collect::<Option<Vec<_>>>()?;
    let mut sigma = Vec::with_capacity(d.order);
    for q in 0..d.order {
        let images = (0..d.dim)
            .map(|b| {
                let mut e = vec![Q::zero(); d.dim];
                e[b] = Q::one();
                d.h_sigma(&e, q).iter().map(modp::reduce).collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        sigma.push(images);
    }
    Some(ModpData { structure, sigma })
}

fn mat_vec(mat: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    // columns of `mat` are images of basis vectors
    let m = v.len();
    let mut out = vec![Q::zero(); m];
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(&mat[j]) {
            *o += c * x;
        }
    }
    out
}

impl FieldData {
    fn k_mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        k_mul(self.m, &self.reduce_rows, a, b)
    }

    fn k_inv(&self, a: &[Q]) -> Option<Vec<Q>> {
        if k_is_zero(a) {
            return None;
        }
        if self.m == 1 {
            return Some(vec![a[0].recip()]);
        }
        let inv = QPoly::new(a.to_vec()).inverse_mod(&self.modulus)?;
        let mut c = inv.coeffs().to_vec();
        c.resize(self.m, Q::zero());
        Some(c)
    }

    fn k_sigma(&self, a: &[Q], power: usize) -> Vec<Q> {
        if power == 0 || self.order == 1 {
            return a.to_vec();
        }
        mat_vec(&self.sigma[power], a)
    }

    fn unit(&self, a: &[Q], u: usize) -> Vec<Q> {
        a[u * self.m..(u + 1) * self.m].to_vec()
    }

    /// Product through the structure constants: integer arithmetic over a
    /// common denominator and one reduction per coordinate.
    fn h_mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        if self.dim == 1 {
            return vec![&a[0] * &b[0]];
        }
        let (an, ad) = over_common_denominator(a);
        let (bn, bd) = over_common_denominator(b);
        let mut acc = vec![IBig::ZERO; self.dim];
        let mut prods: Vec<Option<IBig>> = vec![None; self.dim * self.dim];
        for (i, j, k, c) in &self.structure.terms {
            if an[*i].is_zero() || bn[*j].is_zero() {
                continue;
            }
            let p = prods[i * self.dim + j].get_or_insert_with(|| &an[*i] * &bn[*j]);
            acc[*k] += &*p * c;
        }
        let den = ad * bd * &self.structure.den;
        acc.into_iter().map(|n| Q::from_parts(n, den.clone())).collect()
    }

    /// Product by the defining formulas, used to build the structure constants.
    fn h_mul_by_components(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        if !self.quaternion {
            return self.k_mul(a, b);
        }
        let m = self.m;
        let (a0, a1, a2, a3) = (&a[..m], &a[m..2 * m], &a[2 * m..3 * m], &a[3 * m..]);
        let (b0, b1, b2, b3) = (&b[..m], &b[m..2 * m], &b[2 * m..3 * m], &b[3 * m..]);
        let mul = |x: &[Q], y: &[Q]| self.k_mul(x, y);
        let (al, be, ab) = (&self.alpha, &self.beta, &self.alpha_beta);
        // 1 : a0b0 + α a1b1 + β a2b2 − αβ a3b3
        let c0 = k_sub(
            &k_add(
                &k_add(&mul(a0, b0), &mul(al, &mul(a1, b1))),
                &mul(be, &mul(a2, b2)),
            ),
            &mul(ab, &mul(a3, b3)),
        );
        // i : a0b1 + a1b0 − β a2b3 + β a3b2
        let c1 = k_add(
            &k_add(&mul(a0, b1), &mul(a1, b0)),
            &mul(be, &k_sub(&mul(a3, b2), &mul(a2, b3))),
        );
        // j : a0b2 + a2b0 + α a1b3 − α a3b1
        let c2 = k_add(
            &k_add(&mul(a0, b2), &mul(a2, b0)),
            &mul(al, &k_sub(&mul(a1, b3), &mul(a3, b1))),
        );
        // ij : a0b3 + a3b0 + a1b2 − a2b1
        let c3 = k_add(
            &k_add(&mul(a0, b3), &mul(a3, b0)),
            &k_sub(&mul(a1, b2), &mul(a2, b1)),
        );
        let mut out = c0;
        out.extend(c1);
        out.extend(c2);
        out.extend(c3);
        out
    }

    fn h_inv(&self, a: &[Q]) -> Option<Vec<Q>> {
        if !self.quaternion {
            return self.k_inv(a);
        }
        let m = self.m;
        let (a0, a1, a2, a3) = (&a[..m], &a[m..2 * m], &a[2 * m..3 * m], &a[3 * m..]);
        let sq = |x: &[Q]| self.k_mul(x, x);
        let norm = k_add(
            &k_sub(
                &k_sub(&sq(a0), &self.k_mul(&self.alpha, &sq(a1))),
                &self.k_mul(&self.beta, &sq(a2)),
            ),
            &self.k_mul(&self.alpha_beta, &sq(a3)),
        );
        let ninv = self.k_inv(&norm)?;
        let mut out = self.k_mul(a0, &ninv);
        out.extend(k_neg(&self.k_mul(a1, &ninv)));
        out.extend(k_neg(&self.k_mul(a2, &ninv)));
        out.extend(k_neg(&self.k_mul(a3, &ninv)));
        Some(out)
    }

    fn h_sigma(&self, a: &[Q], power: usize) -> Vec<Q> {
        if power == 0 || self.order == 1 {
            return a.to_vec();
        }
        if !self.quaternion {
            return self.k_sigma(a, power);
        }
        (0..4)
            .flat_map(|u| self.k_sigma(&self.unit(a, u), power))
            .collect()
    }

    /// Embeds an element of `K` into `H`.
    fn k_to_h(&self, a: &[Q]) -> Vec<Q> {
        let mut out = a.to_vec();
        out.resize(self.dim, Q::zero());
        out
    }
}

impl GroundField {
    /// Validates a descriptor: irreducible modulus, `σ(θ)` a root of it,
    /// finite order, `σ`-invariant quaternion constants and a division
    /// algebra (the latter decided exactly over `ℚ`).
    pub fn new(descriptor: FieldDescriptor) -> Result<Self> {
        let modulus = QPoly::from_bigints(&descriptor.modulus);
        let m = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidDescriptor("modulus must have degree >= 1".into()))?;
        if !modulus.is_monic_integer() {
            return Err(Error::InvalidDescriptor(
                "modulus must be a monic integer polynomial".into(),
            ));
        }
        if m > MAX_IRREDUCIBLE_DEGREE {
            return Err(Error::CapExceeded {
                what: "number field degree",
                cap: MAX_IRREDUCIBLE_DEGREE,
            });
        }
        match descriptor.kind {
            FieldKind::Rationals if m != 1 || !modulus.coeff(0).is_zero() => {
                return Err(Error::InvalidDescriptor("rationals use the modulus x".into()));
            }
            FieldKind::NumberField | FieldKind::Quaternions => {
                let reserved = ["t", "x", "i", "j", "k", "s"];
                if m > 1
                    && (descriptor.generator.is_empty()
                        || (descriptor.kind == FieldKind::Quaternions
                            && reserved.contains(&descriptor.generator.as_str()))
                        || ["t", "x", "s"].contains(&descriptor.generator.as_str())
                        || !descriptor.generator.chars().all(|c| c.is_ascii_alphabetic()))
                {
                    return Err(Error::InvalidDescriptor(format!(
                        "generator name `{}` is empty or reserved",
                        descriptor.generator
                    )));
                }
            }
            _ => {}
        }
        if !is_irreducible_over_q(&modulus)? {
            return Err(Error::ReduciblePolynomial(format!("{:?}", descriptor.modulus)));
        }
        if descriptor.sigma_image.len() != m {
            return Err(Error::NotAnAutomorphism(format!(
                "image of the generator needs {m} coordinates"
            )));
        }

        let reduce_rows = reduction_rows(&modulus, m);
        let g = descriptor.sigma_image.clone();
        // m(σθ) must vanish
        let mut powers: Vec<Vec<Q>> = vec![unit_vec(m, 0)];
        for _ in 1..=m {
            let next = k_mul(m, &reduce_rows, powers.last().unwrap(), &g);
            powers.push(next);
        }
        let mut value = vec![Q::zero(); m];
        for (c, p) in modulus.coeffs().iter().zip(&powers) {
            value = k_add(&value, &k_scale(p, c));
        }
        if !k_is_zero(&value) {
            return Err(Error::NotAnAutomorphism(
                "image of the generator is not a root of the modulus".into(),
            ));
        }
        let sigma1: Vec<Vec<Q>> = powers[..m].to_vec();
        let theta = if m == 1 { vec![Q::zero()] } else { unit_vec(m, 1) };
        let mut sigma = vec![identity(m)];
        let mut order = 0;
        for p in 1..=MAX_SIGMA_ORDER {
            let prev = sigma.last().unwrap();
            // σ^p = σ ∘ σ^(p−1): columns σ(σ^(p−1)(θ^j))
            let next: Vec<Vec<Q>> = prev.iter().map(|col| mat_vec(&sigma1, col)).collect();
            let is_id = m == 1 || mat_vec(&next, &theta) == theta;
            if is_id {
                order = p;
                break;
            }
            sigma.push(next);
        }
        if order == 0 {
            return Err(Error::InfiniteOrder { cap: MAX_SIGMA_ORDER });
        }

        let quaternion = descriptor.kind == FieldKind::Quaternions;
        let (alpha, beta, alpha_beta) = if quaternion {
            if descriptor.alpha.len() != m || descriptor.beta.len() != m {
                return Err(Error::InvalidDescriptor(format!(
                    "quaternion constants need {m} coordinates"
                )));
            }
            if k_is_zero(&descriptor.alpha) || k_is_zero(&descriptor.beta) {
                return Err(Error::InvalidDescriptor(
                    "quaternion constants must be nonzero".into(),
                ));
            }
            let ab = k_mul(m, &reduce_rows, &descriptor.alpha, &descriptor.beta);
            (descriptor.alpha.clone(), descriptor.beta.clone(), ab)
        } else {
            (Vec::new(), Vec::new(), Vec::new())
        };
        let dim = if quaternion { 4 * m } else { m };

        let mut data = FieldData {
            descriptor,
            m,
            dim,
            quaternion,
            modulus,
            reduce_rows,
            sigma,
            order,
            alpha,
            beta,
            alpha_beta,
            invariant_basis: Vec::new(),
            h_basis: Vec::new(),
            decomposition: Vec::new(),
            structure: Structure::default(),
            modp: None,
        };
        if quaternion {
            for (name, c) in [("alpha", &data.alpha), ("beta", &data.beta)] {
                if data.k_sigma(c, 1) != *c {
                    return Err(Error::NotAnAutomorphism(format!(
                        "{name} is not fixed by sigma, so sigma does not extend to the quaternions"
                    )));
                }
            }
            if m == 1 && !rational_quaternions_are_division(&data.alpha[0], &data.beta[0]) {
                return Err(Error::NotDivisionAlgebra);
            }
        }
        data.structure = structure_constants(&data);
        data.modp = modp_data(&data);
        data.invariant_basis = invariant_basis(&data);
        data.h_basis = h_basis(&data);
        data.decomposition = decomposition_matrix(&data);
        Ok(Self(Arc::new(data)))
    }

    pub fn rationals() -> Self {
        Self::new(FieldDescriptor::rationals()).expect("Q is a valid field")
    }

    pub fn gaussian_conjugation() -> Self {
        Self::new(FieldDescriptor::gaussian_conjugation()).expect("Q(i) is a valid field")
    }

    pub fn hamilton() -> Self {
        Self::new(FieldDescriptor::hamilton()).expect("rational Hamilton quaternions are valid")
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.descriptor
    }

    pub fn kind(&self) -> FieldKind {
        self.0.descriptor.kind
    }

    pub fn is_quaternion(&self) -> bool {
        self.0.quaternion
    }

    /// Order `n` of `σ`.
    /// Coordinates of `a` mod `p`, if defined.
    pub(crate) fn reduce_mod_p(&self, a: &GroundElement) -> Option<Vec<u64>> {
        self.0.modp.as_ref()?;
        a.coords.iter().map(modp::reduce).collect()
    }

    /// `a·σ^k(e_b)` mod `p` for reduced coordinates `a`.
    pub(crate) fn mul_sigma_basis_mod_p(&self, a: &[u64], k: usize, b: usize) -> Option<Vec<u64>> {
        let data = self.0.modp.as_ref()?;
        let e = &data.sigma[k % self.0.order][b];
        let mut out = vec![0; self.0.dim];
        for &(i, j, l, c) in &data.structure {
            if a[i] != 0 && e[j] != 0 {
                out[l] = modp::add(out[l], modp::mul(modp::mul(a[i], e[j]), c));
            }
        }
        Some(out)
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    /// `[H : ℚ]`
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// `[K : ℚ]`, where `K` is the center of `H`.
    pub fn center_degree(&self) -> usize {
        self.0.m
    }

    pub fn generator_name(&self) -> &str {
        &self.0.descriptor.generator
    }

    pub fn zero(&self) -> GroundElement {
        GroundElement {
            field: self.clone(),
            coords: vec![Q::zero(); self.0.dim],
        }
    }

    pub fn one(&self) -> GroundElement {
        self.from_rational(Q::one())
    }

    pub fn from_rational(&self, c: Q) -> GroundElement {
        let mut coords = vec![Q::zero(); self.0.dim];
        coords[0] = c;
        GroundElement {
            field: self.clone(),
            coords,
        }
    }

    pub fn from_int(&self, c: i64) -> GroundElement {
        self.from_rational(Q::from_integer(BigInt::from(c)))
    }

    pub fn from_coords(&self, coords: Vec<Q>) -> Result<GroundElement> {
        if coords.len() != self.0.dim {
            return Err(Error::InvalidDescriptor(format!(
                "expected {} coordinates, got {}",
                self.0.dim,
                coords.len()
            )));
        }
        Ok(GroundElement {
            field: self.clone(),
            coords,
        })
    }

    /// Basis vector `index` of the ambient `ℚ`-basis.
    pub fn basis_element(&self, index: usize) -> GroundElement {
        GroundElement {
            field: self.clone(),
            coords: unit_vec(self.0.dim, index),
        }
    }

    /// The generator `θ` of the center `K` (`0` for `K = ℚ`).
    pub fn generator(&self) -> GroundElement {
        if self.0.m == 1 {
            return self.zero();
        }
        self.basis_element(1)
    }

    /// Quaternion unit `1`, `i`, `j` or `ij` (index 0..4).
    pub fn quaternion_unit(&self, unit: usize) -> Option<GroundElement> {
        if !self.0.quaternion || unit > 3 {
            return None;
        }
        Some(self.basis_element(unit * self.0.m))
    }

    /// `ℚ`-basis of the invariant subfield `k^σ`, starting with `1`.
    pub fn invariant_basis(&self) -> Vec<GroundElement> {
        self.0
            .invariant_basis
            .iter()
            .map(|c| GroundElement {
                field: self.clone(),
                coords: self.0.k_to_h(c),
            })
            .collect()
    }

    /// `k^σ`-basis `(e_j)` of `H`.
    pub fn h_basis(&self) -> Vec<GroundElement> {
        self.0
            .h_basis
            .iter()
            .map(|c| GroundElement {
                field: self.clone(),
                coords: c.clone(),
            })
            .collect()
    }

    /// Writes `a = Σ λ_j e_j` with `λ_j ∈ k^σ`, one entry per `h_basis`
    /// element.
    pub fn decompose(&self, a: &GroundElement) -> Vec<GroundElement> {
        let d = &self.0;
        let nb = d.invariant_basis.len();
        let mu = mat_vec(&d.decomposition, &a.coords);
        (0..d.h_basis.len())
            .map(|j| {
                let mut coords = vec![Q::zero(); d.m];
                for b in 0..nb {
                    coords = k_add(&coords, &k_scale(&d.invariant_basis[b], &mu[j * nb + b]));
                }
                GroundElement {
                    field: self.clone(),
                    coords: d.k_to_h(&coords),
                }
            })
            .collect()
    }

    /// `ℚ`-basis of the center of `H`, by solving `x·b = b·x` for every
    /// ambient basis vector `b`.
    pub fn center_by_linear_algebra(&self) -> Vec<GroundElement> {
        let dim = self.0.dim;
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for b in 0..dim {
            let bv = unit_vec(dim, b);
            // columns: images of the unknown basis vectors x = e_c
            let cols: Vec<Vec<Q>> = (0..dim)
                .map(|c| {
                    let x = unit_vec(dim, c);
                    k_sub(&self.0.h_mul(&x, &bv), &self.0.h_mul(&bv, &x))
                })
                .collect();
            for r in 0..dim {
                rows.push(cols.iter().map(|col| col[r].clone()).collect());
            }
        }
        linalg::kernel(&rows, dim, Side::Right)
            .into_iter()
            .map(|coords| GroundElement {
                field: self.clone(),
                coords,
            })
            .collect()
    }

    /// Total `σ`-image data, exposed for tests: coordinates of `σ^p(θ^j)`.
    pub fn sigma_matrix(&self, power: usize) -> Vec<Vec<Q>> {
        self.0.sigma[power % self.0.order].clone()
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn identity(n: usize) -> Vec<Vec<Q>> {
    (0..n).map(|j| unit_vec(n, j)).collect()
}

fn reduction_rows(modulus: &QPoly, m: usize) -> Vec<Vec<Q>> {
    // θ^m = −Σ c_i θ^i; higher powers by shifting
    let mut rows: Vec<Vec<Q>> = Vec::new();
    if m == 1 {
        rows.push(vec![-modulus.coeff(0)]);
        return rows;
    }
    let mut cur: Vec<Q> = (0..m).map(|i| -modulus.coeff(i)).collect();
    for _ in 0..m - 1 {
        rows.push(cur.clone());
        // multiply by θ
        let top = cur[m - 1].clone();
        let mut next = vec![Q::zero(); m];
        for i in 1..m {
            next[i] = cur[i - 1].clone();
        }
        for i in 0..m {
            next[i] -= &top * modulus.coeff(i);
        }
        cur = next;
    }
    rows.push(cur);
    rows
}

fn invariant_basis(d: &FieldData) -> Vec<Vec<Q>> {
    let m = d.m;
    if d.order == 1 {
        return identity(m);
    }
    // (σ − I) as a row-major matrix
    let rows: Vec<Vec<Q>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let v = &d.sigma[1][c][r];
                    if r == c {
                        v - Q::one()
                    } else {
                        v.clone()
                    }
                })
                .collect()
        })
        .collect();
    linalg::kernel(&rows, m, Side::Right)
}

fn h_basis(d: &FieldData) -> Vec<Vec<Q>> {
    let m = d.m;
    let fb = &d.invariant_basis;
    let mut chosen: Vec<Vec<Q>> = Vec::new();
    let mut span: Vec<Vec<Q>> = Vec::new();
    for p in 0..m {
        let cand = unit_vec(m, p);
        let mut trial = span.clone();
        for f in fb {
            trial.push(d.k_mul(f, &cand));
        }
        if linalg::rank(&trial) == trial.len() {
            span = trial;
            chosen.push(cand);
        }
        if span.len() == m {
            break;
        }
    }
    if !d.quaternion {
        return chosen;
    }
    let mut out = Vec::new();
    for c in &chosen {
        for u in 0..4 {
            let mut v = vec![Q::zero(); d.dim];
            v[u * m..(u + 1) * m].clone_from_slice(c);
            out.push(v);
        }
    }
    out
}

fn decomposition_matrix(d: &FieldData) -> Vec<Vec<Q>> {
    // columns f_b·e_j
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for e in &d.h_basis {
        for f in &d.invariant_basis {
            cols.push(d.h_mul(&d.k_to_h(f), e));
        }
    }
    let n = d.dim;
    let a: Vec<Vec<Q>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    // inverse, stored column-wise for mat_vec
    (0..n)
        .map(|i| linalg::solve(&a, &unit_vec(n, i), Side::Right).expect("basis matrix is invertible"))
        .collect()
}

// ---- Hilbert symbols over Q ----

fn squarefree_integer(c: &Q) -> BigInt {
    // c·den² is an integer with the same square class
    let n = c.numer() * c.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out *= m;
    out * sign
}

fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if (&m % &p).is_zero() {
            out.push(p.clone());
            while (&m % &p).is_zero() {
                m /= &p;
            }
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

fn legendre(a: &BigInt, p: &BigInt) -> i32 {
    let e = (p - 1u32) / 2u32;
    let r = a.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

fn hilbert_symbol(a: &BigInt, b: &BigInt, p: &BigInt) -> i32 {
    let val = |x: &BigInt| {
        let mut x = x.clone();
        let mut v = 0u32;
        while (&x % p).is_zero() {
            x /= p;
            v += 1;
        }
        (v, x)
    };
    let (va, u) = val(a);
    let (vb, w) = val(b);
    if *p == BigInt::from(2) {
        let eps = |x: &BigInt| ((x - 1u32) / 2u32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
        let omega =
            |x: &BigInt| ((x * x - 1u32) / 8u32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
        let e = eps(&u) * eps(&w) + va * omega(&w) + vb * omega(&u);
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        let eps = ((p - 1u32) / 2u32).mod_floor(&BigInt::from(2)).to_u32().unwrap();
        let mut s = if (va * vb * eps) % 2 == 0 { 1 } else { -1 };
        if vb % 2 == 1 {
            s *= legendre(&u, p);
        }
        if va % 2 == 1 {
            s *= legendre(&w, p);
        }
        s
    }
}

/// `(α, β)_ℚ` is a division algebra iff some local Hilbert symbol is `−1`.
fn rational_quaternions_are_division(alpha: &Q, beta: &Q) -> bool {
    let a = squarefree_integer(alpha);
    let b = squarefree_integer(beta);
    if a.is_negative() && b.is_negative() {
        return true;
    }
    let mut primes = prime_divisors(&(BigInt::from(2) * &a * &b));
    primes.sort();
    primes.dedup();
    primes.iter().any(|p| hilbert_symbol(&a, &b, p) == -1)
}

/// An element of a ground field.
#[derive(Clone)]
pub struct GroundElement {
    field: GroundField,
    coords: Vec<Q>,
}

impl PartialEq for GroundElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for GroundElement {}

impl GroundElement {
    pub fn field(&self) -> &GroundField {
        &self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        k_is_zero(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `ℚ·1`.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    fn with(&self, coords: Vec<Q>) -> Self {
        Self {
            field: self.field.clone(),
            coords,
        }
    }

    fn assert_same(&self, other: &Self) {
        assert!(self.field == other.field, "operands belong to different ground fields");
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        Ok(self.with(self.field.0.h_mul(&self.coords, &other.coords)))
    }

    pub fn inv(&self) -> Option<Self> {
        self.field.0.h_inv(&self.coords).map(|c| self.with(c))
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.with(k_scale(&self.coords, c))
    }

    /// `σ^power(self)`; negative powers are reduced modulo the order.
    pub fn apply_sigma(&self, power: i64) -> Self {
        let n = self.field.0.order as i64;
        let p = power.rem_euclid(n) as usize;
        self.with(self.field.0.h_sigma(&self.coords, p))
    }

    /// Whether the element commutes with every `e_j` (hence with all of `H`).
    pub fn is_central(&self) -> bool {
        let d = &self.field.0;
        if !d.quaternion {
            return true;
        }
        d.h_basis
            .iter()
            .all(|e| d.h_mul(&self.coords, e) == d.h_mul(e, &self.coords))
    }

    /// Membership in `k^σ`. Errors with `NotCentral` when the element does
    /// not lie in the center `k`.
    pub fn in_invariant_subfield(&self) -> Result<bool> {
        if !self.is_central() {
            return Err(Error::NotCentral);
        }
        Ok(self.apply_sigma(1) == *self)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = self.field.one();
        for _ in 0..e {
            result = &result * self;
        }
        result
    }
}

impl fmt::Debug for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Symbolic form in the generator and quaternion unit names, e.g. `3+2*i`.
impl fmt::Display for GroundElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.field.0;
        let units = ["", "i", "j", "k"];
        let nunits = if d.quaternion { 4 } else { 1 };
        let mut first = true;
        for u in 0..nunits {
            for p in 0..d.m {
                let c = &self.coords[u * d.m + p];
                if c.is_zero() {
                    continue;
                }
                let mut mono: Vec<String> = Vec::new();
                if p == 1 {
                    mono.push(d.descriptor.generator.clone());
                } else if p > 1 {
                    mono.push(format!("{}^{}", d.descriptor.generator, p));
                }
                if u > 0 {
                    mono.push(units[u].to_string());
                }
                let mono = mono.join("*");
                let negative = c.is_negative();
                let abs = c.abs();
                if negative {
                    write!(f, "-")?;
                } else if !first {
                    write!(f, "+")?;
                }
                if mono.is_empty() {
                    write!(f, "{abs}")?;
                } else if abs.is_one() {
                    write!(f, "{mono}")?;
                } else {
                    write!(f, "{abs}*{mono}")?;
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> core::ops::Add<&'a GroundElement> for &'a GroundElement {
    type Output = GroundElement;
    fn add(self, rhs: &GroundElement) -> GroundElement {
        self.assert_same(rhs);
        self.with(k_add(&self.coords, &rhs.coords))
    }
}

impl<'a> core::ops::Sub<&'a GroundElement> for &'a GroundElement {
    type Output = GroundElement;
    fn sub(self, rhs: &GroundElement) -> GroundElement {
        self.assert_same(rhs);
        self.with(k_sub(&self.coords, &rhs.coords))
    }
}

/// Panics if the operands belong to different fields; see
/// [`GroundElement::checked_mul`].
impl<'a> core::ops::Mul<&'a GroundElement> for &'a GroundElement {
    type Output = GroundElement;
    fn mul(self, rhs: &GroundElement) -> GroundElement {
        self.assert_same(rhs);
        self.with(self.field.0.h_mul(&self.coords, &rhs.coords))
    }
}

impl core::ops::Neg for &GroundElement {
    type Output = GroundElement;
    fn neg(self) -> GroundElement {
        self.with(k_neg(&self.coords))
    }
}

impl linalg::DivisionRing for GroundElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        GroundElement::is_zero(self)
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
        self.inv()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn qi() -> GroundField {
        GroundField::gaussian_conjugation()
    }

    #[test]
    fn structure_constants_match_the_formulas() {
        use crate::rational::q_frac;
        for f in [qi(), GroundField::hamilton(), GroundField::rationals()] {
            let d = &f.0;
            let vals: Vec<Q> = (0..40).map(|n| q_frac((n * 37 % 23) - 11, (n * 13 % 7) + 1)).collect();
            for r in 0..8 {
                let a: Vec<Q> = (0..d.dim).map(|i| vals[(r * 5 + i) % 40].clone()).collect();
                let b: Vec<Q> = (0..d.dim).map(|i| vals[(r * 3 + 2 * i + 7) % 40].clone()).collect();
                assert_eq!(d.h_mul(&a, &b), d.h_mul_by_components(&a, &b));
            }
        }
    }

    #[test]
    fn rationals_have_trivial_sigma() {
        let f = GroundField::rationals();
        assert_eq!(f.order(), 1);
        assert_eq!(f.invariant_basis().len(), 1);
    }

    #[test]
    fn gaussian_conjugation_data() {
        let f = qi();
        assert_eq!(f.order(), 2);
        let i = f.generator();
        assert_eq!(i.apply_sigma(1), -&i);
        let a = f.from_coords(vec![q(3), q(2)]).unwrap();
        assert_eq!(a.apply_sigma(2), a);
        assert_eq!(a.apply_sigma(0), a);
        assert_eq!(a.apply_sigma(-1), a.apply_sigma(1));
        // fixed field by solving σ(a) = a coordinate-wise: only the 1-slot
        assert_eq!(f.invariant_basis(), vec![f.one()]);
        assert_eq!(f.h_basis(), vec![f.one(), i.clone()]);
        assert!(f.from_int(5).in_invariant_subfield().unwrap());
        assert!(!i.in_invariant_subfield().unwrap());
        assert_eq!(format!("{a}"), "3+2*i");
        assert_eq!(format!("{}", -&i), "-i");
    }

    #[test]
    fn hamilton_table() {
        let h = GroundField::hamilton();
        let i = h.quaternion_unit(1).unwrap();
        let j = h.quaternion_unit(2).unwrap();
        let k = h.quaternion_unit(3).unwrap();
        let m1 = h.from_int(-1);
        assert_eq!(&i * &i, m1);
        assert_eq!(&j * &j, m1);
        assert_eq!(&k * &k, m1);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert!(matches!(j.in_invariant_subfield(), Err(Error::NotCentral)));
        let center = h.center_by_linear_algebra();
        assert_eq!(center, vec![h.one()]);
    }

    #[test]
    fn rejects_bad_descriptors() {
        let red = FieldDescriptor::number_field(&[-1, 0, 1], "a", vec![q(0), q(-1)]);
        assert!(matches!(GroundField::new(red), Err(Error::ReduciblePolynomial(_))));
        let not_root = FieldDescriptor::number_field(&[1, 0, 1], "i", vec![q(1), q(1)]);
        assert!(matches!(
            GroundField::new(not_root),
            Err(Error::NotAnAutomorphism(_))
        ));
        let split = FieldDescriptor::quaternions(FieldDescriptor::rationals(), vec![q(1)], vec![q(-1)]);
        assert!(matches!(GroundField::new(split), Err(Error::NotDivisionAlgebra)));
        let split2 = FieldDescriptor::quaternions(FieldDescriptor::rationals(), vec![q(-1)], vec![q(2)]);
        assert!(matches!(GroundField::new(split2), Err(Error::NotDivisionAlgebra)));
        let nonsplit = FieldDescriptor::quaternions(FieldDescriptor::rationals(), vec![q(-1)], vec![q(3)]);
        assert!(GroundField::new(nonsplit).is_ok());
    }

    #[test]
    fn cyclotomic_field_with_order_four() {
        // Q(ζ5), σ: ζ ↦ ζ², order 4, fixed field Q
        let z2 = vec![q(0), q(0), q(1), q(0)];
        let f = GroundField::new(FieldDescriptor::number_field(&[1, 1, 1, 1, 1], "z", z2)).unwrap();
        assert_eq!(f.order(), 4);
        assert_eq!(f.invariant_basis().len(), 1);
        assert_eq!(f.h_basis().len(), 4);
        // σ: ζ ↦ ζ⁴ = ζ^{-1}, order 2, fixed field Q(√5) of dimension 2
        let z4 = vec![q(-1), q(-1), q(-1), q(-1)];
        let g = GroundField::new(FieldDescriptor::number_field(&[1, 1, 1, 1, 1], "z", z4)).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.invariant_basis().len(), 2);
        assert_eq!(g.h_basis().len(), 2);
        for b in g.invariant_basis() {
            assert!(b.in_invariant_subfield().unwrap());
        }
    }

    #[test]
    fn decomposition_reconstructs() {
        let h = GroundField::hamilton();
        let a = h.from_coords(vec![q(1), q(-2), q(3), q(5)]).unwrap();
        let lambdas = h.decompose(&a);
        let back = lambdas
            .iter()
            .zip(h.h_basis())
            .fold(h.zero(), |acc, (l, e)| &acc + &(l * &e));
        assert_eq!(back, a);
    }
}
