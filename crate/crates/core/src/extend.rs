//! Scalar extension `M = H(t, σ) ⊗ L` for `L = F(s)[x]/(f)` embedded in
//! `F((s))` by a series root `ρ`.
//!
//! Elements of `M` are coordinate vectors over `H(t, σ)` in the basis
//! `1, x, …, x^{d−1}` with `x` central. A scenario is validated once: the
//! series root, the generator images, and the action of the finite group
//! (as matrices over `F(s)`) are all checked exactly.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::central::{CentralFn, CentralPoly, LElem, LField};
use crate::error::{Error, Result};
use crate::ground::{GroundElement, GroundField};
use crate::group::FiniteGroup;
use crate::laurent::{eval_series_poly, newton_root, TwistedSeries};
use crate::linalg::{self, Side};
use crate::skewfrac::SkewFraction;
use crate::skewpoly::SkewPolynomial;

/// A generator of the Galois action: the image of `x` and the group
/// element it realizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    /// Image of `x`, as coordinates in `1, x, …, x^{d−1}`.
    pub image: Vec<CentralFn>,
    /// Name of the group element.
    pub element: String,
}

/// Unvalidated scenario input.
#[derive(Debug, Clone)]
pub struct ScenarioDescription {
    pub name: String,
    pub field: GroundField,
    /// Coefficients `f_0 … f_d` of `f` in `x`, monic.
    pub f: Vec<CentralFn>,
    /// Residual root at `t = 0` from which `ρ` is lifted.
    pub seed: GroundElement,
    /// Precision of `ρ`.
    pub precision: i64,
    /// Replaces the Newton lift when present (it is still checked).
    pub rho: Option<TwistedSeries>,
    pub generators: Vec<GeneratorSpec>,
    pub group: FiniteGroup,
}

/// One passed validation step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub detail: String,
}

struct ScenarioData {
    name: String,
    field: GroundField,
    l: LField,
    seed: GroundElement,
    rho: TwistedSeries,
    rho_powers: Vec<TwistedSeries>,
    group: FiniteGroup,
    generators: Vec<(String, usize)>,
    /// Image of `x` under every group element.
    images: Vec<LElem>,
    /// Matrix of every group element on `1, x, …, x^{d−1}`.
    matrices: Vec<Vec<Vec<CentralFn>>>,
    checks: Vec<Check>,
}

/// A validated extension scenario. Cheap to clone.
#[derive(Clone)]
pub struct ExtensionScenario(Arc<ScenarioData>);

impl fmt::Debug for ExtensionScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtensionScenario")
            .field("name", &self.0.name)
            .field("degree", &self.degree())
            .finish()
    }
}

fn invalid(check: &'static str, detail: String) -> Error {
    Error::ScenarioInvalid { check, detail }
}

impl ExtensionScenario {
    pub fn new(desc: ScenarioDescription) -> Result<Self> {
        let field = desc.field.clone();
        let mut checks = Vec::new();
        let l = LField::new(&field, desc.f.clone())?;
        let d = l.degree();
        checks.push(Check {
            name: "f-monic",
            detail: format!("f is monic of degree {d}"),
        });
        l.certify_irreducible()?;
        checks.push(Check {
            name: "f-irreducible",
            detail: String::from("a specialization of s certifies irreducibility"),
        });

        let f_fractions: Vec<SkewFraction> = desc.f.iter().map(CentralFn::to_fraction).collect();
        let rho = match &desc.rho {
            Some(r) => r.clone(),
            None => newton_root(&f_fractions, &desc.seed, desc.precision)?.root,
        };
        if !rho.is_invariant() {
            return Err(invalid("rho-invariant", format!("rho = {rho} is not in F((s))")));
        }
        checks.push(Check {
            name: "rho-invariant",
            detail: String::from("rho has invariant coefficients at exponents divisible by n"),
        });
        let coeff_series: Vec<TwistedSeries> = f_fractions
            .iter()
            .map(|c| TwistedSeries::embed(c, rho.precision()))
            .collect();
        let residual = eval_series_poly(&coeff_series, &rho);
        let needed = rho.precision().min(desc.precision);
        if !residual.is_zero() && residual.valuation() < needed {
            return Err(invalid(
                "rho-root",
                format!(
                    "f(rho) has valuation {} below the precision {needed}",
                    residual.valuation()
                ),
            ));
        }
        checks.push(Check {
            name: "rho-root",
            detail: format!("f(rho) = 0 mod t^{}", rho.precision()),
        });

        let mut generators = Vec::new();
        let mut gen_images = Vec::new();
        for g in &desc.generators {
            let image = l.from_coords(g.image.clone())?;
            if !l.is_zero(&l.eval_modulus(&image)) {
                return Err(invalid(
                    "generator-roots",
                    format!("f({}(x)) is not 0 modulo f", g.name),
                ));
            }
            let elem = desc.group.element(&g.element)?;
            generators.push((g.name.clone(), elem));
            gen_images.push(image);
        }
        checks.push(Check {
            name: "generator-roots",
            detail: format!("{} generator images are roots of f", generators.len()),
        });

        let group = desc.group.clone();
        if group.order() != d {
            return Err(invalid(
                "group-order",
                format!("|G| = {} but deg f = {d}", group.order()),
            ));
        }
        checks.push(Check {
            name: "group-order",
            detail: format!("|G| = deg f = {d}"),
        });
        let gens: Vec<usize> = generators.iter().map(|g| g.1).collect();
        if group.generated(&gens).len() != group.order() {
            return Err(invalid(
                "generators-generate",
                String::from("the generators do not generate G"),
            ));
        }
        checks.push(Check {
            name: "generators-generate",
            detail: String::from("the generators generate G"),
        });

        // Ψ(gh) = Ψ(g)∘Ψ(h) reads I_{gh} = I_h(I_g) on images of x.
        let mut images: Vec<Option<LElem>> = vec![None; group.order()];
        images[group.identity()] = Some(l.x());
        let mut queue = vec![group.identity()];
        while let Some(a) = queue.pop() {
            let ia = images[a].clone().expect("visited");
            for ((_, g), ig) in generators.iter().zip(&gen_images) {
                let ag = group.mul(a, *g);
                let img = l.compose(ig, &ia);
                match &images[ag] {
                    Some(existing) if *existing != img => {
                        return Err(invalid(
                            "psi-consistent",
                            format!(
                                "two generator words for `{}` act differently",
                                group.name(ag)
                            ),
                        ));
                    }
                    Some(_) => {}
                    None => {
                        images[ag] = Some(img);
                        queue.push(ag);
                    }
                }
            }
        }
        let images: Vec<LElem> = images.into_iter().map(|i| i.expect("generated")).collect();
        checks.push(Check {
            name: "psi-consistent",
            detail: String::from("generator words act consistently"),
        });
        let matrices: Vec<_> = images.iter().map(|i| l.automorphism_matrix(i)).collect();
        for g in 0..group.order() {
            for h in 0..group.order() {
                let prod = mat_mul(&matrices[g], &matrices[h]);
                if prod != matrices[group.mul(g, h)] {
                    return Err(invalid(
                        "psi-homomorphism",
                        format!(
                            "M({})·M({}) != M({})",
                            group.name(g),
                            group.name(h),
                            group.name(group.mul(g, h))
                        ),
                    ));
                }
            }
        }
        checks.push(Check {
            name: "psi-homomorphism",
            detail: format!("M(g)M(h) = M(gh) for all {} pairs", d * d),
        });
        for g in 0..images.len() {
            for h in 0..g {
                if images[g] == images[h] {
                    return Err(invalid(
                        "psi-faithful",
                        format!("{} and {} act identically", group.name(g), group.name(h)),
                    ));
                }
            }
        }
        checks.push(Check {
            name: "psi-faithful",
            detail: format!("{} distinct automorphisms", images.len()),
        });

        let mut rho_powers = vec![TwistedSeries::one(&field, rho.precision())];
        for _ in 1..d {
            let next = rho_powers.last().expect("nonempty") * &rho;
            rho_powers.push(next);
        }
        Ok(Self(Arc::new(ScenarioData {
            name: desc.name,
            field,
            l,
            seed: desc.seed,
            rho,
            rho_powers,
            group,
            generators,
            images,
            matrices,
            checks,
        })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn field(&self) -> &GroundField {
        &self.0.field
    }

    pub fn l(&self) -> &LField {
        &self.0.l
    }

    pub fn degree(&self) -> usize {
        self.0.l.degree()
    }

    pub fn seed(&self) -> &GroundElement {
        &self.0.seed
    }

    pub fn rho(&self) -> &TwistedSeries {
        &self.0.rho
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.0.group
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.0.generators
    }

    /// Group element realized by a generator name.
    pub fn generator(&self, name: &str) -> Result<usize> {
        self.0
            .generators
            .iter()
            .find(|g| g.0 == name)
            .map(|g| g.1)
            .ok_or_else(|| Error::UnknownGroupElement(name.into()))
    }

    /// Image of `x` under a group element.
    pub fn image(&self, g: usize) -> Result<&LElem> {
        self.0
            .images
            .get(g)
            .ok_or_else(|| Error::UnknownGroupElement(format!("#{g}")))
    }

    pub fn matrix(&self, g: usize) -> Result<&Vec<Vec<CentralFn>>> {
        self.0
            .matrices
            .get(g)
            .ok_or_else(|| Error::UnknownGroupElement(format!("#{g}")))
    }

    pub fn checks(&self) -> &[Check] {
        &self.0.checks
    }

    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn element(&self, coords: Vec<SkewFraction>) -> Result<TensorElement> {
        if coords.len() != self.degree() {
            return Err(invalid(
                "coordinates",
                format!("expected {} coordinates, got {}", self.degree(), coords.len()),
            ));
        }
        if coords.iter().any(|c| c.field() != self.field()) {
            return Err(Error::MixedFields);
        }
        Ok(TensorElement {
            scenario: self.clone(),
            coords,
        })
    }

    pub fn zero(&self) -> TensorElement {
        TensorElement {
            scenario: self.clone(),
            coords: vec![SkewFraction::zero(self.field()); self.degree()],
        }
    }

    pub fn one(&self) -> TensorElement {
        self.scalar(SkewFraction::one(self.field()))
    }

    /// `h ⊗ 1`
    pub fn scalar(&self, h: SkewFraction) -> TensorElement {
        let mut e = self.zero();
        e.coords[0] = h;
        e
    }

    /// `1 ⊗ x`
    pub fn x(&self) -> TensorElement {
        self.from_l(&self.0.l.x())
    }

    /// `1 ⊗ l`
    pub fn from_l(&self, l: &LElem) -> TensorElement {
        TensorElement {
            scenario: self.clone(),
            coords: l.coords.iter().map(CentralFn::to_fraction).collect(),
        }
    }

    /// Basis of the elements fixed by all listed group elements: the kernel
    /// of the stacked `M(g) − I` over `F(s)`, tensored with `H(t, σ)`.
    pub fn fixed_space(&self, elements: &[usize]) -> Result<Vec<TensorElement>> {
        let d = self.degree();
        let field = self.field();
        let mut rows = Vec::new();
        for &g in elements {
            let m = self.matrix(g)?;
            for (r, row) in m.iter().enumerate() {
                rows.push(
                    row.iter()
                        .enumerate()
                        .map(|(c, v)| {
                            if r == c {
                                v.sub(&CentralFn::one(field))
                            } else {
                                v.clone()
                            }
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
        let basis = if rows.is_empty() {
            (0..d)
                .map(|i| {
                    let mut v = vec![CentralFn::zero(field); d];
                    v[i] = CentralFn::one(field);
                    v
                })
                .collect()
        } else {
            linalg::kernel(&rows, d, Side::Right)
        };
        Ok(basis
            .into_iter()
            .map(|v| self.from_l(&LElem { coords: v }))
            .collect())
    }

    /// The table `z_{k,j}` with `Σ h_m ⊗ z_m = Σ (e_j tᵏ) ⊗ z_{k,j}`.
    pub fn canonical_decomposition(
        &self,
        terms: &[(SkewFraction, TwistedSeries)],
    ) -> Result<Decomposition> {
        canonical_decomposition(self.field(), terms)
    }
}

fn mat_mul(a: &[Vec<CentralFn>], b: &[Vec<CentralFn>]) -> Vec<Vec<CentralFn>> {
    let n = a.len();
    let field = a[0][0].field().clone();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(CentralFn::zero(&field), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.add(&a[i][k].mul(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// `a_0 + a_1 x + … + a_{d−1} x^{d−1}` with `a_i ∈ H(t, σ)`.
#[derive(Clone)]
pub struct TensorElement {
    scenario: ExtensionScenario,
    coords: Vec<SkewFraction>,
}

impl TensorElement {
    pub fn scenario(&self) -> &ExtensionScenario {
        &self.scenario
    }

    pub fn coords(&self) -> &[SkewFraction] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(SkewFraction::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !self.scenario.same(&other.scenario) {
            return Err(Error::MixedScenarios);
        }
        Ok(())
    }

    fn with(&self, coords: Vec<SkewFraction>) -> Self {
        Self {
            scenario: self.scenario.clone(),
            coords,
        }
    }

    /// Coordinate-wise equality through [`SkewFraction::equals`].
    pub fn equals(&self, other: &Self) -> bool {
        self.scenario.same(&other.scenario)
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a.equals(b))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> Self {
        self.with(self.coords.iter().map(SkewFraction::neg).collect())
    }

    /// Left multiplication by a scalar of `H(t, σ)`.
    pub fn left_scale(&self, h: &SkewFraction) -> Self {
        self.with(self.coords.iter().map(|a| h * a).collect())
    }

    /// Convolution in `x` (central), then reduction by `x^d = −Σ f_k x^k`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let data = &self.scenario.0;
        let field = &data.field;
        let d = self.coords.len();
        let mut c = vec![SkewFraction::zero(field); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] = &c[i + j] + &(a * b);
                }
            }
        }
        let f = data.l.modulus();
        while c.len() > d {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let base = c.len() - d;
            for (k, fk) in f.iter().enumerate().take(d) {
                if fk.is_zero() {
                    continue;
                }
                let term = top.mul_central(&fk.num().to_skew(), &fk.den().to_skew())?;
                c[base + k] = &c[base + k] - &term;
            }
        }
        Ok(self.with(c))
    }

    /// Solves `b·N = e_0`, where row `j` of `N` holds the coordinates of
    /// `a·x^j`. Since `x` is central this gives `b·a = 1`; callers that need
    /// a certificate check both products.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.coords.len();
        let x = self.scenario.x();
        let mut rows = Vec::with_capacity(d);
        let mut p = self.clone();
        for _ in 0..d {
            rows.push(p.coords.clone());
            p = p.mul(&x)?;
        }
        let one = self.scenario.one();
        let b = linalg::solve(&rows, &one.coords, Side::Left).ok_or(Error::SingularElement)?;
        Ok(self.with(b))
    }

    /// `Ψ(g)`: coordinates become `Σ_m a_m·M_g[k][m]`; the `H(t, σ)`
    /// coordinates are untouched as left scalars.
    pub fn galois_apply(&self, g: usize) -> Result<Self> {
        let m = self.scenario.matrix(g)?;
        let field = self.scenario.field();
        let d = self.coords.len();
        let coords = (0..d)
            .map(|k| {
                (0..d).fold(SkewFraction::zero(field), |acc, j| {
                    let e = &m[k][j];
                    if e.is_zero() || self.coords[j].is_zero() {
                        return acc;
                    }
                    let term = self.coords[j]
                        .mul_central(&e.num().to_skew(), &e.den().to_skew())
                        .expect("nonzero denominator");
                    &acc + &term
                })
            })
            .collect();
        Ok(self.with(coords))
    }

    /// `τ(a) = Σ embed(a_i)·ρⁱ` modulo `t^precision`.
    pub fn tau(&self, precision: i64) -> Result<TwistedSeries> {
        let data = &self.scenario.0;
        let mut acc = TwistedSeries::zero(&data.field, precision);
        for (a, rp) in self.coords.iter().zip(&data.rho_powers) {
            if a.is_zero() {
                continue;
            }
            let term = &TwistedSeries::embed(a, precision) * rp;
            if term.precision() < precision {
                return Err(Error::InsufficientPrecision {
                    needed: precision,
                    available: term.precision(),
                });
            }
            acc = &acc + &term;
        }
        Ok(acc.truncate(precision))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Result of [`ExtensionScenario::canonical_decomposition`].
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// `table[k][j] = z_{k,j}` for `0 ≤ k < n` and the `h`-basis index `j`.
    pub table: Vec<Vec<TwistedSeries>>,
    /// `Σ h_m·z_m`
    pub lhs: TwistedSeries,
    /// `Σ e_j·tᵏ·z_{k,j}`
    pub rhs: TwistedSeries,
}

impl Decomposition {
    pub fn verified(&self) -> bool {
        self.lhs.agrees_with(&self.rhs)
    }

    pub fn all_zero(&self) -> bool {
        self.table.iter().flatten().all(TwistedSeries::is_zero)
    }
}

/// Writes every coefficient `a` of `h_m` at `t^{ln+k}` as `Σ λ_j e_j`
/// (`λ_j ∈ F`), which contributes `λ_j sˡ` to `P_{k,j,m}`; then
/// `z_{k,j} = Σ_m P_{k,j,m}(tⁿ)·z_m`.
pub fn canonical_decomposition(
    field: &GroundField,
    terms: &[(SkewFraction, TwistedSeries)],
) -> Result<Decomposition> {
    let n = field.order();
    let basis = field.h_basis();
    let nb = basis.len();
    let precision = terms
        .iter()
        .map(|(_, z)| z.precision())
        .min()
        .unwrap_or(crate::DEFAULT_PRECISION);
    let zero = TwistedSeries::zero(field, precision);
    let mut table = vec![vec![zero.clone(); nb]; n];
    let mut lhs = zero.clone();
    for (h, z) in terms {
        let h = h.as_polynomial().ok_or(Error::NotPolynomial)?;
        if !z.is_invariant() || (!z.is_zero() && z.valuation() < 0) {
            return Err(Error::NotInvariantSeries);
        }
        lhs = &lhs + &(&TwistedSeries::from_polynomial(h, precision) * z);
        // P_{k,j}(s) as coefficient lists in s
        let mut p = vec![vec![Vec::new(); nb]; n];
        for (e, a) in h.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (l, k) = (e / n, e % n);
            for (j, lambda) in field.decompose(a).into_iter().enumerate() {
                if lambda.is_zero() {
                    continue;
                }
                let v = &mut p[k][j];
                if v.len() <= l {
                    v.resize(l + 1, field.zero());
                }
                v[l] = lambda;
            }
        }
        for k in 0..n {
            for j in 0..nb {
                if p[k][j].is_empty() {
                    continue;
                }
                let poly = CentralPoly::new(field, core::mem::take(&mut p[k][j])).to_skew();
                let contribution = &TwistedSeries::from_polynomial(&poly, precision) * z;
                table[k][j] = &table[k][j] + &contribution;
            }
        }
    }
    let mut rhs = zero;
    for (k, row) in table.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let ejtk = SkewPolynomial::monomial(basis[j].clone(), k);
            rhs = &rhs + &(&TwistedSeries::from_polynomial(&ejtk, precision) * z);
        }
    }
    Ok(Decomposition {
        table: table
            .into_iter()
            .map(|row| row.into_iter().map(|z| z.truncate(precision)).collect())
            .collect(),
        lhs: lhs.truncate(precision),
        rhs: rhs.truncate(precision),
    })
}

/// Finds `g ∈ L` with `g(ρ) = target` by solving
/// `q·target − Σ_k p_k·ρᵏ ≡ 0 mod s^M` for polynomials `q`, `p_k` over `F`
/// of degree `≤ D`, for `D = 0, 1, …, max_degree`. Each candidate
/// `Σ (p_k/q) xᵏ` is accepted only if `accept` confirms it exactly.
pub fn match_series<A>(
    l: &LField,
    rho_at: &dyn Fn(i64) -> Result<TwistedSeries>,
    target_at: &dyn Fn(i64) -> Result<TwistedSeries>,
    max_degree: usize,
    accept: A,
) -> Result<LElem>
where
    A: Fn(&LElem) -> bool,
{
    let field = l.field().clone();
    let n = field.order() as i64;
    let d = l.degree();
    for deg in 0..=max_degree {
        let unknowns = (d + 1) * (deg + 1);
        let m = unknowns + 12;
        let prec = n * m as i64;
        let rho = rho_at(prec)?;
        let target = target_at(prec)?;
        if rho.valuation() < 0 || target.valuation() < 0 {
            return Err(Error::NotInvariantSeries);
        }
        // s-coefficients of target and of ρ^k
        let s_coeffs = |z: &TwistedSeries| -> Vec<GroundElement> {
            (0..m)
                .map(|e| z.coeff(e as i64 * n).unwrap_or_else(|| field.zero()))
                .collect()
        };
        let mut series = vec![s_coeffs(&target)];
        let mut p = TwistedSeries::one(&field, prec);
        for _ in 0..d {
            series.push(s_coeffs(&p));
            p = &p * &rho;
        }
        // columns: q_0..q_D, then p_{k,0..D}; the row for s^e sums
        // unknown_l · series_{e−l}
        let mut rows = vec![vec![field.zero(); unknowns]; m];
        for (block, z) in series.iter().enumerate() {
            for l in 0..=deg {
                let col = block * (deg + 1) + l;
                for e in l..m {
                    let v = &z[e - l];
                    rows[e][col] = if block == 0 { v.clone() } else { -v };
                }
            }
        }
        for v in linalg::kernel(&rows, unknowns, Side::Right) {
            let poly = |block: usize| CentralPoly::new(&field, v[block * (deg + 1)..(block + 1) * (deg + 1)].to_vec());
            let q = poly(0);
            if q.is_zero() {
                continue;
            }
            let coords: Result<Vec<CentralFn>> = (0..d).map(|k| CentralFn::new(poly(k + 1), q.clone())).collect();
            let candidate = LElem { coords: coords? };
            if accept(&candidate) {
                return Ok(candidate);
            }
        }
    }
    Err(Error::ScenarioInvalid {
        check: "series-match",
        detail: format!("no rational expression of degree <= {max_degree} matches the target root"),
    })
}

/// Derives the image of `x` for the automorphism sending `ρ` (lifted from
/// `seed`) to the root lifted from `image_seed`, verified exactly as a root
/// of `f`.
pub fn derive_generator_image(
    l: &LField,
    seed: &GroundElement,
    image_seed: &GroundElement,
    max_degree: usize,
) -> Result<LElem> {
    let f: Vec<SkewFraction> = l.modulus().iter().map(CentralFn::to_fraction).collect();
    let rho_at = |p: i64| newton_root(&f, seed, p).map(|r| r.root);
    let target_at = |p: i64| newton_root(&f, image_seed, p).map(|r| r.root);
    match_series(l, &rho_at, &target_at, max_degree, |g| l.is_zero(&l.eval_modulus(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamilton_quadratic() -> ExtensionScenario {
        let h = GroundField::hamilton();
        let f = vec![
            CentralFn::from_poly(CentralPoly::from_ints(&h, &[-1, -1])),
            CentralFn::zero(&h),
            CentralFn::one(&h),
        ];
        let neg_x = vec![CentralFn::zero(&h), CentralFn::from_int(&h, -1)];
        ExtensionScenario::new(ScenarioDescription {
            name: "hq".into(),
            field: h.clone(),
            f,
            seed: h.one(),
            precision: 32,
            rho: None,
            generators: vec![GeneratorSpec {
                name: "a".into(),
                image: neg_x,
                element: "a".into(),
            }],
            group: FiniteGroup::cyclic(2, "a"),
        })
        .unwrap()
    }

    #[test]
    fn products_and_inverses_in_the_quaternion_scenario() {
        let sc = hamilton_quadratic();
        let h = sc.field().clone();
        let j = SkewFraction::constant(h.quaternion_unit(2).unwrap());
        let x = sc.x();
        let xpj = x.add(&sc.scalar(j.clone())).unwrap();
        let xmj = x.sub(&sc.scalar(j)).unwrap();
        let prod = xpj.mul(&xmj).unwrap();
        let t_plus_2 = &SkewFraction::t(&h) + &SkewFraction::constant(h.from_int(2));
        assert!(prod.equals(&sc.scalar(t_plus_2.clone())));
        let xinv = x.inv().unwrap();
        assert!(xinv.coords()[0].is_zero());
        let one_plus_t = &SkewFraction::one(&h) + &SkewFraction::t(&h);
        assert!(xinv.coords()[1].equals(&one_plus_t.inv().unwrap()));
        let inv = xpj.inv().unwrap();
        assert!(inv.equals(&xmj.left_scale(&t_plus_2.inv().unwrap())));

        let one_plus_t_scalar = sc.scalar(one_plus_t.clone());
        assert!(x.mul(&x).unwrap().equals(&one_plus_t_scalar));
        assert!(xpj.mul(&sc.one()).unwrap().equals(&xpj));
        let scalar_inv = one_plus_t_scalar.inv().unwrap();
        assert!(scalar_inv.equals(&sc.scalar(one_plus_t.inv().unwrap())));
        assert!(matches!(sc.zero().inv(), Err(Error::DivisionByZero)));
        let other = hamilton_quadratic();
        assert!(matches!(x.mul(&other.x()), Err(Error::MixedScenarios)));
    }

    #[test]
    fn galois_action_and_fixed_space() {
        let sc = hamilton_quadratic();
        let a = sc.generator("a").unwrap();
        let x = sc.x();
        assert!(x.galois_apply(a).unwrap().equals(&x.neg()));
        assert!(x.galois_apply(sc.group().identity()).unwrap().equals(&x));
        let fixed = sc.fixed_space(&[a]).unwrap();
        assert_eq!(fixed.len(), 1);
        assert!(fixed[0].equals(&sc.one()));
        assert_eq!(sc.fixed_space(&[sc.group().identity()]).unwrap().len(), 2);
        assert!(matches!(x.galois_apply(7), Err(Error::UnknownGroupElement(_))));
    }

    #[test]
    fn tau_of_x_is_rho() {
        let sc = hamilton_quadratic();
        let tx = sc.x().tau(16).unwrap();
        assert!(tx.agrees_with(sc.rho()));
        assert!(sc.one().tau(16).unwrap().agrees_with(&TwistedSeries::one(sc.field(), 16)));
        assert!(matches!(
            sc.x().tau(40),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn derived_image_for_the_square_root() {
        let sc = hamilton_quadratic();
        let h = sc.field();
        let img = derive_generator_image(sc.l(), &h.one(), &h.from_int(-1), 4).unwrap();
        assert_eq!(img, *sc.image(sc.generator("a").unwrap()).unwrap());
    }

    #[test]
    fn decomposition_reads_off_basis_slots() {
        let f = GroundField::gaussian_conjugation();
        let i = f.generator();
        let z = TwistedSeries::new(&f, 0, vec![f.one(), f.zero(), f.from_int(3)], 12);
        let h = SkewFraction::from_poly(SkewPolynomial::monomial(i, 1));
        let dec = canonical_decomposition(&f, &[(h, z.clone())]).unwrap();
        assert!(dec.verified());
        assert!(dec.table[1][1].agrees_with(&z));
        assert!(dec.table[0][0].is_zero() && dec.table[0][1].is_zero() && dec.table[1][0].is_zero());
        let not_poly = SkewFraction::t(&f).inv().unwrap();
        assert!(matches!(
            canonical_decomposition(&f, &[(not_poly, z.clone())]),
            Err(Error::NotPolynomial)
        ));
        let odd = TwistedSeries::monomial(f.one(), 1, 12);
        assert!(matches!(
            canonical_decomposition(&f, &[(SkewFraction::one(&f), odd)]),
            Err(Error::NotInvariantSeries)
        ));
    }
}
