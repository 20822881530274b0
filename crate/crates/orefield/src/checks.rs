//! Verification suites run by `extend`, `tower` and `verify`.
//!
//! Every randomized check draws from its own ChaCha8 stream, seeded from the
//! run seed and the check name, so results do not depend on which other
//! checks run.

use orefield_core::central::CentralPoly;
use orefield_core::random::{random_fraction, random_poly};
use orefield_core::{
    ExtensionScenario, GroundField, SkewFraction, SkewPolynomial, TensorElement, TowerScenario,
    TwistedSeries,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::CheckResult;

#[derive(Debug, Clone)]
pub struct Settings {
    pub seed: u64,
    /// Random elements inverted per scenario; see [`Settings::inversion_budget`].
    pub samples: Option<usize>,
    /// Random pairs and term lists for the series checks.
    pub series_samples: usize,
    /// Degree bound of random coordinates for inversion.
    pub max_deg: Option<usize>,
    /// Precision of the series checks.
    pub precision: i64,
    /// Requested checks; others are skipped. Empty runs everything.
    pub only: Vec<String>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: None,
            series_samples: 20,
            max_deg: None,
            precision: 48,
            only: Vec::new(),
        }
    }
}

impl Settings {
    /// Samples and coordinate degree for the division-ring check. Unless
    /// overridden: 200 elements of coordinate degree at most 4 up to degree 3,
    /// and 4 elements with constant coordinates from degree 4 on, where the
    /// power-basis inverses reach hundreds of digits per coefficient.
    pub fn inversion_budget(&self, degree: usize) -> (usize, usize) {
        let (samples, max_deg) = if degree <= 3 { (200, 4) } else { (4, 0) };
        (self.samples.unwrap_or(samples), self.max_deg.unwrap_or(max_deg))
    }

    pub fn wants(&self, name: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|r| crate::report::matches(r, name))
    }
}

fn fnv1a(text: &str) -> u64 {
    text.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

pub fn rng_for(seed: u64, check: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(check))
}

fn result(name: String, passed: bool, details: String, paper_ref: &'static str) -> CheckResult {
    CheckResult {
        name,
        passed,
        details,
        paper_ref,
    }
}

fn random_element<R: Rng>(sc: &ExtensionScenario, rng: &mut R, max_deg: usize) -> TensorElement {
    let field = sc.field();
    loop {
        let coords = (0..sc.degree()).map(|_| random_fraction(field, rng, max_deg, 3)).collect();
        let a = sc.element(coords).expect("coordinates from the scenario field");
        if !a.is_zero() {
            return a;
        }
    }
}

/// `Σ c_k sᵏ` with random coefficients in the invariant subfield.
fn random_central_poly<R: Rng>(field: &GroundField, rng: &mut R, max_deg: usize) -> CentralPoly {
    let basis = field.invariant_basis();
    let coeffs = (0..=rng.gen_range(0..=max_deg))
        .map(|_| {
            basis.iter().fold(field.zero(), |acc, b| {
                let c = rng.gen_range(-3i64..=3);
                &acc + &b.scale(&c.into())
            })
        })
        .collect();
    CentralPoly::new(field, coeffs)
}

/// A random element of `F[[s]]` as a series in `t`.
fn random_invariant_series<R: Rng>(field: &GroundField, rng: &mut R, precision: i64) -> TwistedSeries {
    let n = field.order();
    let terms = (precision as usize).div_ceil(n);
    let p = random_central_poly(field, rng, terms.saturating_sub(1));
    TwistedSeries::from_polynomial(&p.to_skew(), precision)
}

fn division_ring(sc: &ExtensionScenario, s: &Settings, name: String) -> CheckResult {
    let mut rng = rng_for(s.seed, &name);
    let one = sc.one();
    let (samples, max_deg) = s.inversion_budget(sc.degree());
    for k in 0..samples {
        let a = random_element(sc, &mut rng, max_deg);
        let ok = a.inv().and_then(|b| Ok(a.mul(&b)?.equals(&one) && b.mul(&a)?.equals(&one)));
        match ok {
            Ok(true) => {}
            Ok(false) => return result(name, false, format!("sample {k}: a·a⁻¹ ≠ 1 for a = {a}"), DIVISION_RING),
            Err(e) => return result(name, false, format!("sample {k}: {e} for a = {a}"), DIVISION_RING),
        }
    }
    result(
        name,
        true,
        format!("{samples} random nonzero elements of coordinate degree ≤ {max_deg} inverted, ab = ba = 1 exactly"),
        DIVISION_RING,
    )
}

const DIVISION_RING: &str = "M is a skew field: inverses by a linear solve over H(t, sigma)";
const GALOIS_TABLE: &str = "Psi(gh) = Psi(g)Psi(h) and Psi is injective, so Gal(M) is G";
const GALOIS_MULT: &str = "each Psi(g) is a ring automorphism of M over H(t, sigma)";
const FIXED: &str = "the elements fixed by the whole group are exactly H(t, sigma)";
const DEGREE: &str = "[M : H(t, sigma)] equals the group order";
const TAU_MULT: &str = "tau: M -> H((t, sigma)) is multiplicative";
const TAU_BASIS: &str = "tau(1) = 1 and tau(x) = rho";
const DECOMP: &str = "decomposition sum h_m z_m = sum e_j t^k z_kj and its zero test";
const VALIDATION: &str = "scenario validation";

/// `Ψ(g)∘Ψ(h) = Ψ(gh)` on the basis and `|image| = |G|`, through the
/// action on elements rather than the stored matrices.
fn galois_table(sc: &ExtensionScenario, name: String) -> CheckResult {
    let g = sc.group();
    let basis: Vec<TensorElement> = {
        let x = sc.x();
        let mut out = vec![sc.one()];
        for m in 1..sc.degree() {
            out.push(out[m - 1].mul(&x).expect("same scenario"));
        }
        out
    };
    for a in 0..g.order() {
        for b in 0..g.order() {
            let ab = g.mul(a, b);
            for (m, e) in basis.iter().enumerate() {
                let lhs = e.galois_apply(b).and_then(|v| v.galois_apply(a));
                let rhs = e.galois_apply(ab);
                match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l.equals(&r) => {}
                    _ => {
                        return result(
                            name,
                            false,
                            format!("Psi({})Psi({}) ≠ Psi({}) on x^{m}", g.name(a), g.name(b), g.name(ab)),
                            GALOIS_TABLE,
                        )
                    }
                }
            }
        }
    }
    let x = sc.x();
    let mut images: Vec<TensorElement> = Vec::new();
    for a in 0..g.order() {
        let img = x.galois_apply(a).expect("group element");
        if images.iter().any(|i| i.equals(&img)) {
            return result(name, false, format!("Psi({}) repeats an image of x", g.name(a)), GALOIS_TABLE);
        }
        images.push(img);
    }
    result(
        name,
        true,
        format!("{0}×{0} table on {1} basis elements, {0} distinct images of x", g.order(), sc.degree()),
        GALOIS_TABLE,
    )
}

fn galois_multiplicative(sc: &ExtensionScenario, s: &Settings, name: String) -> CheckResult {
    let mut rng = rng_for(s.seed, &name);
    let pairs = s.series_samples;
    for _ in 0..pairs {
        let a = random_element(sc, &mut rng, 2);
        let b = random_element(sc, &mut rng, 2);
        let ab = a.mul(&b).expect("same scenario");
        for g in 0..sc.group().order() {
            let lhs = ab.galois_apply(g).expect("group element");
            let rhs = a
                .galois_apply(g)
                .and_then(|u| u.mul(&b.galois_apply(g)?))
                .expect("group element");
            if !lhs.equals(&rhs) {
                return result(
                    name,
                    false,
                    format!("Psi({})(ab) ≠ Psi(a)Psi(b) for a = {a}, b = {b}", sc.group().name(g)),
                    GALOIS_MULT,
                );
            }
        }
    }
    result(name, true, format!("{pairs} random pairs, every group element"), GALOIS_MULT)
}

fn fixed_space(sc: &ExtensionScenario, name: String) -> CheckResult {
    let all: Vec<usize> = (0..sc.group().order()).collect();
    match sc.fixed_space(&all) {
        Ok(basis) => {
            let scalar = |e: &TensorElement| !e.coords()[0].is_zero() && e.coords()[1..].iter().all(SkewFraction::is_zero);
            let ok = basis.len() == 1 && scalar(&basis[0]);
            let shown: Vec<String> = basis.iter().map(ToString::to_string).collect();
            result(name, ok, format!("basis [{}]", shown.join(", ")), FIXED)
        }
        Err(e) => result(name, false, e.to_string(), FIXED),
    }
}

fn degree(sc: &ExtensionScenario, name: String) -> CheckResult {
    let (d, g) = (sc.degree(), sc.group().order());
    result(name, d == g, format!("d = {d}, |G| = {g}"), DEGREE)
}

fn tau_basis(sc: &ExtensionScenario, s: &Settings, name: String) -> CheckResult {
    let p = s.precision;
    let one = sc.one().tau(p);
    let x = sc.x().tau(p);
    let ok = match (&one, &x) {
        (Ok(o), Ok(x)) => o.agrees_with(&TwistedSeries::one(sc.field(), p)) && x.agrees_with(&sc.rho().truncate(p)),
        _ => false,
    };
    let details = match (one, x) {
        (Ok(_), Ok(x)) => format!("tau(x) = {x}"),
        (Err(e), _) | (_, Err(e)) => e.to_string(),
    };
    result(name, ok, details, TAU_BASIS)
}

fn tau_multiplicative(sc: &ExtensionScenario, s: &Settings, name: String) -> CheckResult {
    let mut rng = rng_for(s.seed, &name);
    let p = s.precision;
    for k in 0..s.series_samples {
        let a = random_element(sc, &mut rng, 2);
        let b = random_element(sc, &mut rng, 2);
        let run = || -> orefield_core::Result<(TwistedSeries, TwistedSeries)> {
            let lhs = a.mul(&b)?.tau(p)?;
            let rhs = a.tau(p)?.checked_mul(&b.tau(p)?)?;
            Ok((lhs, rhs))
        };
        match run() {
            Ok((l, r)) if l.agrees_with(&r) && r.precision() > 0 => {}
            Ok((_, r)) => {
                return result(
                    name,
                    false,
                    format!("sample {k}: tau(ab) ≠ tau(a)tau(b) modulo t^{}", r.precision()),
                    TAU_MULT,
                )
            }
            Err(e) => return result(name, false, format!("sample {k}: {e}"), TAU_MULT),
        }
    }
    result(
        name,
        true,
        format!("{} random pairs agree modulo t^{p} or the product precision", s.series_samples),
        TAU_MULT,
    )
}

/// Random terms must satisfy the decomposition identity; the terms
/// `(h·c, z)` and `(−h, c·z)`, whose tensor sum is zero, must give an
/// all-zero table.
fn decomposition(sc: &ExtensionScenario, s: &Settings, name: String) -> CheckResult {
    let field = sc.field();
    let mut rng = rng_for(s.seed, &name);
    let p = s.precision;
    for k in 0..s.series_samples {
        let m = rng.gen_range(1..=3);
        let mut terms = Vec::new();
        let mut cancelling = Vec::new();
        for _ in 0..m {
            let h = random_poly(field, &mut rng, 2 * field.order() + 1, 3);
            let z = random_invariant_series(field, &mut rng, p);
            let c = random_central_poly(field, &mut rng, 2).to_skew();
            if c.is_zero() {
                continue;
            }
            let cz = TwistedSeries::from_polynomial(&c, p).checked_mul(&z).expect("same field").truncate(p);
            cancelling.push((SkewFraction::from_poly(h.checked_mul(&c).expect("same field")), z.clone()));
            cancelling.push((SkewFraction::from_poly(h.neg()), cz));
            terms.push((SkewFraction::from_poly(h), z));
        }
        let d = match sc.canonical_decomposition(&terms) {
            Ok(d) => d,
            Err(e) => return result(name, false, format!("sample {k}: {e}"), DECOMP),
        };
        if !d.verified() {
            return result(name, false, format!("sample {k}: the two sides differ"), DECOMP);
        }
        if cancelling.is_empty() {
            continue;
        }
        match sc.canonical_decomposition(&cancelling) {
            Ok(z) if z.lhs.is_zero() && z.all_zero() => {}
            Ok(_) => return result(name, false, format!("sample {k}: zero tensor gave a nonzero table"), DECOMP),
            Err(e) => return result(name, false, format!("sample {k}: {e}"), DECOMP),
        }
    }
    result(
        name,
        true,
        format!("{} random term lists modulo t^{p}, identity and zero test", s.series_samples),
        DECOMP,
    )
}

/// Every check on one extension, names prefixed with `prefix`.
pub fn extension_checks(sc: &ExtensionScenario, s: &Settings, prefix: &str) -> Vec<CheckResult> {
    let name = |n: &str| format!("{prefix}{n}");
    let mut out: Vec<CheckResult> = sc
        .checks()
        .iter()
        .map(|c| result(name(&format!("validation/{}", c.name)), true, c.detail.clone(), VALIDATION))
        .collect();
    type Check = fn(&ExtensionScenario, &Settings, String) -> CheckResult;
    let all: [(&str, Check); 8] = [
        ("degree", |sc, _, n| degree(sc, n)),
        ("division-ring", division_ring),
        ("galois-table", |sc, _, n| galois_table(sc, n)),
        ("galois-multiplicative", galois_multiplicative),
        ("fixed-space", |sc, _, n| fixed_space(sc, n)),
        ("tau-basis", tau_basis),
        ("tau-multiplicative", tau_multiplicative),
        ("decomposition", decomposition),
    ];
    for (check, run) in all {
        let full = name(check);
        if s.wants(&full) {
            out.push(run(sc, s, full));
        }
    }
    out
}

const EPS: &str = "eps_n: G_n -> Gal(M_n) is an isomorphism";
const COMPAT: &str = "eps_n s_(n+1) = res eps_(n+1)";
const LEDGER: &str = "[M_n : H(t, sigma)] = |G_n| and the fixed space of G_n is H(t, sigma)";
const FUNCTOR: &str = "restrictions compose along the tower";
const NEGATIVE: &str = "a corrupted eps is detected and located";
const EMBED: &str = "L_n embeds in L_(n+1)";

/// A corruption of `ε` that the checks must catch: two elements of the top
/// group with different projections, or else the identity and another
/// element, swapped.
fn corruption(t: &TowerScenario) -> Option<(usize, usize, usize)> {
    let top = t.levels().len() - 1;
    let g = &t.system().levels()[top];
    if g.order() < 2 {
        return None;
    }
    if top > 0 {
        let s = t.system().epi(top - 1);
        for a in 1..g.order() {
            for b in a + 1..g.order() {
                if s[a] != s[b] {
                    return Some((top, a, b));
                }
            }
        }
    }
    Some((top, g.identity(), (g.identity() + 1) % g.order()))
}

fn negative_control(t: &TowerScenario) -> CheckResult {
    let name = "negative-control".to_string();
    let Some((level, a, b)) = corruption(t) else {
        return result(name, true, "no nontrivial group to corrupt".into(), NEGATIVE);
    };
    let g = &t.system().levels()[level];
    let bad = t.with_swapped_eps(level, a, b);
    let failures: Vec<String> = bad
        .compatibility_report()
        .into_iter()
        .filter(|e| !e.passed)
        .map(|e| format!("level {} element {}", e.level, e.element))
        .collect();
    let detail = |what: String| format!("swapping eps({}) and eps({}) at level {level}: {what}", g.name(a), g.name(b));
    match bad.verify() {
        Ok(()) => result(name, false, detail("not detected".into()), NEGATIVE),
        Err(_) if !failures.is_empty() => result(name, true, detail(format!("fails at {}", failures.join(", "))), NEGATIVE),
        Err(e) => result(name, true, detail(format!("rejected: {e}")), NEGATIVE),
    }
}

/// The tower checks, and with `levels` also every extension check of every
/// level.
pub fn tower_checks(t: &TowerScenario, s: &Settings, levels: bool) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (n, sc) in t.levels().iter().enumerate() {
        if levels {
            out.extend(extension_checks(sc, s, &format!("level-{n}/")));
        }
        let ok = t.eps_is_isomorphism(n);
        let words: Vec<String> = t
            .eps(n)
            .iter()
            .enumerate()
            .map(|(g, &img)| format!("{} -> {}", t.system().levels()[n].name(g), sc.group().name(img)))
            .collect();
        out.push(result(format!("eps-isomorphism/level-{n}"), ok, words.join(", "), EPS));
        if n + 1 < t.levels().len() {
            let e = t.embedding(n).expect("consecutive levels");
            let coords: Vec<String> = e.coords.iter().map(|c| c.display_in("s").to_string()).collect();
            out.push(result(
                format!("embedding/level-{n}"),
                true,
                format!("x_{n} = [{}] in the basis of level {}", coords.join(", "), n + 1),
                EMBED,
            ));
        }
    }
    for e in t.compatibility_report() {
        out.push(result(
            format!("compatibility/level-{}/{}", e.level, e.element),
            e.passed,
            e.detail,
            COMPAT,
        ));
    }
    for row in t.ledger() {
        let mark = |b: bool| if b { "yes" } else { "no" };
        out.push(result(
            format!("degree-ledger/level-{}", row.level),
            row.degree_matches && row.fixed_space_trivial,
            format!(
                "degree {}, |G| = {}, equal: {}, fixed space trivial: {}",
                row.degree,
                row.group_order,
                mark(row.degree_matches),
                mark(row.fixed_space_trivial)
            ),
            LEDGER,
        ));
    }
    out.push(match t.check_functoriality() {
        Ok(0) => result(
            "functoriality".into(),
            true,
            "fewer than three levels, no composite restriction to compare".into(),
            FUNCTOR,
        ),
        Ok(k) => result("functoriality".into(), true, format!("{k} group elements compared"), FUNCTOR),
        Err(e) => result("functoriality".into(), false, e.to_string(), FUNCTOR),
    });
    out.push(negative_control(t));
    out
}

/// For the `invert` command: `a·a⁻¹ = a⁻¹·a = 1` on fractions.
pub fn fraction_round_trip(x: &SkewFraction) -> orefield_core::Result<(SkewFraction, bool)> {
    let y = x.inv()?;
    let one = SkewFraction::one(x.field());
    let ok = x.checked_mul(&y)?.equals(&one) && y.checked_mul(x)?.equals(&one);
    Ok((y, ok))
}

/// Divides and re-checks `f = q·g + r` with `deg r < deg g`.
pub fn divmod_checked(f: &SkewPolynomial, g: &SkewPolynomial) -> orefield_core::Result<(SkewPolynomial, SkewPolynomial, bool)> {
    let (q, r) = f.divmod_right(g)?;
    let back = q.checked_mul(g)?.checked_add(&r)?;
    let ok = back == *f && (r.is_zero() || r.degree() < g.degree());
    Ok((q, r, ok))
}
