//! Finite towers `L_0 ⊂ L_1 ⊂ …` realizing a system of finite groups.
//!
//! Each level is an [`ExtensionScenario`]; consecutive levels are linked by
//! an embedding `L_n → L_{n+1}` found by matching `ρ_n` against powers of
//! `ρ_{n+1}` and then checked exactly. The identifications
//! `ε_n: G_n ≅ Gal(L_n)` are given as generator words.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::central::{CentralFn, LElem, LField};
use crate::error::{Error, Result};
use crate::extend::{match_series, ExtensionScenario, ScenarioDescription};
use crate::ground::GroundField;
use crate::group::GroupSystem;
use crate::laurent::{newton_root, TwistedSeries};
use crate::skewfrac::SkewFraction;

/// Largest degree tried for the coefficients of an embedding.
const EMBEDDING_SEARCH_DEGREE: usize = 12;

#[derive(Debug, Clone)]
pub struct TowerDescription {
    pub name: String,
    pub field: GroundField,
    pub levels: Vec<ScenarioDescription>,
    pub system: GroupSystem,
    /// `eps[n][g]` is a word in the level-`n` generator names realizing the
    /// system element `g`.
    pub eps: Vec<Vec<Vec<String>>>,
}

/// One row of the degree ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerRow {
    pub level: usize,
    /// Dimension over `H(t, σ)`.
    pub degree: usize,
    pub group_order: usize,
    pub degree_matches: bool,
    /// The full group fixes exactly the span of 1.
    pub fixed_space_trivial: bool,
}

/// Outcome of the compatibility relation for one `g ∈ G_{level}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityEntry {
    pub level: usize,
    pub element: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct TowerScenario {
    name: String,
    levels: Vec<ExtensionScenario>,
    system: GroupSystem,
    /// Scenario group element for each system element, per level.
    eps: Vec<Vec<usize>>,
    /// `embeddings[n]`: image of `x_n` in `L_{n+1}`.
    embeddings: Vec<LElem>,
    /// `restrictions[n][h]`: restriction of `h ∈ Gal(L_{n+1})` to `L_n`.
    restrictions: Vec<Vec<usize>>,
}

fn invalid(check: &'static str, detail: String) -> Error {
    Error::ScenarioInvalid { check, detail }
}

/// `p(g)` in `l` for `p` with coefficients in `F(s)`.
fn eval_in(l: &LField, p: &[CentralFn], g: &LElem) -> LElem {
    let mut acc = l.zero();
    for c in p.iter().rev() {
        acc = l.add(&l.mul(&acc, g), &l.constant(c.clone()));
    }
    acc
}

impl TowerScenario {
    pub fn new(desc: TowerDescription) -> Result<Self> {
        if desc.levels.len() != desc.system.depth() || desc.eps.len() != desc.levels.len() {
            return Err(invalid(
                "tower-shape",
                format!(
                    "{} levels, {} groups, {} identifications",
                    desc.levels.len(),
                    desc.system.depth(),
                    desc.eps.len()
                ),
            ));
        }
        let levels: Vec<ExtensionScenario> = desc
            .levels
            .into_iter()
            .map(ExtensionScenario::new)
            .collect::<Result<_>>()?;
        if levels.iter().any(|l| *l.field() != desc.field) {
            return Err(Error::MixedFields);
        }

        let mut eps = Vec::with_capacity(levels.len());
        for (n, (sc, words)) in levels.iter().zip(&desc.eps).enumerate() {
            let system = &desc.system.levels()[n];
            if words.len() != system.order() {
                return Err(invalid(
                    "eps-isomorphism",
                    format!("level {n}: {} words for {} elements", words.len(), system.order()),
                ));
            }
            let mut map = Vec::with_capacity(words.len());
            for word in words {
                let letters = word
                    .iter()
                    .map(|w| sc.generator(w))
                    .collect::<Result<Vec<_>>>()?;
                map.push(sc.group().word(&letters));
            }
            eps.push(map);
        }

        let mut embeddings = Vec::new();
        for n in 0..levels.len().saturating_sub(1) {
            embeddings.push(embedding(&levels[n], &levels[n + 1], n)?);
        }

        let mut restrictions = Vec::new();
        for n in 0..embeddings.len() {
            restrictions.push(restriction(&levels[n], &levels[n + 1], &embeddings[n])?);
        }

        Ok(Self {
            name: desc.name,
            levels,
            system: desc.system,
            eps,
            embeddings,
            restrictions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn levels(&self) -> &[ExtensionScenario] {
        &self.levels
    }

    pub fn system(&self) -> &GroupSystem {
        &self.system
    }

    pub fn eps(&self, level: usize) -> &[usize] {
        &self.eps[level]
    }

    pub fn embedding(&self, level: usize) -> Result<&LElem> {
        self.embeddings
            .get(level)
            .ok_or(Error::EmbeddingMissing { level })
    }

    pub fn restriction(&self, level: usize) -> &[usize] {
        &self.restrictions[level]
    }

    /// `ε_n` is a bijective homomorphism from the system group onto the
    /// scenario group.
    pub fn eps_is_isomorphism(&self, level: usize) -> bool {
        let system = &self.system.levels()[level];
        let group = self.levels[level].group();
        let map = &self.eps[level];
        let mut seen = alloc::vec![false; group.order()];
        for &g in map {
            seen[g] = true;
        }
        map.len() == group.order()
            && seen.iter().all(|s| *s)
            && system.is_homomorphism(group, map)
    }

    /// `ε_n(s_{n+1}(g))` against the restriction of `ε_{n+1}(g)` for every
    /// `n` and every `g ∈ G_{n+1}`.
    pub fn compatibility_report(&self) -> Vec<CompatibilityEntry> {
        let mut out = Vec::new();
        for n in 0..self.restrictions.len() {
            let upper = &self.system.levels()[n + 1];
            let s = self.system.epi(n);
            let res = &self.restrictions[n];
            let (eps_lo, eps_hi) = (&self.eps[n], &self.eps[n + 1]);
            let lower_group = self.levels[n].group();
            for g in 0..upper.order() {
                let (got, want) = (res[eps_hi[g]], eps_lo[s[g]]);
                out.push(CompatibilityEntry {
                    level: n + 1,
                    element: upper.name(g).into(),
                    passed: got == want,
                    detail: format!(
                        "restricts to {}, s gives {}",
                        lower_group.name(got),
                        lower_group.name(want)
                    ),
                });
            }
        }
        out
    }

    pub fn ledger(&self) -> Vec<LedgerRow> {
        self.levels
            .iter()
            .enumerate()
            .map(|(n, sc)| {
                let gens: Vec<usize> = sc.generators().iter().map(|g| g.1).collect();
                let fixed = sc.fixed_space(&gens).unwrap_or_default();
                let group_order = self.system.levels()[n].order();
                LedgerRow {
                    level: n,
                    degree: sc.degree(),
                    group_order,
                    degree_matches: sc.degree() == group_order,
                    fixed_space_trivial: fixed.len() == 1 && fixed[0].equals(&sc.one()),
                }
            })
            .collect()
    }

    /// For every `n + 2` level, restricting through the composite embedding
    /// `L_n → L_{n+2}` equals restricting in two steps. Returns the number
    /// of group elements compared.
    pub fn check_functoriality(&self) -> Result<usize> {
        let mut compared = 0;
        for n in 0..self.levels.len().saturating_sub(2) {
            let top = &self.levels[n + 2];
            let composite = top
                .l()
                .compose(&self.embeddings[n], &self.embeddings[n + 1]);
            if !top.l().is_zero(&eval_in(top.l(), self.levels[n].l().modulus(), &composite)) {
                return Err(invalid(
                    "functoriality",
                    format!("composite embedding {n} -> {} is not a root", n + 2),
                ));
            }
            let direct = restriction(&self.levels[n], top, &composite)?;
            for (h, &d) in direct.iter().enumerate() {
                let stepwise = self.restrictions[n][self.restrictions[n + 1][h]];
                if d != stepwise {
                    return Err(invalid(
                        "functoriality",
                        format!(
                            "{} restricts differently to level {n} directly and in steps",
                            top.group().name(h)
                        ),
                    ));
                }
                compared += 1;
            }
        }
        Ok(compared)
    }

    /// Every check: ε isomorphisms, compatibility at each level, and
    /// functoriality.
    pub fn verify(&self) -> Result<()> {
        for n in 0..self.levels.len() {
            if !self.eps_is_isomorphism(n) {
                return Err(invalid(
                    "eps-isomorphism",
                    format!("level {n}: eps is not an isomorphism"),
                ));
            }
        }
        let failures: Vec<String> = self
            .compatibility_report()
            .into_iter()
            .filter(|e| !e.passed)
            .map(|e| format!("level {} element {}: {}", e.level, e.element, e.detail))
            .collect();
        if !failures.is_empty() {
            return Err(invalid("compatibility", failures.join("; ")));
        }
        if let Some(row) = self
            .ledger()
            .into_iter()
            .find(|r| !r.degree_matches || !r.fixed_space_trivial)
        {
            return Err(invalid("degree-ledger", format!("level {} fails: {row:?}", row.level)));
        }
        self.check_functoriality().map(|_| ())
    }

    /// The same tower with `ε_level` altered by exchanging the images of
    /// two system elements. Used as a negative control.
    pub fn with_swapped_eps(&self, level: usize, a: usize, b: usize) -> Self {
        let mut t = self.clone();
        t.eps[level].swap(a, b);
        t
    }
}

/// Image of `x_n` in `L_{n+1}`, matched on series and checked as a root of
/// `f_n` modulo `f_{n+1}`.
fn embedding(lower: &ExtensionScenario, upper: &ExtensionScenario, level: usize) -> Result<LElem> {
    let lu = upper.l();
    let f_lo: Vec<SkewFraction> = lower.l().modulus().iter().map(CentralFn::to_fraction).collect();
    let f_hi: Vec<SkewFraction> = lu.modulus().iter().map(CentralFn::to_fraction).collect();
    let rho_at = |p: i64| -> Result<TwistedSeries> {
        newton_root(&f_hi, upper.seed(), p).map(|r| r.root)
    };
    let target_at = |p: i64| -> Result<TwistedSeries> {
        newton_root(&f_lo, lower.seed(), p).map(|r| r.root)
    };
    let accept = |e: &LElem| lu.is_zero(&eval_in(lu, lower.l().modulus(), e));
    match_series(lu, &rho_at, &target_at, EMBEDDING_SEARCH_DEGREE, accept)
        .map_err(|_| Error::EmbeddingMissing { level })
}

/// For each `h ∈ Gal(L_{n+1})`, the `k ∈ Gal(L_n)` with
/// `h(E(x_n)) = E(k(x_n))`.
fn restriction(lower: &ExtensionScenario, upper: &ExtensionScenario, e: &LElem) -> Result<Vec<usize>> {
    let lu = upper.l();
    let pulled: Vec<LElem> = (0..lower.group().order())
        .map(|k| lower.image(k).map(|img| lu.compose(img, e)))
        .collect::<Result<_>>()?;
    (0..upper.group().order())
        .map(|h| {
            let moved = lu.compose(e, upper.image(h)?);
            pulled.iter().position(|p| *p == moved).ok_or_else(|| {
                invalid(
                    "restriction",
                    format!("{} does not preserve the lower field", upper.group().name(h)),
                )
            })
        })
        .collect()
}
