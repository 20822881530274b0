//! Built-in scenarios and towers.
//!
//! * `T1`: Hamilton quaternions over `ℚ`, `σ = id`, levels `ℚ(s)(√a)` and
//!   `ℚ(s)(√a, √b)` with `a = 1 + s`, `b = 1 + s²`.
//! * `T2`: `ℚ(i)` with conjugation (`s = t²`), a trivial base level and the
//!   same two extensions.
//! * `T3`: `ℚ`, a trivial base level and the cyclic cubic
//!   `s·x³ − x² + (1 − 3s)·x + s`, made monic, with `x ↦ 1/(1 − x)`.
//!
//! Biquadratic levels use the primitive element `√a + 2√b`; their generator
//! images are derived by series matching and then verified like any input.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::central::{CentralFn, CentralPoly, LField};
use crate::error::{Error, Result};
use crate::extend::{derive_generator_image, ExtensionScenario, GeneratorSpec, ScenarioDescription};
use crate::ground::GroundField;
use crate::group::{FiniteGroup, GroupSystem};
use crate::tower::{TowerDescription, TowerScenario};
use crate::DEFAULT_PRECISION;

pub const TOWERS: [&str; 3] = ["T1", "T2", "T3"];

pub const SCENARIOS: [&str; 5] = [
    "hq-quadratic",
    "qi-quadratic",
    "q-shanks-cubic",
    "hq-biquadratic",
    "qi-biquadratic",
];

/// The scenarios exercised by the random inversion and Galois suites.
pub const QUADRATIC_AND_CUBIC: [&str; 3] = ["hq-quadratic", "qi-quadratic", "q-shanks-cubic"];

const IMAGE_SEARCH_DEGREE: usize = 8;

fn strings(words: &[&[&str]]) -> Vec<Vec<String>> {
    words
        .iter()
        .map(|w| w.iter().map(|s| String::from(*s)).collect())
        .collect()
}

fn poly(field: &GroundField, c: &[i64]) -> CentralFn {
    CentralFn::from_poly(CentralPoly::from_ints(field, c))
}

fn trivial(field: &GroundField, name: &str) -> ScenarioDescription {
    ScenarioDescription {
        name: name.into(),
        field: field.clone(),
        f: vec![CentralFn::zero(field), CentralFn::one(field)],
        seed: field.zero(),
        precision: DEFAULT_PRECISION,
        rho: None,
        generators: Vec::new(),
        group: FiniteGroup::trivial(),
    }
}

/// `x² − (1 + s)`
fn quadratic(field: &GroundField, name: &str) -> ScenarioDescription {
    ScenarioDescription {
        name: name.into(),
        field: field.clone(),
        f: vec![poly(field, &[-1, -1]), CentralFn::zero(field), CentralFn::one(field)],
        seed: field.one(),
        precision: DEFAULT_PRECISION,
        rho: None,
        generators: vec![GeneratorSpec {
            name: "a".into(),
            image: vec![CentralFn::zero(field), CentralFn::from_int(field, -1)],
            element: "a".into(),
        }],
        group: FiniteGroup::cyclic(2, "a"),
    }
}

/// Minimal polynomial of `√a + 2√b`:
/// `x⁴ − 2(a + 4b)x² + (a − 4b)²` with `a = 1 + s`, `b = 1 + s²`.
fn biquadratic(field: &GroundField, name: &str) -> Result<ScenarioDescription> {
    let a_minus_4b = CentralPoly::from_ints(field, &[-3, 1, -4]);
    let f = vec![
        CentralFn::from_poly(a_minus_4b.mul(&a_minus_4b)),
        CentralFn::zero(field),
        poly(field, &[-10, -2, -8]),
        CentralFn::zero(field),
        CentralFn::one(field),
    ];
    let l = LField::new(field, f.clone())?;
    // residual roots ±1 ± 2 flip the sign of √a or of √b
    let seed = field.from_int(3);
    let flip_a = derive_generator_image(&l, &seed, &field.from_int(1), IMAGE_SEARCH_DEGREE)?;
    let flip_b = derive_generator_image(&l, &seed, &field.from_int(-1), IMAGE_SEARCH_DEGREE)?;
    Ok(ScenarioDescription {
        name: name.into(),
        field: field.clone(),
        f,
        seed,
        precision: DEFAULT_PRECISION,
        rho: None,
        generators: vec![
            GeneratorSpec {
                name: "a".into(),
                image: flip_a.coords,
                element: "a".into(),
            },
            GeneratorSpec {
                name: "b".into(),
                image: flip_b.coords,
                element: "b".into(),
            },
        ],
        group: FiniteGroup::cyclic(2, "a").product(&FiniteGroup::cyclic(2, "b")),
    })
}

/// `x³ − s⁻¹x² + (s⁻¹ − 3)x + 1`; the generator sends the root lifted from
/// 0 to the one lifted from 1, which is `x ↦ 1/(1 − x)`.
fn shanks(name: &str) -> Result<ScenarioDescription> {
    let q = GroundField::rationals();
    let inv_s = CentralFn::s(&q).inv()?;
    let f = vec![
        CentralFn::one(&q),
        inv_s.sub(&CentralFn::from_int(&q, 3)),
        inv_s.neg(),
        CentralFn::one(&q),
    ];
    let l = LField::new(&q, f.clone())?;
    let image = derive_generator_image(&l, &q.zero(), &q.one(), IMAGE_SEARCH_DEGREE)?;
    Ok(ScenarioDescription {
        name: name.into(),
        field: q.clone(),
        f,
        seed: q.zero(),
        precision: DEFAULT_PRECISION,
        rho: None,
        generators: vec![GeneratorSpec {
            name: "g".into(),
            image: image.coords,
            element: "g".into(),
        }],
        group: FiniteGroup::cyclic(3, "g"),
    })
}

pub fn scenario(name: &str) -> Result<ScenarioDescription> {
    let hq = GroundField::hamilton;
    let qi = GroundField::gaussian_conjugation;
    match name {
        "hq-quadratic" => Ok(quadratic(&hq(), name)),
        "qi-quadratic" => Ok(quadratic(&qi(), name)),
        "q-shanks-cubic" => shanks(name),
        "hq-biquadratic" => biquadratic(&hq(), name),
        "qi-biquadratic" => biquadratic(&qi(), name),
        _ => Err(Error::UnknownCatalogEntry(name.into())),
    }
}

pub fn extension(name: &str) -> Result<ExtensionScenario> {
    ExtensionScenario::new(scenario(name)?)
}

fn z2_z2_system(with_base: bool) -> Result<GroupSystem> {
    let z2 = FiniteGroup::cyclic(2, "a");
    let v4 = z2.product(&FiniteGroup::cyclic(2, "b"));
    // (a, b) has index 2a + b; the projection keeps a
    let project: Vec<usize> = (0..4).map(|k| k / 2).collect();
    if with_base {
        GroupSystem::new(vec![FiniteGroup::trivial(), z2, v4], vec![vec![0, 0], project])
    } else {
        GroupSystem::new(vec![z2, v4], vec![project])
    }
}

pub fn tower(name: &str) -> Result<TowerDescription> {
    let z2_words: &[&[&str]] = &[&[], &["a"]];
    let v4_words: &[&[&str]] = &[&[], &["b"], &["a"], &["a", "b"]];
    match name {
        "T1" => {
            let h = GroundField::hamilton();
            Ok(TowerDescription {
                name: name.into(),
                field: h.clone(),
                levels: vec![quadratic(&h, "hq-quadratic"), biquadratic(&h, "hq-biquadratic")?],
                system: z2_z2_system(false)?,
                eps: vec![strings(z2_words), strings(v4_words)],
            })
        }
        "T2" => {
            let qi = GroundField::gaussian_conjugation();
            Ok(TowerDescription {
                name: name.into(),
                field: qi.clone(),
                levels: vec![
                    trivial(&qi, "qi-base"),
                    quadratic(&qi, "qi-quadratic"),
                    biquadratic(&qi, "qi-biquadratic")?,
                ],
                system: z2_z2_system(true)?,
                eps: vec![strings(&[&[]]), strings(z2_words), strings(v4_words)],
            })
        }
        "T3" => {
            let q = GroundField::rationals();
            let z3 = FiniteGroup::cyclic(3, "g");
            Ok(TowerDescription {
                name: name.into(),
                field: q.clone(),
                levels: vec![trivial(&q, "q-base"), shanks("q-shanks-cubic")?],
                system: GroupSystem::new(vec![FiniteGroup::trivial(), z3], vec![vec![0, 0, 0]])?,
                eps: vec![strings(&[&[]]), strings(&[&[], &["g"], &["g", "g"]])],
            })
        }
        _ => Err(Error::UnknownCatalogEntry(name.into())),
    }
}

pub fn tower_scenario(name: &str) -> Result<TowerScenario> {
    TowerScenario::new(tower(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_scenario_validates() {
        for name in SCENARIOS {
            let sc = extension(name).unwrap();
            assert_eq!(sc.degree(), sc.group().order(), "{name}");
        }
        assert!(matches!(extension("nope"), Err(Error::UnknownCatalogEntry(_))));
    }

    #[test]
    fn shanks_generator_has_order_three() {
        let sc = extension("q-shanks-cubic").unwrap();
        let g = sc.generator("g").unwrap();
        let l = sc.l();
        let img = sc.image(g).unwrap();
        let twice = l.compose(img, img);
        assert_ne!(twice, l.x());
        assert_eq!(l.compose(img, &twice), l.x());
        let oracle = l.inv(&l.sub(&l.one(), &l.x())).unwrap();
        assert_eq!(*img, oracle);
    }

    #[test]
    fn biquadratic_fixed_spaces() {
        let sc = extension("hq-biquadratic").unwrap();
        let a = sc.generator("a").unwrap();
        let b = sc.generator("b").unwrap();
        assert_eq!(sc.fixed_space(&[a]).unwrap().len(), 2);
        assert_eq!(sc.fixed_space(&[b]).unwrap().len(), 2);
        let all = sc.fixed_space(&[a, b]).unwrap();
        assert_eq!(all.len(), 1);
        assert!(all[0].equals(&sc.one()));
    }

    #[test]
    fn towers_validate_with_the_expected_ledger() {
        let t1 = tower_scenario("T1").unwrap();
        t1.verify().unwrap();
        let rows: Vec<(usize, usize, bool, bool)> = t1
            .ledger()
            .iter()
            .map(|r| (r.degree, r.group_order, r.degree_matches, r.fixed_space_trivial))
            .collect();
        assert_eq!(rows, vec![(2, 2, true, true), (4, 4, true, true)]);
        for name in ["T2", "T3"] {
            let t = tower_scenario(name).unwrap();
            t.verify().unwrap();
            assert!(t.ledger().iter().all(|r| r.degree_matches && r.fixed_space_trivial));
            assert!(t.compatibility_report().iter().all(|e| e.passed));
        }
    }

    #[test]
    fn swapped_eps_is_detected() {
        let t1 = tower_scenario("T1").unwrap();
        let bad = t1.with_swapped_eps(1, 1, 2);
        assert!(bad.eps_is_isomorphism(1));
        let failed: Vec<(usize, String)> = bad
            .compatibility_report()
            .into_iter()
            .filter(|e| !e.passed)
            .map(|e| (e.level, e.element))
            .collect();
        assert_eq!(failed, vec![(1, "b".into()), (1, "a".into())]);
        assert!(matches!(
            bad.verify(),
            Err(Error::ScenarioInvalid { check: "compatibility", .. })
        ));
    }

    #[test]
    fn single_level_and_reducible_towers() {
        let q = GroundField::rationals();
        let single = TowerScenario::new(TowerDescription {
            name: "single".into(),
            field: q.clone(),
            levels: vec![trivial(&q, "base")],
            system: GroupSystem::new(vec![FiniteGroup::trivial()], vec![]).unwrap(),
            eps: vec![strings(&[&[]])],
        })
        .unwrap();
        single.verify().unwrap();
        assert!(single.compatibility_report().is_empty());
        let row = &single.ledger()[0];
        assert_eq!((row.degree, row.group_order, row.degree_matches, row.fixed_space_trivial), (1, 1, true, true));

        let mut bad = tower("T1").unwrap();
        // (x − 1 − s)(x + 1 + s)
        bad.levels[0].f[0] = CentralFn::from_poly(CentralPoly::from_ints(&bad.field, &[-1, -2, -1]));
        assert!(matches!(
            TowerScenario::new(bad),
            Err(Error::ScenarioInvalid { check: "f-irreducible", .. })
        ));
    }
}
