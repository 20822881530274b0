//! Scenario files: a TOML document describing a ground field and either one
//! extension level or a tower of them. Unknown keys are rejected before any
//! computation. [`render`] writes the annotated form shipped in
//! `scenarios/`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use orefield_core::catalog;
use orefield_core::extend::GeneratorSpec;
use orefield_core::{
    CentralFn, ExtensionScenario, FieldDescriptor, FieldKind, FiniteGroup, GroundElement, GroundField,
    GroupSystem, ScenarioDescription, TowerDescription, TowerScenario, TwistedSeries, Q,
};
use serde::{Deserialize, Serialize};

use crate::expr::{self, Context, EvalError, ExprError, Value};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FileKind {
    Extension,
    Tower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKindFile {
    Rationals,
    NumberField,
    Quaternions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub kind: FileKind,
    pub name: String,
    /// Check names to run; empty runs every check.
    #[serde(default)]
    pub checks: Vec<String>,
    pub field: FieldFile,
    #[serde(rename = "level")]
    pub levels: Vec<LevelFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub kind: FieldKindFile,
    /// Monic integer polynomial of the center, ascending.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    /// Image of the generator under `σ`, in the power basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelFile {
    pub name: String,
    /// Coefficients of `f` in `x`, ascending, as expressions in `s`.
    pub f: Vec<String>,
    pub seed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    /// An explicit root series replacing the Newton lift.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    pub group: GroupFile,
    #[serde(default)]
    pub generators: Vec<GeneratorFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub name: String,
    pub element: String,
    /// Coordinates of the image of `x` in `1, x, …`, as expressions in `s`.
    pub image: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    /// `s_n` as images of the element indices; absent on the first level.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection: Option<Vec<usize>>,
    /// A generator word for every element.
    pub eps: Vec<Vec<String>>,
}

/// A validated scenario of either kind.
#[derive(Debug, Clone)]
pub enum Loaded {
    Extension(ExtensionScenario),
    Tower(TowerScenario),
}

impl Loaded {
    pub fn name(&self) -> &str {
        match self {
            Loaded::Extension(s) => s.name(),
            Loaded::Tower(t) => t.name(),
        }
    }

    pub fn field(&self) -> &GroundField {
        match self {
            Loaded::Extension(s) => s.field(),
            Loaded::Tower(t) => t.levels()[0].field(),
        }
    }

    /// The extension supplying `x` in expressions: the scenario itself, or
    /// the top of a tower.
    pub fn top(&self) -> &ExtensionScenario {
        match self {
            Loaded::Extension(s) => s,
            Loaded::Tower(t) => t.levels().last().expect("towers are nonempty"),
        }
    }
}

pub fn parse_rational(text: &str) -> Option<Q> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (text.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (d != BigInt::from(0)).then(|| Q::new(n, d))
}

fn rationals(at: &str, items: &[String]) -> Result<Vec<Q>, CliError> {
    items
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| CliError::validation(format!("{at}: '{s}' is not a rational number"))))
        .collect()
}

fn expr_error(at: &str, e: ExprError) -> CliError {
    match e {
        ExprError::Syntax(e) => CliError::parse(format!("{at}: {e}")),
        ExprError::Eval(e @ EvalError::Unknown { .. }) => CliError::parse(format!("{at}: {e}")),
        ExprError::Eval(e) => CliError::validation(format!("{at}: {e}")),
    }
}

pub fn field_from_file(file: &FieldFile) -> Result<GroundField, CliError> {
    let required = |v: &Option<Vec<String>>, key: &str| {
        v.clone()
            .ok_or_else(|| CliError::validation(format!("field: '{key}' is required for this kind")))
    };
    let number_field = |f: &FieldFile| -> Result<FieldDescriptor, CliError> {
        let modulus = f.modulus.clone().unwrap_or_default();
        let generator = f.generator.clone().unwrap_or_default();
        let sigma = rationals("field.sigma", &required(&f.sigma, "sigma")?)?;
        Ok(FieldDescriptor::number_field(&modulus, &generator, sigma))
    };
    let descriptor = match file.kind {
        FieldKindFile::Rationals => {
            if file.modulus.is_some() || file.sigma.is_some() || file.alpha.is_some() || file.beta.is_some() {
                return Err(CliError::validation("field: rationals take no further keys".into()));
            }
            FieldDescriptor::rationals()
        }
        FieldKindFile::NumberField => {
            if file.alpha.is_some() || file.beta.is_some() {
                return Err(CliError::validation("field: alpha and beta belong to quaternions".into()));
            }
            if file.modulus.is_none() {
                return Err(CliError::validation("field: 'modulus' is required for this kind".into()));
            }
            number_field(file)?
        }
        FieldKindFile::Quaternions => {
            let base = if file.modulus.is_some() {
                number_field(file)?
            } else {
                FieldDescriptor::rationals()
            };
            let alpha = rationals("field.alpha", &required(&file.alpha, "alpha")?)?;
            let beta = rationals("field.beta", &required(&file.beta, "beta")?)?;
            FieldDescriptor::quaternions(base, alpha, beta)
        }
    };
    GroundField::new(descriptor).map_err(|e| CliError::validation(format!("field: {e}")))
}

fn central(at: &str, text: &str, ctx: &Context) -> Result<CentralFn, CliError> {
    let v = expr::evaluate(text, ctx).map_err(|e| expr_error(at, e))?;
    let x = v
        .as_fraction()
        .ok_or_else(|| CliError::validation(format!("{at}: expected a rational function in s")))?;
    CentralFn::from_fraction(&x).map_err(|e| CliError::validation(format!("{at}: '{text}' is not central ({e})")))
}

fn ground(at: &str, text: &str, ctx: &Context) -> Result<GroundElement, CliError> {
    expr::evaluate(text, ctx)
        .map_err(|e| expr_error(at, e))?
        .as_ground()
        .ok_or_else(|| CliError::validation(format!("{at}: expected a ground element")))
}

fn group(at: &str, g: &GroupFile) -> Result<FiniteGroup, CliError> {
    FiniteGroup::new(g.names.clone(), g.table.clone()).map_err(|e| CliError::validation(format!("{at}: {e}")))
}

fn level_description(n: usize, level: &LevelFile, field: &GroundField) -> Result<ScenarioDescription, CliError> {
    let at = |key: &str| format!("level {n} ({}) {key}", level.name);
    let ctx = Context::new(field.clone());
    let f = level
        .f
        .iter()
        .enumerate()
        .map(|(k, c)| central(&at(&format!("f[{k}]")), c, &ctx))
        .collect::<Result<Vec<_>, _>>()?;
    let rho = match &level.rho {
        None => None,
        Some(text) => match expr::evaluate(text, &ctx).map_err(|e| expr_error(&at("rho"), e))? {
            Value::Series(s) => Some(s),
            v => Some(TwistedSeries::embed(
                &v.as_fraction()
                    .ok_or_else(|| CliError::validation(format!("{}: expected a series", at("rho"))))?,
                level.precision.unwrap_or(orefield_core::DEFAULT_PRECISION),
            )),
        },
    };
    let generators = level
        .generators
        .iter()
        .map(|g| {
            let image = g
                .image
                .iter()
                .enumerate()
                .map(|(k, c)| central(&at(&format!("generator {} image[{k}]", g.name)), c, &ctx))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(GeneratorSpec {
                name: g.name.clone(),
                image,
                element: g.element.clone(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ScenarioDescription {
        name: level.name.clone(),
        field: field.clone(),
        f,
        seed: ground(&at("seed"), &level.seed, &ctx)?,
        precision: level.precision.unwrap_or(orefield_core::DEFAULT_PRECISION),
        rho,
        generators,
        group: group(&at("group"), &level.group)?,
    })
}

fn core_error(e: orefield_core::Error) -> CliError {
    CliError::validation(e.to_string())
}

/// Checks the document shape and builds the validated scenario.
pub fn load(file: &ScenarioFile) -> Result<Loaded, CliError> {
    let field = field_from_file(&file.field)?;
    if file.levels.is_empty() {
        return Err(CliError::validation("at least one [[level]] is required".into()));
    }
    let descriptions = file
        .levels
        .iter()
        .enumerate()
        .map(|(n, l)| level_description(n, l, &field))
        .collect::<Result<Vec<_>, _>>()?;
    match file.kind {
        FileKind::Extension => {
            if file.levels.len() != 1 || file.levels[0].system.is_some() {
                return Err(CliError::validation(
                    "an extension file has exactly one [[level]] and no [level.system]".into(),
                ));
            }
            let desc = descriptions.into_iter().next().expect("one level");
            Ok(Loaded::Extension(ExtensionScenario::new(desc).map_err(core_error)?))
        }
        FileKind::Tower => {
            let mut groups = Vec::new();
            let mut epis = Vec::new();
            let mut eps = Vec::new();
            for (n, level) in file.levels.iter().enumerate() {
                let system = level
                    .system
                    .as_ref()
                    .ok_or_else(|| CliError::validation(format!("level {n}: [level.system] is required in a tower")))?;
                groups.push(
                    FiniteGroup::new(system.names.clone(), system.table.clone())
                        .map_err(|e| CliError::validation(format!("level {n} system: {e}")))?,
                );
                match (n, &system.projection) {
                    (0, None) => {}
                    (0, Some(_)) => {
                        return Err(CliError::validation("level 0: the first level has no projection".into()))
                    }
                    (_, Some(p)) => epis.push(p.clone()),
                    (_, None) => return Err(CliError::validation(format!("level {n}: 'projection' is required"))),
                }
                eps.push(system.eps.clone());
            }
            let system = GroupSystem::new(groups, epis).map_err(core_error)?;
            let desc = TowerDescription {
                name: file.name.clone(),
                field,
                levels: descriptions,
                system,
                eps,
            };
            Ok(Loaded::Tower(TowerScenario::new(desc).map_err(core_error)?))
        }
    }
}

/// Parses the document: TOML syntax errors are parse failures, schema
/// violations (unknown or missing keys) validation failures.
pub fn parse_file(text: &str) -> Result<ScenarioFile, CliError> {
    let value: toml::Table = toml::from_str(text).map_err(|e| CliError::parse(format!("scenario file: {e}")))?;
    ScenarioFile::deserialize(value).map_err(|e| CliError::validation(format!("scenario file: {e}")))
}

fn ground_text(g: &GroundElement) -> String {
    match g.as_rational() {
        Some(r) => r.to_string(),
        None => format!("[{g}]"),
    }
}

fn central_texts(cs: &[CentralFn]) -> Vec<String> {
    cs.iter().map(|c| c.display_in("s").to_string()).collect()
}

fn field_file(field: &GroundField) -> FieldFile {
    let d = field.descriptor();
    let texts = |v: &[Q]| v.iter().map(Q::to_string).collect::<Vec<_>>();
    let modulus: Vec<i64> = d
        .modulus
        .iter()
        .map(|c| i64::try_from(c).expect("catalog moduli are small"))
        .collect();
    let base_is_q = d.modulus.len() == 2;
    match d.kind {
        FieldKind::Rationals => FieldFile {
            kind: FieldKindFile::Rationals,
            modulus: None,
            generator: None,
            sigma: None,
            alpha: None,
            beta: None,
        },
        FieldKind::NumberField => FieldFile {
            kind: FieldKindFile::NumberField,
            modulus: Some(modulus),
            generator: Some(d.generator.clone()),
            sigma: Some(texts(&d.sigma_image)),
            alpha: None,
            beta: None,
        },
        FieldKind::Quaternions => FieldFile {
            kind: FieldKindFile::Quaternions,
            modulus: (!base_is_q).then_some(modulus),
            generator: (!base_is_q).then(|| d.generator.clone()),
            sigma: (!base_is_q).then(|| texts(&d.sigma_image)),
            alpha: Some(texts(&d.alpha)),
            beta: Some(texts(&d.beta)),
        },
    }
}

fn group_file(g: &FiniteGroup) -> GroupFile {
    GroupFile {
        names: g.names().to_vec(),
        table: g.table().to_vec(),
    }
}

fn level_file(d: &ScenarioDescription) -> LevelFile {
    LevelFile {
        name: d.name.clone(),
        f: central_texts(&d.f),
        seed: ground_text(&d.seed),
        precision: Some(d.precision),
        rho: d.rho.as_ref().map(|r| r.to_string()),
        group: group_file(&d.group),
        generators: d
            .generators
            .iter()
            .map(|g| GeneratorFile {
                name: g.name.clone(),
                element: g.element.clone(),
                image: central_texts(&g.image),
            })
            .collect(),
        system: None,
    }
}

/// The file form of a catalog scenario or tower.
pub fn catalog_file(name: &str) -> Result<ScenarioFile, CliError> {
    if catalog::TOWERS.contains(&name) {
        let t = catalog::tower(name).map_err(core_error)?;
        let levels = t
            .levels
            .iter()
            .enumerate()
            .map(|(n, d)| {
                let g = &t.system.levels()[n];
                let mut level = level_file(d);
                level.system = Some(SystemFile {
                    names: g.names().to_vec(),
                    table: g.table().to_vec(),
                    projection: (n > 0).then(|| t.system.epi(n - 1).to_vec()),
                    eps: t.eps[n].clone(),
                });
                level
            })
            .collect();
        return Ok(ScenarioFile {
            kind: FileKind::Tower,
            name: t.name.clone(),
            checks: Vec::new(),
            field: field_file(&t.field),
            levels,
        });
    }
    let d = catalog::scenario(name).map_err(core_error)?;
    Ok(ScenarioFile {
        kind: FileKind::Extension,
        name: d.name.clone(),
        checks: Vec::new(),
        field: field_file(&d.field),
        levels: vec![level_file(&d)],
    })
}

fn quote(s: &str) -> String {
    toml::Value::String(s.to_string()).to_string()
}

fn string_array(items: &[String]) -> String {
    let inner: Vec<String> = items.iter().map(|s| quote(s)).collect();
    format!("[{}]", inner.join(", "))
}

/// Long arrays go one item per line.
fn long_string_array(items: &[String]) -> String {
    let one_line = string_array(items);
    if one_line.len() <= 72 {
        return one_line;
    }
    let mut out = String::from("[\n");
    for s in items {
        let _ = writeln!(out, "    {},", quote(s));
    }
    out.push(']');
    out
}

fn int_array(items: &[usize]) -> String {
    let inner: Vec<String> = items.iter().map(usize::to_string).collect();
    format!("[{}]", inner.join(", "))
}

fn table(rows: &[Vec<usize>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| int_array(r)).collect();
    format!("[{}]", inner.join(", "))
}

fn words(ws: &[Vec<String>]) -> String {
    let inner: Vec<String> = ws.iter().map(|w| string_array(w)).collect();
    format!("[{}]", inner.join(", "))
}

/// Annotated TOML for `file`; [`parse_file`] reads it back unchanged.
pub fn render(file: &ScenarioFile) -> String {
    let mut o = String::new();
    let w = &mut o;
    let _ = writeln!(w, "# Scenario '{}'.", file.name);
    let _ = writeln!(w, "#");
    let _ = writeln!(w, "# Rational numbers are strings such as \"-3/2\". Elements of F(s), where");
    let _ = writeln!(w, "# s = t^n and F is the sigma-invariant part of the center, are expressions");
    let _ = writeln!(w, "# in s such as \"(s)^-1*(1 - 3*s)\". Ground elements are rationals or");
    let _ = writeln!(w, "# bracketed symbolic sums such as \"[1+i]\".");
    let _ = writeln!(w);
    let _ = writeln!(w, "# \"extension\" (a single level) or \"tower\"");
    let _ = writeln!(w, "kind = {}", quote(if file.kind == FileKind::Tower { "tower" } else { "extension" }));
    let _ = writeln!(w, "name = {}", quote(&file.name));
    let _ = writeln!(w, "# check names or name prefixes to run; empty runs all of them");
    let _ = writeln!(w, "checks = {}", string_array(&file.checks));
    let _ = writeln!(w);
    let f = &file.field;
    let _ = writeln!(w, "# The ground skew field H and its automorphism sigma.");
    let _ = writeln!(w, "[field]");
    let kind = match f.kind {
        FieldKindFile::Rationals => "rationals",
        FieldKindFile::NumberField => "number-field",
        FieldKindFile::Quaternions => "quaternions",
    };
    let _ = writeln!(w, "# rationals | number-field | quaternions");
    let _ = writeln!(w, "kind = {}", quote(kind));
    if let Some(m) = &f.modulus {
        let m: Vec<String> = m.iter().map(i64::to_string).collect();
        let _ = writeln!(w, "# monic integer polynomial of the center, constant term first");
        let _ = writeln!(w, "modulus = [{}]", m.join(", "));
    }
    if let Some(g) = &f.generator {
        let _ = writeln!(w, "generator = {}", quote(g));
    }
    if let Some(s) = &f.sigma {
        let _ = writeln!(w, "# sigma(generator) in the power basis 1, generator, ...");
        let _ = writeln!(w, "sigma = {}", string_array(s));
    }
    if let (Some(a), Some(b)) = (&f.alpha, &f.beta) {
        let _ = writeln!(w, "# i^2 = alpha, j^2 = beta, ji = -ij, as elements of the center");
        let _ = writeln!(w, "alpha = {}", string_array(a));
        let _ = writeln!(w, "beta = {}", string_array(b));
    }
    for (n, l) in file.levels.iter().enumerate() {
        let _ = writeln!(w);
        let _ = writeln!(w, "# Level {n}: L = F(s)[x]/(f).");
        let _ = writeln!(w, "[[level]]");
        let _ = writeln!(w, "name = {}", quote(&l.name));
        let _ = writeln!(w, "# coefficients f_0, f_1, ... of the monic f in x");
        let _ = writeln!(w, "f = {}", long_string_array(&l.f));
        let _ = writeln!(w, "# residual root at s = 0; rho is Newton-lifted from it");
        let _ = writeln!(w, "seed = {}", quote(&l.seed));
        if let Some(p) = l.precision {
            let _ = writeln!(w, "# precision of rho, in powers of t");
            let _ = writeln!(w, "precision = {p}");
        }
        if let Some(r) = &l.rho {
            let _ = writeln!(w, "# explicit root series, checked against f");
            let _ = writeln!(w, "rho = {}", quote(r));
        }
        let _ = writeln!(w);
        let _ = writeln!(w, "# Galois group of L: element names and multiplication table by index");
        let _ = writeln!(w, "[level.group]");
        let _ = writeln!(w, "names = {}", string_array(&l.group.names));
        let _ = writeln!(w, "table = {}", table(&l.group.table));
        for g in &l.generators {
            let _ = writeln!(w);
            let _ = writeln!(w, "# generator: the group element it realizes and the image of x in 1, x, ...");
            let _ = writeln!(w, "[[level.generators]]");
            let _ = writeln!(w, "name = {}", quote(&g.name));
            let _ = writeln!(w, "element = {}", quote(&g.element));
            let _ = writeln!(w, "image = {}", long_string_array(&g.image));
        }
        if let Some(s) = &l.system {
            let _ = writeln!(w);
            let _ = writeln!(w, "# The group G_{n} of the system realized by the tower.");
            let _ = writeln!(w, "[level.system]");
            let _ = writeln!(w, "names = {}", string_array(&s.names));
            let _ = writeln!(w, "table = {}", table(&s.table));
            if let Some(p) = &s.projection {
                let _ = writeln!(w, "# s_{n}: G_{n} -> G_{}, image index of each element", n - 1);
                let _ = writeln!(w, "projection = {}", int_array(p));
            }
            let _ = writeln!(w, "# eps_{n}: a word in the generator names for each element");
            let _ = writeln!(w, "eps = {}", words(&s.eps));
        }
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational(" -3/6 "), Some(Q::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(Q::from(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn render_parses_back() {
        for name in ["hq-quadratic", "q-shanks-cubic", "T2"] {
            let file = catalog_file(name).unwrap();
            assert_eq!(parse_file(&render(&file)).unwrap(), file, "{name}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut text = render(&catalog_file("hq-quadratic").unwrap());
        text = text.replace("seed = ", "colour = \"red\"\nseed = ");
        let e = parse_file(&text).unwrap_err();
        assert_eq!(e.code, crate::EXIT_VALIDATION);
        let e = parse_file("kind = ").unwrap_err();
        assert_eq!(e.code, crate::EXIT_PARSE);
    }
}
