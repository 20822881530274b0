//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime
//! against the stated limit. Run with `--nocapture` to see the lines.

use std::process::Command;
use std::time::{Duration, Instant};

use orefield::checks::{extension_checks, tower_checks, Settings};
use orefield_core::random::{random_fraction, random_ground, random_nonzero_fraction, random_poly};
use orefield_core::skewfrac::center_basis;
use orefield_core::skewpoly::ore_witness;
use orefield_core::{catalog, GroundField, SkewFraction, SkewPolynomial, TwistedSeries};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn fields() -> [(&'static str, GroundField); 2] {
    [("Q(i)[t, conj]", GroundField::gaussian_conjugation()), ("H_Q[t]", GroundField::hamilton())]
}

/// Schoolbook product `Σ a_i σ^i(b_j) t^(i+j)`, independent of the library's.
fn naive_mul(f: &SkewPolynomial, g: &SkewPolynomial) -> SkewPolynomial {
    let field = f.field();
    let (fc, gc) = (f.coeffs(), g.coeffs());
    if fc.is_empty() || gc.is_empty() {
        return SkewPolynomial::zero(field);
    }
    let mut out = vec![field.zero(); fc.len() + gc.len() - 1];
    for (i, a) in fc.iter().enumerate() {
        for (j, b) in gc.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * &b.apply_sigma(i as i64));
        }
    }
    SkewPolynomial::new(field, out)
}

fn ring_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, k) in fields() {
        for n in 0..1000 {
            let f = random_poly(&k, &mut rng, 4, 9);
            let g = random_poly(&k, &mut rng, 4, 9);
            let h = random_poly(&k, &mut rng, 4, 9);
            let fg = &f * &g;
            ensure(fg == naive_mul(&f, &g), || format!("{name}: product {n} disagrees with the schoolbook product"))?;
            ensure(&fg * &h == &f * &(&g * &h), || format!("{name}: associativity fails on triple {n}"))?;
            ensure(&f * &(&g + &h) == &fg + &(&f * &h), || format!("{name}: left distributivity fails on triple {n}"))?;
            ensure(&(&f + &g) * &h == &(&f * &h) + &(&g * &h), || {
                format!("{name}: right distributivity fails on triple {n}")
            })?;
        }
        let t = SkewPolynomial::t(&k);
        for n in 0..100 {
            let a = random_ground(&k, &mut rng, 20);
            let lhs = &t * &SkewPolynomial::constant(a.clone());
            let rhs = SkewPolynomial::monomial(a.apply_sigma(1), 1);
            ensure(lhs == rhs, || format!("{name}: t*a = sigma(a)*t fails for sample {n}"))?;
        }
    }
    Ok("1000 triples and 100 twists per ring, exact".into())
}

fn euclidean_division() -> Outcome {
    let k = GroundField::gaussian_conjugation();
    let i = SkewPolynomial::constant(k.generator());
    let t = SkewPolynomial::t(&k);
    let (q, r) = (&(&t * &t) + &i).divmod_right(&(&t - &i)).map_err(|e| e.to_string())?;
    ensure(q == &t - &i, || format!("worked instance: q = {q}"))?;
    ensure(r == SkewPolynomial::constant(&k.one() + &k.generator()), || format!("worked instance: r = {r}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 0..1000 {
        let f = random_poly(&k, &mut rng, 8, 9);
        let g = random_poly(&k, &mut rng, 8, 9);
        let dg = g.degree().expect("nonzero divisor");
        let (q, r) = f.divmod_right(&g).map_err(|e| e.to_string())?;
        ensure(f == &(&q * &g) + &r, || format!("identity fails on pair {n}"))?;
        ensure(r.degree().map_or(true, |d| d < dg), || format!("remainder too large on pair {n}"))?;
        // any other quotient leaves a remainder of degree at least deg g
        let delta = random_poly(&k, &mut rng, 2, 9);
        let other = &r - &(&delta * &g);
        ensure(other.degree().is_some_and(|d| d >= dg), || format!("uniqueness probe fails on pair {n}"))?;
    }
    Ok("worked instance exact, 1000 pairs of degree <= 8".into())
}

fn embedding_agrees(x: &SkewFraction, y: &SkewFraction) -> bool {
    TwistedSeries::embed(x, 32).agrees_with(&TwistedSeries::embed(y, 32))
}

fn fractions() -> Outcome {
    let k = GroundField::gaussian_conjugation();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let one = SkewFraction::one(&k);
    for n in 0..500 {
        let x = random_fraction(&k, &mut rng, 2, 5);
        let y = random_fraction(&k, &mut rng, 2, 5);
        let z = random_fraction(&k, &mut rng, 1, 5);
        ensure((&(&x * &y) * &z).equals(&(&x * &(&y * &z))), || format!("associativity, pair {n}"))?;
        ensure((&x * &(&y + &z)).equals(&(&(&x * &y) + &(&x * &z))), || format!("distributivity, pair {n}"))?;
        ensure((&x + &y).equals(&(&y + &x)), || format!("commutativity of addition, pair {n}"))?;
        let u = random_nonzero_fraction(&k, &mut rng, 2, 5);
        let v = u.inv().map_err(|e| e.to_string())?;
        ensure((&u * &v).equals(&one) && (&v * &u).equals(&one), || format!("inverse, pair {n}"))?;

        // b^-1 a = (cb)^-1 (ca), decided both by cross multiplication and in the series field
        let c = random_poly(&k, &mut rng, 2, 5);
        let scaled = SkewFraction::new(&c * x.num(), &c * x.den()).map_err(|e| e.to_string())?;
        ensure(scaled.equals(&x) && embedding_agrees(&scaled, &x), || format!("fraction equality, pair {n}"))?;
        let different = &x + &one;
        ensure(!different.equals(&x) && !embedding_agrees(&different, &x), || format!("x + 1 = x, pair {n}"))?;

        let (a, b) = (y.num(), y.den());
        let (a1, b1) = ore_witness(a, b).map_err(|e| e.to_string())?;
        ensure(!b1.is_zero() && &(b * &a1) == &(a * &b1), || format!("Ore witness identity, pair {n}"))?;
        let b1_inv = SkewFraction::from_poly(b1).inv().map_err(|e| e.to_string())?;
        let right = &SkewFraction::from_poly(a1) * &b1_inv;
        ensure(right.equals(&y), || format!("left and right fractions disagree, pair {n}"))?;
    }
    Ok("500 pairs over Q(i)(t, conj)".into())
}

fn center() -> Outcome {
    let k = GroundField::gaussian_conjugation();
    let basis = center_basis(&k, 8).map_err(|e| e.to_string())?;
    let t2 = &SkewPolynomial::t(&k) * &SkewPolynomial::t(&k);
    let mut expected = vec![SkewPolynomial::one(&k)];
    for _ in 0..4 {
        let next = expected.last().unwrap() * &t2;
        expected.push(next);
    }
    let shown: Vec<String> = basis.iter().map(ToString::to_string).collect();
    ensure(basis == expected, || format!("basis is {{{}}}", shown.join(", ")))?;
    Ok(format!("{{{}}}", shown.join(", ")))
}

fn laurent() -> Outcome {
    const PRECISION: i64 = 64;
    let k = GroundField::gaussian_conjugation();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let embed = |x: &SkewFraction| TwistedSeries::embed(x, PRECISION);
    for n in 0..500 {
        let x = random_fraction(&k, &mut rng, 3, 9);
        let y = random_fraction(&k, &mut rng, 3, 9);
        let (ex, ey) = (embed(&x), embed(&y));
        ensure(embed(&(&x + &y)).agrees_with(&(&ex + &ey)), || format!("sum, sample {n}"))?;
        ensure(embed(&(&x * &y)).agrees_with(&(&ex * &ey)), || format!("product, sample {n}"))?;
        if !x.is_zero() {
            let inv = embed(&x.inv().map_err(|e| e.to_string())?);
            ensure(inv.agrees_with(&ex.inv().map_err(|e| e.to_string())?), || format!("inverse, sample {n}"))?;
        }
        ensure(x.equals(&y) == ex.agrees_with(&ey), || format!("injectivity, sample {n}"))?;
        ensure(ex.is_zero() == x.is_zero(), || format!("zero test, sample {n}"))?;
    }
    Ok(format!("500 fractions at precision {PRECISION}"))
}

fn failures(results: &[orefield::report::CheckResult]) -> Vec<String> {
    results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{}: {}", r.name, r.details))
        .collect()
}

fn scalar_extension(name: &str) -> Outcome {
    let sc = catalog::extension(name).map_err(|e| e.to_string())?;
    let results = extension_checks(&sc, &Settings::default(), "");
    let failed = failures(&results);
    ensure(failed.is_empty(), || failed.join("; "))?;
    for wanted in ["division-ring", "galois-table", "fixed-space", "tau-multiplicative", "decomposition"] {
        ensure(results.iter().any(|r| r.name == wanted), || format!("{wanted} did not run"))?;
    }
    let inversion = results.iter().find(|r| r.name == "division-ring").unwrap();
    ensure(inversion.details.starts_with("200 "), || inversion.details.clone())?;
    Ok(format!("{name}: {} checks", results.len()))
}

fn towers() -> Outcome {
    let mut summary = Vec::new();
    for name in catalog::TOWERS {
        let t = catalog::tower_scenario(name).map_err(|e| e.to_string())?;
        let results = tower_checks(&t, &Settings::default(), false);
        let failed = failures(&results);
        ensure(failed.is_empty(), || format!("{name}: {}", failed.join("; ")))?;
        let count = |prefix: &str| results.iter().filter(|r| r.name.starts_with(prefix)).count();
        ensure(count("degree-ledger/") == t.levels().len(), || format!("{name}: ledger incomplete"))?;
        ensure(count("compatibility/") > 0, || format!("{name}: no compatibility relations"))?;
        let control = results.iter().find(|r| r.name == "negative-control").unwrap();
        ensure(control.details.contains("level"), || format!("{name}: unlocated control: {}", control.details))?;
        summary.push(format!("{name} {} checks", results.len()));
    }
    Ok(summary.join(", "))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_orefield"))
            .args(["verify", "--catalog", "T1", "--seed", "7", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || format!("exit status {}", a.status))?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

struct Criterion {
    name: String,
    limit: Option<Duration>,
    run: Box<dyn Fn() -> Outcome>,
}

fn criterion(name: impl Into<String>, secs: Option<u64>, run: impl Fn() -> Outcome + 'static) -> Criterion {
    Criterion {
        name: name.into(),
        limit: secs.map(Duration::from_secs),
        run: Box::new(run),
    }
}

#[test]
fn acceptance() {
    let mut criteria = vec![
        criterion("1 twisted ring law", Some(10), ring_law),
        criterion("2 euclidean division", Some(5), euclidean_division),
        criterion("3 ore and fraction consistency", Some(20), fractions),
        criterion("4 center", Some(5), center),
        criterion("5 laurent embedding", Some(30), laurent),
    ];
    for name in ["hq-quadratic", "qi-quadratic", "q-shanks-cubic"] {
        criteria.push(criterion(format!("6 scalar extension {name}"), Some(60), move || scalar_extension(name)));
    }
    criteria.push(criterion("7 towers", Some(60), towers));
    criteria.push(criterion("8 determinism", None, determinism));

    let mut all = true;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let late = c.limit.is_some_and(|l| elapsed > l);
        let limit = c.limit.map_or(String::new(), |l| format!(" (limit {} s)", l.as_secs()));
        let (status, detail) = match &outcome {
            Ok(d) if !late => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(e) => ("FAIL", e.clone()),
        };
        all &= status == "PASS";
        println!("{status} {}: {detail} [{:.1} s{limit}]", c.name, elapsed.as_secs_f64());
    }
    assert!(all, "acceptance criteria failed");
}

