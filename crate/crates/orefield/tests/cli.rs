use std::path::{Path, PathBuf};
use std::process::Command;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn orefield(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_orefield")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

/// Writes `text` to a file unique to this test and returns its path.
fn scratch(tag: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("orefield-cli-{}-{tag}.toml", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn exported(name: &str) -> String {
    let r = orefield(&["export", name]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    r.stdout
}

#[test]
fn eval_follows_the_twisted_rule() {
    assert_eq!(orefield(&["eval", "t*i"]).stdout, "-[i]*t\n");
    assert_eq!(orefield(&["eval", "t*i + i*t"]).stdout, "0\n");
    assert_eq!(orefield(&["--field", "hq", "eval", "t*j - j*t"]).stdout, "0\n");
    assert_eq!(orefield(&["--field", "hq", "eval", "i*j"]).stdout, "[k]\n");
    assert_eq!(orefield(&["--field", "q", "eval", "(t + 1)^2"]).stdout, "1 + 2*t + t^2\n");
}

#[test]
fn negative_powers_give_fractions() {
    let r = orefield(&["eval", "(1 - t)^-1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains(")^-1*"), "{}", r.stdout);
    let again = orefield(&["eval", r.stdout.trim()]);
    assert_eq!(again.stdout, r.stdout);
}

#[test]
fn eval_json_names_the_kind() {
    let r = orefield(&["--format", "json", "eval", "1/(1 - t)"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["kind"], "fraction");
    assert_eq!(v["input"], "1/(1 - t)");
}

#[test]
fn syntax_errors_exit_2_with_a_location() {
    let r = orefield(&["eval", "t*("]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 1, column 3"), "{}", r.stderr);
    assert_eq!(orefield(&["eval", "t $ 1"]).code, 2);
    assert_eq!(orefield(&["--field", "q", "eval", "i"]).code, 2);
}

#[test]
fn invalid_input_exits_3() {
    assert_eq!(orefield(&["eval", "1/0"]).code, 3);
    assert_eq!(orefield(&["invert", "0"]).code, 3);
    assert_eq!(orefield(&["--field", "octonions", "eval", "1"]).code, 3);
    assert_eq!(orefield(&["extend"]).code, 3);
    assert_eq!(orefield(&["--catalog", "nowhere", "extend"]).code, 3);
}

#[test]
fn divmod_prints_quotient_and_remainder() {
    let r = orefield(&["divmod", "t^2 + i", "t - i"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "q = -[i] + t\nr = [1+i]\n");
    let r = orefield(&["--format", "json", "divmod", "t^2 + i", "t - i"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["identity"], true);
}

#[test]
fn invert_certifies_the_inverse() {
    let r = orefield(&["--format", "json", "invert", "t + i"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verified"], true);
    let r = orefield(&["--catalog", "qi-quadratic", "invert", "x + t"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = orefield(&["invert", "embed(1 - t, 12)"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("O(t^12)"), "{}", r.stdout);
}

#[test]
fn center_of_the_gaussian_case() {
    let r = orefield(&["--format", "json", "center"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!(["1", "t^2", "t^4", "t^6", "t^8"]));
    let r = orefield(&["--field", "hq", "--max-deg", "3", "center"]);
    assert_eq!(r.stdout, "1\nt\nt^2\nt^3\n");
}

#[test]
fn catalog_lists_every_entry() {
    let r = orefield(&["catalog"]);
    assert_eq!(r.stdout.lines().count(), 8);
    assert_eq!(r.stdout.lines().filter(|l| l.ends_with("\ttower")).count(), 3);
}

#[test]
fn committed_scenarios_match_the_export() {
    for line in orefield(&["catalog"]).stdout.lines() {
        let name = line.split('\t').next().unwrap();
        let committed = std::fs::read_to_string(scenarios_dir().join(format!("{name}.toml"))).unwrap();
        assert_eq!(committed, exported(name), "{name}");
    }
}

#[test]
fn requested_checks_restrict_the_report() {
    let text = exported("hq-quadratic").replace("checks = []", r#"checks = ["degree", "galois-table"]"#);
    let r = orefield(&["extend", "--scenario", &scratch("requested", &text)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(lines.len(), 2, "{}", r.stdout);
    assert!(lines[0].starts_with("PASS degree"));

    let text = exported("hq-quadratic").replace("checks = []", r#"checks = ["no-such-check"]"#);
    let r = orefield(&["extend", "--scenario", &scratch("unknown-check", &text)]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("no-such-check"), "{}", r.stderr);
}

#[test]
fn malformed_scenarios_are_rejected() {
    let text = exported("qi-quadratic").replace("checks = []", "checks = []\ncolour = \"red\"");
    let r = orefield(&["extend", "--scenario", &scratch("unknown-key", &text)]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("colour"), "{}", r.stderr);
    let r = orefield(&["extend", "--scenario", &scratch("broken-toml", "kind = [")]);
    assert_eq!(r.code, 2);
    let r = orefield(&["extend", "--scenario", "/nonexistent/scenario.toml"]);
    assert_eq!(r.code, 2);
}

#[test]
fn a_wrong_root_is_refused() {
    let text = exported("hq-quadratic").replace("precision = 64", "precision = 64\nrho = \"1 + t\"");
    let r = orefield(&["extend", "--scenario", &scratch("bad-rho", &text)]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert!(r.stderr.contains("f(rho)"), "{}", r.stderr);
}

#[test]
fn an_unfaithful_generator_is_refused() {
    let text = exported("hq-quadratic").replace(r#"image = ["0", "-1"]"#, r#"image = ["0", "1"]"#);
    let r = orefield(&["extend", "--scenario", &scratch("identity-generator", &text)]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("psi-faithful"), "{}", r.stderr);
}

#[test]
fn a_broken_tower_fails_its_checks() {
    let text = exported("T3").replace(r#"eps = [[], ["g"], ["g", "g"]]"#, r#"eps = [[], ["g"], ["g"]]"#);
    let r = orefield(&["tower", "--scenario", &scratch("broken-eps", &text)]);
    assert_eq!(r.code, 4, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("FAIL eps-isomorphism/level-1"), "{}", r.stdout);
}

#[test]
fn towers_pass_and_reject_their_negative_control() {
    for name in ["T1", "T2", "T3"] {
        let r = orefield(&["--format", "json", "tower", "--catalog", name]);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["passed"], true);
        let control = v["checks"].as_array().unwrap().iter().find(|c| c["check-name"] == "negative-control").unwrap();
        assert_eq!(control["status"], "pass");
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["--catalog", "T3", "--seed", "7", "--format", "json", "--samples", "20", "tower"];
    let a = orefield(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, orefield(&args).stdout);
}
