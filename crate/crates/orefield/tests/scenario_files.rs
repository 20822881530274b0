use std::path::Path;

use orefield::checks::{extension_checks, tower_checks, Settings};
use orefield::scenario::{load, parse_file, Loaded};

/// Every committed scenario loads, validates and passes its structural checks.
#[test]
fn committed_scenarios_load_and_pass() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let loaded = load(&parse_file(&text).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let settings = Settings {
            only: vec!["degree".into(), "galois-table".into(), "fixed-space".into()],
            ..Settings::default()
        };
        let results = match &loaded {
            Loaded::Extension(sc) => extension_checks(sc, &settings, ""),
            Loaded::Tower(t) => tower_checks(t, &settings, false),
        };
        assert!(results.len() > 3, "{}", path.display());
        for r in &results {
            assert!(r.passed, "{}: {} {}", path.display(), r.name, r.details);
        }
        seen += 1;
    }
    assert_eq!(seen, 8);
}
