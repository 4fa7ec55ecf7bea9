//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines always appear in `cargo test` output.

use std::time::{Duration, Instant};

use prohecke::presets::{build, parse_preset};
use prohecke::verify::{run_suite, SuiteConfig, SuiteReport};

fn suite(preset: &str, name: &str) -> SuiteReport {
    let alg = build(parse_preset(preset).unwrap()).unwrap();
    run_suite(name, &alg, &SuiteConfig::default()).unwrap_or_else(|e| panic!("{preset} {name}: {e}"))
}

/// Checks whose id starts with one of `prefixes`, from every `(preset, suite)` run.
/// A criterion passes only if at least one such check ran and all passed.
fn criterion(runs: &[(&str, &str)], prefixes: &[&str]) -> (bool, String) {
    let mut cases = 0;
    let mut failures = Vec::new();
    for (preset, name) in runs {
        let rep = suite(preset, name);
        let mut seen = false;
        for c in rep.checks.iter().filter(|c| prefixes.iter().any(|p| c.id.starts_with(p))) {
            seen = true;
            cases += c.cases;
            if !c.pass {
                failures.push(format!("{preset}/{}", c.id));
            }
        }
        if !seen {
            failures.push(format!("{preset}/{name}: no matching checks"));
        }
    }
    let detail = if failures.is_empty() { format!("{cases} cases") } else { format!("failed: {}", failures.join(", ")) };
    (failures.is_empty(), detail)
}

const ALL: &[&str] = &[""];

fn main() {
    type Crit = (&'static str, u64, Box<dyn Fn() -> (bool, String)>);
    let criteria: Vec<Crit> = vec![
        ("braid lifts", 5, Box::new(|| {
            criterion(
                &[
                    ("gln:2:a1", "braid"),
                    ("gln:3:a1", "braid"),
                    ("gln:4:a1", "braid"),
                    ("yokonuma:2:2", "braid"),
                    ("yokonuma:3:2", "braid"),
                    ("yokonuma:2:3", "braid"),
                    ("yokonuma:3:3", "braid"),
                ],
                ALL,
            )
        })),
        ("length oracle", 60, Box::new(|| criterion(&[("gln:2:a1", "length-oracle"), ("gln:3:a1", "length-oracle")], ALL))),
        ("multiplication", 120, Box::new(|| {
            let presets = [
                "gln:2:universal",
                "gln:3:universal",
                "gln:2:laurent",
                "gln:3:a1",
                "yokonuma:2:2",
                "yokonuma:3:2",
                "yokonuma:2:3",
            ];
            let runs: Vec<(&str, &str)> =
                presets.iter().flat_map(|p| [(*p, "assoc"), (*p, "im-relations")]).collect();
            criterion(&runs, ALL)
        })),
        ("reduced-word independence", 120, Box::new(|| {
            criterion(
                &[("gln:2:universal", "triangular"), ("gln:3:universal", "triangular"), ("yokonuma:2:2", "triangular")],
                &["triangular/reduced-word-independence"],
            )
        })),
        ("cocycle and product rules", 600, Box::new(|| {
            criterion(
                &[
                    ("gln:2:laurent", "cocycle"),
                    ("gln:3:laurent", "cocycle"),
                    ("yokonuma:2:2", "cocycle"),
                    ("gln:2:universal", "product-rule"),
                    ("gln:3:universal", "product-rule"),
                    ("yokonuma:2:2", "product-rule"),
                ],
                &["cocycle/", "product-rule/"],
            )
        })),
        ("coboundary identities", 600, Box::new(|| {
            criterion(
                &[
                    ("gln:2:a1", "gamma-coboundary"),
                    ("gln:3:a1", "gamma-coboundary"),
                    ("gln:2:a1", "l-coboundary"),
                    ("gln:3:a1", "l-coboundary"),
                ],
                ALL,
            )
        })),
        ("triangularity", 600, Box::new(|| {
            criterion(
                &[
                    ("gln:2:universal", "triangular"),
                    ("gln:3:universal", "triangular"),
                    ("yokonuma:2:2", "triangular"),
                ],
                &["triangular/below"],
            )
        })),
        ("bernstein relation", 600, Box::new(|| {
            criterion(&[("gln:2:a1", "bernstein"), ("gln:3:a1", "bernstein"), ("yokonuma:2:2", "bernstein")], ALL)
        })),
        ("center", 600, Box::new(|| {
            criterion(&[("gln:2:a1", "center"), ("gln:3:a1", "center"), ("yokonuma:2:2", "center")], &["center/"])
        })),
        ("jucys-murphy", 600, Box::new(|| {
            criterion(
                &[
                    ("gln:2:laurent", "jm-bernstein"),
                    ("gln:3:laurent", "jm-bernstein"),
                    ("yokonuma:2:2", "jm-bernstein"),
                    ("yokonuma:3:2", "jm-bernstein"),
                    ("yokonuma:2:3", "jm-bernstein"),
                ],
                ALL,
            )
        })),
        ("finite orientations", 30, Box::new(|| {
            criterion(&[("gln:2:a1", "orientation-finite"), ("gln:3:a1", "orientation-finite")], &["finite/"])
        })),
        ("spherical limit", 30, Box::new(|| {
            criterion(&[("gln:2:a1", "spherical-limit"), ("gln:3:a1", "spherical-limit")], ALL)
        })),
        ("module generators", 300, Box::new(|| criterion(&[("gln:2:a1", "center")], &["module/"]))),
    ];
    let mut all = true;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let pass = ok && in_time;
        all &= pass;
        let status = if pass { "PASS" } else { "FAIL" };
        let timing = if in_time { String::new() } else { format!(", over {limit}s limit") };
        println!("criterion {:>2} {status} {name}: {detail} ({:.2}s{timing})", i + 1, elapsed.as_secs_f64());
    }
    if !all {
        std::process::exit(1);
    }
    println!("all acceptance criteria pass");
}
