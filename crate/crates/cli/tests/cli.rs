use std::path::PathBuf;
use std::process::{Command, Output};

use jacobi_core::catalog::entries;

fn structure(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("structures").join(format!("{name}.struct"))
}

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi-kit"))
        .args(args)
        .env_remove("JACOBI_KIT_SEED")
        .output()
        .expect("binary runs")
}

fn on(verb: &str, name: &str, extra: &[&str]) -> Output {
    let path = structure(name);
    let mut args = vec![verb, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    kit(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_exit_codes_follow_the_catalog() {
    for e in entries() {
        let o = on("check", e.name, &["--trials", "8"]);
        assert_eq!(o.status.code(), Some(if e.valid { 0 } else { 1 }), "{}:\n{}", e.name, stdout(&o));
    }
}

#[test]
fn spencer_exit_codes_follow_the_catalog() {
    for e in entries() {
        let o = on("spencer", e.name, &["--trials", "4"]);
        assert_eq!(o.status.code(), Some(if e.valid { 0 } else { 1 }), "{}:\n{}", e.name, stdout(&o));
    }
}

#[test]
fn broken_pair_prints_its_residual() {
    let o = on("check", "broken_r3", &["--trials", "2"]);
    let text = stdout(&o);
    assert!(text.contains("FAIL [Λ,Λ] = 2R∧Λ\n  123 = -2\n"), "{text}");
    assert!(text.ends_with("overall: FAIL\n"));
}

#[test]
fn reports_are_deterministic() {
    let a = on("spencer", "broken_r3", &["--trials", "3", "--seed", "7", "--json"]);
    let b = on("spencer", "broken_r3", &["--trials", "3", "--seed", "7", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let c = on("spencer", "broken_r3", &["--trials", "3", "--seed", "8", "--json"]);
    assert_ne!(a.stdout, c.stdout);
    let path = structure("broken_r3");
    let env = Command::new(env!("CARGO_BIN_EXE_jacobi-kit"))
        .args(["spencer", path.to_str().unwrap(), "--trials", "3", "--json"])
        .env("JACOBI_KIT_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(a.stdout, env.stdout);
}

#[test]
fn json_reports_parse() {
    let o = on("check", "std_contact_r3", &["--trials", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["overall"], true);
    assert_eq!(v["kind"], "contact_form");
    assert_eq!(v["verdicts"].as_array().unwrap().len(), 4);
    assert!(v.get("total_millis").is_none());
    let o = on("check", "std_contact_r3", &["--trials", "3", "--json", "--timings"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["total_millis"].is_number());
}

#[test]
fn bracket_examples() {
    let o = on("bracket", "poisson_r3", &["x", "y"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    for e in entries() {
        let names = e.structure.chart().names();
        let f = format!("{}*{} + {}^2", names[0], names[1], names[2]);
        let o = on("bracket", e.name, &[&f, &f]);
        assert_eq!(stdout(&o), "0\n", "{}", e.name);
    }
    // the contact form and its induced pair give the same bracket
    for (f, g) in [("x", "y"), ("x*z - y^2", "z + x^2*y"), ("1", "y/(1 + z^2)")] {
        let a = on("bracket", "std_contact_r3", &[f, g]);
        let b = on("bracket", "std_contact_pair_r3", &[f, g]);
        assert_eq!(a.stdout, b.stdout, "{f}, {g}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(on("bracket", "poisson_r3", &["x", "w"]).status.code(), Some(2));
    assert_eq!(on("reeb", "poisson_r3", &[]).status.code(), Some(2));
    assert_eq!(on("decompose", "std_contact_r3", &["1", "0"]).status.code(), Some(2));
    assert_eq!(on("poissonize", "poisson_r3", &["--coord", "z"]).status.code(), Some(2));
    assert_eq!(kit(&["check", "/nonexistent.struct"]).status.code(), Some(2));
    assert_eq!(kit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kit(&["check"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("jacobi-kit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.struct");
    std::fs::write(&bad, "kind = \"jacobi_pair\"\nchart = [\"x\", \"y\"]\n[lambda]\n12 = \"1 +\"\n").unwrap();
    let o = kit(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[lambda]"));
    // a degenerate θ parses, but fails its check
    let flat = dir.join("flat.struct");
    std::fs::write(&flat, "kind = \"contact_form\"\nchart = [\"x\", \"y\", \"z\"]\n[theta]\n3 = \"1\"\n").unwrap();
    assert_eq!(kit(&["check", flat.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(kit(&["bracket", flat.to_str().unwrap(), "x", "y"]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn poissonize_examples() {
    let o = on("poissonize", "std_contact_pair_r3", &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("  12 = (1)/(t)\n  23 = (-y)/(t)\n  34 = -1\n"), "{text}");
    let o = on("poissonize", "broken_r3", &["--coord", "s"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL [Π,Π] = 0"));
    assert!(text.contains("PASS L_E Π = -Π, E = s∂s"));
}

#[test]
fn reeb_and_decompose_examples() {
    let text = stdout(&on("reeb", "std_contact_r3", &[]));
    assert!(text.ends_with("R_f:\n  3 = 1\n"), "{text}");
    let text = stdout(&on("reeb", "std_contact_r3", &["x"]));
    assert!(text.ends_with("R_f:\n  2 = 1\n  3 = x\n"), "{text}");
    // R_x decomposes with u = x and φ = 0
    let o = on("decompose", "std_contact_r3", &["0", "1", "x"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("u = x\nφ:\n  0\n"), "{text}");
    let o = on("decompose", "contact_r5", &["x1", "0", "y2^2", "1", "z"]);
    assert_eq!(o.status.code(), Some(0));
}
