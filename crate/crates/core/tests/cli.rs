use std::process::Command;

use circulant8::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use circulant8::generator_set;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("circulant8").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines().find_map(|l| l.strip_prefix(&format!("{key}="))).unwrap_or_else(|| panic!("no {key}= in {out:?}"))
}

#[test]
fn gen_prints_order_and_generators() {
    for (k, want) in [(2, "n=32 gens=1,15,4,6\n"), (3, "n=104 gens=1,27,16,20\n"), (4, "n=248 gens=1,61,72,76\n")] {
        let (code, out, _) = call(&["gen", "-k", &k.to_string()]);
        assert_eq!(code, EXIT_PASS);
        assert_eq!(out, want);
    }
}

#[test]
fn diameter_matches_k() {
    let (code, out, _) = call(&["diameter", "-k", "6"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), format!("k=6 n={} diameter=6", generator_set(6).unwrap().n));
}

#[test]
fn route_examples() {
    let (code, out, _) = call(&["route", "-k", "4", "-g", "0"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(field(&out, "length"), "0");

    let (code, out, _) = call(&["route", "-k", "4", "-g", "61"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(field(&out, "word"), "+s2");
    assert_eq!(field(&out, "length"), "1");

    let (code, out, _) = call(&["route", "-k", "4", "-g", "123"]);
    assert_eq!(code, EXIT_PASS);
    let len: i64 = field(&out, "length").parse().unwrap();
    assert!((1..=4).contains(&len));
    // replay the printed word by hand
    let gens = generator_set(4).unwrap();
    let reached: i64 = field(&out, "word")
        .split_whitespace()
        .map(|step| {
            let sign = if step.starts_with('-') { -1 } else { 1 };
            let i: usize = step[2..].parse().unwrap();
            sign * gens.s[i - 1]
        })
        .sum();
    assert_eq!(reached.rem_euclid(gens.n), 123);
    assert_eq!(field(&out, "word").split_whitespace().count() as i64, len);
}

#[test]
fn route_in_base_cases_uses_bfs() {
    for g in 0..104 {
        let (code, out, _) = call(&["route", "-k", "3", "-g", &g.to_string()]);
        assert_eq!(code, EXIT_PASS, "g={g}");
        assert!(field(&out, "length").parse::<i64>().unwrap() <= 3);
    }
}

#[test]
fn verify_examples_pass() {
    for (k, level) in [("2", "full"), ("4", "full"), ("7", "fast"), ("5", "full")] {
        let (code, out, err) = call(&["verify", "-k", k, "--level", level]);
        assert_eq!(code, EXIT_PASS, "k={k} {level}: {out}{err}");
        assert!(out.ends_with("pass=true\n"));
    }
}

#[test]
fn verify_json_is_machine_readable() {
    let (code, out, _) = call(&["verify", "-k", "4", "--level", "full", "--json"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["k"], 4);
    assert_eq!(v["level"], "full");
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["lattice", "generators", "identities", "cyclic", "covering", "case_coverage", "diameter"]);
}

#[test]
fn coverage_reports_clean_sweep() {
    let (code, out, _) = call(&["coverage", "-k", "5"]);
    assert_eq!(code, EXIT_PASS);
    let first = out.lines().next().unwrap();
    assert!(first.contains("no_match=0") && first.contains("anchor_violations=0") && first.ends_with("pass=true"));
}

#[test]
fn export_writes_sorted_edges_deterministically() {
    let dir = std::env::temp_dir().join(format!("circulant8-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (k, edges, header) in [(2, 128, "# circulant n=32 steps=1,15,4,6"), (3, 416, "# circulant n=104 steps=1,27,16,20")] {
        let (a, b) = (dir.join(format!("a{k}.txt")), dir.join(format!("b{k}.txt")));
        for p in [&a, &b] {
            let (code, out, _) = call(&["export", "-k", &k.to_string(), "-o", p.to_str().unwrap()]);
            assert_eq!(code, EXIT_PASS);
            assert!(out.starts_with(&format!("wrote {edges} edges")));
        }
        let text = std::fs::read_to_string(&a).unwrap();
        assert_eq!(text.as_bytes(), std::fs::read(&b).unwrap().as_slice());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(header));
        let pairs: Vec<(i64, i64)> = lines
            .map(|l| {
                let (u, v) = l.split_once(' ').unwrap();
                (u.parse().unwrap(), v.parse().unwrap())
            })
            .collect();
        assert_eq!(pairs.len(), edges);
        assert!(pairs.iter().all(|(u, v)| u < v));
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["gen", "-k", "1"][..],
        &["gen", "-k", "x"],
        &["gen"],
        &["frobnicate"],
        &[],
        &["verify", "-k", "9", "--level", "full"],
        &["verify", "-k", "4", "--level", "medium"],
        &["route", "-k", "4", "-g", "248"],
        &["route", "-k", "4", "-g", "-1"],
        &["coverage", "-k", "3"],
        &["export", "-k", "21", "-o", "/dev/null"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn io_failure_exits_one() {
    let (code, _, err) = call(&["export", "-k", "2", "-o", "/nonexistent-dir/x.txt"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(err.starts_with("error:"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("verify"));
}

#[test]
fn output_is_deterministic() {
    assert_eq!(call(&["verify", "-k", "6", "--level", "full"]), call(&["verify", "-k", "6", "--level", "full"]));
}

#[test]
fn binary_propagates_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_circulant8");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["gen", "-k", "4"]);
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "n=248 gens=1,61,72,76\n");
    assert_eq!(status(&["gen", "-k", "0"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(status(&["verify", "-k", "3", "--level", "full"]).status.code(), Some(EXIT_PASS));
}
