use std::fs;
use std::process::Command;

use nilorb::cli::run;
use serde_json::Value;

fn nilorb(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nilorb").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn compute_pretty_matches_display_form() {
    let (code, out, _) = nilorb(&["compute", "--kind", "A", "--g", "2", "--n", "3", "--format", "pretty"]);
    assert_eq!(code, 0);
    assert_eq!(out, "q^4 + 3q^2 + 2q\n");
}

#[test]
fn compute_m_series_includes_constant_term() {
    let (code, out, _) = nilorb(&["compute", "--kind", "M", "--g", "2", "--N", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let coeffs: Vec<Vec<String>> = v["polynomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| serde_json::from_value(p["coeffs"].clone()).unwrap())
        .collect();
    assert_eq!(coeffs, vec![vec!["1"], vec!["1"], vec!["1", "2"]]);
    assert_eq!(v["engine_version"], nilorb::ENGINE_VERSION);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn json_is_canonical() {
    for args in [
        &["compute", "--kind", "A", "--g", "2", "--N", "5"][..],
        &["compute", "--kind", "H", "--g", "1", "--n", "3"][..],
        &["verify", "kwi", "--g", "2", "--N", "3", "--Q", "8"][..],
        &["oracle", "--check", "M", "--g", "2", "--n", "2", "--q", "3", "--format", "json"][..],
        &["scan", "--g", "2", "--Nmax", "4"][..],
    ] {
        let (code, out, _) = nilorb(args);
        assert_eq!(code, 0, "{args:?}");
        let reserialized = serde_json::to_string(&json(&out)).unwrap() + "\n";
        assert_eq!(out, reserialized, "{args:?}");
        // reruns are byte-identical
        assert_eq!(nilorb(args).1, out);
    }
}

#[test]
fn timing_is_opt_in() {
    let (_, out, _) = nilorb(&["--timing", "compute", "--kind", "A", "--g", "2", "--n", "2"]);
    assert!(json(&out)["timing_ms"].is_u64());
}

#[test]
fn csv_rows_per_coefficient() {
    let (code, out, _) = nilorb(&["compute", "--kind", "A", "--g", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "kind,g,n,s,coeff\nA,2,2,0,0\nA,2,2,1,2\n");
    let (code, _, err) = nilorb(&["compute", "--kind", "H", "--g", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a polynomial"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["compute", "--kind", "A", "--g", "0", "--n", "2"][..],
        &["compute", "--kind", "A", "--g", "2", "--n", "0"][..],
        &["compute", "--kind", "Z", "--g", "2", "--n", "2"][..],
        &["compute", "--kind", "A", "--g", "2"][..],
        &["compute", "--kind", "A", "--g", "2", "--n", "2", "--N", "3"][..],
        &["verify", "kwi", "--g", "2", "--N", "3"][..],
        &["oracle", "--check", "M", "--g", "2", "--n", "4", "--q", "2"][..],
        &["oracle", "--check", "M", "--g", "2", "--n", "2", "--q", "6"][..],
        &["oracle", "--check", "nilcount", "--lambda", "2", "--f", "x^2+1", "--q", "2"][..],
        &["cache", "load", "--kind", "A", "--g", "2", "--n", "2"][..],
        &["bogus"][..],
    ] {
        let (code, _, err) = nilorb(args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn verify_examples() {
    let (code, out, _) = nilorb(&["verify", "kwi", "--g", "2", "--N", "3", "--Q", "12"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["report"]["passed"], true);
    assert_eq!(nilorb(&["verify", "g1-product", "--N", "6", "--Q", "10"]).0, 0);
    assert_eq!(nilorb(&["verify", "thm5-routes", "--g", "3", "--N", "4"]).0, 0);
}

#[test]
fn perturbed_verification_exits_1_with_location() {
    let (code, out, _) = nilorb(&["verify", "kwi", "--g", "2", "--N", "3", "--Q", "8", "--perturb", "2,1"]);
    assert_eq!(code, 1);
    let m = &json(&out)["report"]["mismatch"];
    assert_eq!((m["x_degree"].as_u64(), m["q_degree"].as_u64()), (Some(2), Some(1)));
}

#[test]
fn oracle_examples() {
    let (code, out, _) = nilorb(&["oracle", "--check", "M", "--g", "2", "--n", "2", "--q", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert!(rows.iter().all(|r| r["pipeline"] == "5" && r["oracle"] == "5" && r["match"] == true));

    let (code, out, _) = nilorb(&["oracle", "--check", "IA", "--g", "2", "--n", "3", "--q", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "quantity,pipeline,oracle,match\nI,32,32,true\nA,32,32,true\n");

    let (code, out, _) = nilorb(&["oracle", "--check", "nilcount", "--lambda", "2,1", "--f", "x", "--q", "3"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().split_whitespace().eq(["nilcount", "27", "27", "yes"]));

    let (code, _, _) = nilorb(&["oracle", "--check", "nilcount-total", "--n", "3", "--q", "2"]);
    assert_eq!(code, 0);
}

fn cache_dir_args<'a>(dir: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["--cache-dir", dir];
    v.extend_from_slice(rest);
    v
}

#[test]
fn cache_store_load_and_corruption() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let key = ["--kind", "A", "--g", "2", "--n", "6"];

    let mut store = vec!["cache", "store"];
    store.extend_from_slice(&key);
    let (code, out, _) = nilorb(&cache_dir_args(dir, &store));
    assert_eq!(code, 0);
    let stored = json(&out);
    let path = stored["path"].as_str().unwrap().to_string();

    let mut load = vec!["cache", "load"];
    load.extend_from_slice(&key);
    let (code, out, err) = nilorb(&cache_dir_args(dir, &load));
    assert_eq!(code, 0);
    let loaded = json(&out);
    assert_eq!(loaded["hit"], true);
    assert_eq!(loaded["entry"], stored["entry"]);
    assert!(err.is_empty());

    fs::write(&path, "{\"truncated\": ").unwrap();
    let (code, out, err) = nilorb(&cache_dir_args(dir, &load));
    assert_eq!(code, 0);
    assert!(err.contains("warning"), "{err}");
    let recovered = json(&out);
    assert_eq!(recovered["hit"], false);
    assert_eq!(recovered["entry"], stored["entry"]);
    // the recomputed entry replaced the corrupt one
    assert_eq!(json(&nilorb(&cache_dir_args(dir, &load)).1)["hit"], true);
}

#[test]
fn compute_uses_cache_transparently() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().to_str().unwrap();
    let args = ["compute", "--kind", "I", "--g", "2", "--N", "4"];
    let (_, first, _) = nilorb(&cache_dir_args(dir, &args));
    assert_eq!(fs::read_dir(dir).unwrap().count(), 4);
    let (_, second, _) = nilorb(&cache_dir_args(dir, &args));
    assert_eq!(first, second);
    assert_eq!(first, nilorb(&args).1);
}

#[test]
fn binary_reads_cache_dir_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_nilorb"))
        .args(["compute", "--kind", "A", "--g", "2", "--n", "4", "--format", "pretty"])
        .env("NILORB_CACHE", tmp.path())
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        "q^9 + q^7 + q^6 + 4q^5 + 2q^4 + 7q^3 + 4q^2 + 2q\n"
    );
    assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 1);

    let status = Command::new(env!("CARGO_BIN_EXE_nilorb"))
        .args(["compute", "--kind", "A", "--g", "0", "--n", "4"])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
}
