use std::process::{Command, Output};

fn bigdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bigdeg")).args(args).env_remove("BIGDEG_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Output lines other than the `#` header.
fn body(o: &Output) -> Vec<String> {
    stdout(o).lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

#[test]
fn chain_degrees() {
    let o = bigdeg(&["degrees", "--class", "linear-order", "--max-size", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = body(&o);
    assert_eq!(rows[0], "spec,target,degree,methods,depth,flags");
    let degrees: Vec<&str> = rows[1..].iter().map(|r| r.split(',').nth(2).unwrap()).collect();
    assert_eq!(degrees, ["1", "2", "16", "272"]);
}

#[test]
fn rado_vertex_row() {
    let o = bigdeg(&["degrees", "--class", "rado", "--max-size", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = body(&o);
    assert_eq!(rows.len(), 1);
    assert!(rows[0].contains(" T=1 "), "{rows:?}");
}

#[test]
fn flagged_rows_exit_two() {
    let o = bigdeg(&["degrees", "--class", "triangle-free", "--max-size", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("unsupported"));
}

#[test]
fn header_echoes_seed_and_depth() {
    let o = bigdeg(&["tree", "--class", "rado", "--depth", "2", "--seed", "99"]);
    let header = stdout(&o).lines().next().unwrap().to_string();
    assert!(header.starts_with("# bigdeg 0.1.0 command=tree config="), "{header}");
    assert!(header.contains(" seed=99 depth=2"));
    let other = bigdeg(&["tree", "--class", "rado", "--depth", "2", "--seed", "98"]);
    assert_ne!(stdout(&other).lines().next().unwrap(), header);
}

#[test]
fn type_catalog_sizes() {
    for (class, n, lines) in [("linear-order", "2", 2), ("linear-order", "1", 1), ("rado", "2", 4)] {
        let o = bigdeg(&["types", "--class", class, "--size", n]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(body(&o).len(), lines, "{class} {n}");
    }
    let unsupported = bigdeg(&["types", "--class", "triangle-free", "--size", "3"]);
    assert_eq!(unsupported.status.code(), Some(2));
}

#[test]
fn tree_dump_matches_the_library() {
    let o = bigdeg(&["tree", "--class", "linear-order", "--depth", "3"]);
    let prefix = bigdeg_core::build_prefix(&bigdeg_core::ClassSpec::linear_order(), 4).unwrap();
    let dump = bigdeg_core::build_coding_tree(&prefix, 3).unwrap().dump();
    let text = stdout(&o);
    let (_, rest) = text.split_once('\n').unwrap();
    assert_eq!(rest, dump);
    let csv = bigdeg(&["tree", "--class", "linear-order", "--depth", "3", "--format", "csv"]);
    assert_eq!(body(&csv)[0], "level,parent,literals,coding");
    assert_eq!(body(&csv).len(), dump.lines().count());
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["degrees", "--class", "rado", "--max-size", "2", "--format", "json"][..],
        &["types", "--class", "digraph", "--size", "2", "--format", "csv"],
        &["lab", "--theorem", "milliken", "--params", "k=2,r=2,n=3"],
    ] {
        let a = bigdeg(args);
        let b = bigdeg(&[args, &["--jobs", "1"]].concat());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_quick_skips_deep_scans() {
    let o = bigdeg(&["verify", "--quick"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let rows = body(&o);
    assert!(rows.iter().all(|r| r.starts_with("PASS") || r.starts_with("SKIP")));
    assert!(rows.iter().any(|r| r.starts_with("SKIP chain-scan-reference-prefix")));
    assert!(rows.iter().any(|r| r.starts_with("PASS rado-edge")));
}

#[test]
fn verify_full_run() {
    let o = bigdeg(&["verify", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(body(&o)[1..].iter().all(|r| r.split(',').nth(1) == Some("PASS")));
}

#[test]
fn injected_fault_is_reported() {
    let o = bigdeg(&["verify", "--quick", "--inject-fault", "perturb-c5"]);
    assert_eq!(o.status.code(), Some(2));
    let rows = body(&o);
    assert!(rows.iter().any(|r| r.starts_with("FAIL tangent-integrality")));
    assert!(rows.iter().any(|r| r.starts_with("FAIL chain-formula-vs-generation")));
}

#[test]
fn lab_runs() {
    let six = bigdeg(&["lab", "--theorem", "ramsey", "--params", "n=6,k=2,r=2,target=3"]);
    assert_eq!(six.status.code(), Some(0));
    assert!(body(&six).contains(&"verdict all-colorings-admit-witness".to_string()));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witness.json");
    let five = bigdeg(&[
        "lab", "--theorem", "ramsey", "--params", "n=5;k=2;r=2;target=3",
        "--emit-witness", path.to_str().unwrap(), "--format", "csv",
    ]);
    assert_eq!(five.status.code(), Some(0));
    assert!(body(&five)[1].ends_with(",true"));
    let witness: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(witness["items"].as_array().unwrap().len(), 10);

    let hl = bigdeg(&["lab", "--theorem", "hl", "--params", "m=2,r=2,n=3"]);
    assert!(body(&hl).contains(&"verdict all-colorings-admit-witness".to_string()));
}

#[test]
fn lab_budget_and_environment() {
    let o = bigdeg(&["lab", "--theorem", "hl", "--params", "m=2,r=2,n=3", "--budget", "2^3"]);
    assert_eq!(o.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_bigdeg"))
        .args(["lab", "--theorem", "hl", "--params", "m=2,r=2,n=3"])
        .env("BIGDEG_BUDGET", "20")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    assert!(stdout(&env).contains("budget=20"));
    // the flag beats the environment
    let flag = Command::new(env!("CARGO_BIN_EXE_bigdeg"))
        .args(["lab", "--theorem", "hl", "--params", "m=2,r=2,n=3", "--budget", "2^20"])
        .env("BIGDEG_BUDGET", "20")
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "class = \"rado\"\ncolour = 3\n").unwrap();
    let o = bigdeg(&["degrees", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("colour"), "{err}");

    assert_eq!(bigdeg(&["degrees", "--class", "no-such-class"]).status.code(), Some(1));
    assert_eq!(bigdeg(&["degrees"]).status.code(), Some(1));
    assert_eq!(bigdeg(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bigdeg(&["lab", "--theorem", "hl", "--params", "m=2,q=1,n=3"]).status.code(), Some(1));
    assert_eq!(bigdeg(&["lab", "--theorem", "ramsey", "--params", "n=3,k=2,r=2,target=4"]).status.code(), Some(1));
    assert_eq!(bigdeg(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_document_with_class_file() {
    let dir = tempfile::tempdir().unwrap();
    let class = bigdeg_core::document::class_to_toml(&bigdeg_core::ClassSpec::forb_clique(4).unwrap()).unwrap();
    std::fs::write(dir.path().join("k4.toml"), class).unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "class_file = \"k4.toml\"\nformat = \"csv\"\nseed = 5\ndepth = 2\n").unwrap();
    let o = bigdeg(&["tree", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().contains("seed=5 depth=2"));
    assert_eq!(text.lines().nth(1), Some("level,parent,literals,coding"));
    // a malformed class document is located
    std::fs::write(dir.path().join("k4.toml"), "kind = \"forb\"\nrelations = 7\n").unwrap();
    let o = bigdeg(&["tree", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("k4.toml"));
}
