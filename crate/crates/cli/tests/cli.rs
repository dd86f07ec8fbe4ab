use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lietriad"))
        .args(args)
        .env_remove("LIETRIAD_SNAPSHOT")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn list_counts() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["list", "e6", "--format", "json"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["list", "g2", "--format", "json"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert!(stdout(&["list", "so12"]).contains("DIII  k = u(6)"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["list", "so4"]), 2);
    assert_eq!(code(&["list", "su9"]), 2);
    assert_eq!(code(&["--max-rank", "8", "list", "su9"]), 0);
    assert_eq!(code(&["classify", "so8", "--format", "yaml"]), 2);
    assert_eq!(code(&["verify", "--weyl-cap", "0"]), 2);
    assert_eq!(code(&["render", "so8:nothing"]), 2);
    assert_eq!(code(&["render", "{\"type\": \"D4\""]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn classify_so12_pair() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["classify", "so12", "--pair", "u6,u6", "--format", "json"])).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let twisted = rows.iter().find(|r| r["twist"] == "tau").unwrap();
    assert_eq!(twisted["k2"], "u(6)′");
    assert_eq!((twisted["rank"].as_u64(), twisted["order"].as_u64()), (Some(2), Some(2)));
    for key in ["g", "k1", "k2", "twist", "rank", "order", "self_dual", "diagram"] {
        assert!(twisted.get(key).is_some(), "{key}");
    }
}

#[test]
fn classify_so8_markdown_and_f4() {
    let md = stdout(&["classify", "so8", "--format", "markdown"]);
    for a in ["so(1)⊕so(7)", "so(2)⊕so(6)", "so(3)⊕so(5)"] {
        for c in ["so(1)⊕so(7)", "so(2)⊕so(6)", "so(3)⊕so(5)"] {
            let plain = format!("| (so(8), {a}, {c}) |");
            let twisted = format!("| (so(8), {a}, κ({c})) |");
            // Unordered pairs: each (a, c) shows up once in one orientation.
            let n = |s: &str| md.matches(s).count();
            let (p, t) = (n(&plain), n(&twisted));
            let (pr, tr) = (n(&format!("| (so(8), {c}, {a}) |")), n(&format!("| (so(8), {c}, κ({a})) |")));
            assert!(a == c && p == 1 && t == 1 || a != c && p + pr == 1 && t + tr == 1, "{a} {c}");
        }
    }
    assert!(stdout(&["classify", "f4", "--table"]).contains("| (f4, su(2)⊕sp(3), so(9)) | 1 | 2 |"));
    let kappa2 = stdout(&["classify", "so8", "--pair", "so1+so7,so3+so5", "--twist", "kappa2"]);
    assert!(kappa2.contains("κ(so(3)⊕so(5)))  rank=0 order=6"));
}

#[test]
fn verify_scopes() {
    let out = stdout(&["verify", "special-iso"]);
    assert!(out.starts_with("PASS special-iso      18/18"));
    assert_eq!(code(&["verify", "worked-example"]), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["verify", "table2", "--format", "json"])).unwrap();
    assert_eq!(v[0]["suite"], "table2");
    assert!(v[0]["millis"].is_u64());
}

#[test]
fn snapshot_mismatch_fails() {
    let dir = std::env::temp_dir().join(format!("lietriad-snap-{}", std::process::id()));
    std::fs::write(&dir, "[]\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lietriad"))
        .args(["verify", "snapshot"])
        .env("LIETRIAD_SNAPSHOT", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(code(&["classify", "g2", "--snapshot", dir.to_str().unwrap()]), 1);
    std::fs::remove_file(&dir).unwrap();
    let good = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/catalog.json");
    assert_eq!(code(&["verify", "snapshot", "--snapshot", good]), 0);
}

#[test]
fn render_outputs() {
    let dot = stdout(&["render", "so8:BDI(3,5)", "--format", "dot"]);
    assert!(dot.contains("a3 -- a4 [style=dashed, dir=both"));
    assert!(!dot.contains("fillcolor=black"));
    let text = stdout(&["render", "so12:DIII"]);
    assert!(text.contains("nodes:  1:* 2:o 3:* 4:o 5:* 6:o"));
    let double = stdout(&["render", "so8:so1+so7,kappa(so3+so5)", "--format", "dot"]);
    assert!(double.contains("subgraph cluster_s1") && double.contains("subgraph cluster_s2"));
    assert!(double.contains("{ rank=same; p4; q4; }"));
    // Same bytes for the same input, and JSON feeds back in.
    assert_eq!(double, stdout(&["render", "(so(8), so(1)⊕so(7), κ(so(3)⊕so(5)))", "--format", "dot"]));
    let json = stdout(&["render", "so8:so1+so7,kappa(so3+so5)", "--format", "json"]);
    assert_eq!(stdout(&["render", json.trim(), "--format", "json"]), json);
}
