use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn qca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qca"))
        .args(args)
        .env_remove("QCA_RESOURCE_BOUND")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn check_b_accepts() {
    let o = qca(&["check", &path("B.lqca")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("B.lqca: well-formed\n"));
}

#[test]
fn check_b_prime_json_witness() {
    let o = qca(&[
        "check",
        &path("Bprime.lqca"),
        "--format",
        "json",
        "--emit-witness",
    ]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = vec![
        "well_formed",
        "n",
        "r",
        "span",
        "expansion_factor",
        "norm_check",
        "orthogonality_check",
        "witness",
        "elapsed_ms",
    ];
    let mut got = keys.clone();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    assert_eq!(v["well_formed"], false);
    assert_eq!(v["norm_check"], "fail");
    assert_eq!(v["orthogonality_check"], "skipped");
    assert_eq!(v["witness"][0]["config"], "p@0");
    assert_eq!(v["witness"][0]["sq_norm"], "1/4");
}

#[test]
fn check_f_full_report() {
    let o = qca(&[
        "check",
        &path("F.lqca"),
        "--format",
        "json",
        "--emit-witness",
        "--full",
    ]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["norm_check"], "pass");
    assert_eq!(v["orthogonality_check"], "fail");
    let w = &v["witness"][0];
    assert_eq!(
        (
            w["kind"].as_str(),
            w["config"].as_str(),
            w["config2"].as_str()
        ),
        (Some("orthogonality"), Some(""), Some("p@0"))
    );
    assert_eq!(w["inner_product"], "3/5");
}

#[test]
fn json_report_round_trips() {
    let o = qca(&[
        "check",
        &path("F.lqca"),
        "--format",
        "json",
        "--emit-witness",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn sparse_neighborhood_reports_expansion() {
    let o = qca(&["check", &path("sparse.lqca"), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["span"], 3);
    assert_eq!(v["expansion_factor"], "4/3");
    assert_eq!(v["witness"], serde_json::json!([]));
}

#[test]
fn oracle_inner_product() {
    let o = qca(&[
        "oracle",
        "inner",
        &path("F.lqca"),
        "--config",
        "",
        "--config2",
        "p@0",
    ]);
    assert_eq!((code(&o), stdout(&o)), (0, "3/5\n".to_string()));
    let o = qca(&[
        "oracle",
        "inner",
        &path("F.lqca"),
        "--config",
        "",
        "--config2",
        "p@0",
        "--direct",
        "--interval",
        "-1:0",
    ]);
    assert_eq!(stdout(&o), "3/5\n");
    let o = qca(&[
        "oracle",
        "inner",
        &path("F.lqca"),
        "--config",
        "",
        "--config2",
        "p@0",
        "--direct",
        "--interval",
        "0:0",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn oracle_norm_and_step() {
    let o = qca(&["oracle", "norm", &path("Bprime.lqca"), "--config", "p@0"]);
    assert_eq!(stdout(&o), "1/4\n");
    let o = qca(&["oracle", "step", &path("rotation.lqca"), "--config", "p@0"]);
    assert_eq!(stdout(&o), "4/5 |q@0>\n3/5 |p@0>\n");
    let o = qca(&["oracle", "norm", &path("B.lqca"), "--config", "x@0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn oracle_window() {
    let o = qca(&["oracle", "window", &path("B.lqca"), "--radius", "2"]);
    assert_eq!(code(&o), 0);
    let o = qca(&["oracle", "window", &path("Bprime.lqca"), "--radius", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("\"p@0\" has squared norm 1/4"));
}

#[test]
fn resource_bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qca"))
        .args(["oracle", "window", &path("B.lqca"), "--radius", "2"])
        .env("QCA_RESOURCE_BOUND", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource bound 10"));
}

#[test]
fn batch_mode_is_sorted_and_fails_on_rejection() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["F.lqca", "B.lqca", "Bprime.lqca"] {
        std::fs::copy(data(name), dir.path().join(name)).unwrap();
    }
    let o = qca(&["check", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let order: Vec<&str> = out.lines().filter(|l| !l.starts_with(' ')).collect();
    assert_eq!(
        order,
        vec![
            "B.lqca: well-formed",
            "Bprime.lqca: not well-formed",
            "F.lqca: not well-formed",
            "3 files: 1 well-formed, 2 not well-formed, 0 errors"
        ]
    );

    let good = tempfile::tempdir().unwrap();
    std::fs::copy(data("B.lqca"), good.path().join("B.lqca")).unwrap();
    assert_eq!(code(&qca(&["check", good.path().to_str().unwrap()])), 0);

    std::fs::write(good.path().join("broken.lqca"), "states q p\n").unwrap();
    assert_eq!(code(&qca(&["check", good.path().to_str().unwrap()])), 2);
}

#[test]
fn parse_errors_exit_two_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.lqca");
    std::fs::write(
        &f,
        "states q p\nquiescent q\nneighborhood 0 1\nq q -> p:1\n",
    )
    .unwrap();
    let o = qca(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    assert_eq!(code(&qca(&["check"])), 2);
}

#[test]
fn normalize_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n.lqca");
    let o = qca(&[
        "normalize",
        &path("irrational.lqca"),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let scales = std::fs::read_to_string(dir.path().join("n.lqca.scales")).unwrap();
    assert!(scales.contains("p : 2"));

    let out = dir.path().join("b.lqca");
    qca(&["normalize", &path("B.lqca"), "-o", out.to_str().unwrap()]);
    let doc = std::fs::read_to_string(&out).unwrap();
    assert!(doc.contains("q p -> q:1\n") && doc.contains("p q -> p:1\n"));
    assert_eq!(code(&qca(&["check", out.to_str().unwrap()])), 0);
}

#[test]
fn simplify_fills_neighborhood() {
    let o = qca(&["simplify", &path("sparse.lqca")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("neighborhood 0 1 2\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expansion factor 4/3, size 8 -> 16"));
    let o = qca(&["simplify", &path("sparse.lqca"), "--span-limit", "2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn plqca_commands() {
    let o = qca(&["plqca", "check", &path("rotation.plqca")]);
    assert_eq!(
        (code(&o), stdout(&o)),
        (
            0,
            "unitary: true\nwell-formed: true\nagree: true\n".to_string()
        )
    );
    let o = qca(&["plqca", "check", &path("perturbed.plqca")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("agree: true"));
    assert_eq!(code(&qca(&["plqca", "check", &path("swap.plqca")])), 0);
    let o = qca(&["plqca", "compose", &path("rotation.plqca")]);
    assert_eq!(
        stdout(&o),
        std::fs::read_to_string(data("rotation.lqca")).unwrap()
    );
}

#[test]
fn sequential_flag_gives_same_verdicts() {
    for f in ["B.lqca", "Bprime.lqca", "F.lqca", "sparse.lqca"] {
        let a = qca(&[
            "check",
            &path(f),
            "--emit-witness",
            "--full",
            "--format",
            "json",
        ]);
        let b = qca(&[
            "--sequential",
            "check",
            &path(f),
            "--emit-witness",
            "--full",
            "--format",
            "json",
        ]);
        let mut va: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
        let mut vb: serde_json::Value = serde_json::from_str(&stdout(&b)).unwrap();
        va["elapsed_ms"] = 0.into();
        vb["elapsed_ms"] = 0.into();
        assert_eq!(va, vb);
    }
}
