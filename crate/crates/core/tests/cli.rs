use quadladder::dsl::parse_hamiltonian;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quadladder"));
    c.env("QUADLADDER_NO_COLOR", "1");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

pub fn corpus() -> Vec<String> {
    std::fs::read_to_string(data("data/dsl_corpus.txt"))
        .unwrap()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

#[test]
fn golden_bateman_report() {
    let out = run(&["--bateman", "b=1", "--ladder-states", "3", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let golden = data("golden/bateman_b1_states3.json");
    if std::env::var_os("QUADLADDER_BLESS").is_some() {
        std::fs::write(&golden, &out.stdout).unwrap();
    }
    let expected = std::fs::read(&golden).expect("golden file present (set QUADLADDER_BLESS=1 to create)");
    assert!(out.stdout == expected, "report drifted from {}", golden.display());
}

#[test]
fn json_report_is_byte_stable() {
    let args = ["--bateman", "m=2,gamma=3,omega=1/2", "--ladder-states", "2", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["b"], "3");
}

#[test]
fn oscillator_expression() {
    let out = run(&["--expr", "1/2*p1^2 + 1/2*x1^2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let lambdas: Vec<_> = v["spectrum"]["frequencies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["lambda_exact"].clone())
        .collect();
    assert_eq!(lambdas, vec![serde_json::json!([-1, 1, 0, 1]), serde_json::json!([1, 1, 0, 1])]);
}

#[test]
fn exit_codes() {
    let out = run(&["--expr", "x1^3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not quadratic"));

    let out = run(&["--expr", "2*x1^2 + "]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("end of input"));

    assert_eq!(run(&["--bateman", "m=0,gamma=1,omega=1"]).status.code(), Some(2));
    assert_eq!(run(&["--expr", "x1*p1"]).status.code(), Some(2));
    assert_eq!(run(&["--expr", "1/2*p1^2"]).status.code(), Some(0));
}

#[test]
fn model_file_and_out_flag() {
    let dir = std::env::temp_dir().join(format!("quadladder-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let model = dir.join("model.json");
    std::fs::write(&model, r#"{"b": [1, 1]}"#).unwrap();
    let report = dir.join("report.json");
    let out = bin()
        .args(["--model", model.to_str().unwrap(), "--format", "json", "--out", report.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let from_file = std::fs::read(&report).unwrap();
    assert_eq!(from_file, run(&["--bateman", "b=1", "--format", "json"]).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_outputs() {
    let out = run(&["--bateman", "b=1/2", "--ladder-states", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next().unwrap(), "family,n,m,re_E,im_E,square_integrable,annihilated_by");
    assert!(text.contains("vacuum0,0,0,1,0,false,Z1;Z2"));
    assert_eq!(text.lines().count(), 1 + 2 * 4);

    let out = run(&["--sweep", "b=0..2:1", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 2 + 4 + 4);
}

#[test]
fn no_color_env_strips_ansi() {
    let out = run(&["--bateman", "b=1"]);
    assert!(!out.stdout.contains(&0x1b));
}

#[test]
fn dsl_corpus_round_trips() {
    let corpus = corpus();
    assert_eq!(corpus.len(), 30);
    for text in corpus {
        let ast = parse_hamiltonian(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
        let rendered = ast.to_string();
        let again = parse_hamiltonian(&rendered).unwrap_or_else(|e| panic!("{rendered}: {e}"));
        assert_eq!(ast, again, "{text} -> {rendered}");
        assert_eq!(ast.to_polynomial(), again.to_polynomial());
    }
}
