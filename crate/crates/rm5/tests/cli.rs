use std::path::Path;

use rm5::cli::run;
use rm5::formats::{from_text, load, CurveFile, QfFile};

fn rm5(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("rm5").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn invariants_of_x5_minus_1() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", r#"{"field": "q", "coeffs": ["-1", "0", "0", "0", "0", "1", "0"]}"#);
    let (code, out) = rm5(&["invariants", "--curve", &f]);
    assert_eq!(code, 0);
    assert!(out.contains("igusa-clebsch: (0 : 0 : 0 : 1)"), "{out}");
    assert!(out.contains("clebsch: (A, B, C, D)"));
    let (code, out) = rm5(&["invariants", "--curve", &f, "--field", "q5"]);
    assert_eq!(code, 0);
    assert!(out.contains("(0 : 0 : 0 : 1)"));
}

#[test]
fn invariants_field_mismatch_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.json", r#"{"field": "q5", "coeffs": ["sqrt5", "0", "0", "0", "0", "1", "0"]}"#);
    assert_eq!(rm5(&["invariants", "--curve", &f, "--field", "q"]).0, 1);
    assert_eq!(rm5(&["invariants", "--curve", &f]).0, 0);
    assert_eq!(rm5(&["invariants", "--curve", "/nonexistent/c.json"]).0, 1);
}

#[test]
fn classify_points() {
    let (code, out) = rm5(&["classify", "--mn", "1", "1", "--field", "q5"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("case 1a"), "{out}");
    let (code, out) = rm5(&["classify", "--mn", "1", "0", "--field", "q"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("case 4"), "{out}");
    let (code, out) = rm5(&["classify", "--mn", "-1/2", "3", "--field", "q"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("case "));
    let (code, out) = rm5(&["classify", "--ic", "8", "1", "3", "8/3125", "--field", "q"]);
    assert_eq!(code, 0, "{out}");
    let (code, _) = rm5(&["classify", "--gh", "0", "7", "--field", "q"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rm5(&["classify", "--mn", "1.5", "0", "--field", "q"]).0, 2);
    assert_eq!(rm5(&["classify", "--mn", "1", "0"]).0, 2);
    assert_eq!(rm5(&["classify", "--mn", "1", "0", "--gh", "1", "1", "--field", "q"]).0, 2);
    assert_eq!(rm5(&["replay", "--chain", "other"]).0, 2);
    assert_eq!(rm5(&["frobnicate"]).0, 2);
    assert_eq!(rm5(&["replay", "--chain", "infinity", "--rediscover"]).0, 2);
    assert_eq!(rm5(&["--help"]).0, 0);
}

#[test]
fn replay_rm5_final_line() {
    let (code, out) = rm5(&["replay", "--chain", "rm5"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# rm5 replay\nversion: "));
    assert_eq!(out.lines().last().unwrap(), "Q8 = x1^2 - 5*x2^2 + (m^2 - 5*n^2 - 5)*x3^2 : PASS");
    assert!(!out.contains("FAIL"));
}

#[test]
fn replay_infinity() {
    let (code, out) = rm5(&["replay", "--chain", "infinity"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().last().unwrap().ends_with(": PASS"));
}

#[test]
fn replay_with_rediscovery() {
    let (code, out) = rm5(&["replay", "--chain", "rm5", "--rediscover"]);
    assert_eq!(code, 0);
    assert!(out.contains("# rediscovery"));
    assert_eq!(out.matches("(same)").count(), 6, "{out}");
}

#[test]
fn model_writes_a_curve_that_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    let p = path.to_str().unwrap();
    let (code, out) = rm5(&["model", "--mn", "1", "1", "--field", "q5", "--out", p]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("invariant roundtrip: PASS"));
    let f: CurveFile = load(&path).unwrap();
    assert_eq!(f.coeffs.len(), 7);
    let (code, out) = rm5(&["invariants", "--curve", p]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn model_norm_obstruction_is_a_domain_error() {
    assert_eq!(rm5(&["model", "--mn", "4", "1", "--field", "q"]).0, 1);
    let (code, out) = rm5(&["model", "--mn", "4", "1", "--field", "q5"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn model_with_witness() {
    // u^2 - 5 v^2 = -(1 - 5 - 5) = 9
    let (code, out) = rm5(&["model", "--mn", "1", "1", "--field", "q", "--witness", "3", "0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("eta = 3"));
    assert_eq!(rm5(&["model", "--mn", "1", "1", "--field", "q", "--witness", "1", "0"]).0, 1);
}

#[test]
fn conic_solve_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let yes = write(dir.path(), "yes.json", r#"{"vars": [], "gram": ["1", "0", "0", "0", "1", "0", "0", "0", "-2"]}"#);
    let (code, out) = rm5(&["conic", "--solve", &yes]);
    assert_eq!(code, 0);
    assert!(out.starts_with("solvable\npoint: ("));
    assert!(out.contains("value at point: 0"));
    let no = write(dir.path(), "no.json", r#"{"vars": [], "gram": ["1", "0", "0", "0", "1", "0", "0", "0", "-3"]}"#);
    let (code, out) = rm5(&["conic", "--solve", &no]);
    assert_eq!(code, 0);
    assert!(out.starts_with("unsolvable"));
    assert!(out.contains("= -1"), "{out}");
    let poly = write(dir.path(), "p.json", r#"{"vars": ["t"], "gram": ["t", "0", "0", "0", "1", "0", "0", "0", "-3"]}"#);
    assert_eq!(rm5(&["conic", "--solve", &poly]).0, 1);
}

#[test]
fn conic_equivalence() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"vars": [], "gram": ["1", "0", "0", "0", "1", "0", "0", "0", "1"]}"#);
    let b = write(dir.path(), "b.json", r#"{"vars": [], "gram": ["2", "1", "0", "1", "1", "0", "0", "0", "1"]}"#);
    let c = write(dir.path(), "c.json", r#"{"vars": [], "gram": ["1", "0", "0", "0", "1", "0", "0", "0", "-1"]}"#);
    assert_eq!(rm5(&["conic", "--equivalent", &a, &b]), (0, "equivalent: true\n".to_string()));
    assert_eq!(rm5(&["conic", "--equivalent", &a, &c]), (0, "equivalent: false\n".to_string()));
}

#[test]
fn reduce_degree_writes_form_and_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.json", r#"{"vars": ["t"], "gram": ["t^4 + 1", "t^3 + t", "t^3 + t", "t^2 - 1"]}"#);
    let out_path = dir.path().join("r.json");
    let tr_path = dir.path().join("r.txt");
    let (code, out) = rm5(&[
        "reduce", "--qf", &q, "--degree", "1", "--out", out_path.to_str().unwrap(), "--transcript", tr_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    let r: QfFile = load(&out_path).unwrap();
    let want = rm5_core::qf_reduce::PolyQF::parse("(1 - 3*t^2)*x1^2 + 4*t*x1*x2 + (t^2 - 1)*x2^2", 2, &["t"]).unwrap();
    assert_eq!(r.to_form().unwrap(), want);
    let tr = std::fs::read_to_string(&tr_path).unwrap();
    assert!(tr.contains("== Q2 =="));
    assert!(tr.contains("basis:"));
}

#[test]
fn reduce_disc_square_and_shift() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(dir.path(), "q.json", r#"{"vars": ["t"], "gram": ["1", "t/2", "t/2", "t^2"]}"#);
    let (code, out) = rm5(&["reduce", "--qf", &q, "--disc-square", "t"]);
    assert_eq!(code, 0, "{out}");
    let json_end = out.find("# reduce").unwrap();
    let r: QfFile = from_text(&out[..json_end]).unwrap();
    let before: QfFile = load(Path::new(&q)).unwrap();
    let t2 = rm5_core::poly::poly("t^2");
    assert_eq!(r.to_form().unwrap().discriminant(), before.to_form().unwrap().discriminant().div_exact(&t2).unwrap());
    let (code, out) = rm5(&["reduce", "--qf", &q, "--shift", "t=-1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("shift: t -> t + -1"), "{out}");
    let (code, _) = rm5(&["reduce", "--qf", &q, "--disc-square", "t + 7"]);
    assert_eq!(code, 1);
}

#[test]
fn reduce_disc_partial() {
    let dir = tempfile::tempdir().unwrap();
    let q = write(
        dir.path(),
        "q.json",
        r#"{"vars": ["t"], "gram": ["t", "0", "0", "0", "t", "0", "0", "0", "1"]}"#,
    );
    let (code, out) = rm5(&["reduce", "--qf", &q, "--disc-partial", "t", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("scale:"), "{out}");
    assert_eq!(rm5(&["reduce", "--qf", &q, "--disc-partial", "t", "1"]).0, 1);
}

#[test]
fn families() {
    let (code, out) = rm5(&["family", "--mestre", "1", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("invariant match: PASS"));
    assert!(out.contains("(g, h) = ("));
    let (code, out) = rm5(&["family", "--brumer", "1", "2", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("invariant match: PASS"));
}

#[test]
fn experiment_report_is_deterministic() {
    let args = ["experiment", "--pd", "5", "--samples", "12", "--height", "10", "--seed", "7"];
    let (code, a) = rm5(&args);
    assert_eq!(code, 0);
    assert_eq!(rm5(&args).1, a);
    let header: Vec<&str> = a.lines().take(7).collect();
    assert_eq!(header[0], "# rm5 experiment");
    assert!(header[1].starts_with("version: "));
    assert_eq!(&header[2..6], ["seed: 7", "D: 5", "samples: 12", "height: 10"]);
    assert!(a.contains("not equivalent: 0"));
}

#[test]
fn experiment_needs_provider_for_other_d() {
    assert_eq!(rm5(&["experiment", "--pd", "8", "--samples", "3"]).0, 1);
    assert_eq!(rm5(&["experiment", "--pd", "7", "--samples", "3"]).0, 1);
}

#[test]
fn experiment_with_provider_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = rm5::formats::IcProviderFile::from_provider(&rm5_core::experiments::ICProvider::builtin_d5());
    let path = dir.path().join("ic.json");
    rm5::formats::save(&path, &file).unwrap();
    let (code, out) =
        rm5(&["experiment", "--pd", "5", "--samples", "5", "--height", "10", "--seed", "1", "--ic-file", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("provider: "));
}
