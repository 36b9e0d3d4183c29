use std::process::{Command, Output};

use autoeval::poly::write_poly_file;
use autoeval::rs;
use autoeval::{DensePoly, FieldContext};

fn autoeval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autoeval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn verify_passes_on_seeded_instances() {
    let out = autoeval(&["verify", "--field", "p=3,m=5", "--degrees", "10,100", "--trials", "50", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for method in ["direct", "horner", "m1", "m2", "best"] {
        let line = text.lines().find(|l| l.starts_with(method)).unwrap();
        assert!(line.split_whitespace().skip(1).all(|c| c == "100"), "{line}");
    }
}

#[test]
fn verify_extension_coefficients() {
    let out = autoeval(&[
        "verify", "--field", "p=2,m=8", "--coeff-degree", "4", "--degrees", "0,1,15,200", "--trials", "20",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("ext_m2"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "--field", "p=3,m=x", "--degrees", "10"][..],
        &["verify", "--field", "p=4,m=2", "--degrees", "10"],
        &["verify", "--field", "p=3,m=2,mod=1,0,2", "--degrees", "10"],
        &["bench", "--field", "p=3,m=5", "--degrees", "10", "--methods", "m7"],
        &["bench", "--field", "p=3,m=5", "--degrees", "10", "--methods", "ext_m2"],
        &["verify", "--field", "p=2,m=8", "--coeff-degree", "3", "--degrees", "10"],
        &["rs", "--words", "0"],
    ] {
        let out = autoeval(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn zero_trials_is_a_vacuous_pass() {
    let out = autoeval(&["verify", "--field", "p=5,m=2", "--degrees", "10", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn bench_rows_match_the_cost_model() {
    let out = autoeval(&["bench", "--field", "p=3,m=5", "--degrees", "10", "--methods", "m1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "p,s,m,n,method,L,predicted_mul,measured_mul,measured_add,horner_mul,wall_ns"
    );
    let rows = csv_rows(&text);
    assert_eq!(rows[0][4], "m1");
    assert_eq!(rows[0][6], "9");

    let out = autoeval(&["bench", "--field", "p=2,m=8", "--degrees", "255", "--methods", "m1"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!((rows[0][5].as_str(), rows[0][6].as_str()), ("4", "33"));

    let out = autoeval(&["bench", "--field", "p=13,m=4", "--degrees", "1000", "--methods", "horner"]);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows[0][7], "1000");
}

#[test]
fn bench_measured_never_exceeds_predicted() {
    for (field, s) in [("p=2,m=8", "1"), ("p=2,m=8", "2"), ("p=3,m=4", "2"), ("p=5,m=3", "1")] {
        let out = autoeval(&[
            "bench", "--field", field, "--coeff-degree", s, "--degrees", "0,1,9,50,300", "--trials", "3",
        ]);
        assert_eq!(out.status.code(), Some(0), "{field} s={s}");
        for row in csv_rows(&stdout(&out)) {
            let predicted: u64 = row[6].parse().unwrap();
            let measured: u64 = row[7].parse().unwrap();
            assert!(measured <= predicted, "{row:?}");
        }
    }
}

#[test]
fn bench_csv_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["1", "4"]
        .iter()
        .map(|threads| {
            let path = dir.path().join(format!("bench-{threads}.csv"));
            let status = Command::new(env!("CARGO_BIN_EXE_autoeval"))
                .env("AUTOEVAL_THREADS", threads)
                .args(["bench", "--field", "p=7,m=3", "--degrees", "5,50,200,340", "--trials", "2", "--seed", "11"])
                .arg("--out")
                .arg(&path)
                .output()
                .unwrap()
                .status;
            assert!(status.success());
            path
        })
        .collect();
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 1 + 4 * 4);
}

#[test]
fn rs_worst_case_totals() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rs.csv");
    let out = autoeval(&["rs", "--demo", "worstcase", "--words", "1", "--out", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("6735 vs 8159"));
    let report = std::fs::read_to_string(&csv).unwrap();
    assert!(report.starts_with("stage,muls,adds\n"));
    assert!(report.contains("alpha_table,253,0"));
    assert!(report.contains("product_table,3570,0"));
    assert!(report.contains("automorphic_total,6735,"));
    assert!(report.contains("horner_total,8159,"));
}

#[test]
fn rs_codewords_and_random_words() {
    let out = autoeval(&["rs", "--demo", "codeword", "--words", "5", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all syndromes are zero"));
    let out = autoeval(&["rs", "--demo", "random", "--words", "3", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agree on all 96 syndromes"));
}

#[test]
fn rs_amortized_report() {
    let out = autoeval(&["rs", "--demo", "worstcase", "--words", "10"]);
    let text = stdout(&out);
    assert!(text.contains(&format!("{} vs {}", 3823 + 2912 * 10, 31 + 8128 * 10)), "{text}");
}

#[test]
fn rs_syndromes_of_a_word_file() {
    let ctx = rs::build_rs_context().unwrap();
    let word = rs::worst_case_word(&ctx);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("word.txt");
    std::fs::write(&path, word.to_text(&ctx)).unwrap();
    let out = autoeval(&["rs", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let expected = rs::syndromes_horner(&ctx, &word).to_text(&ctx);
    assert_eq!(stdout(&out), expected);

    std::fs::write(&path, "00\n".repeat(10)).unwrap();
    let out = autoeval(&["rs", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn eval_reads_a_polynomial_file() {
    let f = FieldContext::with_degree(3, 5).unwrap();
    let poly = DensePoly::from_residues(&f, &[1, 2, 1, 0, 2, 1, 1, 0, 2, 0, 1]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.poly");
    std::fs::write(&path, write_poly_file(&f, &poly)).unwrap();
    let out = autoeval(&["eval", "--poly", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value = poly.evaluate(&f, &f.alpha());
    assert!(text.contains(&format!("value {}", f.encode(&value))), "{text}");
    assert!(text.contains("method m1 L=1 predicted_mul=9 mul=9"), "{text}");

    let out = autoeval(&["eval", "--poly", path.to_str().unwrap(), "--method", "m2", "--depth", "2", "--point", "0,1,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("method m2 L=2"));

    let out = autoeval(&["eval", "--poly", path.to_str().unwrap(), "--method", "ext_m2"]);
    assert_eq!(out.status.code(), Some(2));
}
