use std::path::PathBuf;
use std::process::{Command, Output};

fn grammar(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../grammars")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conjlambek"))
        .args(args)
        .env_remove("CONJLAMBEK_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited normally")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn empty_antecedent_proofs() {
    let s = r"-> ((r\r)\((t\t)\q))\q";
    assert_eq!(code(&["prove", "--calculus", "MALC*", s]), 0);
    assert_eq!(code(&["prove", "--calculus", "MALC", s]), 1);
    assert_eq!(
        code(&["prove", "--calculus", "L*", "--strategy", "exhaustive", s]),
        0
    );
}

#[test]
fn macll_sequents() {
    assert_eq!(code(&["prove", "|- ~p + ~q, p & q"]), 0);
    assert_eq!(code(&["prove", "|- ~p & ~q, p & q"]), 1);
    assert_eq!(code(&["prove", "|- bot, ~p, p"]), 0);
}

#[test]
fn membership_exit_codes() {
    let g = grammar("triple_power.ccg");
    assert_eq!(code(&["member", "--grammar", &g, "bacaca"]), 0);
    assert_eq!(code(&["member", "--grammar", &g, "abc"]), 1);
    assert_eq!(
        code(&[
            "member",
            "--grammar",
            &grammar("triple_power.cg"),
            "baacaacaa"
        ]),
        0
    );
    assert_eq!(
        code(&["member", "--grammar", &grammar("ab.bundle"), "ab"]),
        0
    );
    assert_eq!(
        code(&["member", "--grammar", &grammar("ab.bundle"), "ba"]),
        1
    );
    assert_eq!(code(&["member", "--grammar", "no/such/file.ccg", "a"]), 2);
}

#[test]
fn derivation_output() {
    let out = stdout(&[
        "member",
        "--grammar",
        &grammar("triple_power.ccg"),
        "bacaca",
        "--derivation",
        "--output",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["member"], true);
    assert_eq!(v["derivation"]["head"], "s");
    assert_eq!(v["derivation"]["span"], serde_json::json!([0, 6]));
    let latex = stdout(&[
        "member",
        "--grammar",
        &grammar("triple_power.ccg"),
        "bacaca",
        "--derivation",
        "--output",
        "latex",
    ]);
    assert!(latex.starts_with("\\infer"), "{latex}");
}

#[test]
fn usage_and_budget_errors() {
    assert_eq!(code(&["prove", "--budget", "0", "p -> p"]), 2);
    assert_eq!(code(&["prove", "p & q -> p"]), 2);
    assert_eq!(code(&["prove", "p ->"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    // 3^12 words exceed a budget of 1000.
    assert_eq!(
        code(&[
            "--budget",
            "1000",
            "enumerate",
            "--grammar",
            &grammar("mirror.bcg"),
            "--max-len",
            "12"
        ]),
        3
    );
}

#[test]
fn enumeration_matches_predicate() {
    let out = stdout(&[
        "enumerate",
        "--grammar",
        &grammar("mirror.bcg"),
        "--max-len",
        "6",
    ]);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["bc", "baca", "baacaa"]);
    let lambek = stdout(&[
        "enumerate",
        "--grammar",
        &grammar("mirror.cg"),
        "--max-len",
        "6",
    ]);
    assert_eq!(out, lambek);
}

#[test]
fn translations_reparse_and_agree() {
    let dir = std::env::temp_dir().join(format!("conjlambek-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let reference = stdout(&[
        "enumerate",
        "--grammar",
        &grammar("triple_power.ccg"),
        "--max-len",
        "6",
    ]);
    for to in ["cg", "ccg", "malc"] {
        let path = dir.join(format!("tp.{to}"));
        let p = path.display().to_string();
        assert_eq!(
            code(&[
                "translate",
                "--grammar",
                &grammar("triple_power.ccg"),
                "--to",
                to,
                "--out",
                &p
            ]),
            0
        );
        let again = stdout(&["enumerate", "--grammar", &p, "--max-len", "6"]);
        assert_eq!(again, reference, "translation to {to}");
    }
    // The bundle describes {ab}; the empty-string variant adds ε.
    for (to, want) in [("malc", "ab\n"), ("malc-empty", "ε\nab\n")] {
        let path = dir.join(format!("ab.{to}")).display().to_string();
        assert_eq!(
            code(&[
                "translate",
                "--grammar",
                &grammar("ab.bundle"),
                "--to",
                to,
                "--out",
                &path
            ]),
            0
        );
        assert_eq!(
            stdout(&["enumerate", "--grammar", &path, "--max-len", "3"]),
            want,
            "{to}"
        );
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_is_deterministic() {
    let args = [
        "--output",
        "json",
        "--seed",
        "7",
        "crosscheck",
        "--samples",
        "20",
        "--max-connectives",
        "4",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn odd_form() {
    assert_eq!(
        code(&["check-odd-form", "--grammar", &grammar("ab.bundle")]),
        0
    );
    assert_eq!(
        code(&["check-odd-form", "--grammar", &grammar("mirror.cg")]),
        1
    );
    assert_eq!(
        code(&["check-odd-form", "--grammar", &grammar("mirror.bcg")]),
        2
    );
}

#[test]
fn circuits() {
    assert_eq!(stdout(&["cvp", "encode", "in:0,1 nor:1 nor:2"]), "abab10\n");
    assert_eq!(code(&["cvp", "eval", "in:0,1 nor:1 nor:2"]), 1);
    assert_eq!(code(&["cvp", "eval", "in:0 nor:1"]), 0);
    assert_eq!(code(&["cvp", "member", "b0"]), 0);
    assert_eq!(code(&["cvp", "sat", "b?"]), 0);
    assert_eq!(code(&["cvp", "eval", "in:1 nor:2"]), 2);
    assert_eq!(
        stdout(&["cvp", "fuzz", "--max-gates", "5"]),
        "328 circuits agree\n"
    );
}
