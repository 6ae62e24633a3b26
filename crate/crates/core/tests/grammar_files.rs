use std::path::PathBuf;

use conjlambek::samples::*;
use conjlambek::syntax::{print_bundle, print_ccg, print_cg};
use conjlambek::{parse_grammar_file, GrammarFile};

fn read(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../grammars")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn reprint(name: &str) -> String {
    let text = read(name);
    let file = parse_grammar_file(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert_eq!(file.to_text(), text, "{name} is not in printed form");
    file.to_text()
}

#[test]
fn shipped_grammars_match_samples() {
    assert_eq!(reprint("triple_power.ccg"), print_ccg(&triple_power_ccg()));
    assert_eq!(reprint("triple_power.cg"), print_cg(&triple_power_cg()));
    assert_eq!(reprint("mirror.bcg"), print_ccg(&mirror_bcg()));
    assert_eq!(reprint("mirror.cg"), print_cg(&mirror_cfg()));
    assert_eq!(reprint("circuit_value.cg"), print_cg(&cvp_grammar()));
    assert_eq!(reprint("ab.bundle"), print_bundle(&ab_bundle()));
    assert_eq!(
        reprint("single_letter.bundle"),
        print_bundle(&single_letter_bundle())
    );
}

#[test]
fn file_kinds() {
    let kind = |n: &str| parse_grammar_file(&read(n)).unwrap().kind();
    assert_eq!(kind("mirror.bcg"), "bcg");
    assert_eq!(kind("triple_power.ccg"), "ccg");
    assert!(matches!(
        parse_grammar_file(&read("ab.bundle")).unwrap(),
        GrammarFile::Bundle(_)
    ));
}
