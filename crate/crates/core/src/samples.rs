//! Small grammars used throughout the tests, benches and the CLI.

use std::collections::BTreeMap;

use crate::syntax::{parse_category, parse_grammar_file, Ccg, ConjGrammar, GrammarFile, PrimCat};
use crate::transforms::{BundleEntry, QuotientBundle};

fn cg(text: &str) -> ConjGrammar {
    match parse_grammar_file(text).expect("sample grammar parses") {
        GrammarFile::Cg(g) => g,
        other => panic!("expected a conjunctive grammar, got {}", other.kind()),
    }
}

fn ccg(target: &str, axioms: &[(&str, char)]) -> Ccg {
    let axioms = axioms
        .iter()
        .map(|(c, a)| (parse_category(c).expect("sample category parses"), *a));
    Ccg::new([], PrimCat::new(target), axioms).expect("sample axioms are basic")
}

/// `b aⁿ c aⁿ c aⁿ`, n ≥ 1, as a conjunctive grammar.
pub fn triple_power_cg() -> ConjGrammar {
    cg("kind: cg
terminals: a b c
start: S
S -> b B c A & b A c B ;
A -> a A | a ;
B -> a B a | c ;
")
}

/// `b aⁿ c aⁿ c aⁿ`, n ≥ 1, as a conjunctive categorial grammar.
pub fn triple_power_ccg() -> Ccg {
    ccg(
        "s",
        &[
            ("r", 'a'),
            ("r/r", 'a'),
            ("p", 'c'),
            ("p/q", 'a'),
            ("p\\q", 'a'),
            ("p\\(x/r)", 'c'),
            ("(r\\y)/p", 'c'),
            ("s/(x & y)", 'b'),
        ],
    )
}

pub fn is_triple_power(w: &str) -> bool {
    let Some(rest) = w.strip_prefix('b') else {
        return false;
    };
    let parts: Vec<&str> = rest.split('c').collect();
    parts.len() == 3
        && !parts[0].is_empty()
        && parts
            .iter()
            .all(|p| p.len() == parts[0].len() && p.chars().all(|c| c == 'a'))
}

/// `b aⁿ c aⁿ`, n ≥ 0, as a basic categorial grammar.
pub fn mirror_bcg() -> Ccg {
    ccg(
        "s",
        &[("s/p", 'b'), ("p", 'c'), ("p/q", 'a'), ("p\\q", 'a')],
    )
}

/// `b aⁿ c aⁿ`, n ≥ 0, as a context-free grammar.
pub fn mirror_cfg() -> ConjGrammar {
    cg("kind: cg
terminals: a b c
start: S
S -> b A ;
A -> a A a | c ;
")
}

pub fn is_mirror(w: &str) -> bool {
    let Some(rest) = w.strip_prefix('b') else {
        return false;
    };
    let parts: Vec<&str> = rest.split('c').collect();
    parts.len() == 2
        && parts[0].len() == parts[1].len()
        && parts.iter().all(|p| p.chars().all(|c| c == 'a'))
}

/// Grammar for sequential NOR circuits evaluating to 1 (start `T`) or 0 (`F`).
pub fn cvp_grammar() -> ConjGrammar {
    cg("kind: cg
terminals: '0' '1' a b
start: T
T -> A b F & C F | '1' T | '1' F | '1' ;
F -> A b T | C T | '0' T | '0' F | '0' ;
A -> a A | eps ;
C -> a C A b | a C '0' | a C '1' | b ;
")
}

/// Quotient bundle for the language `{ab}`: the quotient by `a` is `{b}`,
/// the quotient by `b` is empty.
pub fn ab_bundle() -> QuotientBundle {
    let g = cg("kind: cg
terminals: a b
start: S1
S1 -> b ;
");
    let mut entries = BTreeMap::new();
    entries.insert(
        'a',
        BundleEntry {
            grammar: Some(g),
            eps: false,
        },
    );
    entries.insert(
        'b',
        BundleEntry {
            grammar: None,
            eps: false,
        },
    );
    QuotientBundle::new(vec!['a', 'b'], entries).expect("disjoint, odd-form sample")
}

/// Quotient bundle for the language `{a}`: the quotient by `a` is `{ε}`.
pub fn single_letter_bundle() -> QuotientBundle {
    let mut entries = BTreeMap::new();
    entries.insert(
        'a',
        BundleEntry {
            grammar: None,
            eps: true,
        },
    );
    QuotientBundle::new(vec!['a'], entries).expect("trivial sample")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates() {
        assert!(is_triple_power("bacaca"));
        assert!(is_triple_power("baacaacaa"));
        assert!(!is_triple_power("bcc"));
        assert!(!is_triple_power("bacacaa"));
        assert!(is_mirror("bc"));
        assert!(is_mirror("baaca a".replace(' ', "").as_str()));
        assert!(!is_mirror("bacaa"));
        assert!(!is_mirror("b"));
    }
}
