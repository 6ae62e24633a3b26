//! Text format for grammar files.
//!
//! ```text
//! kind: cg                 # cg | bcg | ccg | lambek | bundle
//! terminals: a b c
//! start: S
//! S -> 'b' B 'c' A & 'b' A 'c' B ;
//! A -> a A | a ;
//! ```
//!
//! Categorial files use `target:` and axiom lines `'b' : s/(x & y) ;`;
//! Lambek files add `calculus:`. A bundle lists `alphabet:` and then one
//! `[a]` section per letter holding `eps: true|false` and, optionally, a
//! conjunctive grammar for the quotient by that letter.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::category::{is_identifier, Category};
use super::grammar::{Calculus, Ccg, ConjGrammar, GrammarError, LambekGrammar, Rule, Symbol};
use super::parse::{parse_category_at, SyntaxError};
use crate::transforms::{BundleEntry, QuotientBundle, TransformError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Bundle(#[from] TransformError),
}

/// Any grammar the file format can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrammarFile {
    Cg(ConjGrammar),
    /// Conjunction-free categorial grammar.
    Bcg(Ccg),
    Ccg(Ccg),
    Lambek(LambekGrammar),
    Bundle(QuotientBundle),
}

impl GrammarFile {
    pub fn kind(&self) -> &'static str {
        match self {
            GrammarFile::Cg(_) => "cg",
            GrammarFile::Bcg(_) => "bcg",
            GrammarFile::Ccg(_) => "ccg",
            GrammarFile::Lambek(_) => "lambek",
            GrammarFile::Bundle(_) => "bundle",
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            GrammarFile::Cg(g) => print_cg(g),
            GrammarFile::Bcg(g) => print_categorial("bcg", g),
            GrammarFile::Ccg(g) => print_categorial("ccg", g),
            GrammarFile::Lambek(g) => print_lambek(g),
            GrammarFile::Bundle(b) => print_bundle(b),
        }
    }
}

#[derive(Debug, Clone)]
enum RawSym {
    Quoted(char),
    Word(String, usize),
    Eps,
}

#[derive(Debug)]
enum Stmt {
    Header {
        key: String,
        value: String,
        at: usize,
    },
    Rule {
        head: String,
        alternatives: Vec<Vec<Vec<RawSym>>>,
        at: usize,
    },
    Axiom {
        symbol: char,
        category: Category,
    },
    Section {
        symbol: char,
        at: usize,
    },
}

/// Blanks out `#` comments (outside quotes) so byte offsets stay valid.
fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    let mut in_comment = false;
    while let Some(c) = chars.next() {
        if in_comment {
            if c == '\n' {
                in_comment = false;
                out.push('\n');
            } else {
                out.extend(std::iter::repeat_n(' ', c.len_utf8()));
            }
        } else if c == '\'' {
            out.push(c);
            // copy the quoted character and the closing quote verbatim
            for _ in 0..2 {
                if let Some(&n) = chars.peek() {
                    if n == '\n' {
                        break;
                    }
                    out.push(n);
                    chars.next();
                }
            }
        } else if c == '#' {
            in_comment = true;
            out.push(' ');
        } else {
            out.push(c);
        }
    }
    out
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> SyntaxError {
        SyntaxError::at(self.text, at, msg)
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.bump();
        }
        self.text[start..self.pos].to_string()
    }

    fn quoted(&mut self) -> Result<char, SyntaxError> {
        let at = self.pos;
        self.bump();
        let c = self
            .bump()
            .filter(|c| *c != '\n')
            .ok_or_else(|| self.err(at, "unterminated quoted symbol"))?;
        if self.bump() != Some('\'') {
            return Err(self.err(at, "quoted symbols hold exactly one character"));
        }
        Ok(c)
    }

    fn statements(&mut self) -> Result<Vec<Stmt>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            match self.peek() {
                None => return Ok(out),
                Some('[') => {
                    self.bump();
                    self.skip_inline_ws();
                    let symbol = match self.peek() {
                        Some('\'') => self.quoted()?,
                        Some(c) if c != ']' && !c.is_whitespace() => {
                            self.bump();
                            c
                        }
                        _ => return Err(self.err(self.pos, "expected a symbol after '['")),
                    };
                    self.skip_inline_ws();
                    if self.bump() != Some(']') {
                        return Err(self.err(self.pos, "expected ']'"));
                    }
                    out.push(Stmt::Section { symbol, at });
                }
                Some('\'') => {
                    let symbol = self.quoted()?;
                    self.skip_ws();
                    if self.bump() != Some(':') {
                        return Err(self.err(self.pos, "expected ':' after axiom symbol"));
                    }
                    let start = self.pos;
                    let end = self.text[start..]
                        .find(';')
                        .map(|i| start + i)
                        .ok_or_else(|| self.err(at, "axiom is missing its terminating ';'"))?;
                    let category = parse_category_at(&self.text[start..end], start, self.text)?;
                    self.pos = end + 1;
                    out.push(Stmt::Axiom { symbol, category });
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.word();
                    self.skip_inline_ws();
                    if self.peek() == Some(':') {
                        self.bump();
                        let start = self.pos;
                        let end = self.text[start..]
                            .find('\n')
                            .map_or(self.text.len(), |i| start + i);
                        let value = self.text[start..end].trim().to_string();
                        let vat = start
                            + (self.text[start..end].len()
                                - self.text[start..end].trim_start().len());
                        self.pos = end;
                        out.push(Stmt::Header {
                            key: name,
                            value,
                            at: vat,
                        });
                    } else if self.text[self.pos..].starts_with("->") {
                        self.pos += 2;
                        let alternatives = self.rule_body()?;
                        out.push(Stmt::Rule {
                            head: name,
                            alternatives,
                            at,
                        });
                    } else {
                        return Err(
                            self.err(self.pos, format!("expected ':' or '->' after {name:?}"))
                        );
                    }
                }
                Some(c) => return Err(self.err(at, format!("unexpected character {c:?}"))),
            }
        }
    }

    fn rule_body(&mut self) -> Result<Vec<Vec<Vec<RawSym>>>, SyntaxError> {
        let mut alternatives = vec![vec![Vec::new()]];
        loop {
            self.skip_ws();
            let at = self.pos;
            match self.peek() {
                None => return Err(self.err(at, "rule is missing its terminating ';'")),
                Some(';') => {
                    self.bump();
                    return Ok(alternatives);
                }
                Some('|') => {
                    self.bump();
                    alternatives.push(vec![Vec::new()]);
                }
                Some('&') => {
                    self.bump();
                    alternatives.last_mut().expect("nonempty").push(Vec::new());
                }
                Some('\'') => {
                    let c = self.quoted()?;
                    push_sym(&mut alternatives, RawSym::Quoted(c));
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
                    let w = self.word();
                    let sym = if w == "eps" {
                        RawSym::Eps
                    } else {
                        RawSym::Word(w, at)
                    };
                    push_sym(&mut alternatives, sym);
                }
                Some(c) => {
                    self.bump();
                    push_sym(&mut alternatives, RawSym::Word(c.to_string(), at));
                }
            }
        }
    }
}

fn push_sym(alts: &mut [Vec<Vec<RawSym>>], s: RawSym) {
    alts.last_mut()
        .and_then(|a| a.last_mut())
        .expect("nonempty")
        .push(s);
}

fn parse_symbols(value: &str, at: usize, text: &str) -> Result<Vec<char>, SyntaxError> {
    let mut out = Vec::new();
    for tok in value.split_whitespace() {
        let mut chars = tok.chars();
        let c = match (chars.next(), chars.next(), chars.next(), chars.next()) {
            (Some(c), None, _, _) => c,
            (Some('\''), Some(c), Some('\''), None) => c,
            _ => {
                return Err(SyntaxError::at(
                    text,
                    at,
                    format!("symbol {tok:?} is not a single character"),
                ))
            }
        };
        out.push(c);
    }
    Ok(out)
}

fn parse_bool(value: &str, at: usize, text: &str) -> Result<bool, SyntaxError> {
    match value {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => Err(SyntaxError::at(
            text,
            at,
            format!("expected true or false, found {value:?}"),
        )),
    }
}

/// Rule head, conjuncts of raw symbols, and source line.
type RawRule = (String, Vec<Vec<Vec<RawSym>>>, usize);

/// Statements of one conjunctive grammar (a cg file or a bundle section).
#[derive(Default)]
struct CgParts {
    terminals: Vec<char>,
    nonterminals: Vec<String>,
    start: Option<String>,
    rules: Vec<RawRule>,
}

impl CgParts {
    fn header(
        &mut self,
        key: &str,
        value: &str,
        at: usize,
        text: &str,
    ) -> Result<bool, SyntaxError> {
        match key {
            "terminals" => self.terminals.extend(parse_symbols(value, at, text)?),
            "nonterminals" => {
                for n in value.split_whitespace() {
                    if !is_identifier(n) {
                        return Err(SyntaxError::at(
                            text,
                            at,
                            format!("invalid nonterminal {n:?}"),
                        ));
                    }
                    self.nonterminals.push(n.to_string());
                }
            }
            "start" => {
                if !is_identifier(value) {
                    return Err(SyntaxError::at(
                        text,
                        at,
                        format!("invalid start symbol {value:?}"),
                    ));
                }
                self.start = Some(value.to_string());
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn build(
        self,
        extra_terminals: &BTreeSet<char>,
        text: &str,
    ) -> Result<Option<ConjGrammar>, FormatError> {
        let Some(start) = self.start else {
            if let Some((_, _, rat)) = self.rules.first() {
                return Err(
                    SyntaxError::at(text, *rat, "rules given without a 'start:' line").into(),
                );
            }
            return Ok(None);
        };
        let mut terminals: BTreeSet<char> = self.terminals.into_iter().collect();
        terminals.extend(extra_terminals);
        let mut nts: BTreeSet<String> = self.nonterminals.into_iter().collect();
        nts.insert(start.clone());
        nts.extend(self.rules.iter().map(|(h, _, _)| h.clone()));
        let mut rules = Vec::new();
        for (head, alternatives, _) in self.rules {
            for alt in alternatives {
                let mut conjuncts = Vec::new();
                for body in alt {
                    let mut syms = Vec::new();
                    for raw in body {
                        match raw {
                            RawSym::Eps => {}
                            RawSym::Quoted(c) => {
                                terminals.insert(c);
                                syms.push(Symbol::T(c));
                            }
                            RawSym::Word(w, wat) => {
                                if nts.contains(&w) {
                                    syms.push(Symbol::N(w));
                                } else {
                                    let mut cs = w.chars();
                                    match (cs.next(), cs.next()) {
                                        (Some(c), None) if terminals.contains(&c) => syms.push(Symbol::T(c)),
                                        _ => {
                                            return Err(SyntaxError::at(
                                                text,
                                                wat,
                                                format!("{w:?} is neither a declared terminal nor a nonterminal"),
                                            )
                                            .into())
                                        }
                                    }
                                }
                            }
                        }
                    }
                    conjuncts.push(syms);
                }
                rules.push(Rule::new(&head, conjuncts));
            }
        }
        Ok(Some(ConjGrammar::new(terminals, nts, &start, rules)?))
    }
}

/// Parses any grammar file; the `kind:` header selects the formalism.
pub fn parse_grammar_file(input: &str) -> Result<GrammarFile, FormatError> {
    let text = strip_comments(input);
    let stmts = Scanner {
        text: &text,
        pos: 0,
    }
    .statements()?;
    let kind = match stmts.first() {
        Some(Stmt::Header { key, value, .. }) if key == "kind" => value.clone(),
        _ => return Err(SyntaxError::at(&text, 0, "file must start with a 'kind:' line").into()),
    };
    let body = &stmts[1..];
    match kind.as_str() {
        "cg" => {
            let mut parts = CgParts::default();
            for s in body {
                match s {
                    Stmt::Header { key, value, at } => {
                        if !parts.header(key, value, *at, &text)? {
                            return Err(SyntaxError::at(
                                &text,
                                *at,
                                format!("unknown header {key:?} for kind cg"),
                            )
                            .into());
                        }
                    }
                    Stmt::Rule {
                        head,
                        alternatives,
                        at,
                    } => parts.rules.push((head.clone(), alternatives.clone(), *at)),
                    Stmt::Axiom { .. } | Stmt::Section { .. } => {
                        return Err(SyntaxError::at(
                            &text,
                            0,
                            "axioms and sections are not allowed in a cg file",
                        )
                        .into())
                    }
                }
            }
            match parts.build(&BTreeSet::new(), &text)? {
                Some(g) => Ok(GrammarFile::Cg(g)),
                None => Err(SyntaxError::at(&text, text.len(), "missing 'start:' line").into()),
            }
        }
        "bcg" | "ccg" | "lambek" => parse_categorial(&kind, body, &text),
        "bundle" => parse_bundle(body, &text),
        other => Err(SyntaxError::at(&text, 0, format!("unknown grammar kind {other:?}")).into()),
    }
}

fn parse_categorial(kind: &str, body: &[Stmt], text: &str) -> Result<GrammarFile, FormatError> {
    let mut alphabet: Option<(Vec<char>, usize)> = None;
    let mut target = None;
    let mut calculus = None;
    let mut axioms = Vec::new();
    for s in body {
        match s {
            Stmt::Header { key, value, at } => match key.as_str() {
                "alphabet" | "terminals" => {
                    alphabet = Some((parse_symbols(value, *at, text)?, *at))
                }
                "target" => target = Some(parse_category_at(value, *at, text)?),
                "calculus" if kind == "lambek" => {
                    calculus = Some(
                        value
                            .parse::<Calculus>()
                            .map_err(|m| SyntaxError::at(text, *at, m))?,
                    )
                }
                _ => {
                    return Err(SyntaxError::at(
                        text,
                        *at,
                        format!("unknown header {key:?} for kind {kind}"),
                    )
                    .into())
                }
            },
            Stmt::Axiom { symbol, category } => axioms.push((category.clone(), *symbol)),
            Stmt::Rule { at, .. } | Stmt::Section { at, .. } => {
                return Err(SyntaxError::at(
                    text,
                    *at,
                    format!("rules are not allowed in a {kind} file"),
                )
                .into())
            }
        }
    }
    let target =
        target.ok_or_else(|| SyntaxError::at(text, text.len(), "missing 'target:' line"))?;
    if kind == "lambek" {
        let calculus = calculus.unwrap_or(Calculus::Malc);
        let mut lexicon: BTreeMap<char, Vec<Category>> = BTreeMap::new();
        for (c, a) in axioms {
            let entry = lexicon.entry(a).or_default();
            if !entry.contains(&c) {
                entry.push(c);
            }
        }
        if let Some((alpha, _)) = alphabet {
            for a in alpha {
                if !lexicon.contains_key(&a) {
                    return Err(GrammarError::MissingLexicon(a).into());
                }
            }
        }
        return Ok(GrammarFile::Lambek(LambekGrammar::new(
            lexicon, target, calculus,
        )?));
    }
    let Some(prim) = target.as_prim().cloned() else {
        return Err(GrammarError::TargetNotPrimitive(target.to_string()).into());
    };
    let alphabet: Vec<char> = alphabet.map(|(a, _)| a).unwrap_or_default();
    if kind == "bcg" {
        Ok(GrammarFile::Bcg(Ccg::new_basic(alphabet, prim, axioms)?))
    } else {
        Ok(GrammarFile::Ccg(Ccg::new(alphabet, prim, axioms)?))
    }
}

fn parse_bundle(body: &[Stmt], text: &str) -> Result<GrammarFile, FormatError> {
    let mut alphabet: Vec<char> = Vec::new();
    let mut sections: Vec<(char, usize, bool, CgParts)> = Vec::new();
    for s in body {
        match s {
            Stmt::Section { symbol, at } => {
                sections.push((*symbol, *at, false, CgParts::default()))
            }
            Stmt::Header { key, value, at } => match sections.last_mut() {
                None if key == "alphabet" => alphabet = parse_symbols(value, *at, text)?,
                None => {
                    return Err(SyntaxError::at(
                        text,
                        *at,
                        format!("unknown bundle header {key:?}"),
                    )
                    .into())
                }
                Some((_, _, eps, parts)) => {
                    if key == "eps" {
                        *eps = parse_bool(value, *at, text)?;
                    } else if !parts.header(key, value, *at, text)? {
                        return Err(SyntaxError::at(
                            text,
                            *at,
                            format!("unknown section header {key:?}"),
                        )
                        .into());
                    }
                }
            },
            Stmt::Rule {
                head,
                alternatives,
                at,
            } => match sections.last_mut() {
                Some((_, _, _, parts)) => {
                    parts.rules.push((head.clone(), alternatives.clone(), *at))
                }
                None => {
                    return Err(
                        SyntaxError::at(text, *at, "rule outside a '[symbol]' section").into(),
                    )
                }
            },
            Stmt::Axiom { .. } => {
                return Err(SyntaxError::at(text, 0, "axioms are not allowed in a bundle").into())
            }
        }
    }
    let alpha_set: BTreeSet<char> = alphabet.iter().copied().collect();
    let mut entries = BTreeMap::new();
    for (symbol, at, eps, parts) in sections {
        let grammar = parts.build(&alpha_set, text)?;
        if entries
            .insert(symbol, BundleEntry { grammar, eps })
            .is_some()
        {
            return Err(
                SyntaxError::at(text, at, format!("duplicate section for {symbol:?}")).into(),
            );
        }
    }
    Ok(GrammarFile::Bundle(QuotientBundle::new(alphabet, entries)?))
}

fn quote(c: char) -> String {
    format!("'{c}'")
}

fn symbols_line(cs: impl IntoIterator<Item = char>) -> String {
    cs.into_iter().map(quote).collect::<Vec<_>>().join(" ")
}

fn write_cg_body(out: &mut String, g: &ConjGrammar) {
    let _ = writeln!(
        out,
        "terminals: {}",
        symbols_line(g.terminals().iter().copied())
    );
    let nts: Vec<&str> = g.nonterminals().iter().map(String::as_str).collect();
    let _ = writeln!(out, "nonterminals: {}", nts.join(" "));
    let _ = writeln!(out, "start: {}", g.start());
    for r in g.rules() {
        let _ = writeln!(out, "{r} ;");
    }
}

pub fn print_cg(g: &ConjGrammar) -> String {
    let mut out = String::from("kind: cg\n");
    write_cg_body(&mut out, g);
    out
}

fn print_categorial(kind: &str, g: &Ccg) -> String {
    let mut out = format!("kind: {kind}\n");
    let _ = writeln!(
        out,
        "alphabet: {}",
        symbols_line(g.alphabet().iter().copied())
    );
    let _ = writeln!(out, "target: {}", g.target());
    for (c, a) in g.axioms() {
        let _ = writeln!(out, "{} : {c} ;", quote(*a));
    }
    out
}

pub fn print_ccg(g: &Ccg) -> String {
    print_categorial(if g.is_basic() { "bcg" } else { "ccg" }, g)
}

pub fn print_lambek(g: &LambekGrammar) -> String {
    let mut out = String::from("kind: lambek\n");
    let _ = writeln!(out, "calculus: {}", g.calculus());
    let _ = writeln!(out, "alphabet: {}", symbols_line(g.alphabet()));
    let _ = writeln!(out, "target: {}", g.target());
    for (a, cats) in g.lexicon() {
        for c in cats {
            let _ = writeln!(out, "{} : {c} ;", quote(*a));
        }
    }
    out
}

pub fn print_bundle(b: &QuotientBundle) -> String {
    let mut out = String::from("kind: bundle\n");
    let _ = writeln!(
        out,
        "alphabet: {}",
        symbols_line(b.alphabet().iter().copied())
    );
    for (a, entry) in b.entries() {
        let _ = writeln!(out, "\n[{}]", quote(*a));
        let _ = writeln!(out, "eps: {}", entry.eps);
        if let Some(g) = &entry.grammar {
            write_cg_body(&mut out, g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIPLE: &str = "\
kind: cg
terminals: a b c   # the alphabet
start: S
S -> b B c A & b A c B ;
A -> a A | a ;
B -> a B a | c ;
";

    #[test]
    fn parses_conjunctive_grammar() {
        let GrammarFile::Cg(g) = parse_grammar_file(TRIPLE).unwrap() else {
            panic!("kind")
        };
        assert_eq!(g.rules().len(), 5);
        assert_eq!(g.rules()[0].conjuncts.len(), 2);
        assert_eq!(
            g.rules()[0].conjuncts[0],
            vec![
                Symbol::T('b'),
                Symbol::nt("B"),
                Symbol::T('c'),
                Symbol::nt("A")
            ]
        );
        let again = parse_grammar_file(&print_cg(&g)).unwrap();
        assert_eq!(again, GrammarFile::Cg(g));
    }

    #[test]
    fn parses_epsilon_and_digits() {
        let src = "kind: cg\nterminals: 0 1 a b\nstart: T\nT -> 1 | A b T ;\nA -> a A | eps ;\n";
        let GrammarFile::Cg(g) = parse_grammar_file(src).unwrap() else {
            panic!("kind")
        };
        assert!(g
            .rules()
            .iter()
            .any(|r| r.conjuncts == vec![Vec::<Symbol>::new()]));
    }

    #[test]
    fn unknown_symbol_reports_position() {
        let src = "kind: cg\nterminals: a\nstart: S\nS -> a X ;\n";
        let FormatError::Syntax(e) = parse_grammar_file(src).unwrap_err() else {
            panic!("syntax")
        };
        assert_eq!((e.line, e.column), (4, 8));
    }

    #[test]
    fn parses_ccg_axioms() {
        let src = "kind: ccg\ntarget: s\n'b' : (s / (x & y)) ;\n'a' : r ;\n";
        let GrammarFile::Ccg(g) = parse_grammar_file(src).unwrap() else {
            panic!("kind")
        };
        assert_eq!(g.axioms().len(), 2);
        assert_eq!(g.target().name(), "s");
        let again = parse_grammar_file(&print_categorial("ccg", &g)).unwrap();
        assert_eq!(again, GrammarFile::Ccg(g));
    }

    #[test]
    fn bcg_rejects_conjunction() {
        let src = "kind: bcg\ntarget: s\n'b' : s/(x & y) ;\n";
        assert!(matches!(
            parse_grammar_file(src),
            Err(FormatError::Grammar(_))
        ));
    }

    #[test]
    fn lambek_grammar_with_compound_target() {
        let src = "kind: lambek\ncalculus: MALC*\ntarget: ((r\\r)\\((t\\t)\\q))\\q\n'a' : q ;\n";
        let GrammarFile::Lambek(g) = parse_grammar_file(src).unwrap() else {
            panic!("kind")
        };
        assert_eq!(g.calculus(), Calculus::MalcStar);
        assert_eq!(
            parse_grammar_file(&print_lambek(&g)).unwrap(),
            GrammarFile::Lambek(g)
        );
    }

    #[test]
    fn missing_kind_is_an_error() {
        assert!(parse_grammar_file("start: S\n").is_err());
    }
}
