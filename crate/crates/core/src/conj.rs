//! Membership, derivations and enumeration for conjunctive grammars.
//!
//! The chart stores, for every span `(i, j)`, which nonterminals derive
//! `w[i..j]` and which body prefixes `β[..k]` do. Spans are filled by end
//! position and then by decreasing start, so a word can be grown and shrunk
//! one symbol at a time. Within one span the facts are iterated to a fixpoint;
//! that covers unit conjuncts, ε-bodies and cycles through the empty span.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::lang::{enumerate_language, BudgetExceeded, Recognizer};
use crate::syntax::{ConjGrammar, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CgError {
    #[error("symbol {0:?} is not a terminal of the grammar")]
    UnknownSymbol(char),
    #[error("unknown nonterminal {0:?}")]
    UnknownNonterminal(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Derivation of `A(w[i..j])`. Rule nodes hold, for each conjunct, the
/// derivations of the body's symbols over consecutive subspans; an empty
/// list is the axiom `ε(ε)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CgDerivation {
    Terminal {
        terminal: char,
        span: (usize, usize),
    },
    Rule {
        head: String,
        rule: usize,
        span: (usize, usize),
        children: Vec<Vec<CgDerivation>>,
    },
}

impl CgDerivation {
    pub fn span(&self) -> (usize, usize) {
        match self {
            CgDerivation::Terminal { span, .. } | CgDerivation::Rule { span, .. } => *span,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CgDerivation::Terminal { terminal, .. } => terminal.to_string(),
            CgDerivation::Rule { head, .. } => head.clone(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            CgDerivation::Terminal { .. } => 1,
            CgDerivation::Rule { children, .. } => {
                1 + children.iter().flatten().map(Self::size).sum::<usize>()
            }
        }
    }

    /// Proof-tree markup for the `\infer` macro of `proof.sty`.
    pub fn to_latex(&self, w: &str) -> String {
        let chars: Vec<char> = w.chars().collect();
        let mut out = String::new();
        latex_node(self, &chars, &mut out);
        out
    }
}

fn substring(chars: &[char], (i, j): (usize, usize)) -> String {
    if i == j {
        "\\varepsilon".to_string()
    } else {
        chars[i..j].iter().collect()
    }
}

fn latex_node(d: &CgDerivation, chars: &[char], out: &mut String) {
    match d {
        CgDerivation::Terminal { terminal, .. } => {
            let _ = write!(out, "{terminal}({terminal})");
        }
        CgDerivation::Rule {
            head,
            span,
            children,
            ..
        } => {
            let _ = write!(out, "\\infer{{{head}({})}}{{", substring(chars, *span));
            for (n, body) in children.iter().enumerate() {
                if n > 0 {
                    out.push_str(" & ");
                }
                match body.as_slice() {
                    [] => out.push_str("\\varepsilon(\\varepsilon)"),
                    [single] => latex_node(single, chars, out),
                    many => {
                        let label: String = many.iter().map(CgDerivation::label).collect();
                        let _ = write!(out, "\\infer{{{label}({})}}{{", substring(chars, *span));
                        for (m, c) in many.iter().enumerate() {
                            if m > 0 {
                                out.push_str(" & ");
                            }
                            latex_node(c, chars, out);
                        }
                        out.push('}');
                    }
                }
            }
            out.push('}');
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    T(char),
    N(usize),
}

const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Compiled {
    names: Vec<String>,
    index: HashMap<String, usize>,
    bodies: Vec<Vec<Sym>>,
    /// Item id of `(body, k)` for `k ≥ 1` is `item_base[body] + k - 1`.
    item_base: Vec<usize>,
    n_items: usize,
    /// `(head, body ids)` in declaration order.
    rules: Vec<(usize, Vec<usize>)>,
}

impl Compiled {
    fn new(g: &ConjGrammar) -> Self {
        let names: Vec<String> = g.nonterminals().iter().cloned().collect();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let mut bodies = Vec::new();
        let mut rules = Vec::new();
        for r in g.rules() {
            let mut ids = Vec::new();
            for body in &r.conjuncts {
                ids.push(bodies.len());
                bodies.push(
                    body.iter()
                        .map(|s| match s {
                            Symbol::T(c) => Sym::T(*c),
                            Symbol::N(n) => Sym::N(index[n]),
                        })
                        .collect::<Vec<_>>(),
                );
            }
            rules.push((index[&r.head], ids));
        }
        let mut item_base = Vec::with_capacity(bodies.len());
        let mut n_items = 0;
        for b in &bodies {
            item_base.push(n_items);
            n_items += b.len();
        }
        Compiled {
            names,
            index,
            bodies,
            item_base,
            n_items,
            rules,
        }
    }

    fn item(&self, body: usize, k: usize) -> usize {
        self.item_base[body] + k - 1
    }
}

/// Facts for one span, each with the order in which it was established.
#[derive(Debug, Clone)]
struct Cell {
    nts: Vec<u32>,
    items: Vec<u32>,
}

impl Cell {
    fn new(c: &Compiled) -> Self {
        Cell {
            nts: vec![UNSET; c.names.len()],
            items: vec![UNSET; c.n_items],
        }
    }
}

/// Incremental chart over a growing word.
#[derive(Debug, Clone)]
pub struct CgChart {
    g: Compiled,
    start: usize,
    word: Vec<char>,
    /// `cols[j][i]` describes `w[i..j]`.
    cols: Vec<Vec<Cell>>,
}

impl CgChart {
    pub fn new(g: &ConjGrammar) -> Self {
        let compiled = Compiled::new(g);
        let start = compiled.index[g.start()];
        let mut chart = CgChart {
            g: compiled,
            start,
            word: Vec::new(),
            cols: Vec::new(),
        };
        chart.fill_column();
        chart
    }

    pub fn word(&self) -> String {
        self.word.iter().collect()
    }

    pub fn push_symbol(&mut self, c: char) {
        self.word.push(c);
        self.fill_column();
    }

    pub fn pop_symbol(&mut self) {
        if self.word.pop().is_some() {
            self.cols.pop();
        }
    }

    fn nt_at(&self, current: &[Cell], j: usize, i: usize, m: usize, a: usize) -> u32 {
        // nonterminal `a` on span (m, j): current column
        let _ = (i, j);
        current[m].nts[a]
    }

    /// Prefix `body[..k]` on span `(i, m)` where `m ≤ j`; `m == j` reads the column under construction.
    fn prefix_at(
        &self,
        current: &[Cell],
        j: usize,
        i: usize,
        m: usize,
        body: usize,
        k: usize,
    ) -> u32 {
        if k == 0 {
            return if i == m { 0 } else { UNSET };
        }
        let id = self.g.item(body, k);
        if m == j {
            current[i].items[id]
        } else {
            self.cols[m][i].items[id]
        }
    }

    /// Split point `m` witnessing `body[..k]` on `(i, j)`. Facts on the same
    /// span must have stamps below `limit`.
    fn justify_item(
        &self,
        current: &[Cell],
        i: usize,
        j: usize,
        body: usize,
        k: usize,
        limit: u32,
    ) -> Option<usize> {
        let ok = |stamp: u32, same: bool| stamp != UNSET && (!same || stamp < limit);
        match self.g.bodies[body][k - 1] {
            Sym::T(c) => (j > i
                && self.word[j - 1] == c
                && ok(self.prefix_at(current, j, i, j - 1, body, k - 1), false))
            .then(|| j - 1),
            Sym::N(a) => (i..=j).find(|&m| {
                let same_prefix = m == j && k > 1;
                ok(self.prefix_at(current, j, i, m, body, k - 1), same_prefix)
                    && ok(self.nt_at(current, j, i, m, a), m == i)
            }),
        }
    }

    /// Index into `rules` of a rule for `a` whose bodies all hold on `(i, j)`.
    fn justify_nt(
        &self,
        current: &[Cell],
        i: usize,
        j: usize,
        a: usize,
        limit: u32,
    ) -> Option<usize> {
        self.g.rules.iter().position(|(head, bodies)| {
            *head == a
                && bodies.iter().all(|&b| {
                    let len = self.g.bodies[b].len();
                    let s = self.prefix_at(current, j, i, j, b, len);
                    s != UNSET && (len == 0 || s < limit)
                })
        })
    }

    fn fill_column(&mut self) {
        let j = self.word.len();
        let mut current: Vec<Cell> = (0..=j).map(|_| Cell::new(&self.g)).collect();
        for i in (0..=j).rev() {
            let mut stamp = 0u32;
            loop {
                let mut changed = false;
                for body in 0..self.g.bodies.len() {
                    for k in 1..=self.g.bodies[body].len() {
                        let id = self.g.item(body, k);
                        if current[i].items[id] == UNSET
                            && self.justify_item(&current, i, j, body, k, UNSET).is_some()
                        {
                            current[i].items[id] = stamp;
                            stamp += 1;
                            changed = true;
                        }
                    }
                }
                for a in 0..self.g.names.len() {
                    if current[i].nts[a] == UNSET
                        && self.justify_nt(&current, i, j, a, UNSET).is_some()
                    {
                        current[i].nts[a] = stamp;
                        stamp += 1;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        self.cols.push(current);
    }

    fn cell(&self, i: usize, j: usize) -> &Cell {
        &self.cols[j][i]
    }

    /// Whether nonterminal `a` derives `w[i..j]`.
    pub fn derives(&self, a: &str, i: usize, j: usize) -> Option<bool> {
        let a = *self.g.index.get(a)?;
        Some(self.cell(i, j).nts[a] != UNSET)
    }

    pub fn accepts_word(&self) -> bool {
        let j = self.word.len();
        self.cell(0, j).nts[self.start] != UNSET
    }

    /// Nonterminals deriving the whole current word.
    pub fn deriving_nonterminals(&self) -> BTreeSet<String> {
        let j = self.word.len();
        let cell = self.cell(0, j);
        (0..self.g.names.len())
            .filter(|&a| cell.nts[a] != UNSET)
            .map(|a| self.g.names[a].clone())
            .collect()
    }

    /// Derivation of `a(w[i..j])`, if any.
    pub fn derivation(&self, a: &str, i: usize, j: usize) -> Option<CgDerivation> {
        let a = *self.g.index.get(a)?;
        if self.cell(i, j).nts[a] == UNSET {
            return None;
        }
        Some(self.build_nt(a, i, j))
    }

    fn build_nt(&self, a: usize, i: usize, j: usize) -> CgDerivation {
        let col = &self.cols[j];
        let limit = col[i].nts[a];
        let r = self
            .justify_nt(col, i, j, a, limit)
            .expect("stamped fact has a justification");
        let children = self.g.rules[r]
            .1
            .iter()
            .map(|&b| self.build_prefix(b, self.g.bodies[b].len(), i, j))
            .collect();
        CgDerivation::Rule {
            head: self.g.names[a].clone(),
            rule: r,
            span: (i, j),
            children,
        }
    }

    fn build_prefix(&self, body: usize, k: usize, i: usize, j: usize) -> Vec<CgDerivation> {
        if k == 0 {
            return Vec::new();
        }
        let col = &self.cols[j];
        let limit = col[i].items[self.g.item(body, k)];
        let m = self
            .justify_item(col, i, j, body, k, limit)
            .expect("stamped item has a justification");
        let mut out = self.build_prefix(body, k - 1, i, m);
        out.push(match self.g.bodies[body][k - 1] {
            Sym::T(c) => CgDerivation::Terminal {
                terminal: c,
                span: (m, j),
            },
            Sym::N(b) => self.build_nt(b, m, j),
        });
        out
    }
}

impl Recognizer for CgChart {
    fn push(&mut self, c: char) {
        self.push_symbol(c);
    }
    fn pop(&mut self) {
        self.pop_symbol();
    }
    fn accepts(&self) -> bool {
        self.accepts_word()
    }
}

fn check_word(g: &ConjGrammar, w: &str) -> Result<(), CgError> {
    match w.chars().find(|c| !g.terminals().contains(c)) {
        Some(c) => Err(CgError::UnknownSymbol(c)),
        None => Ok(()),
    }
}

/// Chart for the whole word `w`.
pub fn cg_chart(g: &ConjGrammar, w: &str) -> Result<CgChart, CgError> {
    check_word(g, w)?;
    let mut chart = CgChart::new(g);
    for c in w.chars() {
        chart.push_symbol(c);
    }
    Ok(chart)
}

/// Nonterminals deriving ε.
pub fn nullable_nonterminals(g: &ConjGrammar) -> BTreeSet<String> {
    CgChart::new(g).deriving_nonterminals()
}

/// Whether the start symbol derives `w`.
pub fn cg_member(g: &ConjGrammar, w: &str) -> Result<bool, CgError> {
    Ok(cg_chart(g, w)?.accepts_word())
}

/// Membership together with a derivation of `S(w)`.
pub fn cg_derive(g: &ConjGrammar, w: &str) -> Result<Option<CgDerivation>, CgError> {
    let chart = cg_chart(g, w)?;
    Ok(chart.derivation(g.start(), 0, w.chars().count()))
}

/// All members of length at most `max_len`, shortest first.
pub fn cg_enumerate(g: &ConjGrammar, max_len: usize, budget: u64) -> Result<Vec<String>, CgError> {
    let alphabet: Vec<char> = g.terminals().iter().copied().collect();
    let mut chart = CgChart::new(g);
    Ok(enumerate_language(&mut chart, &alphabet, max_len, budget)?)
}

/// Replays a derivation against the grammar and the word, independently of the chart.
pub fn check_cg_derivation(g: &ConjGrammar, w: &str, d: &CgDerivation) -> Result<(), String> {
    let chars: Vec<char> = w.chars().collect();
    check_node(g, &chars, d)
}

fn check_node(g: &ConjGrammar, w: &[char], d: &CgDerivation) -> Result<(), String> {
    match d {
        CgDerivation::Terminal {
            terminal,
            span: (i, j),
        } => {
            if *j != i + 1 || w.get(*i) != Some(terminal) {
                return Err(format!(
                    "terminal {terminal:?} does not match span {i}..{j}"
                ));
            }
            Ok(())
        }
        CgDerivation::Rule {
            head,
            rule,
            span: (i, j),
            children,
        } => {
            if i > j || *j > w.len() {
                return Err(format!("span {i}..{j} out of range"));
            }
            let r = g
                .rules()
                .get(*rule)
                .ok_or_else(|| format!("no rule #{rule}"))?;
            if &r.head != head {
                return Err(format!("rule #{rule} has head {}, not {head}", r.head));
            }
            if r.conjuncts.len() != children.len() {
                return Err(format!("rule #{rule} has {} conjuncts", r.conjuncts.len()));
            }
            for (body, subtrees) in r.conjuncts.iter().zip(children) {
                if body.len() != subtrees.len() {
                    return Err(format!("conjunct length mismatch in rule #{rule}"));
                }
                let mut at = *i;
                for (sym, t) in body.iter().zip(subtrees) {
                    let (a, b) = t.span();
                    if a != at {
                        return Err(format!("subspans of rule #{rule} are not contiguous"));
                    }
                    let matches = match (sym, t) {
                        (Symbol::T(c), CgDerivation::Terminal { terminal, .. }) => c == terminal,
                        (Symbol::N(n), CgDerivation::Rule { head, .. }) => n == head,
                        _ => false,
                    };
                    if !matches {
                        return Err(format!("symbol {sym} does not match subtree {}", t.label()));
                    }
                    check_node(g, w, t)?;
                    at = b;
                }
                if at != *j {
                    return Err(format!("conjunct of rule #{rule} does not cover {i}..{j}"));
                }
            }
            Ok(())
        }
    }
}

/// Result of the odd-normal-form check.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct OddFormReport {
    pub violations: Vec<String>,
}

impl OddFormReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the shapes `A → a`, `A → B1 a1 C1 & … & Bk ak Ck`, and `S → a A`
/// (the last only for a start symbol that no rule body references).
pub fn check_odd_normal_form(g: &ConjGrammar) -> OddFormReport {
    let start_referenced = g
        .rules()
        .iter()
        .flat_map(|r| r.conjuncts.iter().flatten())
        .any(|s| matches!(s, Symbol::N(n) if n == g.start()));
    let mut violations = Vec::new();
    for (n, r) in g.rules().iter().enumerate() {
        let terminal =
            matches!(r.conjuncts.as_slice(), [b] if matches!(b.as_slice(), [Symbol::T(_)]));
        let triples = r
            .conjuncts
            .iter()
            .all(|b| matches!(b.as_slice(), [Symbol::N(_), Symbol::T(_), Symbol::N(_)]));
        let start_rule = r.head == g.start()
            && matches!(r.conjuncts.as_slice(), [b] if matches!(b.as_slice(), [Symbol::T(_), Symbol::N(_)]));
        if terminal || triples {
            continue;
        }
        if start_rule {
            if start_referenced {
                violations.push(format!(
                    "rule #{n} `{r}` has the form S -> a A, but the start symbol {} is referenced in a rule body",
                    g.start()
                ));
            }
            continue;
        }
        violations.push(format!(
            "rule #{n} `{r}` is not of the form A -> a, A -> B a C & ..., or S -> a A"
        ));
    }
    OddFormReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::syntax::Rule;

    #[test]
    fn triple_power_member() {
        let g = samples::triple_power_cg();
        assert!(cg_member(&g, "bacaca").unwrap());
        assert!(!cg_member(&g, "bacaa").unwrap());
        assert!(!cg_member(&g, "").unwrap());
        assert!(matches!(
            cg_member(&g, "bxc"),
            Err(CgError::UnknownSymbol('x'))
        ));
    }

    #[test]
    fn derivation_matches_hand_derivation() {
        let g = samples::triple_power_cg();
        let d = cg_derive(&g, "bacaca").unwrap().unwrap();
        check_cg_derivation(&g, "bacaca", &d).unwrap();
        let CgDerivation::Rule { head, children, .. } = &d else {
            panic!("root is a rule")
        };
        assert_eq!(head, "S");
        assert_eq!(children.len(), 2);
        // bBcA: B covers "aca", A covers the final "a"
        assert_eq!(children[0][1].span(), (1, 4));
        assert_eq!(children[0][3].span(), (5, 6));
        // bAcB: A covers "a", B covers "aca"
        assert_eq!(children[1][1].span(), (1, 2));
        assert_eq!(children[1][3].span(), (3, 6));
        let tex = d.to_latex("bacaca");
        assert!(tex.starts_with("\\infer{S(bacaca)}{\\infer{bBcA(bacaca)}"));
    }

    #[test]
    fn enumeration_small_bounds() {
        let g = samples::triple_power_cg();
        assert_eq!(
            cg_enumerate(&g, 7, 1 << 20).unwrap(),
            vec!["bacaca".to_string()]
        );
        assert!(cg_enumerate(&g, 3, 1 << 20).unwrap().is_empty());
        let single = ConjGrammar::new(
            ['a'],
            [],
            "S",
            vec![Rule::new("S", vec![vec![Symbol::T('a')]])],
        )
        .unwrap();
        assert_eq!(
            cg_enumerate(&single, 1, 100).unwrap(),
            vec!["a".to_string()]
        );
    }

    #[test]
    fn nullable_sets() {
        assert_eq!(
            nullable_nonterminals(&samples::cvp_grammar()),
            ["A".to_string()].into_iter().collect()
        );
        assert!(nullable_nonterminals(&samples::triple_power_cg()).is_empty());
        let selfloop = ConjGrammar::new(
            [],
            [],
            "S",
            vec![Rule::new("S", vec![vec![Symbol::nt("S")]])],
        )
        .unwrap();
        assert!(nullable_nonterminals(&selfloop).is_empty());
    }

    #[test]
    fn epsilon_through_conjunction_and_cycles() {
        // S -> A & B ; A -> B ; B -> eps | 'a' B
        let g = ConjGrammar::new(
            ['a'],
            [],
            "S",
            vec![
                Rule::new("S", vec![vec![Symbol::nt("A")], vec![Symbol::nt("B")]]),
                Rule::new("A", vec![vec![Symbol::nt("B")]]),
                Rule::new("B", vec![vec![]]),
                Rule::new("B", vec![vec![Symbol::T('a'), Symbol::nt("B")]]),
            ],
        )
        .unwrap();
        for w in ["", "a", "aaa"] {
            let d = cg_derive(&g, w).unwrap().expect("derivable");
            check_cg_derivation(&g, w, &d).unwrap();
        }
    }

    #[test]
    fn derivations_avoid_cyclic_justification() {
        // A -> A | B ; B -> 'a' : the unit cycle must not appear in the tree
        let g = ConjGrammar::new(
            ['a'],
            [],
            "A",
            vec![
                Rule::new("A", vec![vec![Symbol::nt("A")]]),
                Rule::new("A", vec![vec![Symbol::nt("B")]]),
                Rule::new("B", vec![vec![Symbol::T('a')]]),
            ],
        )
        .unwrap();
        let d = cg_derive(&g, "a").unwrap().unwrap();
        check_cg_derivation(&g, "a", &d).unwrap();
        assert_eq!(d.size(), 3);
    }

    #[test]
    fn odd_normal_form_checks() {
        let single = ConjGrammar::new(
            ['a'],
            [],
            "S",
            vec![Rule::new("S", vec![vec![Symbol::T('a')]])],
        )
        .unwrap();
        assert!(check_odd_normal_form(&single).passes());
        assert!(!check_odd_normal_form(&samples::triple_power_cg()).passes());
        let referenced = ConjGrammar::new(
            ['a', 'b'],
            [],
            "S",
            vec![
                Rule::new("S", vec![vec![Symbol::T('a'), Symbol::nt("S")]]),
                Rule::new("S", vec![vec![Symbol::T('b')]]),
            ],
        )
        .unwrap();
        let report = check_odd_normal_form(&referenced);
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("referenced"));
    }
}
