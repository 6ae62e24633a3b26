//! Translations between conjunctive grammars, conjunctive categorial grammars
//! and Lambek grammars with additives, plus homomorphic images.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ccg::ccg_universe;
use crate::conj::check_odd_normal_form;
use crate::lang::BudgetExceeded;
use crate::syntax::{
    Calculus, Category, Ccg, ConjGrammar, FreshNames, GrammarError, LambekGrammar, PrimCat, Rule,
    Symbol,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("quotient grammar for {symbol:?} is not in odd normal form: {}", violations.join("; "))]
    NotOddNormalForm {
        symbol: char,
        violations: Vec<String>,
    },
    #[error("nonterminal {0} is shared between two quotient grammars")]
    SharedNonterminal(String),
    #[error("symbol {0:?} is not in the alphabet")]
    SymbolOutsideAlphabet(char),
    #[error("target {0} must be primitive")]
    TargetNotPrimitive(String),
    #[error("{name} already occurs in {category}")]
    NotFresh { name: String, category: String },
    #[error("lexicon category {0} is not a conjunction of basic categories keeping the target out of denominators")]
    NotSimple(String),
    #[error("homomorphism is not defined on {0:?}")]
    Undefined(char),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Per-letter quotient data: a grammar for the quotient minus ε (absent when
/// that language is empty) and whether ε itself is in the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BundleEntry {
    pub grammar: Option<ConjGrammar>,
    pub eps: bool,
}

/// Quotients `a⁻¹L` of a language `L` by each letter of its alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBundle {
    alphabet: Vec<char>,
    entries: BTreeMap<char, BundleEntry>,
}

impl QuotientBundle {
    /// Letters without an entry get an absent grammar and a false flag.
    /// Quotient grammars must use pairwise disjoint nonterminals and only
    /// alphabet terminals; the odd-normal-form requirement is checked when
    /// translating, so malformed bundles can still be loaded and inspected.
    pub fn new(
        alphabet: Vec<char>,
        mut entries: BTreeMap<char, BundleEntry>,
    ) -> Result<Self, TransformError> {
        let mut alphabet_set = BTreeSet::new();
        let alphabet: Vec<char> = alphabet
            .into_iter()
            .filter(|a| alphabet_set.insert(*a))
            .collect();
        if let Some(a) = entries.keys().find(|a| !alphabet_set.contains(a)) {
            return Err(TransformError::SymbolOutsideAlphabet(*a));
        }
        let mut owners = BTreeSet::new();
        for g in entries.values().filter_map(|e| e.grammar.as_ref()) {
            if let Some(t) = g.terminals().iter().find(|t| !alphabet_set.contains(t)) {
                return Err(TransformError::SymbolOutsideAlphabet(*t));
            }
            for n in g.nonterminals() {
                if !owners.insert(n.clone()) {
                    return Err(TransformError::SharedNonterminal(n.clone()));
                }
            }
        }
        for a in &alphabet {
            entries.entry(*a).or_default();
        }
        Ok(QuotientBundle { alphabet, entries })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn entries(&self) -> &BTreeMap<char, BundleEntry> {
        &self.entries
    }

    /// Fails on the first quotient grammar outside odd normal form.
    pub fn check_odd_form(&self) -> Result<(), TransformError> {
        for (a, e) in &self.entries {
            if let Some(g) = &e.grammar {
                let report = check_odd_normal_form(g);
                if !report.passes() {
                    return Err(TransformError::NotOddNormalForm {
                        symbol: *a,
                        violations: report.violations,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Conjunctive grammar with the same derivations as a conjunctive categorial
/// grammar: one nonterminal per universe category, start symbol the target.
pub fn ccg_to_cg(g: &Ccg) -> ConjGrammar {
    let universe = ccg_universe(g);
    let mut fresh = FreshNames::new(g.alphabet().iter().map(|c| c.to_string()));
    fresh.reserve("eps");
    let mut names: BTreeMap<Category, String> = BTreeMap::new();
    let mut name_of = |c: &Category, fresh: &mut FreshNames| -> String {
        names
            .entry(c.clone())
            .or_insert_with(|| match c.as_prim() {
                Some(p) => fresh.prefer(p.name()),
                None => fresh.fresh(),
            })
            .clone()
    };
    let mut extra = Vec::new();
    let mut rules = Vec::new();
    for c in &universe {
        let head = name_of(c, &mut fresh);
        extra.push(head.clone());
        match c {
            Category::And(..) => {
                let members = c
                    .conjunct_members()
                    .expect("universe conjunctions are conjuncts");
                let body = members
                    .iter()
                    .map(|p| {
                        let n = name_of(&Category::Prim((*p).clone()), &mut fresh);
                        extra.push(n.clone());
                        vec![Symbol::N(n)]
                    })
                    .collect();
                rules.push(Rule::new(&head, body));
            }
            Category::LDiv(den, num) => {
                let (d, a) = (name_of(den, &mut fresh), name_of(num, &mut fresh));
                rules.push(Rule::new(&a, vec![vec![Symbol::N(d), Symbol::N(head)]]));
            }
            Category::RDiv(num, den) => {
                let (d, a) = (name_of(den, &mut fresh), name_of(num, &mut fresh));
                rules.push(Rule::new(&a, vec![vec![Symbol::N(head), Symbol::N(d)]]));
            }
            _ => {}
        }
    }
    for (c, a) in g.axioms() {
        rules.push(Rule::new(
            &name_of(c, &mut fresh),
            vec![vec![Symbol::T(*a)]],
        ));
    }
    let start = name_of(&Category::Prim(g.target().clone()), &mut fresh);
    ConjGrammar::new(g.alphabet().iter().copied(), extra, &start, rules)
        .expect("all names declared")
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TildeBody {
    /// `X̃ → B a C`
    Infix(String, char, String),
    /// `Ỹ → a A`
    Prefix(char, String),
    /// `Z̃ → a`
    Letter(char),
}

/// The joined grammar after splitting: plain nonterminals have rules
/// `A → X̃1 & … & X̃k`, tilde nonterminals have the three single-body shapes.
#[derive(Debug, Clone)]
struct Split {
    start: String,
    plain: Vec<(String, Vec<String>)>,
    tilde: Vec<(String, TildeBody)>,
    nonterminals: Vec<String>,
}

fn split_bundle(b: &QuotientBundle) -> Result<Split, TransformError> {
    b.check_odd_form()?;
    let mut taken: Vec<String> = b.alphabet.iter().map(|c| c.to_string()).collect();
    for g in b.entries.values().filter_map(|e| e.grammar.as_ref()) {
        taken.extend(g.nonterminals().iter().cloned());
    }
    let mut fresh = FreshNames::new(taken);
    fresh.reserve("eps");
    let start = fresh.fresh();
    let mut split = Split {
        start: start.clone(),
        plain: Vec::new(),
        tilde: Vec::new(),
        nonterminals: vec![start.clone()],
    };
    for a in &b.alphabet {
        let e = &b.entries[a];
        if let Some(g) = &e.grammar {
            split.nonterminals.extend(g.nonterminals().iter().cloned());
            split
                .tilde
                .push((start.clone(), TildeBody::Prefix(*a, g.start().to_string())));
            for r in g.rules() {
                let mut tildes = Vec::new();
                for body in &r.conjuncts {
                    let shape = match body.as_slice() {
                        [Symbol::T(c)] => TildeBody::Letter(*c),
                        [Symbol::T(c), Symbol::N(x)] => TildeBody::Prefix(*c, x.clone()),
                        [Symbol::N(x), Symbol::T(c), Symbol::N(y)] => {
                            TildeBody::Infix(x.clone(), *c, y.clone())
                        }
                        _ => unreachable!("odd normal form checked above"),
                    };
                    let t = fresh.fresh();
                    split.nonterminals.push(t.clone());
                    split.tilde.push((t.clone(), shape));
                    tildes.push(t);
                }
                split.plain.push((r.head.clone(), tildes));
            }
        }
        if e.eps {
            split.tilde.push((start.clone(), TildeBody::Letter(*a)));
        }
    }
    Ok(split)
}

/// The joined conjunctive grammar for `L` obtained from the quotient grammars
/// after splitting every conjunct into its own fresh nonterminal.
pub fn split_and_join(b: &QuotientBundle) -> Result<ConjGrammar, TransformError> {
    let s = split_bundle(b)?;
    let mut rules = Vec::new();
    for (head, tildes) in &s.plain {
        rules.push(Rule::new(
            head,
            tildes.iter().map(|t| vec![Symbol::nt(t)]).collect(),
        ));
    }
    for (head, body) in &s.tilde {
        let body = match body {
            TildeBody::Infix(x, c, y) => vec![Symbol::nt(x), Symbol::T(*c), Symbol::nt(y)],
            TildeBody::Prefix(c, x) => vec![Symbol::T(*c), Symbol::nt(x)],
            TildeBody::Letter(c) => vec![Symbol::T(*c)],
        };
        rules.push(Rule::new(head, vec![body]));
    }
    Ok(ConjGrammar::new(
        b.alphabet.iter().copied(),
        s.nonterminals,
        &s.start,
        rules,
    )?)
}

/// Conjunctive categorial grammar for the language whose quotients the
/// bundle describes. Primitive `p_X` stands for tilde nonterminal `X`.
pub fn bundle_to_ccg(b: &QuotientBundle) -> Result<Ccg, TransformError> {
    let s = split_bundle(b)?;
    let mut fresh = FreshNames::default();
    let mut prims: BTreeMap<&str, PrimCat> = BTreeMap::new();
    for (t, _) in &s.tilde {
        prims.entry(t).or_insert_with(|| {
            PrimCat::new(fresh.prefer(&format!("p_{}", t.trim_start_matches('_'))))
        });
    }
    let conj_of = |tildes: &[String]| -> Category {
        Category::and_all(
            tildes
                .iter()
                .map(|t| Category::Prim(prims[t.as_str()].clone())),
        )
        .expect("every split rule has a conjunct")
    };
    let plain = &s.plain;
    let rules_of = |a: &str| -> Vec<&[String]> {
        plain
            .iter()
            .filter(|(h, _)| h == a)
            .map(|(_, ts)| ts.as_slice())
            .collect()
    };
    let mut axioms = Vec::new();
    for (t, body) in &s.tilde {
        let p = Category::Prim(prims[t.as_str()].clone());
        match body {
            TildeBody::Letter(c) => axioms.push((p, *c)),
            TildeBody::Prefix(c, a) => {
                for ts in rules_of(a) {
                    axioms.push((Category::rdiv(p.clone(), conj_of(ts)), *c));
                }
            }
            TildeBody::Infix(x, c, y) => {
                for left in rules_of(x) {
                    for right in rules_of(y) {
                        let inner = Category::ldiv(conj_of(left), p.clone());
                        axioms.push((Category::rdiv(inner, conj_of(right)), *c));
                    }
                }
            }
        }
    }
    let target = prims
        .get(s.start.as_str())
        .cloned()
        .unwrap_or_else(|| PrimCat::new(fresh.prefer("p_start")));
    Ok(Ccg::new(b.alphabet.iter().copied(), target, axioms)?)
}

/// Compares each quotient grammar, with ε added back when flagged, against a
/// reference language `oracle(a, w) ⇔ aw ∈ L` on all words up to `max_len`.
/// Returns the first disagreement as `(letter, word)`.
pub fn verify_bundle(
    b: &QuotientBundle,
    max_len: usize,
    budget: u64,
    mut oracle: impl FnMut(char, &str) -> bool,
) -> Result<Option<(char, String)>, TransformError> {
    let words = crate::lang::enumerate_by(&b.alphabet, max_len, budget, |_| true)?;
    for (a, e) in &b.entries {
        let chart = e.grammar.as_ref();
        for w in &words {
            let got = if w.is_empty() {
                e.eps
            } else {
                match chart {
                    Some(g) => crate::conj::cg_member(g, w)
                        .map_err(|_| TransformError::SymbolOutsideAlphabet(*a))?,
                    None => false,
                }
            };
            if got != oracle(*a, w) {
                return Ok(Some((*a, w.clone())));
            }
        }
    }
    Ok(None)
}

/// Lambek grammar over MALC assigning each letter the conjunction of its
/// axiom categories (the bare category when there is only one).
pub fn ccg_to_malc(g: &Ccg) -> LambekGrammar {
    let mut lexicon = BTreeMap::new();
    for a in g.alphabet() {
        if let Some(b) = Category::and_all(g.categories_of(*a).cloned()) {
            lexicon.insert(*a, vec![b]);
        }
    }
    LambekGrammar::new(lexicon, Category::Prim(g.target().clone()), Calculus::Malc)
        .expect("MALC admits every category")
}

/// Fresh names for the variables `q, r, t` of the empty-string formula.
fn fresh_qrt(fresh: &mut FreshNames) -> (PrimCat, PrimCat, PrimCat) {
    (
        PrimCat::new(fresh.prefer("q")),
        PrimCat::new(fresh.prefer("r")),
        PrimCat::new(fresh.prefer("t")),
    )
}

/// `((r\r)\((t\t)\q))\q`, derivable from the empty antecedent.
pub fn empty_string_formula(q: &PrimCat, r: &PrimCat, t: &PrimCat) -> Category {
    Category::ldiv(empty_string_core(q, r, t), Category::Prim(q.clone()))
}

/// `(r\r)\((t\t)\q)`, the formula that `→ D` unfolds to.
pub fn empty_string_core(q: &PrimCat, r: &PrimCat, t: &PrimCat) -> Category {
    let id = |p: &PrimCat| Category::ldiv(Category::Prim(p.clone()), Category::Prim(p.clone()));
    Category::ldiv(id(r), Category::ldiv(id(t), Category::Prim(q.clone())))
}

fn keeps_out_of_denominators(c: &Category, s: &PrimCat) -> bool {
    match c {
        Category::And(a, b) => keeps_out_of_denominators(a, s) && keeps_out_of_denominators(b, s),
        _ if c.is_bcat_conj() => {
            let mut cur = c;
            loop {
                match cur {
                    Category::LDiv(den, num) | Category::RDiv(num, den) => {
                        if den.mentions(s) {
                            return false;
                        }
                        cur = num;
                    }
                    _ => return true,
                }
            }
        }
        _ => false,
    }
}

/// Adds ε to the language of a MALC grammar with primitive target `s` by
/// substituting `D = ((r\r)\((t\t)\q))\q` for `s` everywhere and moving to
/// MALC*. Lexicon entries must be conjunctions of basic categories whose
/// denominators avoid `s`; `q, r, t` are chosen fresh.
pub fn add_empty_string(g: &LambekGrammar) -> Result<LambekGrammar, TransformError> {
    let s = g
        .target()
        .as_prim()
        .cloned()
        .ok_or_else(|| TransformError::TargetNotPrimitive(g.target().to_string()))?;
    if let Some(c) = g
        .lexicon()
        .values()
        .flatten()
        .find(|c| !keeps_out_of_denominators(c, &s))
    {
        return Err(TransformError::NotSimple(c.to_string()));
    }
    let mut fresh = FreshNames::new(g.primitives().into_iter().map(|p| p.name().to_string()));
    let (q, r, t) = fresh_qrt(&mut fresh);
    let d = empty_string_formula(&q, &r, &t);
    let lexicon = g
        .lexicon()
        .iter()
        .map(|(a, cs)| (*a, cs.iter().map(|c| c.substitute(&s, &d)).collect()))
        .collect();
    Ok(LambekGrammar::new(lexicon, d, Calculus::MalcStar)?)
}

/// `(a\f)\f`.
pub fn relative_double_negation(a: &Category, f: &PrimCat) -> Result<Category, TransformError> {
    if a.mentions(f) {
        return Err(TransformError::NotFresh {
            name: f.to_string(),
            category: a.to_string(),
        });
    }
    Ok(double_negate(a, f))
}

fn double_negate(a: &Category, f: &PrimCat) -> Category {
    let f = Category::Prim(f.clone());
    Category::ldiv(Category::ldiv(a.clone(), f.clone()), f)
}

/// `((c1\f) ∨ … ∨ (ck\f))\f`; a single disjunct stands bare.
fn negated_disjunction(items: impl IntoIterator<Item = Category>, f: &PrimCat) -> Category {
    let fc = Category::Prim(f.clone());
    let disj = Category::or_all(items.into_iter().map(|c| Category::ldiv(c, fc.clone())))
        .expect("nonempty");
    Category::ldiv(disj, fc)
}

/// Double-negates every primitive and rewrites each conjunct denominator
/// `p1^ff ∧ … ∧ pk^ff` as `((p1\f) ∨ … ∨ (pk\f))\f`.
fn disjunctive_axiom(c: &Category, f: &PrimCat) -> Category {
    match c {
        Category::Prim(_) => double_negate(c, f),
        Category::LDiv(den, num) => {
            Category::ldiv(disjunctive_conjunct(den, f), disjunctive_axiom(num, f))
        }
        Category::RDiv(num, den) => {
            Category::rdiv(disjunctive_axiom(num, f), disjunctive_conjunct(den, f))
        }
        _ => unreachable!("axioms are basic with conjunct denominators"),
    }
}

fn disjunctive_conjunct(c: &Category, f: &PrimCat) -> Category {
    let members = c.conjunct_members().expect("denominators are conjuncts");
    negated_disjunction(members.into_iter().map(|p| Category::Prim(p.clone())), f)
}

/// Lambek grammar using only `\`, `/` and `∨` built from a conjunctive
/// categorial grammar by relative double negation: letter `a` with axioms
/// `A_1(a), …, A_k(a)` gets `((A''_1\f) ∨ … ∨ (A''_k\f))\f`, where `A''`
/// double-negates every primitive and rewrites each conjunct denominator as a
/// negated disjunction; the target is `(s^ff)^ff`. With `include_empty` the
/// target variable is replaced by the empty-string formula, under MALC*.
///
/// Every string of the result is in the original language. The converse
/// needs `A^ff ∧ B^ff → ((A ∧ B)\f)\f`, which is not derivable, and fails
/// once a letter has several axioms that a derivation uses together.
pub fn to_disjunction_grammar(
    g: &Ccg,
    include_empty: bool,
) -> Result<LambekGrammar, TransformError> {
    let s = g.target().clone();
    let mut fresh = FreshNames::new(g.primitives().into_iter().map(|p| p.name().to_string()));
    let f = PrimCat::new(fresh.prefer("f"));
    let mut lexicon = BTreeMap::new();
    for a in g.alphabet() {
        let items: Vec<Category> = g
            .categories_of(*a)
            .map(|c| disjunctive_axiom(c, &f))
            .collect();
        if !items.is_empty() {
            lexicon.insert(*a, vec![negated_disjunction(items, &f)]);
        }
    }
    let s_ff = double_negate(&Category::Prim(s.clone()), &f);
    let mut target = double_negate(&s_ff, &f);
    let mut calculus = Calculus::Malc;
    if include_empty {
        let (q, r, t) = fresh_qrt(&mut fresh);
        let d = empty_string_formula(&q, &r, &t);
        for cs in lexicon.values_mut() {
            for c in cs.iter_mut() {
                *c = c.substitute(&s, &d);
            }
        }
        target = target.substitute(&s, &d);
        calculus = Calculus::MalcStar;
    }
    let out = LambekGrammar::new(lexicon, target, calculus)?;
    assert!(
        out.categories().all(|c| !c.contains_and()),
        "disjunction grammar must be conjunction-free"
    );
    Ok(out)
}

/// Length-preserving letter-to-letter map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homomorphism {
    map: BTreeMap<char, char>,
}

impl Homomorphism {
    pub fn new(map: impl IntoIterator<Item = (char, char)>) -> Self {
        Homomorphism {
            map: map.into_iter().collect(),
        }
    }

    pub fn identity(alphabet: impl IntoIterator<Item = char>) -> Self {
        Self::new(alphabet.into_iter().map(|c| (c, c)))
    }

    pub fn apply(&self, w: &str) -> Result<String, TransformError> {
        w.chars()
            .map(|c| {
                self.map
                    .get(&c)
                    .copied()
                    .ok_or(TransformError::Undefined(c))
            })
            .collect()
    }

    /// Source letters mapped to `c`, in order.
    pub fn preimage(&self, c: char) -> Vec<char> {
        self.map
            .iter()
            .filter(|(_, t)| **t == c)
            .map(|(s, _)| *s)
            .collect()
    }
}

/// Whether some `u` with `h(u) = w` satisfies `member`. Preimages are tried
/// in lexicographic order; more than `max_check` of them is a budget error.
pub fn image_member(
    mut member: impl FnMut(&str) -> bool,
    h: &Homomorphism,
    w: &str,
    max_check: u64,
) -> Result<bool, TransformError> {
    let choices: Vec<Vec<char>> = w.chars().map(|c| h.preimage(c)).collect();
    let needed = choices
        .iter()
        .fold(1u64, |n, c| n.saturating_mul(c.len() as u64));
    if needed > max_check {
        return Err(BudgetExceeded {
            budget: max_check,
            needed,
        }
        .into());
    }
    if needed == 0 {
        return Ok(false);
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let u: String = idx.iter().zip(&choices).map(|(i, c)| c[*i]).collect();
        if member(&u) {
            return Ok(true);
        }
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(false);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccg::{ccg_enumerate, ccg_member};
    use crate::conj::cg_enumerate;
    use crate::samples;
    use crate::syntax::parse_category;

    fn cat(s: &str) -> Category {
        parse_category(s).unwrap()
    }

    #[test]
    fn categorial_to_conjunctive_keeps_language() {
        let g = samples::triple_power_ccg();
        let cg = ccg_to_cg(&g);
        assert_eq!(
            cg_enumerate(&cg, 9, 1 << 20).unwrap(),
            ccg_enumerate(&g, 9, 1 << 20).unwrap()
        );
    }

    #[test]
    fn categorial_to_conjunctive_rule_shapes() {
        let g = Ccg::new([], PrimCat::new("s"), [(cat("s"), 'a')]).unwrap();
        let cg = ccg_to_cg(&g);
        assert_eq!(
            cg.rules()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
            vec!["s -> 'a'"]
        );
        let g = Ccg::new([], PrimCat::new("s"), [(cat("s/(x & y)"), 'b')]).unwrap();
        let rules: Vec<String> = ccg_to_cg(&g)
            .rules()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert!(
            rules.contains(&"s -> _fresh_0 _fresh_1".to_string()),
            "{rules:?}"
        );
        assert!(
            rules.contains(&"_fresh_1 -> x & y".to_string()),
            "{rules:?}"
        );
    }

    #[test]
    fn bundle_for_ab() {
        let g = bundle_to_ccg(&samples::ab_bundle()).unwrap();
        assert_eq!(
            ccg_enumerate(&g, 6, 1 << 20).unwrap(),
            vec!["ab".to_string()]
        );
        let joined = split_and_join(&samples::ab_bundle()).unwrap();
        assert_eq!(
            cg_enumerate(&joined, 6, 1 << 20).unwrap(),
            vec!["ab".to_string()]
        );
    }

    #[test]
    fn bundle_for_single_letter() {
        let g = bundle_to_ccg(&samples::single_letter_bundle()).unwrap();
        assert_eq!(
            ccg_enumerate(&g, 6, 1 << 20).unwrap(),
            vec!["a".to_string()]
        );
        let mut entries = BTreeMap::new();
        entries.insert('a', BundleEntry::default());
        let empty = QuotientBundle::new(vec!['a'], entries).unwrap();
        assert!(ccg_enumerate(&bundle_to_ccg(&empty).unwrap(), 6, 1 << 20)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bundle_rejects_non_odd_form() {
        let mut entries = BTreeMap::new();
        entries.insert(
            'a',
            BundleEntry {
                grammar: Some(samples::triple_power_cg()),
                eps: false,
            },
        );
        let b = QuotientBundle::new(vec!['a', 'b', 'c'], entries).unwrap();
        assert!(matches!(
            bundle_to_ccg(&b),
            Err(TransformError::NotOddNormalForm { symbol: 'a', .. })
        ));
    }

    #[test]
    fn bundle_verification() {
        let b = samples::ab_bundle();
        let lang = |w: &str| w == "ab";
        let ok = verify_bundle(&b, 4, 1 << 20, |a, w| lang(&format!("{a}{w}"))).unwrap();
        assert_eq!(ok, None);
        let bad = verify_bundle(&b, 4, 1 << 20, |a, w| format!("{a}{w}") == "aa").unwrap();
        assert!(bad.is_some());
    }

    #[test]
    fn malc_lexicon_groups_axioms() {
        let g = ccg_to_malc(&samples::triple_power_ccg());
        assert_eq!(g.lexicon()[&'b'], vec![cat("s/(x & y)")]);
        assert_eq!(g.lexicon()[&'a'], vec![cat("r & r/r & p/q & p\\q")]);
        assert_eq!(g.lexicon()[&'c'], vec![cat("p & p\\(x/r) & (r\\y)/p")]);
        let one = Ccg::new([], PrimCat::new("s"), [(cat("s"), 'a')]).unwrap();
        assert_eq!(ccg_to_malc(&one).lexicon()[&'a'], vec![cat("s")]);
    }

    #[test]
    fn empty_string_substitution() {
        let one = Ccg::new([], PrimCat::new("s"), [(cat("s"), 'a')]).unwrap();
        let g = add_empty_string(&ccg_to_malc(&one)).unwrap();
        assert_eq!(g.target(), &cat("((r\\r)\\((t\\t)\\q))\\q"));
        assert_eq!(g.calculus(), Calculus::MalcStar);
        let g = add_empty_string(&ccg_to_malc(&samples::triple_power_ccg())).unwrap();
        assert!(!g.target().mentions(&PrimCat::new("s")));
        assert!(g.target().mentions(&PrimCat::new("_fresh_0")));
        let compound = LambekGrammar::new(BTreeMap::new(), cat("s/s"), Calculus::Malc).unwrap();
        assert!(matches!(
            add_empty_string(&compound),
            Err(TransformError::TargetNotPrimitive(_))
        ));
        let bad =
            LambekGrammar::new([('a', vec![cat("p/s")])].into(), cat("s"), Calculus::Malc).unwrap();
        assert!(matches!(
            add_empty_string(&bad),
            Err(TransformError::NotSimple(_))
        ));
    }

    #[test]
    fn double_negation() {
        let f = PrimCat::new("f");
        assert_eq!(
            relative_double_negation(&cat("p"), &f).unwrap(),
            cat("(p\\f)\\f")
        );
        assert_eq!(
            relative_double_negation(&cat("p\\q"), &f).unwrap(),
            cat("((p\\q)\\f)\\f")
        );
        assert!(relative_double_negation(&cat("p"), &PrimCat::new("p")).is_err());
    }

    #[test]
    fn disjunction_grammar_shapes() {
        let one = Ccg::new([], PrimCat::new("s"), [(cat("s"), 'a')]).unwrap();
        let g = to_disjunction_grammar(&one, false).unwrap();
        assert_eq!(g.lexicon()[&'a'], vec![cat("(((s\\f)\\f)\\f)\\f")]);
        assert_eq!(g.target(), &cat("(((s\\f)\\f)\\f)\\f"));
        let g = to_disjunction_grammar(&samples::triple_power_ccg(), false).unwrap();
        assert!(g.categories().all(|c| !c.contains_and()));
        assert_eq!(
            g.lexicon()[&'b'],
            vec![cat("((((s\\f)\\f)/(((x\\f) + (y\\f))\\f))\\f)\\f")]
        );
        let e = to_disjunction_grammar(&samples::triple_power_ccg(), true).unwrap();
        assert_eq!(e.calculus(), Calculus::MalcStar);
        assert!(!e.target().mentions(&PrimCat::new("s")));
    }

    #[test]
    fn negated_disjunction_is_weaker_than_negated_conjunction() {
        use crate::prover::derivable;
        let conj = cat("((p & q)\\f)\\f");
        let disj = cat("((p\\f) + (q\\f))\\f");
        let seq =
            |a: &Category, b: &Category| crate::syntax::Sequent::new(vec![a.clone()], b.clone());
        assert!(derivable(Calculus::Malc, &seq(&conj, &disj)).unwrap());
        assert!(!derivable(Calculus::Malc, &seq(&disj, &conj)).unwrap());
    }

    #[test]
    fn homomorphic_images() {
        let h = Homomorphism::new([('0', '?'), ('1', '?'), ('a', 'a'), ('b', 'b')]);
        let tried = std::cell::RefCell::new(Vec::new());
        let hit = image_member(
            |u| {
                tried.borrow_mut().push(u.to_string());
                u == "b1"
            },
            &h,
            "b?",
            16,
        )
        .unwrap();
        assert!(hit);
        assert_eq!(*tried.borrow(), vec!["b0", "b1"]);
        assert!(image_member(|_| true, &h, "??", 3).is_err());
        let id = Homomorphism::identity(['a', 'b']);
        assert!(image_member(|u| u == "ab", &id, "ab", 1).unwrap());
        assert!(!image_member(|u| u == "ab", &id, "ba", 1).unwrap());
        assert!(!image_member(|_| true, &id, "z", 1).unwrap());
        assert!(ccg_member(&samples::triple_power_ccg(), "bacaca").unwrap());
    }
}
