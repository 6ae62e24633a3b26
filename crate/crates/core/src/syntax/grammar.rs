use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::category::{is_identifier, Category, PrimCat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("undeclared terminal {0:?}")]
    UndeclaredTerminal(char),
    #[error("undeclared nonterminal {0:?}")]
    UndeclaredNonterminal(String),
    #[error("invalid nonterminal name {0:?}")]
    BadNonterminal(String),
    #[error("nonterminal {0:?} clashes with a terminal of the same name")]
    NameClash(String),
    #[error("rule for {0} has no conjuncts")]
    EmptyRule(String),
    #[error("axiom category {0} is not a basic category with conjunct denominators")]
    NotBasic(String),
    #[error(
        "axiom category {0} uses conjunction, which a basic categorial grammar does not allow"
    )]
    NotConjunctionFree(String),
    #[error("axiom symbol {0:?} is not in the alphabet")]
    SymbolOutsideAlphabet(char),
    #[error("symbol {0:?} has no lexicon entry")]
    MissingLexicon(char),
    #[error("category {category} is not expressible in {calculus}")]
    OutsideCalculus {
        category: String,
        calculus: Calculus,
    },
    #[error("target {0} must be primitive")]
    TargetNotPrimitive(String),
}

/// Terminal or nonterminal occurrence in a rule body.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    T(char),
    N(String),
}

impl Symbol {
    pub fn nt(name: &str) -> Self {
        Symbol::N(name.to_string())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::T(c) => write!(f, "'{c}'"),
            Symbol::N(n) => f.write_str(n),
        }
    }
}

/// `head → β1 & … & βk`; a body may be empty (ε).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: String,
    pub conjuncts: Vec<Vec<Symbol>>,
}

impl Rule {
    pub fn new(head: &str, conjuncts: Vec<Vec<Symbol>>) -> Self {
        Rule {
            head: head.to_string(),
            conjuncts,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ->", self.head)?;
        for (i, body) in self.conjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" &")?;
            }
            if body.is_empty() {
                f.write_str(" eps")?;
            }
            for s in body {
                write!(f, " {s}")?;
            }
        }
        Ok(())
    }
}

/// Conjunctive grammar; ordinary context-free grammars are the case where
/// every rule has exactly one conjunct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjGrammar {
    terminals: BTreeSet<char>,
    nonterminals: BTreeSet<String>,
    start: String,
    rules: Vec<Rule>,
}

impl ConjGrammar {
    /// Rule heads and the start symbol are declared implicitly; every other
    /// nonterminal in a body must appear in `extra_nonterminals`.
    pub fn new(
        terminals: impl IntoIterator<Item = char>,
        extra_nonterminals: impl IntoIterator<Item = String>,
        start: &str,
        rules: Vec<Rule>,
    ) -> Result<Self, GrammarError> {
        let terminals: BTreeSet<char> = terminals.into_iter().collect();
        let mut nonterminals: BTreeSet<String> = extra_nonterminals.into_iter().collect();
        nonterminals.insert(start.to_string());
        nonterminals.extend(rules.iter().map(|r| r.head.clone()));
        for n in &nonterminals {
            if !is_identifier(n) || n == "eps" {
                return Err(GrammarError::BadNonterminal(n.clone()));
            }
            let mut chars = n.chars();
            if let (Some(c), None) = (chars.next(), chars.next()) {
                if terminals.contains(&c) {
                    return Err(GrammarError::NameClash(n.clone()));
                }
            }
        }
        for r in &rules {
            if r.conjuncts.is_empty() {
                return Err(GrammarError::EmptyRule(r.head.clone()));
            }
            for s in r.conjuncts.iter().flatten() {
                match s {
                    Symbol::T(c) if !terminals.contains(c) => {
                        return Err(GrammarError::UndeclaredTerminal(*c))
                    }
                    Symbol::N(n) if !nonterminals.contains(n) => {
                        return Err(GrammarError::UndeclaredNonterminal(n.clone()))
                    }
                    _ => {}
                }
            }
        }
        Ok(ConjGrammar {
            terminals,
            nonterminals,
            start: start.to_string(),
            rules,
        })
    }

    pub fn terminals(&self) -> &BTreeSet<char> {
        &self.terminals
    }

    pub fn nonterminals(&self) -> &BTreeSet<String> {
        &self.nonterminals
    }

    pub fn start(&self) -> &str {
        &self.start
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Same grammar with a different start symbol.
    pub fn with_start(&self, start: &str) -> Result<Self, GrammarError> {
        if !self.nonterminals.contains(start) {
            return Err(GrammarError::UndeclaredNonterminal(start.to_string()));
        }
        let mut g = self.clone();
        g.start = start.to_string();
        Ok(g)
    }

    pub fn is_context_free(&self) -> bool {
        self.rules.iter().all(|r| r.conjuncts.len() == 1)
    }
}

/// Conjunctive categorial grammar: axioms `A(a)` with `A` basic with
/// conjunct denominators, and a primitive target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ccg {
    alphabet: BTreeSet<char>,
    target: PrimCat,
    axioms: Vec<(Category, char)>,
}

impl Ccg {
    /// Axioms are deduplicated, keeping first occurrences in order. Symbols
    /// used by axioms are added to the alphabet.
    pub fn new(
        alphabet: impl IntoIterator<Item = char>,
        target: PrimCat,
        axioms: impl IntoIterator<Item = (Category, char)>,
    ) -> Result<Self, GrammarError> {
        let mut alphabet: BTreeSet<char> = alphabet.into_iter().collect();
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (c, a) in axioms {
            if !c.is_bcat_conj() {
                return Err(GrammarError::NotBasic(c.to_string()));
            }
            alphabet.insert(a);
            if seen.insert((c.clone(), a)) {
                list.push((c, a));
            }
        }
        Ok(Ccg {
            alphabet,
            target,
            axioms: list,
        })
    }

    /// Conjunction-free variant: every denominator must be primitive.
    pub fn new_basic(
        alphabet: impl IntoIterator<Item = char>,
        target: PrimCat,
        axioms: impl IntoIterator<Item = (Category, char)>,
    ) -> Result<Self, GrammarError> {
        let g = Self::new(alphabet, target, axioms)?;
        if let Some((c, _)) = g.axioms.iter().find(|(c, _)| !c.is_bcat()) {
            return Err(GrammarError::NotConjunctionFree(c.to_string()));
        }
        Ok(g)
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        &self.alphabet
    }

    pub fn target(&self) -> &PrimCat {
        &self.target
    }

    pub fn axioms(&self) -> &[(Category, char)] {
        &self.axioms
    }

    pub fn is_basic(&self) -> bool {
        self.axioms.iter().all(|(c, _)| c.is_bcat())
    }

    /// Axiom categories of one symbol, in declaration order.
    pub fn categories_of(&self, a: char) -> impl Iterator<Item = &Category> {
        self.axioms
            .iter()
            .filter(move |(_, b)| *b == a)
            .map(|(c, _)| c)
    }

    pub fn primitives(&self) -> BTreeSet<PrimCat> {
        let mut out = BTreeSet::new();
        out.insert(self.target.clone());
        for (c, _) in &self.axioms {
            c.collect_primitives(&mut out);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Calculus {
    /// Lambek calculus with the non-emptiness restriction.
    #[serde(rename = "L")]
    L,
    #[serde(rename = "L*")]
    LStar,
    /// Lambek calculus with additive conjunction and disjunction.
    #[serde(rename = "MALC")]
    Malc,
    #[serde(rename = "MALC*")]
    MalcStar,
}

impl Calculus {
    pub fn lambek_restriction(self) -> bool {
        matches!(self, Calculus::L | Calculus::Malc)
    }

    pub fn allows_additives(self) -> bool {
        matches!(self, Calculus::Malc | Calculus::MalcStar)
    }

    pub fn admits(self, c: &Category) -> bool {
        self.allows_additives() || c.is_multiplicative()
    }

    pub fn name(self) -> &'static str {
        match self {
            Calculus::L => "L",
            Calculus::LStar => "L*",
            Calculus::Malc => "MALC",
            Calculus::MalcStar => "MALC*",
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Calculus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "L" => Ok(Calculus::L),
            "L*" => Ok(Calculus::LStar),
            "MALC" => Ok(Calculus::Malc),
            "MALC*" => Ok(Calculus::MalcStar),
            other => Err(format!("unknown calculus {other:?}")),
        }
    }
}

/// Lexicalized grammar over a Lambek calculus. The target may be compound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambekGrammar {
    lexicon: BTreeMap<char, Vec<Category>>,
    target: Category,
    calculus: Calculus,
}

impl LambekGrammar {
    /// The alphabet is the set of lexicon keys; each must have at least one category.
    pub fn new(
        lexicon: BTreeMap<char, Vec<Category>>,
        target: Category,
        calculus: Calculus,
    ) -> Result<Self, GrammarError> {
        for (a, cats) in &lexicon {
            if cats.is_empty() {
                return Err(GrammarError::MissingLexicon(*a));
            }
            for c in cats {
                if !calculus.admits(c) {
                    return Err(GrammarError::OutsideCalculus {
                        category: c.to_string(),
                        calculus,
                    });
                }
            }
        }
        if !calculus.admits(&target) {
            return Err(GrammarError::OutsideCalculus {
                category: target.to_string(),
                calculus,
            });
        }
        Ok(LambekGrammar {
            lexicon,
            target,
            calculus,
        })
    }

    pub fn alphabet(&self) -> impl Iterator<Item = char> + '_ {
        self.lexicon.keys().copied()
    }

    pub fn lexicon(&self) -> &BTreeMap<char, Vec<Category>> {
        &self.lexicon
    }

    pub fn target(&self) -> &Category {
        &self.target
    }

    pub fn calculus(&self) -> Calculus {
        self.calculus
    }

    pub fn with_calculus(&self, calculus: Calculus) -> Result<Self, GrammarError> {
        Self::new(self.lexicon.clone(), self.target.clone(), calculus)
    }

    pub fn categories(&self) -> impl Iterator<Item = &Category> {
        self.lexicon
            .values()
            .flatten()
            .chain(std::iter::once(&self.target))
    }

    pub fn primitives(&self) -> BTreeSet<PrimCat> {
        let mut out = BTreeSet::new();
        for c in self.categories() {
            c.collect_primitives(&mut out);
        }
        out
    }
}

/// Fresh identifiers `_fresh_<n>` avoiding a set of taken names.
#[derive(Debug, Clone, Default)]
pub struct FreshNames {
    taken: HashSet<String>,
    counter: usize,
}

impl FreshNames {
    pub fn new(taken: impl IntoIterator<Item = String>) -> Self {
        FreshNames {
            taken: taken.into_iter().collect(),
            counter: 0,
        }
    }

    pub fn reserve(&mut self, name: &str) {
        self.taken.insert(name.to_string());
    }

    pub fn is_taken(&self, name: &str) -> bool {
        self.taken.contains(name)
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let candidate = format!("_fresh_{}", self.counter);
            self.counter += 1;
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
        }
    }

    /// `preferred` when still free, otherwise the next fresh name.
    pub fn prefer(&mut self, preferred: &str) -> String {
        if is_identifier(preferred) && self.taken.insert(preferred.to_string()) {
            preferred.to_string()
        } else {
            self.fresh()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undeclared_body_symbol_is_rejected() {
        let r = Rule::new("S", vec![vec![Symbol::nt("X")]]);
        assert_eq!(
            ConjGrammar::new(['a'], [], "S", vec![r]).unwrap_err(),
            GrammarError::UndeclaredNonterminal("X".into())
        );
        let r = Rule::new("S", vec![vec![Symbol::T('b')]]);
        assert_eq!(
            ConjGrammar::new(['a'], [], "S", vec![r]).unwrap_err(),
            GrammarError::UndeclaredTerminal('b')
        );
    }

    #[test]
    fn nonterminal_may_not_shadow_terminal() {
        let r = Rule::new("a", vec![vec![Symbol::T('a')]]);
        assert!(matches!(
            ConjGrammar::new(['a'], [], "a", vec![r]),
            Err(GrammarError::NameClash(_))
        ));
    }

    #[test]
    fn ccg_deduplicates_axioms() {
        let g = Ccg::new(
            [],
            PrimCat::new("s"),
            [
                (Category::prim("s"), 'a'),
                (Category::prim("s"), 'a'),
                (Category::prim("p"), 'a'),
            ],
        )
        .unwrap();
        assert_eq!(g.axioms().len(), 2);
    }

    #[test]
    fn ccg_rejects_non_basic_axiom() {
        let bad = Category::and(Category::prim("x"), Category::prim("y"));
        assert!(matches!(
            Ccg::new([], PrimCat::new("s"), [(bad, 'a')]),
            Err(GrammarError::NotBasic(_))
        ));
    }

    #[test]
    fn lambek_grammar_rejects_additives_under_l() {
        let mut lex = BTreeMap::new();
        lex.insert(
            'a',
            vec![Category::and(Category::prim("p"), Category::prim("q"))],
        );
        assert!(LambekGrammar::new(lex, Category::prim("s"), Calculus::L).is_err());
    }

    #[test]
    fn fresh_names_skip_taken() {
        let mut f = FreshNames::new(["_fresh_0".to_string()]);
        assert_eq!(f.fresh(), "_fresh_1");
        assert_eq!(f.prefer("q"), "q");
        assert_eq!(f.prefer("q"), "_fresh_2");
    }
}
