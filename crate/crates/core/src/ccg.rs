//! Membership and derivations for conjunctive categorial grammars.
//!
//! Every category in a derivation is a subexpression of an axiom category,
//! so the chart only tracks that finite universe: span cells are bitsets over
//! it, seeded by axioms at length one and closed under the two division
//! rules and conjunction introduction.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use indexmap::IndexSet;
use serde::Serialize;

use crate::lang::{enumerate_language, BudgetExceeded, Recognizer};
use crate::syntax::{collect_subexpressions, Category, Ccg, GrammarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CcgError {
    #[error("conjunctive categorial grammars only describe nonempty strings")]
    EmptyWord,
    #[error("symbol {0:?} is not in the grammar's alphabet")]
    UnknownSymbol(char),
    #[error("category {0} is not a subexpression of any axiom, so nothing derives it")]
    OutsideUniverse(String),
    #[error("symbol {0:?} is already in the alphabet")]
    SymbolCollision(char),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Subexpressions of all axiom categories, then the target, in first-seen order.
pub fn ccg_universe(g: &Ccg) -> IndexSet<Category> {
    let mut out = IndexSet::new();
    for (c, _) in g.axioms() {
        collect_subexpressions(c, &mut out).expect("axioms are basic with conjunct denominators");
    }
    out.insert(Category::Prim(g.target().clone()));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CcgRule {
    Axiom,
    Conjunction,
    LeftDivision,
    RightDivision,
}

impl CcgRule {
    fn latex(self) -> &'static str {
        match self {
            CcgRule::Axiom => "",
            CcgRule::Conjunction => "\\wedge",
            CcgRule::LeftDivision => "\\backslash",
            CcgRule::RightDivision => "/",
        }
    }
}

/// Derivation of `head(w[span])`. Division nodes have the two premises in
/// string order; conjunction nodes one premise per member primitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcgDerivation {
    pub head: Category,
    pub rule: CcgRule,
    pub span: (usize, usize),
    pub children: Vec<CcgDerivation>,
}

impl CcgDerivation {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Self::size).sum::<usize>()
    }

    /// Every category occurring in the tree.
    pub fn categories(&self) -> Vec<&Category> {
        let mut out = vec![&self.head];
        for c in &self.children {
            out.extend(c.categories());
        }
        out
    }

    pub fn to_latex(&self, w: &str) -> String {
        let chars: Vec<char> = w.chars().collect();
        let mut out = String::new();
        self.latex_into(&chars, &mut out);
        out
    }

    fn latex_into(&self, w: &[char], out: &mut String) {
        let (i, j) = self.span;
        let sub: String = w[i..j].iter().collect();
        let prop = format!("{}({sub})", paren_latex(&self.head));
        if self.rule == CcgRule::Axiom {
            out.push_str(&prop);
            return;
        }
        let _ = write!(out, "\\infer[{}]{{{prop}}}{{", self.rule.latex());
        for (n, c) in self.children.iter().enumerate() {
            if n > 0 {
                out.push_str(" & ");
            }
            c.latex_into(w, out);
        }
        out.push('}');
    }
}

fn paren_latex(c: &Category) -> String {
    match c {
        Category::Prim(_) => c.to_latex(),
        _ => format!("({})", c.to_latex()),
    }
}

#[derive(Debug, Clone)]
struct Compiled {
    universe: IndexSet<Category>,
    /// Per symbol: universe indices of its axiom categories, in order.
    axioms: Vec<(char, Vec<usize>)>,
    /// `(conjunct, member primitive indices)`; `None` when a member is outside the universe.
    conjuncts: Vec<(usize, Option<Vec<usize>>)>,
    /// `(C\A, C, A)`
    ldivs: Vec<(usize, usize, usize)>,
    /// `(A/C, C, A)`
    rdivs: Vec<(usize, usize, usize)>,
    target: usize,
}

impl Compiled {
    fn new(g: &Ccg) -> Self {
        let universe = ccg_universe(g);
        let idx = |c: &Category| {
            universe
                .get_index_of(c)
                .expect("closed under subexpressions")
        };
        let mut axioms: Vec<(char, Vec<usize>)> = Vec::new();
        for (c, a) in g.axioms() {
            match axioms.iter_mut().find(|(b, _)| b == a) {
                Some((_, v)) => v.push(idx(c)),
                None => axioms.push((*a, vec![idx(c)])),
            }
        }
        let mut conjuncts = Vec::new();
        let mut ldivs = Vec::new();
        let mut rdivs = Vec::new();
        for (n, c) in universe.iter().enumerate() {
            match c {
                Category::And(..) => {
                    let members = c
                        .conjunct_members()
                        .expect("universe conjunctions are conjuncts");
                    let ids: Option<Vec<usize>> = members
                        .iter()
                        .map(|p| universe.get_index_of(&Category::Prim((*p).clone())))
                        .collect();
                    conjuncts.push((n, ids));
                }
                Category::LDiv(den, num) => ldivs.push((n, idx(den), idx(num))),
                Category::RDiv(num, den) => rdivs.push((n, idx(den), idx(num))),
                _ => {}
            }
        }
        let target = idx(&Category::Prim(g.target().clone()));
        Compiled {
            universe,
            axioms,
            conjuncts,
            ldivs,
            rdivs,
            target,
        }
    }

    fn axioms_of(&self, a: char) -> &[usize] {
        self.axioms
            .iter()
            .find(|(b, _)| *b == a)
            .map_or(&[], |(_, v)| v.as_slice())
    }
}

/// Incremental chart over a growing word.
#[derive(Debug, Clone)]
pub struct CcgChart {
    g: Compiled,
    word: Vec<char>,
    /// `cols[j][i]` holds the categories deriving `w[i..j]`, for `i < j`.
    cols: Vec<Vec<FixedBitSet>>,
}

impl CcgChart {
    pub fn new(g: &Ccg) -> Self {
        CcgChart {
            g: Compiled::new(g),
            word: Vec::new(),
            cols: vec![Vec::new()],
        }
    }

    pub fn universe(&self) -> &IndexSet<Category> {
        &self.g.universe
    }

    pub fn push_symbol(&mut self, c: char) {
        self.word.push(c);
        let j = self.word.len();
        let n = self.g.universe.len();
        let mut col: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); j];
        for i in (0..j).rev() {
            let mut cell = FixedBitSet::with_capacity(n);
            if i + 1 == j {
                for &a in self.g.axioms_of(c) {
                    cell.insert(a);
                }
            }
            for (m, right) in col.iter().enumerate().take(j).skip(i + 1) {
                let left = &self.cols[m][i];
                for &(d, den, num) in &self.g.ldivs {
                    if left.contains(den) && right.contains(d) {
                        cell.insert(num);
                    }
                }
                for &(d, den, num) in &self.g.rdivs {
                    if left.contains(d) && right.contains(den) {
                        cell.insert(num);
                    }
                }
            }
            for (k, members) in &self.g.conjuncts {
                if let Some(ms) = members {
                    if ms.iter().all(|&p| cell.contains(p)) {
                        cell.insert(*k);
                    }
                }
            }
            col[i] = cell;
        }
        self.cols.push(col);
    }

    pub fn pop_symbol(&mut self) {
        if self.word.pop().is_some() {
            self.cols.pop();
        }
    }

    fn holds(&self, k: usize, i: usize, j: usize) -> bool {
        self.cols[j][i].contains(k)
    }

    pub fn accepts_word(&self) -> bool {
        let j = self.word.len();
        j > 0 && self.holds(self.g.target, 0, j)
    }

    /// Categories deriving `w[i..j]`, in universe order.
    pub fn categories_at(&self, i: usize, j: usize) -> Vec<&Category> {
        self.cols[j][i]
            .ones()
            .map(|k| &self.g.universe[k])
            .collect()
    }

    pub fn derivation(&self, b: &Category, i: usize, j: usize) -> Option<CcgDerivation> {
        let k = self.g.universe.get_index_of(b)?;
        self.holds(k, i, j).then(|| self.build(k, i, j))
    }

    fn build(&self, k: usize, i: usize, j: usize) -> CcgDerivation {
        let head = self.g.universe[k].clone();
        let node = |rule, children| CcgDerivation {
            head: head.clone(),
            rule,
            span: (i, j),
            children,
        };
        if j == i + 1 && self.g.axioms_of(self.word[i]).contains(&k) {
            return node(CcgRule::Axiom, Vec::new());
        }
        if let Some((_, Some(ms))) = self.g.conjuncts.iter().find(|(c, _)| *c == k) {
            let premises = ms.iter().map(|&p| self.build(p, i, j)).collect();
            return node(CcgRule::Conjunction, premises);
        }
        for m in i + 1..j {
            for &(d, den, num) in &self.g.ldivs {
                if num == k && self.holds(den, i, m) && self.holds(d, m, j) {
                    return node(
                        CcgRule::LeftDivision,
                        vec![self.build(den, i, m), self.build(d, m, j)],
                    );
                }
            }
            for &(d, den, num) in &self.g.rdivs {
                if num == k && self.holds(d, i, m) && self.holds(den, m, j) {
                    return node(
                        CcgRule::RightDivision,
                        vec![self.build(d, i, m), self.build(den, m, j)],
                    );
                }
            }
        }
        unreachable!("chart fact without a justification")
    }
}

impl Recognizer for CcgChart {
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

/// Chart for the whole word.
pub fn ccg_chart(g: &Ccg, w: &str) -> Result<CcgChart, CcgError> {
    if w.is_empty() {
        return Err(CcgError::EmptyWord);
    }
    if let Some(c) = w.chars().find(|c| !g.alphabet().contains(c)) {
        return Err(CcgError::UnknownSymbol(c));
    }
    let mut chart = CcgChart::new(g);
    for c in w.chars() {
        chart.push_symbol(c);
    }
    Ok(chart)
}

/// Derivation of `b(w)`, if one exists.
pub fn ccg_derive(g: &Ccg, b: &Category, w: &str) -> Result<Option<CcgDerivation>, CcgError> {
    if !ccg_universe(g).contains(b) {
        return Err(CcgError::OutsideUniverse(b.to_string()));
    }
    let chart = ccg_chart(g, w)?;
    Ok(chart.derivation(b, 0, w.chars().count()))
}

pub fn ccg_member(g: &Ccg, w: &str) -> Result<bool, CcgError> {
    Ok(ccg_chart(g, w)?.accepts_word())
}

/// All members of length at most `max_len`, shortest first.
pub fn ccg_enumerate(g: &Ccg, max_len: usize, budget: u64) -> Result<Vec<String>, CcgError> {
    let alphabet: Vec<char> = g.alphabet().iter().copied().collect();
    let mut chart = CcgChart::new(g);
    Ok(enumerate_language(&mut chart, &alphabet, max_len, budget)?)
}

/// Adds the axiom `a(b)` for a symbol `b` not yet in the alphabet.
pub fn ccg_extend(g: &Ccg, b: char, a: Category) -> Result<Ccg, CcgError> {
    if g.alphabet().contains(&b) {
        return Err(CcgError::SymbolCollision(b));
    }
    let mut axioms = g.axioms().to_vec();
    axioms.push((a, b));
    Ok(Ccg::new(
        g.alphabet().iter().copied(),
        g.target().clone(),
        axioms,
    )?)
}

/// Replays a derivation using only the three inference rules and the axioms.
pub fn check_ccg_derivation(g: &Ccg, w: &str, d: &CcgDerivation) -> Result<(), String> {
    let chars: Vec<char> = w.chars().collect();
    check_node(g, &chars, d)
}

fn check_node(g: &Ccg, w: &[char], d: &CcgDerivation) -> Result<(), String> {
    let (i, j) = d.span;
    if i >= j || j > w.len() {
        return Err(format!("bad span {i}..{j}"));
    }
    match d.rule {
        CcgRule::Axiom => {
            if j != i + 1 || !g.axioms().iter().any(|(c, a)| c == &d.head && *a == w[i]) {
                return Err(format!("{}({}) is not an axiom", d.head, w[i]));
            }
        }
        CcgRule::Conjunction => {
            let members = d
                .head
                .conjunct_members()
                .ok_or("conjunction node on a non-conjunct")?;
            if members.len() < 2 || members.len() != d.children.len() {
                return Err("conjunction node needs one premise per member, at least two".into());
            }
            for (p, c) in members.iter().zip(&d.children) {
                if c.span != d.span || c.head != Category::Prim((*p).clone()) {
                    return Err(format!("premise {} does not match member {p}", c.head));
                }
            }
        }
        CcgRule::LeftDivision | CcgRule::RightDivision => {
            let [l, r] = d.children.as_slice() else {
                return Err("division node needs two premises".into());
            };
            if l.span.0 != i || l.span.1 != r.span.0 || r.span.1 != j {
                return Err("division premises do not tile the span".into());
            }
            let ok = if d.rule == CcgRule::LeftDivision {
                matches!(&r.head, Category::LDiv(den, num) if **den == l.head && **num == d.head && den.is_conjunct())
            } else {
                matches!(&l.head, Category::RDiv(num, den) if **den == r.head && **num == d.head && den.is_conjunct())
            };
            if !ok {
                return Err(format!("division does not produce {}", d.head));
            }
        }
    }
    d.children.iter().try_for_each(|c| check_node(g, w, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::syntax::{parse_category, PrimCat};

    fn cat(s: &str) -> Category {
        parse_category(s).unwrap()
    }

    #[test]
    fn universe_of_triple_power_grammar() {
        let u = ccg_universe(&samples::triple_power_ccg());
        for c in [
            "r",
            "r/r",
            "p",
            "p/q",
            "p\\q",
            "q",
            "p\\(x/r)",
            "x/r",
            "x",
            "(r\\y)/p",
            "r\\y",
            "y",
            "s/(x & y)",
            "x & y",
            "s",
        ] {
            assert!(u.contains(&cat(c)), "{c} missing");
        }
        assert_eq!(u.len(), 15);
    }

    #[test]
    fn universe_small_cases() {
        let g = Ccg::new([], PrimCat::new("s"), [(cat("s"), 'a')]).unwrap();
        assert_eq!(ccg_universe(&g).len(), 1);
        let g = Ccg::new([], PrimCat::new("s"), [(cat("s/(x & y)"), 'b')]).unwrap();
        let u: Vec<String> = ccg_universe(&g).iter().map(ToString::to_string).collect();
        assert_eq!(u, vec!["s/(x & y)", "x & y", "s"]);
    }

    #[test]
    fn derivation_follows_hand_derivation() {
        let g = samples::triple_power_ccg();
        let d = ccg_derive(&g, &cat("s"), "bacaca").unwrap().unwrap();
        check_ccg_derivation(&g, "bacaca", &d).unwrap();
        assert_eq!(d.rule, CcgRule::RightDivision);
        assert_eq!(d.children[0].head, cat("s/(x & y)"));
        assert_eq!(d.children[1].rule, CcgRule::Conjunction);
        let p = ccg_derive(&g, &cat("p"), "aca").unwrap().unwrap();
        assert_eq!(p.rule, CcgRule::RightDivision);
        assert_eq!(p.children[0].head, cat("p/q"));
        assert_eq!(p.children[1].head, cat("q"));
        assert_eq!(p.children[1].span, (1, 3));
        assert!(d.to_latex("bacaca").starts_with("\\infer[/]{s(bacaca)}"));
    }

    #[test]
    fn membership_examples() {
        let g = samples::triple_power_ccg();
        assert!(ccg_member(&g, "baacaacaa").unwrap());
        assert!(!ccg_member(&g, "bacacaa").unwrap());
        assert_eq!(ccg_derive(&g, &cat("s"), "b").unwrap(), None);
        assert_eq!(ccg_member(&g, ""), Err(CcgError::EmptyWord));
        assert!(matches!(
            ccg_derive(&g, &cat("z"), "b"),
            Err(CcgError::OutsideUniverse(_))
        ));
        assert!(ccg_member(&samples::mirror_bcg(), "bc").unwrap());
    }

    #[test]
    fn extension() {
        let g = samples::triple_power_ccg();
        assert_eq!(ccg_extend(&g, 'd', cat("x")).unwrap().axioms().len(), 9);
        assert_eq!(
            ccg_extend(&g, 'a', cat("x")),
            Err(CcgError::SymbolCollision('a'))
        );
        let empty = Ccg::new([], PrimCat::new("s"), []).unwrap();
        let one = ccg_extend(&empty, 'd', cat("s")).unwrap();
        assert_eq!(ccg_enumerate(&one, 3, 1000).unwrap(), vec!["d".to_string()]);
    }
}
