//! Backward proof search for L, L*, MALC and MALC*.
//!
//! Every rule removes a connective, so search terminates without loop
//! checks. Formulas are hash-consed; each sequent is memoized by its formula
//! ids. Before touching the memo, a sequent is pruned when some primitive
//! cannot balance: in a derivable sequent the positive and negative
//! occurrences of each primitive cancel for some choice of additive branches.

use std::fmt;

use indexmap::IndexSet;
use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

use super::tree::{LatexNode, ProofTree};
use super::ProverError;
use crate::lang::{BudgetExceeded, DEFAULT_BUDGET};
use crate::syntax::{Calculus, Category, LambekGrammar, PrimCat, Sequent};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LambekRule {
    Axiom,
    /// `(\→)`
    LeftUnder,
    /// `(→\)`
    RightUnder,
    /// `(/→)`
    LeftOver,
    /// `(→/)`
    RightOver,
    /// `(·→)`
    LeftProd,
    /// `(→·)`
    RightProd,
    LeftAnd1,
    LeftAnd2,
    RightAnd,
    LeftOr,
    RightOr1,
    RightOr2,
}

impl LambekRule {
    pub fn name(self) -> &'static str {
        use LambekRule::*;
        match self {
            Axiom => "ax",
            LeftUnder => "\\->",
            RightUnder => "->\\",
            LeftOver => "/->",
            RightOver => "->/",
            LeftProd => ".->",
            RightProd => "->.",
            LeftAnd1 => "&->1",
            LeftAnd2 => "&->2",
            RightAnd => "->&",
            LeftOr => "+->",
            RightOr1 => "->+1",
            RightOr2 => "->+2",
        }
    }
}

impl fmt::Display for LambekRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for LambekRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl LatexNode for LambekRule {
    fn latex(&self) -> String {
        use LambekRule::*;
        match self {
            Axiom => "\\mathrm{ax}",
            LeftUnder => "(\\backslash\\to)",
            RightUnder => "(\\to\\backslash)",
            LeftOver => "(/\\to)",
            RightOver => "(\\to/)",
            LeftProd => "(\\cdot\\to)",
            RightProd => "(\\to\\cdot)",
            LeftAnd1 => "(\\wedge\\to)_1",
            LeftAnd2 => "(\\wedge\\to)_2",
            RightAnd => "(\\to\\wedge)",
            LeftOr => "(\\vee\\to)",
            RightOr1 => "(\\to\\vee)_1",
            RightOr2 => "(\\to\\vee)_2",
        }
        .to_string()
    }
}

impl LatexNode for Sequent {
    fn latex(&self) -> String {
        self.to_latex()
    }
}

pub type LambekProof = ProofTree<Sequent, LambekRule>;

/// Order in which rule instances are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Invertible rules first, committing to them; then the remaining
    /// rules. Complete because invertible rules never lose derivability.
    #[default]
    Focused,
    /// Every rule instance in the fixed order axiom, unary, binary.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Prim(u32),
    Prod(u32, u32),
    /// `den \ num`
    Under(u32, u32),
    /// `num / den`
    Over(u32, u32),
    And(u32, u32),
    Or(u32, u32),
}

/// Sparse per-primitive interval `(prim, lo, hi)`, sorted by primitive.
type Balance = Vec<(u32, i32, i32)>;

fn merge(x: &Balance, y: &Balance, f: impl Fn((i32, i32), (i32, i32)) -> (i32, i32)) -> Balance {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    while i < x.len() || j < y.len() {
        let (p, a, b) = match (x.get(i), y.get(j)) {
            (Some(u), Some(v)) if u.0 == v.0 => {
                i += 1;
                j += 1;
                (u.0, (u.1, u.2), (v.1, v.2))
            }
            (Some(u), Some(v)) if u.0 < v.0 => {
                i += 1;
                (u.0, (u.1, u.2), (0, 0))
            }
            (Some(u), None) => {
                i += 1;
                (u.0, (u.1, u.2), (0, 0))
            }
            (_, Some(v)) => {
                j += 1;
                (v.0, (0, 0), (v.1, v.2))
            }
            (None, None) => unreachable!(),
        };
        let (lo, hi) = f(a, b);
        if (lo, hi) != (0, 0) {
            out.push((p, lo, hi));
        }
    }
    out
}

fn sum(x: &Balance, y: &Balance) -> Balance {
    merge(x, y, |a, b| (a.0 + b.0, a.1 + b.1))
}

fn diff(x: &Balance, y: &Balance) -> Balance {
    merge(x, y, |a, b| (a.0 - b.1, a.1 - b.0))
}

fn hull(x: &Balance, y: &Balance) -> Balance {
    merge(x, y, |a, b| (a.0.min(b.0), a.1.max(b.1)))
}

#[derive(Debug, Clone, Default)]
struct Arena {
    nodes: Vec<Node>,
    index: FxHashMap<Node, u32>,
    cats: Vec<Category>,
    size: Vec<u32>,
    balance: Vec<Balance>,
    prims: IndexSet<PrimCat>,
}

impl Arena {
    fn intern(&mut self, c: &Category) -> u32 {
        let node = match c {
            Category::Prim(p) => Node::Prim(self.prims.insert_full(p.clone()).0 as u32),
            Category::Prod(a, b) => Node::Prod(self.intern(a), self.intern(b)),
            Category::LDiv(a, b) => Node::Under(self.intern(a), self.intern(b)),
            Category::RDiv(b, a) => Node::Over(self.intern(b), self.intern(a)),
            Category::And(a, b) => Node::And(self.intern(a), self.intern(b)),
            Category::Or(a, b) => Node::Or(self.intern(a), self.intern(b)),
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let s = |x: u32| self.size[x as usize];
        let b = |x: u32| &self.balance[x as usize];
        let (size, balance) = match node {
            Node::Prim(p) => (0, vec![(p, 1, 1)]),
            Node::Prod(x, y) => (1 + s(x) + s(y), sum(b(x), b(y))),
            Node::Under(den, num) | Node::Over(num, den) => {
                (1 + s(den) + s(num), diff(b(num), b(den)))
            }
            Node::And(x, y) | Node::Or(x, y) => (1 + s(x) + s(y), hull(b(x), b(y))),
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.index.insert(node, id);
        self.cats.push(c.clone());
        self.size.push(size);
        self.balance.push(balance);
        id
    }

    fn node(&self, id: u32) -> Node {
        self.nodes[id as usize]
    }

    fn sequent(&self, ant: &[u32], suc: u32) -> Sequent {
        Sequent::new(
            ant.iter().map(|&a| self.cats[a as usize].clone()).collect(),
            self.cats[suc as usize].clone(),
        )
    }

    fn measure(&self, ant: &[u32], suc: u32) -> u32 {
        ant.iter().map(|&a| self.size[a as usize]).sum::<u32>() + self.size[suc as usize]
    }
}

struct Step {
    rule: LambekRule,
    premises: Vec<(Vec<u32>, u32)>,
}

fn splice(ant: &[u32], from: usize, to: usize, with: &[u32]) -> Vec<u32> {
    let mut v = Vec::with_capacity(ant.len() + with.len());
    v.extend_from_slice(&ant[..from]);
    v.extend_from_slice(with);
    v.extend_from_slice(&ant[to..]);
    v
}

/// Memoizing prover for one calculus. Memo entries are plain derivability
/// facts, so one prover can serve many queries.
#[derive(Debug, Clone)]
pub struct LambekProver {
    calculus: Calculus,
    strategy: Strategy,
    budget: u64,
    arena: Arena,
    memo: FxHashMap<Box<[u32]>, bool>,
    expansions: u64,
    scratch: Vec<(i32, i32)>,
    touched: Vec<u32>,
}

impl LambekProver {
    pub fn new(calculus: Calculus) -> Self {
        LambekProver {
            calculus,
            strategy: Strategy::default(),
            budget: DEFAULT_BUDGET,
            arena: Arena::default(),
            memo: FxHashMap::default(),
            expansions: 0,
            scratch: Vec::new(),
            touched: Vec::new(),
        }
    }

    /// Cap on fresh sequent expansions per query.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn calculus(&self) -> Calculus {
        self.calculus
    }

    /// Expansions used by the last query.
    pub fn expansions(&self) -> u64 {
        self.expansions
    }

    fn restricted(&self) -> bool {
        self.calculus.lambek_restriction()
    }

    fn intern(&mut self, s: &Sequent) -> Result<(Vec<u32>, u32), ProverError> {
        if let Some(c) = s.formulas().find(|c| !self.calculus.admits(c)) {
            return Err(ProverError::OutsideCalculus {
                formula: c.to_string(),
                calculus: self.calculus.name(),
            });
        }
        let ant = s.antecedent.iter().map(|a| self.arena.intern(a)).collect();
        Ok((ant, self.arena.intern(&s.succedent)))
    }

    pub fn derivable(&mut self, s: &Sequent) -> Result<bool, ProverError> {
        let (ant, suc) = self.intern(s)?;
        self.expansions = 0;
        Ok(self.search(&ant, suc)?)
    }

    /// A cut-free proof, or `None` when the sequent is not derivable.
    pub fn prove(&mut self, s: &Sequent) -> Result<Option<LambekProof>, ProverError> {
        let (ant, suc) = self.intern(s)?;
        self.expansions = 0;
        if !self.search(&ant, suc)? {
            return Ok(None);
        }
        Ok(Some(self.build(&ant, suc)?))
    }

    fn balanced(&mut self, ant: &[u32], suc: u32) -> bool {
        let n = self.arena.prims.len();
        if self.scratch.len() < n {
            self.scratch.resize(n, (0, 0));
        }
        for (k, &f) in ant.iter().chain(std::iter::once(&suc)).enumerate() {
            let sign = k < ant.len();
            for &(p, lo, hi) in &self.arena.balance[f as usize] {
                let cell = &mut self.scratch[p as usize];
                if *cell == (0, 0) {
                    self.touched.push(p);
                }
                if sign {
                    cell.0 += lo;
                    cell.1 += hi;
                } else {
                    cell.0 -= hi;
                    cell.1 -= lo;
                }
            }
        }
        let mut ok = true;
        for p in self.touched.drain(..) {
            let (lo, hi) = std::mem::take(&mut self.scratch[p as usize]);
            ok &= lo <= 0 && 0 <= hi;
        }
        ok
    }

    fn search(&mut self, ant: &[u32], suc: u32) -> Result<bool, BudgetExceeded> {
        if ant.is_empty() && self.restricted() {
            return Ok(false);
        }
        if let [a] = ant {
            if *a == suc {
                return Ok(true);
            }
        }
        if !self.balanced(ant, suc) {
            return Ok(false);
        }
        let mut key = Vec::with_capacity(ant.len() + 1);
        key.extend_from_slice(ant);
        key.push(suc);
        let key = key.into_boxed_slice();
        if let Some(&known) = self.memo.get(&key) {
            return Ok(known);
        }
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(BudgetExceeded {
                budget: self.budget,
                needed: self.expansions,
            });
        }
        let found = self.first_step(ant, suc)?.is_some();
        self.memo.insert(key, found);
        Ok(found)
    }

    fn all(&mut self, premises: &[(Vec<u32>, u32)], measure: u32) -> Result<bool, BudgetExceeded> {
        for (a, s) in premises {
            debug_assert!(
                self.arena.measure(a, *s) < measure,
                "premise must have fewer connectives"
            );
            if !self.search(a, *s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First rule instance, in strategy order, whose premises are all derivable.
    fn first_step(&mut self, ant: &[u32], suc: u32) -> Result<Option<Step>, BudgetExceeded> {
        use LambekRule::*;
        let focused = self.strategy == Strategy::Focused;
        let m = self.arena.measure(ant, suc);
        let n = ant.len();
        macro_rules! attempt {
            ($rule:expr, $premises:expr) => {{
                let premises = $premises;
                if self.all(&premises, m)? {
                    return Ok(Some(Step {
                        rule: $rule,
                        premises,
                    }));
                }
            }};
        }
        if let [a] = ant {
            if *a == suc {
                return Ok(Some(Step {
                    rule: Axiom,
                    premises: Vec::new(),
                }));
            }
        }
        match self.arena.node(suc) {
            Node::Under(a, b) => {
                if !(self.restricted() && ant.is_empty()) {
                    attempt!(RightUnder, vec![(splice(ant, 0, 0, &[a]), b)]);
                }
                if focused {
                    return Ok(None);
                }
            }
            Node::Over(b, a) => {
                if !(self.restricted() && ant.is_empty()) {
                    attempt!(RightOver, vec![(splice(ant, n, n, &[a]), b)]);
                }
                if focused {
                    return Ok(None);
                }
            }
            Node::And(a, b) if focused => {
                attempt!(RightAnd, vec![(ant.to_vec(), a), (ant.to_vec(), b)]);
                return Ok(None);
            }
            _ => {}
        }
        if focused {
            for k in 0..n {
                if let Node::Prod(a, b) = self.arena.node(ant[k]) {
                    attempt!(LeftProd, vec![(splice(ant, k, k + 1, &[a, b]), suc)]);
                    return Ok(None);
                }
            }
            for k in 0..n {
                if let Node::Or(a, b) = self.arena.node(ant[k]) {
                    attempt!(
                        LeftOr,
                        vec![
                            (splice(ant, k, k + 1, &[a]), suc),
                            (splice(ant, k, k + 1, &[b]), suc)
                        ]
                    );
                    return Ok(None);
                }
            }
        } else {
            for k in 0..n {
                if let Node::Prod(a, b) = self.arena.node(ant[k]) {
                    attempt!(LeftProd, vec![(splice(ant, k, k + 1, &[a, b]), suc)]);
                }
            }
        }
        for k in 0..n {
            if let Node::And(a, b) = self.arena.node(ant[k]) {
                attempt!(LeftAnd1, vec![(splice(ant, k, k + 1, &[a]), suc)]);
                attempt!(LeftAnd2, vec![(splice(ant, k, k + 1, &[b]), suc)]);
            }
        }
        if let Node::Or(a, b) = self.arena.node(suc) {
            attempt!(RightOr1, vec![(ant.to_vec(), a)]);
            attempt!(RightOr2, vec![(ant.to_vec(), b)]);
        }
        if let Node::Prod(a, b) = self.arena.node(suc) {
            for cut in 0..=n {
                attempt!(
                    RightProd,
                    vec![(ant[..cut].to_vec(), a), (ant[cut..].to_vec(), b)]
                );
            }
        }
        if !focused {
            if let Node::And(a, b) = self.arena.node(suc) {
                attempt!(RightAnd, vec![(ant.to_vec(), a), (ant.to_vec(), b)]);
            }
            for k in 0..n {
                if let Node::Or(a, b) = self.arena.node(ant[k]) {
                    attempt!(
                        LeftOr,
                        vec![
                            (splice(ant, k, k + 1, &[a]), suc),
                            (splice(ant, k, k + 1, &[b]), suc)
                        ]
                    );
                }
            }
        }
        for k in 0..n {
            match self.arena.node(ant[k]) {
                Node::Under(a, b) => {
                    for i in (0..=k).rev() {
                        attempt!(
                            LeftUnder,
                            vec![(ant[i..k].to_vec(), a), (splice(ant, i, k + 1, &[b]), suc)]
                        );
                    }
                }
                Node::Over(b, a) => {
                    for j in k + 1..=n {
                        attempt!(
                            LeftOver,
                            vec![(ant[k + 1..j].to_vec(), a), (splice(ant, k, j, &[b]), suc)]
                        );
                    }
                }
                _ => {}
            }
        }
        Ok(None)
    }

    fn build(&mut self, ant: &[u32], suc: u32) -> Result<LambekProof, BudgetExceeded> {
        let step = self
            .first_step(ant, suc)?
            .expect("derivable sequents have a derivable rule instance");
        let premises = step
            .premises
            .iter()
            .map(|(a, s)| self.build(a, *s))
            .collect::<Result<_, _>>()?;
        Ok(ProofTree {
            sequent: self.arena.sequent(ant, suc),
            rule: step.rule,
            premises,
        })
    }
}

/// Proof of `s` in `calculus` with the default budget and strategy.
pub fn prove(calculus: Calculus, s: &Sequent) -> Result<Option<LambekProof>, ProverError> {
    LambekProver::new(calculus).prove(s)
}

pub fn derivable(calculus: Calculus, s: &Sequent) -> Result<bool, ProverError> {
    LambekProver::new(calculus).derivable(s)
}

/// Both `a → b` and `b → a` are derivable.
pub fn categories_equivalent(
    calculus: Calculus,
    a: &Category,
    b: &Category,
) -> Result<bool, ProverError> {
    let mut p = LambekProver::new(calculus);
    Ok(p.derivable(&Sequent::new(vec![a.clone()], b.clone()))?
        && p.derivable(&Sequent::new(vec![b.clone()], a.clone()))?)
}

/// Membership by proof search, sharing one memo across queries.
#[derive(Debug, Clone)]
pub struct LambekParser<'g> {
    grammar: &'g LambekGrammar,
    prover: LambekProver,
}

impl<'g> LambekParser<'g> {
    pub fn new(grammar: &'g LambekGrammar) -> Self {
        LambekParser {
            grammar,
            prover: LambekProver::new(grammar.calculus()),
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.prover = self.prover.with_budget(budget);
        self
    }

    /// Lexical sequents for `w`, in lexicon order.
    pub fn sequents(&self, w: &str) -> Result<Vec<Sequent>, ProverError> {
        let mut choices = Vec::new();
        for c in w.chars() {
            choices.push(
                self.grammar
                    .lexicon()
                    .get(&c)
                    .ok_or(ProverError::MissingLexicon(c))?,
            );
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let ant = idx
                .iter()
                .zip(&choices)
                .map(|(i, cs)| cs[*i].clone())
                .collect();
            out.push(Sequent::new(ant, self.grammar.target().clone()));
            let mut k = idx.len();
            loop {
                if k == 0 {
                    return Ok(out);
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

    pub fn member(&mut self, w: &str) -> Result<bool, ProverError> {
        Ok(self.derivation(w)?.is_some())
    }

    /// Proof of the first derivable lexical sequent for `w`.
    pub fn derivation(&mut self, w: &str) -> Result<Option<LambekProof>, ProverError> {
        if w.is_empty() && self.grammar.calculus().lambek_restriction() {
            return Ok(None);
        }
        for s in self.sequents(w)? {
            if self.prover.derivable(&s)? {
                return self.prover.prove(&s);
            }
        }
        Ok(None)
    }
}

/// Whether `w` is in the language of `g`: some lexical choice yields a
/// derivable sequent. The empty word needs a calculus without the restriction.
pub fn lambek_member(g: &LambekGrammar, w: &str) -> Result<bool, ProverError> {
    LambekParser::new(g).member(w)
}

/// Replays a proof against the rule schemas of `calculus`.
pub fn check_lambek_proof(calculus: Calculus, proof: &LambekProof) -> Result<(), String> {
    use LambekRule::*;
    let s = &proof.sequent;
    if let Some(c) = s.formulas().find(|c| !calculus.admits(c)) {
        return Err(format!("{c} is outside {calculus}"));
    }
    let ant = &s.antecedent;
    let d = &s.succedent;
    let prem: Vec<&Sequent> = proof.premises.iter().map(|p| &p.sequent).collect();
    let arity = match proof.rule {
        Axiom => 0,
        LeftUnder | LeftOver | RightProd | RightAnd | LeftOr => 2,
        _ => 1,
    };
    if prem.len() != arity {
        return Err(format!("{} expects {arity} premises at `{s}`", proof.rule));
    }
    let with = |k: usize, to: usize, mid: &[Category]| -> Vec<Category> {
        let mut v = ant[..k].to_vec();
        v.extend_from_slice(mid);
        v.extend_from_slice(&ant[to..]);
        v
    };
    let ok = match proof.rule {
        Axiom => ant.len() == 1 && &ant[0] == d,
        RightUnder => match d {
            Category::LDiv(a, b) => {
                !(calculus.lambek_restriction() && ant.is_empty())
                    && prem[0].succedent == **b
                    && prem[0].antecedent.first() == Some(a)
                    && prem[0].antecedent[1..] == ant[..]
            }
            _ => false,
        },
        RightOver => match d {
            Category::RDiv(b, a) => {
                !(calculus.lambek_restriction() && ant.is_empty())
                    && prem[0].succedent == **b
                    && prem[0].antecedent.last() == Some(a)
                    && prem[0].antecedent[..prem[0].antecedent.len() - 1] == ant[..]
            }
            _ => false,
        },
        RightAnd => matches!(d, Category::And(a, b)
            if prem[0].succedent == **a && prem[1].succedent == **b
                && prem[0].antecedent == *ant && prem[1].antecedent == *ant),
        RightOr1 | RightOr2 => matches!(d, Category::Or(a, b)
            if prem[0].antecedent == *ant
                && prem[0].succedent == if proof.rule == RightOr1 { (**a).clone() } else { (**b).clone() }),
        RightProd => matches!(d, Category::Prod(a, b)
            if prem[0].succedent == **a && prem[1].succedent == **b
                && [prem[0].antecedent.clone(), prem[1].antecedent.clone()].concat() == *ant),
        LeftProd | LeftAnd1 | LeftAnd2 | LeftOr => (0..ant.len()).any(|k| {
            let same_goal = prem.iter().all(|p| &p.succedent == d);
            same_goal
                && match (&ant[k], proof.rule) {
                    (Category::Prod(a, b), LeftProd) => {
                        prem[0].antecedent == with(k, k + 1, &[(**a).clone(), (**b).clone()])
                    }
                    (Category::And(a, _), LeftAnd1) => {
                        prem[0].antecedent == with(k, k + 1, &[(**a).clone()])
                    }
                    (Category::And(_, b), LeftAnd2) => {
                        prem[0].antecedent == with(k, k + 1, &[(**b).clone()])
                    }
                    (Category::Or(a, b), LeftOr) => {
                        prem[0].antecedent == with(k, k + 1, &[(**a).clone()])
                            && prem[1].antecedent == with(k, k + 1, &[(**b).clone()])
                    }
                    _ => false,
                }
        }),
        LeftUnder => (0..ant.len()).any(|k| match &ant[k] {
            Category::LDiv(a, b) => {
                let pi = prem[0].antecedent.len();
                pi <= k
                    && prem[0].succedent == **a
                    && prem[0].antecedent[..] == ant[k - pi..k]
                    && prem[1].succedent == *d
                    && prem[1].antecedent == with(k - pi, k + 1, &[(**b).clone()])
            }
            _ => false,
        }),
        LeftOver => (0..ant.len()).any(|k| match &ant[k] {
            Category::RDiv(b, a) => {
                let pi = prem[0].antecedent.len();
                k + 1 + pi <= ant.len()
                    && prem[0].succedent == **a
                    && prem[0].antecedent[..] == ant[k + 1..k + 1 + pi]
                    && prem[1].succedent == *d
                    && prem[1].antecedent == with(k, k + 1 + pi, &[(**b).clone()])
            }
            _ => false,
        }),
    };
    if !ok {
        return Err(format!(
            "`{s}` is not a conclusion of {} from the given premises",
            proof.rule
        ));
    }
    proof
        .premises
        .iter()
        .try_for_each(|p| check_lambek_proof(calculus, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn both(calculus: Calculus, s: &str) -> bool {
        let s = seq(s);
        let f = LambekProver::new(calculus).derivable(&s).unwrap();
        let e = LambekProver::new(calculus)
            .with_strategy(Strategy::Exhaustive)
            .derivable(&s)
            .unwrap();
        assert_eq!(f, e, "strategies disagree on {s}");
        if let Some(p) = prove(calculus, &s).unwrap() {
            check_lambek_proof(calculus, &p).unwrap();
        }
        f
    }

    #[test]
    fn small_sequents() {
        assert!(both(Calculus::Malc, "p -> p"));
        assert!(both(Calculus::L, "p, p\\q -> q"));
        assert!(both(Calculus::L, "p/q, q -> p"));
        assert!(!both(Calculus::L, "q, p/q -> p"));
        assert!(both(Calculus::L, "p -> (q/p)\\q"));
        assert!(both(Calculus::L, "a/b, b/c -> a/c"));
        assert!(both(Calculus::L, "p . q -> p . q"));
        assert!(!both(Calculus::L, "p . q -> q . p"));
        assert!(both(Calculus::Malc, "p & q -> p"));
        assert!(both(Calculus::Malc, "p -> p + q"));
        assert!(!both(Calculus::Malc, "p + q -> p"));
        assert!(both(Calculus::Malc, "(p\\r) & (q\\r) -> (p + q)\\r"));
    }

    #[test]
    fn restriction_blocks_empty_antecedents() {
        assert!(!both(Calculus::L, "-> p/p"));
        assert!(both(Calculus::LStar, "-> p/p"));
        assert!(!both(Calculus::L, "(p/p)\\q -> q"));
        assert!(both(Calculus::LStar, "(p/p)\\q -> q"));
    }

    #[test]
    fn empty_string_formula_is_derivable() {
        let s = seq("-> ((r\\r)\\((t\\t)\\q))\\q");
        let p = prove(Calculus::MalcStar, &s).unwrap().unwrap();
        check_lambek_proof(Calculus::MalcStar, &p).unwrap();
        assert_eq!(p.rule, LambekRule::RightUnder);
        assert_eq!(p.height(), 5);
        assert!(!both(
            Calculus::MalcStar,
            "t\\t, r\\r, t\\t, r\\r, (r\\r)\\((t\\t)\\q) -> q"
        ));
        assert!(!both(Calculus::MalcStar, "-> (r\\r)\\((t\\t)\\q)"));
    }

    #[test]
    fn language_violations_and_budget() {
        assert!(matches!(
            derivable(Calculus::L, &seq("p & q -> p")),
            Err(ProverError::OutsideCalculus { .. })
        ));
        let mut tiny = LambekProver::new(Calculus::L).with_budget(1);
        assert!(matches!(
            tiny.derivable(&seq("a/b, b/c, c/d -> a/d")),
            Err(ProverError::Budget(_))
        ));
    }

    #[test]
    fn equivalences() {
        let c = |s: &str| crate::syntax::parse_category(s).unwrap();
        assert!(
            categories_equivalent(Calculus::Malc, &c("(p\\r) & (q\\r)"), &c("(p + q)\\r")).unwrap()
        );
        assert!(categories_equivalent(Calculus::Malc, &c("p"), &c("p")).unwrap());
        assert!(categories_equivalent(
            Calculus::Malc,
            &c("((p\\f)\\f) & ((q\\f)\\f)"),
            &c("((p\\f) + (q\\f))\\f")
        )
        .unwrap());
        assert!(!categories_equivalent(Calculus::Malc, &c("p & q"), &c("p + q")).unwrap());
    }
}
