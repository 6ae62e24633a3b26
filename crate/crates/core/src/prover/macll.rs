//! Backward proof search for multiplicative-additive cyclic linear logic.
//!
//! Sequents are memoized by their lexicographically least rotation, which
//! is sound because (cycle) is the only structural rule. Rules are matched
//! at every position; a proof records an explicit (cycle) step whenever the
//! principal formula is not where the rule schema puts it.

use std::fmt;

use indexmap::IndexSet;
use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};

use super::lambek::Strategy;
use super::tree::{LatexNode, ProofTree};
use super::ProverError;
use crate::lang::{BudgetExceeded, DEFAULT_BUDGET};
use crate::syntax::{MacllFormula, MacllSequent, PrimCat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MacllRule {
    Axiom,
    One,
    Bottom,
    Top,
    Par,
    Times,
    With,
    Plus1,
    Plus2,
    Cycle,
}

impl MacllRule {
    pub fn name(self) -> &'static str {
        use MacllRule::*;
        match self {
            Axiom => "ax",
            One => "1",
            Bottom => "bot",
            Top => "top",
            Par => "par",
            Times => "times",
            With => "with",
            Plus1 => "plus1",
            Plus2 => "plus2",
            Cycle => "cycle",
        }
    }
}

impl fmt::Display for MacllRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for MacllRule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl LatexNode for MacllRule {
    fn latex(&self) -> String {
        use MacllRule::*;
        match self {
            Axiom => "\\mathrm{ax}",
            One => "(1)",
            Bottom => "(\\bot)",
            Top => "(\\top)",
            Par => "(\\parr)",
            Times => "(\\otimes)",
            With => "(\\&)",
            Plus1 => "(\\oplus)_1",
            Plus2 => "(\\oplus)_2",
            Cycle => "(\\mathrm{cycle})",
        }
        .to_string()
    }
}

impl LatexNode for MacllSequent {
    fn latex(&self) -> String {
        self.to_latex()
    }
}

pub type MacllProof = ProofTree<MacllSequent, MacllRule>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Atom(u32, bool),
    One,
    Bottom,
    Top,
    Zero,
    Times(u32, u32),
    Par(u32, u32),
    With(u32, u32),
    Plus(u32, u32),
}

#[derive(Debug, Clone, Default)]
struct Arena {
    nodes: Vec<Node>,
    index: FxHashMap<Node, u32>,
    formulas: Vec<MacllFormula>,
    size: Vec<u32>,
    /// Per-atom occurrence interval, or `None` when `⊤` occurs (it absorbs anything).
    balance: Vec<Option<Vec<(u32, i32, i32)>>>,
    negation: Vec<Option<u32>>,
    atoms: IndexSet<PrimCat>,
}

fn merge(x: &[(u32, i32, i32)], y: &[(u32, i32, i32)], additive: bool) -> Vec<(u32, i32, i32)> {
    let mut out: Vec<(u32, i32, i32)> = Vec::new();
    let mut keys: Vec<u32> = x.iter().chain(y).map(|e| e.0).collect();
    keys.sort_unstable();
    keys.dedup();
    for k in keys {
        let a = x.iter().find(|e| e.0 == k).map_or((0, 0), |e| (e.1, e.2));
        let b = y.iter().find(|e| e.0 == k).map_or((0, 0), |e| (e.1, e.2));
        let (lo, hi) = if additive {
            (a.0.min(b.0), a.1.max(b.1))
        } else {
            (a.0 + b.0, a.1 + b.1)
        };
        if (lo, hi) != (0, 0) {
            out.push((k, lo, hi));
        }
    }
    out
}

impl Arena {
    fn intern(&mut self, f: &MacllFormula) -> u32 {
        use MacllFormula as F;
        let node = match f {
            F::Atom { name, negated } => {
                Node::Atom(self.atoms.insert_full(name.clone()).0 as u32, *negated)
            }
            F::One => Node::One,
            F::Bottom => Node::Bottom,
            F::Top => Node::Top,
            F::Zero => Node::Zero,
            F::Times(a, b) => Node::Times(self.intern(a), self.intern(b)),
            F::Par(a, b) => Node::Par(self.intern(a), self.intern(b)),
            F::With(a, b) => Node::With(self.intern(a), self.intern(b)),
            F::Plus(a, b) => Node::Plus(self.intern(a), self.intern(b)),
        };
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let s = |x: u32| self.size[x as usize];
        let b = |x: u32| self.balance[x as usize].as_deref();
        let (size, balance) = match node {
            Node::Atom(p, neg) => (
                0,
                Some(vec![(
                    p,
                    if neg { -1 } else { 1 },
                    if neg { -1 } else { 1 },
                )]),
            ),
            Node::One | Node::Bottom | Node::Zero => (0, Some(Vec::new())),
            Node::Top => (0, None),
            Node::Times(x, y) | Node::Par(x, y) => (
                1 + s(x) + s(y),
                b(x).zip(b(y)).map(|(u, v)| merge(u, v, false)),
            ),
            Node::With(x, y) | Node::Plus(x, y) => (
                1 + s(x) + s(y),
                b(x).zip(b(y)).map(|(u, v)| merge(u, v, true)),
            ),
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.index.insert(node, id);
        self.formulas.push(f.clone());
        self.size.push(size);
        self.balance.push(balance);
        self.negation.push(None);
        id
    }

    fn negate(&mut self, id: u32) -> u32 {
        if let Some(n) = self.negation[id as usize] {
            return n;
        }
        let f = self.formulas[id as usize].negate();
        let n = self.intern(&f);
        self.negation[id as usize] = Some(n);
        self.negation[n as usize] = Some(id);
        n
    }

    fn node(&self, id: u32) -> Node {
        self.nodes[id as usize]
    }

    fn sequent(&self, fs: &[u32]) -> MacllSequent {
        MacllSequent {
            formulas: fs
                .iter()
                .map(|&f| self.formulas[f as usize].clone())
                .collect(),
        }
    }

    fn measure(&self, fs: &[u32]) -> u32 {
        fs.iter().map(|&f| 2 * self.size[f as usize] + 1).sum()
    }
}

fn least_rotation(fs: &[u32]) -> Vec<u32> {
    let n = fs.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|i| fs[(a + i) % n])
                .cmp((0..n).map(|i| fs[(b + i) % n]))
        })
        .unwrap_or(0);
    rotate(fs, best)
}

/// `fs[k..] ++ fs[..k]`
fn rotate(fs: &[u32], k: usize) -> Vec<u32> {
    let mut v = fs[k..].to_vec();
    v.extend_from_slice(&fs[..k]);
    v
}

fn prepend(head: &[u32], rest: &[u32]) -> Vec<u32> {
    let mut v = head.to_vec();
    v.extend_from_slice(rest);
    v
}

struct Step {
    rule: MacllRule,
    /// The conclusion exactly as the rule schema writes it, when that is a
    /// proper rotation of the searched sequent.
    conclusion: Option<Vec<u32>>,
    premises: Vec<Vec<u32>>,
}

#[derive(Debug, Clone)]
pub struct MacllProver {
    strategy: Strategy,
    budget: u64,
    arena: Arena,
    memo: FxHashMap<Box<[u32]>, bool>,
    expansions: u64,
}

impl Default for MacllProver {
    fn default() -> Self {
        Self::new()
    }
}

impl MacllProver {
    pub fn new() -> Self {
        MacllProver {
            strategy: Strategy::default(),
            budget: DEFAULT_BUDGET,
            arena: Arena::default(),
            memo: FxHashMap::default(),
            expansions: 0,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn expansions(&self) -> u64 {
        self.expansions
    }

    fn intern(&mut self, s: &MacllSequent) -> Vec<u32> {
        s.formulas.iter().map(|f| self.arena.intern(f)).collect()
    }

    pub fn derivable(&mut self, s: &MacllSequent) -> Result<bool, ProverError> {
        let fs = self.intern(s);
        self.expansions = 0;
        Ok(self.search(&fs)?)
    }

    pub fn prove(&mut self, s: &MacllSequent) -> Result<Option<MacllProof>, ProverError> {
        let fs = self.intern(s);
        self.expansions = 0;
        if !self.search(&fs)? {
            return Ok(None);
        }
        Ok(Some(self.build(&fs)?))
    }

    fn balanced(&self, fs: &[u32]) -> bool {
        let mut acc: Vec<(u32, i32, i32)> = Vec::new();
        for &f in fs {
            match &self.arena.balance[f as usize] {
                None => return true,
                Some(b) => acc = merge(&acc, b, false),
            }
        }
        acc.iter().all(|&(_, lo, hi)| lo <= 0 && 0 <= hi)
    }

    fn search(&mut self, fs: &[u32]) -> Result<bool, BudgetExceeded> {
        if fs.is_empty() {
            return Ok(false);
        }
        if !self.balanced(fs) {
            return Ok(false);
        }
        let key = least_rotation(fs).into_boxed_slice();
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
        let found = self.first_step(&key)?.is_some();
        self.memo.insert(key, found);
        Ok(found)
    }

    fn first_step(&mut self, fs: &[u32]) -> Result<Option<Step>, BudgetExceeded> {
        use MacllRule as R;
        let focused = self.strategy == Strategy::Focused;
        let n = fs.len();
        let m = self.arena.measure(fs);
        macro_rules! attempt {
            ($rule:expr, $conclusion:expr, $premises:expr) => {{
                let premises: Vec<Vec<u32>> = $premises;
                let mut ok = true;
                for p in &premises {
                    debug_assert!(self.arena.measure(p) < m, "premise must be smaller");
                    if !self.search(p)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    let conclusion: Vec<u32> = $conclusion;
                    let conclusion = (conclusion.as_slice() != fs).then_some(conclusion);
                    return Ok(Some(Step {
                        rule: $rule,
                        conclusion,
                        premises,
                    }));
                }
            }};
        }
        if let Some(k) = fs.iter().position(|&f| self.arena.node(f) == Node::Top) {
            attempt!(R::Top, rotate(fs, k), Vec::new());
        }
        if n == 2 && self.arena.negate(fs[0]) == fs[1] {
            attempt!(R::Axiom, fs.to_vec(), Vec::new());
        }
        if n == 1 && self.arena.node(fs[0]) == Node::One {
            attempt!(R::One, fs.to_vec(), Vec::new());
        }
        for k in 0..n {
            let rest = rotate(fs, k);
            match self.arena.node(fs[k]) {
                Node::Par(a, b) => {
                    attempt!(R::Par, rest.clone(), vec![prepend(&[a, b], &rest[1..])]);
                    if focused {
                        return Ok(None);
                    }
                }
                Node::Bottom if n > 1 => {
                    attempt!(R::Bottom, rest.clone(), vec![rest[1..].to_vec()]);
                    if focused {
                        return Ok(None);
                    }
                }
                Node::With(a, b) => {
                    attempt!(
                        R::With,
                        rest.clone(),
                        vec![prepend(&[a], &rest[1..]), prepend(&[b], &rest[1..])]
                    );
                    if focused {
                        return Ok(None);
                    }
                }
                _ => {}
            }
        }
        for k in 0..n {
            let rest = rotate(fs, k);
            match self.arena.node(fs[k]) {
                Node::Plus(a, b) => {
                    attempt!(R::Plus1, rest.clone(), vec![prepend(&[a], &rest[1..])]);
                    attempt!(R::Plus2, rest.clone(), vec![prepend(&[b], &rest[1..])]);
                }
                Node::Times(a, b) => {
                    // rest = [A⊗B, Δ, Γ]; the schema writes Γ, A⊗B, Δ.
                    let xs = &rest[1..];
                    for cut in 0..=xs.len() {
                        let (delta, gamma) = xs.split_at(cut);
                        let mut conclusion = gamma.to_vec();
                        conclusion.push(fs[k]);
                        conclusion.extend_from_slice(delta);
                        let mut left = gamma.to_vec();
                        left.push(a);
                        attempt!(R::Times, conclusion, vec![left, prepend(&[b], delta)]);
                    }
                }
                _ => {}
            }
        }
        Ok(None)
    }

    fn build(&mut self, fs: &[u32]) -> Result<MacllProof, BudgetExceeded> {
        let canonical = least_rotation(fs);
        let offset = (0..fs.len())
            .find(|&k| rotate(fs, k) == canonical)
            .unwrap_or(0);
        let step = self
            .first_step(&canonical)?
            .expect("derivable sequents have a derivable rule instance");
        let premises = step
            .premises
            .iter()
            .map(|p| self.build(p))
            .collect::<Result<Vec<_>, _>>()?;
        let conclusion = match step.conclusion {
            Some(c) => c,
            None => canonical,
        };
        let node = ProofTree {
            sequent: self.arena.sequent(&conclusion),
            rule: step.rule,
            premises,
        };
        let _ = offset;
        if conclusion.as_slice() == fs {
            Ok(node)
        } else {
            Ok(ProofTree {
                sequent: self.arena.sequent(fs),
                rule: MacllRule::Cycle,
                premises: vec![node],
            })
        }
    }
}

/// Proof of a one-sided sequent with the default budget.
pub fn prove_macll(s: &MacllSequent) -> Result<Option<MacllProof>, ProverError> {
    MacllProver::new().prove(s)
}

/// Replays a proof against the rule schemas, including explicit (cycle) steps.
pub fn check_macll_proof(proof: &MacllProof) -> Result<(), String> {
    use MacllFormula as F;
    use MacllRule as R;
    let fs = &proof.sequent.formulas;
    let prem: Vec<&[F]> = proof
        .premises
        .iter()
        .map(|p| p.sequent.formulas.as_slice())
        .collect();
    let arity = match proof.rule {
        R::Axiom | R::One | R::Top => 0,
        R::Times | R::With => 2,
        _ => 1,
    };
    if prem.len() != arity || fs.is_empty() {
        return Err(format!(
            "{} expects {arity} premises at `{}`",
            proof.rule, proof.sequent
        ));
    }
    let rest = &fs[1..];
    let cons = |x: &F| -> Vec<F> {
        std::iter::once(x.clone())
            .chain(rest.iter().cloned())
            .collect()
    };
    let ok = match (proof.rule, &fs[0]) {
        (R::Axiom, a) => fs.len() == 2 && fs[1] == a.negate(),
        (R::One, F::One) => fs.len() == 1,
        (R::Top, F::Top) => true,
        (R::Bottom, F::Bottom) => prem[0] == rest,
        (R::Par, F::Par(a, b)) => {
            prem[0].len() == fs.len() + 1
                && prem[0][0] == **a
                && prem[0][1] == **b
                && prem[0][2..] == *rest
        }
        (R::With, F::With(a, b)) => prem[0] == cons(a).as_slice() && prem[1] == cons(b).as_slice(),
        (R::Plus1, F::Plus(a, _)) => prem[0] == cons(a).as_slice(),
        (R::Plus2, F::Plus(_, b)) => prem[0] == cons(b).as_slice(),
        (R::Cycle, _) => {
            prem[0].len() == fs.len()
                && (0..fs.len()).any(|k| fs[k..].iter().chain(&fs[..k]).eq(prem[0].iter()))
        }
        (R::Times, _) => {
            let (l, r) = (prem[0], prem[1]);
            match (l.last(), r.first()) {
                (Some(a), Some(b)) if l.len() + r.len() == fs.len() + 1 => {
                    let g = &l[..l.len() - 1];
                    let d = &r[1..];
                    fs[..g.len()] == *g
                        && fs[g.len()] == F::times(a.clone(), b.clone())
                        && fs[g.len() + 1..] == *d
                }
                _ => false,
            }
        }
        _ => false,
    };
    if !ok {
        return Err(format!(
            "`{}` is not a conclusion of {}",
            proof.sequent, proof.rule
        ));
    }
    proof.premises.iter().try_for_each(check_macll_proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_macll_sequent;

    fn both(s: &str) -> bool {
        let s = parse_macll_sequent(s).unwrap();
        let f = MacllProver::new().derivable(&s).unwrap();
        let e = MacllProver::new()
            .with_strategy(Strategy::Exhaustive)
            .derivable(&s)
            .unwrap();
        assert_eq!(f, e, "strategies disagree on {s}");
        if let Some(p) = prove_macll(&s).unwrap() {
            check_macll_proof(&p).unwrap();
        }
        f
    }

    #[test]
    fn basic_sequents() {
        assert!(both("|- ~p, p"));
        assert!(both("|- 1"));
        assert!(both("|- bot, ~p, p"));
        assert!(both("|- top, p, q"));
        assert!(!both("|- 0, p"));
        assert!(!both("|- bot"));
        assert!(both("|- ~q | ~p, p * q"));
        assert!(!both("|- ~p | ~q, p * q"));
        assert!(both("|- ~p & ~q, p + q"));
        assert!(both("|- ~p + ~q, p & q"));
        assert!(!both("|- ~p & ~q, p & q"));
        assert!(both("|- p, ~p"));
    }

    #[test]
    fn cycle_steps_are_explicit() {
        let s = parse_macll_sequent("|- p, bot, ~p").unwrap();
        let proof = prove_macll(&s).unwrap().unwrap();
        check_macll_proof(&proof).unwrap();
        assert_eq!(proof.rule, MacllRule::Cycle);
        assert_eq!(proof.premises[0].rule, MacllRule::Bottom);
    }

    #[test]
    fn one_rule_proof() {
        let p = prove_macll(&parse_macll_sequent("|- 1").unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(p.rule, MacllRule::One);
        let p = prove_macll(&parse_macll_sequent("|- bot, ~p, p").unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(p.rule, MacllRule::Bottom);
        assert_eq!(p.premises[0].rule, MacllRule::Axiom);
    }
}
