//! Seeded random sequents and the cross-checks run over them: agreement of
//! the Lambek prover with the one-sided linear-logic prover, invertibility
//! of right conjunction, admissibility of cut, and axiom substitution for
//! conjunctive categorial grammars.

use std::collections::BTreeMap;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ccg::{ccg_chart, ccg_extend, ccg_universe};
use crate::lang::all_words;
use crate::prover::{LambekProver, MacllProver, ProverError};
use crate::syntax::{Calculus, Category, Ccg, MacllSequent, PrimCat, Sequent};

#[derive(Debug, Clone, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    /// Number of sequents each check examines.
    pub samples: usize,
    pub max_connectives: usize,
    pub max_antecedent: usize,
    pub primitives: Vec<String>,
    /// Expansion budget per prover query.
    pub budget: u64,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            samples: 200,
            max_connectives: 8,
            max_antecedent: 3,
            primitives: vec!["p".into(), "q".into(), "r".into()],
            budget: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub seed: u64,
    pub checked: usize,
    /// Candidates drawn to find the checked instances.
    pub drawn: usize,
    /// Queries abandoned on budget; never counted as checked.
    pub budget_exhausted: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &str, seed: u64) -> Self {
        CheckReport {
            name: name.into(),
            seed,
            ..Default::default()
        }
    }

    pub fn passed(&self, wanted: usize) -> bool {
        self.failures.is_empty() && self.checked >= wanted
    }
}

/// Random formula with exactly `connectives` binary connectives.
pub fn random_category(
    rng: &mut impl Rng,
    connectives: usize,
    prims: &[PrimCat],
    additives: bool,
) -> Category {
    if connectives == 0 {
        return Category::Prim(prims.choose(rng).expect("at least one primitive").clone());
    }
    let left = rng.random_range(0..connectives);
    let a = random_category(rng, left, prims, additives);
    let b = random_category(rng, connectives - 1 - left, prims, additives);
    match rng.random_range(0..if additives { 5 } else { 3 }) {
        0 => Category::prod(a, b),
        1 => Category::ldiv(a, b),
        2 => Category::rdiv(a, b),
        3 => Category::and(a, b),
        _ => Category::or(a, b),
    }
}

/// Random sequent with at most `max_connectives` connectives in total.
pub fn random_sequent(
    rng: &mut impl Rng,
    max_connectives: usize,
    max_antecedent: usize,
    prims: &[PrimCat],
    additives: bool,
    allow_empty: bool,
) -> Sequent {
    let n = rng.random_range(usize::from(!allow_empty)..=max_antecedent);
    let total = rng.random_range(0..=max_connectives);
    // Spread `total` connectives over the n + 1 formulas.
    let mut shares = vec![0usize; n + 1];
    for _ in 0..total {
        let k = rng.random_range(0..=n);
        shares[k] += 1;
    }
    let succedent = random_category(rng, shares[n], prims, additives);
    let antecedent = shares[..n]
        .iter()
        .map(|&c| random_category(rng, c, prims, additives))
        .collect();
    Sequent::new(antecedent, succedent)
}

fn prims(cfg: &FuzzConfig) -> Vec<PrimCat> {
    cfg.primitives.iter().map(PrimCat::new).collect()
}

fn prover(cfg: &FuzzConfig, calculus: Calculus) -> LambekProver {
    LambekProver::new(calculus).with_budget(cfg.budget)
}

enum Outcome {
    Yes,
    No,
    OutOfBudget,
}

fn ask(p: &mut LambekProver, s: &Sequent) -> Outcome {
    match p.derivable(s) {
        Ok(true) => Outcome::Yes,
        Ok(false) => Outcome::No,
        Err(ProverError::Budget(_)) => Outcome::OutOfBudget,
        Err(e) => panic!("fuzzed sequent `{s}` rejected: {e}"),
    }
}

/// MALC* derivability of `Γ → B` against derivability of its one-sided
/// translation in cyclic linear logic.
pub fn embedding_agreement(cfg: &FuzzConfig) -> CheckReport {
    let mut report = CheckReport::new("embedding_agreement", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let prims = prims(cfg);
    let mut lambek = prover(cfg, Calculus::MalcStar);
    let mut macll = MacllProver::new().with_budget(cfg.budget);
    let mut derivable = 0;
    while report.checked < cfg.samples {
        report.drawn += 1;
        let s = random_sequent(
            &mut rng,
            cfg.max_connectives,
            cfg.max_antecedent,
            &prims,
            true,
            true,
        );
        let one_sided = MacllSequent::from_lambek(&s);
        let left = match ask(&mut lambek, &s) {
            Outcome::OutOfBudget => {
                report.budget_exhausted += 1;
                continue;
            }
            o => matches!(o, Outcome::Yes),
        };
        let right = match macll.derivable(&one_sided) {
            Ok(b) => b,
            Err(_) => {
                report.budget_exhausted += 1;
                continue;
            }
        };
        report.checked += 1;
        derivable += usize::from(left);
        if left != right {
            report.failures.push(format!(
                "`{s}`: MALC* says {left}, `{one_sided}` says {right}"
            ));
        }
    }
    debug_assert!(derivable <= report.checked);
    report
}

/// For derivable `Π → A ∧ B`, both `Π → A` and `Π → B` are derivable.
pub fn conjunction_invertibility(cfg: &FuzzConfig) -> CheckReport {
    let mut report = CheckReport::new("conjunction_invertibility", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0001);
    let prims = prims(cfg);
    let mut p = prover(cfg, Calculus::MalcStar);
    while report.checked < cfg.samples && report.drawn < cfg.samples * 10_000 {
        report.drawn += 1;
        let total = rng.random_range(1..=cfg.max_connectives);
        let mut s = random_sequent(&mut rng, total - 1, cfg.max_antecedent, &prims, true, true);
        let spare = cfg.max_connectives - s.connectives() - 1;
        let split = rng.random_range(0..=spare);
        let a = random_category(&mut rng, split / 2, &prims, true);
        let b = random_category(&mut rng, split - split / 2, &prims, true);
        s.succedent = Category::and(a.clone(), b.clone());
        if s.connectives() > cfg.max_connectives {
            continue;
        }
        match ask(&mut p, &s) {
            Outcome::Yes => {}
            Outcome::No => continue,
            Outcome::OutOfBudget => {
                report.budget_exhausted += 1;
                continue;
            }
        }
        report.checked += 1;
        for part in [a, b] {
            let premise = Sequent::new(s.antecedent.clone(), part);
            if !matches!(ask(&mut p, &premise), Outcome::Yes) {
                report
                    .failures
                    .push(format!("`{s}` derivable but `{premise}` is not"));
            }
        }
    }
    report
}

/// For derivable `Π → A` and `Γ, A, Δ → D`, the cut conclusion
/// `Γ, Π, Δ → D` is derivable. Pairs are matched from a pool of
/// derivable sequents on the cut formula.
pub fn cut_admissibility(cfg: &FuzzConfig) -> CheckReport {
    let mut report = CheckReport::new("cut_admissibility", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0002);
    let prims = prims(cfg);
    let max = cfg.max_connectives.min(6);
    let mut p = prover(cfg, Calculus::MalcStar);
    let mut by_succedent: BTreeMap<Category, Vec<Sequent>> = BTreeMap::new();
    let mut pool: Vec<Sequent> = Vec::new();
    while report.checked < cfg.samples && report.drawn < cfg.samples * 10_000 {
        report.drawn += 1;
        let s = random_sequent(&mut rng, max, cfg.max_antecedent, &prims, true, true);
        match ask(&mut p, &s) {
            Outcome::Yes => {}
            Outcome::No => continue,
            Outcome::OutOfBudget => {
                report.budget_exhausted += 1;
                continue;
            }
        }
        // `s` as the right premise, against every earlier left premise.
        let mut cuts: Vec<Sequent> = Vec::new();
        for (k, a) in s.antecedent.iter().enumerate() {
            for left in by_succedent.get(a).into_iter().flatten() {
                let mut ant = s.antecedent[..k].to_vec();
                ant.extend(left.antecedent.iter().cloned());
                ant.extend(s.antecedent[k + 1..].iter().cloned());
                cuts.push(Sequent::new(ant, s.succedent.clone()));
            }
        }
        // `s` as the left premise.
        for right in &pool {
            for (k, a) in right.antecedent.iter().enumerate() {
                if *a == s.succedent {
                    let mut ant = right.antecedent[..k].to_vec();
                    ant.extend(s.antecedent.iter().cloned());
                    ant.extend(right.antecedent[k + 1..].iter().cloned());
                    cuts.push(Sequent::new(ant, right.succedent.clone()));
                }
            }
        }
        for cut in cuts {
            if report.checked >= cfg.samples {
                break;
            }
            match ask(&mut p, &cut) {
                Outcome::Yes => report.checked += 1,
                Outcome::No => {
                    report.checked += 1;
                    report
                        .failures
                        .push(format!("cut conclusion `{cut}` is not derivable"));
                }
                Outcome::OutOfBudget => report.budget_exhausted += 1,
            }
        }
        by_succedent
            .entry(s.succedent.clone())
            .or_default()
            .push(s.clone());
        pool.push(s);
    }
    report
}

/// Every L-derivable multiplicative sequent is MALC-derivable.
pub fn conservativity(cfg: &FuzzConfig) -> CheckReport {
    let mut report = CheckReport::new("conservativity", cfg.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0003);
    let prims = prims(cfg);
    let mut l = prover(cfg, Calculus::L);
    let mut malc = prover(cfg, Calculus::Malc);
    while report.checked < cfg.samples && report.drawn < cfg.samples * 10_000 {
        report.drawn += 1;
        let s = random_sequent(
            &mut rng,
            cfg.max_connectives,
            cfg.max_antecedent,
            &prims,
            false,
            false,
        );
        if !matches!(ask(&mut l, &s), Outcome::Yes) {
            continue;
        }
        report.checked += 1;
        if !matches!(ask(&mut malc, &s), Outcome::Yes) {
            report
                .failures
                .push(format!("`{s}` derivable in L but not in MALC"));
        }
    }
    report
}

/// Substituting a fresh symbol for a derivable string: whenever `A(u)` is
/// derivable and the grammar extended with the axiom `A(d)` derives
/// `B(v1 d v2)`, the original grammar derives `B(v1 u v2)`.
pub fn axiom_substitution(g: &Ccg, max_u: usize, max_v: usize) -> CheckReport {
    let mut report = CheckReport::new("axiom_substitution", 0);
    let alphabet: Vec<char> = g.alphabet().iter().copied().collect();
    let fresh = ('d'..='z')
        .chain('A'..='Z')
        .find(|c| !g.alphabet().contains(c))
        .expect("a free letter");
    let universe = ccg_universe(g);
    let vs = all_words(&alphabet, max_v);
    let mut extended: BTreeMap<Category, Ccg> = BTreeMap::new();
    for u in all_words(&alphabet, max_u)
        .into_iter()
        .filter(|u| !u.is_empty())
    {
        let n = u.chars().count();
        let chart = ccg_chart(g, &u).expect("words over the alphabet");
        for a in chart.categories_at(0, n) {
            let g2 = extended
                .entry(a.clone())
                .or_insert_with(|| ccg_extend(g, fresh, a.clone()).expect("fresh symbol"));
            for v in &vs {
                let len = v.chars().count();
                for cut in 0..=len {
                    let (v1, v2) =
                        v.split_at(v.char_indices().nth(cut).map_or(v.len(), |(i, _)| i));
                    let with_d = format!("{v1}{fresh}{v2}");
                    let with_u = format!("{v1}{u}{v2}");
                    let c2 = ccg_chart(g2, &with_d).expect("extended alphabet");
                    let c1 = ccg_chart(g, &with_u).expect("alphabet");
                    let lhs = c2.categories_at(0, len + 1);
                    let rhs = c1.categories_at(0, len + n);
                    for b in lhs.into_iter().filter(|b| universe.contains(*b)) {
                        report.checked += 1;
                        if !rhs.contains(&b) {
                            report
                                .failures
                                .push(format!("{b}({with_d}) with {a}({u}) but not {b}({with_u})"));
                        }
                    }
                }
            }
        }
    }
    report.drawn = report.checked;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::triple_power_ccg;

    fn small() -> FuzzConfig {
        FuzzConfig {
            samples: 20,
            ..FuzzConfig::default()
        }
    }

    #[test]
    fn generator_respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let prims = prims(&FuzzConfig::default());
        for _ in 0..500 {
            let s = random_sequent(&mut rng, 8, 3, &prims, true, true);
            assert!(s.connectives() <= 8);
            assert!(s.antecedent.len() <= 3);
            let m = random_sequent(&mut rng, 5, 2, &prims, false, false);
            assert!(!m.antecedent.is_empty());
            assert!(m.formulas().all(Category::is_multiplicative));
        }
    }

    #[test]
    fn same_seed_same_sequents() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let prims = prims(&FuzzConfig::default());
            (0..20)
                .map(|_| random_sequent(&mut rng, 8, 3, &prims, true, true).to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }

    #[test]
    fn small_checks_pass() {
        for r in [
            embedding_agreement(&small()),
            conjunction_invertibility(&small()),
            cut_admissibility(&small()),
        ] {
            assert!(r.passed(20), "{r:?}");
        }
        assert!(conservativity(&small()).passed(20));
    }

    #[test]
    fn substitution_on_short_words() {
        let r = axiom_substitution(&triple_power_ccg(), 2, 2);
        assert!(r.checked > 0);
        assert!(r.failures.is_empty(), "{:?}", r.failures);
    }
}
