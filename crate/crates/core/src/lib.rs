//! Conjunctive grammars, conjunctive categorial grammars and Lambek calculi
//! with additives: membership, proof search and the translations between them.

pub mod ccg;
pub mod conj;
pub mod cvp;
pub mod fuzz;
pub mod lang;
pub mod prover;
pub mod samples;
pub mod syntax;
pub mod transforms;

pub use ccg::{
    ccg_derive, ccg_enumerate, ccg_extend, ccg_member, ccg_universe, CcgDerivation, CcgError,
};
pub use conj::{
    cg_derive, cg_enumerate, cg_member, check_odd_normal_form, nullable_nonterminals, CgDerivation,
    CgError, OddFormReport,
};
pub use lang::{BudgetExceeded, DEFAULT_BUDGET};
pub use syntax::{
    parse_category, parse_grammar_file, parse_macll_sequent, parse_sequent, Calculus, Category,
    Ccg, ConjGrammar, GrammarFile, LambekGrammar, MacllFormula, MacllSequent, PrimCat, Sequent,
};
