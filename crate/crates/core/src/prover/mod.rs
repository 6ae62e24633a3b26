//! Cut-free backward proof search for the Lambek calculi with additives and
//! for multiplicative-additive cyclic linear logic.

mod lambek;
mod macll;
mod tree;

use thiserror::Error;

use crate::lang::BudgetExceeded;

pub use lambek::{
    categories_equivalent, check_lambek_proof, derivable, lambek_member, prove, LambekParser,
    LambekProof, LambekProver, LambekRule, Strategy,
};
pub use macll::{check_macll_proof, prove_macll, MacllProof, MacllProver, MacllRule};
pub use tree::{LatexNode, ProofTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error("`{formula}` is outside the language of {calculus}")]
    OutsideCalculus {
        formula: String,
        calculus: &'static str,
    },
    #[error("symbol `{0}` has no lexicon entry")]
    MissingLexicon(char),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Derivability of a one-sided sequent with the default budget.
pub fn macll_derivable(s: &crate::syntax::MacllSequent) -> Result<bool, ProverError> {
    MacllProver::new().derivable(s)
}
