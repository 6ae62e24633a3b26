//! Formula and grammar syntax: ASTs, parsers, printers and the grammar file format.

mod category;
mod format;
mod grammar;
mod macll;
mod parse;

pub(crate) use category::collect_subexpressions;
pub use category::{is_identifier, subexpressions, Category, NotBasicError, PrimCat, Sequent};
pub use format::{
    parse_grammar_file, print_bundle, print_ccg, print_cg, print_lambek, FormatError, GrammarFile,
};
pub use grammar::{
    Calculus, Ccg, ConjGrammar, FreshNames, GrammarError, LambekGrammar, Rule, Symbol,
};
pub use macll::{hat_translate, MacllFormula, MacllSequent};
pub use parse::{
    parse_category, parse_macll_formula, parse_macll_sequent, parse_sequent, SyntaxError,
};
