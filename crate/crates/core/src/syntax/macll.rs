use std::fmt;

use serde::{Serialize, Serializer};

use super::category::{latex_ident, Category, PrimCat};

/// Formula of one-sided cyclic linear logic with negation pushed onto atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MacllFormula {
    /// `negated == true` is the dual atom `p̄`.
    Atom {
        name: PrimCat,
        negated: bool,
    },
    One,
    Bottom,
    Top,
    Zero,
    Times(Box<MacllFormula>, Box<MacllFormula>),
    Par(Box<MacllFormula>, Box<MacllFormula>),
    With(Box<MacllFormula>, Box<MacllFormula>),
    Plus(Box<MacllFormula>, Box<MacllFormula>),
}

impl MacllFormula {
    pub fn atom(name: &str) -> Self {
        MacllFormula::Atom {
            name: PrimCat::new(name),
            negated: false,
        }
    }

    pub fn neg_atom(name: &str) -> Self {
        MacllFormula::Atom {
            name: PrimCat::new(name),
            negated: true,
        }
    }

    pub fn times(a: Self, b: Self) -> Self {
        MacllFormula::Times(Box::new(a), Box::new(b))
    }

    pub fn par(a: Self, b: Self) -> Self {
        MacllFormula::Par(Box::new(a), Box::new(b))
    }

    pub fn with(a: Self, b: Self) -> Self {
        MacllFormula::With(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Self, b: Self) -> Self {
        MacllFormula::Plus(Box::new(a), Box::new(b))
    }

    /// Linear negation. Multiplicatives swap their operands; additives do not.
    pub fn negate(&self) -> Self {
        use MacllFormula::*;
        match self {
            Atom { name, negated } => Atom {
                name: name.clone(),
                negated: !negated,
            },
            One => Bottom,
            Bottom => One,
            Top => Zero,
            Zero => Top,
            Times(a, b) => Self::par(b.negate(), a.negate()),
            Par(a, b) => Self::times(b.negate(), a.negate()),
            With(a, b) => Self::plus(a.negate(), b.negate()),
            Plus(a, b) => Self::with(a.negate(), b.negate()),
        }
    }

    /// `[p := d]`: positive occurrences of `p` become `d`, negated ones `d^⊥`.
    pub fn substitute(&self, p: &PrimCat, d: &MacllFormula) -> Self {
        use MacllFormula::*;
        match self {
            Atom { name, negated } if name == p => {
                if *negated {
                    d.negate()
                } else {
                    d.clone()
                }
            }
            Atom { .. } | One | Bottom | Top | Zero => self.clone(),
            Times(a, b) => Self::times(a.substitute(p, d), b.substitute(p, d)),
            Par(a, b) => Self::par(a.substitute(p, d), b.substitute(p, d)),
            With(a, b) => Self::with(a.substitute(p, d), b.substitute(p, d)),
            Plus(a, b) => Self::plus(a.substitute(p, d), b.substitute(p, d)),
        }
    }

    pub fn connectives(&self) -> usize {
        use MacllFormula::*;
        match self {
            Atom { .. } | One | Bottom | Top | Zero => 0,
            Times(a, b) | Par(a, b) | With(a, b) | Plus(a, b) => {
                1 + a.connectives() + b.connectives()
            }
        }
    }

    fn level(&self) -> u8 {
        use MacllFormula::*;
        match self {
            Plus(..) => 0,
            With(..) => 1,
            Par(..) => 2,
            Times(..) => 3,
            _ => 4,
        }
    }

    pub fn to_latex(&self) -> String {
        use MacllFormula::*;
        fn go(f: &MacllFormula, top: bool) -> String {
            let (a, op, b) = match f {
                Atom {
                    name,
                    negated: false,
                } => return latex_ident(name.name()),
                Atom {
                    name,
                    negated: true,
                } => return format!("\\bar{{{}}}", latex_ident(name.name())),
                One => return "1".into(),
                Bottom => return "\\bot".into(),
                Top => return "\\top".into(),
                Zero => return "0".into(),
                Times(a, b) => (a, "\\otimes", b),
                Par(a, b) => (a, "\\parr", b),
                With(a, b) => (a, "\\mathop{\\&}", b),
                Plus(a, b) => (a, "\\oplus", b),
            };
            let body = format!("{} {} {}", go(a, false), op, go(b, false));
            if top {
                body
            } else {
                format!("({body})")
            }
        }
        go(self, true)
    }
}

impl fmt::Display for MacllFormula {
    /// ASCII syntax: `~p` for `p̄`, `1`, `bot`, `top`, `0`; binary operators
    /// `+` (⊕) < `&` (&) < `|` (⅋) < `*` (⊗), all right-associative.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MacllFormula::*;
        let (a, op, b, lvl) = match self {
            Atom { name, negated } => {
                return write!(f, "{}{name}", if *negated { "~" } else { "" });
            }
            One => return f.write_str("1"),
            Bottom => return f.write_str("bot"),
            Top => return f.write_str("top"),
            Zero => return f.write_str("0"),
            Plus(a, b) => (a, " + ", b, 0),
            With(a, b) => (a, " & ", b, 1),
            Par(a, b) => (a, " | ", b, 2),
            Times(a, b) => (a, " * ", b, 3),
        };
        if a.level() <= lvl {
            write!(f, "({a})")?;
        } else {
            write!(f, "{a}")?;
        }
        f.write_str(op)?;
        if b.level() < lvl {
            write!(f, "({b})")
        } else {
            write!(f, "{b}")
        }
    }
}

impl Serialize for MacllFormula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Embedding of Lambek formulas with additives into the one-sided calculus.
pub fn hat_translate(c: &Category) -> MacllFormula {
    match c {
        Category::Prim(p) => MacllFormula::Atom {
            name: p.clone(),
            negated: false,
        },
        Category::Prod(a, b) => MacllFormula::times(hat_translate(a), hat_translate(b)),
        Category::LDiv(a, b) => MacllFormula::par(hat_translate(a).negate(), hat_translate(b)),
        Category::RDiv(b, a) => MacllFormula::par(hat_translate(b), hat_translate(a).negate()),
        Category::And(a, b) => MacllFormula::with(hat_translate(a), hat_translate(b)),
        Category::Or(a, b) => MacllFormula::plus(hat_translate(a), hat_translate(b)),
    }
}

/// One-sided sequent `⊢ F1, …, Fn`, read up to cyclic rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MacllSequent {
    pub formulas: Vec<MacllFormula>,
}

impl MacllSequent {
    /// Returns `None` for an empty list: one-sided sequents are nonempty.
    pub fn new(formulas: Vec<MacllFormula>) -> Option<Self> {
        (!formulas.is_empty()).then_some(MacllSequent { formulas })
    }

    /// `⊢ Â_n^⊥, …, Â_1^⊥, B̂` for the two-sided sequent `A_1, …, A_n → B`.
    pub fn from_lambek(s: &super::Sequent) -> Self {
        let mut formulas: Vec<MacllFormula> = s
            .antecedent
            .iter()
            .rev()
            .map(|a| hat_translate(a).negate())
            .collect();
        formulas.push(hat_translate(&s.succedent));
        MacllSequent { formulas }
    }

    pub fn connectives(&self) -> usize {
        self.formulas.iter().map(MacllFormula::connectives).sum()
    }

    pub fn to_latex(&self) -> String {
        let parts: Vec<String> = self.formulas.iter().map(MacllFormula::to_latex).collect();
        format!("{{}} \\to {}", parts.join(", "))
    }
}

impl fmt::Display for MacllSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|- ")?;
        for (i, x) in self.formulas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Serialize for MacllSequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_table() {
        assert_eq!(
            MacllFormula::atom("p").negate(),
            MacllFormula::neg_atom("p")
        );
        assert_eq!(MacllFormula::One.negate(), MacllFormula::Bottom);
        assert_eq!(MacllFormula::Top.negate(), MacllFormula::Zero);
        let t = MacllFormula::times(MacllFormula::atom("a"), MacllFormula::atom("b"));
        assert_eq!(
            t.negate(),
            MacllFormula::par(MacllFormula::neg_atom("b"), MacllFormula::neg_atom("a"))
        );
        let w = MacllFormula::with(MacllFormula::atom("a"), MacllFormula::atom("b"));
        assert_eq!(
            w.negate(),
            MacllFormula::plus(MacllFormula::neg_atom("a"), MacllFormula::neg_atom("b"))
        );
    }

    #[test]
    fn negation_is_involutive_on_sample() {
        let f = MacllFormula::times(MacllFormula::atom("p"), MacllFormula::neg_atom("q"));
        assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn hat_translation_cases() {
        assert_eq!(hat_translate(&Category::prim("p")), MacllFormula::atom("p"));
        assert_eq!(
            hat_translate(&Category::ldiv(Category::prim("p"), Category::prim("q"))),
            MacllFormula::par(MacllFormula::neg_atom("p"), MacllFormula::atom("q"))
        );
        assert_eq!(
            hat_translate(&Category::rdiv(Category::prim("q"), Category::prim("p"))),
            MacllFormula::par(MacllFormula::atom("q"), MacllFormula::neg_atom("p"))
        );
        assert_eq!(
            hat_translate(&Category::and(Category::prim("p"), Category::prim("q"))),
            MacllFormula::with(MacllFormula::atom("p"), MacllFormula::atom("q"))
        );
    }

    #[test]
    fn substitution_respects_polarity() {
        let f = PrimCat::new("f");
        assert_eq!(
            MacllFormula::neg_atom("f").substitute(&f, &MacllFormula::Bottom),
            MacllFormula::One
        );
        assert_eq!(
            MacllFormula::atom("q").substitute(&f, &MacllFormula::Bottom),
            MacllFormula::atom("q")
        );
        let before = MacllFormula::par(
            MacllFormula::times(MacllFormula::neg_atom("f"), MacllFormula::atom("q")),
            MacllFormula::atom("f"),
        );
        let after = MacllFormula::par(
            MacllFormula::times(MacllFormula::One, MacllFormula::atom("q")),
            MacllFormula::Bottom,
        );
        assert_eq!(before.substitute(&f, &MacllFormula::Bottom), after);
    }

    #[test]
    fn display_is_readable() {
        let f = MacllFormula::par(
            MacllFormula::times(MacllFormula::neg_atom("f"), MacllFormula::atom("q")),
            MacllFormula::atom("f"),
        );
        assert_eq!(f.to_string(), "~f * q | f");
    }
}
