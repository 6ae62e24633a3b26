use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;
use serde::{Serialize, Serializer};

/// Name of a primitive category.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimCat(String);

impl PrimCat {
    /// Panics if `name` is not an identifier; use [`PrimCat::parse`] for untrusted input.
    pub fn new(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(
            is_identifier(&name),
            "invalid primitive category name {name:?}"
        );
        PrimCat(name)
    }

    pub fn parse(name: &str) -> Option<Self> {
        is_identifier(name).then(|| PrimCat(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PrimCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Identifiers: a letter or underscore followed by letters, digits and underscores.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A formula of the multiplicative-additive Lambek calculus.
///
/// `LDiv(a, b)` is `a \ b` (denominator on the left), `RDiv(b, a)` is
/// `b / a` (denominator on the right). Equality is structural: `And` nodes
/// are kept with the association they were built with.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Prim(PrimCat),
    Prod(Box<Category>, Box<Category>),
    LDiv(Box<Category>, Box<Category>),
    RDiv(Box<Category>, Box<Category>),
    And(Box<Category>, Box<Category>),
    Or(Box<Category>, Box<Category>),
}

impl Category {
    pub fn prim(name: &str) -> Self {
        Category::Prim(PrimCat::new(name))
    }

    pub fn prod(a: Category, b: Category) -> Self {
        Category::Prod(Box::new(a), Box::new(b))
    }

    /// `den \ num`
    pub fn ldiv(den: Category, num: Category) -> Self {
        Category::LDiv(Box::new(den), Box::new(num))
    }

    /// `num / den`
    pub fn rdiv(num: Category, den: Category) -> Self {
        Category::RDiv(Box::new(num), Box::new(den))
    }

    pub fn and(a: Category, b: Category) -> Self {
        Category::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Category, b: Category) -> Self {
        Category::Or(Box::new(a), Box::new(b))
    }

    /// Right-nested conjunction of a nonempty list; a single element is returned bare.
    pub fn and_all(items: impl IntoIterator<Item = Category>) -> Option<Self> {
        fold_right(items.into_iter().collect(), Category::and)
    }

    /// Right-nested disjunction of a nonempty list; a single element is returned bare.
    pub fn or_all(items: impl IntoIterator<Item = Category>) -> Option<Self> {
        fold_right(items.into_iter().collect(), Category::or)
    }

    pub fn as_prim(&self) -> Option<&PrimCat> {
        match self {
            Category::Prim(p) => Some(p),
            _ => None,
        }
    }

    /// Number of binary connectives.
    pub fn connectives(&self) -> usize {
        match self {
            Category::Prim(_) => 0,
            Category::Prod(a, b)
            | Category::LDiv(a, b)
            | Category::RDiv(a, b)
            | Category::And(a, b)
            | Category::Or(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    pub fn node_count(&self) -> usize {
        2 * self.connectives() + 1
    }

    /// Flattens a conjunct `p1 ∧ … ∧ pk` (any association) into its primitives.
    /// Returns `None` when the tree is not a conjunction of primitives.
    pub fn conjunct_members(&self) -> Option<Vec<&PrimCat>> {
        fn walk<'a>(c: &'a Category, out: &mut Vec<&'a PrimCat>) -> bool {
            match c {
                Category::Prim(p) => {
                    out.push(p);
                    true
                }
                Category::And(a, b) => walk(a, out) && walk(b, out),
                _ => false,
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out).then_some(out)
    }

    pub fn is_conjunct(&self) -> bool {
        self.conjunct_members().is_some()
    }

    /// Membership in the basic categories with conjunct denominators.
    pub fn is_bcat_conj(&self) -> bool {
        match self {
            Category::Prim(_) => true,
            Category::LDiv(c, a) | Category::RDiv(a, c) => c.is_conjunct() && a.is_bcat_conj(),
            _ => false,
        }
    }

    /// Membership in the basic categories (primitive denominators only).
    pub fn is_bcat(&self) -> bool {
        match self {
            Category::Prim(_) => true,
            Category::LDiv(c, a) | Category::RDiv(a, c) => c.as_prim().is_some() && a.is_bcat(),
            _ => false,
        }
    }

    /// True when the tree contains no `∧`/`∨`.
    pub fn is_multiplicative(&self) -> bool {
        match self {
            Category::Prim(_) => true,
            Category::Prod(a, b) | Category::LDiv(a, b) | Category::RDiv(a, b) => {
                a.is_multiplicative() && b.is_multiplicative()
            }
            Category::And(..) | Category::Or(..) => false,
        }
    }

    pub fn contains_and(&self) -> bool {
        match self {
            Category::Prim(_) => false,
            Category::And(..) => true,
            Category::Prod(a, b)
            | Category::LDiv(a, b)
            | Category::RDiv(a, b)
            | Category::Or(a, b) => a.contains_and() || b.contains_and(),
        }
    }

    pub fn primitives(&self) -> BTreeSet<PrimCat> {
        let mut out = BTreeSet::new();
        self.collect_primitives(&mut out);
        out
    }

    pub(crate) fn collect_primitives(&self, out: &mut BTreeSet<PrimCat>) {
        match self {
            Category::Prim(p) => {
                out.insert(p.clone());
            }
            Category::Prod(a, b)
            | Category::LDiv(a, b)
            | Category::RDiv(a, b)
            | Category::And(a, b)
            | Category::Or(a, b) => {
                a.collect_primitives(out);
                b.collect_primitives(out);
            }
        }
    }

    pub fn mentions(&self, p: &PrimCat) -> bool {
        match self {
            Category::Prim(q) => q == p,
            Category::Prod(a, b)
            | Category::LDiv(a, b)
            | Category::RDiv(a, b)
            | Category::And(a, b)
            | Category::Or(a, b) => a.mentions(p) || b.mentions(p),
        }
    }

    /// Replaces every occurrence of `Prim(p)` with `d`.
    pub fn substitute(&self, p: &PrimCat, d: &Category) -> Category {
        self.map_prims(&mut |q| {
            if q == p {
                d.clone()
            } else {
                Category::Prim(q.clone())
            }
        })
    }

    /// Rebuilds the tree with every primitive replaced by `f(prim)`.
    pub fn map_prims(&self, f: &mut impl FnMut(&PrimCat) -> Category) -> Category {
        match self {
            Category::Prim(p) => f(p),
            Category::Prod(a, b) => Category::prod(a.map_prims(f), b.map_prims(f)),
            Category::LDiv(a, b) => Category::ldiv(a.map_prims(f), b.map_prims(f)),
            Category::RDiv(a, b) => Category::rdiv(a.map_prims(f), b.map_prims(f)),
            Category::And(a, b) => Category::and(a.map_prims(f), b.map_prims(f)),
            Category::Or(a, b) => Category::or(a.map_prims(f), b.map_prims(f)),
        }
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn level(&self) -> u8 {
        match self {
            Category::Or(..) => 0,
            Category::And(..) => 1,
            Category::LDiv(..) | Category::RDiv(..) => 2,
            Category::Prod(..) => 3,
            Category::Prim(_) => 4,
        }
    }

    /// LaTeX rendering in `\mathop` notation, fully parenthesized below the root.
    pub fn to_latex(&self) -> String {
        fn go(c: &Category, top: bool) -> String {
            let (a, op, b) = match c {
                Category::Prim(p) => return latex_ident(p.name()),
                Category::Prod(a, b) => (a, "\\cdot", b),
                Category::LDiv(a, b) => (a, "\\mathop{\\backslash}", b),
                Category::RDiv(a, b) => (a, "\\mathop{/}", b),
                Category::And(a, b) => (a, "\\wedge", b),
                Category::Or(a, b) => (a, "\\vee", b),
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

fn fold_right(
    mut items: Vec<Category>,
    join: fn(Category, Category) -> Category,
) -> Option<Category> {
    let mut acc = items.pop()?;
    while let Some(prev) = items.pop() {
        acc = join(prev, acc);
    }
    Some(acc)
}

pub(crate) fn latex_ident(name: &str) -> String {
    name.replace('_', "\\_")
}

impl fmt::Display for Category {
    /// Prints with the minimal parentheses the parser needs: `+` < `&` <
    /// `\`,`/` < `.`; `+`, `&`, `\` associate right, `/` and `.` left, and
    /// `\`/`/` never mix without parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Category, paren: bool) -> fmt::Result {
            if paren {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        match self {
            Category::Prim(p) => write!(f, "{p}"),
            Category::Or(a, b) => {
                child(f, a, a.level() == 0)?;
                f.write_str(" + ")?;
                child(f, b, false)
            }
            Category::And(a, b) => {
                child(f, a, a.level() <= 1)?;
                f.write_str(" & ")?;
                child(f, b, b.level() < 1)
            }
            Category::LDiv(a, b) => {
                child(f, a, a.level() <= 2)?;
                f.write_str("\\")?;
                child(f, b, b.level() < 2 || matches!(**b, Category::RDiv(..)))
            }
            Category::RDiv(a, b) => {
                child(f, a, a.level() < 2 || matches!(**a, Category::LDiv(..)))?;
                f.write_str("/")?;
                child(f, b, b.level() <= 2)
            }
            Category::Prod(a, b) => {
                child(f, a, a.level() < 3)?;
                f.write_str(" . ")?;
                child(f, b, b.level() <= 3)
            }
        }
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for PrimCat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{category} is neither a conjunct nor a basic category with conjunct denominators")]
pub struct NotBasicError {
    pub category: String,
}

/// Subexpression closure of a conjunct or a basic category with conjunct
/// denominators: a conjunct contributes only itself; `C\A` and `A/C`
/// contribute themselves, `C`, and the subexpressions of `A`.
pub fn subexpressions(c: &Category) -> Result<IndexSet<Category>, NotBasicError> {
    let mut out = IndexSet::new();
    collect_subexpressions(c, &mut out)?;
    Ok(out)
}

pub(crate) fn collect_subexpressions(
    c: &Category,
    out: &mut IndexSet<Category>,
) -> Result<(), NotBasicError> {
    if c.is_conjunct() {
        out.insert(c.clone());
        return Ok(());
    }
    match c {
        Category::LDiv(den, num) | Category::RDiv(num, den) if den.is_conjunct() => {
            out.insert(c.clone());
            out.insert((**den).clone());
            collect_subexpressions(num, out)
        }
        _ => Err(NotBasicError {
            category: c.to_string(),
        }),
    }
}

/// Sequent `A1, …, An → B`; the antecedent may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Category>,
    pub succedent: Category,
}

impl Sequent {
    pub fn new(antecedent: Vec<Category>, succedent: Category) -> Self {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn connectives(&self) -> usize {
        self.antecedent
            .iter()
            .map(Category::connectives)
            .sum::<usize>()
            + self.succedent.connectives()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Category> {
        self.antecedent
            .iter()
            .chain(std::iter::once(&self.succedent))
    }

    pub fn substitute(&self, p: &PrimCat, d: &Category) -> Sequent {
        Sequent {
            antecedent: self.antecedent.iter().map(|a| a.substitute(p, d)).collect(),
            succedent: self.succedent.substitute(p, d),
        }
    }

    pub fn to_latex(&self) -> String {
        let ante: Vec<String> = self.antecedent.iter().map(Category::to_latex).collect();
        let lhs = if ante.is_empty() {
            "{}".to_string()
        } else {
            ante.join(", ")
        };
        format!("{lhs} \\to {}", self.succedent.to_latex())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "-> {}", self.succedent)
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
