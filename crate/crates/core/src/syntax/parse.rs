//! Recursive-descent parsers for the ASCII formula syntax.

use super::category::{Category, PrimCat, Sequent};
use super::macll::{MacllFormula, MacllSequent};

/// Parse failure with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    /// Locates byte offset `pos` of `text`.
    pub(crate) fn at(text: &str, pos: usize, message: impl Into<String>) -> Self {
        let pos = pos.min(text.len());
        let before = &text[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Back,
    Slash,
    Dot,
    Amp,
    Plus,
    Comma,
    Arrow,
    Turnstile,
    Tilde,
    Star,
    Bar,
    One,
    Zero,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Back => "'\\'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Comma => "','".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Turnstile => "'|-'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::Star => "'*'".into(),
            Tok::Bar => "'|'".into(),
            Tok::One => "'1'".into(),
            Tok::Zero => "'0'".into(),
        }
    }
}

fn lex(text: &str, base: usize, full: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'\\' => Tok::Back,
            b'/' => Tok::Slash,
            b'.' => Tok::Dot,
            b'&' => Tok::Amp,
            b'+' => Tok::Plus,
            b',' => Tok::Comma,
            b'~' => Tok::Tilde,
            b'*' => Tok::Star,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 1;
                Tok::Turnstile
            }
            b'|' => Tok::Bar,
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric() {
                    i += 1;
                }
                match &text[start..=i] {
                    "1" => Tok::One,
                    "0" => Tok::Zero,
                    other => return Err(SyntaxError::at(
                        full,
                        base + start,
                        format!(
                            "identifiers must start with a letter or underscore, found {other:?}"
                        ),
                    )),
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::at(
                    full,
                    base + start,
                    format!("unexpected character {ch:?}"),
                ));
            }
        };
        out.push((base + start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    full: &'a str,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, base: usize, full: &'a str) -> Result<Self, SyntaxError> {
        Ok(Parser {
            toks: lex(text, base, full)?,
            pos: 0,
            full,
            end: base + text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::at(self.full, self.offset(), message)
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn category(&mut self) -> Result<Category, SyntaxError> {
        let left = self.conjunction()?;
        if self.eat(&Tok::Plus) {
            Ok(Category::or(left, self.category()?))
        } else {
            Ok(left)
        }
    }

    fn conjunction(&mut self) -> Result<Category, SyntaxError> {
        let left = self.division()?;
        if self.eat(&Tok::Amp) {
            Ok(Category::and(left, self.conjunction()?))
        } else {
            Ok(left)
        }
    }

    fn division(&mut self) -> Result<Category, SyntaxError> {
        let first = self.product()?;
        let op = match self.peek() {
            Some(Tok::Back) => Tok::Back,
            Some(Tok::Slash) => Tok::Slash,
            _ => return Ok(first),
        };
        let mut operands = vec![first];
        while self.eat(&op) {
            operands.push(self.product()?);
        }
        if matches!(self.peek(), Some(Tok::Back | Tok::Slash)) {
            return Err(self.error("'\\' and '/' cannot be mixed without parentheses"));
        }
        if op == Tok::Back {
            let mut acc = operands.pop().expect("chain has operands");
            while let Some(den) = operands.pop() {
                acc = Category::ldiv(den, acc);
            }
            Ok(acc)
        } else {
            let mut it = operands.into_iter();
            let mut acc = it.next().expect("chain has operands");
            for den in it {
                acc = Category::rdiv(acc, den);
            }
            Ok(acc)
        }
    }

    fn product(&mut self) -> Result<Category, SyntaxError> {
        let mut acc = self.cat_atom()?;
        while self.eat(&Tok::Dot) {
            acc = Category::prod(acc, self.cat_atom()?);
        }
        Ok(acc)
    }

    fn cat_atom(&mut self) -> Result<Category, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Category::Prim(PrimCat::new(name)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.category()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a category")),
        }
    }

    fn sequent(&mut self) -> Result<Sequent, SyntaxError> {
        let mut antecedent = Vec::new();
        if !self.eat(&Tok::Arrow) {
            loop {
                antecedent.push(self.category()?);
                if self.eat(&Tok::Arrow) {
                    break;
                }
                if !self.eat(&Tok::Comma) {
                    return Err(self.unexpected("',' or '->'"));
                }
            }
        }
        let succedent = self.category()?;
        Ok(Sequent::new(antecedent, succedent))
    }

    fn macll(&mut self) -> Result<MacllFormula, SyntaxError> {
        self.macll_level(0)
    }

    /// Levels: 0 `+`, 1 `&`, 2 `|`, 3 `*`; all right-associative.
    fn macll_level(&mut self, level: u8) -> Result<MacllFormula, SyntaxError> {
        if level == 4 {
            return self.macll_atom();
        }
        let left = self.macll_level(level + 1)?;
        let (tok, join): (Tok, fn(MacllFormula, MacllFormula) -> MacllFormula) = match level {
            0 => (Tok::Plus, MacllFormula::plus),
            1 => (Tok::Amp, MacllFormula::with),
            2 => (Tok::Bar, MacllFormula::par),
            _ => (Tok::Star, MacllFormula::times),
        };
        if self.eat(&tok) {
            Ok(join(left, self.macll_level(level)?))
        } else {
            Ok(left)
        }
    }

    fn macll_atom(&mut self) -> Result<MacllFormula, SyntaxError> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::One) => {
                self.pos += 1;
                Ok(MacllFormula::One)
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(MacllFormula::Zero)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(match name.as_str() {
                    "bot" => MacllFormula::Bottom,
                    "top" => MacllFormula::Top,
                    _ => MacllFormula::Atom {
                        name: PrimCat::new(name),
                        negated: false,
                    },
                })
            }
            Some(Tok::Tilde) => {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::Ident(name)) if name != "bot" && name != "top" => {
                        self.pos += 1;
                        Ok(MacllFormula::Atom {
                            name: PrimCat::new(name),
                            negated: true,
                        })
                    }
                    _ => Err(self.unexpected("an atom after '~' (negation applies to atoms only)")),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.macll()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }
}

/// Parses a category. Precedence from loosest to tightest: `+` (∨), `&` (∧),
/// `\` and `/`, `.` (product).
pub fn parse_category(text: &str) -> Result<Category, SyntaxError> {
    parse_category_at(text, 0, text)
}

pub(crate) fn parse_category_at(
    text: &str,
    base: usize,
    full: &str,
) -> Result<Category, SyntaxError> {
    let mut p = Parser::new(text, base, full)?;
    let c = p.category()?;
    p.finish()?;
    Ok(c)
}

/// Parses `A1, …, An -> B`; the antecedent may be empty (`-> B`).
pub fn parse_sequent(text: &str) -> Result<Sequent, SyntaxError> {
    let mut p = Parser::new(text, 0, text)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

/// Parses a one-sided formula: `~p`, `1`, `bot`, `top`, `0`, and binary
/// `+` (⊕) < `&` (&) < `|` (⅋) < `*` (⊗).
pub fn parse_macll_formula(text: &str) -> Result<MacllFormula, SyntaxError> {
    let mut p = Parser::new(text, 0, text)?;
    let f = p.macll()?;
    p.finish()?;
    Ok(f)
}

/// Parses `|- F1, …, Fn` with n ≥ 1.
pub fn parse_macll_sequent(text: &str) -> Result<MacllSequent, SyntaxError> {
    let mut p = Parser::new(text, 0, text)?;
    p.expect(&Tok::Turnstile)?;
    let mut formulas = vec![p.macll()?];
    while p.eat(&Tok::Comma) {
        formulas.push(p.macll()?);
    }
    p.finish()?;
    Ok(MacllSequent::new(formulas).expect("at least one formula was parsed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: &str) -> Category {
        Category::prim(n)
    }

    #[test]
    fn atomic_category() {
        assert_eq!(parse_category("p").unwrap(), p("p"));
    }

    #[test]
    fn parenthesized_division_by_conjunct() {
        assert_eq!(
            parse_category("(s / (x & y))").unwrap(),
            Category::rdiv(p("s"), Category::and(p("x"), p("y")))
        );
    }

    #[test]
    fn empty_string_formula() {
        let d = parse_category("((r\\r)\\((t\\t)\\q))\\q").unwrap();
        let rr = Category::ldiv(p("r"), p("r"));
        let tt = Category::ldiv(p("t"), p("t"));
        let e = Category::ldiv(rr, Category::ldiv(tt, p("q")));
        assert_eq!(d, Category::ldiv(e, p("q")));
    }

    #[test]
    fn associativity() {
        assert_eq!(
            parse_category("a\\b\\c").unwrap(),
            Category::ldiv(p("a"), Category::ldiv(p("b"), p("c")))
        );
        assert_eq!(
            parse_category("a/b/c").unwrap(),
            Category::rdiv(Category::rdiv(p("a"), p("b")), p("c"))
        );
        assert_eq!(
            parse_category("a & b & c").unwrap(),
            Category::and(p("a"), Category::and(p("b"), p("c")))
        );
        assert_eq!(
            parse_category("a . b . c").unwrap(),
            Category::prod(Category::prod(p("a"), p("b")), p("c"))
        );
        assert_eq!(
            parse_category("a + b & c").unwrap(),
            Category::or(p("a"), Category::and(p("b"), p("c")))
        );
    }

    #[test]
    fn mixed_divisions_need_parentheses() {
        let err = parse_category("a\\b/c").unwrap_err();
        assert_eq!((err.line, err.column), (1, 4));
        assert!(parse_category("(a\\b)/c").is_ok());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_category("(s / x").unwrap_err();
        assert_eq!(err.column, 7);
        let err = parse_category("s $ x").unwrap_err();
        assert_eq!(err.column, 3);
        assert!(parse_category("").is_err());
        assert!(parse_category("1p").is_err());
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("-> p/p").unwrap();
        assert!(s.antecedent.is_empty());
        let s = parse_sequent("t\\t, r\\r -> q").unwrap();
        assert_eq!(s.antecedent.len(), 2);
        assert_eq!(s.to_string(), "t\\t, r\\r -> q");
        assert!(parse_sequent("a, -> b").is_err());
        assert!(parse_sequent("a b -> c").is_err());
    }

    #[test]
    fn macll_syntax() {
        let s = parse_macll_sequent("|- bot, ~p, p").unwrap();
        assert_eq!(
            s.formulas,
            vec![
                MacllFormula::Bottom,
                MacllFormula::neg_atom("p"),
                MacllFormula::atom("p")
            ]
        );
        let f = parse_macll_formula("~f * q | f").unwrap();
        assert_eq!(
            f,
            MacllFormula::par(
                MacllFormula::times(MacllFormula::neg_atom("f"), MacllFormula::atom("q")),
                MacllFormula::atom("f")
            )
        );
        assert_eq!(
            parse_macll_formula("1 & top + 0").unwrap().to_string(),
            "1 & top + 0"
        );
        assert!(parse_macll_formula("~(p * q)").is_err());
        assert!(parse_macll_sequent("|-").is_err());
    }
}
