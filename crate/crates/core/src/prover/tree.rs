use std::fmt;

use serde::Serialize;

/// A proof: the concluded sequent, the rule applied, and one subtree per premise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofTree<S, R> {
    pub sequent: S,
    pub rule: R,
    pub premises: Vec<ProofTree<S, R>>,
}

/// How a sequent and a rule label render in LaTeX.
pub trait LatexNode {
    fn latex(&self) -> String;
}

impl<S, R> ProofTree<S, R> {
    pub fn leaf(sequent: S, rule: R) -> Self {
        ProofTree {
            sequent,
            rule,
            premises: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Self::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Self::height).max().unwrap_or(0)
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&ProofTree<S, R>> {
        let mut out = vec![self];
        for p in &self.premises {
            out.extend(p.nodes());
        }
        out
    }
}

impl<S: LatexNode, R: LatexNode> ProofTree<S, R> {
    /// Nested `\infer[rule]{conclusion}{premise & …}` markup.
    pub fn to_latex(&self) -> String {
        let premises: Vec<String> = self.premises.iter().map(Self::to_latex).collect();
        format!(
            "\\infer[{}]{{{}}}{{{}}}",
            self.rule.latex(),
            self.sequent.latex(),
            premises.join(" & ")
        )
    }
}

impl<S: fmt::Display, R: fmt::Display> ProofTree<S, R> {
    /// Indented plain-text rendering, conclusion first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.text_into(0, &mut out);
        out
    }

    fn text_into(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}   [{}]\n", self.sequent, self.rule));
        for p in &self.premises {
            p.text_into(depth + 1, out);
        }
    }
}
