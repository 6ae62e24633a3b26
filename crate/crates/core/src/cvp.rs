//! Sequential-NOR circuits, their string encoding, and the satisfiability
//! harness built from the circuit-value grammar by a homomorphism.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::conj::{cg_member, CgChart};
use crate::samples::cvp_grammar;
use crate::syntax::ConjGrammar;
use crate::transforms::{image_member, Homomorphism, TransformError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    Input(bool),
    /// `Nor(j)` at position `i` computes `¬(C_{i-1} ∨ C_j)`; positions are 1-based.
    Nor(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("a circuit needs at least one input")]
    NoInputs,
    #[error("gate {gate} is an input after a NOR gate")]
    InputAfterNor { gate: usize },
    #[error("gate {gate} refers to gate {arg}, which is not an earlier gate")]
    BadArgument { gate: usize, arg: usize },
    #[error("cannot read `{0}` as a gate list")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>) -> Result<Self, CircuitError> {
        if !matches!(gates.first(), Some(Gate::Input(_))) {
            return Err(CircuitError::NoInputs);
        }
        let mut seen_nor = false;
        for (k, g) in gates.iter().enumerate() {
            let i = k + 1;
            match *g {
                Gate::Input(_) if seen_nor => return Err(CircuitError::InputAfterNor { gate: i }),
                Gate::Input(_) => {}
                Gate::Nor(j) => {
                    seen_nor = true;
                    if j == 0 || j >= i {
                        return Err(CircuitError::BadArgument { gate: i, arg: j });
                    }
                }
            }
        }
        Ok(Circuit { gates })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn inputs(&self) -> usize {
        self.gates
            .iter()
            .take_while(|g| matches!(g, Gate::Input(_)))
            .count()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<&str> = self
            .gates
            .iter()
            .filter_map(|g| match g {
                Gate::Input(b) => Some(if *b { "1" } else { "0" }),
                Gate::Nor(_) => None,
            })
            .collect();
        write!(f, "in:{}", bits.join(","))?;
        for g in &self.gates {
            if let Gate::Nor(j) = g {
                write!(f, " nor:{j}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = CircuitError;

    /// Reads `in:0,1 nor:1 nor:2`.
    fn from_str(s: &str) -> Result<Self, CircuitError> {
        let bad = || CircuitError::Syntax(s.to_string());
        let mut gates = Vec::new();
        for token in s.split_whitespace() {
            let (kind, arg) = token.split_once(':').ok_or_else(bad)?;
            match kind {
                "in" => {
                    for bit in arg.split(',') {
                        gates.push(Gate::Input(match bit {
                            "0" => false,
                            "1" => true,
                            _ => return Err(bad()),
                        }));
                    }
                }
                "nor" => gates.push(Gate::Nor(arg.parse().map_err(|_| bad())?)),
                _ => return Err(bad()),
            }
        }
        Circuit::new(gates)
    }
}

/// Values of all gates in order.
pub fn gate_values(c: &Circuit) -> Vec<bool> {
    let mut v: Vec<bool> = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        let x = match *g {
            Gate::Input(b) => b,
            Gate::Nor(j) => !(v[v.len() - 1] || v[j - 1]),
        };
        v.push(x);
    }
    v
}

/// Value of the last gate.
pub fn eval_circuit(c: &Circuit) -> bool {
    *gate_values(c).last().expect("circuits are nonempty")
}

/// Gate codes from the last gate down to the first: `0`, `1`, or `a^(i-j-1) b`.
pub fn encode_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    for (k, g) in c.gates.iter().enumerate().rev() {
        match *g {
            Gate::Input(b) => out.push(if b { '1' } else { '0' }),
            Gate::Nor(j) => {
                out.extend(std::iter::repeat_n('a', k - j));
                out.push('b');
            }
        }
    }
    out
}

/// Inverse of [`encode_circuit`] on well-formed encodings.
pub fn decode_circuit(w: &str) -> Option<Circuit> {
    let mut codes: Vec<Result<bool, usize>> = Vec::new();
    let mut skip = 0;
    for ch in w.chars() {
        match ch {
            'a' => skip += 1,
            'b' => {
                codes.push(Err(skip));
                skip = 0;
            }
            '0' | '1' if skip == 0 => codes.push(Ok(ch == '1')),
            _ => return None,
        }
    }
    if skip > 0 {
        return None;
    }
    let n = codes.len();
    let gates = codes
        .iter()
        .rev()
        .enumerate()
        .map(|(k, code)| match *code {
            Ok(b) => Some(Gate::Input(b)),
            Err(skip) => k.checked_sub(skip).map(Gate::Nor),
        })
        .collect::<Option<Vec<_>>>()?;
    debug_assert_eq!(gates.len(), n);
    Circuit::new(gates).ok()
}

/// Every circuit with at most `max_gates` gates and at most `max_inputs`
/// inputs, ordered by size, then input count, then bits and arguments.
pub fn enumerate_circuits(max_gates: usize, max_inputs: usize) -> Vec<Circuit> {
    let mut out = Vec::new();
    for n in 1..=max_gates {
        for m in 1..=max_inputs.min(n) {
            for bits in 0u32..(1 << m) {
                let mut gates: Vec<Gate> = (0..m)
                    .map(|i| Gate::Input(bits >> (m - 1 - i) & 1 == 1))
                    .collect();
                extend_nors(&mut gates, n, &mut out);
            }
        }
    }
    out
}

fn extend_nors(gates: &mut Vec<Gate>, n: usize, out: &mut Vec<Circuit>) {
    let i = gates.len() + 1;
    if i > n {
        out.push(Circuit {
            gates: gates.clone(),
        });
        return;
    }
    for j in 1..i {
        gates.push(Gate::Nor(j));
        extend_nors(gates, n, out);
        gates.pop();
    }
}

fn grammar() -> &'static ConjGrammar {
    static G: OnceLock<ConjGrammar> = OnceLock::new();
    G.get_or_init(cvp_grammar)
}

/// Nonterminals of the circuit-value grammar deriving `w`.
pub fn cvp_nonterminals(w: &str) -> Vec<String> {
    let mut chart = CgChart::new(grammar());
    for c in w.chars() {
        chart.push_symbol(c);
    }
    chart.deriving_nonterminals().into_iter().collect()
}

/// Membership in the language of `T`, the encodings of circuits evaluating to 1.
pub fn cvp_member(w: &str) -> bool {
    cg_member(grammar(), w).unwrap_or(false)
}

/// The length-preserving homomorphism hiding input bits: `0, 1 ↦ ?`.
pub fn hide_inputs() -> Homomorphism {
    Homomorphism::new([('0', '?'), ('1', '?'), ('a', 'a'), ('b', 'b')])
}

/// Whether some 0/1 filling of the `?` positions is accepted by the
/// circuit-value grammar; at most `max_check` fillings are tried.
pub fn csp_member(pattern: &str, max_check: u64) -> Result<bool, TransformError> {
    image_member(cvp_member, &hide_inputs(), pattern, max_check)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circuit(s: &str) -> Circuit {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation() {
        assert!(eval_circuit(&circuit("in:1")));
        assert!(!eval_circuit(&circuit("in:1 nor:1")));
        assert!(!eval_circuit(&circuit("in:0 nor:1 nor:1")));
        assert_eq!(
            gate_values(&circuit("in:0 nor:1 nor:1")),
            vec![false, true, false]
        );
    }

    #[test]
    fn encoding() {
        assert_eq!(encode_circuit(&circuit("in:0")), "0");
        assert_eq!(encode_circuit(&circuit("in:1 nor:1")), "b1");
        assert_eq!(encode_circuit(&circuit("in:0 nor:1 nor:1")), "abb0");
        for c in enumerate_circuits(4, 2) {
            assert_eq!(decode_circuit(&encode_circuit(&c)), Some(c));
        }
        assert_eq!(decode_circuit("ab0"), None);
        assert_eq!(decode_circuit("0b"), None);
    }

    #[test]
    fn literal_syntax() {
        let c = circuit("in:0,1 nor:1 nor:2");
        assert_eq!(c.inputs(), 2);
        assert_eq!(c.to_string(), "in:0,1 nor:1 nor:2");
        assert!(matches!(
            "in:1 nor:2".parse::<Circuit>(),
            Err(CircuitError::BadArgument { gate: 2, arg: 2 })
        ));
        assert!(matches!(
            "nor:1".parse::<Circuit>(),
            Err(CircuitError::NoInputs)
        ));
        assert!(matches!(
            "in:1 nor:1 in:0".parse::<Circuit>(),
            Err(CircuitError::InputAfterNor { gate: 3 })
        ));
        assert!("in:2".parse::<Circuit>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_circuits(1, 1).len(), 2);
        assert_eq!(enumerate_circuits(2, 1).len(), 4);
        // n=3, m=1: two bits, one choice for gate 2, two for gate 3.
        assert_eq!(enumerate_circuits(3, 1).len(), 8);
    }

    #[test]
    fn grammar_membership() {
        assert!(cvp_member("1"));
        assert!(cvp_member("b0"));
        assert!(!cvp_member("b1"));
        assert!(!cvp_member(""));
        assert_eq!(cvp_nonterminals("b1"), vec!["F".to_string()]);
    }

    fn from_c(w: &str) -> bool {
        let g = grammar().with_start("C").unwrap();
        cg_member(&g, w).unwrap()
    }

    #[test]
    fn skip_prefixes() {
        // C derives a^m b x_1 … x_m for gate codes x_i, and nothing with a miscounted prefix.
        let codes = ["b", "ab", "0", "1"];
        let mut tuples: Vec<Vec<&str>> = vec![vec![]];
        for m in 0..=3 {
            for xs in &tuples {
                let body: String = xs.concat();
                let a = "a".repeat(m);
                assert!(from_c(&format!("{a}b{body}")), "a^{m} b {body}");
                assert!(!from_c(&format!("a{a}b{body}")), "a^{} b {body}", m + 1);
                if m > 0 {
                    let short: String = xs[1..].concat();
                    assert!(!from_c(&format!("{a}b{short}")), "a^{m} b {short}");
                }
            }
            tuples = tuples
                .iter()
                .flat_map(|xs| codes.iter().map(move |c| [xs.clone(), vec![*c]].concat()))
                .collect();
        }
    }

    #[test]
    fn satisfiability() {
        assert!(csp_member("?", 16).unwrap());
        assert!(csp_member("b?", 16).unwrap());
        assert!(!csp_member("a", 16).unwrap());
        assert!(csp_member("????", 8).is_err());
    }
}
