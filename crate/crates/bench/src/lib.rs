//! Benchmark fixtures.

use conjlambek::{parse_macll_sequent, parse_sequent, MacllSequent, Sequent};

/// `b aⁿ c aⁿ c aⁿ`.
pub fn triple_power_word(n: usize) -> String {
    let a = "a".repeat(n);
    format!("b{a}c{a}c{a}")
}

/// Composition chain `p0/p1, p1/p2, …, p(n-1)/pn, pn → p0`.
pub fn division_chain(n: usize) -> Sequent {
    let mut ant: Vec<String> = (0..n).map(|i| format!("p{i}/p{}", i + 1)).collect();
    ant.push(format!("p{n}"));
    parse_sequent(&format!("{} -> p0", ant.join(", "))).expect("chain parses")
}

/// `q\q & r\r, …` against nested additive goals; exercises the `&` and `+` rules.
pub fn additive_chain(n: usize) -> Sequent {
    let ant = vec!["(p\\p) & (q\\q)"; n].join(", ");
    parse_sequent(&format!("p, {ant} -> p + q")).expect("chain parses")
}

/// One-sided form of [`division_chain`].
pub fn macll_chain(n: usize) -> MacllSequent {
    let mut fs: Vec<String> = (0..n).map(|i| format!("p{} * ~p{i}", i + 1)).collect();
    fs.reverse();
    let text = format!("|- ~p{n}, {}, p0", fs.join(", "));
    parse_macll_sequent(&text).expect("chain parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use conjlambek::prover::{LambekProver, MacllProver};
    use conjlambek::Calculus;

    #[test]
    fn fixtures_are_derivable() {
        for n in 1..4 {
            assert!(LambekProver::new(Calculus::L)
                .derivable(&division_chain(n))
                .unwrap());
            assert!(LambekProver::new(Calculus::Malc)
                .derivable(&additive_chain(n))
                .unwrap());
            assert!(
                MacllProver::new().derivable(&macll_chain(n)).unwrap(),
                "{}",
                macll_chain(n)
            );
        }
        assert_eq!(triple_power_word(2), "baacaacaa");
    }
}
