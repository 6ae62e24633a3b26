//! Bounded enumeration of languages over a finite alphabet.

/// Budget exhaustion while enumerating or searching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("work budget of {budget} exceeded (needed {needed})")]
pub struct BudgetExceeded {
    pub budget: u64,
    pub needed: u64,
}

/// Default cap on enumerated strings or proof-search expansions.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A recognizer that can be extended and shrunk one symbol at a time.
pub trait Recognizer {
    fn push(&mut self, c: char);
    fn pop(&mut self);
    /// Whether the current word belongs to the language.
    fn accepts(&self) -> bool;
}

/// Number of words of length at most `max_len`, saturating.
pub fn word_count(alphabet_size: usize, max_len: usize) -> u64 {
    let mut total: u64 = 0;
    let mut layer: u64 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(alphabet_size as u64);
    }
    total
}

fn check_budget(alphabet_size: usize, max_len: usize, budget: u64) -> Result<(), BudgetExceeded> {
    let needed = word_count(alphabet_size, max_len);
    if needed > budget {
        Err(BudgetExceeded { budget, needed })
    } else {
        Ok(())
    }
}

/// Orders words by length, then lexicographically.
pub fn sort_words(words: &mut [String]) {
    words.sort_by(|a, b| {
        a.chars()
            .count()
            .cmp(&b.chars().count())
            .then_with(|| a.cmp(b))
    });
}

/// All accepted words of length at most `max_len`, by depth-first extension.
pub fn enumerate_language<R: Recognizer>(
    r: &mut R,
    alphabet: &[char],
    max_len: usize,
    budget: u64,
) -> Result<Vec<String>, BudgetExceeded> {
    check_budget(alphabet.len(), max_len, budget)?;
    let mut out = Vec::new();
    let mut word = String::new();
    if r.accepts() {
        out.push(String::new());
    }
    dfs(r, alphabet, max_len, &mut word, &mut out);
    sort_words(&mut out);
    Ok(out)
}

fn dfs<R: Recognizer>(
    r: &mut R,
    alphabet: &[char],
    left: usize,
    word: &mut String,
    out: &mut Vec<String>,
) {
    if left == 0 {
        return;
    }
    for &c in alphabet {
        r.push(c);
        word.push(c);
        if r.accepts() {
            out.push(word.clone());
        }
        dfs(r, alphabet, left - 1, word, out);
        word.pop();
        r.pop();
    }
}

/// Every word of length at most `max_len`, shortest first.
pub fn all_words(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &c in alphabet {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Filters [`all_words`] by a predicate, respecting the budget.
pub fn enumerate_by<F: FnMut(&str) -> bool>(
    alphabet: &[char],
    max_len: usize,
    budget: u64,
    mut accepts: F,
) -> Result<Vec<String>, BudgetExceeded> {
    check_budget(alphabet.len(), max_len, budget)?;
    Ok(all_words(alphabet, max_len)
        .into_iter()
        .filter(|w| accepts(w))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct EvenA(Vec<char>);

    impl Recognizer for EvenA {
        fn push(&mut self, c: char) {
            self.0.push(c);
        }
        fn pop(&mut self) {
            self.0.pop();
        }
        fn accepts(&self) -> bool {
            self.0.iter().filter(|c| **c == 'a').count() % 2 == 0
        }
    }

    #[test]
    fn dfs_matches_filter() {
        let mut r = EvenA(Vec::new());
        let a = enumerate_language(&mut r, &['a', 'b'], 4, 1000).unwrap();
        let b = enumerate_by(&['a', 'b'], 4, 1000, |w| w.matches('a').count() % 2 == 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a[0], "");
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(word_count(3, 2), 13);
        let mut r = EvenA(Vec::new());
        assert!(enumerate_language(&mut r, &['a', 'b', 'c'], 2, 12).is_err());
    }
}
