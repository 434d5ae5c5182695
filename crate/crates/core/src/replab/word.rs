use std::fmt;

use super::mat2::Mat2;
use super::ReplabError;
use crate::exactring::Scalar;

/// Freely reduced word: `(generator index, nonzero exponent)` with adjacent
/// entries on different generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn generator(g: usize) -> Self {
        Self { letters: vec![(g, 1)] }
    }

    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Self { letters: out }
    }

    /// Reads words such as `"b a^-3 b a b^-2"` or `"a^-2*b"`; generator names
    /// are single identifiers from `names`.
    pub fn parse(names: &[&str], src: &str) -> Result<Self, ReplabError> {
        let mut letters = Vec::new();
        for tok in src.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.trim_matches(|c| c == '(' || c == ')')
                        .parse::<i64>()
                        .map_err(|_| ReplabError::BadWord(tok.to_string()))?,
                ),
                None => (tok, 1),
            };
            let g = names
                .iter()
                .position(|n| *n == name)
                .ok_or_else(|| ReplabError::BadWord(tok.to_string()))?;
            letters.push((g, exp));
        }
        Ok(Self::new(letters))
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.letters.iter().chain(&o.letters).copied())
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::empty();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Commutator `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Self, v: &Self) -> Self {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|&(g, e)| if e == 1 { names[g].to_string() } else { format!("{}^{}", names[g], e) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.letters.iter().map(|l| l.0 + 1).max().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display(&refs))
    }
}

/// Exact product of the assigned matrices along the word. Negative powers use
/// the adjugate when the determinant is one.
pub fn eval_word<C: Scalar>(w: &Word, assignment: &[Mat2<C>]) -> Result<Mat2<C>, ReplabError> {
    let ctx = assignment
        .first()
        .map(|m| m.ctx())
        .ok_or_else(|| ReplabError::BadWord("no generators assigned".into()))?;
    let mut acc = Mat2::identity(&ctx);
    for &(g, e) in w.letters() {
        let m = assignment
            .get(g)
            .ok_or_else(|| ReplabError::BadWord(format!("generator {g} unassigned")))?;
        acc = acc.mul(&m.pow(e)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction() {
        let w = Word::new([(0, 1), (1, 2), (1, -2), (0, -1)]);
        assert!(w.is_empty());
        let w = Word::parse(&["a", "b"], "a a b^-1 b^2").unwrap();
        assert_eq!(w.letters(), &[(0, 2), (1, 1)]);
        assert!(w.mul(&w.inverse()).is_empty());
        assert_eq!(w.pow(-2), w.inverse().mul(&w.inverse()));
    }

    #[test]
    fn parse_rejects_unknown_generators() {
        assert!(Word::parse(&["a", "b"], "a c").is_err());
        assert!(Word::parse(&["a", "b"], "a^x").is_err());
    }
}
