use std::cmp::Ordering;

use serde::Serialize;

use crate::mpoly::{Monomial, PolyError, VarList, MAX_VARS};

/// Sort key of a monomial under an order. Keys are linear in the exponent
/// vector, so `key(a*b) = key(a) + key(b)`, and compare lexicographically.
pub type Key = [i32; MAX_VARS];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Grevlex on the first `first` priority variables, ties broken by grevlex
    /// on the rest. Eliminates the first block.
    Block { first: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Variable indices from highest to lowest priority.
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Self {
        let mut sorted = priority.clone();
        sorted.sort_unstable();
        assert!(
            sorted.iter().copied().eq(0..priority.len()),
            "priority must be a permutation"
        );
        if let OrderKind::Block { first } = kind {
            assert!(first <= priority.len(), "block larger than variable count");
        }
        Self { kind, priority }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::GrevLex, (0..nvars).collect())
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, (0..nvars).collect())
    }

    /// Priority given by names (highest first); unnamed variables follow in list order.
    pub fn by_names(kind: OrderKind, vars: &VarList, names: &[&str]) -> Result<Self, PolyError> {
        let mut priority = Vec::with_capacity(vars.len());
        for n in names {
            let i = vars.index(n)?;
            if !priority.contains(&i) {
                priority.push(i);
            }
        }
        for i in 0..vars.len() {
            if !priority.contains(&i) {
                priority.push(i);
            }
        }
        Ok(Self::new(kind, priority))
    }

    /// Block order with `drop` as the first block.
    pub fn elimination(vars: &VarList, drop: &[&str]) -> Result<Self, PolyError> {
        Self::by_names(OrderKind::Block { first: drop.len() }, vars, drop)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    /// True when every monomial containing one of the first `k` priority
    /// variables exceeds every monomial free of them.
    pub fn eliminates_first(&self, k: usize) -> bool {
        match self.kind {
            OrderKind::Lex => true,
            OrderKind::Block { first } => first == k,
            OrderKind::GrevLex => k == 0 || k == self.nvars(),
        }
    }

    pub fn key(&self, m: &Monomial) -> Key {
        let mut key = [0i32; MAX_VARS];
        let n = self.priority.len();
        let mut e = [0i32; MAX_VARS];
        for (slot, &i) in e.iter_mut().zip(&self.priority) {
            *slot = m.get(i) as i32;
        }
        let grevlex_block = |key: &mut Key, lo: usize, hi: usize, slot: &mut usize| {
            key[*slot] = e[lo..hi].iter().sum();
            *slot += 1;
            for i in (lo + 1..hi).rev() {
                key[*slot] = -e[i];
                *slot += 1;
            }
        };
        let mut slot = 0;
        match self.kind {
            OrderKind::Lex => key[..n].copy_from_slice(&e[..n]),
            OrderKind::GrevLex => grevlex_block(&mut key, 0, n, &mut slot),
            OrderKind::Block { first } => {
                if first > 0 {
                    grevlex_block(&mut key, 0, first, &mut slot);
                }
                if first < n {
                    grevlex_block(&mut key, first, n, &mut slot);
                }
            }
        }
        key
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_textbook() {
        let o = MonomialOrder::grevlex(3);
        // x^2 > xy > y^2 > xz > yz > z^2 in degree two
        let chain = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in chain.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater, "{w:?}");
        }
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_with_priority() {
        let vars = VarList::xyz();
        let o = MonomialOrder::by_names(OrderKind::Lex, &vars, &["z", "y", "x"]).unwrap();
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[9, 0, 0]), &m(&[0, 1, 0])), Ordering::Less);
    }

    #[test]
    fn block_eliminates_first_block() {
        let vars = VarList::xyzv();
        let o = MonomialOrder::elimination(&vars, &["z"]).unwrap();
        assert_eq!(o.cmp(&m(&[0, 0, 1, 0]), &m(&[7, 7, 0, 7])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[2, 0, 0, 0]), &m(&[1, 0, 0, 0])), Ordering::Greater);
        assert!(o.eliminates_first(1));
    }

    #[test]
    fn key_is_linear() {
        let o = MonomialOrder::elimination(&VarList::xyzv(), &["z", "v"]).unwrap();
        let a = m(&[1, 2, 0, 3]);
        let b = m(&[0, 1, 4, 1]);
        let ka = o.key(&a);
        let kb = o.key(&b);
        let kab = o.key(&a.mul(&b));
        for i in 0..MAX_VARS {
            assert_eq!(kab[i], ka[i] + kb[i]);
        }
    }
}
