use std::fmt::Write;

pub const MAX_VARS: usize = 8;

/// Exponent vector. Slots beyond the ring's variable count stay zero.
///
/// The derived `Ord` is lexicographic with slot 0 most significant, which is
/// the canonical term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        Self::one().with(i, 1)
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many exponents");
        let mut exps = [0; MAX_VARS];
        exps[..e.len()].copy_from_slice(e);
        Self { exps }
    }

    pub fn exponents(&self, nvars: usize) -> &[u32] {
        &self.exps[..nvars]
    }

    pub fn get(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn with(mut self, i: usize, e: u32) -> Self {
        self.exps[i] = e;
        self
    }

    pub(crate) fn fits(&self, nvars: usize) -> bool {
        self.exps[nvars..].iter().all(|&e| e == 0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Product; exponent overflow aborts.
    pub fn mul(&self, o: &Self) -> Self {
        let mut exps = [0; MAX_VARS];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = self.exps[k]
                .checked_add(o.exps[k])
                .unwrap_or_else(|| panic!("exponent overflow in slot {k}"));
        }
        Self { exps }
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `self / o`, assuming `o` divides `self`.
    pub fn div(&self, o: &Self) -> Self {
        let mut exps = [0; MAX_VARS];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = self.exps[k] - o.exps[k];
        }
        Self { exps }
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut exps = [0; MAX_VARS];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = self.exps[k].max(o.exps[k]);
        }
        Self { exps }
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn display(&self, names: &[String]) -> String {
        let mut s = String::new();
        for (name, &e) in names.iter().zip(&self.exps) {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if e > 1 {
                write!(s, "^{e}").unwrap();
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let b = Monomial::from_exponents(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), Monomial::from_exponents(&[2, 3, 1]));
        assert!(Monomial::from_exponents(&[1, 0, 1]).divides(&a));
        assert!(!b.divides(&a));
        assert!(!a.is_coprime(&b));
        assert_eq!(a.mul(&b).div(&b), a);
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn overflow_aborts() {
        let a = Monomial::from_exponents(&[u32::MAX]);
        let _ = a.mul(&Monomial::var(0));
    }
}
