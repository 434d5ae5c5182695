//! Chebyshev-type families in the trace variable `v`.
//!
//! `S_k` (second kind): `S_0 = 1`, `S_1 = v`, `S_{k+2} = v S_{k+1} - S_k`, run
//! backward for negative `k` (so `S_{-1} = 0`, `S_{-2} = -1`).
//! `T_k` (first kind): `T_0 = 2`, `T_1 = v`, same recursion.
//! `P_k = (S_{k+1} - S_k - 1)/(v - 2)` for `k >= -1`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactring::{rational_from_i64, Rational, UniPoly};
use crate::mpoly::{MultiPoly, PolyError, VarList};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChebError {
    #[error("P_{k} is not a polynomial: remainder {remainder}")]
    DivisionFailure { k: i64, remainder: UniPoly },
    #[error("P_k needs k >= -1, got {0}")]
    IndexOutOfRange(i64),
    #[error("parity factors of S_{} do not multiply back: {product} vs {expected}", .n - 1)]
    ProductMismatch {
        n: i64,
        product: UniPoly,
        expected: UniPoly,
    },
    #[error("parity split needs n >= 2, got {0}")]
    BadIndex(i64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    S,
    T,
    P,
}

type Table = RwLock<HashMap<i64, Arc<UniPoly>>>;

/// Append-only memo of the three families.
#[derive(Default)]
pub struct ChebCache {
    s: Table,
    t: Table,
    p: Table,
}

fn v_poly() -> UniPoly {
    UniPoly::from_i64s(&[0, 1])
}

fn lookup(table: &Table, k: i64) -> Option<Arc<UniPoly>> {
    table.read().expect("cache poisoned").get(&k).cloned()
}

/// Fills `table` along the three-term recursion from the seeds at 0 and 1.
fn run_recursion(table: &Table, seed0: UniPoly, seed1: UniPoly, k: i64) -> Arc<UniPoly> {
    if let Some(p) = lookup(table, k) {
        return p;
    }
    let v = v_poly();
    let mut w = table.write().expect("cache poisoned");
    w.entry(0).or_insert_with(|| Arc::new(seed0));
    w.entry(1).or_insert_with(|| Arc::new(seed1));
    if k >= 0 {
        let mut hi = 1;
        while w.contains_key(&(hi + 1)) && hi < k {
            hi += 1;
        }
        while hi < k {
            let next = v.mul(&w[&hi]).sub(&w[&(hi - 1)]);
            hi += 1;
            w.insert(hi, Arc::new(next));
        }
    } else {
        let mut lo = 0;
        while w.contains_key(&(lo - 1)) && lo > k {
            lo -= 1;
        }
        while lo > k {
            // X_{k} = v X_{k+1} - X_{k+2}
            let prev = v.mul(&w[&lo]).sub(&w[&(lo + 1)]);
            lo -= 1;
            w.insert(lo, Arc::new(prev));
        }
    }
    w[&k].clone()
}

impl ChebCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache.
    pub fn global() -> &'static ChebCache {
        static CACHE: OnceLock<ChebCache> = OnceLock::new();
        CACHE.get_or_init(ChebCache::new)
    }

    pub fn s(&self, k: i64) -> Arc<UniPoly> {
        run_recursion(&self.s, UniPoly::one(), v_poly(), k)
    }

    pub fn t(&self, k: i64) -> Arc<UniPoly> {
        run_recursion(&self.t, UniPoly::from_i64s(&[2]), v_poly(), k)
    }

    pub fn p(&self, k: i64) -> Result<Arc<UniPoly>, ChebError> {
        if k < -1 {
            return Err(ChebError::IndexOutOfRange(k));
        }
        if let Some(p) = lookup(&self.p, k) {
            return Ok(p);
        }
        let num = self.s(k + 1).sub(&self.s(k)).sub(&UniPoly::one());
        let (q, r) = num.div_rem(&UniPoly::from_i64s(&[-2, 1]));
        if !r.is_zero() {
            return Err(ChebError::DivisionFailure { k, remainder: r });
        }
        let q = Arc::new(q);
        self.p.write().expect("cache poisoned").entry(k).or_insert(q.clone());
        Ok(q)
    }

    pub fn get(&self, kind: Kind, k: i64) -> Result<Arc<UniPoly>, ChebError> {
        match kind {
            Kind::S => Ok(self.s(k)),
            Kind::T => Ok(self.t(k)),
            Kind::P => self.p(k),
        }
    }
}

pub fn s_uni(k: i64) -> Arc<UniPoly> {
    ChebCache::global().s(k)
}

pub fn t_uni(k: i64) -> Arc<UniPoly> {
    ChebCache::global().t(k)
}

pub fn p_uni(k: i64) -> Result<Arc<UniPoly>, ChebError> {
    ChebCache::global().p(k)
}

/// The family member as a polynomial in the variable `v` of `vars`.
pub fn family_in(vars: &VarList, kind: Kind, k: i64) -> Result<MultiPoly<Rational>, ChebError> {
    let u = ChebCache::global().get(kind, k)?;
    Ok(MultiPoly::from_univariate(vars, "v", &u)?)
}

pub fn s(k: i64) -> MultiPoly<Rational> {
    family_in(&VarList::v(), Kind::S, k).expect("S is total")
}

pub fn t(k: i64) -> MultiPoly<Rational> {
    family_in(&VarList::v(), Kind::T, k).expect("T is total")
}

pub fn p(k: i64) -> Result<MultiPoly<Rational>, ChebError> {
    family_in(&VarList::v(), Kind::P, k)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityFailure {
    pub k: i64,
    pub identity: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub k_max: i64,
    pub identities_checked: usize,
    pub first_failure: Option<IdentityFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `a^d · u(a + 1/a)` as a polynomial in `a`, for `d >= deg u`.
fn laurent_cleared(u: &UniPoly, d: usize) -> UniPoly {
    let a2p1 = UniPoly::from_i64s(&[1, 0, 1]);
    let mut acc = UniPoly::zero();
    let mut pow = UniPoly::one();
    for (j, c) in u.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add(&pow.mul(&UniPoly::monomial(c.clone(), d - j)));
        }
        pow = pow.mul(&a2p1);
    }
    acc
}

/// Checks, for `0 <= k <= k_max`: the recursions, `S_k(2) = k+1`,
/// `S_k(-2) = (-1)^k (k+1)`, the Laurent identities
/// `(a - 1/a) S_k(a + 1/a) = a^{k+1} - a^{-k-1}` and `T_k(a + 1/a) = a^k + a^{-k}`,
/// polynomiality of `P_k`, and the bridge `T_k = S_k - S_{k-2}`.
pub fn identity_suite(k_max: i64) -> IdentityReport {
    let cache = ChebCache::global();
    let v = v_poly();
    let mut checked = 0;
    let mut fail = None;
    let two = rational_from_i64(2);
    let minus_two = rational_from_i64(-2);
    'outer: for k in 0..=k_max.max(0) {
        let sk = cache.s(k);
        let tk = cache.t(k);
        let d = k as usize;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut checks: Vec<(&str, bool)> = vec![
            (
                "S recursion",
                cache.s(k + 2).sub(&v.mul(&cache.s(k + 1))).add(&sk).is_zero(),
            ),
            (
                "T recursion",
                cache.t(k + 2).sub(&v.mul(&cache.t(k + 1))).add(&tk).is_zero(),
            ),
            ("S_k(2) = k+1", sk.eval(&two) == rational_from_i64(k + 1)),
            ("S_k(-2) = (-1)^k (k+1)", sk.eval(&minus_two) == rational_from_i64(sign * (k + 1))),
            (
                "(a - 1/a) S_k(a + 1/a) = a^(k+1) - a^(-k-1)",
                UniPoly::from_i64s(&[-1, 0, 1]).mul(&laurent_cleared(&sk, d))
                    == UniPoly::monomial(Rational::one(), 2 * d + 2).sub(&UniPoly::one()),
            ),
            (
                "T_k(a + 1/a) = a^k + a^(-k)",
                laurent_cleared(&tk, d) == UniPoly::monomial(Rational::one(), 2 * d).add(&UniPoly::one()),
            ),
        ];
        let p_ok = match cache.p(k) {
            Ok(pk) => UniPoly::from_i64s(&[-2, 1])
                .mul(&pk)
                .add(&sk)
                .add(&UniPoly::one())
                .sub(&cache.s(k + 1))
                .is_zero(),
            Err(_) => false,
        };
        checks.push(("(v-2) P_k = S_(k+1) - S_k - 1", p_ok));
        if k >= 2 {
            checks.push(("T_k = S_k - S_(k-2)", tk.sub(&sk).add(&cache.s(k - 2)).is_zero()));
        }
        for (name, ok) in checks {
            checked += 1;
            if !ok {
                fail = Some(IdentityFailure {
                    k,
                    identity: name.to_string(),
                });
                break 'outer;
            }
        }
    }
    IdentityReport {
        k_max,
        identities_checked: checked,
        first_failure: fail,
    }
}

/// Whether `S_n - S_{n-2}` is squarefree.
pub fn separability_check(n: i64) -> bool {
    let cache = ChebCache::global();
    let q = cache.s(n).sub(&cache.s(n - 2));
    q.gcd(&q.derivative()).is_one()
}

/// Splits `S_{n-1}` by the value of `S_{n-2}` at its roots:
/// `g_odd = gcd(S_{n-1}, S_{n-2} - 1)`, `g_even = gcd(S_{n-1}, S_{n-2} + 1)`.
pub fn parity_split(n: i64) -> Result<(UniPoly, UniPoly), ChebError> {
    if n < 2 {
        return Err(ChebError::BadIndex(n));
    }
    let cache = ChebCache::global();
    let s1 = cache.s(n - 1);
    let s2 = cache.s(n - 2);
    let odd = s1.gcd(&s2.sub(&UniPoly::one()));
    let even = s1.gcd(&s2.add(&UniPoly::one()));
    let product = odd.mul(&even);
    let expected = s1.monic();
    if product != expected || !odd.gcd(&even).is_one() {
        return Err(ChebError::ProductMismatch { n, product, expected });
    }
    Ok((odd, even))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn small_members() {
        assert_eq!(*s_uni(2), u(&[-1, 0, 1]));
        assert_eq!(*s_uni(3), u(&[0, -2, 0, 1]));
        assert_eq!(*s_uni(-1), UniPoly::zero());
        assert_eq!(*s_uni(-2), u(&[-1]));
        assert_eq!(*t_uni(2), u(&[-2, 0, 1]));
        assert_eq!(*t_uni(3), u(&[0, -3, 0, 1]));
        assert_eq!(*p_uni(0).unwrap(), UniPoly::one());
        assert_eq!(*p_uni(-1).unwrap(), UniPoly::zero());
        assert!(p_uni(-2).is_err());
    }

    #[test]
    fn negative_indices_follow_backward_recursion() {
        let c = ChebCache::new();
        // S_{-k} = -S_{k-2}
        for k in 2..12 {
            assert_eq!(*c.s(-k), c.s(k - 2).neg());
        }
        // T_{-k} = T_k
        for k in 0..12 {
            assert_eq!(c.t(-k), c.t(k));
        }
    }

    #[test]
    fn fresh_cache_matches_global_out_of_order() {
        let c = ChebCache::new();
        let _ = c.s(7);
        let _ = c.s(-5);
        for k in -6..20 {
            assert_eq!(c.s(k), s_uni(k));
        }
    }

    #[test]
    fn identity_suite_small() {
        let r = identity_suite(12);
        assert!(r.passed(), "{r:?}");
        assert_eq!(s_uni(3).eval(&rational_from_i64(2)), rational_from_i64(4));
        assert_eq!(s_uni(2).eval(&rational_from_i64(-2)), rational_from_i64(3));
    }

    #[test]
    fn separability() {
        for n in [2, 4, 10] {
            assert!(separability_check(n), "n={n}");
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_split(3).unwrap(), (u(&[-1, 1]), u(&[1, 1])));
        assert_eq!(parity_split(2).unwrap(), (u(&[0, 1]), UniPoly::one()));
        for n in 2..15 {
            let (o, e) = parity_split(n).unwrap();
            assert_eq!(o.degree().unwrap() + e.degree().unwrap(), (n - 1) as usize);
        }
        assert!(matches!(parity_split(1), Err(ChebError::BadIndex(1))));
    }

    #[test]
    fn multipoly_views() {
        let vars = VarList::xyzv();
        let s2 = family_in(&vars, Kind::S, 2).unwrap();
        assert_eq!(s2, MultiPoly::parse(&vars, "v^2-1").unwrap());
        assert_eq!(s(1), MultiPoly::parse(&VarList::v(), "v").unwrap());
    }
}
