//! Sparse multivariate polynomials over any [`Scalar`] coefficient ring.
//!
//! Terms are kept sorted by the canonical order: lexicographic with the
//! variable list order as priority (`x > y > z > v > t` for the standard
//! lists), leading term first.

mod json;
mod monomial;
mod parse;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactring::{
    Field, QuotElem, QuotModulus, Rational, RingError, Scalar, UniPoly,
};

pub use json::{PolyJson, TermJson};
pub use monomial::{Monomial, MAX_VARS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings: {0}")]
    MixedRings(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Ordered list of variable names shared by all polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarList(Arc<[String]>);

impl VarList {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        assert!(
            names.len() <= MAX_VARS,
            "at most {MAX_VARS} variables are supported"
        );
        let v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in v.iter().enumerate() {
            assert!(!v[..i].contains(a), "duplicate variable {a}");
        }
        Self(v.into())
    }

    pub fn xyz() -> Self {
        Self::new(&["x", "y", "z"])
    }

    pub fn xyzv() -> Self {
        Self::new(&["x", "y", "z", "v"])
    }

    pub fn v() -> Self {
        Self::new(&["v"])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index(&self, name: &str) -> Result<usize, PolyError> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// This list with `name` appended (no-op when already present).
    pub fn with(&self, name: &str) -> Self {
        if self.0.iter().any(|n| n == name) {
            return self.clone();
        }
        let mut v = self.0.to_vec();
        v.push(name.to_string());
        Self::new(&v)
    }

    pub fn without(&self, drop: &[&str]) -> Self {
        let v: Vec<&String> = self.0.iter().filter(|n| !drop.contains(&n.as_str())).collect();
        Self::new(&v)
    }
}

impl fmt::Debug for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Scalar> {
    vars: VarList,
    ctx: C::Ctx,
    terms: Vec<(Monomial, C)>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: &VarList, ctx: &C::Ctx) -> Self {
        Self {
            vars: vars.clone(),
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &VarList, c: C) -> Self {
        let ctx = c.ctx();
        Self::from_terms(vars, &ctx, [(Monomial::one(), c)])
    }

    pub fn from_i64(vars: &VarList, ctx: &C::Ctx, c: i64) -> Self {
        Self::constant(vars, C::from_i64(ctx, c))
    }

    pub fn var(vars: &VarList, ctx: &C::Ctx, name: &str) -> Result<Self, PolyError> {
        let i = vars.index(name)?;
        Ok(Self::from_terms(vars, ctx, [(Monomial::var(i), C::one(ctx))]))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        vars: &VarList,
        ctx: &C::Ctx,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            debug_assert!(m.fits(vars.len()), "monomial exceeds variable count");
            match acc.get_mut(&m) {
                Some(e) => *e = e.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(vars, ctx, acc)
    }

    fn from_map(vars: &VarList, ctx: &C::Ctx, map: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self {
            vars: vars.clone(),
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero(&self.ctx))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: &str) -> Result<u32, PolyError> {
        let i = self.vars.index(var)?;
        Ok(self.terms.iter().map(|(m, _)| m.get(i)).max().unwrap_or(0))
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<&str> {
        (0..self.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.get(i) > 0))
            .map(|i| self.vars.names()[i].as_str())
            .collect()
    }

    fn same_ring(&self, o: &Self) -> Result<(), PolyError> {
        if self.vars != o.vars {
            return Err(PolyError::MixedRings(format!(
                "variables {:?} vs {:?}",
                self.vars, o.vars
            )));
        }
        if self.ctx != o.ctx {
            return Err(PolyError::MixedRings(format!(
                "coefficient rings {:?} vs {:?}",
                self.ctx, o.ctx
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, PolyError> {
        self.same_ring(o)?;
        Ok(self.merge(o, false))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, PolyError> {
        self.same_ring(o)?;
        Ok(self.merge(o, true))
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &C| if negate { -c.clone() } else { c.clone() };
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((*mb, rhs(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca.clone() + rhs(cb);
                    if !s.is_zero() {
                        out.push((*ma, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (*m, rhs(c))));
        Self {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, PolyError> {
        self.same_ring(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.vars, &self.ctx));
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(e) => *e = e.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.vars, &self.ctx, acc))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.vars, C::one(&self.ctx));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars, &self.ctx);
        }
        Self {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// Multiplies by the monomial `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        Self {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone() * c.clone()))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self, PolyError> {
        let i = self.vars.index(var)?;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.get(i);
            (e > 0).then(|| (m.with(i, e - 1), c.clone() * C::from_i64(&self.ctx, e as i64)))
        });
        Ok(Self::from_terms(&self.vars, &self.ctx, terms))
    }

    /// Splits into `sum_k coeffs[k] * var^k`, where the coefficients are free of `var`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<Self>, PolyError> {
        let i = self.vars.index(var)?;
        let deg = self.degree_in(var)? as usize;
        let mut buckets: Vec<Vec<(Monomial, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.get(i) as usize].push((m.with(i, 0), c.clone()));
        }
        Ok(buckets
            .into_iter()
            .map(|t| Self::from_terms(&self.vars, &self.ctx, t))
            .collect())
    }

    /// Replaces every occurrence of `var` by `q` and expands.
    pub fn substitute(&self, var: &str, q: &Self) -> Result<Self, PolyError> {
        self.same_ring(q)?;
        let coeffs = self.coefficients_in(var)?;
        // Horner in q
        let mut acc = Self::zero(&self.vars, &self.ctx);
        for c in coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        Ok(acc)
    }

    /// Value at `point`, one coordinate per variable.
    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars(), "point has wrong dimension");
        let mut powers: Vec<Vec<C>> = point.iter().map(|p| vec![C::one(&self.ctx), p.clone()]).collect();
        let mut acc = C::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.get(i) as usize;
                while pw.len() <= e {
                    let next = pw[pw.len() - 1].clone() * point[i].clone();
                    pw.push(next);
                }
                if e > 0 {
                    t = t * pw[e].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Applies a coefficient map into another ring.
    pub fn map_coeffs<D: Scalar>(
        &self,
        ctx: &D::Ctx,
        f: impl Fn(&C) -> Result<D, RingError>,
    ) -> Result<MultiPoly<D>, RingError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((*m, d));
            }
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            ctx: ctx.clone(),
            terms,
        })
    }

    /// Re-expresses the polynomial over a variable list containing every variable in use.
    pub fn embed(&self, target: &VarList) -> Result<Self, PolyError> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index(name) {
                Ok(j) => map.push(Some(j)),
                Err(e) => {
                    if self.terms.iter().any(|(m, _)| m.get(i) > 0) {
                        return Err(e);
                    }
                    map.push(None);
                }
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one();
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    out = out.with(*j, m.get(i));
                }
            }
            (out, c.clone())
        });
        Ok(Self::from_terms(target, &self.ctx, terms))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Parses an expression with coefficients interpreted in `ctx`.
    pub fn parse_in(vars: &VarList, ctx: &C::Ctx, src: &str) -> Result<Self, PolyError> {
        parse::parse(vars, ctx, src)
    }
}

impl<C: Field> MultiPoly<C> {
    /// Divides by the leading coefficient (canonical order).
    pub fn monic(&self) -> Result<Self, RingError> {
        match self.terms.first() {
            None => Ok(self.clone()),
            Some((_, lc)) => Ok(self.scale(&lc.inv()?)),
        }
    }
}

impl MultiPoly<Rational> {
    /// Parses expressions like `x*y*z^2 - z*(x^2+y^2+z^2) + 1/2*x*y`.
    pub fn parse(vars: &VarList, src: &str) -> Result<Self, PolyError> {
        parse::parse(vars, &(), src)
    }

    /// Reduces coefficients into another ring (e.g. `F_p`, `Z/p^N`).
    pub fn reduce_to<D: Scalar>(&self, ctx: &D::Ctx) -> Result<MultiPoly<D>, RingError> {
        self.map_coeffs(ctx, |q| D::from_rational(ctx, q))
    }

    /// Splits off the rational unit: `self = unit * normalized`, where `normalized`
    /// has coprime integer coefficients and a positive leading coefficient.
    pub fn normalize_unit(&self) -> (Rational, Self) {
        if self.is_zero() {
            return (<Rational as One>::one(), self.clone());
        }
        use num_integer::Integer;
        let mut num_gcd = num_bigint::BigInt::zero();
        let mut den_lcm = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut unit = Rational::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            unit = -unit;
        }
        let normalized = self.scale(&unit.recip());
        (unit, normalized)
    }

    /// Returns `u` with `self = u * other` when the two differ by a nonzero rational constant.
    pub fn unit_ratio(&self, other: &Self) -> Option<Rational> {
        if self.vars != other.vars {
            return None;
        }
        let (ua, na) = self.normalize_unit();
        let (ub, nb) = other.normalize_unit();
        (na == nb).then(|| ua / ub)
    }

    /// Reads the polynomial as univariate; returns the variable index (if any) and
    /// the dense coefficients.
    pub fn to_univariate(&self) -> Result<(Option<usize>, UniPoly), PolyError> {
        let support: Vec<usize> = (0..self.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.get(i) > 0))
            .collect();
        match support.as_slice() {
            [] => Ok((None, UniPoly::constant(self.constant_term()))),
            [i] => {
                let deg = self.terms.iter().map(|(m, _)| m.get(*i)).max().unwrap_or(0) as usize;
                let mut c = vec![<Rational as Zero>::zero(); deg + 1];
                for (m, a) in &self.terms {
                    c[m.get(*i) as usize] = a.clone();
                }
                Ok((Some(*i), UniPoly::new(c)))
            }
            _ => Err(PolyError::NotUnivariate(self.to_string())),
        }
    }

    pub fn from_univariate(vars: &VarList, var: &str, p: &UniPoly) -> Result<Self, PolyError> {
        let i = vars.index(var)?;
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::one().with(i, k as u32), c.clone()));
        Ok(Self::from_terms(vars, &(), terms))
    }

    /// Evaluates a polynomial in `var` alone at a rational value.
    pub fn eval_univariate(&self, x: &Rational) -> Result<Rational, PolyError> {
        let (_, u) = self.to_univariate()?;
        Ok(u.eval(x))
    }

    /// Reinterprets `var` as the generator of `Q[var]/(g)`: the result lives in the
    /// remaining variables with quotient-ring coefficients.
    pub fn to_quotient(&self, var: &str, modulus: &QuotModulus) -> Result<MultiPoly<QuotElem>, PolyError> {
        let i = self.vars.index(var)?;
        let rest = self.vars.without(&[var]);
        let mut buckets: HashMap<Monomial, Vec<Rational>> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.get(i) as usize;
            let mut key = Monomial::one();
            let mut j = 0;
            for k in 0..self.nvars() {
                if k != i {
                    key = key.with(j, m.get(k));
                    j += 1;
                }
            }
            let slot = buckets.entry(key).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, <Rational as Zero>::zero());
            }
            slot[e] = c.clone();
        }
        let terms = buckets
            .into_iter()
            .map(|(m, c)| (m, modulus.reduce(&UniPoly::new(c))));
        Ok(MultiPoly::from_terms(&rest, modulus, terms))
    }
}

/// Monic gcd of two univariate polynomials in the same variable.
pub fn univariate_gcd(
    a: &MultiPoly<Rational>,
    b: &MultiPoly<Rational>,
) -> Result<MultiPoly<Rational>, PolyError> {
    a.same_ring(b)?;
    let (ia, ua) = a.to_univariate()?;
    let (ib, ub) = b.to_univariate()?;
    let var = match (ia, ib) {
        (Some(i), Some(j)) if i != j => {
            return Err(PolyError::NotUnivariate(format!(
                "{a} and {b} use different variables"
            )))
        }
        (Some(i), _) | (_, Some(i)) => i,
        (None, None) => 0,
    };
    let g = ua.gcd(&ub);
    MultiPoly::from_univariate(a.vars(), &a.vars().names()[var], &g)
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = c.to_string();
            if cs.contains(' ') {
                cs = format!("({cs})");
            }
            let neg = cs.starts_with('-');
            let mag = if neg { &cs[1..] } else { &cs[..] };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = m.display(self.vars.names());
            match (mag, mono.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                ("1", false) => write!(f, "{mono}")?,
                _ => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Scalar> $tr<&MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, o: &MultiPoly<C>) -> MultiPoly<C> {
                self.$checked(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<C: Scalar> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $method(self, o: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$method(&o)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rational_from_i64, PrimeField};

    fn q(s: &str) -> MultiPoly<Rational> {
        MultiPoly::parse(&VarList::xyzv(), s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&q("x+y") * &q("x-y"), q("x^2-y^2"));
        assert_eq!(&q("x+y") + &q("0"), q("x+y"));
    }

    #[test]
    fn chebyshev_step_by_hand() {
        // v*S1 - S0 = S2
        assert_eq!(&(&q("v") * &q("v")) - &q("1"), q("v^2-1"));
    }

    #[test]
    fn derivative_of_character_factor() {
        let f = q("x*y*z^2 - z*(x^2+y^2+z^2) + x*y + 2*z");
        assert_eq!(
            f.partial_derivative("z").unwrap(),
            q("2*x*y*z - x^2 - y^2 - 3*z^2 + 2")
        );
        assert!(q("y").partial_derivative("x").unwrap().is_zero());
        assert_eq!(q("v^2-1").partial_derivative("v").unwrap(), q("2*v"));
        assert!(matches!(
            q("x").partial_derivative("w"),
            Err(PolyError::UnknownVariable(_))
        ));
    }

    #[test]
    fn substitute_line_into_character() {
        let f = q("x*y*z^2 - z*(x^2+y^2+z^2) + x*y + 2*z");
        let g = f.substitute("z", &q("x+y-2")).unwrap();
        assert_eq!(g, q("(x+y-1)^2*(x-2)*(y-2)"));
        assert_eq!(f.substitute("x", &q("x")).unwrap(), f);
    }

    #[test]
    fn evaluate_over_f5() {
        let f5 = PrimeField::new(5).unwrap();
        let f = MultiPoly::parse(&VarList::xyz(), "x*y*z^2 - z*(x^2+y^2+z^2) + x*y + 2*z").unwrap();
        let pt = [f5.elem(3), f5.elem(3), f5.elem(4)];
        let fp = f.reduce_to::<crate::exactring::FpElem>(&f5).unwrap();
        assert!(fp.evaluate(&pt).is_zero());
        let dz = f.partial_derivative("z").unwrap().reduce_to(&f5).unwrap();
        assert_eq!(dz.evaluate(&pt), f5.elem(3));
        let half = MultiPoly::parse(&VarList::xyz(), "x/5").unwrap();
        assert!(half.reduce_to::<crate::exactring::FpElem>(&f5).is_err());
    }

    #[test]
    fn constant_term_at_origin() {
        let p = q("3*x^2 - 7/2 + y*v");
        let zero = vec![rational_from_i64(0); 4];
        assert_eq!(p.evaluate(&zero), Rational::new((-7).into(), 2.into()));
    }

    #[test]
    fn gcd_examples() {
        let v = VarList::v();
        let g = univariate_gcd(
            &MultiPoly::parse(&v, "v^2-1").unwrap(),
            &MultiPoly::parse(&v, "v+1").unwrap(),
        )
        .unwrap();
        assert_eq!(g, MultiPoly::parse(&v, "v+1").unwrap());
        let p = MultiPoly::parse(&v, "3*v^2-3").unwrap();
        let zero = MultiPoly::zero(&v, &());
        assert_eq!(univariate_gcd(&p, &zero).unwrap(), MultiPoly::parse(&v, "v^2-1").unwrap());
    }

    #[test]
    fn unit_normalization() {
        let (u, n) = q("-4 - 2*z + 2*x + 2*y").normalize_unit();
        assert_eq!(u, rational_from_i64(2));
        assert_eq!(n, q("x + y - z - 2"));
        assert_eq!(q("2*(2+z-x-y)").unit_ratio(&q("2+z-x-y")), Some(rational_from_i64(2)));
        assert_eq!(q("x+1").unit_ratio(&q("x+2")), None);
    }

    #[test]
    fn quotient_coefficients() {
        let m = QuotModulus::new(UniPoly::from_i64s(&[1, 1])).unwrap();
        let t = q("v*x + x + v^2 - 1").to_quotient("v", &m).unwrap();
        assert!(t.is_zero());
        let t = q("v*x").to_quotient("v", &m).unwrap();
        assert_eq!(t.to_string(), "-x");
    }

    #[test]
    fn display_form() {
        assert_eq!(q("-x^2*y + 3/2*z - 1").to_string(), "-x^2*y + 3/2*z - 1");
        assert_eq!(q("0").to_string(), "0");
    }
}
