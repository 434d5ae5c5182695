use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Field, Rational, RingError, Scalar, UniPoly};

/// Monic modulus `g` of degree >= 1 defining `Q[v]/(g)`.
#[derive(Clone)]
pub struct QuotModulus(Arc<UniPoly>);

impl QuotModulus {
    pub fn new(g: UniPoly) -> Result<Self, RingError> {
        match g.degree() {
            Some(d) if d >= 1 && g.is_monic() => Ok(Self(Arc::new(g))),
            _ => Err(RingError::InvalidModulus(format!(
                "quotient modulus must be monic of degree >= 1, got {g}"
            ))),
        }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("nonzero modulus")
    }

    /// The class of `v` itself.
    pub fn generator(&self) -> QuotElem {
        self.reduce(&UniPoly::monomial(Rational::from_integer(1.into()), 1))
    }

    pub fn reduce(&self, p: &UniPoly) -> QuotElem {
        QuotElem {
            rep: p.rem(&self.0),
            modulus: self.clone(),
        }
    }
}

impl PartialEq for QuotModulus {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

impl Eq for QuotModulus {}

impl fmt::Debug for QuotModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

/// Element of `Q[v]/(g)` stored as its normal form of degree `< deg g`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuotElem {
    rep: UniPoly,
    modulus: QuotModulus,
}

/// Reduces `p` modulo the monic polynomial `g`.
pub fn quot_reduce(p: &UniPoly, g: &UniPoly) -> Result<QuotElem, RingError> {
    Ok(QuotModulus::new(g.clone())?.reduce(p))
}

impl QuotElem {
    pub fn representative(&self) -> &UniPoly {
        &self.rep
    }

    pub fn modulus(&self) -> &QuotModulus {
        &self.modulus
    }

    pub fn checked_op(
        &self,
        o: &Self,
        f: impl FnOnce(&UniPoly, &UniPoly) -> UniPoly,
    ) -> Result<Self, RingError> {
        if self.modulus != o.modulus {
            return Err(RingError::MixedModuli(
                self.modulus.0.to_string(),
                o.modulus.0.to_string(),
            ));
        }
        Ok(self.modulus.reduce(&f(&self.rep, &o.rep)))
    }

    fn op(&self, o: &Self, f: impl FnOnce(&UniPoly, &UniPoly) -> UniPoly) -> Self {
        self.checked_op(o, f).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Hash for QuotElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl fmt::Debug for QuotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod {:?}", self.rep, self.modulus)
    }
}

impl fmt::Display for QuotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl Add for QuotElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.op(&o, UniPoly::add)
    }
}

impl Sub for QuotElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.op(&o, UniPoly::sub)
    }
}

impl Mul for QuotElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.op(&o, UniPoly::mul)
    }
}

impl Neg for QuotElem {
    type Output = Self;
    fn neg(self) -> Self {
        QuotElem {
            rep: self.rep.neg(),
            modulus: self.modulus,
        }
    }
}

impl Scalar for QuotElem {
    type Ctx = QuotModulus;

    fn ctx(&self) -> QuotModulus {
        self.modulus.clone()
    }

    fn zero(ctx: &QuotModulus) -> Self {
        QuotElem {
            rep: UniPoly::zero(),
            modulus: ctx.clone(),
        }
    }

    fn one(ctx: &QuotModulus) -> Self {
        ctx.reduce(&UniPoly::one())
    }

    fn from_i64(ctx: &QuotModulus, v: i64) -> Self {
        ctx.reduce(&UniPoly::from_i64s(&[v]))
    }

    fn from_rational(ctx: &QuotModulus, q: &Rational) -> Result<Self, RingError> {
        Ok(ctx.reduce(&UniPoly::constant(q.clone())))
    }

    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn is_one(&self) -> bool {
        self.rep.is_one()
    }

    /// Fails with the nontrivial factor `gcd(rep, g)` as witness when `rep` is a zero divisor.
    fn inv(&self) -> Result<Self, RingError> {
        let (g, s, _) = self.rep.ext_gcd(self.modulus.poly());
        if g.is_one() {
            Ok(self.modulus.reduce(&s))
        } else {
            Err(RingError::NotAUnit {
                value: format!("{self:?}"),
                witness: Some(if g.is_zero() {
                    self.modulus.poly().clone()
                } else {
                    g
                }),
            })
        }
    }
}

impl Field for QuotElem {}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(quot_reduce(&p(&[0, 0, 1]), &p(&[1, 1])).unwrap().rep, p(&[1]));
        assert_eq!(
            quot_reduce(&p(&[0, -2, 0, 1]), &p(&[-1, 0, 1])).unwrap().rep,
            p(&[0, -1])
        );
        assert!(quot_reduce(&UniPoly::zero(), &p(&[1, 1])).unwrap().is_zero());
        assert!(quot_reduce(&p(&[1]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn two_minus_v_mod_v_plus_one() {
        let m = QuotModulus::new(p(&[1, 1])).unwrap();
        let inv = m.reduce(&p(&[2, -1])).inv().unwrap();
        assert_eq!(inv.rep, UniPoly::constant(Rational::new(1.into(), 3.into())));
    }

    #[test]
    fn zero_divisor_witness() {
        let m = QuotModulus::new(p(&[-1, 0, 1])).unwrap();
        match m.reduce(&p(&[1, 1])).inv() {
            Err(RingError::NotAUnit { witness: Some(w), .. }) => assert_eq!(w, p(&[1, 1])),
            other => panic!("expected zero divisor, got {other:?}"),
        }
    }

    #[test]
    fn mixed_moduli_detected() {
        let a = QuotModulus::new(p(&[1, 1])).unwrap().generator();
        let b = QuotModulus::new(p(&[-1, 1])).unwrap().generator();
        assert!(matches!(
            a.checked_op(&b, UniPoly::add),
            Err(RingError::MixedModuli(..))
        ));
    }
}
