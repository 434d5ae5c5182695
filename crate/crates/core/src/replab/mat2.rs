use std::fmt;

use crate::exactring::{RingError, Scalar};

/// 2×2 matrix `[[a11, a12], [a21, a22]]` over an exact ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2<C: Scalar> {
    pub a11: C,
    pub a12: C,
    pub a21: C,
    pub a22: C,
}

impl<C: Scalar> Mat2<C> {
    pub fn new(a11: C, a12: C, a21: C, a22: C) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity(ctx: &C::Ctx) -> Self {
        Self::new(C::one(ctx), C::zero(ctx), C::zero(ctx), C::one(ctx))
    }

    pub fn from_i64(ctx: &C::Ctx, e: [i64; 4]) -> Self {
        Self::new(
            C::from_i64(ctx, e[0]),
            C::from_i64(ctx, e[1]),
            C::from_i64(ctx, e[2]),
            C::from_i64(ctx, e[3]),
        )
    }

    pub fn ctx(&self) -> C::Ctx {
        self.a11.ctx()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |a: &C, b: &C, c: &C, d: &C| a.clone() * b.clone() + c.clone() * d.clone();
        Self::new(
            m(&self.a11, &o.a11, &self.a12, &o.a21),
            m(&self.a11, &o.a12, &self.a12, &o.a22),
            m(&self.a21, &o.a11, &self.a22, &o.a21),
            m(&self.a21, &o.a12, &self.a22, &o.a22),
        )
    }

    pub fn det(&self) -> C {
        self.a11.clone() * self.a22.clone() - self.a12.clone() * self.a21.clone()
    }

    pub fn trace(&self) -> C {
        self.a11.clone() + self.a22.clone()
    }

    pub fn is_identity(&self) -> bool {
        self.a11.is_one() && self.a22.is_one() && self.a12.is_zero() && self.a21.is_zero()
    }

    /// Adjugate; the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.a22.clone(), -self.a12.clone(), -self.a21.clone(), self.a11.clone())
    }

    pub fn inverse(&self) -> Result<Self, RingError> {
        let d = self.det();
        if d.is_one() {
            return Ok(self.adjugate());
        }
        let di = d.inv()?;
        let adj = self.adjugate();
        Ok(Self::new(
            adj.a11 * di.clone(),
            adj.a12 * di.clone(),
            adj.a21 * di.clone(),
            adj.a22 * di,
        ))
    }

    /// Integer power; negative exponents need an invertible determinant.
    pub fn pow(&self, e: i64) -> Result<Self, RingError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::identity(&self.ctx());
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(
            self.a11.clone() * c.clone(),
            self.a12.clone() * c.clone(),
            self.a21.clone() * c.clone(),
            self.a22.clone() * c.clone(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            self.a11.clone() + o.a11.clone(),
            self.a12.clone() + o.a12.clone(),
            self.a21.clone() + o.a21.clone(),
            self.a22.clone() + o.a22.clone(),
        )
    }
}

impl<C: Scalar> fmt::Display for Mat2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::Rational;

    #[test]
    fn companion_matrices_have_order_three() {
        let a: Mat2<Rational> = Mat2::from_i64(&(), [0, 1, -1, -1]);
        let b: Mat2<Rational> = Mat2::from_i64(&(), [-1, 1, -1, 0]);
        assert!(a.pow(3).unwrap().is_identity());
        assert!(b.pow(3).unwrap().is_identity());
        let u: Mat2<Rational> = Mat2::from_i64(&(), [1, 1, 0, 1]);
        assert!(!u.pow(3).unwrap().is_identity());
    }

    #[test]
    fn negative_powers() {
        let a: Mat2<Rational> = Mat2::from_i64(&(), [2, 1, 1, 1]);
        assert!(a.pow(-4).unwrap().mul(&a.pow(4).unwrap()).is_identity());
        let sing: Mat2<Rational> = Mat2::from_i64(&(), [1, 2, 2, 4]);
        assert!(sing.pow(-1).is_err());
    }
}
