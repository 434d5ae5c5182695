use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{inv_mod_u64, is_prime_u64, Field, Rational, RingError, Scalar};

/// The prime field `F_p` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, RingError> {
        if p <= 2 || !is_prime_u64(p) || p >= 1 << 32 {
            return Err(RingError::InvalidModulus(format!(
                "{p} is not an odd prime below 2^32"
            )));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> FpElem {
        FpElem {
            r: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FpElem> + '_ {
        (0..self.p).map(move |r| FpElem { r, p: self.p })
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> FpElem {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        FpElem {
            r: r.to_u64().expect("residue fits"),
            p: self.p,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElem {
    r: u64,
    p: u64,
}

impl FpElem {
    pub fn residue(&self) -> u64 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixed prime fields F_{} and F_{}", self.p, o.p);
    }
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.r, self.p)
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r)
    }
}

impl Add for FpElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        let s = self.r + o.r;
        FpElem {
            r: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
}

impl Sub for FpElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        FpElem {
            r: if self.r >= o.r {
                self.r - o.r
            } else {
                self.r + self.p - o.r
            },
            p: self.p,
        }
    }
}

impl Mul for FpElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        FpElem {
            r: self.r * o.r % self.p,
            p: self.p,
        }
    }
}

impl Neg for FpElem {
    type Output = Self;
    fn neg(self) -> Self {
        FpElem {
            r: if self.r == 0 { 0 } else { self.p - self.r },
            p: self.p,
        }
    }
}

impl Scalar for FpElem {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn zero(ctx: &PrimeField) -> Self {
        ctx.elem(0)
    }

    fn one(ctx: &PrimeField) -> Self {
        ctx.elem(1)
    }

    fn from_i64(ctx: &PrimeField, v: i64) -> Self {
        ctx.elem(v)
    }

    fn from_rational(ctx: &PrimeField, q: &Rational) -> Result<Self, RingError> {
        let den = ctx.reduce_bigint(q.denom());
        if den.r.is_zero() {
            return Err(RingError::BadDenominator {
                den: q.denom().to_string(),
                ring: format!("F_{}", ctx.p),
            });
        }
        Ok(ctx.reduce_bigint(q.numer()) * den.inv()?)
    }

    fn is_zero(&self) -> bool {
        self.r == 0
    }

    fn is_one(&self) -> bool {
        self.r == 1
    }

    fn inv(&self) -> Result<Self, RingError> {
        inv_mod_u64(self.r, self.p)
            .map(|r| FpElem { r, p: self.p })
            .ok_or_else(|| RingError::NotAUnit {
                value: format!("{self:?}"),
                witness: None,
            })
    }
}

impl Field for FpElem {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_inverse_in_f5() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.elem(3).inv().unwrap(), f5.elem(2));
        assert!(f5.elem(0).inv().is_err());
    }

    #[test]
    fn rejects_even_and_composite() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(3).is_ok());
    }

    #[test]
    fn rational_embedding() {
        let f7 = PrimeField::new(7).unwrap();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(FpElem::from_rational(&f7, &half).unwrap(), f7.elem(4));
        let seventh = Rational::new(1.into(), 7.into());
        assert!(matches!(
            FpElem::from_rational(&f7, &seventh),
            Err(RingError::BadDenominator { .. })
        ));
    }
}
