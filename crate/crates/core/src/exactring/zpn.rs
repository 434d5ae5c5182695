use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{inv_mod_u64, is_prime_u64, Rational, RingError, Scalar};

/// The ring `Z/p^N` for an odd prime `p` and precision `N >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZpnCtx {
    p: u64,
    n: u32,
    modulus: u64,
}

impl ZpnCtx {
    pub fn new(p: u64, n: u32) -> Result<Self, RingError> {
        if p <= 2 || !is_prime_u64(p) {
            return Err(RingError::InvalidModulus(format!("{p} is not an odd prime")));
        }
        if n == 0 {
            return Err(RingError::InvalidModulus("precision must be >= 1".into()));
        }
        let modulus = p
            .checked_pow(n)
            .filter(|m| *m < 1 << 62)
            .ok_or_else(|| RingError::InvalidModulus(format!("{p}^{n} exceeds 2^62")))?;
        Ok(Self { p, n, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, v: i64) -> ZpnElem {
        ZpnElem {
            r: (v as i128).rem_euclid(self.modulus as i128) as u64,
            ctx: *self,
        }
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> ZpnElem {
        let m = BigInt::from(self.modulus);
        let r = ((v % &m) + &m) % &m;
        ZpnElem {
            r: r.to_u64().expect("residue fits"),
            ctx: *self,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZpnElem {
    r: u64,
    ctx: ZpnCtx,
}

/// Wire form `{"p":…, "N":…, "r":…}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZpnJson {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u32,
    pub r: u64,
}

impl ZpnElem {
    pub fn residue(&self) -> u64 {
        self.r
    }

    /// Largest `k <= N` with `p^k | a`; the zero element has valuation `N`.
    pub fn valuation(&self) -> u32 {
        let mut k = 0;
        let mut r = self.r;
        while k < self.ctx.n && r.is_multiple_of(self.ctx.p) {
            if r == 0 {
                return self.ctx.n;
            }
            r /= self.ctx.p;
            k += 1;
        }
        k
    }

    /// Reduction modulo `p^k` for `k <= N`, as an element of `Z/p^k`.
    pub fn truncate(&self, k: u32) -> ZpnElem {
        let ctx = ZpnCtx::new(self.ctx.p, k.min(self.ctx.n)).expect("valid precision");
        ZpnElem {
            r: self.r % ctx.modulus,
            ctx,
        }
    }

    pub fn to_json(&self) -> ZpnJson {
        ZpnJson {
            p: self.ctx.p,
            n: self.ctx.n,
            r: self.r,
        }
    }

    pub fn from_json(j: &ZpnJson) -> Result<Self, RingError> {
        let ctx = ZpnCtx::new(j.p, j.n)?;
        if j.r >= ctx.modulus {
            return Err(RingError::InvalidModulus(format!(
                "residue {} out of range for {}^{}",
                j.r, j.p, j.n
            )));
        }
        Ok(ZpnElem { r: j.r, ctx })
    }

    fn check(&self, o: &Self) {
        assert_eq!(
            self.ctx, o.ctx,
            "mixed rings Z/{}^{} and Z/{}^{}",
            self.ctx.p, self.ctx.n, o.ctx.p, o.ctx.n
        );
    }
}

impl fmt::Debug for ZpnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.r, self.ctx.p, self.ctx.n)
    }
}

impl fmt::Display for ZpnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r)
    }
}

impl Add for ZpnElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.check(&o);
        let s = self.r + o.r;
        let m = self.ctx.modulus;
        ZpnElem {
            r: if s >= m { s - m } else { s },
            ctx: self.ctx,
        }
    }
}

impl Sub for ZpnElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.check(&o);
        ZpnElem {
            r: if self.r >= o.r {
                self.r - o.r
            } else {
                self.r + self.ctx.modulus - o.r
            },
            ctx: self.ctx,
        }
    }
}

impl Mul for ZpnElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.check(&o);
        ZpnElem {
            r: ((self.r as u128 * o.r as u128) % self.ctx.modulus as u128) as u64,
            ctx: self.ctx,
        }
    }
}

impl Neg for ZpnElem {
    type Output = Self;
    fn neg(self) -> Self {
        ZpnElem {
            r: if self.r == 0 {
                0
            } else {
                self.ctx.modulus - self.r
            },
            ctx: self.ctx,
        }
    }
}

impl Scalar for ZpnElem {
    type Ctx = ZpnCtx;

    fn ctx(&self) -> ZpnCtx {
        self.ctx
    }

    fn zero(ctx: &ZpnCtx) -> Self {
        ctx.elem(0)
    }

    fn one(ctx: &ZpnCtx) -> Self {
        ctx.elem(1)
    }

    fn from_i64(ctx: &ZpnCtx, v: i64) -> Self {
        ctx.elem(v)
    }

    fn from_rational(ctx: &ZpnCtx, q: &Rational) -> Result<Self, RingError> {
        let den = ctx.reduce_bigint(q.denom());
        let inv = den.inv().map_err(|_| RingError::BadDenominator {
            den: q.denom().to_string(),
            ring: format!("Z/{}^{}", ctx.p, ctx.n),
        })?;
        Ok(ctx.reduce_bigint(q.numer()) * inv)
    }

    fn is_zero(&self) -> bool {
        self.r == 0
    }

    fn is_one(&self) -> bool {
        self.r == 1
    }

    fn inv(&self) -> Result<Self, RingError> {
        inv_mod_u64(self.r, self.ctx.modulus)
            .map(|r| ZpnElem { r, ctx: self.ctx })
            .ok_or_else(|| RingError::NotAUnit {
                value: format!("{self:?}"),
                witness: None,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_inverse_mod_125() {
        let r = ZpnCtx::new(5, 3).unwrap();
        assert_eq!(r.elem(2).inv().unwrap(), r.elem(63));
        assert!(r.elem(10).inv().is_err());
    }

    #[test]
    fn valuation_and_truncate() {
        let r = ZpnCtx::new(5, 3).unwrap();
        assert_eq!(r.elem(0).valuation(), 3);
        assert_eq!(r.elem(50).valuation(), 2);
        assert_eq!(r.elem(7).valuation(), 0);
        assert_eq!(r.elem(63).truncate(1).residue(), 3);
    }

    #[test]
    fn json_form() {
        let r = ZpnCtx::new(7, 2).unwrap();
        let j = serde_json::to_string(&r.elem(-1).to_json()).unwrap();
        assert_eq!(j, r#"{"p":7,"N":2,"r":48}"#);
        let back: ZpnJson = serde_json::from_str(&j).unwrap();
        assert_eq!(ZpnElem::from_json(&back).unwrap(), r.elem(48));
    }

    #[test]
    fn oversized_precision_rejected() {
        assert!(ZpnCtx::new(11, 30).is_err());
    }
}
