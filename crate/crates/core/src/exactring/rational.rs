use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{RingError, Scalar};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rational_from_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"`. The result is normalized; a zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, RingError> {
    let bad = || RingError::InvalidModulus(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn ctx(&self) {}

    fn zero(_: &()) -> Self {
        Zero::zero()
    }

    fn one(_: &()) -> Self {
        One::one()
    }

    fn from_i64(_: &(), v: i64) -> Self {
        rational_from_i64(v)
    }

    fn from_rational(_: &(), q: &Rational) -> Result<Self, RingError> {
        Ok(q.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Result<Self, RingError> {
        if Zero::is_zero(self) {
            Err(RingError::NotAUnit {
                value: "0".into(),
                witness: None,
            })
        } else {
            Ok(self.recip())
        }
    }
}

impl super::Field for Rational {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        for s in ["0", "-1/2", "7", "3/4", "-12345678901234567890/7"] {
            assert_eq!(parse_rational(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_rational("2/4").unwrap().to_string(), "1/2");
        assert_eq!(parse_rational("3/-6").unwrap().to_string(), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = parse_rational("0/5").unwrap();
        assert_eq!(z.denom(), &BigInt::from(1));
    }
}
