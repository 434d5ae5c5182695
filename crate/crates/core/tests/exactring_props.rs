use proptest::prelude::*;
use wlink_core::exactring::{
    quot_reduce, FpElem, PrimeField, QuotModulus, Rational, Scalar, UniPoly, ZpnCtx, ZpnElem,
};

fn axioms<C: Scalar>(a: C, b: C, c: C) {
    let ctx = a.ctx();
    assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!(a.clone() + C::zero(&ctx), a);
    assert_eq!(a.clone() * C::one(&ctx), a);
    assert!((a.clone() - a.clone()).is_zero());
    assert!((a.clone() + (-a.clone())).is_zero());
    if let Ok(i) = a.inv() {
        assert!((a.clone() * i.clone()).is_one());
        assert_eq!(i.inv().unwrap(), a);
    }
}

fn rat() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn quot() -> QuotModulus {
    // v² + v − 1 is irreducible over ℚ; v³ − v is not.
    QuotModulus::new(UniPoly::from_i64s(&[-1, 1, 1])).unwrap()
}

fn uni(c: Vec<i64>) -> UniPoly {
    UniPoly::from_i64s(&c)
}

proptest! {
    #[test]
    fn rationals(a in rat(), b in rat(), c in rat()) {
        axioms(a, b, c);
    }

    #[test]
    fn prime_fields(p in prop::sample::select(vec![3u64, 5, 7, 101, 65_521]), a: i64, b: i64, c: i64) {
        let f = PrimeField::new(p).unwrap();
        axioms::<FpElem>(f.elem(a), f.elem(b), f.elem(c));
        if f.elem(a).is_zero() {
            prop_assert!(f.elem(a).inv().is_err());
        }
    }

    #[test]
    fn p_adic_truncations(p in prop::sample::select(vec![3u64, 5, 7, 11]), n in 1u32..8, a: i64, b: i64, c: i64) {
        let ctx = ZpnCtx::new(p, n).unwrap();
        axioms::<ZpnElem>(ctx.elem(a), ctx.elem(b), ctx.elem(c));
        // Units are exactly the elements prime to p.
        prop_assert_eq!(ctx.elem(a).inv().is_ok(), a.rem_euclid(p as i64) != 0);
    }

    #[test]
    fn quotient_ring(a in prop::collection::vec(-9i64..9, 0..5),
                     b in prop::collection::vec(-9i64..9, 0..5),
                     c in prop::collection::vec(-9i64..9, 0..5)) {
        let g = quot();
        axioms(g.reduce(&uni(a)), g.reduce(&uni(b)), g.reduce(&uni(c)));
    }

    #[test]
    fn quotient_reduction_is_idempotent(a in prop::collection::vec(-9i64..9, 0..7)) {
        let g = UniPoly::from_i64s(&[0, -1, 0, 1]);
        let once = quot_reduce(&uni(a), &g).unwrap();
        let twice = quot_reduce(once.representative(), &g).unwrap();
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn zero_divisor_carries_a_factor() {
    let g = UniPoly::from_i64s(&[0, -1, 0, 1]);
    let v = quot_reduce(&UniPoly::from_i64s(&[0, 1]), &g).unwrap();
    assert!(v.inv().is_err());
}
