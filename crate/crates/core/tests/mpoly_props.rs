use proptest::prelude::*;
use wlink_core::exactring::{PrimeField, Rational};
use wlink_core::mpoly::{univariate_gcd, MultiPoly, VarList};

type P = MultiPoly<Rational>;

fn poly() -> impl Strategy<Value = String> {
    prop::collection::vec((-6i64..6, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|ts| {
        if ts.is_empty() {
            return "0".to_string();
        }
        ts.iter()
            .map(|(c, a, b, d)| format!("({c})*x^{a}*y^{b}*z^{d}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn p(s: &str) -> P {
    MultiPoly::parse(&VarList::xyz(), s).unwrap()
}

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        let (a, b, c) = (p(&a), p(&b), p(&c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_parse_round_trip(a in poly()) {
        let a = p(&a);
        prop_assert_eq!(p(&a.to_string()), a);
    }

    #[test]
    fn substitution(a in poly(), b in poly(), q in poly(), pt in prop::array::uniform3(-4i64..4)) {
        let (a, b, q) = (p(&a), p(&b), p(&q));
        prop_assert_eq!(a.substitute("z", &p("z")).unwrap(), a.clone());
        prop_assert_eq!(
            (&a * &b).substitute("z", &q).unwrap(),
            &a.substitute("z", &q).unwrap() * &b.substitute("z", &q).unwrap()
        );
        prop_assert_eq!(
            (&a + &b).substitute("z", &q).unwrap(),
            &a.substitute("z", &q).unwrap() + &b.substitute("z", &q).unwrap()
        );
        let pt = pt.map(r);
        let mut moved = pt.clone();
        moved[2] = q.evaluate(&pt);
        prop_assert_eq!(a.substitute("z", &q).unwrap().evaluate(&pt), a.evaluate(&moved));
    }

    #[test]
    fn derivative_rules(a in poly(), b in poly(), k in -5i64..5) {
        let (a, b) = (p(&a), p(&b));
        for v in ["x", "y", "z"] {
            let d = |f: &P| f.partial_derivative(v).unwrap();
            prop_assert_eq!(d(&(&a + &b.scale(&r(k)))), &d(&a) + &d(&b).scale(&r(k)));
            prop_assert_eq!(d(&(&a * &b)), &(&d(&a) * &b) + &(&a * &d(&b)));
        }
    }

    #[test]
    fn reduction_mod_p_commutes_with_evaluation(a in poly(), pt in prop::array::uniform3(0i64..7)) {
        let a = p(&a);
        let f = PrimeField::new(7).unwrap();
        let red = a.reduce_to(&f).unwrap();
        let q = a.evaluate(&pt.map(r));
        // Integer data: the value is an integer.
        let expect = f.reduce_bigint(q.numer());
        prop_assert_eq!(red.evaluate(&pt.map(|v| f.elem(v))), expect);
    }

    #[test]
    fn gcd_divides_inputs(a in prop::collection::vec(-5i64..5, 1..5),
                          b in prop::collection::vec(-5i64..5, 1..5),
                          c in prop::collection::vec(-5i64..5, 1..4)) {
        let v = VarList::new(&["v"]);
        let u = |cs: &[i64]| {
            let s: Vec<String> = cs.iter().enumerate().map(|(i, c)| format!("({c})*v^{i}")).collect();
            MultiPoly::<Rational>::parse(&v, &s.join(" + ")).unwrap()
        };
        let c = u(&c);
        let (a, b) = (&u(&a) * &c, &u(&b) * &c);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = univariate_gcd(&a, &b).unwrap();
        let (_, gu) = g.to_univariate().unwrap();
        for f in [&a, &b] {
            let (_, fu) = f.to_univariate().unwrap();
            prop_assert!(fu.rem(&gu).is_zero());
        }
        if !c.is_constant() {
            prop_assert!(g.total_degree() >= c.total_degree());
        }
    }
}
