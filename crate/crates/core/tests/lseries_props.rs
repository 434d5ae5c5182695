use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use wlink_core::exactring::{rational_from_i64, FpElem, PrimeField, Rational, Scalar};
use wlink_core::linkcheck::FamilyPolys;
use wlink_core::lseries::{
    classify_point, find_points, hensel_implicit, l_function, l_function_with_lift, l_survey,
    verdict_after_linear_change, FpPoint, LseriesError, Verdict,
};
use wlink_core::mpoly::MultiPoly;

const CASES: [(i64, u64); 6] = [(1, 5), (1, 7), (1, 11), (2, 7), (2, 11), (3, 7)];

fn study_points(n: i64, p: u64) -> Vec<FpPoint> {
    find_points(n, p).unwrap().into_iter().filter(FpPoint::in_study_set).collect()
}

/// A study-set point from one of the small cases, chosen by index.
fn study_point() -> impl Strategy<Value = FpPoint> {
    (0..CASES.len())
        .prop_map(|c| study_points(CASES[c].0, CASES[c].1))
        .prop_filter("case has study points", |v| !v.is_empty())
        .prop_flat_map(|v| (0..v.len()).prop_map(move |i| v[i].clone()))
}

fn fp(field: &PrimeField, poly: &MultiPoly<Rational>) -> MultiPoly<FpElem> {
    poly.reduce_to(field).unwrap()
}

fn residue_of(q: &Rational, m: u64) -> u64 {
    assert!(q.is_integer());
    q.numer().mod_floor(&BigInt::from(m)).try_into().unwrap()
}

#[test]
fn survey_grid_passes() {
    for (n, p) in CASES {
        let s = l_survey(n, p, 6, 3).unwrap();
        assert!(s.all_pass(), "n = {n}, p = {p}: {} failed", s.failed);
        assert_eq!(s.passed + s.failed, s.reports.len());
    }
}

#[test]
fn off_surface_points_are_refused() {
    let pt = classify_point(1, 7, (1, 1, 1)).unwrap();
    assert!(!pt.on_geometric);
    assert!(matches!(hensel_implicit(&pt, 4, 2, None), Err(LseriesError::NotOnSurface(_))));
}

#[test]
fn whitehead_study_points_lie_on_the_torsion_line() {
    // For the Whitehead link τ/2 = 2 + z - x - y, so L is that form evaluated along the lift.
    for p in [5, 7, 11, 13] {
        for pt in study_points(1, p) {
            let (x, y, z) = pt.coords;
            assert_eq!((2 + z + 2 * p - x - y) % p, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lifted_series_solves_the_equation_numerically(pt in study_point(), x0 in 0u64..5, y0 in 0u64..5) {
        let (prec, deg) = (6u32, 4u32);
        let lift = hensel_implicit(&pt, prec, deg, None).unwrap();
        prop_assert_eq!(lift.solve, 2);
        let p = pt.p as u128;
        let m = p.pow(prec.min(deg + 1));
        let (dx, dy) = (p * x0 as u128 % m, p * y0 as u128 % m);
        let mut w = 0u128;
        for t in 0..=deg {
            for j in 0..=t {
                let c = lift.series.coeff(t - j, j).residue() as u128 % m;
                w = (w + c * dx.pow(t - j) % m * dy.pow(j)) % m;
            }
        }
        let (a, b) = lift.series.center();
        let args = [
            rational_from_i64(a + (dx as i64)),
            rational_from_i64(b + (dy as i64)),
            rational_from_i64(w as i64),
        ];
        let val = FamilyPolys::new(pt.n).f_exp.evaluate(&args);
        prop_assert_eq!(residue_of(&val, m as u64), 0);
    }

    #[test]
    fn linear_terms_match_implicit_differentiation(pt in study_point()) {
        let r = l_function(&pt, 5, 3).unwrap();
        let field = PrimeField::new(pt.p).unwrap();
        let fam = FamilyPolys::new(pt.n);
        let (f, tau) = (fp(&field, &fam.f_exp), fp(&field, &fam.tau_exp));
        let c = [pt.coords.0, pt.coords.1, pt.coords.2].map(|v| field.elem(v as i64));
        let d = |q: &MultiPoly<FpElem>, v: &str| q.partial_derivative(v).unwrap().evaluate(&c);
        let fz_inv = d(&f, "z").inv().unwrap();
        let lx = d(&tau, "x") - d(&tau, "z") * d(&f, "x") * fz_inv;
        let ly = d(&tau, "y") - d(&tau, "z") * d(&f, "y") * fz_inv;
        prop_assert_eq!(r.const_val, tau.evaluate(&c).residue());
        prop_assert_eq!(r.lin_x, lx.residue());
        prop_assert_eq!(r.lin_y, ly.residue());
        prop_assert!(r.hensel_defect_zero);
    }

    #[test]
    fn more_precision_refines(pt in study_point()) {
        let small = l_function(&pt, 4, 2).unwrap();
        let big = l_function(&pt, 6, 4).unwrap();
        let m = pt.p.pow(4);
        for c in &small.series {
            let b = big.series.iter().find(|e| e.i == c.i && e.j == c.j).unwrap();
            prop_assert_eq!(b.r % m, c.r);
        }
        prop_assert_eq!(small.verdict, big.verdict);
    }

    #[test]
    fn verdict_is_coordinate_free(pt in study_point(), m in [-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3]) {
        let p = pt.p as i64;
        prop_assume!((m[0] * m[3] - m[1] * m[2]).rem_euclid(p) != 0);
        let r = l_function(&pt, 5, 3).unwrap();
        prop_assert_eq!(verdict_after_linear_change(&r, pt.p, m).unwrap(), r.verdict);
    }

    #[test]
    fn verdict_ignores_the_integer_lift(pt in study_point(), k in 1i64..=3) {
        let (a, b, c) = (pt.coords.0 as i64, pt.coords.1 as i64, pt.coords.2 as i64);
        let p = pt.p as i64;
        let base = l_function(&pt, 5, 3).unwrap();
        let shifted = l_function_with_lift(&pt, 5, 3, Some((a + k * p, b - k * p, c + p))).unwrap();
        prop_assert_eq!(shifted.taylor_mod_p, base.taylor_mod_p);
        prop_assert_eq!(shifted.verdict, Verdict::Pass);
        prop_assert_eq!(base.verdict, Verdict::Pass);
    }
}
