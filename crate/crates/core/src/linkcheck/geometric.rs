use super::certificate::{paren, Evidence, MultiplicityCertificate};
use super::family::{cheb, xyzv, FamilyPolys};
use super::LinkError;
use crate::chebfam::Kind;
use crate::exactring::Rational;
use crate::groebner::GbOptions;
use crate::mpoly::{MultiPoly, VarList};

/// The polynomials of the localized description of the geometric component
/// of `W_{2n-1}` near its torsion divisor.
#[derive(Debug, Clone)]
pub struct GeometricData {
    pub n: i64,
    /// `2 T_n - v + 2`
    pub u: MultiPoly<Rational>,
    /// `U z - (T_n + T_{n-1})(x + y - 2)`
    pub zrel: MultiPoly<Rational>,
    /// `U xy - T_n (v + 2)(x + y - 2)`
    pub g: MultiPoly<Rational>,
    /// `(T_n + 2)(x + y) - (v + 2)`
    pub h: MultiPoly<Rational>,
    /// `(T_n + 2)(x - y) U`, the first 2×2 minor.
    pub m: MultiPoly<Rational>,
    /// Factors of `Π = S_{n-1} (v - 2)(T_n - 2)(T_n + 2) U`.
    pub pi: Vec<MultiPoly<Rational>>,
}

impl GeometricData {
    pub fn new(n: i64) -> Self {
        let tn = cheb(Kind::T, n);
        let tn1 = cheb(Kind::T, n - 1);
        let u = &(&(&xyzv("2") * &tn) - &xyzv("v")) + &xyzv("2");
        let line = xyzv("x + y - 2");
        let tn_plus_2 = &tn + &xyzv("2");
        let zrel = &(&u * &xyzv("z")) - &(&(&tn + &tn1) * &line);
        let g = &(&u * &xyzv("x*y")) - &(&(&tn * &xyzv("v + 2")) * &line);
        let h = &(&tn_plus_2 * &xyzv("x + y")) - &xyzv("v + 2");
        let m = &(&tn_plus_2 * &xyzv("x - y")) * &u;
        let pi = vec![
            cheb(Kind::S, n - 1),
            xyzv("v - 2"),
            &tn - &xyzv("2"),
            tn_plus_2,
            u.clone(),
        ];
        Self { n, u, zrel, g, h, m, pi }
    }
}

fn strings(ps: &[MultiPoly<Rational>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// Certificate that the torsion has multiplicity two on the geometric
/// component of `W_{2n-1}`:
/// (i) the linear-in-`z` form of `tau_n`;
/// (ii) `sat((trace_rel, f_n, tau_n); Π) = sat((Zrel, G, H^2); Π)`;
/// (iii) `sat((Zrel, G, H); Π)` stays nontrivial after also saturating by `M`.
pub fn geometric_mult_check(n: i64, opts: &GbOptions) -> Result<MultiplicityCertificate, LinkError> {
    assert!(n >= 2, "geometric multiplicity check needs n >= 2");
    let fam = FamilyPolys::new(n);
    let d = GeometricData::new(n);
    let vars = VarList::xyzv();
    let names = vars.names().to_vec();
    let mut cert = MultiplicityCertificate::new(&vars, &[fam.trace_rel.clone(), fam.f_n.clone()], 2);

    let s = paren(&cheb(Kind::S, n - 1));
    let p = paren(&cheb(Kind::P, n - 2));
    let factors = strings(&d.pi);
    let mut with_m = factors.clone();
    with_m.push(d.m.to_string());
    let evidence = vec![
        Evidence::Identity {
            name: "tau_n is linear in z".into(),
            vars: names.clone(),
            lhs: format!("-{}", paren(&fam.tau_n)),
            substitutions: vec![],
            rhs: format!("(x + y - 2)*({s} + 2*{p}) - x*y*{p} - z*{s}"),
            holds: false,
        },
        Evidence::SaturationEquality {
            name: "localized ideal equals (Zrel, G, H^2)".into(),
            vars: names.clone(),
            left: strings(&[fam.trace_rel.clone(), fam.f_n.clone(), fam.tau_n.clone()]),
            right: vec![d.zrel.to_string(), d.g.to_string(), format!("{}^2", paren(&d.h))],
            factors: factors.clone(),
            gb_hash_left: String::new(),
            gb_hash_right: String::new(),
            holds: false,
        },
        Evidence::SaturationNontrivial {
            name: "(Zrel, G, H) is a nonempty locus".into(),
            vars: names.clone(),
            gens: strings(&[d.zrel.clone(), d.g.clone(), d.h.clone()]),
            factors,
            gb_hash: String::new(),
            holds: false,
        },
        Evidence::SaturationNontrivial {
            name: "(Zrel, G, H) is not contained in the minor M".into(),
            vars: names,
            gens: strings(&[d.zrel.clone(), d.g.clone(), d.h.clone()]),
            factors: with_m,
            gb_hash: String::new(),
            holds: false,
        },
    ];
    for e in evidence {
        cert.push(e, opts)?;
    }
    Ok(cert)
}

/// Whether the ideal equality (ii) still holds when `T_n + 2` is left out of `Π`.
pub fn equality_without_tn_plus_2(n: i64, opts: &GbOptions) -> Result<bool, LinkError> {
    let fam = FamilyPolys::new(n);
    let d = GeometricData::new(n);
    let mut factors = d.pi.clone();
    factors.remove(3);
    let mut e = Evidence::SaturationEquality {
        name: "equality without T_n + 2".into(),
        vars: VarList::xyzv().names().to_vec(),
        left: strings(&[fam.trace_rel, fam.f_n, fam.tau_n]),
        right: vec![d.zrel.to_string(), d.g.to_string(), format!("{}^2", paren(&d.h))],
        factors: strings(&factors),
        gb_hash_left: String::new(),
        gb_hash_right: String::new(),
        holds: false,
    };
    e.evaluate(opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minor_at_n2() {
        let d = GeometricData::new(2);
        assert_eq!(d.m, xyzv("(v^2)*(x - y)*(2*v^2 - v - 2)"));
    }

    #[test]
    fn linear_in_z_identity_up_to_n6() {
        for n in 2..=6 {
            let fam = FamilyPolys::new(n);
            let s = cheb(Kind::S, n - 1);
            let p = cheb(Kind::P, n - 2);
            let rhs = &(&(&xyzv("x + y - 2") * &(&s + &(&xyzv("2") * &p))) - &(&xyzv("x*y") * &p)) - &(&xyzv("z") * &s);
            assert_eq!(-&fam.tau_n, rhs, "n={n}");
        }
    }

    #[test]
    fn certificate_n2() {
        let opts = GbOptions::default();
        let c = geometric_mult_check(2, &opts).unwrap();
        assert!(c.holds(), "{c:#?}");
        assert!(c.reverify(&opts).unwrap());
    }
}
