use serde::Serialize;

use super::certificate::{paren, Evidence, MultiplicityCertificate};
use super::family::{xyz, FamilyPolys};
use super::LinkError;
use crate::exactring::Rational;
use crate::groebner::{buchberger, elimination_ideal, saturate, GbOptions, IdealBasis};
use crate::mpoly::{MultiPoly, VarList};

/// The square factor along `z = x + y - 2`: `(x+y-1)^2 (x-2)(y-2)`.
pub const SQUARE_FACTOR: &str = "(x + y - 1)^2*(x - 2)*(y - 2)";
/// Defining forms of the line `L`.
pub const LINE_L: [&str; 2] = ["x + y - 1", "z + 1"];

fn names() -> Vec<String> {
    VarList::xyz().names().to_vec()
}

/// Certificate that the torsion of the Whitehead link vanishes to order two
/// along the line `L = (x+y-1, z+1)` of its geometric component.
pub fn whitehead_divisor_check(opts: &GbOptions) -> Result<MultiplicityCertificate, LinkError> {
    let fam = FamilyPolys::new(1);
    let vars = VarList::xyz();
    let line: Vec<MultiPoly<Rational>> = LINE_L.iter().map(|s| xyz(s)).collect();
    let mut cert = MultiplicityCertificate::new(&vars, &line, 2);
    let red = paren(&fam.reducible);
    let evidence = vec![
        Evidence::Identity {
            name: "f restricted to z = x+y-2 has the square factor".into(),
            vars: names(),
            lhs: paren(&fam.f_exp),
            substitutions: vec![("z".into(), "x + y - 2".into())],
            rhs: SQUARE_FACTOR.into(),
            holds: false,
        },
        Evidence::Identity {
            name: "x = 2, z = y lies on the reducible locus".into(),
            vars: names(),
            lhs: red.clone(),
            substitutions: vec![("x".into(), "2".into()), ("z".into(), "y".into())],
            rhs: "0".into(),
            holds: false,
        },
        Evidence::Identity {
            name: "y = 2, z = x lies on the reducible locus".into(),
            vars: names(),
            lhs: red,
            substitutions: vec![("y".into(), "2".into()), ("z".into(), "x".into())],
            rhs: "0".into(),
            holds: false,
        },
        Evidence::Identity {
            name: "L lies on the geometric component".into(),
            vars: names(),
            lhs: paren(&fam.f_exp),
            substitutions: vec![("y".into(), "1 - x".into()), ("z".into(), "-1".into())],
            rhs: "0".into(),
            holds: false,
        },
        Evidence::Membership {
            name: "tau/2 vanishes on L".into(),
            vars: names(),
            poly: fam.tau_exp.to_string(),
            ideal: LINE_L.iter().map(|s| s.to_string()).collect(),
            holds: false,
        },
        Evidence::Identity {
            name: "tau/2 = -(x+y-1) + (z+1)".into(),
            vars: names(),
            lhs: fam.tau_exp.to_string(),
            substitutions: vec![],
            rhs: "-(x + y - 1) + (z + 1)".into(),
            holds: false,
        },
        Evidence::ConstantRank {
            name: "L is cut out transversally".into(),
            vars: names(),
            forms: LINE_L.iter().map(|s| s.to_string()).collect(),
            rank: 2,
            holds: false,
        },
    ];
    for e in evidence {
        cert.push(e, opts)?;
    }
    Ok(cert)
}

/// `D = xyz - y^2 - z^2 - x + 2`.
pub const DIAGONAL_D: &str = "x*y*z - y^2 - z^2 - x + 2";
pub const DIAGONAL_EXPECTED: &str = "(x + y - 1)*(x - y - 1)*(x - 2)*x";

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalReport {
    pub basis: Vec<String>,
    pub expected: String,
    /// The eliminated ideal is exactly the principal ideal of the expected quartic.
    pub principal_match: bool,
    pub expected_in_ideal: bool,
    pub ideal_in_expected: bool,
    /// Mutual radical membership, consulted when the ideals differ.
    pub radical_match: bool,
    /// Unit relating the single basis element to the expected quartic.
    pub unit: Option<String>,
}

impl DiagonalReport {
    pub fn passed(&self) -> bool {
        self.principal_match || self.radical_match
    }
}

fn in_radical(ideal: &IdealBasis<Rational>, g: &MultiPoly<Rational>, opts: &GbOptions) -> Result<bool, LinkError> {
    Ok(buchberger(&saturate(ideal, g, opts)?, opts)?.is_trivial())
}

/// Eliminates `z` from `(f, D)` and compares with `(x+y-1)(x-y-1)(x-2)x`.
pub fn diagonal_elimination_check(opts: &GbOptions) -> Result<DiagonalReport, LinkError> {
    let fam = FamilyPolys::new(1);
    let ideal = IdealBasis::grevlex(vec![fam.f_exp.clone(), xyz(DIAGONAL_D)])?;
    let elim = elimination_ideal(&ideal, &["z"], opts)?;
    let elim_gb = buchberger(&elim, opts)?;
    let expected = xyz(DIAGONAL_EXPECTED);
    let expected_ideal = IdealBasis::grevlex(vec![expected.clone()])?;
    let expected_gb = buchberger(&expected_ideal, opts)?;

    let expected_in_ideal = elim_gb.contains(&expected)?;
    let mut ideal_in_expected = true;
    for g in elim_gb.elements() {
        ideal_in_expected &= expected_gb.contains(g)?;
    }
    let principal_match = expected_in_ideal && ideal_in_expected;
    let radical_match = principal_match || {
        let mut ok = in_radical(&elim, &expected, opts)?;
        for g in elim_gb.elements() {
            ok &= in_radical(&expected_ideal, g, opts)?;
        }
        ok
    };
    let unit = match elim_gb.elements() {
        [g] => g.unit_ratio(&expected).map(|u| u.to_string()),
        _ => None,
    };
    Ok(DiagonalReport {
        basis: elim_gb.elements().iter().map(|p| p.to_string()).collect(),
        expected: expected.to_string(),
        principal_match,
        expected_in_ideal,
        ideal_in_expected,
        radical_match,
        unit,
    })
}
