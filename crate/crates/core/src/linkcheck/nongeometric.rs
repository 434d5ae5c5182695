use serde::Serialize;

use super::certificate::{Evidence, MultiplicityCertificate};
use super::family::{xyzv, FamilyPolys};
use super::LinkError;
use crate::chebfam::parity_split;
use crate::exactring::{rational_from_i64, QuotModulus, Rational, UniPoly};
use crate::groebner::GbOptions;
use crate::mpoly::{MultiPoly, VarList};

#[derive(Debug, Clone, Serialize)]
pub struct NongeometricReport {
    pub n: i64,
    pub g_odd: String,
    pub g_even: String,
    /// `tau_n ≡ 0` coefficient-wise modulo `g_even` (vacuous when `g_even = 1`).
    pub even_vanishes: bool,
    /// `(2 - v) tau_n ≡ 2 (2 - x)(2 - y)` modulo `g_odd`.
    pub odd_identity: bool,
    /// `trace_rel` at `x = 2` equals `(y - z)^2 - (v - 2)`, and symmetrically at `y = 2`.
    pub line_identity: bool,
    /// `g_odd(2) ≠ 0`, so `(y-z)^2 = v-2` splits into two distinct lines and
    /// `2 - x` vanishes to order one along each.
    pub lines_distinct: bool,
    /// The lines `(x - 2, y - z - c)` have constant rank-2 Jacobian.
    pub line_transversal: bool,
}

impl NongeometricReport {
    pub fn passed(&self) -> bool {
        self.even_vanishes && self.odd_identity && self.line_identity && self.lines_distinct && self.line_transversal
    }
}

fn vanishes_mod(p: &MultiPoly<Rational>, g: &UniPoly) -> Result<bool, LinkError> {
    if g.is_one() {
        return Ok(true);
    }
    let m = QuotModulus::new(g.clone()).map_err(|e| LinkError::IdentityFailure(e.to_string()))?;
    Ok(p.to_quotient("v", &m)?.is_zero())
}

/// Torsion on the non-geometric components `S_{n-1}(v) = 0` of `W_{2n-1}`.
pub fn nongeometric_check(n: i64, opts: &GbOptions) -> Result<NongeometricReport, LinkError> {
    let fam = FamilyPolys::new(n);
    let (odd, even) = parity_split(n)?;
    let even_vanishes = vanishes_mod(&fam.tau_n, &even)?;
    let odd_diff = &(&xyzv("2 - v") * &fam.tau_n) - &xyzv("2*(2 - x)*(2 - y)");
    let odd_identity = vanishes_mod(&odd_diff, &odd)?;
    let line_identity = fam.trace_rel.substitute("x", &xyzv("2"))? == xyzv("(y - z)^2 - (v - 2)")
        && fam.trace_rel.substitute("y", &xyzv("2"))? == xyzv("(x - z)^2 - (v - 2)");
    let lines_distinct = odd.eval(&rational_from_i64(2)) != rational_from_i64(0);

    // the line constant c = ±sqrt(v0 - 2) does not enter the Jacobian
    let mut cert = MultiplicityCertificate::new(&VarList::xyz(), &[], 1);
    let line_transversal = cert.push(
        Evidence::ConstantRank {
            name: "non-geometric line is transversal".into(),
            vars: vec!["x".into(), "y".into(), "z".into()],
            forms: vec!["x - 2".into(), "y - z".into()],
            rank: 2,
            holds: false,
        },
        opts,
    )?;
    Ok(NongeometricReport {
        n,
        g_odd: odd.to_string(),
        g_even: even.to_string(),
        even_vanishes,
        odd_identity,
        line_identity,
        lines_distinct,
        line_transversal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_components() {
        let r = nongeometric_check(3, &GbOptions::default()).unwrap();
        assert_eq!(r.g_odd, "v - 1");
        assert_eq!(r.g_even, "v + 1");
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn n2_has_no_even_factor() {
        let r = nongeometric_check(2, &GbOptions::default()).unwrap();
        assert_eq!(r.g_even, "1");
        assert!(r.passed());
    }

    #[test]
    fn wrong_sign_is_rejected() {
        // the opposite sign of the odd identity must fail, so the check is not vacuous
        let fam = FamilyPolys::new(3);
        let (odd, _) = parity_split(3).unwrap();
        let bad = &(&xyzv("2 - v") * &fam.tau_n) + &xyzv("2*(2 - x)*(2 - y)");
        assert!(!vanishes_mod(&bad, &odd).unwrap());
    }
}
