use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::LinkError;
use crate::exactring::Rational;
use crate::groebner::{buchberger, saturate_by_factors, GbOptions, IdealBasis};
use crate::mpoly::{MultiPoly, VarList};

/// One exactly checkable statement. Polynomials are stored as expression
/// strings (unexpanded where the structure matters) so a certificate can be
/// re-verified from its JSON alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// `lhs` with `substitutions` applied (in order) expands to `rhs`.
    Identity {
        name: String,
        vars: Vec<String>,
        lhs: String,
        #[serde(default)]
        substitutions: Vec<(String, String)>,
        rhs: String,
        holds: bool,
    },
    /// `poly` lies in the ideal generated by `ideal`.
    Membership {
        name: String,
        vars: Vec<String>,
        poly: String,
        ideal: Vec<String>,
        holds: bool,
    },
    /// The Jacobian matrix of `forms` is constant with the given rank.
    ConstantRank {
        name: String,
        vars: Vec<String>,
        forms: Vec<String>,
        rank: usize,
        holds: bool,
    },
    /// `sat(left; factors) = sat(right; factors)`, saturating factor by factor.
    SaturationEquality {
        name: String,
        vars: Vec<String>,
        left: Vec<String>,
        right: Vec<String>,
        factors: Vec<String>,
        gb_hash_left: String,
        gb_hash_right: String,
        holds: bool,
    },
    /// `sat(gens; factors) ≠ (1)`.
    SaturationNontrivial {
        name: String,
        vars: Vec<String>,
        gens: Vec<String>,
        factors: Vec<String>,
        gb_hash: String,
        holds: bool,
    },
}

fn ring(vars: &[String]) -> VarList {
    VarList::new(vars)
}

fn parse(vars: &VarList, s: &str) -> Result<MultiPoly<Rational>, LinkError> {
    Ok(MultiPoly::parse(vars, s)?)
}

fn parse_all(vars: &VarList, ss: &[String]) -> Result<Vec<MultiPoly<Rational>>, LinkError> {
    ss.iter().map(|s| parse(vars, s)).collect()
}

/// Rank of a rational matrix by fraction-exact elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = Rational::one() / rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone() * inv.clone();
                for c in col..ncols {
                    let d = f.clone() * rows[rank][c].clone();
                    rows[r][c] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn saturated_basis(
    vars: &VarList,
    gens: &[String],
    factors: &[String],
    opts: &GbOptions,
) -> Result<crate::groebner::GroebnerBasis<Rational>, LinkError> {
    let ideal = IdealBasis::grevlex(parse_all(vars, gens)?)?;
    let sat = saturate_by_factors(&ideal, &parse_all(vars, factors)?, opts)?;
    Ok(buchberger(&sat, opts)?)
}

impl Evidence {
    pub fn name(&self) -> &str {
        match self {
            Evidence::Identity { name, .. }
            | Evidence::Membership { name, .. }
            | Evidence::ConstantRank { name, .. }
            | Evidence::SaturationEquality { name, .. }
            | Evidence::SaturationNontrivial { name, .. } => name,
        }
    }

    pub fn holds(&self) -> bool {
        match self {
            Evidence::Identity { holds, .. }
            | Evidence::Membership { holds, .. }
            | Evidence::ConstantRank { holds, .. }
            | Evidence::SaturationEquality { holds, .. }
            | Evidence::SaturationNontrivial { holds, .. } => *holds,
        }
    }

    /// Recomputes the statement from scratch and stores the outcome (and
    /// hashes) in the evidence.
    pub fn evaluate(&mut self, opts: &GbOptions) -> Result<bool, LinkError> {
        let ok = match self {
            Evidence::Identity {
                vars,
                lhs,
                substitutions,
                rhs,
                holds,
                ..
            } => {
                let vl = ring(vars);
                let mut l = parse(&vl, lhs)?;
                for (var, q) in substitutions.iter() {
                    l = l.substitute(var, &parse(&vl, q)?)?;
                }
                *holds = l == parse(&vl, rhs)?;
                *holds
            }
            Evidence::Membership {
                vars, poly, ideal, holds, ..
            } => {
                let vl = ring(vars);
                let gb = buchberger(&IdealBasis::grevlex(parse_all(&vl, ideal)?)?, opts)?;
                *holds = gb.contains(&parse(&vl, poly)?)?;
                *holds
            }
            Evidence::ConstantRank {
                vars,
                forms,
                rank,
                holds,
                ..
            } => {
                let vl = ring(vars);
                let mut rows = Vec::new();
                let mut constant = true;
                for f in parse_all(&vl, forms)? {
                    let mut row = Vec::new();
                    for v in vl.names() {
                        let d = f.partial_derivative(v)?;
                        constant &= d.is_constant() || d.is_zero();
                        row.push(d.constant_term());
                    }
                    rows.push(row);
                }
                *holds = constant && rational_rank(rows) == *rank;
                *holds
            }
            Evidence::SaturationEquality {
                vars,
                left,
                right,
                factors,
                gb_hash_left,
                gb_hash_right,
                holds,
                ..
            } => {
                let vl = ring(vars);
                let a = saturated_basis(&vl, left, factors, opts)?;
                let b = saturated_basis(&vl, right, factors, opts)?;
                *gb_hash_left = a.hash();
                *gb_hash_right = b.hash();
                *holds = a.elements() == b.elements();
                *holds
            }
            Evidence::SaturationNontrivial {
                vars,
                gens,
                factors,
                gb_hash,
                holds,
                ..
            } => {
                let vl = ring(vars);
                let gb = saturated_basis(&vl, gens, factors, opts)?;
                *gb_hash = gb.hash();
                *holds = !gb.is_trivial();
                *holds
            }
        };
        Ok(ok)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityCertificate {
    pub vars: Vec<String>,
    /// Generators of the component the multiplicity refers to.
    pub component: Vec<String>,
    pub multiplicity: u32,
    pub evidence: Vec<Evidence>,
}

impl MultiplicityCertificate {
    pub fn new(vars: &VarList, component: &[MultiPoly<Rational>], multiplicity: u32) -> Self {
        Self {
            vars: vars.names().to_vec(),
            component: component.iter().map(|p| p.to_string()).collect(),
            multiplicity,
            evidence: Vec::new(),
        }
    }

    /// Evaluates and appends a piece of evidence.
    pub fn push(&mut self, mut e: Evidence, opts: &GbOptions) -> Result<bool, LinkError> {
        let ok = e.evaluate(opts)?;
        self.evidence.push(e);
        Ok(ok)
    }

    pub fn holds(&self) -> bool {
        !self.evidence.is_empty() && self.evidence.iter().all(Evidence::holds)
    }

    /// Re-runs every listed statement from the stored expressions. Succeeds
    /// only if each outcome (and recorded GB hash) is reproduced.
    pub fn reverify(&self, opts: &GbOptions) -> Result<bool, LinkError> {
        let mut ok = !self.evidence.is_empty();
        for e in &self.evidence {
            let mut fresh = e.clone();
            fresh.evaluate(opts)?;
            ok &= fresh == *e && fresh.holds();
        }
        Ok(ok)
    }
}

/// `(p)` as an expression string, for building structured identities.
pub(crate) fn paren<C: crate::exactring::Scalar>(p: &MultiPoly<C>) -> String {
    format!("({p})")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &VarList) -> Vec<String> {
        v.names().to_vec()
    }

    #[test]
    fn rank_of_small_matrices() {
        let r = |rows: &[&[i64]]| {
            rational_rank(
                rows.iter()
                    .map(|row| row.iter().map(|&x| Rational::from_integer(x.into())).collect())
                    .collect(),
            )
        };
        assert_eq!(r(&[&[1, 1, 0], &[0, 0, 1]]), 2);
        assert_eq!(r(&[&[1, 2], &[2, 4]]), 1);
        assert_eq!(r(&[&[0, 0]]), 0);
    }

    #[test]
    fn display_round_trips_through_parse() {
        let v = VarList::xyzv();
        let p = MultiPoly::parse(&v, "-1/2*x^2*y + 3/7*z*v - 5").unwrap();
        assert_eq!(MultiPoly::parse(&v, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn evidence_detects_false_statements() {
        let v = VarList::xyz();
        let opts = GbOptions::default();
        let mut e = Evidence::Identity {
            name: "wrong".into(),
            vars: names(&v),
            lhs: "(x+y)^2".into(),
            substitutions: vec![],
            rhs: "x^2+y^2".into(),
            holds: true,
        };
        assert!(!e.evaluate(&opts).unwrap());
        let mut e = Evidence::Membership {
            name: "not member".into(),
            vars: names(&v),
            poly: "x".into(),
            ideal: vec!["x^2".into()],
            holds: true,
        };
        assert!(!e.evaluate(&opts).unwrap());
        let mut e = Evidence::ConstantRank {
            name: "nonlinear".into(),
            vars: names(&v),
            forms: vec!["x^2".into(), "y".into()],
            rank: 2,
            holds: true,
        };
        assert!(!e.evaluate(&opts).unwrap());
    }

    #[test]
    fn tampered_certificate_fails_reverify() {
        let v = VarList::xyz();
        let opts = GbOptions::default();
        let mut c = MultiplicityCertificate::new(&v, &[], 1);
        c.push(
            Evidence::Identity {
                name: "square".into(),
                vars: names(&v),
                lhs: "(x+y)^2".into(),
                substitutions: vec![("y".into(), "x".into())],
                rhs: "4*x^2".into(),
                holds: false,
            },
            &opts,
        )
        .unwrap();
        assert!(c.holds());
        assert!(c.reverify(&opts).unwrap());
        if let Evidence::Identity { rhs, .. } = &mut c.evidence[0] {
            *rhs = "3*x^2".into();
        }
        assert!(!c.reverify(&opts).unwrap());
    }
}
