use serde::{Deserialize, Serialize};

use super::{Monomial, MultiPoly, PolyError, VarList};
use crate::exactring::{parse_rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u32>,
}

/// `{"vars":[...],"terms":[{"c":"-1/2","e":[1,0,2,0]},...]}` with terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl<C: Scalar> MultiPoly<C> {
    pub fn to_json(&self) -> PolyJson {
        let n = self.nvars();
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    c: c.to_string(),
                    e: m.exponents(n).to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("polynomial JSON serializes")
    }
}

impl MultiPoly<Rational> {
    pub fn from_json(j: &PolyJson) -> Result<Self, PolyError> {
        let vars = VarList::new(&j.vars);
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.e.len() != vars.len() {
                return Err(PolyError::Json(format!(
                    "exponent vector {:?} does not match {} variables",
                    t.e,
                    vars.len()
                )));
            }
            terms.push((Monomial::from_exponents(&t.e), parse_rational(&t.c)?));
        }
        Ok(Self::from_terms(&vars, &(), terms))
    }

    pub fn from_json_str(s: &str) -> Result<Self, PolyError> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| PolyError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format() {
        let p = MultiPoly::parse(&VarList::xyzv(), "-1/2*x*z^2 + v").unwrap();
        assert_eq!(
            p.to_json_string(),
            r#"{"vars":["x","y","z","v"],"terms":[{"c":"-1/2","e":[1,0,2,0]},{"c":"1","e":[0,0,0,1]}]}"#
        );
        assert_eq!(MultiPoly::from_json_str(&p.to_json_string()).unwrap(), p);
    }

    #[test]
    fn rejects_bad_arity() {
        let s = r#"{"vars":["x","y"],"terms":[{"c":"1","e":[1]}]}"#;
        assert!(matches!(MultiPoly::from_json_str(s), Err(PolyError::Json(_))));
    }
}
