use serde::Serialize;

use crate::chebfam::{family_in, Kind};
use crate::exactring::Rational;
use crate::mpoly::{MultiPoly, VarList};

/// Character-variety and torsion polynomials of the twisted Whitehead link
/// `W_{2n-1}` (`n = 1` is the Whitehead link itself).
#[derive(Debug, Clone)]
pub struct FamilyPolys {
    pub n: i64,
    /// `xy S_{n-1} - (xy - z) S_{n-2} - z S_n` in `(x, y, z, v)`.
    pub f_n: MultiPoly<Rational>,
    /// `(2 - x - y + z) S_{n-1} + (4 - 2x - 2y + xy) P_{n-2}` in `(x, y, z, v)`.
    pub tau_n: MultiPoly<Rational>,
    /// `x^2 + y^2 + z^2 - xyz - 2 - v`.
    pub trace_rel: MultiPoly<Rational>,
    /// `x^2 + y^2 + z^2 - xyz - 4` in `(x, y, z)`: the reducible characters.
    pub reducible: MultiPoly<Rational>,
    /// `f_n` with `v` eliminated, in `(x, y, z)`.
    pub f_exp: MultiPoly<Rational>,
    /// `tau_n` with `v` eliminated, in `(x, y, z)`.
    pub tau_exp: MultiPoly<Rational>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyJson {
    pub n: i64,
    pub f_n: String,
    pub tau_n: String,
    pub f_exp: String,
    pub tau_exp: String,
}

pub(crate) fn xyzv(src: &str) -> MultiPoly<Rational> {
    MultiPoly::parse(&VarList::xyzv(), src).expect("static polynomial parses")
}

pub(crate) fn xyz(src: &str) -> MultiPoly<Rational> {
    MultiPoly::parse(&VarList::xyz(), src).expect("static polynomial parses")
}

/// `v` as a polynomial in `(x, y, z, v)` free of `v`.
pub const V_EXPR: &str = "x^2 + y^2 + z^2 - x*y*z - 2";

pub(crate) fn cheb(kind: Kind, k: i64) -> MultiPoly<Rational> {
    family_in(&VarList::xyzv(), kind, k).expect("family index in range")
}

/// Replaces `v` by its trace expression and drops it from the variable list.
pub fn expand_v(p: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let sub = p.substitute("v", &xyzv(V_EXPR)).expect("v is a variable");
    sub.embed(&VarList::xyz()).expect("v no longer occurs")
}

impl FamilyPolys {
    pub fn new(n: i64) -> Self {
        assert!(n >= 1, "family index starts at 1");
        let s = |k| cheb(Kind::S, k);
        let f_n = &(&xyzv("x*y") * &s(n - 1)) - &(&(&xyzv("x*y - z") * &s(n - 2)) + &(&xyzv("z") * &s(n)));
        let tau_n =
            &(&xyzv("2 - x - y + z") * &s(n - 1)) + &(&xyzv("4 - 2*x - 2*y + x*y") * &cheb(Kind::P, n - 2));
        let f_exp = expand_v(&f_n);
        let tau_exp = expand_v(&tau_n);
        Self {
            n,
            f_n,
            tau_n,
            trace_rel: xyzv("x^2 + y^2 + z^2 - x*y*z - 2 - v"),
            reducible: xyz("x^2 + y^2 + z^2 - x*y*z - 4"),
            f_exp,
            tau_exp,
        }
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            n: self.n,
            f_n: self.f_n.to_string(),
            tau_n: self.tau_n.to_string(),
            f_exp: self.f_exp.to_string(),
            tau_exp: self.tau_exp.to_string(),
        }
    }
}
