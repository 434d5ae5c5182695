use serde::Serialize;

use super::family::{expand_v, xyzv, FamilyPolys};
use super::LinkError;
use crate::chebfam::parity_split;
use crate::exactring::Rational;
use crate::groebner::{buchberger, buchberger_split, GbOptions, IdealBasis, MonomialOrder};
use crate::mpoly::MultiPoly;

/// Which polynomial system decides smoothness of the geometric component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothFormulation {
    /// `(f_exp, ∂x f_exp, ∂y f_exp, ∂z f_exp)` in `ℚ[x, y, z]`.
    Direct,
    /// `(trace_rel, f_n, D_x, D_y, D_z)` in `ℚ[x, y, z, v]`, where
    /// `D_w = ∂_w f_n + ∂_v f_n · ∂_w(x²+y²+z²−xyz)`. Modulo `trace_rel` the
    /// ring is `ℚ[x, y, z]` and the generators map onto the direct system, so
    /// both ideals contain 1 together. Much smaller coefficients over ℚ.
    TraceCoordinates,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParityBranch {
    pub parity: &'static str,
    pub factor: String,
    /// Moduli the computation actually ran over (more than one after a split).
    pub moduli: Vec<String>,
    pub trivial: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothReport {
    pub n: i64,
    pub formulation: SmoothFormulation,
    /// For the trace-coordinate system: each generator maps to the matching
    /// direct generator under `v := x²+y²+z²−xyz−2`.
    pub correspondence_verified: bool,
    /// The singular-point system of the geometric component has basis {1}.
    pub geometric_trivial: bool,
    pub geometric_gb_hash: String,
    pub parity: Vec<ParityBranch>,
}

impl SmoothReport {
    pub fn passed(&self) -> bool {
        self.correspondence_verified && self.geometric_trivial && self.parity.iter().all(|b| b.trivial)
    }
}

/// The direct singular-point system `(f_exp, ∂x, ∂y, ∂z)` over ℚ.
pub fn geometric_singular_system(fam: &FamilyPolys) -> Result<Vec<MultiPoly<Rational>>, LinkError> {
    let f = &fam.f_exp;
    Ok(vec![
        f.clone(),
        f.partial_derivative("x")?,
        f.partial_derivative("y")?,
        f.partial_derivative("z")?,
    ])
}

/// The same system written in `(x, y, z, v)`; see [`SmoothFormulation::TraceCoordinates`].
pub fn trace_singular_system(fam: &FamilyPolys) -> Result<Vec<MultiPoly<Rational>>, LinkError> {
    let f = &fam.f_n;
    let fv = f.partial_derivative("v")?;
    let chain = |w: &str, dv: &str| -> Result<MultiPoly<Rational>, LinkError> {
        Ok(&f.partial_derivative(w)? + &(&fv * &xyzv(dv)))
    };
    Ok(vec![
        fam.trace_rel.clone(),
        f.clone(),
        chain("x", "2*x - y*z")?,
        chain("y", "2*y - x*z")?,
        chain("z", "2*z - x*y")?,
    ])
}

fn correspondence_holds(fam: &FamilyPolys) -> Result<bool, LinkError> {
    let direct = geometric_singular_system(fam)?;
    let trace = trace_singular_system(fam)?;
    Ok(expand_v(&trace[0]).is_zero() && trace[1..].iter().zip(&direct).all(|(t, d)| expand_v(t) == *d))
}

pub fn smoothness_check(n: i64, opts: &GbOptions) -> Result<SmoothReport, LinkError> {
    smoothness_check_with(n, SmoothFormulation::TraceCoordinates, opts)
}

/// Smoothness of the geometric component, plus the singular-point systems of
/// the non-geometric components over `ℚ[v]/(g)` for each parity factor `g`.
pub fn smoothness_check_with(
    n: i64,
    formulation: SmoothFormulation,
    opts: &GbOptions,
) -> Result<SmoothReport, LinkError> {
    let fam = FamilyPolys::new(n);
    let (system, correspondence_verified) = match formulation {
        SmoothFormulation::Direct => (geometric_singular_system(&fam)?, true),
        SmoothFormulation::TraceCoordinates => (trace_singular_system(&fam)?, correspondence_holds(&fam)?),
    };
    let gb = buchberger(&IdealBasis::grevlex(system)?, opts)?;
    let mut parity = Vec::new();
    if n >= 2 {
        let (odd, even) = parity_split(n)?;
        let gens = vec![
            fam.trace_rel.clone(),
            xyzv("2*x - y*z"),
            xyzv("2*y - x*z"),
            xyzv("2*z - x*y"),
        ];
        for (name, g) in [("odd", odd), ("even", even)] {
            if g.is_one() {
                continue;
            }
            let branches = buchberger_split(&gens, "v", &g, &MonomialOrder::grevlex(3), opts)?;
            parity.push(ParityBranch {
                parity: name,
                factor: g.to_string(),
                moduli: branches.iter().map(|b| b.modulus.to_string()).collect(),
                trivial: branches.iter().all(|b| b.basis.is_trivial()),
            });
        }
    }
    Ok(SmoothReport {
        n,
        formulation,
        correspondence_verified,
        geometric_trivial: gb.is_trivial(),
        geometric_gb_hash: gb.hash(),
        parity,
    })
}
