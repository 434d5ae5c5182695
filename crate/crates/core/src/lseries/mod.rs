//! Torsion along the geometric component over `Z_p`.
//!
//! A point of `f̄_n = 0` over `F_p` with a nonvanishing partial derivative is
//! lifted by Newton iteration to an implicit function in two local
//! coordinates; substituting it into `τ_n` gives the series `L`, whose
//! vanishing constant and linear Taylor coefficients mod `p` certify a zero
//! of multiplicity at least two.

mod series;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactring::{FpElem, PrimeField, RingError, Scalar, ZpnCtx, ZpnElem};
use crate::linkcheck::FamilyPolys;
use crate::mpoly::{MultiPoly, PolyError};

pub use series::{PSeries2, SeriesCoeff};

pub const DEFAULT_PRECISION: u32 = 8;
pub const DEFAULT_DEGREE: u32 = 4;
/// Largest `p³` enumerated by [`find_points`].
pub const POINT_CAP: u64 = 2_000_000;
const MAX_NEWTON_STEPS: usize = 64;
const VARS: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Error)]
pub enum LseriesError {
    #[error("p^3 = {0} exceeds the enumeration cap {POINT_CAP}")]
    CapExceeded(u64),
    #[error("Newton iteration stalled: {0}")]
    NewtonStall(String),
    #[error("point {0:?} is not a regular point of the reduced surface")]
    NotRegular((u64, u64, u64)),
    #[error("point {0:?} does not lie on the reduced surface")]
    NotOnSurface((u64, u64, u64)),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A point of `F_p³` with the flags that decide whether it is studied.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FpPoint {
    pub n: i64,
    pub p: u64,
    pub coords: (u64, u64, u64),
    /// `f̄_n = 0`
    pub on_geometric: bool,
    /// `τ̄_n = 0`
    pub nonacyclic: bool,
    /// Off the reducible locus `x² + y² + z² - xyz - 4 = 0`.
    pub abs_irreducible: bool,
    pub dz_nonzero: bool,
    /// Residues of `(∂_x f̄_n, ∂_y f̄_n, ∂_z f̄_n)`.
    pub partials: [u64; 3],
}

impl FpPoint {
    pub fn in_study_set(&self) -> bool {
        self.on_geometric && self.nonacyclic && self.abs_irreducible && self.dz_nonzero
    }

    pub fn is_regular(&self) -> bool {
        self.partials.iter().any(|&d| d != 0)
    }

    /// Variable solved for by the implicit function: `z` when possible.
    pub fn solve_for(&self) -> Option<usize> {
        [2, 0, 1].into_iter().find(|&k| self.partials[k] != 0)
    }
}

/// The family reduced to one prime, with derivatives, ready for evaluation.
struct Reduced {
    f: MultiPoly<FpElem>,
    tau: MultiPoly<FpElem>,
    reducible: MultiPoly<FpElem>,
    df: [MultiPoly<FpElem>; 3],
}

impl Reduced {
    fn new(fam: &FamilyPolys, field: &PrimeField) -> Result<Self, LseriesError> {
        let f: MultiPoly<FpElem> = fam.f_exp.reduce_to(field)?;
        let df = [
            f.partial_derivative("x")?,
            f.partial_derivative("y")?,
            f.partial_derivative("z")?,
        ];
        Ok(Self {
            tau: fam.tau_exp.reduce_to(field)?,
            reducible: fam.reducible.reduce_to(field)?,
            f,
            df,
        })
    }

    fn point(&self, n: i64, field: &PrimeField, c: (u64, u64, u64)) -> FpPoint {
        let pt = [field.elem(c.0 as i64), field.elem(c.1 as i64), field.elem(c.2 as i64)];
        let partials = [0, 1, 2].map(|k| self.df[k].evaluate(&pt).residue());
        FpPoint {
            n,
            p: field.p(),
            coords: c,
            on_geometric: self.f.evaluate(&pt).is_zero(),
            nonacyclic: self.tau.evaluate(&pt).is_zero(),
            abs_irreducible: !self.reducible.evaluate(&pt).is_zero(),
            dz_nonzero: partials[2] != 0,
            partials,
        }
    }
}

/// Flags of an arbitrary point of `F_p³`.
pub fn classify_point(n: i64, p: u64, coords: (u64, u64, u64)) -> Result<FpPoint, LseriesError> {
    let field = PrimeField::new(p)?;
    let red = Reduced::new(&FamilyPolys::new(n), &field)?;
    Ok(red.point(n, &field, (coords.0 % p, coords.1 % p, coords.2 % p)))
}

/// All points of `f̄_n = 0` in `F_p³`, sorted.
pub fn find_points(n: i64, p: u64) -> Result<Vec<FpPoint>, LseriesError> {
    let cube = p.saturating_pow(3);
    if cube > POINT_CAP {
        return Err(LseriesError::CapExceeded(cube));
    }
    let field = PrimeField::new(p)?;
    let red = Reduced::new(&FamilyPolys::new(n), &field)?;
    let mut pts: Vec<FpPoint> = (0..p)
        .into_par_iter()
        .flat_map_iter(|a| {
            let red = &red;
            (0..p).flat_map(move |b| (0..p).map(move |c| (a, b, c)))
                .filter_map(move |c| {
                    let pt = red.point(n, &field, c);
                    pt.on_geometric.then_some(pt)
                })
        })
        .collect();
    pts.sort();
    Ok(pts)
}

/// Implicit function `w(X, Y)` solving `f = 0` for the variable `solve`,
/// where the other two variables (in their natural order) are
/// `center + (X, Y)`.
#[derive(Debug, Clone)]
pub struct HenselLift {
    pub solve: usize,
    pub series: PSeries2,
    pub steps: usize,
}

/// Arguments `(x, y, z)` as series, with `w` in slot `solve`.
fn arguments(w: &PSeries2, solve: usize) -> Vec<PSeries2> {
    let (ctx, d, c) = (w.ctx(), w.degree(), w.center());
    let mut free = 0;
    (0..3)
        .map(|k| {
            if k == solve {
                w.clone()
            } else {
                free += 1;
                PSeries2::variable(ctx, d, c, free - 1)
            }
        })
        .collect()
}

/// Newton iteration `w ← w − f(w)/f_w(w)` in `Z/p^N[[X, Y]]/(deg > D)`,
/// started at the constant lift of the residue. Each step squares the error
/// in the ideal `(p, X, Y)`; the loop ends at the exact fixed point.
pub fn hensel_implicit_general(
    f: &MultiPoly<ZpnElem>,
    solve: usize,
    center: (i64, i64),
    start: i64,
    precision: u32,
    degree: u32,
) -> Result<HenselLift, LseriesError> {
    let ctx = f.ctx().to_owned();
    let dfdw = f.partial_derivative(VARS[solve])?;
    let mut w = PSeries2::constant(ctx, degree, center, ctx.elem(start));
    for step in 0..MAX_NEWTON_STEPS {
        let args = arguments(&w, solve);
        let fw = PSeries2::eval_poly(f, &args);
        if fw.is_zero() {
            return Ok(HenselLift { solve, series: w, steps: step });
        }
        let d = PSeries2::eval_poly(&dfdw, &args);
        let inv = d
            .inverse()
            .map_err(|_| LseriesError::NewtonStall(format!("∂f/∂{} is not a unit at step {step}", VARS[solve])))?;
        w = w.sub(&fw.mul(&inv));
    }
    Err(LseriesError::NewtonStall(format!(
        "no fixed point after {MAX_NEWTON_STEPS} steps (precision {precision}, degree {degree})"
    )))
}

/// Lift of a point of the family surface; the lifts of the coordinates are
/// their representatives in `[0, p)` unless `lift` overrides them.
pub fn hensel_implicit(
    pt: &FpPoint,
    precision: u32,
    degree: u32,
    lift: Option<(i64, i64, i64)>,
) -> Result<HenselLift, LseriesError> {
    let solve = pt.solve_for().ok_or(LseriesError::NotRegular(pt.coords))?;
    if !pt.on_geometric {
        return Err(LseriesError::NotOnSurface(pt.coords));
    }
    let ctx = ZpnCtx::new(pt.p, precision)?;
    let f: MultiPoly<ZpnElem> = FamilyPolys::new(pt.n).f_exp.reduce_to(&ctx)?;
    let c = lift.unwrap_or((pt.coords.0 as i64, pt.coords.1 as i64, pt.coords.2 as i64));
    let all = [c.0, c.1, c.2];
    let free: Vec<i64> = (0..3).filter(|&k| k != solve).map(|k| all[k]).collect();
    hensel_implicit_general(&f, solve, (free[0], free[1]), all[solve], precision, degree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LReport {
    pub point: FpPoint,
    pub precision: u32,
    pub degree: u32,
    /// Variable expressed as the implicit function (`"z"` unless `∂_z f̄ = 0`).
    pub solve_for: String,
    /// Integer lifts of the two free coordinates.
    pub center: (i64, i64),
    pub newton_steps: usize,
    /// `f(…, w(X, Y), …)` vanished identically after lifting.
    pub hensel_defect_zero: bool,
    pub const_val: u64,
    pub lin_x: u64,
    pub lin_y: u64,
    /// Rank mod `p` of the quadratic part of `L̄`.
    pub quad_rank: u8,
    /// Taylor coefficients of `L̄ = L mod p` up to degree `D`.
    pub taylor_mod_p: Vec<SeriesCoeff>,
    /// The same coefficients mod `p^N`.
    pub series: Vec<SeriesCoeff>,
    pub verdict: Verdict,
}

fn rank_2x2_mod_p(m: [u64; 4], p: u64) -> u8 {
    let det = (m[0] as u128 * m[3] as u128 + (p as u128 - (m[1] as u128 * m[2] as u128) % p as u128)) % p as u128;
    if det != 0 {
        2
    } else if m.iter().any(|&e| e % p != 0) {
        1
    } else {
        0
    }
}

/// Computes `L = τ_n(…, w(X, Y), …)` at a regular point and reads off its
/// low-degree Taylor data mod `p`.
pub fn l_function_with_lift(
    pt: &FpPoint,
    precision: u32,
    degree: u32,
    lift: Option<(i64, i64, i64)>,
) -> Result<LReport, LseriesError> {
    let lifted = hensel_implicit(pt, precision, degree, lift)?;
    let ctx = lifted.series.ctx();
    let fam = FamilyPolys::new(pt.n);
    let f: MultiPoly<ZpnElem> = fam.f_exp.reduce_to(&ctx)?;
    let tau: MultiPoly<ZpnElem> = fam.tau_exp.reduce_to(&ctx)?;
    let args = arguments(&lifted.series, lifted.solve);
    let defect = PSeries2::eval_poly(&f, &args);
    let l = PSeries2::eval_poly(&tau, &args);
    Ok(report_from_series(pt, &lifted, &l, defect.is_zero()))
}

fn report_from_series(pt: &FpPoint, lifted: &HenselLift, l: &PSeries2, defect_zero: bool) -> LReport {
    let p = pt.p;
    let r = |i, j| l.coeff(i, j).residue() % p;
    let (const_val, lin_x, lin_y) = (r(0, 0), r(1, 0), r(0, 1));
    // Symmetric matrix of the quadratic form, scaled by 2.
    let quad_rank = rank_2x2_mod_p([2 * r(2, 0) % p, r(1, 1), r(1, 1), 2 * r(0, 2) % p], p);
    let verdict = if !(pt.nonacyclic && pt.abs_irreducible) {
        Verdict::NotApplicable
    } else if const_val == 0 && lin_x == 0 && lin_y == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    LReport {
        point: pt.clone(),
        precision: l.ctx().precision(),
        degree: l.degree(),
        solve_for: VARS[lifted.solve].to_string(),
        center: l.center(),
        newton_steps: lifted.steps,
        hensel_defect_zero: defect_zero,
        const_val,
        lin_x,
        lin_y,
        quad_rank,
        taylor_mod_p: l.table_mod_p(),
        series: l.table(),
        verdict,
    }
}

pub fn l_function(pt: &FpPoint, precision: u32, degree: u32) -> Result<LReport, LseriesError> {
    l_function_with_lift(pt, precision, degree, None)
}

/// Verdict after the linear change of disk coordinates `m` (unit determinant
/// mod `p`).
pub fn verdict_after_linear_change(report: &LReport, p: u64, m: [i64; 4]) -> Result<Verdict, LseriesError> {
    let ctx = ZpnCtx::new(p, report.precision)?;
    let mut l = PSeries2::zero(ctx, report.degree, report.center);
    for c in &report.series {
        l.set(c.i, c.j, ctx.elem(c.r as i64));
    }
    let changed = l.compose_linear(m);
    let lifted = HenselLift {
        solve: VARS.iter().position(|v| *v == report.solve_for).unwrap_or(2),
        series: PSeries2::zero(ctx, report.degree, report.center),
        steps: report.newton_steps,
    };
    Ok(report_from_series(&report.point, &lifted, &changed, report.hensel_defect_zero).verdict)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LSurvey {
    pub n: i64,
    pub p: u64,
    pub precision: u32,
    pub degree: u32,
    /// Points of `f̄_n = 0`.
    pub points_total: usize,
    pub excluded_acyclic: usize,
    pub excluded_reducible: usize,
    /// Points where every partial of `f̄_n` vanishes.
    pub singular_points: Vec<(u64, u64, u64)>,
    /// Regular points with `∂_z f̄_n = 0`, lifted after permuting coordinates.
    pub permuted: usize,
    pub passed: usize,
    pub failed: usize,
    pub quad_rank_counts: BTreeMap<u8, usize>,
    pub reports: Vec<LReport>,
}

impl LSurvey {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
            && self.reports.iter().all(|r| r.hensel_defect_zero && r.verdict == Verdict::Pass)
    }

    /// Size of the strict study set (`∂_z f̄_n ≠ 0`).
    pub fn study_set_size(&self) -> usize {
        self.reports.iter().filter(|r| r.point.dz_nonzero).count()
    }
}

/// Runs [`l_function`] on every nonacyclic, absolutely irreducible, regular
/// point of `f̄_n = 0`.
pub fn l_survey(n: i64, p: u64, precision: u32, degree: u32) -> Result<LSurvey, LseriesError> {
    let pts = find_points(n, p)?;
    let mut survey = LSurvey {
        n,
        p,
        precision,
        degree,
        points_total: pts.len(),
        excluded_acyclic: 0,
        excluded_reducible: 0,
        singular_points: Vec::new(),
        permuted: 0,
        passed: 0,
        failed: 0,
        quad_rank_counts: BTreeMap::new(),
        reports: Vec::new(),
    };
    let mut todo = Vec::new();
    for pt in pts {
        if !pt.is_regular() {
            survey.singular_points.push(pt.coords);
        }
        if !pt.nonacyclic {
            survey.excluded_acyclic += 1;
        } else if !pt.abs_irreducible {
            survey.excluded_reducible += 1;
        } else if pt.is_regular() {
            survey.permuted += usize::from(!pt.dz_nonzero);
            todo.push(pt);
        }
    }
    let reports: Result<Vec<LReport>, LseriesError> =
        todo.par_iter().map(|pt| l_function(pt, precision, degree)).collect();
    let mut reports = reports?;
    reports.sort_by(|a, b| a.point.cmp(&b.point));
    for r in &reports {
        match r.verdict {
            Verdict::Pass => survey.passed += 1,
            _ => survey.failed += 1,
        }
        *survey.quad_rank_counts.entry(r.quad_rank).or_default() += 1;
    }
    survey.reports = reports;
    Ok(survey)
}
