//! Dispatch from a validated run configuration to one check, producing a
//! self-describing JSON report.

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};

use wlink_core::chebfam::{family_in, identity_suite, separability_check, Kind};
use wlink_core::groebner::{buchberger, GbOptions, GroebnerError, IdealBasis};
use wlink_core::linkcheck::{
    diagonal_elimination_check, geometric_mult_check, nongeometric_check, smoothness_check,
    trace_singular_system, whitehead_divisor_check, FamilyPolys, LinkError,
};
use wlink_core::lseries::{classify_point, find_points, l_function, l_survey, LseriesError, Verdict};
use wlink_core::mpoly::{MultiPoly, VarList};
use wlink_core::replab::{order3_suite, relator_oracle, whitehead_peripheral_check, DEFAULT_SEED};

pub const VERSION: &str = concat!("wlink ", env!("CARGO_PKG_VERSION"));
/// Largest `n` for which `geometric-mult` runs without an explicit budget.
pub const GEOMETRIC_UNBUDGETED_MAX: i64 = 3;
pub const DEFAULT_VERIFY_BUDGET_S: u64 = 1800;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    WhiteheadDivisor,
    Smooth { n: i64 },
    Nongeometric { n: i64 },
    GeometricMult { n: i64 },
    Diagonal,
    FamilyCheb { k: i64, kind: char },
    FamilySuite { k_max: i64 },
    OracleReps { n: i64, p: u64 },
    OraclePeripheral { samples: usize },
    OracleOrder3 { samples: usize },
    Lfunction { n: i64, p: u64, point: Option<(u64, u64, u64)> },
    LfunctionSurvey { n: i64, p: u64 },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::WhiteheadDivisor => "check whitehead-divisor",
            Command::Smooth { .. } => "check smooth",
            Command::Nongeometric { .. } => "check nongeometric",
            Command::GeometricMult { .. } => "check geometric-mult",
            Command::Diagonal => "check diagonal",
            Command::FamilyCheb { .. } => "family cheb",
            Command::FamilySuite { .. } => "family suite",
            Command::OracleReps { .. } => "oracle reps",
            Command::OraclePeripheral { .. } => "oracle peripheral",
            Command::OracleOrder3 { .. } => "oracle order3",
            Command::Lfunction { .. } => "lfunction",
            Command::LfunctionSurvey { .. } => "lfunction survey",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub precision: u32,
    pub degree: u32,
    pub budget_s: Option<u64>,
    pub seed: u64,
    pub emit_gb: bool,
    /// Record `elapsed_ms`; off for byte-reproducible output.
    #[serde(skip)]
    pub timing: bool,
    /// Tighter Gröbner deadline than `budget_s`, used inside a suite run.
    #[serde(skip)]
    pub remaining: Option<Duration>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            precision: wlink_core::lseries::DEFAULT_PRECISION,
            degree: wlink_core::lseries::DEFAULT_DEGREE,
            budget_s: None,
            seed: DEFAULT_SEED,
            emit_gb: false,
            timing: true,
            remaining: None,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let pos = |n: i64, what: &str| if n >= 1 { Ok(()) } else { Err(format!("{what} must be >= 1, got {n}")) };
        match &self.command {
            Command::Smooth { n } | Command::Nongeometric { n } => pos(*n, "--n")?,
            Command::GeometricMult { n } => {
                if *n < 2 {
                    return Err(format!("--n must be >= 2 for geometric-mult, got {n}"));
                }
                if *n > GEOMETRIC_UNBUDGETED_MAX && self.budget_s.is_none() {
                    return Err(format!("geometric-mult with n > {GEOMETRIC_UNBUDGETED_MAX} needs --budget-s"));
                }
            }
            Command::FamilyCheb { kind, .. } if !matches!(kind, 'S' | 'T' | 'P') => {
                return Err(format!("--kind must be S, T or P, got {kind}"))
            }
            Command::FamilySuite { k_max } => pos(*k_max, "--k-max")?,
            Command::OracleReps { n, .. } | Command::Lfunction { n, .. } | Command::LfunctionSurvey { n, .. } => {
                pos(*n, "--n")?
            }
            Command::OraclePeripheral { samples } | Command::OracleOrder3 { samples } if *samples == 0 => {
                return Err("--samples must be >= 1".into())
            }
            _ => {}
        }
        if self.precision == 0 || self.degree == 0 {
            return Err("--prec and --deg must be >= 1".into());
        }
        Ok(())
    }

    fn gb_options(&self) -> GbOptions {
        match (self.remaining, self.budget_s) {
            (Some(d), _) => GbOptions::with_budget(d),
            (None, Some(s)) => GbOptions::with_budget(Duration::from_secs(s)),
            (None, None) => GbOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::ReportOnly => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub inputs: RunConfig,
    pub status: Status,
    pub certificate: Value,
    pub elapsed_ms: Option<u64>,
    pub version: String,
    pub seed: u64,
}

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn kind_of(c: char) -> Kind {
    match c {
        'S' => Kind::S,
        'T' => Kind::T,
        _ => Kind::P,
    }
}

fn is_budget(e: &LinkError) -> bool {
    matches!(e, LinkError::Groebner(GroebnerError::BudgetExceeded))
}

fn gb_json(basis: &[MultiPoly<wlink_core::exactring::Rational>]) -> Value {
    Value::Array(basis.iter().map(|p| value(&p.to_json())).collect())
}

type Outcome = Result<(Status, Value), String>;

fn link<T>(r: Result<T, LinkError>) -> Result<T, String> {
    r.map_err(|e| {
        if is_budget(&e) {
            format!("budget exceeded: {e}")
        } else {
            e.to_string()
        }
    })
}

fn run_check(cfg: &RunConfig) -> Outcome {
    let opts = cfg.gb_options();
    match &cfg.command {
        Command::WhiteheadDivisor => {
            let c = link(whitehead_divisor_check(&opts))?;
            let re = link(c.reverify(&opts))?;
            Ok((Status::from_bool(c.holds() && re), json!({ "certificate": c, "reverified": re })))
        }
        Command::Smooth { n } => {
            let r = link(smoothness_check(*n, &opts))?;
            let mut v = value(&r);
            if cfg.emit_gb {
                let sys = link(trace_singular_system(&FamilyPolys::new(*n)))?;
                let ideal = IdealBasis::grevlex(sys).map_err(|e| e.to_string())?;
                let gb = buchberger(&ideal, &opts).map_err(|e| e.to_string())?;
                v["gb"] = gb_json(gb.elements());
            }
            Ok((Status::from_bool(r.passed()), v))
        }
        Command::Nongeometric { n } => {
            let r = link(nongeometric_check(*n, &opts))?;
            Ok((Status::from_bool(r.passed()), value(&r)))
        }
        Command::GeometricMult { n } => {
            let c = link(geometric_mult_check(*n, &opts))?;
            Ok((Status::from_bool(c.holds()), value(&c)))
        }
        Command::Diagonal => {
            let r = link(diagonal_elimination_check(&opts))?;
            let mut v = value(&r);
            if cfg.emit_gb {
                let basis: Result<Vec<_>, _> =
                    r.basis.iter().map(|s| MultiPoly::parse(&VarList::xyz(), s)).collect();
                v["gb"] = gb_json(&basis.map_err(|e| e.to_string())?);
            }
            Ok((Status::from_bool(r.passed()), v))
        }
        Command::FamilyCheb { k, kind } => {
            let p = family_in(&VarList::v(), kind_of(*kind), *k).map_err(|e| e.to_string())?;
            Ok((Status::ReportOnly, value(&p.to_json())))
        }
        Command::FamilySuite { k_max } => {
            let r = identity_suite(*k_max);
            let non_separable: Vec<i64> = (2..=*k_max).filter(|&n| !separability_check(n)).collect();
            let ok = r.passed() && non_separable.is_empty();
            Ok((Status::from_bool(ok), json!({ "identities": r, "non_separable": non_separable })))
        }
        Command::OracleReps { n, p } => {
            let c = relator_oracle(*n, *p).map_err(|e| e.to_string())?;
            Ok((Status::from_bool(c.passed()), value(&c)))
        }
        Command::OraclePeripheral { samples } => {
            let r = whitehead_peripheral_check(*samples, cfg.seed).map_err(|e| e.to_string())?;
            Ok((Status::from_bool(r.passed()), value(&r)))
        }
        Command::OracleOrder3 { samples } => {
            let r = order3_suite(*samples, cfg.seed).map_err(|e| e.to_string())?;
            Ok((Status::from_bool(r.passed()), value(&r)))
        }
        Command::Lfunction { n, p, point } => {
            let ls = |e: LseriesError| e.to_string();
            let pt = match point {
                Some(c) => classify_point(*n, *p, *c).map_err(ls)?,
                None => find_points(*n, *p)
                    .map_err(ls)?
                    .into_iter()
                    .find(|pt| pt.in_study_set())
                    .ok_or_else(|| format!("no study-set point for n={n} over F_{p}"))?,
            };
            let r = l_function(&pt, cfg.precision, cfg.degree).map_err(ls)?;
            let status = match r.verdict {
                Verdict::Pass => Status::Pass,
                Verdict::Fail => Status::Fail,
                Verdict::NotApplicable => Status::ReportOnly,
            };
            Ok((status, value(&r)))
        }
        Command::LfunctionSurvey { n, p } => {
            let s = l_survey(*n, *p, cfg.precision, cfg.degree).map_err(|e| e.to_string())?;
            Ok((Status::from_bool(s.all_pass()), value(&s)))
        }
    }
}

/// Runs exactly one check. Errors (including an exhausted budget) become
/// `status: error` reports.
pub fn dispatch(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let (status, certificate) = match cfg.validate().and_then(|_| run_check(cfg)) {
        Ok(out) => out,
        Err(msg) => (Status::Error, json!({ "error": msg })),
    };
    Report {
        check: cfg.command.name().to_string(),
        inputs: cfg.clone(),
        status,
        certificate,
        elapsed_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
        version: VERSION.to_string(),
        seed: cfg.seed,
    }
}

/// The acceptance suite, in order, as run configurations grouped by criterion.
pub fn acceptance_plan() -> Vec<(u32, Vec<Command>)> {
    let mut plan = vec![
        (1, vec![Command::WhiteheadDivisor]),
        (2, vec![Command::WhiteheadDivisor]),
        (3, (1..=6).map(|n| Command::Smooth { n }).collect()),
        (4, (2..=10).map(|n| Command::Nongeometric { n }).collect()),
        (5, vec![Command::GeometricMult { n: 2 }, Command::GeometricMult { n: 3 }]),
        (6, vec![Command::Diagonal]),
        (7, vec![Command::FamilySuite { k_max: 50 }]),
    ];
    let mut reps = Vec::new();
    for n in 1..=3 {
        for p in [3, 5, 7] {
            reps.push(Command::OracleReps { n, p });
        }
    }
    plan.push((8, reps));
    plan.push((9, vec![Command::OraclePeripheral { samples: 100 }]));
    let mut lf = Vec::new();
    for n in 1..=3 {
        for p in [5, 7, 11] {
            lf.push(Command::LfunctionSurvey { n, p });
        }
    }
    plan.push((10, lf));
    plan
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyAll {
    pub budget_s: u64,
    pub status: Status,
    /// The budget ran out before the suite finished.
    pub budget_exhausted: bool,
    pub reports: Vec<Report>,
}

impl VerifyAll {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

/// Runs the acceptance suite until done or until `budget` is spent. The
/// criterion-1 and -2 certificate is shared, so each distinct check runs once.
pub fn verify_all(budget: Duration, timing: bool) -> VerifyAll {
    let start = Instant::now();
    let mut reports: Vec<Report> = Vec::new();
    let mut exhausted = budget.is_zero();
    'outer: for (_, cmds) in acceptance_plan() {
        for cmd in cmds {
            if reports.iter().any(|r| r.inputs.command == cmd) {
                continue;
            }
            let left = budget.saturating_sub(start.elapsed());
            if left.is_zero() {
                exhausted = true;
                break 'outer;
            }
            let mut cfg = RunConfig::new(cmd);
            cfg.budget_s = Some(budget.as_secs());
            cfg.remaining = Some(left);
            cfg.timing = timing;
            let r = dispatch(&cfg);
            reports.push(r);
        }
    }
    let status = if exhausted || reports.iter().any(|r| r.status == Status::Error) {
        Status::Error
    } else if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    VerifyAll {
        budget_s: budget.as_secs(),
        status,
        budget_exhausted: exhausted,
        reports,
    }
}

pub fn render<T: Serialize>(t: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(t).expect("reports serialize")
    } else {
        serde_json::to_string(t).expect("reports serialize")
    }
}
