//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;
use wlink_cli::{dispatch, Command, Report, RunConfig, Status};
use wlink_core::lseries::{l_survey, LSurvey};
use wlink_core::mpoly::{MultiPoly, VarList};
use wlink_core::linkcheck::FamilyPolys;

/// Wall-clock ceilings. Criteria 3 and 5 are per `n`.
const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(1);
const LIMIT_3_PER_N: Duration = Duration::from_secs(60);
const LIMIT_4: Duration = Duration::from_secs(5);
const LIMIT_5_PER_N: Duration = Duration::from_secs(600);
const LIMIT_6: Duration = Duration::from_secs(30);
const LIMIT_7: Duration = Duration::from_secs(5);
const LIMIT_8: Duration = Duration::from_secs(60);
const LIMIT_9: Duration = Duration::from_secs(10);
const LIMIT_10: Duration = Duration::from_secs(120);

/// L-function parameters for criterion 10, and the coarser pair used for the
/// precision-monotonicity guard.
const L_PREC: u32 = 8;
const L_DEG: u32 = 4;
const L_COARSE: (u32, u32) = (6, 3);

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(cmd: Command) -> (Report, Duration) {
    let start = Instant::now();
    let r = dispatch(&RunConfig::new(cmd));
    (r, start.elapsed())
}

fn evidence_holds(cert: &Value, name: &str) -> bool {
    cert["evidence"]
        .as_array()
        .into_iter()
        .flatten()
        .any(|e| e["name"] == name && e["holds"] == true)
}

fn within(t: Duration, limit: Duration) -> bool {
    t <= limit
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let vars = VarList::xyz();
    let q = |s: &str| MultiPoly::parse(&vars, s).unwrap();
    let f = FamilyPolys::new(1).f_exp;
    let direct = &f.substitute("z", &q("x + y - 2")).unwrap() - &q("(x + y - 1)^2*(x - 2)*(y - 2)");
    let (r, _) = run(Command::WhiteheadDivisor);
    let via_cert = evidence_holds(&r.certificate["certificate"], "f restricted to z = x+y-2 has the square factor");
    let t = start.elapsed();
    Outcome {
        ok: direct.is_zero() && via_cert && within(t, LIMIT_1),
        detail: format!("difference is zero: {}, certificate: {via_cert}, {t:.2?}", direct.is_zero()),
    }
}

fn criterion_2() -> Outcome {
    let (r, t) = run(Command::WhiteheadDivisor);
    let c = &r.certificate["certificate"];
    let parts = [
        "f restricted to z = x+y-2 has the square factor",
        "tau/2 vanishes on L",
        "L is cut out transversally",
        "L lies on the geometric component",
    ];
    let missing: Vec<&str> = parts.iter().copied().filter(|n| !evidence_holds(c, n)).collect();
    let ok = r.status == Status::Pass
        && r.certificate["reverified"] == true
        && c["multiplicity"] == 2
        && missing.is_empty()
        && within(t, LIMIT_2);
    Outcome {
        ok,
        detail: format!("multiplicity {}, reverified {}, missing {missing:?}, {t:.2?}", c["multiplicity"], r.certificate["reverified"]),
    }
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=6 {
        let (r, t) = run(Command::Smooth { n });
        let c = &r.certificate;
        let parity = c["parity"].as_array().is_some_and(|a| a.iter().all(|b| b["trivial"] == true));
        let this = if n <= 5 {
            c["geometric_trivial"] == true && parity && within(t, LIMIT_3_PER_N)
        } else {
            parity
        };
        ok &= this;
        notes.push(format!("n={n} {} {t:.1?}", if this { "ok" } else { "FAIL" }));
    }
    Outcome { ok, detail: notes.join(", ") }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=10 {
        let (r, _) = run(Command::Nongeometric { n });
        let c = &r.certificate;
        if !(r.status == Status::Pass && c["even_vanishes"] == true && c["odd_identity"] == true) {
            bad.push(n);
        }
    }
    let t = start.elapsed();
    Outcome {
        ok: bad.is_empty() && within(t, LIMIT_4),
        detail: format!("n = 2..10, failing {bad:?}, {t:.2?}"),
    }
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 2..=3 {
        let (r, t) = run(Command::GeometricMult { n });
        let c = &r.certificate;
        let this = r.status == Status::Pass
            && evidence_holds(c, "localized ideal equals (Zrel, G, H^2)")
            && evidence_holds(c, "(Zrel, G, H) is not contained in the minor M")
            && within(t, LIMIT_5_PER_N);
        ok &= this;
        notes.push(format!("n={n} {} {t:.1?}", if this { "ok" } else { "FAIL" }));
    }
    Outcome { ok, detail: notes.join(", ") }
}

fn criterion_6() -> Outcome {
    let (r, t) = run(Command::Diagonal);
    let c = &r.certificate;
    Outcome {
        ok: r.status == Status::Pass && within(t, LIMIT_6),
        detail: format!("principal {}, radical {}, basis {}, {t:.2?}", c["principal_match"], c["radical_match"], c["basis"]),
    }
}

fn criterion_7() -> Outcome {
    let (r, t) = run(Command::FamilySuite { k_max: 50 });
    let c = &r.certificate;
    Outcome {
        ok: r.status == Status::Pass && within(t, LIMIT_7),
        detail: format!(
            "{} identities, first failure {}, non-separable {}, {t:.2?}",
            c["identities"]["identities_checked"], c["identities"]["first_failure"], c["non_separable"]
        ),
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let (mut violations, mut holds) = (0, 0);
    let mut all = true;
    for n in 1..=3 {
        for p in [3, 5, 7] {
            let (r, _) = run(Command::OracleReps { n, p });
            all &= r.status == Status::Pass;
            violations += r.certificate["violations"].as_array().map_or(usize::MAX, Vec::len);
            holds += r.certificate["relator_holds"].as_u64().unwrap_or(0);
        }
    }
    let t = start.elapsed();
    Outcome {
        ok: all && violations == 0 && within(t, LIMIT_8),
        detail: format!("{violations} violations among {holds} relator solutions, {t:.2?}"),
    }
}

fn criterion_9() -> Outcome {
    let (r, t) = run(Command::OraclePeripheral { samples: 100 });
    let c = &r.certificate;
    Outcome {
        ok: r.status == Status::Pass && c["samples"] == 100 && within(t, LIMIT_9),
        detail: format!("seed {}, 100 samples, distinct Tr(AB) {}, {t:.2?}", r.seed, c["distinct_tr_ab"]),
    }
}

/// Every coefficient of the coarse run equals the fine one reduced.
fn monotone(fine: &LSurvey, coarse: &LSurvey, p: u64) -> bool {
    let m = p.pow(L_COARSE.0);
    fine.reports.len() == coarse.reports.len()
        && fine.reports.iter().zip(&coarse.reports).all(|(f, c)| {
            f.point == c.point
                && c.series.iter().all(|cc| {
                    f.series
                        .iter()
                        .any(|fc| fc.i == cc.i && fc.j == cc.j && fc.r % m == cc.r)
                })
        })
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut points = 0;
    let mut ranks = std::collections::BTreeMap::<u64, usize>::new();
    for n in 1..=3 {
        for p in [5, 7, 11] {
            let mut cfg = RunConfig::new(Command::LfunctionSurvey { n, p });
            cfg.precision = L_PREC;
            cfg.degree = L_DEG;
            let r = dispatch(&cfg);
            ok &= r.status == Status::Pass;
            for rep in r.certificate["reports"].as_array().into_iter().flatten() {
                points += 1;
                ok &= rep["hensel_defect_zero"] == true && rep["verdict"] == "pass";
                *ranks.entry(rep["quad_rank"].as_u64().unwrap_or(9)).or_default() += 1;
            }
        }
    }
    let t = start.elapsed();
    ok &= within(t, LIMIT_10);

    let mut guard = true;
    for n in 1..=3 {
        for p in [5, 7, 11] {
            let fine = l_survey(n, p, L_PREC, L_DEG).unwrap();
            let coarse = l_survey(n, p, L_COARSE.0, L_COARSE.1).unwrap();
            guard &= monotone(&fine, &coarse, p) && fine.reports.iter().all(|r| r.hensel_defect_zero);
        }
    }
    Outcome {
        ok: ok && guard,
        detail: format!("{points} points, quadratic ranks {ranks:?}, guards {guard}, {t:.2?}"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "Whitehead divisor identity", criterion_1),
        (2, "Whitehead multiplicity-two certificate", criterion_2),
        (3, "smoothness", criterion_3),
        (4, "non-geometric components", criterion_4),
        (5, "geometric multiplicity two", criterion_5),
        (6, "diagonal elimination", criterion_6),
        (7, "Chebyshev suite", criterion_7),
        (8, "representation census", criterion_8),
        (9, "peripheral and triangle-group identities", criterion_9),
        (10, "L-function multiplicity", criterion_10),
    ];
    let mut failed = 0;
    for (k, name, f) in criteria {
        let o = f();
        failed += usize::from(!o.ok);
        println!("criterion {k:>2} {} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}/10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
