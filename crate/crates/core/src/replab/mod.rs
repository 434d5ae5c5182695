//! Exact 2×2 matrix representations of two-generator link groups.
//!
//! Words are evaluated on explicit matrices over ℚ or `F_p`. The census over
//! `F_p` enumerates Riley-form representations of `W_{2n-1}` and checks that
//! the relator forces `f_n · S_{n-1}(v) = 0`; the order-3 and peripheral
//! suites exercise the Whitehead link's triangle-group quotient.

mod mat2;
mod word;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chebfam::s_uni;
use crate::exactring::{Field, FpElem, PrimeField, Rational, RingError, Scalar};
use crate::groebner::{buchberger, GbOptions, GroebnerError, IdealBasis};
use crate::linkcheck::FamilyPolys;
use crate::mpoly::{MultiPoly, PolyError, VarList};

pub use mat2::Mat2;
pub use word::{eval_word, Word};

/// Largest prime accepted by the exhaustive census (`p³` triples).
pub const CENSUS_PRIME_CAP: u64 = 101;
pub const DEFAULT_SEED: u64 = 0x5eed_2026;

#[derive(Debug, Error)]
pub enum ReplabError {
    #[error("malformed word: {0}")]
    BadWord(String),
    #[error("denominator vanishes: {0}")]
    DenominatorZero(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("prime {0} exceeds the census cap {CENSUS_PRIME_CAP}")]
    PrimeTooLarge(u64),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// A finitely presented group with named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(String::as_str).collect()
    }

    pub fn parse_word(&self, src: &str) -> Result<Word, ReplabError> {
        Word::parse(&self.names(), src)
    }

    /// Whether every relator maps to the identity.
    pub fn holds<C: Scalar>(&self, assignment: &[Mat2<C>]) -> Result<bool, ReplabError> {
        for r in &self.relators {
            if !eval_word(r, assignment)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `"whitehead"`, `"whitehead-literal"`, `"whitehead-ab"` or `"twisted-N"`.
    pub fn by_name(name: &str) -> Result<Self, ReplabError> {
        match name {
            "whitehead" => Ok(whitehead_pi1()),
            "whitehead-literal" => Ok(whitehead_literal()),
            "whitehead-ab" => Ok(whitehead_ab()),
            _ => name
                .strip_prefix("twisted-")
                .and_then(|k| k.parse::<i64>().ok())
                .filter(|&n| n >= 1)
                .map(twisted)
                .ok_or_else(|| ReplabError::BadWord(format!("unknown presentation {name}"))),
        }
    }
}

fn mu_names() -> Vec<String> {
    vec!["m".into(), "mu".into()]
}

fn whitehead_w() -> Word {
    Word::parse(&["m", "mu"], "mu m mu^-1 m^-1 mu^-1 m mu").expect("static word")
}

/// Whitehead link group `<m, μ | m w = w m>`, `w = μ m μ⁻¹ m⁻¹ μ⁻¹ m μ`.
pub fn whitehead_pi1() -> Presentation {
    Presentation {
        name: "whitehead".into(),
        generators: mu_names(),
        relators: vec![Word::commutator(&Word::generator(0), &whitehead_w())],
    }
}

/// `<m, μ | m w = w μ>`, the form printed before the rewrite to `m w = w m`.
/// Almost no nonabelian Riley representation satisfies it; kept so the
/// discrepancy stays testable.
pub fn whitehead_literal() -> Presentation {
    let w = whitehead_w();
    Presentation {
        name: "whitehead-literal".into(),
        generators: mu_names(),
        relators: vec![Word::generator(0).mul(&w).mul(&Word::generator(1).inverse()).mul(&w.inverse())],
    }
}

/// The triangle-group-adapted presentation `<a, b | b a⁻³ b a b⁻² a³ b⁻¹ a⁻¹ b>`.
pub fn whitehead_ab() -> Presentation {
    Presentation {
        name: "whitehead-ab".into(),
        generators: vec!["a".into(), "b".into()],
        relators: vec![Word::parse(&["a", "b"], "b a^-3 b a b^-2 a^3 b^-1 a^-1 b").expect("static word")],
    }
}

/// `ω = (μ m μ⁻¹ m⁻¹)ⁿ m (m⁻¹ μ⁻¹ m μ)ⁿ` in the generators `(m, μ)`.
pub fn omega(n: i64) -> Word {
    let names = ["m", "mu"];
    let left = Word::parse(&names, "mu m mu^-1 m^-1").expect("static word");
    let right = Word::parse(&names, "m^-1 mu^-1 m mu").expect("static word");
    left.pow(n).mul(&Word::generator(0)).mul(&right.pow(n))
}

/// `W_{2n-1} = <m, μ | m ω = ω m>`.
pub fn twisted(n: i64) -> Presentation {
    let om = omega(n);
    let m = Word::generator(0);
    Presentation {
        name: format!("twisted-{n}"),
        generators: mu_names(),
        relators: vec![Word::commutator(&m, &om)],
    }
}

/// Riley normal form `ρ(a) = [[s1, 1], [0, s1⁻¹]]`, `ρ(b) = [[s2, 0], [u, s2⁻¹]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RileyParams<C: Field> {
    pub s1: C,
    pub s2: C,
    pub u: C,
}

impl<C: Field> RileyParams<C> {
    pub fn new(s1: C, s2: C, u: C) -> Result<Self, ReplabError> {
        s1.inv()?;
        s2.inv()?;
        Ok(Self { s1, s2, u })
    }

    pub fn rho_a(&self) -> Mat2<C> {
        let ctx = self.s1.ctx();
        Mat2::new(self.s1.clone(), C::one(&ctx), C::zero(&ctx), self.s1.inv().expect("unit"))
    }

    pub fn rho_b(&self) -> Mat2<C> {
        let ctx = self.s1.ctx();
        Mat2::new(self.s2.clone(), C::zero(&ctx), self.u.clone(), self.s2.inv().expect("unit"))
    }

    /// `[ρ(a), ρ(b)]`, the assignment for `(m, μ)` or `(a, b)`.
    pub fn assignment(&self) -> [Mat2<C>; 2] {
        [self.rho_a(), self.rho_b()]
    }
}

/// Trace coordinates `(x, y, z, v)` with `z = Tr ρ(ab)`, `v = Tr ρ([a, b])`.
pub fn traces<C: Field>(p: &RileyParams<C>) -> (C, C, C, C) {
    let i1 = p.s1.inv().expect("unit");
    let i2 = p.s2.inv().expect("unit");
    let x = p.s1.clone() + i1.clone();
    let y = p.s2.clone() + i2.clone();
    let z = p.s1.clone() * p.s2.clone() + i1 * i2 + p.u.clone();
    let two = C::from_i64(&x.ctx(), 2);
    let v = x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone()
        - x.clone() * y.clone() * z.clone()
        - two;
    (x, y, z, v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorCensus {
    pub n: i64,
    pub p: u64,
    /// Triples `(s1, s2, u)` enumerated.
    pub tested: u64,
    /// Triples with `u ≠ 0` on which the relator holds.
    pub relator_holds: u64,
    /// Relator holds, `u ≠ 0`, but `f_n · S_{n-1}(v) ≠ 0`.
    pub violations: Vec<(u64, u64, u64)>,
    /// Converse direction, reported only: triples with `u ≠ 0` where the
    /// polynomial vanishes, and how many of them satisfy the relator.
    pub polynomial_zero: u64,
    pub polynomial_zero_with_relator: u64,
}

impl RelatorCensus {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive census of Riley representations of `W_{2n-1}` over `F_p`.
pub fn relator_oracle(n: i64, p: u64) -> Result<RelatorCensus, ReplabError> {
    if n < 1 {
        return Err(ReplabError::Precondition(format!("n = {n} < 1")));
    }
    if p > CENSUS_PRIME_CAP {
        return Err(ReplabError::PrimeTooLarge(p));
    }
    let field = PrimeField::new(p)?;
    let fam = FamilyPolys::new(n);
    let vars = VarList::xyzv();
    let s = MultiPoly::from_univariate(&vars, "v", &s_uni(n - 1))?;
    let poly: MultiPoly<FpElem> = (&fam.f_n * &s).reduce_to(&field)?;
    let pres = twisted(n);

    let parts: Vec<RelatorCensus> = (1..p)
        .into_par_iter()
        .map(|s1| {
            let mut part = RelatorCensus {
                n,
                p,
                tested: 0,
                relator_holds: 0,
                violations: Vec::new(),
                polynomial_zero: 0,
                polynomial_zero_with_relator: 0,
            };
            for s2 in 1..p {
                for u in 0..p {
                    part.tested += 1;
                    let params = RileyParams {
                        s1: field.elem(s1 as i64),
                        s2: field.elem(s2 as i64),
                        u: field.elem(u as i64),
                    };
                    let holds = pres.holds(&params.assignment()).expect("unimodular");
                    if u == 0 {
                        continue;
                    }
                    let (x, y, z, v) = traces(&params);
                    let vanishes = poly.evaluate(&[x, y, z, v]).is_zero();
                    if holds {
                        part.relator_holds += 1;
                        if !vanishes {
                            part.violations.push((s1, s2, u));
                        }
                    }
                    if vanishes {
                        part.polynomial_zero += 1;
                        part.polynomial_zero_with_relator += u64::from(holds);
                    }
                }
            }
            part
        })
        .collect();

    let mut out = RelatorCensus {
        n,
        p,
        tested: 0,
        relator_holds: 0,
        violations: Vec::new(),
        polynomial_zero: 0,
        polynomial_zero_with_relator: 0,
    };
    for part in parts {
        out.tested += part.tested;
        out.relator_holds += part.relator_holds;
        out.violations.extend(part.violations);
        out.polynomial_zero += part.polynomial_zero;
        out.polynomial_zero_with_relator += part.polynomial_zero_with_relator;
    }
    out.violations.sort_unstable();
    Ok(out)
}

/// Companion matrix of `t² + t + 1`.
pub fn companion() -> Mat2<Rational> {
    Mat2::from_i64(&(), [0, 1, -1, -1])
}

fn random_conjugator(rng: &mut ChaCha8Rng) -> Mat2<Rational> {
    loop {
        let e = [0; 4].map(|_| rng.gen_range(-4i64..=4));
        let m: Mat2<Rational> = Mat2::from_i64(&(), e);
        if !Scalar::is_zero(&m.det()) {
            return m;
        }
    }
}

/// `P C P⁻¹` for a random integer `P`; exact, trace −1, det 1.
pub fn random_order3(rng: &mut ChaCha8Rng) -> Mat2<Rational> {
    let p = random_conjugator(rng);
    p.mul(&companion()).mul(&p.inverse().expect("nonsingular"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Order3Report {
    pub seed: u64,
    /// Every entry of `A³ − I` and of `A² + A + I` lies in
    /// `(a11 + a22 + 1, a11 a22 − a12 a21 − 1)`.
    pub symbolic: bool,
    pub samples: usize,
    /// Sampled matrices with trace −1 whose cube is not the identity.
    pub failures: usize,
    /// Cayley–Hamilton `A² − tA + I = 0` failed on a sample.
    pub cayley_hamilton_failures: usize,
    /// The unipotent control `[[1,1],[0,1]]` is correctly rejected.
    pub control_rejected: bool,
}

impl Order3Report {
    pub fn passed(&self) -> bool {
        self.symbolic && self.failures == 0 && self.cayley_hamilton_failures == 0 && self.control_rejected
    }
}

/// Symbolic half of the order-3 check: the entries of `A³ − I` for a generic
/// matrix reduce to zero modulo trace −1 and det 1.
pub fn order3_symbolic() -> Result<bool, ReplabError> {
    let vars = VarList::new(&["a11", "a12", "a21", "a22"]);
    let q = |s: &str| MultiPoly::<Rational>::parse(&vars, s);
    type P = MultiPoly<Rational>;
    let mul = |x: &[P; 4], y: &[P; 4]| -> [P; 4] {
        [
            &(&x[0] * &y[0]) + &(&x[1] * &y[2]),
            &(&x[0] * &y[1]) + &(&x[1] * &y[3]),
            &(&x[2] * &y[0]) + &(&x[3] * &y[2]),
            &(&x[2] * &y[1]) + &(&x[3] * &y[3]),
        ]
    };
    let a = [q("a11")?, q("a12")?, q("a21")?, q("a22")?];
    let id = [q("1")?, q("0")?, q("0")?, q("1")?];
    let ideal = IdealBasis::grevlex(vec![q("a11 + a22 + 1")?, q("a11*a22 - a12*a21 - 1")?])?;
    let gb = buchberger(&ideal, &GbOptions::default())?;
    let sq = mul(&a, &a);
    let cube = mul(&sq, &a);
    let mut ok = true;
    for k in 0..4 {
        ok &= gb.contains(&(&cube[k] - &id[k]))?;
        ok &= gb.contains(&(&(&sq[k] + &a[k]) + &id[k]))?;
    }
    Ok(ok)
}

pub fn order3_suite(samples: usize, seed: u64) -> Result<Order3Report, ReplabError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut ch_failures = 0;
    for _ in 0..samples {
        let a = random_order3(&mut rng);
        if a.trace() != Rational::from_integer((-1).into()) || !a.det().is_one() {
            return Err(ReplabError::IdentityFailure(format!("bad sample {a}")));
        }
        failures += usize::from(!a.pow(3)?.is_identity());
        let t = a.trace();
        let lhs = a.mul(&a).add(&a.scale(&-t)).add(&Mat2::identity(&()));
        ch_failures += usize::from(!(lhs.a11.is_zero() && lhs.a12.is_zero() && lhs.a21.is_zero() && lhs.a22.is_zero()));
    }
    let unipotent: Mat2<Rational> = Mat2::from_i64(&(), [1, 1, 0, 1]);
    Ok(Order3Report {
        seed,
        symbolic: order3_symbolic()?,
        samples,
        failures,
        cayley_hamilton_failures: ch_failures,
        control_rejected: !unipotent.pow(3)?.is_identity(),
    })
}

/// Peripheral words of the `(a, b)` presentation.
pub const MU_PRIME: &str = "a^-2 b";
pub const LAMBDA_PRIME: &str = "a^-2 b a b^-2 a b";
pub const M_PRIME: &str = "b^-1 a";
pub const ELL_PRIME: &str = "b^-1 a b^-1 a b a^-3 b a";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeripheralReport {
    pub seed: u64,
    pub samples: usize,
    pub order3_failures: usize,
    pub relator_failures: usize,
    /// `m′³ ≠ ℓ′`
    pub m_cube_failures: usize,
    /// `μ′³ ≠ λ′`
    pub mu_cube_failures: usize,
    /// Distinct values of `Tr(AB)` seen across samples.
    pub distinct_tr_ab: usize,
    /// First failing pair, if any.
    pub witness: Option<(String, String)>,
}

impl PeripheralReport {
    pub fn passed(&self) -> bool {
        self.order3_failures == 0
            && self.relator_failures == 0
            && self.m_cube_failures == 0
            && self.mu_cube_failures == 0
    }
}

/// Outcome of the four identities on one pair `(A, B)`:
/// `(A³ = B³ = I, relator, m′³ = ℓ′, μ′³ = λ′)`.
pub fn peripheral_identities<C: Scalar>(a: &Mat2<C>, b: &Mat2<C>) -> Result<[bool; 4], ReplabError> {
    let pres = whitehead_ab();
    let asg = [a.clone(), b.clone()];
    let ev = |s: &str| -> Result<Mat2<C>, ReplabError> { eval_word(&pres.parse_word(s)?, &asg) };
    Ok([
        a.pow(3)?.is_identity() && b.pow(3)?.is_identity(),
        pres.holds(&asg)?,
        ev(M_PRIME)?.pow(3)? == ev(ELL_PRIME)?,
        ev(MU_PRIME)?.pow(3)? == ev(LAMBDA_PRIME)?,
    ])
}

pub fn whitehead_peripheral_check(samples: usize, seed: u64) -> Result<PeripheralReport, ReplabError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = PeripheralReport {
        seed,
        samples,
        order3_failures: 0,
        relator_failures: 0,
        m_cube_failures: 0,
        mu_cube_failures: 0,
        distinct_tr_ab: 0,
        witness: None,
    };
    let mut tr_ab = BTreeSet::new();
    for _ in 0..samples {
        let a = random_order3(&mut rng);
        let b = random_order3(&mut rng);
        tr_ab.insert(a.mul(&b).trace());
        let ok = peripheral_identities(&a, &b)?;
        rep.order3_failures += usize::from(!ok[0]);
        rep.relator_failures += usize::from(!ok[1]);
        rep.m_cube_failures += usize::from(!ok[2]);
        rep.mu_cube_failures += usize::from(!ok[3]);
        if rep.witness.is_none() && ok.contains(&false) {
            rep.witness = Some((a.to_string(), b.to_string()));
        }
    }
    rep.distinct_tr_ab = tr_ab.len();
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Geometric,
    Nongeometric,
}

/// The printed longitude formulas follow the convention in which the
/// canonical longitude is the inverse of the one used by earlier references.
pub const LONGITUDE_CAVEAT: &str =
    "formulas as printed; the canonical longitude here is the inverse of the earlier published one";

/// `(l_a, *)`: the diagonal entry and the off-diagonal entry of the image of
/// the canonical longitude in upper-triangular form.
pub fn longitude_eval<C: Field>(p: &RileyParams<C>, n: i64, branch: Branch) -> Result<(C, C), ReplabError> {
    let ctx = p.s1.ctx();
    let (x, y, z, v) = traces(p);
    match branch {
        Branch::Nongeometric => {
            let s = s_uni(n - 1);
            let val = s
                .coeffs()
                .iter()
                .rev()
                .try_fold(C::zero(&ctx), |acc, c| Ok::<C, RingError>(acc * v.clone() + C::from_rational(&ctx, c)?))?;
            if !val.is_zero() {
                return Err(ReplabError::Precondition("S_{n-1}(v) does not vanish".into()));
            }
            Ok((C::one(&ctx), C::zero(&ctx)))
        }
        Branch::Geometric => {
            let i1 = p.s1.inv()?;
            let two = C::from_i64(&ctx, 2);
            let den_l = -(i1 * y.clone()) + z.clone();
            let den_s = x.clone() * y.clone() * z.clone() - y.clone() * y.clone() - z.clone() * z.clone();
            let inv = |d: &C, what: &str| {
                d.inv()
                    .map_err(|_| ReplabError::DenominatorZero(format!("{what} = {d}")))
            };
            let la = (p.s1.clone() * y.clone() - z.clone()) * inv(&den_l, "-s1^-1 y + z")?;
            let star = y.clone() * (x * y - two * z) * inv(&den_s, "xyz - y^2 - z^2")?;
            Ok((la, star))
        }
    }
}

/// `ρ(m ω⁻¹)`, whose upper-triangular form carries `(l_a, *)` on the
/// geometric branch.
pub fn longitude_matrix<C: Field>(p: &RileyParams<C>, n: i64) -> Result<Mat2<C>, ReplabError> {
    let w = Word::generator(0).mul(&omega(n).inverse());
    eval_word(&w, &p.assignment())
}
