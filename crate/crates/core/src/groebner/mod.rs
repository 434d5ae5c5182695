//! Gröbner bases and the ideal operations built on them.

mod engine;
mod order;

use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactring::{Field, QuotElem, QuotModulus, Rational, RingError, Scalar, UniPoly};
use crate::mpoly::{MultiPoly, PolyError, PolyJson, VarList, MAX_VARS};
use engine::{Engine, GPoly};

pub use order::{Key, MonomialOrder, OrderKind};

/// Name of the auxiliary variable adjoined by [`saturate`].
pub const SATURATION_VAR: &str = "_t";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroebnerError {
    /// A leading coefficient in `Q[v]/(g)` was a zero divisor; `factor` is a
    /// proper monic factor of `g`.
    #[error("zero divisor in coefficient ring, factor {factor}")]
    ZeroDivisorHit { factor: UniPoly },
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error("order has {order} variables, ring has {ring}")]
    OrderMismatch { order: usize, ring: usize },
    #[error("too many variables ({0})")]
    TooManyVariables(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ring(RingError),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GbOptions {
    pub deadline: Option<Instant>,
}

impl GbOptions {
    pub fn with_budget(budget: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + budget),
        }
    }
}

/// Generators of an ideal together with the order used to compute with it.
#[derive(Clone, Debug)]
pub struct IdealBasis<C: Scalar> {
    vars: VarList,
    ctx: C::Ctx,
    gens: Vec<MultiPoly<C>>,
    order: MonomialOrder,
}

fn common_ring<C: Scalar>(gens: &[MultiPoly<C>]) -> Result<(VarList, C::Ctx), GroebnerError> {
    let first = gens
        .first()
        .ok_or_else(|| PolyError::MixedRings("empty generator list".into()))?;
    for g in gens {
        if g.vars() != first.vars() || g.ctx() != first.ctx() {
            return Err(PolyError::MixedRings(format!("{:?} vs {:?}", first.vars(), g.vars())).into());
        }
    }
    Ok((first.vars().clone(), first.ctx().clone()))
}

impl<C: Scalar> IdealBasis<C> {
    /// Zero generators are dropped. `gens` must be nonempty.
    pub fn new(gens: Vec<MultiPoly<C>>, order: MonomialOrder) -> Result<Self, GroebnerError> {
        let (vars, ctx) = common_ring(&gens)?;
        Self::in_ring(vars, ctx, gens, order)
    }

    /// Like [`IdealBasis::new`] but allows an empty (zero) ideal.
    pub fn in_ring(
        vars: VarList,
        ctx: C::Ctx,
        gens: Vec<MultiPoly<C>>,
        order: MonomialOrder,
    ) -> Result<Self, GroebnerError> {
        if vars.len() > MAX_VARS {
            return Err(GroebnerError::TooManyVariables(vars.len()));
        }
        if order.nvars() != vars.len() {
            return Err(GroebnerError::OrderMismatch {
                order: order.nvars(),
                ring: vars.len(),
            });
        }
        for g in &gens {
            if g.vars() != &vars || g.ctx() != &ctx {
                return Err(PolyError::MixedRings(format!("{:?} vs {:?}", vars, g.vars())).into());
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self { vars, ctx, gens, order })
    }

    /// Grevlex in variable-list order.
    pub fn grevlex(gens: Vec<MultiPoly<C>>) -> Result<Self, GroebnerError> {
        let n = gens.first().map_or(0, |g| g.nvars());
        Self::new(gens, MonomialOrder::grevlex(n))
    }

    pub fn generators(&self) -> &[MultiPoly<C>] {
        &self.gens
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Self, GroebnerError> {
        Self::in_ring(self.vars.clone(), self.ctx.clone(), self.gens.clone(), order)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<C: Scalar> {
    vars: VarList,
    ctx: C::Ctx,
    order: MonomialOrder,
    elements: Vec<MultiPoly<C>>,
    internal: Vec<GPoly<C>>,
}

#[derive(Serialize)]
struct GbJson<'a> {
    vars: &'a [String],
    order: &'a MonomialOrder,
    elements: Vec<PolyJson>,
}

/// Reduced Gröbner basis of `ideal` under its order.
pub fn buchberger<C: Field>(ideal: &IdealBasis<C>, opts: &GbOptions) -> Result<GroebnerBasis<C>, GroebnerError> {
    let order = ideal.order.clone();
    let gens = ideal.gens.iter().map(|g| GPoly::from_poly(g, &order)).collect();
    let internal = Engine::new(&order, opts.deadline).run(gens)?;
    let elements = internal.iter().map(|g| g.to_poly(&ideal.vars, &ideal.ctx)).collect();
    Ok(GroebnerBasis {
        vars: ideal.vars.clone(),
        ctx: ideal.ctx.clone(),
        order,
        elements,
        internal,
    })
}

impl<C: Field> GroebnerBasis<C> {
    /// Elements sorted by leading monomial, smallest first.
    pub fn elements(&self) -> &[MultiPoly<C>] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the basis is `{1}`.
    pub fn is_trivial(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].is_constant()
    }

    fn check_ring(&self, p: &MultiPoly<C>) -> Result<(), GroebnerError> {
        if p.vars() != &self.vars || p.ctx() != &self.ctx {
            return Err(PolyError::MixedRings(format!("{:?} vs {:?}", self.vars, p.vars())).into());
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>, GroebnerError> {
        self.check_ring(p)?;
        let refs: Vec<&GPoly<C>> = self.internal.iter().collect();
        let r = engine::reduce(GPoly::from_poly(p, &self.order), &refs, true);
        Ok(r.to_poly(&self.vars, &self.ctx))
    }

    pub fn contains(&self, p: &MultiPoly<C>) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Independent post-check: every S-polynomial reduces to zero, leading
    /// coefficients are one and no leading monomial divides another.
    pub fn verify(&self) -> bool {
        let refs: Vec<&GPoly<C>> = self.internal.iter().collect();
        let engine: Engine<'_, C> = Engine::new(&self.order, None);
        for (i, f) in self.internal.iter().enumerate() {
            if !f.lead().coef.is_one() {
                return false;
            }
            for (j, g) in self.internal.iter().enumerate() {
                if i != j && f.lm().divides(g.lm()) {
                    return false;
                }
                if j > i && !engine::reduce(engine.spoly(f, g), &refs, false).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_ideal(&self) -> IdealBasis<C> {
        IdealBasis {
            vars: self.vars.clone(),
            ctx: self.ctx.clone(),
            gens: self.elements.clone(),
            order: self.order.clone(),
        }
    }

    /// Hex SHA-256 of the canonical JSON of the basis (variables, order and
    /// elements in basis order).
    pub fn hash(&self) -> String {
        let j = GbJson {
            vars: self.vars.names(),
            order: &self.order,
            elements: self.elements.iter().map(|e| e.to_json()).collect(),
        };
        let s = serde_json::to_string(&j).expect("basis serializes");
        hex::encode(Sha256::digest(s.as_bytes()))
    }
}

/// Multivariate division of `p` by `divisors` under `order`: returns the
/// quotients and the remainder with `p = Σ qᵢ·gᵢ + r`.
pub fn divide<C: Field>(
    p: &MultiPoly<C>,
    divisors: &[MultiPoly<C>],
    order: &MonomialOrder,
) -> Result<(Vec<MultiPoly<C>>, MultiPoly<C>), GroebnerError> {
    let vars = p.vars().clone();
    let ctx = p.ctx().clone();
    let lead = |q: &MultiPoly<C>| {
        q.terms()
            .iter()
            .max_by_key(|(m, _)| order.key(m))
            .map(|(m, c)| (*m, c.clone()))
    };
    let leads: Vec<_> = divisors.iter().map(lead).collect();
    let mut quotients = vec![MultiPoly::zero(&vars, &ctx); divisors.len()];
    let mut rem = MultiPoly::zero(&vars, &ctx);
    let mut rest = p.clone();
    while let Some((m, c)) = lead(&rest) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, l)| l.as_ref().filter(|(lm, _)| lm.divides(&m)).map(|l| (i, l.clone())));
        match hit {
            Some((i, (lm, lc))) => {
                let factor = c * lc.inv().map_err(engine::zero_divisor)?;
                let shift = m.div(&lm);
                quotients[i] = quotients[i].checked_add(&MultiPoly::from_terms(&vars, &ctx, [(shift, factor.clone())]))?;
                rest = rest.checked_sub(&divisors[i].mul_term(&shift, &factor))?;
            }
            None => {
                let t = MultiPoly::from_terms(&vars, &ctx, [(m, c)]);
                rem = rem.checked_add(&t)?;
                rest = rest.checked_sub(&t)?;
            }
        }
    }
    Ok((quotients, rem))
}

/// `I ∩ k[remaining variables]`, computed with a block order that puts `drop`
/// first. The result stays in the original variable list and order.
pub fn elimination_ideal<C: Field>(
    ideal: &IdealBasis<C>,
    drop: &[&str],
    opts: &GbOptions,
) -> Result<IdealBasis<C>, GroebnerError> {
    let elim = MonomialOrder::elimination(&ideal.vars, drop)?;
    let gb = buchberger(&ideal.with_order(elim)?, opts)?;
    let idx: Vec<usize> = drop.iter().map(|d| ideal.vars.index(d)).collect::<Result<_, _>>()?;
    let gens = gb
        .elements
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| idx.iter().all(|&i| m.get(i) == 0)))
        .collect();
    IdealBasis::in_ring(ideal.vars.clone(), ideal.ctx.clone(), gens, ideal.order.clone())
}

/// `I : f^∞` via an auxiliary variable `t`: eliminate `t` from `I + (t·f − 1)`.
pub fn saturate<C: Field>(
    ideal: &IdealBasis<C>,
    f: &MultiPoly<C>,
    opts: &GbOptions,
) -> Result<IdealBasis<C>, GroebnerError> {
    let ext = ideal.vars.with(SATURATION_VAR);
    if ext.len() == ideal.vars.len() {
        return Err(PolyError::MixedRings(format!("{SATURATION_VAR} already in use")).into());
    }
    if ext.len() > MAX_VARS {
        return Err(GroebnerError::TooManyVariables(ext.len()));
    }
    let mut gens: Vec<MultiPoly<C>> = ideal.gens.iter().map(|g| g.embed(&ext)).collect::<Result<_, _>>()?;
    let t = MultiPoly::var(&ext, &ideal.ctx, SATURATION_VAR)?;
    let one = MultiPoly::from_i64(&ext, &ideal.ctx, 1);
    gens.push(t.checked_mul(&f.embed(&ext)?)?.checked_sub(&one)?);
    let big = IdealBasis::in_ring(ext.clone(), ideal.ctx.clone(), gens, MonomialOrder::grevlex(ext.len()))?;
    let elim = elimination_ideal(&big, &[SATURATION_VAR], opts)?;
    let gens = elim
        .gens
        .iter()
        .map(|g| g.embed(&ideal.vars))
        .collect::<Result<_, _>>()?;
    IdealBasis::in_ring(ideal.vars.clone(), ideal.ctx.clone(), gens, ideal.order.clone())
}

/// Saturation by a product, one factor at a time.
pub fn saturate_by_factors<C: Field>(
    ideal: &IdealBasis<C>,
    factors: &[MultiPoly<C>],
    opts: &GbOptions,
) -> Result<IdealBasis<C>, GroebnerError> {
    let mut cur = ideal.clone();
    for f in factors {
        cur = saturate(&cur, f, opts)?;
        // keep the generator list reduced between steps
        let gb = buchberger(&cur, opts)?;
        cur = gb.to_ideal();
        if gb.is_trivial() {
            break;
        }
    }
    Ok(cur)
}

/// Equality of ideals by comparing reduced bases under `a`'s order.
pub fn ideal_equal<C: Field>(a: &IdealBasis<C>, b: &IdealBasis<C>, opts: &GbOptions) -> Result<bool, GroebnerError> {
    if a.vars != b.vars || a.ctx != b.ctx {
        return Err(PolyError::MixedRings(format!("{:?} vs {:?}", a.vars, b.vars)).into());
    }
    let ga = buchberger(a, opts)?;
    let gb = buchberger(&b.with_order(a.order.clone())?, opts)?;
    Ok(ga.elements == gb.elements)
}

pub fn is_trivial<C: Field>(ideal: &IdealBasis<C>, opts: &GbOptions) -> Result<bool, GroebnerError> {
    Ok(buchberger(ideal, opts)?.is_trivial())
}

/// One branch of a dynamic-evaluation computation over `Q[v]/(g)`.
#[derive(Clone, Debug)]
pub struct SplitBranch {
    pub modulus: UniPoly,
    pub basis: GroebnerBasis<QuotElem>,
}

/// Gröbner basis of `gens` over `Q[var]/(g)`, splitting `g` whenever a
/// leading coefficient turns out to be a zero divisor. `order` ranges over
/// the variables other than `var`. Branches are returned in discovery order.
pub fn buchberger_split(
    gens: &[MultiPoly<Rational>],
    var: &str,
    g: &UniPoly,
    order: &MonomialOrder,
    opts: &GbOptions,
) -> Result<Vec<SplitBranch>, GroebnerError> {
    let mut todo = vec![g.monic()];
    let mut out = Vec::new();
    while let Some(m) = todo.pop() {
        let modulus = QuotModulus::new(m.clone()).map_err(GroebnerError::Ring)?;
        let (vars, _) = common_ring(gens)?;
        let rest = vars.without(&[var]);
        let q: Vec<MultiPoly<QuotElem>> = gens
            .iter()
            .map(|p| p.to_quotient(var, &modulus))
            .collect::<Result<_, _>>()?;
        let ideal = IdealBasis::in_ring(rest, modulus, q, order.clone())?;
        match buchberger(&ideal, opts) {
            Ok(basis) => out.push(SplitBranch { modulus: m, basis }),
            Err(GroebnerError::ZeroDivisorHit { factor }) => {
                let factor = factor.monic();
                let (cofactor, r) = m.div_rem(&factor);
                debug_assert!(r.is_zero());
                // pushed in reverse so the factor branch is processed first
                todo.push(cofactor.monic());
                todo.push(factor);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::PrimeField;

    fn q(vars: &VarList, s: &str) -> MultiPoly<Rational> {
        MultiPoly::parse(vars, s).unwrap()
    }

    fn lex_zyx() -> MonomialOrder {
        MonomialOrder::by_names(OrderKind::Lex, &VarList::xyz(), &["z", "y", "x"]).unwrap()
    }

    #[test]
    fn already_reduced_bases() {
        let v = VarList::xyz();
        let i = IdealBasis::new(vec![q(&v, "x+y-1"), q(&v, "z+1")], lex_zyx()).unwrap();
        let gb = buchberger(&i, &GbOptions::default()).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&q(&v, "x+y-1")).unwrap());
        assert!(gb.verify());
        assert!(!gb.is_trivial());

        let i = IdealBasis::grevlex(vec![q(&v, "x^2"), q(&v, "x*y")]).unwrap();
        let gb = buchberger(&i, &GbOptions::default()).unwrap();
        assert_eq!(gb.elements(), &[q(&v, "x*y"), q(&v, "x^2")]);
    }

    #[test]
    fn normal_form_follows_order() {
        let v = VarList::xyz();
        let i = IdealBasis::new(vec![q(&v, "x+y-1"), q(&v, "z+1")], lex_zyx()).unwrap();
        let gb = buchberger(&i, &GbOptions::default()).unwrap();
        // y > x, so y is the leading term of x+y-1 and x is already reduced
        assert_eq!(gb.normal_form(&q(&v, "x")).unwrap(), q(&v, "x"));
        assert_eq!(gb.normal_form(&q(&v, "y")).unwrap(), q(&v, "1-x"));
    }

    #[test]
    fn cyclic3_over_q_and_fp() {
        let v = VarList::xyz();
        let gens = vec![q(&v, "x+y+z"), q(&v, "x*y+y*z+z*x"), q(&v, "x*y*z-1")];
        let gb = buchberger(&IdealBasis::new(gens.clone(), MonomialOrder::lex(3)).unwrap(), &GbOptions::default()).unwrap();
        assert!(gb.verify());
        assert_eq!(
            gb.elements(),
            &[q(&v, "z^3-1"), q(&v, "y^2+y*z+z^2"), q(&v, "x+y+z")]
        );
        let f7 = PrimeField::new(7).unwrap();
        let g7: Vec<MultiPoly<crate::exactring::FpElem>> = gens.iter().map(|g| g.reduce_to::<crate::exactring::FpElem>(&f7).unwrap()).collect();
        let gb7 = buchberger(&IdealBasis::grevlex(g7).unwrap(), &GbOptions::default()).unwrap();
        assert!(gb7.verify());
    }

    #[test]
    fn elimination_examples() {
        let v = VarList::xyz();
        let o = GbOptions::default();
        let e = elimination_ideal(&IdealBasis::grevlex(vec![q(&v, "z-x")]).unwrap(), &["z"], &o).unwrap();
        assert!(e.is_zero_ideal());
        let e = elimination_ideal(&IdealBasis::grevlex(vec![q(&v, "z-x"), q(&v, "z-y")]).unwrap(), &["z"], &o).unwrap();
        assert_eq!(e.generators(), &[q(&v, "x-y")]);
    }

    #[test]
    fn saturation_examples() {
        let v = VarList::xyz();
        let o = GbOptions::default();
        let s = saturate(&IdealBasis::grevlex(vec![q(&v, "x*y")]).unwrap(), &q(&v, "x"), &o).unwrap();
        assert_eq!(buchberger(&s, &o).unwrap().elements(), &[q(&v, "y")]);
        let s = saturate(&IdealBasis::grevlex(vec![q(&v, "x^2")]).unwrap(), &q(&v, "x"), &o).unwrap();
        assert!(is_trivial(&s, &o).unwrap());
    }

    #[test]
    fn equality_and_triviality() {
        let v = VarList::xyz();
        let o = GbOptions::default();
        let a = IdealBasis::grevlex(vec![q(&v, "x"), q(&v, "y")]).unwrap();
        let b = IdealBasis::grevlex(vec![q(&v, "y"), q(&v, "x")]).unwrap();
        assert!(ideal_equal(&a, &b, &o).unwrap());
        let a = IdealBasis::grevlex(vec![q(&v, "x")]).unwrap();
        let b = IdealBasis::grevlex(vec![q(&v, "x^2")]).unwrap();
        assert!(!ideal_equal(&a, &b, &o).unwrap());
        assert!(is_trivial(&IdealBasis::grevlex(vec![q(&v, "x"), q(&v, "x-1")]).unwrap(), &o).unwrap());
        assert!(!is_trivial(&IdealBasis::grevlex(vec![q(&v, "x+y-1"), q(&v, "z+1")]).unwrap(), &o).unwrap());
    }

    #[test]
    fn division_cofactors_recombine() {
        let v = VarList::xyz();
        let gs = vec![q(&v, "x*y-z"), q(&v, "y^2-1")];
        let p = q(&v, "x^2*y^3 + 3*z*y - x + 5");
        let o = MonomialOrder::grevlex(3);
        let (qs, r) = divide(&p, &gs, &o).unwrap();
        let mut back = r.clone();
        for (qi, gi) in qs.iter().zip(&gs) {
            back = back.checked_add(&qi.checked_mul(gi).unwrap()).unwrap();
        }
        assert_eq!(back, p);
    }

    #[test]
    fn split_on_zero_divisor() {
        // over Q[v]/(v^2-1) the coefficient v-1 of x is a zero divisor
        let vars = VarList::new(&["x", "v"]);
        let gens = vec![q(&vars, "(v-1)*x + 1")];
        let g = UniPoly::from_i64s(&[-1, 0, 1]);
        let branches = buchberger_split(&gens, "v", &g, &MonomialOrder::grevlex(1), &GbOptions::default()).unwrap();
        assert_eq!(branches.len(), 2);
        // at v = 1 the ideal is (1); at v = -1 it is (x - 1/2)
        let one = branches.iter().find(|b| b.modulus == UniPoly::from_i64s(&[-1, 1])).unwrap();
        assert!(one.basis.is_trivial());
        let minus = branches.iter().find(|b| b.modulus == UniPoly::from_i64s(&[1, 1])).unwrap();
        assert_eq!(minus.basis.len(), 1);
        assert!(!minus.basis.is_trivial());
    }

    #[test]
    fn hash_is_stable() {
        let v = VarList::xyz();
        let a = buchberger(&IdealBasis::grevlex(vec![q(&v, "x"), q(&v, "y")]).unwrap(), &GbOptions::default()).unwrap();
        let b = buchberger(&IdealBasis::grevlex(vec![q(&v, "y"), q(&v, "x+y")]).unwrap(), &GbOptions::default()).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
