//! Buchberger's algorithm on order-sorted term vectors.
//!
//! Polynomials are converted once into [`GPoly`] (terms sorted by the order key,
//! leading term first) and stay in that form for the whole run. Pairs are
//! selected by the normal strategy and pruned with the Gebauer–Möller
//! criteria, which include Buchberger's product and chain criteria.

use std::collections::BTreeMap;
use std::time::Instant;

use super::order::{Key, MonomialOrder};
use super::GroebnerError;
use crate::exactring::{Field, RingError, Scalar};
use crate::mpoly::{Monomial, MultiPoly, VarList, MAX_VARS};

#[derive(Clone, Debug)]
pub(crate) struct Term<C> {
    pub key: Key,
    pub mono: Monomial,
    pub coef: C,
}

#[derive(Clone, Debug)]
pub(crate) struct GPoly<C> {
    pub terms: Vec<Term<C>>,
}

fn key_add(a: &Key, b: &Key) -> Key {
    let mut k = [0; MAX_VARS];
    for i in 0..MAX_VARS {
        k[i] = a[i] + b[i];
    }
    k
}

fn key_sub(a: &Key, b: &Key) -> Key {
    let mut k = [0; MAX_VARS];
    for i in 0..MAX_VARS {
        k[i] = a[i] - b[i];
    }
    k
}

impl<C: Scalar> GPoly<C> {
    pub fn from_poly(p: &MultiPoly<C>, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term<C>> = p
            .terms()
            .iter()
            .map(|(m, c)| Term {
                key: order.key(m),
                mono: *m,
                coef: c.clone(),
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.key.cmp(&a.key));
        Self { terms }
    }

    pub fn to_poly(&self, vars: &VarList, ctx: &C::Ctx) -> MultiPoly<C> {
        MultiPoly::from_terms(vars, ctx, self.terms.iter().map(|t| (t.mono, t.coef.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term<C> {
        &self.terms[0]
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }
}

impl<C: Field> GPoly<C> {
    pub fn make_monic(&mut self) -> Result<(), GroebnerError> {
        let Some(first) = self.terms.first() else {
            return Ok(());
        };
        if first.coef.is_one() {
            return Ok(());
        }
        let inv = first.coef.inv().map_err(zero_divisor)?;
        for t in &mut self.terms {
            t.coef = t.coef.clone() * inv.clone();
        }
        Ok(())
    }
}

pub(crate) fn zero_divisor(e: RingError) -> GroebnerError {
    match e {
        RingError::NotAUnit {
            witness: Some(factor),
            ..
        } => GroebnerError::ZeroDivisorHit { factor },
        other => GroebnerError::Ring(other),
    }
}

/// Working polynomial for reductions: terms keyed by order key.
struct Accumulator<C> {
    map: BTreeMap<Key, (Monomial, C)>,
}

impl<C: Scalar> Accumulator<C> {
    fn new(p: GPoly<C>) -> Self {
        Self {
            map: p.terms.into_iter().map(|t| (t.key, (t.mono, t.coef))).collect(),
        }
    }

    /// Adds `factor * shift * g` skipping `g`'s leading term, which the caller
    /// has already cancelled.
    fn add_tail_multiple(&mut self, g: &GPoly<C>, shift_key: &Key, shift: &Monomial, factor: &C) {
        for t in &g.terms[1..] {
            let key = key_add(&t.key, shift_key);
            let c = factor.clone() * t.coef.clone();
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert((t.mono.mul(shift), c));
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().1.clone() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().1 = s;
                    }
                }
            }
        }
    }

    fn pop_lead(&mut self) -> Option<Term<C>> {
        self.map.pop_last().map(|(key, (mono, coef))| Term { key, mono, coef })
    }
}

/// Reduces `f` by the monic polynomials `basis`. With `full`, every term is
/// reduced; otherwise only until the leading term is irreducible.
pub(crate) fn reduce<C: Scalar>(f: GPoly<C>, basis: &[&GPoly<C>], full: bool) -> GPoly<C> {
    let mut acc = Accumulator::new(f);
    let mut out: Vec<Term<C>> = Vec::new();
    while let Some(t) = acc.pop_lead() {
        let reducer = basis
            .iter()
            .filter(|g| g.lm().divides(&t.mono))
            .min_by_key(|g| g.terms.len());
        match reducer {
            Some(g) => {
                let shift = t.mono.div(g.lm());
                let shift_key = key_sub(&t.key, &g.lead().key);
                acc.add_tail_multiple(g, &shift_key, &shift, &(-t.coef));
            }
            None => {
                out.push(t);
                if !full {
                    while let Some(rest) = acc.pop_lead() {
                        out.push(rest);
                    }
                }
            }
        }
    }
    GPoly { terms: out }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: Key,
    degree: u32,
}

pub(crate) struct Engine<'a, C: Field> {
    order: &'a MonomialOrder,
    deadline: Option<Instant>,
    polys: Vec<GPoly<C>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a, C: Field> Engine<'a, C> {
    pub fn new(order: &'a MonomialOrder, deadline: Option<Instant>) -> Self {
        Self {
            order,
            deadline,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn check_deadline(&self) -> Result<(), GroebnerError> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(GroebnerError::BudgetExceeded),
            _ => Ok(()),
        }
    }

    fn active_refs(&self) -> Vec<&GPoly<C>> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    pub fn spoly(&self, f: &GPoly<C>, g: &GPoly<C>) -> GPoly<C> {
        let lcm = f.lm().lcm(g.lm());
        let lcm_key = self.order.key(&lcm);
        let sf = lcm.div(f.lm());
        let sg = lcm.div(g.lm());
        let kf = key_sub(&lcm_key, &f.lead().key);
        let kg = key_sub(&lcm_key, &g.lead().key);
        let one = C::one(&f.lead().coef.ctx());
        let mut acc: Accumulator<C> = Accumulator {
            map: BTreeMap::new(),
        };
        acc.add_tail_multiple(f, &kf, &sf, &one);
        acc.add_tail_multiple(g, &kg, &sg, &(-one));
        let mut terms = Vec::with_capacity(acc.map.len());
        while let Some(t) = acc.pop_lead() {
            terms.push(t);
        }
        GPoly { terms }
    }

    /// Runs Buchberger on the given generators and returns the reduced basis,
    /// sorted by leading monomial (smallest first).
    pub fn run(mut self, gens: Vec<GPoly<C>>) -> Result<Vec<GPoly<C>>, GroebnerError> {
        let mut gens: Vec<GPoly<C>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        gens.sort_by_key(|a| a.lead().key);
        for g in gens {
            self.check_deadline()?;
            let mut r = reduce(g, &self.active_refs(), false);
            if r.is_zero() {
                continue;
            }
            r.make_monic()?;
            if r.is_constant() {
                return Ok(vec![r]);
            }
            self.update(r);
        }
        while let Some(pair) = self.select_pair() {
            self.check_deadline()?;
            let s = self.spoly(&self.polys[pair.i], &self.polys[pair.j]);
            let mut r = reduce(s, &self.active_refs(), false);
            if r.is_zero() {
                continue;
            }
            r.make_monic()?;
            if r.is_constant() {
                return Ok(vec![r]);
            }
            self.update(r);
        }
        self.finish()
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| a.key.cmp(&b.key))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let lcm = self.polys[i].lm().lcm(self.polys[j].lm());
        Pair {
            i,
            j,
            key: self.order.key(&lcm),
            degree: lcm.degree(),
            lcm,
        }
    }

    /// Gebauer–Möller update for a new monic polynomial `h`.
    fn update(&mut self, h: GPoly<C>) {
        let hi = self.polys.len();
        let hlm = *h.lm();
        self.polys.push(h);
        self.active.push(true);

        let candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| self.make_pair(g, hi))
            .collect();
        let coprime = |p: &Pair| self.polys[p.i].lm().is_coprime(&hlm);

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        let mut rest = candidates;
        while let Some(p) = rest.pop() {
            let dominated = rest
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime(&p) || !dominated {
                kept.push(p);
            }
        }
        // product criterion
        kept.retain(|p| !coprime(p));

        // old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&hlm) != p.lcm
                && polys[p.j].lm().lcm(&hlm) != p.lcm)
        });
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && hlm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
    }

    fn finish(self) -> Result<Vec<GPoly<C>>, GroebnerError> {
        let mut basis: Vec<GPoly<C>> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        // minimal basis: drop elements whose leading monomial is divisible by another's
        let lms: Vec<Monomial> = basis.iter().map(|p| *p.lm()).collect();
        let mut keep = vec![true; basis.len()];
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j && keep[j] && lms[j].divides(&lms[i]) && (lms[i] != lms[j] || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut k = 0;
        basis.retain(|_| {
            k += 1;
            keep[k - 1]
        });
        // tail reduction
        let mut reduced = Vec::with_capacity(basis.len());
        for i in 0..basis.len() {
            let others: Vec<&GPoly<C>> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p)
                .collect();
            let lead = basis[i].terms[0].clone();
            let tail = GPoly {
                terms: basis[i].terms[1..].to_vec(),
            };
            let mut r = reduce(tail, &others, true);
            r.terms.insert(0, lead);
            reduced.push(r);
        }
        reduced.sort_by_key(|a| a.lead().key);
        Ok(reduced)
    }
}
