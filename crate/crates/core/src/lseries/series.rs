use serde::Serialize;

use crate::exactring::{RingError, Scalar, ZpnCtx, ZpnElem};
use crate::mpoly::MultiPoly;

/// Truncated power series in the local coordinates `X = x - a`, `Y = y - b`
/// with coefficients in `Z/p^N`; everything of total degree `> D` is dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PSeries2 {
    ctx: ZpnCtx,
    degree: u32,
    center: (i64, i64),
    coeffs: Vec<ZpnElem>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SeriesCoeff {
    pub i: u32,
    pub j: u32,
    pub r: u64,
}

fn idx(i: u32, j: u32) -> usize {
    let t = (i + j) as usize;
    t * (t + 1) / 2 + j as usize
}

fn size(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

impl PSeries2 {
    pub fn zero(ctx: ZpnCtx, degree: u32, center: (i64, i64)) -> Self {
        Self {
            ctx,
            degree,
            center,
            coeffs: vec![ctx.elem(0); size(degree)],
        }
    }

    pub fn constant(ctx: ZpnCtx, degree: u32, center: (i64, i64), c: ZpnElem) -> Self {
        let mut s = Self::zero(ctx, degree, center);
        s.coeffs[0] = c;
        s
    }

    /// `X` (`which = 0`) or `Y` (`which = 1`).
    pub fn coordinate(ctx: ZpnCtx, degree: u32, center: (i64, i64), which: usize) -> Self {
        let mut s = Self::zero(ctx, degree, center);
        if degree > 0 {
            let k = if which == 0 { idx(1, 0) } else { idx(0, 1) };
            s.coeffs[k] = ctx.elem(1);
        }
        s
    }

    /// `a + X` or `b + Y`: the coordinate function itself.
    pub fn variable(ctx: ZpnCtx, degree: u32, center: (i64, i64), which: usize) -> Self {
        let mut s = Self::coordinate(ctx, degree, center, which);
        s.coeffs[0] = ctx.elem(if which == 0 { center.0 } else { center.1 });
        s
    }

    pub fn ctx(&self) -> ZpnCtx {
        self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn center(&self) -> (i64, i64) {
        self.center
    }

    pub fn coeff(&self, i: u32, j: u32) -> ZpnElem {
        if i + j > self.degree {
            return self.ctx.elem(0);
        }
        self.coeffs[idx(i, j)]
    }

    pub fn set(&mut self, i: u32, j: u32, c: ZpnElem) {
        assert!(i + j <= self.degree, "index ({i}, {j}) beyond degree {}", self.degree);
        self.coeffs[idx(i, j)] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn same_ring(&self, o: &Self) {
        assert!(
            self.ctx == o.ctx && self.degree == o.degree && self.center == o.center,
            "mixed series rings"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_ring(o);
        let mut s = self.clone();
        for (a, b) in s.coeffs.iter_mut().zip(&o.coeffs) {
            *a = *a + *b;
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_ring(o);
        let mut s = self.clone();
        for (a, b) in s.coeffs.iter_mut().zip(&o.coeffs) {
            *a = *a - *b;
        }
        s
    }

    pub fn scale(&self, c: &ZpnElem) -> Self {
        let mut s = self.clone();
        for a in &mut s.coeffs {
            *a = *a * *c;
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_ring(o);
        let d = self.degree;
        let mut out = Self::zero(self.ctx, d, self.center);
        for t1 in 0..=d {
            for j1 in 0..=t1 {
                let a = self.coeffs[idx(t1 - j1, j1)];
                if a.is_zero() {
                    continue;
                }
                for t2 in 0..=d - t1 {
                    for j2 in 0..=t2 {
                        let b = o.coeffs[idx(t2 - j2, j2)];
                        let k = idx(t1 - j1 + t2 - j2, j1 + j2);
                        out.coeffs[k] = out.coeffs[k] + a * b;
                    }
                }
            }
        }
        out
    }

    /// Inverse of a series whose constant term is a unit mod `p`.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let c0 = self.coeffs[0].inv()?;
        let d = self.degree;
        let mut g = Self::zero(self.ctx, d, self.center);
        g.coeffs[0] = c0;
        for t in 1..=d {
            for j in 0..=t {
                let i = t - j;
                let mut acc = self.ctx.elem(0);
                for k in 0..=i {
                    for l in 0..=j {
                        if k + l == 0 {
                            continue;
                        }
                        acc = acc + self.coeffs[idx(k, l)] * g.coeffs[idx(i - k, j - l)];
                    }
                }
                g.coeffs[idx(i, j)] = -(acc * c0);
            }
        }
        Ok(g)
    }

    /// Reduction to precision `n <= N` and degree `d <= D`.
    pub fn truncate(&self, n: u32, d: u32) -> Self {
        let ctx = ZpnCtx::new(self.ctx.p(), n.min(self.ctx.precision())).expect("valid precision");
        let d = d.min(self.degree);
        let mut out = Self::zero(ctx, d, self.center);
        for t in 0..=d {
            for j in 0..=t {
                out.coeffs[idx(t - j, j)] = self.coeffs[idx(t - j, j)].truncate(ctx.precision());
            }
        }
        out
    }

    /// `p(args)` with each variable replaced by a series.
    pub fn eval_poly(poly: &MultiPoly<ZpnElem>, args: &[PSeries2]) -> Self {
        let first = &args[0];
        let mut out = Self::zero(first.ctx, first.degree, first.center);
        let mut powers: Vec<Vec<PSeries2>> = args
            .iter()
            .map(|a| vec![Self::constant(a.ctx, a.degree, a.center, a.ctx.elem(1)), a.clone()])
            .collect();
        for (m, c) in poly.terms() {
            let mut t = Self::constant(first.ctx, first.degree, first.center, *c);
            for (v, pw) in powers.iter_mut().enumerate() {
                let e = m.get(v) as usize;
                while pw.len() <= e {
                    let next = pw[pw.len() - 1].mul(&args[v]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitutes `X = αX' + βY'`, `Y = γX' + δY'`.
    pub fn compose_linear(&self, m: [i64; 4]) -> Self {
        let (ctx, d, c) = (self.ctx, self.degree, self.center);
        let x = Self::coordinate(ctx, d, c, 0);
        let y = Self::coordinate(ctx, d, c, 1);
        let nx = x.scale(&ctx.elem(m[0])).add(&y.scale(&ctx.elem(m[1])));
        let ny = x.scale(&ctx.elem(m[2])).add(&y.scale(&ctx.elem(m[3])));
        let mut out = Self::zero(ctx, d, c);
        let mut px = vec![Self::constant(ctx, d, c, ctx.elem(1))];
        let mut py = px.clone();
        for k in 1..=d as usize {
            px.push(px[k - 1].mul(&nx));
            py.push(py[k - 1].mul(&ny));
        }
        for t in 0..=d {
            for j in 0..=t {
                let a = self.coeffs[idx(t - j, j)];
                if !a.is_zero() {
                    out = out.add(&px[(t - j) as usize].mul(&py[j as usize]).scale(&a));
                }
            }
        }
        out
    }

    /// Coefficients as `(i, j, residue mod p^N)`, by total degree.
    pub fn table(&self) -> Vec<SeriesCoeff> {
        self.table_mod(self.ctx.modulus())
    }

    /// Coefficients reduced mod `p`.
    pub fn table_mod_p(&self) -> Vec<SeriesCoeff> {
        self.table_mod(self.ctx.p())
    }

    fn table_mod(&self, m: u64) -> Vec<SeriesCoeff> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for t in 0..=self.degree {
            for j in 0..=t {
                out.push(SeriesCoeff {
                    i: t - j,
                    j,
                    r: self.coeffs[idx(t - j, j)].residue() % m,
                });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ZpnCtx {
        ZpnCtx::new(7, 3).unwrap()
    }

    #[test]
    fn inverse_of_one_plus_x() {
        let c = ctx();
        let one = PSeries2::constant(c, 4, (0, 0), c.elem(1));
        let s = one.add(&PSeries2::coordinate(c, 4, (0, 0), 0));
        let inv = s.inverse().unwrap();
        for k in 0..=4u32 {
            assert_eq!(inv.coeff(k, 0), c.elem(if k % 2 == 0 { 1 } else { -1 }));
        }
        assert_eq!(s.mul(&inv), one);
        let bad = PSeries2::coordinate(c, 4, (0, 0), 1);
        assert!(bad.inverse().is_err());
    }

    #[test]
    fn products_truncate_by_degree() {
        let c = ctx();
        let x = PSeries2::coordinate(c, 2, (0, 0), 0);
        let y = PSeries2::coordinate(c, 2, (0, 0), 1);
        assert_eq!(x.mul(&y).coeff(1, 1), c.elem(1));
        assert!(x.mul(&y).mul(&x).is_zero());
    }
}
