//! Truncated local Siegel series as polynomials in `t = p^{-s}`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::oracle::{oracle_integral, term_oracle, OracleBox};
use super::shape::{LocalVector, QuadLatticeShape};
use super::terms::{invariants, term_ramified, term_unramified};
use crate::arith::numtheory::{pow_rat, Splitting};
use crate::arith::Poly;
use crate::error::{consistency, validation, Result};
use crate::hermitian::LocalVectorData;
use crate::SeriesPoly;

/// How many terms past `k + 1` are checked to vanish.
const VANISHING_MARGIN: u32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct LocalSeries {
    pub p: u64,
    pub case: Splitting,
    pub n: u32,
    pub terms: SeriesPoly,
}

/// Which closed form produces the terms of a single-vector series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermSource {
    ClosedForm,
    Oracle { budget: u64 },
}

fn term(
    r: u32,
    eta: &LocalVector,
    shape: &QuadLatticeShape,
    src: TermSource,
) -> Result<BigRational> {
    match src {
        TermSource::Oracle { budget } => term_oracle(r, eta, shape, budget),
        TermSource::ClosedForm => match shape.form {
            super::shape::QuadForm::SplitHyperbolic => term_unramified(r, eta, shape),
            super::shape::QuadForm::RamifiedNormal => term_ramified(r, eta, shape),
        },
    }
}

/// `Σ_r B_{r,η} u^r` (or `C_{r,η}`), checking that terms beyond `k + 1` vanish.
pub fn term_series(eta: &LocalVector, shape: &QuadLatticeShape, src: TermSource) -> Result<SeriesPoly> {
    let inv = invariants(eta, shape);
    let Some(k) = inv.k else {
        return validation("series requires q(η) ≠ 0");
    };
    if inv.k2 < 0 {
        return Ok(Poly::zero());
    }
    let k = k.max(0) as u32;
    let margin = match src {
        TermSource::ClosedForm => VANISHING_MARGIN,
        TermSource::Oracle { .. } => 0,
    };
    let mut coeffs = Vec::new();
    for r in 0..=(k + 1 + margin) {
        let c = term(r, eta, shape, src)?;
        if r > k + 1 {
            if !c.is_zero() {
                return consistency(format!("term r={r} is nonzero beyond k+1 = {}", k + 1));
            }
        } else {
            coeffs.push(c);
        }
    }
    Ok(Poly::new(coeffs))
}

/// Substitutes `u = p·t²` and multiplies by `c·t^j`.
fn push_unramified(acc: &mut SeriesPoly, b: &SeriesPoly, p: u64, c: &BigRational, j: usize) {
    let inflated = b.scale_var(&pow_rat(p, 1)).inflate(2).shift(j).scale(c);
    *acc = &*acc + &inflated;
}

/// The local factor `E^T_{2,p}(s)` as a polynomial in `t = p^{-s}`.
pub fn assemble_series(data: &LocalVectorData) -> Result<LocalSeries> {
    assemble_with(data, TermSource::ClosedForm)
}

pub fn assemble_with(data: &LocalVectorData, src: TermSource) -> Result<LocalSeries> {
    let shape = data.shape();
    let p = data.p;
    let n = data.n as i64;
    let mut acc = SeriesPoly::zero();
    match data.case {
        Splitting::Inert => {
            let b = term_series(&data.t, &shape, src)?;
            push_unramified(&mut acc, &b, p, &BigRational::one(), 0);
        }
        Splitting::Split => {
            let h = shape.planes();
            let xs: Vec<usize> = (0..h).collect();
            let ys: Vec<usize> = (h..2 * h).collect();
            let b = term_series(&data.t, &shape, src)?;
            push_unramified(&mut acc, &b, p, &BigRational::one(), 0);
            // r₁ < r₂ shifts T₁ down, r₁ > r₂ shifts T₂ down
            for (idx, kk) in [(&xs, data.k1), (&ys, data.k2)] {
                for i in 1..=(kk.max(0) as u32 + 1) {
                    let eta = data.t.scale_down(idx, i);
                    let b = term_series(&eta, &shape, src)?;
                    if i as i64 > kk && !b.is_zero() {
                        return consistency("sub-vector outside the lattice has a nonzero series");
                    }
                    push_unramified(&mut acc, &b, p, &pow_rat(p, n * i as i64), i as usize);
                }
            }
        }
        Splitting::Ramified => {
            let u = data
                .unit_u
                .as_ref()
                .ok_or_else(|| crate::Error::Validation("ramified data needs u".into()))?;
            let eta = data.t.divide_by_uniformizer(&shape, u)?;
            let c_eta = term_series(&eta, &shape, src)?;
            push_unramified(&mut acc, &c_eta, p, &BigRational::one(), 0);
            let c_t = term_series(&data.t, &shape, src)?;
            // p^{-n} Σ_{r≥1} p^r t^{2r-1} C_{r,T}
            let tail = Poly::new(c_t.coeffs().iter().skip(1).cloned().collect::<Vec<_>>());
            let tail = tail.scale_var(&pow_rat(p, 1)).inflate(2).shift(1).scale(&pow_rat(p, 1 - n));
            acc = &acc + &tail;
        }
    }
    Ok(LocalSeries { p, case: data.case, n: data.n, terms: acc })
}

/// The same factor computed directly from the unfolded integrals, each by enumeration.
pub fn assemble_series_oracle(data: &LocalVectorData, budget: u64) -> Result<LocalSeries> {
    let shape = data.shape();
    let p = data.p;
    let h = shape.planes();
    let k = data.k;
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut add = |deg: usize, c: BigRational| {
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigRational::zero());
        }
        coeffs[deg] += c;
    };
    match data.case {
        Splitting::Inert => {
            for r in 0..=(k + 1) {
                let b = term_oracle(r, &data.t, &shape, budget)?;
                add(2 * r as usize, pow_rat(p, r as i64) * b);
            }
        }
        Splitting::Split => {
            let rmax = k + 1 + data.k1.max(data.k2).max(0) as u32;
            for r1 in 0..=rmax {
                for r2 in 0..=rmax {
                    if r1.min(r2) > k + 1 {
                        continue;
                    }
                    let bx = OracleBox { sx: vec![r1; h], sy: vec![r2; h], c: r1.max(r2) };
                    let s = oracle_integral(&shape, &data.t, &bx, budget)?;
                    add((r1 + r2) as usize, pow_rat(p, r1.min(r2) as i64) * s);
                }
            }
        }
        Splitting::Ramified => {
            // ∫_{ϖ^{-r}L} ψ((T/ϖ, v))·[p^{⌊r/2⌋}q(v) ∈ Z_p] dv with weight p^{⌈r/2⌉}
            let u = data
                .unit_u
                .as_ref()
                .ok_or_else(|| crate::Error::Validation("ramified data needs u".into()))?;
            let eta = data.t.divide_by_uniformizer(&shape, u)?;
            let m = shape.m;
            for r in 0..=(2 * k + 2) {
                let j = r / 2;
                let odd = r % 2;
                let mut sx = vec![j; h];
                for s in sx.iter_mut().skip(m) {
                    *s += odd;
                }
                let bx = OracleBox { sx: sx.clone(), sy: sx, c: j };
                let v = oracle_integral(&shape, &eta, &bx, budget)?;
                add(r as usize, pow_rat(p, (r as i64 + 1) / 2) * v);
            }
        }
    }
    Ok(LocalSeries { p, case: data.case, n: data.n, terms: Poly::new(coeffs) })
}

/// The normalising factor `1 − p^n t²` (unramified) or `1 − p^{n/2} t` (ramified).
pub fn normalising_factor(case: Splitting, p: u64, n: u32) -> SeriesPoly {
    match case {
        Splitting::Ramified => Poly::new(vec![BigRational::one(), -pow_rat(p, n as i64 / 2)]),
        _ => Poly::new(vec![BigRational::one(), BigRational::zero(), -pow_rat(p, n as i64)]),
    }
}
