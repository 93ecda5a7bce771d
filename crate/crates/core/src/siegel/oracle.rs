//! Brute-force evaluation of the lattice integrals by enumeration modulo `p^M`.
//!
//! An integral `∫ ψ((η, v))·[p^c q(v) ∈ Z_p] dv` over a box `⊕ p^{-s}Z_p` only sees
//! `v` modulo a finite power of `p`. Each hyperbolic plane contributes a histogram
//! of `(quadratic residue, linear residue)` pairs; the planes are convolved and the
//! character sum is collapsed class by class of the linear residue's valuation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::shape::{LocalVector, QuadLatticeShape};
use crate::arith::numtheory::{pow_big, ramanujan_sum};
use crate::error::{consistency, validation, Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Scales of the integration box: plane `i` has `x ∈ p^{-sx[i]}Z_p`, `y ∈ p^{-sy[i]}Z_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBox {
    pub sx: Vec<u32>,
    pub sy: Vec<u32>,
    /// Keep `v` only when `p^c·q(v) ∈ Z_p`.
    pub c: u32,
}

impl OracleBox {
    pub fn uniform(planes: usize, r: u32) -> Self {
        OracleBox { sx: vec![r; planes], sy: vec![r; planes], c: r }
    }
}

struct Plan {
    p: u64,
    qm: u32,
    am: u32,
    m: u32,
}

fn upow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|v| *v < (1u64 << 40))
        .ok_or_else(|| Error::Resource(format!("modulus {p}^{e} too large for enumeration")))
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn residue(x: &BigInt, m: u64) -> u64 {
    let mb = BigInt::from(m);
    let r = ((x % &mb) + &mb) % &mb;
    r.to_u64().unwrap()
}

/// Exact value of the integral, with `vol(L) = 1`.
pub fn oracle_integral(
    shape: &QuadLatticeShape,
    eta: &LocalVector,
    bx: &OracleBox,
    budget: u64,
) -> Result<BigRational> {
    let h = shape.planes();
    if eta.coords.len() != shape.rank() || bx.sx.len() != h || bx.sy.len() != h {
        return validation("oracle: dimension mismatch");
    }
    let p = shape.p;
    let s_max = bx.sx.iter().chain(bx.sy.iter()).copied().max().unwrap_or(0);
    let qm = (2 * s_max).saturating_sub(bx.c);
    let am = eta.shift + s_max;
    if eta.prec < am {
        return validation(format!(
            "oracle needs η modulo p^{am}, only p^{} available",
            eta.prec
        ));
    }
    let plan = Plan { p, qm, am, m: qm.max(am) };
    let pm = upow(p, plan.m)?;
    let states = upow(p, qm + am)?;
    let work = (h as u128) * (pm as u128) * (pm as u128)
        + (h.saturating_sub(1) as u128) * (states as u128) * (states as u128);
    if work > budget as u128 {
        return Err(Error::Resource(format!(
            "enumeration needs ~{work} steps, budget is {budget}"
        )));
    }

    let mut total: Option<BTreeMap<(u64, u64), u128>> = None;
    for i in 0..h {
        let hist = plane_histogram(shape, eta, bx, i, s_max, &plan)?;
        total = Some(match total {
            None => hist,
            Some(acc) => convolve(&acc, &hist, &plan)?,
        });
    }
    let total = total.unwrap_or_else(|| BTreeMap::from([((0, 0), 1)]));

    let pam = upow(p, am)?;
    // counts of the character argument, grouped by valuation class
    let mut classes: BTreeMap<u32, (u128, Option<u128>)> = BTreeMap::new();
    let mut by_arg: BTreeMap<u64, u128> = BTreeMap::new();
    for (&(q, a), &cnt) in &total {
        if q == 0 {
            *by_arg.entry(a).or_insert(0) += cnt;
        }
    }
    for v in 0..=am {
        let size = if v == am { 1 } else { upow(p, am - v)? - upow(p, am - v - 1)? };
        classes.insert(v, (size as u128, None));
    }
    for a in 0..pam {
        let v = if a == 0 { am } else { a_valuation(a, p) };
        let cnt = by_arg.get(&a).copied().unwrap_or(0);
        let entry = classes.get_mut(&v).unwrap();
        match entry.1 {
            None => entry.1 = Some(cnt),
            Some(prev) if prev != cnt => {
                return consistency(format!(
                    "oracle: character counts not constant on valuation class {v}"
                ))
            }
            _ => {}
        }
    }
    let mut value = BigInt::zero();
    for (v, (_, cnt)) in &classes {
        let cnt = BigInt::from(cnt.unwrap_or(0));
        value += cnt * ramanujan_sum(p, am - v, &BigInt::from(1));
    }
    let s_sum: u32 = bx.sx.iter().chain(bx.sy.iter()).sum();
    let rank = shape.rank() as u32;
    Ok(BigRational::new(value * pow_big(p, s_sum), pow_big(p, rank * plan.m)))
}

fn a_valuation(mut a: u64, p: u64) -> u32 {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

fn plane_histogram(
    shape: &QuadLatticeShape,
    eta: &LocalVector,
    bx: &OracleBox,
    i: usize,
    s_max: u32,
    plan: &Plan,
) -> Result<BTreeMap<(u64, u64), u128>> {
    let p = plan.p;
    let h = shape.planes();
    let wt = shape.plane_weight(i);
    let (sx, sy) = (bx.sx[i], bx.sy[i]);
    let pqm = upow(p, plan.qm)?;
    let pam = upow(p, plan.am)?;
    let pm = upow(p, plan.m)?;
    let qcoef = residue(&pow_big(p, wt + 2 * s_max - sx - sy), pqm);
    let ex = residue(&(&eta.coords[i] * pow_big(p, wt + s_max - sy)), pam);
    let ey = residue(&(&eta.coords[h + i] * pow_big(p, wt + s_max - sx)), pam);
    let rows: Vec<BTreeMap<(u64, u64), u128>> = (0..pm)
        .into_par_iter()
        .map(|wx| {
            let mut row = BTreeMap::new();
            let qx = mulmod(qcoef, wx % pqm, pqm);
            let ax = mulmod(ey, wx % pam, pam);
            for wy in 0..pm {
                let q = mulmod(qx, wy % pqm, pqm);
                let a = (ax + mulmod(ex, wy % pam, pam)) % pam;
                *row.entry((q, a)).or_insert(0u128) += 1;
            }
            row
        })
        .collect();
    let mut hist = BTreeMap::new();
    for row in rows {
        for (k, v) in row {
            *hist.entry(k).or_insert(0) += v;
        }
    }
    Ok(hist)
}

fn convolve(
    a: &BTreeMap<(u64, u64), u128>,
    b: &BTreeMap<(u64, u64), u128>,
    plan: &Plan,
) -> Result<BTreeMap<(u64, u64), u128>> {
    let pqm = upow(plan.p, plan.qm)?;
    let pam = upow(plan.p, plan.am)?;
    let av: Vec<_> = a.iter().collect();
    let parts: Vec<BTreeMap<(u64, u64), u128>> = av
        .par_chunks(64)
        .map(|chunk| {
            let mut out = BTreeMap::new();
            for (&(q1, a1), &c1) in chunk {
                for (&(q2, a2), &c2) in b {
                    *out.entry(((q1 + q2) % pqm, (a1 + a2) % pam)).or_insert(0) += c1 * c2;
                }
            }
            out
        })
        .collect();
    let mut out = BTreeMap::new();
    for part in parts {
        for (k, v) in part {
            *out.entry(k).or_insert(0) += v;
        }
    }
    Ok(out)
}

/// `∫_{p^{-r}L} ψ((η, x))·[p^r q(x) ∈ Z_p] dx`, the common shape of `B_{r,η}` and `C_{r,η}`.
pub fn term_oracle(
    r: u32,
    eta: &LocalVector,
    shape: &QuadLatticeShape,
    budget: u64,
) -> Result<BigRational> {
    oracle_integral(shape, eta, &OracleBox::uniform(shape.planes(), r), budget)
}

/// The split-prime integral over `x ∈ p^{-r₁}L`, `y ∈ p^{-r₂}L` with `p^{max(r₁,r₂)}q ∈ Z_p`.
pub fn split_pair_oracle(
    r1: u32,
    r2: u32,
    t: &LocalVector,
    shape: &QuadLatticeShape,
    budget: u64,
) -> Result<BigRational> {
    let h = shape.planes();
    let bx = OracleBox { sx: vec![r1; h], sy: vec![r2; h], c: r1.max(r2) };
    oracle_integral(shape, t, &bx, budget)
}
