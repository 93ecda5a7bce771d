//! Closed forms for the terms `B_{r,η}` (split lattice) and `C_{r,η}` (ramified lattice).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::shape::{LocalVector, QuadForm, QuadLatticeShape};
use crate::arith::numtheory::{pow_big, pow_rat, ramanujan_sum};
use crate::error::{validation, Result};

/// Valuation data of a vector: `k = v_p(q(η))` and the pair `(k₁, k₂)`.
///
/// For the split lattice `k₁ = k₂ = v_p(η)`; for the ramified lattice
/// `k₁ = min(v(η₁), v(η₂))` and `k₂ = min(v(η₁), v(η₂) + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaInvariants {
    pub k: Option<i64>,
    pub k1: i64,
    pub k2: i64,
}

impl EtaInvariants {
    pub fn k_prime(&self) -> Option<i64> {
        self.k.map(|k| k - self.k1 - self.k2)
    }
}

pub fn invariants(eta: &LocalVector, shape: &QuadLatticeShape) -> EtaInvariants {
    let floor = eta.vanishing_floor();
    let val = |idx: Vec<usize>| eta.valuation_of(idx).unwrap_or(floor);
    let h = shape.planes();
    let k = eta.q_valuation(shape);
    match shape.form {
        QuadForm::SplitHyperbolic => {
            let v = val((0..2 * h).collect());
            EtaInvariants { k, k1: v, k2: v }
        }
        QuadForm::RamifiedNormal => {
            let m = shape.m;
            let v1 = val((0..m).chain(h..h + m).collect());
            let v2 = val((m..h).chain(h + m..2 * h).collect());
            EtaInvariants { k, k1: v1.min(v2), k2: v1.min(v2 + 1) }
        }
    }
}

/// `q(η)` as an integer modulo `p^{prec − 2·shift}`, for `η` in the lattice.
fn integral_q(eta: &LocalVector, shape: &QuadLatticeShape) -> (BigInt, u32) {
    let qs = eta.q_scaled(shape);
    let avail = eta.prec.saturating_sub(2 * eta.shift);
    let q = (qs / pow_big(eta.p, 2 * eta.shift)).mod_floor(&pow_big(eta.p, avail));
    (q, avail)
}

/// Gauss-sum expansion shared by both lattices:
/// `p^{-r}(top·[lead] + Σ_{j=0}^{jmax} p^{e(j)}·c_{p^{r−j}}(q/p^{2j}))`.
fn gauss_sum(
    r: u32,
    eta: &LocalVector,
    shape: &QuadLatticeShape,
    lead: bool,
    top: BigInt,
    jmax: i64,
    exp_j: impl Fn(u32) -> u32,
) -> Result<BigRational> {
    let p = shape.p;
    let (q, avail) = integral_q(eta, shape);
    let mut acc = if lead { top } else { BigInt::zero() };
    let jmax = jmax.min(r as i64 - 1);
    for j in 0..=jmax.max(-1) {
        if j < 0 {
            break;
        }
        let j = j as u32;
        if r + j > avail {
            return validation(format!(
                "term r={r} needs q(η) modulo p^{}, only p^{avail} available",
                r + j
            ));
        }
        let qj = &q / pow_big(p, 2 * j);
        acc += pow_big(p, exp_j(j)) * ramanujan_sum(p, r - j, &qj);
    }
    Ok(BigRational::new(acc, pow_big(p, r)))
}

/// `B_{r,η}` on the split lattice of rank `2m`; zero when `η ∉ L`.
pub fn term_unramified(r: u32, eta: &LocalVector, shape: &QuadLatticeShape) -> Result<BigRational> {
    if shape.form != QuadForm::SplitHyperbolic {
        return validation("term_unramified needs a split hyperbolic shape");
    }
    let inv = invariants(eta, shape);
    if inv.k1 < 0 {
        return Ok(BigRational::zero());
    }
    if r == 0 {
        return Ok(BigRational::one());
    }
    let m = shape.m as u32;
    let top = pow_big(shape.p, 2 * m * r);
    gauss_sum(r, eta, shape, inv.k1 >= r as i64, top, inv.k1, |j| m * (r + j))
}

/// `C_{r,η}` on the ramified lattice of rank `4m` by the same Gauss-sum expansion.
/// Valid also when `q(η) = 0`.
pub fn term_ramified_gauss(
    r: u32,
    eta: &LocalVector,
    shape: &QuadLatticeShape,
) -> Result<BigRational> {
    if shape.form != QuadForm::RamifiedNormal {
        return validation("term_ramified needs a ramified shape");
    }
    let inv = invariants(eta, shape);
    if inv.k2 < 0 {
        return Ok(BigRational::zero());
    }
    if r == 0 {
        return Ok(BigRational::one());
    }
    if inv.k1 < 0 {
        return Ok(BigRational::zero());
    }
    let m = shape.m as u32;
    let top = pow_big(shape.p, 4 * r * m);
    gauss_sum(r, eta, shape, inv.k2 >= r as i64, top, inv.k1, |j| (2 * r + 2 * j + 1) * m)
}

/// `C_{r,η}` from the four-range case analysis in `r` relative to `k₂`, `k₂+k'`, `k+1`.
pub fn term_ramified(r: u32, eta: &LocalVector, shape: &QuadLatticeShape) -> Result<BigRational> {
    if shape.form != QuadForm::RamifiedNormal {
        return validation("term_ramified needs a ramified shape");
    }
    let inv = invariants(eta, shape);
    let Some(k) = inv.k else {
        return validation("term_ramified requires q(η) ≠ 0");
    };
    Ok(term_ramified_from_invariants(r, inv.k1, inv.k2, k, shape.m as i64, shape.p))
}

pub fn term_ramified_from_invariants(r: u32, k1: i64, k2: i64, k: i64, m: i64, p: u64) -> BigRational {
    if k2 < 0 {
        return BigRational::zero();
    }
    if r == 0 {
        return BigRational::one();
    }
    if k1 < 0 {
        return BigRational::zero();
    }
    let r = r as i64;
    let kp = k - k1 - k2;
    let summand = |j: i64| {
        let e = (2 * r + 2 * j + 1) * m - j;
        pow_rat(p, e) - pow_rat(p, e - 1)
    };
    let sum_to = |jmax: i64| (0..=jmax).map(summand).fold(BigRational::zero(), |a, b| a + b);
    if r <= k2 {
        pow_rat(p, r * (4 * m - 1)) + sum_to(r - 1)
    } else if r <= k2 + kp {
        sum_to(k1)
    } else if r <= k + 1 {
        sum_to(k - r) - pow_rat(p, (2 * k + 3) * m + r - k - 2)
    } else {
        BigRational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::rat;

    #[test]
    fn split_examples() {
        let shape = QuadLatticeShape::split(3, 2);
        let eta = LocalVector::from_i64(3, 8, &[3, 0, 3, 0]);
        assert_eq!(term_unramified(1, &eta, &shape).unwrap(), rat(33, 1));
        assert_eq!(term_unramified(0, &eta, &shape).unwrap(), rat(1, 1));
        let eta = LocalVector::from_i64(3, 8, &[1, 0, 0, 0]);
        assert_eq!(term_unramified(1, &eta, &shape).unwrap(), rat(6, 1));
    }

    #[test]
    fn inert_two_unit_vector() {
        // T = (1,1) at p = 2, D = 3: coordinates (1, 0, 2, 1)
        let shape = QuadLatticeShape::split(2, 2);
        let eta = LocalVector::from_i64(2, 10, &[1, 0, 2, 1]);
        assert_eq!(term_unramified(1, &eta, &shape).unwrap(), rat(2, 1));
        assert_eq!(term_unramified(2, &eta, &shape).unwrap(), rat(-8, 1));
        assert!(term_unramified(3, &eta, &shape).unwrap().is_zero());
    }

    #[test]
    fn ramified_forms_agree() {
        let shape = QuadLatticeShape::ramified(3, 1);
        for c in [[1i64, 0, 1, 0], [0, 1, 3, 1], [3, 1, 3, 2], [1, 1, 9, 1], [9, 3, 3, 1]] {
            let eta = LocalVector::from_i64(3, 12, &c);
            for r in 0..6 {
                assert_eq!(
                    term_ramified(r, &eta, &shape).unwrap(),
                    term_ramified_gauss(r, &eta, &shape).unwrap(),
                    "η = {c:?}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn vanishing_beyond_k_plus_one() {
        for (k1, k2, k) in [(0, 0, 0), (0, 1, 1), (1, 1, 3), (1, 2, 4)] {
            for r in (k + 2)..(k + 6) {
                assert!(term_ramified_from_invariants(r as u32, k1, k2, k, 1, 3).is_zero());
            }
        }
    }
}
