//! Candidate lift coefficients from Hecke eigenvalues of an elliptic eigenform,
//! and the predicted standard Euler factors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::numtheory::{is_prime, pow_rat};
use crate::arith::{Poly, SqrtPPoly, Splitting};
use crate::error::{validation, Result};
use crate::fourier::local_product;
use crate::hermitian::{FieldE, GlobalVector, Params};
use crate::{Real, SeriesPoly};

/// Eigenvalue file contents: `{"weight": w, "ap": {"2": -24, ...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenformData {
    pub weight: u32,
    pub ap: BTreeMap<u64, i64>,
}

impl EigenformData {
    pub fn check_weight(&self, params: &Params) -> Result<()> {
        if self.weight != params.weight() {
            return validation(format!(
                "eigenform weight {} differs from 2ℓ−n+2 = {}",
                self.weight,
                params.weight()
            ));
        }
        if self.weight % 2 != 0 {
            return validation("eigenform weight must be even");
        }
        Ok(())
    }

    fn ap_of(&self, p: u64) -> Result<i64> {
        self.ap.get(&p).copied().ok_or_else(|| crate::Error::Validation(format!("no eigenvalue for p = {p}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SatakeParam {
    pub p: u64,
    pub alpha: Complex64,
}

/// A root of `X² − a_p p^{−(w−1)/2} X + 1`.
pub fn satake_from_eigenvalue(ap: i64, weight: u32, p: u64) -> SatakeParam {
    let y = ap as Real * (p as Real).powf(-(weight as Real - 1.0) / 2.0);
    let disc = Complex64::new(y * y - 4.0, 0.0).sqrt();
    SatakeParam { p, alpha: (Complex64::new(y, 0.0) + disc) / 2.0 }
}

/// `Q̃(X) = X^{−k}Q(X)` written in `y = X + X^{−1}`; coefficient `j` multiplies
/// `y^j` and carries the factor `p^{e_j/2}` recorded separately.
fn tilde_in_y(q: &SqrtPPoly) -> Result<Vec<(BigInt, i64)>> {
    let deg = q.degree().unwrap_or(0);
    if deg % 2 != 0 || !q.satisfies_functional_equation() {
        return validation("local polynomial is not palindromic of even degree");
    }
    let k = deg / 2;
    // V_j(y) = X^j + X^{−j}: V_0 = 2, V_1 = y, V_{j+1} = yV_j − V_{j−1}
    let mut v: Vec<Poly<BigInt>> = vec![Poly::constant(BigInt::from(2)), Poly::new(vec![BigInt::zero(), BigInt::one()])];
    for j in 1..k.max(1) {
        let next = &(&v[j] * &v[1]) - &v[j - 1];
        v.push(next);
    }
    // monomial y^m collects d_{k+j}·p^{((k+j) mod 2)/2} from V_j
    let mut out: Vec<(BigInt, i64)> = vec![(BigInt::zero(), 0); k + 1];
    let d = q.d_vec();
    for j in 0..=k {
        let c = d.get(k + j).cloned().unwrap_or_default();
        let half = ((k + j) % 2) as i64;
        let basis = if j == 0 { Poly::one() } else { v[j].clone() };
        for (m, b) in basis.coeffs().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            if !out[m].0.is_zero() && out[m].1 != half {
                return validation("mixed √p parity in one power of y");
            }
            out[m].0 += &c * b;
            out[m].1 = half;
        }
    }
    Ok(out)
}

/// `p^{k(w−1)/2}·Q̃(α)` as an exact polynomial in `a_p` with rational coefficients.
pub fn local_lift_poly(q: &SqrtPPoly, two_e: u32) -> Result<SeriesPoly> {
    let k = q.degree().unwrap_or(0) / 2;
    let y = tilde_in_y(q)?;
    let mut coeffs = Vec::new();
    for (m, (c, half)) in y.into_iter().enumerate() {
        // c·p^{half/2}·(a_p p^{−two_e/2})^m·p^{k·two_e/2}
        let twice = half + (k as i64 - m as i64) * two_e as i64;
        if twice % 2 != 0 {
            if c.is_zero() {
                coeffs.push(BigRational::zero());
                continue;
            }
            return validation("half-integral power of p survives in the lift");
        }
        coeffs.push(BigRational::from_integer(c) * pow_rat(q.p, twice / 2));
    }
    Ok(Poly::new(coeffs))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftValue {
    pub exact: BigRational,
    pub local: BTreeMap<u64, SeriesPoly>,
    pub numeric: Complex64,
}

/// `⟨T,T⟩^{ℓ−(n−1)/2}·∏_{p | ⟨T,T⟩} Q̃_{T,p}(α_p)` at `g_f = 1`.
pub fn lift_coefficient(t: &GlobalVector, h: &EigenformData, params: &Params, f: &FieldE) -> Result<LiftValue> {
    h.check_weight(params)?;
    let norm = t.norm(f);
    if norm <= BigInt::zero() {
        return validation("lift coefficients need ⟨T,T⟩ > 0");
    }
    let (_, polys) = local_product(t, params, f)?;
    let mut exact = BigRational::one();
    let mut numeric = Complex64::new(1.0, 0.0);
    let mut local = BTreeMap::new();
    for (&p, q) in &polys {
        let ap = h.ap_of(p)?;
        if q.is_zero() {
            return validation(format!("T is not integral at p = {p}"));
        }
        let lp = local_lift_poly(q, params.two_e())?;
        exact *= lp.eval(&BigRational::from_integer(BigInt::from(ap)));
        let alpha = satake_from_eigenvalue(ap, h.weight, p).alpha;
        numeric *= tilde_at(q, alpha) * (p as Real).powf(q.degree().unwrap_or(0) as Real / 2.0 * params.two_e() as Real / 2.0);
        local.insert(p, lp);
    }
    Ok(LiftValue { exact, local, numeric })
}

/// `X^{−k}Q(X)` at a complex point.
pub fn tilde_at(q: &SqrtPPoly, x: Complex64) -> Complex64 {
    let k = q.degree().unwrap_or(0) as i32 / 2;
    let sp = (q.p as Real).sqrt();
    q.d_vec()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let c = d.to_f64().unwrap() * if i % 2 == 1 { sp } else { 1.0 };
            x.powi(i as i32 - k) * c
        })
        .sum()
}

/// `τ(n)` for `n ≤ nmax` from `Δ = q∏(1−q^k)^{24}`.
pub fn delta_tau(nmax: usize) -> Vec<BigInt> {
    // coefficients of ∏(1−q^k)^{24} up to q^{nmax−1}
    let mut c = vec![BigInt::zero(); nmax.max(1)];
    c[0] = BigInt::one();
    for k in 1..nmax {
        for _ in 0..24 {
            for i in (k..nmax).rev() {
                let sub = c[i - k].clone();
                c[i] -= sub;
            }
        }
    }
    let mut tau = vec![BigInt::zero(); nmax + 1];
    for n in 1..=nmax {
        tau[n] = c[n - 1].clone();
    }
    tau
}

/// Eigenvalues of `Δ` at primes up to `pmax`.
pub fn delta_eigenform(pmax: u64) -> EigenformData {
    let tau = delta_tau(pmax as usize);
    let ap = (2..=pmax)
        .filter(|&p| is_prime(p))
        .map(|p| (p, tau[p as usize].to_i64().unwrap()))
        .collect();
    EigenformData { weight: 12, ap }
}

/// Local factor of `L(s, BC(π_h))∏_{i<n} ζ_E(s + (n−1)/2 − i)` as reciprocal
/// roots in `X = p^{−s}`; the polynomial is `∏(1 − rX)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerFactor {
    pub p: u64,
    pub case: Splitting,
    pub roots: Vec<Complex64>,
}

impl EulerFactor {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn poly(&self) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in &self.roots {
            let mut next = c.clone();
            next.push(Complex64::zero());
            for (i, ci) in c.iter().enumerate() {
                next[i + 1] -= r * ci;
            }
            c = next;
        }
        c
    }
}

pub fn standard_l_factors(p: u64, h: &EigenformData, params: &Params, f: &FieldE) -> Result<EulerFactor> {
    h.check_weight(params)?;
    let case = f.splitting(p)?;
    let alpha = satake_from_eigenvalue(h.ap_of(p)?, h.weight, p).alpha;
    let inv = alpha.inv();
    let mut roots = Vec::new();
    let shift = |i: u32| (params.n as Real - 1.0) / 2.0 - i as Real;
    let pf = p as Real;
    match case {
        Splitting::Split => {
            roots.extend([alpha, inv, alpha, inv]);
            for i in 0..params.n {
                let r = Complex64::new(pf.powf(-shift(i)), 0.0);
                roots.extend([r, r]);
            }
        }
        Splitting::Inert => {
            roots.extend([alpha, -alpha, inv, -inv]);
            for i in 0..params.n {
                let r = Complex64::new(pf.powf(-shift(i)), 0.0);
                roots.extend([r, -r]);
            }
        }
        Splitting::Ramified => {
            roots.extend([alpha, inv]);
            for i in 0..params.n {
                roots.push(Complex64::new(pf.powf(-shift(i)), 0.0));
            }
        }
    }
    Ok(EulerFactor { p, case, roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::rat;
    use crate::hermitian::QuadInt;

    #[test]
    fn tau_values() {
        let t = delta_tau(12);
        let expect = [1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(t[i + 1], BigInt::from(*e));
        }
    }

    #[test]
    fn satake_examples() {
        let s = satake_from_eigenvalue(0, 12, 5);
        assert!((s.alpha - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let s = satake_from_eigenvalue(-24, 12, 2);
        let sum = s.alpha + s.alpha.inv();
        assert!((sum.re + 24.0 * 2f64.powf(-5.5)).abs() < 1e-14 && sum.im.abs() < 1e-14);
    }

    #[test]
    fn delta_lift_at_unit_vector() {
        let f = FieldE::new(3).unwrap();
        let p = Params::new(2, 6).unwrap();
        let t = GlobalVector::new(QuadInt::one(), QuadInt::one());
        let v = lift_coefficient(&t, &delta_eigenform(50), &p, &f).unwrap();
        assert_eq!(v.exact, rat(-24, 1));
        assert!((v.numeric - Complex64::new(-24.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn eisenstein_specialisation_matches_rank2_product() {
        let f = FieldE::new(7).unwrap();
        let p = Params::new(2, 3).unwrap();
        for c in [[1i64, 0, 1, 0], [2, 1, 3, 0], [3, 1, 2, 2], [4, 0, 3, 1], [5, 2, 1, 1]] {
            let t = GlobalVector::from_coords(c);
            if t.norm(&f) <= BigInt::zero() {
                continue;
            }
            let (prod, polys) = local_product(&t, &p, &f).unwrap();
            let ap = polys.keys().map(|&q| (q, 1 + (q as i64).pow(p.two_e()))).collect();
            let h = EigenformData { weight: p.weight(), ap };
            assert_eq!(lift_coefficient(&t, &h, &p, &f).unwrap().exact, BigRational::from_integer(prod));
        }
    }

    #[test]
    fn euler_factor_degrees() {
        let f = FieldE::new(7).unwrap();
        let p = Params::new(2, 6).unwrap();
        let h = delta_eigenform(50);
        for (q, deg) in [(2u64, 8usize), (3, 8), (7, 4)] {
            let e = standard_l_factors(q, &h, &p, &f).unwrap();
            assert_eq!(e.degree(), deg, "p = {q}");
            assert!(e.poly()[0] == Complex64::new(1.0, 0.0));
        }
    }
}
