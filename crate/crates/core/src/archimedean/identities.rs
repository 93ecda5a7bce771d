//! Exact and numeric checks of the integral, combinatorial and Bessel identities
//! behind the archimedean coefficients.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bessel::bessel_k_all;
use super::quad::{integrate_real_line, integrate_to_inf};
use crate::arith::numtheory::{binomial, factorial, pochhammer, rat};
use crate::arith::{hyp2f1_terminating, Poly};
use crate::error::{validation, Error, Result};
use crate::Real;

/// Outcome of one identity check; `detail` carries the witness on failure.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckOutcome { name: name.into(), pass, detail: detail.into() }
    }
}

fn fact_f(n: u64) -> Real {
    (1..=n).map(|i| i as Real).product()
}

fn bin_f(n: u64, k: u64) -> Real {
    binomial(n, k).to_f64().unwrap()
}

/// `Γ(k + 1/2)`
fn gamma_half(k: u64) -> Real {
    (0..k).fold(PI.sqrt(), |acc, i| acc * (i as Real + 0.5))
}

fn big_r(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn rel_err(a: Real, b: Real) -> Real {
    if b == 0.0 { a.abs() } else { ((a - b) / b).abs() }
}

/// Neumaier-compensated sum.
fn csum(xs: impl IntoIterator<Item = Real>) -> Real {
    let (mut s, mut c) = (0.0, 0.0);
    for x in xs {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

/// `D^{m−n+1/2}/(n−1)!·Σ_k C(m,k)(C/D)^{m−k}Γ(k+1/2)Γ(n−k−1/2)`, the value of
/// `∫_R (x²+C)^m/(x²+D)^n dx`.
pub fn gamma_integral_closed(c: Real, dv: Real, m: u64, nn: u64) -> Real {
    let s = csum((0..=m).map(|k| {
        bin_f(m, k) * (c / dv).powi((m - k) as i32) * gamma_half(k) * gamma_half(nn - k - 1)
    }));
    dv.powf(m as Real - nn as Real + 0.5) / fact_f(nn - 1) * s
}

pub fn gamma_integral_check(c: Real, dv: Real, m: u64, nn: u64) -> Result<CheckOutcome> {
    if dv <= 0.0 || m >= nn {
        return validation(format!("need Dv > 0 and m < nn, got Dv = {dv}, m = {m}, nn = {nn}"));
    }
    let closed = gamma_integral_closed(c, dv, m, nn);
    let quad = integrate_real_line(
        |x: Real| (x * x + c).powi(m as i32) / (x * x + dv).powi(nn as i32),
        1e-300,
        1e-13,
    )?;
    let e = rel_err(quad, closed);
    Ok(CheckOutcome::new(
        format!("gamma_integral(C={c}, D={dv}, m={m}, n={nn})"),
        e <= 1e-9,
        format!("quadrature {quad:.15e}, closed form {closed:.15e}, rel {e:.2e}"),
    ))
}

/// `c_{j,k} = C(ℓ,k)²C(k,j)(2j)!(4ℓ−2j)!/(j!(2ℓ−j)!)`
fn c_jk(ell: u64, j: u64, k: u64) -> BigInt {
    binomial(ell, k).pow(2) * binomial(k, j) * factorial(2 * j) * factorial(4 * ell - 2 * j)
        / (factorial(j) * factorial(2 * ell - j))
}

/// `Σ_{k≤ℓ} Σ_{j≤k} c_{j,k}(−z)^{ℓ−k}(1−z)^{k−j}` as a polynomial in `z`.
pub fn comb_lhs(ell: u64) -> Poly<BigInt> {
    let minus_z = Poly::new(vec![BigInt::zero(), -BigInt::one()]);
    let one_minus_z = Poly::new(vec![BigInt::one(), -BigInt::one()]);
    let pw = |p: &Poly<BigInt>, e: u64| (0..e).fold(Poly::one(), |acc, _| &acc * p);
    let mut acc = Poly::zero();
    for k in 0..=ell {
        for j in 0..=k {
            let term = (&pw(&minus_z, ell - k) * &pw(&one_minus_z, k - j)).scale(&c_jk(ell, j, k));
            acc = &acc + &term;
        }
    }
    acc
}

/// `Σ_r (−1)^r 2^{2ℓ−2r}(2ℓ)!(2ℓ+2r)!/((r!)²(ℓ+r)!(ℓ−r)!) z^r`
pub fn comb_rhs(ell: u64) -> Poly<BigRational> {
    Poly::new(
        (0..=ell)
            .map(|r| {
                let sign = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let num = sign * (BigInt::one() << (2 * ell - 2 * r)) * factorial(2 * ell) * factorial(2 * ell + 2 * r);
                let den = factorial(r).pow(2) * factorial(ell + r) * factorial(ell - r);
                BigRational::new(num, den)
            })
            .collect(),
    )
}

/// The double-sum identity plus both binomial identities used to collapse it.
pub fn comb_identity_check(ell: u64) -> CheckOutcome {
    let name = format!("comb_identity(ℓ={ell})");
    let lhs = comb_lhs(ell).to_rational();
    let rhs = comb_rhs(ell);
    for i in 0..=ell as usize + 1 {
        if lhs.coeff(i) != rhs.coeff(i) {
            return CheckOutcome::new(name, false, format!("z^{i}: {} vs {}", lhs.coeff(i), rhs.coeff(i)));
        }
    }
    // Σ_{i=a}^{b} C(b,i)C(b−a,b−i) = C(2b−a,b)
    for b in 0..=2 * ell {
        for a in 0..=b {
            let s: BigInt = (a..=b).map(|i| binomial(b, i) * binomial(b - a, b - i)).sum();
            if s != binomial(2 * b - a, b) {
                return CheckOutcome::new(name, false, format!("binomial sum a={a} b={b}: {s}"));
            }
        }
    }
    // Σ_i C(2ℓ,i)C(ℓ−r,i)/C(4ℓ,2i) = 2^{2ℓ−2r}C(2ℓ+2r,ℓ+r)/C(4ℓ,2ℓ) = ₂F₁(−(ℓ−r), 1/2; 1/2−2ℓ; 1)
    for r in 0..=ell {
        let s: BigRational = (0..=ell - r)
            .map(|i| BigRational::new(binomial(2 * ell, i) * binomial(ell - r, i), binomial(4 * ell, 2 * i)))
            .sum();
        let closed = BigRational::new(
            (BigInt::one() << (2 * ell - 2 * r)) * binomial(2 * ell + 2 * r, ell + r),
            binomial(4 * ell, 2 * ell),
        );
        let c = rat(1, 2) - big_r(BigInt::from(2 * ell));
        let hyp = hyp2f1_terminating(ell - r, &rat(1, 2), &c, &BigRational::one());
        let poch = pochhammer(&-big_r(BigInt::from(2 * ell)), ell - r) / pochhammer(&c, ell - r);
        if s != closed || hyp.as_ref().ok() != Some(&closed) || poch != closed {
            return CheckOutcome::new(name, false, format!("r={r}: sum {s}, closed {closed}, 2F1 {hyp:?}, ratio {poch}"));
        }
    }
    CheckOutcome::new(name, true, "")
}

/// `₂F₁(ℓ,−ℓ;1;1) = 0` for `ℓ ≥ 1` and Chu–Vandermonde `₂F₁(−N,b;c;1) = (c−b)_N/(c)_N`.
pub fn hypergeometric_family_check(ell: u64) -> CheckOutcome {
    let name = format!("hypergeometric_family(ℓ={ell})");
    if ell >= 1 {
        let v = hyp2f1_terminating(ell, &big_r(BigInt::from(ell)), &BigRational::one(), &BigRational::one());
        if v.as_ref().map(|x| !x.is_zero()).unwrap_or(true) {
            return CheckOutcome::new(name, false, format!("2F1(ℓ,−ℓ;1;1) = {v:?}"));
        }
    }
    for (b, c) in [(rat(1, 2), rat(3, 1)), (rat(-5, 3), rat(7, 4)), (rat(2, 1), rat(1, 3))] {
        let lhs = hyp2f1_terminating(ell, &b, &c, &BigRational::one());
        let rhs = pochhammer(&(&c - &b), ell) / pochhammer(&c, ell);
        if lhs.as_ref().ok() != Some(&rhs) {
            return CheckOutcome::new(name, false, format!("Chu–Vandermonde b={b} c={c}: {lhs:?} vs {rhs}"));
        }
    }
    CheckOutcome::new(name, true, "")
}

/// `F_{0,ℓ} = 2^{−2ℓ}(2ℓ)!π^{−2ℓ}/((ℓ!)²(A+B)^{ℓ+1/2})·₂F₁(−ℓ, ℓ+1/2; 1; B/(A+B))`
pub fn f0_closed(a: Real, b: Real, ell: u64) -> Result<Real> {
    if a < 0.0 || b < 0.0 || a + b <= 0.0 {
        return validation("f0 needs A, B ≥ 0 and A + B > 0");
    }
    let z = b / (a + b);
    let mut term = 1.0;
    let mut terms = vec![1.0];
    for j in 0..ell {
        let jf = j as Real;
        term *= (jf - ell as Real) * (ell as Real + 0.5 + jf) / ((jf + 1.0) * (jf + 1.0)) * z;
        terms.push(term);
    }
    let pre = fact_f(2 * ell) / (4f64.powi(ell as i32) * PI.powi(2 * ell as i32) * fact_f(ell).powi(2));
    Ok(pre * (a + b).powf(-(ell as Real) - 0.5) * csum(terms))
}

/// The same function before the double sum is collapsed:
/// `2^{−4ℓ}/(2ℓ)!·π^{−2ℓ}(A+B)^{−ℓ−1/2}Σ_k Σ_j c_{j,k}(−z)^{ℓ−k}(1−z)^{k−j}`.
pub fn f0_double_sum(a: Real, b: Real, ell: u64) -> Result<Real> {
    if a < 0.0 || b < 0.0 || a + b <= 0.0 {
        return validation("f0 needs A, B ≥ 0 and A + B > 0");
    }
    let z = b / (a + b);
    let mut terms = Vec::new();
    for k in 0..=ell {
        for j in 0..=k {
            let c = c_jk(ell, j, k).to_f64().unwrap();
            terms.push(c * (-z).powi((ell - k) as i32) * (1.0 - z).powi((k - j) as i32));
        }
    }
    let pre = 1.0 / (16f64.powi(ell as i32) * fact_f(2 * ell) * PI.powi(2 * ell as i32));
    Ok(pre * (a + b).powf(-(ell as Real) - 0.5) * csum(terms))
}

/// `K_n = A_n(1/x)·K₀ + B_n(1/x)·K₁` with exact rational coefficients at `x`.
fn bessel_reduction(nmax: usize, x: &BigRational) -> Vec<(BigRational, BigRational)> {
    let y = x.recip();
    let mut out = vec![(BigRational::one(), BigRational::zero()), (BigRational::zero(), BigRational::one())];
    for n in 1..nmax {
        let f = big_r(BigInt::from(2 * n)) * &y;
        let (a, b) = (&out[n - 1].0 + &f * &out[n].0, &out[n - 1].1 + &f * &out[n].1);
        out.push((a, b));
    }
    out.truncate(nmax + 1);
    out
}

/// `Σ_k (−1)^k C^{ℓ+k}K_{ℓ+k}(2C)/((k!)²(ℓ−k)!) = (−1)^ℓ C^{2ℓ}K₀(2C)/(ℓ!)²`.
///
/// The alternating sum cancels catastrophically for small `C`, so it is reduced
/// exactly to `αK₀(2C) + βK₁(2C)` before any floating-point evaluation; the
/// direct floating sum is reported alongside.
pub fn bessel_sum_check(ell: u64, c: Real) -> Result<CheckOutcome> {
    if !(0.1..=10.0).contains(&c) {
        return validation(format!("C = {c} outside [0.1, 10]"));
    }
    let name = format!("bessel_sum(ℓ={ell}, C={c})");
    let cr = BigRational::from_float(c).ok_or_else(|| Error::Validation("C not finite".into()))?;
    let red = bessel_reduction((2 * ell as usize).max(1), &(&cr * big_r(BigInt::from(2))));
    let (mut alpha, mut beta) = (BigRational::zero(), BigRational::zero());
    for k in 0..=ell {
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        let w = sign * num_traits::pow(cr.clone(), (ell + k) as usize)
            / big_r(factorial(k).pow(2) * factorial(ell - k));
        let (a, b) = &red[(ell + k) as usize];
        alpha += &w * a;
        beta += &w * b;
    }
    let sign = if ell % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let target = sign * num_traits::pow(cr.clone(), 2 * ell as usize) / big_r(factorial(ell).pow(2));
    let ks = bessel_k_all((2 * ell as u32).max(1), 2.0 * c)?;
    let rhs = target.to_f64().unwrap() * ks[0];
    let reduced = alpha.to_f64().unwrap() * ks[0] + beta.to_f64().unwrap() * ks[1];
    let direct_terms: Vec<Real> = (0..=ell)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            s * c.powi((ell + k) as i32) * ks[(ell + k) as usize] / (fact_f(k).powi(2) * fact_f(ell - k))
        })
        .collect();
    let scale: Real = direct_terms.iter().map(|t| t.abs()).sum();
    let direct = csum(direct_terms);
    let exact_ok = beta.is_zero() && alpha == target;
    let e = rel_err(reduced, rhs);
    let direct_ok = (direct - rhs).abs() <= 1e-10 * rhs.abs() + 1e-14 * scale;
    Ok(CheckOutcome::new(
        name,
        exact_ok && e <= 1e-10 && direct_ok,
        format!(
            "α − target = {}, β = {}, reduced rel {e:.2e}, direct rel {:.2e} (term scale {scale:.2e})",
            &alpha - &target,
            beta.abs(),
            rel_err(direct, rhs)
        ),
    ))
}

/// `Σ_j (−1)^j C(ℓ,j)²(ℓ−j)!(ℓ+j−1)!`, which vanishes for `ℓ ≥ 1`.
pub fn rank1_alternating_sum(ell: u64) -> BigInt {
    (0..=ell)
        .map(|j| {
            let t = binomial(ell, j).pow(2) * factorial(ell - j) * factorial(ell + j - 1);
            if j % 2 == 0 { t } else { -t }
        })
        .sum()
}

/// `∫_C |w|^{2ℓ−2j}/(1+|w|²)^{2ℓ+1} d_A w = π(ℓ−j)!(ℓ+j−1)!/(2ℓ)!` by radial
/// quadrature, and the vanishing of the alternating sum.
pub fn rank1_vanishing_check(ell: u64, j: u64) -> Result<CheckOutcome> {
    if ell == 0 || j > ell {
        return validation(format!("need 0 ≤ j ≤ ℓ and ℓ ≥ 1, got ℓ = {ell}, j = {j}"));
    }
    let closed = PI * fact_f(ell - j) * fact_f(ell + j - 1) / fact_f(2 * ell);
    let p = (2 * ell - 2 * j + 1) as i32;
    let q = (2 * ell + 1) as i32;
    let quad = 2.0 * PI * integrate_to_inf(|r: Real| r.powi(p) / (1.0 + r * r).powi(q), 0.0, 1e-300, 1e-13)?;
    let e = rel_err(quad, closed);
    let s = rank1_alternating_sum(ell);
    Ok(CheckOutcome::new(
        format!("rank1_vanishing(ℓ={ell}, j={j})"),
        e <= 1e-9 && s.is_zero(),
        format!("quadrature {quad:.15e}, closed {closed:.15e}, rel {e:.2e}, alternating sum {s}"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gamma_integral_examples() {
        assert!((gamma_integral_closed(2.0, 2.0, 0, 1) - PI / 2f64.sqrt()).abs() < 1e-14);
        for (c, d, m, n) in [(2.0, 2.0, 0, 1), (1.0, 2.0, 1, 3), (0.5, 1.5, 2, 7)] {
            let o = gamma_integral_check(c, d, m, n).unwrap();
            assert!(o.pass, "{o:?}");
        }
        assert!(gamma_integral_check(1.0, 0.0, 0, 1).is_err());
    }

    #[test]
    fn comb_small_cases() {
        assert_eq!(comb_lhs(1).coeffs(), &[BigInt::from(16), BigInt::from(-24)]);
        assert_eq!(comb_rhs(0).coeffs(), &[rat(1, 1)]);
        assert_eq!(comb_lhs(0).coeffs(), &[BigInt::from(1)]);
        for ell in 0..=12 {
            let o = comb_identity_check(ell);
            assert!(o.pass, "{o:?}");
            assert!(hypergeometric_family_check(ell).pass);
        }
    }

    #[test]
    fn f0_examples() {
        let v = f0_closed(1.0, 0.0, 2).unwrap();
        let expect = fact_f(4) / (16.0 * PI.powi(4) * 4.0);
        assert!(rel_err(v, expect) < 1e-14);
        // ₂F₁(−1, 3/2; 1; 1/2) = 1/4
        let v = f0_closed(0.5, 0.5, 1).unwrap();
        assert!(rel_err(v, 0.5 / PI.powi(2) * 0.25) < 1e-14);
    }

    #[test]
    fn bessel_sum_examples() {
        let ks = bessel_k_all(2, 2.0).unwrap();
        assert!(rel_err(ks[1] - ks[2], -ks[0]) < 1e-13);
        for ell in 0..=6 {
            for c in [0.5, 1.0, 2.0] {
                let o = bessel_sum_check(ell, c).unwrap();
                assert!(o.pass, "{o:?}");
            }
        }
    }

    #[test]
    fn rank1_examples() {
        let o = rank1_vanishing_check(2, 1).unwrap();
        assert!(o.pass, "{o:?}");
        assert_eq!(rank1_alternating_sum(1), BigInt::zero());
        for ell in 1..=10 {
            assert!(rank1_alternating_sum(ell).is_zero());
        }
    }

    proptest! {
        #[test]
        fn f0_forms_agree(a in 0.0f64..4.0, b in 0.0f64..4.0, ell in 0u64..=8) {
            prop_assume!(a + b > 1e-3);
            let x = f0_closed(a, b, ell).unwrap();
            let y = f0_double_sum(a, b, ell).unwrap();
            // both are sums of alternating terms; compare against the term scale at z
            let z = b / (a + b);
            let scale = f0_closed(a + b, 0.0, ell).unwrap() * (1.0 + 4.0 * z).powi(ell as i32);
            prop_assert!((x - y).abs() <= 1e-12 * scale, "{x} vs {y}");
        }
    }
}
