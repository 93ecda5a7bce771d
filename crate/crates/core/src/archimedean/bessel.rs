//! Modified Bessel functions of the second kind for integer order.
//!
//! `K₀, K₁` come from the logarithmic power series for `x ≤ 2` and from Steed's
//! continued fraction above; higher orders follow by upward recurrence, which is
//! stable for `K`.

use std::f64::consts::PI;

use crate::error::{validation, Error, Result};
use crate::Real;

const EULER_GAMMA: Real = 0.577_215_664_901_532_9;
const SERIES_LIMIT: Real = 2.0;
pub const MAX_ORDER: u32 = 40;
pub const X_MIN: Real = 1e-3;
pub const X_MAX: Real = 1e3;

fn k01_series(x: Real) -> (Real, Real) {
    let y = x * x / 4.0;
    let lg = (x / 2.0).ln();
    let (mut i0, mut i1s, mut s0, mut s1) = (0.0, 0.0, 0.0, 0.0);
    let mut t0 = 1.0; // y^k/(k!)²
    let mut t1 = 1.0; // y^k/(k!(k+1)!)
    let mut hk = 0.0;
    for k in 0..200 {
        let kf = k as Real;
        if k > 0 {
            hk += 1.0 / kf;
            t0 *= y / (kf * kf);
            t1 *= y / (kf * (kf + 1.0));
        }
        i0 += t0;
        i1s += t1;
        s0 += hk * t0;
        // ψ(k+1) + ψ(k+2) = −2γ + 2H_k + 1/(k+1)
        s1 += (-2.0 * EULER_GAMMA + 2.0 * hk + 1.0 / (kf + 1.0)) * t1;
        if t0 < 1e-18 * i0 && k > 2 {
            break;
        }
    }
    let i1 = x / 2.0 * i1s;
    let k0 = -(lg + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / x + lg * i1 - x / 4.0 * s1;
    (k0, k1)
}

fn k01_steed(x: Real) -> Result<(Real, Real)> {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..100_000 {
        let fi = i as Real;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numeric(format!("Bessel continued fraction failed at x = {x}")));
    }
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k1 = k0 * (x + 0.5 - a1 * h) / x;
    Ok((k0, k1))
}

/// `[K₀(x), …, K_vmax(x)]`.
pub fn bessel_k_all(vmax: u32, x: Real) -> Result<Vec<Real>> {
    if !(X_MIN..=X_MAX).contains(&x) || vmax > MAX_ORDER {
        return validation(format!(
            "bessel_k needs v ≤ {MAX_ORDER} and {X_MIN} ≤ x ≤ {X_MAX}, got v = {vmax}, x = {x}"
        ));
    }
    let (k0, k1) = if x <= SERIES_LIMIT { k01_series(x) } else { k01_steed(x)? };
    let mut out = vec![k0, k1];
    for v in 1..vmax {
        let next = out[v as usize - 1] + 2.0 * v as Real / x * out[v as usize];
        out.push(next);
    }
    out.truncate(vmax as usize + 1);
    Ok(out)
}

pub fn bessel_k(v: u32, x: Real) -> Result<Real> {
    Ok(*bessel_k_all(v, x)?.last().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archimedean::quad::integrate_to_inf;

    fn rel(a: Real, b: Real) -> Real {
        ((a - b) / b).abs()
    }

    /// `K_v(x) = ∫₀^∞ e^{−x cosh t} cosh(vt) dt`
    fn by_quadrature(v: u32, x: Real) -> Real {
        integrate_to_inf(
            |t: Real| (-x * t.cosh() + v as Real * t).exp() * 0.5 + (-x * t.cosh() - v as Real * t).exp() * 0.5,
            0.0,
            1e-300,
            1e-14,
        )
        .unwrap()
    }

    #[test]
    fn reference_values() {
        assert!(rel(bessel_k(0, 2.0).unwrap(), 0.113_893_872_749_533_44) < 1e-13);
        assert!(rel(bessel_k(1, 2.0).unwrap(), 0.139_865_881_816_522_43) < 1e-13);
        assert!(rel(bessel_k(0, 1.0).unwrap(), 0.421_024_438_240_708_34) < 1e-13);
        assert!(rel(bessel_k(1, 1.0).unwrap(), 0.601_907_230_197_234_6) < 1e-13);
        let k2 = bessel_k(2, 2.0).unwrap();
        assert!(rel(k2, bessel_k(0, 2.0).unwrap() + bessel_k(1, 2.0).unwrap()) < 1e-12);
    }

    #[test]
    fn matches_integral_definition() {
        for &x in &[0.001, 0.05, 0.7, 1.9999, 2.0001, 3.5, 8.0, 25.0, 120.0] {
            for v in [0u32, 1, 2, 5, 11] {
                let q = by_quadrature(v, x);
                let b = bessel_k(v, x).unwrap();
                assert!(rel(b, q) < 1e-12, "v={v} x={x}: {b} vs {q}");
            }
        }
    }

    #[test]
    fn continuous_across_method_switch() {
        let (a0, a1) = k01_series(2.0);
        let (b0, b1) = k01_steed(2.0).unwrap();
        assert!(rel(a0, b0) < 1e-14 && rel(a1, b1) < 1e-14);
    }

    #[test]
    fn out_of_range() {
        assert!(bessel_k(41, 1.0).is_err());
        assert!(bessel_k(0, 1e-4).is_err());
        assert!(bessel_k(0, 2e3).is_err());
    }

    #[test]
    fn recurrence_residual() {
        for &x in &[0.001, 0.3, 1.0, 2.5, 10.0, 99.0, 600.0] {
            let ks = bessel_k_all(MAX_ORDER, x).unwrap();
            for v in 1..MAX_ORDER as usize {
                let res = ks[v + 1] - ks[v - 1] - 2.0 * v as Real / x * ks[v];
                assert!(res.abs() <= 1e-11 * ks[v + 1].abs(), "x={x} v={v}");
            }
        }
    }
}
