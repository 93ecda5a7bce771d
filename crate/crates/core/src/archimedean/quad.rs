//! Adaptive Gauss–Kronrod quadrature.

use num_traits::Float;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_DEPTH: u32 = 60;

fn c<F: Float>(x: f64) -> F {
    F::from(x).unwrap()
}

/// One GK15 panel: (Kronrod estimate, |Kronrod − Gauss|).
fn gk15<F: Float>(f: &mut impl FnMut(F) -> F, a: F, b: F) -> (F, F) {
    let half = (b - a) * c(0.5);
    let mid = (a + b) * c(0.5);
    let fc = f(mid);
    let mut rk = fc * c(WGK[7]);
    let mut rg = fc * c(WG[3]);
    for j in 0..7 {
        let dx = half * c(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        rk = rk + s * c(WGK[j]);
        if j % 2 == 1 {
            rg = rg + s * c(WG[j / 2]);
        }
    }
    (rk * half, ((rk - rg) * half).abs())
}

/// `∫_a^b f` to absolute tolerance `abs_tol` or relative `rel_tol`, whichever is looser.
pub fn integrate<F: Float>(
    mut f: impl FnMut(F) -> F,
    a: F,
    b: F,
    abs_tol: F,
    rel_tol: F,
) -> Result<F> {
    let (whole, err) = gk15(&mut f, a, b);
    let mut stack = vec![(a, b, whole, err, 0u32)];
    let mut total = F::zero();
    let mut comp = F::zero();
    let mut budget_err = abs_tol.max(rel_tol * whole.abs());
    let mut evals = 0usize;
    while let Some((lo, hi, val, err, depth)) = stack.pop() {
        let width_share = (hi - lo).abs() / (b - a).abs();
        let noise = F::epsilon() * c(64.0) * val.abs();
        if err <= budget_err * width_share || err <= noise || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && err > budget_err * width_share && err > noise {
                return Err(Error::Numeric(format!(
                    "quadrature did not converge near [{:?}, {:?}]",
                    lo.to_f64(),
                    hi.to_f64()
                )));
            }
            // Neumaier summation
            let t = total + val;
            comp = if total.abs() >= val.abs() {
                comp + ((total - t) + val)
            } else {
                comp + ((val - t) + total)
            };
            total = t;
            continue;
        }
        evals += 1;
        if evals > 2_000_000 {
            return Err(Error::Numeric("quadrature panel limit reached".into()));
        }
        let mid = (lo + hi) * c(0.5);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        let est = (total + v1 + v2).abs();
        budget_err = budget_err.max(rel_tol * est).max(abs_tol);
        stack.push((lo, mid, v1, e1, depth + 1));
        stack.push((mid, hi, v2, e2, depth + 1));
    }
    Ok(total + comp)
}

/// `∫_a^∞ f` via `x = a + t/(1−t)`.
pub fn integrate_to_inf<F: Float>(
    mut f: impl FnMut(F) -> F,
    a: F,
    abs_tol: F,
    rel_tol: F,
) -> Result<F> {
    let one = F::one();
    integrate(
        |t: F| {
            if t >= one {
                return F::zero();
            }
            let u = one - t;
            let v = f(a + t / u) / (u * u);
            if v.is_finite() { v } else { F::zero() }
        },
        F::zero(),
        one,
        abs_tol,
        rel_tol,
    )
}

/// `∫_R f` via `x = t/(1−t²)`.
pub fn integrate_real_line<F: Float>(
    mut f: impl FnMut(F) -> F,
    abs_tol: F,
    rel_tol: F,
) -> Result<F> {
    let one = F::one();
    integrate(
        |t: F| {
            if t.abs() >= one {
                return F::zero();
            }
            let u = one - t * t;
            let v = f(t / u) * (one + t * t) / (u * u);
            if v.is_finite() { v } else { F::zero() }
        },
        -one,
        one,
        abs_tol,
        rel_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_and_gaussian() {
        let v = integrate(|x: f64| x * x, 0.0, 3.0, 1e-14, 1e-14).unwrap();
        assert!((v - 9.0).abs() < 1e-12);
        let g = integrate_real_line(|x: f64| (-x * x).exp(), 1e-15, 1e-13).unwrap();
        assert!((g - PI.sqrt()).abs() < 1e-12);
        let a = integrate_to_inf(|x: f64| 1.0 / (1.0 + x * x), 0.0, 1e-15, 1e-13).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn works_in_f32() {
        let v = integrate(|x: f32| x.sin(), 0.0, std::f32::consts::PI, 1e-6, 1e-6).unwrap();
        assert!((v - 2.0).abs() < 1e-5);
    }
}
