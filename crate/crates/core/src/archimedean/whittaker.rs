//! The generalized Whittaker function at the identity and the archimedean constant.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::bessel::bessel_k_all;
use crate::arith::numtheory::factorial;
use crate::error::{validation, Result};
use crate::hermitian::{FieldE, GlobalVector, Params};
use crate::Real;

/// Components `phase^v·K_v(|β|)` for `v = −ℓ..ℓ`, where `β = 4√2π⟨u₂, T⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct WhittakerEval {
    pub ell: u32,
    pub beta_abs: Real,
    /// `|β|/β`
    pub phase: Complex64,
    pub components: Vec<Complex64>,
}

impl WhittakerEval {
    pub fn component(&self, v: i32) -> Complex64 {
        self.components[(v + self.ell as i32) as usize]
    }
}

pub fn whittaker_at(t: &GlobalVector, ell: u32, f: &FieldE) -> Result<WhittakerEval> {
    // 4√2π⟨u₂,T⟩ = 4π(ā + b̄)
    let beta = t.u2_pairing_sqrt2(f) * (4.0 * PI);
    let beta_abs = beta.norm();
    if beta_abs == 0.0 {
        return validation("β_T = 0: the Whittaker function is degenerate");
    }
    let phase = beta.conj() / beta_abs;
    let ks = bessel_k_all(ell, beta_abs)?;
    let components = (-(ell as i32)..=ell as i32)
        .map(|v| phase.powi(v) * ks[v.unsigned_abs() as usize])
        .collect();
    Ok(WhittakerEval { ell, beta_abs, phase, components })
}

/// An exact value `rational·π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiRational {
    pub rational: BigRational,
    pub pi_power: i32,
}

impl PiRational {
    pub fn to_f64(&self) -> Real {
        self.rational.to_f64().unwrap_or(Real::NAN) * PI.powi(self.pi_power)
    }
}

/// `2^{2ℓ+n+3}π^{2ℓ−n+2}/((ℓ!)²(2ℓ−n+1)!)`, the part of `I₀(T; ℓ)` not depending on `T`.
pub fn arch_constant(params: &Params) -> PiRational {
    let (n, ell) = (params.n as u64, params.ell as u64);
    let num = BigInt::from(1) << (2 * ell + n + 3);
    let den = factorial(ell).pow(2) * factorial(2 * ell - n + 1);
    PiRational { rational: BigRational::new(num, den), pi_power: (2 * ell - n + 2) as i32 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::rat;
    use crate::hermitian::QuadInt;
    use proptest::prelude::*;

    #[test]
    fn unit_vector_example() {
        let f = FieldE::new(3).unwrap();
        let t = GlobalVector::new(QuadInt::one(), QuadInt::one());
        let w = whittaker_at(&t, 3, &f).unwrap();
        assert!((w.beta_abs - 8.0 * PI).abs() < 1e-12);
        assert!((w.phase - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for v in 0..=3 {
            assert!((w.component(v) - w.component(-v)).norm() <= 1e-15 * w.component(v).norm());
        }
    }

    #[test]
    fn degenerate_beta() {
        let f = FieldE::new(7).unwrap();
        let t = GlobalVector::new(QuadInt::one(), QuadInt::from_int(-1));
        assert!(whittaker_at(&t, 3, &f).is_err());
    }

    #[test]
    fn constants() {
        let c = arch_constant(&Params::new(2, 3).unwrap());
        assert_eq!(c.rational, rat(64, 135));
        assert_eq!(c.pi_power, 6);
        let c = arch_constant(&Params::new(2, 4).unwrap());
        assert_eq!(c.rational, BigRational::new(BigInt::from(1 << 13), BigInt::from(576 * 5040)));
        assert_eq!(c.pi_power, 8);
        let c = arch_constant(&Params::new(6, 9).unwrap());
        assert_eq!(c.pi_power, 14);
    }

    proptest! {
        #[test]
        fn phase_has_unit_modulus(c in prop::array::uniform4(-6i64..6), d in prop::sample::select(vec![3u64, 7, 11, 19])) {
            let f = FieldE::new(d).unwrap();
            let t = GlobalVector::from_coords(c);
            if let Ok(w) = whittaker_at(&t, 4, &f) {
                prop_assert!((w.phase.norm() - 1.0).abs() < 1e-14);
                for v in 0..=4i32 {
                    let lhs = w.component(v) * w.phase.powi(-2 * v);
                    prop_assert!((lhs - w.component(-v)).norm() <= 1e-13 * w.component(v).norm());
                }
            }
        }
    }
}
