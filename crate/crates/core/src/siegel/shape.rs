//! Quadratic lattice shapes and p-adic coordinate vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::numtheory::{inv_mod, pow_big, valuation};
use crate::error::{validation, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadForm {
    /// `q = Σ_{i≤m} x_i y_i`
    SplitHyperbolic,
    /// `q = Σ_{i≤m} x_i y_i + p Σ_{m<i≤2m} x_i y_i`
    RamifiedNormal,
}

/// Coordinates are laid out as `(x_1, …, x_h, y_1, …, y_h)` with `h` hyperbolic planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadLatticeShape {
    pub p: u64,
    pub m: usize,
    pub form: QuadForm,
}

impl QuadLatticeShape {
    pub fn split(p: u64, m: usize) -> Self {
        QuadLatticeShape { p, m, form: QuadForm::SplitHyperbolic }
    }

    pub fn ramified(p: u64, m: usize) -> Self {
        QuadLatticeShape { p, m, form: QuadForm::RamifiedNormal }
    }

    pub fn planes(&self) -> usize {
        match self.form {
            QuadForm::SplitHyperbolic => self.m,
            QuadForm::RamifiedNormal => 2 * self.m,
        }
    }

    pub fn rank(&self) -> usize {
        2 * self.planes()
    }

    /// Exponent of `p` weighting plane `i`.
    pub fn plane_weight(&self, i: usize) -> u32 {
        match self.form {
            QuadForm::RamifiedNormal if i >= self.m => 1,
            _ => 0,
        }
    }
}

/// A vector `η` of `L ⊗ Q_p` stored as `η·p^shift ≡ coords (mod p^prec)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalVector {
    pub p: u64,
    pub prec: u32,
    pub shift: u32,
    pub coords: Vec<BigInt>,
}

impl LocalVector {
    pub fn new(p: u64, prec: u32, shift: u32, coords: Vec<BigInt>) -> Self {
        let m = pow_big(p, prec);
        let coords = coords.into_iter().map(|c| c.mod_floor(&m)).collect();
        LocalVector { p, prec, shift, coords }
    }

    pub fn from_i64(p: u64, prec: u32, coords: &[i64]) -> Self {
        LocalVector::new(p, prec, 0, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn modulus(&self) -> BigInt {
        pow_big(self.p, self.prec)
    }

    fn coord_valuation(&self, c: &BigInt) -> Option<u32> {
        if c.is_zero() {
            None
        } else {
            valuation(self.p, c)
        }
    }

    /// Minimal valuation over the given coordinate indices; `None` when all vanish to full precision.
    pub fn valuation_of(&self, idx: impl IntoIterator<Item = usize>) -> Option<i64> {
        idx.into_iter()
            .filter_map(|i| self.coord_valuation(&self.coords[i]))
            .min()
            .map(|v| v as i64 - self.shift as i64)
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation_of(0..self.coords.len())
    }

    /// Lower bound on the valuation of any coordinate known to vanish.
    pub fn vanishing_floor(&self) -> i64 {
        self.prec as i64 - self.shift as i64
    }

    /// `q(η)·p^{2·shift}` reduced modulo `p^prec`.
    pub fn q_scaled(&self, shape: &QuadLatticeShape) -> BigInt {
        let h = shape.planes();
        let mut acc = BigInt::zero();
        for i in 0..h {
            let term = &self.coords[i] * &self.coords[h + i];
            acc += term * pow_big(self.p, shape.plane_weight(i));
        }
        acc.mod_floor(&self.modulus())
    }

    /// `v_p(q(η))`; `None` when `q(η)` vanishes to the available precision.
    pub fn q_valuation(&self, shape: &QuadLatticeShape) -> Option<i64> {
        let q = self.q_scaled(shape);
        if q.is_zero() {
            None
        } else {
            valuation(self.p, &q).map(|v| v as i64 - 2 * self.shift as i64)
        }
    }

    /// Multiplies the coordinates in `idx` by `p^{-e}` while keeping the rest fixed.
    pub fn scale_down(&self, idx: &[usize], e: u32) -> LocalVector {
        let up = pow_big(self.p, e);
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if idx.contains(&i) { c.clone() } else { c * &up })
            .collect();
        LocalVector::new(self.p, self.prec, self.shift + e, coords)
    }

    /// Image under division by a uniformizer `ϖ` with `ϖ² = p·u`, in ramified normal coordinates.
    pub fn divide_by_uniformizer(&self, shape: &QuadLatticeShape, u: &BigInt) -> Result<LocalVector> {
        if shape.form != QuadForm::RamifiedNormal {
            return validation("division by the uniformizer needs a ramified shape");
        }
        let modulus = self.modulus();
        let Some(u_inv) = inv_mod(u, &modulus) else {
            return validation("u must be a p-adic unit");
        };
        let m = shape.m;
        let h = shape.planes();
        let pb = BigInt::from(self.p);
        let x = |i: usize| &self.coords[i];
        let y = |i: usize| &self.coords[h + i];
        let mut out = vec![BigInt::zero(); 2 * h];
        for i in 0..m {
            // p·(T/ϖ) expressed in the normal coordinates
            out[i] = &pb * x(i + m);
            out[i + m] = x(i) * &u_inv;
            out[h + i] = -(&pb * y(i + m) * &u_inv);
            out[h + i + m] = -y(i).clone();
        }
        Ok(LocalVector::new(self.p, self.prec, self.shift + 1, out))
    }
}
