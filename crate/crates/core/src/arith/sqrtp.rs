//! Polynomials whose odd-degree coefficients are integer multiples of `√p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::numtheory::pow_rat;
use super::poly::Poly;
use crate::error::{consistency, validation, Result};
use crate::IntPoly;

/// The coefficient of `X^i` is `d_i·p^{(i mod 2)/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqrtPPoly {
    pub p: u64,
    pub d: IntPoly,
}

impl SqrtPPoly {
    pub fn new(p: u64, d: IntPoly) -> Self {
        SqrtPPoly { p, d }
    }

    pub fn one(p: u64) -> Self {
        SqrtPPoly { p, d: Poly::one() }
    }

    /// Zero marker: the local lattice does not contain the vector.
    pub fn zero_marker(p: u64) -> Self {
        SqrtPPoly { p, d: Poly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.d.degree()
    }

    pub fn d_vec(&self) -> Vec<BigInt> {
        self.d.coeffs().to_vec()
    }

    /// `X^{2k}Q(1/X) = Q(X)` with `2k = deg Q`.
    pub fn satisfies_functional_equation(&self) -> bool {
        match self.degree() {
            None => true,
            Some(deg) => deg % 2 == 0 && self.d.is_palindromic(deg),
        }
    }

    /// Exact value at `X = p^{e/2}` for odd `e` of either sign.
    pub fn eval_half_power(&self, e: i64) -> Result<BigRational> {
        if e % 2 == 0 {
            return validation("evaluation exponent must be odd");
        }
        let mut acc = BigRational::zero();
        for (i, c) in self.d.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let twice = (i as i64 % 2) + (i as i64) * e;
            debug_assert!(twice % 2 == 0);
            acc += BigRational::from_integer(c.clone()) * pow_rat(self.p, twice / 2);
        }
        Ok(acc)
    }
}

/// Exact integer value of `q` at `X = p^{twoE/2}`.
pub fn sqrtp_eval_halfint(q: &SqrtPPoly, two_e: u32) -> Result<BigInt> {
    if two_e % 2 == 0 {
        return validation(format!("twoE = {two_e} must be odd and positive"));
    }
    let v = q.eval_half_power(two_e as i64)?;
    if !v.is_integer() {
        return consistency(format!("non-integral evaluation {v}"));
    }
    Ok(v.to_integer())
}

/// Accumulates terms `c·p^{h/2}·X^i` with rational `c`, then checks the √p-integral pattern.
#[derive(Clone, Debug)]
pub struct SqrtPBuilder {
    p: u64,
    d: Vec<BigRational>,
}

impl SqrtPBuilder {
    pub fn new(p: u64) -> Self {
        SqrtPBuilder { p, d: Vec::new() }
    }

    /// Adds `c·p^{half_exp/2}·X^i`; `half_exp` must have the parity of `i`.
    pub fn add(&mut self, i: usize, c: &BigRational, half_exp: i64) {
        assert_eq!(
            half_exp.rem_euclid(2),
            (i % 2) as i64,
            "√p parity mismatch at degree {i}"
        );
        if self.d.len() <= i {
            self.d.resize(i + 1, BigRational::zero());
        }
        let shift = (half_exp - (i % 2) as i64) / 2;
        self.d[i] += c * pow_rat(self.p, shift);
    }

    /// Adds `p^{half_exp/2}·X^j·P(X²)`.
    pub fn add_even_poly(&mut self, j: usize, poly: &Poly<BigRational>, half_exp: i64) {
        for (r, c) in poly.coeffs().iter().enumerate() {
            self.add(2 * r + j, c, half_exp);
        }
    }

    pub fn finish(self) -> Result<SqrtPPoly> {
        let d = Poly::new(self.d).to_integer()?;
        Ok(SqrtPPoly { p: self.p, d })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::big;
    use num_traits::One;

    fn q(p: u64, v: &[i64]) -> SqrtPPoly {
        SqrtPPoly::new(p, Poly::new(v.iter().map(|&x| big(x)).collect()))
    }

    #[test]
    fn examples() {
        assert_eq!(sqrtp_eval_halfint(&q(5, &[1]), 7).unwrap(), big(1));
        assert_eq!(sqrtp_eval_halfint(&q(2, &[1, 0, 1]), 5).unwrap(), big(33));
        assert_eq!(sqrtp_eval_halfint(&q(3, &[0, 1]), 3).unwrap(), big(9));
        assert!(sqrtp_eval_halfint(&q(3, &[0, 1]), 4).is_err());
    }

    #[test]
    fn builder_tracks_half_powers() {
        let mut b = SqrtPBuilder::new(3);
        b.add(1, &BigRational::one(), 3);
        b.add(0, &BigRational::one(), 0);
        let r = b.finish().unwrap();
        assert_eq!(r.d_vec(), vec![big(1), big(3)]);
        let mut b = SqrtPBuilder::new(3);
        b.add(0, &BigRational::one(), -2);
        assert!(b.finish().is_err());
    }
}
