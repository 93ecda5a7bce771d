//! Dense univariate polynomials over a generic coefficient ring.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{consistency, Result};

/// Coefficient ring accepted by [`Poly`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// `c·X^deg`
    pub fn monomial(c: S, deg: usize) -> Self {
        let mut v = vec![S::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `P(c·X)`
    pub fn scale_var(&self, c: &S) -> Self {
        let mut pw = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Poly::new(out)
    }

    /// `P(X^e)`
    pub fn inflate(&self, e: usize) -> Self {
        assert!(e > 0);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); (self.coeffs.len() - 1) * e + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * e] = a.clone();
        }
        Poly::new(out)
    }

    /// `X^j·P(X)`
    pub fn shift(&self, j: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); j];
        out.extend(self.coeffs.iter().cloned());
        Poly::new(out)
    }

    /// `X^d·P(1/X)`; requires `d ≥ deg P`.
    pub fn reciprocal(&self, d: usize) -> Self {
        let mut out = vec![S::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            assert!(i <= d, "reciprocal degree below polynomial degree");
            out[d - i] = a.clone();
        }
        Poly::new(out)
    }

    /// Whether `X^d·P(1/X) = P(X)`.
    pub fn is_palindromic(&self, d: usize) -> bool {
        match self.degree() {
            None => true,
            Some(deg) if deg > d => false,
            Some(_) => self.reciprocal(d) == *self,
        }
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Keep only the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }
}

impl<S: Scalar + Div<Output = S>> Poly<S> {
    /// Long division by a nonzero divisor over a field.
    pub fn div_rem(&self, divisor: &Poly<S>) -> (Poly<S>, Poly<S>) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * b.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn div_exact(&self, divisor: &Poly<S>) -> Result<Poly<S>> {
        let (q, r) = self.div_rem(divisor);
        if !r.is_zero() {
            return consistency(format!("inexact polynomial division, remainder {:?}", r.coeffs));
        }
        Ok(q)
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Poly<S>) -> Poly<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Poly<S>) -> Poly<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Poly<S>) -> Poly<S> {
        &self * &rhs
    }
}

impl Poly<BigInt> {
    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }
}

impl Poly<BigRational> {
    /// Fails unless every coefficient is an integer.
    pub fn to_integer(&self) -> Result<Poly<BigInt>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_integer() {
                return consistency(format!("coefficient {i} is not integral: {c}"));
            }
            out.push(c.to_integer());
        }
        Ok(Poly::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly<BigInt> {
        Poly::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn trailing_zeros_are_dropped() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn reciprocal_and_palindrome() {
        assert!(p(&[1, 0, 1]).is_palindromic(2));
        assert!(!p(&[1, 2]).is_palindromic(1));
        assert!(p(&[0, 3, 0]).is_palindromic(2));
        assert_eq!(p(&[1, 2]).reciprocal(3), p(&[0, 0, 2, 1]));
    }

    #[test]
    fn division_by_linear_factor() {
        let f = p(&[1, 2, -8]).to_rational();
        let g = p(&[1, -2]).to_rational();
        let q = f.div_exact(&g).unwrap();
        assert_eq!(q.to_integer().unwrap(), p(&[1, 4]));
        assert!(p(&[1, 1]).to_rational().div_exact(&g).is_err());
    }

    #[test]
    fn substitutions() {
        let f = p(&[1, 1]);
        assert_eq!(f.inflate(2), p(&[1, 0, 1]));
        assert_eq!(f.scale_var(&BigInt::from(4)), p(&[1, 4]));
        assert_eq!(f.shift(2), p(&[0, 0, 1, 1]));
        assert_eq!(f.eval(&BigInt::from(32)), BigInt::from(33));
    }
}
