//! Terminating Gauss hypergeometric sums in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{validation, Result};

/// `₂F₁(−negA, b; c; z)` as the finite sum over `j ≤ negA`.
pub fn hyp2f1_terminating(
    neg_a: u64,
    b: &BigRational,
    c: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    let mut term = BigRational::one();
    let mut acc = BigRational::one();
    for j in 0..neg_a {
        let jr = BigRational::from_integer(BigInt::from(j));
        let cj = c + &jr;
        if cj.is_zero() {
            return validation(format!("Pochhammer pole: (c)_{} vanishes for c = {c}", j + 1));
        }
        let aj = BigRational::from_integer(BigInt::from(j)) - BigRational::from_integer(BigInt::from(neg_a));
        term = term * aj * (b + &jr) / cj * z / (jr + BigRational::one());
        acc += &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::{pochhammer, rat};

    #[test]
    fn examples() {
        let one = rat(1, 1);
        assert_eq!(hyp2f1_terminating(1, &one, &one, &one).unwrap(), rat(0, 1));
        let (b, c, z) = (rat(2, 3), rat(5, 7), rat(-3, 11));
        assert_eq!(hyp2f1_terminating(1, &b, &c, &z).unwrap(), &one - &b * &z / &c);
        let v = hyp2f1_terminating(1, &rat(1, 2), &rat(-3, 2), &one).unwrap();
        assert_eq!(v, rat(4, 3));
        assert_eq!(v, pochhammer(&rat(-2, 1), 1) / pochhammer(&rat(-3, 2), 1));
        assert!(hyp2f1_terminating(3, &one, &rat(-1, 1), &one).is_err());
    }
}
