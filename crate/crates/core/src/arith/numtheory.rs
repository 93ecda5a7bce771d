//! Elementary number theory on arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};

/// Decomposition type of a rational prime in the imaginary quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl Splitting {
    pub fn as_str(self) -> &'static str {
        match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        }
    }
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

pub fn pow_big(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `p^e` for a possibly negative exponent.
pub fn pow_rat(p: u64, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow_big(p, e as u32))
    } else {
        BigRational::new(BigInt::one(), pow_big(p, (-e) as u32))
    }
}

/// p-adic valuation; `None` for zero.
pub fn valuation(p: u64, x: &BigInt) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        y = q;
        v += 1;
    }
}

pub fn valuation_rat(p: u64, x: &BigRational) -> Option<i64> {
    let vn = valuation(p, x.numer())? as i64;
    let vd = valuation(p, x.denom()).unwrap_or(0) as i64;
    Some(vn - vd)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(n: &BigInt) -> Vec<(u64, u32)> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return out;
    }
    let mut d = 2u64;
    loop {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let last = m.to_u64().expect("prime factor beyond u64 range");
        out.push((last, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(&BigInt::from(n)).iter().all(|&(_, e)| e == 1)
}

/// Validates a field discriminant parameter: squarefree, positive, `≡ 3 mod 4`.
pub fn validate_d(d: u64) -> Result<()> {
    if d % 4 != 3 || !is_squarefree(d) {
        return validation(format!("D = {d} must be squarefree and congruent to 3 mod 4"));
    }
    Ok(())
}

/// Kronecker symbol `(a/n)` for `n ≥ 1`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    let mut result = 1i32;
    let mut n = n;
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => return 0,
            1 | 7 => {}
            _ => result = -result,
        }
    }
    // Jacobi symbol (a/n) for odd n
    let mut a = a.rem_euclid(n as i64) as u64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub fn splitting_class(d: u64, p: u64) -> Result<Splitting> {
    validate_d(d)?;
    if !is_prime(p) {
        return validation(format!("{p} is not prime"));
    }
    if d % p == 0 {
        return Ok(Splitting::Ramified);
    }
    if p == 2 {
        // -D ≡ 1 or 5 mod 8 since D ≡ 3 mod 4
        return Ok(if (8 - d % 8) % 8 == 1 { Splitting::Split } else { Splitting::Inert });
    }
    Ok(if kronecker(-(d as i64), p) == 1 { Splitting::Split } else { Splitting::Inert })
}

/// Bernoulli number with `B_1 = -1/2`.
pub fn bernoulli(k: usize) -> BigRational {
    let mut b: Vec<BigRational> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binomial(m as u64 + 1, j as u64)) * bj;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m as u64 + 1)));
    }
    b.pop().unwrap()
}

/// Sum of `e^{2πict/p^s}` over units `c mod p^s`, by the closed three-case formula.
pub fn ramanujan_sum(p: u64, s: u32, t: &BigInt) -> BigInt {
    if s == 0 {
        return BigInt::one();
    }
    let ps = pow_big(p, s);
    let ps1 = pow_big(p, s - 1);
    if (t % &ps).is_zero() {
        ps - ps1
    } else if (t % &ps1).is_zero() {
        -ps1
    } else {
        BigInt::zero()
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `(x)_j`.
pub fn pochhammer(x: &BigRational, j: u64) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j {
        acc *= x + BigRational::from_integer(BigInt::from(i));
    }
    acc
}

/// Sum of `d^k` over the positive divisors `d` of `n`.
pub fn sigma_k(n: u64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for (p, e) in factorize(&BigInt::from(n)) {
        let mut part = BigInt::zero();
        for i in 0..=e {
            part += pow_big(p, i * k);
        }
        acc *= part;
    }
    acc
}

/// `x mod m` in `[0, m)`.
pub fn modp(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

/// Inverse of a unit modulo `m`.
pub fn inv_mod(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = x.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Root of `X² − X + c` modulo `p^prec`, lifted from the smallest root modulo `p`.
pub fn hensel_root(c: &BigInt, p: u64, prec: u32) -> Option<BigInt> {
    let pb = BigInt::from(p);
    let f = |x: &BigInt| x * x - x + c;
    let r0 = (0..p).map(BigInt::from).find(|x| (f(x) % &pb).is_zero())?;
    let deriv = |x: &BigInt| -> BigInt { BigInt::from(2) * x - 1 };
    if (deriv(&r0) % &pb).is_zero() {
        return None;
    }
    let mut r = r0;
    let mut k = 1;
    while k < prec {
        k = (2 * k).min(prec);
        let m = pow_big(p, k);
        let inv = inv_mod(&deriv(&r), &m)?;
        r = (&r - f(&r) * inv).mod_floor(&m);
    }
    Some(r.mod_floor(&pow_big(p, prec.max(1))))
}
