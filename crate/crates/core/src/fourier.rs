//! Global Fourier coefficients: constant term, rank-1 and rank-2 terms, and the
//! expansion table over a box of integral vectors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::archimedean::{whittaker_at, CheckOutcome, WhittakerEval};
use crate::arith::numtheory::{bernoulli, factorial, factorize, kronecker, pow_big, sigma_k};
use crate::arith::{sqrtp_eval_halfint, SqrtPPoly, Splitting};
use crate::error::{validation, Error, Result};
use crate::hermitian::{local_quadratic_data, FieldE, GlobalVector, IdealValuations, Params, QuadInt};
use crate::siegel::q_poly;
use crate::Real;

/// Symbolic factor of the constant term.
pub const CONSTANT_SYMBOL: &str = "zetaE(l+1)/pi^(2l+1)";
/// `K`-type component carrying the constant term.
pub const CONSTANT_BASIS: &str = "[u1^l][u2^l]";
pub const CONSTANT_BASIS_NOTE: &str =
    "the closing statement of the expansion writes [u1^n][u2^n]; the section value carries [u1^l][u2^l], which is used";

#[derive(Clone, Debug, PartialEq)]
pub struct FourierCoefficient {
    pub t: GlobalVector,
    pub norm: BigInt,
    pub rank: u8,
    pub rational: BigRational,
    pub local_polys: BTreeMap<u64, SqrtPPoly>,
    pub whittaker: Option<WhittakerEval>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantTerm {
    pub rational: BigRational,
    pub symbolic: &'static str,
    pub basis: &'static str,
    pub numeric: Real,
    pub zeta_e: Real,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTable {
    pub d: u64,
    pub params: Params,
    pub bound: u64,
    /// Coordinates range over `a, b ∈ o_E` with `N(a), N(b) ≤ region`.
    pub region: u64,
    pub constant_term: ConstantTerm,
    pub c_ell: BigRational,
    pub d_nl: BigRational,
    pub entries: Vec<FourierCoefficient>,
}

fn local_factor(q: &BigInt, v: u32, ell: u32) -> BigInt {
    (0..=v).map(|i| q.pow(i * ell)).sum()
}

/// `σ_{E,ℓ}(T) = ∏_𝔭 Σ_{i ≤ v_𝔭(T)} N𝔭^{iℓ}` over prime ideals dividing the content of `T`.
pub fn sigma_e(t: &GlobalVector, ell: u32, f: &FieldE) -> Result<BigInt> {
    if t.is_zero() {
        return validation("σ_E of the zero vector");
    }
    let na = f.norm(&t.a);
    let nb = f.norm(&t.b);
    let g = if na.is_zero() { nb } else if nb.is_zero() { na } else { na.gcd(&nb) };
    let mut acc = BigInt::one();
    for (p, _) in factorize(&g) {
        let pb = BigInt::from(p);
        acc *= match f.prime_ideal_valuation(t, p)? {
            IdealValuations::Split(v1, v2) => local_factor(&pb, v1, ell) * local_factor(&pb, v2, ell),
            IdealValuations::Inert(v) => local_factor(&(&pb * &pb), v, ell),
            IdealValuations::Ramified(v) => local_factor(&pb, v, ell),
        };
    }
    Ok(acc)
}

/// `C_ℓ = (−1)^ℓ 2^{2ℓ+1}/(ℓ!)²`
pub fn c_ell(params: &Params) -> BigRational {
    let ell = params.ell as u64;
    let sign = if ell % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    BigRational::new(sign * (BigInt::one() << (2 * ell + 1)), factorial(ell).pow(2))
}

/// `(ℓ!)²|B_{2ℓ−n+2}|σ_{ℓ+1−n/2}(D)`, the denominator bound of rank-2 coefficients.
pub fn denominator_bound(params: &Params, f: &FieldE) -> BigRational {
    let b = bernoulli(params.weight() as usize).abs();
    let s = sigma_k(f.d(), params.ell + 1 - params.n / 2);
    BigRational::from_integer(factorial(params.ell as u64).pow(2) * s) * b
}

/// `D_{n,ℓ} = (2ℓ−n+2)2^{2n+2}D^{ℓ+1−n/2}/((ℓ!)²|B_{2ℓ−n+2}|σ_{ℓ+1−n/2}(D))`
pub fn d_nl(params: &Params, f: &FieldE) -> BigRational {
    let num = BigInt::from(params.weight())
        * (BigInt::one() << (2 * params.n + 2))
        * pow_big(f.d(), params.ell + 1 - params.n / 2);
    BigRational::from_integer(num) / denominator_bound(params, f)
}

pub fn rank1_coefficient(t: &GlobalVector, params: &Params, f: &FieldE) -> Result<FourierCoefficient> {
    let norm = t.norm(f);
    if !norm.is_zero() {
        return validation(format!("rank-1 coefficient needs ⟨T,T⟩ = 0, got {norm}"));
    }
    let sigma = sigma_e(t, params.ell, f)?;
    Ok(FourierCoefficient {
        t: t.clone(),
        norm,
        rank: 1,
        rational: c_ell(params) * BigRational::from_integer(sigma),
        local_polys: BTreeMap::new(),
        whittaker: whittaker_at(t, params.ell, f).ok(),
    })
}

/// Local polynomials `Q_{T,p}` for `p | ⟨T,T⟩` and the product of their values at `p^{ℓ−(n−1)/2}`.
pub fn local_product(
    t: &GlobalVector,
    params: &Params,
    f: &FieldE,
) -> Result<(BigInt, BTreeMap<u64, SqrtPPoly>)> {
    let norm = t.norm(f);
    let mut polys = BTreeMap::new();
    let mut prod = BigInt::one();
    for (p, _) in factorize(&norm) {
        let data = local_quadratic_data(t, f, p, params)?;
        let q = q_poly(&data)?;
        prod *= if q.is_zero() { BigInt::zero() } else { sqrtp_eval_halfint(&q, params.two_e())? };
        polys.insert(p, q);
    }
    Ok((prod, polys))
}

pub fn rank2_coefficient(t: &GlobalVector, params: &Params, f: &FieldE) -> Result<FourierCoefficient> {
    let norm = t.norm(f);
    if !norm.is_positive() {
        return validation(format!("rank-2 coefficient needs ⟨T,T⟩ > 0, got {norm}"));
    }
    let (prod, local_polys) = local_product(t, params, f)?;
    Ok(FourierCoefficient {
        t: t.clone(),
        norm,
        rank: 2,
        rational: d_nl(params, f) * BigRational::from_integer(prod),
        local_polys,
        whittaker: whittaker_at(t, params.ell, f).ok(),
    })
}

/// The rank-2 coefficient at the finite element `m = (z, 1)` with `z ∈ o_E \ {0}`:
/// `|ν(m)|^{n−ℓ}` times the coefficient of `zT`, where `|z|_{A_{E,f}} = N(z)^{−1}`.
pub fn rank2_coefficient_at(
    t: &GlobalVector,
    z: &QuadInt,
    params: &Params,
    f: &FieldE,
) -> Result<BigRational> {
    if z.is_zero() {
        return validation("scaling element must be nonzero");
    }
    let zt = t.scale(z, f);
    let base = rank2_coefficient(&zt, params, f)?.rational;
    let nz = f.norm(z);
    Ok(base * BigRational::from_integer(nz.pow(params.ell - params.n)))
}

/// `Σ_{n ≤ N} χ(n) n^{−s}` with `N` chosen so that the tail `≤ N^{1−s}/(s−1)` is below `tol`.
fn dirichlet_sum(s: u32, tol: Real, chi: impl Fn(u64) -> i32) -> Real {
    let sf = s as Real;
    let n_max = ((tol * (sf - 1.0)).powf(-1.0 / (sf - 1.0))).ceil() as u64 + 1;
    let mut terms: Vec<Real> = (1..=n_max)
        .filter_map(|k| match chi(k) {
            0 => None,
            c => Some(c as Real * (k as Real).powi(-(s as i32))),
        })
        .collect();
    // smallest first
    terms.reverse();
    terms.iter().sum()
}

/// `ζ_E(s) = ζ(s)·L(s, χ_{−D})`
pub fn zeta_e(s: u32, f: &FieldE) -> Result<Real> {
    if s < 4 {
        return validation("ζ_E is summed directly only for s ≥ 4");
    }
    let d = f.d() as i64;
    let z = dirichlet_sum(s, 1e-13, |_| 1);
    let l = dirichlet_sum(s, 1e-13, |k| kronecker(-d, k));
    Ok(z * l)
}

pub fn constant_term(params: &Params, f: &FieldE) -> Result<ConstantTerm> {
    let ze = zeta_e(params.ell + 1, f)?;
    Ok(ConstantTerm {
        rational: BigRational::one(),
        symbolic: CONSTANT_SYMBOL,
        basis: CONSTANT_BASIS,
        numeric: ze / std::f64::consts::PI.powi(2 * params.ell as i32 + 1),
        zeta_e: ze,
    })
}

/// Side of the enumeration box for a given norm bound.
pub fn enumeration_region(bound: u64) -> u64 {
    2 * bound.max(1)
}

pub fn full_expansion(params: &Params, f: &FieldE, bound: u64, budget: u64) -> Result<ExpansionTable> {
    if params.n != 2 {
        return validation("the expansion table is implemented for n = 2");
    }
    let region = enumeration_region(bound);
    let elems = f.elements_of_norm_at_most(region);
    let pairs = (elems.len() as u128) * (elems.len() as u128);
    if pairs > budget as u128 {
        return Err(Error::Resource(format!("{pairs} candidate vectors exceed the budget {budget}")));
    }
    let mut candidates = Vec::new();
    for a in &elems {
        for b in &elems {
            let t = GlobalVector::new(a.clone(), b.clone());
            if t.is_zero() {
                continue;
            }
            let nv = t.norm(f);
            if !nv.is_negative() && nv <= BigInt::from(bound) {
                candidates.push(t);
            }
        }
    }
    let mut entries = candidates
        .par_iter()
        .map(|t| {
            if t.norm(f).is_zero() {
                rank1_coefficient(t, params, f)
            } else {
                rank2_coefficient(t, params, f)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|x, y| x.norm.cmp(&y.norm).then_with(|| x.t.cmp(&y.t)));
    Ok(ExpansionTable {
        d: f.d(),
        params: *params,
        bound,
        region,
        constant_term: constant_term(params, f)?,
        c_ell: c_ell(params),
        d_nl: d_nl(params, f),
        entries,
    })
}

/// Every rank-2 rational times `(ℓ!)²|B_{2ℓ−n+2}|σ_{ℓ+1−n/2}(D)` is an integer.
pub fn denominator_bound_check(table: &ExpansionTable) -> Result<CheckOutcome> {
    let f = FieldE::new(table.d)?;
    let bound = denominator_bound(&table.params, &f);
    let name = format!("denominators(D={}, ℓ={}, bound={})", table.d, table.params.ell, table.bound);
    for e in table.entries.iter().filter(|e| e.rank == 2) {
        let v = &e.rational * &bound;
        if !v.is_integer() {
            return Ok(CheckOutcome {
                name,
                pass: false,
                detail: format!("T = {:?}: {} · {} = {v}", e.t, e.rational, bound),
            });
        }
    }
    Ok(CheckOutcome { name, pass: true, detail: String::new() })
}

/// `∏_p Q_{T,p}(p^{ℓ−(n−1)/2})` is a positive integer for integral `T` of positive norm.
pub fn local_product_is_positive(t: &GlobalVector, params: &Params, f: &FieldE) -> Result<bool> {
    Ok(local_product(t, params, f)?.0.is_positive())
}

impl FourierCoefficient {
    pub fn splitting_of(&self, f: &FieldE) -> BTreeMap<u64, Splitting> {
        self.local_polys.keys().filter_map(|&p| f.splitting(p).ok().map(|s| (p, s))).collect()
    }

    pub fn rational_f64(&self) -> Real {
        self.rational.to_f64().unwrap_or(Real::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::rat;

    fn f3() -> FieldE {
        FieldE::new(3).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let f = f3();
        let s = f.sqrt_minus_d();
        let t = GlobalVector::new(QuadInt::one(), s.clone());
        assert_eq!(t.norm(&f), BigInt::zero());
        assert_eq!(sigma_e(&t, 3, &f).unwrap(), BigInt::one());
        let two = BigInt::from(2);
        let t2 = GlobalVector::new(QuadInt::from_int(2), s.scale(&two));
        assert_eq!(sigma_e(&t2, 3, &f).unwrap(), BigInt::from(65));
        assert!(sigma_e(&GlobalVector::from_coords([0, 0, 0, 0]), 3, &f).is_err());
    }

    #[test]
    fn constants() {
        let p = Params::new(2, 3).unwrap();
        assert_eq!(c_ell(&p), rat(-32, 9));
        assert_eq!(d_nl(&p, &f3()), rat(432, 1));
    }

    #[test]
    fn rank_examples() {
        let f = f3();
        let p = Params::new(2, 3).unwrap();
        let t = GlobalVector::new(QuadInt::one(), QuadInt::one());
        let c = rank2_coefficient(&t, &p, &f).unwrap();
        assert_eq!(c.rational, rat(14256, 1));
        assert_eq!(c.local_polys[&2].d_vec(), vec![1.into(), 0.into(), 1.into()]);
        let two = BigInt::from(2);
        let t2 = GlobalVector::new(QuadInt::from_int(2), f.sqrt_minus_d().scale(&two));
        assert_eq!(rank1_coefficient(&t2, &p, &f).unwrap().rational, rat(-2080, 9));
        assert!(rank1_coefficient(&t, &p, &f).is_err());
        assert!(rank2_coefficient(&t2, &p, &f).is_err());
        // norm 1: empty product
        let t1 = GlobalVector::new(QuadInt::one(), QuadInt::new(1, -1));
        if t1.norm(&f) == BigInt::one() {
            assert_eq!(rank2_coefficient(&t1, &p, &f).unwrap().rational, rat(432, 1));
        }
    }

    #[test]
    fn unit_scaling_is_invisible() {
        let f = f3();
        let p = Params::new(2, 3).unwrap();
        for c in [[1i64, 0, 1, 0], [2, 1, 1, 1], [3, 0, 1, 2], [1, 1, 4, -1]] {
            let t = GlobalVector::from_coords(c);
            if !t.norm(&f).is_positive() {
                continue;
            }
            let a = rank2_coefficient(&t, &p, &f).unwrap().rational;
            for u in f.units() {
                assert_eq!(rank2_coefficient_at(&t, &u, &p, &f).unwrap(), a);
            }
            let swapped = GlobalVector::new(t.b.clone(), t.a.clone());
            assert_eq!(rank2_coefficient(&swapped, &p, &f).unwrap().rational, a);
        }
    }

    #[test]
    fn zeta_value() {
        // L(4, χ_{−3}) = 0.94002568087712…, ζ(4) = π⁴/90
        let z = zeta_e(4, &f3()).unwrap();
        let expect = std::f64::consts::PI.powi(4) / 90.0 * 0.940_025_680_877_12;
        assert!((z - expect).abs() < 1e-12, "{z}");
    }

    #[test]
    fn small_table() {
        let f = f3();
        let p = Params::new(2, 3).unwrap();
        let t = full_expansion(&p, &f, 2, u64::MAX).unwrap();
        assert!(t.entries.iter().any(|e| e.rank == 2 && e.rational == rat(14256, 1)));
        assert!(denominator_bound_check(&t).unwrap().pass);
        let t0 = full_expansion(&p, &f, 0, u64::MAX).unwrap();
        assert!(t0.entries.iter().all(|e| e.rank == 1));
    }
}
