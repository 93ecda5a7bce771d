//! Extraction of `P`, `R` and `Q` from truncated series, and their closed forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::series::{assemble_series, normalising_factor, term_series, LocalSeries, TermSource};
use super::shape::QuadLatticeShape;
use super::terms::invariants;
use crate::arith::numtheory::{pow_big, pow_rat, Splitting};
use crate::arith::{Poly, SqrtPBuilder, SqrtPPoly};
use crate::error::{consistency, validation, Result};
use crate::hermitian::LocalVectorData;
use crate::{IntPoly, SeriesPoly};

/// Divides `series(u)` by `1 − a·u` and returns `F` with `series = (1 − a u)·F`.
fn divide_linear(series: &SeriesPoly, a: &BigRational) -> Result<SeriesPoly> {
    let lin = Poly::new(vec![BigRational::one(), -a.clone()]);
    series.div_exact(&lin)
}

/// Unique `G` with `F(u) = G(c·u)`, i.e. `G_i = F_i / c^i`.
fn unscale(f: &SeriesPoly, p: u64, e: i64) -> SeriesPoly {
    f.scale_var(&pow_rat(p, -e))
}

/// `P` with `Σ B_r u^r = (1 − p^{m−1}u)·P(p^m u)`.
pub fn extract_p(b_series: &SeriesPoly, m: u32, p: u64) -> Result<IntPoly> {
    let f = divide_linear(b_series, &pow_rat(p, m as i64 - 1))?;
    unscale(&f, p, m as i64).to_integer()
}

/// `R` with `Σ C_r u^r − Σ_{r≤k₂} p^{r(4m−1)}u^r + p^{3m−1}u·Σ_{r≤k₁} p^{r(4m−1)}u^r
/// = (1 − p^{2m−1}u)·R(p^{2m}u)`.
pub fn extract_r(c_series: &SeriesPoly, m: u32, p: u64, k1: i64, k2: i64) -> Result<IntPoly> {
    let m = m as i64;
    let geo = |kmax: i64| {
        Poly::new((0..=kmax.max(-1)).map(|r| pow_rat(p, r * (4 * m - 1))).collect::<Vec<_>>())
    };
    let g2 = if k2 >= 0 { geo(k2) } else { Poly::zero() };
    let g1 = if k1 >= 0 { geo(k1) } else { Poly::zero() };
    let rest = &(c_series - &g2) + &g1.shift(1).scale(&pow_rat(p, 3 * m - 1));
    let f = divide_linear(&rest, &pow_rat(p, 2 * m - 1))?;
    unscale(&f, p, 2 * m).to_integer()
}

/// Reading of the first-range numerator in the closed form of `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RReading {
    /// `p^{r(2m−1)} − 1`
    Adopted,
    /// `p^{r(2m−1)−1}` as printed
    Literal,
}

fn check_ramified_triple(k1: i64, k2: i64, k: i64) -> Result<i64> {
    let kp = k - k1 - k2;
    if k1 < 0 || !(k2 == k1 || k2 == k1 + 1) || kp < 0 {
        return validation(format!("inconsistent invariants (k₁, k₂, k) = ({k1}, {k2}, {k})"));
    }
    Ok(kp)
}

/// The closed form of `R` with rational coefficients, under either reading.
pub fn r_closed_form_rational(
    k1: i64,
    k2: i64,
    k: i64,
    m: u32,
    p: u64,
    reading: RReading,
) -> Result<SeriesPoly> {
    let kp = check_ramified_triple(k1, k2, k)?;
    let m = m as i64;
    let w = 2 * m - 1;
    let den = pow_rat(p, w) - BigRational::one();
    let g = |a: i64| (pow_rat(p, a * w) - BigRational::one()) / &den;
    let mut c = vec![BigRational::zero(); k.max(0) as usize + 1];
    for r in 1..=k {
        c[r as usize] = if r <= k2 {
            match reading {
                RReading::Adopted => g(r),
                RReading::Literal => pow_rat(p, r * w - 1) / &den,
            }
        } else if r <= k2 + kp {
            g(k1 + 1)
        } else {
            g(k - r + 1)
        };
    }
    Ok(Poly::new(c).scale(&pow_rat(p, m)))
}

/// `R_{η,p}` by its closed form with the adopted numerator.
pub fn r_closed_form(k1: i64, k2: i64, k: i64, m: u32, p: u64) -> Result<IntPoly> {
    r_closed_form_rational(k1, k2, k, m, p, RReading::Adopted)?.to_integer()
}

/// `g(a) = (p^{a(2m−1)} − 1)/(p^{2m−1} − 1)`.
fn geom(p: u64, m: i64, a: i64) -> BigInt {
    let w = 2 * m - 1;
    (pow_big(p, (a * w) as u32) - BigInt::one()) / (pow_big(p, w as u32) - BigInt::one())
}

/// `Q₁(X) = p^{−m}X·R_{T/ϖ}(X²) + Σ_{r<k₂} p^{r(2m−1)}X^{2r+1}` in closed form.
pub fn q1_closed_form(k1: i64, k2: i64, k: i64, m: u32, p: u64) -> Result<IntPoly> {
    let kp = check_ramified_triple(k1, k2, k)?;
    let m = m as i64;
    let mut c = vec![BigInt::zero(); 2 * k.max(0) as usize + 1];
    for r in 0..k {
        c[(2 * r + 1) as usize] = if r < k2 {
            geom(p, m, r + 1)
        } else if r < k1 + kp {
            geom(p, m, k2)
        } else {
            geom(p, m, k - r)
        };
    }
    Ok(Poly::new(c))
}

/// `Q₂(X) = p^{−m}R_T(X²) + Σ_{r≤k₁} p^{r(2m−1)}X^{2r}` in closed form.
pub fn q2_closed_form(k1: i64, k2: i64, k: i64, m: u32, p: u64) -> Result<IntPoly> {
    let kp = check_ramified_triple(k1, k2, k)?;
    let m = m as i64;
    let mut c = vec![BigInt::zero(); 2 * k.max(0) as usize + 1];
    for r in 0..=k {
        c[(2 * r) as usize] = if r <= k1 {
            geom(p, m, r + 1)
        } else if r < k2 + kp {
            geom(p, m, k1 + 1)
        } else {
            geom(p, m, k - r + 1)
        };
    }
    Ok(Poly::new(c))
}

/// `Q` from the assembled series: `E(t) = factor(t)·Q(p^{(n+1)/2} t)`.
pub fn extract_q(series: &LocalSeries) -> Result<SqrtPPoly> {
    let f = series.terms.div_exact(&normalising_factor(series.case, series.p, series.n))?;
    let n = series.n as i64;
    let mut b = SqrtPBuilder::new(series.p);
    for (i, c) in f.coeffs().iter().enumerate() {
        // Q_i = F_i·p^{-i(n+1)/2}
        b.add(i, c, -(i as i64) * (n + 1));
    }
    b.finish()
}

fn rational_even(p: &IntPoly) -> SeriesPoly {
    p.to_rational()
}

/// `P` for a split-lattice vector, via its term series.
pub fn p_poly(eta: &super::shape::LocalVector, shape: &QuadLatticeShape) -> Result<IntPoly> {
    let b = term_series(eta, shape, TermSource::ClosedForm)?;
    extract_p(&b, shape.m as u32, shape.p)
}

/// `Q` assembled from the local polynomials `P` (unramified) or the closed forms of `R` (ramified).
pub fn q_closed_form(data: &LocalVectorData) -> Result<SqrtPPoly> {
    let shape = data.shape();
    let p = data.p;
    let n = data.n as i64;
    let mut b = SqrtPBuilder::new(p);
    match data.case {
        Splitting::Inert => {
            b.add_even_poly(0, &rational_even(&p_poly(&data.t, &shape)?), 0);
        }
        Splitting::Split => {
            let h = shape.planes();
            let xs: Vec<usize> = (0..h).collect();
            let ys: Vec<usize> = (h..2 * h).collect();
            b.add_even_poly(0, &rational_even(&p_poly(&data.t, &shape)?), 0);
            for (idx, kk) in [(&xs, data.k1), (&ys, data.k2)] {
                for i in 1..=kk.max(0) {
                    let eta = data.t.scale_down(idx, i as u32);
                    let pe = p_poly(&eta, &shape)?;
                    b.add_even_poly(i as usize, &rational_even(&pe), i * (n - 1));
                }
            }
        }
        Splitting::Ramified => {
            let m = shape.m as u32;
            let mi = m as i64;
            let (k1, k2, k) = (data.k1, data.k2, data.k as i64);
            let r_eta = if k2 == 0 { Poly::zero() } else { r_closed_form(k2 - 1, k1, k - 1, m, p)? };
            let r_t = r_closed_form(k1, k2, k, m, p)?;
            let r_eta_q = rational_even(&r_eta);
            // R_{T/ϖ}(X²) + p^{−1/2}X·R_{T/ϖ}(X²)
            b.add_even_poly(0, &r_eta_q, 0);
            b.add_even_poly(1, &r_eta_q, -1);
            for r in 0..k2 {
                b.add((2 * r + 1) as usize, &BigRational::one(), 2 * (r * (2 * mi - 1) + mi) - 1);
            }
            // p^{−m+1/2}X^{−1}R_T(X²) + p^{−m}R_T(X²); R_T has no constant term
            if !r_t.coeff(0).is_zero() {
                return consistency("R_T has a constant term");
            }
            for (j, c) in r_t.coeffs().iter().enumerate().skip(1) {
                let c = BigRational::from_integer(c.clone());
                b.add(2 * j - 1, &c, 1 - 2 * mi);
                b.add(2 * j, &c, -2 * mi);
            }
            for r in 0..=k1 {
                b.add(2 * r as usize, &BigRational::one(), 2 * r * (2 * mi - 1));
            }
        }
    }
    b.finish()
}

/// `Q` for a ramified prime from `R_{T/ϖ}`, `R_T` and the closed forms of `Q₁`, `Q₂`:
/// `Q = R_{T/ϖ}(X²) + p^{−m+1/2}X^{−1}R_T(X²) + p^{m−1/2}Q₁(X) + Q₂(X)`.
pub fn q_ramified_via_q1_q2(data: &LocalVectorData) -> Result<SqrtPPoly> {
    if data.case != Splitting::Ramified {
        return validation("Q₁/Q₂ decomposition is for ramified primes");
    }
    let m = data.n / 2;
    let mi = m as i64;
    let p = data.p;
    let (k1, k2, k) = (data.k1, data.k2, data.k as i64);
    let r_eta = if k2 == 0 { Poly::zero() } else { r_closed_form(k2 - 1, k1, k - 1, m, p)? };
    let r_t = r_closed_form(k1, k2, k, m, p)?;
    let mut b = SqrtPBuilder::new(p);
    b.add_even_poly(0, &r_eta.to_rational(), 0);
    for (j, c) in r_t.coeffs().iter().enumerate().skip(1) {
        b.add(2 * j - 1, &BigRational::from_integer(c.clone()), 1 - 2 * mi);
    }
    for (i, c) in q1_closed_form(k1, k2, k, m, p)?.coeffs().iter().enumerate() {
        if !c.is_zero() {
            b.add(i, &BigRational::from_integer(c.clone()), 2 * mi - 1);
        }
    }
    for (i, c) in q2_closed_form(k1, k2, k, m, p)?.coeffs().iter().enumerate() {
        if !c.is_zero() {
            b.add(i, &BigRational::from_integer(c.clone()), 0);
        }
    }
    b.finish()
}

/// Checks monicity, degree `2k` and `X^{2k}Q(1/X) = Q(X)`.
pub fn check_q_shape(q: &SqrtPPoly, k: u32) -> Result<()> {
    if q.degree() != Some(2 * k as usize) || !q.d.is_monic() {
        return consistency(format!("Q is not monic of degree {}: {:?}", 2 * k, q.d_vec()));
    }
    if !q.satisfies_functional_equation() {
        return consistency(format!("Q fails the functional equation: {:?}", q.d_vec()));
    }
    Ok(())
}

/// Both constructions of `Q`, before comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPaths {
    pub closed: SqrtPPoly,
    pub series: SqrtPPoly,
}

pub fn q_poly_paths(data: &LocalVectorData) -> Result<QPaths> {
    let series = extract_q(&assemble_series(data)?)?;
    let closed = q_closed_form(data)?;
    Ok(QPaths { closed, series })
}

/// `Q_{T,p}`; the zero marker when `T` is not in the local lattice.
pub fn q_poly(data: &LocalVectorData) -> Result<SqrtPPoly> {
    if data.t.q_valuation(&data.shape()).is_none() {
        return validation("Q_{T,p} requires ⟨T,T⟩ ≠ 0");
    }
    if !data.is_integral() {
        return Ok(SqrtPPoly::zero_marker(data.p));
    }
    let paths = q_poly_paths(data)?;
    if paths.closed != paths.series {
        return consistency(format!(
            "closed form {:?} and series extraction {:?} disagree",
            paths.closed.d_vec(),
            paths.series.d_vec()
        ));
    }
    if data.case == Splitting::Ramified {
        let alt = q_ramified_via_q1_q2(data)?;
        if alt != paths.closed {
            return consistency(format!(
                "Q₁/Q₂ assembly {:?} disagrees with {:?}",
                alt.d_vec(),
                paths.closed.d_vec()
            ));
        }
    }
    check_q_shape(&paths.closed, data.k)?;
    Ok(paths.closed)
}

/// `R` of a ramified-lattice vector by series extraction, with its invariants.
pub fn r_by_extraction(
    eta: &super::shape::LocalVector,
    shape: &QuadLatticeShape,
    src: TermSource,
) -> Result<(IntPoly, i64, i64, i64)> {
    let inv = invariants(eta, shape);
    let Some(k) = inv.k else {
        return validation("R requires q(η) ≠ 0");
    };
    let c = term_series(eta, shape, src)?;
    let r = extract_r(&c, shape.m as u32, shape.p, inv.k1, inv.k2)?;
    Ok((r, inv.k1, inv.k2, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::big;

    #[test]
    fn r_examples() {
        assert!(r_closed_form(0, 0, 0, 1, 3).unwrap().is_zero());
        assert_eq!(r_closed_form(0, 1, 1, 1, 3).unwrap(), Poly::new(vec![big(0), big(3)]));
        assert!(r_closed_form(0, 2, 2, 1, 3).is_err());
    }

    #[test]
    fn r_functional_equation() {
        for m in 1..=2 {
            for k in 0..=5i64 {
                for k1 in 0..=k {
                    for k2 in [k1, k1 + 1] {
                        if k - k1 - k2 < 0 {
                            continue;
                        }
                        let r = r_closed_form(k1, k2, k, m, 3).unwrap();
                        if k > 0 {
                            assert_eq!(r.degree(), Some(k as usize));
                        }
                        assert!(r.is_palindromic(k as usize + 1));
                    }
                }
            }
        }
    }
}
