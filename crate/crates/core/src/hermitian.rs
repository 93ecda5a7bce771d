//! The field `E = Q(√−D)`, the hyperbolic Hermitian plane `V₀ = o_E c₁ ⊕ o_E c₂`
//! and the passage from a global vector to per-prime quadratic-lattice data.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::numtheory::{
    hensel_root, inv_mod, pow_big, splitting_class, validate_d, valuation, Splitting,
};
use crate::error::{consistency, validation, Result};
use crate::siegel::shape::{LocalVector, QuadLatticeShape};

/// `x + y·ω` with `ω = (1 + √−D)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QuadInt {
    pub x: BigInt,
    pub y: BigInt,
}

impl QuadInt {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        QuadInt { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    pub fn from_int(x: impl Into<BigInt>) -> Self {
        QuadInt::new(x, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadInt { x: &self.x + &self.y, y: -&self.y }
    }

    pub fn add(&self, o: &QuadInt) -> Self {
        QuadInt { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &QuadInt) -> Self {
        QuadInt { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn neg(&self) -> Self {
        QuadInt { x: -&self.x, y: -&self.y }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QuadInt { x: &self.x * c, y: &self.y * c }
    }

    /// Trace to `Q`: `2x + y`.
    pub fn trace(&self) -> BigInt {
        BigInt::from(2) * &self.x + &self.y
    }
}

impl Serialize for QuadInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let x = self.x.to_i128().ok_or_else(|| serde::ser::Error::custom("coordinate overflow"))?;
        let y = self.y.to_i128().ok_or_else(|| serde::ser::Error::custom("coordinate overflow"))?;
        [x, y].serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadInt {
    fn deserialize<De: Deserializer<'de>>(d: De) -> std::result::Result<Self, De::Error> {
        let [x, y] = <[i128; 2]>::deserialize(d)?;
        Ok(QuadInt::new(x, y))
    }
}

/// `E = Q(√−D)` with `D` squarefree and `D ≡ 3 (mod 4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldE {
    d: u64,
}

impl FieldE {
    pub fn new(d: u64) -> Result<Self> {
        validate_d(d)?;
        Ok(FieldE { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `N(ω) = (1 + D)/4`, the constant term of the minimal polynomial of `ω`.
    pub fn omega_norm(&self) -> BigInt {
        BigInt::from((1 + self.d) / 4)
    }

    pub fn splitting(&self, p: u64) -> Result<Splitting> {
        splitting_class(self.d, p)
    }

    pub fn mul(&self, a: &QuadInt, b: &QuadInt) -> QuadInt {
        // ω² = ω − N(ω)
        let c = self.omega_norm();
        let yy = &a.y * &b.y;
        QuadInt {
            x: &a.x * &b.x - &yy * &c,
            y: &a.x * &b.y + &a.y * &b.x + yy,
        }
    }

    pub fn norm(&self, a: &QuadInt) -> BigInt {
        &a.x * &a.x + &a.x * &a.y + &a.y * &a.y * self.omega_norm()
    }

    /// `√−D = −1 + 2ω`.
    pub fn sqrt_minus_d(&self) -> QuadInt {
        QuadInt::new(-1, 2)
    }

    pub fn to_complex(&self, a: &QuadInt) -> Complex64 {
        let x = a.x.to_f64().unwrap_or(f64::NAN);
        let y = a.y.to_f64().unwrap_or(f64::NAN);
        Complex64::new(x + 0.5 * y, 0.5 * y * (self.d as f64).sqrt())
    }

    /// Units of `o_E`.
    pub fn units(&self) -> Vec<QuadInt> {
        let mut u = vec![QuadInt::new(1, 0), QuadInt::new(-1, 0)];
        if self.d == 3 {
            u.extend([
                QuadInt::new(0, 1),
                QuadInt::new(0, -1),
                QuadInt::new(-1, 1),
                QuadInt::new(1, -1),
            ]);
        }
        u
    }

    /// All `x + yω` with `N(x + yω) ≤ bound`, in a fixed order.
    pub fn elements_of_norm_at_most(&self, bound: u64) -> Vec<QuadInt> {
        let mut out = Vec::new();
        let b = bound as f64;
        let ymax = (4.0 * b / self.d as f64).sqrt().floor() as i64 + 1;
        for y in -ymax..=ymax {
            // x² + xy + c y² ≤ b
            let disc = 4.0 * b - (self.d as f64) * (y * y) as f64;
            if disc < 0.0 {
                continue;
            }
            let r = disc.sqrt();
            let lo = ((-(y as f64) - r) / 2.0).floor() as i64 - 1;
            let hi = ((-(y as f64) + r) / 2.0).ceil() as i64 + 1;
            for x in lo..=hi {
                let q = QuadInt::new(x, y);
                if self.norm(&q) <= BigInt::from(bound) {
                    out.push(q);
                }
            }
        }
        out.sort();
        out
    }
}

/// Weight data: `n ≡ 2 (mod 4)` and `ℓ > n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: u32,
    pub ell: u32,
}

impl Params {
    pub fn new(n: u32, ell: u32) -> Result<Self> {
        if n % 4 != 2 {
            return validation(format!("n = {n} must be congruent to 2 mod 4"));
        }
        if ell <= n {
            return validation(format!("ell = {ell} must exceed n = {n}"));
        }
        Ok(Params { n, ell })
    }

    /// `2ℓ − n + 1`, twice the evaluation exponent `ℓ − (n−1)/2`.
    pub fn two_e(&self) -> u32 {
        2 * self.ell - self.n + 1
    }

    /// Weight `2ℓ − n + 2` of the elliptic forms feeding the lift.
    pub fn weight(&self) -> u32 {
        2 * self.ell - self.n + 2
    }
}

/// `T = a·c₁ + b·c₂` in the hyperbolic model, `⟨c₁, c₂⟩ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlobalVector {
    pub a: QuadInt,
    pub b: QuadInt,
}

impl GlobalVector {
    pub fn new(a: QuadInt, b: QuadInt) -> Self {
        GlobalVector { a, b }
    }

    /// From `[ax, ay, bx, by]`.
    pub fn from_coords(c: [i64; 4]) -> Self {
        GlobalVector::new(QuadInt::new(c[0], c[1]), QuadInt::new(c[2], c[3]))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `⟨T, T⟩ = Tr(a·b̄)`.
    pub fn norm(&self, f: &FieldE) -> BigInt {
        f.mul(&self.a, &self.b.conj()).trace()
    }

    /// `Tr⟨T, S⟩`, the bilinear form polarising `⟨v, v⟩`.
    pub fn pairing(&self, other: &GlobalVector, f: &FieldE) -> BigInt {
        f.mul(&self.a, &other.b.conj()).trace() + f.mul(&self.b, &other.a.conj()).trace()
    }

    pub fn scale(&self, z: &QuadInt, f: &FieldE) -> GlobalVector {
        GlobalVector::new(f.mul(z, &self.a), f.mul(z, &self.b))
    }

    /// `⟨u₂, T⟩·√2 = ā + b̄` as a complex number, with `u₂ = (c₁ + c₂)/√2`.
    pub fn u2_pairing_sqrt2(&self, f: &FieldE) -> Complex64 {
        (f.to_complex(&self.a) + f.to_complex(&self.b)).conj()
    }

    pub fn coords(&self) -> [[BigInt; 2]; 2] {
        [[self.a.x.clone(), self.a.y.clone()], [self.b.x.clone(), self.b.y.clone()]]
    }
}

/// Valuations of `T` at the prime ideals above `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealValuations {
    Split(u32, u32),
    Inert(u32),
    Ramified(u32),
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl FieldE {
    /// `v_𝔭(x)` for each prime ideal above `p`; `None` for `x = 0`.
    fn element_valuations(&self, x: &QuadInt, p: u64, case: Splitting) -> Option<(u32, u32)> {
        if x.is_zero() {
            return None;
        }
        let vn = valuation(p, &self.norm(x)).unwrap();
        match case {
            Splitting::Ramified => Some((vn, vn)),
            Splitting::Inert => Some((vn / 2, vn / 2)),
            Splitting::Split => {
                let prec = vn + 1;
                let rho = hensel_root(&self.omega_norm(), p, prec).expect("split prime has a root");
                let m = pow_big(p, prec);
                let e1 = (&x.x + &x.y * &rho).mod_floor(&m);
                let v1 = if e1.is_zero() { prec } else { valuation(p, &e1).unwrap() };
                Some((v1, vn - v1))
            }
        }
    }

    pub fn prime_ideal_valuation(&self, t: &GlobalVector, p: u64) -> Result<IdealValuations> {
        if t.is_zero() {
            return validation("valuation of the zero vector");
        }
        let case = self.splitting(p)?;
        let va = self.element_valuations(&t.a, p, case);
        let vb = self.element_valuations(&t.b, p, case);
        let v1 = min_opt(va.map(|v| v.0), vb.map(|v| v.0)).unwrap();
        let v2 = min_opt(va.map(|v| v.1), vb.map(|v| v.1)).unwrap();
        Ok(match case {
            Splitting::Split => IdealValuations::Split(v1, v2),
            Splitting::Inert => IdealValuations::Inert(v1),
            Splitting::Ramified => IdealValuations::Ramified(v1),
        })
    }
}

/// Per-prime input of the Siegel-series engine.
///
/// `t` holds `T` in the normal-form coordinates of the quadratic lattice
/// `(V₀(Z_p), ⟨v,v⟩)`: for split and inert primes the hyperbolic lattice of rank
/// `2n` (for split primes the two halves are `T₁` and `T₂`), for ramified primes
/// the lattice `Σ x_i y_i + p Σ x_{i+m} y_{i+m}` of rank `4m = 2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVectorData {
    pub p: u64,
    pub case: Splitting,
    pub n: u32,
    pub k: u32,
    pub k1: i64,
    pub k2: i64,
    pub t: LocalVector,
    /// `ϖ² = p·u` for ramified primes.
    pub unit_u: Option<BigInt>,
}

impl LocalVectorData {
    pub fn shape(&self) -> QuadLatticeShape {
        match self.case {
            Splitting::Ramified => QuadLatticeShape::ramified(self.p, self.n as usize / 2),
            _ => QuadLatticeShape::split(self.p, self.n as usize),
        }
    }

    pub fn k_prime(&self) -> i64 {
        self.k as i64 - self.k1 - self.k2
    }

    /// Whether `T` lies in `V₀(Z_p)`.
    pub fn is_integral(&self) -> bool {
        self.k1 >= 0
    }

    /// Builds the data from hand-supplied coordinates (any even `n`, `n ≡ 0 mod 2`).
    pub fn from_local_vector(
        case: Splitting,
        n: u32,
        t: LocalVector,
        unit_u: Option<BigInt>,
    ) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return validation("n must be positive and even");
        }
        let p = t.p;
        let shape = match case {
            Splitting::Ramified => QuadLatticeShape::ramified(p, n as usize / 2),
            _ => QuadLatticeShape::split(p, n as usize),
        };
        if t.coords.len() != shape.rank() {
            return validation(format!(
                "expected {} coordinates, got {}",
                shape.rank(),
                t.coords.len()
            ));
        }
        if case == Splitting::Ramified {
            match &unit_u {
                Some(u) if !(u % BigInt::from(p)).is_zero() => {}
                _ => return validation("ramified data needs a unit u with ϖ² = p·u"),
            }
        }
        let Some(k) = t.q_valuation(&shape) else {
            return validation("⟨T,T⟩ vanishes to the available precision");
        };
        if k < 0 && t.valuation().is_some_and(|v| v >= 0) {
            return consistency("negative norm valuation for a lattice vector");
        }
        let h = shape.planes();
        let floor = t.vanishing_floor();
        let val = |idx: Vec<usize>| t.valuation_of(idx).unwrap_or(floor);
        let (k1, k2) = match case {
            Splitting::Split => (val((0..h).collect()), val((h..2 * h).collect())),
            Splitting::Inert => {
                let v = val((0..2 * h).collect());
                (v, v)
            }
            Splitting::Ramified => {
                let m = shape.m;
                let eta1: Vec<usize> = (0..m).chain(h..h + m).collect();
                let eta2: Vec<usize> = (m..h).chain(h + m..2 * h).collect();
                let (v1, v2) = (val(eta1), val(eta2));
                (v1.min(v2), v1.min(v2 + 1))
            }
        };
        Ok(LocalVectorData { p, case, n, k: k.max(0) as u32, k1, k2, t, unit_u })
    }
}

/// Default p-adic precision for a vector with `v_p(⟨T,T⟩) = k`.
pub fn default_precision(k: u32) -> u32 {
    4 * k + 12
}

pub fn local_quadratic_data(
    t: &GlobalVector,
    f: &FieldE,
    p: u64,
    params: &Params,
) -> Result<LocalVectorData> {
    let norm = t.norm(f);
    let k = valuation(p, &norm).unwrap_or(0);
    local_quadratic_data_with_precision(t, f, p, params, default_precision(k))
}

pub fn local_quadratic_data_with_precision(
    t: &GlobalVector,
    f: &FieldE,
    p: u64,
    params: &Params,
    prec: u32,
) -> Result<LocalVectorData> {
    if params.n != 2 {
        return validation("the global model is implemented for n = 2 only");
    }
    if t.is_zero() {
        return validation("zero vector");
    }
    let norm = t.norm(f);
    if norm.is_zero() {
        return validation("⟨T,T⟩ = 0: no rank-2 local data");
    }
    let case = f.splitting(p)?;
    let (coords, unit_u) = local_coordinates(t, f, p, case, prec)?;
    let lv = LocalVector::new(p, prec, 0, coords);
    let data = LocalVectorData::from_local_vector(case, params.n, lv, unit_u)?;
    let k = valuation(p, &norm).unwrap();
    if data.k != k {
        return consistency(format!(
            "local norm valuation {} disagrees with v_p(⟨T,T⟩) = {k}",
            data.k
        ));
    }
    Ok(data)
}

/// Normal-form coordinates of `T` at `p`, reduced modulo `p^prec`.
pub fn local_coordinates(
    t: &GlobalVector,
    f: &FieldE,
    p: u64,
    case: Splitting,
    prec: u32,
) -> Result<(Vec<BigInt>, Option<BigInt>)> {
    let modulus = pow_big(p, prec);
    let (a0, a1, b0, b1) = (&t.a.x, &t.a.y, &t.b.x, &t.b.y);
    let two = BigInt::from(2);
    match case {
        Splitting::Split => {
            let rho = hensel_root(&f.omega_norm(), p, prec)
                .ok_or_else(|| crate::Error::Consistency("no Hensel root at a split prime".into()))?;
            let rho_bar = BigInt::one() - &rho;
            let emb = |x: &BigInt, y: &BigInt, r: &BigInt| (x + y * r).mod_floor(&modulus);
            // T₁ = (a⁽¹⁾, b⁽¹⁾), T₂ = (b⁽²⁾, a⁽²⁾): then ⟨T,T⟩ = T₁·T₂
            Ok((
                vec![emb(a0, a1, &rho), emb(b0, b1, &rho), emb(b0, b1, &rho_bar), emb(a0, a1, &rho_bar)],
                None,
            ))
        }
        Splitting::Inert => {
            // Tr(a·b̄) = aᵀ M b with M the trace form on {1, ω}
            let y0 = &two * b0 + b1;
            let y1 = b0 + BigInt::from((1 + f.d()) / 2) * b1;
            let coords = [a0.clone(), a1.clone(), y0, y1];
            Ok((coords.into_iter().map(|v| v.mod_floor(&modulus)).collect(), None))
        }
        Splitting::Ramified => {
            if p == 2 {
                return validation("p = 2 is never ramified for D ≡ 3 mod 4");
            }
            let inv2 = inv_mod(&two, &modulus).unwrap();
            let u = -BigInt::from(f.d() / p);
            // a = (a0 + a1/2) + (a1/2)ϖ with ϖ = √−D, ϖ² = p·u
            let x1 = (a0 + a1 * &inv2).mod_floor(&modulus);
            let x2 = (a1 * &inv2).mod_floor(&modulus);
            let y1 = (&two * b0 + b1).mod_floor(&modulus);
            let y2 = (-(&u * b1)).mod_floor(&modulus);
            Ok((vec![x1, x2, y1, y2], Some(u.mod_floor(&modulus))))
        }
    }
}

/// Integer `n` as `u64`, failing for negative or oversized values.
pub fn norm_to_u64(n: &BigInt) -> Option<u64> {
    if n.is_negative() {
        None
    } else {
        n.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::numtheory::big;
    use proptest::prelude::*;

    fn gv(c: [i64; 4]) -> GlobalVector {
        GlobalVector::from_coords(c)
    }

    #[test]
    fn norm_examples() {
        let f = FieldE::new(3).unwrap();
        assert_eq!(gv([1, 0, 1, 0]).norm(&f), big(2));
        assert_eq!(gv([1, 0, -1, 2]).norm(&f), big(0));
        assert_eq!(gv([0, 0, 0, 0]).norm(&f), big(0));
    }

    #[test]
    fn valuation_examples() {
        let f = FieldE::new(3).unwrap();
        let t = gv([1, 0, -1, 2]);
        assert_eq!(f.prime_ideal_valuation(&t, 3).unwrap(), IdealValuations::Ramified(0));
        let t = gv([2, 0, -2, 4]);
        assert_eq!(f.prime_ideal_valuation(&t, 2).unwrap(), IdealValuations::Inert(1));
        assert_eq!(f.prime_ideal_valuation(&gv([1, 0, 1, 0]), 7).unwrap(), IdealValuations::Split(0, 0));
        assert!(f.prime_ideal_valuation(&gv([0, 0, 0, 0]), 7).is_err());
    }

    #[test]
    fn local_data_examples() {
        let f = FieldE::new(3).unwrap();
        let params = Params::new(2, 3).unwrap();
        let t = gv([1, 0, 1, 0]);
        let d = local_quadratic_data(&t, &f, 7, &params).unwrap();
        assert_eq!((d.case, d.k1, d.k2, d.k), (Splitting::Split, 0, 0, 0));
        let d = local_quadratic_data(&t, &f, 2, &params).unwrap();
        assert_eq!((d.case, d.k), (Splitting::Inert, 1));
        let d = local_quadratic_data(&t, &f, 3, &params).unwrap();
        assert_eq!((d.case, d.k1, d.k2, d.k), (Splitting::Ramified, 0, 0, 0));
        assert!(local_quadratic_data(&gv([1, 0, -1, 2]), &f, 3, &params).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(2, 3).is_ok());
        assert!(Params::new(4, 7).is_err());
        assert!(Params::new(6, 6).is_err());
        assert_eq!(Params::new(2, 3).unwrap().two_e(), 5);
        assert!(FieldE::new(4).is_err());
        assert!(FieldE::new(27).is_err());
    }

    #[test]
    fn serde_shapes() {
        let t = gv([1, 0, -1, 2]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"a":[1,0],"b":[-1,2]}"#);
        let back: GlobalVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }

    /// Bilinear form of the normal-form lattice on coordinate vectors.
    fn local_pairing(data: &LocalVectorData, u: &[BigInt], v: &[BigInt]) -> BigInt {
        let shape = data.shape();
        let h = shape.planes();
        let mut acc = BigInt::zero();
        for i in 0..h {
            let w = pow_big(data.p, shape.plane_weight(i));
            acc += w * (&u[i] * &v[h + i] + &v[i] * &u[h + i]);
        }
        acc
    }

    proptest! {
        #[test]
        fn field_arithmetic(ax in -20i64..20, ay in -20i64..20, bx in -20i64..20, by in -20i64..20,
                            d in prop::sample::select(vec![3u64, 7, 11, 15, 19, 23])) {
            let f = FieldE::new(d).unwrap();
            let a = QuadInt::new(ax, ay);
            let b = QuadInt::new(bx, by);
            prop_assert_eq!(f.norm(&f.mul(&a, &b)), f.norm(&a) * f.norm(&b));
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!(f.mul(&a, &b).conj(), f.mul(&a.conj(), &b.conj()));
            prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
            prop_assert_eq!(f.mul(&a, &a.conj()), QuadInt::from_int(f.norm(&a)));
        }

        #[test]
        fn split_valuations_add_up(x in -60i64..60, y in -60i64..60,
                                    (d, p) in prop::sample::select(vec![(3u64, 7u64), (3, 13), (7, 2), (11, 3), (11, 5), (7, 11)])) {
            prop_assume!(x != 0 || y != 0);
            let f = FieldE::new(d).unwrap();
            let a = QuadInt::new(x, y);
            let t = GlobalVector::new(a.clone(), QuadInt::zero());
            let vn = valuation(p, &f.norm(&a)).unwrap();
            match f.prime_ideal_valuation(&t, p).unwrap() {
                IdealValuations::Split(v1, v2) => prop_assert_eq!(v1 + v2, vn),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }

        #[test]
        fn local_coordinates_are_isometric(c1 in prop::array::uniform4(-30i64..30),
                                           c2 in prop::array::uniform4(-30i64..30),
                                           (d, p) in prop::sample::select(vec![
                                               (3u64, 7u64), (3, 2), (3, 3), (3, 5), (7, 2), (7, 7),
                                               (11, 11), (11, 3), (15, 3), (15, 5), (23, 23)])) {
            let f = FieldE::new(d).unwrap();
            let params = Params::new(2, 3).unwrap();
            let t = gv(c1);
            let s = gv(c2);
            let mut both = t.clone();
            both.a = t.a.add(&s.a);
            both.b = t.b.add(&s.b);
            prop_assume!(!t.norm(&f).is_zero() && !s.norm(&f).is_zero());
            let prec = 12;
            let dt = local_quadratic_data_with_precision(&t, &f, p, &params, prec).unwrap();
            let ds = local_quadratic_data_with_precision(&s, &f, p, &params, prec).unwrap();
            let modulus = pow_big(p, prec);
            let lhs = local_pairing(&dt, &dt.t.coords, &ds.t.coords).mod_floor(&modulus);
            let rhs = t.pairing(&s, &f).mod_floor(&modulus);
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(dt.k, valuation(p, &t.norm(&f)).unwrap());
            if dt.case == Splitting::Ramified {
                prop_assert!(dt.k2 == dt.k1 || dt.k2 == dt.k1 + 1);
                prop_assert!(dt.k_prime() >= 0);
            }
        }
    }
}
