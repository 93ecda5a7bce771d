use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use qeis::arith::numtheory::{factorize, Splitting};
use qeis::hermitian::{local_quadratic_data, FieldE, GlobalVector, Params, QuadInt};
use qeis::siegel::extract::{q_ramified_via_q1_q2, r_by_extraction};
use qeis::siegel::*;

fn vectors(f: &FieldE, bound: u64) -> Vec<GlobalVector> {
    let elems = f.elements_of_norm_at_most(bound);
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            let t = GlobalVector::new(a.clone(), b.clone());
            let nv = t.norm(f);
            if nv > 0.into() && nv <= bound.into() {
                out.push(t);
            }
        }
    }
    out
}

#[test]
fn inert_two_gives_x2_plus_1() {
    let f = FieldE::new(3).unwrap();
    let params = Params::new(2, 3).unwrap();
    let t = GlobalVector::new(QuadInt::new(1, 0), QuadInt::new(1, 0));
    let data = local_quadratic_data(&t, &f, 2, &params).unwrap();
    assert_eq!(data.case, Splitting::Inert);
    assert_eq!(data.k, 1);
    let q = q_poly(&data).unwrap();
    assert_eq!(q.d_vec(), vec![1.into(), 0.into(), 1.into()]);
    let oracle = assemble_series_oracle(&data, DEFAULT_BUDGET).unwrap();
    assert_eq!(oracle, assemble_series(&data).unwrap());
}

#[test]
fn q_paths_agree_on_small_norms() {
    let params = Params::new(2, 3).unwrap();
    for d in [3u64, 7, 11] {
        let f = FieldE::new(d).unwrap();
        for t in vectors(&f, 30) {
            let nv = t.norm(&f);
            for (p, _) in factorize(&nv) {
                let data = local_quadratic_data(&t, &f, p, &params).unwrap();
                let q = q_poly(&data).unwrap_or_else(|e| panic!("D={d} T={t:?} p={p}: {e}"));
                assert!(!q.is_zero());
                if data.case == Splitting::Ramified {
                    assert_eq!(q_ramified_via_q1_q2(&data).unwrap(), q);
                }
            }
        }
    }
}

#[test]
fn series_oracle_matches_assembly() {
    let params = Params::new(2, 3).unwrap();
    for d in [3u64, 7] {
        let f = FieldE::new(d).unwrap();
        for t in vectors(&f, 12) {
            let nv = t.norm(&f);
            for (p, e) in factorize(&nv) {
                if p > 3 || e > 2 {
                    continue;
                }
                let data = local_quadratic_data(&t, &f, p, &params).unwrap();
                let a = assemble_series(&data).unwrap();
                let o = assemble_series_oracle(&data, DEFAULT_BUDGET)
                    .unwrap_or_else(|e| panic!("D={d} T={t:?} p={p}: {e}"));
                assert_eq!(a, o, "D={d} T={t:?} p={p} case={:?}", data.case);
            }
        }
    }
}

#[test]
fn r_extraction_matches_closed_form() {
    for m in 1..=2usize {
        let shape = QuadLatticeShape::ramified(3, m);
        let mut seen = std::collections::BTreeSet::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7 + m as u64);
        for _ in 0..600 {
            let coords: Vec<i64> = (0..shape.rank())
                .map(|_| {
                    let v = rng.gen_range(0..4u32);
                    if rng.gen_bool(0.15) {
                        0
                    } else {
                        [1i64, 2, 4, 5, 7, 8][rng.gen_range(0..6)] * 3i64.pow(v)
                    }
                })
                .collect();
            let eta = LocalVector::from_i64(3, 20, &coords);
            let inv = invariants(&eta, &shape);
            match inv.k {
                Some(k) if k <= 4 => {}
                _ => continue,
            }
            let (r, k1, k2, k) = r_by_extraction(&eta, &shape, TermSource::ClosedForm).unwrap();
            assert_eq!(r, r_closed_form(k1, k2, k, m as u32, 3).unwrap(), "η = {coords:?}");
            seen.insert((k1, k2, k));
        }
        assert!(seen.len() >= 6, "m={m}: {seen:?}");
    }
}
