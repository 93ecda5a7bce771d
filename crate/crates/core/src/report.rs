//! JSON and CSV emission of expansion tables and local polynomials.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::archimedean::CheckOutcome;
use crate::arith::SqrtPPoly;
use crate::fourier::{ExpansionTable, FourierCoefficient, CONSTANT_BASIS_NOTE};
use crate::hermitian::{GlobalVector, LocalVectorData};

/// Integers that fit in `i64` become JSON numbers, larger ones decimal strings.
pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn poly_value(q: &SqrtPPoly) -> Value {
    Value::Array(q.d_vec().iter().map(int_value).collect())
}

pub fn t_value(t: &GlobalVector) -> Value {
    let c = t.coords();
    json!([[int_value(&c[0][0]), int_value(&c[0][1])], [int_value(&c[1][0]), int_value(&c[1][1])]])
}

fn entry_value(e: &FourierCoefficient) -> Value {
    let local: Map<String, Value> = e.local_polys.iter().map(|(p, q)| (p.to_string(), poly_value(q))).collect();
    json!({
        "T": t_value(&e.t),
        "norm": int_value(&e.norm),
        "rank": e.rank,
        "rational": e.rational.to_string(),
        "localQ": local,
    })
}

pub fn table_json(table: &ExpansionTable) -> Value {
    let c = &table.constant_term;
    json!({
        "params": {"D": table.d, "n": table.params.n, "ell": table.params.ell, "weight": table.params.weight()},
        "region": {
            "norm_bound": table.bound,
            "coordinate_norm_bound": table.region,
            "complete": false,
            "note": "entries are the nonzero integral T with 0 <= <T,T> <= norm_bound and N(a), N(b) <= coordinate_norm_bound; isotropic T form an infinite family",
        },
        "constant_term": {
            "rational": c.rational.to_string(),
            "symbolic": c.symbolic,
            "basis": c.basis,
            "basis_note": CONSTANT_BASIS_NOTE,
            "numeric": c.numeric,
        },
        "C_ell": table.c_ell.to_string(),
        "D_nl": table.d_nl.to_string(),
        "polynomial_convention": "localQ lists d_i lowest degree first; the coefficient of X^i is d_i * p^(i/2) for odd i and d_i for even i",
        "entries": table.entries.iter().map(entry_value).collect::<Vec<_>>(),
    })
}

pub fn table_csv(table: &ExpansionTable) -> String {
    let mut s = String::from("T_ax,T_ay,T_bx,T_by,norm,rank,rational\n");
    for e in &table.entries {
        let c = e.t.coords();
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            c[0][0], c[0][1], c[1][0], c[1][1], e.norm, e.rank, e.rational
        ));
    }
    s
}

pub fn local_json(data: &LocalVectorData, q: &SqrtPPoly) -> Value {
    json!({"case": data.case.as_str(), "k": data.k, "Q": poly_value(q)})
}

pub fn outcome_json(c: &CheckOutcome) -> Value {
    json!({"name": c.name, "pass": c.pass, "detail": c.detail})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::full_expansion;
    use crate::hermitian::{FieldE, Params};

    #[test]
    fn table_shape() {
        let f = FieldE::new(3).unwrap();
        let t = full_expansion(&Params::new(2, 3).unwrap(), &f, 2, 1_000_000).unwrap();
        let v = table_json(&t);
        assert_eq!(v["C_ell"], "-32/9");
        assert_eq!(v["D_nl"], "432");
        assert_eq!(v["constant_term"]["rational"], "1");
        let e = v["entries"].as_array().unwrap().iter().find(|e| e["T"] == json!([[1, 0], [1, 0]])).unwrap();
        assert_eq!(e["rational"], "14256");
        assert_eq!(e["localQ"]["2"], json!([1, 0, 1]));
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys[0], "params");
        assert!(table_csv(&t).starts_with("T_ax,T_ay,T_bx,T_by,norm,rank,rational\n"));
    }
}
