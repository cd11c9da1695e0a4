//! JSON encodings of the core value types.
//!
//! Laurent polynomials are `[[exponent, coefficient], ...]` sorted by
//! exponent; coefficients that do not fit in an `i64` are written as strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qhecke_core::hecke::HeckeElt;
use qhecke_core::{Element, Graph, LaurentPoly, RationalGraded, Seq};
use serde_json::{json, Value};

fn int(c: &BigInt) -> Value {
    c.to_i64().map_or_else(|| Value::String(c.to_string()), Value::from)
}

pub fn laurent(p: &LaurentPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e, int(c)])).collect())
}

/// `{"num": [[e, c], ...], "den": [d, ...]}` for `num / prod (1 - q^d)`.
pub fn rational_graded(r: &RationalGraded) -> Value {
    json!({ "num": laurent(r.numerator()), "den": r.denominator() })
}

pub fn seq(graph: &Graph, s: &Seq) -> Value {
    Value::Array(s.iter().map(|&v| Value::from(graph.name(v))).collect())
}

/// A list of `{bottom, perm, dots, coeff}`: `perm` is one-line and 1-based,
/// `dots` are indexed by top positions, `coeff` is a rational string.
pub fn element(graph: &Graph, e: &Element) -> Value {
    Value::Array(
        e.terms()
            .map(|(d, c)| {
                json!({
                    "bottom": seq(graph, &d.bottom),
                    "perm": d.perm.one_line(),
                    "dots": d.dots,
                    "coeff": c.to_string(),
                })
            })
            .collect(),
    )
}

/// A list of `{perm, coeff}` with coefficients in `t`.
pub fn hecke(h: &HeckeElt) -> Value {
    Value::Array(h.terms().map(|(w, c)| json!({ "perm": w.one_line(), "coeff": laurent(c) })).collect())
}

/// Reads back [`laurent`].
pub fn laurent_from(v: &Value) -> Option<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for pair in v.as_array()? {
        let [e, c] = pair.as_array()?.as_slice() else { return None };
        let c: BigInt = match c {
            Value::Number(n) => n.as_i64()?.into(),
            Value::String(s) => s.parse().ok()?,
            _ => return None,
        };
        p.add_term(e.as_i64()?, c);
    }
    Some(p)
}

/// Reads back [`rational_graded`].
pub fn rational_graded_from(v: &Value) -> Option<RationalGraded> {
    let num = laurent_from(v.get("num")?)?;
    let den = v.get("den")?.as_array()?.iter().map(|d| d.as_u64().and_then(|d| u32::try_from(d).ok())).collect::<Option<Vec<u32>>>()?;
    Some(RationalGraded::new(num, den))
}
