//! JSON form of series: an array of `{"monomial": [[symbol, exponent], ...], "coeff": "num/den"}`.

use serde_json::{json, Value};

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rational::{parse_rational, to_fraction_string};
use crate::symbol::Symbol;
use crate::SeriesError;

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                let mono: Vec<Value> = m.factors().iter().map(|(s, e)| json!([s.to_string(), e])).collect();
                json!({ "monomial": mono, "coeff": to_fraction_string(c) })
            })
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Result<Poly, SeriesError> {
    let bad = |what: &str| SeriesError::Parse(format!("series JSON: {what}"));
    let arr = v.as_array().ok_or_else(|| bad("expected an array of terms"))?;
    let mut p = Poly::zero();
    for t in arr {
        let mono = t.get("monomial").and_then(Value::as_array).ok_or_else(|| bad("term without monomial"))?;
        let mut factors = Vec::new();
        for f in mono {
            let pair = f.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("factor must be [symbol, exponent]"))?;
            let sym = Symbol::parse(pair[0].as_str().ok_or_else(|| bad("symbol must be a string"))?)?;
            let e = pair[1].as_i64().ok_or_else(|| bad("exponent must be an integer"))?;
            if e < 0 && sym != Symbol::Hbar {
                return Err(bad("only h may carry a negative exponent"));
            }
            factors.push((sym, e as i32));
        }
        let coeff = match t.get("coeff") {
            Some(Value::String(s)) => parse_rational(s)?,
            Some(Value::Number(n)) => parse_rational(&n.to_string())?,
            _ => return Err(bad("term without coeff")),
        };
        p.add_term(Monomial::from_factors(factors), coeff);
    }
    Ok(p)
}
