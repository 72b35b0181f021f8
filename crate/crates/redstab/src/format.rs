//! JSON encoding of exact and floating values, and parsing of command-line
//! payloads (inline JSON, `@path` files, or bare rational literals).

use std::fs;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use redstab_core::charge::LatticeVector;
use redstab_core::interlace::RootTuple;
use redstab_core::poly::Poly;
use redstab_core::Rat;
use serde_json::{json, Value};

use crate::CliError;

/// Significant digits kept for floating output.
pub const FLOAT_DIGITS: usize = 15;

pub fn rat(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn rats(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(rat).collect())
}

pub fn mat(m: &[Vec<Rat>]) -> Value {
    Value::Array(m.iter().map(|r| rats(r)).collect())
}

/// Decimal with `FLOAT_DIGITS` significant digits; infinities as strings.
pub fn float(x: f64) -> Value {
    if x == f64::INFINITY {
        return json!("inf");
    }
    if x == f64::NEG_INFINITY {
        return json!("-inf");
    }
    if x.is_nan() {
        return json!("nan");
    }
    let s = format!("{:.*e}", FLOAT_DIGITS - 1, x);
    let v: f64 = s.parse().unwrap_or(x);
    let v = if v == 0.0 { 0.0 } else { v };
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| float(x)).collect())
}

pub fn tuple(t: &RootTuple) -> Value {
    let mut v: Vec<Value> = t.finite_entries().iter().map(rat).collect();
    if t.has_infinity() {
        v.push(json!("inf"));
    }
    Value::Array(v)
}

pub fn tuple_f64(t: &[f64]) -> Value {
    floats(t)
}

/// Exact rational from `a/b`, an integer, or a decimal with optional
/// exponent.
pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let s = s.trim();
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mant.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{ip}{fp}").parse().map_err(|_| bad())?;
    let scale = exp - fp.len() as i32;
    let ten = Rat::from_integer(BigInt::from(10));
    let mut r = Rat::from_integer(digits);
    let p = (0..scale.unsigned_abs()).fold(Rat::one(), |acc, _| acc * &ten);
    r = if scale >= 0 { r * p } else { r / p };
    Ok(if neg { -r } else { r })
}

/// Read `@path` files, otherwise return the argument itself.
pub fn load(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// Parse a payload as JSON, falling back to a bare string literal.
pub fn value(arg: &str) -> Result<Value, CliError> {
    let text = load(arg)?;
    Ok(serde_json::from_str(&text).unwrap_or(Value::String(text.trim().to_string())))
}

pub fn rat_of(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => parse_rat(&n.to_string()),
        other => Err(CliError::Usage(format!("expected a number, found {other}"))),
    }
}

pub fn scalar(arg: &str) -> Result<Rat, CliError> {
    rat_of(&value(arg)?)
}

pub fn rat_list(arg: &str) -> Result<Vec<Rat>, CliError> {
    match value(arg)? {
        Value::Array(a) => a.iter().map(rat_of).collect(),
        other => Err(CliError::Usage(format!("expected a JSON array, found {other}"))),
    }
}

pub fn matrix(arg: &str) -> Result<Vec<Vec<Rat>>, CliError> {
    match value(arg)? {
        Value::Array(rows) => rows
            .iter()
            .map(|r| match r {
                Value::Array(a) => a.iter().map(rat_of).collect(),
                other => Err(CliError::Usage(format!("expected a matrix row, found {other}"))),
            })
            .collect(),
        other => Err(CliError::Usage(format!("expected a 2-D JSON array, found {other}"))),
    }
}

/// Ascending coefficients.
pub fn poly(arg: &str) -> Result<Poly, CliError> {
    Ok(Poly::new(rat_list(arg)?))
}

pub fn vector(arg: &str) -> Result<LatticeVector, CliError> {
    Ok(LatticeVector::new(rat_list(arg)?)?)
}

/// Root tuple; `"inf"` or `"+inf"` is accepted in the last slot.
pub fn root_tuple(arg: &str) -> Result<RootTuple, CliError> {
    let Value::Array(a) = value(arg)? else {
        return Err(CliError::Usage("expected a JSON array for a root tuple".to_string()));
    };
    let mut fin = Vec::new();
    let mut inf = false;
    for (i, x) in a.iter().enumerate() {
        match x.as_str().map(str::trim) {
            Some("inf") | Some("+inf") | Some("Infinity") if i + 1 == a.len() => inf = true,
            _ => fin.push(rat_of(x)?),
        }
    }
    Ok(RootTuple::new(fin, inf)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use redstab_core::num::{frac, int};

    #[test]
    fn rationals() {
        assert_eq!(parse_rat("1/3").unwrap(), frac(1, 3));
        assert_eq!(parse_rat("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse_rat("2.5e2").unwrap(), int(250));
        assert_eq!(parse_rat("1e-3").unwrap(), frac(1, 1000));
        assert_eq!(parse_rat("7").unwrap(), int(7));
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat(".").is_err());
    }

    #[test]
    fn payloads() {
        assert_eq!(rat_list("[\"1/2\", 3, 0.5]").unwrap(), vec![frac(1, 2), int(3), frac(1, 2)]);
        let t = root_tuple("[1, 3, \"inf\"]").unwrap();
        assert!(t.has_infinity());
        assert_eq!(tuple(&t), json!(["1", "3", "inf"]));
        assert_eq!(scalar("3/4").unwrap(), frac(3, 4));
    }

    #[test]
    fn float_encoding() {
        assert_eq!(float(f64::INFINITY), json!("inf"));
        assert_eq!(float(-0.0), json!(0.0));
        assert_eq!(float(0.1 + 0.2), json!(0.3));
    }
}
