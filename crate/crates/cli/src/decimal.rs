//! Numbers travel as decimal strings: the shortest digits that parse back to
//! the same `f64`, never in exponent form.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn format(x: f64) -> String {
    format!("{x}")
}

pub fn parse(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|x| x.is_finite())
}

/// A finite real written as a string, read from a string or a JSON number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dec(pub f64);

impl Serialize for Dec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(self.0))
    }
}

struct DecVisitor;

impl Visitor<'_> for DecVisitor {
    type Value = Dec;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a finite number or a decimal string")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Dec, E> {
        if v.is_finite() {
            Ok(Dec(v))
        } else {
            Err(E::custom("number is not finite"))
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Dec, E> {
        Ok(Dec(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Dec, E> {
        Ok(Dec(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Dec, E> {
        parse(v).map(Dec).ok_or_else(|| E::custom(format_args!("`{v}` is not a finite decimal")))
    }
}

impl<'de> Deserialize<'de> for Dec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Dec, D::Error> {
        d.deserialize_any(DecVisitor)
    }
}

pub fn decs(values: &[f64]) -> Vec<Dec> {
    values.iter().copied().map(Dec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [0.1, -2.5, 1e-30, 123456789.125, 1.0 / 3.0, f64::MAX, 0.0] {
            assert_eq!(parse(&format(x)), Some(x));
            assert!(!format(x).contains('e'));
        }
        assert_eq!(parse("inf"), None);
        assert_eq!(parse("abc"), None);
    }

    #[test]
    fn reads_numbers_and_strings() {
        let v: Vec<Dec> = serde_json::from_str(r#"[1, "0.25", -3.5]"#).unwrap();
        assert_eq!(v, vec![Dec(1.0), Dec(0.25), Dec(-3.5)]);
        assert_eq!(serde_json::to_string(&Dec(0.5)).unwrap(), "\"0.5\"");
    }
}
