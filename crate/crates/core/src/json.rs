//! JSON interchange for multivectors.
//!
//! ```json
//! {"signature":[3,0,0],"coeffs":{"1":2.0,"e12":-0.5}}
//! ```
//!
//! Blade names follow [`blade_name`]; omitted blades are zero. Doubles are
//! written in shortest round-trip form so decoding reproduces every bit.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{blade_name, parse_blade_name, Signature};
use crate::error::{Error, Result};
use crate::multivector::{canonical_order, Multivector};

struct Coeffs<'a>(&'a Multivector);

impl Serialize for Coeffs<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mv = self.0;
        let dim = mv.sig().dim();
        let nonzero: Vec<u32> = canonical_order(dim).into_iter().filter(|&b| mv.get(b) != 0.0).collect();
        let mut map = serializer.serialize_map(Some(nonzero.len()))?;
        for bits in nonzero {
            map.serialize_entry(&blade_name(bits, dim), &mv.get(bits))?;
        }
        map.end()
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.is_finite() {
            return Err(serde::ser::Error::custom("non-finite coefficient"));
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("signature", &self.sig())?;
        map.serialize_entry("coeffs", &Coeffs(self))?;
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMultivector {
    signature: Signature,
    #[serde(default)]
    coeffs: BTreeMap<String, f64>,
}

impl RawMultivector {
    fn build(self) -> Result<Multivector> {
        let mut mv = Multivector::zero(self.signature);
        for (name, value) in self.coeffs {
            let bits = parse_blade_name(&name, self.signature.dim())?;
            if bits as usize >= self.signature.size() {
                return Err(Error::Json(format!("blade {name} outside {}", self.signature)));
            }
            mv.set(bits, value);
        }
        Ok(mv)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        RawMultivector::deserialize(deserializer)?.build().map_err(D::Error::custom)
    }
}

pub fn to_json(mv: &Multivector) -> Result<String> {
    serde_json::to_string(mv).map_err(|e| Error::Json(e.to_string()))
}

pub fn from_json(text: &str) -> Result<Multivector> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout() {
        let s = Signature::new(3, 0, 0).unwrap();
        let mut m = Multivector::scalar(s, 2.0);
        m.set(0b011, -0.5);
        m.set(0b001, 0.1);
        assert_eq!(to_json(&m).unwrap(), r#"{"signature":[3,0,0],"coeffs":{"1":2.0,"e1":0.1,"e12":-0.5}}"#);
    }

    #[test]
    fn omitted_names_are_zero() {
        let m = from_json(r#"{"signature":[2,0,0],"coeffs":{"e12":3}}"#).unwrap();
        assert_eq!(m.coeffs(), &[0.0, 0.0, 0.0, 3.0]);
        let z = from_json(r#"{"signature":[2,0,0]}"#).unwrap();
        assert_eq!(z, Multivector::zero(z.sig()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_json(r#"{"signature":[2,0,0],"coeffs":{"e3":1}}"#).is_err());
        assert!(from_json(r#"{"signature":[2,0,0],"coeffs":{"e21":1}}"#).is_err());
        assert!(from_json(r#"{"signature":[0,0,0],"coeffs":{}}"#).is_err());
        assert!(from_json(r#"{"signature":[2,0],"coeffs":{}}"#).is_err());
        assert!(from_json(r#"{"signature":[2,0,0],"coefs":{}}"#).is_err());
        let s = Signature::new(1, 0, 0).unwrap();
        assert!(to_json(&Multivector::scalar(s, f64::NAN)).is_err());
    }

    #[test]
    fn wide_names() {
        let s = Signature::new(11, 0, 0).unwrap();
        let m = Multivector::basis(s, (1 << 10) | 1).unwrap();
        let text = to_json(&m).unwrap();
        assert!(text.contains("\"e1,11\":1.0"), "{text}");
        assert_eq!(from_json(&text).unwrap(), m);
    }
}
