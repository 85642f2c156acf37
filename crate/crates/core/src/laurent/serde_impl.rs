use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::LaurentPoly;

/// Serialized as `{"0":"1","1":"-1","2":"1"}`: exponent strings mapped to
/// integer or `p/q` coefficient strings, in increasing exponent order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, BigRational)> = self.terms().collect();
        let mut map = s.serialize_map(Some(terms.len()))?;
        for (e, c) in terms {
            map.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

pub fn parse_coefficient(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a map from exponent strings to coefficient strings")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut terms = BTreeMap::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let e: i64 = k
                        .trim()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent `{k}`")))?;
                    let c = parse_coefficient(&v)
                        .ok_or_else(|| de::Error::custom(format!("bad coefficient `{v}`")))?;
                    if terms.insert(e, c).is_some() {
                        return Err(de::Error::custom(format!("duplicate exponent {e}")));
                    }
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }

        d.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialize_trefoil() {
        let p = LaurentPoly::from_ints(0, &[1, -1, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"0":"1","1":"-1","2":"1"}"#);
        let back: LaurentPoly = serde_json::from_str(r#"{"2":"1","0":"1","1":"-1"}"#).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rationals_and_negative_exponents() {
        let p: LaurentPoly = serde_json::from_str(r#"{"-1":"1/2","3":"-4/6"}"#).unwrap();
        assert_eq!(p.coeff(-1), BigRational::new(1.into(), 2.into()));
        assert_eq!(p.coeff(3), BigRational::new((-2).into(), 3.into()));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"-1":"1/2","3":"-2/3"}"#);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"x":"1"}"#).is_err());
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"0":"1/0"}"#).is_err());
    }

    #[test]
    fn zero_is_empty_map() {
        assert_eq!(serde_json::to_string(&LaurentPoly::zero()).unwrap(), "{}");
    }
}
