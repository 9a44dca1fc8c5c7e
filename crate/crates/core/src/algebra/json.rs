//! Text/JSON form of multivectors: an object mapping canonical blade names
//! (`"s"`, `"e12"`, `"e3p"`, `"e12pm"`, ...) to coefficients. Omitted blades
//! are zero. Serialization writes non-zero terms in canonical blade order.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::blade::{Blade, BLADES};
use super::even::EvenMultivector;
use super::multivector::Multivector;

fn serialize_terms<S: Serializer>(
    serializer: S,
    terms: impl Iterator<Item = (Blade, f64)>,
) -> Result<S::Ok, S::Error> {
    let terms: Vec<(Blade, f64)> = terms.collect();
    let mut map = serializer.serialize_map(Some(terms.len()))?;
    for (b, c) in terms {
        map.serialize_entry(&b.name(), &c)?;
    }
    map.end()
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_terms(serializer, self.terms())
    }
}

impl Serialize for EvenMultivector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut terms: Vec<(Blade, f64)> = self.terms().collect();
        terms.sort_by_key(|(b, _)| {
            Blade::canonical_order()
                .iter()
                .position(|c| c == b)
                .unwrap_or(BLADES)
        });
        serialize_terms(serializer, terms.into_iter())
    }
}

struct TermsVisitor {
    even_only: bool,
}

impl<'de> Visitor<'de> for TermsVisitor {
    type Value = Multivector;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.even_only {
            f.write_str("an object mapping even blade names to numbers")
        } else {
            f.write_str("an object mapping blade names to numbers")
        }
    }

    fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Multivector, A::Error> {
        let mut out = Multivector::zero();
        let mut seen = [false; BLADES];
        while let Some((name, value)) = access.next_entry::<String, f64>()? {
            let blade = Blade::parse(&name)
                .ok_or_else(|| de::Error::custom(format!("unknown blade name {name:?}")))?;
            if self.even_only && blade.grade() % 2 != 0 {
                return Err(de::Error::custom(format!(
                    "blade {name:?} is odd; expected an even multivector"
                )));
            }
            if std::mem::replace(&mut seen[blade.index()], true) {
                return Err(de::Error::custom(format!("duplicate blade {name:?}")));
            }
            if !value.is_finite() {
                return Err(de::Error::custom(format!(
                    "non-finite coefficient for {name:?}"
                )));
            }
            out.set(blade, value);
        }
        Ok(out)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_map(TermsVisitor { even_only: false })
    }
}

impl<'de> Deserialize<'de> for EvenMultivector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer
            .deserialize_map(TermsVisitor { even_only: true })
            .map(|m| m.even_part())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_blades() {
        let m: Multivector =
            serde_json::from_str(r#"{"s": 2, "e12": -1, "e3p": 0.5, "e12pm": 3}"#).unwrap();
        assert_eq!(m.scalar_part(), 2.0);
        assert_eq!(m[Blade::parse("e12").unwrap()], -1.0);
        assert_eq!(m[Blade::parse("e3p").unwrap()], 0.5);
        assert_eq!(m[Blade::parse("e12pm").unwrap()], 3.0);
    }

    #[test]
    fn writes_canonical_order() {
        let m = Multivector::blade("e3p") + Multivector::blade("e1") * 2.0 - 1.0;
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"s":-1.0,"e1":2.0,"e3p":1.0}"#
        );
        let e = EvenMultivector::blade("e123p") + EvenMultivector::blade("epm");
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"epm":1.0,"e123p":1.0}"#
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<Multivector>(r#"{"e21": 1}"#).is_err());
        assert!(serde_json::from_str::<Multivector>(r#"{"e12": 1, "e12": 2}"#).is_err());
        assert!(serde_json::from_str::<EvenMultivector>(r#"{"e1": 1}"#).is_err());
        assert!(serde_json::from_str::<Multivector>(r#"{"x": 1}"#).is_err());
    }

    #[test]
    fn empty_object_is_zero() {
        let m: Multivector = serde_json::from_str("{}").unwrap();
        assert_eq!(m, Multivector::zero());
    }
}
