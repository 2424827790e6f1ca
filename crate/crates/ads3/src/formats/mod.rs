//! File formats: group presentations, orbit reports and certificates.

pub mod certificate;
pub mod group;
pub mod orbit;

use std::fmt;

pub use certificate::{CertificateFile, CertificateInputs};
pub use group::{parse_group, read_group, GroupFile, GroupStrategy, PairLiteral};

/// Errors reading or validating an input file. Messages name the offending field.
#[derive(Debug)]
pub enum FormatError {
    Io { path: String, source: std::io::Error },
    /// Syntax or type error at a JSON path such as `generators[1].first`.
    Parse { field: String, message: String },
    /// Well-formed input rejected by validation.
    Invalid { field: String, source: ads3_core::Error },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io { path, source } => write!(f, "{path}: {source}"),
            FormatError::Parse { field, message } => write!(f, "field `{field}`: {message}"),
            FormatError::Invalid { field, source } => write!(f, "field `{field}`: {source}"),
        }
    }
}

impl std::error::Error for FormatError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            FormatError::Io { source, .. } => Some(source),
            FormatError::Invalid { source, .. } => Some(source),
            FormatError::Parse { .. } => None,
        }
    }
}

/// `f64` fields written as JSON numbers, with non-finite values as the strings `"inf"`,
/// `"-inf"` and `"nan"`.
pub mod json_f64 {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    struct F64Visitor;

    impl Visitor<'_> for F64Visitor {
        type Value = f64;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a number or one of \"inf\", \"-inf\", \"nan\"")
        }

        fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
            Ok(v)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
            Ok(v as f64)
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
            match v {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
            }
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        d.deserialize_any(F64Visitor)
    }
}

/// Parses a comma-separated list of numbers such as `1,0,0,1`.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

pub fn parse_vec4(s: &str) -> Result<[f64; 4], String> {
    let v = parse_list(s)?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 4 comma-separated numbers, got {}", v.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "json_f64")]
        v: f64,
    }

    #[test]
    fn infinity_round_trip() {
        let s = serde_json::to_string(&Wrap { v: f64::INFINITY }).unwrap();
        assert_eq!(s, r#"{"v":"inf"}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&s).unwrap().v, f64::INFINITY);
        assert_eq!(serde_json::from_str::<Wrap>(r#"{"v":2}"#).unwrap().v, 2.0);
        assert_eq!(serde_json::to_string(&Wrap { v: 0.5 }).unwrap(), r#"{"v":0.5}"#);
        assert!(serde_json::from_str::<Wrap>(r#"{"v":"infinity"}"#).is_err());
    }

    #[test]
    fn number_lists() {
        assert_eq!(parse_vec4("1, 0,0,1").unwrap(), [1.0, 0.0, 0.0, 1.0]);
        assert!(parse_vec4("1,2,3").is_err());
        assert!(parse_list("1,x").is_err());
    }
}
