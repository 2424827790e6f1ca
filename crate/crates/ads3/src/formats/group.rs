//! Group presentation files:
//! `{"label": str, "strategy": "free" | "hash", "generators": [{"first": [a,b,c,d], "second": [a,b,c,d]}]}`.

use std::path::Path;

use ads3_core::{GroupElement, GroupPresentation, IsometryPair, ReductionStrategy};
use serde::{Deserialize, Serialize};

use super::FormatError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupStrategy {
    Free,
    Hash,
}

impl From<GroupStrategy> for ReductionStrategy {
    fn from(s: GroupStrategy) -> Self {
        match s {
            GroupStrategy::Free => ReductionStrategy::FreeGroup,
            GroupStrategy::Hash => ReductionStrategy::HashDedup,
        }
    }
}

impl From<ReductionStrategy> for GroupStrategy {
    fn from(s: ReductionStrategy) -> Self {
        match s {
            ReductionStrategy::FreeGroup => GroupStrategy::Free,
            ReductionStrategy::HashDedup => GroupStrategy::Hash,
        }
    }
}

/// A generator `(g1, g2)` as row-major matrix literals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairLiteral {
    pub first: [f64; 4],
    pub second: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub label: String,
    pub strategy: GroupStrategy,
    pub generators: Vec<PairLiteral>,
}

impl GroupFile {
    pub fn from_presentation(gp: &GroupPresentation) -> Self {
        GroupFile {
            label: gp.label().to_string(),
            strategy: gp.strategy().into(),
            generators: gp
                .generators()
                .iter()
                .map(|p| PairLiteral { first: p.first.entries(), second: p.second.entries() })
                .collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<GroupPresentation, FormatError> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let elem = |m: [f64; 4], side: &str| {
                GroupElement::from_entries(m)
                    .map_err(|source| FormatError::Invalid { field: format!("generators[{i}].{side}"), source })
            };
            gens.push(IsometryPair::new(elem(g.first, "first")?, elem(g.second, "second")?));
        }
        GroupPresentation::new(self.label.clone(), gens, self.strategy.into()).map_err(|source| {
            let field = match source {
                ads3_core::Error::IdentityGenerator { index } => format!("generators[{index}]"),
                _ => "generators".to_string(),
            };
            FormatError::Invalid { field, source }
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("group files serialize");
        s.push('\n');
        s
    }
}

/// Parses and validates a group file.
pub fn parse_group(text: &str) -> Result<GroupPresentation, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: GroupFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "<root>".to_string() } else { path };
        FormatError::Parse { field, message: e.into_inner().to_string() }
    })?;
    file.to_presentation()
}

pub fn read_group(path: &Path) -> Result<GroupPresentation, FormatError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_group(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYCLIC: &str = r#"{
        "label": "cyclic",
        "strategy": "free",
        "generators": [{"first": [2.718281828459045, 0, 0, 0.36787944117144233], "second": [1, 0, 0, 1]}]
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let gp = parse_group(CYCLIC).unwrap();
        assert_eq!(gp.rank(), 1);
        assert_eq!(gp.strategy(), ReductionStrategy::FreeGroup);
        let again = parse_group(&GroupFile::from_presentation(&gp).to_json()).unwrap();
        assert_eq!(again, gp);
    }

    #[test]
    fn errors_name_the_field() {
        let bad_type = CYCLIC.replace("[1, 0, 0, 1]", "[1, 0, \"x\", 1]");
        let e = parse_group(&bad_type).unwrap_err().to_string();
        assert!(e.contains("generators[0].second"), "{e}");

        let bad_det = CYCLIC.replace("[1, 0, 0, 1]", "[1, 0, 0, 2]");
        let e = parse_group(&bad_det).unwrap_err().to_string();
        assert!(e.contains("generators[0].second"), "{e}");

        let e = parse_group(&CYCLIC.replace("\"free\"", "\"fast\"")).unwrap_err().to_string();
        assert!(e.contains("strategy"), "{e}");

        let e = parse_group(r#"{"label": "x", "strategy": "hash"}"#).unwrap_err().to_string();
        assert!(e.contains("generators"), "{e}");

        let ident = r#"{"label":"x","strategy":"hash","generators":[{"first":[1,0,0,1],"second":[1,0,0,1]}]}"#;
        let e = parse_group(ident).unwrap_err().to_string();
        assert!(e.contains("generators[0]"), "{e}");

        assert!(parse_group("{").is_err());
    }
}
