//! Orbit counting reports: a count table per radius and a word listing.

use ads3_core::group::OrbitBall;
use serde::{Deserialize, Serialize};

use super::json_f64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    #[serde(rename = "R")]
    pub radius: f64,
    pub count: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OrbitSummary {
    pub version: String,
    pub group: String,
    pub point: [f64; 4],
    pub seed: u64,
    pub budget: usize,
    pub counts: Vec<CountRow>,
}

/// `R,count,exhaustive` rows.
pub fn counts_csv(rows: &[CountRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WordRow {
    word: String,
    #[serde(serialize_with = "json_f64::serialize")]
    moved_norm: f64,
}

/// `word,movedNorm` rows for the elements of a ball, in its deterministic order.
pub fn words_csv(ball: &OrbitBall, rank: usize) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for e in &ball.elements {
        w.serialize(WordRow { word: e.word.display(rank).to_string(), moved_norm: e.moved_norm })
            .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_headers() {
        let rows = [CountRow { radius: 1.0, count: 1, exhaustive: true }];
        assert_eq!(counts_csv(&rows), "R,count,exhaustive\n1.0,1,true\n");
    }
}
