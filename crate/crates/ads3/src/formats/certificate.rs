//! Independence certificate files.

use ads3_core::certificate::CertificateVerdict;
use ads3_core::group::GrowthProvenance;
use ads3_core::IndependenceCertificate;
use serde::{Deserialize, Serialize};

use super::json_f64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateInputs {
    pub group: String,
    pub m: u32,
    pub k: usize,
    #[serde(with = "json_f64")]
    pub eps: f64,
    /// The separation constant the parameters were chosen against, when supplied.
    #[serde(with = "json_f64")]
    pub eps_gamma: f64,
    #[serde(rename = "A", with = "json_f64")]
    pub growth_amplitude: f64,
    #[serde(rename = "a", with = "json_f64")]
    pub growth_rate: f64,
    /// `user`, `fitted` or `fact-derived`.
    pub growth_source: String,
    #[serde(with = "json_f64")]
    pub r0: f64,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryRecord {
    #[serde(with = "json_f64")]
    pub value: f64,
    #[serde(with = "json_f64")]
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleRow {
    /// The sign vector `a` of the sample point `x_{a,eps}`.
    pub signs: Vec<i8>,
    /// `(x1, x2, x3, x4)`.
    pub point: [f64; 4],
    /// Certified `(Re psi_{m,3^j})^Gamma` for `j = 0..k-1`.
    pub entries: Vec<EntryRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateFile {
    pub version: String,
    pub seed: u64,
    pub inputs: CertificateInputs,
    pub rows: Vec<SampleRow>,
    #[serde(with = "json_f64")]
    pub sigma_min: f64,
    #[serde(with = "json_f64")]
    pub total_error: f64,
    /// `Certified` or `Inconclusive`.
    pub verdict: String,
}

pub fn provenance_name(p: &GrowthProvenance) -> &'static str {
    match p {
        GrowthProvenance::Fitted => "fitted",
        GrowthProvenance::UserSupplied => "user",
        GrowthProvenance::FactDerived { .. } => "fact-derived",
    }
}

impl CertificateFile {
    pub fn new(
        cert: &IndependenceCertificate,
        signs: &[Vec<i8>],
        eps_gamma: f64,
        budget: usize,
        seed: u64,
    ) -> Self {
        let rows = cert
            .sample_points
            .iter()
            .enumerate()
            .map(|(i, x)| SampleRow {
                signs: signs[i].clone(),
                point: x.four_vector(),
                entries: (0..cert.k)
                    .map(|j| {
                        let e = cert.entry(i, j);
                        EntryRecord { value: e.value, error: e.radius }
                    })
                    .collect(),
            })
            .collect();
        CertificateFile {
            version: crate::VERSION.to_string(),
            seed,
            inputs: CertificateInputs {
                group: cert.label.clone(),
                m: cert.m,
                k: cert.k,
                eps: cert.eps,
                eps_gamma,
                growth_amplitude: cert.growth.A,
                growth_rate: cert.growth.a,
                growth_source: provenance_name(&cert.growth.provenance).to_string(),
                r0: cert.r0,
                budget,
            },
            rows,
            sigma_min: cert.sigma_min,
            total_error: cert.total_error,
            verdict: match cert.verdict {
                CertificateVerdict::Certified => "Certified",
                CertificateVerdict::Inconclusive => "Inconclusive",
            }
            .to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }
}
