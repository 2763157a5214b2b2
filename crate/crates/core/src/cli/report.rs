//! The JSON report emitted with `--json`.

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundsSummary, MeasurementSummary};
use crate::monogamy::MonogamyReport;
use crate::oracle::{GapReport, OracleConfig, OracleSummary};

pub const TOOL: &str = "qdiscord";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decompose: Option<DecomposeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsSummary>,
    /// Closed-form GD (= MIN) when the input is a Werner or isotropic state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measurement: Option<MeasurementReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<GapReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monogamy: Option<MonogamyReport>,
}

impl ReportFile {
    pub fn new(command: Vec<String>, seed: u64) -> Self {
        Self {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            input: None,
            decompose: None,
            bounds: None,
            closed_form: None,
            measurement: None,
            oracle: None,
            gap: None,
            sweep: None,
            monogamy: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    /// `file:<path>` or `family:<name>`.
    pub source: String,
    /// SHA-256 of the state's matrix or amplitude data.
    pub digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits: Option<usize>,
    /// Factor applied to user coefficients to normalize them.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalization_factor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub m: usize,
    pub n: usize,
    pub local_a: Vec<f64>,
    pub local_b: Vec<f64>,
    /// Row-major correlation matrix.
    pub correlation: Vec<Vec<f64>>,
    pub purity: f64,
    pub purity_residual: f64,
    pub roundtrip_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementReport {
    pub completion: String,
    pub candidate: MeasurementSummary,
    /// ||rho - Π(rho)||^2, present when the candidate is projective.
    pub measurement_value: Option<f64>,
    pub optimization_form_value: f64,
    pub certified_gd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub config: OracleConfig,
    pub gd: OracleSummary,
    pub min: OracleSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub gd_lower: Option<f64>,
    pub min_upper: Option<f64>,
    pub closed_form: Option<f64>,
    pub oracle_gd: Option<f64>,
    pub deficit: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub family: String,
    pub out: String,
    pub rows: Vec<SweepRow>,
}
