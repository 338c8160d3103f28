//! Machine-readable outcomes of verification runs. Exact values are always
//! serialized as decimal strings; floating-point spectra carry an explicit
//! precision field.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warning,
}

/// A concrete index set together with the exact value observed on it.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub gamma: Vec<[u32; 3]>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub degree: u32,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u64,
    pub notes: String,
}

impl VerificationReport {
    pub fn pass(check: &str, degree: u32, notes: String) -> Self {
        VerificationReport {
            check: check.to_string(),
            degree,
            status: Status::Pass,
            witnesses: Vec::new(),
            elapsed_ms: 0,
            notes,
        }
    }

    /// A failing report always carries at least one witness.
    pub fn fail(check: &str, degree: u32, witnesses: Vec<Witness>, notes: String) -> Self {
        assert!(!witnesses.is_empty(), "failing report without witness");
        VerificationReport {
            check: check.to_string(),
            degree,
            status: Status::Fail,
            witnesses,
            elapsed_ms: 0,
            notes,
        }
    }

    pub fn warning(check: &str, degree: u32, witnesses: Vec<Witness>, notes: String) -> Self {
        VerificationReport {
            check: check.to_string(),
            degree,
            status: Status::Warning,
            witnesses,
            elapsed_ms: 0,
            notes,
        }
    }

    pub fn with_elapsed(mut self, elapsed_ms: u64) -> Self {
        self.elapsed_ms = elapsed_ms;
        self
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Witness>) -> Self {
        self.witnesses = witnesses;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of a minimum-determinant search over all nonempty index sets.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MinDetResult {
    pub degree: u32,
    /// Minimizer of the integer companion determinant.
    pub minimizer_gamma: Vec<[u32; 3]>,
    /// Minimizer of the collocation determinant.
    pub minimizer_gamma_m: Vec<[u32; 3]>,
    pub min_det_n: String,
    pub min_det_m: String,
    pub conjectured_n: String,
    pub conjectured_m: String,
    pub matches_conjectured_n: bool,
    pub matches_conjectured_m: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterEntry {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub degree: u32,
    pub symmetrized: bool,
    /// Arithmetic the eigensolver ran in.
    pub precision: String,
    pub cluster_threshold: f64,
    pub eigenvalues: Vec<ClusterEntry>,
    pub warnings: Vec<String>,
}

/// One point of the interlacing plot data: degree, eigenvalue, multiplicity.
#[derive(Debug, Clone, Serialize)]
pub struct InterlaceRow {
    pub degree: u32,
    pub value: String,
    pub multiplicity: usize,
}
