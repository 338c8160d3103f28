//! Floating-point spectra of the collocation matrix and its symmetrization,
//! multiplicity clustering, and the cross-degree interlacing check.
//!
//! The working precision is double-double (about 32 significant decimal
//! digits); plain doubles run the same generic code and serve as cross-checks
//! only. Certified sign statements always defer to the exact inertia kernels.

mod hqr;
mod jacobi;

pub use hqr::general_eigenvalues;
pub use jacobi::jacobi_eigenvalues;

use num_rational::BigRational;

use crate::colloc::build_m;
use crate::comb::GammaSet;
use crate::dd::{Dd, Real};
use crate::error::{Error, Result};
use crate::report::{ClusterEntry, InterlaceRow, SpectrumReport, Status, VerificationReport, Witness};

/// Largest degree the spectral path accepts.
pub const MAX_SPECTRUM_DEGREE: u32 = 25;

/// Relative gap under which two eigenvalues share a multiplicity cluster.
pub const DEFAULT_CLUSTER_GAP: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct SpectrumOptions {
    pub cluster_rel_gap: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            cluster_rel_gap: DEFAULT_CLUSTER_GAP,
        }
    }
}

/// Clustered spectrum in the solver's working precision.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Real> {
    pub degree: u32,
    pub symmetrized: bool,
    /// `(representative value, multiplicity)`, strictly decreasing values.
    pub clusters: Vec<(T, usize)>,
    pub warnings: Vec<String>,
    cluster_rel_gap: f64,
}

impl<T: Real> Spectrum<T> {
    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.clusters.iter().map(|&(_, m)| m).collect()
    }

    /// Weighted sum of the clustered eigenvalues, for trace cross-checks.
    pub fn weighted_sum_f64(&self) -> f64 {
        self.clusters
            .iter()
            .map(|&(v, m)| v.to_f64() * m as f64)
            .sum()
    }

    pub fn to_report(&self) -> SpectrumReport {
        SpectrumReport {
            degree: self.degree,
            symmetrized: self.symmetrized,
            precision: format!(
                "{} (~{} significant decimal digits)",
                T::NAME,
                T::DECIMAL_DIGITS
            ),
            cluster_threshold: self.cluster_rel_gap,
            eigenvalues: self
                .clusters
                .iter()
                .map(|&(v, m)| ClusterEntry {
                    value: v.to_decimal_string(12),
                    multiplicity: m,
                })
                .collect(),
            warnings: self.warnings.clone(),
        }
    }
}

/// The collocation matrix (or its symmetrization) converted to the solver
/// scalar, entry by entry from the exact rationals.
pub fn collocation_matrix_real<T: Real>(d: u32, symmetrized: bool) -> Result<Vec<Vec<T>>> {
    let full = GammaSet::full(d)?;
    let m = build_m(&full)?;
    let n = m.dim();
    let denom = BigRational::from_integer(m.denominator());
    let mut out = vec![vec![T::zero(); n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut num = BigRational::from_integer(m.entry(r, c).clone());
            if symmetrized {
                num += BigRational::from_integer(m.entry(c, r).clone());
            }
            out[r][c] = T::from_rational(&(num / &denom));
        }
    }
    Ok(out)
}

fn cluster_values<T: Real>(mut vals: Vec<T>, rel_gap: f64) -> (Vec<(T, usize)>, Vec<String>) {
    vals.sort_by(|a, b| b.partial_cmp(a).expect("comparable eigenvalues"));
    let gap = T::from_f64(rel_gap);
    let mut groups: Vec<Vec<T>> = Vec::new();
    for v in vals {
        let start_new = match groups.last() {
            None => true,
            Some(g) => {
                let head = g[0];
                let scale = head.abs().max_val(v.abs());
                if scale.is_zero_val() {
                    false
                } else {
                    (head - v).abs() > gap * scale
                }
            }
        };
        if start_new {
            groups.push(vec![v]);
        } else {
            groups.last_mut().unwrap().push(v);
        }
    }
    let clusters: Vec<(T, usize)> = groups
        .iter()
        .map(|g| {
            let mut sum = T::zero();
            for &v in g {
                sum += v;
            }
            (sum / T::from_f64(g.len() as f64), g.len())
        })
        .collect();
    // Two adjacent clusters closer than 10x the threshold is an ambiguous
    // multiplicity split: report it, never silently merge.
    let mut warnings = Vec::new();
    let wide_gap = T::from_f64(10.0 * rel_gap);
    for w in clusters.windows(2) {
        let (a, b) = (w[0].0, w[1].0);
        let scale = a.abs().max_val(b.abs());
        if !scale.is_zero_val() && (a - b).abs() <= wide_gap * scale {
            warnings.push(format!(
                "ambiguous multiplicity: clusters {} and {} are within 10x the gap threshold",
                a.to_f64(),
                b.to_f64()
            ));
        }
    }
    (clusters, warnings)
}

/// Spectrum of the collocation matrix (or of its symmetrization) at degree
/// `d`, clustered into multiplicity groups.
pub fn spectrum_with<T: Real>(
    d: u32,
    symmetrized: bool,
    opts: SpectrumOptions,
) -> Result<Spectrum<T>> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if d > MAX_SPECTRUM_DEGREE {
        return Err(Error::OutOfValidatedRange(d, MAX_SPECTRUM_DEGREE));
    }
    let a = collocation_matrix_real::<T>(d, symmetrized)?;
    let mut warnings = Vec::new();
    let values: Vec<T> = if symmetrized {
        jacobi::jacobi_eigenvalues(a)?
    } else {
        // General eigenproblem; realness is asserted after the fact, not assumed.
        let norm = a
            .iter()
            .flatten()
            .fold(T::zero(), |acc, &v| acc + v.abs());
        let pairs = hqr::general_eigenvalues(a)?;
        let tol = if T::DECIMAL_DIGITS >= 30 {
            T::from_f64(1e-20)
        } else {
            T::from_f64(1e-8)
        } * norm;
        let mut max_im = T::zero();
        for &(_, im) in &pairs {
            max_im = max_im.max_val(im.abs());
        }
        if max_im > tol {
            warnings.push(format!(
                "imaginary parts up to {} exceed the realness threshold",
                max_im.to_f64()
            ));
        }
        pairs.into_iter().map(|(re, _)| re).collect()
    };
    let (clusters, mut cluster_warnings) = cluster_values(values, opts.cluster_rel_gap);
    warnings.append(&mut cluster_warnings);
    let spec = Spectrum {
        degree: d,
        symmetrized,
        clusters,
        warnings,
        cluster_rel_gap: opts.cluster_rel_gap,
    };
    debug_assert_eq!(
        spec.total_multiplicity() as u32,
        (d + 1) * (d + 2) / 2,
        "multiplicities must sum to the matrix dimension"
    );
    Ok(spec)
}

/// Default double-double spectrum.
pub fn spectrum(d: u32, symmetrized: bool) -> Result<Spectrum<Dd>> {
    spectrum_with(d, symmetrized, SpectrumOptions::default())
}

/// Plain-double Jacobi eigenvalues, used as a cheap hint and cross-check.
pub fn jacobi_eigenvalues_f64(a: &[Vec<f64>]) -> Result<Vec<f64>> {
    jacobi::jacobi_eigenvalues(a.to_vec())
}

/// Expected multiplicity sequence `3, 3, 4, 5, …, d+1` for the clustered
/// spectrum at degree `d` (just `3` at degree 1).
pub fn expected_multiplicities(d: u32) -> Vec<usize> {
    (1..=d)
        .map(|i| if i == 1 { 3 } else { (i + 1) as usize })
        .collect()
}

pub struct InterlacingOutcome {
    pub report: VerificationReport,
    /// Plot data: one row per clustered eigenvalue of every degree.
    pub rows: Vec<InterlaceRow>,
}

/// Verifies, for every degree below `d_max`, the clustered spectrum shape
/// (`d` distinct positive values, multiplicities `3,3,4,…,d+1`, leading value
/// 1) and the cross-degree interlacing chain. Distinct eigenvalues are paired
/// by rank; that pairing choice is recorded in the report notes.
pub fn check_interlacing(d_max: u32, opts: SpectrumOptions) -> Result<InterlacingOutcome> {
    if d_max < 2 {
        return Err(Error::InvalidArgument(
            "interlacing needs at least two degrees".into(),
        ));
    }
    let mut spectra: Vec<Spectrum<Dd>> = Vec::new();
    for d in 1..=d_max {
        spectra.push(spectrum_with::<Dd>(d, false, opts)?);
    }

    let slack = Dd::from_f64(1e-12);
    let mut failures: Vec<String> = Vec::new();
    for spec in &spectra {
        let d = spec.degree;
        if spec.multiplicities() != expected_multiplicities(d) {
            failures.push(format!(
                "degree {d}: multiplicities {:?} differ from expected {:?}",
                spec.multiplicities(),
                expected_multiplicities(d)
            ));
        }
        if spec.clusters.len() != d as usize {
            failures.push(format!(
                "degree {d}: {} distinct eigenvalues, expected {d}",
                spec.clusters.len()
            ));
        }
        if let Some(&(top, _)) = spec.clusters.first() {
            if (top - Dd::ONE).abs() > Dd::from_f64(1e-10) {
                failures.push(format!(
                    "degree {d}: leading eigenvalue {} is not 1",
                    top.to_f64()
                ));
            }
        }
        for &(v, _) in &spec.clusters {
            if v <= Dd::ZERO {
                failures.push(format!(
                    "degree {d}: nonpositive eigenvalue {}",
                    v.to_f64()
                ));
            }
        }
        if !spec.warnings.is_empty() {
            failures.push(format!(
                "degree {d}: spectrum warnings: {}",
                spec.warnings.join("; ")
            ));
        }
    }
    for pair in spectra.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        let d = lower.degree;
        for (i, &(v_low, _)) in lower.clusters.iter().enumerate() {
            let tol = slack * v_low.abs().max_val(Dd::ONE);
            if let Some(&(v_up, _)) = upper.clusters.get(i) {
                if v_up + tol < v_low {
                    failures.push(format!(
                        "chain broken at degree {d}, rank {}: {} < {}",
                        i + 1,
                        v_up.to_f64(),
                        v_low.to_f64()
                    ));
                }
            }
            if let Some(&(v_next, _)) = upper.clusters.get(i + 1) {
                if v_low + tol < v_next {
                    failures.push(format!(
                        "chain broken at degree {d}, rank {}: {} < {}",
                        i + 1,
                        v_low.to_f64(),
                        v_next.to_f64()
                    ));
                }
            }
        }
    }

    let rows: Vec<InterlaceRow> = spectra
        .iter()
        .flat_map(|s| {
            s.clusters.iter().map(|&(v, m)| InterlaceRow {
                degree: s.degree,
                value: v.to_decimal(12),
                multiplicity: m,
            })
        })
        .collect();

    let notes = format!(
        "degrees 1..={d_max}; eigenvalues paired across degrees by rank of distinct clustered values"
    );
    let report = if failures.is_empty() {
        VerificationReport::pass("interlace", d_max, notes)
    } else {
        let witnesses = failures
            .iter()
            .map(|f| Witness {
                gamma: Vec::new(),
                value: f.clone(),
            })
            .collect();
        VerificationReport {
            check: "interlace".into(),
            degree: d_max,
            status: Status::Fail,
            witnesses,
            elapsed_ms: 0,
            notes,
        }
    };
    Ok(InterlacingOutcome { report, rows })
}
