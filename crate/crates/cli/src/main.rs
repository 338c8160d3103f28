//! `pmlab`: exact positivity checks, determinants, spectra and constrained
//! interpolation for Bézier collocation matrices on triangle domain points.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or parse error,
//! 3 enumeration budget exceeded.

mod io;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use pmlab_core::colloc::{build_m, build_n, det_m_from_n, multinomial, ExactMatrix};
use pmlab_core::comb::{compositions, GammaSet};
use pmlab_core::dd::rational_to_decimal;
use pmlab_core::spectral::{check_interlacing, spectrum_with, SpectrumOptions};
use pmlab_core::verify::{
    enumerate_principal_minors, evaluate_combined, formula_check, lemma_max_check, min_det_search,
    small_gamma_min_check, solve_constrained, theorem4_check, verify_pd, Budget, Scope,
};
use pmlab_core::{Error, Result, Status, VerificationReport};

use io::{emit, envelope, format_rational, read_coefficient_map};

#[derive(Parser)]
#[command(
    name = "pmlab",
    version,
    about = "Exact positivity and spectral checks for Bézier collocation matrices on triangle domain points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for enumeration (default: available parallelism;
    /// overridden by the PMLAB_WORKERS environment variable)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichDet {
    M,
    N,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    Full,
    Interior,
}

#[derive(Clone, Copy, ValueEnum)]
enum BudgetArg {
    Default,
    Large,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    /// Double-double working precision (reported spectra)
    Dd,
    /// Plain doubles (cross-check only)
    Double,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::Full => Scope::Full,
            ScopeArg::Interior => Scope::Interior,
        }
    }
}

impl From<BudgetArg> for Budget {
    fn from(b: BudgetArg) -> Budget {
        match b {
            BudgetArg::Default => Budget::Default,
            BudgetArg::Large => Budget::Large,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the index set of a degree with zero classes and both orderings
    Gen {
        #[arg(long)]
        degree: u32,
    },
    /// Exact determinants over an index set, with the scaling identity cross-check
    Det {
        #[arg(long)]
        degree: u32,
        /// Semicolon-separated triples, e.g. "3,1,0;2,2,0;1,3,0"
        #[arg(long)]
        gamma: String,
        #[arg(long, value_enum, default_value_t = WhichDet::Both)]
        which: WhichDet,
        /// Include full matrix dumps in the report
        #[arg(long)]
        dump: bool,
    },
    /// Run a verification engine
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Clustered eigenvalues of the collocation matrix at one degree
    Spectrum(SpectrumArgs),
    /// Spectrum-shape and interlacing verification across degrees, with plot data
    Interlace {
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = BudgetArg::Default)]
        budget: BudgetArg,
        /// Relative gap under which eigenvalues share a multiplicity cluster
        #[arg(long, default_value_t = pmlab_core::spectral::DEFAULT_CLUSTER_GAP)]
        cluster_threshold: f64,
    },
    /// Solve the constrained interpolation problem exactly
    Solve {
        #[arg(long)]
        degree: u32,
        /// Free index set: semicolon-separated triples, or the word "interior"
        #[arg(long)]
        interior: String,
        /// JSON map "i,j,k" -> "p/q" fixing the remaining coefficients
        /// (default: all zero)
        #[arg(long)]
        boundary: Option<PathBuf>,
        /// JSON map "i,j,k" -> "p/q" of interpolation targets on the free set
        #[arg(long)]
        targets: PathBuf,
    },
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    degree: u32,
    /// Spectrum of M + M^T instead of M
    #[arg(long)]
    sym: bool,
    #[arg(long, default_value_t = pmlab_core::spectral::DEFAULT_CLUSTER_GAP)]
    cluster_threshold: f64,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Dd)]
    precision: PrecisionArg,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Positive-definiteness certification (degrees 1..=18)
    Pd {
        #[arg(long)]
        degree: u32,
    },
    /// Exhaustive principal minors of the full or interior index set
    Minors {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = ScopeArg::Interior)]
        scope: ScopeArg,
        #[arg(long, value_enum, default_value_t = BudgetArg::Default)]
        budget: BudgetArg,
    },
    /// Minimum determinant over all nonempty index sets vs the conjectured values
    Mindet {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = BudgetArg::Default)]
        budget: BudgetArg,
    },
    /// Closed-form determinant vs exact elimination
    Formula {
        #[arg(long)]
        max_degree: u32,
    },
    /// Lattice maximum of the indexed monomials, brute force
    Lemma {
        #[arg(long)]
        degree: u32,
    },
    /// Singleton minima and pair dominance, exhaustive
    Pairs {
        #[arg(long)]
        degree: u32,
    },
    /// Randomized sampling of the six proven positivity configurations
    Theorem4 {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0x706d6c61)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = resolve_workers(cli.workers);
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
    {
        eprintln!("pmlab: could not configure {workers} workers: {e}");
        return ExitCode::from(2);
    }
    match run(cli, workers) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("pmlab: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn resolve_workers(flag: Option<usize>) -> usize {
    if let Ok(env) = std::env::var("PMLAB_WORKERS") {
        if let Ok(n) = env.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    flag.filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::EnumerationBudget { .. } => 3,
        Error::InvalidDegree(_)
        | Error::InvalidArgument(_)
        | Error::Parse { .. }
        | Error::OutOfValidatedRange(_, _)
        | Error::EmptySet(_) => 2,
        _ => 1,
    }
}

fn status_exit(status: Status) -> ExitCode {
    match status {
        Status::Pass => ExitCode::SUCCESS,
        _ => ExitCode::from(1),
    }
}

fn run(cli: Cli, workers: usize) -> Result<ExitCode> {
    let start = Instant::now();
    let out = cli.out.as_deref();
    match cli.command {
        Command::Gen { degree } => {
            let config = json!({ "command": "gen", "degree": degree });
            let rows = gen_rows(degree)?;
            match cli.format {
                Format::Json => {
                    let body = envelope(&config, &rows, ms(start), workers);
                    emit(out, &serde_json::to_string_pretty(&body).unwrap())?;
                }
                Format::Csv => {
                    let mut s = String::from("i,j,k,zero_class,clex_index,blocked_index\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            r.i, r.j, r.k, r.zero_class, r.clex_index, r.blocked_index
                        ));
                    }
                    emit(out, &s)?;
                }
                Format::Pretty => {
                    let mut s = format!("index set of degree {degree} (blocked order)\n");
                    s.push_str("  i  j  k   zeros  clex#  blocked#\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{:>3}{:>3}{:>3}{:>7}{:>7}{:>9}\n",
                            r.i, r.j, r.k, r.zero_class, r.clex_index, r.blocked_index
                        ));
                    }
                    emit(out, &s)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Det {
            degree,
            gamma,
            which,
            dump,
        } => {
            let gamma = GammaSet::parse(degree, &gamma)?;
            if gamma.is_empty() {
                return Err(Error::EmptySet("determinant of an empty index set".into()));
            }
            let report = det_report(&gamma, which, dump)?;
            let config = json!({
                "command": "det",
                "degree": degree,
                "gamma": gamma.to_text(),
                "which": match which { WhichDet::M => "M", WhichDet::N => "N", WhichDet::Both => "both" },
                "dump": dump,
            });
            match cli.format {
                Format::Json | Format::Csv => {
                    let body = envelope(&config, &report, ms(start), workers);
                    emit(out, &serde_json::to_string_pretty(&body).unwrap())?;
                }
                Format::Pretty => {
                    let mut s = String::new();
                    if let Some(n) = report.get("detN") {
                        s.push_str(&format!("det N = {}\n", n.as_str().unwrap()));
                    }
                    if let Some(m) = report.get("detM") {
                        s.push_str(&format!(
                            "det M = {} (= {} / {}^{})\n",
                            m["rational"].as_str().unwrap(),
                            m["scaled"].as_str().unwrap(),
                            m["base"],
                            m["exponent"]
                        ));
                    }
                    if let Some(rel) = report.get("relationHolds") {
                        s.push_str(&format!(
                            "scaling identity: {}\n",
                            if rel.as_bool().unwrap() { "ok" } else { "VIOLATED" }
                        ));
                    }
                    emit(out, &s)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { check } => run_verify(check, cli.format, out, start, workers),
        Command::Spectrum(args) => {
            if args.cluster_threshold <= 0.0 || args.cluster_threshold >= 0.5 {
                return Err(Error::InvalidArgument(
                    "cluster threshold must lie in (0, 0.5)".into(),
                ));
            }
            let opts = SpectrumOptions {
                cluster_rel_gap: args.cluster_threshold,
            };
            let report = match args.precision {
                PrecisionArg::Dd => spectrum_with::<pmlab_core::Dd>(args.degree, args.sym, opts)?
                    .to_report(),
                PrecisionArg::Double => {
                    spectrum_with::<f64>(args.degree, args.sym, opts)?.to_report()
                }
            };
            let config = json!({
                "command": "spectrum",
                "degree": args.degree,
                "symmetrized": args.sym,
                "clusterThreshold": args.cluster_threshold,
                "precision": match args.precision { PrecisionArg::Dd => "dd", PrecisionArg::Double => "double" },
            });
            match cli.format {
                Format::Json => {
                    let body = envelope(&config, &report, ms(start), workers);
                    emit(out, &serde_json::to_string_pretty(&body).unwrap())?;
                }
                Format::Csv => {
                    let mut s = String::from("d,eigenvalue,multiplicity\n");
                    for e in &report.eigenvalues {
                        s.push_str(&format!("{},{},{}\n", report.degree, e.value, e.multiplicity));
                    }
                    emit(out, &s)?;
                }
                Format::Pretty => {
                    let mut s = format!(
                        "spectrum of {} at degree {} ({})\n",
                        if args.sym { "M + M^T" } else { "M" },
                        args.degree,
                        report.precision
                    );
                    s.push_str("  eigenvalue            multiplicity\n");
                    for e in &report.eigenvalues {
                        s.push_str(&format!("  {:<22}{:>5}\n", e.value, e.multiplicity));
                    }
                    for w in &report.warnings {
                        s.push_str(&format!("warning: {w}\n"));
                    }
                    emit(out, &s)?;
                }
            }
            Ok(if report.warnings.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Interlace {
            max_degree,
            budget,
            cluster_threshold,
        } => {
            let budget: Budget = budget.into();
            if max_degree > budget.interlace_cap() {
                return Err(Error::EnumerationBudget {
                    what: format!(
                        "interlacing to degree {max_degree} needs a larger budget (cap {})",
                        budget.interlace_cap()
                    ),
                    subsets: 0,
                });
            }
            let opts = SpectrumOptions {
                cluster_rel_gap: cluster_threshold,
            };
            let outcome = check_interlacing(max_degree, opts)?;
            let config = json!({
                "command": "interlace",
                "maxDegree": max_degree,
                "budget": budget,
                "clusterThreshold": cluster_threshold,
            });
            match cli.format {
                Format::Json => {
                    let body = json!({
                        "tool": "pmlab",
                        "version": env!("CARGO_PKG_VERSION"),
                        "config": config,
                        "report": outcome.report,
                        "rows": outcome.rows,
                        "runtime": { "elapsed_ms": ms(start), "workers": workers },
                    });
                    emit(out, &serde_json::to_string_pretty(&body).unwrap())?;
                }
                Format::Csv => {
                    let mut s = String::from("d,eigenvalue,multiplicity\n");
                    for r in &outcome.rows {
                        s.push_str(&format!("{},{},{}\n", r.degree, r.value, r.multiplicity));
                    }
                    emit(out, &s)?;
                }
                Format::Pretty => {
                    let mut s = format!(
                        "interlacing through degree {max_degree}: {}\n",
                        status_word(outcome.report.status)
                    );
                    s.push_str(&format!("{}\n", outcome.report.notes));
                    for w in &outcome.report.witnesses {
                        s.push_str(&format!("  {}\n", w.value));
                    }
                    emit(out, &s)?;
                }
            }
            Ok(status_exit(outcome.report.status))
        }
        Command::Solve {
            degree,
            interior,
            boundary,
            targets,
        } => {
            let free = if interior.trim() == "interior" {
                GammaSet::interior(degree)?
            } else {
                GammaSet::parse(degree, &interior)?
            };
            let fixed = match &boundary {
                Some(path) => read_coefficient_map(path)?,
                None => {
                    // Default: fix the entire complement at zero.
                    GammaSet::full(degree)?
                        .members()
                        .iter()
                        .filter(|m| !free.contains(m))
                        .map(|m| (*m, BigRational::zero()))
                        .collect()
                }
            };
            let target_map = read_coefficient_map(&targets)?;
            let solution = solve_constrained(degree, &free, &fixed, &target_map)?;
            // Residual check on the way out; exact arithmetic makes it free.
            for member in free.members() {
                let v = evaluate_combined(degree, &solution.coefficients, &fixed, member)?;
                assert_eq!(v, target_map[member], "nonzero residual at {member}");
            }
            let coeffs: BTreeMap<String, String> = solution
                .coefficients
                .iter()
                .map(|(k, v)| (k.to_string(), format_rational(v)))
                .collect();
            let config = json!({
                "command": "solve",
                "degree": degree,
                "interior": free.to_text(),
                "boundary": boundary.as_ref().map(|p| p.display().to_string()),
                "targets": targets.display().to_string(),
            });
            match cli.format {
                Format::Json | Format::Csv => {
                    let report = json!({
                        "coefficients": coeffs,
                        "residualsExactlyZero": true,
                        "warning": solution.warning,
                    });
                    let body = envelope(&config, &report, ms(start), workers);
                    emit(out, &serde_json::to_string_pretty(&body).unwrap())?;
                }
                Format::Pretty => {
                    let mut s = String::new();
                    for (k, v) in &coeffs {
                        s.push_str(&format!("c[{k}] = {v}\n"));
                    }
                    s.push_str("residuals: exactly zero\n");
                    if let Some(w) = &solution.warning {
                        s.push_str(&format!("warning: {w}\n"));
                    }
                    emit(out, &s)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_verify(
    check: VerifyCommand,
    format: Format,
    out: Option<&std::path::Path>,
    start: Instant,
    workers: usize,
) -> Result<ExitCode> {
    let (config, report, extra): (Value, VerificationReport, Option<Value>) = match check {
        VerifyCommand::Pd { degree } => {
            let outcome = verify_pd(degree)?;
            let extra = json!({
                "fullInertia": outcome.full_inertia.map(|t| json!({
                    "nPos": t.n_pos, "nZero": t.n_zero, "nNeg": t.n_neg,
                })),
                "minEigenvalueBracket": outcome.min_eigen_bracket.as_ref().map(|(lo, hi)| json!({
                    "lo": format_rational(lo),
                    "hi": format_rational(hi),
                    "loDecimal": rational_to_decimal(lo, 8),
                    "hiDecimal": rational_to_decimal(hi, 8),
                })),
            });
            (
                json!({ "command": "verify", "check": "pd", "degree": degree }),
                outcome.report,
                Some(extra),
            )
        }
        VerifyCommand::Minors {
            degree,
            scope,
            budget,
        } => {
            let scope: Scope = scope.into();
            if scope == Scope::Interior && degree >= 8 {
                let members = (degree - 1) * (degree - 2) / 2;
                eprintln!(
                    "pmlab: scanning {} interior subsets at degree {degree}...",
                    (1u64 << members) - 1
                );
            }
            let outcome = enumerate_principal_minors(degree, scope, budget.into())?;
            let extra = json!({
                "subsets": outcome.subsets,
                "minDetN": outcome.min_det_n.to_string(),
                "minimizer": outcome.minimizer.to_triples(),
            });
            (
                json!({
                    "command": "verify", "check": "minors", "degree": degree,
                    "scope": scope.name(), "budget": Budget::from(budget),
                }),
                outcome.report,
                Some(extra),
            )
        }
        VerifyCommand::Mindet { degree, budget } => {
            let outcome = min_det_search(degree, budget.into())?;
            (
                json!({
                    "command": "verify", "check": "mindet", "degree": degree,
                    "budget": Budget::from(budget),
                }),
                outcome.report,
                Some(serde_json::to_value(&outcome.result).unwrap()),
            )
        }
        VerifyCommand::Formula { max_degree } => (
            json!({ "command": "verify", "check": "formula", "maxDegree": max_degree }),
            formula_check(max_degree)?,
            None,
        ),
        VerifyCommand::Lemma { degree } => (
            json!({ "command": "verify", "check": "lemma", "degree": degree }),
            lemma_max_check(degree)?,
            None,
        ),
        VerifyCommand::Pairs { degree } => (
            json!({ "command": "verify", "check": "pairs", "degree": degree }),
            small_gamma_min_check(degree)?,
            None,
        ),
        VerifyCommand::Theorem4 {
            degree,
            samples,
            seed,
        } => (
            json!({
                "command": "verify", "check": "theorem4", "degree": degree,
                "samples": samples, "seed": seed,
            }),
            theorem4_check(degree, samples, seed)?,
            None,
        ),
    };

    match format {
        Format::Json => {
            let mut body = envelope(&config, &report, ms(start), workers);
            if let Some(extra) = extra {
                body["details"] = extra;
            }
            emit(out, &serde_json::to_string_pretty(&body).unwrap())?;
        }
        Format::Csv => {
            let s = format!(
                "check,degree,status,witnesses\n{},{},{},{}\n",
                report.check,
                report.degree,
                status_word(report.status),
                report.witnesses.len()
            );
            emit(out, &s)?;
        }
        Format::Pretty => {
            let mut s = format!(
                "{} (degree {}): {}\n{}\n",
                report.check,
                report.degree,
                status_word(report.status),
                report.notes
            );
            for w in &report.witnesses {
                let gamma = w
                    .gamma
                    .iter()
                    .map(|t| format!("{},{},{}", t[0], t[1], t[2]))
                    .collect::<Vec<_>>()
                    .join(";");
                if gamma.is_empty() {
                    s.push_str(&format!("  witness: {}\n", w.value));
                } else {
                    s.push_str(&format!("  witness {gamma}: {}\n", w.value));
                }
            }
            emit(out, &s)?;
        }
    }
    Ok(status_exit(report.status))
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Warning => "warning",
    }
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

#[derive(serde::Serialize)]
struct GenRow {
    i: u32,
    j: u32,
    k: u32,
    zero_class: u8,
    clex_index: usize,
    blocked_index: usize,
}

fn gen_rows(degree: u32) -> Result<Vec<GenRow>> {
    let clex = compositions(degree)?;
    let blocked = GammaSet::full(degree)?;
    let rows = blocked
        .members()
        .iter()
        .enumerate()
        .map(|(blocked_index, c)| GenRow {
            i: c.i,
            j: c.j,
            k: c.k,
            zero_class: c.zero_count(),
            clex_index: clex.iter().position(|x| x == c).unwrap(),
            blocked_index,
        })
        .collect();
    Ok(rows)
}

fn matrix_dump(m: &ExactMatrix, gamma: &GammaSet) -> Value {
    let entries: Vec<Vec<String>> = (0..m.dim())
        .map(|r| (0..m.dim()).map(|c| m.entry(r, c).to_string()).collect())
        .collect();
    json!({
        "degree": m.degree(),
        "denomExp": m.denom_exp(),
        "entries": entries,
        "gamma": gamma.to_triples(),
    })
}

fn det_report(gamma: &GammaSet, which: WhichDet, dump: bool) -> Result<Value> {
    let mut body = serde_json::Map::new();
    body.insert("gamma".into(), json!(gamma.to_triples()));
    let want_n = matches!(which, WhichDet::N | WhichDet::Both);
    let want_m = matches!(which, WhichDet::M | WhichDet::Both);
    let mut det_n = None;
    if want_n {
        let n = build_n(gamma)?;
        let d = n.det_scaled()?;
        if dump {
            body.insert("matrixN".into(), matrix_dump(&n, gamma));
        }
        body.insert("detN".into(), json!(d.to_string()));
        det_n = Some(d);
    }
    if want_m {
        let m = build_m(gamma)?;
        let scaled = m.det_scaled()?;
        let rational = m.det_rational()?;
        if dump {
            body.insert("matrixM".into(), matrix_dump(&m, gamma));
        }
        body.insert(
            "detM".into(),
            json!({
                "scaled": scaled.to_string(),
                "base": gamma.degree(),
                "exponent": gamma.degree() as u64 * gamma.len() as u64,
                "rational": format_rational(&rational),
            }),
        );
        if let Some(det_n) = &det_n {
            // Cross-check of the scaling identity between the two routes.
            let from_n = det_m_from_n(gamma, det_n);
            body.insert("relationHolds".into(), json!(from_n == rational));
            let binom_prod: num_bigint::BigInt =
                gamma.members().iter().map(multinomial).product();
            let lhs = det_n * binom_prod;
            body.insert("relationScaledCheck".into(), json!(lhs == scaled));
        }
    }
    Ok(Value::Object(body))
}
