//! Command-line front end: `analyze`, `check-system`, `contract`,
//! `product`, `spectrum <sub>`, `catalog`.
//!
//! Exit codes are a stable contract: 0 success, 2 domain validation
//! failure (with a machine-readable witness in the report), 3 input or
//! parse failure.

use crate::catalog::{catalog_get, catalog_list, CatalogEntry};
use crate::env::{build_homogeneous_delta, check_system, Derivation, EnvError};
use crate::grading::Grading;
use crate::lie::LieAlgebra;
use crate::parse::{parse_multiplier, parse_operator, parse_poly, parse_vector};
use crate::products::product;
use crate::report::{self, report_envelope, tol_value};
use crate::sampler::{SamplerConfig, Scheme};
use crate::scalar::{parse_rational, rational_to_f64, Rational};
use crate::spectrum::{
    abelian_joint_injectivity, convolution_identity_check, kernel_transform, plancherel_check,
    polar_decomposition_check, pushforward_change_of_generators, spectrum_sample, AbelianSystem,
    InjectivityVerdict, KernelGrid, QuadratureOptions, SpectrumError,
};
use crate::weighted::{
    compute_filtration, contract, is_reduced_strict, is_reduced_weak, reduce_basis, WeightedBasis,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "liesym",
    about = "Exact weighted Lie algebra calculus with an abelian spectral companion",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: central series, growth degree, weighted basis
    /// filtration and reducedness, grading dichotomy.
    Analyze(AnalyzeArgs),
    /// Validate a commuting operator system and compute its invariants.
    CheckSystem(CheckSystemArgs),
    /// Contract a weighted Lie algebra (reducing the basis first if needed).
    Contract(ContractArgs),
    /// Direct product of algebras.
    Product(ProductArgs),
    /// Numeric spectral checks on abelian algebras.
    Spectrum(SpectrumArgs),
    /// List or show built-in catalog entries.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct CommonIo {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Algebra: a JSON file path or catalog:NAME.
    #[arg(long)]
    algebra: String,
    /// Weighted basis, e.g. "X1:1,X2:1,Y+T1:3".
    #[arg(long)]
    weights: Option<String>,
    /// Grading degrees, e.g. "1,1,2,3,3".
    #[arg(long)]
    grading: Option<String>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct CheckSystemArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    grading: Option<String>,
    /// Operator expression (repeatable).
    #[arg(long = "op", alias = "L", allow_hyphen_values = true)]
    ops: Vec<String>,
    /// Derivation for invariance checks: catalog:NAME or a JSON file.
    #[arg(long)]
    derivation: Option<String>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct ContractArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    weights: Option<String>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct ProductArgs {
    /// Factor algebra (repeat at least twice).
    #[arg(long = "algebra", required = true)]
    algebras: Vec<String>,
    /// Emit the bare algebra file instead of a report envelope.
    #[arg(long)]
    emit_algebra: bool,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(subcommand)]
    sub: SpectrumSub,
}

#[derive(Args)]
struct SpectrumCommon {
    /// Algebra (must be abelian); inferred as abelian:d from the operators
    /// when omitted.
    #[arg(long)]
    algebra: Option<String>,
    /// Operator expression (repeatable).
    #[arg(long = "op", alias = "L", allow_hyphen_values = true)]
    ops: Vec<String>,
    /// Grading degrees on the algebra (default: all 1).
    #[arg(long)]
    grading: Option<String>,
    /// Truncation radius of the ξ-box.
    #[arg(long, default_value_t = 4.0)]
    radius: f64,
    /// Sampler seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sampling scheme: grid | mc | stratified.
    #[arg(long, default_value = "stratified")]
    scheme: String,
    /// Total sample budget (rounded per scheme).
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    /// Numeric tolerance for quadrature checks.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Write sampled point clouds as CSV.
    #[arg(long)]
    points: Option<PathBuf>,
    #[command(flatten)]
    io: CommonIo,
}

#[derive(Subcommand)]
enum SpectrumSub {
    /// Sample the joint spectral measure as a weighted cloud.
    Sample(SampleArgs),
    /// Check ∫|f|² dσ = ‖f̆‖₂² by two quadrature routes.
    Plancherel(PlancherelArgs),
    /// Check σ(ε_t A) = t^{Q_δ} σ(A).
    Polar(PolarArgs),
    /// Compare a polynomial change of generators against direct sampling.
    Pushforward(PushforwardArgs),
    /// Sample the convolution kernel of a multiplier.
    Kernel(KernelArgs),
    /// Mass growth of σ with a log-log slope fit.
    Growth(GrowthArgs),
    /// Joint injectivity of the symbols away from 0.
    Injectivity(InjectivityArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    common: SpectrumCommon,
}

#[derive(Args)]
struct PlancherelArgs {
    #[command(flatten)]
    common: SpectrumCommon,
    /// Multiplier, e.g. "exp(-lambda)" or "gauss(1/2)".
    #[arg(long, allow_hyphen_values = true)]
    f: String,
}

#[derive(Args)]
struct PolarArgs {
    #[command(flatten)]
    common: SpectrumCommon,
    /// Box A in λ-space: "lo:hi" per coordinate, comma separated.
    #[arg(long, default_value = "0:1", allow_hyphen_values = true)]
    r#box: String,
    /// Dilation parameter t > 0.
    #[arg(long, default_value = "2")]
    t: String,
}

#[derive(Args)]
struct PushforwardArgs {
    #[command(flatten)]
    common: SpectrumCommon,
    /// Polynomial map component in lambda variables (repeatable).
    #[arg(long = "map", required = true, allow_hyphen_values = true)]
    map: Vec<String>,
    /// Comparison boxes per coordinate on [0, box-hi].
    #[arg(long, default_value_t = 20)]
    boxes: usize,
    /// Upper end of the comparison window.
    #[arg(long, default_value_t = 4.0)]
    window: f64,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    common: SpectrumCommon,
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Optional second multiplier: also check (fg)˘ = ğ * f̆.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Spatial grid radius.
    #[arg(long, default_value_t = 8.0)]
    x_radius: f64,
    /// Spatial grid points.
    #[arg(long, default_value_t = 129)]
    grid_points: usize,
}

#[derive(Args)]
struct GrowthArgs {
    #[command(flatten)]
    common: SpectrumCommon,
    /// Radii, e.g. "1,2,4,8,16".
    #[arg(long, default_value = "1,2,4,8,16")]
    radii: String,
    /// Slope margin added to the polynomial-growth bound.
    #[arg(long, default_value_t = 0.25)]
    margin: f64,
}

#[derive(Args)]
struct InjectivityArgs {
    #[command(flatten)]
    common: SpectrumCommon,
    /// Face grid resolution for the numeric minimum.
    #[arg(long, default_value_t = 64)]
    grid: usize,
}

#[derive(Args)]
struct CatalogArgs {
    /// Entry name; lists all entries when omitted.
    name: Option<String>,
    #[command(flatten)]
    io: CommonIo,
}

/// A failed run: exit code, message for stderr, optional witness report.
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub report: Option<Value>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
            report: None,
        }
    }

    fn domain(message: impl Into<String>, report: Option<Value>) -> Self {
        Failure {
            code: EXIT_DOMAIN,
            message: message.into(),
            report,
        }
    }
}

/// Parses an argv (without printing) and returns the report or failure,
/// plus any `--out` destination. The programmatic twin of [`run`].
pub fn execute<I, T>(argv: I) -> Result<(Result<Value, Failure>, Option<PathBuf>), String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
    Ok(dispatch(cli.command))
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with code 0.
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (result, io) = dispatch(cli.command);
    match result {
        Ok(report) => {
            // Bare algebra files (--emit-algebra) are not report envelopes.
            debug_assert!(
                report.get("schema_version").is_none() || report::validate_report(&report).is_ok()
            );
            emit(&report, io.as_ref());
            EXIT_OK
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if let Some(report) = f.report {
                emit(&report, io.as_ref());
            }
            f.code
        }
    }
}

fn emit(report: &Value, out: Option<&PathBuf>) {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
            } else {
                println!("report written to {}", path.display());
            }
        }
        None => println!("{text}"),
    }
}

fn dispatch(command: Command) -> (Result<Value, Failure>, Option<PathBuf>) {
    match command {
        Command::Analyze(a) => {
            let out = a.io.out.clone();
            (run_analyze(a), out)
        }
        Command::CheckSystem(a) => {
            let out = a.io.out.clone();
            (run_check_system(a), out)
        }
        Command::Contract(a) => {
            let out = a.io.out.clone();
            (run_contract(a), out)
        }
        Command::Product(a) => {
            let out = a.io.out.clone();
            (run_product(a), out)
        }
        Command::Spectrum(a) => {
            let out = spectrum_out(&a.sub);
            (run_spectrum(a.sub), out)
        }
        Command::Catalog(a) => {
            let out = a.io.out.clone();
            (run_catalog(a), out)
        }
    }
}

fn spectrum_out(sub: &SpectrumSub) -> Option<PathBuf> {
    match sub {
        SpectrumSub::Sample(a) => a.common.io.out.clone(),
        SpectrumSub::Plancherel(a) => a.common.io.out.clone(),
        SpectrumSub::Polar(a) => a.common.io.out.clone(),
        SpectrumSub::Pushforward(a) => a.common.io.out.clone(),
        SpectrumSub::Kernel(a) => a.common.io.out.clone(),
        SpectrumSub::Growth(a) => a.common.io.out.clone(),
        SpectrumSub::Injectivity(a) => a.common.io.out.clone(),
    }
}

/// Loads `catalog:NAME` or a JSON file.
fn load_algebra(spec: &str) -> Result<(LieAlgebra, Option<CatalogEntry>), Failure> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let entry = catalog_get(name).map_err(|e| Failure::input(e.to_string()))?;
        return Ok((entry.algebra.clone(), Some(entry)));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::input(format!("cannot read {spec}: {e}")))?;
    match report::algebra_from_str(&text) {
        Ok(alg) => Ok((alg, None)),
        Err(report::FileError::Lie(e)) => Err(Failure::domain(
            format!("{spec}: {e}"),
            Some(report_envelope(
                "analyze",
                json!({ "error": { "kind": "jacobi", "detail": e.to_string() } }),
            )),
        )),
        Err(e) => Err(Failure::input(format!("{spec}: {e}"))),
    }
}

fn parse_weights(algebra: &Arc<LieAlgebra>, spec: &str) -> Result<WeightedBasis, Failure> {
    let mut elements = Vec::new();
    for item in spec.split(',') {
        let (expr, w) = item
            .rsplit_once(':')
            .ok_or_else(|| Failure::input(format!("expected EXPR:WEIGHT, got `{item}`")))?;
        let v = parse_vector(expr.trim(), algebra).map_err(|e| Failure::input(e.to_string()))?;
        let w = parse_rational(w.trim()).map_err(Failure::input)?;
        elements.push((v, w));
    }
    WeightedBasis::new(algebra.as_ref().clone(), elements)
        .map_err(|e| Failure::domain(e.to_string(), None))
}

fn parse_grading(alg: &LieAlgebra, spec: &str) -> Result<Grading, Failure> {
    let degrees = spec
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::input)?;
    Grading::new(alg.clone(), degrees).map_err(|e| {
        Failure::domain(
            e.to_string(),
            Some(report_envelope(
                "analyze",
                json!({ "error": { "kind": "grading", "detail": e.to_string() } }),
            )),
        )
    })
}

fn run_analyze(a: AnalyzeArgs) -> Result<Value, Failure> {
    let (alg, entry) = load_algebra(&a.algebra)?;
    analyze_body(
        &alg,
        entry.as_ref(),
        a.weights.as_deref(),
        a.grading.as_deref(),
    )
}

/// The `analyze` report for an in-memory algebra; shared with the C API.
pub fn analyze_body(
    alg: &LieAlgebra,
    entry: Option<&CatalogEntry>,
    weights: Option<&str>,
    grading: Option<&str>,
) -> Result<Value, Failure> {
    let arc = Arc::new(alg.clone());
    let mut body = json!({
        "algebra": report::algebra_to_json(alg),
        "structure": report::structure_report(alg),
    });

    let basis = match (weights, entry.and_then(|e| e.weighted_basis.clone())) {
        (Some(spec), _) => Some(parse_weights(&arc, spec)?),
        (None, canned) => canned,
    };
    if let Some(wb) = basis {
        let f = compute_filtration(&wb);
        let strict = is_reduced_strict(&wb, &f);
        let weak = is_reduced_weak(&wb, &f);
        body["weighted_basis"] = report::weighted_report(&wb, &f, &strict, weak);
    }

    let grading_spec = grading.map(String::from).or_else(|| {
        entry.and_then(|e| e.grading_degrees.as_ref()).map(|ds| {
            ds.iter()
                .map(crate::scalar::format_rational)
                .collect::<Vec<_>>()
                .join(",")
        })
    });
    if let Some(spec) = grading_spec {
        let gr = parse_grading(alg, &spec)?;
        let q = crate::grading::quasiequivalence_report(&gr)
            .map_err(|e| Failure::domain(e.to_string(), None))?;
        body["grading"] = report::grading_report(&gr, &q);
    }
    Ok(report_envelope("analyze", body))
}

fn load_derivation(spec: &str, algebra: &Arc<LieAlgebra>) -> Result<Derivation, Failure> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let entry = catalog_get(name).map_err(|e| Failure::input(e.to_string()))?;
        let images = entry
            .derivation_images
            .ok_or_else(|| Failure::input(format!("catalog entry `{name}` has no derivation")))?;
        if entry.algebra != *algebra.as_ref() {
            return Err(Failure::input(format!(
                "derivation `{name}` lives on a different algebra"
            )));
        }
        return Derivation::new(algebra.clone(), images)
            .map_err(|e| Failure::domain(e.to_string(), None));
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::input(format!("cannot read {spec}: {e}")))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{spec}: bad JSON: {e}")))?;
    let names = algebra.names();
    let images_json = v
        .get("images")
        .and_then(Value::as_object)
        .ok_or_else(|| Failure::input("derivation file needs an `images` object"))?;
    let mut images = vec![crate::linalg::zero_vector(algebra.dim()); algebra.dim()];
    for (name, img) in images_json {
        let i = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Failure::input(format!("unknown name `{name}`")))?;
        let obj = img
            .as_object()
            .ok_or_else(|| Failure::input("image must map names to \"p/q\""))?;
        for (target, c) in obj {
            let k = names
                .iter()
                .position(|n| n == target)
                .ok_or_else(|| Failure::input(format!("unknown name `{target}`")))?;
            let s = c
                .as_str()
                .ok_or_else(|| Failure::input("coefficients must be \"p/q\" strings"))?;
            images[i][k] = parse_rational(s).map_err(Failure::input)?;
        }
    }
    Derivation::new(algebra.clone(), images).map_err(|e| Failure::domain(e.to_string(), None))
}

fn run_check_system(a: CheckSystemArgs) -> Result<Value, Failure> {
    let (alg, entry) = load_algebra(&a.algebra)?;
    check_system_body(
        &alg,
        entry.as_ref(),
        &a.ops,
        a.grading.as_deref(),
        a.derivation.as_deref(),
    )
}

/// The `check-system` report for an in-memory algebra; shared with the C API.
pub fn check_system_body(
    alg: &LieAlgebra,
    entry: Option<&CatalogEntry>,
    ops_in: &[String],
    grading_in: Option<&str>,
    derivation_in: Option<&str>,
) -> Result<Value, Failure> {
    let arc = Arc::new(alg.clone());

    let op_exprs: Vec<String> = if !ops_in.is_empty() {
        ops_in.to_vec()
    } else {
        entry.map(|e| e.operator_exprs.clone()).unwrap_or_default()
    };
    if op_exprs.is_empty() {
        return Err(Failure::input(
            "at least one --op is required (or a catalog entry that carries operators)",
        ));
    }
    let mut ops = Vec::new();
    for expr in &op_exprs {
        let d = parse_operator(expr, &arc).map_err(|e| Failure::input(e.to_string()))?;
        ops.push(d);
    }

    let self_adjoint: Vec<bool> = ops.iter().map(|d| d.is_formally_self_adjoint()).collect();
    let n = ops.len();
    let mut commutator_matrix = vec![vec![true; n]; n];
    let mut witness: Option<Value> = None;
    for i in 0..n {
        for j in (i + 1)..n {
            let c = ops[i].commutator(&ops[j]);
            let zero = c.is_zero();
            commutator_matrix[i][j] = zero;
            commutator_matrix[j][i] = zero;
            if !zero && witness.is_none() {
                witness = Some(json!({
                    "i": i,
                    "j": j,
                    "commutator": c.display(),
                }));
            }
        }
    }

    let mut body = json!({
        "algebra": report::algebra_to_json(alg),
        "operators": op_exprs
            .iter()
            .zip(&ops)
            .map(|(s, d)| report::operator_json(Some(s), d))
            .collect::<Vec<_>>(),
        "self_adjoint": self_adjoint,
        "commutes": commutator_matrix,
    });
    if let Some(w) = &witness {
        body["noncommuting_witness"] = w.clone();
    }

    let grading_spec = grading_in.map(String::from).or_else(|| {
        entry.and_then(|e| e.grading_degrees.as_ref()).map(|ds| {
            ds.iter()
                .map(crate::scalar::format_rational)
                .collect::<Vec<_>>()
                .join(",")
        })
    });
    let mut grading = None;
    if let Some(spec) = &grading_spec {
        let gr = parse_grading(alg, spec)?;
        let degrees: Vec<Value> = ops
            .iter()
            .map(|d| match d.homogeneity_degree(&gr) {
                Ok(r) => report::rational_str(&r),
                Err(_) => json!("inhomogeneous"),
            })
            .collect();
        body["homogeneity_degrees"] = json!(degrees);
        grading = Some(gr);
    }

    if let Some(spec) = derivation_in {
        let derivation = load_derivation(spec, &arc)?;
        let verdicts: Vec<Value> = ops
            .iter()
            .map(|d| {
                let image = derivation.apply(d);
                if image.is_zero() {
                    json!({ "invariant": true })
                } else {
                    json!({ "invariant": false, "image": image.display() })
                }
            })
            .collect();
        body["derivation_invariance"] = json!(verdicts);
    }

    let all_self_adjoint = self_adjoint.iter().all(|&b| b);
    let all_commute = witness.is_none();
    body["system_valid"] = json!(all_self_adjoint && all_commute);

    if all_self_adjoint && all_commute {
        if let Some(gr) = &grading {
            let sys = check_system(ops.clone()).expect("validated above");
            match sys.with_grading(gr) {
                Ok(sys) => match build_homogeneous_delta(&sys, gr) {
                    Ok(delta) => {
                        body["delta"] = report::delta_report(&delta);
                    }
                    Err(EnvError::NoCommonMultiple) => {
                        body["delta"] = json!({ "error": "no common multiple" });
                    }
                    Err(e) => return Err(Failure::domain(e.to_string(), None)),
                },
                Err(_) => {
                    body["delta"] = json!({ "error": "system is not homogeneous" });
                }
            }
        }
        Ok(report_envelope("check-system", body))
    } else {
        let report = report_envelope("check-system", body);
        let msg = if !all_self_adjoint {
            "system validation failed: an operator is not formally self-adjoint"
        } else {
            "system validation failed: operators do not pairwise commute"
        };
        Err(Failure::domain(msg, Some(report)))
    }
}

fn run_contract(a: ContractArgs) -> Result<Value, Failure> {
    let (alg, entry) = load_algebra(&a.algebra)?;
    contract_body(&alg, entry.as_ref(), a.weights.as_deref())
}

/// The `contract` report for an in-memory algebra; shared with the C API.
pub fn contract_body(
    alg: &LieAlgebra,
    entry: Option<&CatalogEntry>,
    weights: Option<&str>,
) -> Result<Value, Failure> {
    let arc = Arc::new(alg.clone());
    let wb = match (weights, entry.and_then(|e| e.weighted_basis.clone())) {
        (Some(spec), _) => parse_weights(&arc, spec)?,
        (None, Some(canned)) => canned,
        (None, None) => {
            return Err(Failure::input(
                "a weighted basis is required (--weights or a catalog entry that carries one)",
            ))
        }
    };
    let f = compute_filtration(&wb);
    let strict = is_reduced_strict(&wb, &f);
    let (basis, reduced) = if strict.reduced {
        (wb, false)
    } else {
        (reduce_basis(&wb), true)
    };
    let k = contract(&basis).map_err(|e| Failure::domain(e.to_string(), None))?;
    let names = basis.algebra().names();
    let body = json!({
        "algebra": report::algebra_to_json(alg),
        "basis_was_reduced": reduced,
        "basis": basis
            .elements()
            .iter()
            .map(|(v, w)| json!({
                "vector": report::vector_to_json(names, v),
                "weight": report::rational_str(w),
            }))
            .collect::<Vec<_>>(),
        "contraction": report::contraction_report(&k),
    });
    Ok(report_envelope("contract", body))
}

fn run_product(a: ProductArgs) -> Result<Value, Failure> {
    if a.algebras.len() < 2 {
        return Err(Failure::input("product needs at least two --algebra"));
    }
    let mut factors = Vec::new();
    for spec in &a.algebras {
        factors.push(load_algebra(spec)?.0);
    }
    let pa = product(factors).map_err(|e| Failure::domain(e.to_string(), None))?;
    let algebra_json = report::algebra_to_json(pa.total());
    if a.emit_algebra {
        return Ok(algebra_json);
    }
    let body = json!({
        "algebra": algebra_json,
        "factors": a.algebras,
        "offsets": pa.offsets(),
        "structure": report::structure_report(pa.total()),
    });
    Ok(report_envelope("product", body))
}

struct SpectrumContext {
    asys: AbelianSystem,
    config: SamplerConfig,
    tol: f64,
    points_out: Option<PathBuf>,
    op_exprs: Vec<String>,
}

fn spectrum_context(common: &SpectrumCommon) -> Result<SpectrumContext, Failure> {
    if common.ops.is_empty() {
        return Err(Failure::input("at least one --op is required"));
    }
    let alg = match &common.algebra {
        Some(spec) => load_algebra(spec)?.0,
        None => {
            // Infer abelian:d from the highest X-index mentioned.
            let mut d = 0usize;
            for op in &common.ops {
                for token in op.split(|c: char| !c.is_ascii_alphanumeric()) {
                    if let Some(rest) = token.strip_prefix('X') {
                        if let Ok(k) = rest.parse::<usize>() {
                            d = d.max(k);
                        }
                    }
                }
            }
            LieAlgebra::abelian(d.max(1))
        }
    };
    if !alg.is_abelian() {
        return Err(Failure::domain(
            SpectrumError::NonAbelian.to_string(),
            Some(report_envelope(
                "spectrum",
                json!({ "error": { "kind": "non-abelian" } }),
            )),
        ));
    }
    let arc = Arc::new(alg.clone());
    let mut ops = Vec::new();
    for expr in &common.ops {
        ops.push(parse_operator(expr, &arc).map_err(|e| Failure::input(e.to_string()))?);
    }
    let grading = match &common.grading {
        Some(spec) => parse_grading(&alg, spec)?,
        None => Grading::new(
            alg.clone(),
            vec![Rational::from_integer(1.into()); alg.dim()],
        )
        .expect("isotropic grading is valid on abelian algebras"),
    };
    let sys = check_system(ops).map_err(|e| {
        Failure::domain(
            e.to_string(),
            Some(report_envelope(
                "spectrum",
                json!({ "error": { "kind": "system", "detail": e.to_string() } }),
            )),
        )
    })?;
    let asys = AbelianSystem::new(&sys, Some(&grading)).map_err(|e| {
        Failure::domain(
            e.to_string(),
            Some(report_envelope(
                "spectrum",
                json!({ "error": { "kind": "spectrum", "detail": e.to_string() } }),
            )),
        )
    })?;
    let dim = asys.dim();
    let scheme = match common.scheme.as_str() {
        "grid" => Scheme::Grid {
            per_dim: per_dim_budget(common.samples, dim),
        },
        "mc" | "monte-carlo" => Scheme::MonteCarlo {
            samples: common.samples,
        },
        "stratified" => Scheme::Stratified {
            per_dim: per_dim_budget(common.samples, dim),
        },
        other => return Err(Failure::input(format!("unknown scheme `{other}`"))),
    };
    Ok(SpectrumContext {
        asys,
        config: SamplerConfig {
            scheme,
            radius: common.radius,
            seed: common.seed,
        },
        tol: common.tol,
        points_out: common.points.clone(),
        op_exprs: common.ops.clone(),
    })
}

fn sampler_json(g: &crate::sampler::GeneratorRecord) -> Value {
    json!({
        "scheme": g.scheme,
        "seed": g.seed,
        "radius": tol_value(g.radius, 0.0),
        "ambient_dim": g.ambient_dim,
    })
}

fn per_dim_budget(samples: usize, dim: usize) -> usize {
    ((samples as f64).powf(1.0 / dim as f64).round() as usize).max(2)
}

fn write_points(path: &PathBuf, es: &crate::sampler::EmpiricalSpectrum) -> Result<(), Failure> {
    std::fs::write(path, es.to_csv())
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn spectrum_failure(e: SpectrumError) -> Failure {
    Failure::domain(
        e.to_string(),
        Some(report_envelope(
            "spectrum",
            json!({ "error": { "kind": "spectrum", "detail": e.to_string() } }),
        )),
    )
}

fn run_spectrum(sub: SpectrumSub) -> Result<Value, Failure> {
    match sub {
        SpectrumSub::Sample(args) => {
            let ctx = spectrum_context(&args.common)?;
            let es = spectrum_sample(&ctx.asys, &ctx.config);
            if let Some(path) = &ctx.points_out {
                write_points(path, &es)?;
            }
            let body = json!({
                "operators": ctx.op_exprs,
                "sampler": sampler_json(&es.generator),
                "points": es.points.len(),
                "total_mass": tol_value(es.total_mass(), ctx.tol),
            });
            Ok(report_envelope("spectrum sample", body))
        }
        SpectrumSub::Plancherel(args) => {
            let ctx = spectrum_context(&args.common)?;
            let f = parse_multiplier(&args.f, ctx.asys.n())
                .map_err(|e| Failure::input(e.to_string()))?;
            let opts = QuadratureOptions {
                tol: ctx.tol,
                ..QuadratureOptions::default()
            };
            let rec = plancherel_check(&ctx.asys, &f, &opts).map_err(spectrum_failure)?;
            let ok = rec.rel_err <= ctx.tol;
            let body = json!({
                "operators": ctx.op_exprs,
                "multiplier": args.f,
                "lhs": tol_value(rec.lhs, ctx.tol),
                "rhs": tol_value(rec.rhs, ctx.tol),
                "rel_err": tol_value(rec.rel_err, ctx.tol),
                "lhs_tail": tol_value(rec.lhs_tail, ctx.tol),
                "rhs_tail": tol_value(rec.rhs_tail, ctx.tol),
                "within_tol": ok,
            });
            let report = report_envelope("spectrum plancherel", body);
            if ok {
                Ok(report)
            } else {
                Err(Failure::domain(
                    format!("plancherel identity off by {:.3e}", rec.rel_err),
                    Some(report),
                ))
            }
        }
        SpectrumSub::Polar(args) => {
            let ctx = spectrum_context(&args.common)?;
            let (lo, hi) = parse_box(&args.r#box, ctx.asys.n())?;
            let t = parse_rational(&args.t).map_err(Failure::input)?;
            let t = rational_to_f64(&t);
            if t <= 0.0 {
                return Err(Failure::input("t must be positive"));
            }
            let rec = polar_decomposition_check(&ctx.asys, &lo, &hi, t, ctx.config.radius)
                .map_err(spectrum_failure)?;
            let body = json!({
                "operators": ctx.op_exprs,
                "box": args.r#box,
                "t": tol_value(t, 0.0),
                "mass": tol_value(rec.mass, ctx.tol),
                "mass_dilated": tol_value(rec.mass_dilated, ctx.tol),
                "ratio": tol_value(rec.ratio, ctx.tol),
                "target": tol_value(rec.target, ctx.tol),
                "q_delta": tol_value(rec.q_delta, 0.0),
            });
            Ok(report_envelope("spectrum polar", body))
        }
        SpectrumSub::Pushforward(args) => {
            let ctx = spectrum_context(&args.common)?;
            let n = ctx.asys.n();
            let mut map = Vec::new();
            for m in &args.map {
                let p = parse_poly(m, n).map_err(|e| Failure::input(e.to_string()))?;
                if !p.is_real() {
                    return Err(Failure::input("map components must be real"));
                }
                map.push(p);
            }
            // Route 1: pushforward of the sampled original spectrum.
            let es = spectrum_sample(&ctx.asys, &ctx.config);
            let pushed = pushforward_change_of_generators(&es, &map);
            // Route 2: direct sampling of the transformed system
            // (symbols composed with the map), fresh seed.
            let new_symbols: Vec<crate::poly::CPoly> =
                map.iter().map(|p| p.compose(ctx.asys.symbols())).collect();
            let direct_asys = AbelianSystem::from_symbols(ctx.asys.dim(), new_symbols, None, None);
            let direct_config = SamplerConfig {
                seed: ctx.config.seed.wrapping_add(0x9E37),
                ..ctx.config.clone()
            };
            let direct = spectrum_sample(&direct_asys, &direct_config);
            if let Some(path) = &ctx.points_out {
                write_points(path, &pushed)?;
            }
            // Per-box comparison over [0, window]^{n'}.
            let n_out = map.len();
            let (max_rel_dev, rows) =
                per_box_comparison(&pushed, &direct, n_out, args.boxes, args.window);
            let hausdorff = subsampled_hausdorff(&pushed, &direct, 500);
            let body = json!({
                "operators": ctx.op_exprs,
                "map": args.map,
                "boxes": rows,
                "max_rel_deviation": tol_value(max_rel_dev, 0.02),
                "hausdorff_subsampled": tol_value(hausdorff, 0.0),
                "sampler": sampler_json(&es.generator),
            });
            Ok(report_envelope("spectrum pushforward", body))
        }
        SpectrumSub::Kernel(args) => {
            let ctx = spectrum_context(&args.common)?;
            let f = parse_multiplier(&args.f, ctx.asys.n())
                .map_err(|e| Failure::input(e.to_string()))?;
            let opts = QuadratureOptions {
                tol: ctx.tol,
                ..QuadratureOptions::default()
            };
            let grid = KernelGrid {
                x_radius: args.x_radius,
                points: args.grid_points.max(3),
            };
            let kernel = kernel_transform(&ctx.asys, &f, &grid, &opts).map_err(spectrum_failure)?;
            let mut body = json!({
                "operators": ctx.op_exprs,
                "multiplier": args.f,
                "x_radius": tol_value(args.x_radius, 0.0),
                "kernel": kernel
                    .iter()
                    .map(|(x, v)| json!([tol_value(*x, 0.0), tol_value(*v, ctx.tol)]))
                    .collect::<Vec<_>>(),
            });
            if let Some(gspec) = &args.g {
                let g = parse_multiplier(gspec, ctx.asys.n())
                    .map_err(|e| Failure::input(e.to_string()))?;
                let rec = convolution_identity_check(&ctx.asys, &f, &g, &grid, &opts)
                    .map_err(spectrum_failure)?;
                body["convolution_identity"] = json!({
                    "g": gspec,
                    "max_abs_deviation": tol_value(rec.max_abs_deviation, ctx.tol),
                });
            }
            Ok(report_envelope("spectrum kernel", body))
        }
        SpectrumSub::Growth(args) => {
            let ctx = spectrum_context(&args.common)?;
            let radii = args
                .radii
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Failure::input(format!("bad radius `{s}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let rep = crate::spectrum::growth_check(&ctx.asys, &radii, &ctx.config, args.margin)
                .map_err(spectrum_failure)?;
            let body = json!({
                "operators": ctx.op_exprs,
                "rows": rep
                    .rows
                    .iter()
                    .map(|(a, m)| json!({
                        "radius": tol_value(*a, 0.0),
                        "mass": tol_value(*m, ctx.tol),
                    }))
                    .collect::<Vec<_>>(),
                "slope": tol_value(rep.slope, 0.05),
                "slope_bound": tol_value(rep.slope_bound, 0.0),
                "within_bound": rep.within_bound,
            });
            Ok(report_envelope("spectrum growth", body))
        }
        SpectrumSub::Injectivity(args) => {
            let ctx = spectrum_context(&args.common)?;
            let verdict = abelian_joint_injectivity(&ctx.asys, args.grid, ctx.tol.max(1e-12))
                .map_err(spectrum_failure)?;
            let body = match &verdict {
                InjectivityVerdict::Injective { min_sum_sq } => json!({
                    "operators": ctx.op_exprs,
                    "verdict": "injective",
                    "min_sum_sq": tol_value(*min_sum_sq, ctx.tol),
                }),
                InjectivityVerdict::CommonZero { witness } => json!({
                    "operators": ctx.op_exprs,
                    "verdict": "common-zero",
                    "witness": witness
                        .iter()
                        .map(crate::scalar::format_rational)
                        .collect::<Vec<_>>(),
                }),
                InjectivityVerdict::Inconclusive { min_sum_sq, at } => json!({
                    "operators": ctx.op_exprs,
                    "verdict": "inconclusive",
                    "min_sum_sq": tol_value(*min_sum_sq, ctx.tol),
                    "at": at.iter().map(|x| tol_value(*x, 0.0)).collect::<Vec<_>>(),
                }),
            };
            Ok(report_envelope("spectrum injectivity", body))
        }
    }
}

fn parse_box(spec: &str, n: usize) -> Result<(Vec<f64>, Vec<f64>), Failure> {
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    for part in spec.split(',') {
        let (a, b) = part
            .split_once(':')
            .ok_or_else(|| Failure::input(format!("expected lo:hi, got `{part}`")))?;
        let a: f64 = a
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("bad number `{a}`")))?;
        let b: f64 = b
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("bad number `{b}`")))?;
        lo.push(a);
        hi.push(b);
    }
    if lo.len() == 1 && n > 1 {
        lo = vec![lo[0]; n];
        hi = vec![hi[0]; n];
    }
    if lo.len() != n {
        return Err(Failure::input(format!(
            "box has {} coordinates, system has {n}",
            lo.len()
        )));
    }
    Ok((lo, hi))
}

fn per_box_comparison(
    a: &crate::sampler::EmpiricalSpectrum,
    b: &crate::sampler::EmpiricalSpectrum,
    n: usize,
    boxes: usize,
    window: f64,
) -> (f64, Vec<Value>) {
    let width = window / boxes as f64;
    let mut rows = Vec::new();
    let mut max_rel = 0.0f64;
    let mut idx = vec![0usize; n];
    loop {
        let lo: Vec<f64> = idx.iter().map(|&i| i as f64 * width).collect();
        let hi: Vec<f64> = lo.iter().map(|x| x + width).collect();
        let ma = a.box_mass(&lo, &hi);
        let mb = b.box_mass(&lo, &hi);
        let scale = ma.abs().max(mb.abs());
        let rel = if scale > 0.0 {
            (ma - mb).abs() / scale
        } else {
            0.0
        };
        max_rel = max_rel.max(rel);
        rows.push(json!({
            "lo": lo.iter().map(|x| tol_value(*x, 0.0)).collect::<Vec<_>>(),
            "hi": hi.iter().map(|x| tol_value(*x, 0.0)).collect::<Vec<_>>(),
            "pushforward_mass": tol_value(ma, 0.0),
            "direct_mass": tol_value(mb, 0.0),
            "rel_deviation": tol_value(rel, 0.02),
        }));
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < boxes {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    (max_rel, rows)
}

fn subsampled_hausdorff(
    a: &crate::sampler::EmpiricalSpectrum,
    b: &crate::sampler::EmpiricalSpectrum,
    stride_target: usize,
) -> f64 {
    let take = |es: &crate::sampler::EmpiricalSpectrum| {
        let stride = (es.points.len() / stride_target).max(1);
        crate::sampler::EmpiricalSpectrum {
            points: es.points.iter().step_by(stride).cloned().collect(),
            generator: es.generator.clone(),
        }
    };
    take(a).hausdorff_distance(&take(b))
}

fn run_catalog(a: CatalogArgs) -> Result<Value, Failure> {
    match &a.name {
        None => {
            let body = json!({
                "entries": catalog_list()
                    .iter()
                    .map(|(name, desc)| json!({ "name": name, "description": desc }))
                    .collect::<Vec<_>>(),
            });
            Ok(report_envelope("catalog", body))
        }
        Some(name) => {
            let entry = catalog_get(name).map_err(|e| Failure::input(e.to_string()))?;
            let mut body = json!({
                "name": entry.name,
                "description": entry.description,
                "algebra": report::algebra_to_json(&entry.algebra),
            });
            if let Some(wb) = &entry.weighted_basis {
                let names = entry.algebra.names();
                body["weighted_basis"] = json!(wb
                    .elements()
                    .iter()
                    .map(|(v, w)| json!({
                        "vector": report::vector_to_json(names, v),
                        "weight": report::rational_str(w),
                    }))
                    .collect::<Vec<_>>());
            }
            if let Some(ds) = &entry.grading_degrees {
                body["grading"] = json!(ds
                    .iter()
                    .map(crate::scalar::format_rational)
                    .collect::<Vec<_>>());
            }
            if !entry.operator_exprs.is_empty() {
                body["operators"] = json!(entry.operator_exprs);
            }
            if let Some(images) = &entry.derivation_images {
                let names = entry.algebra.names();
                body["derivation"] = json!(names
                    .iter()
                    .zip(images)
                    .map(|(n, v)| json!({ n: report::vector_to_json(names, v) }))
                    .collect::<Vec<_>>());
            }
            Ok(report_envelope("catalog", body))
        }
    }
}
