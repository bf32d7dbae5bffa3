//! Command-line front-end. `run` parses arguments, dispatches to the library
//! and renders a JSON report; `main` only prints and exits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::kernels::{bergman_kernel, hardy_kernel, kernel_M, kernel_zen, pointwise_bound};
use crate::measures::{check_doubling, AtomicParams, BoundaryMeasure, MeasureDescription};
use crate::pathology::{
    blowup_series, counterexample_fk_norm, mean_value_defect, projection_partial_sums, SeriesVerdict,
};
use crate::quadrature::QuadratureConfig;
use crate::spectral::{
    mellin_to_spectral, mellin_transform, norm_M_lines, norm_M_spectral, norm_halfline_weighted, pw_synthesize,
    HalfLineFunction, SampledDescription, SpectralFunction,
};
use crate::zerosets::{classify, ClassifyOptions, PointSequence};

#[derive(Debug, Parser)]
#[command(
    name = "halfplane",
    version,
    about = "Kernels, isometries and zero sets on the right half-plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a reproducing kernel K(z, w).
    Kernel(KernelArgs),
    /// Spectral and line-sum norms of a spectral function.
    Norm(NormArgs),
    /// Synthesize f(z) and compare |f(z)| with the kernel bound.
    PwCheck(PwCheckArgs),
    /// Mellin isometry check for a half-line function.
    MellinCheck(MellinCheckArgs),
    /// Zen-space kernel for a boundary measure.
    ZenKernel(ZenKernelArgs),
    /// Density, Carleman ratio and classification of a point sequence.
    Zeroset(ZerosetArgs),
    /// Numerical counterexamples.
    Pathology(PathologyArgs),
    /// Doubling ratios of a boundary measure.
    Doubling(DoublingArgs),
}

#[derive(Debug, Clone, Args)]
struct QuadArgs {
    #[arg(long, default_value_t = QuadratureConfig::default().target_rel_error)]
    target_rel_error: f64,
    #[arg(long, default_value_t = QuadratureConfig::default().max_refinements)]
    max_refinements: u32,
    #[arg(long = "line-truncation-y", default_value_t = QuadratureConfig::default().line_truncation_y)]
    line_truncation_y: f64,
    #[arg(long = "series-truncation-n", default_value_t = QuadratureConfig::default().series_truncation_n)]
    series_truncation_n: usize,
}

impl QuadArgs {
    fn config(&self) -> QuadratureConfig {
        QuadratureConfig {
            target_rel_error: self.target_rel_error,
            max_refinements: self.max_refinements,
            line_truncation_y: self.line_truncation_y,
            series_truncation_n: self.series_truncation_n,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Space {
    Atomic,
    Zen,
    Hardy,
    Bergman,
}

impl Space {
    fn name(self) -> &'static str {
        match self {
            Space::Atomic => "atomic",
            Space::Zen => "zen",
            Space::Hardy => "hardy",
            Space::Bergman => "bergman",
        }
    }
}

#[derive(Debug, Args)]
struct KernelArgs {
    #[arg(long, value_enum)]
    space: Space,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Measure file, required for `--space zen`.
    #[arg(long)]
    measure: Option<PathBuf>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    w: Complex64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct FunctionSource {
    /// Sampled function file with `grid`, `re`, `im`.
    #[arg(long, conflicts_with = "indicator")]
    file: Option<PathBuf>,
    /// Indicator of an interval, `lo,hi`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    indicator: Option<(f64, f64)>,
}

#[derive(Debug, Args)]
struct NormArgs {
    #[command(flatten)]
    psi: FunctionSource,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct PwCheckArgs {
    #[command(flatten)]
    psi: FunctionSource,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct MellinCheckArgs {
    #[command(flatten)]
    phi: FunctionSource,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1,1")]
    z: Complex64,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct ZenKernelArgs {
    #[arg(long)]
    measure: PathBuf,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    w: Complex64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct ZerosetArgs {
    /// Sequence file (two columns re, im) or generator `arith:STEP` / `geom:BASE`.
    #[arg(long)]
    seq: String,
    /// Number of generated points (generators only).
    #[arg(long)]
    count: Option<usize>,
    #[arg(long = "Rmax")]
    r_max: f64,
    #[arg(long, default_value_t = ClassifyOptions::default().rho_tolerance)]
    rho_tolerance: f64,
    #[arg(long, default_value_t = ClassifyOptions::default().carleman_margin)]
    carleman_margin: f64,
    #[arg(long, default_value_t = ClassifyOptions::default().carleman_samples)]
    carleman_samples: usize,
    /// Also write the Carleman sweep as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PathologyArgs {
    #[command(subcommand)]
    command: PathologyCommand,
}

#[derive(Debug, Subcommand)]
enum PathologyCommand {
    /// Log partial sums of the line-sum series for ‖K_w‖_p^p.
    Projection(ProjectionArgs),
    /// Squared L²(ω_{2,1}) norms of f_k(z) = h(kz).
    FkNorm(FkNormArgs),
    /// log |f_k| at p/q + iy along k = ℓ₀ + 2qℓ.
    Blowup(BlowupArgs),
    /// Mean-value defect of the pointwise limit of the second family.
    MeanValue(MeanValueArgs),
}

#[derive(Debug, Args)]
struct ProjectionArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 2.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1,0")]
    w: Complex64,
    #[arg(long = "N", default_value_t = 60)]
    n: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct FkNormArgs {
    /// Comma-separated list of k.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16")]
    k: Vec<u32>,
    #[arg(long = "N", default_value_t = 40)]
    n: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Debug, Args)]
struct BlowupArgs {
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long, default_value_t = 3)]
    q: u32,
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    y: f64,
    /// Number of steps ℓ = 1..=ells.
    #[arg(long, default_value_t = 6)]
    ells: u32,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MeanValueArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.25,0")]
    center: Complex64,
    #[arg(long, default_value_t = 0.1)]
    radius: f64,
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

#[derive(Debug, Args)]
struct DoublingArgs {
    #[arg(long)]
    measure: PathBuf,
    /// Comma-separated sample points t > 0.
    #[arg(long, value_delimiter = ',', required = true)]
    t: Vec<f64>,
    #[arg(long, default_value_t = 2.0)]
    bound: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a = a.trim().parse::<f64>().map_err(|e| format!("`{a}`: {e}"))?;
    let b = b.trim().parse::<f64>().map_err(|e| format!("`{b}`: {e}"))?;
    Ok((a, b))
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    parse_pair(s).map(|(re, im)| Complex64::new(re, im))
}

/// Tabular output shared by the JSON report and the CSV writer.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Series {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Series {
    pub fn new(columns: &[&str]) -> Self {
        Series {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn to_json(&self) -> Value {
        json!({ "columns": self.columns, "rows": self.rows })
    }
}

/// Writes `series` as CSV: header row, then one row per record with every
/// value in `{:.16e}` (17 significant digits), comma-separated, LF endings.
pub fn emit_csv(series: &Series, path: &Path) -> Result<()> {
    let mut out = series.columns.join(",");
    out.push('\n');
    for row in &series.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn cx(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn quad_json(q: &QuadratureConfig) -> Value {
    serde_json::to_value(q).expect("config serializes")
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: format!("malformed document: {e}"),
    })
}

fn read_measure(path: &Path) -> Result<BoundaryMeasure> {
    BoundaryMeasure::from_description(read_json::<MeasureDescription>(path)?)
}

fn read_spectral(src: &FunctionSource) -> Result<(SpectralFunction, Value)> {
    match (&src.file, src.indicator) {
        (Some(path), _) => Ok((
            SpectralFunction::from_description(read_json::<SampledDescription>(path)?)?,
            json!(path.display().to_string()),
        )),
        (None, Some((lo, hi))) => Ok((SpectralFunction::indicator(lo, hi)?, json!({ "indicator": [lo, hi] }))),
        (None, None) => Err(Error::InvalidInput("give either --file or --indicator".into())),
    }
}

fn read_halfline(src: &FunctionSource) -> Result<(HalfLineFunction, Value)> {
    match (&src.file, src.indicator) {
        (Some(path), _) => Ok((
            HalfLineFunction::from_description(read_json::<SampledDescription>(path)?)?,
            json!(path.display().to_string()),
        )),
        (None, Some((lo, hi))) => Ok((HalfLineFunction::indicator(lo, hi)?, json!({ "indicator": [lo, hi] }))),
        (None, None) => Err(Error::InvalidInput("give either --file or --indicator".into())),
    }
}

/// Parses a sequence file: one point per line as `re,im` or `re im`;
/// blank lines and lines starting with `#` are skipped.
pub fn parse_sequence_text(text: &str) -> Result<Vec<Complex64>> {
    let mut pts = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "line {}: expected two columns, got `{line}`",
                i + 1
            )));
        }
        let parse = |f: &str| {
            f.parse::<f64>()
                .map_err(|e| Error::InvalidInput(format!("line {}: `{f}`: {e}", i + 1)))
        };
        pts.push(Complex64::new(parse(fields[0])?, parse(fields[1])?));
    }
    Ok(pts)
}

fn read_sequence(spec: &str, count: Option<usize>) -> Result<PointSequence> {
    let generator = |rest: &str| -> Result<(f64, usize)> {
        let v = rest
            .parse::<f64>()
            .map_err(|e| Error::InvalidInput(format!("generator parameter `{rest}`: {e}")))?;
        let n = count.ok_or_else(|| Error::InvalidInput("generators need --count".into()))?;
        Ok((v, n))
    };
    if let Some(rest) = spec.strip_prefix("arith:") {
        let (step, n) = generator(rest)?;
        PointSequence::arithmetic(step, n)
    } else if let Some(rest) = spec.strip_prefix("geom:") {
        let (base, n) = generator(rest)?;
        PointSequence::geometric(base, n)
    } else {
        let path = Path::new(spec);
        let pts = parse_sequence_text(&read_text(path)?)?;
        PointSequence::new(pts, None)
    }
}

struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    series: Option<Series>,
    warnings: Vec<String>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            inputs: Map::new(),
            results: Map::new(),
            series: None,
            warnings: Vec::new(),
        }
    }

    fn input(&mut self, key: &str, v: Value) -> &mut Self {
        self.inputs.insert(key.to_string(), v);
        self
    }

    fn result(&mut self, key: &str, v: Value) -> &mut Self {
        self.results.insert(key.to_string(), v);
        self
    }

    fn render(&self, error: Option<&Error>) -> String {
        let mut root = Map::new();
        root.insert("command".into(), json!(self.command));
        root.insert("inputs".into(), Value::Object(self.inputs.clone()));
        root.insert("results".into(), Value::Object(self.results.clone()));
        if let Some(s) = &self.series {
            root.insert("series".into(), s.to_json());
        }
        root.insert("warnings".into(), json!(self.warnings));
        if let Some(e) = error {
            root.insert(
                "error".into(),
                json!({ "category": e.category(), "message": e.to_string() }),
            );
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Outcome of a CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut report = Report::new(command_name(&cli.command));
    match dispatch(&cli.command, &mut report) {
        Ok(()) => Outcome {
            code: 0,
            stdout: report.render(None),
            stderr: String::new(),
        },
        Err(e) => {
            let mut stderr = String::new();
            let _ = writeln!(stderr, "error: {e}");
            Outcome {
                code: 1,
                stdout: report.render(Some(&e)),
                stderr,
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Kernel(_) => "kernel",
        Command::Norm(_) => "norm",
        Command::PwCheck(_) => "pw-check",
        Command::MellinCheck(_) => "mellin-check",
        Command::ZenKernel(_) => "zen-kernel",
        Command::Zeroset(_) => "zeroset",
        Command::Pathology(p) => match p.command {
            PathologyCommand::Projection(_) => "pathology projection",
            PathologyCommand::FkNorm(_) => "pathology fk-norm",
            PathologyCommand::Blowup(_) => "pathology blowup",
            PathologyCommand::MeanValue(_) => "pathology mean-value",
        },
        Command::Doubling(_) => "doubling",
    }
}

fn dispatch(c: &Command, r: &mut Report) -> Result<()> {
    match c {
        Command::Kernel(a) => cmd_kernel(a, r),
        Command::Norm(a) => cmd_norm(a, r),
        Command::PwCheck(a) => cmd_pw_check(a, r),
        Command::MellinCheck(a) => cmd_mellin_check(a, r),
        Command::ZenKernel(a) => cmd_zen_kernel(a, r),
        Command::Zeroset(a) => cmd_zeroset(a, r),
        Command::Pathology(p) => match &p.command {
            PathologyCommand::Projection(a) => cmd_projection(a, r),
            PathologyCommand::FkNorm(a) => cmd_fk_norm(a, r),
            PathologyCommand::Blowup(a) => cmd_blowup(a, r),
            PathologyCommand::MeanValue(a) => cmd_mean_value(a, r),
        },
        Command::Doubling(a) => cmd_doubling(a, r),
    }
}

fn write_series(r: &mut Report, series: Series, csv: &Option<PathBuf>) -> Result<()> {
    if let Some(path) = csv {
        emit_csv(&series, path)?;
        r.input("csv", json!(path.display().to_string()));
    }
    r.series = Some(series);
    Ok(())
}

fn cmd_kernel(a: &KernelArgs, r: &mut Report) -> Result<()> {
    r.input("space", json!(a.space.name()));
    let value = match a.space {
        Space::Atomic => {
            r.input("a", json!(a.a)).input("rho", json!(a.rho));
            r.input("z", cx(a.z)).input("w", cx(a.w));
            kernel_M(a.z, a.w, &AtomicParams::new(a.a, a.rho)?)?
        }
        Space::Zen => {
            let path = a
                .measure
                .as_ref()
                .ok_or_else(|| Error::InvalidInput("--space zen needs --measure".into()))?;
            let q = a.quad.config();
            r.input("measure", json!(path.display().to_string()));
            r.input("z", cx(a.z))
                .input("w", cx(a.w))
                .input("quadrature", quad_json(&q));
            kernel_zen(a.z, a.w, &read_measure(path)?, &q)?
        }
        Space::Hardy => {
            r.input("z", cx(a.z)).input("w", cx(a.w));
            hardy_kernel(a.z, a.w)?
        }
        Space::Bergman => {
            r.input("z", cx(a.z)).input("w", cx(a.w));
            bergman_kernel(a.z, a.w)?
        }
    };
    r.result("value", cx(value));
    Ok(())
}

fn cmd_norm(a: &NormArgs, r: &mut Report) -> Result<()> {
    let q = a.quad.config();
    let (psi, src) = read_spectral(&a.psi)?;
    r.input("psi", src)
        .input("a", json!(a.a))
        .input("rho", json!(a.rho))
        .input("quadrature", quad_json(&q));
    let p = AtomicParams::new(a.a, a.rho)?;
    let spectral = norm_M_spectral(&psi, &p, &q)?;
    let lines = norm_M_lines(&psi, &p, &q)?;
    let rel = if spectral > 0.0 {
        (spectral - lines.value).abs() / spectral
    } else {
        0.0
    };
    r.result("norm_spectral", json!(spectral))
        .result("norm_lines", json!(lines.value))
        .result("relative_difference", json!(rel))
        .result("lines_used", json!(lines.lines_used))
        .result("last_term_ratio", json!(lines.last_term_ratio));
    if lines.truncated {
        r.warnings.push(format!(
            "line series cut at N = {} with last term ratio {:.3e}",
            q.series_truncation_n, lines.last_term_ratio
        ));
    }
    Ok(())
}

fn cmd_pw_check(a: &PwCheckArgs, r: &mut Report) -> Result<()> {
    let q = a.quad.config();
    let (psi, src) = read_spectral(&a.psi)?;
    r.input("psi", src)
        .input("z", cx(a.z))
        .input("a", json!(a.a))
        .input("rho", json!(a.rho));
    r.input("quadrature", quad_json(&q));
    let p = AtomicParams::new(a.a, a.rho)?;
    let f = pw_synthesize(&psi, a.z, &q)?;
    let norm = norm_M_spectral(&psi, &p, &q)?;
    let bound = pointwise_bound(a.z, &p)?;
    r.result("value", cx(f))
        .result("modulus", json!(f.norm()))
        .result("norm_spectral", json!(norm))
        .result("pointwise_bound", json!(bound))
        .result("bound_holds", json!(f.norm() <= norm * bound * (1.0 + 1e-12)));
    Ok(())
}

fn cmd_mellin_check(a: &MellinCheckArgs, r: &mut Report) -> Result<()> {
    let q = a.quad.config();
    let (phi, src) = read_halfline(&a.phi)?;
    r.input("phi", src)
        .input("z", cx(a.z))
        .input("a", json!(a.a))
        .input("rho", json!(a.rho));
    r.input("quadrature", quad_json(&q));
    let p = AtomicParams::new(a.a, a.rho)?;
    let half = norm_halfline_weighted(&phi, &p, &q)?;
    let psi = mellin_to_spectral(&phi);
    let spec = norm_M_spectral(&psi, &p, &q)?;
    let m = mellin_transform(&phi, a.z, &q)?;
    let s = pw_synthesize(&psi, a.z, &q)?;
    let rel = if spec > 0.0 { (half - spec).abs() / spec } else { 0.0 };
    r.result("norm_halfline", json!(half))
        .result("norm_spectral", json!(spec))
        .result("relative_difference", json!(rel))
        .result("mellin_transform", cx(m))
        .result("spectral_synthesis", cx(s))
        .result("transform_difference", json!((m - s).norm()));
    Ok(())
}

fn cmd_zen_kernel(a: &ZenKernelArgs, r: &mut Report) -> Result<()> {
    let q = a.quad.config();
    r.input("measure", json!(a.measure.display().to_string()));
    r.input("z", cx(a.z))
        .input("w", cx(a.w))
        .input("quadrature", quad_json(&q));
    let m = read_measure(&a.measure)?;
    r.result("value", cx(kernel_zen(a.z, a.w, &m, &q)?));
    Ok(())
}

fn cmd_zeroset(a: &ZerosetArgs, r: &mut Report) -> Result<()> {
    r.input("seq", json!(a.seq));
    if let Some(n) = a.count {
        r.input("count", json!(n));
    }
    r.input("Rmax", json!(a.r_max));
    let opts = ClassifyOptions {
        rho_tolerance: a.rho_tolerance,
        carleman_margin: a.carleman_margin,
        carleman_samples: a.carleman_samples,
    };
    r.input("options", serde_json::to_value(opts).expect("options serialize"));
    let s = read_sequence(&a.seq, a.count)?;
    let rep = classify(&s, a.r_max, &opts)?;
    let at_max = rep.carleman_samples.last().map(|c| c.1).unwrap_or(0.0);
    let min_top = rep.carleman_samples.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    r.result("points", json!(s.len()))
        .result("rho1_estimate", json!(rep.rho1_estimate))
        .result("d_plus", json!(rep.d_plus))
        .result("d_minus", json!(rep.d_minus))
        .result("eps0", json!(rep.eps0))
        .result("carleman_ratio", json!(at_max))
        .result("carleman_min_top_decade", json!(min_top))
        .result("carleman_threshold", json!(2.0 / std::f64::consts::PI))
        .result("density_window", json!([rep.density_window.0, rep.density_window.1]))
        .result("carleman_window", json!([rep.carleman_window.0, rep.carleman_window.1]))
        .result("verdict", json!(rep.verdict.as_str()));
    r.warnings.extend(rep.warnings.iter().cloned());
    let mut series = Series::new(&["R", "ratio"]);
    series.rows = rep.carleman_samples.iter().map(|&(x, v)| vec![x, v]).collect();
    write_series(r, series, &a.csv)
}

fn cmd_projection(a: &ProjectionArgs, r: &mut Report) -> Result<()> {
    let q = a.quad.config();
    r.input("p", json!(a.p))
        .input("a", json!(a.a))
        .input("rho", json!(a.rho))
        .input("w", cx(a.w));
    r.input("N", json!(a.n)).input("quadrature", quad_json(&q));
    let params = AtomicParams::new(a.a, a.rho)?;
    let s = projection_partial_sums(a.p, &params, a.w, a.n, &q)?;
    let verdict = match s.verdict {
        SeriesVerdict::Diverging => "diverging",
        SeriesVerdict::Converging => "converging",
        SeriesVerdict::Undetermined => "undetermined",
    };
    r.result("verdict", json!(verdict))
        .result("log_partial_sum", json!(s.partial_sums_log.last()))
        .result("log_norm_p", json!(s.log_norm_p()));
    if a.p == 2.0 {
        let k = kernel_M(a.w, a.w, &params)?;
        r.result("norm_squared", json!(s.log_norm_p().exp()))
            .result("kernel_diagonal", json!(k.re));
    }
    let mut series = Series::new(&["n", "log_term", "log_partial_sum"]);
    series.rows = s
        .terms
        .iter()
        .zip(&s.partial_sums_log)
        .map(|(&(n, t), &ps)| vec![n as f64, t, ps])
        .collect();
    write_series(r, series, &a.csv)
}

fn cmd_fk_norm(a: &FkNormArgs, r: &mut Report) -> Result<()> {
    let q = a.quad.config();
    r.input("k", json!(a.k))
        .input("N", json!(a.n))
        .input("quadrature", quad_json(&q));
    let mut series = Series::new(&["k", "norm_squared", "closed_form"]);
    for &k in &a.k {
        let v = counterexample_fk_norm(k, a.n, &q)?;
        series.rows.push(vec![k as f64, v.norm_squared, v.closed_form]);
    }
    let norms: Vec<f64> = series.rows.iter().map(|row| row[1]).collect();
    r.result("norm_squared", json!(norms))
        .result("strictly_decreasing", json!(norms.windows(2).all(|w| w[1] < w[0])));
    r.warnings.push(
        "closed_form is the displayed series π Σ 2^n/n! (1+kn/2)^{-2}; it differs from the line quadrature".into(),
    );
    write_series(r, series, &a.csv)
}

fn cmd_blowup(a: &BlowupArgs, r: &mut Report) -> Result<()> {
    r.input("p", json!(a.p))
        .input("q", json!(a.q))
        .input("y", json!(a.y))
        .input("ells", json!(a.ells));
    let ells: Vec<u32> = (1..=a.ells).collect();
    let s = blowup_series(a.p, a.q, a.y, &ells)?;
    r.result("k", json!(s.iter().map(|v| v.0).collect::<Vec<_>>()))
        .result("log_modulus", json!(s.iter().map(|v| v.1).collect::<Vec<_>>()))
        .result("increasing", json!(s.windows(2).all(|w| w[1].1 > w[0].1)));
    let mut series = Series::new(&["k", "log_modulus"]);
    series.rows = s.iter().map(|&(k, v)| vec![k as f64, v]).collect();
    write_series(r, series, &a.csv)
}

fn cmd_mean_value(a: &MeanValueArgs, r: &mut Report) -> Result<()> {
    r.input("center", cx(a.center))
        .input("radius", json!(a.radius))
        .input("samples", json!(a.samples));
    let m = mean_value_defect(a.center, a.radius, a.samples)?;
    r.result("center_value", cx(m.center_value))
        .result("circle_mean", cx(m.circle_mean))
        .result("defect", json!(m.defect));
    Ok(())
}

fn cmd_doubling(a: &DoublingArgs, r: &mut Report) -> Result<()> {
    r.input("measure", json!(a.measure.display().to_string()))
        .input("t", json!(a.t))
        .input("bound", json!(a.bound));
    let m = read_measure(&a.measure)?;
    let rep = check_doubling(&m, &a.t, a.bound)?;
    r.result("sup_estimate", json!(rep.sup_estimate))
        .result("pass", json!(rep.pass));
    r.warnings
        .push("the supremum is taken over the supplied grid only".into());
    let mut series = Series::new(&["t", "ratio"]);
    series.rows = rep.ratio_samples.iter().map(|&(t, v)| vec![t, v]).collect();
    write_series(r, series, &a.csv)
}
