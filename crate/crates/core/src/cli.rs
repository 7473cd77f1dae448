//! Command-line front end. [`execute`] parses arguments, runs one command
//! and writes a report; it returns the process exit code (0 ok, 2 bad input,
//! 3 failed verification).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::construct::{
    default_closeness, hankel_realize, highdim_jump_polynomial, highdim_metabolic_peak,
    independence_certificate, jump_polynomial, metabolic_peak, Check, MetabolicPeak,
};
use crate::error::{Error, Result};
use crate::exact_math::{format_rational, parse_rational, unit_root_real_parts, AlgebraicReal};
use crate::io::{
    format_matrix, matrix_to_json, parse_basis, parse_matrix, parse_poly_arg, step_function_to_csv,
    step_function_to_json,
};
use crate::oracle::{omega_from_real_part, signature_float, DEFAULT_THRESHOLD};
use crate::seifert::{
    alexander_polynomial, form_inertia_at_algebraic, form_inertia_at_rational, gap_samples,
    signature_at_rational, signature_step_function, validate_seifert, verify_metabolizer, Parity,
    SeifertMatrix, SignatureStepFunction,
};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sigforge", version, about = "Exact signature functions of Seifert matrices")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Append a floating-point cross-check.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Seed for randomized oracle sample points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Classical,
    Highdim,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Classical => Parity::Classical,
            ParityArg::Highdim => Parity::HighDimSym,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct MatrixArgs {
    /// Matrix file (text or JSON).
    pub file: PathBuf,
    /// Overrides the parity given in the file (default classical).
    #[arg(long, value_enum)]
    pub parity: Option<ParityArg>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the parity condition of a matrix.
    Validate(MatrixArgs),
    /// Raw and normalized Alexander polynomial.
    Alexander(MatrixArgs),
    /// Exact signature at a rational real part or at a unit root of Δ.
    Signature {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Real part c of ω, as p/q.
        #[arg(long, allow_hyphen_values = true, required_unless_present = "at_root", conflicts_with = "at_root")]
        re: Option<String>,
        /// 1-based index of a unit root of Δ, by increasing real part.
        #[arg(long)]
        at_root: Option<usize>,
    },
    /// Full signature step function.
    Sigfn {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Print only the step function as JSON.
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        /// Print only plot-ready CSV.
        #[arg(long)]
        csv: bool,
    },
    /// Build matrices or polynomials with prescribed signature behaviour.
    Construct {
        #[command(subcommand)]
        what: ConstructCommand,
    },
    /// Matrix whose signature is nonzero at exactly one of the given points.
    Independence {
        /// Increasing comma list of rationals in (−1, 1).
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
        points: Vec<String>,
        /// 1-based index of the point to single out.
        #[arg(long)]
        target: usize,
        /// Also write the matrix to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a claimed metabolizer basis.
    VerifyMetabolizer {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Basis file: header "g n" then g rows.
        basis: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstructCommand {
    /// Quartic with a single unit-root pair near a real part.
    Jump {
        #[arg(long, allow_hyphen_values = true)]
        re: String,
        #[arg(long)]
        eps: String,
        /// Extend to a high-dimensional Alexander polynomial.
        #[arg(long)]
        highdim: bool,
        /// Lower bound for the extra unit root (high-dimensional only).
        #[arg(long, requires = "highdim")]
        closeness: Option<String>,
        /// Also realize the quartic as a classical Seifert matrix.
        #[arg(long, conflicts_with = "highdim")]
        realize: bool,
        #[arg(long, requires = "realize")]
        out: Option<PathBuf>,
    },
    /// Metabolic matrix with a single signature peak at a unit root of Δ.
    Metabolic {
        /// Δ as a constant-first comma list.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        root_index: usize,
        #[arg(long)]
        highdim: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Ordered key/value list serialized as a JSON object.
#[derive(Debug, Default)]
pub struct Fields(pub Vec<(String, Value)>);

impl Fields {
    fn push(&mut self, key: &str, v: impl Into<Value>) {
        self.0.push((key.to_string(), v.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Default, Serialize)]
pub struct CommandReport {
    pub command: Vec<String>,
    pub inputs: Fields,
    pub outputs: Fields,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl CommandReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("$ {}\n", self.command.join(" "));
        for (k, v) in &self.inputs.0 {
            out.push_str(&format!("  {k}: {}\n", render_value(v)));
        }
        for (k, v) in &self.outputs.0 {
            match v.as_array() {
                Some(rows) if rows.iter().all(Value::is_array) && !rows.is_empty() => {
                    out.push_str(&format!("{k}:\n"));
                    for r in rows {
                        let cells: Vec<String> =
                            r.as_array().into_iter().flatten().map(render_value).collect();
                        out.push_str(&format!("  {}\n", cells.join(" ")));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", render_value(v))),
            }
        }
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("[{mark}] {}\n", c.name));
            } else {
                out.push_str(&format!("[{mark}] {} ({})\n", c.name, c.detail));
            }
        }
        out.push_str(&format!("time: {:.2} ms\n", self.elapsed_ms));
        out
    }
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ParityViolation { .. }
        | Error::ParityMismatch(..)
        | Error::Verification(_)
        | Error::RankDeficient
        | Error::NotSymmetric => EXIT_VERIFICATION,
        _ => EXIT_INPUT,
    }
}

/// Applies `SIGFORGE_THREADS` to the global thread pool.
pub fn configure_threads() {
    if let Some(n) = std::env::var("SIGFORGE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // fails only if a pool already exists, in which case it stays as is
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs one command; `argv[0]` is the program name.
pub fn execute<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    let mut report = CommandReport {
        command: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        ..Default::default()
    };
    let raw = match run(&cli, &mut report) {
        Ok(raw) => raw,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code_for(&e);
        }
    };
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let body = match (raw, cli.format) {
        (Some(raw), _) => raw,
        (None, Format::Json) => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        (None, Format::Text) => report.render_text(),
    };
    let _ = out.write_all(body.as_bytes());
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load(args: &MatrixArgs, report: &mut CommandReport) -> Result<SeifertMatrix> {
    let f = parse_matrix(&read_file(&args.file)?)?;
    let parity = args.parity.map(Parity::from).or(f.parity).unwrap_or(Parity::Classical);
    report.inputs.push("file", args.file.display().to_string());
    report.inputs.push("parity", parity.to_string());
    validate_seifert(f.matrix, parity)
}

fn algebraic_json(a: &AlgebraicReal) -> Value {
    json!({ "exact": serde_json::to_value(a).expect("serializable"), "approx": a.to_f64() })
}

fn step_summary(sf: &SignatureStepFunction) -> Value {
    json!({
        "breakpoints": sf.breakpoints.iter().map(algebraic_json).collect::<Vec<_>>(),
        "interval_values": sf.interval_values,
        "point_values": sf.point_values,
    })
}

fn run(cli: &Cli, report: &mut CommandReport) -> Result<Option<String>> {
    match &cli.command {
        Command::Validate(args) => {
            let f = parse_matrix(&read_file(&args.file)?)?;
            let parity = args.parity.map(Parity::from).or(f.parity).unwrap_or(Parity::Classical);
            report.inputs.push("file", args.file.display().to_string());
            report.inputs.push("parity", parity.to_string());
            report.outputs.push("dim", f.matrix.rows());
            match validate_seifert(f.matrix, parity) {
                Ok(_) => report.checks.push(check("parity condition", true, "")),
                Err(e @ Error::ParityViolation { .. }) => {
                    report.checks.push(check("parity condition", false, &e.to_string()))
                }
                Err(e) => return Err(e),
            }
        }
        Command::Alexander(args) => {
            let k = load(args, report)?;
            let a = alexander_polynomial(&k);
            report.outputs.push("raw", a.raw.to_string());
            report.outputs.push("raw_coefficients", a.raw.to_csv());
            report.outputs.push("normalized", a.normalized.to_string());
            report.outputs.push("normalized_coefficients", a.normalized.to_csv());
        }
        Command::Signature { matrix, re, at_root } => {
            let k = load(matrix, report)?;
            if let Some(re) = re {
                let c = parse_rational(re)?;
                report.inputs.push("re", format_rational(&c));
                let fi = form_inertia_at_rational(&k, &c)?;
                report.outputs.push("signature", fi.signature);
                report.outputs.push("nullity", fi.nullity);
                if cli.oracle {
                    let cf = c.to_f64().unwrap_or(f64::NAN);
                    oracle_point(&k, cf, fi.signature, report);
                }
            } else if let Some(j) = at_root {
                let roots = unit_root_real_parts(&alexander_polynomial(&k).normalized)?;
                let root = roots.get(j.wrapping_sub(1)).ok_or_else(|| {
                    Error::InvalidArgument(format!("root index {j} outside 1..={}", roots.len()))
                })?;
                report.inputs.push("at_root", *j);
                report.outputs.push("root", algebraic_json(root));
                let fi = form_inertia_at_algebraic(&k, root)?;
                report.outputs.push("signature", fi.signature);
                report.outputs.push("nullity", fi.nullity);
                if cli.oracle {
                    oracle_point(&k, root.to_f64(), fi.signature, report);
                }
            }
        }
        Command::Sigfn { matrix, json, csv } => {
            let k = load(matrix, report)?;
            let sf = signature_step_function(&k)?;
            if *json {
                return Ok(Some(serde_json::to_string_pretty(&step_function_to_json(&sf)).expect("json") + "\n"));
            }
            if *csv {
                return Ok(Some(step_function_to_csv(&sf)));
            }
            report.outputs.push("step_function", step_summary(&sf));
            if cli.oracle {
                oracle_sweep(&k, &sf, cli.seed, report);
            }
        }
        Command::Construct { what } => construct(cli, what, report)?,
        Command::Independence { points, target, out } => {
            let cs = points.iter().map(|p| parse_rational(p)).collect::<Result<Vec<_>>>()?;
            report.inputs.push("points", cs.iter().map(format_rational).collect::<Vec<_>>());
            report.inputs.push("target", *target);
            let cert = independence_certificate(&cs, *target)?;
            let mut summands = vec![json!({
                "role": "jump right of target",
                "window": [format_rational(&cert.right.window.0), format_rational(&cert.right.window.1)],
                "delta": cert.right.jump.delta.to_csv(),
                "negated": cert.right.negated,
            })];
            if let Some(l) = &cert.left {
                summands.push(json!({
                    "role": "jump left of target (subtracted)",
                    "window": [format_rational(&l.window.0), format_rational(&l.window.1)],
                    "delta": l.jump.delta.to_csv(),
                    "negated": l.negated,
                }));
            }
            report.outputs.push("summands", summands);
            push_matrix(report, &cert.matrix);
            let table: Vec<Value> = cs
                .iter()
                .zip(&cert.values)
                .map(|(c, v)| json!({ "c": format_rational(c), "signature": v }))
                .collect();
            report.outputs.push("signatures", table);
            report.checks.extend(cert.checks.iter().cloned());
            if let Some(path) = out {
                write_file(path, &format_matrix(&cert.matrix))?;
            }
            if cli.oracle {
                let sf = signature_step_function(&cert.matrix)?;
                oracle_sweep(&cert.matrix, &sf, cli.seed, report);
            }
        }
        Command::VerifyMetabolizer { matrix, basis } => {
            let k = load(matrix, report)?;
            let cert = parse_basis(&read_file(basis)?)?;
            report.inputs.push("basis", basis.display().to_string());
            let ok = match verify_metabolizer(&k, &cert) {
                Ok(ok) => ok,
                Err(Error::RankDeficient) => false,
                Err(e) => return Err(e),
            };
            report.checks.push(check(
                "metabolizer",
                ok,
                &format!("{} rows in dimension {}", cert.rows.rows(), k.dim()),
            ));
        }
    }
    Ok(None)
}

fn check(name: &str, passed: bool, detail: &str) -> Check {
    Check { name: name.to_string(), passed, detail: detail.to_string() }
}

fn push_matrix(report: &mut CommandReport, k: &SeifertMatrix) {
    let j = matrix_to_json(k);
    report.outputs.push("dim", k.dim());
    report.outputs.push("parity", k.parity().to_string());
    report.outputs.push("matrix", j["rows"].clone());
}

fn construct(cli: &Cli, what: &ConstructCommand, report: &mut CommandReport) -> Result<()> {
    match what {
        ConstructCommand::Jump { re, eps, highdim, closeness, realize, out } => {
            let r = parse_rational(re)?;
            let e = parse_rational(eps)?;
            report.inputs.push("re", format_rational(&r));
            report.inputs.push("eps", format_rational(&e));
            if *highdim {
                let close = closeness.as_deref().map(parse_rational).transpose()?.unwrap_or_else(default_closeness);
                report.inputs.push("closeness", format_rational(&close));
                let d = highdim_jump_polynomial(&r, &e, &close)?;
                report.outputs.push("a", d.base.a.to_string());
                report.outputs.push("b", d.base.b.to_string());
                report.outputs.push("c", d.c.to_string());
                report.outputs.push("quartic", d.base.delta.to_csv());
                report.outputs.push("polynomial", d.d.to_string());
                report.outputs.push("coefficients", d.d.to_csv());
                report.outputs.push("jump_root", algebraic_json(&d.base.root));
                report.outputs.push("extra_root", format_rational(&d.extra_root));
                report.checks.extend(d.base.checks.iter().cloned());
                report.checks.extend(d.checks.iter().cloned());
                return Ok(());
            }
            let j = jump_polynomial(&r, &e)?;
            report.outputs.push("a", j.a.to_string());
            report.outputs.push("b", j.b.to_string());
            report.outputs.push("polynomial", j.delta.to_string());
            report.outputs.push("coefficients", j.delta.to_csv());
            report.outputs.push("jump_root", algebraic_json(&j.root));
            report.checks.extend(j.checks.iter().cloned());
            if *realize {
                let k = hankel_realize(&j.delta)?;
                let sf = signature_step_function(&k)?;
                push_matrix(report, &k);
                report.outputs.push("step_function", step_summary(&sf));
                let single = sf.breakpoints.len() == 1
                    && sf.breakpoints[0].cmp_exact(&j.root) == std::cmp::Ordering::Equal;
                report.checks.push(check("single breakpoint at c*", single, ""));
                report.checks.push(check(
                    "zero near c = 1",
                    sf.interval_values.last() == Some(&0),
                    "",
                ));
                report.checks.push(check(
                    "jump of ±2",
                    sf.interval_values.first().map(|v| v.abs()) == Some(2),
                    &format!("{:?}", sf.interval_values),
                ));
                if let Some(path) = out {
                    write_file(path, &format_matrix(&k))?;
                }
                if cli.oracle {
                    oracle_sweep(&k, &sf, cli.seed, report);
                }
            }
        }
        ConstructCommand::Metabolic { poly, root_index, highdim, out } => {
            let delta = parse_poly_arg(poly)?;
            report.inputs.push("poly", delta.to_csv());
            report.inputs.push("root_index", *root_index);
            let peak: MetabolicPeak = if *highdim {
                highdim_metabolic_peak(&delta, *root_index)?
            } else {
                metabolic_peak(&delta, *root_index)?
            };
            report.outputs.push(
                "selections",
                serde_json::to_value(&peak.selections).expect("serializable"),
            );
            push_matrix(report, &peak.matrix);
            report.outputs.push("alexander", alexander_polynomial(&peak.matrix).normalized.to_string());
            report.outputs.push("step_function", step_summary(&peak.step_function));
            report.checks.extend(peak.checks.iter().cloned());
            if let Some(path) = out {
                write_file(path, &format_matrix(&peak.matrix))?;
            }
            if cli.oracle {
                oracle_sweep(&peak.matrix, &peak.step_function, cli.seed, report);
            }
        }
    }
    Ok(())
}

fn oracle_point(k: &SeifertMatrix, c: f64, exact: i64, report: &mut CommandReport) {
    let r = signature_float(k, omega_from_real_part(c), DEFAULT_THRESHOLD);
    report.outputs.push("oracle", serde_json::to_value(r).expect("serializable"));
    if r.gap_certified {
        report.checks.push(check(
            "oracle agrees",
            r.signature == exact,
            &format!("exact {exact}, float {}", r.signature),
        ));
    }
}

/// Oracle comparison at every gap sample and at five seeded random
/// rationals away from the breakpoints.
fn oracle_sweep(k: &SeifertMatrix, sf: &SignatureStepFunction, seed: u64, report: &mut CommandReport) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut points: Vec<BigRational> = gap_samples(&sf.breakpoints);
    let mut extra = 0;
    while extra < 5 {
        let c = BigRational::new(rng.gen_range(-999i64..=999).into(), 1000.into());
        if sf.breakpoints.iter().any(|b| b.cmp_rational(&c) == std::cmp::Ordering::Equal) {
            continue;
        }
        points.push(c);
        extra += 1;
    }
    let mut compared = 0;
    let mut disagreements = Vec::new();
    for c in &points {
        let exact = match signature_at_rational(k, c) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let r = signature_float(k, omega_from_real_part(c.to_f64().unwrap_or(0.0)), DEFAULT_THRESHOLD);
        if r.gap_certified {
            compared += 1;
            if r.signature != exact {
                disagreements.push(format!("c={}: exact {exact}, float {}", format_rational(c), r.signature));
            }
        }
    }
    report.outputs.push("oracle_points_compared", compared);
    report.checks.push(check(
        "oracle agrees at certified points",
        disagreements.is_empty(),
        &if disagreements.is_empty() {
            format!("{compared} points, seed {seed}")
        } else {
            disagreements.join("; ")
        },
    ));
}
