use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use conesep::augdual::{bp_cone, bp_class, classify_augmented, is_dilating, AugmentedFunctional};
use conesep::io::{self, Instance, SeminormSpec};
use conesep::random::{random_instance, RandomSpec};
use conesep::report::{self, analyze, expected_verdict_suite};
use conesep::separation::{check_hypotheses, separate, verify_certificate, Variant};
use conesep::{bundled, svg, Error, Functional, Scalar, Vector};

const OK: u8 = 0;
const HYPOTHESIS_FAILED: u8 = 2;
const VERIFICATION_MISMATCH: u8 = 3;
const INPUT_ERROR: u8 = 4;
const REJECTION_LIMIT: u8 = 5;

#[derive(Parser)]
#[command(name = "conesep", version, about = "Exact nonlinear separation of polyhedral cones")]
struct Cli {
    /// Compact single-line JSON and no summary on stderr.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Instance JSON file.
    instance: PathBuf,

    /// Replace the file's gauge: linf, l1 or polygon:N (N vertices).
    #[arg(long)]
    seminorm: Option<String>,
}

#[derive(Args, Clone)]
struct FunctionalArgs {
    /// Comma-separated coordinates, e.g. `1,1/2`.
    #[arg(long, allow_hyphen_values = true)]
    x_star: String,
}

#[derive(Subcommand)]
enum Command {
    /// Pointedness, solidity, lineality, dual cone and base of K and A.
    Analyze(InstanceArgs),
    /// Run a separation driver and verify the certificate.
    Separate {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        emit_svg: Option<PathBuf>,
        /// Re-verify the certificate from its serialized form.
        #[arg(long)]
        verify: bool,
    },
    /// Classify (x*, α) against the augmented dual cones of K.
    AugdualCheck {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        functional: FunctionalArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Bishop-Phelps cone of x* relative to K.
    BpCheck {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        functional: FunctionalArgs,
    },
    /// Generate a seeded random instance.
    Random {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        pieces: usize,
        #[arg(long, default_value_t = 3)]
        generators: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reject candidates until this variant's hypotheses hold.
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        seminorm: Option<String>,
        #[arg(long, default_value_t = 200)]
        max_attempts: usize,
        /// Write the instance here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the bundled instances and run the expected-verdict suite.
    PaperExamples {
        #[arg(long)]
        seminorm: Option<String>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Draw a planar instance with the certificate's level curve.
    Render {
        #[command(flatten)]
        input: InstanceArgs,
        #[arg(long)]
        variant: Option<String>,
        #[arg(long)]
        emit_svg: PathBuf,
    },
}

struct Outcome {
    code: u8,
    body: Map<String, Value>,
    summary: String,
}

impl Outcome {
    fn new(code: u8, summary: impl Into<String>) -> Self {
        Outcome {
            code,
            body: Map::new(),
            summary: summary.into(),
        }
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.body.insert(key.into(), value);
        self
    }
}

fn error_outcome(e: &Error) -> Outcome {
    let (code, kind) = match e {
        Error::Parse { .. } => (INPUT_ERROR, "parse"),
        Error::RejectionLimit(_) => (REJECTION_LIMIT, "rejection-limit"),
        Error::HypothesisFailed(_) | Error::NotPointed(_) | Error::NotSolid | Error::UnsupportedOverlap(_) => {
            (HYPOTHESIS_FAILED, "hypothesis")
        }
        Error::Certificate(_) => (VERIFICATION_MISMATCH, "certificate"),
        _ => (INPUT_ERROR, "invalid-input"),
    };
    let mut err = json!({"kind": kind, "message": e.to_string()});
    if let Error::Parse { field, .. } = e {
        err["field"] = json!(field);
    }
    Outcome::new(code, format!("error: {e}")).with("error", err)
}

fn hash_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_seminorm(flag: Option<&str>) -> Result<Option<SeminormSpec>, Error> {
    flag.map(SeminormSpec::parse_flag).transpose()
}

fn load(args: &InstanceArgs) -> Result<(Instance, String), Error> {
    let text = std::fs::read_to_string(&args.instance)
        .map_err(|e| Error::parse("instance", format!("{}: {e}", args.instance.display())))?;
    let seminorm = parse_seminorm(args.seminorm.as_deref())?;
    let inst = io::parse_instance(&text, seminorm.as_ref())?;
    let hash = hash_hex(inst.to_json_string().as_bytes());
    Ok((inst, hash))
}

fn parse_vector(text: &str, field: &str) -> Result<Vector, Error> {
    text.split(',')
        .enumerate()
        .map(|(i, s)| Scalar::parse(s.trim()).map_err(|e| Error::parse(format!("{field}[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(Vector::new)
}

fn parse_functional(args: &FunctionalArgs, dim: usize) -> Result<Functional, Error> {
    let v = parse_vector(&args.x_star, "--x-star")?;
    if v.dim() != dim {
        return Err(Error::parse("--x-star", format!("expected {dim} coordinates, found {}", v.dim())));
    }
    Ok(Functional::new(v))
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report serializes")
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|e| Error::parse("output", format!("{}: {e}", path.display())))
}

fn cmd_analyze(args: &InstanceArgs) -> Result<Outcome, Error> {
    let (inst, hash) = load(args)?;
    let report = analyze(&inst)?;
    let summary = format!(
        "K pointed={} solid={}; A pointed={} solid={}",
        report["cone_K"]["pointed"], report["cone_K"]["solid"], report["cone_A"]["pointed"], report["cone_A"]["solid"]
    );
    Ok(Outcome::new(OK, summary).with("input_hash", json!(hash)).with("analysis", report))
}

fn cmd_separate(args: &InstanceArgs, variant: Option<&str>, svg_path: Option<&Path>, reverify: bool) -> Result<Outcome, Error> {
    let (inst, hash) = load(args)?;
    let mut problem = inst.problem.clone();
    if let Some(v) = variant {
        problem = problem.with_variant(Variant::parse(v)?);
    }
    let hypotheses = check_hypotheses(&problem);
    let base = |o: Outcome| {
        o.with("input_hash", json!(hash))
            .with("variant", json!(problem.variant))
            .with("hypotheses", hypotheses.as_ref().map(to_value).unwrap_or(Value::Null))
    };
    let cert = match separate(&problem) {
        Ok(c) => c,
        Err(e) => {
            let mut o = base(error_outcome(&e));
            let witness = match &e {
                Error::HypothesisFailed(r) => r.deciding().common_point.as_ref().map(|c| to_value(&c.point)),
                Error::NotPointed(w) => Some(to_value(w)),
                _ => None,
            };
            o.body.insert("witness".into(), witness.unwrap_or(Value::Null));
            o.body.insert("certificate".into(), Value::Null);
            if let Some(path) = svg_path {
                write_file(path, &svg::render(&problem, None)?)?;
                o.body.insert("svg".into(), json!(path.display().to_string()));
            }
            return Ok(o);
        }
    };

    let target = problem.variant.target();
    let mut code = if cert.verification.passed { OK } else { HYPOTHESIS_FAILED };
    let mut o = Outcome::new(
        code,
        format!(
            "{}: achieved {} with alpha = {}",
            problem.variant,
            report::class_name(cert.achieved),
            cert.aug.alpha
        ),
    );
    let cert_json = io::certificate_to_json(&cert);
    if reverify {
        // Round-trip through JSON so only the serialized data is trusted.
        let aug = io::augmented_from_json(&cert_json, "certificate")?;
        let mut again = cert.clone();
        again.aug = aug;
        let r = verify_certificate(&problem, &again);
        let agrees = r.achieved == cert.achieved;
        if !agrees {
            code = VERIFICATION_MISMATCH;
        }
        o = o.with("reverification", json!({"achieved": r.achieved, "agrees": agrees, "passed": r.achieved >= target}));
    }
    if let Some(path) = svg_path {
        if problem.dim() == 2 {
            write_file(path, &svg::render(&problem, Some(&cert))?)?;
            o = o.with("svg", json!(path.display().to_string()));
        } else {
            o = o.with("svg", Value::Null);
        }
    }
    o.code = code;
    Ok(base(o).with("certificate", cert_json))
}

fn cmd_augdual(args: &InstanceArgs, f: &FunctionalArgs, alpha: &str) -> Result<Outcome, Error> {
    let (inst, hash) = load(args)?;
    let x = parse_functional(f, inst.problem.dim())?;
    let alpha = Scalar::parse(alpha).map_err(|e| Error::parse("--alpha", e.to_string()))?;
    let aug = AugmentedFunctional::new(x, alpha).map_err(|e| Error::parse("--alpha", e.to_string()))?;
    let class = classify_augmented(&inst.problem.k, &inst.problem.psi, &aug)?;
    let summary = format!(
        "a+ {:?}, a# {:?}, a& {:?}, ao {:?}",
        class.a_plus, class.a_sharp, class.a_amp, class.a_circ
    );
    Ok(Outcome::new(OK, summary)
        .with("input_hash", json!(hash))
        .with("functional", to_value(&aug))
        .with("classification", to_value(&class)))
}

fn cmd_bp(args: &InstanceArgs, f: &FunctionalArgs) -> Result<Outcome, Error> {
    let (inst, hash) = load(args)?;
    let p = &inst.problem;
    let x = parse_functional(f, p.dim())?;
    let class = bp_class(&p.k, &p.psi, &x)?;
    let cone = bp_cone(&x, &p.psi)?;
    let dilating = match is_dilating(&p.k, &p.psi, &x) {
        Ok(b) => json!(b),
        Err(e) => json!({"error": e.to_string()}),
    };
    let facets: Vec<&Functional> = cone.facets.iter().collect();
    Ok(Outcome::new(OK, format!("bp# {:?}, dilating {dilating}", class.bp_sharp))
        .with("input_hash", json!(hash))
        .with("x_star", to_value(&x))
        .with("bp_class", to_value(&class))
        .with("bp_cone_facets", to_value(&facets))
        .with("dilating", dilating))
}

#[allow(clippy::too_many_arguments)]
fn cmd_random(
    n: usize,
    pieces: usize,
    generators: usize,
    seed: u64,
    variant: Option<&str>,
    seminorm: Option<&str>,
    max_attempts: usize,
    out: Option<&Path>,
) -> Result<Outcome, Error> {
    let mut spec = RandomSpec::new(n, seed);
    spec.pieces = pieces;
    spec.generators = generators;
    spec.max_attempts = max_attempts;
    spec.request = variant.map(Variant::parse).transpose()?;
    if let Some(s) = parse_seminorm(seminorm)? {
        spec.seminorm = s;
    }
    let inst = random_instance(&spec)?;
    let text = inst.to_json_string();
    let hash = hash_hex(text.as_bytes());
    let o = Outcome::new(OK, format!("instance from seed {seed}")).with("input_hash", json!(hash));
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(o.with("written", json!(path.display().to_string())))
        }
        None => Ok(o.with("instance", inst.to_json())),
    }
}

fn cmd_paper_examples(seminorm: Option<&str>, out_dir: Option<&Path>) -> Result<Outcome, Error> {
    let spec = parse_seminorm(seminorm)?.unwrap_or(SeminormSpec::Polygon(8));
    let psi = spec.build(2)?;
    let mut written = Vec::new();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::parse("--out-dir", e.to_string()))?;
        for b in bundled::all(&psi)? {
            let gauge = if b.name.starts_with("sectors") {
                spec.clone()
            } else {
                SeminormSpec::Linf
            };
            let mut inst = Instance::new(b.problem, gauge);
            inst.name = Some(b.name.to_string());
            let path = dir.join(format!("{}.json", b.name));
            write_file(&path, &inst.to_json_string())?;
            written.push(path.display().to_string());
        }
    }
    let suite = expected_verdict_suite(&spec)?;
    let diff: Vec<Value> = suite
        .checks
        .iter()
        .filter(|c| c.outcome != report::Outcome::Pass)
        .map(|c| json!({"instance": c.instance, "check": c.check, "expected": c.expected, "actual": c.actual, "note": c.note}))
        .collect();
    let code = if suite.passed {
        OK
    } else if suite.degenerate {
        HYPOTHESIS_FAILED
    } else {
        VERIFICATION_MISMATCH
    };
    let summary = format!(
        "{} of {} expected verdicts reproduce{}",
        suite.checks.len() - diff.len(),
        suite.checks.len(),
        if suite.degenerate { " (degenerate gauge)" } else { "" }
    );
    Ok(Outcome::new(code, summary)
        .with("written", json!(written))
        .with("diff", Value::Array(diff))
        .with("suite", to_value(&suite)))
}

fn cmd_render(args: &InstanceArgs, variant: Option<&str>, path: &Path) -> Result<Outcome, Error> {
    let (inst, hash) = load(args)?;
    let mut problem = inst.problem.clone();
    if let Some(v) = variant {
        problem = problem.with_variant(Variant::parse(v)?);
    }
    let cert = separate(&problem).ok();
    let picture = svg::render(&problem, cert.as_ref())?;
    write_file(path, &picture)?;
    Ok(Outcome::new(OK, format!("wrote {}", path.display()))
        .with("input_hash", json!(hash))
        .with("svg", json!(path.display().to_string()))
        .with("paths", json!(picture.matches("<path").count()))
        .with("level_curve", json!(cert.is_some())))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Separate { .. } => "separate",
        Command::AugdualCheck { .. } => "augdual-check",
        Command::BpCheck { .. } => "bp-check",
        Command::Random { .. } => "random",
        Command::PaperExamples { .. } => "paper-examples",
        Command::Render { .. } => "render",
    }
}

fn run(command: &Command) -> Outcome {
    let result = match command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Separate {
            input,
            variant,
            emit_svg,
            verify,
        } => cmd_separate(input, variant.as_deref(), emit_svg.as_deref(), *verify),
        Command::AugdualCheck {
            input,
            functional,
            alpha,
        } => cmd_augdual(input, functional, alpha),
        Command::BpCheck { input, functional } => cmd_bp(input, functional),
        Command::Random {
            n,
            pieces,
            generators,
            seed,
            variant,
            seminorm,
            max_attempts,
            out,
        } => cmd_random(
            *n,
            *pieces,
            *generators,
            *seed,
            variant.as_deref(),
            seminorm.as_deref(),
            *max_attempts,
            out.as_deref(),
        ),
        Command::PaperExamples { seminorm, out_dir } => cmd_paper_examples(seminorm.as_deref(), out_dir.as_deref()),
        Command::Render {
            input,
            variant,
            emit_svg,
        } => cmd_render(input, variant.as_deref(), emit_svg),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn emit(command: &str, o: Outcome, elapsed_ms: Option<u128>, compact: bool) -> ExitCode {
    let mut body = Map::new();
    body.insert("tool".into(), json!("conesep"));
    body.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    body.insert("command".into(), json!(command));
    body.insert("exit_code".into(), json!(o.code));
    body.extend(o.body);
    body.insert("timing_ms".into(), elapsed_ms.map_or(Value::Null, |t| json!(t)));
    let v = Value::Object(body);
    let text = if compact {
        format!("{}\n", serde_json::to_string(&v).expect("report serializes"))
    } else {
        eprintln!("{}", o.summary);
        io::to_pretty(&v)
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(o.code)
}

fn main() -> ExitCode {
    let compact = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let o = Outcome::new(INPUT_ERROR, e.to_string().trim_end().to_string())
                .with("error", json!({"kind": "usage", "message": e.to_string().trim_end()}));
            return emit("usage", o, None, compact);
        }
    };
    let start = Instant::now();
    let outcome = run(&cli.command);
    emit(command_name(&cli.command), outcome, Some(start.elapsed().as_millis()), cli.json)
}
