//! `isoheight` command-line front end. Every subcommand prints one JSON
//! object `{"status", "payload", "diagnostics"}` and exits with 0 (ok),
//! 1 (error) or 2 (unknown).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use isoheight::bounds::{
    self, BoundCertificate, CaseDiscriminator, HeightBound, InequalityReport, StepStatus, TheoremInputs,
};
use isoheight::dessins::{self, CensusHeader, EnumerationConfig};
use isoheight::orbifold;
use isoheight::parallel::Execution;
use isoheight::shimizu::{self, Consistency, FieldData, ShimizuConsistencyInput};
use isoheight::{Error, Precision, Rational, RealEnclosure};

const APPROX_DIGITS: usize = 9;

#[derive(Parser)]
#[command(name = "isoheight", version, about = "Exact height bounds, certificates, dessin census and covolumes")]
struct Cli {
    /// Starting precision in bits for certified comparisons.
    #[arg(long, global = true, env = "ISOHEIGHT_PRECISION", default_value_t = Precision::DEFAULT.bits())]
    precision: u32,
    /// Worker threads for parallel work (1 = sequential; default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Replay or re-check proof certificates.
    #[command(subcommand)]
    Certificate(CertificateCmd),
    /// Exhaustive and grid verifications.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Census of covers of the thrice-punctured line.
    #[command(subcommand)]
    Dessins(DessinsCmd),
    /// Covolumes of arithmetic Fuchsian groups.
    #[command(subcommand)]
    Shimizu(ShimizuCmd),
}

#[derive(Subcommand)]
enum BoundCmd {
    /// Height bound for isogenous curves.
    #[command(allow_negative_numbers = true)]
    Main {
        #[arg(long)]
        ex: i64,
        #[arg(long)]
        ey: i64,
        #[arg(long)]
        belyi: u64,
    },
    /// Height bound for an arithmetic affine curve.
    #[command(allow_negative_numbers = true)]
    AffineArithmetic {
        #[arg(long)]
        ex: i64,
    },
    /// Degree bounds for the isogeny maps.
    #[command(allow_negative_numbers = true)]
    Isogeny(IsogenyArgs),
    /// Height of the target of a finite morphism.
    Dfs {
        /// Height of the source curve, as `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        deg: u64,
        /// Use the sharper two-genus form; requires `--gy`.
        #[arg(long, requires = "gy")]
        sharp: bool,
        #[arg(long)]
        gy: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IsogenyCase {
    NonArithmetic,
    ArithmeticAffine,
    ArithmeticProjective,
}

#[derive(Args)]
struct IsogenyArgs {
    #[arg(long, value_enum)]
    case: IsogenyCase,
    #[arg(long)]
    ex: Option<i64>,
    #[arg(long)]
    ey: Option<i64>,
    #[arg(long)]
    gx: Option<u64>,
    #[arg(long)]
    gy: Option<u64>,
}

#[derive(Subcommand)]
enum CertificateCmd {
    /// Replay a proof chain step by step.
    #[command(allow_negative_numbers = true)]
    Replay {
        #[arg(long)]
        case: String,
        #[arg(long)]
        gx: u64,
        #[arg(long, default_value_t = 0)]
        gy: u64,
        #[arg(long)]
        ex: i64,
        #[arg(long, default_value_t = -1)]
        ey: i64,
        #[arg(long, default_value_t = 1)]
        belyi: u64,
    },
    /// Re-verify a stored certificate from its JSON alone.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Smallest |e| over hyperbolic orbifold signatures.
    Hurwitz42,
    /// Auxiliary logarithm inequalities for g = 0..=gmax.
    ProofSteps {
        #[arg(long)]
        gmax: u64,
    },
    /// Discriminant-floor inequalities for n = 1..=nmax.
    Odlyzko {
        #[arg(long)]
        nmax: u64,
    },
}

#[derive(Subcommand)]
enum DessinsCmd {
    /// All dessins of one degree, up to isomorphism.
    Enumerate {
        #[arg(long)]
        degree: usize,
        /// Write a JSON-lines census here instead of embedding the entries.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest degree enumerated without complaint.
        #[arg(long, default_value_t = dessins::DEFAULT_DEGREE_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum ShimizuCmd {
    /// Enclosure of the covolume for the field data in a file.
    Covolume {
        #[arg(long)]
        field: PathBuf,
        /// Derive zeta_F(2) from the prime-norm table when the file has none.
        #[arg(long)]
        zeta_from_norms: bool,
    },
    /// Enclosure of zeta_F(2) from the prime-norm table of a field file.
    Zeta2 {
        #[arg(long)]
        field: PathBuf,
    },
    /// Compare d2 * covolume with d1 * |e|.
    #[command(allow_negative_numbers = true)]
    Consistency {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
        /// Euler characteristic as `p/q`; its absolute value is used.
        #[arg(long, allow_hyphen_values = true)]
        e: String,
        #[arg(long)]
        zeta_from_norms: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Error,
    Unknown,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Error => "error",
            Status::Unknown => "unknown",
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Error => 1,
            Status::Unknown => 2,
        }
    }
}

struct Outcome {
    status: Status,
    payload: Value,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { status: Status::Ok, payload, diagnostics: Vec::new() }
    }

    fn error(message: impl Into<String>) -> Self {
        Outcome { status: Status::Error, payload: Value::Null, diagnostics: vec![message.into()] }
    }

    fn note(mut self, message: impl Into<String>) -> Self {
        self.diagnostics.push(message.into());
        self
    }

    fn emit(self) -> ExitCode {
        let out = json!({
            "status": self.status.name(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        });
        let text = serde_json::to_string_pretty(&out).expect("JSON values always serialize");
        // a closed stdout (e.g. piped into `head`) is not an error of the command
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{text}").and_then(|_| stdout.flush());
        ExitCode::from(self.status.exit_code())
    }
}

type CmdResult = std::result::Result<Outcome, Error>;

fn exact(v: &Rational) -> Value {
    json!({ "exact": v, "approx": v.to_scientific(APPROX_DIGITS) })
}

fn enclosure(v: &RealEnclosure) -> Value {
    json!({
        "lo": v.lo(),
        "hi": v.hi(),
        "approx_lo": v.lo().to_scientific(APPROX_DIGITS),
        "approx_hi": v.hi().to_scientific(APPROX_DIGITS),
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types always serialize")
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, Error> {
    s.parse().map_err(|_| Error::Parse(format!("{what}: '{s}' is not a rational of the form p/q")))
}

fn report_outcome(report: &InequalityReport) -> Outcome {
    let status = if report.refuted > 0 {
        Status::Error
    } else if report.unknown > 0 {
        Status::Unknown
    } else {
        Status::Ok
    };
    let mut out = Outcome { status, payload: to_value(report), diagnostics: Vec::new() };
    for item in report.items.iter().filter(|i| i.status != StepStatus::Certified) {
        out = out.note(format!("{:?}: {}", item.status, item.label));
    }
    out
}

fn certificate_outcome(cert: &BoundCertificate) -> Outcome {
    let status = if cert.verified {
        Status::Ok
    } else if cert.steps.iter().any(|s| s.status == StepStatus::Refuted) || cert.final_bound > cert.statement {
        Status::Error
    } else {
        Status::Unknown
    };
    let mut out = Outcome { status, payload: to_value(cert), diagnostics: Vec::new() };
    if let Some(label) = &cert.failing_step {
        out = out.note(format!("first uncertified step: {label}"));
    }
    out
}

fn read_field(path: &PathBuf, zeta_from_norms: bool, p: Precision) -> Result<FieldData, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let field: FieldData = serde_json::from_str(&text)?;
    if zeta_from_norms {
        field.with_zeta2_from_norms(p)
    } else {
        Ok(field)
    }
}

fn required<T>(v: Option<T>, flag: &str, case: &str) -> Result<T, Error> {
    v.ok_or_else(|| Error::InvalidInput(format!("--{flag} is required for --case {case}")))
}

fn run_bound(cmd: BoundCmd, p: Precision) -> CmdResult {
    match cmd {
        BoundCmd::Main { ex, ey, belyi } => {
            let v = bounds::main_theorem_bound(&Rational::from(ex), &Rational::from(ey), belyi)?;
            Ok(Outcome::ok(json!({ "bound": v, "approx": v.to_scientific(APPROX_DIGITS) })))
        }
        BoundCmd::AffineArithmetic { ex } => {
            let v = bounds::affine_arithmetic_height_bound(&Rational::from(ex))?;
            Ok(Outcome::ok(json!({ "bound": v, "approx": v.to_scientific(APPROX_DIGITS) })))
        }
        BoundCmd::Isogeny(a) => {
            let payload = match a.case {
                IsogenyCase::NonArithmetic => {
                    let ex = required(a.ex, "ex", "non-arithmetic")?;
                    let ey = required(a.ey, "ey", "non-arithmetic")?;
                    let b = bounds::isogeny_degree_bound_nonarithmetic(&Rational::from(ex), &Rational::from(ey))?;
                    json!({ "deg_pi_x": exact(&b.bound_pi_x), "deg_pi_y": exact(&b.bound_pi_y) })
                }
                IsogenyCase::ArithmeticProjective => {
                    let gx = required(a.gx, "gx", "arithmetic-projective")?;
                    let gy = required(a.gy, "gy", "arithmetic-projective")?;
                    let b = bounds::arithmetic_projective_isogeny_bounds(gx, gy)?;
                    json!({ "deg_pi_x": exact(&b.bound_pi_x), "deg_pi_y": exact(&b.bound_pi_y) })
                }
                IsogenyCase::ArithmeticAffine => {
                    let gx = required(a.gx, "gx", "arithmetic-affine")?;
                    let ex = required(a.ex, "ex", "arithmetic-affine")?;
                    let (d1, d2) = bounds::arithmetic_affine_cover_bounds(gx, &Rational::from(ex))?;
                    json!({ "deg_cover": exact(&d1), "deg_pi": exact(&d2) })
                }
            };
            Ok(Outcome::ok(payload))
        }
        BoundCmd::Dfs { h, g, deg, sharp, gy } => {
            let h = HeightBound::exact(parse_rational(&h, "--h")?, "given height");
            let out = if sharp {
                bounds::dfs_height_bound_sharp(&h, g, gy.expect("clap enforces --gy with --sharp"), deg, p)?
            } else {
                bounds::dfs_height_bound(&h, g, deg, p)?
            };
            Ok(Outcome::ok(json!({ "bound": enclosure(&out.value), "provenance": out.provenance })))
        }
    }
}

fn run_certificate(cmd: CertificateCmd, p: Precision) -> CmdResult {
    match cmd {
        CertificateCmd::Replay { case, gx, gy, ex, ey, belyi } => {
            let inputs = TheoremInputs { case: case.parse::<CaseDiscriminator>()?, g_x: gx, g_y: gy, e_x: ex, e_y: ey, deg_b_x: belyi };
            Ok(certificate_outcome(&bounds::replay_theorem_certificate(&inputs, p)?))
        }
        CertificateCmd::Check { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let cert = BoundCertificate::from_json(&text)?;
            let reproduced = cert.reverify()?;
            let payload = json!({ "reproduced": reproduced, "verified": cert.verified, "steps": cert.steps.len() });
            Ok(if reproduced && cert.verified {
                Outcome::ok(payload)
            } else if reproduced {
                Outcome { status: Status::Unknown, payload, diagnostics: vec!["certificate is reproducible but not verified".into()] }
            } else {
                Outcome { status: Status::Error, payload, diagnostics: vec!["stored values do not match recomputation".into()] }
            })
        }
    }
}

fn run_verify(cmd: VerifyCmd, p: Precision, exec: Execution) -> CmdResult {
    match cmd {
        VerifyCmd::Hurwitz42 => Ok(Outcome::ok(to_value(&orbifold::min_abs_euler_hyperbolic_with(exec)))),
        VerifyCmd::ProofSteps { gmax } => {
            Ok(report_outcome(&bounds::verify_proof_inequalities_with(0..=gmax, p, exec)?))
        }
        VerifyCmd::Odlyzko { nmax } => Ok(report_outcome(&shimizu::odlyzko_constant_check_with(nmax, p, exec)?)),
    }
}

fn run_dessins(cmd: DessinsCmd, exec: Execution) -> CmdResult {
    match cmd {
        DessinsCmd::Enumerate { degree, out, cap } => {
            let entries = dessins::enumerate_dessins_with(degree, EnumerationConfig { cap, execution: exec })?;
            let header = CensusHeader::new(degree, cap, entries.len());
            match out {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    dessins::write_census_jsonl(BufWriter::new(file), &header, &entries)?;
                    Ok(Outcome::ok(json!({ "header": header, "out": path.display().to_string() })))
                }
                None => Ok(Outcome::ok(json!({ "header": header, "entries": entries }))),
            }
        }
    }
}

fn run_shimizu(cmd: ShimizuCmd, p: Precision) -> CmdResult {
    match cmd {
        ShimizuCmd::Covolume { field, zeta_from_norms } => {
            let f = read_field(&field, zeta_from_norms, p)?;
            let v = shimizu::covolume(&f, p)?;
            let zeta2 = f.zeta2.as_ref().expect("covolume succeeded, so zeta2 is present");
            Ok(Outcome::ok(json!({ "covolume": enclosure(&v), "zeta2": enclosure(zeta2) })))
        }
        ShimizuCmd::Zeta2 { field } => {
            let f = read_field(&field, false, p)?;
            let b = f.b.ok_or_else(|| Error::InvalidInput("the field file has no norm bound B".into()))?;
            let z = shimizu::zeta2_enclosure(f.n, &f.prime_norms, b, p)?;
            Ok(Outcome::ok(json!({ "zeta2": enclosure(&z), "width": exact(&z.width()) })))
        }
        ShimizuCmd::Consistency { field, d1, d2, e, zeta_from_norms } => {
            let f = read_field(&field, zeta_from_norms, p)?;
            let e = parse_rational(&e, "--e")?;
            let c = ShimizuConsistencyInput { d1, d2, abs_e: e.abs() };
            let r = shimizu::shimizu_consistency(&f, &c, p)?;
            let status = if r.outcome == Consistency::Unknown { Status::Unknown } else { Status::Ok };
            let payload = json!({
                "outcome": r.outcome,
                "lhs": enclosure(&r.lhs),
                "rhs": exact(&r.rhs),
                "precision": r.precision,
            });
            Ok(Outcome { status, payload, diagnostics: Vec::new() })
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let p = Precision::new(cli.precision)?;
    let exec = Execution::from_jobs(cli.jobs);
    match cli.command {
        Command::Bound(c) => run_bound(c, p),
        Command::Certificate(c) => run_certificate(c, p),
        Command::Verify(c) => run_verify(c, p, exec),
        Command::Dessins(c) => run_dessins(c, exec),
        Command::Shimizu(c) => run_shimizu(c, p),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                let _ = std::io::stdout().flush();
                return ExitCode::SUCCESS;
            }
            return Outcome::error(e.render().to_string().trim_end()).emit();
        }
    };
    match run(cli) {
        Ok(out) => out.emit(),
        Err(e) => Outcome::error(e.to_string()).emit(),
    }
}
