//! Command-line surface: argument parsing, input loading, report rendering
//! and exit codes.
//!
//! Exit codes: `0` when every check passes, `1` when a mathematical check
//! fails, `2` for input or usage errors.
//!
//! With `--json` the report is
//! `{command, inputs, checks: [{name, status, witness?}], params, elapsed_ms, seed}`
//! where `inputs` holds SHA-256 digests of the input files (builtins hash their
//! name) and `checks` is sorted by name. Computed tables appear as checks with
//! status `info`. `elapsed_ms` is `0` unless `--timing` is given, so identical
//! invocations produce identical bytes.

use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::algebra_core::{builtin, load_algebra, parse_algebra_json, validate, FinDimAlgebra};
use crate::calculus::{cartan_check, homotopy_t_suite, identity_suite, verify_calculus};
use crate::cyclic::{cyclic_homology, goodwillie_check, kunneth_certify, CyclicKind, CyclicVariant, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::formality_aux::{dk_dims, zeta_phi_check};
use crate::hochschild::Hochschild;
use crate::moyal::{moyal_checks, MoyalParams, DEFAULT_HBAR_MAX};
use crate::operads::{
    associativity_check, bar_d_squared_check, bar_homology_check, duality_report, equivariance_check,
    parse_collection_json, preset_presentation, FreeOperad, Operad, SymmetricCollection, FREE_ARITY_BOUND,
};
use crate::report::{all_pass, Check, Status};

#[derive(Debug, Parser)]
#[command(name = "nccalc", version, about = "Exact Hochschild, cyclic and operadic computations")]
pub struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Master seed for all sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Record wall-clock time in `elapsed_ms` (makes reports nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra file operations.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Hochschild homology and cohomology dimensions.
    Hh {
        file: String,
        #[arg(long)]
        max_degree: usize,
        /// Restrict homology to one weight.
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Cyclic, negative cyclic or periodic homology dimensions.
    Hc {
        file: String,
        #[arg(long)]
        variant: String,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        trunc: usize,
    },
    /// Chain-level identity suites.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Solves for the homotopy T(D, E) on seeded cocycle pairs.
    HomotopyT {
        file: String,
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
    },
    /// Certifies the shuffle map as a quasi-isomorphism.
    Kunneth {
        first: String,
        second: String,
        #[arg(long)]
        max_degree: usize,
        /// Also certify the negative cyclic map with this truncation.
        #[arg(long, default_value_t = 0)]
        trunc: usize,
    },
    /// Compares periodic homology of A and A/I for a nilpotent ideal I.
    Goodwillie {
        file: String,
        /// Comma-separated basis labels spanning the ideal.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        trunc: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Operad computations.
    #[command(subcommand)]
    Operad(OperadCommand),
    /// Graded dimensions of the Drinfeld–Kohno Lie algebra t(n).
    Dk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
    },
    /// Even zeta series against numeric zeta values.
    Zeta {
        #[arg(long)]
        order: usize,
    },
    /// Moyal star product checks on random polynomial symbols.
    Moyal {
        #[arg(long)]
        pairs: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_HBAR_MAX)]
        hbar_max: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCommand {
    /// Checks associativity, the unit, gradings and the differential.
    Validate { file: String },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// b, B, δ, cup, brace, i, L and S identities on random inputs.
    Identities(SampledArgs),
    /// Calculus axioms on Hochschild (co)homology classes.
    Calculus {
        file: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// The u-graded Cartan homotopy formula on random inputs.
    Cartan(SampledArgs),
}

#[derive(Debug, Args)]
pub struct SampledArgs {
    pub file: String,
    #[arg(long)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum OperadCommand {
    /// Dimensions and composition axioms of the free operad.
    Free {
        genfile: String,
        #[arg(long)]
        arity: usize,
    },
    /// d² = 0 on the bar construction and bar homology of the free operad.
    BarCheck {
        genfile: String,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long, default_value_t = 3)]
        homology_arity: usize,
    },
    /// Quadratic dual of a preset binary operad.
    Koszul {
        #[arg(long)]
        preset: String,
    },
}

/// Machine-readable run report.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub checks: Vec<Check>,
    pub params: Value,
    pub elapsed_ms: u64,
    pub seed: u64,
}

/// Failure to run a command, always reported with exit code 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self(e.to_string())
    }
}

type CmdResult<T> = std::result::Result<T, InputError>;

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Text and digest of the file `arg`, or `None` when no such file exists.
fn read_input(arg: &str) -> CmdResult<Option<(String, String)>> {
    let path = Path::new(arg);
    if !path.exists() {
        return Ok(None);
    }
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("cannot read {arg}: {e}")))?;
    let text = String::from_utf8(bytes).map_err(|_| InputError(format!("{arg} is not UTF-8")))?;
    let d = digest(text.as_bytes());
    Ok(Some((text, d)))
}

fn load(arg: &str, inputs: &mut Vec<String>) -> CmdResult<FinDimAlgebra> {
    match read_input(arg)? {
        Some((text, d)) => {
            inputs.push(d);
            Ok(load_algebra(&text)?)
        }
        None => {
            let a = builtin(arg).map_err(|_| InputError(format!("{arg} is neither a file nor a builtin algebra")))?;
            inputs.push(digest(format!("builtin:{}", a.name()).as_bytes()));
            Ok(a)
        }
    }
}

fn collection_preset(name: &str) -> Option<SymmetricCollection> {
    match name {
        "com" => Some(SymmetricCollection::binary_one("com", false)),
        "lie" | "sign" => Some(SymmetricCollection::binary_one("lie", true)),
        "as" | "regular" => Some(SymmetricCollection::binary_regular("as")),
        _ => None,
    }
}

fn load_collection(arg: &str, inputs: &mut Vec<String>) -> CmdResult<SymmetricCollection> {
    match read_input(arg)? {
        Some((text, d)) => {
            inputs.push(d);
            Ok(parse_collection_json(&text)?)
        }
        None => {
            let v = collection_preset(arg)
                .ok_or_else(|| InputError(format!("{arg} is neither a file nor a preset collection (com, lie, as)")))?;
            inputs.push(digest(format!("builtin:{arg}").as_bytes()));
            Ok(v)
        }
    }
}

fn table(name: impl Into<String>, values: &impl std::fmt::Debug) -> Check {
    Check::info(name, format!("{values:?}"))
}

struct Outcome {
    checks: Vec<Check>,
    params: Value,
    /// Exit with code 2 when a check fails (input validation).
    input_check: bool,
}

impl Outcome {
    fn new(checks: Vec<Check>, params: Value) -> Self {
        Self {
            checks,
            params,
            input_check: false,
        }
    }
}

fn execute(cli: &Cli, inputs: &mut Vec<String>) -> CmdResult<Outcome> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Algebra(AlgebraCommand::Validate { file }) => {
            let spec = match read_input(file)? {
                Some((text, d)) => {
                    inputs.push(d);
                    parse_algebra_json(&text)?
                }
                None => load(file, inputs)?.to_spec(),
            };
            Outcome {
                checks: validate(&spec).checks,
                params: json!({ "file": file }),
                input_check: true,
            }
        }
        Command::Hh { file, max_degree, weight } => {
            let a = load(file, inputs)?;
            let dims = Hochschild::new(&a)?.hh_dims(*max_degree, *weight)?;
            let mut checks = vec![table(format!("HH_n(A,A) for n = 0..={max_degree}"), &dims.homology)];
            if let Some(co) = &dims.cohomology {
                checks.push(table(format!("HH^n(A,A) for n = 0..={max_degree}"), co));
            }
            Outcome::new(checks, json!({ "file": file, "max_degree": max_degree, "weight": weight }))
        }
        Command::Hc { file, variant, max_degree, trunc } => {
            let a = load(file, inputs)?;
            let kind: CyclicKind = variant.parse()?;
            let v = match kind {
                CyclicKind::Cyclic => CyclicVariant::cyclic(),
                _ if *trunc == 0 => return Err(InputError("--trunc must be at least 1".into())),
                CyclicKind::Negative => CyclicVariant::negative(*trunc),
                CyclicKind::Periodic => CyclicVariant::periodic(*trunc),
            };
            let hc = cyclic_homology(&a, v, 0, *max_degree as i64)?;
            let checks = vec![
                table(format!("{variant} homology for n = 0..={max_degree}"), &hc.dims),
                hc.stability_check("window stability"),
            ];
            let trunc = (kind != CyclicKind::Cyclic).then_some(*trunc);
            Outcome::new(
                checks,
                json!({ "file": file, "variant": variant, "max_degree": max_degree, "trunc": trunc }),
            )
        }
        Command::Verify(VerifyCommand::Identities(SampledArgs { file, samples })) => {
            let a = load(file, inputs)?;
            Outcome::new(identity_suite(&a, *samples, seed)?, json!({ "file": file, "samples": samples }))
        }
        Command::Verify(VerifyCommand::Cartan(SampledArgs { file, samples })) => {
            let a = load(file, inputs)?;
            Outcome::new(cartan_check(&a, *samples, seed)?, json!({ "file": file, "samples": samples }))
        }
        Command::Verify(VerifyCommand::Calculus { file, max_degree }) => {
            let a = load(file, inputs)?;
            let r = verify_calculus(&a, *max_degree)?;
            let mut checks = r.checks;
            checks.push(table(format!("HH^n(A,A) for n = 0..={max_degree}"), &r.cohomology_dims));
            checks.push(table(format!("HH_n(A,A) for n = 0..={max_degree}"), &r.homology_dims));
            Outcome::new(checks, json!({ "file": file, "max_degree": max_degree }))
        }
        Command::HomotopyT { file, window, pairs } => {
            let a = load(file, inputs)?;
            Outcome::new(
                homotopy_t_suite(&a, *window, *pairs, seed)?,
                json!({ "file": file, "window": window, "pairs": pairs }),
            )
        }
        Command::Kunneth { first, second, max_degree, trunc } => {
            let a = load(first, inputs)?;
            let c = load(second, inputs)?;
            let r = kunneth_certify(&a, &c, *max_degree, *trunc)?;
            let mut checks = r.checks;
            checks.push(table("H_n(C(A) ⊗ C(C))", &r.tensor_dims));
            checks.push(table("HH_n(A ⊗ C)", &r.hh_dims));
            if let (Some(t), Some(n)) = (&r.negative_tensor_dims, &r.negative_dims) {
                checks.push(table("negative cyclic of C(A) ⊗ C(C)", t));
                checks.push(table("negative cyclic of A ⊗ C", n));
            }
            Outcome::new(
                checks,
                json!({ "files": [first, second], "max_degree": max_degree, "trunc": trunc }),
            )
        }
        Command::Goodwillie { file, ideal, trunc, max_degree } => {
            let a = load(file, inputs)?;
            let idx = ideal
                .split(',')
                .map(|l| {
                    let l = l.trim();
                    a.index_of(l).ok_or_else(|| InputError(format!("unknown basis label '{l}'")))
                })
                .collect::<CmdResult<Vec<usize>>>()?;
            if *trunc == 0 {
                return Err(InputError("--trunc must be at least 1".into()));
            }
            let r = goodwillie_check(&a, &idx, *max_degree, *trunc)?;
            let mut checks = r.checks;
            checks.push(table("periodic dims of A", &r.dims_a.dims));
            checks.push(table("periodic dims of A/I", &r.dims_quotient.dims));
            Outcome::new(
                checks,
                json!({ "file": file, "ideal": ideal, "trunc": trunc, "max_degree": max_degree }),
            )
        }
        Command::Operad(OperadCommand::Free { genfile, arity }) => {
            let v = load_collection(genfile, inputs)?;
            if *arity == 0 || *arity > FREE_ARITY_BOUND {
                return Err(InputError(format!("--arity must lie in 1..={FREE_ARITY_BOUND}")));
            }
            let free = FreeOperad::new(v, *arity)?;
            let dims = (1..=*arity).map(|n| free.dim(n)).collect::<Result<Vec<_>>>()?;
            let axiom_arity = (*arity).min(4);
            let checks = vec![
                table(format!("dim FreeOp(V)(n) for n = 1..={arity}"), &dims),
                associativity_check(&free, axiom_arity, 20, seed)?,
                equivariance_check(&free, axiom_arity, 20, seed)?,
            ];
            Outcome::new(checks, json!({ "genfile": genfile, "arity": arity }))
        }
        Command::Operad(OperadCommand::BarCheck { genfile, max_vertices, max_arity, homology_arity }) => {
            let v = load_collection(genfile, inputs)?;
            if *max_arity < 2 || *max_arity > FREE_ARITY_BOUND {
                return Err(InputError(format!("--max-arity must lie in 2..={FREE_ARITY_BOUND}")));
            }
            let free = FreeOperad::new(v.clone(), *max_arity)?;
            let mut checks = bar_d_squared_check(&free, *max_vertices, *max_arity, seed)?;
            if *homology_arity >= 2 {
                let (reports, hc) = bar_homology_check(&v, *homology_arity)?;
                checks.extend(hc);
                for r in reports {
                    for w in r.by_weight {
                        checks.push(table(
                            format!("bar homology dims (arity {}, weight {})", r.arity, w.weight),
                            &w.homology_dims,
                        ));
                    }
                }
            }
            Outcome::new(
                checks,
                json!({
                    "genfile": genfile,
                    "max_vertices": max_vertices,
                    "max_arity": max_arity,
                    "homology_arity": homology_arity,
                }),
            )
        }
        Command::Operad(OperadCommand::Koszul { preset }) => {
            let p = preset_presentation(preset)?;
            inputs.push(digest(format!("builtin:{preset}").as_bytes()));
            let r = duality_report(&p)?;
            let mut checks = r.checks;
            checks.push(table("dims of P in arities 1..=3", &r.dims));
            checks.push(table("dims of the dual in arities 1..=3", &r.dual_dims));
            checks.push(table("relations of P and of the dual", &[r.relations, r.dual_relations]));
            Outcome::new(checks, json!({ "preset": preset }))
        }
        Command::Dk { n, max_degree } => {
            let r = dk_dims(*n, *max_degree)?;
            let mut checks = r.checks;
            checks.push(table(format!("dim t({n})_d for d = 1..={max_degree}"), &r.dims));
            checks.push(table(format!("dim U(t({n}))_d for d = 0..={max_degree}"), &r.enveloping_dims));
            Outcome::new(checks, json!({ "n": n, "max_degree": max_degree }))
        }
        Command::Zeta { order } => {
            let r = zeta_phi_check(*order)?;
            let mut checks = r.checks;
            for row in &r.rows {
                checks.push(Check::info(
                    format!("u^{} coefficient", row.power),
                    format!("{} (numeric {:e}, difference {:e})", row.exact, row.numeric, row.difference),
                ));
            }
            Outcome::new(checks, json!({ "order": order }))
        }
        Command::Moyal { pairs, degree, samples, hbar_max } => {
            let checks = moyal_checks(MoyalParams {
                pairs: *pairs,
                degree: *degree,
                hbar_max: *hbar_max,
                samples: *samples,
                seed,
            })?;
            Outcome::new(
                checks,
                json!({ "pairs": pairs, "degree": degree, "samples": samples, "hbar_max": hbar_max }),
            )
        }
    })
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Stable => "STABLE",
        Status::Unstable => "UNSTABLE",
        Status::Info => "INFO",
    }
}

fn render_text(r: &RunReport, code: i32) -> String {
    let mut out = format!("nccalc {}\n", r.command);
    for c in r.checks.iter().filter(|c| c.status == Status::Info) {
        out += &format!("  {}: {}\n", c.name, c.witness.as_deref().unwrap_or(""));
    }
    for c in r.checks.iter().filter(|c| c.status != Status::Info) {
        match &c.witness {
            Some(w) => out += &format!("{:<8} {}: {}\n", status_label(c.status), c.name, w),
            None => out += &format!("{:<8} {}\n", status_label(c.status), c.name),
        }
    }
    let verdict = match code {
        0 => "all checks pass",
        1 => "a check failed",
        _ => "input rejected",
    };
    out += &format!("{verdict}\n");
    out
}

fn exit_code(checks: &[Check], input_check: bool) -> i32 {
    match (all_pass(checks), input_check) {
        (true, _) => 0,
        (false, true) => 2,
        (false, false) => 1,
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code with the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let mut inputs = Vec::new();
    let outcome = match execute(&cli, &mut inputs) {
        Ok(o) => o,
        Err(InputError(msg)) => return (2, format!("error: {msg}\n")),
    };
    let mut checks = outcome.checks;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let code = exit_code(&checks, outcome.input_check);
    let report = RunReport {
        command,
        inputs,
        checks,
        params: outcome.params,
        elapsed_ms: if cli.timing { start.elapsed().as_millis() as u64 } else { 0 },
        seed: cli.seed,
    };
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        render_text(&report, code)
    };
    (code, text)
}
