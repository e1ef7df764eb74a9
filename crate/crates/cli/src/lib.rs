//! Command dispatch for the `rainbow` binary.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! with everything that would go to stdout and stderr, so the binary and the
//! tests share one code path.
//!
//! Exit codes: 0 success, 1 usage or input error (including refused
//! workloads), 2 no rainbow matching found, 3 solver precondition violated,
//! 4 theorem-derived assertion failed (stderr carries the instance).

use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rainbow_core::extremal::{ekr_star, r3_counterexample, star_family, steal_family, f_r2, g_value};
use rainbow_core::format::{
    matching_text, parse_instance, serialize_instance, Instance, ResultDoc, ShiftLogDoc, TraceDoc,
};
use rainbow_core::oracle::{nu_exact, rainbow_exact};
use rainbow_core::shifting::{shifted_closure, ShiftMode};
use rainbow_core::solvers::{
    check_hall_condition, greedy_bipartite, hall_size_algorithm, large_n_procedure, meshulam_r2, r3_solve,
    simple_algorithm, Outcome,
};
use rainbow_core::verify::{
    check_conjecture, compute_threshold_exact, large_n_scan, ConjectureId, ConjectureParams, ExactThresholdMode,
    SearchMode,
};
use rainbow_core::{Error, Family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "rainbow", version, about = "Rainbow matchings in hypergraph families")]
struct Cli {
    /// Worker threads for parallel commands (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Hall,
    Greedy,
    Meshulam,
    R3,
    Simple,
    LargeN,
    Oracle,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Hall => "hall",
            Algorithm::Greedy => "greedy",
            Algorithm::Meshulam => "meshulam",
            Algorithm::R3 => "r3",
            Algorithm::Simple => "simple",
            Algorithm::LargeN => "large-n",
            Algorithm::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    Star,
    Steal,
    R3counter,
    Ekr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Threshold {
    #[value(name = "f_r2_general")]
    FR2General,
    GPartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Conjecture {
    RainbowGeneral,
    SizeCondition,
    DegreeCondition,
    Simple,
    Matrix,
}

impl From<Conjecture> for ConjectureId {
    fn from(c: Conjecture) -> Self {
        match c {
            Conjecture::RainbowGeneral => ConjectureId::RainbowGeneral,
            Conjecture::SizeCondition => ConjectureId::SizeCondition,
            Conjecture::DegreeCondition => ConjectureId::DegreeCondition,
            Conjecture::Simple => ConjectureId::Simple,
            Conjecture::Matrix => ConjectureId::Matrix,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find a rainbow matching with the chosen algorithm.
    Solve {
        /// Instance file, or `-` for stdin.
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Algorithm::Oracle)]
        algorithm: Algorithm,
    },
    /// Shift every member to its shifted closure and print the log.
    Shift {
        #[arg(long)]
        input: String,
    },
    /// Matching number of each member.
    Nu {
        #[arg(long)]
        input: String,
    },
    /// Check the Hall-type size condition of a bipartite family.
    Check {
        #[arg(long)]
        input: String,
    },
    /// Emit a named construction as an instance.
    Extremal {
        #[arg(long, value_enum)]
        name: Construction,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        q: usize,
    },
    /// Check a conjecture, compute an exact threshold, or scan the large-n procedure.
    Verify {
        #[arg(long, value_enum, conflicts_with_all = ["threshold", "scan"])]
        conjecture: Option<Conjecture>,
        #[arg(long, value_enum, conflicts_with = "scan")]
        threshold: Option<Threshold>,
        /// Run the large-n procedure for n up to --n over --rs x --ks.
        #[arg(long)]
        scan: bool,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
        rs: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3])]
        ks: Vec<usize>,
    },
    /// Step log of the longest-edge algorithm.
    Trace {
        #[arg(long, value_enum, required_unless_present = "input")]
        name: Option<TraceName>,
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, conflicts_with = "name")]
        input: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TraceName {
    Steal,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(code: i32, stdout: String) -> Self {
        RunOutput { code, stdout, stderr: String::new() }
    }
}

struct Failure {
    error: Error,
    instance: Option<Family>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, instance: None }
    }
}

type CmdResult = std::result::Result<RunOutput, Failure>;

/// Runs one command. `args[0]` is the program name; `stdin` backs `--input -`.
pub fn run<I, T>(args: I, stdin: &mut (dyn Read + Send)) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                RunOutput::ok(EXIT_OK, text)
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: "--workers must be at least 1\n".into() };
        }
        builder = builder.num_threads(w);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return RunOutput { code: EXIT_USAGE, stdout: String::new(), stderr: format!("thread pool: {e}\n") },
    };
    match pool.install(|| dispatch(&cli, stdin)) {
        Ok(out) => out,
        Err(Failure { error, instance }) => {
            let code = match error {
                Error::InvalidInput(_) | Error::Refused(_) => EXIT_USAGE,
                Error::Precondition(_) => EXIT_PRECONDITION,
                Error::TheoremViolation(_) => EXIT_VIOLATION,
            };
            let mut stderr = format!("error: {error}\n");
            if let Some(f) = instance {
                let _ = writeln!(stderr, "instance: {}", serialize_instance(&f));
            }
            RunOutput { code, stdout: String::new(), stderr }
        }
    }
}

fn read_input(path: &str, stdin: &mut (dyn Read + Send)) -> rainbow_core::Result<Family> {
    let text = if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(|e| Error::InvalidInput(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("reading {path}: {e}")))?
    };
    parse_instance(&text)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Attaches the instance to theorem violations so it lands in the dump.
fn with_instance<T>(r: rainbow_core::Result<T>, f: &Family) -> std::result::Result<T, Failure> {
    r.map_err(|error| {
        let instance = matches!(error, Error::TheoremViolation(_)).then(|| f.clone());
        Failure { error, instance }
    })
}

fn dispatch(cli: &Cli, stdin: &mut (dyn Read + Send)) -> CmdResult {
    let format = cli.format;
    match &cli.command {
        Command::Solve { input, algorithm } => {
            let f = read_input(input, stdin)?;
            solve(&f, *algorithm, format)
        }
        Command::Shift { input } => {
            let f = read_input(input, stdin)?;
            let (shifted, log) = shifted_closure(&f, ShiftMode::for_ground(f.ground()))?;
            let doc = ShiftOutput { instance: Instance::from_family(&shifted), log: ShiftLogDoc::from_log(&log) };
            let text = match format {
                Format::Json => json(&doc),
                Format::Text => format!(
                    "{}\nsizes: {:?}\nshift steps: {}, edges moved: {}\n",
                    serialize_instance(&shifted),
                    shifted.sizes(),
                    log.len(),
                    log.moves()
                ),
            };
            Ok(RunOutput::ok(EXIT_OK, text))
        }
        Command::Nu { input } => {
            let f = read_input(input, stdin)?;
            let nus: Vec<usize> = f.members().iter().map(nu_exact).collect();
            let text = match format {
                Format::Json => json(&nus),
                Format::Text => nus.iter().enumerate().map(|(i, v)| format!("F_{}: nu={v}\n", i + 1)).collect(),
            };
            Ok(RunOutput::ok(EXIT_OK, text))
        }
        Command::Check { input } => {
            let f = read_input(input, stdin)?;
            let check = check_hall_condition(&f)?;
            let witness = check.witness.as_ref().map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>());
            let text = match format {
                Format::Json => json(&serde_json::json!({ "holds": check.holds, "witness": witness })),
                Format::Text => match &witness {
                    None => "Hall-type size condition holds\n".to_string(),
                    Some(w) => format!("Hall-type size condition fails on I = {w:?}\n"),
                },
            };
            Ok(RunOutput::ok(if check.holds { EXIT_OK } else { EXIT_PRECONDITION }, text))
        }
        Command::Extremal { name, n, r, k, q } => {
            let f = match name {
                Construction::Star => star_family(*n, *r, *k)?,
                Construction::Steal => steal_family(*q, *n)?,
                Construction::R3counter => r3_counterexample(*n)?,
                Construction::Ekr => Family::new(vec![ekr_star(*n, *r)?])?,
            };
            let text = match format {
                Format::Json => json(&Instance::from_family(&f)),
                Format::Text => format!("{}\n", serialize_instance(&f)),
            };
            Ok(RunOutput::ok(EXIT_OK, text))
        }
        Command::Verify { conjecture, threshold, scan, n, r, k, d, mode, trials, seed, rs, ks } => {
            if let Some(c) = conjecture {
                let mode = match mode {
                    Mode::Exhaustive => SearchMode::Exhaustive,
                    Mode::Random => SearchMode::Random,
                };
                let params = ConjectureParams { n: *n, r: *r, k: *k, d: *d };
                let report = check_conjecture((*c).into(), params, mode, *trials, *seed)?;
                let text = match format {
                    Format::Json => json(&report),
                    Format::Text => {
                        let mut s = format!(
                            "conjecture={} n={} r={} k={}{} mode={} instances={} counterexamples={}\n",
                            report.conjecture.name(),
                            n,
                            r,
                            k,
                            d.map(|d| format!(" d={d}")).unwrap_or_default(),
                            serde_json::to_value(report.mode).expect("mode").as_str().unwrap_or(""),
                            report.instances_checked,
                            report.counterexample_count
                        );
                        for inst in &report.counterexamples {
                            let _ = writeln!(s, "counterexample: {}", serde_json::to_string(inst).expect("instance"));
                        }
                        s
                    }
                };
                Ok(RunOutput::ok(EXIT_OK, text))
            } else if let Some(t) = threshold {
                let (mode, formula) = match t {
                    Threshold::FR2General => (ExactThresholdMode::FR2General, f_r2(*n, *k)?),
                    Threshold::GPartite => (ExactThresholdMode::GPartite, g_value(*n, *r, *k)),
                };
                let exact = compute_threshold_exact(mode, *n, *r, *k)?;
                let text = match format {
                    Format::Json => json(&serde_json::json!({
                        "threshold": mode, "n": n, "r": r, "k": k, "exact": exact, "formula": formula,
                    })),
                    Format::Text => {
                        let label = if *t == Threshold::FR2General { "f" } else { "g" };
                        format!("{label}({n},{r},{k}) exact={exact} formula={formula}\n")
                    }
                };
                if exact != formula {
                    return Err(Failure {
                        error: Error::TheoremViolation(format!("exact threshold {exact} differs from formula {formula}")),
                        instance: None,
                    });
                }
                Ok(RunOutput::ok(EXIT_OK, text))
            } else if *scan {
                let (points, summary) = large_n_scan(rs, ks, *n, *trials, *seed)?;
                let text = match format {
                    Format::Json => json(&serde_json::json!({ "points": points, "summary": summary })),
                    Format::Text => {
                        let mut s = String::new();
                        for p in &points {
                            let _ = writeln!(s, "r={} k={} n={} success={}/{}", p.r, p.k, p.n, p.successes, p.trials);
                        }
                        for row in &summary {
                            let n0 = row.empirical_n0.map_or("none".to_string(), |v| v.to_string());
                            let _ = writeln!(s, "r={} k={} empirical n0={n0}", row.r, row.k);
                        }
                        s
                    }
                };
                Ok(RunOutput::ok(EXIT_OK, text))
            } else {
                Err(Error::InvalidInput("verify needs one of --conjecture, --threshold, --scan".into()).into())
            }
        }
        Command::Trace { name, q, n, input } => {
            let f = match (name, input) {
                (Some(TraceName::Steal), _) => steal_family(*q, *n)?,
                (None, Some(path)) => read_input(path, stdin)?,
                (None, None) => return Err(Error::InvalidInput("trace needs --name or --input".into()).into()),
            };
            let trace = with_instance(hall_size_algorithm(&f), &f)?;
            if let Some(m) = trace.matching() {
                with_instance(m.validate(&f).map_err(|e| Error::TheoremViolation(format!("trace output invalid: {e}"))), &f)?;
            }
            let text = match format {
                Format::Json => json(&TraceDoc::from_trace(&trace)),
                Format::Text => trace.to_text(),
            };
            Ok(RunOutput::ok(if trace.succeeded() { EXIT_OK } else { EXIT_NOT_FOUND }, text))
        }
    }
}

#[derive(Serialize)]
struct ShiftOutput {
    instance: Instance,
    log: ShiftLogDoc,
}

fn solve(f: &Family, algorithm: Algorithm, format: Format) -> CmdResult {
    let outcome = match algorithm {
        Algorithm::Hall => {
            let trace = with_instance(hall_size_algorithm(f), f)?;
            match trace.matching() {
                Some(m) => Outcome::Found(m.clone()),
                None => Outcome::NotFound { reason: "the longest-edge algorithm halted".into() },
            }
        }
        Algorithm::Greedy => with_instance(greedy_bipartite(f), f)?,
        Algorithm::Meshulam => Outcome::Found(with_instance(meshulam_r2(f), f)?),
        Algorithm::R3 => Outcome::Found(with_instance(r3_solve(f), f)?),
        Algorithm::Simple => Outcome::Found(with_instance(simple_algorithm(f), f)?),
        Algorithm::LargeN => with_instance(large_n_procedure(f), f)?,
        Algorithm::Oracle => match rainbow_exact(f) {
            Some(m) => Outcome::Found(m),
            None => Outcome::NotFound { reason: "exhaustive search".into() },
        },
    };
    if let Outcome::Found(m) = &outcome {
        with_instance(m.validate(f).map_err(|e| Error::TheoremViolation(format!("solver output invalid: {e}"))), f)?;
    }
    Ok(emit_result(f, algorithm.name(), &outcome, format))
}

/// Renders a solver outcome; found matchings exit 0, others exit 2.
fn emit_result(f: &Family, algorithm: &str, outcome: &Outcome, format: Format) -> RunOutput {
    match outcome {
        Outcome::Found(m) => {
            let text = match format {
                Format::Json => json(&ResultDoc::found(algorithm, m)),
                Format::Text => matching_text(f.ground(), m),
            };
            RunOutput::ok(EXIT_OK, text)
        }
        Outcome::NotFound { reason } => {
            let text = match format {
                Format::Json => json(&ResultDoc::not_found(algorithm, reason)),
                Format::Text => format!("no rainbow matching ({reason})\n"),
            };
            RunOutput::ok(EXIT_NOT_FOUND, text)
        }
    }
}
