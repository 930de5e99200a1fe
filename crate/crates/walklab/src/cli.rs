//! Argument parsing and dispatch for the `walklab` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use walklab_core::automata::{
    build_record_dfa, build_zero_dfa, hardcoded_fixture, to_dot, DigitDfa, Verdict,
};
use walklab_core::numeration::{Direction, OstrowskiBase};
use walklab_core::recurrences;
use walklab_core::substitution::{
    fixed_point, golden_substitution, noble_substitution, return_map_empirical, sample_points,
    word_to_string, Letter, Substitution,
};
use walklab_core::walk::{ab_until, fast_s, records, zeros, DiffStream, DiscrepancyStream, WalkSpec};
use walklab_core::{ContinuedFraction, QuadraticSurd};

use crate::formats::{Format, Sequence};
use crate::verify::{run_suite, Options, Scale, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable that overrides `verify --scale`.
pub const SCALE_VAR: &str = "WALKLAB_SCALE";

#[derive(Debug, Parser)]
#[command(name = "walklab", version, about = "Deterministic walks driven by irrational rotations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Indices of forward or backward steps, or their difference b(n) - a(n).
    Seq(SeqArgs),
    /// Partial sums S_1..S_n, or a single S_n for BR walks.
    Walk(WalkArgs),
    /// Record indices (or values) up to n.
    Records(RecordArgs),
    /// Zeros up to n, starting with 0.
    Zeros(BoundArgs),
    /// Ostrowski digits of integers.
    Encode(EncodeArgs),
    /// Integers from Ostrowski digits.
    Decode(DecodeArgs),
    /// Build, render and run digit automata.
    Dfa(DfaArgs),
    /// Substitutions, their fixed points and return maps.
    Subst(SubstArgs),
    /// Terms of the record recurrences.
    Recur(RecurArgs),
    /// k times the discrepancy D_n of [0, h/k) under rotation by xi.
    Discrepancy(DiscrepancyArgs),
    /// Run the numbered acceptance checks.
    Verify(VerifyArgs),
}

fn parse_surd(text: &str) -> Result<QuadraticSurd, String> {
    text.parse().map_err(|e: walklab_core::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct ThetaArg {
    /// Walk angle, e.g. 2sqrt2 or (0+2*sqrt(2))/1.
    #[arg(long, value_parser = parse_surd)]
    pub theta: QuadraticSurd,
}

#[derive(Debug, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    A,
    B,
    Diff,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub theta: ThetaArg,
    #[arg(long, value_enum, default_value = "a")]
    pub which: Which,
    /// Number of terms.
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    #[command(flatten)]
    pub theta: ThetaArg,
    /// Walk length.
    #[arg(long, required_unless_present = "at")]
    pub n: Option<u64>,
    /// Print only S_at, computed without walking (BR walks only).
    #[arg(long, conflicts_with = "n")]
    pub at: Option<u64>,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub theta: ThetaArg,
    /// Largest index considered.
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct RecordArgs {
    #[command(flatten)]
    pub bound: BoundArgs,
    /// Emit the record values instead of their indices.
    #[arg(long)]
    pub values: bool,
}

#[derive(Debug, Args)]
pub struct BaseArgs {
    /// Rotation number whose convergent denominators are the place values.
    #[arg(long, value_parser = parse_surd)]
    pub base: QuadraticSurd,
    /// Least significant digit first.
    #[arg(long, conflicts_with = "msd")]
    pub lsd: bool,
    /// Most significant digit first (the default).
    #[arg(long)]
    pub msd: bool,
}

impl BaseArgs {
    fn direction(&self) -> Direction {
        if self.lsd {
            Direction::Lsd
        } else {
            Direction::Msd
        }
    }

    fn ostrowski(&self) -> Result<OstrowskiBase, Failure> {
        let xi = self.base.fract();
        Ok(OstrowskiBase::new(&ContinuedFraction::expand(&xi)))
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(required = true)]
    pub numbers: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// Digit strings; use commas between digits above 9, `ε` or "" for zero.
    #[arg(required = true)]
    pub words: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DfaKind {
    Zeros,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DfaOut {
    Dot,
    Table,
}

#[derive(Debug, Args)]
pub struct DfaArgs {
    #[command(subcommand)]
    pub action: DfaAction,
}

#[derive(Debug, Subcommand)]
pub enum DfaAction {
    /// Build the zero or record automaton of a BR base.
    Build {
        #[arg(long, value_enum)]
        kind: DfaKind,
        #[arg(long, value_parser = parse_surd)]
        base: QuadraticSurd,
        #[arg(long, value_enum, default_value = "dot")]
        out: DfaOut,
    },
    /// Print one of the hand-written automata.
    Fixture {
        name: String,
        #[arg(long, value_enum, default_value = "dot")]
        out: DfaOut,
    },
    /// Run words through a built automaton.
    Run {
        #[arg(long, value_enum)]
        kind: DfaKind,
        #[command(flatten)]
        base: BaseArgs,
        #[arg(required = true)]
        words: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    /// The images of a, b and c.
    Sigma,
    /// Letters of the fixed point from a.
    Fixedpoint,
    /// The fixed point under the 0/1 coding.
    Coded,
    /// Return times and itineraries of sample points.
    Returns,
}

#[derive(Debug, Args)]
pub struct SubstArgs {
    /// Even noble-mean index, or 1 for the golden-mean construction.
    #[arg(long)]
    pub m: u64,
    #[arg(long, value_enum, default_value = "sigma")]
    pub emit: Emit,
    /// Prefix length for fixedpoint and coded.
    #[arg(long, default_value_t = 100)]
    pub len: usize,
    /// Number of sample points for returns.
    #[arg(long, default_value_t = 10)]
    pub points: u64,
}

#[derive(Debug, Args)]
pub struct RecurArgs {
    /// lune, kotesovecA, kotesovecB, halfpell or sqrt3.
    #[arg(long)]
    pub name: String,
    /// Number of terms.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Debug, Args)]
pub struct DiscrepancyArgs {
    /// Rotation number.
    #[arg(long, value_parser = parse_surd)]
    pub xi: QuadraticSurd,
    #[arg(long, default_value_t = 1)]
    pub h: u64,
    #[arg(long, default_value_t = 2)]
    pub k: u64,
    #[arg(long)]
    pub n: u64,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Plain,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Overridden by the WALKLAB_SCALE environment variable when set.
    #[arg(long, value_enum, default_value = "quick")]
    pub scale: Scale,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: ReportFormat,
    /// Include wall-clock times (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
    /// Corrupt a hand-written automaton to exercise the failure path.
    #[arg(long, hide = true)]
    pub tamper: bool,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<walklab_core::Error> for Failure {
    fn from(e: walklab_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let env_scale = std::env::var(SCALE_VAR).ok();
    match execute(cli.command, env_scale.as_deref()) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_CHECK_FAILED
        }
    }
}

/// Runs one command and returns its output with the exit status.
pub fn execute(command: Command, env_scale: Option<&str>) -> Result<(String, i32), Failure> {
    let text = match command {
        Command::Seq(a) => seq(a)?,
        Command::Walk(a) => walk(a)?,
        Command::Records(a) => record_list(a)?,
        Command::Zeros(a) => {
            let spec = WalkSpec::new(a.theta.theta)?;
            Sequence::new("zeros", 1, zeros(&spec, a.n)).render(a.format.format)
        }
        Command::Encode(a) => {
            let b = a.base.ostrowski()?;
            let mut s = String::new();
            for n in a.numbers {
                let _ = writeln!(s, "{}", b.format(&b.encode(n), a.base.direction()));
            }
            s
        }
        Command::Decode(a) => {
            let b = a.base.ostrowski()?;
            let mut s = String::new();
            for w in &a.words {
                let word = b.parse(w, a.base.direction())?;
                let _ = writeln!(s, "{}", b.decode(&word)?);
            }
            s
        }
        Command::Dfa(a) => dfa(a.action)?,
        Command::Subst(a) => subst(a)?,
        Command::Recur(a) => {
            let seq = recurrences::by_name(&a.name, a.n)
                .ok_or_else(|| Failure::Usage(format!("unknown recurrence {:?}", a.name)))?;
            Sequence::new(seq.name, seq.offset as i64, &seq.terms).render(a.format.format)
        }
        Command::Discrepancy(a) => {
            let stream = DiscrepancyStream::new(&a.xi.fract(), a.h, a.k)?;
            let values = stream.take(a.n as usize).map(|(_, d)| d);
            Sequence::new("kD", 1, values).render(a.format.format)
        }
        Command::Verify(a) => return verify(a, env_scale),
    };
    Ok((text, EXIT_OK))
}

fn seq(a: SeqArgs) -> Result<String, Failure> {
    let spec = WalkSpec::new(a.theta.theta)?;
    let n = a.n as usize;
    let seq = match a.which {
        Which::A => Sequence::new("a", 1, ab_until(&spec, n).a.into_iter().take(n)),
        Which::B => Sequence::new("b", 1, ab_until(&spec, n).b.into_iter().take(n)),
        Which::Diff => Sequence::new("b-a", 1, DiffStream::new(&spec).take(n).map(|(_, d)| d)),
    };
    Ok(seq.render(a.format.format))
}

fn walk(a: WalkArgs) -> Result<String, Failure> {
    let spec = WalkSpec::new(a.theta.theta)?;
    if let Some(at) = a.at {
        return Ok(format!("{}\n", fast_s(&spec, at)?));
    }
    let n = a.n.unwrap_or(0) as usize;
    Ok(Sequence::new("S", 1, spec.sums().take(n).map(|(_, s)| s)).render(a.format.format))
}

fn record_list(a: RecordArgs) -> Result<String, Failure> {
    let spec = WalkSpec::new(a.bound.theta.theta)?;
    let recs = records(&spec, a.bound.n);
    let seq = if a.values {
        Sequence::new("record values", 1, recs.iter().skip(1).map(|r| r.value))
    } else {
        Sequence::new("records", 1, recs.iter().skip(1).map(|r| r.index))
    };
    Ok(seq.render(a.bound.format.format))
}

fn built(kind: DfaKind, base: &QuadraticSurd) -> Result<DigitDfa, Failure> {
    let cf = ContinuedFraction::expand(&base.fract());
    Ok(match kind {
        DfaKind::Zeros => build_zero_dfa(&cf)?,
        DfaKind::Records => build_record_dfa(&cf)?,
    })
}

/// One line per state: `state accept|reject t_0 t_1 …`, after a header.
pub fn dfa_table(dfa: &DigitDfa) -> String {
    let mut s = String::new();
    let dir = match dfa.direction() {
        Direction::Lsd => "lsd",
        Direction::Msd => "msd",
    };
    let _ = writeln!(
        s,
        "# states {} alphabet {} start {} dead {} {dir}",
        dfa.state_count(),
        dfa.alphabet(),
        dfa.start(),
        dfa.dead()
    );
    for st in 0..dfa.state_count() as u32 {
        let mark = if dfa.is_accepting(st) { "accept" } else { "reject" };
        let targets: Vec<String> = (0..dfa.alphabet()).map(|d| dfa.step(st, d).to_string()).collect();
        let _ = writeln!(s, "{st} {mark} {}", targets.join(" "));
    }
    s
}

fn render_dfa(dfa: &DigitDfa, out: DfaOut) -> String {
    match out {
        DfaOut::Dot => to_dot(dfa),
        DfaOut::Table => dfa_table(dfa),
    }
}

fn dfa(action: DfaAction) -> Result<String, Failure> {
    match action {
        DfaAction::Build { kind, base, out } => Ok(render_dfa(&built(kind, &base)?, out)),
        DfaAction::Fixture { name, out } => Ok(render_dfa(&hardcoded_fixture(&name)?.dfa, out)),
        DfaAction::Run { kind, base, words } => {
            let machine = built(kind, &base.base)?;
            let b = base.ostrowski()?;
            let mut s = String::new();
            for w in &words {
                let word = walklab_core::numeration::parse_digits(w, base.direction())?;
                let verdict = match machine.run_word(&word)? {
                    Verdict::Accept => "accept",
                    Verdict::Reject => "reject",
                    Verdict::Invalid => "invalid",
                };
                let value = b
                    .decode(&word)
                    .map_or_else(|_| "-".to_string(), |n| n.to_string());
                let _ = writeln!(s, "{w} {value} {verdict}");
            }
            Ok(s)
        }
    }
}

fn substitution_for(m: u64) -> Result<Substitution, Failure> {
    if m == 1 {
        Ok(golden_substitution())
    } else {
        Ok(noble_substitution(m)?)
    }
}

fn subst(a: SubstArgs) -> Result<String, Failure> {
    let sub = substitution_for(a.m)?;
    let mut s = String::new();
    match a.emit {
        Emit::Sigma => {
            for l in Letter::ALL {
                let _ = writeln!(s, "{l} -> {}", word_to_string(sub.image(l)));
            }
        }
        Emit::Fixedpoint => {
            let _ = writeln!(s, "{}", word_to_string(&fixed_point(&sub, Letter::A, a.len)?));
        }
        Emit::Coded => {
            let coded: String = fixed_point(&sub, Letter::A, a.len)?
                .iter()
                .map(|&l| char::from(b'0' + sub.code(l)))
                .collect();
            let _ = writeln!(s, "{coded}");
        }
        Emit::Returns => {
            let points = sample_points(&sub, a.points)?;
            for r in return_map_empirical(&sub, &points, 100_000)? {
                let _ = writeln!(
                    s,
                    "{} {} {} {}",
                    r.label,
                    r.return_time,
                    word_to_string(&r.itinerary),
                    r.point
                );
            }
        }
    }
    Ok(s)
}

fn verify(a: VerifyArgs, env_scale: Option<&str>) -> Result<(String, i32), Failure> {
    let scale = match env_scale {
        Some(text) if !text.trim().is_empty() => Scale::parse(text)
            .ok_or_else(|| Failure::Usage(format!("{SCALE_VAR}={text:?} is not quick or full")))?,
        _ => a.scale,
    };
    let report = run_suite(
        a.suite,
        &Options {
            scale,
            tamper: a.tamper,
        },
    );
    let text = match a.format {
        ReportFormat::Plain => report.render_plain(a.timings),
        ReportFormat::Json => report.render_json(a.timings),
    };
    Ok((text, report.exit_code()))
}
