//! Command-line front end. `run` is the whole program minus process setup,
//! so tests can drive it in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{self, KTable, Quantity, TableOptions};
use crate::error::{Error, Guard, Result};
use crate::forbidden::{
    code_from_parity, direct_sum, exact_k_d2, forbidden_coset_partition, greedy_forbidden_matrix,
    ForbiddenLinearCode,
};
use crate::gf2::BinaryLinearCode;
use crate::oracle;
use crate::partition::{self, ColoringCertificate, ColoringMode, HypercubePartition};
use crate::verify::{verify_coloring, Strategy};
use crate::z4::{self, Z4LinearCode};

#[derive(Debug, Parser)]
#[command(name = "hychroma", version, about = "Distance colorings of the binary hypercube")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a coloring certificate and verify it before writing.
    Construct(ConstructArgs),
    /// Check a certificate file. Exit 0 on pass, 1 on violation, 2 on bad input.
    Verify(VerifyArgs),
    /// Tabulate lower and upper bounds.
    Bounds(BoundsArgs),
    /// Inspect and generate codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Exhaustive small-case oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    PreparataCoset,
    PreparataPunctured,
    LinearCoset,
    ForbiddenGreedy,
    ForbiddenDirectsum,
    Product,
    Parity,
}

#[derive(Debug, Args)]
pub struct CodeSource {
    /// Code file (`code n= k=` or `z4code n= k1= k2=`).
    #[arg(long, conflicts_with = "builtin")]
    pub code: Option<PathBuf>,
    /// hamming:<r>, golay23, repetition:<n>, preparata:<r>, kerdock:<r>.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Preparata parameter (odd, >= 3).
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<u32>,
    #[command(flatten)]
    pub source: CodeSource,
    /// Length of the forbidden-distance factor for `product`.
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Bypass exhaustive-size guards.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
    #[arg(long, default_value = "auto")]
    pub strategy: Strategy,
    #[arg(long, value_enum, default_value = "text")]
    pub report_format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// chi (exactly d) or chi_prime (at most d).
    #[arg(long)]
    pub quantity: Quantity,
    #[arg(long)]
    pub d: u32,
    /// Lengths: single values or ranges like 2..20 (inclusive).
    #[arg(long, num_args = 1.., required = true)]
    pub n: Vec<String>,
    /// Extra k(n,d) entries as `n,d,k,source` CSV.
    #[arg(long)]
    pub k_table: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
    /// Build and verify the constructions behind constructive bounds.
    #[arg(long)]
    pub verify_witnesses: bool,
    /// Run the exhaustive coloring oracle up to this length.
    #[arg(long, default_value_t = 0)]
    pub oracle_max_n: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CodeCommand {
    /// Print a code in the text format.
    Show(CodeSource),
    /// Parameters and weight distribution.
    Info {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        force: bool,
    },
    /// Greedy code with no word of weight d.
    Greedy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Direct sum of a code with V_(d-1); validated by a codeword scan.
    DirectSum {
        #[command(flatten)]
        source: CodeSource,
        #[arg(long)]
        d: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Atmost,
    Exact,
}

impl From<ModeArg> for ColoringMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Atmost => ColoringMode::AtMostD,
            ModeArg::Exact => ColoringMode::ExactD,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Minimum number of colors.
    Chi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// A(n, d): largest code with minimum distance d.
    A {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// Q(n, d): largest code with no two words at distance d.
    Q {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// Largest linear dimension with no word of weight d.
    KForbidden {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// Gray isometry and carry identity checks.
    Gray {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        exhaustive_n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
}

/// Exit status for an error: 1 when a construction or verification step
/// failed, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Construction(_) | Error::Integrity(_) => 1,
        _ => 2,
    }
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Construct(a) => construct(a, stdout, stderr),
        Command::Verify(a) => verify(a, stdout, stderr),
        Command::Bounds(a) => bounds_cmd(a, stdout),
        Command::Code(c) => code_cmd(c, stdout),
        Command::Oracle(o) => oracle_cmd(o, stdout),
    }
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

enum AnyCode {
    Binary(BinaryLinearCode),
    Z4(Z4LinearCode),
}

fn parse_builtin(spec: &str) -> Result<AnyCode> {
    let (name, arg) = match spec.split_once(':') {
        Some((name, arg)) => {
            let v: u32 = arg
                .parse()
                .map_err(|_| Error::usage(format!("bad parameter in `{spec}`")))?;
            (name, Some(v))
        }
        None => (spec, None),
    };
    let need = |a: Option<u32>| a.ok_or_else(|| Error::usage(format!("`{name}` needs a parameter, e.g. {name}:3")));
    Ok(match name {
        "hamming" => AnyCode::Binary(BinaryLinearCode::hamming(need(arg)? as usize)?),
        "golay23" => AnyCode::Binary(BinaryLinearCode::golay23()),
        "repetition" => AnyCode::Binary(BinaryLinearCode::repetition(need(arg)? as usize)?),
        "preparata" => AnyCode::Z4(z4::preparata_code(need(arg)?)?),
        "kerdock" => AnyCode::Z4(z4::kerdock_code(need(arg)?)?),
        _ => return Err(Error::usage(format!("unknown builtin code `{spec}`"))),
    })
}

fn load_code(src: &CodeSource) -> Result<AnyCode> {
    match (&src.code, &src.builtin) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)?;
            if text.trim_start().starts_with("z4code") {
                Ok(AnyCode::Z4(Z4LinearCode::from_text(&text)?))
            } else {
                Ok(AnyCode::Binary(BinaryLinearCode::from_text(&text)?))
            }
        }
        (None, Some(spec)) => parse_builtin(spec),
        (None, None) => Err(Error::usage("give --code PATH or --builtin NAME")),
    }
}

fn load_binary(src: &CodeSource) -> Result<BinaryLinearCode> {
    match load_code(src)? {
        AnyCode::Binary(c) => Ok(c),
        AnyCode::Z4(_) => Err(Error::usage("this method needs a binary code")),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::usage(format!("--{flag} is required for this method")))
}

fn forbidden_partition(n: usize, d: u32, guard: Guard) -> Result<HypercubePartition> {
    let code = if (d as usize) > n {
        ForbiddenLinearCode::full_space(n, d)?
    } else {
        code_from_parity(&greedy_forbidden_matrix(n, d, guard)?, d, guard)?
    };
    forbidden_coset_partition(&code, guard)
}

fn build_certificate(a: &ConstructArgs, guard: Guard) -> Result<ColoringCertificate> {
    let from = |p: HypercubePartition| partition::partition_to_coloring(&p);
    Ok(match a.method {
        Method::PreparataCoset => {
            let r = a.r.unwrap_or(3);
            from(partition::z4_coset_partition(&z4::preparata_code(r)?, guard)?)?
                .with_provenance(format!("preparata r={r} coset"))
        }
        Method::PreparataPunctured => {
            let r = a.r.unwrap_or(3);
            from(partition::z4_punctured_partition(&z4::preparata_code(r)?, guard)?)?
                .with_provenance(format!("preparata r={r} punctured"))
        }
        Method::LinearCoset => {
            let code = load_binary(&a.source)?;
            from(partition::from_binary_linear(&code, need(a.d, "d")?, guard)?)?
        }
        Method::ForbiddenGreedy => from(forbidden_partition(need(a.n, "n")?, need(a.d, "d")?, guard)?)?,
        Method::ForbiddenDirectsum => {
            let d = need(a.d, "d")?;
            let first = load_binary(&a.source)?;
            let tail = ForbiddenLinearCode::full_space(d.saturating_sub(1) as usize, d)?;
            let code = direct_sum(&first, &tail, guard)?;
            from(forbidden_coset_partition(&code, guard)?)?
        }
        Method::Product => {
            let d = need(a.d, "d")?;
            let first = partition::from_binary_linear(&load_binary(&a.source)?, d, guard)?;
            let second = forbidden_partition(need(a.n2, "n2")?, d, guard)?;
            from(partition::product_partition(&first, &second)?)?
        }
        Method::Parity => partition::parity_coloring(need(a.n, "n")?, need(a.d, "d")?)?,
    })
}

fn construct(a: ConstructArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let guard = Guard::from_force(a.force);
    let cert = build_certificate(&a, guard)?;
    let report = verify_coloring(&cert, Strategy::Auto, guard)?;
    if !report.passed {
        writeln!(stderr, "internal verification failed: {}", report.summary())?;
        return Ok(1);
    }
    emit(a.output.as_deref(), &cert.to_text(), stdout)?;
    writeln!(
        stderr,
        "certificate n={} d={} mode={} colors={} ({}; verified, {} strategy)",
        cert.n(),
        cert.d(),
        cert.mode().as_str(),
        cert.color_count(),
        cert.provenance(),
        report.strategy
    )?;
    Ok(0)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(&a.path)?;
    let cert = ColoringCertificate::from_text(&text)?;
    let report = verify_coloring(&cert, a.strategy, Guard::from_force(a.force))?;
    let rendered = match a.report_format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Csv => report.to_csv()?,
    };
    emit(a.report.as_deref(), &rendered, stdout)?;
    if !report.passed {
        writeln!(stderr, "verification failed: {}", report.summary())?;
        return Ok(1);
    }
    Ok(0)
}

/// `13`, `2..20` and `2..=20` are all accepted; ranges are inclusive.
fn parse_lengths(specs: &[String]) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for s in specs {
        let int = |t: &str| -> Result<u32> {
            t.trim()
                .parse()
                .map_err(|_| Error::usage(format!("bad length `{s}`")))
        };
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (int(lo)?, int(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(Error::usage(format!("empty range `{s}`")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(int(s)?),
        }
    }
    Ok(out)
}

fn bounds_cmd(a: BoundsArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mut kt = KTable::builtin();
    if let Some(path) = &a.k_table {
        kt.merge_csv(&fs::read_to_string(path)?)?;
    }
    let opts = TableOptions {
        verify_witnesses: a.verify_witnesses,
        oracle_max_n: a.oracle_max_n,
    };
    let reports = bounds::bound_table(a.quantity, a.d, parse_lengths(&a.n)?, &kt, opts)?;
    let text = match a.format {
        ReportFormat::Text => bounds::render_text(&reports),
        ReportFormat::Csv => bounds::render_csv(&reports)?,
    };
    emit(a.output.as_deref(), &text, stdout)?;
    Ok(0)
}

fn distribution_line(dist: &[u64]) -> String {
    dist.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, c)| format!("{w}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn code_cmd(c: CodeCommand, stdout: &mut dyn Write) -> Result<i32> {
    match c {
        CodeCommand::Show(src) => {
            let text = match load_code(&src)? {
                AnyCode::Binary(c) => c.to_text(),
                AnyCode::Z4(c) => c.to_text(),
            };
            emit(None, &text, stdout)?;
        }
        CodeCommand::Info { source, force } => {
            let guard = Guard::from_force(force);
            match load_code(&source)? {
                AnyCode::Binary(c) => {
                    let d = c.min_hamming_weight(guard)?;
                    writeln!(stdout, "binary n={} k={} d={}", c.length(), c.dimension(), fmt_opt(d))?;
                    writeln!(stdout, "weights {}", distribution_line(&c.weight_distribution(guard)?))?;
                }
                AnyCode::Z4(c) => {
                    let d = c.min_lee_weight(guard)?;
                    writeln!(
                        stdout,
                        "z4 n={} type=4^{} 2^{} lee={}",
                        c.length(),
                        c.k1(),
                        c.k2(),
                        fmt_opt(d)
                    )?;
                    writeln!(stdout, "lee-weights {}", distribution_line(&c.lee_weight_distribution(guard)?))?;
                }
            }
        }
        CodeCommand::Greedy { n, d, output, force } => {
            let guard = Guard::from_force(force);
            let code = if d == 2 {
                exact_k_d2(n)?.1
            } else {
                code_from_parity(&greedy_forbidden_matrix(n, d, guard)?, d, guard)?
            };
            emit(output.as_deref(), &code.to_text(), stdout)?;
        }
        CodeCommand::DirectSum { source, d, output, force } => {
            let guard = Guard::from_force(force);
            let first = load_binary(&source)?;
            let tail = ForbiddenLinearCode::full_space(d.saturating_sub(1) as usize, d)?;
            let code = direct_sum(&first, &tail, guard)?;
            emit(output.as_deref(), &code.to_text(), stdout)?;
        }
    }
    Ok(0)
}

fn fmt_opt(v: Option<u32>) -> String {
    v.map_or_else(|| "-".to_string(), |w| w.to_string())
}

fn oracle_cmd(o: OracleCommand, stdout: &mut dyn Write) -> Result<i32> {
    let g = Guard::Enforce;
    match o {
        OracleCommand::Chi { n, d, mode } => {
            writeln!(stdout, "{}", oracle::exact_chi_small(n, d, mode.into(), g)?)?;
        }
        OracleCommand::A { n, d } => writeln!(stdout, "{}", oracle::exact_a_small(n, d, g)?)?,
        OracleCommand::Q { n, d } => writeln!(stdout, "{}", oracle::exact_q_small(n, d, g)?)?,
        OracleCommand::KForbidden { n, d } => {
            let (k, code) = oracle::exact_k_forbidden_small(n, d, g)?;
            writeln!(stdout, "{k}")?;
            stdout.write_all(code.to_text().as_bytes())?;
        }
        OracleCommand::Gray { seed, exhaustive_n, samples } => {
            let c = oracle::gray_map_check(exhaustive_n, samples, seed)?;
            writeln!(
                stdout,
                "pairs {} isometry-violations {} identity-violations {}",
                c.pairs, c.isometry_violations, c.identity_violations
            )?;
            if c.isometry_violations + c.identity_violations > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}
