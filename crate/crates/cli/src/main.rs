use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use hermseq::bounds::{all_bounds, BoundParams};
use hermseq::complexity::{
    complexity_profile, ComplexityResult, DegreeMode, DEFAULT_MONOMIAL_BUDGET,
};
use hermseq::field::{prime_power, FieldCtx};
use hermseq::report::{
    read_sequence_csv, write_bounds_csv, write_complexity_csv, write_figure_csv,
    write_sequence_csv, ComplexityRow, FigurePreset,
};
use hermseq::sequence::{build_sequence, Sequence};
use hermseq::verify::{run_verification, Fault, VerifyConfig};

/// Hermitian-curve sequences over F_{q^2}: generation, complexity and bounds.
#[derive(Parser, Debug)]
#[command(name = "hermseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the sequence as CSV (index,i,j,value).
    Sequence {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        line: LineArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact nonlinear complexity of prefixes.
    Complexity {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        line: LineArgs,
        /// Read the sequence from a CSV written by `sequence` instead of building it.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        k: KArgs,
        #[command(flatten)]
        n: NArgs,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        /// Monomial columns examined per prefix before giving up with a bracket.
        #[arg(long, default_value_t = DEFAULT_MONOMIAL_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// All six bound formulas for q = p^e.
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
        /// Defaults to q.
        #[arg(long)]
        ell: Option<u64>,
        #[command(flatten)]
        k: KArgs,
        #[command(flatten)]
        n: NArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Comparison curves for the two figure presets.
    Figures {
        #[arg(long, value_parser = ["fig1", "fig2"])]
        preset: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the invariant suite and print a pass/fail table.
    Verify {
        /// Values of q to check.
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
        q: Vec<u32>,
        #[arg(long, default_value_t = DEFAULT_MONOMIAL_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Largest q for the exact theorem checks.
        #[arg(long, default_value_t = 3)]
        theorem_max_q: u32,
        /// Corrupt the sequence before the theorem checks.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Modulus coefficients over F_p, low degree first, comma separated.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

impl FieldArgs {
    fn build(&self) -> anyhow::Result<FieldCtx> {
        Ok(FieldCtx::new(self.p, self.e, self.modulus.as_deref())?)
    }
}

#[derive(Args, Debug)]
struct LineArgs {
    /// Abscissa of the line, e.g. `0:1`; defaults to epsilon.
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 2)]
    ell: u32,
}

impl LineArgs {
    fn build(&self, ctx: &FieldCtx) -> anyhow::Result<Sequence> {
        let a = match &self.a {
            Some(text) => ctx.parse(text)?,
            None => ctx.epsilon(),
        };
        Ok(build_sequence(ctx, a, self.ell)?)
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct KArgs {
    #[arg(long)]
    k: Option<u64>,
    /// Inclusive range `lo-hi`.
    #[arg(long, value_parser = parse_range)]
    k_range: Option<RangeInclusive<u64>>,
}

impl KArgs {
    fn values(&self) -> Vec<u64> {
        match (&self.k, &self.k_range) {
            (Some(k), _) => vec![*k],
            (None, Some(r)) => r.clone().collect(),
            (None, None) => unreachable!("clap enforces one of --k and --k-range"),
        }
    }
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct NArgs {
    #[arg(long)]
    n: Option<u64>,
    /// Inclusive range `lo-hi`.
    #[arg(long, value_parser = parse_range)]
    n_range: Option<RangeInclusive<u64>>,
}

impl NArgs {
    fn values(&self) -> Option<Vec<u64>> {
        match (&self.n, &self.n_range) {
            (Some(n), _) => Some(vec![*n]),
            (None, Some(r)) => Some(r.clone().collect()),
            (None, None) => None,
        }
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutArgs {
    fn open(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    PerVariable,
    TotalDegree,
    Both,
}

impl Mode {
    fn modes(self, k: u32) -> Vec<DegreeMode> {
        match self {
            Mode::PerVariable => vec![DegreeMode::PerVariable(k)],
            Mode::TotalDegree => vec![DegreeMode::TotalDegree(k)],
            Mode::Both => vec![DegreeMode::PerVariable(k), DegreeMode::TotalDegree(k)],
        }
    }
}

fn parse_range(text: &str) -> Result<RangeInclusive<u64>, String> {
    let (lo, hi) = match text.split_once('-') {
        Some((lo, hi)) => (lo, hi),
        None => (text, text),
    };
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in {text:?}"))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in {text:?}"))?;
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok(lo..=hi)
}

/// Errors caused by bad arguments, as opposed to a failed verification.
struct UsageError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.into())
    }
}

fn complexity_rows(
    ctx: &FieldCtx,
    seq: &Sequence,
    ks: &[u64],
    ns: Option<Vec<u64>>,
    mode: Mode,
    budget: u64,
) -> anyhow::Result<Vec<ComplexityRow>> {
    let ns: Vec<usize> = match ns {
        Some(ns) => ns.into_iter().map(|n| n as usize).collect(),
        None => (1..=seq.len()).collect(),
    };
    if let Some(&bad) = ns.iter().find(|&&n| n == 0 || n > seq.len()) {
        bail!("n = {bad} is outside 1..={}", seq.len());
    }
    let longest = ns.iter().copied().max().unwrap_or(0);
    let jobs: Vec<DegreeMode> = ks.iter().flat_map(|&k| mode.modes(k as u32)).collect();
    let profiles: Vec<Vec<ComplexityResult>> = jobs
        .par_iter()
        .map(|&m| complexity_profile(ctx, &seq.terms()[..longest], m, budget))
        .collect::<hermseq::Result<_>>()?;
    let mut rows = Vec::new();
    for &n in &ns {
        for (job, profile) in jobs.iter().zip(&profiles) {
            rows.push(ComplexityRow {
                n,
                mode: *job,
                result: profile[n - 1],
            });
        }
    }
    Ok(rows)
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::Sequence { field, line, out } => {
            let ctx = field.build()?;
            let seq = line.build(&ctx)?;
            write_sequence_csv(&ctx, &seq, out.open()?)?;
        }
        Command::Complexity {
            field,
            line,
            input,
            k,
            n,
            mode,
            budget,
            out,
        } => {
            let ctx = field.build()?;
            let seq = match input {
                Some(path) => {
                    let file = File::open(&path)
                        .with_context(|| format!("cannot open {}", path.display()))?;
                    read_sequence_csv(&ctx, file)?
                }
                None => line.build(&ctx)?,
            };
            if seq.is_empty() {
                return Err(anyhow!("the input sequence is empty").into());
            }
            let rows = complexity_rows(&ctx, &seq, &k.values(), n.values(), mode, budget)?;
            write_complexity_csv(&rows, out.open()?)?;
        }
        Command::Bounds {
            field,
            ell,
            k,
            n,
            out,
        } => {
            if prime_power(field.p as u64).is_none_or(|(_, e)| e != 1) {
                return Err(anyhow!("p = {} is not prime", field.p).into());
            }
            let q = (field.p as u64)
                .checked_pow(field.e)
                .ok_or_else(|| anyhow!("q = {}^{} is too large", field.p, field.e))?;
            let ell = ell.unwrap_or(q);
            let ns = n
                .values()
                .unwrap_or_else(|| (1..=q * (q * q - 2)).collect());
            let mut rows = Vec::new();
            for &n in &ns {
                for &k in &k.values() {
                    rows.push(all_bounds(&BoundParams::new(n, q, k, ell)?)?);
                }
            }
            write_bounds_csv(&rows, out.open()?)?;
        }
        Command::Figures { preset, out } => {
            let preset = FigurePreset::parse(&preset)?;
            write_figure_csv(preset, &preset.rows()?, out.open()?)?;
        }
        Command::Verify {
            q,
            budget,
            theorem_max_q,
            inject_fault,
        } => {
            let cfg = VerifyConfig {
                qs: q,
                monomial_budget: budget,
                theorem_max_q,
                fault: inject_fault.then_some(Fault::RepeatFirstTerm),
            };
            let report = run_verification(&cfg)?;
            println!("{report}");
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("HERMSEQ_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                // Fails only if a pool already exists, which cannot happen here.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: HERMSEQ_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
