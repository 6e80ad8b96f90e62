//! Command-line front end. Every command writes its artifacts and a
//! `report.json` into the output directory and exits with the report status.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::codes::{self, CodeId};
use crate::distribution::ValueDistribution;
use crate::error::Error;
use crate::exec::Exec;
use crate::expsum::tables::{s_table, t_table};
use crate::expsum::{self, SumKernel};
use crate::field::{FieldContext, Params};
use crate::sequences::tables::correlation_table;
use crate::verify::{self, Budget, Sweep, VerificationReport};

pub const EXIT_USAGE: i32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "kasami-lab",
    version,
    about = "Brute force vs closed forms for generalized Kasami sums, codes and sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Value distributions of T and S.
    Spectrum {
        #[command(flatten)]
        run: RunConfig,
        #[arg(long, value_enum)]
        only: Option<SumKind>,
    },
    /// Weight distributions of C1 and C2.
    CodeWeights {
        #[command(flatten)]
        run: RunConfig,
        #[arg(long, value_parser = parse_code)]
        code: Option<CodeId>,
        /// Also write every codeword as a hex row.
        #[arg(long)]
        dump: bool,
    },
    /// Correlation distribution of the sequence family.
    Correlation {
        #[command(flatten)]
        run: RunConfig,
        /// Also write the family as `label,hex` lines.
        #[arg(long)]
        dump_family: bool,
    },
    /// The full battery of checks.
    Verify {
        #[command(flatten)]
        run: RunConfig,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SumKind {
    T,
    S,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "txt",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    /// Defining polynomial as a hex bit mask (e.g. 0x11d); defaults to the
    /// smallest primitive polynomial of degree n.
    #[arg(long, value_parser = parse_hex)]
    pub modulus: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, env = "KASAMI_LAB_OUT", default_value = ".")]
    pub out: PathBuf,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    /// Lift the default sweep budgets (T: n <= 12, S: n <= 10, correlation: n <= 8).
    #[arg(long)]
    pub budget_override: bool,
}

impl RunConfig {
    fn budget(&self) -> Budget {
        if self.budget_override {
            Budget::unlimited()
        } else {
            Budget::default()
        }
    }
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("'{s}' is not a hex mask: {e}"))
}

fn parse_code(s: &str) -> Result<CodeId, String> {
    s.parse()
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lab(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[cfg(feature = "parallel")]
    #[error("cannot start the worker pool: {0}")]
    Pool(String),
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            print!("{}", verify::summary(&report));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: &Command) -> Result<VerificationReport, CliError> {
    let run = match command {
        Command::Spectrum { run, .. }
        | Command::CodeWeights { run, .. }
        | Command::Correlation { run, .. }
        | Command::Verify { run } => run,
    };
    let params = Params::new(run.n, run.k)?;
    let ctx = FieldContext::new(run.n, run.modulus)?;
    with_workers(run.workers, || {
        let report = match command {
            Command::Spectrum { only, .. } => spectrum(&ctx, &params, run, *only)?,
            Command::CodeWeights { code, dump, .. } => code_weights(&ctx, &params, run, *code, *dump)?,
            Command::Correlation { dump_family, .. } => correlation(&ctx, &params, run, *dump_family)?,
            Command::Verify { .. } => verify::verify(&ctx, &params, run.budget(), Exec::Parallel)?,
        };
        for (name, t) in &report.timings {
            eprintln!("[time] {name}: {:.3}s", t.as_secs_f64());
        }
        write(&run.out, "report.json", &report.to_json())?;
        Ok(report)
    })
}

#[cfg(feature = "parallel")]
fn with_workers<R>(workers: Option<usize>, f: impl FnOnce() -> Result<R, CliError> + Send) -> Result<R, CliError>
where
    R: Send,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| CliError::Pool(e.to_string()))?;
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_workers<R>(_workers: Option<usize>, f: impl FnOnce() -> Result<R, CliError>) -> Result<R, CliError> {
    f()
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let io = |source, path: &Path| CliError::Io { path: path.display().to_string(), source };
    fs::create_dir_all(dir).map_err(|e| io(e, dir))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| io(e, &path))
}

/// Renders a distribution in the requested format.
pub fn render(dist: &ValueDistribution, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = dist.to_json();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Format::Csv => dist.to_csv(),
        Format::Table => {
            let mut s = format!("{:>12}  {:>24}\n", "value", "count");
            for (v, c) in dist.entries().collect::<Vec<_>>().into_iter().rev() {
                s.push_str(&format!("{v:>12}  {c:>24}\n"));
            }
            s.push_str(&format!("{:>12}  {:>24}\n", "total", dist.total()));
            s
        }
    }
}

fn render_diff(rows: &[(i64, u128, u128)], format: Format) -> String {
    match format {
        Format::Json => {
            let items: Vec<_> =
                rows.iter().map(|(v, b, f)| serde_json::json!({"v": v, "brute": b, "formula": f})).collect();
            let mut s = serde_json::to_string_pretty(&items).expect("diff serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("value,brute,formula\n");
            for (v, b, f) in rows {
                s.push_str(&format!("{v},{b},{f}\n"));
            }
            s
        }
        Format::Table => {
            let mut s = format!("{:>12}  {:>24}  {:>24}\n", "value", "brute", "formula");
            for (v, b, f) in rows {
                s.push_str(&format!("{v:>12}  {b:>24}  {f:>24}\n"));
            }
            s
        }
    }
}

/// Writes `<stem>.ext`, `<stem>_formula.ext` and `<stem>_diff.ext`.
fn write_triplet(
    run: &RunConfig,
    stem: &str,
    brute: &ValueDistribution,
    formula: Option<&ValueDistribution>,
) -> Result<(), CliError> {
    let ext = run.format.extension();
    write(&run.out, &format!("{stem}.{ext}"), &render(brute, run.format))?;
    if let Some(f) = formula {
        write(&run.out, &format!("{stem}_formula.{ext}"), &render(f, run.format))?;
        write(&run.out, &format!("{stem}_diff.{ext}"), &render_diff(&verify::diff(brute, f), run.format))?;
    }
    Ok(())
}

fn spectrum(
    ctx: &FieldContext,
    params: &Params,
    run: &RunConfig,
    only: Option<SumKind>,
) -> Result<VerificationReport, CliError> {
    let budget = run.budget();
    let kernel = SumKernel::new(ctx, params);
    let mut report = VerificationReport::new(ctx, params);
    if only != Some(SumKind::S) {
        budget.require(Sweep::T, params.n)?;
        let start = Instant::now();
        let (brute, r) = verify::t_spectrum_record(&kernel, Exec::Parallel);
        report.push(r, start.elapsed());
        write_triplet(run, "t_spectrum", &brute, t_table(params).distribution().ok().as_ref())?;
    }
    if only != Some(SumKind::T) {
        budget.require(Sweep::S, params.n)?;
        let start = Instant::now();
        let (brute, r) = verify::s_spectrum_record(&kernel, Exec::Parallel);
        report.push(r, start.elapsed());
        write_triplet(run, "s_spectrum", &brute, s_table(params).distribution().ok().as_ref())?;
    }
    Ok(report)
}

fn code_weights(
    ctx: &FieldContext,
    params: &Params,
    run: &RunConfig,
    code: Option<CodeId>,
    dump: bool,
) -> Result<VerificationReport, CliError> {
    let budget = run.budget();
    let kernel = SumKernel::new(ctx, params);
    let mut report = VerificationReport::new(ctx, params);
    let chosen: Vec<CodeId> = code.map_or(vec![CodeId::C1, CodeId::C2], |c| vec![c]);
    for code in chosen {
        let start = Instant::now();
        let (spectrum, table) = match code {
            CodeId::C1 => {
                budget.require(Sweep::T, params.n)?;
                (expsum::t_spectrum(&kernel, Exec::Parallel), t_table(params))
            }
            CodeId::C2 => {
                budget.require(Sweep::Correlation, params.n)?;
                (expsum::s_spectrum(&kernel, Exec::Parallel), s_table(params))
            }
        };
        let (direct, r) = verify::weights_record(&kernel, code, &spectrum, Exec::Parallel);
        report.push(r, start.elapsed());
        let formula = crate::expsum::tables::weight_table(&table, params).ok();
        write_triplet(run, &format!("{code}_weights"), &direct, formula.as_ref())?;
        if dump {
            write(&run.out, &format!("{code}_codewords.txt"), &codes::dump_codewords(&kernel, code))?;
        }
    }
    Ok(report)
}

fn correlation(
    ctx: &FieldContext,
    params: &Params,
    run: &RunConfig,
    dump_family: bool,
) -> Result<VerificationReport, CliError> {
    run.budget().require(Sweep::Correlation, params.n)?;
    let kernel = SumKernel::new(ctx, params);
    let mut report = VerificationReport::new(ctx, params);
    let start = Instant::now();
    let t = expsum::t_values(&kernel, Exec::Parallel);
    let s = expsum::s_spectrum(&kernel, Exec::Parallel);
    let outcome = verify::correlation_records(&kernel, &s, &t, Exec::Parallel)?;
    let elapsed = start.elapsed();
    for r in outcome.records {
        report.push(r, elapsed);
    }
    let formula = correlation_table(params).distribution().ok();
    write_triplet(run, "correlation", &outcome.histogram.total(), formula.as_ref())?;
    if dump_family {
        write(&run.out, "family.csv", &outcome.family.dump())?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_and_code_parsing() {
        assert_eq!(parse_hex("0x11d"), Ok(0x11d));
        assert_eq!(parse_hex("13"), Ok(0x13));
        assert!(parse_hex("xyz").is_err());
        assert_eq!(parse_code("c2"), Ok(CodeId::C2));
        assert!(parse_code("c3").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["kasami-lab", "spectrum", "--n", "4"]), EXIT_USAGE);
        assert_eq!(run(["kasami-lab", "bogus"]), EXIT_USAGE);
    }

    #[test]
    fn table_rendering() {
        let d: ValueDistribution = [(4, 2), (-4, 1)].into_iter().collect();
        let s = render(&d, Format::Table);
        assert!(s.lines().nth(1).unwrap().trim_start().starts_with('4'));
        assert!(s.trim_end().ends_with('3'));
        assert_eq!(render(&d, Format::Csv), d.to_csv());
    }
}
