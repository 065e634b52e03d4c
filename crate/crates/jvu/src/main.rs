use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jvu_core::freealg::MultiDegree;
use jvu_core::jordan::{Mode, DEFAULT_DEGREE_BOUND};
use jvu_core::report::{parse_field, run, Command, RunError, Task, DEFAULT_SAMPLES, DEFAULT_SEED};
use jvu_core::scalar::Field;

/// Exact checks of U-operator commutation in free special Jordan algebras and
/// the split Albert algebra. Prints a JSON report; exit code 0 confirmed,
/// 2 refuted, 1 error.
#[derive(Parser)]
#[command(name = "jvu", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient field: q, gf2, gf<p>.
    #[arg(long, default_value = "q", value_parser = field_arg)]
    field: Field,
    /// Closure alphabet; default quadratic in characteristic 2, linear otherwise.
    #[arg(long)]
    mode: Option<Mode>,
    /// Largest total degree a closure may request.
    #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
    degree_bound: u32,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Comma-separated generator names.
    #[arg(long)]
    vars: Option<String>,
    /// Comma-separated exponents, one per generator.
    #[arg(long, value_parser = multidegree_arg)]
    multidegree: Option<MultiDegree>,
}

#[derive(Subcommand)]
enum Verb {
    /// z[U_x,U_y] = {(x∘y)zxy} − zU_{x∘y} in the free algebra.
    Lemma1(Common),
    /// Symmetric and Jordan dimensions of one multidegree component.
    Dims {
        #[command(flatten)]
        common: Common,
        /// Element asserted to lie outside the Jordan span.
        #[arg(long)]
        probe: Option<String>,
    },
    /// Associative vs. Jordan ideal generated by x∘y at multidegree (2,2,1).
    Counterexample {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        generator: Option<String>,
        /// Element asserted to lie in the associative ideal but not the Jordan one.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Solve the seven-term coefficient system for {(x∘y)zxy}.
    Coefficients(Common),
    /// Random identity checks and zero-pair commutation in the Albert algebra.
    Albert(Common),
    /// Parse an expression and print its canonical form.
    Parse {
        #[command(flatten)]
        common: Common,
        expr: String,
    },
}

fn field_arg(s: &str) -> Result<Field, String> {
    parse_field(s).map_err(|e| e.to_string())
}

fn multidegree_arg(s: &str) -> Result<MultiDegree, String> {
    MultiDegree::parse_list(s)
        .ok_or_else(|| format!("expected comma-separated exponents, got `{s}`"))
}

fn command(verb: Verb) -> (Command, Option<PathBuf>) {
    let (task, common, probe, generator, witness, expr) = match verb {
        Verb::Lemma1(c) => (Task::Lemma1, c, None, None, None, None),
        Verb::Dims { common, probe } => (Task::Dims, common, probe, None, None, None),
        Verb::Counterexample {
            common,
            generator,
            witness,
        } => (Task::Counterexample, common, None, generator, witness, None),
        Verb::Coefficients(c) => (Task::Coefficients, c, None, None, None, None),
        Verb::Albert(c) => (Task::Albert, c, None, None, None, None),
        Verb::Parse { common, expr } => (Task::Parse, common, None, None, None, Some(expr)),
    };
    let cmd = Command {
        task,
        field: common.field,
        mode: common.mode,
        vars: common.vars,
        multidegree: common.multidegree,
        degree_bound: common.degree_bound,
        seed: common.seed,
        samples: common.samples,
        probe,
        generator,
        witness,
        expr,
    };
    (cmd, common.out)
}

fn write_atomic(path: &PathBuf, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn main() -> ExitCode {
    // clap's own failure code is 2, which is reserved for refutations here
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (cmd, out) = command(cli.verb);
    let report = match run(&cmd) {
        Ok(r) => r,
        Err(e) => {
            let kind = if matches!(e, RunError::Usage(_) | RunError::Parse(_)) {
                "usage"
            } else {
                "internal"
            };
            eprintln!("jvu {}: {kind} error: {e}", cmd.task);
            return ExitCode::from(1);
        }
    };
    let text = report.to_json();
    let written = match &out {
        Some(path) => write_atomic(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("jvu: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.exit_code() as u8)
}
