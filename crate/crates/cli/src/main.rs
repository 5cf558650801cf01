use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use etcs_core::dsl::{render_diagnostics, render_report, run, Diagnostic, Format};
use etcs_core::nno::DEFAULT_BOUND;
use etcs_core::verifier::{check_all, CheckId, Config};

/// Run `.etcs` scripts, or the axiom suite, against the finite-set kernel.
#[derive(Parser, Debug)]
#[command(name = "etcs", version)]
struct Cli {
    /// Script to run; `-` reads standard input.
    script: Option<PathBuf>,

    /// Run every axiom and derived-theorem check instead of a script.
    #[arg(long, conflicts_with = "script")]
    check_axioms: bool,

    /// Size limit for --check-axioms.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    size: u64,

    /// Truncation bound of the natural numbers.
    #[arg(long, default_value_t = DEFAULT_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    nat_bound: u64,

    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,

    /// Sample randomly above the exhaustive size caps with this seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Include elapsed times; output then varies between runs.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format: Format = cli.format.parse().expect("restricted by clap");
    let cfg = Config { nat_bound: cli.nat_bound, seed: cli.seed, ..Config::default() };

    let (out, err, code) = if cli.check_axioms {
        suite(&cli, &cfg, format)
    } else {
        match &cli.script {
            Some(path) => script(path, &cfg, format, cli.timings),
            None => (String::new(), "etcs: give a script path, `-`, or --check-axioms\n".to_string(), 2),
        }
    };
    // a closed pipe is not worth a panic
    let _ = io::stdout().write_all(out.as_bytes());
    let _ = io::stderr().write_all(err.as_bytes());
    ExitCode::from(code)
}

fn suite(cli: &Cli, cfg: &Config, format: Format) -> (String, String, u8) {
    let mut reports = Vec::new();
    let mut err = String::new();
    for (id, r) in CheckId::ALL.into_iter().zip(check_all(cli.size as usize, cfg)) {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => err.push_str(&format!("etcs: {id}: {e}\n")),
        }
    }
    let code = if !err.is_empty() {
        2
    } else if reports.iter().any(|r| r.failed()) {
        1
    } else {
        0
    };
    (render_report(&reports, format, cli.timings), err, code)
}

fn script(path: &PathBuf, cfg: &Config, format: Format, timings: bool) -> (String, String, u8) {
    let (origin, src) = if path.as_os_str() == "-" {
        let mut s = String::new();
        match io::stdin().read_to_string(&mut s) {
            Ok(_) => ("<stdin>".to_string(), s),
            Err(e) => return (String::new(), format!("etcs: cannot read standard input: {e}\n"), 2),
        }
    } else {
        match std::fs::read_to_string(path) {
            Ok(s) => (path.display().to_string(), s),
            Err(e) => return (String::new(), format!("etcs: cannot read {}: {e}\n", path.display()), 2),
        }
    };
    let ex = run(&src, cfg);
    let diags: Vec<Diagnostic> = ex.diagnostics;
    (render_report(&ex.reports, format, timings), render_diagnostics(&diags, &origin), ex.exit_code as u8)
}
