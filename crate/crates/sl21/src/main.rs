//! Command-line driver: sweep highest weights for a chosen p-character,
//! compute H^1 of the Kac and/or simple modules along both computation
//! routes, compare with the predicted dimension table, and emit JSON or
//! CSV.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use sl21::sweep::{emit_csv, emit_json, sweep, ChiSpec, LambdaSpec, ModuleKind};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModuleArg {
    Kac,
    Simple,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Exact first cohomology of sl(2,1) Kac and simple modules over odd
/// characteristic.
#[derive(Parser, Debug)]
#[command(name = "sl21", version, about)]
struct Cli {
    /// Odd prime characteristic.
    #[arg(long)]
    p: u64,

    /// p-character: `zero`, `ss:r,s` (semisimple) or `nilp:r` (nilpotent).
    #[arg(long, default_value = "zero")]
    chi: String,

    /// Highest weight `l1,l2` (integers or `a+b*t` literals over the
    /// extension field), or `all` admissible weights.
    #[arg(long, default_value = "all")]
    lambda: String,

    /// Which modules to compute.
    #[arg(long, value_enum, default_value_t = ModuleArg::Both)]
    module: ModuleArg,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,

    /// Compare against the predicted dimension table and fail the exit
    /// code on mismatch (default).
    #[arg(long, overrides_with = "no_verify")]
    verify: bool,

    /// Report predictions but never fail the exit code on mismatch.
    #[arg(long)]
    no_verify: bool,

    /// Include H^1 representatives in JSON output.
    #[arg(long)]
    show_cocycles: bool,

    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Worker threads for the sweep (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verify = !cli.no_verify;

    let chi = match ChiSpec::parse(&cli.chi) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("sl21: bad --chi: {e}");
            return ExitCode::from(2);
        }
    };
    let lambda = match LambdaSpec::parse(&cli.lambda) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("sl21: bad --lambda: {e}");
            return ExitCode::from(2);
        }
    };
    let kinds: &[ModuleKind] = match cli.module {
        ModuleArg::Kac => &[ModuleKind::Kac],
        ModuleArg::Simple => &[ModuleKind::Simple],
        ModuleArg::Both => &[ModuleKind::Kac, ModuleKind::Simple],
    };

    let table = match sweep(cli.p, chi, &lambda, kinds, cli.jobs) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("sl21: {e}");
            return ExitCode::from(2);
        }
    };

    let output = match cli.format {
        FormatArg::Json => {
            let doc = emit_json(&table, cli.show_cocycles);
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable table");
            s.push('\n');
            s
        }
        FormatArg::Csv => emit_csv(&table),
    };

    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &output) {
            eprintln!("sl21: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    } else if std::io::stdout().write_all(output.as_bytes()).is_err() {
        return ExitCode::from(2);
    }

    let mismatches = table.mismatches();
    let unpredicted = table.rows.iter().filter(|r| r.predicted.is_none()).count();
    eprintln!(
        "sl21: {} rows over {}, {} mismatch(es){}",
        table.rows.len(),
        table.field_name,
        mismatches,
        if unpredicted > 0 {
            format!(", {unpredicted} row(s) without a prediction")
        } else {
            String::new()
        }
    );

    if verify && mismatches > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
