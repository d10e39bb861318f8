use clap::{Parser, ValueEnum};
use quadladder::error::{Error, Result};
use quadladder::report::{parse_sweep, run_report, run_sweep, sweep_csv, ModelInput, Report, ReportConfig};
use quadladder::spectral::{Tolerances, DEFAULT_CLUSTER_TOL, DEFAULT_RANK_TOL};
use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Natural frequencies, ladder operators and eigenfunction ladders of
/// quadratic Hamiltonians.
#[derive(Parser, Debug)]
#[command(name = "quadladder", version)]
struct Cli {
    /// Bateman model: `b=<rat>` or `m=<rat>,gamma=<rat>,omega=<rat>[,hbar=<rat>]`
    #[arg(long, group = "model_source")]
    bateman: Option<String>,

    /// Hamiltonian expression, e.g. "1/2*p1^2 + 1/2*x1^2"
    #[arg(long, group = "model_source")]
    expr: Option<String>,

    /// Model JSON file ({"bateman": {...}}, {"b": [n, d]} or {"expression": "..."})
    #[arg(long, group = "model_source")]
    model: Option<PathBuf>,

    /// Bateman sweep `b=<start>..<end>:<step>`
    #[arg(long, group = "model_source")]
    sweep: Option<String>,

    /// Generate both eigenfunction families up to n, m <= N (Bateman models only)
    #[arg(long, value_name = "N")]
    ladder_states: Option<u32>,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Relative distance under which roots are merged
    #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
    tol_cluster: f64,

    /// Relative pivot size under which a column counts as dependent
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    tol_rank: f64,
}

fn model_from(cli: &Cli) -> Result<ModelInput> {
    if let Some(text) = &cli.bateman {
        return ModelInput::from_bateman_flag(text);
    }
    if let Some(text) = &cli.expr {
        return Ok(ModelInput::Expression(text.clone()));
    }
    if let Some(path) = &cli.model {
        let raw = std::fs::read_to_string(path)?;
        return ModelInput::from_json(&serde_json::from_str(&raw)?);
    }
    Err(Error::Input("one of --bateman, --expr, --model or --sweep is required".into()))
}

fn render(report: &Report, format: Format, color: bool) -> String {
    match format {
        Format::Text => report.to_text(color),
        Format::Json => report.to_json_string(),
        Format::Csv => report.spectrum_csv(),
    }
}

fn run(cli: &Cli) -> Result<()> {
    let positive = |v: f64| v.is_finite() && v > 0.0;
    if !positive(cli.tol_cluster) || !positive(cli.tol_rank) {
        return Err(Error::Input("tolerances must be positive and finite".into()));
    }
    let tolerances = Tolerances { cluster: cli.tol_cluster, rank: cli.tol_rank };
    let color = cli.out.is_none()
        && matches!(cli.format, Format::Text)
        && std::env::var_os("QUADLADDER_NO_COLOR").is_none()
        && std::io::stdout().is_terminal();

    let output = if let Some(spec) = &cli.sweep {
        let reports = run_sweep(&parse_sweep(spec)?, cli.ladder_states, tolerances)?;
        match cli.format {
            Format::Json => {
                let all: Vec<_> = reports.iter().map(Report::to_json).collect();
                let mut s = serde_json::to_string_pretty(&all)?;
                s.push('\n');
                s
            }
            Format::Csv => sweep_csv(&reports),
            Format::Text => reports
                .iter()
                .map(|r| render(r, Format::Text, color))
                .collect::<Vec<_>>()
                .join("\n----\n\n"),
        }
    } else {
        let config = ReportConfig { model: model_from(cli)?, ladder_states: cli.ladder_states, tolerances };
        render(&run_report(&config)?, cli.format, color)
    };

    match &cli.out {
        Some(path) => std::fs::write(path, output)?,
        None => std::io::stdout().lock().write_all(output.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quadladder: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
