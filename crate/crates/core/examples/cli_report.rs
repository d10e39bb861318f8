//! The library side of the CLI: build a report and render it three ways.

use quadladder::report::{run_report, ModelInput, ReportConfig};

fn main() -> quadladder::error::Result<()> {
    let mut config = ReportConfig::new(ModelInput::from_bateman_flag("b=1")?);
    config.ladder_states = Some(1);
    let report = run_report(&config)?;
    print!("{}", report.to_text(false));
    println!();
    print!("{}", report.spectrum_csv());
    let json = report.to_json();
    println!("\nJSON top-level keys: {:?}", json.as_object().unwrap().keys().collect::<Vec<_>>());

    let model: serde_json::Value = serde_json::from_str(r#"{"expression": "1/2*p1^2 + 1/2*x1^2"}"#)?;
    let report = run_report(&ReportConfig::new(ModelInput::from_json(&model)?))?;
    print!("\n{}", report.to_text(false));
    Ok(())
}
