//! Physical Bateman parameters, the dimensionless b, and a concurrent sweep
//! over b.

use quadladder::bateman::{dimensionless_b, BatemanParams};
use quadladder::report::{parse_sweep, run_sweep, sweep_csv};
use quadladder::scalar::{fmt_rat, rat};
use quadladder::spectral::Tolerances;

fn main() -> quadladder::error::Result<()> {
    let p = BatemanParams::new(rat(2, 1), rat(3, 1), rat(1, 2))?;
    println!(
        "m = 2, gamma = 3, omega = 1/2 -> b = {}, alpha^2 = {}, energy unit = {}",
        fmt_rat(&dimensionless_b(&p)?),
        fmt_rat(&p.alpha_squared()),
        fmt_rat(&p.energy_unit())
    );

    let reports = run_sweep(&parse_sweep("b=0..3:1/2")?, None, Tolerances::default())?;
    print!("{}", sweep_csv(&reports));
    Ok(())
}
