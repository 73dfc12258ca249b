// Log-negativity of a two-mode squeezed vacuum before and after its signal
// arm is converted, and the photon number at which the surviving fraction
// peaks.

use eomech::analysis::{maximize_surviving_ratio, sweep_ln_vs_ns, LogGrid};
use eomech::gaussian::{ctmg_covariance, log_negativity, tmsv_covariance};
use eomech::params::{derive, ConventionFlags, SystemParams};

pub fn run_example() -> eomech::Result<()> {
    let dp = derive(&SystemParams::default().with_conventions(ConventionFlags::OCCUPANCY_SLIP))?;

    let input = log_negativity(&tmsv_covariance(1.0)?)?;
    let output = log_negativity(&ctmg_covariance(&dp, 1.0, 0.0)?)?;
    println!(
        "n_s = 1: ξ₋ {:.6} → {:.6}, LN {:.6} → {:.6}",
        input.xi_minus, output.xi_minus, input.ln_value, output.ln_value
    );

    let grid = LogGrid::new(1e-3, 1e3, 7)?.values()?;
    let sweep = sweep_ln_vs_ns(&dp, &grid, 0.0)?;
    println!("{}", sweep.columns.join("\t"));
    for row in &sweep.rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.6}")).collect();
        println!("{}", cells.join("\t"));
    }

    let peak = maximize_surviving_ratio(&dp, (1e-3, 1e3))?;
    println!(
        "surviving fraction peaks at n_s = {:.5} with {:.6} ({} iterations)",
        peak.point[0], peak.value, peak.iterations
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
