// Conversion efficiency `R(ω) = |c1(ω)|²` from the closed form and from a
// direct solve of the Langevin equations, plus the photon-number ratio an
// experiment would report.

use eomech::params::{derive, ConventionFlags, SystemParams};
use eomech::scattering::{amplitude_ratio, coefficients, solve_qle_oracle, CHANNELS};

pub fn run_example() -> eomech::Result<()> {
    let dp = derive(&SystemParams::default())?;

    println!("{:>12} {:>14} {:>14}", "ω [Hz]", "R closed", "R oracle");
    for omega in [0.0, 1e4, 1e5, 1e6, 1e7] {
        let fast = coefficients(&dp, omega)?;
        let slow = solve_qle_oracle(&dp, omega)?;
        println!(
            "{omega:>12.1e} {:>14.10} {:>14.10}",
            fast.efficiency, slow.efficiency
        );
    }

    let sol = coefficients(&dp, 0.0)?;
    println!("channel weights at ω = 0 (sum {:.15}):", sol.total_weight());
    for (name, w) in CHANNELS.iter().zip(sol.weights()) {
        println!("  {name:<10} {w:.7}");
    }

    let warm = derive(&SystemParams::default().with_conventions(ConventionFlags::OCCUPANCY_SLIP))?;
    for n_s in [1.0, 0.5] {
        println!(
            "n_out / n_s at n_s = {n_s}: {:.5}",
            amplitude_ratio(&warm, n_s, 0.0)?
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
