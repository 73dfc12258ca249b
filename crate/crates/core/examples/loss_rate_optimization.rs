// Choosing the input loss rates: the efficiency optimum in closed form and by
// simplex search, and the different optimum that maximizes log-negativity.

use eomech::analysis::{maximize_efficiency_numeric, maximize_ln_over_loss_rates, LossRateBounds};
use eomech::params::{derive, ConventionFlags, SystemParams};
use eomech::scattering::{efficiency_closed_form, optimal_input_loss_rates};

pub fn run_example() -> eomech::Result<()> {
    for (label, flags) in [
        ("physical", ConventionFlags::PHYSICAL),
        ("γ_m/2π", ConventionFlags::DAMPING_SLIP),
    ] {
        let params = SystemParams::default().with_conventions(flags);
        let (go, ge) = optimal_input_loss_rates(&params)?;
        let r = efficiency_closed_form(&derive(&params.with_input_loss_rates(go, ge))?);
        let numeric = maximize_efficiency_numeric(&params, LossRateBounds::default())?;
        println!(
            "{label}: closed form γ_o = {go:.5e}, γ_e = {ge:.5e}, R = {r:.6}; \
             simplex γ_o = {:.5e}, γ_e = {:.5e}, R = {:.6}",
            numeric.point[0], numeric.point[1], numeric.value
        );
    }

    let params = SystemParams::default().with_conventions(ConventionFlags::OCCUPANCY_SLIP);
    let best = maximize_ln_over_loss_rates(&params, 1.0, LossRateBounds::default())?;
    println!(
        "LN optimum at n_s = 1: γ_o = {:.5e}, γ_e = {:.5e}, LN = {:.5}, R there = {:.4}",
        best.point[0],
        best.point[1],
        best.value,
        best.auxiliary.unwrap_or(f64::NAN)
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
