// Derived couplings, thermal occupancies and the pump detunings that put both
// cavities on the red sideband.
//
// ```text
// cargo run --example params_and_detuning
// ```

use eomech::params::{derive, required_pump_detunings, thermal_occupancy, SystemParams};

pub fn run_example() -> eomech::Result<()> {
    let params = SystemParams::default();
    params.validate()?;
    let dp = derive(&params)?;

    println!("G_o = {:.6e} Hz, G_e = {:.6e} Hz", dp.big_g_o, dp.big_g_e);
    println!(
        "Γ_o = {:.3e} Hz, Γ_e = {:.3e} Hz",
        dp.total_decay_o, dp.total_decay_e
    );
    println!(
        "occupancies at {} K: optical {:.3e}, microwave {:.6e}, mechanical {:.4}",
        params.temperature_k, dp.n_th_o, dp.n_th_e, dp.n_th_m
    );

    let slipped = thermal_occupancy(params.omega_m_hz, params.temperature_k, true);
    println!("mechanical occupancy with the h-for-ħ exponent: {slipped:.4}");

    let (drive_o, drive_e) = required_pump_detunings(&params)?;
    println!(
        "drive detunings for Δ = ω_m: optical {:.6e} Hz, microwave {:.6e} Hz",
        drive_o, drive_e
    );
    for warning in params.warnings() {
        println!("warning: {warning}");
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
