// The same headline numbers under each unit-convention profile, loaded from a
// JSON configuration the way the `eomech` binary reads it.

use eomech::capacity::capacity;
use eomech::cli::config::RunConfig;
use eomech::params::{derive, ConventionFlags, SystemParams};
use eomech::scattering::{amplitude_ratio, efficiency_closed_form};

const CONFIG: &str = r#"{
    "temperature_k": 0.035,
    "conventions": { "occupancy_extra_two_pi": true }
}"#;

pub fn run_example() -> eomech::Result<()> {
    let loaded = RunConfig::from_json_str(CONFIG)?;
    println!("configured conventions: {:?}", loaded.params.conventions);

    for (label, flags) in [
        ("physical", ConventionFlags::PHYSICAL),
        ("occupancy", ConventionFlags::OCCUPANCY_SLIP),
        ("damping", ConventionFlags::DAMPING_SLIP),
    ] {
        let dp = derive(&SystemParams::default().with_conventions(flags))?;
        println!(
            "{label:<10} n_m = {:>9.4}  R(0) = {:.6}  n_out/n_s = {:.5}  P = {:.6}",
            dp.n_th_m,
            efficiency_closed_form(&dp),
            amplitude_ratio(&dp, 1.0, 0.0)?,
            capacity(&dp)?
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
