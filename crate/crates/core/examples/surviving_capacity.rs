// The large-photon-number limit `P` of the converted entanglement, its
// expansion coefficients, and a check against the transcribed closed-form
// polynomials.

use eomech::analysis::ln_pair;
use eomech::capacity::{capacity_report, check_printed_appendix};
use eomech::params::{derive, ConventionFlags, SystemParams};

pub fn run_example() -> eomech::Result<()> {
    let dp = derive(&SystemParams::default().with_conventions(ConventionFlags::OCCUPANCY_SLIP))?;
    let report = capacity_report(&dp)?;
    let k = report.k;
    println!(
        "k1..k5 = {:.9} {:.9} {:.9} {:.9} {:.9}",
        k.k1, k.k2, k.k3, k.k4, k.k5
    );
    println!(
        "P = {:.7}, noiseless bound = {:.7}",
        report.p, report.p_noiseless
    );

    for n_s in [1.0, 1e2, 1e4, 1e6] {
        let (_, ln) = ln_pair(&dp, n_s, 0.0)?;
        println!("LN(n_s = {n_s:.0e}) = {ln:.7}");
    }

    let cold = derive(&SystemParams::default().with_temperature(0.0))?;
    println!("P at T = 0: {:.10}", capacity_report(&cold)?.p);

    let check = check_printed_appendix(&dp);
    println!("transcribed polynomials, relative deviation per coefficient:");
    for (i, dev) in check.relative_deviation.iter().enumerate() {
        println!("  k{}: {dev:.3e}", i + 1);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
