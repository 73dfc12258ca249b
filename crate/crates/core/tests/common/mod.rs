//! Shared fixtures: the reference device under each convention profile and a
//! seeded generator of physically valid random parameter sets.

#![allow(dead_code)]

use eomech::params::{ConventionFlags, SystemParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn reference(flags: ConventionFlags) -> SystemParams {
    SystemParams::default().with_conventions(flags)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..hi.ln()).exp()
}

/// One draw from the validity domain, spanning weak to strong coupling.
pub fn random_params(rng: &mut impl Rng) -> SystemParams {
    let temperature_k = if rng.random_bool(0.15) {
        0.0
    } else {
        rng.random_range(0.0..0.5)
    };
    SystemParams {
        g_o_hz: log_uniform(rng, 0.5, 50.0),
        g_e_hz: log_uniform(rng, 0.5, 50.0),
        gamma_o_hz: log_uniform(rng, 1e4, 1e8),
        gamma_e_hz: log_uniform(rng, 1e4, 1e8),
        gamma_o_int_hz: log_uniform(rng, 1e4, 1e7),
        gamma_e_int_hz: log_uniform(rng, 1e4, 1e7),
        gamma_m_hz: log_uniform(rng, 1.0, 1e3),
        omega_o_hz: log_uniform(rng, 1.9e14, 3.9e14),
        omega_e_hz: log_uniform(rng, 1e9, 2e10),
        omega_m_hz: log_uniform(rng, 1e5, 1e7),
        temperature_k,
        n_pump_o: log_uniform(rng, 1e6, 1e9),
        n_pump_e: log_uniform(rng, 1e6, 1e9),
        conventions: ConventionFlags {
            occupancy_extra_two_pi: rng.random_bool(0.5),
            gamma_m_extra_division: rng.random_bool(0.5),
        },
    }
}

/// `n` draws from a fixed seed.
pub fn random_params_batch(seed: u64, n: usize) -> Vec<SystemParams> {
    let mut r = rng(seed);
    (0..n).map(|_| random_params(&mut r)).collect()
}

/// Log-spaced `ω` values in `[lo, hi]·scale`, with 0 prepended.
pub fn omega_grid(scale: f64, lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let mut out = vec![0.0];
    let (a, b) = (lo.ln(), hi.ln());
    for i in 0..points {
        let t = i as f64 / (points - 1) as f64;
        out.push(scale * (a + t * (b - a)).exp());
    }
    out
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
