//! Frequency-domain input-output map of the linearized transducer.
//!
//! The microwave output is a linear combination of the five input channels
//!
//! ```text
//! β_out(ω) = c1·α_in + c2·β_in + c3·α_loss + c4·β_loss + c5·c_loss
//! ```
//!
//! with the Fourier convention `d/dt → iω`, so every cavity contributes a
//! factor `iω + Γ`. [`solve_qle_oracle`] obtains the coefficients by solving
//! the Langevin equations directly; [`coefficients`] evaluates closed forms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linsolve;
use crate::params::{derive, DerivedParams, SystemParams};

/// Input channels in the order the coefficients are stored.
pub const CHANNELS: [&str; 5] = ["alpha_in", "beta_in", "alpha_loss", "beta_loss", "c_loss"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringSolution {
    /// Sideband offset from resonance, Hz.
    pub omega_hz: f64,
    /// `c1..c5`, see [`CHANNELS`].
    pub coefficients: [Complex64; 5],
    /// Conversion efficiency `R(ω) = |c1|²`.
    pub efficiency: f64,
}

impl ScatteringSolution {
    fn new(omega_hz: f64, coefficients: [Complex64; 5]) -> Self {
        Self {
            omega_hz,
            coefficients,
            efficiency: coefficients[0].norm_sqr(),
        }
    }

    pub fn c1(&self) -> Complex64 {
        self.coefficients[0]
    }

    pub fn weights(&self) -> [f64; 5] {
        self.coefficients.map(|c| c.norm_sqr())
    }

    /// `Σ|c_i|²`; one for a passive, commutator-preserving map.
    pub fn total_weight(&self) -> f64 {
        self.weights().iter().sum()
    }

    /// Mean photon number in `β_out` when the optical input carries `n_s` signal photons
    /// on top of the thermal background.
    pub fn output_occupancy(&self, dp: &DerivedParams, n_s: f64) -> f64 {
        let w = self.weights();
        w[0] * (n_s + dp.n_th_o)
            + w[1] * dp.n_th_e
            + w[2] * dp.n_th_o
            + w[3] * dp.n_th_e
            + w[4] * dp.n_th_m
    }
}

fn i(omega: f64) -> Complex64 {
    Complex64::new(0.0, omega)
}

/// Solves the three coupled Langevin equations at `omega_hz` once per input channel.
///
/// Uses no closed-form coefficient expressions; it is the reference the closed
/// forms are tested against.
pub fn solve_qle_oracle(dp: &DerivedParams, omega_hz: f64) -> Result<ScatteringSolution> {
    let zero = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let iw = i(omega_hz);
    let a = [
        [iw + dp.total_decay_o, zero, i(dp.big_g_o)],
        [zero, iw + dp.total_decay_e, i(dp.big_g_e)],
        [i(dp.big_g_o), i(dp.big_g_e), iw + dp.gamma_m],
    ];
    let s = |rate: f64| re((2.0 * rate).sqrt());
    let b = [
        [s(dp.gamma_o), zero, s(dp.gamma_o_int), zero, zero],
        [zero, s(dp.gamma_e), zero, s(dp.gamma_e_int), zero],
        [zero, zero, zero, zero, s(dp.gamma_m)],
    ];
    let x = linsolve::solve_refined(a, b, 2).map_err(|e| match e {
        Error::Singular {
            context,
            pivot_ratio,
        } => Error::Singular {
            context: format!("Langevin system at omega = {omega_hz} Hz: {context}"),
            pivot_ratio,
        },
        other => other,
    })?;
    let out_gain = s(dp.gamma_e);
    let mut coefficients = [zero; 5];
    for (k, c) in coefficients.iter_mut().enumerate() {
        *c = out_gain * x[1][k];
    }
    // β_out = √(2γ_e)β − β_in
    coefficients[1] -= 1.0;
    Ok(ScatteringSolution::new(omega_hz, coefficients))
}

/// Mechanical-optical factor `M(ω) = G_o² + (iω + γ_m)(iω + Γ_o)`.
fn mech_factor(dp: &DerivedParams, omega_hz: f64) -> Complex64 {
    let iw = i(omega_hz);
    dp.big_g_o * dp.big_g_o + (iw + dp.gamma_m) * (iw + dp.total_decay_o)
}

/// Microwave-cavity response `D(ω) = iω + Γ_e + G_e²(iω + Γ_o)/M(ω)`.
fn cavity_factor(dp: &DerivedParams, omega_hz: f64, m: Complex64) -> Complex64 {
    let iw = i(omega_hz);
    iw + dp.total_decay_e + dp.big_g_e * dp.big_g_e * (iw + dp.total_decay_o) / m
}

/// Closed-form coefficients `c1..c5` at `omega_hz`.
pub fn coefficients(dp: &DerivedParams, omega_hz: f64) -> Result<ScatteringSolution> {
    let m = mech_factor(dp, omega_hz);
    let d = cavity_factor(dp, omega_hz, m);
    let dm = d * m;
    if dm.norm() == 0.0 || !dm.is_finite() {
        return Err(Error::Singular {
            context: format!("D(ω)M(ω) vanished at omega = {omega_hz} Hz"),
            pivot_ratio: 0.0,
        });
    }
    let (go, ge) = (dp.big_g_o, dp.big_g_e);
    let ye = dp.gamma_e;
    let c1 = -2.0 * go * ge * (dp.gamma_o * ye).sqrt() / dm;
    let c2 = 2.0 * ye / d - 1.0;
    let c3 = -2.0 * go * ge * (dp.gamma_o_int * ye).sqrt() / dm;
    let c4 = 2.0 * (ye * dp.gamma_e_int).sqrt() / d;
    let c5 = -2.0 * i(1.0) * ge * (ye * dp.gamma_m).sqrt() * (i(omega_hz) + dp.total_decay_o) / dm;
    Ok(ScatteringSolution::new(omega_hz, [c1, c2, c3, c4, c5]))
}

/// `D(0)·M(0)`, which equals `Z` identically.
pub fn zero_frequency_denominator(dp: &DerivedParams) -> f64 {
    let m = mech_factor(dp, 0.0);
    (cavity_factor(dp, 0.0, m) * m).re
}

/// Conversion efficiency `R(0) = 4G_o²G_e²γ_oγ_e/Z²`.
pub fn efficiency_closed_form(dp: &DerivedParams) -> f64 {
    let num = 2.0 * dp.big_g_o * dp.big_g_e * (dp.gamma_o * dp.gamma_e).sqrt();
    let r = num / dp.z;
    r * r
}

/// Input loss rates `(γ_o, γ_e)` maximizing `R(0)` with all other parameters fixed.
///
/// The incoming `gamma_o_hz`/`gamma_e_hz` are ignored. Honors
/// `gamma_m_extra_division` through the derived damping rate.
pub fn optimal_input_loss_rates(params: &SystemParams) -> Result<(f64, f64)> {
    let dp = derive(params)?;
    let go2 = dp.big_g_o * dp.big_g_o;
    let ge2 = dp.big_g_e * dp.big_g_e;
    let ym = dp.gamma_m;
    let opt_o = go2 + dp.gamma_o_int * ym;
    let opt_e = ge2 + dp.gamma_e_int * ym;
    let shared = ge2 * dp.gamma_o_int + opt_o * dp.gamma_e_int;
    let gamma_o = (opt_o * shared / (opt_e * ym)).sqrt();
    let gamma_e = (opt_e * shared / (opt_o * ym)).sqrt();
    Ok((gamma_o, gamma_e))
}

/// Photon-number ratio `⟨β_out†β_out⟩ / N_S`, the "amplitude" conversion efficiency
/// reported by experiments. Exceeds `R(ω)` whenever the baths are warm.
pub fn amplitude_ratio(dp: &DerivedParams, n_s: f64, omega_hz: f64) -> Result<f64> {
    if !(n_s > 0.0) || !n_s.is_finite() {
        return Err(Error::Domain(format!(
            "amplitude ratio needs a positive signal photon number, got {n_s}"
        )));
    }
    let sol = coefficients(dp, omega_hz)?;
    Ok(sol.output_occupancy(dp, n_s) / n_s)
}
