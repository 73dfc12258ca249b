//! Physical inputs of the transducer and everything derived from them.
//!
//! Rates and frequencies are ordinary frequencies in Hz throughout: a rate
//! quoted as `γ/2π = 1.1 MHz` is stored as `1.1e6`. Every downstream formula is
//! homogeneous in the rate unit except the Bose-Einstein exponent, which is
//! the only place where `2π` and `ħ` enter.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant, J·s (CODATA, exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (CODATA, exact).
pub const K_B: f64 = 1.380_649e-23;
/// Planck constant, J·s.
pub const H: f64 = 2.0 * std::f64::consts::PI * HBAR;

/// Pump photon numbers below this trigger a linearization warning.
pub const LINEARIZATION_WARN_THRESHOLD: f64 = 1e3;

/// Toggles for two unit slips: one in the occupancy exponent, one in the
/// mechanical damping rate.
///
/// Both are off in the physical profile.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConventionFlags {
    /// Use `h·(2πf)/k_BT` instead of `ħ·(2πf)/k_BT` in the occupancy exponent.
    pub occupancy_extra_two_pi: bool,
    /// Use `γ_m/2π` in place of `γ_m` wherever the mechanical damping enters.
    pub gamma_m_extra_division: bool,
}

impl ConventionFlags {
    pub const PHYSICAL: Self = Self {
        occupancy_extra_two_pi: false,
        gamma_m_extra_division: false,
    };

    /// Occupancy slip only; used for the entanglement reference values.
    pub const OCCUPANCY_SLIP: Self = Self {
        occupancy_extra_two_pi: true,
        gamma_m_extra_division: false,
    };

    /// Damping slip only; used for the maximum-efficiency reference values.
    pub const DAMPING_SLIP: Self = Self {
        occupancy_extra_two_pi: false,
        gamma_m_extra_division: true,
    };
}

/// Raw physical parameters. Field names double as configuration keys.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    pub g_o_hz: f64,
    pub g_e_hz: f64,
    pub gamma_o_hz: f64,
    pub gamma_e_hz: f64,
    pub gamma_o_int_hz: f64,
    pub gamma_e_int_hz: f64,
    pub gamma_m_hz: f64,
    pub omega_o_hz: f64,
    pub omega_e_hz: f64,
    pub omega_m_hz: f64,
    pub temperature_k: f64,
    pub n_pump_o: f64,
    pub n_pump_e: f64,
    pub conventions: ConventionFlags,
}

impl Default for SystemParams {
    /// The operating point of the reference electro-optomechanical device.
    fn default() -> Self {
        Self {
            g_o_hz: 6.6,
            g_e_hz: 3.8,
            gamma_o_hz: 1.1e6,
            gamma_e_hz: 2.3e6,
            gamma_o_int_hz: 1.0e6,
            gamma_e_int_hz: 0.2e6,
            gamma_m_hz: 11.0,
            omega_o_hz: 282e12,
            omega_e_hz: 6e9,
            omega_m_hz: 1.4732e6,
            temperature_k: 35e-3,
            n_pump_o: 1.7e8,
            n_pump_e: 1.7e8,
            conventions: ConventionFlags::PHYSICAL,
        }
    }
}

impl SystemParams {
    pub fn with_conventions(mut self, conventions: ConventionFlags) -> Self {
        self.conventions = conventions;
        self
    }

    pub fn with_temperature(mut self, temperature_k: f64) -> Self {
        self.temperature_k = temperature_k;
        self
    }

    pub fn with_input_loss_rates(mut self, gamma_o_hz: f64, gamma_e_hz: f64) -> Self {
        self.gamma_o_hz = gamma_o_hz;
        self.gamma_e_hz = gamma_e_hz;
        self
    }

    fn strictly_positive(&self) -> [(&'static str, f64); 12] {
        [
            ("g_o_hz", self.g_o_hz),
            ("g_e_hz", self.g_e_hz),
            ("gamma_o_hz", self.gamma_o_hz),
            ("gamma_e_hz", self.gamma_e_hz),
            ("gamma_o_int_hz", self.gamma_o_int_hz),
            ("gamma_e_int_hz", self.gamma_e_int_hz),
            ("gamma_m_hz", self.gamma_m_hz),
            ("omega_o_hz", self.omega_o_hz),
            ("omega_e_hz", self.omega_e_hz),
            ("omega_m_hz", self.omega_m_hz),
            ("n_pump_o", self.n_pump_o),
            ("n_pump_e", self.n_pump_e),
        ]
    }

    /// Checks every invariant, naming the first offending field.
    pub fn validate(&self) -> Result<()> {
        for (field, value) in self.strictly_positive() {
            if !value.is_finite() {
                return Err(Error::validation(
                    field,
                    format!("must be finite, got {value}"),
                ));
            }
            if value <= 0.0 {
                return Err(Error::validation(
                    field,
                    format!("must be > 0, got {value}"),
                ));
            }
        }
        if !self.temperature_k.is_finite() || self.temperature_k < 0.0 {
            return Err(Error::validation(
                "temperature_k",
                format!("must be finite and >= 0, got {}", self.temperature_k),
            ));
        }
        Ok(())
    }

    /// Non-fatal remarks about the validity of the linearized model.
    pub fn warnings(&self) -> Vec<String> {
        [("n_pump_o", self.n_pump_o), ("n_pump_e", self.n_pump_e)]
            .into_iter()
            .filter(|(_, n)| *n < LINEARIZATION_WARN_THRESHOLD)
            .map(|(field, n)| {
                format!("{field} = {n} is small; the linearized model assumes N >> 1")
            })
            .collect()
    }

    /// Mechanical damping as used by the dynamics, after the convention flag.
    pub fn effective_gamma_m(&self) -> f64 {
        if self.conventions.gamma_m_extra_division {
            self.gamma_m_hz / (2.0 * std::f64::consts::PI)
        } else {
            self.gamma_m_hz
        }
    }
}

/// Quantities computed once from [`SystemParams`] and consumed everywhere else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Pump-enhanced couplings `g·√N`.
    pub big_g_o: f64,
    pub big_g_e: f64,
    /// Total cavity decay rates `γ + γ'`.
    pub total_decay_o: f64,
    pub total_decay_e: f64,
    pub n_th_o: f64,
    pub n_th_e: f64,
    pub n_th_m: f64,
    /// `G_o²Γ_e + G_e²Γ_o + Γ_oΓ_eγ_m`, the zero-frequency denominator.
    pub z: f64,
    pub gamma_o: f64,
    pub gamma_e: f64,
    pub gamma_o_int: f64,
    pub gamma_e_int: f64,
    /// Mechanical damping after [`ConventionFlags::gamma_m_extra_division`].
    pub gamma_m: f64,
    pub conventions: ConventionFlags,
}

/// Bose-Einstein occupancy of a mode at `frequency_hz`.
///
/// Returns exactly zero at zero temperature.
pub fn thermal_occupancy(frequency_hz: f64, temperature_k: f64, extra_two_pi: bool) -> f64 {
    if temperature_k == 0.0 {
        return 0.0;
    }
    let quantum = if extra_two_pi { H } else { HBAR };
    let x = quantum * 2.0 * std::f64::consts::PI * frequency_hz / (K_B * temperature_k);
    // exp_m1 overflows to +inf for optical frequencies, giving 0 as it should.
    1.0 / x.exp_m1()
}

/// Computes couplings, decay rates, occupancies and `Z`.
pub fn derive(params: &SystemParams) -> Result<DerivedParams> {
    params.validate()?;
    for w in params.warnings() {
        log::warn!("{w}");
    }
    let p = params;
    let big_g_o = p.g_o_hz * p.n_pump_o.sqrt();
    let big_g_e = p.g_e_hz * p.n_pump_e.sqrt();
    let total_decay_o = p.gamma_o_hz + p.gamma_o_int_hz;
    let total_decay_e = p.gamma_e_hz + p.gamma_e_int_hz;
    let gamma_m = p.effective_gamma_m();
    let extra = p.conventions.occupancy_extra_two_pi;
    let z = big_g_o * big_g_o * total_decay_e
        + big_g_e * big_g_e * total_decay_o
        + total_decay_o * total_decay_e * gamma_m;
    Ok(DerivedParams {
        big_g_o,
        big_g_e,
        total_decay_o,
        total_decay_e,
        n_th_o: thermal_occupancy(p.omega_o_hz, p.temperature_k, extra),
        n_th_e: thermal_occupancy(p.omega_e_hz, p.temperature_k, extra),
        n_th_m: thermal_occupancy(p.omega_m_hz, p.temperature_k, extra),
        z,
        gamma_o: p.gamma_o_hz,
        gamma_e: p.gamma_e_hz,
        gamma_o_int: p.gamma_o_int_hz,
        gamma_e_int: p.gamma_e_int_hz,
        gamma_m,
        conventions: p.conventions,
    })
}

impl DerivedParams {
    /// Copy with different pump-enhanced couplings; `z` follows.
    pub fn with_couplings(&self, big_g_o: f64, big_g_e: f64) -> Self {
        let z = big_g_o * big_g_o * self.total_decay_e
            + big_g_e * big_g_e * self.total_decay_o
            + self.total_decay_o * self.total_decay_e * self.gamma_m;
        Self {
            big_g_o,
            big_g_e,
            z,
            ..*self
        }
    }

    /// Copy with every thermal occupancy set to zero.
    pub fn noiseless(&self) -> Self {
        Self {
            n_th_o: 0.0,
            n_th_e: 0.0,
            n_th_m: 0.0,
            ..*self
        }
    }
}

/// Frequency shift of cavity `j` caused by the static radiation-pressure displacement.
fn static_shift(g_j: f64, params: &SystemParams) -> Result<f64> {
    if params.omega_m_hz == 0.0 {
        return Err(Error::Domain("omega_m_hz must be nonzero".into()));
    }
    Ok(
        g_j * (params.g_o_hz * params.n_pump_o + params.g_e_hz * params.n_pump_e)
            / params.omega_m_hz,
    )
}

/// Effective detuning `Δ_j = Δ_d,j − g_j(g_oN_o + g_eN_e)/ω_m` of a cavity driven at `delta_drive`.
pub fn effective_detuning(delta_drive: f64, g_j: f64, params: &SystemParams) -> Result<f64> {
    Ok(delta_drive - static_shift(g_j, params)?)
}

/// Drive detunings `(Δ_d,o, Δ_d,e)` that put both cavities on the red sideband `Δ_j = ω_m`.
pub fn required_pump_detunings(params: &SystemParams) -> Result<(f64, f64)> {
    params.validate()?;
    let shift_o = static_shift(params.g_o_hz, params)?;
    let shift_e = static_shift(params.g_e_hz, params)?;
    Ok((params.omega_m_hz + shift_o, params.omega_m_hz + shift_e))
}

/// Intracavity pump photon number `|E|²/(Γ² + Δ²)`.
pub fn pump_photon_number(field_strength: f64, total_decay: f64, detuning: f64) -> Result<f64> {
    if !(total_decay > 0.0) {
        return Err(Error::Domain(format!(
            "total decay rate must be > 0, got {total_decay}"
        )));
    }
    Ok(field_strength * field_strength / (total_decay * total_decay + detuning * detuning))
}
