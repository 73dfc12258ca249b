//! Entanglement-surviving capacity: the large-`N_S` limit of the converted
//! state's log-negativity.
//!
//! Writing `2ξ₋ = A(N) − √B(N)` with `A` affine and `B` quadratic in the signal
//! photon number `N`,
//!
//! ```text
//! A(N) = k1 + k2·N        B(N) = k3 + k4·N + k5·N²
//! ```
//!
//! the limit exists when `k2² = k5` and equals `−ln(k1 − k4/(2k2))`. The
//! coefficients are extracted exactly from the `d`-terms of
//! [`crate::gaussian::analytic_d_terms`].

use crate::compensated::TwoFloat;
use crate::error::{Error, Result};
use crate::gaussian::thermal_noise_term;
use crate::params::DerivedParams;
use crate::scattering::efficiency_closed_form;

/// Relative tolerance for the convergence condition `k2² = k5`.
pub const CONVERGENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KCoefficients {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub k5: f64,
}

/// Coefficients together with the capacity they imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityCoefficients {
    pub k: KCoefficients,
    pub p: f64,
    pub p_noiseless: f64,
}

/// `A(N)` and `B(N)` from the `d`-terms, in double-word arithmetic so that the
/// second difference defining `k5` survives a large thermal term.
fn affine_and_quadratic(r0: f64, noise: f64, n: f64) -> (TwoFloat, TwoFloat) {
    let one = TwoFloat::from(1.0);
    let d1 = TwoFloat::product(2.0 * r0, n) + one + TwoFloat::from(noise);
    let d2 = TwoFloat::from(2.0 * n) + one;
    let d3_sq = TwoFloat::product(4.0 * r0, n * (n + 1.0));
    let diff = d1 - d2;
    let a = (d1 + d2) * TwoFloat::from(0.5);
    let b = (diff * diff + TwoFloat::from(4.0) * d3_sq) * TwoFloat::from(0.25);
    (a, b)
}

/// Reads `k1..k5` off `A` and `B` at `N = 0, 1, 2`.
///
/// The `d`-terms are those of [`crate::gaussian::analytic_d_terms`].
pub fn extract_k_coefficients(dp: &DerivedParams) -> KCoefficients {
    let r0 = efficiency_closed_form(dp);
    let noise = thermal_noise_term(dp);
    let (a0, b0) = affine_and_quadratic(r0, noise, 0.0);
    let (a1, b1) = affine_and_quadratic(r0, noise, 1.0);
    let (_, b2) = affine_and_quadratic(r0, noise, 2.0);
    let k5 = (b2 - b1 - b1 + b0) * TwoFloat::from(0.5);
    KCoefficients {
        k1: a0.to_f64(),
        k2: (a1 - a0).to_f64(),
        k3: b0.to_f64(),
        k4: (b1 - b0 - k5).to_f64(),
        k5: k5.to_f64(),
    }
}

/// Capacity `P = max{0, −ln(k1 − k4/(2k2))}`.
pub fn capacity(dp: &DerivedParams) -> Result<f64> {
    capacity_from(&extract_k_coefficients(dp))
}

pub fn capacity_from(k: &KCoefficients) -> Result<f64> {
    let mismatch = (k.k2 * k.k2 - k.k5).abs() / k.k5.abs();
    if !(mismatch <= CONVERGENCE_TOL) {
        return Err(Error::Numerical(format!(
            "capacity does not converge: k2² = {}, k5 = {}",
            k.k2 * k.k2,
            k.k5
        )));
    }
    let arg = k.k1 - k.k4 / (2.0 * k.k2);
    if !(arg > 0.0) {
        return Err(Error::Unbounded(format!(
            "limit argument k1 − k4/(2k2) = {arg} is not positive"
        )));
    }
    Ok((-arg.ln()).max(0.0))
}

/// Zero-temperature capacity `−ln[1 − 2R(0)/(1 + R(0))]`.
pub fn capacity_noiseless(dp: &DerivedParams) -> Result<f64> {
    let r = efficiency_closed_form(dp);
    // 1 − 2R/(1+R) = (1−R)/(1+R)
    let arg = (1.0 - r) / (1.0 + r);
    if !(arg > 0.0) {
        return Err(Error::Unbounded(format!(
            "perfect conversion (R(0) = {r}) preserves unbounded entanglement"
        )));
    }
    Ok((-arg.ln()).max(0.0))
}

pub fn capacity_report(dp: &DerivedParams) -> Result<CapacityCoefficients> {
    let k = extract_k_coefficients(dp);
    Ok(CapacityCoefficients {
        k,
        p: capacity_from(&k)?,
        p_noiseless: capacity_noiseless(dp)?,
    })
}

/// Transcribed closed-form `k` polynomials evaluated next to the extracted coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppendixCheck {
    pub extracted: KCoefficients,
    pub printed: KCoefficients,
    /// `|printed − extracted| / |extracted|` for `k1..k5`.
    pub relative_deviation: [f64; 5],
}

impl AppendixCheck {
    /// Indices (0-based) of coefficients deviating by more than `tol`.
    pub fn mismatches(&self, tol: f64) -> Vec<usize> {
        (0..5)
            .filter(|&i| !(self.relative_deviation[i] <= tol))
            .collect()
    }
}

/// The `l1..l5` polynomials of the transcribed `k4`, term by term.
fn printed_l_terms(dp: &DerivedParams) -> [f64; 5] {
    let (no, ne, nm) = (dp.n_th_o, dp.n_th_e, dp.n_th_m);
    let ge = dp.big_g_e;
    let (to, te) = (dp.total_decay_o, dp.total_decay_e);
    let (yo, ye, yoi, yei, ym) = (
        dp.gamma_o,
        dp.gamma_e,
        dp.gamma_o_int,
        dp.gamma_e_int,
        dp.gamma_m,
    );
    let p = |x: f64, n: i32| x.powi(n);

    let loss_mix = ne * yei + nm * ye;
    let drive_mix = (-no * to + ne * yo + 2.0 * yo) * ye - ne * to * yei;

    let l1 = -ne * p(ge, 8) * p(to, 4) - 4.0 * p(ge, 6) * loss_mix * p(to, 4) * ym
        + 2.0 * p(ge, 4) * (ne * (ye - yei) - 4.0 * nm * ye) * p(to, 4) * te
        - 4.0 * p(ge, 2) * loss_mix * p(to, 4) * p(te, 2) * p(ym, 3)
        - ne * p(to, 4) * p(te, 4) * p(ym, 4);
    let l2 = 4.0 * p(ge, 6) * drive_mix * p(to, 2)
        - 8.0 * p(ge, 2) * loss_mix * p(to, 3) * p(te, 2) * p(ym, 2)
        + 4.0 * ge * drive_mix * p(to, 2) * p(te, 2) * p(ym, 2)
        - 4.0 * ne * p(to, 3) * p(te, 4) * p(ym, 3)
        + 4.0
            * p(ge, 4)
            * (((2.0 * no - ne - 2.0 * nm + 1.0) * ye * ye
                - (no + nm - 2.0) * ye * yei
                - 3.0 * ne * yei * yei)
                * yo
                + ((-2.0 * no + ne - 2.0 * nm) * ye - 3.0 * ne * yei) * yoi * te);
    let l3 = -4.0 * p(ge, 2) * loss_mix * p(to, 2) * p(te, 2) * ym
        + 8.0 * p(ge, 2) * drive_mix * to * p(te, 2) * ym
        + 2.0
            * p(ge, 4)
            * (((4.0 * no - 3.0 * ne + 8.0) * ye * ye + 2.0 * (4.0 - 2.0 * no + ne) * ye * yei
                - 3.0 * ne * yei * yei)
                * yo
                + ((-no + 4.0 * ne) * ye - 3.0 * ne * yei) * yoi * te)
        - 6.0 * ne * p(to, 2) * p(te, 4) * p(ym, 2);
    let l4 = 4.0 * p(ge, 2) * (((2.0 + ne) * yo - no * to) * ye - ne * to * yei) * p(te, 2)
        - 4.0 * ne * to * p(te, 4) * ym;
    let l5 = -ne * p(te, 4);
    [l1, l2, l3, l4, l5]
}

/// Compares the transcribed closed-form coefficients with exact extraction.
///
/// `k1` is read with `G_e²` in its prefactor; `k4` uses `l4` where the
/// source sum repeats `l5`. The `k4` deviation is reported, not judged.
pub fn check_printed_appendix(dp: &DerivedParams) -> AppendixCheck {
    let extracted = extract_k_coefficients(dp);
    let go2 = dp.big_g_o * dp.big_g_o;
    let ge2 = dp.big_g_e * dp.big_g_e;
    let z2 = dp.z * dp.z;
    let r0 = 4.0 * go2 * ge2 * dp.gamma_o * dp.gamma_e / z2;
    let mech = dp.total_decay_o * dp.gamma_m;
    let bracket = go2 * dp.n_th_o - (go2 + mech) * dp.n_th_e + mech * dp.n_th_m;
    let half_noise = dp.n_th_e + 4.0 * ge2 * dp.total_decay_o * dp.gamma_e / z2 * bracket;
    let [l1, l2, l3, l4, l5] = printed_l_terms(dp);
    let z4 = dp.z.powi(4);
    let printed = KCoefficients {
        k1: 1.0 + half_noise,
        k2: 1.0 + r0,
        k3: half_noise * half_noise,
        k4: 2.0 / z4 * ((((l1 * go2 + l2) * go2 + l3) * go2 + l4) * go2 + l5),
        k5: 1.0 + 2.0 * r0 + r0 * r0,
    };
    let e = [
        extracted.k1,
        extracted.k2,
        extracted.k3,
        extracted.k4,
        extracted.k5,
    ];
    let q = [printed.k1, printed.k2, printed.k3, printed.k4, printed.k5];
    let mut relative_deviation = [0.0; 5];
    for i in 0..5 {
        relative_deviation[i] = if e[i] == q[i] {
            0.0
        } else {
            (q[i] - e[i]).abs() / e[i].abs()
        };
    }
    AppendixCheck {
        extracted,
        printed,
        relative_deviation,
    }
}
