//! Two-mode Gaussian states in the covariance-matrix picture.
//!
//! Quadratures are ordered `(x_S, p_S, x_I, p_I)` with `x = (a† + a)/√2`, so the
//! vacuum has variance 1/2. Entanglement is read off the smallest symplectic
//! eigenvalue of the partially transposed matrix.

use crate::compensated::TwoFloat;
use crate::error::{Error, Result};
use crate::params::DerivedParams;
use crate::scattering::{coefficients, efficiency_closed_form};

/// Slack allowed on the uncertainty principle (`ν ≥ 1/2`).
pub const BONA_FIDE_TOL: f64 = 1e-9;
/// `ξ₋` within this distance below 1/2 still counts as separable.
pub const SEPARABILITY_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;
const DISCRIMINANT_TOL: f64 = 1e-12;

type Block = [[f64; 2]; 2];

/// Real symmetric 4×4 covariance matrix `V = [[A, C], [Cᵀ, B]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    v: [[f64; 4]; 4],
}

/// Partially transposed symplectic eigenvalues and the log-negativity they imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub xi_minus: f64,
    pub xi_plus: f64,
    pub ln_value: f64,
}

/// Determinant invariants of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy)]
struct Invariants {
    det_a: TwoFloat,
    det_b: TwoFloat,
    det_c: TwoFloat,
    det_v: TwoFloat,
}

fn det_block(m: &Block) -> TwoFloat {
    TwoFloat::det2(m[0][0], m[0][1], m[1][0], m[1][1])
}

impl CovarianceMatrix {
    /// Validates symmetry, positivity and the uncertainty principle.
    pub fn new(v: [[f64; 4]; 4]) -> Result<Self> {
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Numerical(
                "covariance matrix has non-finite entries".into(),
            ));
        }
        let scale = v.iter().flatten().fold(1.0_f64, |m, x| m.max(x.abs()));
        for r in 0..4 {
            for c in r + 1..4 {
                if (v[r][c] - v[c][r]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::Numerical(format!(
                        "covariance matrix not symmetric at ({r},{c})"
                    )));
                }
            }
        }
        let cm = Self { v };
        let inv = cm.invariants();
        let leading = [
            v[0][0],
            det_block(&cm.a()).to_f64(),
            cm.leading_minor3(),
            inv.det_v.to_f64(),
        ];
        if leading.iter().any(|&d| d <= 0.0) {
            return Err(Error::Numerical(
                "covariance matrix not positive definite".into(),
            ));
        }
        // ν₋ ≥ 1/2 ⇔ 16 Det V − 4Δ + 1 ≥ 0 and Det V ≥ 1/16. Testing the polynomial
        // avoids the square root, which is ill-conditioned for pure states.
        let delta = inv.det_a + inv.det_b + inv.det_c + inv.det_c;
        let scale = 1.0_f64.max(
            4.0 * (inv.det_a.to_f64().abs()
                + inv.det_b.to_f64().abs()
                + 2.0 * inv.det_c.to_f64().abs()),
        );
        let margin = (TwoFloat::from(16.0) * inv.det_v - TwoFloat::from(4.0) * delta
            + TwoFloat::from(1.0))
        .to_f64();
        let det_margin = (TwoFloat::from(16.0) * inv.det_v - TwoFloat::from(1.0)).to_f64();
        if margin < -BONA_FIDE_TOL * scale || det_margin < -BONA_FIDE_TOL * scale {
            return Err(Error::Numerical(
                "covariance matrix violates the uncertainty principle".into(),
            ));
        }
        Ok(cm)
    }

    /// Assembles `V` from its blocks; `C` couples signal (rows) to idler (columns).
    pub fn from_blocks(a: Block, b: Block, c: Block) -> Result<Self> {
        let mut v = [[0.0; 4]; 4];
        for r in 0..2 {
            for s in 0..2 {
                v[r][s] = a[r][s];
                v[r + 2][s + 2] = b[r][s];
                v[r][s + 2] = c[r][s];
                v[s + 2][r] = c[r][s];
            }
        }
        Self::new(v)
    }

    pub fn matrix(&self) -> &[[f64; 4]; 4] {
        &self.v
    }

    fn block(&self, row: usize, col: usize) -> Block {
        [
            [self.v[row][col], self.v[row][col + 1]],
            [self.v[row + 1][col], self.v[row + 1][col + 1]],
        ]
    }

    pub fn a(&self) -> Block {
        self.block(0, 0)
    }

    pub fn b(&self) -> Block {
        self.block(2, 2)
    }

    pub fn c(&self) -> Block {
        self.block(0, 2)
    }

    pub fn det_a(&self) -> f64 {
        det_block(&self.a()).to_f64()
    }

    pub fn det_b(&self) -> f64 {
        det_block(&self.b()).to_f64()
    }

    pub fn det_c(&self) -> f64 {
        det_block(&self.c()).to_f64()
    }

    pub fn det(&self) -> f64 {
        self.det4().to_f64()
    }

    fn leading_minor3(&self) -> f64 {
        let v = &self.v;
        let cof = |r1: usize, r2: usize, c1: usize, c2: usize| {
            TwoFloat::det2(v[r1][c1], v[r1][c2], v[r2][c1], v[r2][c2])
        };
        (TwoFloat::from(v[0][0]) * cof(1, 2, 1, 2) - TwoFloat::from(v[0][1]) * cof(1, 2, 0, 2)
            + TwoFloat::from(v[0][2]) * cof(1, 2, 0, 1))
        .to_f64()
    }

    /// Laplace expansion along the first two rows, in double-word arithmetic.
    ///
    /// Strongly entangled states have `Det V` many orders of magnitude below
    /// the products it is assembled from.
    fn det4(&self) -> TwoFloat {
        let v = &self.v;
        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut acc = TwoFloat::ZERO;
        for &(j, k) in &PAIRS {
            let (p, q) = match (j, k) {
                (0, 1) => (2, 3),
                (0, 2) => (1, 3),
                (0, 3) => (1, 2),
                (1, 2) => (0, 3),
                (1, 3) => (0, 2),
                _ => (0, 1),
            };
            let top = TwoFloat::det2(v[0][j], v[0][k], v[1][j], v[1][k]);
            let bottom = TwoFloat::det2(v[2][p], v[2][q], v[3][p], v[3][q]);
            let term = top * bottom;
            acc = if (j + k) % 2 == 1 {
                acc + term
            } else {
                acc - term
            };
        }
        acc
    }

    fn invariants(&self) -> Invariants {
        Invariants {
            det_a: det_block(&self.a()),
            det_b: det_block(&self.b()),
            det_c: det_block(&self.c()),
            det_v: self.det4(),
        }
    }

    /// Symplectic eigenvalues `(ν₋, ν₊)` of the state itself (no transposition).
    pub fn symplectic_eigenvalues(&self) -> Result<(f64, f64)> {
        let inv = self.invariants();
        symplectic_pair(inv.det_a + inv.det_b + inv.det_c + inv.det_c, inv.det_v)
    }
}

/// Positive roots of `ξ⁴ − Δ·ξ² + det = 0`, smaller first.
fn symplectic_pair(delta: TwoFloat, det_v_wide: TwoFloat) -> Result<(f64, f64)> {
    let delta_f = delta.to_f64();
    let det_v = det_v_wide.to_f64();
    if !(det_v > 0.0) || !(delta_f > 0.0) {
        return Err(Error::Numerical(format!(
            "invalid invariants: Δ = {delta_f}, Det V = {det_v}"
        )));
    }
    let disc = (delta * delta - TwoFloat::from(4.0) * det_v_wide).to_f64();
    let disc = if disc < 0.0 {
        if disc < -DISCRIMINANT_TOL * delta_f * delta_f {
            return Err(Error::Numerical(format!(
                "negative discriminant {disc:e} in symplectic spectrum"
            )));
        }
        0.0
    } else {
        disc
    };
    // Larger root first; the smaller one from Vieta avoids the cancellation.
    let plus_sq = 0.5 * (delta_f + disc.sqrt());
    let minus_sq = det_v / plus_sq;
    Ok((minus_sq.sqrt(), plus_sq.sqrt()))
}

/// `√(n(n+1))`, the signal-idler correlation of a two-mode squeezed vacuum.
pub fn tmsv_correlation(n_s: f64) -> f64 {
    (n_s * (n_s + 1.0)).sqrt()
}

fn check_photon_number(n_s: f64) -> Result<()> {
    if n_s.is_finite() && n_s >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "mean photon number must be finite and >= 0, got {n_s}"
        )))
    }
}

/// Two-mode squeezed vacuum with `n_s` photons per mode.
pub fn tmsv_covariance(n_s: f64) -> Result<CovarianceMatrix> {
    check_photon_number(n_s)?;
    let d = n_s + 0.5;
    let m = tmsv_correlation(n_s);
    CovarianceMatrix::from_blocks(
        [[d, 0.0], [0.0, d]],
        [[d, 0.0], [0.0, d]],
        [[m, 0.0], [0.0, -m]],
    )
}

/// State after the signal arm of a TMSV passes through the transducer at `omega_hz`.
///
/// The idler is kept ideally; the signal block picks up the thermal noise of
/// every bath the converter couples in.
pub fn ctmg_covariance(dp: &DerivedParams, n_s: f64, omega_hz: f64) -> Result<CovarianceMatrix> {
    check_photon_number(n_s)?;
    let sol = coefficients(dp, omega_hz)?;
    let a = sol.output_occupancy(dp, n_s) + 0.5;
    let b = n_s + 0.5;
    let m = sol.c1() * tmsv_correlation(n_s);
    CovarianceMatrix::from_blocks(
        [[a, 0.0], [0.0, a]],
        [[b, 0.0], [0.0, b]],
        [[m.re, m.im], [m.im, -m.re]],
    )
}

/// `(ξ₋, ξ₊)` of the partially transposed state, from
/// `ξ⁴ − (Det A + Det B − 2 Det C)ξ² + Det V = 0`.
pub fn pt_symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<(f64, f64)> {
    let inv = cm.invariants();
    symplectic_pair(inv.det_a + inv.det_b - inv.det_c - inv.det_c, inv.det_v)
}

/// `max{0, −ln 2ξ₋}`, treating `ξ₋ ≥ 1/2 − SEPARABILITY_TOL` as separable.
pub fn ln_from_xi(xi_minus: f64) -> f64 {
    if xi_minus >= 0.5 - SEPARABILITY_TOL {
        0.0
    } else {
        -(2.0 * xi_minus).ln()
    }
}

pub fn log_negativity(cm: &CovarianceMatrix) -> Result<EntanglementReport> {
    let (xi_minus, xi_plus) = pt_symplectic_eigenvalues(cm)?;
    Ok(EntanglementReport {
        xi_minus,
        xi_plus,
        ln_value: ln_from_xi(xi_minus),
    })
}

/// `−ln(2n + 1 − 2√(n(n+1)))`, the log-negativity of a TMSV.
///
/// Evaluated as written, it is the exact log-negativity of the matrix built by
/// [`tmsv_covariance`] (the subtraction is exact for `n ≳ 1/3`); its error
/// against the infinitely precise state grows like `4n²ε`.
pub fn ln_tmsv_closed_form(n_s: f64) -> Result<f64> {
    check_photon_number(n_s)?;
    let two_xi = 2.0 * n_s + 1.0 - 2.0 * tmsv_correlation(n_s);
    Ok(-two_xi.ln())
}

/// The three scalars that fix `ξ₋` of the converted state at `ω = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DTerms {
    /// Twice the converted-signal variance.
    pub d1: f64,
    /// Twice the idler variance.
    pub d2: f64,
    /// Twice the cross-correlation magnitude.
    pub d3: f64,
}

/// Thermal contribution to `d1`, independent of the signal photon number.
pub fn thermal_noise_term(dp: &DerivedParams) -> f64 {
    let go2 = dp.big_g_o * dp.big_g_o;
    let ge2 = dp.big_g_e * dp.big_g_e;
    let mech = dp.total_decay_o * dp.gamma_m;
    let bracket = go2 * dp.n_th_o - (go2 + mech) * dp.n_th_e + mech * dp.n_th_m;
    2.0 * dp.n_th_e + 8.0 * ge2 * dp.total_decay_o * dp.gamma_e / (dp.z * dp.z) * bracket
}

pub fn analytic_d_terms(dp: &DerivedParams, n_s: f64) -> DTerms {
    let r0 = efficiency_closed_form(dp);
    DTerms {
        d1: 2.0 * r0 * n_s + 1.0 + thermal_noise_term(dp),
        d2: 2.0 * n_s + 1.0,
        d3: 2.0 * (r0 * n_s * (n_s + 1.0)).sqrt(),
    }
}

/// `ξ₋` of the converted state at `ω = 0` in closed form.
pub fn xi_minus_analytic(dp: &DerivedParams, n_s: f64) -> Result<f64> {
    check_photon_number(n_s)?;
    let DTerms { d1, d2, d3 } = analytic_d_terms(dp, n_s);
    let spread = ((d1 - d2) * (d1 - d2) + 4.0 * d3 * d3).sqrt();
    Ok(0.25 * (d1 + d2 - spread))
}
