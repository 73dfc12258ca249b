//! Parameter sweeps and searches over photon number and input loss rates.
//!
//! Loss-rate searches run in natural-log coordinates: the rates of interest
//! span several decades and the landscapes are smooth and single-peaked there.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{ctmg_covariance, ln_tmsv_closed_form, log_negativity};
use crate::optimize::{golden_section_max, NelderMead};
use crate::params::{derive, ConventionFlags, DerivedParams, SystemParams};
use crate::scattering::efficiency_closed_form;

/// Default grid for LN-versus-photon-number curves.
pub const NS_GRID: LogGrid = LogGrid {
    min: 1e-3,
    max: 1e3,
    points: 241,
};

/// Default axis for loss-rate landscapes, Hz.
pub const LOSS_RATE_GRID: LogGrid = LogGrid {
    min: 1e4,
    max: 1e10,
    points: 101,
};

/// Points per axis of the coarse scan that seeds the simplex.
pub const SEED_GRID_POINTS: usize = 41;
/// Points of the coarse scan that brackets the surviving-ratio maximum.
pub const RATIO_BRACKET_POINTS: usize = 97;
pub const RATIO_REL_TOL: f64 = 1e-9;

/// Logarithmically spaced grid, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl LogGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        let grid = Self { min, max, points };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if !(self.min > 0.0 && self.min.is_finite()) {
            return Err(Error::validation(
                "min",
                format!("must be > 0, got {}", self.min),
            ));
        }
        if !(self.max.is_finite() && self.max >= self.min) {
            return Err(Error::validation(
                "max",
                format!("must be finite and >= min, got {}", self.max),
            ));
        }
        if self.points == 0 || (self.points == 1 && self.max != self.min) {
            return Err(Error::validation(
                "points",
                format!(
                    "need at least 2 points for a non-degenerate range, got {}",
                    self.points
                ),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        self.validate()?;
        if self.points == 1 {
            return Ok(vec![self.min]);
        }
        let (lo, hi) = (self.min.ln(), self.max.ln());
        let last = self.points - 1;
        Ok((0..self.points)
            .map(|i| match i {
                0 => self.min,
                i if i == last => self.max,
                i => (lo + (hi - lo) * i as f64 / last as f64).exp(),
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMetadata {
    pub description: String,
    pub conventions: ConventionFlags,
    /// Named scalar settings (`omega_hz`, `n_s`, ...).
    pub fixed: Vec<(String, f64)>,
}

/// Tabulated sweep, rows in grid order (first axis outermost).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimumReport {
    /// Argmax coordinates (photon number, or `[γ_o, γ_e]` in Hz).
    pub point: Vec<f64>,
    pub value: f64,
    /// Secondary quantity at the argmax, e.g. `R(0)` at the LN optimum.
    pub auxiliary: Option<f64>,
    pub iterations: usize,
    pub tolerance: f64,
    pub converged: bool,
    /// The maximum sits on the edge of the search domain.
    pub at_boundary: bool,
}

/// `(LN_TMSV, LN_CTMG)` at one photon number.
pub fn ln_pair(dp: &DerivedParams, n_s: f64, omega_hz: f64) -> Result<(f64, f64)> {
    let ln_tmsv = ln_tmsv_closed_form(n_s)?;
    let ln_ctmg = log_negativity(&ctmg_covariance(dp, n_s, omega_hz)?)?.ln_value;
    Ok((ln_tmsv, ln_ctmg))
}

/// `LN_CTMG / LN_TMSV`, zero where the input carries no entanglement.
pub fn surviving_ratio(dp: &DerivedParams, n_s: f64, omega_hz: f64) -> Result<f64> {
    let (t, c) = ln_pair(dp, n_s, omega_hz)?;
    Ok(if t > 0.0 { c / t } else { 0.0 })
}

/// Columns `ns, ln_tmsv, ln_ctmg, ratio`.
pub fn sweep_ln_vs_ns(dp: &DerivedParams, ns_values: &[f64], omega_hz: f64) -> Result<SweepResult> {
    let rows = ns_values
        .iter()
        .map(|&n| {
            let (t, c) = ln_pair(dp, n, omega_hz)?;
            let ratio = if t > 0.0 { c / t } else { 0.0 };
            Ok(vec![n, t, c, ratio])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        columns: ["ns", "ln_tmsv", "ln_ctmg", "ratio"]
            .map(String::from)
            .to_vec(),
        rows,
        metadata: SweepMetadata {
            description: "log-negativity versus signal photon number".into(),
            conventions: dp.conventions,
            fixed: vec![("omega_hz".into(), omega_hz)],
        },
    })
}

/// Maximizes the surviving ratio at `ω = 0` over `bracket`.
///
/// A log-spaced scan locates the best interior point; golden-section search
/// then refines between its neighbours. A maximum on the scan's edge is
/// reported with `at_boundary` set and is not refined.
pub fn maximize_surviving_ratio(dp: &DerivedParams, bracket: (f64, f64)) -> Result<OptimumReport> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Domain(format!("invalid bracket ({lo}, {hi})")));
    }
    let grid = LogGrid::new(lo, hi, RATIO_BRACKET_POINTS)?.values()?;
    let values = grid
        .iter()
        .map(|&n| surviving_ratio(dp, n, 0.0))
        .collect::<Result<Vec<_>>>()?;
    let best = argmax(&values);
    if best == 0 || best == grid.len() - 1 {
        return Ok(OptimumReport {
            point: vec![grid[best]],
            value: values[best],
            auxiliary: None,
            iterations: 0,
            tolerance: f64::NAN,
            converged: false,
            at_boundary: true,
        });
    }
    let objective = |n: f64| surviving_ratio(dp, n, 0.0).unwrap_or(f64::NEG_INFINITY);
    let line = golden_section_max(
        objective,
        grid[best - 1],
        grid[best + 1],
        RATIO_REL_TOL,
        500,
    );
    Ok(OptimumReport {
        point: vec![line.x],
        value: line.value,
        auxiliary: None,
        iterations: line.iterations,
        tolerance: line.tolerance,
        converged: line.tolerance <= RATIO_REL_TOL,
        at_boundary: false,
    })
}

/// What a loss-rate landscape evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum LossObjective {
    /// `R(0)`.
    Efficiency,
    /// Log-negativity of the converted state.
    LogNegativity { n_s: f64, omega_hz: f64 },
}

impl LossObjective {
    fn column(&self) -> &'static str {
        match self {
            LossObjective::Efficiency => "r0",
            LossObjective::LogNegativity { .. } => "ln",
        }
    }

    fn evaluate(&self, dp: &DerivedParams) -> Result<f64> {
        match *self {
            LossObjective::Efficiency => Ok(efficiency_closed_form(dp)),
            LossObjective::LogNegativity { n_s, omega_hz } => {
                Ok(log_negativity(&ctmg_covariance(dp, n_s, omega_hz)?)?.ln_value)
            }
        }
    }
}

/// Evaluates `objective` with the input loss rates replaced by each `(γ_o, γ_e)` pair.
pub fn evaluate_at_loss_rates(
    params: &SystemParams,
    gamma_o_hz: f64,
    gamma_e_hz: f64,
    objective: LossObjective,
) -> Result<f64> {
    objective.evaluate(&derive(
        &params.with_input_loss_rates(gamma_o_hz, gamma_e_hz),
    )?)
}

/// Columns `gamma_o_hz, gamma_e_hz, <objective>` with `γ_o` as the outer axis.
pub fn sweep_loss_rates(
    params: &SystemParams,
    gamma_o_values: &[f64],
    gamma_e_values: &[f64],
    objective: LossObjective,
) -> Result<SweepResult> {
    let mut rows = Vec::with_capacity(gamma_o_values.len() * gamma_e_values.len());
    for &go in gamma_o_values {
        for &ge in gamma_e_values {
            rows.push(vec![
                go,
                ge,
                evaluate_at_loss_rates(params, go, ge, objective)?,
            ]);
        }
    }
    let fixed = match objective {
        LossObjective::Efficiency => vec![("omega_hz".into(), 0.0)],
        LossObjective::LogNegativity { n_s, omega_hz } => {
            vec![("n_s".into(), n_s), ("omega_hz".into(), omega_hz)]
        }
    };
    Ok(SweepResult {
        columns: vec![
            "gamma_o_hz".into(),
            "gamma_e_hz".into(),
            objective.column().into(),
        ],
        rows,
        metadata: SweepMetadata {
            description: format!("{} over input loss rates", objective.column()),
            conventions: params.conventions,
            fixed,
        },
    })
}

/// Rectangular search domain for `(γ_o, γ_e)`, Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossRateBounds {
    pub gamma_o: (f64, f64),
    pub gamma_e: (f64, f64),
}

impl Default for LossRateBounds {
    fn default() -> Self {
        Self {
            gamma_o: (LOSS_RATE_GRID.min, LOSS_RATE_GRID.max),
            gamma_e: (LOSS_RATE_GRID.min, LOSS_RATE_GRID.max),
        }
    }
}

impl LossRateBounds {
    pub fn square(min: f64, max: f64) -> Self {
        Self {
            gamma_o: (min, max),
            gamma_e: (min, max),
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, (lo, hi)) in [("gamma_o", self.gamma_o), ("gamma_e", self.gamma_e)] {
            if !(lo > 0.0 && hi > lo && hi.is_finite()) {
                return Err(Error::validation(
                    name,
                    format!("invalid bounds ({lo}, {hi})"),
                ));
            }
        }
        Ok(())
    }
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Coarse log-grid scan, then a simplex in `(ln γ_o, ln γ_e)` seeded at the best cell.
pub fn maximize_over_loss_rates(
    params: &SystemParams,
    bounds: LossRateBounds,
    objective: LossObjective,
) -> Result<OptimumReport> {
    params.validate()?;
    bounds.validate()?;
    let axis_o = LogGrid::new(bounds.gamma_o.0, bounds.gamma_o.1, SEED_GRID_POINTS)?.values()?;
    let axis_e = LogGrid::new(bounds.gamma_e.0, bounds.gamma_e.1, SEED_GRID_POINTS)?.values()?;
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for &go in &axis_o {
        for &ge in &axis_e {
            let v = evaluate_at_loss_rates(params, go, ge, objective)?;
            if v > best.2 {
                best = (go, ge, v);
            }
        }
    }
    let log_lo = [bounds.gamma_o.0.ln(), bounds.gamma_e.0.ln()];
    let log_hi = [bounds.gamma_o.1.ln(), bounds.gamma_e.1.ln()];
    let step: Vec<f64> = (0..2)
        .map(|k| (log_hi[k] - log_lo[k]) / (SEED_GRID_POINTS - 1) as f64)
        .collect();
    let f = |x: &[f64]| {
        if (0..2).any(|k| x[k] < log_lo[k] || x[k] > log_hi[k]) {
            return f64::NAN;
        }
        evaluate_at_loss_rates(params, x[0].exp(), x[1].exp(), objective).unwrap_or(f64::NAN)
    };
    let start = [best.0.ln(), best.1.ln()];
    // Step towards the interior so the initial simplex stays inside the box.
    let step: Vec<f64> = (0..2)
        .map(|k| {
            if start[k] + step[k] > log_hi[k] {
                -step[k]
            } else {
                step[k]
            }
        })
        .collect();
    let simplex = NelderMead::default().maximize(f, &start, &step);
    let point: Vec<f64> = simplex.point.iter().map(|x| x.exp()).collect();
    let edge = 1e-6;
    let at_boundary =
        (0..2).any(|k| simplex.point[k] - log_lo[k] < edge || log_hi[k] - simplex.point[k] < edge);
    let auxiliary = match objective {
        LossObjective::Efficiency => None,
        LossObjective::LogNegativity { .. } => Some(evaluate_at_loss_rates(
            params,
            point[0],
            point[1],
            LossObjective::Efficiency,
        )?),
    };
    Ok(OptimumReport {
        point,
        value: simplex.value,
        auxiliary,
        iterations: simplex.iterations,
        tolerance: simplex.f_spread,
        converged: simplex.converged,
        at_boundary,
    })
}

/// Input loss rates maximizing the converted state's LN at `ω = 0`; the
/// report's `auxiliary` holds `R(0)` there.
pub fn maximize_ln_over_loss_rates(
    params: &SystemParams,
    n_s: f64,
    bounds: LossRateBounds,
) -> Result<OptimumReport> {
    if !(n_s > 0.0 && n_s.is_finite()) {
        return Err(Error::Domain(format!("n_s must be > 0, got {n_s}")));
    }
    maximize_over_loss_rates(
        params,
        bounds,
        LossObjective::LogNegativity { n_s, omega_hz: 0.0 },
    )
}

/// Numerical counterpart of [`crate::scattering::optimal_input_loss_rates`].
pub fn maximize_efficiency_numeric(
    params: &SystemParams,
    bounds: LossRateBounds,
) -> Result<OptimumReport> {
    maximize_over_loss_rates(params, bounds, LossObjective::Efficiency)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slipped() -> SystemParams {
        SystemParams::default().with_conventions(ConventionFlags::OCCUPANCY_SLIP)
    }

    #[test]
    fn log_grid_endpoints_and_monotonicity() {
        let g = LogGrid::new(1e-3, 1e3, 241).unwrap().values().unwrap();
        assert_eq!(g.len(), 241);
        assert_eq!((g[0], g[240]), (1e-3, 1e3));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!((g[120] - 1.0).abs() < 1e-12);
        assert!(LogGrid::new(0.0, 1.0, 3).is_err());
        assert!(LogGrid::new(2.0, 1.0, 3).is_err());
        assert!(LogGrid::new(1.0, 2.0, 1).is_err());
        assert_eq!(
            LogGrid::new(5.0, 5.0, 1).unwrap().values().unwrap(),
            vec![5.0]
        );
    }

    #[test]
    fn sweep_at_zero_photons() {
        let dp = derive(&slipped()).unwrap();
        let s = sweep_ln_vs_ns(&dp, &[0.0, 1.0], 0.0).unwrap();
        assert_eq!(s.rows[0][1..], [0.0, 0.0, 0.0]);
        assert!((s.rows[1][1] - 1.762_747_174).abs() < 1e-9);
        assert!((s.rows[1][3] - 0.140_64).abs() < 1e-4, "{}", s.rows[1][3]);
    }

    #[test]
    fn ratio_maximum_with_occupancy_slip() {
        let dp = derive(&slipped()).unwrap();
        let r = maximize_surviving_ratio(&dp, (1e-3, 1e3)).unwrap();
        assert!(!r.at_boundary && r.converged);
        assert!((r.value - 0.178).abs() < 3e-3);
        assert!((r.point[0] - 0.157).abs() < 0.01);
    }

    #[test]
    fn ratio_at_zero_temperature_peaks_at_small_ns() {
        let dp = derive(&SystemParams::default().with_temperature(0.0)).unwrap();
        let r = maximize_surviving_ratio(&dp, (1e-3, 1e3)).unwrap();
        assert!(r.at_boundary);
        assert_eq!(r.point[0], 1e-3);
    }

    #[test]
    fn efficiency_vanishes_with_input_coupling() {
        let p = SystemParams::default();
        let r = evaluate_at_loss_rates(&p, 1e-12, 1e6, LossObjective::Efficiency).unwrap();
        assert!(r < 1e-15);
        let r = evaluate_at_loss_rates(&p, 1e6, 1e-12, LossObjective::Efficiency).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn loss_sweep_shape() {
        let axis = LogGrid::new(1e5, 1e8, 4).unwrap().values().unwrap();
        let s = sweep_loss_rates(&slipped(), &axis, &axis, LossObjective::Efficiency).unwrap();
        assert_eq!(s.rows.len(), 16);
        assert_eq!(s.rows[1][0], axis[0]);
        assert_eq!(s.rows[1][1], axis[1]);
    }

    #[test]
    fn efficiency_optimum_matches_closed_form() {
        let p = SystemParams::default();
        let report = maximize_efficiency_numeric(&p, LossRateBounds::default()).unwrap();
        let (go, ge) = crate::scattering::optimal_input_loss_rates(&p).unwrap();
        assert!((report.point[0] / go - 1.0).abs() < 1e-3);
        assert!((report.point[1] / ge - 1.0).abs() < 1e-3);
        let best = evaluate_at_loss_rates(&p, go, ge, LossObjective::Efficiency).unwrap();
        assert!((report.value - best).abs() < 1e-6);
    }

    #[test]
    fn invalid_inputs() {
        let dp = derive(&slipped()).unwrap();
        assert!(maximize_surviving_ratio(&dp, (0.0, 1.0)).is_err());
        assert!(maximize_ln_over_loss_rates(&slipped(), 0.0, LossRateBounds::default()).is_err());
        let bad = LossRateBounds::square(10.0, 1.0);
        assert!(maximize_efficiency_numeric(&slipped(), bad).is_err());
    }
}
