//! Quantum-speed-limit bounds on the shortcut-driven refrigerator.
//!
//! Each stroke moves the oscillator from a thermal state to its adiabatic
//! image. The Bures angle `L = arccos √F` between the two and the
//! time-averaged control energy `⟨H_STA⟩_τ` give the Margolus-Levitin-type
//! time `τ_QSL = L / ⟨H_STA⟩_τ` (ħ = 1), from which bounds on the COP,
//! cooling power and figure of merit follow.

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::special::coth;
use crate::thermo::{self, CycleConfig, Numerics};

/// Zero-mean single-mode Gaussian state without x-p correlations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianState {
    var_x: f64,
    var_p: f64,
}

/// Slack allowed on the uncertainty relation before a state is rejected.
const HEISENBERG_SLACK: f64 = 1e-12;

impl GaussianState {
    pub fn new(var_x: f64, var_p: f64) -> Result<Self> {
        if !(var_x > 0.0 && var_p > 0.0 && var_x.is_finite() && var_p.is_finite()) {
            return Err(Error::InvalidState(format!(
                "variances must be positive and finite, got ({var_x}, {var_p})"
            )));
        }
        if var_x * var_p < 0.25 * (1.0 - HEISENBERG_SLACK) {
            return Err(Error::InvalidState(format!(
                "var_x * var_p = {} violates the uncertainty bound 1/4",
                var_x * var_p
            )));
        }
        Ok(Self { var_x, var_p })
    }

    /// Ground state of the oscillator at `omega`.
    pub fn vacuum(omega: f64) -> Result<Self> {
        require_positive("omega", omega)?;
        Self::new(0.5 / omega, 0.5 * omega)
    }

    pub fn var_x(&self) -> f64 {
        self.var_x
    }

    pub fn var_p(&self) -> f64 {
        self.var_p
    }

    /// Determinant of the covariance matrix, `var_x * var_p`, clamped at the
    /// pure-state value 1/4.
    pub fn det(&self) -> f64 {
        (self.var_x * self.var_p).max(0.25)
    }

    /// Frequency of the oscillator for which this is a Gibbs state.
    pub fn natural_frequency(&self) -> f64 {
        (self.var_p / self.var_x).sqrt()
    }

    /// `coth(βω/2)` of the matching Gibbs state; 1 for a pure state.
    pub fn coth_factor(&self) -> f64 {
        2.0 * self.det().sqrt()
    }
}

pub fn thermal_state(beta: f64, omega: f64) -> Result<GaussianState> {
    require_positive("beta", beta)?;
    require_positive("omega", omega)?;
    let c = coth(0.5 * beta * omega);
    GaussianState::new(c / (2.0 * omega), 0.5 * omega * c)
}

/// State reached from `thermal_state(beta, omega_start)` by an adiabatic (or
/// shortcut) stroke ending at `omega_end`: same occupations, new frequency.
pub fn adiabatic_final_state(beta: f64, omega_start: f64, omega_end: f64) -> Result<GaussianState> {
    require_positive("beta", beta)?;
    require_positive("omega_start", omega_start)?;
    require_positive("omega_end", omega_end)?;
    let c = coth(0.5 * beta * omega_start);
    GaussianState::new(c / (2.0 * omega_end), 0.5 * omega_end * c)
}

/// Uhlmann fidelity `F = (Tr √(√a b √a))²` of two single-mode Gaussian states.
///
/// With `Δ = det(V_a + V_b)` and `δ = 4 (det V_a − 1/4)(det V_b − 1/4)`,
/// `F = 1/(√(Δ + δ) − √δ)`, evaluated in the cancellation-free form
/// `(√(Δ + δ) + √δ)/Δ`.
pub fn fidelity(a: &GaussianState, b: &GaussianState) -> f64 {
    let delta_big = (a.var_x + b.var_x) * (a.var_p + b.var_p);
    let delta_small = 4.0 * (a.det() - 0.25) * (b.det() - 0.25);
    let f = ((delta_big + delta_small).sqrt() + delta_small.sqrt()) / delta_big;
    f.clamp(0.0, 1.0)
}

/// Bures angle `arccos √F` in `[0, π/2]`.
pub fn bures_angle(a: &GaussianState, b: &GaussianState) -> f64 {
    fidelity(a, b).sqrt().min(1.0).acos()
}

/// Speed-limit time `L / ⟨H_STA⟩_τ`.
pub fn tau_qsl(bures: f64, cost_avg: f64) -> Result<f64> {
    if cost_avg.is_nan() || cost_avg <= 0.0 {
        return Err(Error::UndefinedBound(format!(
            "time-averaged control energy must be positive, got {cost_avg}"
        )));
    }
    Ok(bures / cost_avg)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QslBounds {
    pub tau_qsl_1: f64,
    pub tau_qsl_3: f64,
    pub bures_1: f64,
    pub bures_3: f64,
    pub cop_bound: f64,
    pub cooling_bound: f64,
    pub chi_bound: f64,
}

/// Bures angles of the compression and expansion strokes.
pub fn stroke_bures_angles(config: &CycleConfig) -> Result<(f64, f64)> {
    let a1 = thermal_state(config.beta1, config.omega1)?;
    let b1 = adiabatic_final_state(config.beta1, config.omega1, config.omega2)?;
    let a3 = thermal_state(config.beta2, config.omega2)?;
    let b3 = adiabatic_final_state(config.beta2, config.omega2, config.omega1)?;
    Ok((bures_angle(&a1, &b1), bures_angle(&a3, &b3)))
}

/// Speed-limit bounds with control costs computed from the quintic ramps.
pub fn performance_bounds(config: &CycleConfig) -> Result<QslBounds> {
    let numerics = Numerics::default();
    let cost1 = config
        .compression()?
        .sta_cost_avg_with(config.beta1, &numerics.quad)?
        .value();
    let cost3 = config
        .expansion()?
        .sta_cost_avg_with(config.beta2, &numerics.quad)?
        .value();
    performance_bounds_with(config, cost1, cost3)
}

/// Speed-limit bounds from precomputed stroke costs.
///
/// COP: `Q₄_AD / (W₁_AD + W₃_AD + (L₁ + L₃)/τ)`; cooling power:
/// `Q₄_AD / (τ¹_QSL + τ³_QSL)` (taken as a positive magnitude); figure of
/// merit: their product.
pub fn performance_bounds_with(config: &CycleConfig, cost1: f64, cost3: f64) -> Result<QslBounds> {
    config.validate()?;
    if !thermo::cooling_condition(config) {
        return Err(Error::NotCooling {
            q4: thermo::heats(config, 1.0, 1.0)?.1,
        });
    }
    let (bures_1, bures_3) = stroke_bures_angles(config)?;
    if bures_1 + bures_3 == 0.0 {
        return Err(Error::DegenerateBound("both strokes connect identical states".into()));
    }
    let tau_qsl_1 = tau_qsl(bures_1, cost1)?;
    let tau_qsl_3 = tau_qsl(bures_3, cost3)?;
    let (_, q4) = thermo::heats(config, 1.0, 1.0)?;
    let (w1, w3) = thermo::works(config, 1.0, 1.0)?;
    let cop_bound = q4 / (w1 + w3 + (bures_1 + bures_3) / config.tau);
    let cooling_bound = q4 / (tau_qsl_1 + tau_qsl_3);
    Ok(QslBounds {
        tau_qsl_1,
        tau_qsl_3,
        bures_1,
        bures_3,
        cop_bound,
        cooling_bound,
        chi_bound: cop_bound * cooling_bound,
    })
}
