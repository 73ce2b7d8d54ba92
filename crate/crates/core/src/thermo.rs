//! Otto-cycle energetics and refrigerator performance metrics.
//!
//! The cycle alternates two unitary frequency strokes (1: ω₁ → ω₂ starting
//! from the cold-bath state, 3: ω₂ → ω₁ starting from the hot-bath state)
//! with two instantaneous isochores. Heats and works are closed-form in the
//! adiabaticity parameters Q*₁ and Q*₃ of the strokes; with
//! `x_j = β_j ω_j / 2`,
//!
//! ```text
//! W₁ = (ω₂/2)(Q*₁ − ω₁/ω₂) coth x₁      Q₂ = (ω₂/2)[coth x₂ − Q*₁ coth x₁]
//! W₃ = (ω₁/2)(Q*₃ − ω₂/ω₁) coth x₂      Q₄ = (ω₁/2)[coth x₁ − Q*₃ coth x₂]
//! ```
//!
//! Three operating modes are supported: nonadiabatic driving (NA), local
//! counterdiabatic driving (STA), whose strokes end exactly as adiabatic ones
//! but pay a control-field cost, and the quasi-static reference (AD).

use serde::{Deserialize, Serialize};

use crate::dynamics;
use crate::error::{require_positive, Error, Result};
use crate::ode::OdeOptions;
use crate::quad::QuadOptions;
use crate::ramp::Ramp;
use crate::special::coth;

/// Full parameterization of the refrigerator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleConfig {
    /// Cold-side frequency (strokes start/end here).
    pub omega1: f64,
    /// Hot-side frequency.
    pub omega2: f64,
    /// Cold-bath inverse temperature.
    pub beta1: f64,
    /// Hot-bath inverse temperature.
    pub beta2: f64,
    /// Duration of each unitary stroke; the cycle lasts `2 tau`.
    pub tau: f64,
}

impl CycleConfig {
    pub fn new(omega1: f64, omega2: f64, beta1: f64, beta2: f64, tau: f64) -> Result<Self> {
        let config = Self {
            omega1,
            omega2,
            beta1,
            beta2,
            tau,
        };
        config.validate()?;
        Ok(config)
    }

    /// Parameters of the reference refrigerator: ω₁ = 0.1, ω₂ = 0.5, β₁ = 1, β₂ = 0.75.
    pub fn reference(tau: f64) -> Self {
        Self {
            omega1: 0.1,
            omega2: 0.5,
            beta1: 1.0,
            beta2: 0.75,
            tau,
        }
    }

    pub fn with_tau(self, tau: f64) -> Self {
        Self { tau, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_positive()?;
        if self.omega2 <= self.omega1 {
            return Err(Error::InvalidParameter {
                name: "omega2",
                reason: format!("must exceed omega1 = {}, got {}", self.omega1, self.omega2),
            });
        }
        if self.beta1 <= self.beta2 {
            return Err(Error::InvalidParameter {
                name: "beta1",
                reason: format!(
                    "must exceed beta2 = {} (cold bath colder), got {}",
                    self.beta2, self.beta1
                ),
            });
        }
        Ok(())
    }

    pub(crate) fn validate_positive(&self) -> Result<()> {
        require_positive("omega1", self.omega1)?;
        require_positive("omega2", self.omega2)?;
        require_positive("beta1", self.beta1)?;
        require_positive("beta2", self.beta2)?;
        require_positive("tau", self.tau)
    }

    pub fn x1(&self) -> f64 {
        0.5 * self.beta1 * self.omega1
    }

    pub fn x2(&self) -> f64 {
        0.5 * self.beta2 * self.omega2
    }

    pub fn cycle_time(&self) -> f64 {
        2.0 * self.tau
    }

    /// Compression stroke ω₁ → ω₂.
    pub fn compression(&self) -> Result<Ramp> {
        Ramp::quintic(self.omega1, self.omega2, self.tau)
    }

    /// Expansion stroke ω₂ → ω₁.
    pub fn expansion(&self) -> Result<Ramp> {
        Ramp::quintic(self.omega2, self.omega1, self.tau)
    }
}

/// Numerical settings shared by the cycle evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numerics {
    pub ode: OdeOptions,
    pub quad: QuadOptions,
    /// Grid size for the trap-inversion scan.
    pub lcd_grid_points: usize,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            ode: OdeOptions::default(),
            quad: QuadOptions::default(),
            lcd_grid_points: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "NA")]
    Nonadiabatic,
    #[serde(rename = "STA")]
    Shortcut,
    #[serde(rename = "AD")]
    Adiabatic,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Nonadiabatic, Mode::Shortcut, Mode::Adiabatic];
}

/// Outcome of one unitary stroke.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrokeResult {
    pub qstar: f64,
    pub work: f64,
    /// Time-averaged control-field energy; zero outside STA mode.
    pub sta_cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CyclePerformance {
    pub mode: Mode,
    pub stroke1: StrokeResult,
    pub stroke3: StrokeResult,
    pub q2: f64,
    pub q4: f64,
    /// `W₁ + W₃`, excluding the control-field cost.
    pub work_total: f64,
    /// Control-field energy per cycle (`cost₁ + cost₃`), bookkept apart from the work.
    pub sta_cost_total: f64,
    pub cop: Option<f64>,
    pub cooling_power: Option<f64>,
    pub chi: Option<f64>,
    pub entropy_production: f64,
    pub entropy_rate: f64,
    /// `Q₄ > 0` and a positive energy input: the cycle refrigerates.
    pub cooling: bool,
}

fn check_qstar(name: &'static str, q: f64) -> Result<()> {
    if q.is_finite() && q >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("adiabaticity parameter must be >= 1, got {q}"),
        })
    }
}

fn check_energetics(config: &CycleConfig, qstar1: f64, qstar3: f64) -> Result<()> {
    config.validate_positive()?;
    check_qstar("qstar1", qstar1)?;
    check_qstar("qstar3", qstar3)
}

/// Mean heats `(Q₂, Q₄)` exchanged with the hot and cold baths.
pub fn heats(config: &CycleConfig, qstar1: f64, qstar3: f64) -> Result<(f64, f64)> {
    check_energetics(config, qstar1, qstar3)?;
    let (c1, c2) = (coth(config.x1()), coth(config.x2()));
    Ok((
        0.5 * config.omega2 * (c2 - qstar1 * c1),
        0.5 * config.omega1 * (c1 - qstar3 * c2),
    ))
}

/// Mean works `(W₁, W₃)` done on the oscillator during the two strokes.
pub fn works(config: &CycleConfig, qstar1: f64, qstar3: f64) -> Result<(f64, f64)> {
    check_energetics(config, qstar1, qstar3)?;
    let (c1, c2) = (coth(config.x1()), coth(config.x2()));
    Ok((
        0.5 * config.omega2 * (qstar1 - config.omega1 / config.omega2) * c1,
        0.5 * config.omega1 * (qstar3 - config.omega2 / config.omega1) * c2,
    ))
}

fn ratio_cop(q4: f64, input: f64) -> Result<f64> {
    if q4 <= 0.0 {
        return Err(Error::NotCooling { q4 });
    }
    if input <= 0.0 {
        return Err(Error::NotRefrigerator { work: input });
    }
    Ok(q4 / input)
}

/// `ε = Q₄ / (W₁ + W₃)` for arbitrary driving.
pub fn cop_nonadiabatic(config: &CycleConfig, qstar1: f64, qstar3: f64) -> Result<f64> {
    let (_, q4) = heats(config, qstar1, qstar3)?;
    let (w1, w3) = works(config, qstar1, qstar3)?;
    ratio_cop(q4, w1 + w3)
}

/// The same ratio written out in terms of `c(x) = coth x`:
/// `ω₁[c₁ − Q*₃c₂] / ((ω₂Q*₁ − ω₁)c₁ − (ω₂ − ω₁Q*₃)c₂)`.
pub fn cop_nonadiabatic_explicit(config: &CycleConfig, qstar1: f64, qstar3: f64) -> Result<f64> {
    check_energetics(config, qstar1, qstar3)?;
    let (c1, c2) = (coth(config.x1()), coth(config.x2()));
    let (w1, w2) = (config.omega1, config.omega2);
    let num = w1 * (c1 - qstar3 * c2);
    let den = (w2 * qstar1 - w1) * c1 - (w2 - w1 * qstar3) * c2;
    ratio_cop(0.5 * num, 0.5 * den)
}

/// Quasi-static COP `ω₁/(ω₂ − ω₁)`.
pub fn cop_adiabatic(config: &CycleConfig) -> Result<f64> {
    require_positive("omega1", config.omega1)?;
    require_positive("omega2", config.omega2)?;
    if config.omega2 <= config.omega1 {
        return Err(Error::InvalidParameter {
            name: "omega2",
            reason: format!("must exceed omega1 = {}, got {}", config.omega1, config.omega2),
        });
    }
    Ok(config.omega1 / (config.omega2 - config.omega1))
}

/// COP including the control-field energy of both strokes. The strokes end
/// in the adiabatic state, so heat and work take their Q* = 1 values.
pub fn cop_sta(config: &CycleConfig, cost1: f64, cost3: f64) -> Result<f64> {
    for (name, cost) in [("cost1", cost1), ("cost3", cost3)] {
        if cost.is_nan() || cost < 0.0 {
            return Err(Error::InvalidParameter {
                name,
                reason: format!("control cost must be non-negative, got {cost}"),
            });
        }
    }
    let (_, q4) = heats(config, 1.0, 1.0)?;
    let (w1, w3) = works(config, 1.0, 1.0)?;
    ratio_cop(q4, w1 + w3 + cost1 + cost3)
}

/// Carnot bound `β₂/(β₁ − β₂)`.
pub fn carnot_cop(beta1: f64, beta2: f64) -> Result<f64> {
    require_positive("beta1", beta1)?;
    require_positive("beta2", beta2)?;
    if beta1 <= beta2 {
        return Err(Error::InvalidParameter {
            name: "beta1",
            reason: format!("must exceed beta2 = {beta2}, got {beta1}"),
        });
    }
    Ok(beta2 / (beta1 - beta2))
}

/// Total entropy production per cycle,
/// `x₂[Q*₁c₁ − c₂] − x₁[c₁ − Q*₃c₂]`.
pub fn entropy_production(config: &CycleConfig, qstar1: f64, qstar3: f64) -> Result<f64> {
    check_energetics(config, qstar1, qstar3)?;
    let (x1, x2) = (config.x1(), config.x2());
    let (c1, c2) = (coth(x1), coth(x2));
    Ok(x2 * (qstar1 * c1 - c2) - x1 * (c1 - qstar3 * c2))
}

/// Heat extracted from the cold bath per unit cycle time, `Q₄/(2τ)`.
pub fn cooling_power(q4: f64, tau: f64) -> f64 {
    q4 / (2.0 * tau)
}

/// Refrigerator figure of merit `χ = ε J`.
pub fn figure_of_merit(cop: f64, cooling_power: f64) -> f64 {
    cop * cooling_power
}

/// The cycle can refrigerate quasi-statically iff `ω₂/ω₁ > β₁/β₂`.
pub fn cooling_condition(config: &CycleConfig) -> bool {
    config.omega2 / config.omega1 > config.beta1 / config.beta2
}

/// Per-stroke quantities that depend on the driving: Q* from the classical
/// dynamics and the LCD control cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrokeDynamics {
    pub qstar1: f64,
    pub qstar3: f64,
    pub wronskian_drift: f64,
    pub cost1: f64,
    pub cost3: f64,
}

impl StrokeDynamics {
    pub fn compute(config: &CycleConfig, numerics: &Numerics) -> Result<Self> {
        config.validate_positive()?;
        let up = config.compression()?;
        let down = config.expansion()?;
        let q1 = dynamics::qstar_with(&up, numerics.ode.rtol, numerics.ode.atol)?;
        let q3 = dynamics::qstar_with(&down, numerics.ode.rtol, numerics.ode.atol)?;
        Ok(Self {
            qstar1: q1.qstar,
            qstar3: q3.qstar,
            wronskian_drift: q1.wronskian_drift.max(q3.wronskian_drift),
            cost1: up.sta_cost_avg_with(config.beta1, &numerics.quad)?.value(),
            cost3: down.sta_cost_avg_with(config.beta2, &numerics.quad)?.value(),
        })
    }
}

/// Assembles the performance record of one mode from precomputed stroke data.
pub fn performance(config: &CycleConfig, mode: Mode, strokes: &StrokeDynamics) -> Result<CyclePerformance> {
    // The classical integration can land a hair below the exact bound.
    let clamp = |q: f64| if q < 1.0 && q > 1.0 - 1e-9 { 1.0 } else { q };
    let (q1, q3, cost1, cost3) = match mode {
        Mode::Nonadiabatic => (clamp(strokes.qstar1), clamp(strokes.qstar3), 0.0, 0.0),
        Mode::Shortcut => (1.0, 1.0, strokes.cost1, strokes.cost3),
        Mode::Adiabatic => (1.0, 1.0, 0.0, 0.0),
    };
    let (q2, q4) = heats(config, q1, q3)?;
    let (w1, w3) = works(config, q1, q3)?;
    let work_total = w1 + w3;
    let sta_cost_total = cost1 + cost3;
    let input = work_total + sta_cost_total;
    let cooling = q4 > 0.0 && input > 0.0;
    let (cop, jc, chi) = if cooling {
        let cop = q4 / input;
        let jc = cooling_power(q4, config.tau);
        (Some(cop), Some(jc), Some(figure_of_merit(cop, jc)))
    } else {
        (None, None, None)
    };
    let ds = entropy_production(config, q1, q3)?;
    Ok(CyclePerformance {
        mode,
        stroke1: StrokeResult {
            qstar: q1,
            work: w1,
            sta_cost: cost1,
        },
        stroke3: StrokeResult {
            qstar: q3,
            work: w3,
            sta_cost: cost3,
        },
        q2,
        q4,
        work_total,
        sta_cost_total,
        cop,
        cooling_power: jc,
        chi,
        entropy_production: ds,
        entropy_rate: ds / config.cycle_time(),
        cooling,
    })
}

/// Evaluates one operating mode at default numerics.
pub fn evaluate_cycle(config: &CycleConfig, mode: Mode) -> Result<CyclePerformance> {
    evaluate_cycle_with(config, mode, &Numerics::default())
}

pub fn evaluate_cycle_with(config: &CycleConfig, mode: Mode, numerics: &Numerics) -> Result<CyclePerformance> {
    config.validate()?;
    let strokes = match mode {
        Mode::Adiabatic => StrokeDynamics {
            qstar1: 1.0,
            qstar3: 1.0,
            wronskian_drift: 0.0,
            cost1: 0.0,
            cost3: 0.0,
        },
        _ => StrokeDynamics::compute(config, numerics)?,
    };
    performance(config, mode, &strokes)
}
