//! Single-point reports: evaluation, parameter validation and the Fock
//! oracle cross-check.

use serde::Serialize;

use crate::dynamics;
use crate::error::{Error, Result};
use crate::fock::{oracle_entropy_identity, oracle_fidelity, oracle_qstar, OracleOptions, OracleReport};
use crate::qsl::{self, GaussianState, QslBounds};
use crate::thermo::{self, CycleConfig, CyclePerformance, Mode, Numerics, StrokeDynamics};

#[derive(Debug, Clone, Serialize)]
pub struct EvaluationReport {
    pub config: CycleConfig,
    /// Strict quasi-static cooling condition `ω₂/ω₁ > β₁/β₂`.
    pub cooling: bool,
    pub carnot_cop: f64,
    pub qstar1: f64,
    pub qstar3: f64,
    pub cost1: f64,
    pub cost3: f64,
    pub nonadiabatic: CyclePerformance,
    pub shortcut: CyclePerformance,
    pub adiabatic: CyclePerformance,
    /// Absent when the cycle cannot cool.
    pub bounds: Option<QslBounds>,
    pub flags: ValidationFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationFlags {
    pub qstar_valid: bool,
    pub trap_inverted: bool,
    pub wronskian_drift: f64,
}

/// All three modes, the speed-limit bounds and the sanity flags at one
/// driving time.
pub fn evaluate(config: &CycleConfig, numerics: &Numerics) -> Result<EvaluationReport> {
    config.validate()?;
    let strokes = StrokeDynamics::compute(config, numerics)?;
    let perf = |mode| thermo::performance(config, mode, &strokes);
    let bounds = match qsl::performance_bounds_with(config, strokes.cost1, strokes.cost3) {
        Ok(b) => Some(b),
        Err(Error::NotCooling { .. } | Error::DegenerateBound(_) | Error::UndefinedBound(_)) => None,
        Err(e) => return Err(e),
    };
    let grid = numerics.lcd_grid_points;
    let min_lcd = config
        .compression()?
        .min_lcd_frequency_sq(grid)
        .0
        .min(config.expansion()?.min_lcd_frequency_sq(grid).0);
    Ok(EvaluationReport {
        config: *config,
        cooling: thermo::cooling_condition(config),
        carnot_cop: thermo::carnot_cop(config.beta1, config.beta2)?,
        qstar1: strokes.qstar1,
        qstar3: strokes.qstar3,
        cost1: strokes.cost1,
        cost3: strokes.cost3,
        nonadiabatic: perf(Mode::Nonadiabatic)?,
        shortcut: perf(Mode::Shortcut)?,
        adiabatic: perf(Mode::Adiabatic)?,
        bounds,
        flags: ValidationFlags {
            qstar_valid: qstar_sane(strokes.qstar1) && qstar_sane(strokes.qstar3),
            trap_inverted: min_lcd < 0.0,
            wronskian_drift: strokes.wronskian_drift,
        },
    })
}

/// Q* may undershoot 1 only by integration round-off.
const QSTAR_SLACK: f64 = 1e-9;
/// Largest acceptable drift of the Wronskian `XẎ − ẊY` from 1.
pub const WRONSKIAN_LIMIT: f64 = 1e-9;

fn qstar_sane(q: f64) -> bool {
    q.is_finite() && q >= 1.0 - QSTAR_SLACK
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrokeCheck {
    pub min_omega_lcd_sq: f64,
    pub argmin: f64,
    pub qstar: f64,
    pub wronskian_drift: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub config: CycleConfig,
    pub cooling: bool,
    pub compression: StrokeCheck,
    pub expansion: StrokeCheck,
    pub qstar_valid: bool,
    pub warnings: Vec<String>,
}

/// Checks the cycle for conditions under which the results are suspect or
/// the protocols unphysical. Findings are reported, never raised.
pub fn validate(config: &CycleConfig, numerics: &Numerics) -> Result<ValidationReport> {
    config.validate()?;
    let check = |name: &str, ramp: crate::ramp::Ramp, warnings: &mut Vec<String>| -> Result<StrokeCheck> {
        let (min, argmin) = ramp.min_lcd_frequency_sq(numerics.lcd_grid_points);
        let q = dynamics::qstar_with(&ramp, numerics.ode.rtol, numerics.ode.atol)?;
        if min < 0.0 {
            warnings.push(format!(
                "{name}: LCD trap inverted, min Omega^2 = {min:e} at t = {argmin}"
            ));
        }
        if !qstar_sane(q.qstar) {
            warnings.push(format!("{name}: adiabaticity parameter {} below 1", q.qstar));
        }
        if q.wronskian_drift > WRONSKIAN_LIMIT {
            warnings.push(format!(
                "{name}: Wronskian drift {:e} exceeds {WRONSKIAN_LIMIT:e}",
                q.wronskian_drift
            ));
        }
        Ok(StrokeCheck {
            min_omega_lcd_sq: min,
            argmin,
            qstar: q.qstar,
            wronskian_drift: q.wronskian_drift,
        })
    };
    let mut warnings = Vec::new();
    let cooling = thermo::cooling_condition(config);
    if !cooling {
        warnings.push("cooling condition omega2/omega1 > beta1/beta2 fails".to_string());
    }
    let compression = check("compression", config.compression()?, &mut warnings)?;
    let expansion = check("expansion", config.expansion()?, &mut warnings)?;
    Ok(ValidationReport {
        config: *config,
        cooling,
        qstar_valid: qstar_sane(compression.qstar) && qstar_sane(expansion.qstar),
        compression,
        expansion,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unconverged,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub quantity: String,
    pub library: f64,
    pub oracle: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub status: CheckStatus,
    pub detail: OracleReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheckReport {
    pub fock_dim: usize,
    pub checks: Vec<OracleCheck>,
}

impl OracleCheckReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn any_unconverged(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Unconverged)
    }
}

/// Driving times of the Q* cross-checks.
pub const ORACLE_TAUS: [f64; 3] = [1.0, 5.0, 10.0];
pub const QSTAR_TOLERANCE: f64 = 1e-3;
pub const FIDELITY_TOLERANCE: f64 = 1e-4;
pub const ENTROPY_TOLERANCE: f64 = 1e-4;

fn check(quantity: String, library: f64, detail: OracleReport, tolerance: f64) -> OracleCheck {
    let delta = (library - detail.value).abs();
    let status = if !detail.converged {
        CheckStatus::Unconverged
    } else if delta <= tolerance {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    OracleCheck {
        quantity,
        library,
        oracle: detail.value,
        delta,
        tolerance,
        status,
        detail,
    }
}

/// Compares library values against the truncated Fock-space oracle.
///
/// Only positivity of the parameters is required, so degenerate cycles
/// (equal frequencies) can be checked too.
pub fn oracle_check(config: &CycleConfig, numerics: &Numerics, fock_dim: usize) -> Result<OracleCheckReport> {
    config.validate_positive()?;
    // The ladders converge an order of magnitude tighter than the acceptance tolerance.
    let qstar_opts = OracleOptions::new(fock_dim, 0.1 * QSTAR_TOLERANCE)?;
    let state_opts = OracleOptions::new(fock_dim, 0.1 * FIDELITY_TOLERANCE)?;
    let entropy_opts = OracleOptions::new(fock_dim, 0.1 * ENTROPY_TOLERANCE)?;
    let mut checks = Vec::new();
    for tau in ORACLE_TAUS {
        let ramp = config.with_tau(tau).compression()?;
        let library = dynamics::qstar_with(&ramp, numerics.ode.rtol, numerics.ode.atol)?.qstar;
        let detail = oracle_qstar(&ramp, config.beta1, &qstar_opts)?;
        checks.push(check(format!("qstar(tau={tau})"), library, detail, QSTAR_TOLERANCE));
    }
    let (w1, w2) = (config.omega1, config.omega2);
    let pairs: [(&str, GaussianState, GaussianState); 3] = [
        (
            "fidelity(vacuum w1 vs vacuum 4w1)",
            GaussianState::vacuum(w1)?,
            GaussianState::vacuum(4.0 * w1)?,
        ),
        (
            "fidelity(stroke 1 endpoints)",
            qsl::thermal_state(config.beta1, w1)?,
            qsl::adiabatic_final_state(config.beta1, w1, w2)?,
        ),
        (
            "fidelity(stroke 3 endpoints)",
            qsl::thermal_state(config.beta2, w2)?,
            qsl::adiabatic_final_state(config.beta2, w2, w1)?,
        ),
    ];
    for (name, a, b) in pairs {
        let detail = oracle_fidelity(&a, &b, &state_opts)?;
        checks.push(check(
            name.to_string(),
            qsl::fidelity(&a, &b),
            detail,
            FIDELITY_TOLERANCE,
        ));
    }
    let library = thermo::entropy_production(config, 1.0, 1.0)?;
    let detail = oracle_entropy_identity(config, &entropy_opts)?;
    checks.push(check(
        "entropy production vs relative entropies".to_string(),
        library,
        detail,
        ENTROPY_TOLERANCE,
    ));
    Ok(OracleCheckReport { fock_dim, checks })
}

/// Header plus one line per check; numbers use seventeen significant digits.
pub fn write_oracle_csv<W: std::io::Write>(out: &mut W, report: &OracleCheckReport) -> std::io::Result<()> {
    use crate::sweep::format_cell;
    writeln!(
        out,
        "quantity,library,oracle,delta,tolerance,status,dim_used,steps_used"
    )?;
    for c in &report.checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Unconverged => "unconverged",
        };
        writeln!(
            out,
            "{},{},{},{},{},{status},{},{}",
            c.quantity.replace(',', ";"),
            format_cell(Some(c.library)),
            format_cell(Some(c.oracle)),
            format_cell(Some(c.delta)),
            format_cell(Some(c.tolerance)),
            c.detail.dim_used,
            c.detail.steps_used
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Numerics {
        Numerics {
            lcd_grid_points: 500,
            ..Numerics::default()
        }
    }

    #[test]
    fn evaluation_of_the_reference_cycle() {
        let r = evaluate(&CycleConfig::reference(10.0), &quick()).unwrap();
        assert!(r.cooling);
        assert!((r.adiabatic.cop.unwrap() - 0.25).abs() < 1e-12);
        assert!((r.carnot_cop - 3.0).abs() < 1e-12);
        assert!(r.bounds.is_some());
        assert!(r.flags.qstar_valid && !r.flags.trap_inverted);
    }

    #[test]
    fn carnot_point_does_not_cool() {
        let config = CycleConfig::new(0.1, 0.5, 1.0, 0.2, 5.0).unwrap();
        let r = evaluate(&config, &quick()).unwrap();
        assert!(!r.cooling);
        assert!(r.bounds.is_none());
        assert!(r.adiabatic.cop.is_none());
    }

    #[test]
    fn fast_strokes_invert_the_trap() {
        let r = validate(&CycleConfig::reference(0.1), &quick()).unwrap();
        assert!(r.compression.min_omega_lcd_sq < 0.0);
        assert!(r.warnings.iter().any(|w| w.contains("inverted")));
        let slow = validate(&CycleConfig::reference(10.0), &quick()).unwrap();
        assert!(slow.cooling && slow.warnings.is_empty());
        assert!(slow.compression.min_omega_lcd_sq > 0.0);
    }

    #[test]
    fn equal_frequencies_check_trivially() {
        let mut config = CycleConfig::reference(1.0);
        config.omega2 = config.omega1;
        let r = oracle_check(&config, &quick(), 40).unwrap();
        for c in &r.checks[..3] {
            assert!((c.oracle - 1.0).abs() < 1e-8, "{c:?}");
            assert_eq!(c.status, CheckStatus::Pass);
        }
    }
}
