//! Convergence-checked oracle values.
//!
//! Each quantity is evaluated on a ladder of truncations `N/2, N, 2N, …`
//! starting from the first dimension whose thermal tail is negligible. The
//! ladder stops once two consecutive rungs agree within the tolerance or
//! the dimension cap is reached. Propagated values are additionally
//! recomputed with twice the steps and Richardson-extrapolated.

use serde::Serialize;

use super::measures::{matrix_fidelity, relative_entropy};
use super::operators::FockBasis;
use super::propagate::{default_steps, qstar_from_energy, SplitOperator, WEIGHT_FLOOR};
use super::states::{
    gaussian_parameters, geometric_tail, geometric_weights, gibbs_ensemble, Ensemble, TruncatedDensityMatrix,
    TAIL_LIMIT,
};
use crate::error::{require_positive, Error, Result};
use crate::qsl::GaussianState;
use crate::ramp::Ramp;
use crate::thermo::CycleConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    /// First truncation tried.
    pub start_dim: usize,
    /// The ladder never goes beyond this truncation.
    pub max_dim: usize,
    /// Required agreement between successive truncations (and step counts).
    pub tolerance: f64,
}

impl OracleOptions {
    /// Ladder from `fock_dim` up to `16 fock_dim`.
    pub fn new(fock_dim: usize, tolerance: f64) -> Result<Self> {
        if fock_dim < 4 {
            return Err(Error::InvalidParameter {
                name: "fock_dim",
                reason: format!("must be at least 4, got {fock_dim}"),
            });
        }
        require_positive("tolerance", tolerance)?;
        Ok(Self {
            start_dim: fock_dim,
            max_dim: 16 * fock_dim,
            tolerance,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub value: f64,
    /// `|value(N) − value(N/2)|`.
    pub truncation_error: f64,
    /// Richardson estimate of the time-step error; zero for static quantities.
    pub step_error: f64,
    pub dim_used: usize,
    pub steps_used: usize,
    /// Thermal population beyond `dim_used`.
    pub tail: f64,
    pub converged: bool,
}

struct Rung {
    dim: usize,
    value: f64,
    truncation_error: f64,
    tail: f64,
}

fn ladder(
    opts: &OracleOptions,
    tail_at: impl Fn(usize) -> f64,
    mut eval: impl FnMut(usize) -> Result<f64>,
) -> Result<Rung> {
    let mut dim = opts.start_dim;
    while tail_at(dim) > TAIL_LIMIT && 2 * dim <= opts.max_dim {
        dim *= 2;
    }
    let mut previous = eval(dim / 2)?;
    let mut value = eval(dim)?;
    while (value - previous).abs() > opts.tolerance && 2 * dim <= opts.max_dim {
        dim *= 2;
        previous = value;
        value = eval(dim)?;
    }
    Ok(Rung {
        dim,
        value,
        truncation_error: (value - previous).abs(),
        tail: tail_at(dim),
    })
}

fn report(rung: Rung, step_error: f64, steps_used: usize, value: f64, tolerance: f64) -> OracleReport {
    OracleReport {
        value,
        truncation_error: rung.truncation_error,
        step_error,
        dim_used: rung.dim,
        steps_used,
        tail: rung.tail,
        converged: rung.tail <= TAIL_LIMIT && rung.truncation_error <= tolerance && step_error <= tolerance,
    }
}

/// Adiabaticity parameter of `ramp` from the energy of a propagated thermal
/// state at inverse temperature `beta`, on a basis at `√(ω_i ω_f)`.
pub fn oracle_qstar(ramp: &Ramp, beta: f64, opts: &OracleOptions) -> Result<OracleReport> {
    require_positive("beta", beta)?;
    let (wi, wf) = (ramp.omega_i(), ramp.omega_f());
    let q = (-beta * wi).exp();
    let steps = default_steps(ramp);
    let mut last: Option<(SplitOperator, Ensemble)> = None;
    let qstar_at = |op: &SplitOperator, ensemble: &Ensemble, steps: usize| {
        qstar_from_energy(op.final_energy(ramp, ensemble, steps), beta, wi, wf)
    };
    let rung = ladder(
        opts,
        |dim| geometric_tail(q, dim),
        |dim| {
            let basis = FockBasis::geometric(dim, wi, wf)?;
            let op = SplitOperator::new(basis);
            let ensemble = gibbs_ensemble(&basis, wi, q).pruned(WEIGHT_FLOOR);
            let value = qstar_at(&op, &ensemble, steps)?;
            last = Some((op, ensemble));
            Ok(value)
        },
    )?;
    let (op, ensemble) = last.expect("the ladder evaluates at least once");
    let fine = qstar_at(&op, &ensemble, 2 * steps)?;
    let coarse = rung.value;
    let step_error = (fine - coarse).abs() / 3.0;
    let value = fine + (fine - coarse) / 3.0;
    let tolerance = opts.tolerance;
    Ok(report(rung, step_error, 2 * steps, value, tolerance))
}

/// Matrix fidelity of two Gaussian states on a basis between their natural
/// frequencies.
pub fn oracle_fidelity(a: &GaussianState, b: &GaussianState, opts: &OracleOptions) -> Result<OracleReport> {
    let (qa, wa) = gaussian_parameters(a);
    let (qb, wb) = gaussian_parameters(b);
    let q = qa.max(qb);
    let rung = ladder(
        opts,
        |dim| geometric_tail(q, dim),
        |dim| {
            let basis = FockBasis::geometric(dim, wa, wb)?;
            let ra = TruncatedDensityMatrix::from_ensemble(basis, &gibbs_ensemble(&basis, wa, qa));
            let rb = TruncatedDensityMatrix::from_ensemble(basis, &gibbs_ensemble(&basis, wb, qb));
            matrix_fidelity(&ra, &rb)
        },
    )?;
    let value = rung.value;
    Ok(report(rung, 0.0, 0, value, opts.tolerance))
}

fn diagonal_state(basis: FockBasis, q: f64) -> TruncatedDensityMatrix {
    let weights = geometric_weights(q, basis.dim());
    TruncatedDensityMatrix::from_real(
        basis,
        &nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(weights)),
    )
}

/// Sum of the relative entropies relaxed away on the two isochores of a
/// cycle with adiabatic strokes, `S(ρ_B‖ρ_C) + S(ρ_D‖ρ_A)`.
///
/// `ρ_A`, `ρ_C` are the bath states at `(β₁, ω₁)` and `(β₂, ω₂)`; `ρ_B`, `ρ_D`
/// are their adiabatic images at the other frequency.
pub fn oracle_entropy_identity(config: &CycleConfig, opts: &OracleOptions) -> Result<OracleReport> {
    config.validate_positive()?;
    let q1 = (-config.beta1 * config.omega1).exp();
    let q2 = (-config.beta2 * config.omega2).exp();
    let rung = ladder(
        opts,
        |dim| geometric_tail(q1.max(q2), dim),
        |dim| {
            let hot = FockBasis::new(dim, config.omega2)?;
            let cold = FockBasis::new(dim, config.omega1)?;
            let s_bc = relative_entropy(&diagonal_state(hot, q1), &diagonal_state(hot, q2))?;
            let s_da = relative_entropy(&diagonal_state(cold, q2), &diagonal_state(cold, q1))?;
            Ok(s_bc + s_da)
        },
    )?;
    let value = rung.value;
    Ok(report(rung, 0.0, 0, value, opts.tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsl;
    use crate::thermo;

    #[test]
    fn vacuum_fidelity_converges_immediately() {
        let opts = OracleOptions::new(40, 1e-8).unwrap();
        let a = GaussianState::vacuum(0.2).unwrap();
        let b = GaussianState::vacuum(0.8).unwrap();
        let r = oracle_fidelity(&a, &b, &opts).unwrap();
        assert!(r.converged);
        assert!((r.value - 0.8).abs() < 1e-8);
        assert_eq!(r.tail, 0.0);
    }

    #[test]
    fn entropy_identity_matches_closed_form() {
        let config = CycleConfig::reference(10.0);
        let r = oracle_entropy_identity(&config, &OracleOptions::new(80, 1e-8).unwrap()).unwrap();
        let exact = thermo::entropy_production(&config, 1.0, 1.0).unwrap();
        assert!(r.converged);
        assert!((r.value - exact).abs() < 1e-8);
    }

    #[test]
    fn tiny_truncation_is_flagged() {
        let opts = OracleOptions::new(4, 1e-4).unwrap();
        let a = qsl::thermal_state(1.0, 0.1).unwrap();
        let b = qsl::adiabatic_final_state(1.0, 0.1, 0.5).unwrap();
        let r = oracle_fidelity(&a, &b, &opts).unwrap();
        assert!(!r.converged);
        assert_eq!(r.dim_used, 64);
        assert!(r.tail > TAIL_LIMIT);
    }

    #[test]
    fn options_validation() {
        assert!(OracleOptions::new(2, 1e-4).is_err());
        assert!(OracleOptions::new(80, 0.0).is_err());
        assert_eq!(OracleOptions::new(80, 1e-4).unwrap().max_dim, 1280);
    }
}
