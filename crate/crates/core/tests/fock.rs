use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ottofridge::dynamics;
use ottofridge::fock::{self, FockBasis, OracleOptions, TruncatedDensityMatrix};
use ottofridge::qsl::{self, GaussianState};
use ottofridge::ramp::Ramp;
use ottofridge::special::coth;
use ottofridge::Error;

#[test]
fn thermal_moments() {
    let (beta, omega) = (0.8, 0.7);
    let rho = fock::thermal_density(beta, omega, 200).unwrap();
    assert!((rho.mean_energy(omega) - 0.5 * omega * coth(0.5 * beta * omega)).abs() < 1e-12);
    let x2 = rho.expectation(&fock::position_squared(rho.basis()));
    assert!((x2 - coth(0.5 * beta * omega) / (2.0 * omega)).abs() < 1e-12);
}

#[test]
fn gaussian_and_matrix_fidelity_agree_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..12 {
        let state = |rng: &mut ChaCha8Rng| {
            let omega = rng.gen_range(0.3..1.5);
            let c: f64 = rng.gen_range(1.0..2.5);
            GaussianState::new(0.5 * c / omega, 0.5 * c * omega).unwrap()
        };
        let (a, b) = (state(&mut rng), state(&mut rng));
        let r = fock::oracle_fidelity(&a, &b, &OracleOptions::new(40, 1e-9).unwrap()).unwrap();
        assert!(r.converged, "{r:?}");
        assert!(
            (r.value - qsl::fidelity(&a, &b)).abs() < 1e-8,
            "{} vs {}",
            r.value,
            qsl::fidelity(&a, &b)
        );
    }
}

#[test]
fn density_matrix_validation() {
    let basis = FockBasis::new(2, 1.0).unwrap();
    let c = |re: f64, im: f64| Complex::new(re, im);
    let not_hermitian = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.5, 0.0)]);
    assert!(matches!(
        TruncatedDensityMatrix::new(basis, not_hermitian),
        Err(Error::InvalidState(_))
    ));
    let bad_trace = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.6, 0.0)]);
    assert!(TruncatedDensityMatrix::new(basis, bad_trace).is_err());
    let negative = DMatrix::from_row_slice(2, 2, &[c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.2, 0.0)]);
    assert!(TruncatedDensityMatrix::new(basis, negative).is_err());
    let coherent = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(0.5, 0.0)]);
    let rho = TruncatedDensityMatrix::new(basis, coherent).unwrap();
    assert!(!rho.is_real());
    assert!((fock::matrix_fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn truncation_is_refused_when_the_tail_is_heavy() {
    assert!(matches!(
        fock::thermal_density(1.0, 0.1, 20),
        Err(Error::Truncation { .. })
    ));
    assert_eq!(fock::required_dim((-0.1f64).exp()), 277);
}

#[test]
fn propagated_thermal_state_stays_normalized_and_matches_the_ode() {
    let ramp = Ramp::quintic(0.5, 1.5, 2.0).unwrap();
    let beta = 2.0;
    let rho0 = fock::thermal_density(beta, 0.5, 60).unwrap();
    let rho = fock::propagate(&ramp, &rho0, 400).unwrap();
    assert!((rho.trace().re - 1.0).abs() < 1e-10);
    assert!(rho.eigenvalues().iter().all(|&v| v > -1e-10));
    let q = fock::qstar_from_energy(rho.mean_energy(1.5), beta, 0.5, 1.5).unwrap();
    let ode = dynamics::qstar(&ramp).unwrap().qstar;
    assert!((q - ode).abs() < 1e-4, "{q} vs {ode}");
}

#[test]
fn oracle_qstar_short_stroke() {
    let ramp = Ramp::quintic(0.1, 0.5, 1.0).unwrap();
    let r = fock::oracle_qstar(&ramp, 1.0, &OracleOptions::new(80, 1e-4).unwrap()).unwrap();
    assert!(r.converged, "{r:?}");
    assert!((r.value - dynamics::qstar(&ramp).unwrap().qstar).abs() < 1e-3);
}
