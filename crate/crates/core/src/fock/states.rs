//! Density matrices on a truncated Fock basis.

use nalgebra::{Complex, DMatrix};

use super::eigen::symmetric_eigen;

use super::operators::{hamiltonian, FockBasis};
use crate::error::{require_positive, Error, Result};
use crate::qsl::GaussianState;

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Largest population allowed beyond the last kept level.
pub const TAIL_LIMIT: f64 = 1e-12;

/// Hermitian, positive, unit-trace matrix together with the basis it lives in.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDensityMatrix {
    basis: FockBasis,
    elements: DMatrix<Complex<f64>>,
}

impl TruncatedDensityMatrix {
    pub fn new(basis: FockBasis, elements: DMatrix<Complex<f64>>) -> Result<Self> {
        let n = basis.dim();
        if elements.nrows() != n || elements.ncols() != n {
            return Err(Error::InvalidState(format!(
                "expected a {n}x{n} matrix, got {}x{}",
                elements.nrows(),
                elements.ncols()
            )));
        }
        let mut asym: f64 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                asym = asym.max((elements[(i, j)] - elements[(j, i)].conj()).norm());
            }
        }
        if asym > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!("not Hermitian: max |ρ - ρ†| = {asym:e}")));
        }
        let trace = elements.trace();
        if (trace - Complex::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let state = Self { basis, elements };
        let lowest = state.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if lowest < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {lowest:e}")));
        }
        Ok(state)
    }

    /// Builds `Σ_k w_k |v_k⟩⟨v_k|` from real orthonormal columns.
    pub(crate) fn from_ensemble(basis: FockBasis, ensemble: &Ensemble) -> Self {
        let mut weighted = ensemble.vectors.clone();
        for (mut col, &w) in weighted.column_iter_mut().zip(&ensemble.weights) {
            col *= w;
        }
        let rho = weighted * ensemble.vectors.transpose();
        Self::from_real(basis, &rho)
    }

    pub(crate) fn from_real(basis: FockBasis, rho: &DMatrix<f64>) -> Self {
        Self {
            basis,
            elements: rho.map(|v| Complex::new(v, 0.0)),
        }
    }

    pub(crate) fn from_complex_unchecked(basis: FockBasis, elements: DMatrix<Complex<f64>>) -> Self {
        Self { basis, elements }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn elements(&self) -> &DMatrix<Complex<f64>> {
        &self.elements
    }

    pub fn trace(&self) -> Complex<f64> {
        self.elements.trace()
    }

    /// Whether every element has a vanishing imaginary part.
    pub fn is_real(&self) -> bool {
        self.elements.iter().all(|z| z.im == 0.0)
    }

    pub fn real_part(&self) -> DMatrix<f64> {
        self.elements.map(|z| z.re)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.is_real() {
            self.real_part().symmetric_eigenvalues().iter().copied().collect()
        } else {
            self.elements.clone().symmetric_eigenvalues().iter().copied().collect()
        }
    }

    /// `Re Tr(ρ A)` for a real symmetric observable.
    pub fn expectation(&self, observable: &DMatrix<f64>) -> f64 {
        self.elements
            .iter()
            .zip(observable.transpose().iter())
            .map(|(r, a)| r.re * a)
            .sum()
    }

    /// Mean of `H(ω)` built on this state's basis.
    pub fn mean_energy(&self, omega: f64) -> f64 {
        self.expectation(&hamiltonian(&self.basis, omega))
    }
}

/// Weighted set of real orthonormal vectors (columns of `vectors`).
#[derive(Debug, Clone)]
pub(crate) struct Ensemble {
    pub weights: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl Ensemble {
    /// Drops members whose weight is at most `floor`.
    pub fn pruned(&self, floor: f64) -> Self {
        let keep: Vec<usize> = (0..self.weights.len()).filter(|&k| self.weights[k] > floor).collect();
        Self {
            weights: keep.iter().map(|&k| self.weights[k]).collect(),
            vectors: self.vectors.select_columns(keep.iter()),
        }
    }
}

/// Geometric occupations `(1 − q) q^k` of the first `dim` levels, renormalized.
pub(crate) fn geometric_weights(q: f64, dim: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..dim).map(|k| if k == 0 { 1.0 } else { q.powi(k as i32) }).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    w
}

/// Gibbs-type state of `H(omega)` on `basis`: occupation ratio `q` between
/// successive eigenvectors of the compressed Hamiltonian, ordered by energy.
pub(crate) fn gibbs_ensemble(basis: &FockBasis, omega: f64, q: f64) -> Ensemble {
    let n = basis.dim();
    if omega == basis.omega_ref() {
        return Ensemble {
            weights: geometric_weights(q, n),
            vectors: DMatrix::identity(n, n),
        };
    }
    Ensemble {
        weights: geometric_weights(q, n),
        vectors: symmetric_eigen(&hamiltonian(basis, omega)).vectors,
    }
}

/// Population beyond `dim` levels of a geometric distribution with ratio `q`.
pub fn geometric_tail(q: f64, dim: usize) -> f64 {
    q.powi(dim as i32)
}

/// Population a thermal state at `(beta, omega)` leaves beyond `dim` levels.
pub fn thermal_tail(beta: f64, omega: f64, dim: usize) -> f64 {
    (-beta * omega * dim as f64).exp()
}

/// Smallest truncation whose geometric tail stays below [`TAIL_LIMIT`].
pub fn required_dim(q: f64) -> usize {
    if q <= 0.0 {
        return 2;
    }
    ((TAIL_LIMIT.ln() / q.ln()).ceil() as usize).max(2)
}

fn check_tail(q: f64, dim: usize) -> Result<()> {
    let tail = geometric_tail(q, dim);
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation {
            tail,
            dim,
            suggested_dim: required_dim(q),
        });
    }
    Ok(())
}

/// Thermal state in its own number basis: diagonal Gibbs weights
/// renormalized over the kept levels.
pub fn thermal_density(beta: f64, omega: f64, dim: usize) -> Result<TruncatedDensityMatrix> {
    require_positive("beta", beta)?;
    let basis = FockBasis::new(dim, omega)?;
    thermal_density_in(beta, omega, basis)
}

/// Thermal state of `H(omega)` represented on an arbitrary basis.
pub fn thermal_density_in(beta: f64, omega: f64, basis: FockBasis) -> Result<TruncatedDensityMatrix> {
    require_positive("beta", beta)?;
    require_positive("omega", omega)?;
    let q = (-beta * omega).exp();
    check_tail(q, basis.dim())?;
    Ok(TruncatedDensityMatrix::from_ensemble(
        basis,
        &gibbs_ensemble(&basis, omega, q),
    ))
}

/// Occupation ratio and natural frequency of the Gibbs state matching a
/// Gaussian state.
pub(crate) fn gaussian_parameters(state: &GaussianState) -> (f64, f64) {
    let c = state.coth_factor();
    ((c - 1.0) / (c + 1.0), state.natural_frequency())
}

/// Matrix form of a Gaussian state: the Gibbs state of `H(ω_s)` with
/// `ω_s = √(var_p/var_x)` and `coth(β_s ω_s/2) = 2√(var_x var_p)`.
pub fn gaussian_density(state: &GaussianState, basis: FockBasis) -> Result<TruncatedDensityMatrix> {
    let (q, omega) = gaussian_parameters(state);
    check_tail(q, basis.dim())?;
    Ok(TruncatedDensityMatrix::from_ensemble(
        basis,
        &gibbs_ensemble(&basis, omega, q),
    ))
}

/// The number state `|n⟩` of the basis.
pub fn fock_state(n: usize, basis: FockBasis) -> Result<TruncatedDensityMatrix> {
    if n >= basis.dim() {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("level {n} lies outside a {}-level basis", basis.dim()),
        });
    }
    let mut rho = DMatrix::zeros(basis.dim(), basis.dim());
    rho[(n, n)] = 1.0;
    Ok(TruncatedDensityMatrix::from_real(basis, &rho))
}
