//! Unitary propagation of density matrices under a frequency ramp.
//!
//! Each step of length `dt` applies the midpoint-frequency propagator
//! `exp(−i H(ω(t + dt/2)) dt)` in Strang-split form,
//! `e^{−iV dt/2} e^{−iT dt} e^{−iV dt/2}` with `T = p²/2`, `V = ω² x²/2`.
//! Working in the eigenbasis of the `x²` compression makes the potential
//! factors diagonal phases, and the kinetic factor is one fixed matrix, so
//! a step costs a handful of matrix products instead of an exponential.
//! Because the compressions are exact, `T + V` is exactly the truncated
//! Hamiltonian and the scheme is unitary on the truncated space.

use nalgebra::{Complex, DMatrix, DVector};

use super::eigen::{parity_block, parity_levels, real_embedding, symmetric_eigen, Spectrum};
use super::operators::{hamiltonian, momentum_squared, position_squared, FockBasis};
use super::states::{Ensemble, TruncatedDensityMatrix};
use crate::error::{require_positive, Error, Result};
use crate::ramp::Ramp;
use crate::special::coth;

/// Ensemble members lighter than this are not propagated.
pub const WEIGHT_FLOOR: f64 = 1e-12;

/// Step count giving roughly 20 steps per unit of `τ ω_max`, never fewer than 100.
pub fn default_steps(ramp: &Ramp) -> usize {
    let w = ramp.omega_i().max(ramp.omega_f());
    ((20.0 * ramp.tau() * w).ceil() as usize).max(100)
}

/// Grid representation of one parity sector of a basis.
struct Sector {
    /// Number states spanned by the sector.
    levels: Vec<usize>,
    /// Eigenvalues of the `x²` compression.
    grid: DVector<f64>,
    /// Columns are the `x²` eigenvectors in the number basis of the sector.
    to_fock: DMatrix<f64>,
    /// `p²/2` on the grid.
    kinetic: DMatrix<f64>,
    kinetic_eig: Spectrum,
}

/// Complex block stored as separate real and imaginary parts.
pub(crate) struct SplitComplex {
    pub re: DMatrix<f64>,
    pub im: DMatrix<f64>,
}

/// Part of an ensemble living in one sector, in grid representation.
struct SectorState {
    /// Ensemble members with a nonzero component in the sector.
    members: Vec<usize>,
    psi: SplitComplex,
}

/// Ensemble members split over the two parity sectors.
pub(crate) struct Evolved {
    sectors: Vec<SectorState>,
    members: usize,
}

impl Sector {
    fn new(basis: &FockBasis, levels: Vec<usize>) -> Self {
        let x2 = symmetric_eigen(&parity_block(&position_squared(basis), &levels));
        let p2 = parity_block(&momentum_squared(basis), &levels);
        let kinetic = x2.vectors.transpose() * (p2 * 0.5) * &x2.vectors;
        let kinetic_eig = symmetric_eigen(&kinetic);
        Self {
            levels,
            grid: DVector::from_vec(x2.values),
            to_fock: x2.vectors,
            kinetic,
            kinetic_eig,
        }
    }

    /// Real and imaginary parts of `exp(−i T dt)`.
    fn kinetic_propagator(&self, dt: f64) -> (DMatrix<f64>, DMatrix<f64>) {
        let v = &self.kinetic_eig.vectors;
        let lam = &self.kinetic_eig.values;
        let mut vc = v.clone();
        let mut vs = v.clone();
        for (j, (mut c, mut s)) in vc.column_iter_mut().zip(vs.column_iter_mut()).enumerate() {
            c *= (lam[j] * dt).cos();
            s *= -(lam[j] * dt).sin();
        }
        (vc * v.transpose(), vs * v.transpose())
    }

    fn apply_potential(&self, omega: f64, half_dt: f64, psi: &mut SplitComplex) {
        let scale = 0.5 * omega * omega * half_dt;
        for k in 0..self.grid.len() {
            let (s, c) = (scale * self.grid[k]).sin_cos();
            for j in 0..psi.re.ncols() {
                let (r, i) = (psi.re[(k, j)], psi.im[(k, j)]);
                psi.re[(k, j)] = r * c + i * s;
                psi.im[(k, j)] = i * c - r * s;
            }
        }
    }

    fn evolve(&self, ramp: &Ramp, psi: &mut SplitComplex, steps: usize) {
        let dt = ramp.tau() / steps as f64;
        let (kr, ki) = self.kinetic_propagator(dt);
        let mut re = DMatrix::zeros(psi.re.nrows(), psi.re.ncols());
        let mut im = re.clone();
        for step in 0..steps {
            let omega = ramp.omega((step as f64 + 0.5) * dt);
            self.apply_potential(omega, 0.5 * dt, psi);
            re.gemm(1.0, &kr, &psi.re, 0.0);
            re.gemm(-1.0, &ki, &psi.im, 1.0);
            im.gemm(1.0, &kr, &psi.im, 0.0);
            im.gemm(1.0, &ki, &psi.re, 1.0);
            std::mem::swap(&mut psi.re, &mut re);
            std::mem::swap(&mut psi.im, &mut im);
            self.apply_potential(omega, 0.5 * dt, psi);
        }
    }

    /// `⟨ψ_j| H(ω) |ψ_j⟩` for every column.
    fn energies(&self, omega: f64, psi: &SplitComplex) -> Vec<f64> {
        let mut h = self.kinetic.clone();
        for k in 0..self.grid.len() {
            h[(k, k)] += 0.5 * omega * omega * self.grid[k];
        }
        let hr = &h * &psi.re;
        let hi = &h * &psi.im;
        (0..psi.re.ncols())
            .map(|j| psi.re.column(j).dot(&hr.column(j)) + psi.im.column(j).dot(&hi.column(j)))
            .collect()
    }
}

/// Split-operator propagator for one truncated basis.
///
/// The `x²` and `p²` compressions only couple number states of equal
/// parity, so the even and odd sectors are propagated independently.
pub struct SplitOperator {
    basis: FockBasis,
    sectors: Vec<Sector>,
}

impl SplitOperator {
    pub fn new(basis: FockBasis) -> Self {
        let sectors = parity_levels(basis.dim())
            .into_iter()
            .map(|levels| Sector::new(&basis, levels))
            .collect();
        Self { basis, sectors }
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    /// Splits number-basis columns over the sectors, dropping members
    /// without a component in a sector.
    pub(crate) fn load(&self, psi: &SplitComplex) -> Evolved {
        let members = psi.re.ncols();
        let sectors = self
            .sectors
            .iter()
            .map(|sector| {
                let re = psi.re.select_rows(&sector.levels);
                let im = psi.im.select_rows(&sector.levels);
                let present: Vec<usize> = (0..members)
                    .filter(|&j| re.column(j).amax() > 0.0 || im.column(j).amax() > 0.0)
                    .collect();
                let to_grid = sector.to_fock.transpose();
                SectorState {
                    psi: SplitComplex {
                        re: &to_grid * re.select_columns(&present),
                        im: &to_grid * im.select_columns(&present),
                    },
                    members: present,
                }
            })
            .collect();
        Evolved { sectors, members }
    }

    pub(crate) fn evolve(&self, ramp: &Ramp, mut state: Evolved, steps: usize) -> Evolved {
        for (sector, part) in self.sectors.iter().zip(&mut state.sectors) {
            if !part.members.is_empty() {
                sector.evolve(ramp, &mut part.psi, steps);
            }
        }
        state
    }

    /// `Σ_j w_j ⟨ψ_j| H(ω) |ψ_j⟩`.
    pub(crate) fn energy(&self, omega: f64, state: &Evolved, weights: &[f64]) -> f64 {
        self.sectors
            .iter()
            .zip(&state.sectors)
            .map(|(sector, part)| {
                let e = sector.energies(omega, &part.psi);
                part.members.iter().zip(e).map(|(&j, e)| weights[j] * e).sum::<f64>()
            })
            .sum()
    }

    /// Mean final energy `Tr(ρ(τ) H(ω_f))` of a propagated real ensemble.
    pub(crate) fn final_energy(&self, ramp: &Ramp, ensemble: &Ensemble, steps: usize) -> f64 {
        let n = ensemble.vectors.nrows();
        let start = SplitComplex {
            re: ensemble.vectors.clone(),
            im: DMatrix::zeros(n, ensemble.vectors.ncols()),
        };
        let loaded = self.load(&start);
        // A Gibbs ensemble of a fixed trap is stationary.
        let state = if ramp.is_constant() {
            loaded
        } else {
            self.evolve(ramp, loaded, steps)
        };
        self.energy(ramp.omega_f(), &state, &ensemble.weights)
    }

    fn to_density(&self, state: &Evolved, weights: &[f64]) -> TruncatedDensityMatrix {
        let n = self.basis.dim();
        let mut fr = DMatrix::zeros(n, state.members);
        let mut fi = DMatrix::zeros(n, state.members);
        for (sector, part) in self.sectors.iter().zip(&state.sectors) {
            let re = &sector.to_fock * &part.psi.re;
            let im = &sector.to_fock * &part.psi.im;
            for (c, &j) in part.members.iter().enumerate() {
                for (r, &level) in sector.levels.iter().enumerate() {
                    fr[(level, j)] = re[(r, c)];
                    fi[(level, j)] = im[(r, c)];
                }
            }
        }
        let scale = |m: &DMatrix<f64>| {
            let mut out = m.clone();
            for (mut col, &w) in out.column_iter_mut().zip(weights) {
                col *= w;
            }
            out
        };
        let (wr, wi) = (scale(&fr), scale(&fi));
        let re = &wr * fr.transpose() + &wi * fi.transpose();
        let im = &wi * fr.transpose() - &wr * fi.transpose();
        let elements = DMatrix::from_fn(n, n, |i, j| Complex::new(re[(i, j)], im[(i, j)]));
        TruncatedDensityMatrix::from_complex_unchecked(self.basis, elements)
    }
}

/// Eigen-ensemble of a density matrix, split into real and imaginary parts.
///
/// A complex state is decomposed through its real embedding: each
/// eigenvalue appears twice there, and both copies map to the same
/// projector, so every embedded column enters with half the weight.
fn spectral_members(rho: &TruncatedDensityMatrix) -> (Vec<f64>, SplitComplex) {
    let n = rho.dim();
    let (values, re, im) = if rho.is_real() {
        let eig = symmetric_eigen(&rho.real_part());
        (eig.values, eig.vectors, DMatrix::zeros(n, n))
    } else {
        let eig = symmetric_eigen(&real_embedding(rho.elements()));
        let values = eig.values.iter().map(|v| 0.5 * v).collect();
        let re = eig.vectors.rows(0, n).into_owned();
        let im = eig.vectors.rows(n, n).into_owned();
        (values, re, im)
    };
    let keep: Vec<usize> = (0..values.len()).filter(|&k| values[k] > WEIGHT_FLOOR).collect();
    (
        keep.iter().map(|&k| values[k]).collect(),
        SplitComplex {
            re: re.select_columns(keep.iter()),
            im: im.select_columns(keep.iter()),
        },
    )
}

/// Exact propagator `exp(−i H τ)` for a ramp that never changes the frequency.
fn evolve_constant(rho: &TruncatedDensityMatrix, omega: f64, tau: f64) -> TruncatedDensityMatrix {
    let eig = symmetric_eigen(&hamiltonian(rho.basis(), omega));
    let v = eig.vectors.map(|x| Complex::new(x, 0.0));
    let rotated = v.adjoint() * rho.elements() * &v;
    let e = &eig.values;
    let phased = DMatrix::from_fn(rotated.nrows(), rotated.ncols(), |i, j| {
        rotated[(i, j)] * Complex::from_polar(1.0, -(e[i] - e[j]) * tau)
    });
    TruncatedDensityMatrix::from_complex_unchecked(*rho.basis(), &v * phased * v.adjoint())
}

fn check_steps(steps: usize) -> Result<()> {
    if steps == 0 {
        return Err(Error::InvalidParameter {
            name: "steps",
            reason: "at least one time step is required".into(),
        });
    }
    Ok(())
}

/// `ρ(τ) = U ρ(0) U†` for the driven Hamiltonian of `ramp`.
pub fn propagate(ramp: &Ramp, rho0: &TruncatedDensityMatrix, steps: usize) -> Result<TruncatedDensityMatrix> {
    check_steps(steps)?;
    if ramp.is_constant() {
        return Ok(evolve_constant(rho0, ramp.omega_i(), ramp.tau()));
    }
    let op = SplitOperator::new(*rho0.basis());
    let (weights, members) = spectral_members(rho0);
    let state = op.evolve(ramp, op.load(&members), steps);
    Ok(op.to_density(&state, &weights))
}

/// `Tr(ρ(τ) H(ω_f))` without assembling the final density matrix.
pub fn propagated_energy(ramp: &Ramp, rho0: &TruncatedDensityMatrix, steps: usize) -> Result<f64> {
    check_steps(steps)?;
    if ramp.is_constant() {
        return Ok(rho0.mean_energy(ramp.omega_f()));
    }
    let op = SplitOperator::new(*rho0.basis());
    let (weights, members) = spectral_members(rho0);
    let state = op.evolve(ramp, op.load(&members), steps);
    Ok(op.energy(ramp.omega_f(), &state, &weights))
}

/// Inverts `E_f = (ω_f/2) Q* coth(β ω_i/2)` for a stroke started thermal.
pub fn qstar_from_energy(final_energy: f64, beta: f64, omega_i: f64, omega_f: f64) -> Result<f64> {
    require_positive("final_energy", final_energy)?;
    require_positive("beta", beta)?;
    require_positive("omega_i", omega_i)?;
    require_positive("omega_f", omega_f)?;
    Ok(2.0 * final_energy / (omega_f * coth(0.5 * beta * omega_i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics;
    use crate::fock::states::{thermal_density, thermal_density_in};

    #[test]
    fn energy_inversion() {
        let e = 0.5 * 0.5 * coth(0.05);
        assert!((qstar_from_energy(e, 1.0, 0.1, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(qstar_from_energy(2.0 * e, 1.0, 0.1, 0.5).unwrap() > qstar_from_energy(e, 1.0, 0.1, 0.5).unwrap());
        assert!(qstar_from_energy(e, 0.0, 0.1, 0.5).is_err());
    }

    #[test]
    fn constant_frequency_conserves_energy() {
        let rho = thermal_density(2.0, 0.8, 40).unwrap();
        let ramp = Ramp::quintic(0.8, 0.8, 3.0).unwrap();
        let out = propagate(&ramp, &rho, 50).unwrap();
        assert!((out.mean_energy(0.8) - rho.mean_energy(0.8)).abs() < 1e-10);
        assert!((out.trace().re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn propagation_is_unitary() {
        let basis = FockBasis::geometric(60, 0.5, 1.0).unwrap();
        let rho = thermal_density_in(3.0, 0.5, basis).unwrap();
        let ramp = Ramp::quintic(0.5, 1.0, 2.0).unwrap();
        let out = propagate(&ramp, &rho, 80).unwrap();
        assert!((out.trace().re - 1.0).abs() < 1e-10);
        assert!(out.trace().im.abs() < 1e-10);
        let out = TruncatedDensityMatrix::new(basis, out.elements().clone()).unwrap();
        let purity = |r: &TruncatedDensityMatrix| (r.elements() * r.elements()).trace().re;
        assert!((purity(&out) - purity(&rho)).abs() < 1e-10);
        assert!(!out.is_real());
    }

    #[test]
    fn fast_ramp_tracks_classical_dynamics() {
        let (wi, wf, tau, beta) = (0.5, 1.0, 1.5, 3.0);
        let basis = FockBasis::geometric(80, wi, wf).unwrap();
        let rho = thermal_density_in(beta, wi, basis).unwrap();
        let ramp = Ramp::quintic(wi, wf, tau).unwrap();
        let e = propagated_energy(&ramp, &rho, 400).unwrap();
        let q = qstar_from_energy(e, beta, wi, wf).unwrap();
        let reference = dynamics::qstar(&ramp).unwrap().qstar;
        assert!((q - reference).abs() < 1e-5, "{q} vs {reference}");
    }
}
