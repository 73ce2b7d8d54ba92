//! Fidelity and relative entropy of truncated density matrices.

use nalgebra::DMatrix;

use super::eigen::{nuclear_norm, real_embedding, symmetric_eigen, Spectrum};
use super::states::{TruncatedDensityMatrix, POSITIVITY_TOL};
use crate::error::{Error, Result};

/// Eigenvalues of `b` at or below this level are treated as outside its
/// support when they come from a numerical eigendecomposition.
pub const SUPPORT_FLOOR: f64 = 1e-14;

fn is_diagonal(m: &DMatrix<f64>) -> bool {
    (0..m.ncols()).all(|j| (0..m.nrows()).all(|i| i == j || m[(i, j)] == 0.0))
}

/// Spectrum of a symmetric matrix. Diagonal input is read off directly, so
/// tiny eigenvalues keep their full relative accuracy; the flag reports it.
fn spectrum(m: &DMatrix<f64>) -> (Spectrum, bool) {
    if is_diagonal(m) {
        let n = m.nrows();
        let values = (0..n).map(|k| m[(k, k)]).collect();
        (
            Spectrum {
                values,
                vectors: DMatrix::identity(n, n),
            },
            true,
        )
    } else {
        (symmetric_eigen(m), false)
    }
}

fn check_positive(values: &[f64]) -> Result<()> {
    let lowest = values.iter().copied().fold(f64::INFINITY, f64::min);
    if lowest < -POSITIVITY_TOL {
        return Err(Error::InvalidState(format!("negative eigenvalue {lowest:e}")));
    }
    Ok(())
}

/// Real symmetric forms of two states on a shared basis, together with the
/// multiplicity every eigenvalue picks up in that form.
fn real_pair(a: &TruncatedDensityMatrix, b: &TruncatedDensityMatrix) -> Result<(DMatrix<f64>, DMatrix<f64>, f64)> {
    if a.basis() != b.basis() {
        return Err(Error::InvalidState(format!(
            "states live in different bases ({:?} vs {:?})",
            a.basis(),
            b.basis()
        )));
    }
    if a.is_real() && b.is_real() {
        Ok((a.real_part(), b.real_part(), 1.0))
    } else {
        Ok((real_embedding(a.elements()), real_embedding(b.elements()), 2.0))
    }
}

fn matrix_sqrt(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let (s, _) = spectrum(m);
    check_positive(&s.values)?;
    let mut scaled = s.vectors.clone();
    for (mut col, &v) in scaled.column_iter_mut().zip(&s.values) {
        col *= v.max(0.0).sqrt();
    }
    Ok(scaled * s.vectors.transpose())
}

/// Uhlmann transition probability `(Tr √(√a b √a))²`.
///
/// The trace is evaluated as the sum of singular values of `√a √b`. Those
/// carry absolute errors near machine epsilon, whereas square roots of the
/// eigenvalues of `√a b √a` would blow round-off in its null space up to
/// the 1e-8 level.
pub fn matrix_fidelity(a: &TruncatedDensityMatrix, b: &TruncatedDensityMatrix) -> Result<f64> {
    let (a, b, multiplicity) = real_pair(a, b)?;
    let product = matrix_sqrt(&a)? * matrix_sqrt(&b)?;
    let root = nuclear_norm(&product) / multiplicity;
    Ok((root * root).clamp(0.0, 1.0))
}

/// Quantum relative entropy `S(a‖b) = Tr(a ln a) − Tr(a ln b)`.
pub fn relative_entropy(a: &TruncatedDensityMatrix, b: &TruncatedDensityMatrix) -> Result<f64> {
    let (a, b, multiplicity) = real_pair(a, b)?;
    let (sa, _) = spectrum(&a);
    check_positive(&sa.values)?;
    let (sb, exact) = spectrum(&b);
    check_positive(&sb.values)?;
    let neg_entropy: f64 = sa.values.iter().filter(|&&v| v > 0.0).map(|&v| v * v.ln()).sum();

    // Weights of `a` on the eigenvectors of `b`.
    let projected = &a * &sb.vectors;
    let floor = if exact { 0.0 } else { SUPPORT_FLOOR };
    let mut cross = 0.0;
    for (k, &mu) in sb.values.iter().enumerate() {
        let weight = sb.vectors.column(k).dot(&projected.column(k));
        if mu > floor {
            cross += weight * mu.ln();
        } else if weight > SUPPORT_FLOOR {
            return Err(Error::DivergentRelativeEntropy(format!(
                "first state has weight {weight:e} on an eigenvector of the second with eigenvalue {mu:e}"
            )));
        }
    }
    Ok(((neg_entropy - cross) / multiplicity).max(0.0))
}
