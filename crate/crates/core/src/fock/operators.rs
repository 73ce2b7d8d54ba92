//! Position, momentum and Hamiltonian matrices in a truncated Fock basis.

use nalgebra::{Complex, DMatrix};

use crate::error::{require_positive, Error, Result};

/// Number states `|0⟩ … |N−1⟩` of the oscillator at frequency `omega_ref`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockBasis {
    dim: usize,
    omega_ref: f64,
}

impl FockBasis {
    pub fn new(dim: usize, omega_ref: f64) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter {
                name: "dim",
                reason: format!("truncation must keep at least 2 levels, got {dim}"),
            });
        }
        require_positive("omega_ref", omega_ref)?;
        Ok(Self { dim, omega_ref })
    }

    /// Basis centred between two frequencies, `ω_ref = √(ω_a ω_b)`. States
    /// at either frequency are then squeezed by the same amount, which
    /// keeps the truncation symmetric.
    pub fn geometric(dim: usize, omega_a: f64, omega_b: f64) -> Result<Self> {
        require_positive("omega_a", omega_a)?;
        require_positive("omega_b", omega_b)?;
        Self::new(dim, (omega_a * omega_b).sqrt())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega_ref(&self) -> f64 {
        self.omega_ref
    }
}

/// `x = (a + a†)/√(2ω_ref)` and `p = i√(ω_ref/2)(a† − a)`.
pub fn build_operators(basis: &FockBasis) -> (DMatrix<f64>, DMatrix<Complex<f64>>) {
    let n = basis.dim;
    let sx = (0.5 / basis.omega_ref).sqrt();
    let sp = (0.5 * basis.omega_ref).sqrt();
    let mut x = DMatrix::zeros(n, n);
    let mut p = DMatrix::from_element(n, n, Complex::new(0.0, 0.0));
    for k in 1..n {
        let s = (k as f64).sqrt();
        x[(k - 1, k)] = sx * s;
        x[(k, k - 1)] = sx * s;
        p[(k, k - 1)] = Complex::new(0.0, sp * s);
        p[(k - 1, k)] = Complex::new(0.0, -sp * s);
    }
    (x, p)
}

/// Fills the pentadiagonal matrix `d_n` on the diagonal and `o_n` at `(n, n+2)`.
fn pentadiagonal(n: usize, diag: impl Fn(f64) -> f64, off: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = diag(k as f64);
        if k + 2 < n {
            let v = off(k as f64);
            m[(k, k + 2)] = v;
            m[(k + 2, k)] = v;
        }
    }
    m
}

/// Exact compression of `x²` onto the basis: `(a² + a†² + 2n + 1)/(2ω_ref)`.
/// Unlike the square of the truncated `x`, it has no corrupted last level.
pub fn position_squared(basis: &FockBasis) -> DMatrix<f64> {
    let r = basis.omega_ref;
    pentadiagonal(
        basis.dim,
        |k| (2.0 * k + 1.0) / (2.0 * r),
        |k| ((k + 1.0) * (k + 2.0)).sqrt() / (2.0 * r),
    )
}

/// Exact compression of `p²`: `−ω_ref (a² + a†² − 2n − 1)/2`.
pub fn momentum_squared(basis: &FockBasis) -> DMatrix<f64> {
    let r = basis.omega_ref;
    pentadiagonal(
        basis.dim,
        |k| 0.5 * r * (2.0 * k + 1.0),
        |k| -0.5 * r * ((k + 1.0) * (k + 2.0)).sqrt(),
    )
}

/// `H(ω) = p²/2 + ω² x²/2` from the exact compressions.
pub fn hamiltonian(basis: &FockBasis, omega: f64) -> DMatrix<f64> {
    momentum_squared(basis) * 0.5 + position_squared(basis) * (0.5 * omega * omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_commutator_away_from_the_edge() {
        let basis = FockBasis::new(12, 0.7).unwrap();
        let (x, p) = build_operators(&basis);
        let xc = x.map(|v| Complex::new(v, 0.0));
        let comm = &xc * &p - &p * &xc;
        for i in 0..11 {
            for j in 0..11 {
                let expected = if i == j {
                    Complex::new(0.0, 1.0)
                } else {
                    Complex::new(0.0, 0.0)
                };
                assert!((comm[(i, j)] - expected).norm() < 1e-13);
            }
        }
        assert!((comm[(11, 11)] - Complex::new(0.0, 1.0)).norm() > 1.0);
    }

    #[test]
    fn reference_hamiltonian_is_diagonal() {
        let basis = FockBasis::new(9, 0.3).unwrap();
        let h = hamiltonian(&basis, 0.3);
        for i in 0..9 {
            for j in 0..9 {
                let expected = if i == j { 0.3 * (i as f64 + 0.5) } else { 0.0 };
                assert!((h[(i, j)] - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn ground_state_width() {
        let basis = FockBasis::new(5, 0.25).unwrap();
        assert_eq!(position_squared(&basis)[(0, 0)], 2.0);
        assert_eq!(momentum_squared(&basis)[(0, 0)], 0.125);
    }

    #[test]
    fn compressions_match_squares_inside_the_block() {
        let basis = FockBasis::new(10, 1.3).unwrap();
        let (x, p) = build_operators(&basis);
        let x2 = &x * &x;
        let p2 = &p * &p;
        let cx = position_squared(&basis);
        let cp = momentum_squared(&basis);
        for i in 0..9 {
            for j in 0..9 {
                assert!((x2[(i, j)] - cx[(i, j)]).abs() < 1e-13);
                assert!((p2[(i, j)].re - cp[(i, j)]).abs() < 1e-13);
                assert!(p2[(i, j)].im.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn rejects_degenerate_bases() {
        assert!(FockBasis::new(1, 1.0).is_err());
        assert!(FockBasis::new(4, 0.0).is_err());
        assert!((FockBasis::geometric(4, 0.1, 0.4).unwrap().omega_ref() - 0.2).abs() < 1e-15);
    }
}
