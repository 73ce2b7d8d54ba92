//! Hyperbolic helpers used throughout the thermodynamics.

/// Hyperbolic cotangent, accurate for small arguments.
///
/// Below `1e-4` the Laurent series `1/x + x/3 - x^3/45` is used; elsewhere
/// `1 + 2/expm1(2x)`, which avoids the cancellation in `cosh/sinh`.
pub fn coth(x: f64) -> f64 {
    let ax = x.abs();
    let value = if ax < 1e-4 {
        1.0 / ax + ax / 3.0 - ax.powi(3) / 45.0
    } else {
        1.0 + 2.0 / (2.0 * ax).exp_m1()
    };
    value.copysign(x)
}

/// `x coth(x)`, finite at the origin.
pub fn x_coth(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x * coth(x)
    }
}
