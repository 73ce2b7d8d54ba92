//! Frequency protocols for the compression and expansion strokes, together
//! with the quantities of the local counterdiabatic (LCD) construction.
//!
//! For a protocol ω(t) the LCD trap frequency is
//!
//! ```text
//! Ω²(t) = ω² − 3ω̇²/(4ω²) + ω̈/(2ω)
//! ```
//!
//! and the LCD adiabaticity factor is `Q*_LCD = 1 − ω̇²/(4ω⁴) + ω̈/(4ω³)`.
//! Both reduce to the bare values wherever ω̇ and ω̈ vanish, which the
//! quintic ramp guarantees at the stroke endpoints.

use crate::error::{require_positive, Error, Result};
use crate::quad::{self, QuadOptions};
use crate::special::coth;

/// Shape of the normalized ramp `g(s)`, `s = t/τ`, with `g(0) = 0`, `g(1) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RampShape {
    /// `g(s) = 10s³ − 15s⁴ + 6s⁵`: first and second derivatives vanish at both ends.
    Quintic,
}

impl RampShape {
    /// Returns `(g, g', g'')` at `s`.
    fn profile(self, s: f64) -> (f64, f64, f64) {
        match self {
            RampShape::Quintic => {
                let s2 = s * s;
                let g = s2 * s * (10.0 + s * (-15.0 + 6.0 * s));
                let dg = 30.0 * s2 * (1.0 + s * (-2.0 + s));
                let ddg = 60.0 * s * (1.0 + s * (-3.0 + 2.0 * s));
                (g, dg, ddg)
            }
        }
    }
}

/// A stroke protocol ω(t) on `[0, tau]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ramp {
    omega_i: f64,
    omega_f: f64,
    tau: f64,
    shape: RampShape,
}

/// Everything the LCD construction needs at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcdSample {
    pub t: f64,
    pub omega: f64,
    pub domega: f64,
    pub ddomega: f64,
    pub omega_lcd_sq: f64,
    pub qstar_lcd: f64,
}

/// Time-averaged control-field energy, evaluated by two independent routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaCost {
    /// Average of the instantaneous control energy.
    pub direct: f64,
    /// Same average after integrating the ω̈ term by parts.
    pub by_parts: f64,
}

impl StaCost {
    pub fn value(&self) -> f64 {
        self.direct
    }
}

/// Relative agreement demanded between the two cost routes.
pub const COST_ROUTE_AGREEMENT: f64 = 1e-8;

impl Ramp {
    /// The quintic ramp `ω(t) = ω_i + (ω_f − ω_i)(10s³ − 15s⁴ + 6s⁵)`.
    pub fn quintic(omega_i: f64, omega_f: f64, tau: f64) -> Result<Self> {
        require_positive("omega_i", omega_i)?;
        require_positive("omega_f", omega_f)?;
        require_positive("tau", tau)?;
        Ok(Self {
            omega_i,
            omega_f,
            tau,
            shape: RampShape::Quintic,
        })
    }

    pub fn omega_i(&self) -> f64 {
        self.omega_i
    }

    pub fn omega_f(&self) -> f64 {
        self.omega_f
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn shape(&self) -> RampShape {
        self.shape
    }

    pub fn is_constant(&self) -> bool {
        self.omega_i == self.omega_f
    }

    /// `(ω, ω̇, ω̈)` at `t`, without a domain check.
    #[inline]
    pub fn derivatives(&self, t: f64) -> (f64, f64, f64) {
        let s = t / self.tau;
        let (g, dg, ddg) = self.shape.profile(s);
        let span = self.omega_f - self.omega_i;
        (
            self.omega_i + span * g,
            span * dg / self.tau,
            span * ddg / (self.tau * self.tau),
        )
    }

    #[inline]
    pub fn omega(&self, t: f64) -> f64 {
        self.derivatives(t).0
    }

    #[inline]
    fn lcd_freq_sq_unchecked(&self, t: f64) -> f64 {
        let (w, dw, ddw) = self.derivatives(t);
        w * w - 0.75 * dw * dw / (w * w) + 0.5 * ddw / w
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if (0.0..=self.tau).contains(&t) {
            Ok(())
        } else {
            Err(Error::Domain { t, tau: self.tau })
        }
    }

    pub fn evaluate(&self, t: f64) -> Result<LcdSample> {
        self.check_time(t)?;
        let (w, dw, ddw) = self.derivatives(t);
        Ok(LcdSample {
            t,
            omega: w,
            domega: dw,
            ddomega: ddw,
            omega_lcd_sq: w * w - 0.75 * dw * dw / (w * w) + 0.5 * ddw / w,
            qstar_lcd: 1.0 - dw * dw / (4.0 * w.powi(4)) + ddw / (4.0 * w.powi(3)),
        })
    }

    /// Minimum of Ω²(t) over the stroke, returned as `(min, argmin)`.
    ///
    /// A uniform grid locates the basin; golden-section search then refines
    /// within the neighbouring grid cells. A negative minimum means the LCD
    /// trap is inverted somewhere during the stroke.
    pub fn min_lcd_frequency_sq(&self, grid_points: usize) -> (f64, f64) {
        let n = grid_points.max(2);
        let dt = self.tau / (n - 1) as f64;
        let (best, _) = (0..n)
            .map(|k| (k, self.lcd_freq_sq_unchecked(k as f64 * dt)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("grid has at least two points");
        let lo = best.saturating_sub(1) as f64 * dt;
        let hi = ((best + 1).min(n - 1) as f64 * dt).min(self.tau);
        golden_section_min(|t| self.lcd_freq_sq_unchecked(t), lo, hi, best as f64 * dt)
    }

    /// Instantaneous control-field energy for an initial thermal state at `beta`.
    pub fn sta_cost_instant(&self, t: f64, beta: f64) -> Result<f64> {
        require_positive("beta", beta)?;
        self.check_time(t)?;
        Ok(self.cost_integrand(t, coth(0.5 * beta * self.omega_i)))
    }

    #[inline]
    fn cost_integrand(&self, t: f64, coth_i: f64) -> f64 {
        let (w, dw, ddw) = self.derivatives(t);
        0.5 * w * (-dw * dw / (4.0 * w.powi(4)) + ddw / (4.0 * w.powi(3))) * coth_i
    }

    /// Time-averaged control-field energy over the stroke.
    pub fn sta_cost_avg(&self, beta: f64) -> Result<StaCost> {
        self.sta_cost_avg_with(beta, &QuadOptions::default())
    }

    pub fn sta_cost_avg_with(&self, beta: f64, opts: &QuadOptions) -> Result<StaCost> {
        require_positive("beta", beta)?;
        if self.is_constant() {
            return Ok(StaCost {
                direct: 0.0,
                by_parts: 0.0,
            });
        }
        let c = coth(0.5 * beta * self.omega_i);
        let direct = quad::integrate(|t| self.cost_integrand(t, c), 0.0, self.tau, opts);
        let parts = quad::integrate(
            |t| {
                let (w, dw, _) = self.derivatives(t);
                dw * dw / (4.0 * w.powi(3))
            },
            0.0,
            self.tau,
            opts,
        );
        let cost = StaCost {
            direct: direct.value / self.tau,
            by_parts: 0.5 * c * parts.value / self.tau,
        };
        let scale = cost.direct.abs().max(cost.by_parts.abs());
        if !direct.converged || !parts.converged || (cost.direct - cost.by_parts).abs() > COST_ROUTE_AGREEMENT * scale {
            return Err(Error::NumericalAccuracy {
                direct: cost.direct,
                by_parts: cost.by_parts,
            });
        }
        Ok(cost)
    }
}

fn golden_section_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, fallback: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    // Golden section only brackets interior minima; keep whichever candidate is lowest.
    [(fc, c), (fd, d), (f(a), a), (f(b), b), (f(fallback), fallback)]
        .into_iter()
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("non-empty")
}
