//! Library values against independently coded references.

use ottofridge::dynamics;
use ottofridge::ramp::Ramp;
use ottofridge::special::coth;
use ottofridge::thermo::{self, CycleConfig};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

fn gl_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let rule = gauss_legendre(64);
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let (lo, hi) = (a + k as f64 * h, a + (k + 1) as f64 * h);
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            rule.iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>() * half
        })
        .sum()
}

#[test]
fn gauss_legendre_rule_is_exact_for_polynomials() {
    let rule = gauss_legendre(64);
    assert!((rule.iter().map(|p| p.1).sum::<f64>() - 2.0).abs() < 1e-13);
    let x126: f64 = rule.iter().map(|&(x, w)| w * x.powi(126)).sum();
    assert!((x126 - 2.0 / 127.0).abs() < 1e-13);
}

/// Instantaneous control energy `(ω/2)(Q*_LCD − 1) coth(β ω_i / 2)`, with
/// the ramp and its derivatives coded directly from the quintic polynomial.
fn control_energy(wi: f64, wf: f64, tau: f64, beta: f64, t: f64) -> f64 {
    let s = t / tau;
    let d = wf - wi;
    let w = wi + d * s.powi(3) * (10.0 - 15.0 * s + 6.0 * s * s);
    let dw = d * 30.0 * s * s * (1.0 - s).powi(2) / tau;
    let ddw = d * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / (tau * tau);
    let q_lcd = 1.0 - dw * dw / (4.0 * w.powi(4)) + ddw / (4.0 * w.powi(3));
    0.5 * w * (q_lcd - 1.0) * coth(0.5 * beta * wi)
}

#[test]
fn sta_cost_matches_gauss_legendre() {
    for &(wi, wf, tau, beta) in &[
        (0.1, 0.5, 10.0, 1.0),
        (0.5, 0.1, 10.0, 0.75),
        (0.1, 0.5, 0.5, 1.0),
        (1.0, 3.0, 2.0, 0.3),
    ] {
        let ramp = Ramp::quintic(wi, wf, tau).unwrap();
        let lib = ramp.sta_cost_avg(beta).unwrap();
        let reference = gl_integrate(|t| control_energy(wi, wf, tau, beta, t), 0.0, tau, 8) / tau;
        assert!(
            (lib.direct - reference).abs() <= 1e-10 * reference.abs(),
            "{wi}->{wf} tau {tau}: {} vs {reference}",
            lib.direct
        );
        assert!((lib.by_parts - reference).abs() <= 1e-8 * reference.abs());
    }
}

/// Classical RK4 with a fixed step for `x'' = -ω(t)² x`.
fn rk4_pair(ramp: &Ramp, dt: f64) -> [f64; 4] {
    let n = (ramp.tau() / dt).round() as usize;
    let h = ramp.tau() / n as f64;
    let f = |t: f64, y: [f64; 4]| {
        let w2 = ramp.omega(t.min(ramp.tau())).powi(2);
        [y[1], -w2 * y[0], y[3], -w2 * y[2]]
    };
    let mut y = [1.0, 0.0, 0.0, 1.0];
    for k in 0..n {
        let t = k as f64 * h;
        let add = |y: [f64; 4], d: [f64; 4], s: f64| std::array::from_fn::<f64, 4, _>(|i| y[i] + s * d[i]);
        let k1 = f(t, y);
        let k2 = f(t + 0.5 * h, add(y, k1, 0.5 * h));
        let k3 = f(t + 0.5 * h, add(y, k2, 0.5 * h));
        let k4 = f(t + h, add(y, k3, h));
        y = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
    }
    y
}

#[test]
fn qstar_matches_fixed_step_rk4() {
    for &(wi, wf, tau) in &[(0.1, 0.5, 1.0), (0.1, 0.5, 10.0), (0.5, 0.1, 5.0), (0.3, 2.0, 3.0)] {
        let ramp = Ramp::quintic(wi, wf, tau).unwrap();
        let [x, dx, y, dy] = rk4_pair(&ramp, 1e-4);
        let reference = (wf * wf * x * x + dx * dx + wi * wi * (wf * wf * y * y + dy * dy)) / (2.0 * wi * wf);
        let lib = dynamics::qstar(&ramp).unwrap().qstar;
        assert!(
            (lib - reference).abs() < 1e-9,
            "{wi}->{wf} tau {tau}: {lib} vs {reference}"
        );
    }
}

#[test]
fn sudden_limit() {
    let q = dynamics::qstar(&Ramp::quintic(0.1, 0.5, 1e-4).unwrap()).unwrap().qstar;
    assert!((q - 2.6).abs() < 1e-5, "{q}");
    assert!((dynamics::qstar_sudden(0.1, 0.5).unwrap() - 2.6).abs() < 1e-14);
}

#[test]
fn ramp_derivatives_match_finite_differences() {
    let ramp = Ramp::quintic(0.1, 0.5, 3.0).unwrap();
    let h = 1e-4;
    for k in 1..30 {
        let t = 0.1 * k as f64;
        let s = ramp.evaluate(t).unwrap();
        let (wm, w0, wp) = (ramp.omega(t - h), ramp.omega(t), ramp.omega(t + h));
        assert!((s.domega - (wp - wm) / (2.0 * h)).abs() < 1e-8);
        assert!((s.ddomega - (wp - 2.0 * w0 + wm) / (h * h)).abs() < 1e-5);
    }
    let start = ramp.evaluate(0.0).unwrap();
    let end = ramp.evaluate(3.0).unwrap();
    assert_eq!((start.omega, start.domega, start.ddomega), (0.1, 0.0, 0.0));
    assert!((end.omega - 0.5).abs() < 1e-15 && end.domega.abs() < 1e-15 && end.ddomega.abs() < 1e-14);
}

#[test]
fn heat_derivatives_match_finite_differences() {
    let config = CycleConfig::reference(10.0);
    let h = 1e-6;
    let q4 = |q3: f64| thermo::heats(&config, 1.3, q3).unwrap().1;
    let fd = (q4(1.5 + h) - q4(1.5 - h)) / (2.0 * h);
    let exact = -0.5 * config.omega1 * coth(config.x2());
    assert!((fd - exact).abs() < 1e-8);
    let w1 = |q1: f64| thermo::works(&config, q1, 1.0).unwrap().0;
    let fd = (w1(1.5 + h) - w1(1.5 - h)) / (2.0 * h);
    assert!((fd - 0.5 * config.omega2 * coth(config.x1())).abs() < 1e-7);
}
