// The quintic frequency ramp and its local counterdiabatic trap.
//
// Short strokes need a trap frequency Ω²(t) that dips below zero, i.e. the
// confining potential is briefly inverted.
//
// ```bash
// cargo run --example lcd_ramp
// ```

use ottofridge::ramp::Ramp;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ramp = Ramp::quintic(0.1, 0.5, 10.0)?;
    println!("{:>6} {:>10} {:>12} {:>12}", "t", "omega", "Omega^2", "Q*_lcd");
    for k in 0..=10 {
        let s = ramp.evaluate(k as f64)?;
        println!(
            "{:>6.1} {:>10.6} {:>12.6e} {:>12.8}",
            s.t, s.omega, s.omega_lcd_sq, s.qstar_lcd
        );
    }

    for tau in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
        let (min, at) = Ramp::quintic(0.1, 0.5, tau)?.min_lcd_frequency_sq(2_000);
        let verdict = if min < 0.0 { "inverted" } else { "confining" };
        println!("tau = {tau:>5}: min Omega^2 = {min:>12.5e} at t = {at:.4} ({verdict})");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
