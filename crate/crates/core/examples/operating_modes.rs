// Nonadiabatic, shortcut and quasi-static operation side by side.
//
// ```bash
// cargo run --example operating_modes
// ```

use ottofridge::thermo::{self, CycleConfig, Mode, Numerics, StrokeDynamics};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for tau in [1.0, 3.0, 25.0] {
        let config = CycleConfig::reference(tau);
        // The stroke dynamics are shared by all three modes.
        let strokes = StrokeDynamics::compute(&config, &Numerics::default())?;
        println!("tau = {tau}: Q*1 = {:.6}, Q*3 = {:.6}", strokes.qstar1, strokes.qstar3);
        for mode in Mode::ALL {
            let p = thermo::performance(&config, mode, &strokes)?;
            println!(
                "  {mode:?}: COP = {:>9.6}  J = {:>9.6}  chi = {:>9.6}  dS = {:.6}",
                p.cop.unwrap_or(f64::NAN),
                p.cooling_power.unwrap_or(f64::NAN),
                p.chi.unwrap_or(f64::NAN),
                p.entropy_production
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
