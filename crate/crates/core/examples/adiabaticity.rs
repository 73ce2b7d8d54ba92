// Adiabaticity parameter Q* of a stroke, from the sudden quench to the
// quasi-static limit.
//
// ```bash
// cargo run --example adiabaticity
// ```

use ottofridge::dynamics;
use ottofridge::ramp::Ramp;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (wi, wf) = (0.1, 0.5);
    println!("sudden quench: Q* = {}", dynamics::qstar_sudden(wi, wf)?);
    for tau in [1e-4, 0.1, 1.0, 5.0, 10.0, 30.0, 100.0] {
        let up = dynamics::qstar(&Ramp::quintic(wi, wf, tau)?)?;
        let down = dynamics::qstar(&Ramp::quintic(wf, wi, tau)?)?;
        println!(
            "tau = {tau:>7}: Q*(up) = {:.10}  Q*(down) = {:.10}  wronskian drift = {:.1e}",
            up.qstar, down.qstar, up.wronskian_drift
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
