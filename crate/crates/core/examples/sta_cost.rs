// Control-field energy of the counterdiabatic protocol, evaluated directly
// and after an integration by parts.
//
// ```bash
// cargo run --example sta_cost
// ```

use ottofridge::ramp::Ramp;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let beta = 1.0;
    for tau in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0] {
        let cost = Ramp::quintic(0.1, 0.5, tau)?.sta_cost_avg(beta)?;
        println!(
            "tau = {tau:>5}: direct = {:.12e}  by parts = {:.12e}  tau^2 * cost = {:.10}",
            cost.direct,
            cost.by_parts,
            tau * tau * cost.value()
        );
    }
    let ramp = Ramp::quintic(0.1, 0.5, 2.0)?;
    println!(
        "instantaneous cost at t = 0.5: {:.6e}",
        ramp.sta_cost_instant(0.5, beta)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
