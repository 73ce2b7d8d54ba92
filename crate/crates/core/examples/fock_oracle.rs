// Independent cross-check in a truncated number-state basis: propagate a
// thermal density matrix through a stroke and compare Q* with the
// classical-trajectory value.
//
// ```bash
// cargo run --release --example fock_oracle
// ```

use ottofridge::dynamics;
use ottofridge::fock::{oracle_fidelity, oracle_qstar, OracleOptions};
use ottofridge::qsl;
use ottofridge::ramp::Ramp;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let ramp = Ramp::quintic(0.1, 0.5, 1.0)?;
    let oracle = oracle_qstar(&ramp, 1.0, &OracleOptions::new(80, 1e-4)?)?;
    let classical = dynamics::qstar(&ramp)?.qstar;
    println!("Q*: classical = {classical:.10}, Fock = {:.10}", oracle.value);
    println!(
        "  dimension {}, {} steps, truncation error {:.1e}, step error {:.1e}, converged: {}",
        oracle.dim_used, oracle.steps_used, oracle.truncation_error, oracle.step_error, oracle.converged
    );

    let a = qsl::thermal_state(0.75, 0.5)?;
    let b = qsl::adiabatic_final_state(0.75, 0.5, 0.1)?;
    let f = oracle_fidelity(&a, &b, &OracleOptions::new(80, 1e-6)?)?;
    println!(
        "fidelity: Gaussian = {:.12}, matrix = {:.12} (dimension {})",
        qsl::fidelity(&a, &b),
        f.value,
        f.dim_used
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
