// Entropy production of the quasi-static cycle recovered as the relative
// entropy relaxed away on the two isochores.
//
// ```bash
// cargo run --example relative_entropy
// ```

use ottofridge::fock::{self, FockBasis};
use ottofridge::thermo::{self, CycleConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let config = CycleConfig::reference(10.0);
    let dim = 400;
    // Adiabatic strokes keep the populations, so the state reaching the hot
    // bath is the cold Gibbs distribution written in the hot-trap basis.
    let q1 = (-config.beta1 * config.omega1).exp();
    let q2 = (-config.beta2 * config.omega2).exp();
    let gibbs = |q: f64, omega: f64| fock::thermal_density(-q.ln() / omega, omega, dim);

    let s_bc = fock::relative_entropy(&gibbs(q1, config.omega2)?, &gibbs(q2, config.omega2)?)?;
    let s_da = fock::relative_entropy(&gibbs(q2, config.omega1)?, &gibbs(q1, config.omega1)?)?;
    let closed_form = thermo::entropy_production(&config, 1.0, 1.0)?;
    println!("S(B||C) + S(D||A) = {:.12}", s_bc + s_da);
    println!("-b2 Q2 - b1 Q4    = {closed_form:.12}");

    let basis = FockBasis::new(3, 1.0)?;
    let diverging = fock::relative_entropy(&fock::fock_state(0, basis)?, &fock::fock_state(1, basis)?);
    println!("S(|0> || |1>): {}", diverging.unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
