// Gaussian-state fidelity, Bures angles and the speed-limit bounds on the
// shortcut refrigerator.
//
// ```bash
// cargo run --example speed_limit
// ```

use ottofridge::qsl::{self, GaussianState};
use ottofridge::thermo::{self, CycleConfig, Mode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = GaussianState::vacuum(0.1)?;
    let b = GaussianState::vacuum(0.4)?;
    println!("F(vacuum w, vacuum 4w) = {:.12}", qsl::fidelity(&a, &b));

    let config = CycleConfig::reference(10.0);
    let (l1, l3) = qsl::stroke_bures_angles(&config)?;
    println!("Bures angles: stroke 1 = {l1:.8}, stroke 3 = {l3:.8}");

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "tau", "cop_sta", "cop_qsl", "cop_ad", "j_sta", "j_qsl"
    );
    for tau in [2.0, 5.0, 10.0, 20.0] {
        let config = CycleConfig::reference(tau);
        let bounds = qsl::performance_bounds(&config)?;
        let sta = thermo::evaluate_cycle(&config, Mode::Shortcut)?;
        let ad = thermo::evaluate_cycle(&config, Mode::Adiabatic)?;
        println!(
            "{tau:>6} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            sta.cop.unwrap_or(f64::NAN),
            bounds.cop_bound,
            ad.cop.unwrap_or(f64::NAN),
            sta.cooling_power.unwrap_or(f64::NAN),
            bounds.cooling_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
