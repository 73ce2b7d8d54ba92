// Quasi-static refrigerator: heats, works and COP in closed form.
//
// ```bash
// cargo run --example adiabatic_cop
// ```

use ottofridge::thermo::{self, CycleConfig, Mode};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let config = CycleConfig::new(0.1, 0.5, 1.0, 0.75, 10.0)?;
    let ad = thermo::evaluate_cycle(&config, Mode::Adiabatic)?;
    let carnot = thermo::carnot_cop(config.beta1, config.beta2)?;

    println!(
        "cooling condition w2/w1 > b1/b2: {}",
        thermo::cooling_condition(&config)
    );
    println!("Q2 = {:.6}  Q4 = {:.6}  W = {:.6}", ad.q2, ad.q4, ad.work_total);
    println!("COP (adiabatic) = {:.12}", ad.cop.unwrap_or(f64::NAN));
    println!("COP (Carnot)    = {carnot:.12}");
    assert!((ad.cop.unwrap() - 0.25).abs() < 1e-12);

    // At w2/w1 = b1/b2 the cycle stops extracting heat and becomes reversible.
    let edge = CycleConfig::new(0.1, 0.5, 1.0, 0.2, 10.0)?;
    let (_, q4) = thermo::heats(&edge, 1.0, 1.0)?;
    println!(
        "at the Carnot point: Q4 = {q4:e}, entropy production = {:e}",
        thermo::entropy_production(&edge, 1.0, 1.0)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
