// Loading a JSON run configuration and turning it into cycle parameters.
//
// ```bash
// cargo run --example run_config
// ```

use ottofridge::config::RunConfig;
use ottofridge::report;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/fig2.json");
    let config = RunConfig::load(path.as_ref())?;
    let cycle = config.cycle_config(config.tau()?)?;
    let evaluation = report::evaluate(&cycle, &config.numerics.numerics())?;
    println!(
        "cooling: {}, adiabatic COP = {:?}",
        evaluation.cooling, evaluation.adiabatic.cop
    );
    println!(
        "sweep grid: {} points from {} to {}",
        config.sweep.points, config.sweep.tau_min, config.sweep.tau_max
    );

    let broken = r#"{"cycle": {"omega1": 0.1, "omega2": 0.5, "beta1": 1.0, "beta2": 0.75},
                     "sweep": {"points": 0}}"#;
    println!("rejected: {}", RunConfig::from_json(broken).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
