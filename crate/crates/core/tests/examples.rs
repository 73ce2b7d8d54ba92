//! Every example must run to completion.

mod adiabatic_cop {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/adiabatic_cop.rs"));
}

#[test]
fn adiabatic_cop_example_runs() {
    adiabatic_cop::run_example().expect("adiabatic_cop example should run");
}

mod lcd_ramp {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lcd_ramp.rs"));
}

#[test]
fn lcd_ramp_example_runs() {
    lcd_ramp::run_example().expect("lcd_ramp example should run");
}

mod adiabaticity {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/adiabaticity.rs"));
}

#[test]
fn adiabaticity_example_runs() {
    adiabaticity::run_example().expect("adiabaticity example should run");
}

mod sta_cost {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sta_cost.rs"));
}

#[test]
fn sta_cost_example_runs() {
    sta_cost::run_example().expect("sta_cost example should run");
}

mod speed_limit {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/speed_limit.rs"));
}

#[test]
fn speed_limit_example_runs() {
    speed_limit::run_example().expect("speed_limit example should run");
}

mod operating_modes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/operating_modes.rs"));
}

#[test]
fn operating_modes_example_runs() {
    operating_modes::run_example().expect("operating_modes example should run");
}

mod sweep_csv {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sweep_csv.rs"));
}

#[test]
fn sweep_csv_example_runs() {
    sweep_csv::run_example().expect("sweep_csv example should run");
}

mod pareto_front {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/pareto_front.rs"));
}

#[test]
fn pareto_front_example_runs() {
    pareto_front::run_example().expect("pareto_front example should run");
}

mod fock_oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fock_oracle.rs"));
}

#[test]
fn fock_oracle_example_runs() {
    fock_oracle::run_example().expect("fock_oracle example should run");
}

mod relative_entropy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/relative_entropy.rs"));
}

#[test]
fn relative_entropy_example_runs() {
    relative_entropy::run_example().expect("relative_entropy example should run");
}

mod run_config {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/run_config.rs"));
}

#[test]
fn run_config_example_runs() {
    run_config::run_example().expect("run_config example should run");
}
