// Efficiency against cooling power: inverse COP and inverse cooling power
// of each mode along a sweep.
//
// ```bash
// cargo run --example pareto_front
// ```

use ottofridge::sweep;
use ottofridge::thermo::{CycleConfig, Numerics};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = CycleConfig::reference(1.0);
    let taus = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
    let rows = sweep::run_sweep(&base, &taus, &Numerics::default(), 1)?;
    let front = rows.iter().map(|r| r.pareto(&base)).collect::<Result<Vec<_>, _>>()?;
    for p in &front {
        let dominated = matches!(
            (p.inv_cop_na, p.inv_j_na, p.inv_cop_sta, p.inv_j_sta),
            (Some(c_na), Some(j_na), Some(c_sta), Some(j_sta)) if c_sta <= c_na && j_sta <= j_na
        );
        println!("tau = {:>4}: shortcut dominates nonadiabatic: {dominated}", p.tau);
    }
    sweep::write_pareto_csv(&mut std::io::stdout().lock(), &front)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
