// A driving-time sweep written as CSV, the same table the `sweep`
// subcommand produces.
//
// ```bash
// cargo run --example sweep_csv > sweep.csv
// ```

use ottofridge::config::SweepSection;
use ottofridge::sweep;
use ottofridge::thermo::{CycleConfig, Numerics};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = SweepSection {
        points: 24,
        ..SweepSection::default()
    }
    .grid();
    let rows = sweep::run_sweep(&CycleConfig::reference(1.0), &grid, &Numerics::default(), 2)?;
    sweep::write_sweep_csv(&mut std::io::stdout().lock(), &rows)?;

    let worst = rows.iter().map(|r| r.dsrate_na / r.dsrate_ad).fold(0.0, f64::max);
    eprintln!("largest NA/AD entropy-production-rate ratio: {worst:.3}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
