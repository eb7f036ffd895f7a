//! Sweeps cradle size against maximum cluster size and prints the offline
//! error table.

use dcpso::harness::{run_grid, ExperimentConfig, Mode};

fn main() -> dcpso::Result<()> {
    let config = ExperimentConfig { environments: 10, runs: 3, ..Default::default() };
    let sizes = [10, 30, 70];
    let subsizes = [2, 3, 5];

    let cells = run_grid(&config, &[Mode::Dcpso], &sizes, &subsizes)?;
    print!("{:>6}", "M\\N");
    for n in subsizes {
        print!("{n:>9}");
    }
    println!();
    for m in sizes {
        print!("{m:>6}");
        for n in subsizes {
            let cell = cells.iter().find(|c| c.cradle_size == m && c.max_subsize == n).expect("cell");
            let error = cell.summary.as_ref().map_or(f64::NAN, |s| s.offline_error_mean);
            print!("{error:>9.3}");
        }
        println!();
    }
    Ok(())
}
