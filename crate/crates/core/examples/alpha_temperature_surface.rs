//! Concurrence of bonds (2,3) and (3,4) over an alpha x temperature grid,
//! drawn as a character map. Pass a path to write the full built-in grid
//! as CSV instead of the coarse preview.

use xxz_ring::{figure_plan, run_sweep, QubitPair, SweepAxis, SweepParam};

const SHADES: &[u8] = b" .:-=+*#%@";

fn main() -> xxz_ring::Result<()> {
    let mut plan = figure_plan("fig4")?;
    if let Some(path) = std::env::args().nth(1) {
        run_sweep(&plan)?.write_csv(std::fs::File::create(&path)?)?;
        println!("wrote {path}");
        return Ok(());
    }
    plan.axis1 = SweepAxis::linspace(SweepParam::Alpha, 0.0, 3.0, 31);
    plan.axis2 = Some(SweepAxis::linspace(SweepParam::Temperature, 0.1, 3.0, 16));
    let result = run_sweep(&plan)?;

    let temps = plan.axis2.as_ref().unwrap().grid.clone();
    for pair in [QubitPair::new(2, 3)?, QubitPair::new(3, 4)?] {
        let series = result.series(pair);
        println!("C{} (rows: T from {} down to {}, columns: alpha 0..3)", pair.label(), temps[temps.len() - 1], temps[0]);
        for (ti, t) in temps.iter().enumerate().rev() {
            let line: String = (0..plan.axis1.grid.len())
                .map(|ai| {
                    let c = series[ai * temps.len() + ti];
                    SHADES[((c * 2.0).min(1.0) * (SHADES.len() - 1) as f64).round() as usize] as char
                })
                .collect();
            println!("{t:>5.2} |{line}|");
        }
    }
    Ok(())
}
