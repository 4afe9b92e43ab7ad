//! Nearest-neighbour concurrence against the impurity coupling scale alpha
//! for the two-impurity and three-impurity rings.
//!
//! `cargo run --example impurity_alpha_sweep -- fig2b out.csv` writes the
//! full sweep as CSV.

use xxz_ring::{figure_plan, run_sweep, QubitPair};

fn main() -> xxz_ring::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map(String::as_str).unwrap_or("fig2a");
    let plan = figure_plan(name)?;
    println!("{name}: impurities {:?}, {} rows", plan.base.impurities, plan.row_count());

    let result = run_sweep(&plan)?;
    if let Some(path) = args.get(1) {
        result.write_csv(std::fs::File::create(path)?)?;
        println!("wrote {path}");
    }

    let pairs = QubitPair::nearest_neighbors(plan.base.n);
    let series: Vec<Vec<f64>> = pairs.iter().map(|&p| result.series(p)).collect();
    print!("{:>6}", "alpha");
    for p in &pairs {
        print!(" {:>7}", p.label());
    }
    println!();
    for (i, alpha) in plan.axis1.grid.iter().enumerate().step_by(15) {
        print!("{alpha:>6.2}");
        for s in &series {
            print!(" {:>7.4}", s[i]);
        }
        println!();
    }
    Ok(())
}
