//! Concurrence against the impurity-impurity scale beta with the mixed
//! bonds held at alpha = 0.8, for adjacent impurity pairs.

use xxz_ring::{figure_plan, run_sweep, QubitPair};

fn main() -> xxz_ring::Result<()> {
    for name in ["fig6a", "fig6b"] {
        let plan = figure_plan(name)?;
        let result = run_sweep(&plan)?;
        println!("{name}: impurities {:?}, alpha {}", plan.base.impurities, plan.base.alpha);
        let pairs = QubitPair::nearest_neighbors(plan.base.n);
        for p in pairs {
            let s = result.series(p);
            let (imax, cmax) = s.iter().enumerate().fold((0, f64::MIN), |best, (i, &c)| if c > best.1 { (i, c) } else { best });
            println!(
                "  {:>5}  beta=0: {:.4}  beta=3: {:.4}  max {:.4} at beta={:.2}",
                p.label(),
                s[0],
                s[s.len() - 1],
                cmax,
                plan.axis1.grid[imax]
            );
        }
    }
    Ok(())
}
