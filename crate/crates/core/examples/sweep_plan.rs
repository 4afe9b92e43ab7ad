//! Build a sweep plan in code, save it as JSON, reload it and run it.
//! The saved file can be passed to `xxz-ring sweep --plan`.

use xxz_ring::{QubitPair, RingSpec, SweepAxis, SweepParam, SweepPlan};

fn main() -> xxz_ring::Result<()> {
    let base = RingSpec::uniform(8, 1.0, 0.65, 0.4, 1.0).with_impurities([3, 4]).with_alpha(0.8);
    let plan = SweepPlan::new(base, SweepAxis::range(SweepParam::B, 0.0, 2.0, 0.25)?)
        .with_axis2(SweepAxis::new(SweepParam::Temperature, vec![0.5, 1.0]))
        .with_pairs(vec![QubitPair::new(3, 4)?, QubitPair::new(4, 5)?]);

    let dir = std::env::temp_dir().join("xxz-ring-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("plan.json");
    std::fs::write(&path, plan.to_json()?)?;
    println!("plan saved to {}", path.display());

    let result = xxz_ring::run_sweep(&SweepPlan::from_file(&path)?)?;
    print!("{}", result.to_csv());
    println!("# {}", serde_json::to_string(&result.metadata)?);
    Ok(())
}
