//! Concurrence of every bond around the three-impurity ring for weak and
//! strong impurity coupling.

use xxz_ring::{preset, RingModel, RingSpec};

fn profile(spec: RingSpec) -> xxz_ring::Result<()> {
    let alpha = spec.alpha;
    let model = RingModel::new(spec)?;
    println!("alpha = {alpha}");
    for (bond, c) in model.bonds().iter().zip(model.nearest_neighbor_concurrences()?) {
        let bar = "#".repeat((c.value * 60.0).round() as usize);
        println!("  {:>5} {:?}\t{:.4} {bar}", c.pair.unwrap().label(), bond.kind, c.value);
    }
    Ok(())
}

fn main() -> xxz_ring::Result<()> {
    let base = preset("fig1b")?;
    profile(base.clone().with_alpha(0.1))?;
    profile(base.with_alpha(2.0))
}
