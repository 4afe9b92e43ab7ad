//! Pure ring: every nearest-neighbour bond carries the same concurrence.
//! Prints C(T) for one bond and checks the others agree.

use xxz_ring::{QubitPair, RingModel, RingSpec};

fn main() -> xxz_ring::Result<()> {
    let model = RingModel::new(RingSpec::uniform(10, 1.0, 0.65, 0.4, 1.0))?;
    let pairs = QubitPair::nearest_neighbors(10);

    println!("{:>6}  {:>12}  {:>10}", "T", "C(1,2)", "spread");
    for k in 1..=12 {
        let t = 0.25 * k as f64;
        let values: Vec<f64> = pairs
            .iter()
            .map(|&p| model.concurrence(p, t).map(|c| c.value))
            .collect::<xxz_ring::Result<_>>()?;
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("{t:>6.2}  {:>12.9}  {:>10.2e}", values[0], hi - lo);
    }
    Ok(())
}
