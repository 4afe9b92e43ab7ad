//! Temperature at which the (3,4) bond of the three-impurity ring becomes
//! separable, as a function of alpha.

use xxz_ring::{critical_temperature_of, preset, QubitPair, RingModel};

fn main() -> xxz_ring::Result<()> {
    let pair = QubitPair::new(3, 4)?;
    println!("{:>6}  {:>8}", "alpha", "Tc");
    for k in 2..=12 {
        let alpha = 0.25 * k as f64;
        let model = RingModel::new(preset("fig1b")?.with_alpha(alpha))?;
        match critical_temperature_of(&model.project(pair)?, 0.05, 20.0, 1e-4) {
            Ok(tc) => println!("{alpha:>6.2}  {tc:>8.4}"),
            Err(e) => println!("{alpha:>6.2}  {e}"),
        }
    }
    Ok(())
}
