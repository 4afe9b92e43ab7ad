//! Concurrence of textbook two-qubit states.

use nalgebra::{DMatrix, DVector};
use xxz_ring::{concurrence, DensityMatrix};

fn pure(amplitudes: [f64; 4]) -> DMatrix<f64> {
    let v = DVector::from_row_slice(&amplitudes).normalize();
    &v * v.transpose()
}

fn main() -> xxz_ring::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let states = [
        ("product |00>", pure([1.0, 0.0, 0.0, 0.0])),
        ("singlet", pure([0.0, s, -s, 0.0])),
        ("Bell phi+", pure([s, 0.0, 0.0, s])),
        ("partial cos(pi/8)|01> + sin(pi/8)|10>", pure([0.0, (0.125 * std::f64::consts::PI).cos(), (0.125 * std::f64::consts::PI).sin(), 0.0])),
        ("maximally mixed", DMatrix::identity(4, 4) / 4.0),
    ];
    for (name, m) in states {
        let c = concurrence(&DensityMatrix::new(m, name)?)?;
        println!("{name:<42} C = {:.6}  lambdas {:.4?}", c.value, c.lambdas);
    }

    println!("\nWerner states p|singlet><singlet| + (1-p) I/4");
    let singlet = pure([0.0, s, -s, 0.0]);
    for k in 0..=5 {
        let p = 0.2 * k as f64;
        let m = &singlet * p + DMatrix::identity(4, 4) * ((1.0 - p) / 4.0);
        let c = concurrence(&DensityMatrix::new(m, "werner")?)?;
        println!("  p = {p:.1}  C = {:.6}", c.value);
    }
    Ok(())
}
