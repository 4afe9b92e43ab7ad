//! Two-qubit reduced states and Wootters concurrence.
//!
//! Reduced states use the ordering `(lower site) ⊗ (higher site)` with local
//! index `2 * bit_low + bit_high`, so index 0 is `|dd>` and 3 is `|uu>`.

use std::fmt;

use nalgebra::{DMatrix, Matrix4, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::RingModel;
use crate::ring_spec::RingSpec;
use crate::thermal::DensityMatrix;

/// Eigenvalues of `R` below this are treated as an invalid input state
/// rather than roundoff.
pub const NEGATIVE_EIGENVALUE_TOL: f64 = -1e-10;

/// Concurrence at or below this counts as no entanglement.
pub const ENTANGLEMENT_THRESHOLD: f64 = 1e-6;

/// An unordered pair of distinct 1-based sites. Keeps the order it was
/// written in for display (`10-1`) but computes on `(low, high)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitPair {
    low: usize,
    high: usize,
    reversed: bool,
}

impl QubitPair {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::validation("pair", format!("sites are 1-based, got ({i}, {j})")));
        }
        if i == j {
            return Err(Error::validation("pair", format!("sites must differ, got ({i}, {j})")));
        }
        Ok(Self {
            low: i.min(j),
            high: i.max(j),
            reversed: i > j,
        })
    }

    /// The `n` ring bonds `(1,2), (2,3), ..., (n,1)`.
    pub fn nearest_neighbors(n: usize) -> Vec<Self> {
        (1..=n)
            .map(|i| Self::new(i, i % n + 1).expect("ring bonds have distinct sites"))
            .collect()
    }

    pub fn low(&self) -> usize {
        self.low
    }

    pub fn high(&self) -> usize {
        self.high
    }

    /// Sites in the order they were given.
    pub fn sites(&self) -> (usize, usize) {
        if self.reversed {
            (self.high, self.low)
        } else {
            (self.low, self.high)
        }
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        if self.high > n {
            return Err(Error::validation(
                "pair",
                format!("site {} outside a ring of {n} sites", self.high),
            ));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for QubitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.sites();
        write!(f, "{a}-{b}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcurrenceResult {
    pub pair: Option<QubitPair>,
    pub value: f64,
    /// Square roots of the eigenvalues of `rho * rho_tilde`, descending.
    pub lambdas: [f64; 4],
}

/// Index of the two-qubit basis state built from `rest` with the pair bits set.
#[inline]
pub(crate) fn embed(rest: usize, local: usize, low_bit: usize, high_bit: usize) -> usize {
    rest | ((local >> 1) << low_bit) | ((local & 1) << high_bit)
}

/// Traces out every site except the pair.
pub fn partial_trace_pair(rho: &DensityMatrix, pair: QubitPair, n: usize) -> Result<DensityMatrix> {
    let dim = rho.dim();
    if n == 0 || n >= usize::BITS as usize || dim != 1usize << n {
        return Err(Error::Contract(format!(
            "density matrix of dimension {dim} does not act on {n} qubits"
        )));
    }
    pair.check_within(n)?;
    let (lo, hi) = (pair.low() - 1, pair.high() - 1);
    let mask = (1usize << lo) | (1usize << hi);
    let m = rho.matrix();
    let mut out = DMatrix::zeros(4, 4);
    for rest in (0..dim).filter(|k| k & mask == 0) {
        for a in 0..4 {
            let r = embed(rest, a, lo, hi);
            for b in 0..4 {
                out[(a, b)] += m[(r, embed(rest, b, lo, hi))];
            }
        }
    }
    Ok(DensityMatrix::new_unchecked(
        out,
        format!("reduced({pair}) of {}", rho.label()),
    ))
}

/// `(Y ⊗ Y) rho* (Y ⊗ Y)` for a real two-qubit state.
///
/// `Y ⊗ Y` is real and anti-diagonal with signs `(-1, 1, 1, -1)`, so the
/// conjugation reverses both indices and multiplies by both signs.
pub fn spin_flip_tilde(rho4: &DensityMatrix) -> Matrix4<f64> {
    const SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let m = rho4.matrix();
    Matrix4::from_fn(|a, b| SIGN[a] * SIGN[b] * m[(3 - a, 3 - b)])
}

fn as_matrix4(rho4: &DensityMatrix) -> Result<Matrix4<f64>> {
    if rho4.dim() != 4 {
        return Err(Error::Contract(format!(
            "concurrence needs a 4x4 state, got {}x{}",
            rho4.dim(),
            rho4.dim()
        )));
    }
    let m = rho4.matrix();
    Ok(Matrix4::from_fn(|a, b| 0.5 * (m[(a, b)] + m[(b, a)])))
}

fn clamped_sqrt(x: f64, what: &str) -> Result<f64> {
    if x < NEGATIVE_EIGENVALUE_TOL {
        return Err(Error::numerical(format!("{what} has eigenvalue {x:e}"), Some(x)));
    }
    Ok(x.max(0.0).sqrt())
}

/// Wootters concurrence `max(0, 2 lambda_max - sum lambda)`.
///
/// The spectrum of `rho * rho_tilde` is read off the symmetric matrix
/// `sqrt(rho) rho_tilde sqrt(rho)`, which shares it.
pub fn concurrence(rho4: &DensityMatrix) -> Result<ConcurrenceResult> {
    let rho = as_matrix4(rho4)?;
    let tilde = spin_flip_tilde(rho4);

    let eig = SymmetricEigen::new(rho);
    let mut root = eig.eigenvalues;
    for x in root.iter_mut() {
        *x = clamped_sqrt(*x, "reduced state")?;
    }
    let sqrt_rho = eig.eigenvectors * Matrix4::from_diagonal(&root) * eig.eigenvectors.transpose();
    let m = sqrt_rho * tilde * sqrt_rho;
    let m = (m + m.transpose()) * 0.5;

    let mut lambdas = [0.0; 4];
    for (l, &mu) in lambdas.iter_mut().zip(m.symmetric_eigenvalues().iter()) {
        *l = clamped_sqrt(mu, "R = rho * rho_tilde")?;
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let sum: f64 = lambdas.iter().sum();
    Ok(ConcurrenceResult {
        pair: None,
        value: (2.0 * lambdas[0] - sum).max(0.0),
        lambdas,
    })
}

/// Thermal concurrence of one pair, from spec to number.
///
/// Builds its own model; for many pairs or temperatures use [`RingModel`].
pub fn pair_concurrence(spec: &RingSpec, pair: QubitPair) -> Result<ConcurrenceResult> {
    let model = RingModel::new(spec.clone())?;
    pair.check_within(spec.n)?;
    let rho = model.gibbs_state(spec.temperature)?;
    let reduced = partial_trace_pair(&rho, pair, spec.n)?;
    let mut result = concurrence(&reduced)?;
    result.pair = Some(pair);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn state(m: DMatrix<f64>) -> DensityMatrix {
        DensityMatrix::new(m, "test").unwrap()
    }

    fn pure(amps: &[f64]) -> DensityMatrix {
        let v = DVector::from_column_slice(amps);
        let v = &v / v.norm();
        state(&v * v.transpose())
    }

    #[test]
    fn pair_normalization_and_labels() {
        let p = QubitPair::new(10, 1).unwrap();
        assert_eq!((p.low(), p.high()), (1, 10));
        assert_eq!(p.label(), "10-1");
        assert_eq!(QubitPair::new(3, 4).unwrap().to_string(), "3-4");
        assert!(QubitPair::new(2, 2).is_err());
        assert!(QubitPair::new(0, 2).is_err());
        let nn = QubitPair::nearest_neighbors(4);
        let labels: Vec<String> = nn.iter().map(|p| p.label()).collect();
        assert_eq!(labels, ["1-2", "2-3", "3-4", "4-1"]);
    }

    #[test]
    fn maximally_mixed_reduces_to_identity() {
        let n = 4;
        let rho = state(DMatrix::identity(16, 16) / 16.0);
        for (i, j) in [(1, 2), (1, 4), (2, 3)] {
            let r = partial_trace_pair(&rho, QubitPair::new(i, j).unwrap(), n).unwrap();
            assert!((r.matrix() - DMatrix::<f64>::identity(4, 4) * 0.25).amax() < 1e-15);
        }
    }

    #[test]
    fn all_up_product_state() {
        let mut amps = vec![0.0; 8];
        amps[7] = 1.0;
        let r = partial_trace_pair(&pure(&amps), QubitPair::new(1, 3).unwrap(), 3).unwrap();
        let mut want = DMatrix::zeros(4, 4);
        want[(3, 3)] = 1.0;
        assert_eq!(r.matrix(), &want);
    }

    #[test]
    fn ghz_marginals() {
        let mut amps = vec![0.0; 8];
        amps[0] = 1.0;
        amps[7] = 1.0;
        let ghz = pure(&amps);
        for (i, j) in [(1, 2), (2, 3), (1, 3)] {
            let r = partial_trace_pair(&ghz, QubitPair::new(i, j).unwrap(), 3).unwrap();
            let want = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 0.0, 0.0, 0.5]));
            assert!((r.matrix() - want).amax() < 1e-15);
            assert_eq!(concurrence(&r).unwrap().value, 0.0);
        }
    }

    #[test]
    fn partial_trace_checks_dimensions() {
        let rho = state(DMatrix::identity(8, 8) / 8.0);
        assert!(matches!(
            partial_trace_pair(&rho, QubitPair::new(1, 2).unwrap(), 4),
            Err(Error::Contract(_))
        ));
        assert!(partial_trace_pair(&rho, QubitPair::new(1, 4).unwrap(), 3).is_err());
    }

    #[test]
    fn spin_flip_of_basis_states() {
        let id = state(DMatrix::identity(4, 4) * 0.25);
        assert_eq!(spin_flip_tilde(&id), Matrix4::identity() * 0.25);
        let up_up = pure(&[0.0, 0.0, 0.0, 1.0]);
        let mut want = Matrix4::zeros();
        want[(0, 0)] = 1.0;
        assert_eq!(spin_flip_tilde(&up_up), want);
    }

    #[test]
    fn singlet_is_maximally_entangled() {
        // (|ud> - |du>) / sqrt 2 in local indices 2 and 1.
        let c = concurrence(&pure(&[0.0, -1.0, 1.0, 0.0])).unwrap();
        assert!((c.value - 1.0).abs() < 1e-12, "{c:?}");
    }

    #[test]
    fn product_states_are_separable() {
        let a = [0.3, 0.7];
        let b = [0.9, 0.1];
        let m = DMatrix::from_fn(4, 4, |r, c| {
            if r == c {
                a[r >> 1] * b[r & 1]
            } else {
                0.0
            }
        });
        assert_eq!(concurrence(&state(m)).unwrap().value, 0.0);
        let c = concurrence(&pure(&[0.6, 0.8 * 0.6, 0.0, 0.0])).unwrap();
        assert!(c.value < 1e-12);
    }

    #[test]
    fn lambdas_descend_and_reproduce_value() {
        let c = concurrence(&pure(&[0.1, 0.5, -0.7, 0.2])).unwrap();
        assert!(c.lambdas.windows(2).all(|w| w[0] >= w[1]));
        let sum: f64 = c.lambdas.iter().sum();
        assert_eq!(c.value, (2.0 * c.lambdas[0] - sum).max(0.0));
    }

    #[test]
    fn concurrence_rejects_wrong_shape_and_invalid_states() {
        let rho = state(DMatrix::identity(8, 8) / 8.0);
        assert!(matches!(concurrence(&rho), Err(Error::Contract(_))));
        let bad = DensityMatrix::new_unchecked(
            DMatrix::from_diagonal(&DVector::from_vec(vec![1.5, -0.5, 0.0, 0.0])),
            "bad",
        );
        assert!(matches!(concurrence(&bad), Err(Error::Numerical { .. })));
    }
}
