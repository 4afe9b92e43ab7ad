//! Memoized pipeline: one diagonalization per Hamiltonian, shared across
//! pairs and temperatures.

use nalgebra::DMatrix;

use crate::entanglement::{concurrence, embed, ConcurrenceResult, QubitPair};
use crate::error::Result;
use crate::hamiltonian::SzBlocks;
use crate::ring_spec::{derive_bonds, BondTable, RingSpec};
use crate::thermal::{eigendecompose_blocks, gibbs_state, DensityMatrix, SpectralDecomposition};

/// A validated ring with its spectrum.
#[derive(Debug, Clone)]
pub struct RingModel {
    spec: RingSpec,
    bonds: BondTable,
    spectrum: SpectralDecomposition,
}

impl RingModel {
    pub fn new(spec: RingSpec) -> Result<Self> {
        spec.validate()?;
        Self::new_unvalidated(spec)
    }

    /// Skips [`RingSpec::validate`]; callers that applied custom
    /// [`crate::ring_spec::SpecLimits`] use this.
    pub fn new_unvalidated(spec: RingSpec) -> Result<Self> {
        let bonds = derive_bonds(&spec)?;
        let blocks = SzBlocks::build(&spec, &bonds)?;
        let spectrum = eigendecompose_blocks(&blocks)?;
        Ok(Self {
            spec,
            bonds,
            spectrum,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn bonds(&self) -> &BondTable {
        &self.bonds
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    /// Full `2^n` Gibbs state.
    pub fn gibbs_state(&self, temperature: f64) -> Result<DensityMatrix> {
        gibbs_state(&self.spectrum, temperature)
    }

    /// Precomputes the pair's marginal of every eigenstate.
    pub fn project(&self, pair: QubitPair) -> Result<PairProjection<'_>> {
        pair.check_within(self.spec.n)?;
        Ok(PairProjection::new(self, pair))
    }

    pub fn concurrence(&self, pair: QubitPair, temperature: f64) -> Result<ConcurrenceResult> {
        self.project(pair)?.concurrence(temperature)
    }

    /// Concurrence of every ring bond at the spec temperature.
    pub fn nearest_neighbor_concurrences(&self) -> Result<Vec<ConcurrenceResult>> {
        QubitPair::nearest_neighbors(self.spec.n)
            .into_iter()
            .map(|p| self.concurrence(p, self.spec.temperature))
            .collect()
    }
}

/// Reduced 4x4 states of each eigenvector for one pair. Any thermal
/// reduced state is then a weighted sum of these.
#[derive(Debug, Clone)]
pub struct PairProjection<'a> {
    model: &'a RingModel,
    pair: QubitPair,
    /// Row-major 4x4 per eigenvector, indexed `[block][column]`.
    marginals: Vec<Vec<[f64; 16]>>,
}

impl<'a> PairProjection<'a> {
    fn new(model: &'a RingModel, pair: QubitPair) -> Self {
        let spectrum = &model.spectrum;
        let (lo, hi) = (pair.low() - 1, pair.high() - 1);
        let mask = (1usize << lo) | (1usize << hi);
        let mut local = vec![usize::MAX; spectrum.dim()];
        let marginals = spectrum
            .blocks()
            .iter()
            .map(|block| {
                for (p, &s) in block.basis.iter().enumerate() {
                    local[s] = p;
                }
                let vecs = &block.eigenvectors;
                let out = (0..vecs.ncols())
                    .map(|k| {
                        let v = vecs.column(k);
                        let mut acc = [0.0; 16];
                        for (p, &s) in block.basis.iter().enumerate() {
                            let vp = v[p];
                            if vp == 0.0 {
                                continue;
                            }
                            let a = (((s >> lo) & 1) << 1) | ((s >> hi) & 1);
                            let rest = s & !mask;
                            for b in 0..4 {
                                let q = local[embed(rest, b, lo, hi)];
                                if q != usize::MAX {
                                    acc[4 * a + b] += vp * v[q];
                                }
                            }
                        }
                        acc
                    })
                    .collect();
                for &s in &block.basis {
                    local[s] = usize::MAX;
                }
                out
            })
            .collect();
        Self {
            model,
            pair,
            marginals,
        }
    }

    pub fn pair(&self) -> QubitPair {
        self.pair
    }

    pub fn reduced_state(&self, temperature: f64) -> Result<DensityMatrix> {
        let weights = self.model.spectrum.block_weights(temperature)?;
        Ok(self.combine(&weights, format!("reduced({}) at T={temperature}", self.pair)))
    }

    pub fn ground_reduced_state(&self, degeneracy_tol: f64) -> DensityMatrix {
        let weights = self.model.spectrum.ground_block_weights(degeneracy_tol);
        self.combine(&weights, format!("reduced({}) of ground", self.pair))
    }

    fn combine(&self, weights: &[Vec<f64>], label: String) -> DensityMatrix {
        let mut acc = [0.0; 16];
        for (block, w) in self.marginals.iter().zip(weights) {
            for (m, &wk) in block.iter().zip(w) {
                if wk == 0.0 {
                    continue;
                }
                for (a, x) in acc.iter_mut().zip(m) {
                    *a += wk * x;
                }
            }
        }
        let m = DMatrix::from_row_slice(4, 4, &acc);
        let sym = (&m + m.transpose()) * 0.5;
        DensityMatrix::new_unchecked(sym, label)
    }

    pub fn concurrence(&self, temperature: f64) -> Result<ConcurrenceResult> {
        let mut c = concurrence(&self.reduced_state(temperature)?)?;
        c.pair = Some(self.pair);
        Ok(c)
    }
}
