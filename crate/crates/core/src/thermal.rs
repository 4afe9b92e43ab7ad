//! Spectral decomposition and thermal states.
//!
//! One decomposition serves every temperature: the Gibbs state is rebuilt
//! from the stored eigenpairs with weights `exp(-(E_k - E_0) / T) / Z`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::hamiltonian::{sector_states, HamiltonianMatrix, SzBlocks};

/// Default energy window for grouping ground-state degeneracies.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Eigenpairs of one diagonal block, in the block's local basis.
#[derive(Debug, Clone)]
pub struct EigenBlock {
    /// Global basis indices spanned by the block.
    pub basis: Vec<usize>,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: DMatrix<f64>,
}

/// Eigenvalues and orthonormal eigenvectors of `H`, possibly grouped by
/// magnetization sector.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    n: usize,
    blocks: Vec<EigenBlock>,
    /// `(block, column)` of each global eigenpair, ascending in energy.
    order: Vec<(usize, usize)>,
    eigenvalues: Vec<f64>,
}

fn max_iterations(dim: usize) -> usize {
    100 * dim.max(10)
}

fn decompose_block(basis: Vec<usize>, matrix: DMatrix<f64>) -> Result<EigenBlock> {
    let dim = matrix.nrows();
    let scale = inf_norm(&matrix).max(1.0);
    let eig = SymmetricEigen::try_new(matrix.clone(), f64::EPSILON, max_iterations(dim)).ok_or_else(|| {
        Error::numerical(
            format!("symmetric eigensolver did not converge on a {dim}x{dim} block"),
            None,
        )
    })?;
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues: Vec<f64> = idx.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = eig.eigenvectors.select_columns(&idx);

    let mut residual = &matrix * &eigenvectors;
    for (mut col, (v, &e)) in residual.column_iter_mut().zip(eigenvectors.column_iter().zip(&eigenvalues)) {
        col.axpy(-e, &v, 1.0);
    }
    let worst = residual.amax();
    if worst > 1e-9 * scale {
        return Err(Error::numerical(
            format!("eigenpair residual exceeds tolerance on a {dim}x{dim} block"),
            Some(worst),
        ));
    }
    Ok(EigenBlock {
        basis,
        eigenvalues,
        eigenvectors,
    })
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Dense decomposition of the full matrix, ignoring any block structure.
pub fn eigendecompose(h: &HamiltonianMatrix) -> Result<SpectralDecomposition> {
    let block = decompose_block((0..h.dim()).collect(), h.matrix().clone())?;
    Ok(SpectralDecomposition::from_blocks(h.n(), vec![block]))
}

/// Ascending spectrum of the full matrix without eigenvectors.
pub fn dense_eigenvalues(h: &HamiltonianMatrix) -> Result<Vec<f64>> {
    let mut values: Vec<f64> = h.matrix().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let drift = (values.iter().sum::<f64>() - h.matrix().trace()).abs();
    if values.iter().any(|v| !v.is_finite()) || drift > 1e-9 * inf_norm(h.matrix()).max(1.0) * h.dim() as f64 {
        return Err(Error::numerical(
            format!("eigenvalues of the {0}x{0} matrix do not sum to its trace", h.dim()),
            Some(drift),
        ));
    }
    Ok(values)
}

/// Decomposes each magnetization sector independently.
pub fn eigendecompose_blocks(blocks: &SzBlocks) -> Result<SpectralDecomposition> {
    let eigen = blocks
        .sectors()
        .iter()
        .map(|s| decompose_block(s.basis.clone(), s.matrix.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralDecomposition::from_blocks(blocks.n(), eigen))
}

impl SpectralDecomposition {
    fn from_blocks(n: usize, blocks: Vec<EigenBlock>) -> Self {
        let mut order: Vec<(usize, usize)> = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, blk)| (0..blk.eigenvalues.len()).map(move |k| (b, k)))
            .collect();
        order.sort_by(|&(b1, k1), &(b2, k2)| {
            blocks[b1].eigenvalues[k1]
                .total_cmp(&blocks[b2].eigenvalues[k2])
                .then((b1, k1).cmp(&(b2, k2)))
        });
        let eigenvalues = order.iter().map(|&(b, k)| blocks[b].eigenvalues[k]).collect();
        Self {
            n,
            blocks,
            order,
            eigenvalues,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn blocks(&self) -> &[EigenBlock] {
        &self.blocks
    }

    /// Eigenvector `k` (ascending energy order) in the full basis.
    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        let (b, col) = self.order[k];
        let block = &self.blocks[b];
        let mut v = DVector::zeros(self.dim());
        for (p, &g) in block.basis.iter().enumerate() {
            v[g] = block.eigenvectors[(p, col)];
        }
        v
    }

    /// Columns ordered by ascending eigenvalue.
    pub fn dense_eigenvectors(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.dim(), self.dim());
        for (k, &(b, col)) in self.order.iter().enumerate() {
            let block = &self.blocks[b];
            for (p, &g) in block.basis.iter().enumerate() {
                out[(g, k)] = block.eigenvectors[(p, col)];
            }
        }
        out
    }

    /// Normalized Boltzmann weights per block, shifted by the ground energy.
    pub(crate) fn block_weights(&self, temperature: f64) -> Result<Vec<Vec<f64>>> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(Error::Domain(format!(
                "temperature must be finite and > 0, got {temperature}; use ground_state for T = 0"
            )));
        }
        let e0 = self.ground_energy();
        let mut weights: Vec<Vec<f64>> = self
            .blocks
            .iter()
            .map(|b| b.eigenvalues.iter().map(|&e| (-(e - e0) / temperature).exp()).collect())
            .collect();
        // Summed in ascending-energy order so every path sees the same Z.
        let z: f64 = self.order.iter().map(|&(b, k)| weights[b][k]).sum();
        for w in weights.iter_mut().flatten() {
            *w /= z;
        }
        Ok(weights)
    }

    /// Boltzmann weights in ascending-energy order, summing to one.
    pub fn boltzmann_weights(&self, temperature: f64) -> Result<Vec<f64>> {
        let per_block = self.block_weights(temperature)?;
        Ok(self.order.iter().map(|&(b, k)| per_block[b][k]).collect())
    }

    /// Uniform weights over eigenstates within `tol` of the ground energy.
    pub(crate) fn ground_block_weights(&self, tol: f64) -> Vec<Vec<f64>> {
        let cutoff = self.ground_energy() + tol;
        let count = self.eigenvalues.iter().filter(|&&e| e <= cutoff).count() as f64;
        self.blocks
            .iter()
            .map(|b| {
                b.eigenvalues
                    .iter()
                    .map(|&e| if e <= cutoff { 1.0 / count } else { 0.0 })
                    .collect()
            })
            .collect()
    }

    /// `sum_k w_k v_k v_k^T` assembled block by block.
    pub(crate) fn mixture(&self, weights: &[Vec<f64>]) -> DMatrix<f64> {
        let dim = self.dim();
        let mut rho = DMatrix::zeros(dim, dim);
        for (block, w) in self.blocks.iter().zip(weights) {
            let mut scaled = block.eigenvectors.clone();
            for (mut col, &wk) in scaled.column_iter_mut().zip(w) {
                col *= wk;
            }
            let local = &scaled * block.eigenvectors.transpose();
            for (p, &r) in block.basis.iter().enumerate() {
                for (q, &c) in block.basis.iter().enumerate() {
                    rho[(r, c)] = local[(p, q)];
                }
            }
        }
        let rho_t = rho.transpose();
        (rho + rho_t) * 0.5
    }
}

/// Real symmetric, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<f64>,
    label: String,
}

impl DensityMatrix {
    /// Wraps `matrix` after checking every density-matrix invariant.
    pub fn new(matrix: DMatrix<f64>, label: impl Into<String>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Contract(format!(
                "density matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let rho = Self {
            matrix,
            label: label.into(),
        };
        rho.check_invariants()?;
        Ok(rho)
    }

    pub(crate) fn new_unchecked(matrix: DMatrix<f64>, label: impl Into<String>) -> Self {
        Self {
            matrix,
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.component_mul(&self.matrix.transpose()).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// Largest entry coupling basis states of different magnetization.
    pub fn sector_leakage(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for c in 0..dim {
            for r in 0..dim {
                if r.count_ones() != c.count_ones() {
                    worst = worst.max(self.matrix[(r, c)].abs());
                }
            }
        }
        worst
    }

    /// Smallest eigenvalue. Exactly sector-diagonal matrices are
    /// diagonalized one sector at a time.
    pub fn min_eigenvalue(&self) -> f64 {
        let dim = self.dim();
        let sym = (&self.matrix + self.matrix.transpose()) * 0.5;
        if dim.is_power_of_two() && dim > 4 && self.sector_leakage() == 0.0 {
            let n = dim.trailing_zeros() as usize;
            (0..=n)
                .map(|up| {
                    let basis = sector_states(n, up);
                    let block = DMatrix::from_fn(basis.len(), basis.len(), |p, q| sym[(basis[p], basis[q])]);
                    block.symmetric_eigenvalues().min()
                })
                .fold(f64::INFINITY, f64::min)
        } else {
            sym.symmetric_eigenvalues().min()
        }
    }

    pub fn check_invariants(&self) -> Result<()> {
        let trace = self.trace();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::numerical(format!("{}: trace {trace} differs from 1", self.label), None));
        }
        let herm = self.hermiticity_error();
        if herm > 1e-12 {
            return Err(Error::numerical(format!("{}: not Hermitian", self.label), Some(herm)));
        }
        let min = self.min_eigenvalue();
        if min < -1e-10 {
            return Err(Error::numerical(
                format!("{}: negative eigenvalue {min:e}", self.label),
                Some(min),
            ));
        }
        Ok(())
    }

    /// `||rho H - H rho||_inf` entrywise.
    pub fn commutator_norm(&self, h: &HamiltonianMatrix) -> f64 {
        (&self.matrix * h.matrix() - h.matrix() * &self.matrix).amax()
    }

    /// `tr(rho H)`.
    pub fn energy(&self, h: &HamiltonianMatrix) -> f64 {
        self.matrix.component_mul(&h.matrix().transpose()).sum()
    }
}

/// Gibbs state `exp(-H / T) / Z` with `k_B = 1`.
pub fn gibbs_state(decomp: &SpectralDecomposition, temperature: f64) -> Result<DensityMatrix> {
    let weights = decomp.block_weights(temperature)?;
    Ok(DensityMatrix::new_unchecked(
        decomp.mixture(&weights),
        format!("gibbs(T={temperature})"),
    ))
}

/// Zero-temperature limit: the uniform mixture over the ground manifold.
pub fn ground_state(decomp: &SpectralDecomposition, degeneracy_tol: f64) -> Result<DensityMatrix> {
    if !(degeneracy_tol > 0.0) {
        return Err(Error::Domain(format!(
            "degeneracy tolerance must be > 0, got {degeneracy_tol}"
        )));
    }
    let weights = decomp.ground_block_weights(degeneracy_tol);
    Ok(DensityMatrix::new_unchecked(
        decomp.mixture(&weights),
        "ground".to_string(),
    ))
}
