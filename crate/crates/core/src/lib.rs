//! Thermal pairwise entanglement in spin-1/2 anisotropic Heisenberg (XXZ)
//! rings with impurity sites in a homogeneous magnetic field.
//!
//! The pipeline is: [`RingSpec`] → [`BondTable`] → Hamiltonian (dense or by
//! magnetization sector) → [`SpectralDecomposition`] → Gibbs
//! [`DensityMatrix`] → two-qubit reduced state → Wootters concurrence.
//! [`RingModel`] memoizes the diagonalization so every pair and temperature
//! of one Hamiltonian reuses it; [`run_sweep`] drives grids of models.
//!
//! ```
//! use xxz_ring::{preset, QubitPair, RingModel};
//!
//! let spec = preset("fig1b").unwrap().with_alpha(2.0);
//! let model = RingModel::new(spec).unwrap();
//! let c34 = model.concurrence(QubitPair::new(3, 4).unwrap(), 1.0).unwrap();
//! assert!(c34.value > 0.0 && c34.value <= 1.0);
//! ```

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod hamiltonian;
pub mod model;
pub mod numfmt;
pub mod ring_spec;
pub mod sweeps;
pub mod thermal;

pub use entanglement::{
    concurrence, pair_concurrence, partial_trace_pair, spin_flip_tilde, ConcurrenceResult, QubitPair,
    ENTANGLEMENT_THRESHOLD,
};
pub use error::{Error, Result};
pub use hamiltonian::{build_hamiltonian, split_sz_blocks, HamiltonianMatrix, SzBlocks, SzSector};
pub use model::{PairProjection, RingModel};
pub use ring_spec::{derive_bonds, preset, Bond, BondKind, BondTable, Preset, RingSpec, SpecLimits};
pub use sweeps::{
    critical_temperature, critical_temperature_of, figure_plan, run_sweep, SweepAxis, SweepParam, SweepPlan,
    SweepResult, SweepRow,
};
pub use thermal::{
    dense_eigenvalues, eigendecompose, eigendecompose_blocks, gibbs_state, ground_state, DensityMatrix, SpectralDecomposition,
    DEFAULT_DEGENERACY_TOL,
};
