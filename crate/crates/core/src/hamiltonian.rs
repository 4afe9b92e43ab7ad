//! Dense XXZ Hamiltonian in the computational basis.
//!
//! Basis index `k` encodes a spin pattern little-endian: bit `i` of `k` is the
//! z-state of site `i + 1`, with `1` meaning spin up (`sigma^z = +1`). The
//! operator is
//!
//! ```text
//! H = sum_bonds 1/2 [J_b (X_i X_k + Y_i Y_k) + Jz_b Z_i Z_k] + B sum_i Z_i
//! ```
//!
//! which conserves the number of up spins, so `H` is block diagonal over
//! magnetization sectors.

use std::io::Write;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numfmt::format_sig;
use crate::ring_spec::{BondTable, RingSpec, DEFAULT_MAX_SITES};

/// Real symmetric Hamiltonian on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianMatrix {
    n: usize,
    matrix: DMatrix<f64>,
}

impl HamiltonianMatrix {
    /// Wraps an arbitrary real symmetric matrix acting on `n` qubits.
    pub fn from_dense(n: usize, matrix: DMatrix<f64>) -> Result<Self> {
        let dim = checked_dim(n)?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Contract(format!(
                "{}x{} matrix does not act on {n} qubits",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix != matrix.transpose() {
            return Err(Error::Contract("Hamiltonian must be exactly symmetric".into()));
        }
        Ok(Self { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// Max absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        self.matrix
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Dimension header line followed by one comma-separated line per row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", self.dim())?;
        for row in self.matrix.row_iter() {
            let line: Vec<String> = row.iter().map(|&x| format_sig(x)).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }
}

fn checked_dim(n: usize) -> Result<usize> {
    if n == 0 || n > DEFAULT_MAX_SITES {
        return Err(Error::Resource(format!(
            "{n} qubits is outside the supported range 1..={DEFAULT_MAX_SITES}"
        )));
    }
    Ok(1usize << n)
}

/// Bond couplings flattened to bit positions.
struct Couplings {
    n: usize,
    field: f64,
    bonds: Vec<(usize, usize, f64, f64)>,
}

impl Couplings {
    fn new(spec: &RingSpec, bonds: &BondTable) -> Result<Self> {
        if bonds.len() != spec.n {
            return Err(Error::Contract(format!(
                "bond table has {} entries for a ring of {} sites",
                bonds.len(),
                spec.n
            )));
        }
        Ok(Self {
            n: spec.n,
            field: spec.b,
            bonds: bonds
                .iter()
                .map(|b| (b.sites.0 - 1, b.sites.1 - 1, b.j, b.jz))
                .collect(),
        })
    }

    fn diagonal(&self, state: usize) -> f64 {
        let mut e = 0.0;
        for &(a, b, _, jz) in &self.bonds {
            let aligned = (state >> a) & 1 == (state >> b) & 1;
            e += if aligned { 0.5 * jz } else { -0.5 * jz };
        }
        let up = state.count_ones() as f64;
        e + self.field * (2.0 * up - self.n as f64)
    }

    /// Flip-flop partners of `state`: `(partner, amplitude)` for each
    /// anti-aligned bond. `(XX + YY)` maps `|ud>` to `2|du>`, halved by the prefactor.
    fn hops(&self, state: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.bonds.iter().filter_map(move |&(a, b, j, _)| {
            if (state >> a) & 1 != (state >> b) & 1 {
                Some((state ^ (1 << a) ^ (1 << b), j))
            } else {
                None
            }
        })
    }
}

pub fn build_hamiltonian(spec: &RingSpec, bonds: &BondTable) -> Result<HamiltonianMatrix> {
    let dim = checked_dim(spec.n)?;
    let couplings = Couplings::new(spec, bonds)?;
    let mut matrix = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        matrix[(k, k)] = couplings.diagonal(k);
        for (partner, amp) in couplings.hops(k) {
            if k < partner {
                matrix[(k, partner)] += amp;
                matrix[(partner, k)] += amp;
            }
        }
    }
    Ok(HamiltonianMatrix { n: spec.n, matrix })
}

/// Basis states with exactly `up` spins up, ascending.
pub fn sector_states(n: usize, up: usize) -> Vec<usize> {
    (0..1usize << n).filter(|k| k.count_ones() as usize == up).collect()
}

/// One fixed-magnetization block of `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct SzSector {
    pub up_count: usize,
    /// Global basis indices spanned by this block, ascending.
    pub basis: Vec<usize>,
    pub matrix: DMatrix<f64>,
}

impl SzSector {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SzBlocks {
    n: usize,
    sectors: Vec<SzSector>,
}

impl SzBlocks {
    /// Assembles every sector directly, without forming the dense matrix.
    pub fn build(spec: &RingSpec, bonds: &BondTable) -> Result<Self> {
        let dim = checked_dim(spec.n)?;
        let couplings = Couplings::new(spec, bonds)?;
        let mut local = vec![0usize; dim];
        let sectors = (0..=spec.n)
            .map(|up| {
                let basis = sector_states(spec.n, up);
                for (p, &s) in basis.iter().enumerate() {
                    local[s] = p;
                }
                let d = basis.len();
                let mut matrix = DMatrix::zeros(d, d);
                for (p, &s) in basis.iter().enumerate() {
                    matrix[(p, p)] = couplings.diagonal(s);
                    for (partner, amp) in couplings.hops(s) {
                        if s < partner {
                            let q = local[partner];
                            matrix[(p, q)] += amp;
                            matrix[(q, p)] += amp;
                        }
                    }
                }
                SzSector {
                    up_count: up,
                    basis,
                    matrix,
                }
            })
            .collect();
        Ok(Self { n: spec.n, sectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sectors(&self) -> &[SzSector] {
        &self.sectors
    }

    pub fn sector_sizes(&self) -> Vec<usize> {
        self.sectors.iter().map(SzSector::dim).collect()
    }

    /// Scatters the blocks back into a dense matrix.
    pub fn reassemble(&self) -> HamiltonianMatrix {
        let dim = 1usize << self.n;
        let mut matrix = DMatrix::zeros(dim, dim);
        for sector in &self.sectors {
            for (p, &r) in sector.basis.iter().enumerate() {
                for (q, &c) in sector.basis.iter().enumerate() {
                    matrix[(r, c)] = sector.matrix[(p, q)];
                }
            }
        }
        HamiltonianMatrix { n: self.n, matrix }
    }
}

/// Restricts `h` to each magnetization sector. Fails if `h` couples sectors.
pub fn split_sz_blocks(h: &HamiltonianMatrix) -> Result<SzBlocks> {
    let n = h.n;
    let m = &h.matrix;
    for c in 0..h.dim() {
        for r in 0..h.dim() {
            if m[(r, c)] != 0.0 && r.count_ones() != c.count_ones() {
                return Err(Error::Contract(format!(
                    "entry ({r}, {c}) = {} couples different magnetization sectors",
                    m[(r, c)]
                )));
            }
        }
    }
    let sectors = (0..=n)
        .map(|up| {
            let basis = sector_states(n, up);
            let matrix = DMatrix::from_fn(basis.len(), basis.len(), |p, q| m[(basis[p], basis[q])]);
            SzSector {
                up_count: up,
                basis,
                matrix,
            }
        })
        .collect();
    Ok(SzBlocks { n, sectors })
}
