//! Ring configuration and the per-bond coupling rule.
//!
//! Sites are labelled `1..=n` and bond `i` joins site `i` to site `i + 1`,
//! with site `n + 1` identified with site `1`. A bond with exactly one
//! impurity endpoint carries `(alpha * J, alpha * Jz)`; a bond between two
//! impurities carries `(beta * J, beta * Jz)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ring accepted by default. Dense `2^n` matrices must fit in memory.
pub const DEFAULT_MAX_SITES: usize = 14;

/// Bounds applied by [`RingSpec::validate_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecLimits {
    pub max_sites: usize,
    /// Permit negative `alpha` / `beta` (ferromagnetic impurity bonds).
    pub allow_negative_scales: bool,
}

impl Default for SpecLimits {
    fn default() -> Self {
        Self {
            max_sites: DEFAULT_MAX_SITES,
            allow_negative_scales: false,
        }
    }
}

/// A spin-1/2 XXZ ring with impurity sites in a uniform field along z.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub n: usize,
    pub j: f64,
    pub jz: f64,
    pub b: f64,
    pub temperature: f64,
    pub impurities: Vec<usize>,
    pub alpha: f64,
    pub beta: f64,
}

impl RingSpec {
    /// Impurity-free ring.
    pub fn uniform(n: usize, j: f64, jz: f64, b: f64, temperature: f64) -> Self {
        Self {
            n,
            j,
            jz,
            b,
            temperature,
            impurities: Vec::new(),
            alpha: 1.0,
            beta: 1.0,
        }
    }

    pub fn with_impurities(mut self, sites: impl IntoIterator<Item = usize>) -> Self {
        self.impurities = sites.into_iter().collect();
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with(&SpecLimits::default())
    }

    pub fn validate_with(&self, limits: &SpecLimits) -> Result<()> {
        if self.n < 3 {
            return Err(Error::validation("n", format!("ring needs at least 3 sites, got {}", self.n)));
        }
        if self.n > limits.max_sites {
            return Err(Error::validation(
                "n",
                format!("{} sites exceeds the cap of {}", self.n, limits.max_sites),
            ));
        }
        for (field, value) in [("j", self.j), ("jz", self.jz)] {
            if !value.is_finite() {
                return Err(Error::validation(field, format!("must be finite, got {value}")));
            }
        }
        if !(self.b.is_finite() && self.b >= 0.0) {
            return Err(Error::validation("b", format!("field must be finite and >= 0, got {}", self.b)));
        }
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return Err(Error::validation(
                "temperature",
                format!("must be finite and > 0, got {}", self.temperature),
            ));
        }
        for (field, value) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !value.is_finite() {
                return Err(Error::validation(field, format!("must be finite, got {value}")));
            }
            if value < 0.0 && !limits.allow_negative_scales {
                return Err(Error::validation(
                    field,
                    format!("negative coupling scale {value} requires an explicit override"),
                ));
            }
        }
        let mut seen = vec![false; self.n + 1];
        for &site in &self.impurities {
            if site == 0 || site > self.n {
                return Err(Error::validation(
                    "impurities",
                    format!("site {site} outside 1..={}", self.n),
                ));
            }
            if std::mem::replace(&mut seen[site], true) {
                return Err(Error::validation("impurities", format!("site {site} listed twice")));
            }
        }
        Ok(())
    }

    pub fn is_impurity(&self, site: usize) -> bool {
        self.impurities.contains(&site)
    }

    /// Relabels every site `i` as `i + k (mod n)`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.impurities = self
            .impurities
            .iter()
            .map(|&s| (s - 1 + k) % self.n + 1)
            .collect();
        out
    }

    /// Dimension of the full Hilbert space, `2^n`.
    pub fn dim(&self) -> usize {
        1usize << self.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BondKind {
    /// Both endpoints are normal sites.
    Pure,
    /// Exactly one endpoint is an impurity.
    Mixed,
    /// Both endpoints are impurities.
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bond {
    /// 1-based bond index; bond `i` joins sites `i` and `i % n + 1`.
    pub index: usize,
    pub sites: (usize, usize),
    pub kind: BondKind,
    pub j: f64,
    pub jz: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BondTable {
    bonds: Vec<Bond>,
}

impl BondTable {
    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    /// Bond `index` (1-based).
    pub fn get(&self, index: usize) -> Option<&Bond> {
        index.checked_sub(1).and_then(|i| self.bonds.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bond> {
        self.bonds.iter()
    }
}

/// Classifies every bond by the impurity membership of its endpoints.
pub fn derive_bonds(spec: &RingSpec) -> Result<BondTable> {
    spec.validate_with(&SpecLimits {
        max_sites: usize::MAX,
        allow_negative_scales: true,
    })?;
    Ok(bonds_unchecked(spec))
}

pub(crate) fn bonds_unchecked(spec: &RingSpec) -> BondTable {
    let n = spec.n;
    let bonds = (1..=n)
        .map(|i| {
            let k = i % n + 1;
            let kind = match (spec.is_impurity(i), spec.is_impurity(k)) {
                (true, true) => BondKind::Double,
                (false, false) => BondKind::Pure,
                _ => BondKind::Mixed,
            };
            let scale = match kind {
                BondKind::Pure => 1.0,
                BondKind::Mixed => spec.alpha,
                BondKind::Double => spec.beta,
            };
            Bond {
                index: i,
                sites: (i, k),
                kind,
                j: scale * spec.j,
                jz: scale * spec.jz,
            }
        })
        .collect();
    BondTable { bonds }
}

/// Ring layouts with ten qubits, `J = 1`, `Jz = 0.65`, `B = 0.4`, `T = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Non-adjacent impurities at sites 4 and 6.
    Fig1a,
    /// Non-adjacent impurities at sites 4, 6 and 8.
    Fig1b,
    /// Adjacent impurities at sites 5 and 6.
    Fig5a,
    /// Impurities at 4, 7 and 8 (7 and 8 adjacent).
    Fig5b,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig1a, Preset::Fig1b, Preset::Fig5a, Preset::Fig5b];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1a => "fig1a",
            Preset::Fig1b => "fig1b",
            Preset::Fig5a => "fig5a",
            Preset::Fig5b => "fig5b",
        }
    }

    pub fn impurities(self) -> &'static [usize] {
        match self {
            Preset::Fig1a => &[4, 6],
            Preset::Fig1b => &[4, 6, 8],
            Preset::Fig5a => &[5, 6],
            Preset::Fig5b => &[4, 7, 8],
        }
    }

    /// The configuration with `alpha = beta = 1`; callers set the scales.
    pub fn spec(self) -> RingSpec {
        RingSpec::uniform(10, 1.0, 0.65, 0.4, 1.0).with_impurities(self.impurities().iter().copied())
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset {
                name: s.to_string(),
                valid: Preset::ALL.map(Preset::name).join(", "),
            })
    }
}

pub fn preset(name: &str) -> Result<RingSpec> {
    Ok(name.parse::<Preset>()?.spec())
}
