//! Parameter sweeps over ring configurations and the critical-temperature
//! finder.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::entanglement::{QubitPair, ENTANGLEMENT_THRESHOLD};
use crate::error::{Error, Result};
use crate::model::{PairProjection, RingModel};
use crate::numfmt::format_sig;
use crate::ring_spec::{Preset, RingSpec, SpecLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParam {
    Alpha,
    Beta,
    Temperature,
    B,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::Beta => "beta",
            SweepParam::Temperature => "temperature",
            SweepParam::B => "b",
        }
    }

    fn apply(self, spec: &mut RingSpec, value: f64) {
        match self {
            SweepParam::Alpha => spec.alpha = value,
            SweepParam::Beta => spec.beta = value,
            SweepParam::Temperature => spec.temperature = value,
            SweepParam::B => spec.b = value,
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Axis as written in a plan file: explicit grid or arithmetic range.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum AxisFile {
    Grid(GridAxisFile),
    Range(RangeAxisFile),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridAxisFile {
    param: SweepParam,
    grid: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeAxisFile {
    param: SweepParam,
    start: f64,
    stop: f64,
    step: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanFile {
    base: RingSpec,
    axis1: AxisFile,
    #[serde(default)]
    axis2: Option<AxisFile>,
    #[serde(default)]
    pairs: Option<Vec<[usize; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub grid: Vec<f64>,
}

impl SweepAxis {
    pub fn new(param: SweepParam, grid: Vec<f64>) -> Self {
        Self { param, grid }
    }

    /// `start, start + step, ...` up to `stop` inclusive. Points are
    /// computed as `start + k * step` so rounding does not accumulate.
    pub fn range(param: SweepParam, start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::validation("step", format!("must be finite and > 0, got {step}")));
        }
        if !(start.is_finite() && stop.is_finite()) || stop < start {
            return Err(Error::validation(
                "stop",
                format!("range [{start}, {stop}] is empty or not finite"),
            ));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        let grid = (0..count).map(|k| start + k as f64 * step).collect();
        Ok(Self { param, grid })
    }

    /// `count` evenly spaced points from `start` to `stop` inclusive.
    pub fn linspace(param: SweepParam, start: f64, stop: f64, count: usize) -> Self {
        let grid = match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..count)
                .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
                .collect(),
        };
        Self { param, grid }
    }

    fn from_file(axis: AxisFile) -> Result<Self> {
        match axis {
            AxisFile::Grid(g) => Ok(Self::new(g.param, g.grid)),
            AxisFile::Range(r) => Self::range(r.param, r.start, r.stop, r.step),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::validation("grid", format!("{} axis has no points", self.param)));
        }
        if let Some(bad) = self.grid.iter().find(|x| !x.is_finite()) {
            return Err(Error::validation("grid", format!("{} axis has non-finite point {bad}", self.param)));
        }
        if let Some(w) = self.grid.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::validation(
                "grid",
                format!("{} axis is not strictly ascending at {} -> {}", self.param, w[0], w[1]),
            ));
        }
        Ok(())
    }
}

fn serialize_pairs<S: Serializer>(pairs: &[QubitPair], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(pairs.iter().map(|p| {
        let (a, b) = p.sites();
        [a, b]
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPlan {
    pub base: RingSpec,
    pub axis1: SweepAxis,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2: Option<SweepAxis>,
    #[serde(serialize_with = "serialize_pairs")]
    pub pairs: Vec<QubitPair>,
    #[serde(skip)]
    pub limits: SpecLimits,
}

impl SweepPlan {
    /// One-axis plan over every nearest-neighbor bond.
    pub fn new(base: RingSpec, axis1: SweepAxis) -> Self {
        let pairs = QubitPair::nearest_neighbors(base.n);
        Self {
            base,
            axis1,
            axis2: None,
            pairs,
            limits: SpecLimits::default(),
        }
    }

    pub fn with_axis2(mut self, axis: SweepAxis) -> Self {
        self.axis2 = Some(axis);
        self
    }

    pub fn with_pairs(mut self, pairs: Vec<QubitPair>) -> Self {
        self.pairs = pairs;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PlanFile = serde_json::from_str(text)?;
        let pairs = match file.pairs {
            Some(list) => list
                .into_iter()
                .map(|[i, j]| QubitPair::new(i, j))
                .collect::<Result<Vec<_>>>()?,
            None => QubitPair::nearest_neighbors(file.base.n),
        };
        let plan = Self {
            axis1: SweepAxis::from_file(file.axis1)?,
            axis2: file.axis2.map(SweepAxis::from_file).transpose()?,
            base: file.base,
            pairs,
            limits: SpecLimits::default(),
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn axes(&self) -> impl Iterator<Item = &SweepAxis> {
        std::iter::once(&self.axis1).chain(self.axis2.as_ref())
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate_with(&self.limits)?;
        for axis in self.axes() {
            axis.validate()?;
            for &x in &axis.grid {
                let mut spec = self.base.clone();
                axis.param.apply(&mut spec, x);
                spec.validate_with(&self.limits)?;
            }
        }
        if let Some(a2) = &self.axis2 {
            if a2.param == self.axis1.param {
                return Err(Error::validation("axis2", format!("duplicates axis1 parameter {}", a2.param)));
            }
        }
        if self.pairs.is_empty() {
            return Err(Error::validation("pairs", "no pairs requested"));
        }
        for p in &self.pairs {
            p.check_within(self.base.n)?;
        }
        Ok(())
    }

    /// Number of rows a sweep emits.
    pub fn row_count(&self) -> usize {
        self.axis1.grid.len() * self.axis2.as_ref().map_or(1, |a| a.grid.len()) * self.pairs.len()
    }
}

/// Plans that regenerate the figure data sets.
pub const FIGURE_PLANS: [&str; 7] = ["fig2a", "fig2b", "fig3a", "fig3b", "fig4", "fig6a", "fig6b"];

pub fn figure_plan(name: &str) -> Result<SweepPlan> {
    let scale = |p| SweepAxis::range(p, 0.0, 3.0, 0.02);
    let plan = match name {
        "fig2a" => SweepPlan::new(Preset::Fig1a.spec(), scale(SweepParam::Alpha)?),
        "fig2b" => SweepPlan::new(Preset::Fig1b.spec(), scale(SweepParam::Alpha)?),
        "fig3a" => SweepPlan::new(Preset::Fig1b.spec(), SweepAxis::new(SweepParam::Alpha, vec![0.1])),
        "fig3b" => SweepPlan::new(Preset::Fig1b.spec(), SweepAxis::new(SweepParam::Alpha, vec![2.0])),
        "fig4" => SweepPlan::new(Preset::Fig1b.spec(), SweepAxis::linspace(SweepParam::Alpha, 0.0, 3.0, 60))
            .with_axis2(SweepAxis::linspace(SweepParam::Temperature, 0.05, 3.0, 60))
            .with_pairs(vec![QubitPair::new(2, 3)?, QubitPair::new(3, 4)?]),
        "fig6a" => SweepPlan::new(Preset::Fig5a.spec().with_alpha(0.8), scale(SweepParam::Beta)?),
        "fig6b" => SweepPlan::new(Preset::Fig5b.spec().with_alpha(0.8), scale(SweepParam::Beta)?),
        _ => {
            return Err(Error::validation(
                "figure",
                format!("unknown figure plan `{name}` (valid: {})", FIGURE_PLANS.join(", ")),
            ))
        }
    };
    Ok(plan)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    #[serde(serialize_with = "serialize_label")]
    pub pair: QubitPair,
    pub concurrence: f64,
}

fn serialize_label<S: Serializer>(pair: &QubitPair, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(pair)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMetadata {
    /// RFC 3339, UTC.
    pub timestamp: String,
    pub code_version: String,
    /// SHA-256 of the plan echo.
    pub spec_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub plan: SweepPlan,
    pub rows: Vec<SweepRow>,
    pub metadata: SweepMetadata,
}

pub const CSV_HEADER: &str = "axis1,axis2,pair,concurrence";

impl SweepResult {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{}",
                format_sig(row.axis1),
                row.axis2.map(format_sig).unwrap_or_default(),
                row.pair,
                format_sig(row.concurrence)
            )?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Values of one pair in row order.
    pub fn series(&self, pair: QubitPair) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.pair == pair)
            .map(|r| r.concurrence)
            .collect()
    }
}

fn at_point(err: Error, point: &str) -> Error {
    match err {
        Error::Numerical { message, residual } => Error::Numerical {
            message: format!("{message} at {point}"),
            residual,
        },
        other => other,
    }
}

/// Evaluates every requested concurrence on the plan's grid.
///
/// Grid points sharing a Hamiltonian (differing only in temperature) share
/// one diagonalization. Independent Hamiltonians are solved in parallel on
/// the current rayon pool. Rows are ordered axis1-major, then axis2, then pair.
pub fn run_sweep(plan: &SweepPlan) -> Result<SweepResult> {
    plan.validate()?;
    let n1 = plan.axis1.grid.len();
    let n2 = plan.axis2.as_ref().map_or(1, |a| a.grid.len());
    let t_axis1 = plan.axis1.param == SweepParam::Temperature;
    let t_axis2 = plan.axis2.as_ref().is_some_and(|a| a.param == SweepParam::Temperature);

    // Grid indices that change the Hamiltonian; temperature indices are
    // folded into each work item.
    let keys: Vec<(Option<usize>, Option<usize>)> = {
        let k1: Vec<Option<usize>> = if t_axis1 { vec![None] } else { (0..n1).map(Some).collect() };
        let k2: Vec<Option<usize>> = if t_axis2 || plan.axis2.is_none() {
            vec![None]
        } else {
            (0..n2).map(Some).collect()
        };
        k1.iter().flat_map(|&a| k2.iter().map(move |&b| (a, b))).collect()
    };

    let blocks: Vec<Vec<(usize, usize, usize, f64)>> = keys
        .par_iter()
        .map(|&(k1, k2)| {
            let mut spec = plan.base.clone();
            if let Some(i) = k1 {
                plan.axis1.param.apply(&mut spec, plan.axis1.grid[i]);
            }
            if let (Some(i), Some(axis)) = (k2, &plan.axis2) {
                axis.param.apply(&mut spec, axis.grid[i]);
            }
            let point = format!(
                "{}={}{}",
                plan.axis1.param,
                k1.map_or("*".to_string(), |i| plan.axis1.grid[i].to_string()),
                match (&plan.axis2, k2) {
                    (Some(a), Some(i)) => format!(", {}={}", a.param, a.grid[i]),
                    (Some(a), None) => format!(", {}=*", a.param),
                    _ => String::new(),
                }
            );
            let model = RingModel::new_unvalidated(spec).map_err(|e| at_point(e, &point))?;
            let projections: Vec<PairProjection<'_>> = plan
                .pairs
                .iter()
                .map(|&p| model.project(p))
                .collect::<Result<_>>()?;
            let i1s: Vec<usize> = k1.map_or_else(|| (0..n1).collect(), |i| vec![i]);
            let i2s: Vec<usize> = k2.map_or_else(|| (0..n2).collect(), |i| vec![i]);
            let mut out = Vec::with_capacity(i1s.len() * i2s.len() * projections.len());
            for &i1 in &i1s {
                for &i2 in &i2s {
                    let temperature = if t_axis1 {
                        plan.axis1.grid[i1]
                    } else if t_axis2 {
                        plan.axis2.as_ref().expect("axis2 present").grid[i2]
                    } else {
                        plan.base.temperature
                    };
                    for (ip, proj) in projections.iter().enumerate() {
                        let c = proj
                            .concurrence(temperature)
                            .map_err(|e| at_point(e, &format!("{point}, T={temperature}, pair {}", proj.pair())))?;
                        out.push((i1, i2, ip, c.value));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut cells: Vec<(usize, usize, usize, f64)> = blocks.into_iter().flatten().collect();
    cells.sort_by_key(|&(i1, i2, ip, _)| (i1, i2, ip));
    let rows = cells
        .into_iter()
        .map(|(i1, i2, ip, c)| SweepRow {
            axis1: plan.axis1.grid[i1],
            axis2: plan.axis2.as_ref().map(|a| a.grid[i2]),
            pair: plan.pairs[ip],
            concurrence: c,
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(rows.len(), plan.row_count());

    let echo = serde_json::to_vec(plan)?;
    let metadata = SweepMetadata {
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        spec_hash: hex::encode(Sha256::digest(&echo)),
    };
    Ok(SweepResult {
        plan: plan.clone(),
        rows,
        metadata,
    })
}

/// Bisects `[t_lo, t_hi]` for the temperature where the pair's concurrence
/// drops to [`ENTANGLEMENT_THRESHOLD`].
pub fn critical_temperature(spec: &RingSpec, pair: QubitPair, t_lo: f64, t_hi: f64, tol: f64) -> Result<f64> {
    let model = RingModel::new(spec.clone())?;
    let projection = model.project(pair)?;
    critical_temperature_of(&projection, t_lo, t_hi, tol)
}

/// As [`critical_temperature`] on an existing projection; each probe only
/// re-weights the stored spectrum.
pub fn critical_temperature_of(projection: &PairProjection<'_>, t_lo: f64, t_hi: f64, tol: f64) -> Result<f64> {
    if !(t_lo > 0.0 && t_lo.is_finite()) {
        return Err(Error::validation("t_lo", format!("must be finite and > 0, got {t_lo}")));
    }
    if !(t_hi > t_lo && t_hi.is_finite()) {
        return Err(Error::validation("t_hi", format!("must exceed t_lo = {t_lo}, got {t_hi}")));
    }
    if !(tol > 0.0) {
        return Err(Error::validation("tol", format!("must be > 0, got {tol}")));
    }
    let c = |t: f64| projection.concurrence(t).map(|r| r.value);
    let (c_lo, c_hi) = (c(t_lo)?, c(t_hi)?);
    if c_lo <= ENTANGLEMENT_THRESHOLD || c_hi > ENTANGLEMENT_THRESHOLD {
        return Err(Error::Bracket {
            t_lo,
            t_hi,
            c_lo,
            c_hi,
            threshold: ENTANGLEMENT_THRESHOLD,
        });
    }
    let (mut lo, mut hi) = (t_lo, t_hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if c(mid)? > ENTANGLEMENT_THRESHOLD {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
