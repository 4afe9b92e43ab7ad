//! Command-line front end. Exit codes: 0 success, 1 invalid input,
//! 2 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::entanglement::QubitPair;
use crate::error::{Error, Result};
use crate::hamiltonian::build_hamiltonian;
use crate::numfmt::format_sig;
use crate::ring_spec::{derive_bonds, BondKind, Preset, RingSpec, SpecLimits};
use crate::sweeps::{critical_temperature_of, figure_plan, run_sweep, SweepPlan};
use crate::model::RingModel;

#[derive(Debug, Parser)]
#[command(name = "xxz-ring", version, about = "Thermal pairwise entanglement in XXZ rings with impurities")]
struct Cli {
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a parameter sweep and write figure data.
    Sweep {
        /// JSON plan file.
        #[arg(long, conflicts_with = "figure", required_unless_present = "figure")]
        plan: Option<PathBuf>,
        /// Built-in figure plan (fig2a, fig2b, fig3a, fig3b, fig4, fig6a, fig6b).
        #[arg(long)]
        figure: Option<String>,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the full result with metadata as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Find the temperature at which a pair's concurrence vanishes.
    Tc {
        #[command(flatten)]
        source: SpecSource,
        /// Pair as `i,j`.
        #[arg(long, value_parser = parse_pair)]
        pair: QubitPair,
        #[arg(long)]
        t_lo: f64,
        #[arg(long)]
        t_hi: f64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Print a named configuration as JSON.
    Preset {
        name: String,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
    },
    /// Check a spec file.
    Validate {
        spec: PathBuf,
        #[arg(long)]
        allow_negative: bool,
        /// Write the dense Hamiltonian as CSV.
        #[arg(long)]
        dump_hamiltonian: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SpecSource {
    /// RingSpec JSON file.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    spec: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// Override the impurity bond scale.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Override the impurity-impurity bond scale.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Accept negative coupling scales.
    #[arg(long)]
    allow_negative: bool,
}

impl SpecSource {
    fn load(&self) -> Result<(RingSpec, SpecLimits)> {
        let mut spec = match (&self.spec, &self.preset) {
            (Some(path), _) => read_spec(path)?,
            (None, Some(name)) => name.parse::<Preset>()?.spec(),
            (None, None) => return Err(Error::validation("spec", "pass --spec or --preset")),
        };
        if let Some(a) = self.alpha {
            spec.alpha = a;
        }
        if let Some(b) = self.beta {
            spec.beta = b;
        }
        let limits = SpecLimits {
            allow_negative_scales: self.allow_negative,
            ..SpecLimits::default()
        };
        spec.validate_with(&limits)?;
        Ok((spec, limits))
    }
}

fn parse_pair(s: &str) -> std::result::Result<QubitPair, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `i,j`, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad site `{x}`: {e}"));
    QubitPair::new(parse(a)?, parse(b)?).map_err(|e| e.to_string())
}

fn read_spec(path: &PathBuf) -> Result<RingSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::validation("spec", format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        2
    } else {
        1
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Sweep {
            plan,
            figure,
            out: csv_path,
            json,
        } => {
            let plan = match (plan, figure) {
                (Some(path), _) => SweepPlan::from_file(&path).map_err(|e| match e {
                    Error::Io(io) => Error::validation("plan", format!("cannot read {}: {io}", path.display())),
                    other => other,
                })?,
                (None, Some(name)) => figure_plan(&name)?,
                (None, None) => return Err(Error::validation("plan", "pass --plan or --figure")),
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cli.threads)
                .build()
                .map_err(|e| Error::Resource(e.to_string()))?;
            let result = pool.install(|| run_sweep(&plan))?;
            match csv_path {
                Some(path) => std::fs::write(path, result.to_csv())?,
                None => out.write_all(result.to_csv().as_bytes())?,
            }
            if let Some(path) = json {
                std::fs::write(path, result.to_json()? + "\n")?;
            }
        }
        Command::Tc {
            source,
            pair,
            t_lo,
            t_hi,
            tol,
        } => {
            let (spec, _) = source.load()?;
            let model = RingModel::new_unvalidated(spec)?;
            let projection = model.project(pair)?;
            let tc = critical_temperature_of(&projection, t_lo, t_hi, tol)?;
            writeln!(out, "{}", format_sig(tc))?;
        }
        Command::Preset { name, alpha, beta } => {
            let mut spec = name.parse::<Preset>()?.spec();
            if let Some(a) = alpha {
                spec.alpha = a;
            }
            if let Some(b) = beta {
                spec.beta = b;
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&spec)?)?;
        }
        Command::Validate {
            spec,
            allow_negative,
            dump_hamiltonian,
        } => {
            let spec = read_spec(&spec)?;
            spec.validate_with(&SpecLimits {
                allow_negative_scales: allow_negative,
                ..SpecLimits::default()
            })?;
            let bonds = derive_bonds(&spec)?;
            let count = |k| bonds.iter().filter(|b| b.kind == k).count();
            writeln!(
                out,
                "ok: n={}, bonds: {} pure, {} mixed, {} double",
                spec.n,
                count(BondKind::Pure),
                count(BondKind::Mixed),
                count(BondKind::Double)
            )?;
            if let Some(path) = dump_hamiltonian {
                let h = build_hamiltonian(&spec, &bonds)?;
                h.write_csv(std::io::BufWriter::new(std::fs::File::create(path)?))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("xxz-ring").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn preset_prints_json() {
        let (code, out, _) = run_args(&["preset", "fig1a"]);
        assert_eq!(code, 0);
        let spec: RingSpec = serde_json::from_str(&out).unwrap();
        assert_eq!(spec, Preset::Fig1a.spec());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["frobnicate"]).0, 1);
        assert_eq!(run_args(&["preset", "fig1a", "--bogus"]).0, 1);
        assert_eq!(run_args(&["preset", "nope"]).0, 1);
        assert_eq!(run_args(&["tc", "--preset", "fig1a", "--pair", "3", "--t-lo", "0.1", "--t-hi", "5"]).0, 1);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn missing_plan_exits_one() {
        let (code, out, err) = run_args(&["sweep", "--plan", "definitely-missing.json"]);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.contains("definitely-missing.json"), "{err}");
    }

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pair("10,1").unwrap().label(), "10-1");
        assert!(parse_pair("3-4").is_err());
        assert!(parse_pair("3,3").is_err());
    }
}
