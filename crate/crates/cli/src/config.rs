//! Flag parsing, `key=value` config files and per-command defaults.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wilsonqs::{Grid, SystemParams, WilsonParams};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "wilsonqs",
    version,
    about = "Wilson-polynomial quantum system: spectra, phase shifts, potentials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Bound-state energies E_m.
    Spectrum,
    /// Scattering phase shift in units of π against y = λ/k.
    PhaseShift,
    /// Potential function on a grid from its oscillator matrix.
    Reconstruct,
    /// Dump the kinetic, Hamiltonian and potential matrices.
    Matrices,
    /// Run the identity-verification suites.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    #[value(name = "14a")]
    FullMatrix,
    #[value(name = "14b")]
    FirstColumn,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Default, Clone, Args)]
pub struct Flags {
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Matrix truncation order N.
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Last level index for the spectrum figure.
    #[arg(long, global = true)]
    pub m_max: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub grid_max: Option<f64>,
    #[arg(long, global = true)]
    pub grid_points: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub y_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub y_max: Option<f64>,
    #[arg(long, global = true)]
    pub y_points: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodChoice>,
    /// Only levels with m + μ < 0.
    #[arg(long, global = true)]
    pub physical: bool,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Replace every suite tolerance.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Run a single suite.
    #[arg(long, global = true)]
    pub only: Option<String>,
    /// `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Replace Ṽ by the zero matrix (testing hook).
    #[arg(long, global = true, hide = true)]
    pub zero_potential: bool,
}

/// Fully resolved and validated settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub system: SystemParams,
    pub n_max: usize,
    pub m_max: Option<usize>,
    pub grid: Grid,
    pub y_range: (f64, f64, usize),
    pub method: MethodChoice,
    pub physical: bool,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub tolerance: Option<f64>,
    pub only: Option<String>,
    pub zero_potential: bool,
}

struct Defaults {
    lambda: f64,
    params: [f64; 4],
    n_max: usize,
}

fn defaults(command: Command) -> Defaults {
    match command {
        Command::Spectrum => Defaults {
            lambda: 0.2,
            params: [-0.5, 1.0, 1.0, 1.0],
            n_max: 20,
        },
        Command::PhaseShift => Defaults {
            lambda: 0.2,
            params: [0.8, 0.3, 0.6, 0.5],
            n_max: 20,
        },
        Command::Reconstruct | Command::Verify => Defaults {
            lambda: 0.5,
            params: [0.8, 0.3, 0.6, 0.5],
            n_max: 20,
        },
        Command::Matrices => Defaults {
            lambda: 0.5,
            params: [0.8, 0.3, 0.6, 0.5],
            n_max: 10,
        },
    }
}

const FILE_KEYS: [&str; 19] = [
    "lambda",
    "mu",
    "nu",
    "a",
    "b",
    "n-max",
    "m-max",
    "grid-min",
    "grid-max",
    "grid-points",
    "y-min",
    "y-max",
    "y-points",
    "method",
    "physical",
    "output",
    "format",
    "tolerance",
    "only",
];

/// Reads a `key = value` file. Blank lines and `#` comments are skipped;
/// keys use the long flag names, with `_` accepted for `-`.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Validation(format!(
                "{}:{}: expected key = value",
                path.display(),
                i + 1
            ))
        })?;
        let key = key.trim().replace('_', "-");
        if !FILE_KEYS.contains(&key.as_str()) {
            return Err(CliError::Validation(format!(
                "{}:{}: unknown key '{key}'",
                path.display(),
                i + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn from_file<T: FromStr>(
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    file.get(key)
        .map(|raw| {
            raw.parse().map_err(|_| {
                CliError::Validation(format!("config key {key}: cannot parse '{raw}'"))
            })
        })
        .transpose()
}

fn enum_from_file<T: ValueEnum>(
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    file.get(key)
        .map(|raw| {
            T::from_str(raw, true).map_err(|_| {
                CliError::Validation(format!("config key {key}: invalid value '{raw}'"))
            })
        })
        .transpose()
}

/// Flags override the file's values; the file overrides the defaults.
fn merge(flags: &Flags, file: &BTreeMap<String, String>) -> Result<Flags, CliError> {
    macro_rules! pick {
        ($field:ident, $key:literal) => {
            match flags.$field {
                Some(v) => Some(v),
                None => from_file(file, $key)?,
            }
        };
    }
    Ok(Flags {
        lambda: pick!(lambda, "lambda"),
        mu: pick!(mu, "mu"),
        nu: pick!(nu, "nu"),
        a: pick!(a, "a"),
        b: pick!(b, "b"),
        n_max: pick!(n_max, "n-max"),
        m_max: pick!(m_max, "m-max"),
        grid_min: pick!(grid_min, "grid-min"),
        grid_max: pick!(grid_max, "grid-max"),
        grid_points: pick!(grid_points, "grid-points"),
        y_min: pick!(y_min, "y-min"),
        y_max: pick!(y_max, "y-max"),
        y_points: pick!(y_points, "y-points"),
        method: match flags.method {
            Some(m) => Some(m),
            None => enum_from_file(file, "method")?,
        },
        physical: flags.physical || from_file::<bool>(file, "physical")?.unwrap_or(false),
        output: flags
            .output
            .clone()
            .or_else(|| file.get("output").map(PathBuf::from)),
        format: match flags.format {
            Some(f) => Some(f),
            None => enum_from_file(file, "format")?,
        },
        tolerance: pick!(tolerance, "tolerance"),
        only: flags.only.clone().or_else(|| file.get("only").cloned()),
        config: None,
        zero_potential: flags.zero_potential,
    })
}

impl RunConfig {
    /// Resolves flags, the optional config file and defaults, then
    /// validates everything the command will use.
    pub fn resolve(command: Command, flags: &Flags) -> Result<RunConfig, CliError> {
        let file = match &flags.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let f = merge(flags, &file)?;
        let d = defaults(command);
        let lambda = f.lambda.unwrap_or(d.lambda);
        let [mu, nu, a, b] = [
            f.mu.unwrap_or(d.params[0]),
            f.nu.unwrap_or(d.params[1]),
            f.a.unwrap_or(d.params[2]),
            f.b.unwrap_or(d.params[3]),
        ];
        let wilson = WilsonParams::new(mu, nu, a, b).map_err(CliError::invalid)?;
        let system = SystemParams::new(lambda, wilson).map_err(CliError::invalid)?;

        let n_max = f.n_max.unwrap_or(d.n_max);
        if n_max == 0 {
            return Err(CliError::Validation("--n-max must be at least 1".into()));
        }
        let grid = Grid::new(
            f.grid_min.unwrap_or(-8.0 / lambda),
            f.grid_max.unwrap_or(8.0 / lambda),
            f.grid_points.unwrap_or(401),
        )
        .map_err(CliError::invalid)?;
        let y_range = (
            f.y_min.unwrap_or(0.05),
            f.y_max.unwrap_or(5.0),
            f.y_points.unwrap_or(500),
        );
        let format = f.format.unwrap_or(Format::Csv);

        let m_max = match (command, f.physical) {
            (Command::Spectrum, false) => match f.m_max {
                Some(m) => Some(m),
                None if mu < 0.0 => Some(10),
                None => {
                    return Err(CliError::Validation(
                        "spectrum needs μ < 0, an explicit --m-max, or --physical".into(),
                    ))
                }
            },
            _ => f.m_max,
        };
        if let Some(m) = m_max.filter(|_| command == Command::Spectrum && !f.physical) {
            if let Some(bad) = (0..=m).find(|&k| k as f64 + mu == 0.0) {
                return Err(CliError::Validation(format!("m + μ vanishes at m = {bad}")));
            }
        }
        if command == Command::PhaseShift {
            let (lo, hi, count) = y_range;
            if !(lo > 0.0 && hi > lo && hi.is_finite()) || count < 2 {
                return Err(CliError::Validation(format!(
                    "y range needs 0 < y-min < y-max and at least 2 points, got [{lo}, {hi}] with {count}"
                )));
            }
        }
        if format == Format::Svg && matches!(command, Command::Matrices | Command::Verify) {
            return Err(CliError::Validation(
                "SVG output is only available for figures".into(),
            ));
        }
        if let Some(only) = &f.only {
            if !wilsonqs::verify::SUITES.contains(&only.as_str()) {
                return Err(CliError::Validation(format!(
                    "unknown suite '{only}', expected one of {}",
                    wilsonqs::verify::SUITES.join(", ")
                )));
            }
        }
        if let Some(t) = f.tolerance {
            if !(t >= 0.0) {
                return Err(CliError::Validation(format!(
                    "tolerance must be non-negative, got {t}"
                )));
            }
        }
        if let Some(path) = &f.output {
            let parent = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            if !parent.is_dir() {
                return Err(CliError::Validation(format!(
                    "output directory {} does not exist",
                    parent.display()
                )));
            }
        }

        Ok(RunConfig {
            command,
            system,
            n_max,
            m_max,
            grid,
            y_range,
            method: f.method.unwrap_or(MethodChoice::Both),
            physical: f.physical,
            output: f.output,
            format,
            tolerance: f.tolerance,
            only: f.only,
            zero_potential: f.zero_potential,
        })
    }

    /// Defaults for `command` with no flags and no config file.
    pub fn defaults_for(command: Command) -> Result<RunConfig, CliError> {
        RunConfig::resolve(command, &Flags::default())
    }
}
