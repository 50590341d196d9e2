//! The subcommands. Every command builds its complete output in memory
//! before anything is written.

use std::f64::consts::PI;

use wilsonqs::operators::{hamiltonian_matrix, kinetic_matrix, potential_matrix};
use wilsonqs::reconstruct::{potential_matrix_for, reconstruct, with_harmonic_term};
use wilsonqs::system::{bound_states, level_energy, phase_shift};
use wilsonqs::verify::run_all;
use wilsonqs::{Method, ReconstructedPotential};

use crate::config::{Command, Format, MethodChoice, RunConfig};
use crate::exact::level_energy_decimal;
use crate::output::{format_number, write_atomically, Table};
use crate::svg::{plot, Series, Style};
use crate::CliError;

/// What a command produced: the file or stdout body, notes for stderr and
/// whether every verification check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// `m,E_m` rows: `m = 0…m_max` in figure mode, the bound states with
/// `--physical`. Energies come from the decimal parameters exactly.
pub fn spectrum_table(cfg: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let mut table = Table::new(&["m", "E_m"]);
    let mut notes = Vec::new();
    if cfg.physical {
        let states = bound_states(&cfg.system);
        if states.is_empty() {
            notes.push("warning: no bound states (μ ≥ 0)".to_string());
        }
        let (mu, lambda) = (cfg.system.wilson().mu(), cfg.system.lambda());
        for s in states {
            let e = level_energy_decimal(s.m, mu, lambda).unwrap_or(s.energy);
            table.push(vec![Some(s.m as f64), Some(e)]);
        }
    } else {
        let m_max = cfg.m_max.unwrap_or(0);
        let mu = cfg.system.wilson().mu();
        for m in 0..=m_max {
            let e = match level_energy_decimal(m, mu, cfg.system.lambda()) {
                Some(e) => e,
                None => level_energy(m, mu, cfg.system.lambda()).map_err(CliError::computation)?,
            };
            table.push(vec![Some(m as f64), Some(e)]);
        }
    }
    Ok((table, notes))
}

/// Removes `2π` jumps between consecutive samples.
pub fn unwrap_phase(values: &mut [f64]) {
    let mut shift = 0.0;
    for i in 1..values.len() {
        let raw = values[i] + shift;
        let jump = raw - values[i - 1];
        let turns = (jump / (2.0 * PI)).round();
        shift -= turns * 2.0 * PI;
        values[i] = raw - turns * 2.0 * PI;
    }
}

/// `y,delta_over_pi` over the configured `y` range, unwrapped.
pub fn phase_shift_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let (lo, hi, count) = cfg.y_range;
    let ys: Vec<f64> = (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            }
        })
        .collect();
    let mut deltas = ys
        .iter()
        .map(|&y| phase_shift(y, cfg.system.wilson()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::computation)?;
    unwrap_phase(&mut deltas);
    let mut table = Table::new(&["y", "delta_over_pi"]);
    for (y, d) in ys.into_iter().zip(deltas) {
        table.push(vec![Some(y), Some(d / PI)]);
    }
    Ok(table)
}

fn methods(choice: MethodChoice) -> Vec<Method> {
    match choice {
        MethodChoice::FullMatrix => vec![Method::FullMatrix],
        MethodChoice::FirstColumn => vec![Method::FirstColumn],
        MethodChoice::Both => vec![Method::FullMatrix, Method::FirstColumn],
    }
}

/// Full potential `V = ½λ⁴x² + Ṽ` at truncation order `order` for each
/// selected method.
pub fn reconstruct_at(
    cfg: &RunConfig,
    order: usize,
) -> Result<Vec<ReconstructedPotential>, CliError> {
    let lambda = cfg.system.lambda();
    let mut v = potential_matrix_for(&cfg.system, order).map_err(CliError::computation)?;
    if cfg.zero_potential {
        v = v.scaled(0.0);
    }
    methods(cfg.method)
        .into_iter()
        .map(|m| {
            reconstruct(m, &v, lambda, &cfg.grid)
                .map(|r| with_harmonic_term(r, lambda))
                .map_err(CliError::computation)
        })
        .collect()
}

/// `x,V_14a,V_14b` (selected columns only) plus a convergence note
/// comparing against half the truncation order.
pub fn reconstruct_table(cfg: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let results = reconstruct_at(cfg, cfg.n_max)?;
    let columns: Vec<String> = results
        .iter()
        .map(|r| format!("V_{}", r.method.label()))
        .collect();
    let mut header = vec!["x"];
    header.extend(columns.iter().map(String::as_str));
    let mut table = Table::new(&header);
    for (i, x) in cfg.grid.points().enumerate() {
        let mut row = vec![Some(x)];
        row.extend(results.iter().map(|r| r.values[i]));
        table.push(row);
    }

    let mut notes = Vec::new();
    let half = (cfg.n_max / 2).max(1);
    if half != cfg.n_max {
        let coarse = reconstruct_at(cfg, half)?;
        for (fine, coarse) in results.iter().zip(&coarse) {
            let (diff, count) = fine
                .values
                .iter()
                .zip(&coarse.values)
                .filter_map(|(f, c)| Some((f.as_ref()? - c.as_ref()?).abs()))
                .fold((0.0_f64, 0usize), |(m, n), d| (m.max(d), n + 1));
            notes.push(format!(
                "convergence {}: max |V(N={}) - V(N={half})| = {} over {count} points",
                fine.method.label(),
                cfg.n_max,
                format_number(diff)
            ));
        }
    }
    Ok((table, notes))
}

/// In-band entries `n,m,T,H,V` of the kinetic, Hamiltonian and potential
/// matrices.
pub fn matrices_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let (lambda, w) = (cfg.system.lambda(), cfg.system.wilson());
    let t = kinetic_matrix(cfg.n_max, lambda).map_err(CliError::computation)?;
    let h = hamiltonian_matrix(cfg.n_max, lambda, w.mu(), w.a()).map_err(CliError::computation)?;
    let v = potential_matrix(&h, &t).map_err(CliError::computation)?;
    let mut table = Table::new(&["n", "m", "T", "H", "V"]);
    for n in 0..cfg.n_max {
        for m in n.saturating_sub(2)..(n + 3).min(cfg.n_max) {
            table.push(vec![
                Some(n as f64),
                Some(m as f64),
                Some(t.get(n, m)),
                Some(h.get(n, m)),
                Some(v.get(n, m)),
            ]);
        }
    }
    Ok(table)
}

/// Runs the suites and renders one line per check.
pub fn verify_report(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let suites = run_all(cfg.tolerance, cfg.only.as_deref()).map_err(CliError::computation)?;
    let mut text = String::new();
    let mut all = true;
    for (suite, reports) in suites {
        for r in reports {
            all &= r.passed;
            text.push_str(&format!(
                "{} {suite}: {} residual={} tolerance={}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                format_number(r.residual),
                format_number(r.tolerance)
            ));
        }
    }
    text.push_str(if all {
        "all checks passed\n"
    } else {
        "some checks failed\n"
    });
    Ok((text, all))
}

fn figure(table: &Table, title: &str, x_label: &str, y_label: &str, style: Style) -> String {
    let series: Vec<Series> = (1..table.header().len())
        .map(|k| Series {
            label: table.header()[k].clone(),
            points: table.series(k),
            style,
        })
        .collect();
    plot(title, x_label, y_label, &series)
}

/// Computes everything for `cfg` without touching the filesystem.
pub fn compute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let svg = cfg.format == Format::Svg;
    let (body, notes, passed) = match cfg.command {
        Command::Spectrum => {
            let (t, notes) = spectrum_table(cfg)?;
            let body = if svg {
                figure(&t, "Bound-state spectrum", "m", "E_m", Style::Markers)
            } else {
                t.to_csv()
            };
            (body, notes, true)
        }
        Command::PhaseShift => {
            let t = phase_shift_table(cfg)?;
            let body = if svg {
                figure(&t, "Scattering phase shift", "y = λ/k", "δ/π", Style::Line)
            } else {
                t.to_csv()
            };
            (body, Vec::new(), true)
        }
        Command::Reconstruct => {
            let (t, notes) = reconstruct_table(cfg)?;
            let body = if svg {
                figure(&t, "Potential function", "x", "V(x)", Style::Line)
            } else {
                t.to_csv()
            };
            (body, notes, true)
        }
        Command::Matrices => (matrices_table(cfg)?.to_csv(), Vec::new(), true),
        Command::Verify => {
            let (text, passed) = verify_report(cfg)?;
            (text, Vec::new(), passed)
        }
    };
    Ok(Outcome {
        body,
        notes,
        passed,
    })
}

/// Computes, then writes the body to `--output` or returns it for stdout.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let outcome = compute(cfg)?;
    match &cfg.output {
        Some(path) => {
            write_atomically(path, &outcome.body)?;
            Ok(Outcome {
                body: String::new(),
                ..outcome
            })
        }
        None => Ok(outcome),
    }
}
