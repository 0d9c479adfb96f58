//! Data behind the three figures, all at a fixed thermal parameter
//! (default `n = 10`) with time in units of `1/γ₀`.
//!
//! | figure | file                      | columns                                         |
//! |--------|---------------------------|-------------------------------------------------|
//! | 1      | `fig1_single_surface.csv` | `theta,tau,distance,normalized`                 |
//! | 2      | `fig2_werner.csv`         | `c,tau,distance,normalized`                     |
//! | 3      | `fig3_comparison.csv`     | `tau,entangled,single_ground,equilibrium`       |
//!
//! Figure 3 columns are normalized distances: Werner `c = 1`, a single probe
//! starting in the ground state (`θ = π`), and the equilibrium reference 1.

use std::path::{Path, PathBuf};

use unruh_probe::analysis::{self, FixedParams, Quantity, SweepGrid, SweepVariable};
use unruh_probe::discrimination;

use crate::commands::{write_file, CliError};
use crate::csv::{param, Table};

pub const TAU_MAX: f64 = 3.0;
pub const TAU_POINTS: usize = 301;
/// Figure 1 uses a coarser time grid since it is a surface.
pub const SURFACE_TAU_POINTS: usize = 151;
pub const THETA_POINTS: usize = 37;
/// Werner parameters for figure 2: the separability boundary, two values
/// around the advantage threshold, and the maximally entangled state.
pub const WERNER_SET: [f64; 5] = [1.0 / 3.0, 0.6, 0.88, 0.9, 1.0];

pub fn file_name(which: u8) -> &'static str {
    match which {
        1 => "fig1_single_surface.csv",
        2 => "fig2_werner.csv",
        _ => "fig3_comparison.csv",
    }
}

fn sweep_tau(points: usize, fixed: FixedParams<f64>, quantity: Quantity) -> Result<Vec<(f64, f64)>, CliError> {
    let grid = SweepGrid::new(SweepVariable::Tau, 0.0, TAU_MAX, points, fixed).map_err(runtime)?;
    analysis::sweep(&grid, quantity)
        .into_iter()
        .map(|(x, v)| v.map(|v| (x, v)).map_err(runtime))
        .collect()
}

fn runtime(e: unruh_probe::Error) -> CliError {
    CliError::Domain { flag: "--n", source: e }
}

/// Renders figure `which` as CSV text.
pub fn render(which: u8, n: f64, precision: usize, stamp: bool) -> Result<String, CliError> {
    // reject n = 1 before sweeping: every column is normalized
    discrimination::normalize(1.0, n).map_err(runtime)?;
    let norm = |d: f64| d / discrimination::equilibrium_distance(n);
    let base = FixedParams { tau: 0.0, theta: 0.0, c: 0.0, n };
    let header = [
        ("figure", which.to_string()),
        ("n", param(n)),
        ("tau-max", param(TAU_MAX)),
    ];
    let mut t = Table::new("figure", &header, precision, stamp);

    match which {
        1 => {
            t.comment("single probe, initial state (sin theta, 0, cos theta)");
            t.columns(&["theta", "tau", "distance", "normalized"]);
            for theta in analysis::linspace(0.0, std::f64::consts::PI, THETA_POINTS) {
                let rows = sweep_tau(SURFACE_TAU_POINTS, FixedParams { theta, ..base }, Quantity::SingleDistance)?;
                for (gt, d) in rows {
                    t.row(&[Some(theta), Some(gt), Some(d), Some(norm(d))]);
                }
            }
        }
        2 => {
            t.comment("Werner initial states c1 = -c2 = c3 = c");
            t.columns(&["c", "tau", "distance", "normalized"]);
            for c in WERNER_SET {
                for (gt, d) in sweep_tau(TAU_POINTS, FixedParams { c, ..base }, Quantity::BipartiteDistance)? {
                    t.row(&[Some(c), Some(gt), Some(d), Some(norm(d))]);
                }
            }
        }
        3 => {
            t.comment("normalized distances: Werner c = 1, single probe from the ground state (theta = pi), equilibrium");
            t.columns(&["tau", "entangled", "single_ground", "equilibrium"]);
            let pair = sweep_tau(TAU_POINTS, FixedParams { c: 1.0, ..base }, Quantity::BipartiteDistance)?;
            let single = sweep_tau(
                TAU_POINTS,
                FixedParams { theta: std::f64::consts::PI, ..base },
                Quantity::SingleDistance,
            )?;
            for ((gt, dp), (_, ds)) in pair.into_iter().zip(single) {
                t.row(&[Some(gt), Some(norm(dp)), Some(norm(ds)), Some(1.0)]);
            }
        }
        _ => return Err(CliError::Usage(format!("--which must be 1, 2 or 3, got {which}"))),
    }
    Ok(t.into_string())
}

/// Writes figure `which` into `dir`, creating it if needed.
pub fn write_figure(which: u8, dir: &Path, n: f64, precision: usize, stamp: bool) -> Result<Vec<PathBuf>, CliError> {
    let text = render(which, n, precision, stamp)?;
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Runtime(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(file_name(which));
    write_file(&path, &text)?;
    Ok(vec![path])
}
