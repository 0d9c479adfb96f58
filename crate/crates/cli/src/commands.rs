use std::io::Write;
use std::path::Path;

use unruh_probe::analysis::{self, ExtremumKind};
use unruh_probe::detector::{self, thermal_params, thermal_params_from_temperature};
use unruh_probe::discrimination;
use unruh_probe::{BlochVector, DetectorParams, Error, XStateCoeffs};

use crate::csv::{param, Table};
use crate::{AnalyzeArgs, Command, DistanceArgs, EvolveArgs, Mode, OutputArgs, ParamsArgs, StateArgs, What};

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing flags; exit code 2.
    Usage(String),
    /// I/O and other runtime failures; exit code 1.
    Runtime(String),
    /// A value outside its domain, attributed to a flag; exit code 1.
    Domain { flag: &'static str, source: Error },
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
            CliError::Domain { flag, source } => write!(f, "{flag}: {source}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) | CliError::Domain { .. } => 1,
        }
    }
}

/// Attributes a library error to the flag most likely responsible.
fn at(flag: &'static str) -> impl Fn(Error) -> CliError {
    move |source| {
        let flag = match &source {
            Error::Domain { name, .. } => match *name {
                "n" => "--n",
                "theta" => "--theta",
                "gamma0" => "--gamma0",
                "omega0" => "--omega0",
                "a" => "--a",
                "T" => "--T",
                "c" => "--werner",
                "gamma0*tau" | "tau" => "--tau-max",
                _ => flag,
            },
            Error::InvalidXState(_) => "--werner/--c1/--c2/--c3",
            Error::StepTooLarge(_) => "--oracle",
            Error::UndefinedNormalization => "--normalized",
            _ => flag,
        };
        CliError::Domain { flag, source }
    }
}

pub(crate) fn dispatch(command: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Params(a) => emit(&a.output, params(a)?, stdout),
        Command::Evolve(a) => emit(&a.output, evolve(a)?, stdout),
        Command::Distance(a) => emit(&a.output, distance(a)?, stdout),
        Command::Analyze(a) => emit(&a.output, analyze(a)?, stdout),
        Command::Figure(a) => {
            let written = crate::figure::write_figure(a.which, &a.out, a.n, a.precision, a.stamp)?;
            for path in written {
                writeln!(stdout, "{}", path.display()).map_err(|e| CliError::Runtime(e.to_string()))?;
            }
            Ok(())
        }
    }
}

fn emit(output: &OutputArgs, text: String, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_file(path, &text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Runtime(format!("cannot write output: {e}"))),
    }
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn time_grid(tau_max: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    if !tau_max.is_finite() || tau_max < 0.0 {
        return Err(CliError::Domain {
            flag: "--tau-max",
            source: Error::Domain {
                name: "tau-max",
                value: tau_max,
                expected: ">= 0",
            },
        });
    }
    Ok(analysis::linspace(0.0, tau_max, points))
}

fn params(a: &ParamsArgs) -> Result<String, CliError> {
    let p = if let Some(acc) = a.a {
        let t = thermal_params(acc, a.omega0).map_err(at("--a"))?;
        DetectorParams::from_acceleration(acc, a.omega0, a.gamma0)
            .map(|p| (p, t.temperature))
            .map_err(at("--a"))?
    } else if let Some(temp) = a.temperature {
        let t = thermal_params_from_temperature(temp, a.omega0).map_err(at("--T"))?;
        let acc = std::f64::consts::TAU * temp;
        DetectorParams::from_acceleration(acc, a.omega0, a.gamma0)
            .map(|p| (p, t.temperature))
            .map_err(at("--T"))?
    } else {
        let n = a.n.expect("clap enforces one input");
        let p = DetectorParams::new(a.omega0, a.gamma0, n).map_err(at("--n"))?;
        (p, p.temperature())
    };
    let (p, temperature) = p;
    let k = detector::kossakowski(&p);

    let mut header = vec![("omega0", param(a.omega0)), ("gamma0", param(a.gamma0))];
    if let Some(v) = a.a {
        header.push(("a", param(v)));
    }
    if let Some(v) = a.temperature {
        header.push(("T", param(v)));
    }
    if let Some(v) = a.n {
        header.push(("n", param(v)));
    }
    let mut t = Table::new("params", &header, a.output.precision, a.output.stamp);
    t.columns(&["quantity", "value"]);
    for (name, v) in [
        ("a", std::f64::consts::TAU * temperature),
        ("T", temperature),
        ("N_U", p.mean_particle_number()),
        ("n", p.n()),
        ("A", k.a),
        ("B", k.b),
        ("omega0", p.omega0()),
        ("gamma0", p.gamma0()),
        ("mu", p.coupling()),
    ] {
        t.labeled_row(name, &[Some(v)]);
    }
    Ok(t.into_string())
}

fn evolve(a: &EvolveArgs) -> Result<String, CliError> {
    let p = DetectorParams::new(a.omega0, a.gamma0, a.n).map_err(at("--n"))?;
    if !(0.0..=std::f64::consts::PI).contains(&a.theta) {
        return Err(at("--theta")(Error::Domain {
            name: "theta",
            value: a.theta,
            expected: "within [0, pi]",
        }));
    }
    let grid = time_grid(a.tau_max, a.points)?;
    let r0 = BlochVector::from_angle(a.theta);

    let mut header = vec![
        ("theta", param(a.theta)),
        ("n", param(a.n)),
        ("gamma0", param(a.gamma0)),
        ("omega0", param(a.omega0)),
        ("tau-max", param(a.tau_max)),
        ("points", a.points.to_string()),
    ];
    if let Some(steps) = a.oracle {
        header.push(("oracle", steps.to_string()));
    }
    let mut t = Table::new("evolve", &header, a.output.precision, a.output.stamp);
    t.comment("tau is gamma0*tau; oracle_error is max |analytic - RK4| over components");
    let mut cols = vec!["tau", "r1", "r2", "r3"];
    if a.oracle.is_some() {
        cols.push("oracle_error");
    }
    t.columns(&cols);

    for gt in grid {
        let tau = gt / a.gamma0;
        let r = detector::evolve_bloch(&r0, &p, tau).map_err(at("--tau-max"))?;
        let mut cells = vec![Some(gt), Some(r.r1), Some(r.r2), Some(r.r3)];
        if let Some(steps) = a.oracle {
            let num = detector::lindblad_oracle(&r0, &p, tau, steps).map_err(at("--oracle"))?;
            let err = [(r.r1 - num.r1).abs(), (r.r2 - num.r2).abs(), (r.r3 - num.r3).abs()]
                .into_iter()
                .fold(0.0, f64::max);
            cells.push(Some(err));
        }
        t.row(&cells);
    }
    Ok(t.into_string())
}

pub(crate) fn xstate_from(state: &StateArgs) -> Result<Option<XStateCoeffs>, CliError> {
    let flag = "--werner/--c1/--c2/--c3";
    if let Some(c) = state.werner {
        return XStateCoeffs::werner(c).map(Some).map_err(at(flag));
    }
    match (state.c1, state.c2, state.c3) {
        (Some(c1), Some(c2), Some(c3)) => XStateCoeffs::initial(c1, c2, c3).map(Some).map_err(at(flag)),
        _ => Ok(None),
    }
}

fn state_header(state: &StateArgs, header: &mut Vec<(&'static str, String)>) {
    for (k, v) in [
        ("theta", state.theta),
        ("werner", state.werner),
        ("c1", state.c1),
        ("c2", state.c2),
        ("c3", state.c3),
    ] {
        if let Some(v) = v {
            header.push((k, param(v)));
        }
    }
}

fn distance(a: &DistanceArgs) -> Result<String, CliError> {
    let grid = time_grid(a.tau_max, a.points)?;
    if a.normalized && a.n == 1.0 {
        return Err(at("--normalized")(Error::UndefinedNormalization));
    }
    enum Probe {
        Single(f64),
        Pair(XStateCoeffs),
    }
    let probe = match a.mode {
        Mode::Single => Probe::Single(
            a.state
                .theta
                .ok_or_else(|| CliError::Usage("--mode single requires --theta".into()))?,
        ),
        Mode::Bipartite => Probe::Pair(
            xstate_from(&a.state)?
                .ok_or_else(|| CliError::Usage("--mode bipartite requires --werner or --c1/--c2/--c3".into()))?,
        ),
    };

    let mut header = vec![(
        "mode",
        match a.mode {
            Mode::Single => "single".to_string(),
            Mode::Bipartite => "bipartite".to_string(),
        },
    )];
    state_header(&a.state, &mut header);
    header.extend([
        ("n", param(a.n)),
        ("tau-max", param(a.tau_max)),
        ("points", a.points.to_string()),
        ("normalized", a.normalized.to_string()),
    ]);
    let mut t = Table::new("distance", &header, a.output.precision, a.output.stamp);
    t.comment("tau is gamma0*tau; distance is the trace norm; normalized = distance / (1 - 1/n)");
    let with_norm = a.n > 1.0;
    if with_norm {
        t.columns(&["tau", "distance", "normalized", "p_error"]);
    } else {
        t.columns(&["tau", "distance", "p_error"]);
    }

    for gt in grid {
        let r = match &probe {
            Probe::Single(theta) => discrimination::single_distance(*theta, gt, a.n),
            Probe::Pair(c0) => discrimination::bipartite_distance(c0, a.n, gt),
        }
        .map_err(at("--n"))?;
        if with_norm {
            t.row(&[Some(gt), Some(r.distance), r.normalized, Some(r.error_probability)]);
        } else {
            t.row(&[Some(gt), Some(r.distance), Some(r.error_probability)]);
        }
    }
    Ok(t.into_string())
}

fn analyze(a: &AnalyzeArgs) -> Result<String, CliError> {
    let what = match a.what {
        What::Zero => "zero",
        What::Kink => "kink",
        What::Max => "max",
        What::Threshold => "threshold",
    };
    let mut header = vec![("what", what.to_string())];
    state_header(&a.state, &mut header);
    header.extend([
        ("n", param(a.n)),
        ("tau-min", param(a.tau_min)),
        ("tau-max", param(a.tau_max)),
    ]);
    let mut t = Table::new("analyze", &header, a.output.precision, a.output.stamp);
    t.columns(&["kind", "location", "value", "normalized"]);

    let normalized = |v: f64| discrimination::normalize(v, a.n).ok();
    let bracket_err = |lo: f64, hi: f64| {
        if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
            Err(CliError::Domain {
                flag: "--tau-min/--tau-max",
                source: Error::Domain {
                    name: "bracket",
                    value: hi - lo,
                    expected: "a nonempty interval within [0, inf)",
                },
            })
        } else {
            Ok(())
        }
    };

    match a.what {
        What::Zero => {
            let theta = a
                .state
                .theta
                .ok_or_else(|| CliError::Usage("--what zero requires --theta".into()))?;
            bracket_err(a.tau_min, a.tau_max)?;
            match analysis::find_zero_crossing_in(theta, a.n, a.tau_min, a.tau_max).map_err(at("--theta"))? {
                Some(z) => t.labeled_row("zero", &[Some(z.location), Some(z.value), normalized(z.value)]),
                None => {
                    t.comment("result = no crossing");
                    t.labeled_row("no crossing", &[None, None, None]);
                }
            }
        }
        What::Kink => {
            let c = a
                .state
                .werner
                .ok_or_else(|| CliError::Usage("--what kink requires --werner".into()))?;
            bracket_err(a.tau_min, a.tau_max)?;
            match analysis::find_sudden_change_in(c, a.n, a.tau_min, a.tau_max).map_err(at("--werner"))? {
                Some(k) => t.labeled_row("kink", &[Some(k.location), Some(k.value), normalized(k.value)]),
                None => {
                    t.comment("result = no crossing");
                    t.labeled_row("no crossing", &[None, None, None]);
                }
            }
        }
        What::Max => {
            let c0 = xstate_from(&a.state)?
                .ok_or_else(|| CliError::Usage("--what max requires --werner or --c1/--c2/--c3".into()))?;
            bracket_err(a.tau_min, a.tau_max)?;
            let m = analysis::maximize_distance(&c0, a.n, (a.tau_min, a.tau_max)).map_err(at("--n"))?;
            let label = match m.kind {
                ExtremumKind::Plateau => "plateau",
                _ => "max",
            };
            t.labeled_row(label, &[Some(m.location), Some(m.value), normalized(m.value)]);
        }
        What::Threshold => {
            let th = analysis::advantage_threshold(a.n).map_err(at("--n"))?;
            t.labeled_row("threshold", &[Some(th.location), Some(th.value), None]);
        }
    }
    Ok(t.into_string())
}
