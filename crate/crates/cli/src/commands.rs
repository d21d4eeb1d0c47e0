// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dasim::fermion::{
    exact_evolution, jordan_wigner, reorder_unitary, spinful_qubit_hamiltonian,
    spinful_reorder_unitary, ModeOrder,
};
use dasim::network::{
    circuit_unitary, trotter_step_spinful, trotter_step_spinless, Backend, TrotterStep,
};
use dasim::noise::{
    cnot_fidelity_closed_form, cnot_infidelity_curve, fit_polynomial, infidelity_series,
    trotter_fidelity_sweep, write_csv, NoiseKind, SweepBackend, SweepConfig, SweepPoint,
    SweepVariable, CSV_HEADER,
};
use dasim::qcore::unitary_distance_up_to_phase;
use dasim::refocus::{
    compile_target, entangler_count, verify_schedule, RefocusOptions, RefocusSchedule, Regime,
};
use dasim::topology::{CouplingGraph, TopologyKind};

use crate::config::{Model, RunConfig};
use crate::{BackendArg, CliError, Common, Preset};

/// Largest register for the exact comparison in `trotter`.
const EXACT_REPORT_MAX_QUBITS: usize = 10;

fn load(common: &Common) -> Result<RunConfig, CliError> {
    let mut config = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        config.override_seed(seed);
    }
    Ok(config)
}

fn out_path(common: &Common, config: &RunConfig) -> Option<PathBuf> {
    common.out.clone().or_else(|| config.output.clone())
}

/// Writes `text` to `path`, or to stdout without one.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn compile(common: &Common) -> Result<(), CliError> {
    let config = load(common)?;
    let graph = config.topology()?;
    let target = config.compile_target(&graph)?;
    let options = RefocusOptions { min_order: config.min_order() };
    let compiled = compile_target(&graph, &target, &options)?;
    emit(out_path(common, &config).as_deref(), &compiled.schedule.to_text())?;
    for (k, w) in compiled.windows.iter().enumerate() {
        eprintln!(
            "window {k}: duration {} order {} destroyed {:?}",
            w.duration, w.order, w.destroyed_pairs
        );
    }
    let report = verify_schedule(&compiled.schedule, &graph, &target)?;
    eprint!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Verification(report.to_string()))
    }
}

pub fn verify(common: &Common, path: &Path) -> Result<(), CliError> {
    let config = load(common)?;
    let graph = config.topology()?;
    let target = config.compile_target(&graph)?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let schedule = RefocusSchedule::from_text(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let report = verify_schedule(&schedule, &graph, &target)?;
    let mut text = report.to_string();
    if let Some(p) = &common.out {
        fs::write(p, &text)?;
    } else {
        print!("{text}");
    }
    if report.passed() {
        Ok(())
    } else {
        text.truncate(text.trim_end().len());
        Err(CliError::Verification(text))
    }
}

fn backend_for(
    arg: Option<BackendArg>,
    config: &RunConfig,
    model: &Model,
) -> Result<Backend, CliError> {
    let name = match arg {
        Some(BackendArg::Da) => "da",
        Some(BackendArg::Digital) => "digital",
        Some(BackendArg::Fsg) => "fsg",
        None => config.backend.as_deref().unwrap_or("da"),
    };
    match name {
        "fsg" => Ok(Backend::Fsg),
        "digital" => Ok(Backend::Digital),
        "da" => {
            let device = match (&config.topology, model) {
                (Some(_), _) => config.topology()?,
                (None, Model::Spinless(h)) => CouplingGraph::chain(h.n_modes()),
                (None, Model::Spinful(h)) => CouplingGraph::ladder(h.n_sites()),
            };
            Ok(Backend::digital_analog(device))
        }
        other => Err(CliError::Config(format!(
            "backend: unknown backend `{other}`; use da, digital or fsg"
        ))),
    }
}

fn build_step(model: &Model, dt: f64, backend: &Backend) -> Result<TrotterStep, CliError> {
    Ok(match model {
        Model::Spinless(h) => trotter_step_spinless(h, dt, backend)?,
        Model::Spinful(h) => trotter_step_spinful(h, dt, backend)?,
    })
}

/// Distance between one step and exact evolution followed by the step's
/// mode reordering.
fn step_error(model: &Model, dt: f64, backend: &Backend) -> Result<f64, CliError> {
    let step = build_step(model, dt, backend)?;
    let u = circuit_unitary(&step.circuit)?;
    let (h, reorder) = match model {
        Model::Spinless(h) => {
            let id = ModeOrder::identity(h.n_modes());
            (jordan_wigner(h, &id)?, reorder_unitary(&id, &step.final_order)?)
        }
        Model::Spinful(h) => {
            let id = ModeOrder::identity(h.n_sites());
            (spinful_qubit_hamiltonian(h, &id)?, spinful_reorder_unitary(&id, &step.final_order)?)
        }
    };
    let exact = exact_evolution(&h, dt)?;
    Ok(unitary_distance_up_to_phase(u.matrix(), &(reorder.matrix() * exact.matrix())))
}

pub fn trotter(common: &Common, backend: Option<BackendArg>) -> Result<(), CliError> {
    let config = load(common)?;
    let model = config.hamiltonian()?;
    let dt = config.dt()?;
    let backend = backend_for(backend, &config, &model)?;
    let step = build_step(&model, dt, &backend)?;
    emit(out_path(common, &config).as_deref(), &step.circuit.to_text())?;
    let c = &step.circuit;
    eprintln!(
        "{} qubits: {} analog blocks, {} CNOTs, {} FSGs; final mode order {:?}",
        c.n_qubits(),
        c.analog_block_count(),
        c.cnot_count(),
        c.fsg_count(),
        step.final_order.modes()
    );
    if model.n_qubits() > EXACT_REPORT_MAX_QUBITS {
        eprintln!("exact comparison skipped: {} qubits > {EXACT_REPORT_MAX_QUBITS}", model.n_qubits());
        return Ok(());
    }
    let coarse = step_error(&model, dt, &backend)?;
    let fine = step_error(&model, dt / 2.0, &backend)?;
    eprintln!("distance to exact evolution: {coarse:.6e} at dt = {dt}, {fine:.6e} at dt/2");
    if fine > 0.0 {
        eprintln!("ratio {:.3} (step error scales as dt^2, so 4 is expected)", coarse / fine);
    }
    Ok(())
}

fn sweep_backend(arg: Option<BackendArg>) -> Result<Option<SweepBackend>, CliError> {
    match arg {
        None => Ok(None),
        Some(BackendArg::Da) => Ok(Some(SweepBackend::DigitalAnalog)),
        Some(BackendArg::Digital) => Ok(Some(SweepBackend::Digital)),
        Some(BackendArg::Fsg) => Err(CliError::Config("sweeps run on da or digital backends".into())),
    }
}

fn csv(points: &[SweepPoint]) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_csv(points, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv is ascii"))
}

/// Preset scale, overridable by a `[sweep]` section.
fn preset_config(config: &RunConfig, variable: SweepVariable, qubits: usize, grid: Vec<f64>) -> SweepConfig {
    let mut c = SweepConfig::new(qubits, SweepBackend::DigitalAnalog, variable, grid);
    c.n_states = 20;
    c.seed = config.seed.unwrap_or(0);
    if let Some(s) = &config.sweep {
        c.n_qubits = s.qubits;
        c.grid = s.grid.clone();
        c.n_states = s.n_states.unwrap_or(c.n_states);
        c.seed = s.seed.unwrap_or(c.seed);
        c.bound = s.bound.unwrap_or(c.bound);
        c.dt = s.dt.unwrap_or(c.dt);
    }
    c
}

pub fn sweep(common: &Common, preset: Option<Preset>, backend: Option<BackendArg>) -> Result<(), CliError> {
    let config = load(common)?;
    let backend = sweep_backend(backend)?;
    let out = out_path(common, &config);
    match preset {
        None => {
            let mut c = config.sweep()?;
            if let Some(b) = backend {
                c.backend = b;
            }
            let points = trotter_fidelity_sweep(&c)?;
            emit(out.as_deref(), &csv(&points)?)
        }
        Some(Preset::Cnot) => sweep_cnot(out.as_deref()),
        Some(Preset::Omega) => {
            let grid = (0..=10).map(|k| 0.02 * k as f64).collect();
            let mut c = preset_config(&config, SweepVariable::Omega, 8, grid);
            if let Some(b) = backend {
                c.backend = b;
            }
            sweep_omega(&c, out.as_deref())
        }
        Some(Preset::Noise) => {
            let grid = (0..=5).map(|k| 0.0004 * k as f64).collect();
            let c = preset_config(&config, SweepVariable::Noise(NoiseKind::Depolarizing), 6, grid);
            sweep_noise(&c, out.as_deref().unwrap_or(Path::new(".")))
        }
    }
}

fn sweep_cnot(out: Option<&Path>) -> Result<(), CliError> {
    let ratios: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
    let curve = cnot_infidelity_curve(&ratios)?;
    let points: Vec<SweepPoint> = curve
        .iter()
        .map(|&(r, f)| SweepPoint {
            param: r,
            mean_fidelity: f,
            stderr: 0.0,
            n_states: 1,
            seed: 0,
        })
        .collect();
    emit(out, &csv(&points)?)?;
    let worst = curve
        .iter()
        .map(|&(r, f)| (f - cnot_fidelity_closed_form(r)).abs())
        .fold(0.0, f64::max);
    eprintln!("max deviation from cos^2(pi r / 4): {worst:.3e}");
    if worst < 1e-10 {
        Ok(())
    } else {
        Err(CliError::Verification(format!("cnot curve deviates by {worst:.3e}")))
    }
}

fn sweep_omega(c: &SweepConfig, out: Option<&Path>) -> Result<(), CliError> {
    let points = trotter_fidelity_sweep(c)?;
    emit(out, &csv(&points)?)?;
    let (xs, ys) = infidelity_series(&points);
    let even = fit_polynomial(&xs, &ys, &[2, 4])?;
    let free = fit_polynomial(&xs, &ys, &[0, 1, 2, 3, 4])?;
    let c2 = even.coefficient(2).unwrap_or(0.0);
    let c1 = free.coefficient(1).unwrap_or(0.0);
    let omega_max = xs.iter().cloned().fold(0.0, f64::max);
    eprintln!(
        "1 - F = c2 w^2 + c4 w^4: c2 = {c2:.6}, c4 = {:.6}, R^2 = {:.6}",
        even.coefficient(4).unwrap_or(0.0),
        even.r_squared
    );
    eprintln!("free fit linear term {c1:.3e} (c2 * w_max = {:.3e})", c2 * omega_max);
    if c1.abs() < 0.1 * c2.abs() * omega_max {
        eprintln!("quadratic leading behaviour: pass");
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "linear term {c1:.3e} is not small against c2 * w_max = {:.3e}",
            c2 * omega_max
        )))
    }
}

/// Two CSV files, `da.csv` and `digital.csv`, with a trailing `channel`
/// column so the three channels share one file per backend.
fn sweep_noise(base: &SweepConfig, dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let mut slopes = Vec::new();
    for backend in [SweepBackend::DigitalAnalog, SweepBackend::Digital] {
        let mut text = format!("{CSV_HEADER},channel\n");
        for kind in NoiseKind::ALL {
            let mut c = base.clone();
            c.backend = backend;
            c.variable = SweepVariable::Noise(kind);
            let points = trotter_fidelity_sweep(&c)?;
            for line in csv(&points)?.lines().skip(1) {
                text.push_str(&format!("{line},{}\n", kind.name()));
            }
            let (xs, ys) = infidelity_series(&points);
            let fit = fit_polynomial(&xs, &ys, &[0, 1])?;
            let slope = fit.coefficient(1).unwrap_or(0.0);
            eprintln!("{} {}: slope {slope:.4}, R^2 {:.6}", backend.name(), kind.name(), fit.r_squared);
            slopes.push((backend, kind, slope));
        }
        let path = dir.join(format!("{}.csv", backend.name()));
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    for kind in NoiseKind::ALL {
        let get = |b| slopes.iter().find(|s| s.0 == b && s.1 == kind).map_or(0.0, |s| s.2);
        let (da, dig) = (get(SweepBackend::DigitalAnalog), get(SweepBackend::Digital));
        if dig > 0.0 {
            eprintln!("{}: da/digital slope ratio {:.3}", kind.name(), da / dig);
        }
    }
    Ok(())
}

pub fn counts(kind: &str, n: usize, spread_seed: Option<u64>) -> Result<(), CliError> {
    let kind: TopologyKind = kind
        .parse()
        .map_err(|e: dasim::Error| CliError::Config(e.to_string()))?;
    let regime = match spread_seed {
        Some(seed) => Regime::Spread { seed },
        None => Regime::Uniform,
    };
    let c = entangler_count(kind, n, regime)?;
    let closed = c.closed_form.map_or("-".to_string(), |v| v.to_string());
    println!("kind\tn\tformula\tclosed_form\tmeasured\tdigital_fsg\tdigital_cnot");
    println!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        kind.name(),
        n,
        c.scaling,
        closed,
        c.measured,
        c.fsg_count,
        c.cnot_count
    );
    if c.matches() || matches!(regime, Regime::Spread { .. }) {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "measured {} entanglers, formula {} gives {closed}",
            c.measured, c.scaling
        )))
    }
}
