// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Error models and the fidelity sweep harness.
//!
//! Two error sources are modelled: couplings that differ from the values a
//! circuit was compiled for, and single-qubit Kraus channels applied to
//! every qubit after each entangler application.

use std::fmt;
use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fermion::random_hamiltonian;
use crate::network::{
    synthesize_cnot, trotter_step_spinless, Backend, Circuit, Simulator, TwoQubitGate,
};
use crate::qcore::{
    apply_1q_channel, derive_seed, haar_random_state, pauli_x, pauli_y, pauli_z, process_fidelity,
    seeded_rng, state_fidelity, Mat2, QuantumState, C64, ONE, ZERO,
};
use crate::topology::CouplingGraph;

/// Single-qubit channel families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    Depolarizing,
    AmplitudeDamping,
    PhaseDamping,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [
        NoiseKind::Depolarizing,
        NoiseKind::AmplitudeDamping,
        NoiseKind::PhaseDamping,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::Depolarizing => "depolarizing",
            NoiseKind::AmplitudeDamping => "amplitude",
            NoiseKind::PhaseDamping => "phase",
        }
    }

    pub fn with_parameter(self, value: f64) -> NoiseModel {
        match self {
            NoiseKind::Depolarizing => NoiseModel::Depolarizing(value),
            NoiseKind::AmplitudeDamping => NoiseModel::AmplitudeDamping(value),
            NoiseKind::PhaseDamping => NoiseModel::PhaseDamping(value),
        }
    }
}

impl std::str::FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "depolarizing" => Ok(NoiseKind::Depolarizing),
            "amplitude" | "amplitude-damping" => Ok(NoiseKind::AmplitudeDamping),
            "phase" | "phase-damping" => Ok(NoiseKind::PhaseDamping),
            other => Err(Error::domain(format!("unknown noise channel `{other}`"))),
        }
    }
}

/// Channel applied to every qubit after each entangler application.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum NoiseModel {
    #[default]
    None,
    /// `(1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)`.
    Depolarizing(f64),
    /// `E0 = diag(1, sqrt(1-g))`, `E1 = sqrt(g) |0><1|`.
    AmplitudeDamping(f64),
    /// `E0 = diag(1, sqrt(1-l))`, `E1 = diag(0, sqrt(l))`.
    PhaseDamping(f64),
}

fn check_probability(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("{name} must lie in [0, 1], got {x}")));
    }
    Ok(())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl NoiseModel {
    pub fn is_none(&self) -> bool {
        matches!(self, NoiseModel::None)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            NoiseModel::None => Ok(()),
            NoiseModel::Depolarizing(p) => check_probability("depolarizing p", p),
            NoiseModel::AmplitudeDamping(g) => check_probability("amplitude damping gamma", g),
            NoiseModel::PhaseDamping(l) => check_probability("phase damping lambda", l),
        }
    }

    /// Kraus operators; the identity alone for [`NoiseModel::None`].
    pub fn kraus(&self) -> Vec<Mat2> {
        match *self {
            NoiseModel::None => vec![[[ONE, ZERO], [ZERO, ONE]]],
            NoiseModel::Depolarizing(p) => {
                let a = real((1.0 - p).sqrt());
                let b = (p / 3.0).sqrt();
                let scale = |m: Mat2| m.map(|row| row.map(|z| z * b));
                vec![
                    [[a, ZERO], [ZERO, a]],
                    scale(pauli_x()),
                    scale(pauli_y()),
                    scale(pauli_z()),
                ]
            }
            NoiseModel::AmplitudeDamping(g) => vec![
                [[ONE, ZERO], [ZERO, real((1.0 - g).sqrt())]],
                [[ZERO, real(g.sqrt())], [ZERO, ZERO]],
            ],
            NoiseModel::PhaseDamping(l) => vec![
                [[ONE, ZERO], [ZERO, real((1.0 - l).sqrt())]],
                [[ZERO, ZERO], [ZERO, real(l.sqrt())]],
            ],
        }
    }
}

fn apply_channel(state: &QuantumState, qubit: usize, model: NoiseModel) -> Result<QuantumState> {
    model.validate()?;
    let QuantumState::Mixed { n_qubits, rho } = state else {
        return Err(Error::domain("noise channels act on density matrices"));
    };
    if qubit >= *n_qubits {
        return Err(Error::domain(format!("qubit {qubit} out of range")));
    }
    let mut rho = rho.clone();
    apply_1q_channel(&mut rho, *n_qubits, qubit, &model.kraus());
    Ok(QuantumState::Mixed {
        n_qubits: *n_qubits,
        rho,
    })
}

pub fn apply_depolarizing(state: &QuantumState, qubit: usize, p: f64) -> Result<QuantumState> {
    apply_channel(state, qubit, NoiseModel::Depolarizing(p))
}

pub fn apply_amplitude_damping(state: &QuantumState, qubit: usize, gamma: f64) -> Result<QuantumState> {
    apply_channel(state, qubit, NoiseModel::AmplitudeDamping(gamma))
}

pub fn apply_phase_damping(state: &QuantumState, qubit: usize, lambda: f64) -> Result<QuantumState> {
    apply_channel(state, qubit, NoiseModel::PhaseDamping(lambda))
}

/// Coupling deviations `alpha'_pq` drawn for one disorder realization.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingPerturbation {
    pub omega: f64,
    /// `(p, q, alpha'_pq)` in edge order.
    pub deviations: Vec<(usize, usize, f64)>,
}

/// Per-edge values uniform on `[-1, 1]`, in edge order.
pub fn disorder_direction(graph: &CouplingGraph, seed: u64) -> Vec<f64> {
    let mut rng = seeded_rng(seed);
    graph
        .edges()
        .map(|_| 2.0 * rng.random::<f64>() - 1.0)
        .collect()
}

/// `alpha_pq + omega * u_pq` with `u` from [`disorder_direction`], so each
/// deviation is uniform on `[-omega, omega]`. Requires `omega < min alpha`.
pub fn perturb_couplings(
    graph: &CouplingGraph,
    omega: f64,
    seed: u64,
) -> Result<(CouplingGraph, CouplingPerturbation)> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::domain(format!("omega must be >= 0, got {omega}")));
    }
    if let Some(min) = graph.min_coupling() {
        if omega >= min {
            return Err(Error::domain(format!(
                "omega = {omega} would allow non-positive couplings (min alpha = {min})"
            )));
        }
    }
    let u = disorder_direction(graph, seed);
    let deviations: Vec<(usize, usize, f64)> = graph
        .edges()
        .zip(&u)
        .map(|(e, &x)| (e.p, e.q, omega * x))
        .collect();
    let mut k = 0;
    let perturbed = graph.with_couplings(|e| {
        let v = e.alpha + deviations[k].2;
        k += 1;
        v
    })?;
    Ok((perturbed, CouplingPerturbation { omega, deviations }))
}

/// Process fidelity of a CNOT compiled for coupling `alpha` but run with
/// `alpha (1 + r)`, for each ratio `r = alpha'/alpha`.
pub fn cnot_infidelity_curve(ratios: &[f64]) -> Result<Vec<(f64, f64)>> {
    let fragment = synthesize_cnot();
    let ideal = crate::qcore::mat4_to_matrix(&TwoQubitGate::Cnot.matrix());
    ratios
        .iter()
        .map(|&r| {
            if !(r.is_finite() && r > -1.0) {
                return Err(Error::domain(format!("ratio {r} leaves a non-positive coupling")));
            }
            let actual = CouplingGraph::from_edges(2, [(0, 1, 1.0 + r)])?;
            let u = Simulator::new().with_device(actual).unitary(&fragment)?;
            Ok((r, process_fidelity(u.matrix(), &ideal)?))
        })
        .collect()
}

/// Closed form `cos^2((pi/4) r)` of [`cnot_infidelity_curve`].
pub fn cnot_fidelity_closed_form(ratio: f64) -> f64 {
    (std::f64::consts::FRAC_PI_4 * ratio).cos().powi(2)
}

/// Swept quantity of a fidelity sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Coupling disorder bound `omega` (in units of the nominal coupling).
    Omega,
    /// Channel strength.
    Noise(NoiseKind),
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepVariable::Omega => f.write_str("omega"),
            SweepVariable::Noise(k) => f.write_str(k.name()),
        }
    }
}

/// Which circuit the sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepBackend {
    DigitalAnalog,
    Digital,
}

impl SweepBackend {
    pub fn name(self) -> &'static str {
        match self {
            SweepBackend::DigitalAnalog => "da",
            SweepBackend::Digital => "digital",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n_qubits: usize,
    pub backend: SweepBackend,
    pub variable: SweepVariable,
    pub grid: Vec<f64>,
    pub n_states: usize,
    pub seed: u64,
    /// Bound on `|T_nm dt|` and `|V_nm dt|` of the random Hamiltonian.
    pub bound: f64,
    pub dt: f64,
}

impl SweepConfig {
    pub fn new(n_qubits: usize, backend: SweepBackend, variable: SweepVariable, grid: Vec<f64>) -> Self {
        SweepConfig {
            n_qubits,
            backend,
            variable,
            grid,
            n_states: 100,
            seed: 0,
            bound: 0.1,
            dt: 1.0,
        }
    }
}

/// Largest register for density-matrix sweeps.
pub const MAX_DENSITY_SWEEP_QUBITS: usize = 8;
/// Largest register for statevector sweeps.
pub const MAX_STATEVECTOR_SWEEP_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub param: f64,
    pub mean_fidelity: f64,
    pub stderr: f64,
    pub n_states: usize,
    pub seed: u64,
}

/// The single Trotter step a sweep runs: chain device with unit couplings,
/// random Hamiltonian derived from `seed`.
pub fn sweep_circuit(config: &SweepConfig) -> Result<Circuit> {
    let n = config.n_qubits;
    let h = random_hamiltonian(n, config.bound / config.dt, derive_seed(config.seed, 0))?;
    let backend = match config.backend {
        SweepBackend::DigitalAnalog => Backend::digital_analog(CouplingGraph::chain(n)),
        SweepBackend::Digital => Backend::Digital,
    };
    Ok(trotter_step_spinless(&h, config.dt, &backend)?.circuit)
}

/// Mean state fidelity between ideal and erroneous runs of one Trotter
/// step, averaged over Haar-random inputs. State `k` is seeded from
/// `(seed, k)` and shared by every grid point, so results do not depend on
/// scheduling.
pub fn trotter_fidelity_sweep(config: &SweepConfig) -> Result<Vec<SweepPoint>> {
    let n = config.n_qubits;
    let limit = match config.variable {
        SweepVariable::Omega => MAX_STATEVECTOR_SWEEP_QUBITS,
        SweepVariable::Noise(_) => MAX_DENSITY_SWEEP_QUBITS,
    };
    if n > limit {
        return Err(Error::Resource(format!(
            "{} sweeps support at most {limit} qubits, got {n}",
            config.variable
        )));
    }
    if config.n_states == 0 {
        return Err(Error::domain("a sweep needs at least one initial state"));
    }
    let circuit = sweep_circuit(config)?;
    let nominal = CouplingGraph::chain(n);
    let ideal_sim = Simulator::new();
    let states: Vec<QuantumState> = (0..config.n_states)
        .map(|k| haar_random_state(n, derive_seed(config.seed, 1 + k as u64)))
        .collect::<Result<_>>()?;
    let ideal: Vec<QuantumState> = states
        .par_iter()
        .map(|s| ideal_sim.run(&circuit, s))
        .collect::<Result<_>>()?;

    let mut points = Vec::with_capacity(config.grid.len());
    for &x in &config.grid {
        let sim = match config.variable {
            SweepVariable::Omega => {
                let (device, _) = perturb_couplings(&nominal, x, derive_seed(config.seed, u64::MAX))?;
                Simulator::new().with_device(device)
            }
            SweepVariable::Noise(kind) => {
                let model = kind.with_parameter(x);
                model.validate()?;
                Simulator::new().with_noise(model)
            }
        };
        let fidelities: Vec<f64> = states
            .par_iter()
            .zip(&ideal)
            .map(|(s, target)| {
                let input = match config.variable {
                    SweepVariable::Omega => s.clone(),
                    SweepVariable::Noise(_) => s.clone().into_mixed(),
                };
                let out = sim.run(&circuit, &input)?;
                state_fidelity(target, &out)
            })
            .collect::<Result<_>>()?;
        let k = fidelities.len() as f64;
        let mean = fidelities.iter().sum::<f64>() / k;
        let var = if fidelities.len() > 1 {
            fidelities.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        points.push(SweepPoint {
            param: x,
            mean_fidelity: mean,
            stderr: (var / k).sqrt(),
            n_states: config.n_states,
            seed: config.seed,
        });
    }
    Ok(points)
}

pub const CSV_HEADER: &str = "param,mean_fidelity,stderr,n_states,seed";

/// Writes sweep rows as CSV with [`CSV_HEADER`].
pub fn write_csv(points: &[SweepPoint], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{:?},{:?},{:?},{},{}",
            p.param, p.mean_fidelity, p.stderr, p.n_states, p.seed
        )?;
    }
    Ok(())
}

/// Least-squares fit `y = sum_k c_k x^{powers[k]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialFit {
    pub powers: Vec<i32>,
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
}

impl PolynomialFit {
    pub fn coefficient(&self, power: i32) -> Option<f64> {
        self.powers
            .iter()
            .position(|&p| p == power)
            .map(|k| self.coefficients[k])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.powers
            .iter()
            .zip(&self.coefficients)
            .map(|(&p, c)| c * x.powi(p))
            .sum()
    }
}

pub fn fit_polynomial(xs: &[f64], ys: &[f64], powers: &[i32]) -> Result<PolynomialFit> {
    if xs.len() != ys.len() || xs.len() < powers.len() || powers.is_empty() {
        return Err(Error::domain("not enough points for the requested fit"));
    }
    let a = DMatrix::from_fn(xs.len(), powers.len(), |r, c| xs[r].powi(powers[c]));
    let b = DVector::from_column_slice(ys);
    let coefficients = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::domain(format!("least squares failed: {e}")))?;
    let fitted = &a * &coefficients;
    let mean = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_res: f64 = ys.iter().zip(fitted.iter()).map(|(y, f)| (y - f).powi(2)).sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - mean).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(PolynomialFit {
        powers: powers.to_vec(),
        coefficients: coefficients.iter().copied().collect(),
        r_squared,
    })
}

/// Infidelities `1 - F` of sweep rows as `(xs, ys)`.
pub fn infidelity_series(points: &[SweepPoint]) -> (Vec<f64>, Vec<f64>) {
    points.iter().map(|p| (p.param, 1.0 - p.mean_fidelity)).unzip()
}
