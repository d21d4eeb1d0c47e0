// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! TOML run configuration and its resolution into library values.

use std::path::{Path, PathBuf};

use dasim::fermion::{random_hamiltonian, random_spinful_hamiltonian, FermionHamiltonian, SpinfulHamiltonian};
use dasim::noise::{NoiseKind, SweepBackend, SweepConfig, SweepVariable};
use dasim::refocus::{parse_rational, CompileTarget};
use dasim::topology::{CouplingGraph, EntityPartition, TopologyKind};
use nalgebra::DMatrix;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Fallback seed for every random draw that names none.
    pub seed: Option<u64>,
    pub dt: Option<f64>,
    pub backend: Option<String>,
    /// Default output path.
    pub output: Option<PathBuf>,
    pub topology: Option<TopologySpec>,
    pub compile: Option<CompileSpec>,
    pub hamiltonian: Option<HamiltonianSpec>,
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologySpec {
    pub kind: Option<String>,
    pub qubits: Option<usize>,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    /// Coupling of every built-in edge.
    pub alpha: Option<f64>,
    /// Explicit `[p, q, alpha]` edges; replaces `kind`.
    pub edges: Option<Vec<(usize, usize, f64)>>,
    /// Per-edge `[p, q, alpha]` overrides on top of `kind`.
    pub couplings: Option<Vec<(usize, usize, f64)>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompileSpec {
    pub pairs: Vec<(usize, usize)>,
    pub theta: Option<f64>,
    /// Exact per-pair angles such as `"1/3"` or `"0.25"`.
    pub angles: Option<Vec<String>>,
    pub min_order: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub bound: f64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    #[serde(default)]
    pub spinful: bool,
    pub modes: Option<usize>,
    pub sites: Option<usize>,
    pub random: Option<RandomSpec>,
    pub onsite: Option<Vec<f64>>,
    pub hopping: Option<Vec<Vec<f64>>>,
    pub interaction: Option<Vec<Vec<f64>>>,
    pub hop_up: Option<Vec<Vec<f64>>>,
    pub hop_down: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub variable: String,
    pub qubits: usize,
    pub grid: Vec<f64>,
    pub backend: Option<String>,
    pub n_states: Option<usize>,
    pub seed: Option<u64>,
    pub bound: Option<f64>,
    pub dt: Option<f64>,
}

fn field(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{path}: {msg}"))
}

fn lib(path: &str) -> impl Fn(dasim::Error) -> CliError + '_ {
    move |e| match e {
        dasim::Error::Resource(m) => CliError::Resource(m),
        other => field(path, other),
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    fn seed_or(&self, own: Option<u64>, path: &str) -> Result<u64, CliError> {
        own.or(self.seed)
            .ok_or_else(|| field(path, "a seed is required (set it here, at top level, or with --seed)"))
    }

    pub fn topology(&self) -> Result<CouplingGraph, CliError> {
        let spec = self.topology.as_ref().ok_or_else(|| field("topology", "section missing"))?;
        spec.resolve()
    }

    pub fn compile_target(&self, graph: &CouplingGraph) -> Result<CompileTarget, CliError> {
        let spec = self.compile.as_ref().ok_or_else(|| field("compile", "section missing"))?;
        let partition = EntityPartition::new(graph, spec.pairs.clone()).map_err(lib("compile.pairs"))?;
        match (&spec.theta, &spec.angles) {
            (Some(theta), None) => CompileTarget::uniform(partition, *theta).map_err(lib("compile.theta")),
            (None, Some(angles)) => {
                if angles.len() != spec.pairs.len() {
                    return Err(field(
                        "compile.angles",
                        format!("{} angles for {} pairs", angles.len(), spec.pairs.len()),
                    ));
                }
                let exact = angles
                    .iter()
                    .enumerate()
                    .map(|(k, a)| {
                        parse_rational(a).ok_or_else(|| field(&format!("compile.angles[{k}]"), format!("`{a}` is not a rational")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                CompileTarget::new(partition, exact).map_err(lib("compile.angles"))
            }
            _ => Err(field("compile", "give exactly one of `theta` or `angles`")),
        }
    }

    pub fn min_order(&self) -> usize {
        self.compile.as_ref().and_then(|c| c.min_order).unwrap_or(1)
    }

    pub fn dt(&self) -> Result<f64, CliError> {
        let dt = self.dt.ok_or_else(|| field("dt", "required"))?;
        if !(dt.is_finite() && dt > 0.0) {
            return Err(field("dt", format!("must be positive, got {dt}")));
        }
        Ok(dt)
    }

    pub fn hamiltonian(&self) -> Result<Model, CliError> {
        let spec = self.hamiltonian.as_ref().ok_or_else(|| field("hamiltonian", "section missing"))?;
        if spec.spinful {
            let sites = spec.sites.ok_or_else(|| field("hamiltonian.sites", "required for spinful models"))?;
            if let Some(r) = &spec.random {
                let seed = self.seed_or(r.seed, "hamiltonian.random.seed")?;
                return random_spinful_hamiltonian(sites, r.bound, seed)
                    .map(Model::Spinful)
                    .map_err(lib("hamiltonian.random"));
            }
            let up = matrix("hamiltonian.hop_up", spec.hop_up.as_ref(), sites)?;
            let down = matrix("hamiltonian.hop_down", spec.hop_down.as_ref(), sites)?;
            let onsite = spec.onsite.clone().unwrap_or_else(|| vec![0.0; sites]);
            SpinfulHamiltonian::new(up, down, onsite).map(Model::Spinful).map_err(lib("hamiltonian"))
        } else {
            let modes = spec.modes.ok_or_else(|| field("hamiltonian.modes", "required"))?;
            if let Some(r) = &spec.random {
                let seed = self.seed_or(r.seed, "hamiltonian.random.seed")?;
                return random_hamiltonian(modes, r.bound, seed)
                    .map(Model::Spinless)
                    .map_err(lib("hamiltonian.random"));
            }
            let hop = matrix("hamiltonian.hopping", spec.hopping.as_ref(), modes)?;
            let int = match &spec.interaction {
                Some(_) => matrix("hamiltonian.interaction", spec.interaction.as_ref(), modes)?,
                None => DMatrix::zeros(modes, modes),
            };
            let onsite = spec.onsite.clone().unwrap_or_else(|| vec![0.0; modes]);
            FermionHamiltonian::new(onsite, hop, int).map(Model::Spinless).map_err(lib("hamiltonian"))
        }
    }

    pub fn sweep(&self) -> Result<SweepConfig, CliError> {
        let spec = self.sweep.as_ref().ok_or_else(|| field("sweep", "section missing"))?;
        let variable = parse_variable(&spec.variable)?;
        let backend = parse_sweep_backend(spec.backend.as_deref().or(self.backend.as_deref()).unwrap_or("da"), "sweep.backend")?;
        let mut config = SweepConfig::new(spec.qubits, backend, variable, spec.grid.clone());
        config.seed = self.seed_or(spec.seed, "sweep.seed")?;
        if let Some(n) = spec.n_states {
            config.n_states = n;
        }
        if let Some(b) = spec.bound {
            config.bound = b;
        }
        if let Some(dt) = spec.dt {
            config.dt = dt;
        }
        if config.grid.is_empty() {
            return Err(field("sweep.grid", "empty"));
        }
        Ok(config)
    }
}

/// A resolved Hamiltonian.
#[derive(Debug, Clone)]
pub enum Model {
    Spinless(FermionHamiltonian),
    Spinful(SpinfulHamiltonian),
}

impl Model {
    pub fn n_qubits(&self) -> usize {
        match self {
            Model::Spinless(h) => h.n_modes(),
            Model::Spinful(h) => 2 * h.n_sites(),
        }
    }
}

fn matrix(path: &str, rows: Option<&Vec<Vec<f64>>>, n: usize) -> Result<DMatrix<f64>, CliError> {
    let rows = rows.ok_or_else(|| field(path, "required"))?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(field(path, format!("expected a {n}x{n} table")));
    }
    Ok(DMatrix::from_fn(n, n, |r, c| rows[r][c]))
}

pub fn parse_variable(s: &str) -> Result<SweepVariable, CliError> {
    if s == "omega" {
        return Ok(SweepVariable::Omega);
    }
    s.parse::<NoiseKind>()
        .map(SweepVariable::Noise)
        .map_err(|_| field("sweep.variable", format!("unknown variable `{s}`; use omega, depolarizing, amplitude or phase")))
}

pub fn parse_sweep_backend(s: &str, path: &str) -> Result<SweepBackend, CliError> {
    match s {
        "da" => Ok(SweepBackend::DigitalAnalog),
        "digital" => Ok(SweepBackend::Digital),
        other => Err(field(path, format!("unknown backend `{other}`; use da or digital"))),
    }
}

impl TopologySpec {
    pub fn resolve(&self) -> Result<CouplingGraph, CliError> {
        let mut graph = match (&self.edges, &self.kind) {
            (Some(edges), None) => {
                let n = self.qubits.ok_or_else(|| field("topology.qubits", "required with explicit edges"))?;
                let mut g = CouplingGraph::new(n);
                for (k, &(p, q, a)) in edges.iter().enumerate() {
                    g.add_edge(p, q, a).map_err(lib(&format!("topology.edges[{k}]")))?;
                }
                g
            }
            (None, Some(kind)) => {
                let kind: TopologyKind = kind.parse().map_err(lib("topology.kind"))?;
                match (kind, self.rows, self.cols) {
                    (TopologyKind::Grid, Some(r), Some(c)) => CouplingGraph::grid(r, c),
                    (_, None, None) => {
                        let n = self.qubits.ok_or_else(|| field("topology.qubits", "required"))?;
                        CouplingGraph::of_kind(kind, n).map_err(lib("topology"))?
                    }
                    _ => return Err(field("topology", "`rows` and `cols` go together and only with kind = \"grid\"")),
                }
            }
            _ => return Err(field("topology", "give exactly one of `kind` or `edges`")),
        };
        if let Some(q) = self.qubits {
            if q != graph.n_qubits() {
                return Err(field("topology.qubits", format!("{q} does not match the {} qubits described", graph.n_qubits())));
            }
        }
        if let Some(alpha) = self.alpha {
            if self.edges.is_some() {
                return Err(field("topology.alpha", "only applies to built-in kinds"));
            }
            graph = graph.with_couplings(|_| alpha).map_err(lib("topology.alpha"))?;
        }
        let overrides = self.couplings.clone().unwrap_or_default();
        for (k, &(p, q, _)) in overrides.iter().enumerate() {
            if !graph.has_edge(p, q) {
                return Err(field(&format!("topology.couplings[{k}]"), format!("({p}, {q}) is not an edge")));
            }
        }
        if !overrides.is_empty() {
            graph = graph
                .with_couplings(|e| {
                    overrides
                        .iter()
                        .rev()
                        .find(|&&(p, q, _)| (p.min(q), p.max(q)) == (e.p, e.q))
                        .map_or(e.alpha, |o| o.2)
                })
                .map_err(lib("topology.couplings"))?;
        }
        Ok(graph)
    }
}

impl RunConfig {
    /// `--seed` replaces every seed in the file.
    pub fn override_seed(&mut self, seed: u64) {
        self.seed = Some(seed);
        if let Some(r) = self.hamiltonian.as_mut().and_then(|h| h.random.as_mut()) {
            r.seed = Some(seed);
        }
        if let Some(s) = self.sweep.as_mut() {
            s.seed = Some(seed);
        }
    }
}
