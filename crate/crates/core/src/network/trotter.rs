// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use super::circuit::{Circuit, Element};
use super::gates::{FsgParams, GateOp, LocalGate, LocalOp, TwoQubitGate};
use super::synth::{lower_to_analog, lower_to_cnots, OrderPolicy};
use crate::error::{Error, Result};
use crate::fermion::{ladder_qubit, FermionHamiltonian, ModeOrder, SpinfulHamiltonian};
use crate::topology::CouplingGraph;

/// Target gate set of a Trotter circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum Backend {
    /// Ideal FSG and Cphase gates.
    Fsg,
    /// FSGs decomposed into CNOTs; Cphase gates stay ideal.
    Digital,
    /// Every two-qubit layer compiled into refocusing operations on `device`.
    DigitalAnalog {
        device: CouplingGraph,
        policy: OrderPolicy,
    },
}

impl Backend {
    pub fn digital_analog(device: CouplingGraph) -> Self {
        Backend::DigitalAnalog {
            device,
            policy: OrderPolicy::Common,
        }
    }

    fn lower(&self, gate_level: &Circuit) -> Result<Circuit> {
        match self {
            Backend::Fsg => Ok(gate_level.clone()),
            Backend::Digital => lower_to_cnots(gate_level),
            Backend::DigitalAnalog { device, policy } => lower_to_analog(gate_level, device, *policy),
        }
    }
}

/// One Trotter step and the mode order it leaves behind.
#[derive(Debug, Clone, PartialEq)]
pub struct TrotterStep {
    pub circuit: Circuit,
    pub final_order: ModeOrder,
}

/// Position pairs of the fermionic swap network on `n` positions: layer
/// `k` pairs `(0,1), (2,3), ...` for even `k` and `(1,2), (3,4), ...` for
/// odd `k`. After `n` layers every pair has met once and the order is
/// reversed.
pub fn swap_network_layers(n: usize) -> Vec<Vec<(usize, usize)>> {
    (0..n)
        .map(|k| {
            (k % 2..n.saturating_sub(1))
                .step_by(2)
                .map(|i| (i, i + 1))
                .collect()
        })
        .collect()
}

/// Single Trotter step of a spinless Hamiltonian starting from the identity
/// mode order.
pub fn trotter_step_spinless(h: &FermionHamiltonian, dt: f64, backend: &Backend) -> Result<TrotterStep> {
    trotter_step_spinless_from(h, dt, &ModeOrder::identity(h.n_modes()), backend)
}

/// Single Trotter step from an arbitrary mode order. The FSG between
/// positions holding modes `(n, m)` uses `phi/2 = T_nm dt` and
/// `theta = -(V_nm + V_mn) dt + pi`. A leading `Rz(-U_n dt)` layer carries
/// the onsite term when it is nonzero.
pub fn trotter_step_spinless_from(
    h: &FermionHamiltonian,
    dt: f64,
    order: &ModeOrder,
    backend: &Backend,
) -> Result<TrotterStep> {
    let n = h.n_modes();
    if n < 2 || n % 2 != 0 {
        return Err(Error::domain(format!(
            "the spinless network needs an even mode count >= 2, got {n}"
        )));
    }
    if order.len() != n {
        return Err(Error::domain("mode order size differs from the Hamiltonian"));
    }
    if let Backend::DigitalAnalog { device, .. } = backend {
        if device.n_qubits() != n || (1..n).any(|q| !device.has_edge(q - 1, q)) {
            return Err(Error::domain(
                "the spinless network needs a device containing the path 0-1-...-(n-1)",
            ));
        }
    }
    let mut order = order.clone();
    let mut c = Circuit::new(n);
    let onsite: Vec<LocalOp> = (0..n)
        .filter(|&k| h.onsite()[order.mode_at(k)] != 0.0)
        .map(|k| LocalOp::new(k, LocalGate::Rz(-h.onsite()[order.mode_at(k)] * dt)))
        .collect();
    if !onsite.is_empty() {
        c.push(Element::Local(onsite))?;
    }
    for layer in swap_network_layers(n) {
        let mut ops = Vec::new();
        for &(i, j) in &layer {
            let (a, b) = (order.mode_at(i), order.mode_at(j));
            let params = FsgParams::new(
                2.0 * h.pair_hopping(a, b) * dt,
                -h.pair_interaction(a, b) * dt + PI,
            );
            ops.push(GateOp::new(TwoQubitGate::Fsg(params), i, j));
            order.swap_positions(i, j);
        }
        c.push(Element::Gates(ops))?;
    }
    Ok(TrotterStep {
        circuit: backend.lower(&c)?,
        final_order: order,
    })
}

/// Single Trotter step of the spin-1/2 model on the ladder layout (spin-up
/// position `k` on qubit `2k`, spin-down on `2k + 1`), from the identity
/// order of both species.
///
/// A rung layer of `Cphase(-V_n dt)` realizes `exp(-i V_n n_up n_down dt)`;
/// then both legs run their swap networks simultaneously with `theta = pi`.
/// Both species end in the reversed order.
pub fn trotter_step_spinful(h: &SpinfulHamiltonian, dt: f64, backend: &Backend) -> Result<TrotterStep> {
    let n = h.n_sites();
    if n == 0 {
        return Err(Error::domain("the spin-1/2 network needs at least one site"));
    }
    let total = 2 * n;
    if let Backend::DigitalAnalog { device, .. } = backend {
        let ladder = CouplingGraph::ladder(n);
        if device.n_qubits() != total || ladder.edges().any(|e| !device.has_edge(e.p, e.q)) {
            return Err(Error::domain(
                "the spin-1/2 network needs a device containing the two-leg ladder",
            ));
        }
    }
    let mut order = ModeOrder::identity(n);
    let mut c = Circuit::new(total);
    let rungs: Vec<GateOp> = (0..n)
        .filter(|&k| h.onsite()[order.mode_at(k)] != 0.0)
        .map(|k| {
            let phi = -h.onsite()[order.mode_at(k)] * dt;
            GateOp::new(TwoQubitGate::Cphase(phi), ladder_qubit(k, true), ladder_qubit(k, false))
        })
        .collect();
    if !rungs.is_empty() {
        c.push(Element::Gates(rungs))?;
    }
    for layer in swap_network_layers(n) {
        if layer.is_empty() {
            continue;
        }
        let mut ops = Vec::new();
        for up in [true, false] {
            let hop = if up { h.hop_up() } else { h.hop_down() };
            for &(i, j) in &layer {
                let (a, b) = (order.mode_at(i), order.mode_at(j));
                let params = FsgParams::new(2.0 * hop[(a, b)] * dt, PI);
                ops.push(GateOp::new(
                    TwoQubitGate::Fsg(params),
                    ladder_qubit(i, up),
                    ladder_qubit(j, up),
                ));
            }
        }
        for &(i, j) in &layer {
            order.swap_positions(i, j);
        }
        c.push(Element::Gates(ops))?;
    }
    Ok(TrotterStep {
        circuit: backend.lower(&c)?,
        final_order: order,
    })
}
