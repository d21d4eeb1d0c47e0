// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use super::circuit::{Circuit, Element};
use super::gates::{FsgParams, GateOp, LocalGate, LocalOp, TwoQubitGate};
use crate::error::{Error, Result};
use crate::refocus::{compile_target, schedule_to_circuit, CompileTarget, RefocusOptions};
use crate::topology::{CouplingGraph, EntityPartition};

/// `ZZ` angle of the analog block inside a CNOT.
pub const CNOT_ZZ_ANGLE: f64 = FRAC_PI_4;

/// How Hadamard orders are chosen across the refocusing operations of one
/// lowered circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    /// Every operation uses the largest order any of them needs.
    #[default]
    Common,
    /// Each operation uses its own minimal order.
    PerStage,
}

/// `ZZ` angle in `[0, 2 pi)` that, dressed by `Rz(phi/2)` on both qubits,
/// gives `diag(1, 1, 1, e^{i phi})`.
///
/// `e^{i phi n_a n_b} = e^{i phi/4} e^{-i phi/4 Z_a} e^{-i phi/4 Z_b} e^{i phi/4 Z_a Z_b}`
/// and `exp(-i C ZZ)` has period `2 pi` in `C`.
pub fn cphase_zz_angle(phi: f64) -> f64 {
    let c = (-phi / 4.0).rem_euclid(TAU);
    if c >= TAU {
        0.0
    } else {
        c
    }
}

fn two_qubit_device() -> CouplingGraph {
    CouplingGraph::chain(2)
}

/// CNOT (control 0, target 1) on a two-qubit device with unit coupling:
/// `H_t`, analog `pi/4`, `Rz(-pi/2)` on both, `H_t`. Uses
/// `CZ ~ e^{i pi/4 Z_c} e^{i pi/4 Z_t} e^{-i pi/4 Z_c Z_t}`.
pub fn synthesize_cnot() -> Circuit {
    let mut c = Circuit::with_device(two_qubit_device());
    for e in cnot_layer_dressing(&[(0, 1)], CNOT_ZZ_ANGLE) {
        c.push(e).expect("fragment is valid");
    }
    c
}

/// Elements of a CNOT layer around a plain analog block of the given length.
fn cnot_layer_dressing(pairs: &[(usize, usize)], duration: f64) -> Vec<Element> {
    vec![
        Element::Local(pairs.iter().map(|&(_, t)| LocalOp::new(t, LocalGate::H)).collect()),
        Element::Analog(duration),
        cnot_post_layer(pairs),
    ]
}

fn cnot_post_layer(pairs: &[(usize, usize)]) -> Element {
    let mut ops = Vec::new();
    for &(c, t) in pairs {
        ops.push(LocalOp::new(c, LocalGate::Rz(-FRAC_PI_2)));
        ops.push(LocalOp::new(t, LocalGate::Rz(-FRAC_PI_2)));
        ops.push(LocalOp::new(t, LocalGate::H));
    }
    Element::Local(ops)
}

fn cphase_post_layer(gates: &[(usize, usize, f64)]) -> Element {
    let mut ops = Vec::new();
    for &(a, b, phi) in gates {
        ops.push(LocalOp::new(a, LocalGate::Rz(phi / 2.0)));
        ops.push(LocalOp::new(b, LocalGate::Rz(phi / 2.0)));
    }
    Element::Local(ops)
}

/// `diag(1, 1, 1, e^{i phi})` on a two-qubit device with unit coupling:
/// one analog block of [`cphase_zz_angle`] followed by `Rz(phi/2)` on both.
pub fn synthesize_cphase(phi: f64) -> Circuit {
    let mut c = Circuit::with_device(two_qubit_device());
    c.push(Element::Analog(cphase_zz_angle(phi))).expect("fragment is valid");
    c.push(cphase_post_layer(&[(0, 1, phi)])).expect("fragment is valid");
    c
}

/// The single-qubit layers and CNOT layers realizing a layer of FSGs.
///
/// `F(phi, theta) ~ (Rz(theta/2) (x) Rz(theta/2)) N(c, c, d)` with
/// `N(a, b, c) = exp(i (a XX + b YY + c ZZ))`, `c = pi/4 - phi/4` and
/// `d = pi/4 + theta/4`; `N` takes three CNOTs.
fn fsg_layer_elements(ops: &[(usize, usize, FsgParams)]) -> Vec<Element> {
    let mut l1 = Vec::new();
    let mut g1 = Vec::new();
    let mut l2 = Vec::new();
    let mut g2 = Vec::new();
    let mut l3 = Vec::new();
    let mut g3 = Vec::new();
    let mut l4 = Vec::new();
    for &(q0, q1, p) in ops {
        let xx = FRAC_PI_4 - p.phi / 4.0;
        let zz = FRAC_PI_4 + p.theta / 4.0;
        l1.push(LocalOp::new(q1, LocalGate::Rz(-FRAC_PI_2)));
        g1.push(GateOp::new(TwoQubitGate::Cnot, q1, q0));
        l2.push(LocalOp::new(q0, LocalGate::Rz(FRAC_PI_2 - 2.0 * zz)));
        l2.push(LocalOp::new(q1, LocalGate::Ry(2.0 * xx - FRAC_PI_2)));
        g2.push(GateOp::new(TwoQubitGate::Cnot, q0, q1));
        l3.push(LocalOp::new(q1, LocalGate::Ry(FRAC_PI_2 - 2.0 * xx)));
        g3.push(GateOp::new(TwoQubitGate::Cnot, q1, q0));
        l4.push(LocalOp::new(q0, LocalGate::Rz(FRAC_PI_2)));
        l4.push(LocalOp::new(q0, LocalGate::Rz(p.theta / 2.0)));
        l4.push(LocalOp::new(q1, LocalGate::Rz(p.theta / 2.0)));
    }
    vec![
        Element::Local(l1),
        Element::Gates(g1),
        Element::Local(l2),
        Element::Gates(g2),
        Element::Local(l3),
        Element::Gates(g3),
        Element::Local(l4),
    ]
}

/// `F(phi, theta)` on qubits `(0, 1)` as three CNOTs and rotations.
pub fn decompose_fsg(params: FsgParams) -> Circuit {
    let mut c = Circuit::new(2);
    for e in fsg_layer_elements(&[(0, 1, params)]) {
        c.push(e).expect("decomposition is valid");
    }
    c
}

/// Replaces every FSG by its three-CNOT decomposition. FSG layers must not
/// mix with other gate kinds.
pub fn lower_to_cnots(circuit: &Circuit) -> Result<Circuit> {
    let mut out = match circuit.device() {
        Some(d) => Circuit::with_device(d.clone()),
        None => Circuit::new(circuit.n_qubits()),
    };
    for e in circuit.elements() {
        match e {
            Element::Gates(ops) if ops.iter().any(|o| matches!(o.gate, TwoQubitGate::Fsg(_))) => {
                let fsgs = ops
                    .iter()
                    .map(|o| match o.gate {
                        TwoQubitGate::Fsg(p) => Ok((o.a, o.b, p)),
                        _ => Err(Error::domain("FSG layer mixed with other gates")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                for x in fsg_layer_elements(&fsgs) {
                    out.push(x)?;
                }
            }
            other => out.push(other.clone())?,
        }
    }
    Ok(out)
}

enum LayerKind {
    Cnot(Vec<(usize, usize)>),
    Cphase(Vec<(usize, usize, f64)>),
}

fn classify(ops: &[GateOp]) -> Result<LayerKind> {
    if ops.iter().all(|o| o.gate == TwoQubitGate::Cnot) {
        return Ok(LayerKind::Cnot(ops.iter().map(|o| (o.a, o.b)).collect()));
    }
    ops.iter()
        .map(|o| match o.gate {
            TwoQubitGate::Cphase(phi) => Ok((o.a, o.b, phi)),
            _ => Err(Error::domain(
                "analog lowering needs layers of only CNOTs or only Cphase gates",
            )),
        })
        .collect::<Result<Vec<_>>>()
        .map(LayerKind::Cphase)
}

/// Replaces every two-qubit gate layer by refocusing operations on
/// `device`. FSGs are first decomposed into CNOTs. A CNOT layer becomes
/// one global refocusing operation with `ZZ` angle `pi/4` on every pair; a
/// Cphase layer one with per-pair angles from [`cphase_zz_angle`].
pub fn lower_to_analog(circuit: &Circuit, device: &CouplingGraph, policy: OrderPolicy) -> Result<Circuit> {
    if device.n_qubits() != circuit.n_qubits() {
        return Err(Error::domain(format!(
            "device has {} qubits, circuit has {}",
            device.n_qubits(),
            circuit.n_qubits()
        )));
    }
    let digital = lower_to_cnots(circuit)?;
    let mut layers = Vec::new();
    let mut targets = Vec::new();
    for e in digital.elements() {
        if let Element::Gates(ops) = e {
            let kind = classify(ops)?;
            let target = match &kind {
                LayerKind::Cnot(pairs) => {
                    let partition = EntityPartition::new(device, pairs.iter().copied())
                        .map_err(|err| Error::domain(format!("device cannot host layer: {err}")))?;
                    CompileTarget::uniform(partition, CNOT_ZZ_ANGLE)?
                }
                LayerKind::Cphase(gates) => {
                    let partition = EntityPartition::new(device, gates.iter().map(|&(a, b, _)| (a, b)))
                        .map_err(|err| Error::domain(format!("device cannot host layer: {err}")))?;
                    let angles: Vec<f64> = gates.iter().map(|&(_, _, phi)| cphase_zz_angle(phi)).collect();
                    CompileTarget::from_f64(partition, &angles)?
                }
            };
            layers.push(kind);
            targets.push(target);
        }
    }
    let mut options = RefocusOptions::default();
    if policy == OrderPolicy::Common {
        for t in &targets {
            let order = compile_target(device, t, &options)?.max_order();
            options.min_order = options.min_order.max(order);
        }
    }
    let mut out = Circuit::with_device(device.clone());
    let mut k = 0;
    for e in digital.elements() {
        match e {
            Element::Gates(_) => {
                let schedule = compile_target(device, &targets[k], &options)?.schedule;
                let body = schedule_to_circuit(&schedule, device)?;
                match &layers[k] {
                    LayerKind::Cnot(pairs) => {
                        out.push(Element::Local(
                            pairs.iter().map(|&(_, t)| LocalOp::new(t, LocalGate::H)).collect(),
                        ))?;
                        out.append(&body)?;
                        out.push(cnot_post_layer(pairs))?;
                    }
                    LayerKind::Cphase(gates) => {
                        out.append(&body)?;
                        out.push(cphase_post_layer(gates))?;
                    }
                }
                k += 1;
            }
            other => out.push(other.clone())?,
        }
    }
    Ok(out)
}
