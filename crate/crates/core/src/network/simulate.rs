// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::circuit::{Circuit, Element};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::qcore::{
    apply_1q, apply_1q_channel, apply_2q, apply_2q_density, apply_diagonal, apply_diagonal_density,
    check_qubit_count, zz_diagonal, CMatrix, Mat2, Mat4, QuantumState, Unitary, C64,
};
use crate::topology::CouplingGraph;

enum Op {
    One(usize, Mat2),
    Two(usize, usize, Mat4),
    Diagonal(Arc<Vec<C64>>),
    Noise,
}

/// Applies circuits to states.
///
/// The device used for analog blocks defaults to the circuit's own and can
/// be overridden, which models a device whose actual couplings differ from
/// the ones the circuit was compiled for. A noise model acts on every qubit
/// after each entangler element (analog block or two-qubit gate layer) and
/// requires density-matrix input.
#[derive(Debug, Clone, Default)]
pub struct Simulator {
    device: Option<CouplingGraph>,
    noise: NoiseModel,
}

impl Simulator {
    pub fn new() -> Self {
        Simulator::default()
    }

    pub fn with_device(mut self, device: CouplingGraph) -> Self {
        self.device = Some(device);
        self
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Self {
        self.noise = noise;
        self
    }

    fn compile(&self, circuit: &Circuit) -> Result<Vec<Op>> {
        let n = circuit.n_qubits();
        check_qubit_count(n)?;
        self.noise.validate()?;
        let device = self.device.as_ref().or(circuit.device());
        if let Some(d) = device {
            if d.n_qubits() != n {
                return Err(Error::domain("device size differs from circuit size"));
            }
        }
        let noisy = !self.noise.is_none();
        let mut diagonals: HashMap<u64, Arc<Vec<C64>>> = HashMap::new();
        let mut ops = Vec::new();
        for e in circuit.elements() {
            match e {
                Element::Local(gates) => {
                    ops.extend(gates.iter().map(|g| Op::One(g.qubit, g.gate.matrix())));
                }
                Element::Analog(t) => {
                    let d = device.ok_or_else(|| Error::domain("analog block without a device"))?;
                    let diag = match diagonals.get(&t.to_bits()) {
                        Some(v) => v.clone(),
                        None => {
                            let v = Arc::new(zz_diagonal(d, *t)?);
                            diagonals.insert(t.to_bits(), v.clone());
                            v
                        }
                    };
                    ops.push(Op::Diagonal(diag));
                }
                Element::Gates(gates) => {
                    ops.extend(gates.iter().map(|g| Op::Two(g.a, g.b, g.gate.matrix())));
                }
            }
            if noisy && e.is_entangler() {
                ops.push(Op::Noise);
            }
        }
        Ok(ops)
    }

    fn run_pure(ops: &[Op], n: usize, amps: &mut [C64]) {
        for op in ops {
            match op {
                Op::One(q, m) => apply_1q(amps, n, *q, m),
                Op::Two(a, b, m) => apply_2q(amps, n, *a, *b, m),
                Op::Diagonal(d) => apply_diagonal(amps, d),
                Op::Noise => unreachable!("noise needs a density matrix"),
            }
        }
    }

    pub fn run(&self, circuit: &Circuit, input: &QuantumState) -> Result<QuantumState> {
        let n = circuit.n_qubits();
        if input.n_qubits() != n {
            return Err(Error::domain(format!(
                "state has {} qubits, circuit has {n}",
                input.n_qubits()
            )));
        }
        let ops = self.compile(circuit)?;
        match input {
            QuantumState::Pure { amplitudes, .. } => {
                if !self.noise.is_none() {
                    return Err(Error::domain("noisy simulation needs a density-matrix input"));
                }
                let mut amps = amplitudes.clone();
                Self::run_pure(&ops, n, &mut amps);
                Ok(QuantumState::Pure {
                    n_qubits: n,
                    amplitudes: amps,
                })
            }
            QuantumState::Mixed { rho, .. } => {
                let mut rho = rho.clone();
                let kraus = self.noise.kraus();
                for op in &ops {
                    match op {
                        Op::One(q, m) => apply_1q_channel(&mut rho, n, *q, std::slice::from_ref(m)),
                        Op::Two(a, b, m) => apply_2q_density(&mut rho, n, *a, *b, m),
                        Op::Diagonal(d) => apply_diagonal_density(&mut rho, d),
                        Op::Noise => {
                            for q in 0..n {
                                apply_1q_channel(&mut rho, n, q, &kraus);
                            }
                        }
                    }
                }
                Ok(QuantumState::Mixed { n_qubits: n, rho })
            }
        }
    }

    /// Dense unitary of a noiseless circuit, column by column.
    pub fn unitary(&self, circuit: &Circuit) -> Result<Unitary> {
        if !self.noise.is_none() {
            return Err(Error::domain("a noisy circuit has no unitary"));
        }
        let n = circuit.n_qubits();
        let ops = self.compile(circuit)?;
        let dim = 1usize << n;
        let mut m = CMatrix::identity(dim, dim);
        m.as_mut_slice()
            .par_chunks_mut(dim)
            .for_each(|col| Self::run_pure(&ops, n, col));
        Ok(Unitary::from_matrix_unchecked(m))
    }
}

/// Ideal simulation with the circuit's own device.
pub fn simulate_circuit(circuit: &Circuit, input: &QuantumState) -> Result<QuantumState> {
    Simulator::new().run(circuit, input)
}

/// Dense unitary of a circuit with its own device.
pub fn circuit_unitary(circuit: &Circuit) -> Result<Unitary> {
    Simulator::new().unitary(circuit)
}
