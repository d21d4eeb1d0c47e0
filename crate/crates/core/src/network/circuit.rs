// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use super::gates::{FsgParams, GateOp, LocalGate, LocalOp, TwoQubitGate};
use crate::error::{Error, Result};
use crate::topology::CouplingGraph;

/// One step of a circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    /// Single-qubit gates, applied in list order.
    Local(Vec<LocalOp>),
    /// The device's native entangler `J(t)` for duration `t`.
    Analog(f64),
    /// Simultaneous ideal two-qubit gates on disjoint qubit pairs.
    Gates(Vec<GateOp>),
}

impl Element {
    /// Entangler applications: analog blocks and two-qubit gate layers.
    pub fn is_entangler(&self) -> bool {
        !matches!(self, Element::Local(_))
    }
}

/// A sequence of elements over `n_qubits` qubits, optionally bound to the
/// device whose coupling graph drives the analog blocks.
///
/// Text form, one element per line (`#` starts a comment):
///
/// ```text
/// qubits 2
/// edge 0 1 1.0
/// local h 1
/// analog 0.7853981633974483
/// local rz 0 -1.5707963267948966; rz 1 -1.5707963267948966; h 1
/// gates cnot 0 1; fsg 2 3 0.1 3.0
/// ```
///
/// `edge` lines describe the device and precede all elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    device: Option<CouplingGraph>,
    elements: Vec<Element>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            device: None,
            elements: Vec::new(),
        }
    }

    pub fn with_device(device: CouplingGraph) -> Self {
        Circuit {
            n_qubits: device.n_qubits(),
            device: Some(device),
            elements: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn device(&self) -> Option<&CouplingGraph> {
        self.device.as_ref()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn set_device(&mut self, device: CouplingGraph) -> Result<()> {
        if device.n_qubits() != self.n_qubits {
            return Err(Error::domain("device size differs from circuit size"));
        }
        self.device = Some(device);
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::domain(format!(
                "qubit {q} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    pub fn push(&mut self, element: Element) -> Result<()> {
        match &element {
            Element::Local(ops) => {
                for op in ops {
                    self.check_qubit(op.qubit)?;
                }
            }
            Element::Analog(t) => {
                if self.device.is_none() {
                    return Err(Error::domain("analog block in a circuit without a device"));
                }
                if !(t.is_finite() && *t >= 0.0) {
                    return Err(Error::domain(format!("analog duration must be >= 0, got {t}")));
                }
            }
            Element::Gates(ops) => {
                let mut used = vec![false; self.n_qubits];
                for op in ops {
                    self.check_qubit(op.a)?;
                    self.check_qubit(op.b)?;
                    if op.a == op.b || used[op.a] || used[op.b] {
                        return Err(Error::domain(format!(
                            "gate on ({}, {}) overlaps another gate of the layer",
                            op.a, op.b
                        )));
                    }
                    used[op.a] = true;
                    used[op.b] = true;
                }
            }
        }
        self.elements.push(element);
        Ok(())
    }

    /// Appends every element of `other`, which must have the same size.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::domain("appending a circuit of a different size"));
        }
        if self.device.is_none() {
            self.device.clone_from(&other.device);
        }
        for e in &other.elements {
            self.push(e.clone())?;
        }
        Ok(())
    }

    pub fn analog_block_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, Element::Analog(t) if *t > 0.0))
            .count()
    }

    pub fn total_analog_time(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| match e {
                Element::Analog(t) => *t,
                _ => 0.0,
            })
            .sum()
    }

    /// Number of two-qubit gates matching the predicate.
    pub fn count_gates(&self, pred: impl Fn(&TwoQubitGate) -> bool) -> usize {
        self.elements
            .iter()
            .map(|e| match e {
                Element::Gates(ops) => ops.iter().filter(|op| pred(&op.gate)).count(),
                _ => 0,
            })
            .sum()
    }

    pub fn cnot_count(&self) -> usize {
        self.count_gates(|g| matches!(g, TwoQubitGate::Cnot))
    }

    pub fn fsg_count(&self) -> usize {
        self.count_gates(|g| matches!(g, TwoQubitGate::Fsg(_)))
    }

    pub fn entangler_count(&self) -> usize {
        self.elements.iter().filter(|e| e.is_entangler()).count()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut circuit: Option<Circuit> = None;
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        let mut elements: Vec<(usize, Element)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let num = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .map_err(|_| Error::parse(line_no, format!("bad number `{s}`")))
            };
            let idx = |s: &str| -> Result<usize> {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad qubit index `{s}`")))
            };
            match head {
                "qubits" => {
                    if circuit.is_some() {
                        return Err(Error::parse(line_no, "duplicate `qubits` line"));
                    }
                    circuit = Some(Circuit::new(idx(rest)?));
                }
                "edge" => {
                    if !elements.is_empty() {
                        return Err(Error::parse(line_no, "`edge` lines must precede elements"));
                    }
                    let w: Vec<&str> = rest.split_whitespace().collect();
                    if w.len() != 3 {
                        return Err(Error::parse(line_no, "expected `edge p q alpha`"));
                    }
                    edges.push((idx(w[0])?, idx(w[1])?, num(w[2])?));
                }
                "analog" => elements.push((line_no, Element::Analog(num(rest)?))),
                "local" => {
                    let mut ops = Vec::new();
                    for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                        let w: Vec<&str> = part.split_whitespace().collect();
                        let angle = match w.len() {
                            2 => None,
                            3 => Some(num(w[2])?),
                            _ => return Err(Error::parse(line_no, format!("bad local gate `{part}`"))),
                        };
                        let gate = LocalGate::from_parts(w[0], angle)
                            .ok_or_else(|| Error::parse(line_no, format!("bad local gate `{part}`")))?;
                        ops.push(LocalOp::new(idx(w[1])?, gate));
                    }
                    elements.push((line_no, Element::Local(ops)));
                }
                "gates" => {
                    let mut ops = Vec::new();
                    for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
                        let w: Vec<&str> = part.split_whitespace().collect();
                        let bad = || Error::parse(line_no, format!("bad two-qubit gate `{part}`"));
                        let gate = match (w.first().copied(), w.len()) {
                            (Some("cnot"), 3) => TwoQubitGate::Cnot,
                            (Some("cphase"), 4) => TwoQubitGate::Cphase(num(w[3])?),
                            (Some("fsg"), 5) => TwoQubitGate::Fsg(FsgParams::new(num(w[3])?, num(w[4])?)),
                            _ => return Err(bad()),
                        };
                        ops.push(GateOp::new(gate, idx(w[1])?, idx(w[2])?));
                    }
                    elements.push((line_no, Element::Gates(ops)));
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown element `{other}`")));
                }
            }
        }
        let mut circuit = circuit.ok_or_else(|| Error::parse(1, "missing `qubits` line"))?;
        if !edges.is_empty() {
            let device = CouplingGraph::from_edges(circuit.n_qubits, edges)
                .map_err(|e| Error::parse(1, e.to_string()))?;
            circuit.set_device(device)?;
        }
        for (line_no, e) in elements {
            circuit
                .push(e)
                .map_err(|err| Error::parse(line_no, err.to_string()))?;
        }
        Ok(circuit)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_qubits)?;
        if let Some(d) = &self.device {
            for e in d.edges() {
                writeln!(f, "edge {} {} {:?}", e.p, e.q, e.alpha)?;
            }
        }
        let join = |items: Vec<String>| items.join("; ");
        for e in &self.elements {
            match e {
                Element::Local(ops) => {
                    writeln!(f, "local {}", join(ops.iter().map(|o| o.to_string()).collect()))?
                }
                Element::Analog(t) => writeln!(f, "analog {t:?}")?,
                Element::Gates(ops) => {
                    writeln!(f, "gates {}", join(ops.iter().map(|o| o.to_string()).collect()))?
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Circuit::from_text(s)
    }
}
