// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::qcore::{pauli_x, pauli_y, pauli_z, Mat2, Mat4, Unitary, C64, I, ONE, ZERO};

/// Single-qubit gates. Rotations follow `R_a(t) = exp(-i t a / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalGate {
    X,
    Y,
    Z,
    H,
    Rx(f64),
    Ry(f64),
    Rz(f64),
}

impl LocalGate {
    pub fn matrix(&self) -> Mat2 {
        match *self {
            LocalGate::X => pauli_x(),
            LocalGate::Y => pauli_y(),
            LocalGate::Z => pauli_z(),
            LocalGate::H => {
                let h = C64::new(FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            LocalGate::Rx(t) => {
                let (s, c) = (t / 2.0).sin_cos();
                [[C64::new(c, 0.0), -I * s], [-I * s, C64::new(c, 0.0)]]
            }
            LocalGate::Ry(t) => {
                let (s, c) = (t / 2.0).sin_cos();
                [[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]]
            }
            LocalGate::Rz(t) => [
                [C64::from_polar(1.0, -t / 2.0), ZERO],
                [ZERO, C64::from_polar(1.0, t / 2.0)],
            ],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LocalGate::X => "x",
            LocalGate::Y => "y",
            LocalGate::Z => "z",
            LocalGate::H => "h",
            LocalGate::Rx(_) => "rx",
            LocalGate::Ry(_) => "ry",
            LocalGate::Rz(_) => "rz",
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            LocalGate::Rx(t) | LocalGate::Ry(t) | LocalGate::Rz(t) => Some(t),
            _ => None,
        }
    }

    pub(crate) fn from_parts(name: &str, angle: Option<f64>) -> Option<Self> {
        Some(match (name, angle) {
            ("x", None) => LocalGate::X,
            ("y", None) => LocalGate::Y,
            ("z", None) => LocalGate::Z,
            ("h", None) => LocalGate::H,
            ("rx", Some(t)) => LocalGate::Rx(t),
            ("ry", Some(t)) => LocalGate::Ry(t),
            ("rz", Some(t)) => LocalGate::Rz(t),
            _ => return None,
        })
    }
}

/// A single-qubit gate placed on a qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalOp {
    pub qubit: usize,
    pub gate: LocalGate,
}

impl LocalOp {
    pub fn new(qubit: usize, gate: LocalGate) -> Self {
        LocalOp { qubit, gate }
    }
}

impl fmt::Display for LocalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.gate.name(), self.qubit)?;
        if let Some(t) = self.gate.angle() {
            write!(f, " {t:?}")?;
        }
        Ok(())
    }
}

/// Parameters of the fermionic simulation gate `F(phi, theta)`. For a mode
/// pair `(n, m)` and step `dt`: `phi / 2 = T_nm dt`, `theta = -V dt + pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsgParams {
    pub phi: f64,
    pub theta: f64,
}

impl FsgParams {
    pub fn new(phi: f64, theta: f64) -> Self {
        FsgParams { phi, theta }
    }

    /// The plain fermionic swap `F(0, pi)`.
    pub fn fswap() -> Self {
        FsgParams::new(0.0, std::f64::consts::PI)
    }
}

/// Ideal two-qubit gates of the digital description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwoQubitGate {
    /// Control is the first qubit of the [`GateOp`].
    Cnot,
    /// `diag(1, 1, 1, e^{i phi})`.
    Cphase(f64),
    Fsg(FsgParams),
}

impl TwoQubitGate {
    /// Matrix in the basis `|ab>` with `a` the first qubit of the op.
    pub fn matrix(&self) -> Mat4 {
        match *self {
            TwoQubitGate::Cnot => {
                let mut m = [[ZERO; 4]; 4];
                m[0][0] = ONE;
                m[1][1] = ONE;
                m[2][3] = ONE;
                m[3][2] = ONE;
                m
            }
            TwoQubitGate::Cphase(phi) => {
                let mut m = [[ZERO; 4]; 4];
                m[0][0] = ONE;
                m[1][1] = ONE;
                m[2][2] = ONE;
                m[3][3] = C64::from_polar(1.0, phi);
                m
            }
            TwoQubitGate::Fsg(p) => fsg_array(p),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TwoQubitGate::Cnot => "cnot",
            TwoQubitGate::Cphase(_) => "cphase",
            TwoQubitGate::Fsg(_) => "fsg",
        }
    }
}

/// A two-qubit gate on qubits `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateOp {
    pub gate: TwoQubitGate,
    pub a: usize,
    pub b: usize,
}

impl GateOp {
    pub fn new(gate: TwoQubitGate, a: usize, b: usize) -> Self {
        GateOp { gate, a, b }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.gate.name(), self.a, self.b)?;
        match self.gate {
            TwoQubitGate::Cnot => Ok(()),
            TwoQubitGate::Cphase(phi) => write!(f, " {phi:?}"),
            TwoQubitGate::Fsg(p) => write!(f, " {:?} {:?}", p.phi, p.theta),
        }
    }
}

fn fsg_array(p: FsgParams) -> Mat4 {
    let (s, c) = (p.phi / 2.0).sin_cos();
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    m[1][1] = C64::new(0.0, -s);
    m[1][2] = C64::new(c, 0.0);
    m[2][1] = C64::new(c, 0.0);
    m[2][2] = C64::new(0.0, -s);
    m[3][3] = C64::from_polar(1.0, p.theta);
    m
}

/// `F(phi, theta)`: `1` on `|00>`, `[[-i sin(phi/2), cos(phi/2)], [cos(phi/2),
/// -i sin(phi/2)]]` on `{|01>, |10>}` and `e^{i theta}` on `|11>`.
pub fn fsg_matrix(params: FsgParams) -> Unitary {
    Unitary::from_mat4(&fsg_array(params)).expect("F(phi, theta) is unitary")
}
