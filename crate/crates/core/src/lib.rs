// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Digital-analog compilation and simulation of fermionic dynamics.
//!
//! The crate turns layers of simultaneous two-qubit gates into refocusing
//! schedules over an always-on Ising `ZZ` coupling, builds fermionic SWAP
//! network Trotter circuits, and measures the resulting errors with dense
//! statevector and density-matrix simulation.
//!
//! Module map:
//!
//! - [`qcore`]: dense states, unitaries, gate kernels and fidelity metrics.
//! - [`topology`]: coupling graphs, Hadamard matrices, interaction pairs and
//!   sequence assignment.
//! - [`refocus`]: refocusing schedule compiler and its exact verifier.
//! - [`fermion`]: fermionic Hamiltonians and the Jordan-Wigner mapping.
//! - [`network`]: gate synthesis, Trotter circuits and the circuit simulator.
//! - [`noise`]: Kraus channels, coupling disorder and fidelity sweeps.
//!
//! Conventions used everywhere: qubit 0 is the most significant bit of a
//! basis index, `|1>` is the occupied / excited state, time is dimensionless
//! (`hbar = 1`), and the native entangler over a time `t` is
//! `exp(-i t sum_pq alpha_pq Z_p Z_q)`.

pub mod error;
pub mod fermion;
pub mod network;
pub mod noise;
pub mod qcore;
pub mod refocus;
pub mod topology;

pub use error::{Error, Result};
