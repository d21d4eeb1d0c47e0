// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Gate synthesis over the native entangler, fermionic swap network Trotter
//! circuits, and the circuit simulator.

mod circuit;
mod gates;
mod simulate;
mod synth;
mod trotter;

pub use circuit::{Circuit, Element};
pub use gates::{fsg_matrix, FsgParams, GateOp, LocalGate, LocalOp, TwoQubitGate};
pub use simulate::{circuit_unitary, simulate_circuit, Simulator};
pub use synth::{
    cphase_zz_angle, decompose_fsg, lower_to_analog, lower_to_cnots, synthesize_cnot,
    synthesize_cphase, OrderPolicy, CNOT_ZZ_ANGLE,
};
pub use trotter::{
    swap_network_layers, trotter_step_spinful, trotter_step_spinless, trotter_step_spinless_from,
    Backend, TrotterStep,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::{
        exact_evolution, jordan_wigner, random_hamiltonian, reorder_unitary, FermionHamiltonian,
        ModeOrder,
    };
    use crate::qcore::{
        mat4_to_matrix, unitary_distance_up_to_phase, CMatrix, QuantumState, C64, ONE, ZERO,
    };
    use crate::topology::CouplingGraph;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
        unitary_distance_up_to_phase(a, b)
    }

    #[test]
    fn fsg_special_points() {
        let swap = fsg_matrix(FsgParams::fswap());
        let m = swap.matrix();
        assert_eq!(m[(1, 2)], ONE);
        assert_eq!(m[(2, 1)], ONE);
        assert!((m[(3, 3)] + ONE).norm() < 1e-15);
        assert!(m[(1, 1)].norm() < 1e-15);
        let full = fsg_matrix(FsgParams::new(PI, PI));
        let m = full.matrix();
        assert!((m[(1, 1)] - C64::new(0.0, -1.0)).norm() < 1e-15);
        assert!(m[(1, 2)].norm() < 1e-15);
    }

    /// F(phi, theta) = exp(-i W n n dt) exp(-i T hop dt) fswap, assembled in
    /// the two-mode occupation basis.
    #[test]
    fn fsg_is_interaction_hopping_swap() {
        for &(t, w, dt) in &[(0.3, -0.7, 0.2), (-1.1, 0.4, 0.5), (0.0, 2.0, 0.1)] {
            let phi = 2.0 * t * dt;
            let theta = -w * dt + PI;
            let mut interaction = CMatrix::identity(4, 4);
            interaction[(3, 3)] = C64::from_polar(1.0, -w * dt);
            let (s, c) = (t * dt).sin_cos();
            let mut hop = CMatrix::identity(4, 4);
            hop[(1, 1)] = C64::new(c, 0.0);
            hop[(2, 2)] = C64::new(c, 0.0);
            hop[(1, 2)] = C64::new(0.0, -s);
            hop[(2, 1)] = C64::new(0.0, -s);
            let mut fswap = CMatrix::zeros(4, 4);
            fswap[(0, 0)] = ONE;
            fswap[(1, 2)] = ONE;
            fswap[(2, 1)] = ONE;
            fswap[(3, 3)] = -ONE;
            let oracle = interaction * hop * fswap;
            let f = fsg_matrix(FsgParams::new(phi, theta));
            assert!((f.matrix() - oracle).iter().all(|z| z.norm() < 1e-14));
        }
    }

    #[test]
    fn cnot_fragment() {
        let frag = synthesize_cnot();
        let analog: Vec<f64> = frag
            .elements()
            .iter()
            .filter_map(|e| match e {
                Element::Analog(t) => Some(*t),
                _ => None,
            })
            .collect();
        assert_eq!(analog, vec![FRAC_PI_4]);
        let u = circuit_unitary(&frag).unwrap();
        let cnot = mat4_to_matrix(&TwoQubitGate::Cnot.matrix());
        assert!(dist(u.matrix(), &cnot) < 1e-12);
        let out = simulate_circuit(&frag, &QuantumState::basis(2, 0b10).unwrap()).unwrap();
        let amps = out.amplitudes().unwrap();
        assert!((amps[0b11].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cphase_fragment() {
        assert!(cphase_zz_angle(0.0) == 0.0);
        for &phi in &[0.0, PI, -2.5, 1.0, 7.0] {
            let c = synthesize_cphase(phi);
            let u = circuit_unitary(&c).unwrap();
            let want = mat4_to_matrix(&TwoQubitGate::Cphase(phi).matrix());
            assert!(dist(u.matrix(), &want) < 1e-12, "phi = {phi}");
            assert!((0.0..2.0 * PI).contains(&cphase_zz_angle(phi)));
        }
    }

    #[test]
    fn fsg_decomposition() {
        for &(phi, theta) in &[(0.0, PI), (0.3, 2.0), (-1.2, -0.4), (PI, PI)] {
            let p = FsgParams::new(phi, theta);
            let c = decompose_fsg(p);
            assert_eq!(c.cnot_count(), 3);
            let u = circuit_unitary(&c).unwrap();
            assert!(dist(u.matrix(), fsg_matrix(p).matrix()) < 1e-10, "({phi}, {theta})");
        }
    }

    #[test]
    fn swap_network_meets_every_pair_once() {
        for n in [2usize, 4, 6, 7] {
            let mut order: Vec<usize> = (0..n).collect();
            let mut met = vec![vec![0; n]; n];
            for layer in swap_network_layers(n) {
                for (i, j) in layer {
                    let (a, b) = (order[i], order[j]);
                    met[a.min(b)][a.max(b)] += 1;
                    order.swap(i, j);
                }
            }
            for a in 0..n {
                for b in a + 1..n {
                    assert_eq!(met[a][b], 1, "n = {n}, pair ({a}, {b})");
                }
            }
            assert_eq!(order, (0..n).rev().collect::<Vec<_>>());
        }
    }

    #[test]
    fn spinless_step_shapes() {
        let h = random_hamiltonian(4, 0.1, 1).unwrap();
        let s = trotter_step_spinless(&h, 0.1, &Backend::Fsg).unwrap();
        assert_eq!(s.circuit.fsg_count(), 6);
        assert_eq!(s.final_order, ModeOrder::identity(4).reversed());
        let d = trotter_step_spinless(&h, 0.1, &Backend::Digital).unwrap();
        assert_eq!(d.circuit.cnot_count(), 18);
        assert!(trotter_step_spinless(&random_hamiltonian(3, 0.1, 1).unwrap(), 0.1, &Backend::Fsg).is_err());
        let two = trotter_step_spinless(&random_hamiltonian(2, 0.1, 1).unwrap(), 0.1, &Backend::Fsg).unwrap();
        assert_eq!(two.circuit.fsg_count(), 1);
    }

    #[test]
    fn backends_agree() {
        let h = random_hamiltonian(4, 0.3, 5).unwrap();
        let fsg = circuit_unitary(&trotter_step_spinless(&h, 0.5, &Backend::Fsg).unwrap().circuit).unwrap();
        let dig = circuit_unitary(&trotter_step_spinless(&h, 0.5, &Backend::Digital).unwrap().circuit).unwrap();
        let dev = CouplingGraph::from_edges(4, [(0, 1, 1.0), (1, 2, 1.5), (2, 3, 0.75), (0, 3, 2.0)]).unwrap();
        let da = circuit_unitary(
            &trotter_step_spinless(&h, 0.5, &Backend::digital_analog(dev)).unwrap().circuit,
        )
        .unwrap();
        assert!(dist(fsg.matrix(), dig.matrix()) < 1e-10);
        assert!(dist(fsg.matrix(), da.matrix()) < 1e-10);
    }

    #[test]
    fn da_backend_needs_a_path() {
        let h = FermionHamiltonian::zero(4);
        let dev = CouplingGraph::from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        assert!(trotter_step_spinless(&h, 0.1, &Backend::digital_analog(dev)).is_err());
    }

    #[test]
    fn step_approximates_exact_evolution() {
        let h = random_hamiltonian(4, 1.0, 11).unwrap();
        let jw = jordan_wigner(&h, &ModeOrder::identity(4)).unwrap();
        let rev = reorder_unitary(&ModeOrder::identity(4), &ModeOrder::identity(4).reversed()).unwrap();
        let err = |dt: f64| {
            let c = trotter_step_spinless(&h, dt, &Backend::Fsg).unwrap().circuit;
            let u = circuit_unitary(&c).unwrap();
            let exact = rev.matrix() * exact_evolution(&jw, dt).unwrap().matrix();
            dist(u.matrix(), &exact)
        };
        let (a, b) = (err(0.05), err(0.025));
        assert!(a < 1e-2, "{a}");
        assert!((a / b - 4.0).abs() < 1.2, "ratio {}", a / b);
    }

    #[test]
    fn empty_circuit_and_single_x() {
        let c = Circuit::new(3);
        let s = QuantumState::basis(3, 0).unwrap();
        assert_eq!(simulate_circuit(&c, &s).unwrap(), s);
        let mut x = Circuit::new(3);
        x.push(Element::Local(vec![LocalOp::new(0, LocalGate::X)])).unwrap();
        let out = simulate_circuit(&x, &s).unwrap();
        assert_eq!(out.amplitudes().unwrap()[0b100], ONE);
        assert_eq!(out.amplitudes().unwrap()[0], ZERO);
    }

    #[test]
    fn circuit_text_round_trip() {
        let h = random_hamiltonian(4, 0.1, 2).unwrap();
        let c = trotter_step_spinless(&h, 0.1, &Backend::digital_analog(CouplingGraph::chain(4)))
            .unwrap()
            .circuit;
        assert_eq!(Circuit::from_text(&c.to_text()).unwrap(), c);
        let d = trotter_step_spinless(&h, 0.1, &Backend::Fsg).unwrap().circuit;
        assert_eq!(Circuit::from_text(&d.to_text()).unwrap(), d);
        assert!(Circuit::from_text("qubits 2\ngates cnot 0 0\n").is_err());
        assert!(matches!(
            Circuit::from_text("qubits 2\nlocal q 0\n"),
            Err(crate::Error::Parse { line: 2, .. })
        ));
    }
}
