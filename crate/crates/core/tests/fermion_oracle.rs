// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Jordan-Wigner images checked against operators built directly in the
//! occupation basis from creation and annihilation operators.

use dasim::fermion::{
    exact_evolution, jordan_wigner, random_hamiltonian, random_spinful_hamiltonian,
    reorder_unitary, spinful_qubit_hamiltonian, FermionHamiltonian, ModeOrder,
};
use dasim::qcore::{CMatrix, C64};
use nalgebra::DMatrix;
use proptest::prelude::*;

/// Annihilator of the mode at `position`, sign from occupied positions
/// before it. Position 0 is the most significant bit.
fn annihilator(n: usize, position: usize) -> CMatrix {
    let dim = 1 << n;
    let bit = 1 << (n - 1 - position);
    let mut out = CMatrix::zeros(dim, dim);
    for x in 0..dim {
        if x & bit != 0 {
            let before = (0..position).filter(|&k| x & (1 << (n - 1 - k)) != 0).count();
            let sign = if before % 2 == 0 { 1.0 } else { -1.0 };
            out[(x ^ bit, x)] = C64::new(sign, 0.0);
        }
    }
    out
}

fn second_quantized(h: &FermionHamiltonian, order: &ModeOrder) -> CMatrix {
    let n = h.n_modes();
    let dim = 1 << n;
    let a: Vec<CMatrix> = (0..n).map(|k| annihilator(n, k)).collect();
    let ad: Vec<CMatrix> = a.iter().map(|m| m.adjoint()).collect();
    let num: Vec<CMatrix> = (0..n).map(|k| &ad[k] * &a[k]).collect();
    let mut out = CMatrix::zeros(dim, dim);
    let re = |x: f64| C64::new(x, 0.0);
    for i in 0..n {
        out += &num[i] * re(h.onsite()[order.mode_at(i)]);
        for j in i + 1..n {
            let (mi, mj) = (order.mode_at(i), order.mode_at(j));
            out += (&ad[i] * &a[j] + &ad[j] * &a[i]) * re(h.pair_hopping(mi, mj));
            out += &num[i] * &num[j] * re(h.pair_interaction(mi, mj));
        }
    }
    out
}

fn total_number(n: usize) -> CMatrix {
    let diag: Vec<C64> = (0..1usize << n).map(|x| C64::new(x.count_ones() as f64, 0.0)).collect();
    CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
}

fn order_strategy(n: usize) -> impl Strategy<Value = ModeOrder> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|m| ModeOrder::new(m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn jordan_wigner_matches_second_quantization(
        (n, order) in (2usize..=5).prop_flat_map(|n| (Just(n), order_strategy(n))),
        seed in any::<u64>(),
    ) {
        let h = random_hamiltonian(n, 1.0, seed).unwrap();
        let jw = jordan_wigner(&h, &order).unwrap();
        let oracle = second_quantized(&h, &order);
        prop_assert!((&jw - &oracle).camax() < 1e-13);
        prop_assert!((&jw - jw.adjoint()).camax() < 1e-15);
    }

    #[test]
    fn jordan_wigner_conserves_particle_number(n in 2usize..=6, seed in any::<u64>()) {
        let h = random_hamiltonian(n, 1.0, seed).unwrap();
        let jw = jordan_wigner(&h, &ModeOrder::identity(n)).unwrap();
        let num = total_number(n);
        prop_assert!((&jw * &num - &num * &jw).camax() < 1e-13);
    }

    #[test]
    fn reorder_unitary_intertwines_encodings(
        (n, from, to) in (2usize..=5).prop_flat_map(|n| (Just(n), order_strategy(n), order_strategy(n))),
        seed in any::<u64>(),
    ) {
        let h = random_hamiltonian(n, 1.0, seed).unwrap();
        let r = reorder_unitary(&from, &to).unwrap();
        let a = jordan_wigner(&h, &from).unwrap();
        let b = jordan_wigner(&h, &to).unwrap();
        prop_assert!((r.matrix() * a * r.matrix().adjoint() - b).camax() < 1e-13);
    }

    #[test]
    fn trace_counts_occupations(n in 2usize..=6, seed in any::<u64>()) {
        let h = random_hamiltonian(n, 1.0, seed).unwrap();
        let tr = jordan_wigner(&h, &ModeOrder::identity(n)).unwrap().trace();
        // Each n_k is 1 on half the basis states, each n_i n_j on a quarter.
        let half = (1u64 << (n - 1)) as f64;
        let mut want = half * h.onsite().iter().sum::<f64>();
        for i in 0..n {
            for j in i + 1..n {
                want += half / 2.0 * h.pair_interaction(i, j);
            }
        }
        prop_assert!((tr.re - want).abs() < 1e-10 && tr.im.abs() < 1e-12);
    }
}

#[test]
fn two_modes_in_occupation_basis() {
    let (u0, u1, t, v) = (0.3, -0.2, 0.7, 1.1);
    let hop = DMatrix::from_row_slice(2, 2, &[0.0, t, t, 0.0]);
    let int = DMatrix::from_row_slice(2, 2, &[0.0, v, 0.0, 0.0]);
    let h = FermionHamiltonian::new(vec![u0, u1], hop, int).unwrap();
    let m = jordan_wigner(&h, &ModeOrder::identity(2)).unwrap();
    // Basis |00>, |01>, |10>, |11>; |10> is mode 0 occupied.
    let want = [
        [0.0, 0.0, 0.0, 0.0],
        [0.0, u1, t, 0.0],
        [0.0, t, u0, 0.0],
        [0.0, 0.0, 0.0, u0 + u1 + v],
    ];
    for r in 0..4 {
        for c in 0..4 {
            assert!((m[(r, c)] - C64::new(want[r][c], 0.0)).norm() < 1e-15, "({r}, {c})");
        }
    }
}

#[test]
fn hopping_across_an_occupied_mode_picks_up_a_sign() {
    let mut hop = DMatrix::zeros(3, 3);
    hop[(0, 2)] = 1.0;
    hop[(2, 0)] = 1.0;
    let h = FermionHamiltonian::new(vec![0.0; 3], hop, DMatrix::zeros(3, 3)).unwrap();
    let m = jordan_wigner(&h, &ModeOrder::identity(3)).unwrap();
    // a+_0 a_2 |011> = -|110>; with mode 1 empty the sign is +.
    assert_eq!(m[(0b110, 0b011)], C64::new(-1.0, 0.0));
    assert_eq!(m[(0b100, 0b001)], C64::new(1.0, 0.0));
}

#[test]
fn evolution_matches_taylor_series() {
    let h = random_hamiltonian(3, 1.0, 4).unwrap();
    let jw = jordan_wigner(&h, &ModeOrder::identity(3)).unwrap();
    let dt = 0.3;
    let u = exact_evolution(&jw, dt).unwrap();
    let step = &jw * C64::new(0.0, -dt);
    let mut term = CMatrix::identity(8, 8);
    let mut series = term.clone();
    for k in 1..40 {
        term = &term * &step / C64::new(k as f64, 0.0);
        series += &term;
    }
    assert!((u.matrix() - series).camax() < 1e-13);
}

#[test]
fn spinful_model_splits_by_species() {
    // With no onsite term the two legs are independent: the up-only sector
    // reproduces the up species' spinless Hamiltonian.
    let mut h = random_spinful_hamiltonian(3, 1.0, 8).unwrap();
    h = dasim::fermion::SpinfulHamiltonian::new(h.hop_up().clone(), h.hop_down().clone(), vec![0.0; 3]).unwrap();
    let order = ModeOrder::identity(3);
    let full = spinful_qubit_hamiltonian(&h, &order).unwrap();
    let up = jordan_wigner(&h.species(true), &order).unwrap();
    // Up position k lives on ladder qubit 2k (MSB first in a 6-qubit register).
    let embed = |x: usize| -> usize {
        (0..3).filter(|&k| x & (1 << (2 - k)) != 0).map(|k| 1 << (5 - 2 * k)).sum()
    };
    for x in 0..8 {
        for y in 0..8 {
            assert!((full[(embed(y), embed(x))] - up[(y, x)]).norm() < 1e-14);
        }
    }
    let num = total_number(6);
    assert!((&full * &num - &num * &full).camax() < 1e-13);
}
