// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Fermionic Hamiltonians and their Jordan-Wigner images.
//!
//! Spinless model over `n` modes:
//!
//! ```text
//! H = sum_n U_n a+_n a_n + sum_{n != m} T_nm a+_n a_m + sum_{n != m} V_nm n_n n_m
//! ```
//!
//! Only real symmetric hopping is supported. Qubit position `k` holds mode
//! `order[k]`; the Jordan-Wigner string of position `k` is `Z` on every
//! position before it, and `|1>` is the occupied state.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qcore::{
    check_qubit_count, expm_hermitian, hermiticity_error, seeded_rng, CMatrix, Unitary, C64, ZERO,
};

/// Largest mode count for the dense Jordan-Wigner construction.
pub const MAX_JW_MODES: usize = 10;
/// Largest matrix dimension accepted by [`exact_evolution`].
pub const MAX_EVOLUTION_DIM: usize = 1 << 10;
const SYMMETRY_TOL: f64 = 1e-12;

/// Assignment of fermionic modes to qubit positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModeOrder {
    modes: Vec<usize>,
}

impl ModeOrder {
    /// `modes[k]` is the mode held by position `k`.
    pub fn new(modes: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; modes.len()];
        for &m in &modes {
            if m >= modes.len() || std::mem::replace(&mut seen[m], true) {
                return Err(Error::domain(format!("{modes:?} is not a permutation")));
            }
        }
        Ok(ModeOrder { modes })
    }

    pub fn identity(n: usize) -> Self {
        ModeOrder {
            modes: (0..n).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut modes = self.modes.clone();
        modes.reverse();
        ModeOrder { modes }
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn mode_at(&self, position: usize) -> usize {
        self.modes[position]
    }

    pub fn position_of(&self, mode: usize) -> usize {
        self.modes.iter().position(|&m| m == mode).expect("mode in range")
    }

    pub fn swap_positions(&mut self, i: usize, j: usize) {
        self.modes.swap(i, j);
    }
}

/// Spinless Hamiltonian tables `U_n`, `T_nm`, `V_nm`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionHamiltonian {
    onsite: Vec<f64>,
    hopping: DMatrix<f64>,
    interaction: DMatrix<f64>,
}

fn check_square(name: &str, m: &DMatrix<f64>, n: usize) -> Result<()> {
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::domain(format!(
            "{name} is {}x{}, expected {n}x{n}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::domain(format!("{name} has non-finite entries")));
    }
    Ok(())
}

fn check_symmetric(name: &str, m: &DMatrix<f64>) -> Result<()> {
    let err = (m - m.transpose()).amax();
    if err > SYMMETRY_TOL {
        return Err(Error::domain(format!("{name} is not symmetric (error {err:.2e})")));
    }
    Ok(())
}

/// Real part of a hopping matrix given with complex entries. Complex
/// hopping is not representable by the FSG parameterization.
pub fn real_hopping(t: &CMatrix) -> Result<DMatrix<f64>> {
    if t.iter().any(|z| z.im != 0.0) {
        return Err(Error::domain("complex hopping amplitudes are not supported"));
    }
    Ok(t.map(|z| z.re))
}

impl FermionHamiltonian {
    /// `onsite[n] = U_n`, `hopping[(n, m)] = T_nm` (symmetric), and
    /// `interaction[(n, m)] = V_nm` (zero diagonal, not necessarily
    /// symmetric: the pair `(n, m)` carries `V_nm + V_mn`).
    pub fn new(onsite: Vec<f64>, hopping: DMatrix<f64>, interaction: DMatrix<f64>) -> Result<Self> {
        let n = onsite.len();
        if onsite.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("onsite energies must be finite"));
        }
        check_square("hopping matrix", &hopping, n)?;
        check_square("interaction matrix", &interaction, n)?;
        check_symmetric("hopping matrix", &hopping)?;
        if (0..n).any(|k| interaction[(k, k)] != 0.0) {
            return Err(Error::domain("interaction matrix must have a zero diagonal"));
        }
        Ok(FermionHamiltonian {
            onsite,
            hopping,
            interaction,
        })
    }

    pub fn zero(n_modes: usize) -> Self {
        FermionHamiltonian {
            onsite: vec![0.0; n_modes],
            hopping: DMatrix::zeros(n_modes, n_modes),
            interaction: DMatrix::zeros(n_modes, n_modes),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.onsite.len()
    }

    pub fn onsite(&self) -> &[f64] {
        &self.onsite
    }

    pub fn hopping(&self) -> &DMatrix<f64> {
        &self.hopping
    }

    pub fn interaction(&self) -> &DMatrix<f64> {
        &self.interaction
    }

    /// Coefficient of `a+_n a_m + a+_m a_n`.
    pub fn pair_hopping(&self, n: usize, m: usize) -> f64 {
        self.hopping[(n, m)]
    }

    /// Coefficient of `n_n n_m`: `V_nm + V_mn`.
    pub fn pair_interaction(&self, n: usize, m: usize) -> f64 {
        self.interaction[(n, m)] + self.interaction[(m, n)]
    }
}

/// Spin-1/2 model on `n_sites` sites: hopping tables for each species and an
/// on-site `V_n n_up n_down` term.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinfulHamiltonian {
    hop_up: DMatrix<f64>,
    hop_down: DMatrix<f64>,
    onsite: Vec<f64>,
}

impl SpinfulHamiltonian {
    pub fn new(hop_up: DMatrix<f64>, hop_down: DMatrix<f64>, onsite: Vec<f64>) -> Result<Self> {
        let n = onsite.len();
        check_square("spin-up hopping", &hop_up, n)?;
        check_square("spin-down hopping", &hop_down, n)?;
        check_symmetric("spin-up hopping", &hop_up)?;
        check_symmetric("spin-down hopping", &hop_down)?;
        if onsite.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("onsite interactions must be finite"));
        }
        Ok(SpinfulHamiltonian {
            hop_up,
            hop_down,
            onsite,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.onsite.len()
    }

    pub fn hop_up(&self) -> &DMatrix<f64> {
        &self.hop_up
    }

    pub fn hop_down(&self) -> &DMatrix<f64> {
        &self.hop_down
    }

    pub fn onsite(&self) -> &[f64] {
        &self.onsite
    }

    /// One species as a spinless Hamiltonian (no interaction).
    pub fn species(&self, up: bool) -> FermionHamiltonian {
        let n = self.n_sites();
        FermionHamiltonian {
            onsite: vec![0.0; n],
            hopping: if up { self.hop_up.clone() } else { self.hop_down.clone() },
            interaction: DMatrix::zeros(n, n),
        }
    }
}

/// Random spinless Hamiltonian: `T_nm` (`n < m`, mirrored) and `V_nm`
/// (`n != m`) i.i.d. uniform on `[-bound, bound]`, `U_n = 0`.
pub fn random_hamiltonian(n_modes: usize, bound: f64, seed: u64) -> Result<FermionHamiltonian> {
    if !(bound.is_finite() && bound >= 0.0) {
        return Err(Error::domain(format!("bound must be >= 0, got {bound}")));
    }
    let mut rng = seeded_rng(seed);
    let mut draw = || bound * (2.0 * rng.random::<f64>() - 1.0);
    let mut hopping = DMatrix::zeros(n_modes, n_modes);
    let mut interaction = DMatrix::zeros(n_modes, n_modes);
    for n in 0..n_modes {
        for m in 0..n_modes {
            if n < m {
                let t = draw();
                hopping[(n, m)] = t;
                hopping[(m, n)] = t;
            }
            if n != m {
                interaction[(n, m)] = draw();
            }
        }
    }
    FermionHamiltonian::new(vec![0.0; n_modes], hopping, interaction)
}

/// Random spin-1/2 Hamiltonian with the same distribution per table.
pub fn random_spinful_hamiltonian(n_sites: usize, bound: f64, seed: u64) -> Result<SpinfulHamiltonian> {
    let up = random_hamiltonian(n_sites, bound, crate::qcore::derive_seed(seed, 0))?;
    let down = random_hamiltonian(n_sites, bound, crate::qcore::derive_seed(seed, 1))?;
    let mut rng = seeded_rng(crate::qcore::derive_seed(seed, 2));
    let onsite = (0..n_sites)
        .map(|_| bound * (2.0 * rng.random::<f64>() - 1.0))
        .collect();
    SpinfulHamiltonian::new(up.hopping, down.hopping, onsite)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pauli {
    X,
    Y,
    Z,
}

/// Action of a Pauli string on basis state `x`: returns `(coefficient, y)`
/// with `P |x> = coefficient |y>`.
fn pauli_string_on(string: &[(usize, Pauli)], n_qubits: usize, x: usize) -> (C64, usize) {
    let mut coef = C64::new(1.0, 0.0);
    let mut y = x;
    for &(q, p) in string {
        let mask = 1usize << (n_qubits - 1 - q);
        let one = y & mask != 0;
        match p {
            Pauli::X => y ^= mask,
            Pauli::Y => {
                // Y|0> = i|1>, Y|1> = -i|0>
                coef *= if one { C64::new(0.0, -1.0) } else { C64::new(0.0, 1.0) };
                y ^= mask;
            }
            Pauli::Z => {
                if one {
                    coef = -coef;
                }
            }
        }
    }
    (coef, y)
}

fn add_pauli_term(h: &mut CMatrix, n_qubits: usize, coef: f64, string: &[(usize, Pauli)]) {
    for x in 0..h.ncols() {
        let (c, y) = pauli_string_on(string, n_qubits, x);
        h[(y, x)] += c * coef;
    }
}

/// Jordan-Wigner image of `h` with position `k` placed on physical qubit
/// `qubits[k]` of an `n_total`-qubit register.
pub fn jordan_wigner_on(
    h: &FermionHamiltonian,
    order: &ModeOrder,
    qubits: &[usize],
    n_total: usize,
) -> Result<CMatrix> {
    let n = h.n_modes();
    if order.len() != n || qubits.len() != n {
        return Err(Error::domain("mode order, qubit map and Hamiltonian sizes differ"));
    }
    if n > MAX_JW_MODES {
        return Err(Error::Resource(format!(
            "dense Jordan-Wigner construction supports at most {MAX_JW_MODES} modes, got {n}"
        )));
    }
    check_qubit_count(n_total)?;
    let dim = 1usize << n_total;
    let mut out = CMatrix::zeros(dim, dim);
    // n_k = (I - Z_k) / 2
    for (k, &q) in qubits.iter().enumerate() {
        let u = h.onsite[order.mode_at(k)];
        if u != 0.0 {
            add_pauli_term(&mut out, n_total, u / 2.0, &[]);
            add_pauli_term(&mut out, n_total, -u / 2.0, &[(q, Pauli::Z)]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (mi, mj) = (order.mode_at(i), order.mode_at(j));
            // a+_i a_j + h.c. = (X_i Z..Z X_j + Y_i Z..Z Y_j) / 2 for i < j
            let t = h.pair_hopping(mi, mj);
            if t != 0.0 {
                let between: Vec<(usize, Pauli)> = (i + 1..j).map(|k| (qubits[k], Pauli::Z)).collect();
                for p in [Pauli::X, Pauli::Y] {
                    let mut s = vec![(qubits[i], p)];
                    s.extend_from_slice(&between);
                    s.push((qubits[j], p));
                    add_pauli_term(&mut out, n_total, t / 2.0, &s);
                }
            }
            // n_i n_j = (I - Z_i - Z_j + Z_i Z_j) / 4
            let w = h.pair_interaction(mi, mj);
            if w != 0.0 {
                let (qi, qj) = (qubits[i], qubits[j]);
                add_pauli_term(&mut out, n_total, w / 4.0, &[]);
                add_pauli_term(&mut out, n_total, -w / 4.0, &[(qi, Pauli::Z)]);
                add_pauli_term(&mut out, n_total, -w / 4.0, &[(qj, Pauli::Z)]);
                add_pauli_term(&mut out, n_total, w / 4.0, &[(qi, Pauli::Z), (qj, Pauli::Z)]);
            }
        }
    }
    Ok(out)
}

/// Jordan-Wigner image of `h` on `n_modes` qubits, position `k` on qubit `k`.
pub fn jordan_wigner(h: &FermionHamiltonian, order: &ModeOrder) -> Result<CMatrix> {
    let n = h.n_modes();
    if n > MAX_JW_MODES {
        return Err(Error::Resource(format!(
            "dense Jordan-Wigner construction supports at most {MAX_JW_MODES} modes, got {n}"
        )));
    }
    let qubits: Vec<usize> = (0..n).collect();
    jordan_wigner_on(h, order, &qubits, n)
}

/// Qubit of site position `k` of one species on the two-leg ladder.
pub fn ladder_qubit(position: usize, up: bool) -> usize {
    2 * position + usize::from(!up)
}

/// Qubit Hamiltonian of the spin-1/2 model on the ladder layout (spin-up
/// position `k` on qubit `2k`, spin-down on `2k + 1`), both species in
/// `order`. Each species has its own Jordan-Wigner string along its leg.
pub fn spinful_qubit_hamiltonian(h: &SpinfulHamiltonian, order: &ModeOrder) -> Result<CMatrix> {
    let n = h.n_sites();
    if order.len() != n {
        return Err(Error::domain("mode order and Hamiltonian sizes differ"));
    }
    let total = 2 * n;
    check_qubit_count(total)?;
    let up: Vec<usize> = (0..n).map(|k| ladder_qubit(k, true)).collect();
    let down: Vec<usize> = (0..n).map(|k| ladder_qubit(k, false)).collect();
    let mut out = jordan_wigner_on(&h.species(true), order, &up, total)?;
    out += jordan_wigner_on(&h.species(false), order, &down, total)?;
    for k in 0..n {
        let v = h.onsite[order.mode_at(k)];
        if v == 0.0 {
            continue;
        }
        let (a, b) = (up[k], down[k]);
        add_pauli_term(&mut out, total, v / 4.0, &[]);
        add_pauli_term(&mut out, total, -v / 4.0, &[(a, Pauli::Z)]);
        add_pauli_term(&mut out, total, -v / 4.0, &[(b, Pauli::Z)]);
        add_pauli_term(&mut out, total, v / 4.0, &[(a, Pauli::Z), (b, Pauli::Z)]);
    }
    Ok(out)
}

/// `exp(-i H dt)` by Hermitian eigendecomposition.
pub fn exact_evolution(h: &CMatrix, dt: f64) -> Result<Unitary> {
    if h.nrows() != h.ncols() {
        return Err(Error::domain("Hamiltonian matrix is not square"));
    }
    if h.nrows() > MAX_EVOLUTION_DIM {
        return Err(Error::Resource(format!(
            "exact evolution supports dimension <= {MAX_EVOLUTION_DIM}, got {}",
            h.nrows()
        )));
    }
    let err = hermiticity_error(h);
    if err > 1e-9 {
        return Err(Error::domain(format!("Hamiltonian is not Hermitian (error {err:.2e})")));
    }
    Unitary::new(expm_hermitian(h, dt))
}

/// Sign and target of re-expressing the occupation state `x` (positions in
/// `from`) in the order `to`: the parity of the permutation among occupied
/// modes.
fn reorder_basis(x: usize, from: &ModeOrder, to: &ModeOrder, qubits: &[usize], n_total: usize) -> (f64, usize) {
    let bit = |q: usize| 1usize << (n_total - 1 - q);
    // Occupied modes in creation order of `from`.
    let occupied: Vec<usize> = (0..from.len())
        .filter(|&k| x & bit(qubits[k]) != 0)
        .map(|k| from.mode_at(k))
        .collect();
    let target_pos: Vec<usize> = occupied.iter().map(|&m| to.position_of(m)).collect();
    let mut inversions = 0;
    for a in 0..target_pos.len() {
        for b in a + 1..target_pos.len() {
            if target_pos[a] > target_pos[b] {
                inversions += 1;
            }
        }
    }
    let mut y = x;
    for &q in qubits {
        y &= !bit(q);
    }
    for &p in &target_pos {
        y |= bit(qubits[p]);
    }
    (if inversions % 2 == 0 { 1.0 } else { -1.0 }, y)
}

/// Unitary mapping a state encoded in `from` to the same fermionic state
/// encoded in `to`, acting on `qubits` of an `n_total`-qubit register.
pub fn reorder_unitary_on(from: &ModeOrder, to: &ModeOrder, qubits: &[usize], n_total: usize) -> Result<CMatrix> {
    if from.len() != to.len() || qubits.len() != from.len() {
        return Err(Error::domain("mode orders and qubit map differ in size"));
    }
    check_qubit_count(n_total)?;
    let dim = 1usize << n_total;
    let mut out = CMatrix::from_element(dim, dim, ZERO);
    for x in 0..dim {
        let (s, y) = reorder_basis(x, from, to, qubits, n_total);
        out[(y, x)] = C64::new(s, 0.0);
    }
    Ok(out)
}

/// [`reorder_unitary_on`] for positions on qubits `0..n`.
pub fn reorder_unitary(from: &ModeOrder, to: &ModeOrder) -> Result<Unitary> {
    let qubits: Vec<usize> = (0..from.len()).collect();
    Unitary::new(reorder_unitary_on(from, to, &qubits, from.len())?)
}

/// Reorders both species of the ladder layout.
pub fn spinful_reorder_unitary(from: &ModeOrder, to: &ModeOrder) -> Result<Unitary> {
    let n = from.len();
    let up: Vec<usize> = (0..n).map(|k| ladder_qubit(k, true)).collect();
    let down: Vec<usize> = (0..n).map(|k| ladder_qubit(k, false)).collect();
    let a = reorder_unitary_on(from, to, &up, 2 * n)?;
    let b = reorder_unitary_on(from, to, &down, 2 * n)?;
    Unitary::new(a * b)
}
