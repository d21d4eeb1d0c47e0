// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra for up to [`MAX_QUBITS`] qubits.
//!
//! States are either statevectors or density matrices. Gate kernels act in
//! place on amplitude slices; qubit 0 is the most significant bit of a basis
//! index, so `|q0 q1 ... q(n-1)>` has index `sum q_k 2^(n-1-k)`.
//!
//! Matrix functions (square roots, exponentials) go through a Hermitian
//! eigendecomposition. Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::topology::CouplingGraph;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type Mat2 = [[C64; 2]; 2];
pub type Mat4 = [[C64; 4]; 4];

/// Largest register the dense kernels accept.
pub const MAX_QUBITS: usize = 12;
/// Statevector norm tolerance.
pub const NORM_TOL: f64 = 1e-12;
/// Hermiticity and trace tolerance for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest admissible eigenvalue of a density matrix.
/// Largest eigenvalue above `1 - PURE_TOL` marks a density matrix as pure.
pub const PURE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance of the `U^dagger U = I` check.
pub const UNITARY_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn check_qubit_count(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_QUBITS {
        return Err(Error::Resource(format!(
            "{n_qubits} qubits requested, dense kernels support at most {MAX_QUBITS}"
        )));
    }
    Ok(())
}

#[inline]
pub fn qubit_mask(n_qubits: usize, qubit: usize) -> usize {
    1 << (n_qubits - 1 - qubit)
}

#[inline]
pub fn bit(index: usize, n_qubits: usize, qubit: usize) -> bool {
    index & qubit_mask(n_qubits, qubit) != 0
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_y() -> Mat2 {
    [[ZERO, -I], [I, ZERO]]
}

pub fn pauli_z() -> Mat2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

pub fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn mat2_to_matrix(m: &Mat2) -> CMatrix {
    CMatrix::from_fn(2, 2, |r, c| m[r][c])
}

pub fn mat4_to_matrix(m: &Mat4) -> CMatrix {
    CMatrix::from_fn(4, 4, |r, c| m[r][c])
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Dense `2^n x 2^n` matrix of a one-qubit operator acting on `qubit`.
pub fn embed_1q(n_qubits: usize, qubit: usize, m: &Mat2) -> CMatrix {
    let dim = 1 << n_qubits;
    let mut out = CMatrix::identity(dim, dim);
    for col in 0..dim {
        let mut column: Vec<C64> = out.column(col).iter().copied().collect();
        apply_1q(&mut column, n_qubits, qubit, m);
        out.set_column(col, &nalgebra::DVector::from_vec(column));
    }
    out
}

/// Dense matrix of a two-qubit operator; `m` is written in the basis
/// `|a b>` with `a` the more significant bit.
pub fn embed_2q(n_qubits: usize, a: usize, b: usize, m: &Mat4) -> CMatrix {
    let dim = 1 << n_qubits;
    let mut out = CMatrix::identity(dim, dim);
    for col in 0..dim {
        let mut column: Vec<C64> = out.column(col).iter().copied().collect();
        apply_2q(&mut column, n_qubits, a, b, m);
        out.set_column(col, &nalgebra::DVector::from_vec(column));
    }
    out
}

/// Applies a one-qubit operator to a statevector in place.
pub fn apply_1q(amps: &mut [C64], n_qubits: usize, qubit: usize, m: &Mat2) {
    let mask = qubit_mask(n_qubits, qubit);
    for i in 0..amps.len() {
        if i & mask == 0 {
            let j = i | mask;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = m[0][0] * a + m[0][1] * b;
            amps[j] = m[1][0] * a + m[1][1] * b;
        }
    }
}

/// Applies a two-qubit operator to a statevector in place.
pub fn apply_2q(amps: &mut [C64], n_qubits: usize, a: usize, b: usize, m: &Mat4) {
    assert_ne!(a, b, "two-qubit gate needs distinct qubits");
    let ma = qubit_mask(n_qubits, a);
    let mb = qubit_mask(n_qubits, b);
    for i in 0..amps.len() {
        if i & (ma | mb) == 0 {
            let idx = [i, i | mb, i | ma, i | ma | mb];
            let v = idx.map(|k| amps[k]);
            for (r, &k) in idx.iter().enumerate() {
                amps[k] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
            }
        }
    }
}

pub fn apply_diagonal(amps: &mut [C64], diag: &[C64]) {
    for (a, d) in amps.iter_mut().zip(diag) {
        *a *= d;
    }
}

/// `rho -> sum_k K rho K^dagger` for one-qubit Kraus operators.
pub fn apply_1q_channel(rho: &mut CMatrix, n_qubits: usize, qubit: usize, kraus: &[Mat2]) {
    let mask = qubit_mask(n_qubits, qubit);
    let dim = rho.nrows();
    for c0 in (0..dim).filter(|c| c & mask == 0) {
        let cols = [c0, c0 | mask];
        for r0 in (0..dim).filter(|r| r & mask == 0) {
            let rows = [r0, r0 | mask];
            let block = [
                [rho[(rows[0], cols[0])], rho[(rows[0], cols[1])]],
                [rho[(rows[1], cols[0])], rho[(rows[1], cols[1])]],
            ];
            let mut out = [[ZERO; 2]; 2];
            for k in kraus {
                // K * block * K^dagger
                let mut kb = [[ZERO; 2]; 2];
                for r in 0..2 {
                    for c in 0..2 {
                        kb[r][c] = k[r][0] * block[0][c] + k[r][1] * block[1][c];
                    }
                }
                for r in 0..2 {
                    for c in 0..2 {
                        out[r][c] += kb[r][0] * k[c][0].conj() + kb[r][1] * k[c][1].conj();
                    }
                }
            }
            for r in 0..2 {
                for c in 0..2 {
                    rho[(rows[r], cols[c])] = out[r][c];
                }
            }
        }
    }
}

/// `rho -> U rho U^dagger` for a two-qubit unitary. `rho` must be Hermitian.
pub fn apply_2q_density(rho: &mut CMatrix, n_qubits: usize, a: usize, b: usize, m: &Mat4) {
    let dim = rho.nrows();
    for col in rho.as_mut_slice().chunks_mut(dim) {
        apply_2q(col, n_qubits, a, b, m);
    }
    // (U rho)^dagger = rho U^dagger for Hermitian rho.
    rho.adjoint_mut();
    for col in rho.as_mut_slice().chunks_mut(dim) {
        apply_2q(col, n_qubits, a, b, m);
    }
}

pub fn apply_diagonal_density(rho: &mut CMatrix, diag: &[C64]) {
    let dim = rho.nrows();
    for c in 0..dim {
        let dc = diag[c].conj();
        for r in 0..dim {
            rho[(r, c)] *= diag[r] * dc;
        }
    }
}

/// Diagonal of `exp(-i t sum alpha_pq Z_p Z_q)` over the graph's edges.
pub fn zz_diagonal(graph: &CouplingGraph, duration: f64) -> Result<Vec<C64>> {
    let n = graph.n_qubits();
    check_qubit_count(n)?;
    let edges: Vec<(usize, usize, f64)> = graph
        .edges()
        .map(|e| (qubit_mask(n, e.p), qubit_mask(n, e.q), e.alpha))
        .collect();
    Ok((0..1usize << n)
        .map(|x| {
            let energy: f64 = edges
                .iter()
                .map(|&(mp, mq, alpha)| {
                    let parity = ((x & mp) != 0) ^ ((x & mq) != 0);
                    if parity {
                        -alpha
                    } else {
                        alpha
                    }
                })
                .sum();
            C64::from_polar(1.0, -energy * duration)
        })
        .collect())
}

/// The native entangler `J(t)` of a coupling graph as a dense unitary.
pub fn zz_evolution(graph: &CouplingGraph, duration: f64) -> Result<Unitary> {
    if !(duration >= 0.0) {
        return Err(Error::domain(format!("duration must be >= 0, got {duration}")));
    }
    let diag = zz_diagonal(graph, duration)?;
    let matrix = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag));
    Ok(Unitary {
        n_qubits: graph.n_qubits(),
        matrix,
    })
}

/// A unitary operator on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    n_qubits: usize,
    matrix: CMatrix,
}

impl Unitary {
    /// Wraps a matrix after checking that it is a unitary on whole qubits.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let n_qubits = qubits_for_dim(matrix.nrows())?;
        if matrix.ncols() != matrix.nrows() {
            return Err(Error::domain("unitary must be square"));
        }
        let u = Unitary { n_qubits, matrix };
        let err = u.unitarity_error();
        if err > UNITARY_TOL {
            return Err(Error::domain(format!(
                "matrix is not unitary: max |U^dagger U - I| = {err:.3e}"
            )));
        }
        Ok(u)
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        let n_qubits = matrix.nrows().trailing_zeros() as usize;
        Unitary { n_qubits, matrix }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let d = 1 << n_qubits;
        Unitary {
            n_qubits,
            matrix: CMatrix::identity(d, d),
        }
    }

    pub fn from_mat2(m: &Mat2) -> Result<Self> {
        Self::new(mat2_to_matrix(m))
    }

    pub fn from_mat4(m: &Mat4) -> Result<Self> {
        Self::new(mat4_to_matrix(m))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary {
            n_qubits: self.n_qubits,
            matrix: self.matrix.adjoint(),
        }
    }

    /// `next * self`: apply `self` first.
    pub fn then(&self, next: &Unitary) -> Unitary {
        Unitary {
            n_qubits: self.n_qubits,
            matrix: &next.matrix * &self.matrix,
        }
    }

    /// Largest entry of `|U^dagger U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim();
        let prod = self.matrix.adjoint() * &self.matrix;
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let target = if r == c { ONE } else { ZERO };
                worst = worst.max((prod[(r, c)] - target).norm());
            }
        }
        worst
    }
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::domain(format!("dimension {dim} is not a power of two")));
    }
    let n = dim.trailing_zeros() as usize;
    check_qubit_count(n)?;
    Ok(n)
}

/// Statevector or density matrix over `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub enum QuantumState {
    Pure { n_qubits: usize, amplitudes: Vec<C64> },
    Mixed { n_qubits: usize, rho: CMatrix },
}

impl QuantumState {
    /// Validated statevector.
    pub fn pure(amplitudes: Vec<C64>) -> Result<Self> {
        let n_qubits = qubits_for_dim(amplitudes.len())?;
        let s = QuantumState::Pure {
            n_qubits,
            amplitudes,
        };
        s.validate()?;
        Ok(s)
    }

    /// Validated density matrix.
    pub fn mixed(rho: CMatrix) -> Result<Self> {
        let n_qubits = qubits_for_dim(rho.nrows())?;
        if rho.ncols() != rho.nrows() {
            return Err(Error::domain("density matrix must be square"));
        }
        let s = QuantumState::Mixed { n_qubits, rho };
        s.validate()?;
        Ok(s)
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1 << n_qubits;
        if index >= dim {
            return Err(Error::domain(format!("basis index {index} out of range")));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(QuantumState::Pure {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            QuantumState::Pure { n_qubits, .. } | QuantumState::Mixed { n_qubits, .. } => {
                *n_qubits
            }
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits()
    }

    pub fn is_pure_kind(&self) -> bool {
        matches!(self, QuantumState::Pure { .. })
    }

    pub fn amplitudes(&self) -> Option<&[C64]> {
        match self {
            QuantumState::Pure { amplitudes, .. } => Some(amplitudes),
            QuantumState::Mixed { .. } => None,
        }
    }

    pub fn density(&self) -> Option<&CMatrix> {
        match self {
            QuantumState::Mixed { rho, .. } => Some(rho),
            QuantumState::Pure { .. } => None,
        }
    }

    /// Density-matrix form; `|psi><psi|` for a statevector.
    pub fn to_density(&self) -> CMatrix {
        match self {
            QuantumState::Mixed { rho, .. } => rho.clone(),
            QuantumState::Pure { amplitudes, .. } => {
                let v = nalgebra::DVector::from_column_slice(amplitudes);
                &v * v.adjoint()
            }
        }
    }

    pub fn into_mixed(self) -> QuantumState {
        match self {
            QuantumState::Pure { n_qubits, .. } => QuantumState::Mixed {
                n_qubits,
                rho: self.to_density(),
            },
            mixed => mixed,
        }
    }

    /// Checks the invariants: unit norm for statevectors; Hermitian, unit
    /// trace and positive semidefinite for density matrices.
    pub fn validate(&self) -> Result<()> {
        match self {
            QuantumState::Pure { amplitudes, .. } => {
                let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                if (norm - 1.0).abs() > NORM_TOL {
                    return Err(Error::domain(format!("statevector norm {norm} != 1")));
                }
            }
            QuantumState::Mixed { rho, .. } => {
                let herm = hermiticity_error(rho);
                if herm > HERMITIAN_TOL {
                    return Err(Error::domain(format!(
                        "density matrix not Hermitian (error {herm:.3e})"
                    )));
                }
                let tr = rho.trace();
                if (tr - ONE).norm() > HERMITIAN_TOL {
                    return Err(Error::domain(format!("density matrix trace {tr} != 1")));
                }
                let min = min_eigenvalue(rho);
                if min < -PSD_TOL {
                    return Err(Error::domain(format!(
                        "density matrix has negative eigenvalue {min:.3e}"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn hermiticity_error(m: &CMatrix) -> f64 {
    let d = m.nrows();
    let mut worst = 0.0f64;
    for r in 0..d {
        for c in r..d {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of `m`.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), m.nrows(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigen(m).0.first().copied().unwrap_or(0.0)
}

/// `V f(D) V^dagger` for a Hermitian matrix with spectrum `D`.
fn hermitian_function(values: &[f64], vectors: &CMatrix, f: impl Fn(f64) -> C64) -> CMatrix {
    let mut scaled = vectors.clone();
    for (c, &lambda) in values.iter().enumerate() {
        let fl = f(lambda);
        for r in 0..scaled.nrows() {
            scaled[(r, c)] *= fl;
        }
    }
    scaled * vectors.adjoint()
}

/// Square root of a positive semidefinite matrix.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = hermitian_eigen(m);
    if let Some(&min) = values.first() {
        if min < -PSD_TOL {
            return Err(Error::domain(format!(
                "matrix is not positive semidefinite (eigenvalue {min:.3e})"
            )));
        }
    }
    Ok(hermitian_function(&values, &vectors, |l| {
        C64::new(l.max(0.0).sqrt(), 0.0)
    }))
}

/// `exp(-i H t)` for Hermitian `H`.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(h);
    hermitian_function(&values, &vectors, |l| C64::from_polar(1.0, -l * t))
}

/// Process fidelity `|Col(A)^dagger Col(B)|^2 / (|Col(A)|^2 |Col(B)|^2)`
/// with `Col` the column-major flattening.
pub fn process_fidelity(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::domain(format!(
            "process fidelity of {:?} and {:?} matrices",
            a.shape(),
            b.shape()
        )));
    }
    // nalgebra storage is column-major, so the slices are Col(A) and Col(B).
    let (ca, cb) = (a.as_slice(), b.as_slice());
    let overlap: C64 = ca.iter().zip(cb).map(|(x, y)| x.conj() * y).sum();
    let na: f64 = ca.iter().map(|x| x.norm_sqr()).sum();
    let nb: f64 = cb.iter().map(|x| x.norm_sqr()).sum();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::domain("process fidelity of a zero matrix is undefined"));
    }
    Ok((overlap.norm_sqr() / (na * nb)).clamp(0.0, 1.0))
}

/// Uhlmann fidelity `(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
///
/// When either argument is a statevector the fidelity reduces to
/// `<psi|sigma|psi>`, which is what gets evaluated in that case.
pub fn state_fidelity(rho: &QuantumState, sigma: &QuantumState) -> Result<f64> {
    if rho.n_qubits() != sigma.n_qubits() {
        return Err(Error::domain("state fidelity of states with different sizes"));
    }
    let f = match (rho, sigma) {
        (QuantumState::Pure { amplitudes: a, .. }, QuantumState::Pure { amplitudes: b, .. }) => {
            a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<C64>().norm_sqr()
        }
        (QuantumState::Pure { amplitudes: psi, .. }, QuantumState::Mixed { rho: m, .. })
        | (QuantumState::Mixed { rho: m, .. }, QuantumState::Pure { amplitudes: psi, .. }) => {
            expectation(m, psi).re
        }
        (QuantumState::Mixed { rho: r, .. }, QuantumState::Mixed { rho: s, .. }) => {
            let (rv, rvec) = hermitian_eigen(r);
            let (sv, svec) = hermitian_eigen(s);
            for (name, v) in [("rho", &rv), ("sigma", &sv)] {
                if v.first().is_some_and(|&m| m < -PSD_TOL) {
                    return Err(Error::domain(format!("{name} is not positive semidefinite")));
                }
            }
            let d = rv.len();
            // Numerically pure arguments: the square roots below would turn
            // roundoff-level eigenvalues into 1e-8 errors.
            if rv[d - 1] >= 1.0 - PURE_TOL {
                let v: Vec<C64> = rvec.column(d - 1).iter().copied().collect();
                expectation(s, &v).re
            } else if sv[d - 1] >= 1.0 - PURE_TOL {
                let v: Vec<C64> = svec.column(d - 1).iter().copied().collect();
                expectation(r, &v).re
            } else {
                // (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 = ||sqrt(rho) sqrt(sigma)||_1^2
                let sqrt = |v: &[f64], vec: &CMatrix| {
                    hermitian_function(v, vec, |l| C64::new(l.max(0.0).sqrt(), 0.0))
                };
                let product = sqrt(&rv, &rvec) * sqrt(&sv, &svec);
                let nuclear: f64 = product.singular_values().iter().sum();
                nuclear * nuclear
            }
        }
    };
    Ok(f.clamp(0.0, 1.0))
}

/// `<psi| M |psi>`.
pub fn expectation(m: &CMatrix, psi: &[C64]) -> C64 {
    let d = psi.len();
    let mut acc = ZERO;
    for c in 0..d {
        if psi[c] == ZERO {
            continue;
        }
        let mut col = ZERO;
        for r in 0..d {
            col += psi[r].conj() * m[(r, c)];
        }
        acc += col * psi[c];
    }
    acc
}

/// Phase-insensitive distance `min_phi ||A - e^{i phi} B||_F / sqrt(dim)`.
///
/// For unitaries this equals `sqrt(2 - 2 |tr(A^dagger B)| / dim)` and is zero
/// exactly when `A = e^{i phi} B`. It is evaluated as an explicit difference
/// after aligning the phase, which keeps full precision near zero. This is
/// the circuit-equality test used throughout the crate.
pub fn unitary_distance_up_to_phase(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "distance between matrices of different shape");
    let overlap: C64 = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x.conj() * y)
        .sum();
    let phase = if overlap.norm() > 0.0 {
        (overlap / overlap.norm()).conj()
    } else {
        ONE
    };
    let sq: f64 = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .sum();
    (sq / a.nrows() as f64).sqrt()
}

/// The crate-wide random generator: ChaCha20 seeded through `seed_from_u64`.
pub fn seeded_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Derives an independent child seed (SplitMix64 finalizer over the pair).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(stream.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Haar-random pure state: normalized vector of i.i.d. standard complex
/// Gaussians drawn from [`seeded_rng`].
pub fn haar_random_state(n_qubits: usize, seed: u64) -> Result<QuantumState> {
    check_qubit_count(n_qubits)?;
    let mut rng = seeded_rng(seed);
    let mut amplitudes: Vec<C64> = (0..1usize << n_qubits)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            C64::new(re, im)
        })
        .collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amplitudes {
        *a /= norm;
    }
    Ok(QuantumState::Pure {
        n_qubits,
        amplitudes,
    })
}
