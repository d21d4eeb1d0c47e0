// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Refocusing schedules over the always-on `ZZ` coupling.
//!
//! A schedule is a list of analog intervals. During interval `i` each qubit
//! is in an even or odd parity state (an even or odd number of `X` gates has
//! been applied so far); odd parity flips the sign of the qubit's `Z`, so a
//! coupled edge accumulates
//!
//! ```text
//! C_pq = alpha_pq * sum_i s_p(i) s_q(i) t_i,     s = +1 (even) or -1 (odd)
//! ```
//!
//! All schedule arithmetic is exact: durations are [`BigRational`] and
//! floating couplings are converted without rounding.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::network::{circuit_unitary, Circuit, Element, LocalGate, LocalOp};
use crate::qcore::{unitary_distance_up_to_phase, zz_diagonal, CMatrix};
use crate::topology::{
    assign_sequences_with_min_order, CouplingGraph, EntityPartition, HadamardMatrix, TopologyKind,
};

/// Largest register for which verification also simulates the unitary.
pub const UNITARY_CHECK_MAX_QUBITS: usize = 6;
/// Phase-insensitive distance accepted by the unitary cross-check.
pub const UNITARY_CHECK_TOL: f64 = 1e-10;

/// Exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::domain(format!("{x} is not a finite number")))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `a/b`, an integer, or a plain decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.contains('/') || !s.contains('.') {
        return BigRational::from_str(s).ok();
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if (int.is_empty() && frac.is_empty())
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(digits, scale);
    Some(if neg { -r } else { r })
}

/// One analog interval and the parity of every qubit during it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub duration: BigRational,
    /// `true` = odd parity (the qubit's `Z` is sign-flipped).
    pub parities: Vec<bool>,
}

impl Segment {
    pub fn sign(&self, qubit: usize) -> i32 {
        if self.parities[qubit] {
            -1
        } else {
            1
        }
    }
}

/// Ordered analog intervals with per-qubit parities.
///
/// Text form, one segment per line (`#` starts a comment):
///
/// ```text
/// qubits 4
/// t_i 1/2 parities 0000
/// t_i 1/2 parities 0011
/// ```
///
/// The bitstring lists qubit 0 first. Durations are written as exact
/// rationals; decimals are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefocusSchedule {
    n_qubits: usize,
    segments: Vec<Segment>,
}

impl RefocusSchedule {
    pub fn new(n_qubits: usize, segments: Vec<Segment>) -> Result<Self> {
        for (k, s) in segments.iter().enumerate() {
            if s.parities.len() != n_qubits {
                return Err(Error::domain(format!(
                    "segment {k} has {} parities for {n_qubits} qubits",
                    s.parities.len()
                )));
            }
            if s.duration.is_negative() {
                return Err(Error::domain(format!("segment {k} has negative duration")));
            }
        }
        Ok(RefocusSchedule { n_qubits, segments })
    }

    pub fn empty(n_qubits: usize) -> Self {
        RefocusSchedule {
            n_qubits,
            segments: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_duration(&self) -> BigRational {
        self.segments
            .iter()
            .fold(BigRational::zero(), |acc, s| acc + &s.duration)
    }

    /// Number of analog blocks with nonzero duration.
    pub fn analog_block_count(&self) -> usize {
        self.segments.iter().filter(|s| !s.duration.is_zero()).count()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut segments = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["qubits", n] => {
                    if declared.is_some() || !segments.is_empty() {
                        return Err(Error::parse(line_no, "`qubits` must come first and once"));
                    }
                    declared = Some(
                        n.parse::<usize>()
                            .map_err(|_| Error::parse(line_no, format!("bad qubit count `{n}`")))?,
                    );
                }
                ["t_i", t, "parities", bits] => {
                    let duration = parse_rational(t)
                        .ok_or_else(|| Error::parse(line_no, format!("bad duration `{t}`")))?;
                    if duration.is_negative() {
                        return Err(Error::parse(line_no, "negative duration"));
                    }
                    let parities = bits
                        .chars()
                        .map(|c| match c {
                            '0' => Ok(false),
                            '1' => Ok(true),
                            _ => Err(Error::parse(line_no, format!("bad parity string `{bits}`"))),
                        })
                        .collect::<Result<Vec<bool>>>()?;
                    let n = *declared.get_or_insert(parities.len());
                    if parities.len() != n {
                        return Err(Error::parse(
                            line_no,
                            format!("expected {n} parity bits, found {}", parities.len()),
                        ));
                    }
                    segments.push(Segment { duration, parities });
                }
                _ => return Err(Error::parse(line_no, format!("unrecognized line `{line}`"))),
            }
        }
        let n = declared.ok_or_else(|| Error::parse(1, "empty schedule without `qubits` header"))?;
        RefocusSchedule::new(n, segments)
    }
}

impl fmt::Display for RefocusSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_qubits)?;
        for s in &self.segments {
            let bits: String = s.parities.iter().map(|&b| if b { '1' } else { '0' }).collect();
            writeln!(f, "t_i {} parities {}", s.duration, bits)?;
        }
        Ok(())
    }
}

impl FromStr for RefocusSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RefocusSchedule::from_text(s)
    }
}

/// Interaction pairs and the `ZZ` angle each must accumulate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompileTarget {
    partition: EntityPartition,
    angles: Vec<BigRational>,
}

impl CompileTarget {
    /// One angle per pair, in the partition's pair order.
    pub fn new(partition: EntityPartition, angles: Vec<BigRational>) -> Result<Self> {
        if angles.len() != partition.pairs().len() {
            return Err(Error::domain(format!(
                "{} angles for {} pairs",
                angles.len(),
                partition.pairs().len()
            )));
        }
        if let Some(a) = angles.iter().find(|a| a.is_negative()) {
            return Err(Error::domain(format!("target angle {a} is negative")));
        }
        Ok(CompileTarget { partition, angles })
    }

    pub fn from_f64(partition: EntityPartition, angles: &[f64]) -> Result<Self> {
        let angles = angles.iter().map(|&a| rational_from_f64(a)).collect::<Result<_>>()?;
        Self::new(partition, angles)
    }

    /// The same angle on every pair.
    pub fn uniform(partition: EntityPartition, theta: f64) -> Result<Self> {
        let k = partition.pairs().len();
        Self::from_f64(partition, &vec![theta; k])
    }

    pub fn partition(&self) -> &EntityPartition {
        &self.partition
    }

    pub fn angles(&self) -> &[BigRational] {
        &self.angles
    }

    /// Target angle of edge `(p, q)`: the pair angle, or zero.
    pub fn angle_for(&self, p: usize, q: usize) -> BigRational {
        match self.partition.pair_index(p, q) {
            Some(k) => self.angles[k].clone(),
            None => BigRational::zero(),
        }
    }
}

/// Knobs shared by the compilers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefocusOptions {
    /// Lower bound on the Hadamard order of every refocusing operation.
    pub min_order: usize,
}

impl Default for RefocusOptions {
    fn default() -> Self {
        RefocusOptions { min_order: 1 }
    }
}

/// One individual refocusing operation inside a compiled schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub duration: BigRational,
    pub order: usize,
    pub active_pairs: Vec<(usize, usize)>,
    pub destroyed_pairs: Vec<(usize, usize)>,
    pub segments: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledSchedule {
    pub schedule: RefocusSchedule,
    pub windows: Vec<Window>,
}

impl CompiledSchedule {
    /// Largest Hadamard order among the windows (0 when there are none).
    pub fn max_order(&self) -> usize {
        self.windows.iter().map(|w| w.order).max().unwrap_or(0)
    }
}

/// Appends the `m` equal intervals of one refocusing operation.
fn push_window(
    graph: &CouplingGraph,
    partition: &EntityPartition,
    destroyed: Vec<(usize, usize)>,
    duration: BigRational,
    options: &RefocusOptions,
    out: &mut CompiledSchedule,
) -> Result<()> {
    let assignment = assign_sequences_with_min_order(graph, partition, options.min_order)?;
    let m = assignment.order;
    let h = HadamardMatrix::new(m)?;
    let t = &duration / BigInt::from(m);
    let start = out.schedule.segments.len();
    for row in 0..m {
        let parities = assignment
            .qubit_columns
            .iter()
            .map(|&col| h.get(row, col) < 0)
            .collect();
        out.schedule.segments.push(Segment {
            duration: t.clone(),
            parities,
        });
    }
    out.windows.push(Window {
        duration,
        order: m,
        active_pairs: partition.pairs().to_vec(),
        destroyed_pairs: destroyed,
        segments: start..start + m,
    });
    Ok(())
}

/// Individual refocusing operation for a device with equal couplings: every
/// pair is active for `duration`, every other coupled edge cancels.
pub fn compile_uniform(
    graph: &CouplingGraph,
    partition: &EntityPartition,
    duration: f64,
) -> Result<RefocusSchedule> {
    let d = rational_from_f64(duration)?;
    Ok(compile_uniform_with(graph, partition, &d, &RefocusOptions::default())?.schedule)
}

pub fn compile_uniform_with(
    graph: &CouplingGraph,
    partition: &EntityPartition,
    duration: &BigRational,
    options: &RefocusOptions,
) -> Result<CompiledSchedule> {
    if !graph.is_uniform() {
        return Err(Error::domain(
            "uniform compilation needs equal couplings; use compile_spread",
        ));
    }
    if duration.is_negative() {
        return Err(Error::domain("duration must be >= 0"));
    }
    let mut out = CompiledSchedule {
        schedule: RefocusSchedule::empty(graph.n_qubits()),
        windows: Vec::new(),
    };
    if !duration.is_zero() {
        push_window(graph, partition, Vec::new(), duration.clone(), options, &mut out)?;
    }
    Ok(out)
}

/// Global refocusing operation giving every pair the same angle `theta`
/// despite unequal couplings.
pub fn compile_spread(
    graph: &CouplingGraph,
    partition: &EntityPartition,
    theta: f64,
) -> Result<RefocusSchedule> {
    if !(theta >= 0.0) {
        return Err(Error::domain(format!("target angle must be >= 0, got {theta}")));
    }
    let target = CompileTarget::uniform(partition.clone(), theta)?;
    Ok(compile_target(graph, &target, &RefocusOptions::default())?.schedule)
}

/// Global refocusing operation for per-pair angles.
///
/// Pair `k` must be active for `a_k = theta_k / alpha_k`. With `T = max a_k`
/// and excess time `tau_k = T - a_k`, the interval `[0, T]` is cut at the
/// distinct `tau` values. In window `(lo, hi]` every pair with `tau_k >= hi`
/// is destroyed (its qubits follow separate sequences) and the rest are
/// active, so pair `k` is active for exactly `T - tau_k = a_k`. Windows are
/// emitted in increasing `hi`; the all-active window comes last.
pub fn compile_target(
    graph: &CouplingGraph,
    target: &CompileTarget,
    options: &RefocusOptions,
) -> Result<CompiledSchedule> {
    let partition = target.partition();
    if partition.n_qubits() != graph.n_qubits() {
        return Err(Error::domain("target and graph cover different qubit counts"));
    }
    let pairs = partition.pairs();
    let mut active_time = Vec::with_capacity(pairs.len());
    for (&(p, q), theta) in pairs.iter().zip(target.angles()) {
        let alpha = graph
            .coupling(p, q)
            .ok_or_else(|| Error::domain(format!("pair ({p}, {q}) is not a coupled edge")))?;
        active_time.push(theta / rational_from_f64(alpha)?);
    }
    let mut out = CompiledSchedule {
        schedule: RefocusSchedule::empty(graph.n_qubits()),
        windows: Vec::new(),
    };
    let total = match active_time.iter().max() {
        Some(t) if t.is_positive() => t.clone(),
        _ => return Ok(out),
    };
    let tau: Vec<BigRational> = active_time.iter().map(|a| &total - a).collect();
    let mut cuts: Vec<BigRational> = tau.iter().filter(|t| t.is_positive()).cloned().collect();
    cuts.push(BigRational::zero());
    cuts.push(total.clone());
    cuts.sort();
    cuts.dedup();
    for w in cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        let mut active = Vec::new();
        let mut destroyed = Vec::new();
        for (k, &pair) in pairs.iter().enumerate() {
            if tau[k] >= *hi {
                destroyed.push(pair);
            } else {
                active.push(pair);
            }
        }
        let window_partition = EntityPartition::new(graph, active)?;
        push_window(graph, &window_partition, destroyed, hi - lo, options, &mut out)?;
    }
    Ok(out)
}

/// Accumulated `ZZ` angle of one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeAngle {
    pub p: usize,
    pub q: usize,
    pub angle: BigRational,
}

/// `C_pq = alpha_pq sum_i s_p(i) s_q(i) t_i` for every edge of the graph.
pub fn effective_coupling(schedule: &RefocusSchedule, graph: &CouplingGraph) -> Result<Vec<EdgeAngle>> {
    if schedule.n_qubits() != graph.n_qubits() {
        return Err(Error::domain(format!(
            "schedule has {} qubits, graph has {}",
            schedule.n_qubits(),
            graph.n_qubits()
        )));
    }
    graph
        .edges()
        .map(|e| {
            let mut acc = BigRational::zero();
            for s in schedule.segments() {
                if s.parities[e.p] == s.parities[e.q] {
                    acc += &s.duration;
                } else {
                    acc -= &s.duration;
                }
            }
            Ok(EdgeAngle {
                p: e.p,
                q: e.q,
                angle: acc * rational_from_f64(e.alpha)?,
            })
        })
        .collect()
}

/// An edge whose accumulated angle differs from the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeViolation {
    pub p: usize,
    pub q: usize,
    pub expected: BigRational,
    pub actual: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub edges_checked: usize,
    pub violations: Vec<EdgeViolation>,
    /// Distance between the simulated schedule and the target unitary, for
    /// registers small enough to simulate.
    pub unitary_distance: Option<f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.unitary_distance.is_none_or(|d| d < UNITARY_CHECK_TOL)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass ({} edges exact", self.edges_checked)?;
        } else {
            write!(f, "FAIL ({} of {} edges wrong", self.violations.len(), self.edges_checked)?;
        }
        if let Some(d) = self.unitary_distance {
            write!(f, ", unitary distance {d:.3e}")?;
        }
        writeln!(f, ")")?;
        for v in &self.violations {
            writeln!(
                f,
                "  edge ({}, {}): expected {} got {}",
                v.p, v.q, v.expected, v.actual
            )?;
        }
        Ok(())
    }
}

/// Checks a schedule against a target exactly, and for small registers also
/// by simulating the emitted circuit.
pub fn verify_schedule(
    schedule: &RefocusSchedule,
    graph: &CouplingGraph,
    target: &CompileTarget,
) -> Result<VerificationReport> {
    if target.partition().n_qubits() != graph.n_qubits() {
        return Err(Error::domain("target and graph cover different qubit counts"));
    }
    let angles = effective_coupling(schedule, graph)?;
    let violations: Vec<EdgeViolation> = angles
        .iter()
        .filter_map(|e| {
            let expected = target.angle_for(e.p, e.q);
            (expected != e.angle).then(|| EdgeViolation {
                p: e.p,
                q: e.q,
                expected,
                actual: e.angle.clone(),
            })
        })
        .collect();
    let unitary_distance = if graph.n_qubits() <= UNITARY_CHECK_MAX_QUBITS {
        let circuit = schedule_to_circuit(schedule, graph)?;
        let actual = circuit_unitary(&circuit)?;
        let ideal = target_unitary(graph.n_qubits(), target)?;
        Some(unitary_distance_up_to_phase(actual.matrix(), &ideal))
    } else {
        None
    };
    Ok(VerificationReport {
        edges_checked: angles.len(),
        violations,
        unitary_distance,
    })
}

/// `prod_pairs exp(-i theta_pq Z_p Z_q)` as a dense diagonal matrix.
pub fn target_unitary(n_qubits: usize, target: &CompileTarget) -> Result<CMatrix> {
    let mut pairs_graph = CouplingGraph::new(n_qubits);
    for (&(p, q), theta) in target.partition().pairs().iter().zip(target.angles()) {
        if theta.is_positive() {
            pairs_graph.add_edge(p, q, rational_to_f64(theta))?;
        }
    }
    let diag = zz_diagonal(&pairs_graph, 1.0)?;
    Ok(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)))
}

/// Analog blocks interleaved with `X` layers at every parity change. A
/// leading layer enters the first interval's parities and a trailing layer
/// returns every qubit to even parity. The circuit carries `graph` as its
/// device.
pub fn schedule_to_circuit(schedule: &RefocusSchedule, graph: &CouplingGraph) -> Result<Circuit> {
    let n = schedule.n_qubits();
    if n != graph.n_qubits() {
        return Err(Error::domain("schedule and graph cover different qubit counts"));
    }
    let mut circuit = Circuit::with_device(graph.clone());
    let mut current = vec![false; n];
    let flips = |from: &[bool], to: &[bool]| -> Vec<LocalOp> {
        (0..n)
            .filter(|&q| from[q] != to[q])
            .map(|q| LocalOp::new(q, LocalGate::X))
            .collect()
    };
    for s in schedule.segments() {
        let layer = flips(&current, &s.parities);
        if !layer.is_empty() {
            circuit.push(Element::Local(layer))?;
        }
        current.clone_from(&s.parities);
        if !s.duration.is_zero() {
            circuit.push(Element::Analog(rational_to_f64(&s.duration)))?;
        }
    }
    let layer = flips(&current, &vec![false; n]);
    if !layer.is_empty() {
        circuit.push(Element::Local(layer))?;
    }
    Ok(circuit)
}

/// Which coupling regime an entangler count refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Uniform,
    /// Couplings drawn from `[1, 4]` with the given seed.
    Spread { seed: u64 },
}

/// Entangler applications for one spinless Trotter step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntanglerCount {
    pub kind: TopologyKind,
    pub n_qubits: usize,
    pub regime: Regime,
    /// Analog blocks predicted by the scaling formula, where one exists.
    pub closed_form: Option<usize>,
    /// Analog blocks in an actually compiled step.
    pub measured: usize,
    pub fsg_count: usize,
    pub cnot_count: usize,
    pub scaling: &'static str,
}

impl EntanglerCount {
    pub fn matches(&self) -> bool {
        self.closed_form.is_none_or(|c| c == self.measured)
    }
}

/// FSG and CNOT counts of the digital step: `(n^2 - n)/2` and three CNOTs per FSG.
pub fn digital_baseline_counts(n_qubits: usize) -> (usize, usize) {
    let fsg = n_qubits * n_qubits.saturating_sub(1) / 2;
    (fsg, 3 * fsg)
}

/// Scaling formula for analog blocks per step with equal couplings:
/// `6n` (chain), `12n` (grid), `3n^2/2 + 6n` (complete, when `n/2 + 2` is a
/// power of two). `None` where no formula applies.
pub fn closed_form_entanglers(kind: TopologyKind, n_qubits: usize) -> Option<usize> {
    let n = n_qubits;
    match kind {
        TopologyKind::Chain => Some(6 * n),
        TopologyKind::Grid => Some(12 * n),
        TopologyKind::Complete if (n / 2 + 2).is_power_of_two() => Some(3 * n * n / 2 + 6 * n),
        _ => None,
    }
}

/// Closed-form and measured entangler counts for a spinless Trotter step on
/// a built-in device.
pub fn entangler_count(kind: TopologyKind, n_qubits: usize, regime: Regime) -> Result<EntanglerCount> {
    use crate::fermion::random_hamiltonian;
    use crate::network::{trotter_step_spinless, Backend, OrderPolicy};

    if n_qubits < 4 || n_qubits % 2 != 0 {
        return Err(Error::domain(format!(
            "entangler counts need an even qubit count >= 4, got {n_qubits}"
        )));
    }
    if kind == TopologyKind::Ladder {
        return Err(Error::domain(
            "the spinless network runs on a path; ladder numbering has none",
        ));
    }
    let mut device = CouplingGraph::of_kind(kind, n_qubits)?;
    let (closed_form, scaling) = match regime {
        Regime::Uniform => (
            closed_form_entanglers(kind, n_qubits),
            match kind {
                TopologyKind::Complete => "3n^2/2 + 6n",
                TopologyKind::Grid => "12n",
                _ => "6n",
            },
        ),
        Regime::Spread { seed } => {
            use rand::Rng;
            let mut rng = crate::qcore::seeded_rng(seed);
            device = device.with_couplings(|_| {
                // Multiples of 1/8 keep the exact arithmetic small.
                f64::from(rng.random_range(8u32..=32)) / 8.0
            })?;
            (None, "O(n^2)")
        }
    };
    let h = random_hamiltonian(n_qubits, 0.1, 0)?;
    let backend = Backend::DigitalAnalog {
        device,
        policy: OrderPolicy::Common,
    };
    let step = trotter_step_spinless(&h, 0.1, &backend)?;
    let (fsg_count, cnot_count) = digital_baseline_counts(n_qubits);
    Ok(EntanglerCount {
        kind,
        n_qubits,
        regime,
        closed_form,
        measured: step.circuit.analog_block_count(),
        fsg_count,
        cnot_count,
        scaling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4"), Some(r(3, 4)));
        assert_eq!(parse_rational("-2"), Some(r(-2, 1)));
        assert_eq!(parse_rational("0.125"), Some(r(1, 8)));
        assert_eq!(parse_rational("-.5"), Some(r(-1, 2)));
        assert_eq!(parse_rational("1.2.3"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(rational_from_f64(0.75).unwrap(), r(3, 4));
    }

    #[test]
    fn single_edge_single_segment() {
        let g = CouplingGraph::chain(2);
        let p = EntityPartition::new(&g, [(0, 1)]).unwrap();
        let s = compile_uniform(&g, &p, 0.5).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.segments()[0].duration, r(1, 2));
        assert_eq!(s.segments()[0].parities, vec![false, false]);
        let c = schedule_to_circuit(&s, &g).unwrap();
        assert_eq!(c.elements(), &[Element::Analog(0.5)]);
    }

    #[test]
    fn chain_odd_stage_two_intervals() {
        let g = CouplingGraph::chain(6);
        let p = EntityPartition::new(&g, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let s = compile_uniform(&g, &p, 1.0).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.segments().iter().all(|x| x.duration == r(1, 2)));
        let c = effective_coupling(&s, &g).unwrap();
        for e in c {
            let want = if e.q == e.p + 1 && e.p % 2 == 0 { r(1, 1) } else { r(0, 1) };
            assert_eq!(e.angle, want, "edge ({}, {})", e.p, e.q);
        }
    }

    #[test]
    fn different_columns_cancel() {
        let s = RefocusSchedule::from_text("t_i 1 parities 00\nt_i 1 parities 01\n").unwrap();
        let g = CouplingGraph::chain(2);
        assert!(effective_coupling(&s, &g).unwrap()[0].angle.is_zero());
        let same = RefocusSchedule::from_text("t_i 3/2 parities 00\n").unwrap();
        let g = CouplingGraph::from_edges(2, [(0, 1, 2.0)]).unwrap();
        assert_eq!(effective_coupling(&same, &g).unwrap()[0].angle, r(3, 1));
    }

    #[test]
    fn no_pairs_on_complete_graph_is_identity() {
        let g = CouplingGraph::complete(4);
        let p = EntityPartition::singles_only(&g);
        let s = compile_uniform(&g, &p, 1.0).unwrap();
        assert_eq!(s.len(), 4);
        let target = CompileTarget::uniform(p, 0.0).unwrap();
        let report = verify_schedule(&s, &g, &target).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.unitary_distance.unwrap() < 1e-12);
    }

    #[test]
    fn h2_schedule_circuit_trace() {
        let s = RefocusSchedule::from_text("qubits 2\nt_i 1/2 parities 00\nt_i 1/2 parities 01\n").unwrap();
        let g = CouplingGraph::chain(2);
        let c = schedule_to_circuit(&s, &g).unwrap();
        let x1 = Element::Local(vec![LocalOp::new(1, LocalGate::X)]);
        assert_eq!(
            c.elements(),
            &[Element::Analog(0.5), x1.clone(), Element::Analog(0.5), x1]
        );
    }

    #[test]
    fn flipped_bit_names_the_edge() {
        let g = CouplingGraph::chain(4);
        let p = EntityPartition::new(&g, [(0, 1), (2, 3)]).unwrap();
        let mut s = compile_uniform(&g, &p, FRAC_PI_4).unwrap();
        let target = CompileTarget::uniform(p, FRAC_PI_4).unwrap();
        assert!(verify_schedule(&s, &g, &target).unwrap().passed());
        s.segments[1].parities[3] ^= true;
        let report = verify_schedule(&s, &g, &target).unwrap();
        assert!(!report.passed());
        let bad: Vec<(usize, usize)> = report.violations.iter().map(|v| (v.p, v.q)).collect();
        assert!(bad.contains(&(2, 3)), "{report}");
        assert!(report.to_string().contains("edge (2, 3)"));
    }

    #[test]
    fn spread_with_equal_couplings_matches_uniform() {
        let g = CouplingGraph::grid(2, 3);
        let p = EntityPartition::new(&g, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            compile_spread(&g, &p, 0.75).unwrap(),
            compile_uniform(&g, &p, 0.75).unwrap()
        );
        assert!(compile_spread(&g, &p, -1.0).is_err());
    }

    #[test]
    fn spread_windows_destroy_faster_pairs_first() {
        let g = CouplingGraph::from_edges(
            6,
            [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 2.0), (3, 4, 1.0), (4, 5, 4.0)],
        )
        .unwrap();
        let p = EntityPartition::new(&g, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let target = CompileTarget::uniform(p, 1.0).unwrap();
        let c = compile_target(&g, &target, &RefocusOptions::default()).unwrap();
        assert_eq!(c.schedule.total_duration(), r(1, 1));
        let durations: Vec<BigRational> = c.windows.iter().map(|w| w.duration.clone()).collect();
        // Active times 1, 1/2, 1/4 give excess times 0, 1/2, 3/4.
        assert_eq!(durations, vec![r(1, 2), r(1, 4), r(1, 4)]);
        assert_eq!(c.windows[0].destroyed_pairs, vec![(2, 3), (4, 5)]);
        assert_eq!(c.windows[1].destroyed_pairs, vec![(4, 5)]);
        assert!(c.windows[2].destroyed_pairs.is_empty());
        assert!(verify_schedule(&c.schedule, &g, &target).unwrap().passed());
    }

    #[test]
    fn text_round_trip() {
        let g = CouplingGraph::grid(2, 2);
        let p = EntityPartition::new(&g, [(1, 2)]).unwrap();
        let s = compile_uniform(&g, &p, 0.3).unwrap();
        let back = RefocusSchedule::from_text(&s.to_text()).unwrap();
        assert_eq!(back, s);
        assert!(RefocusSchedule::from_text("t_i 1 parities 0x").is_err());
        assert!(matches!(
            RefocusSchedule::from_text("qubits 2\nt_i 1 parities 000"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(RefocusSchedule::from_text("qubits 3\n").unwrap().n_qubits(), 3);
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_entanglers(TopologyKind::Chain, 6), Some(36));
        assert_eq!(closed_form_entanglers(TopologyKind::Complete, 12), Some(288));
        assert_eq!(closed_form_entanglers(TopologyKind::Complete, 6), None);
        assert_eq!(digital_baseline_counts(4), (6, 18));
    }
}
