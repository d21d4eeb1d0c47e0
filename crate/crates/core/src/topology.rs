// Copyright 2026 The dasim Authors
// SPDX-License-Identifier: Apache-2.0

//! Qubit connectivity, Hadamard matrices and sequence assignment.
//!
//! A refocusing operation gives every *entity* (an interaction pair or a
//! single qubit) one column of a Hadamard matrix `H(m)`. Entities that can
//! interact through the device graph must sit on different columns; the
//! two qubits of a pair share one. Finding the columns is a proper coloring
//! of the deformed graph in which every pair is merged into one node.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// An undirected coupling `alpha Z_p Z_q` with `p < q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub p: usize,
    pub q: usize,
    pub alpha: f64,
}

/// Device connectivity with a positive coupling constant on every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingGraph {
    n_qubits: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

/// Built-in device families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyKind {
    Chain,
    Ladder,
    Grid,
    Complete,
}

impl TopologyKind {
    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Chain => "chain",
            TopologyKind::Ladder => "ladder",
            TopologyKind::Grid => "grid",
            TopologyKind::Complete => "complete",
        }
    }
}

impl std::str::FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(TopologyKind::Chain),
            "ladder" => Ok(TopologyKind::Ladder),
            "grid" => Ok(TopologyKind::Grid),
            "complete" | "all-to-all" => Ok(TopologyKind::Complete),
            other => Err(Error::domain(format!("unknown topology kind `{other}`"))),
        }
    }
}

impl CouplingGraph {
    /// Graph with `n_qubits` isolated qubits.
    pub fn new(n_qubits: usize) -> Self {
        CouplingGraph {
            n_qubits,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges(
        n_qubits: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        let mut g = CouplingGraph::new(n_qubits);
        for (p, q, alpha) in edges {
            g.add_edge(p, q, alpha)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, p: usize, q: usize, alpha: f64) -> Result<()> {
        if p == q {
            return Err(Error::domain(format!("self-loop on qubit {p}")));
        }
        if p >= self.n_qubits || q >= self.n_qubits {
            return Err(Error::domain(format!(
                "edge ({p}, {q}) out of range for {} qubits",
                self.n_qubits
            )));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::domain(format!(
                "coupling on ({p}, {q}) must be positive, got {alpha}"
            )));
        }
        let key = (p.min(q), p.max(q));
        if self.edges.insert(key, alpha).is_some() {
            return Err(Error::domain(format!("duplicate edge ({}, {})", key.0, key.1)));
        }
        Ok(())
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn chain(n_qubits: usize) -> Self {
        Self::from_edges(n_qubits, (1..n_qubits).map(|q| (q - 1, q, 1.0)))
            .expect("chain edges are valid")
    }

    /// Two-leg ladder for `n_sites` sites. Qubit `2k` is site `k` of the
    /// spin-up leg and qubit `2k + 1` the same site of the spin-down leg.
    pub fn ladder(n_sites: usize) -> Self {
        let mut edges = Vec::new();
        for k in 0..n_sites {
            edges.push((2 * k, 2 * k + 1, 1.0));
            if k + 1 < n_sites {
                edges.push((2 * k, 2 * k + 2, 1.0));
                edges.push((2 * k + 1, 2 * k + 3, 1.0));
            }
        }
        Self::from_edges(2 * n_sites, edges).expect("ladder edges are valid")
    }

    /// Square lattice with nearest-neighbour couplings. Qubits are numbered
    /// along a boustrophedon path (row 0 left to right, row 1 right to
    /// left, ...) so consecutive indices are always neighbours.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let index = |r: usize, c: usize| {
            if r % 2 == 0 {
                r * cols + c
            } else {
                r * cols + (cols - 1 - c)
            }
        };
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    edges.push((index(r, c), index(r, c + 1), 1.0));
                }
                if r + 1 < rows {
                    edges.push((index(r, c), index(r + 1, c), 1.0));
                }
            }
        }
        Self::from_edges(rows * cols, edges).expect("grid edges are valid")
    }

    /// All-to-all connectivity.
    pub fn complete(n_qubits: usize) -> Self {
        let edges = (0..n_qubits).flat_map(|p| (p + 1..n_qubits).map(move |q| (p, q, 1.0)));
        Self::from_edges(n_qubits, edges).expect("complete edges are valid")
    }

    /// Built-in family member with `n_qubits` qubits. Grids use the most
    /// square `rows x cols` factorization with `rows <= cols`.
    pub fn of_kind(kind: TopologyKind, n_qubits: usize) -> Result<Self> {
        match kind {
            TopologyKind::Chain => Ok(Self::chain(n_qubits)),
            TopologyKind::Complete => Ok(Self::complete(n_qubits)),
            TopologyKind::Ladder => {
                if n_qubits % 2 != 0 {
                    return Err(Error::domain("a ladder needs an even number of qubits"));
                }
                Ok(Self::ladder(n_qubits / 2))
            }
            TopologyKind::Grid => {
                let rows = (1..=n_qubits)
                    .take_while(|r| r * r <= n_qubits)
                    .filter(|r| n_qubits % r == 0)
                    .max()
                    .unwrap_or(1);
                Ok(Self::grid(rows, n_qubits / rows))
            }
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic `(p, q)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .map(|(&(p, q), &alpha)| Edge { p, q, alpha })
    }

    pub fn coupling(&self, p: usize, q: usize) -> Option<f64> {
        self.edges.get(&(p.min(q), p.max(q))).copied()
    }

    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        self.coupling(p, q).is_some()
    }

    pub fn neighbors(&self, qubit: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(p, q)| {
                if p == qubit {
                    Some(q)
                } else if q == qubit {
                    Some(p)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn min_coupling(&self) -> Option<f64> {
        self.edges.values().copied().reduce(f64::min)
    }

    /// True when all couplings are bit-identical.
    pub fn is_uniform(&self) -> bool {
        let mut values = self.edges.values();
        match values.next() {
            None => true,
            Some(first) => values.all(|v| v == first),
        }
    }

    /// Same edges, with every coupling replaced.
    pub fn with_couplings(&self, mut f: impl FnMut(Edge) -> f64) -> Result<Self> {
        Self::from_edges(self.n_qubits, self.edges().map(|e| (e.p, e.q, f(e))))
    }
}

impl fmt::Display for CouplingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_qubits)?;
        for e in self.edges() {
            writeln!(f, "edge {} {} {}", e.p, e.q, e.alpha)?;
        }
        Ok(())
    }
}

/// A `±1` matrix with `H H^T = m I`, built by the Sylvester construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl HadamardMatrix {
    /// `H(m)` for `m` a power of two (including `m = 1`).
    pub fn new(order: usize) -> Result<Self> {
        if !Self::is_supported(order) {
            return Err(Error::Construction(format!(
                "no Hadamard matrix of order {order} is available; next supported order is {}",
                Self::next_supported_order(order.max(1))
            )));
        }
        // Entry (i, j) of H(2)^{(x) k} is (-1)^{popcount(i & j)}.
        let entries = (0..order * order)
            .map(|k| {
                let (i, j) = (k / order, k % order);
                if (i & j).count_ones() % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        Ok(HadamardMatrix { order, entries })
    }

    pub fn is_supported(order: usize) -> bool {
        order.is_power_of_two()
    }

    /// Smallest supported order `>= k`.
    pub fn next_supported_order(k: usize) -> usize {
        k.max(1).next_power_of_two()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.order + col]
    }

    pub fn column(&self, col: usize) -> Vec<i8> {
        (0..self.order).map(|r| self.get(r, col)).collect()
    }

    /// `H H^T` in integer arithmetic.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let m = self.order;
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| (0..m).map(|k| (self.get(a, k) * self.get(b, k)) as i64).sum())
                    .collect()
            })
            .collect()
    }
}

/// One node of the deformed graph: an interaction pair or a single qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Entity {
    Pair(usize, usize),
    Single(usize),
}

impl Entity {
    pub fn qubits(self) -> Vec<usize> {
        match self {
            Entity::Pair(p, q) => vec![p, q],
            Entity::Single(q) => vec![q],
        }
    }

    fn min_qubit(self) -> usize {
        match self {
            Entity::Pair(p, q) => p.min(q),
            Entity::Single(q) => q,
        }
    }
}

/// Disjoint interaction pairs plus the single qubits left over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityPartition {
    n_qubits: usize,
    pairs: Vec<(usize, usize)>,
    singles: Vec<usize>,
    entities: Vec<Entity>,
    entity_of: Vec<usize>,
}

impl EntityPartition {
    /// Partition whose pairs are `pairs` (each must be a graph edge); all
    /// other qubits become singles. Pair order is kept and each pair is
    /// stored as `(min, max)`.
    pub fn new(graph: &CouplingGraph, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = graph.n_qubits();
        let mut used = vec![false; n];
        let mut stored = Vec::new();
        for (a, b) in pairs {
            let (p, q) = (a.min(b), a.max(b));
            if q >= n {
                return Err(Error::domain(format!("pair ({a}, {b}) out of range")));
            }
            if !graph.has_edge(p, q) {
                return Err(Error::domain(format!("pair ({p}, {q}) is not a coupled edge")));
            }
            if used[p] || used[q] {
                return Err(Error::domain(format!("pair ({p}, {q}) overlaps another pair")));
            }
            used[p] = true;
            used[q] = true;
            stored.push((p, q));
        }
        let singles: Vec<usize> = (0..n).filter(|&q| !used[q]).collect();
        let mut entities: Vec<Entity> = stored
            .iter()
            .map(|&(p, q)| Entity::Pair(p, q))
            .chain(singles.iter().map(|&q| Entity::Single(q)))
            .collect();
        entities.sort_by_key(|e| e.min_qubit());
        let mut entity_of = vec![0; n];
        for (k, e) in entities.iter().enumerate() {
            for q in e.qubits() {
                entity_of[q] = k;
            }
        }
        Ok(EntityPartition {
            n_qubits: n,
            pairs: stored,
            singles,
            entities,
            entity_of,
        })
    }

    /// Every qubit single.
    pub fn singles_only(graph: &CouplingGraph) -> Self {
        Self::new(graph, std::iter::empty()).expect("empty pair set is valid")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn singles(&self) -> &[usize] {
        &self.singles
    }

    /// Entities ordered by their smallest qubit.
    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn entity_of(&self, qubit: usize) -> usize {
        self.entity_of[qubit]
    }

    /// Index of the pair containing both qubits, if they form one.
    pub fn pair_index(&self, p: usize, q: usize) -> Option<usize> {
        let key = (p.min(q), p.max(q));
        self.pairs.iter().position(|&x| x == key)
    }

    fn check_against(&self, graph: &CouplingGraph) -> Result<()> {
        if self.n_qubits != graph.n_qubits() {
            return Err(Error::domain(format!(
                "partition covers {} qubits, graph has {}",
                self.n_qubits,
                graph.n_qubits()
            )));
        }
        if let Some(&(p, q)) = self.pairs.iter().find(|&&(p, q)| !graph.has_edge(p, q)) {
            return Err(Error::domain(format!("pair ({p}, {q}) is not a coupled edge")));
        }
        Ok(())
    }
}

/// Graph over entities: two entities are adjacent when any of their qubits
/// are coupled. Internal pair edges disappear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedGraph {
    pub entities: Vec<Entity>,
    pub adjacency: Vec<Vec<usize>>,
}

impl DeformedGraph {
    pub fn degree(&self, entity: usize) -> usize {
        self.adjacency[entity].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// True when `colors` gives adjacent entities different values.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        self.adjacency
            .iter()
            .enumerate()
            .all(|(a, nb)| nb.iter().all(|&b| colors[a] != colors[b]))
    }
}

pub fn deform_graph(graph: &CouplingGraph, partition: &EntityPartition) -> Result<DeformedGraph> {
    partition.check_against(graph)?;
    let k = partition.entities().len();
    let mut adjacency = vec![Vec::new(); k];
    for e in graph.edges() {
        let (a, b) = (partition.entity_of(e.p), partition.entity_of(e.q));
        if a != b {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    Ok(DeformedGraph {
        entities: partition.entities().to_vec(),
        adjacency,
    })
}

/// Column choice for every entity and qubit of one refocusing operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceAssignment {
    /// Hadamard order `m`, i.e. the number of equal time intervals.
    pub order: usize,
    /// Distinct columns actually used.
    pub colors_used: usize,
    pub entity_columns: Vec<usize>,
    pub qubit_columns: Vec<usize>,
}

/// Largest deformed graph for which the sequence count is made exact.
const EXACT_COLORING_LIMIT: usize = 24;
const EXACT_COLORING_BUDGET: usize = 2_000_000;

/// Greedy coloring: vertices by descending degree (ties by index), each
/// taking the smallest color absent from its colored neighbours.
fn greedy_coloring(d: &DeformedGraph) -> Vec<usize> {
    let k = d.entities.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| d.degree(b).cmp(&d.degree(a)).then(a.cmp(&b)));
    let mut colors = vec![usize::MAX; k];
    for &v in &order {
        let taken: Vec<usize> = d.adjacency[v].iter().map(|&u| colors[u]).collect();
        colors[v] = (0..).find(|c| !taken.contains(c)).unwrap();
    }
    colors
}

/// Backtracking search for a coloring with at most `k` colors, in the same
/// vertex order as the greedy pass. `None` when none exists or the search
/// budget runs out.
fn coloring_with(d: &DeformedGraph, k: usize) -> Option<Vec<usize>> {
    let n = d.entities.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d.degree(b).cmp(&d.degree(a)).then(a.cmp(&b)));
    let mut colors = vec![usize::MAX; n];
    let mut budget = EXACT_COLORING_BUDGET;

    fn go(
        d: &DeformedGraph,
        order: &[usize],
        pos: usize,
        used: usize,
        k: usize,
        colors: &mut [usize],
        budget: &mut usize,
    ) -> Option<bool> {
        if pos == order.len() {
            return Some(true);
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let v = order[pos];
        // New colors are only opened in increasing order (symmetry breaking).
        for c in 0..(used + 1).min(k) {
            if d.adjacency[v].iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                match go(d, order, pos + 1, used.max(c + 1), k, colors, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                colors[v] = usize::MAX;
            }
        }
        Some(false)
    }

    match go(d, &order, 0, 0, k, &mut colors, &mut budget) {
        Some(true) => Some(colors),
        _ => None,
    }
}

pub fn assign_sequences(graph: &CouplingGraph, partition: &EntityPartition) -> Result<SequenceAssignment> {
    assign_sequences_with_min_order(graph, partition, 1)
}

/// Sequence assignment whose Hadamard order is at least `min_order`.
///
/// The order is the smallest power of two that admits a proper coloring.
/// For deformed graphs of up to 24 entities this is decided exactly, so the
/// order is monotone under edge insertion; larger graphs use the greedy
/// count. The greedy coloring is kept whenever it fits.
pub fn assign_sequences_with_min_order(
    graph: &CouplingGraph,
    partition: &EntityPartition,
    min_order: usize,
) -> Result<SequenceAssignment> {
    let d = deform_graph(graph, partition)?;
    let greedy = greedy_coloring(&d);
    let greedy_count = greedy.iter().max().map_or(0, |c| c + 1);
    let mut order = HadamardMatrix::next_supported_order(greedy_count);
    let mut colors = greedy;
    if d.entities.len() <= EXACT_COLORING_LIMIT {
        while order > 1 {
            match coloring_with(&d, order / 2) {
                Some(c) => {
                    order /= 2;
                    colors = c;
                }
                None => break,
            }
        }
        // Prefer the greedy pattern whenever it fits the final order.
        let g = greedy_coloring(&d);
        if greedy_count <= order {
            colors = g;
        }
    }
    let order = order.max(HadamardMatrix::next_supported_order(min_order));
    let colors_used = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    let qubit_columns = (0..partition.n_qubits())
        .map(|q| colors[partition.entity_of(q)])
        .collect();
    Ok(SequenceAssignment {
        order,
        colors_used,
        entity_columns: colors,
        qubit_columns,
    })
}

/// Number of equal intervals (Hadamard order) one refocusing operation needs.
pub fn required_sequences(graph: &CouplingGraph, partition: &EntityPartition) -> Result<usize> {
    Ok(assign_sequences(graph, partition)?.order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_rejects_bad_edges() {
        let mut g = CouplingGraph::new(3);
        assert!(g.add_edge(1, 1, 1.0).is_err());
        assert!(g.add_edge(0, 3, 1.0).is_err());
        assert!(g.add_edge(0, 1, 0.0).is_err());
        assert!(g.add_edge(0, 1, f64::NAN).is_err());
        g.add_edge(1, 0, 2.0).unwrap();
        assert_eq!(g.coupling(0, 1), Some(2.0));
        assert!(g.add_edge(0, 1, 1.0).is_err());
    }

    #[test]
    fn generators_have_expected_shapes() {
        assert_eq!(CouplingGraph::chain(6).edge_count(), 5);
        assert_eq!(CouplingGraph::complete(5).edge_count(), 10);
        let ladder = CouplingGraph::ladder(3);
        assert_eq!(ladder.n_qubits(), 6);
        assert_eq!(ladder.edge_count(), 3 + 4);
        assert!(ladder.has_edge(2, 3) && ladder.has_edge(1, 3) && !ladder.has_edge(1, 2));
        let grid = CouplingGraph::grid(3, 4);
        assert_eq!(grid.edge_count(), 3 * 3 + 2 * 4);
        // Snake numbering: consecutive indices are neighbours.
        assert!((1..12).all(|q| grid.has_edge(q - 1, q)));
        // Row 1 runs right to left: qubit 4 sits above 11 and below 3.
        assert!(grid.has_edge(4, 11) && grid.has_edge(3, 4) && grid.has_edge(0, 7));
    }

    #[test]
    fn hadamard_small_orders() {
        assert_eq!(HadamardMatrix::new(1).unwrap().entries, vec![1]);
        assert_eq!(HadamardMatrix::new(2).unwrap().entries, vec![1, 1, 1, -1]);
        let err = HadamardMatrix::new(3).unwrap_err();
        assert!(err.to_string().contains("next supported order is 4"), "{err}");
    }

    #[test]
    fn hadamard_order_eight_is_orthogonal() {
        let h = HadamardMatrix::new(8).unwrap();
        let gram = h.gram();
        for (a, row) in gram.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                assert_eq!(v, if a == b { 8 } else { 0 });
            }
        }
        // Sylvester: H(8) = H(2) (x) H(4).
        let h2 = HadamardMatrix::new(2).unwrap();
        let h4 = HadamardMatrix::new(4).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(h.get(i, j), h2.get(i / 4, j / 4) * h4.get(i % 4, j % 4));
            }
        }
    }

    #[test]
    fn partition_validation() {
        let g = CouplingGraph::chain(4);
        assert!(EntityPartition::new(&g, [(0, 2)]).is_err());
        assert!(EntityPartition::new(&g, [(0, 1), (1, 2)]).is_err());
        let p = EntityPartition::new(&g, [(2, 1)]).unwrap();
        assert_eq!(p.pairs(), &[(1, 2)]);
        assert_eq!(p.singles(), &[0, 3]);
        assert_eq!(p.entities(), &[Entity::Single(0), Entity::Pair(1, 2), Entity::Single(3)]);
    }

    #[test]
    fn deform_without_pairs_keeps_graph() {
        let g = CouplingGraph::grid(2, 3);
        let d = deform_graph(&g, &EntityPartition::singles_only(&g)).unwrap();
        for e in g.edges() {
            assert!(d.is_adjacent(e.p, e.q));
        }
        let adj_edges: usize = d.adjacency.iter().map(Vec::len).sum();
        assert_eq!(adj_edges / 2, g.edge_count());
    }

    #[test]
    fn deform_chain_with_middle_pair_is_path() {
        let g = CouplingGraph::chain(4);
        let d = deform_graph(&g, &EntityPartition::new(&g, [(1, 2)]).unwrap()).unwrap();
        assert_eq!(d.adjacency, vec![vec![1], vec![0, 2], vec![1]]);
    }

    #[test]
    fn merged_pair_inherits_union_of_neighbourhoods() {
        // Qubits 6 and 7 merged; 6 touches {0, 1, 2}, 7 touches {3, 4, 5}.
        let mut g = CouplingGraph::new(8);
        g.add_edge(6, 7, 1.0).unwrap();
        for q in 0..3 {
            g.add_edge(6, q, 1.0).unwrap();
        }
        for q in 3..6 {
            g.add_edge(7, q, 1.0).unwrap();
        }
        let p = EntityPartition::new(&g, [(6, 7)]).unwrap();
        let d = deform_graph(&g, &p).unwrap();
        let merged = p.entity_of(6);
        let nb: Vec<usize> = d.adjacency[merged].iter().map(|&e| d.entities[e].qubits()[0]).collect();
        assert_eq!(nb, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn chain_odd_stage_uses_two_staggered_sequences() {
        let g = CouplingGraph::chain(6);
        let p = EntityPartition::new(&g, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let a = assign_sequences(&g, &p).unwrap();
        assert_eq!(a.order, 2);
        let c = &a.qubit_columns;
        assert_eq!(c[0], c[1]);
        assert_ne!(c[1], c[2]);
        assert_eq!(c[2], c[3]);
        assert_ne!(c[3], c[4]);
        assert_eq!(c[0], c[4]);
    }

    #[test]
    fn grid_even_stage_needs_four() {
        let g = CouplingGraph::grid(2, 4);
        let p = EntityPartition::new(&g, [(1, 2), (3, 4), (5, 6)]).unwrap();
        let a = assign_sequences(&g, &p).unwrap();
        assert_eq!(a.order, 4);
        let cols: std::collections::BTreeSet<usize> =
            [1, 3, 5].iter().map(|&q| a.qubit_columns[q]).collect();
        assert_eq!(cols.len(), 3, "mutually adjacent pairs need three columns");
    }

    #[test]
    fn complete_graph_sequence_counts() {
        for k in 1..=9 {
            let g = CouplingGraph::complete(k);
            let m = required_sequences(&g, &EntityPartition::singles_only(&g)).unwrap();
            assert!(k <= m && m < 2 * k, "k = {k}, m = {m}");
        }
        assert_eq!(
            required_sequences(&CouplingGraph::complete(5), &EntityPartition::singles_only(&CouplingGraph::complete(5))).unwrap(),
            8
        );
    }

    #[test]
    fn odd_cycle_needs_more_than_its_clique() {
        // C5 has clique number 2 but chromatic number 3.
        let g = CouplingGraph::from_edges(5, (0..5).map(|q| (q, (q + 1) % 5, 1.0))).unwrap();
        let a = assign_sequences(&g, &EntityPartition::singles_only(&g)).unwrap();
        assert_eq!(a.order, 4);
        let d = deform_graph(&g, &EntityPartition::singles_only(&g)).unwrap();
        assert!(d.is_proper_coloring(&a.entity_columns));
    }

    #[test]
    fn min_order_pads_the_hadamard_order() {
        let g = CouplingGraph::chain(4);
        let p = EntityPartition::new(&g, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(assign_sequences_with_min_order(&g, &p, 3).unwrap().order, 4);
    }
}
