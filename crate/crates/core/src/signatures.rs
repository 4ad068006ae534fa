//! The measurement-by-edge signature matrix and the distinguishability tests
//! built on it.
//!
//! Entry `(m, e)` is the resistance observed at `m` when `e` is the faulty edge.
//! A measurement set identifies every single-edge fault iff the columns are
//! pairwise distinct. `Infinite` readings are observable (open circuit): they
//! equal each other and differ from every finite value.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::network::{all_pairs, Edge, FaultAnalyzer, FaultMode, Measurement, Network, NetworkError, Resistance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("measurement set is empty")]
    Empty,
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("measurement set does not distinguish all edges ({0} undistinguished pairs)")]
    NotDistinguishing(usize),
    #[error("no candidate measurement separates a fault on edge {0} from the fault-free network")]
    Inseparable(Edge),
}

#[derive(Debug, Clone)]
pub struct SignatureMatrix {
    measurements: Vec<Measurement>,
    edges: Vec<Edge>,
    mode: FaultMode,
    /// One row per measurement, one entry per edge.
    values: Vec<Vec<Resistance>>,
    /// Fault-free resistance per measurement.
    baseline: Vec<Resistance>,
}

impl SignatureMatrix {
    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn mode(&self) -> FaultMode {
        self.mode
    }

    pub fn value(&self, row: usize, edge: usize) -> &Resistance {
        &self.values[row][edge]
    }

    pub fn row(&self, row: usize) -> &[Resistance] {
        &self.values[row]
    }

    pub fn baseline(&self, row: usize) -> &Resistance {
        &self.baseline[row]
    }

    pub fn column(&self, edge: usize) -> Vec<&Resistance> {
        self.values.iter().map(|r| &r[edge]).collect()
    }

    /// Groups of edge indices with identical columns, in order of first member.
    pub fn column_groups(&self) -> Vec<Vec<usize>> {
        let mut index: HashMap<Vec<&Resistance>, usize> = HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for e in 0..self.edges.len() {
            let g = *index.entry(self.column(e)).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(e);
        }
        groups
    }

    pub fn is_distinguishing(&self) -> bool {
        self.column_groups().iter().all(|g| g.len() == 1)
    }

    /// Index pairs `(i, j)`, `i < j`, of edges with identical columns.
    pub fn undistinguished_index_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in self.column_groups() {
            for (x, &i) in g.iter().enumerate() {
                for &j in &g[x + 1..] {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edges whose column equals the fault-free column.
    pub fn silent_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.values.iter().zip(&self.baseline).all(|(row, base)| &row[e] == base))
            .collect()
    }
}

/// Dense class labels for one row: edges with equal values get equal labels,
/// numbered in order of first appearance.
pub fn class_labels(row: &[Resistance]) -> Vec<u32> {
    let mut seen: HashMap<&Resistance, u32> = HashMap::new();
    row.iter()
        .map(|v| {
            let next = seen.len() as u32;
            *seen.entry(v).or_insert(next)
        })
        .collect()
}

/// Builds the signature matrix with one analyzer shared across rows.
pub fn build_signature_with(
    analyzer: &FaultAnalyzer<'_>,
    measurements: &[Measurement],
    mode: FaultMode,
) -> Result<SignatureMatrix, SignatureError> {
    if measurements.is_empty() {
        return Err(SignatureError::Empty);
    }
    let net = analyzer.network();
    for m in measurements {
        net.check_measurement(m)?;
    }
    let edge_count = net.edge_count();
    let values: Vec<Vec<Resistance>> = measurements
        .par_iter()
        .map(|m| (0..edge_count).map(|e| analyzer.perturbed(m, e, mode)).collect())
        .collect();
    let baseline = measurements.iter().map(|m| Resistance::Finite(analyzer.resistance(m))).collect();
    Ok(SignatureMatrix { measurements: measurements.to_vec(), edges: net.edges().to_vec(), mode, values, baseline })
}

pub fn build_signature(net: &Network, measurements: &[Measurement], mode: FaultMode) -> Result<SignatureMatrix, SignatureError> {
    build_signature_with(&FaultAnalyzer::new(net), measurements, mode)
}

/// Partition of the edge set induced by a single measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClasses {
    pub measurement: Measurement,
    /// Edge indices per class, classes in order of their first edge.
    pub classes: Vec<Vec<usize>>,
    /// The shared observed value of each class.
    pub values: Vec<Resistance>,
}

impl EquivalenceClasses {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

pub fn equivalence_classes(net: &Network, m: &Measurement, mode: FaultMode) -> Result<EquivalenceClasses, SignatureError> {
    let sig = build_signature(net, std::slice::from_ref(m), mode)?;
    let labels = class_labels(sig.row(0));
    let count = labels.iter().copied().max().map_or(0, |x| x as usize + 1);
    let mut classes = vec![Vec::new(); count];
    let mut values = vec![Resistance::Infinite; count];
    for (e, &l) in labels.iter().enumerate() {
        if classes[l as usize].is_empty() {
            values[l as usize] = sig.value(0, e).clone();
        }
        classes[l as usize].push(e);
    }
    Ok(EquivalenceClasses { measurement: *m, classes, values })
}

pub fn is_distinguishing(net: &Network, measurements: &[Measurement], mode: FaultMode) -> Result<bool, SignatureError> {
    Ok(build_signature(net, measurements, mode)?.is_distinguishing())
}

pub fn undistinguished_pairs(
    net: &Network,
    measurements: &[Measurement],
    mode: FaultMode,
) -> Result<Vec<(Edge, Edge)>, SignatureError> {
    let sig = build_signature(net, measurements, mode)?;
    Ok(sig
        .undistinguished_index_pairs()
        .into_iter()
        .map(|(i, j)| (sig.edges[i].clone(), sig.edges[j].clone()))
        .collect())
}

/// Makes a distinguishing set also separate "no fault" from every fault. Since
/// the fault columns are already distinct, at most one of them can match the
/// fault-free column; one extra measurement from `candidates` (all pairs when
/// `None`) that separates that edge suffices.
pub fn extend_for_no_fault(
    net: &Network,
    measurements: &[Measurement],
    mode: FaultMode,
    candidates: Option<&[Measurement]>,
) -> Result<Vec<Measurement>, SignatureError> {
    let analyzer = FaultAnalyzer::new(net);
    let sig = build_signature_with(&analyzer, measurements, mode)?;
    let pairs = sig.undistinguished_index_pairs();
    if !pairs.is_empty() {
        return Err(SignatureError::NotDistinguishing(pairs.len()));
    }
    let silent = sig.silent_edges();
    let Some(&edge) = silent.first() else {
        return Ok(measurements.to_vec());
    };
    let default;
    let pool = match candidates {
        Some(c) => c,
        None => {
            default = all_pairs(net.vertex_count());
            &default
        }
    };
    for t in pool {
        if measurements.contains(t) {
            continue;
        }
        net.check_measurement(t)?;
        if analyzer.perturbed(t, edge, mode) != Resistance::Finite(analyzer.resistance(t)) {
            let mut out = measurements.to_vec();
            out.push(*t);
            return Ok(out);
        }
    }
    Err(SignatureError::Inseparable(net.edges()[edge].clone()))
}
