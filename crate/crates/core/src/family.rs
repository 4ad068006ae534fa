//! Graph families with closed-form analysis: complete graphs and complete
//! k-partite graphs, in their canonical vertex labeling.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{all_pairs, Measurement, Network, NetworkError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("a k-partite shape needs at least two partitions, got {0}")]
    TooFewParts(usize),
    #[error("partition sizes must be positive")]
    EmptyPart,
}

/// Partition sizes of a complete k-partite unit-conductance network, kept in
/// nondecreasing order. Vertices are numbered partition by partition: part 0
/// holds `0..parts[0]`, part 1 the next `parts[1]` ids, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KPartiteShape {
    parts: Vec<usize>,
    offsets: Vec<usize>,
}

impl KPartiteShape {
    /// Sorts `parts` into nondecreasing order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, ShapeError> {
        if parts.len() < 2 {
            return Err(ShapeError::TooFewParts(parts.len()));
        }
        if parts.contains(&0) {
            return Err(ShapeError::EmptyPart);
        }
        parts.sort_unstable();
        let mut offsets = Vec::with_capacity(parts.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for p in &parts {
            acc += p;
            offsets.push(acc);
        }
        Ok(KPartiteShape { parts, offsets })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.offsets[self.parts.len()]
    }

    pub fn size(&self, part: usize) -> usize {
        self.parts[part]
    }

    /// True when every part has at least two vertices.
    pub fn parts_at_least_two(&self) -> bool {
        self.parts[0] >= 2
    }

    pub fn part_of(&self, v: VertexId) -> usize {
        debug_assert!(v < self.n());
        self.offsets.partition_point(|&o| o <= v) - 1
    }

    pub fn vertices(&self, part: usize) -> std::ops::Range<VertexId> {
        self.offsets[part]..self.offsets[part + 1]
    }

    pub fn network(&self) -> Network {
        let n = self.n();
        let pairs = all_pairs(n).into_iter().filter(|m| self.part_of(m.r) != self.part_of(m.s)).map(|m| (m.r, m.s));
        Network::unit(n, pairs).expect("complete k-partite graph with k >= 2 is connected")
    }

    /// One representative measurement per orbit of the automorphism group
    /// (permutations inside each part, and swaps of equal-sized parts).
    pub fn measurement_orbit_representatives(&self) -> Vec<Measurement> {
        let mut out = Vec::new();
        let mut seen_same = Vec::new();
        let mut seen_cross = Vec::new();
        for p in 0..self.k() {
            let size = self.parts[p];
            if size >= 2 && !seen_same.contains(&size) {
                seen_same.push(size);
                let base = self.offsets[p];
                out.push(Measurement { r: base, s: base + 1 });
            }
            for q in p + 1..self.k() {
                let key = (size, self.parts[q]);
                if !seen_cross.contains(&key) {
                    seen_cross.push(key);
                    out.push(Measurement { r: self.offsets[p], s: self.offsets[q] });
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for KPartiteShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "K_{{{}}}", parts.join(","))
    }
}

/// A graph family descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    KPartite(KPartiteShape),
}

impl Family {
    pub fn network(&self) -> Result<Network, NetworkError> {
        match self {
            Family::Complete(n) => Network::complete(*n),
            Family::KPartite(shape) => Ok(shape.network()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Family::Complete(n) => *n,
            Family::KPartite(shape) => shape.n(),
        }
    }

    /// Orbit representatives of all vertex pairs under the family's symmetry.
    pub fn measurement_orbit_representatives(&self) -> Vec<Measurement> {
        match self {
            Family::Complete(n) if *n >= 2 => vec![Measurement { r: 0, s: 1 }],
            Family::Complete(_) => Vec::new(),
            Family::KPartite(shape) => shape.measurement_orbit_representatives(),
        }
    }

    pub fn shape(&self) -> Option<&KPartiteShape> {
        match self {
            Family::KPartite(s) => Some(s),
            Family::Complete(_) => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "K_{n}"),
            Family::KPartite(s) => s.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labeling() {
        let s = KPartiteShape::new(vec![4, 2, 3]).unwrap();
        assert_eq!(s.parts(), &[2, 3, 4]);
        assert_eq!(s.n(), 9);
        assert_eq!((0..9).map(|v| s.part_of(v)).collect::<Vec<_>>(), vec![0, 0, 1, 1, 1, 2, 2, 2, 2]);
        assert_eq!(s.vertices(1), 2..5);
    }

    #[test]
    fn network_edge_count() {
        let s = KPartiteShape::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.network().edge_count(), 2 * 3 + 2 * 4 + 3 * 4);
    }

    #[test]
    fn orbit_representatives() {
        let s = KPartiteShape::new(vec![2, 2, 3]).unwrap();
        let reps = s.measurement_orbit_representatives();
        // same-part: size 2, size 3; cross: (2,2), (2,3)
        assert_eq!(reps.len(), 4);
        assert_eq!(Family::Complete(6).measurement_orbit_representatives().len(), 1);
    }

    #[test]
    fn shape_errors() {
        assert_eq!(KPartiteShape::new(vec![3]).unwrap_err(), ShapeError::TooFewParts(1));
        assert_eq!(KPartiteShape::new(vec![3, 0]).unwrap_err(), ShapeError::EmptyPart);
    }
}
