//! Exact network model: Laplacians, effective resistance, and single-edge faults.
//!
//! A [`Network`] is a connected, simple, positively weighted graph. Parallel edges
//! are merged at construction by summing conductances. All arithmetic is exact
//! (`BigRational`); the reduced Laplacian is scaled to integers and inverted with
//! fraction-free elimination.
//!
//! Resistances under a fault are computed two ways:
//!
//! * [`Network::perturbed_effective_resistance`] applies the rank-one
//!   (Sherman–Morrison) update to `L(b)^-1`, grounding at the fault endpoint `b`;
//! * [`Network::direct_effective_resistance_oracle`] rebuilds the altered graph
//!   (edge deleted, or endpoints merged) and solves it from scratch.
//!
//! The two routes share nothing beyond the elimination kernel.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bareiss::{self, EliminationError};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("a network needs at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} is out of range for a network on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({u}, {v}) has non-positive conductance {conductance}")]
    NonPositiveConductance { u: VertexId, v: VertexId, conductance: BigRational },
    #[error("network is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(VertexId),
    #[error("measurement endpoints must differ, got ({0}, {0})")]
    DegenerateMeasurement(VertexId),
    #[error("({u}, {v}) is not an edge of the network")]
    UnknownEdge { u: VertexId, v: VertexId },
    #[error("vertex {0} is the ground vertex and has no row in the reduced Laplacian")]
    GroundEntry(VertexId),
    #[error("elimination failed: {0}")]
    Elimination(#[from] EliminationError),
}

/// Unordered vertex pair at which effective resistance is probed. Stored with
/// `r < s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Measurement {
    pub r: VertexId,
    pub s: VertexId,
}

impl Measurement {
    pub fn new(a: VertexId, b: VertexId) -> Result<Self, NetworkError> {
        if a == b {
            return Err(NetworkError::DegenerateMeasurement(a));
        }
        Ok(Measurement { r: a.min(b), s: a.max(b) })
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.r == v || self.s == v
    }

    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if v == self.r {
            Some(self.s)
        } else if v == self.s {
            Some(self.r)
        } else {
            None
        }
    }
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.s)
    }
}

/// Every unordered vertex pair of an `n`-vertex network, in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<Measurement> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for r in 0..n {
        for s in r + 1..n {
            out.push(Measurement { r, s });
        }
    }
    out
}

/// A resistor between two distinct terminals. Stored with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub conductance: BigRational,
}

impl Edge {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// How the adversary alters the chosen edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaultMode {
    /// Conductance drops to zero: the resistor is open.
    Removed,
    /// Conductance goes to infinity: the endpoints are contracted.
    Shorted,
}

impl FaultMode {
    pub const ALL: [FaultMode; 2] = [FaultMode::Removed, FaultMode::Shorted];

    pub fn as_str(self) -> &'static str {
        match self {
            FaultMode::Removed => "removed",
            FaultMode::Shorted => "shorted",
        }
    }
}

impl fmt::Display for FaultMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FaultMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "removed" => Ok(FaultMode::Removed),
            "shorted" => Ok(FaultMode::Shorted),
            other => Err(format!("unknown fault mode '{other}' (expected removed|shorted)")),
        }
    }
}

/// An observed effective resistance. `Infinite` is an open circuit between the
/// probed terminals; it compares equal only to itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Resistance {
    Finite(BigRational),
    Infinite,
}

impl Resistance {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Resistance::Finite(v) => Some(v),
            Resistance::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Resistance::Infinite)
    }

    /// Exact `p/q` text (integers print without a denominator), or `inf`.
    pub fn to_exact_string(&self) -> String {
        match self {
            Resistance::Finite(v) => rational_to_string(v),
            Resistance::Infinite => "inf".to_string(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Resistance::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
            Resistance::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Resistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl From<BigRational> for Resistance {
    fn from(v: BigRational) -> Self {
        Resistance::Finite(v)
    }
}

pub fn rational_to_string(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    let parse_int = |s: &str| BigInt::from_str(s.trim()).map_err(|_| format!("invalid rational '{text}'"));
    match t.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(format!("zero denominator in '{text}'"));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(t)?)),
    }
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Connected weighted simple graph with positive rational conductances.
#[derive(Debug, Clone)]
pub struct Network {
    n: usize,
    edges: Vec<Edge>,
    index: HashMap<(VertexId, VertexId), usize>,
    /// Least common multiple of the conductance denominators; `scale * w_e` is
    /// integral for every edge.
    scale: BigInt,
}

impl Network {
    /// Builds a network, merging parallel edges by summing their conductances.
    /// Edges are stored sorted by endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, BigRational)>,
    {
        if n < 2 {
            return Err(NetworkError::TooFewVertices(n));
        }
        let mut merged: BTreeMap<(VertexId, VertexId), BigRational> = BTreeMap::new();
        for (a, b, w) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(NetworkError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(NetworkError::SelfLoop(a));
            }
            if !w.is_positive() {
                return Err(NetworkError::NonPositiveConductance { u: a, v: b, conductance: w });
            }
            *merged.entry((a.min(b), a.max(b))).or_insert_with(BigRational::zero) += w;
        }
        let edges: Vec<Edge> = merged.into_iter().map(|((u, v), conductance)| Edge { u, v, conductance }).collect();
        if let Some(v) = first_unreachable(n, edges.iter().map(Edge::endpoints)) {
            return Err(NetworkError::Disconnected(v));
        }
        let index = edges.iter().enumerate().map(|(i, e)| ((e.u, e.v), i)).collect();
        let scale = edges.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.conductance.denom()));
        Ok(Network { n, edges, index, scale })
    }

    /// Unit-conductance network on the given pairs.
    pub fn unit<I>(n: usize, pairs: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Network::new(n, pairs.into_iter().map(|(a, b)| (a, b, BigRational::one())))
    }

    /// Complete graph `K_n` with unit conductances.
    pub fn complete(n: usize) -> Result<Self, NetworkError> {
        Network::unit(n, all_pairs(n).into_iter().map(|m| (m.r, m.s)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<&Edge> {
        self.edge_index(u, v).map(|i| &self.edges[i])
    }

    fn locate(&self, fault: &Edge) -> Result<usize, NetworkError> {
        self.edge_index(fault.u, fault.v).ok_or(NetworkError::UnknownEdge { u: fault.u, v: fault.v })
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), NetworkError> {
        if v >= self.n {
            Err(NetworkError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_measurement(&self, m: &Measurement) -> Result<(), NetworkError> {
        self.check_vertex(m.r)?;
        self.check_vertex(m.s)?;
        if m.r == m.s {
            return Err(NetworkError::DegenerateMeasurement(m.r));
        }
        Ok(())
    }

    /// Weighted Laplacian (degree minus adjacency), `n x n`.
    pub fn laplacian(&self) -> Vec<Vec<BigRational>> {
        let mut l = vec![vec![BigRational::zero(); self.n]; self.n];
        for e in &self.edges {
            l[e.u][e.u] += &e.conductance;
            l[e.v][e.v] += &e.conductance;
            l[e.u][e.v] -= &e.conductance;
            l[e.v][e.u] -= &e.conductance;
        }
        l
    }

    /// Laplacian with row and column `ground` deleted. Rows are ordered by vertex
    /// id with `ground` skipped.
    pub fn reduced_laplacian(&self, ground: VertexId) -> Result<Vec<Vec<BigRational>>, NetworkError> {
        self.check_vertex(ground)?;
        let full = self.laplacian();
        Ok(full
            .into_iter()
            .enumerate()
            .filter(|(i, _)| *i != ground)
            .map(|(_, row)| row.into_iter().enumerate().filter(|(j, _)| *j != ground).map(|(_, x)| x).collect())
            .collect())
    }

    /// `scale * L(ground)` as an integer matrix.
    fn scaled_reduced_laplacian(&self, ground: VertexId) -> Vec<Vec<BigInt>> {
        let m = self.n - 1;
        let mut l = vec![vec![BigInt::zero(); m]; m];
        let pos = |v: VertexId| if v < ground { Some(v) } else if v > ground { Some(v - 1) } else { None };
        for e in &self.edges {
            let w = (&e.conductance * BigRational::from_integer(self.scale.clone())).to_integer();
            let (pu, pv) = (pos(e.u), pos(e.v));
            if let Some(i) = pu {
                l[i][i] += &w;
            }
            if let Some(j) = pv {
                l[j][j] += &w;
            }
            if let (Some(i), Some(j)) = (pu, pv) {
                l[i][j] -= &w;
                l[j][i] -= &w;
            }
        }
        l
    }

    /// Pivots of the fraction-free elimination of `scale * L(ground)`. All are
    /// positive for a connected network.
    pub fn reduced_laplacian_pivots(&self, ground: VertexId) -> Result<Vec<BigInt>, NetworkError> {
        self.check_vertex(ground)?;
        Ok(bareiss::solve(&self.scaled_reduced_laplacian(ground), &[])?.pivots)
    }

    /// Entry `(i, j)` of `L(ground)^-1`, from one fraction-free solve for column `j`.
    pub fn reduced_inverse_entry(&self, ground: VertexId, i: VertexId, j: VertexId) -> Result<BigRational, NetworkError> {
        for v in [ground, i, j] {
            self.check_vertex(v)?;
        }
        for v in [i, j] {
            if v == ground {
                return Err(NetworkError::GroundEntry(v));
            }
        }
        let m = self.n - 1;
        let pos = |v: VertexId| if v < ground { v } else { v - 1 };
        let mut rhs = vec![BigInt::zero(); m];
        rhs[pos(j)] = BigInt::one();
        let sol = bareiss::solve(&self.scaled_reduced_laplacian(ground), &[rhs])?;
        Ok(BigRational::new(&sol.columns[0][pos(i)] * &self.scale, sol.denominator))
    }

    /// The full `L(ground)^-1`.
    pub fn grounded_inverse(&self, ground: VertexId) -> Result<GroundedInverse, NetworkError> {
        self.check_vertex(ground)?;
        let m = self.n - 1;
        let identity: Vec<Vec<BigInt>> = (0..m)
            .map(|c| (0..m).map(|r| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let sol = bareiss::solve(&self.scaled_reduced_laplacian(ground), &identity)?;
        let mut entries = vec![BigRational::zero(); self.n * self.n];
        let vertex = |p: usize| if p < ground { p } else { p + 1 };
        for (c, column) in sol.columns.iter().enumerate() {
            for (r, x) in column.iter().enumerate() {
                entries[vertex(r) * self.n + vertex(c)] = BigRational::new(x * &self.scale, sol.denominator.clone());
            }
        }
        Ok(GroundedInverse { n: self.n, ground, entries })
    }

    /// Effective resistance between the measurement endpoints, grounded at vertex 0.
    pub fn effective_resistance(&self, m: &Measurement) -> Result<Resistance, NetworkError> {
        self.effective_resistance_grounded(m, 0)
    }

    /// Effective resistance using an explicit ground vertex. The value does not
    /// depend on the choice.
    pub fn effective_resistance_grounded(&self, m: &Measurement, ground: VertexId) -> Result<Resistance, NetworkError> {
        self.check_measurement(m)?;
        Ok(Resistance::Finite(self.grounded_inverse(ground)?.resistance(m.r, m.s)))
    }

    /// Resistance between `m` after `fault` is altered, via the rank-one update of
    /// `L(b)^-1` with `b` the larger fault endpoint.
    pub fn perturbed_effective_resistance(
        &self,
        m: &Measurement,
        fault: &Edge,
        mode: FaultMode,
    ) -> Result<Resistance, NetworkError> {
        self.check_measurement(m)?;
        let idx = self.locate(fault)?;
        let e = &self.edges[idx];
        let inv = self.grounded_inverse(e.v)?;
        match smw_update(&inv, m, e, mode) {
            Some(r) => Ok(r),
            None => self.direct_effective_resistance_oracle(m, e, mode),
        }
    }

    /// Resistance between `m` in the explicitly altered graph: the edge deleted
    /// (`Removed`) or its endpoints merged (`Shorted`).
    pub fn direct_effective_resistance_oracle(
        &self,
        m: &Measurement,
        fault: &Edge,
        mode: FaultMode,
    ) -> Result<Resistance, NetworkError> {
        self.check_measurement(m)?;
        Ok(self.faulted_resistances(fault, mode)?.get(m))
    }

    /// All pair resistances of the altered graph, computed from scratch.
    pub fn faulted_resistances(&self, fault: &Edge, mode: FaultMode) -> Result<FaultedResistances, NetworkError> {
        let idx = self.locate(fault)?;
        let e = &self.edges[idx];
        match mode {
            FaultMode::Removed => {
                let rest: Vec<&Edge> = self.edges.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, x)| x).collect();
                let comp = components(self.n, rest.iter().map(|x| x.endpoints()));
                let count = comp.iter().max().map_or(0, |c| c + 1);
                let mut parts = Vec::with_capacity(count);
                for c in 0..count {
                    let members: Vec<VertexId> = (0..self.n).filter(|&v| comp[v] == c).collect();
                    parts.push(ComponentTable::build(&members, rest.iter().copied())?);
                }
                Ok(FaultedResistances { map: (0..self.n).map(|v| (comp[v], v)).collect(), parts })
            }
            FaultMode::Shorted => {
                let (keep, gone) = (e.u, e.v);
                let merged: Vec<VertexId> = (0..self.n).map(|v| if v == gone { keep } else { v }).collect();
                let members: Vec<VertexId> = (0..self.n).filter(|&v| v != gone).collect();
                let contracted = self.edges.iter().enumerate().filter(|(i, _)| *i != idx).map(|(_, x)| Edge {
                    u: merged[x.u],
                    v: merged[x.v],
                    conductance: x.conductance.clone(),
                });
                let owned: Vec<Edge> = contracted.collect();
                let table = ComponentTable::build(&members, owned.iter())?;
                Ok(FaultedResistances { map: merged.into_iter().map(|v| (0, v)).collect(), parts: vec![table] })
            }
        }
    }
}

/// Rank-one update of `R_rs` for a fault on `e`, given `L(b)^-1` with `b = e.v`.
/// Returns `None` when the update denominator vanishes (a bridge is removed).
pub(crate) fn smw_update(inv: &GroundedInverse, m: &Measurement, e: &Edge, mode: FaultMode) -> Option<Resistance> {
    debug_assert_eq!(inv.ground, e.v);
    let a = e.u;
    let base = inv.resistance(m.r, m.s);
    let laa = inv.entry(a, a);
    let beta = match mode {
        FaultMode::Shorted => laa.recip(),
        FaultMode::Removed => {
            let alpha = -e.conductance.clone();
            let denom = BigRational::one() + &alpha * laa;
            if denom.is_zero() {
                return None;
            }
            alpha / denom
        }
    };
    let diff = inv.entry(a, m.r) - inv.entry(a, m.s);
    Some(Resistance::Finite(base - beta * &diff * &diff))
}

/// `L(ground)^-1` indexed by vertex id; row and column `ground` are zero.
#[derive(Debug, Clone)]
pub struct GroundedInverse {
    n: usize,
    ground: VertexId,
    entries: Vec<BigRational>,
}

impl GroundedInverse {
    pub fn ground(&self) -> VertexId {
        self.ground
    }

    pub fn entry(&self, i: VertexId, j: VertexId) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    /// `L_rr + L_ss - 2 L_rs`, which covers all three grounding cases because the
    /// ground row is zero.
    pub fn resistance(&self, r: VertexId, s: VertexId) -> BigRational {
        if r == s {
            return BigRational::zero();
        }
        self.entry(r, r) + self.entry(s, s) - BigRational::from_integer(BigInt::from(2)) * self.entry(r, s)
    }
}

/// Resistance table for one connected component of an altered graph.
#[derive(Debug, Clone)]
struct ComponentTable {
    local: HashMap<VertexId, usize>,
    inverse: Option<GroundedInverse>,
}

impl ComponentTable {
    fn build<'e, I>(members: &[VertexId], edges: I) -> Result<Self, NetworkError>
    where
        I: IntoIterator<Item = &'e Edge>,
    {
        let local: HashMap<VertexId, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if members.len() < 2 {
            return Ok(ComponentTable { local, inverse: None });
        }
        let sub = edges.into_iter().filter_map(|e| match (local.get(&e.u), local.get(&e.v)) {
            (Some(&a), Some(&b)) if a != b => Some((a, b, e.conductance.clone())),
            _ => None,
        });
        let net = Network::new(members.len(), sub)?;
        Ok(ComponentTable { local, inverse: Some(net.grounded_inverse(0)?) })
    }
}

/// Pair resistances of a faulted network, produced by
/// [`Network::faulted_resistances`].
#[derive(Debug, Clone)]
pub struct FaultedResistances {
    /// Original vertex -> (component, representative vertex after contraction).
    map: Vec<(usize, VertexId)>,
    parts: Vec<ComponentTable>,
}

impl FaultedResistances {
    pub fn get(&self, m: &Measurement) -> Resistance {
        let (cr, vr) = self.map[m.r];
        let (cs, vs) = self.map[m.s];
        if cr != cs {
            return Resistance::Infinite;
        }
        if vr == vs {
            return Resistance::Finite(BigRational::zero());
        }
        let part = &self.parts[cr];
        let inv = part.inverse.as_ref().expect("component with two distinct vertices has a table");
        Resistance::Finite(inv.resistance(part.local[&vr], part.local[&vs]))
    }
}

/// Caches `L(v)^-1` for every ground vertex so that many perturbed resistances on
/// one network cost one inversion per fault endpoint. Safe to share across threads.
#[derive(Debug)]
pub struct FaultAnalyzer<'a> {
    net: &'a Network,
    inverses: Vec<OnceLock<GroundedInverse>>,
}

impl<'a> FaultAnalyzer<'a> {
    pub fn new(net: &'a Network) -> Self {
        FaultAnalyzer { net, inverses: (0..net.vertex_count()).map(|_| OnceLock::new()).collect() }
    }

    pub fn network(&self) -> &'a Network {
        self.net
    }

    pub fn inverse(&self, ground: VertexId) -> &GroundedInverse {
        self.inverses[ground].get_or_init(|| {
            self.net.grounded_inverse(ground).expect("connected network has an invertible reduced Laplacian")
        })
    }

    pub fn resistance(&self, m: &Measurement) -> BigRational {
        self.inverse(0).resistance(m.r, m.s)
    }

    /// Same value as [`Network::perturbed_effective_resistance`] for edge index `edge`.
    pub fn perturbed(&self, m: &Measurement, edge: usize, mode: FaultMode) -> Resistance {
        let e = &self.net.edges[edge];
        match smw_update(self.inverse(e.v), m, e, mode) {
            Some(r) => r,
            None => self
                .net
                .direct_effective_resistance_oracle(m, e, mode)
                .expect("edge and measurement already validated"),
        }
    }
}

/// Component label per vertex (labels dense, in order of first vertex).
pub(crate) fn components<I>(n: usize, edges: I) -> Vec<usize>
where
    I: IntoIterator<Item = (VertexId, VertexId)>,
{
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut out = vec![0; n];
    for v in 0..n {
        let root = find(&mut parent, v);
        if label[root] == usize::MAX {
            label[root] = next;
            next += 1;
        }
        out[v] = label[root];
    }
    out
}

fn first_unreachable<I>(n: usize, edges: I) -> Option<VertexId>
where
    I: IntoIterator<Item = (VertexId, VertexId)>,
{
    components(n, edges).iter().position(|&c| c != 0)
}
