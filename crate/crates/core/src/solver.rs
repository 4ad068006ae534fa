//! Minimum distinguishing measurement sets.
//!
//! A set of measurements identifies the faulty edge iff every pair of edges is
//! separated by some measurement, which makes the problem a test cover: the
//! universe is the set of edge pairs and each candidate measurement covers the
//! pairs it separates. [`solve_exact`] runs a depth-first branch-and-bound on
//! that cover (branch on the candidates covering the hardest uncovered pair,
//! prune with a counting bound); [`solve_greedy`] refines the edge partition one
//! measurement at a time.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::family::Family;
use crate::network::{components, Edge, FaultAnalyzer, FaultMode, Measurement, Network, VertexId};
use crate::plan::{MeasurementPlan, Rule};
use crate::signatures::{build_signature_with, class_labels, SignatureError};

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("candidate measurement set is empty")]
    NoCandidates,
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("even all candidates leave {} edge pairs undistinguished, e.g. {} vs {}", .0.len(), .0[0].0, .0[0].1)]
    Infeasible(Vec<(Edge, Edge)>),
}

/// Candidate measurements and the edge partition each one induces.
#[derive(Debug, Clone)]
pub struct CoverInstance {
    candidates: Vec<Measurement>,
    edges: Vec<Edge>,
    /// Class label of every edge, per candidate.
    labels: Vec<Vec<u32>>,
}

impl CoverInstance {
    pub fn build(net: &Network, candidates: &[Measurement], mode: FaultMode) -> Result<Self, SolverError> {
        if candidates.is_empty() {
            return Err(SolverError::NoCandidates);
        }
        let mut seen = HashSet::new();
        let unique: Vec<Measurement> = candidates.iter().copied().filter(|m| seen.insert(*m)).collect();
        let analyzer = FaultAnalyzer::new(net);
        let sig = build_signature_with(&analyzer, &unique, mode)?;
        let labels = (0..unique.len()).map(|i| class_labels(sig.row(i))).collect();
        Ok(CoverInstance { candidates: unique, edges: net.edges().to_vec(), labels })
    }

    pub fn candidates(&self) -> &[Measurement] {
        &self.candidates
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn pair_count(&self) -> usize {
        let m = self.edges.len();
        m * m.saturating_sub(1) / 2
    }

    pub fn separates(&self, candidate: usize, e: usize, f: usize) -> bool {
        self.labels[candidate][e] != self.labels[candidate][f]
    }

    /// Number of edge pairs the candidate separates.
    pub fn separated_pairs(&self, candidate: usize) -> usize {
        let mut counts = std::collections::HashMap::new();
        for &l in &self.labels[candidate] {
            *counts.entry(l).or_insert(0usize) += 1;
        }
        self.pair_count() - counts.values().map(|c| c * (c - 1) / 2).sum::<usize>()
    }

    /// Whether the candidate subset separates all edge pairs.
    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        (0..self.edges.len()).all(|e| seen.insert(chosen.iter().map(|&c| self.labels[c][e]).collect::<Vec<_>>()))
    }

    /// Edge index pairs no candidate separates.
    pub fn unseparable_pairs(&self) -> Vec<(usize, usize)> {
        let all: Vec<usize> = (0..self.candidates.len()).collect();
        let mut out = Vec::new();
        let mut groups: std::collections::HashMap<Vec<u32>, Vec<usize>> = std::collections::HashMap::new();
        for e in 0..self.edges.len() {
            groups.entry(all.iter().map(|&c| self.labels[c][e]).collect()).or_default().push(e);
        }
        for g in groups.values() {
            for (x, &i) in g.iter().enumerate() {
                for &j in &g[x + 1..] {
                    out.push((i.min(j), i.max(j)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn infeasible_error(&self) -> Option<SolverError> {
        let bad = self.unseparable_pairs();
        if bad.is_empty() {
            None
        } else {
            Some(SolverError::Infeasible(
                bad.into_iter().map(|(i, j)| (self.edges[i].clone(), self.edges[j].clone())).collect(),
            ))
        }
    }

    /// Counting bound: every remaining pair must be covered and no single
    /// candidate covers more than `max_c |cover_c|` of them.
    pub fn pair_count_bound(&self) -> usize {
        let max = (0..self.candidates.len()).map(|c| self.separated_pairs(c)).max().unwrap_or(0);
        let total = self.pair_count();
        if total == 0 {
            0
        } else if max == 0 {
            usize::MAX
        } else {
            total.div_ceil(max)
        }
    }

    fn plan(&self, chosen: &[usize], rule: Rule, mode: FaultMode) -> MeasurementPlan {
        let mut ms: Vec<Measurement> = chosen.iter().map(|&c| self.candidates[c]).collect();
        ms.sort_unstable();
        MeasurementPlan::from_measurements(ms, rule, None, mode)
    }
}

/// Greedy refinement: repeatedly add the candidate that increases the number of
/// edge classes most (ties to the lowest candidate index).
pub fn solve_greedy(net: &Network, candidates: &[Measurement], mode: FaultMode) -> Result<MeasurementPlan, SolverError> {
    let inst = CoverInstance::build(net, candidates, mode)?;
    if let Some(err) = inst.infeasible_error() {
        return Err(err);
    }
    let chosen = greedy_indices(&inst);
    Ok(inst.plan(&chosen, Rule::SolverGreedy, mode))
}

fn greedy_indices(inst: &CoverInstance) -> Vec<usize> {
    let m = inst.edges.len();
    let mut block = vec![0u32; m];
    let mut count = if m == 0 { 0 } else { 1 };
    let mut chosen = Vec::new();
    while count < m {
        let mut best: Option<(usize, usize, Vec<u32>)> = None;
        for c in 0..inst.candidates.len() {
            if chosen.contains(&c) {
                continue;
            }
            let mut ids = std::collections::HashMap::new();
            let refined: Vec<u32> = (0..m)
                .map(|e| {
                    let next = ids.len() as u32;
                    *ids.entry((block[e], inst.labels[c][e])).or_insert(next)
                })
                .collect();
            if best.as_ref().is_none_or(|(_, k, _)| ids.len() > *k) {
                best = Some((c, ids.len(), refined));
            }
        }
        let (c, k, refined) = best.expect("feasible instance always has an unused candidate");
        if k == count {
            break;
        }
        chosen.push(c);
        block = refined;
        count = k;
    }
    chosen
}

#[derive(Debug, Clone)]
pub struct ExactOptions {
    pub budget: Duration,
    /// Orbit representatives of the candidate set under the network's
    /// automorphisms. When given, each branch forces one of them as the first
    /// measurement, which is sound because every solution maps to one that
    /// contains a representative.
    pub first_choices: Option<Vec<Measurement>>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { budget: DEFAULT_BUDGET, first_choices: None }
    }
}

impl ExactOptions {
    pub fn with_budget(budget: Duration) -> Self {
        ExactOptions { budget, ..Default::default() }
    }

    /// Symmetry reduction for a family network with all vertex pairs as candidates.
    pub fn for_family(family: &Family, budget: Duration) -> Self {
        ExactOptions { budget, first_choices: Some(family.measurement_orbit_representatives()) }
    }
}

#[derive(Debug, Clone)]
pub enum SolveOutcome {
    /// A minimum-size distinguishing set, proven optimal.
    Optimal(MeasurementPlan),
    /// The budget ran out. `lower_bound` is proven; `incumbent` is the best set found.
    TimedOut { incumbent: MeasurementPlan, lower_bound: usize },
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub nodes: u64,
    pub elapsed: Duration,
    pub greedy_size: usize,
}

impl SolveReport {
    pub fn plan(&self) -> &MeasurementPlan {
        match &self.outcome {
            SolveOutcome::Optimal(p) => p,
            SolveOutcome::TimedOut { incumbent, .. } => incumbent,
        }
    }

    pub fn optimum(&self) -> Option<usize> {
        match &self.outcome {
            SolveOutcome::Optimal(p) => Some(p.len()),
            SolveOutcome::TimedOut { .. } => None,
        }
    }
}

type Bits = Vec<u64>;

struct Search<'a> {
    inst: &'a CoverInstance,
    covers: Vec<Bits>,
    /// Uncovered-pair scan order: pairs covered by few candidates first.
    order: Vec<usize>,
    pair_cands: Vec<Vec<u16>>,
    best: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

fn popcount_and(a: &Bits, b: &Bits) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum()
}

impl<'a> Search<'a> {
    fn new(inst: &'a CoverInstance, incumbent: Vec<usize>, deadline: Instant) -> Self {
        let m = inst.edges.len();
        let pairs = inst.pair_count();
        let words = pairs.div_ceil(64);
        let mut covers = vec![vec![0u64; words]; inst.candidates.len()];
        let mut pair_cands = vec![Vec::new(); pairs];
        let mut p = 0;
        for i in 0..m {
            for j in i + 1..m {
                for (c, cover) in covers.iter_mut().enumerate() {
                    if inst.separates(c, i, j) {
                        cover[p / 64] |= 1 << (p % 64);
                        pair_cands[p].push(c as u16);
                    }
                }
                p += 1;
            }
        }
        let mut order: Vec<usize> = (0..pairs).collect();
        order.sort_by_key(|&p| (pair_cands[p].len(), p));
        Search { inst, covers, order, pair_cands, best: incumbent, chosen: Vec::new(), nodes: 0, deadline, timed_out: false }
    }

    fn full(&self) -> Bits {
        let pairs = self.inst.pair_count();
        let mut b = vec![u64::MAX; pairs.div_ceil(64)];
        if pairs % 64 != 0 {
            *b.last_mut().unwrap() = (1u64 << (pairs % 64)) - 1;
        }
        b
    }

    fn bound(&self, uncovered: &Bits, excluded: &[bool]) -> usize {
        let remaining: u32 = uncovered.iter().map(|w| w.count_ones()).sum();
        if remaining == 0 {
            return 0;
        }
        let max = self
            .covers
            .iter()
            .enumerate()
            .filter(|(c, _)| !excluded[*c])
            .map(|(_, cov)| popcount_and(cov, uncovered))
            .max()
            .unwrap_or(0);
        if max == 0 {
            usize::MAX
        } else {
            remaining.div_ceil(max) as usize
        }
    }

    fn dfs(&mut self, uncovered: &Bits, excluded: &mut Vec<bool>) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes % 256 == 0 && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }
        if uncovered.iter().all(|&w| w == 0) {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        let lb = self.bound(uncovered, excluded);
        if lb == usize::MAX || self.chosen.len() + lb >= self.best.len() {
            return;
        }
        let pair = *self
            .order
            .iter()
            .find(|&&p| uncovered[p / 64] >> (p % 64) & 1 == 1)
            .expect("some pair is uncovered");
        let mut branch: Vec<(u32, usize)> = self.pair_cands[pair]
            .iter()
            .map(|&c| c as usize)
            .filter(|&c| !excluded[c])
            .map(|c| (popcount_and(&self.covers[c], uncovered), c))
            .collect();
        branch.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut newly = Vec::with_capacity(branch.len());
        for (_, c) in branch {
            let next: Bits = uncovered.iter().zip(&self.covers[c]).map(|(u, cv)| u & !cv).collect();
            self.chosen.push(c);
            self.dfs(&next, excluded);
            self.chosen.pop();
            if self.timed_out {
                break;
            }
            // Later siblings need not consider `c`: those sets were covered here.
            excluded[c] = true;
            newly.push(c);
        }
        for c in newly {
            excluded[c] = false;
        }
    }
}

/// Minimum distinguishing subset of `candidates`, proven optimal unless the
/// budget runs out.
pub fn solve_exact(
    net: &Network,
    candidates: &[Measurement],
    mode: FaultMode,
    options: &ExactOptions,
) -> Result<SolveReport, SolverError> {
    let start = Instant::now();
    let inst = CoverInstance::build(net, candidates, mode)?;
    if let Some(err) = inst.infeasible_error() {
        return Err(err);
    }
    let greedy = greedy_indices(&inst);
    let greedy_size = greedy.len();
    let root_bound = inst.pair_count_bound();
    let mut search = Search::new(&inst, greedy, start + options.budget);
    let full = search.full();
    let k = inst.candidates.len();

    let firsts: Vec<usize> = match &options.first_choices {
        Some(reps) => reps.iter().filter_map(|r| inst.candidates.iter().position(|c| c == r)).collect(),
        None => Vec::new(),
    };
    if firsts.is_empty() || full.iter().all(|&w| w == 0) {
        search.dfs(&full, &mut vec![false; k]);
    } else {
        for &c in &firsts {
            let next: Bits = full.iter().zip(&search.covers[c]).map(|(u, cv)| u & !cv).collect();
            search.chosen.push(c);
            search.dfs(&next, &mut vec![false; k]);
            search.chosen.pop();
            if search.timed_out {
                break;
            }
        }
    }

    let plan = inst.plan(&search.best, Rule::SolverExact, mode);
    let outcome = if search.timed_out {
        SolveOutcome::TimedOut { incumbent: plan, lower_bound: root_bound.min(search.best.len()) }
    } else {
        SolveOutcome::Optimal(plan)
    };
    Ok(SolveReport { outcome, nodes: search.nodes, elapsed: start.elapsed(), greedy_size })
}

/// A necessary condition from the lower-bound arguments that a measurement set
/// fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two unmeasured vertices in one part (or anywhere, for complete graphs):
    /// `(u, v)` and `(u', v)` look alike to every measurement.
    TwoIsolated { part: Option<usize>, first: VertexId, second: VertexId },
    /// A component of size two inside one part (any size-two component for a
    /// complete graph).
    SizeTwoComponent { pair: Measurement },
    /// Complete graph with an isolated vertex and a three-vertex component that
    /// is a path rather than a triangle.
    OpenTriple { component: Vec<VertexId> },
    /// Two size-two components joining the same pair of equal-sized parts.
    TwinCrossPairs { first: Measurement, second: Measurement },
    /// A size-two component joining equal-sized parts that both also hold an
    /// isolated vertex.
    CrossPairWithIsolated { pair: Measurement, isolated: (VertexId, VertexId) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TwoIsolated { part: Some(p), first, second } => {
                write!(f, "vertices {first} and {second} of part {p} are both unmeasured")
            }
            Violation::TwoIsolated { part: None, first, second } => {
                write!(f, "vertices {first} and {second} are both unmeasured")
            }
            Violation::SizeTwoComponent { pair } => write!(f, "measurement {pair} forms a component of size two"),
            Violation::OpenTriple { component } => {
                write!(f, "component {component:?} is a path, not a triangle, while a vertex is unmeasured")
            }
            Violation::TwinCrossPairs { first, second } => {
                write!(f, "isolated measurements {first} and {second} join the same equal-sized parts")
            }
            Violation::CrossPairWithIsolated { pair, isolated } => write!(
                f,
                "isolated measurement {pair} joins parts whose unmeasured vertices {} and {} it cannot separate",
                isolated.0, isolated.1
            ),
        }
    }
}

/// The graph on all vertices whose edges are the measurements.
#[derive(Debug, Clone)]
pub struct MeasurementGraph {
    pub n: usize,
    pub measurements: Vec<Measurement>,
    /// Vertex sets of the connected components, in order of least vertex.
    pub components: Vec<Vec<VertexId>>,
    pub isolated: Vec<VertexId>,
    pub size_two: Vec<Measurement>,
    /// Isolated-vertex count per part, when a k-partite shape is known.
    pub isolated_per_part: Option<Vec<usize>>,
    pub violations: Vec<Violation>,
}

impl MeasurementGraph {
    pub fn edge_count_in(&self, component: &[VertexId]) -> usize {
        self.measurements.iter().filter(|m| component.contains(&m.r)).count()
    }
}

pub fn analyze_measurement_graph(n: usize, measurements: &[Measurement], family: Option<&Family>) -> MeasurementGraph {
    let labels = components(n, measurements.iter().map(|m| (m.r, m.s)));
    let count = labels.iter().max().map_or(0, |c| c + 1);
    let mut comps = vec![Vec::new(); count];
    for (v, &c) in labels.iter().enumerate() {
        comps[c].push(v);
    }
    let isolated: Vec<VertexId> = comps.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    let size_two: Vec<Measurement> =
        comps.iter().filter(|c| c.len() == 2).map(|c| Measurement { r: c[0], s: c[1] }).collect();
    let mut violations = Vec::new();
    let mut isolated_per_part = None;

    match family {
        Some(Family::Complete(_)) => {
            if isolated.len() >= 2 {
                violations.push(Violation::TwoIsolated { part: None, first: isolated[0], second: isolated[1] });
            }
            for &pair in &size_two {
                violations.push(Violation::SizeTwoComponent { pair });
            }
            if !isolated.is_empty() {
                for c in comps.iter().filter(|c| c.len() == 3) {
                    if measurements.iter().filter(|m| c.contains(&m.r)).count() < 3 {
                        violations.push(Violation::OpenTriple { component: c.clone() });
                    }
                }
            }
        }
        Some(Family::KPartite(shape)) => {
            let part = |v: VertexId| shape.part_of(v);
            let mut per_part = vec![Vec::new(); shape.k()];
            for &v in &isolated {
                per_part[part(v)].push(v);
            }
            for (p, vs) in per_part.iter().enumerate() {
                if vs.len() >= 2 {
                    violations.push(Violation::TwoIsolated { part: Some(p), first: vs[0], second: vs[1] });
                }
            }
            let equal = |a: VertexId, b: VertexId| shape.size(part(a)) == shape.size(part(b));
            let mut cross: Vec<Measurement> = Vec::new();
            for &pair in &size_two {
                if part(pair.r) == part(pair.s) {
                    violations.push(Violation::SizeTwoComponent { pair });
                    continue;
                }
                if !equal(pair.r, pair.s) {
                    continue;
                }
                let key = |m: &Measurement| {
                    let (a, b) = (part(m.r), part(m.s));
                    (a.min(b), a.max(b))
                };
                if let Some(first) = cross.iter().find(|m| key(m) == key(&pair)) {
                    violations.push(Violation::TwinCrossPairs { first: *first, second: pair });
                }
                cross.push(pair);
                if let (Some(&x), Some(&y)) = (per_part[part(pair.r)].first(), per_part[part(pair.s)].first()) {
                    violations.push(Violation::CrossPairWithIsolated { pair, isolated: (x, y) });
                }
            }
            isolated_per_part = Some(per_part.iter().map(Vec::len).collect());
        }
        None => {}
    }

    MeasurementGraph {
        n,
        measurements: measurements.to_vec(),
        components: comps,
        isolated,
        size_two,
        isolated_per_part,
        violations,
    }
}
