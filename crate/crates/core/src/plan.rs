//! Measurement plans and the provenance tags attached to each measurement.

use std::fmt;
use std::str::FromStr;

use crate::family::Family;
use crate::network::{FaultMode, Measurement, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ButterflyKind {
    /// Two measurements sharing a center vertex.
    Plain,
    /// Wings in the two smaller parts, center in the largest.
    Tripartite,
    /// One of the two wings of a six-vertex bipartite scheme.
    ZigZag,
    /// Center in one part, both wings in the other.
    Hairpin,
    /// All three vertices in one part.
    Partition,
}

impl ButterflyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ButterflyKind::Plain => "plain",
            ButterflyKind::Tripartite => "tripartite",
            ButterflyKind::ZigZag => "zigzag",
            ButterflyKind::Hairpin => "hairpin",
            ButterflyKind::Partition => "partition",
        }
    }
}

/// Two measurements `(wings.0, center)` and `(center, wings.1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ButterflyWing {
    pub kind: ButterflyKind,
    pub center: VertexId,
    pub wings: (VertexId, VertexId),
}

impl ButterflyWing {
    pub fn measurements(&self) -> [Measurement; 2] {
        [
            Measurement::new(self.wings.0, self.center).expect("wing differs from center"),
            Measurement::new(self.center, self.wings.1).expect("wing differs from center"),
        ]
    }
}

/// Which construction rule produced a measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Butterfly(ButterflyKind),
    /// Disjoint cross-part pair from a matching.
    Matching,
    /// A vertex left over after grouping, joined to an already used vertex.
    Leftover,
    /// A measurement placed to handle a designated (otherwise unused) vertex.
    Designated,
    SolverExact,
    SolverGreedy,
    /// Added so that "no fault" is distinguishable from every fault.
    NoFault,
    /// Read from a file without a recognized tag.
    External,
}

impl Rule {
    pub fn tag(self) -> String {
        match self {
            Rule::Butterfly(k) => format!("butterfly:{}", k.as_str()),
            Rule::Matching => "matching".into(),
            Rule::Leftover => "leftover".into(),
            Rule::Designated => "designated".into(),
            Rule::SolverExact => "solver:exact".into(),
            Rule::SolverGreedy => "solver:greedy".into(),
            Rule::NoFault => "no-fault".into(),
            Rule::External => "external".into(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "butterfly:plain" => Rule::Butterfly(ButterflyKind::Plain),
            "butterfly:tripartite" => Rule::Butterfly(ButterflyKind::Tripartite),
            "butterfly:zigzag" => Rule::Butterfly(ButterflyKind::ZigZag),
            "butterfly:hairpin" => Rule::Butterfly(ButterflyKind::Hairpin),
            "butterfly:partition" => Rule::Butterfly(ButterflyKind::Partition),
            "matching" => Rule::Matching,
            "leftover" => Rule::Leftover,
            "designated" => Rule::Designated,
            "solver:exact" => Rule::SolverExact,
            "solver:greedy" => Rule::SolverGreedy,
            "no-fault" => Rule::NoFault,
            "external" => Rule::External,
            other => return Err(format!("unknown provenance tag '{other}'")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementPlan {
    pub measurements: Vec<Measurement>,
    /// One rule per measurement.
    pub provenance: Vec<Rule>,
    /// The family the plan targets, when it was generated for one.
    pub family: Option<Family>,
    pub mode: FaultMode,
    /// Butterfly wings placed by a strategy, for diagnostics.
    pub wings: Vec<ButterflyWing>,
}

impl MeasurementPlan {
    pub fn new(family: Option<Family>, mode: FaultMode) -> Self {
        MeasurementPlan { measurements: Vec::new(), provenance: Vec::new(), family, mode, wings: Vec::new() }
    }

    pub fn from_measurements(measurements: Vec<Measurement>, rule: Rule, family: Option<Family>, mode: FaultMode) -> Self {
        let provenance = vec![rule; measurements.len()];
        MeasurementPlan { measurements, provenance, family, mode, wings: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.measurements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.measurements.is_empty()
    }

    /// Appends `(a, b)`; panics on a duplicate, which would be a generator bug.
    pub fn push(&mut self, a: VertexId, b: VertexId, rule: Rule) {
        let m = Measurement::new(a, b).expect("strategy measured a vertex against itself");
        assert!(!self.measurements.contains(&m), "duplicate measurement {m}");
        self.measurements.push(m);
        self.provenance.push(rule);
    }

    pub fn push_wing(&mut self, wing: ButterflyWing) {
        for m in wing.measurements() {
            self.push(m.r, m.s, Rule::Butterfly(wing.kind));
        }
        self.wings.push(wing);
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.measurements.iter().any(|m| m.contains(v))
    }
}
