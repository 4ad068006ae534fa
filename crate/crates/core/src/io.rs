//! JSON file formats for networks and measurement plans.
//!
//! Conductances are written as exact `"p/q"` (or integer) strings. A network
//! argument may also be a family shorthand: `K6`, `K_6`, `K3,3`, `K_{2,3,4}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::{Family, KPartiteShape};
use crate::network::{parse_rational, rational_to_string, FaultMode, Measurement, Network, NetworkError};
use crate::plan::{MeasurementPlan, Rule};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}\n  | {context}")]
    Json { line: usize, column: usize, message: String, context: String },
    #[error("invalid {what}: {message}")]
    Invalid { what: &'static str, message: String },
    #[error(transparent)]
    Network(#[from] NetworkError),
}

fn invalid(what: &'static str, message: impl Into<String>) -> FormatError {
    FormatError::Invalid { what, message: message.into() }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| {
        let line = e.line();
        let context = text.lines().nth(line.saturating_sub(1)).unwrap_or("").trim_end().to_string();
        // serde_json appends " at line L column C"; the position is reported separately
        let message = e.to_string();
        let message = message.split(" at line ").next().unwrap_or(&message).to_string();
        FormatError::Json { line, column: e.column(), message, context }
    })
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Read { path: path.display().to_string(), source })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum NetworkFile {
    Complete { n: usize },
    KPartite { parts: Vec<usize> },
    /// Edges as `[u, v, "p/q"]`.
    Explicit { n: usize, edges: Vec<(usize, usize, String)> },
}

impl NetworkFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        parse_json(text)
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("network file serializes")
    }

    pub fn from_family(family: &Family) -> Self {
        match family {
            Family::Complete(n) => NetworkFile::Complete { n: *n },
            Family::KPartite(s) => NetworkFile::KPartite { parts: s.parts().to_vec() },
        }
    }

    pub fn from_network(net: &Network) -> Self {
        NetworkFile::Explicit {
            n: net.vertex_count(),
            edges: net.edges().iter().map(|e| (e.u, e.v, rational_to_string(&e.conductance))).collect(),
        }
    }

    /// The family, for the two family variants.
    pub fn family(&self) -> Result<Option<Family>, FormatError> {
        Ok(match self {
            NetworkFile::Complete { n } => Some(Family::Complete(*n)),
            NetworkFile::KPartite { parts } => Some(Family::KPartite(
                KPartiteShape::new(parts.clone()).map_err(|e| invalid("k-partite shape", e.to_string()))?,
            )),
            NetworkFile::Explicit { .. } => None,
        })
    }

    pub fn network(&self) -> Result<Network, FormatError> {
        match self {
            NetworkFile::Explicit { n, edges } => {
                let mut parsed = Vec::with_capacity(edges.len());
                for (i, (u, v, w)) in edges.iter().enumerate() {
                    let w = parse_rational(w).map_err(|m| invalid("conductance", format!("edge {i}: {m}")))?;
                    parsed.push((*u, *v, w));
                }
                Ok(Network::new(*n, parsed)?)
            }
            _ => Ok(self.family()?.expect("family variant").network()?),
        }
    }
}

/// Parses `K6`, `K_6`, `K3,3`, `K_{3,3}`: one number is a complete graph,
/// several are k-partite part sizes.
pub fn parse_family_shorthand(text: &str) -> Option<Family> {
    let body = text.trim().strip_prefix(['K', 'k'])?;
    let body = body.strip_prefix('_').unwrap_or(body);
    let body = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(body);
    let sizes: Vec<usize> = body.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
    match sizes.as_slice() {
        [] => None,
        [n] => Some(Family::Complete(*n)),
        _ => KPartiteShape::new(sizes).ok().map(Family::KPartite),
    }
}

/// A network argument: a family shorthand or a path to a network file.
pub fn load_network_arg(arg: &str) -> Result<(NetworkFile, Network), FormatError> {
    let file = match parse_family_shorthand(arg) {
        Some(f) => NetworkFile::from_family(&f),
        None => NetworkFile::parse(&read(Path::new(arg))?)?,
    };
    let net = file.network()?;
    Ok((file, net))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub mode: FaultMode,
    pub measurements: Vec<(usize, usize)>,
    /// One tag per measurement; may be omitted, in which case every
    /// measurement is tagged `external`.
    #[serde(default)]
    pub provenance: Vec<String>,
}

impl PlanFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        parse_json(text)
    }

    pub fn load(path: &Path) -> Result<Self, FormatError> {
        PlanFile::parse(&read(path)?)
    }

    /// Pretty JSON with each array on one line.
    pub fn render(&self) -> String {
        format!(
            "{{\n  \"mode\": {},\n  \"measurements\": {},\n  \"provenance\": {}\n}}",
            compact(&self.mode),
            compact(&self.measurements),
            compact(&self.provenance)
        )
    }

    pub fn from_plan(plan: &MeasurementPlan) -> Self {
        PlanFile {
            mode: plan.mode,
            measurements: plan.measurements.iter().map(|m| (m.r, m.s)).collect(),
            provenance: plan.provenance.iter().map(|r| r.tag()).collect(),
        }
    }

    /// Validates against a network on `n` vertices.
    pub fn to_plan(&self, n: usize, family: Option<Family>) -> Result<MeasurementPlan, FormatError> {
        if !self.provenance.is_empty() && self.provenance.len() != self.measurements.len() {
            return Err(invalid(
                "plan",
                format!("{} measurements but {} provenance tags", self.measurements.len(), self.provenance.len()),
            ));
        }
        let mut plan = MeasurementPlan::new(family, self.mode);
        for (i, &(a, b)) in self.measurements.iter().enumerate() {
            for v in [a, b] {
                if v >= n {
                    return Err(invalid("plan", format!("measurement {i} ({a}, {b}): vertex {v} out of range for {n} vertices")));
                }
            }
            let m = Measurement::new(a, b).map_err(|e| invalid("plan", format!("measurement {i}: {e}")))?;
            if plan.measurements.contains(&m) {
                return Err(invalid("plan", format!("measurement {i} {m} is repeated")));
            }
            let rule = match self.provenance.get(i) {
                Some(tag) => tag.parse::<Rule>().map_err(|e| invalid("plan", format!("measurement {i}: {e}")))?,
                None => Rule::External,
            };
            plan.measurements.push(m);
            plan.provenance.push(rule);
        }
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        assert_eq!(parse_family_shorthand("K6"), Some(Family::Complete(6)));
        assert_eq!(parse_family_shorthand("K_{3,3}").unwrap().to_string(), "K_{3,3}");
        assert_eq!(parse_family_shorthand("K4,2").unwrap().to_string(), "K_{2,4}");
        assert_eq!(parse_family_shorthand("graph.json"), None);
        assert_eq!(parse_family_shorthand("K"), None);
    }

    #[test]
    fn network_file_round_trip() {
        let text = r#"{"family": "explicit", "n": 3, "edges": [[0, 1, "1/2"], [1, 2, "3"]]}"#;
        let f = NetworkFile::parse(text).unwrap();
        let net = f.network().unwrap();
        assert_eq!(NetworkFile::parse(&NetworkFile::from_network(&net).render()).unwrap(), f);
        let kp = NetworkFile::parse(r#"{"family": "k_partite", "parts": [2, 3]}"#).unwrap();
        assert_eq!(kp.network().unwrap().edge_count(), 6);
        assert_eq!(NetworkFile::parse(&kp.render()).unwrap(), kp);
    }

    #[test]
    fn bad_conductance_rejected() {
        let f = NetworkFile::parse(r#"{"family": "explicit", "n": 2, "edges": [[0, 1, "-1/2"]]}"#).unwrap();
        assert!(matches!(f.network(), Err(FormatError::Network(NetworkError::NonPositiveConductance { .. }))));
        let f = NetworkFile::parse(r#"{"family": "explicit", "n": 2, "edges": [[0, 1, "x"]]}"#).unwrap();
        assert!(matches!(f.network(), Err(FormatError::Invalid { .. })));
    }

    #[test]
    fn json_errors_carry_line_context() {
        let text = "{\n  \"mode\": \"removed\",\n  \"measurements\": [[0, 1], [1 2]]\n}";
        match PlanFile::parse(text).unwrap_err() {
            FormatError::Json { line, context, .. } => {
                assert_eq!(line, 3);
                assert!(context.contains("[1 2]"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn plan_round_trip_and_validation() {
        let mut plan = MeasurementPlan::new(None, FaultMode::Shorted);
        plan.push(0, 1, Rule::Matching);
        plan.push(2, 1, Rule::Leftover);
        let file = PlanFile::from_plan(&plan);
        let again = PlanFile::parse(&file.render()).unwrap();
        assert_eq!(again, file);
        assert_eq!(again.to_plan(3, None).unwrap(), plan);

        let out_of_range = PlanFile { mode: FaultMode::Removed, measurements: vec![(0, 7)], provenance: vec![] };
        assert!(out_of_range.to_plan(6, None).unwrap_err().to_string().contains("out of range"));
        let untagged = PlanFile { mode: FaultMode::Removed, measurements: vec![(0, 1)], provenance: vec![] };
        assert_eq!(untagged.to_plan(6, None).unwrap().provenance, vec![Rule::External]);
        let bad_tag = PlanFile { mode: FaultMode::Removed, measurements: vec![(0, 1)], provenance: vec!["magic".into()] };
        assert!(bad_tag.to_plan(6, None).is_err());
    }
}
