//! Exact effective-resistance analysis for detecting a single faulty edge in a
//! resistive network, with measurement-placement strategies and bounds for
//! complete and complete k-partite graphs.

pub mod bareiss;
pub mod bounds;
pub mod closed_forms;
pub mod family;
pub mod io;
pub mod network;
pub mod plan;
pub mod signatures;
pub mod solver;
pub mod strategies;

pub use family::{Family, KPartiteShape, ShapeError};
pub use network::{
    rat, Edge, FaultAnalyzer, FaultMode, Measurement, Network, NetworkError, Resistance, VertexId,
};
pub use num_rational::BigRational;
pub use plan::{MeasurementPlan, Rule};
