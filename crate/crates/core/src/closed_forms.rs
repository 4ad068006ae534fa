//! Closed-form resistance changes for unit-conductance complete graphs and
//! complete k-partite graphs.
//!
//! For a measurement `(r, s)` and altered edge `(a, b)` the new resistance is
//! `R'_rs = R_rs - delta`. The change depends only on how the four endpoints sit
//! relative to each other (complete graphs, four cases) or relative to the
//! partitions (k-partite graphs, twelve columns). Ground is always the fault
//! endpoint `b`, so every k-partite coefficient is taken relative to `b`'s part.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::family::KPartiteShape;
use crate::network::{FaultMode, Measurement, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("complete-graph table needs n >= 2, got {0}")]
    CompleteTooSmall(usize),
    #[error("removing an edge incident to the measurement on K_2 disconnects the graph")]
    RemovedOnK2,
    #[error("vertex {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("({0}, {1}) lies inside one partition and is not an edge")]
    SamePartitionEdge(VertexId, VertexId),
    #[error("vertex {0} is the ground vertex")]
    GroundEntry(VertexId),
    #[error("removed-mode denominator vanishes (bridge-like edge)")]
    DegenerateRemoval,
    #[error("measurement {0} and edge are not in the same vertex range")]
    Mismatch(Measurement),
}

fn r(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn ri(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Relation between a measurement `(r, s)` and a fault edge `(a, b)` in `K_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompleteCase {
    /// `a = r`, `b != s`
    SharesR,
    /// `a != r`, `b = s`
    SharesS,
    /// `a, b` not in `{r, s}`
    Disjoint,
    /// `a = r`, `b = s`
    Same,
}

impl CompleteCase {
    pub const ALL: [CompleteCase; 4] = [CompleteCase::SharesR, CompleteCase::SharesS, CompleteCase::Disjoint, CompleteCase::Same];

    pub fn label(self) -> &'static str {
        match self {
            CompleteCase::SharesR => "a=r, b!=s",
            CompleteCase::SharesS => "a!=r, b=s",
            CompleteCase::Disjoint => "a,b not in {r,s}",
            CompleteCase::Same => "a=r, b=s",
        }
    }
}

pub fn classify_complete(m: &Measurement, fault: (VertexId, VertexId)) -> CompleteCase {
    let (x, y) = fault;
    let hits = [x, y].iter().filter(|&&v| m.contains(v)).count();
    match hits {
        2 => CompleteCase::Same,
        0 => CompleteCase::Disjoint,
        _ => {
            if x == m.r || y == m.r {
                CompleteCase::SharesR
            } else {
                CompleteCase::SharesS
            }
        }
    }
}

/// Resistance change on `K_n` (unit conductances) for one case and mode.
pub fn complete_delta(n: usize, case: CompleteCase, mode: FaultMode) -> Result<BigRational, ClosedFormError> {
    if n < 2 {
        return Err(ClosedFormError::CompleteTooSmall(n));
    }
    let nn = n as i64;
    if case == CompleteCase::Disjoint {
        return Ok(BigRational::zero());
    }
    Ok(match mode {
        FaultMode::Shorted => match case {
            CompleteCase::SharesR | CompleteCase::SharesS => r(1, 2 * nn),
            _ => r(2, nn),
        },
        FaultMode::Removed => {
            if n == 2 {
                return Err(ClosedFormError::RemovedOnK2);
            }
            match case {
                CompleteCase::SharesR | CompleteCase::SharesS => r(-1, nn * (nn - 2)),
                _ => r(-4, nn * (nn - 2)),
            }
        }
    })
}

/// Coefficient `C_{p_q}` relative to the ground part `b`:
/// `((n-1)^2 + (|p_b|-1) - |p_q|(n-1)) / ((n-|p_q|)(n-|p_b|) n)`.
pub fn c_coefficient(shape: &KPartiteShape, q: usize, b: usize) -> BigRational {
    let n = shape.n() as i64;
    let pq = shape.size(q) as i64;
    let pb = shape.size(b) as i64;
    let num = (n - 1) * (n - 1) + (pb - 1) - pq * (n - 1);
    let den = (n - pq) * (n - pb) * n;
    r(num, den)
}

/// Entry `(i, j)` of `L(ground)^-1` for the complete k-partite graph, read off the
/// block form with the ground's part playing the role of the first part.
pub fn kpartite_inverse_entry(
    shape: &KPartiteShape,
    ground: VertexId,
    i: VertexId,
    j: VertexId,
) -> Result<BigRational, ClosedFormError> {
    let n = shape.n();
    for v in [ground, i, j] {
        if v >= n {
            return Err(ClosedFormError::VertexOutOfRange { vertex: v, n });
        }
    }
    for v in [i, j] {
        if v == ground {
            return Err(ClosedFormError::GroundEntry(v));
        }
    }
    let g = shape.part_of(ground);
    let (pi, pj) = (shape.part_of(i), shape.part_of(j));
    let outside_g = BigRational::one() / ri(n - shape.size(g));
    Ok(if pi == g && pj == g {
        if i == j {
            ri(2) * outside_g
        } else {
            outside_g
        }
    } else if pi == g || pj == g {
        outside_g
    } else if pi == pj {
        let c = c_coefficient(shape, pi, g);
        if i == j {
            c + BigRational::one() / ri(n - shape.size(pi))
        } else {
            c
        }
    } else {
        ri(n - 1) / (ri(n) * ri(n - shape.size(g)))
    })
}

/// Table column for a k-partite (measurement, edge) configuration. Columns
/// `I`–`IX` have the measurement endpoints in different parts, `X`–`XII` in the
/// same part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Column {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
}

impl Column {
    pub const ALL: [Column; 12] = [
        Column::I,
        Column::II,
        Column::III,
        Column::IV,
        Column::V,
        Column::VI,
        Column::VII,
        Column::VIII,
        Column::IX,
        Column::X,
        Column::XI,
        Column::XII,
    ];

    pub fn same_part(self) -> bool {
        matches!(self, Column::X | Column::XI | Column::XII)
    }

    pub fn header(self) -> &'static str {
        match self {
            Column::I => "a=r, b=s",
            Column::II => "a=r, b in p_s, b!=s",
            Column::III => "a in p_r, a!=r, b=s",
            Column::IV => "a in p_r, a!=r, b in p_s, b!=s",
            Column::V => "a=r, b not in p_s",
            Column::VI => "a in p_r, a!=r, b not in p_s",
            Column::VII => "a not in p_r, b=s",
            Column::VIII => "a not in p_r, b in p_s, b!=s",
            Column::IX => "a,b not in p_r u p_s",
            Column::X => "a in {r,s}, b not in p_r",
            Column::XI => "a in p_r, a not in {r,s}, b not in p_r",
            Column::XII => "a,b not in p_r",
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A classified (measurement, edge) configuration, with the endpoint labels the
/// column header refers to and the parts its formula needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KPartiteCase {
    pub column: Column,
    pub r: VertexId,
    pub s: VertexId,
    pub a: VertexId,
    pub b: VertexId,
    pub r_part: usize,
    pub s_part: usize,
    pub a_part: usize,
    /// Part of the ground endpoint `b`; every `C` coefficient is relative to it.
    pub b_part: usize,
    /// `r` and `s` were exchanged relative to the measurement's stored order.
    pub swapped_measurement: bool,
    /// `a` and `b` were exchanged relative to the edge as given.
    pub swapped_edge: bool,
}

impl KPartiteCase {
    pub fn relabeled(&self) -> bool {
        self.swapped_measurement || self.swapped_edge
    }
}

fn match_column(shape: &KPartiteShape, r: VertexId, s: VertexId, a: VertexId, b: VertexId) -> Option<Column> {
    let (pr, ps) = (shape.part_of(r), shape.part_of(s));
    let (pa, pb) = (shape.part_of(a), shape.part_of(b));
    if pr == ps {
        return if pa == pr && (a == r || a == s) {
            Some(Column::X)
        } else if pa == pr {
            Some(Column::XI)
        } else if pb != pr {
            Some(Column::XII)
        } else {
            None
        };
    }
    let col = if a == r && b == s {
        Column::I
    } else if a == r && pb == ps {
        Column::II
    } else if pa == pr && b == s {
        Column::III
    } else if pa == pr && pb == ps {
        Column::IV
    } else if a == r {
        Column::V
    } else if pa == pr {
        Column::VI
    } else if b == s {
        Column::VII
    } else if pb == ps {
        Column::VIII
    } else if pa != ps && pb != pr {
        Column::IX
    } else {
        return None;
    };
    Some(col)
}

/// All readings of a configuration under the relabeling conventions (swapping
/// `r`/`s` and `a`/`b`), in preference order: measurement order kept first, then
/// edge order kept.
pub fn kpartite_readings(
    shape: &KPartiteShape,
    m: &Measurement,
    fault: (VertexId, VertexId),
) -> Result<Vec<KPartiteCase>, ClosedFormError> {
    let n = shape.n();
    for v in [m.r, m.s, fault.0, fault.1] {
        if v >= n {
            return Err(ClosedFormError::VertexOutOfRange { vertex: v, n });
        }
    }
    if shape.part_of(fault.0) == shape.part_of(fault.1) {
        return Err(ClosedFormError::SamePartitionEdge(fault.0, fault.1));
    }
    let mut out = Vec::new();
    for swapped_measurement in [false, true] {
        let (r, s) = if swapped_measurement { (m.s, m.r) } else { (m.r, m.s) };
        for swapped_edge in [false, true] {
            let (a, b) = if swapped_edge { (fault.1, fault.0) } else { fault };
            if let Some(column) = match_column(shape, r, s, a, b) {
                out.push(KPartiteCase {
                    column,
                    r,
                    s,
                    a,
                    b,
                    r_part: shape.part_of(r),
                    s_part: shape.part_of(s),
                    a_part: shape.part_of(a),
                    b_part: shape.part_of(b),
                    swapped_measurement,
                    swapped_edge,
                });
            }
        }
    }
    Ok(out)
}

/// The preferred reading of a configuration (see [`kpartite_readings`]).
pub fn classify_kpartite(
    shape: &KPartiteShape,
    m: &Measurement,
    fault: (VertexId, VertexId),
) -> Result<KPartiteCase, ClosedFormError> {
    let readings = kpartite_readings(shape, m, fault)?;
    Ok(*readings.first().expect("every cross-part edge matches some column under relabeling"))
}

/// Evaluates the table cell for `case` and `mode`.
pub fn kpartite_delta(shape: &KPartiteShape, case: &KPartiteCase, mode: FaultMode) -> Result<BigRational, ClosedFormError> {
    let n = shape.n();
    let nr = ri(n);
    let away = |part: usize| ri(n - shape.size(part));
    let inv_away = |part: usize| BigRational::one() / away(part);
    // C for the part of `a`, relative to the ground part.
    let c = c_coefficient(shape, case.a_part, case.b_part);
    let diag = &c + inv_away(case.a_part);
    let beta = |l: &BigRational| -> Result<BigRational, ClosedFormError> {
        match mode {
            FaultMode::Shorted => Ok(l.recip()),
            FaultMode::Removed => {
                let d = BigRational::one() - l;
                if d.is_zero() {
                    Err(ClosedFormError::DegenerateRemoval)
                } else {
                    Ok(-d.recip())
                }
            }
        }
    };
    let sq = |x: BigRational| &x * &x;
    let cross = |ground_part: usize| (&nr - BigRational::one()) / (away(ground_part) * &nr);
    Ok(match case.column {
        // a = r, b = s: only the diagonal entry of a survives.
        Column::I => match mode {
            FaultMode::Shorted => diag,
            FaultMode::Removed => beta(&diag)? * sq(diag),
        },
        Column::II => beta(&diag)? * sq(&diag - inv_away(case.s_part)),
        Column::III => match mode {
            FaultMode::Shorted => sq(c) / diag,
            FaultMode::Removed => {
                let d = BigRational::one() - &diag;
                if d.is_zero() {
                    return Err(ClosedFormError::DegenerateRemoval);
                }
                -sq(c) / d
            }
        },
        Column::IV => beta(&diag)? * sq(c - inv_away(case.s_part)),
        Column::V => beta(&diag)? * sq(&diag - cross(case.b_part)),
        Column::VI => beta(&diag)? * sq(c - cross(case.b_part)),
        Column::VII => beta(&diag)? * sq(cross(case.s_part)),
        Column::VIII => beta(&diag)? * sq(-(BigRational::one() / (&nr * away(case.s_part)))),
        Column::X => {
            let w = away(case.r_part);
            let shift = match mode {
                FaultMode::Shorted => c,
                FaultMode::Removed => c - BigRational::one(),
            };
            let den = shift * &w * &w + &w;
            if den.is_zero() {
                return Err(ClosedFormError::DegenerateRemoval);
            }
            den.recip()
        }
        Column::IX | Column::XI | Column::XII => BigRational::zero(),
    })
}
