//! Closed-form lower and upper bounds on the minimum number of measurements for
//! complete, complete bipartite, complete tripartite and general complete
//! k-partite unit networks.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::family::{Family, KPartiteShape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("the complete-graph bound holds for n >= 6, got n = {0}")]
    CompleteTooSmall(usize),
    #[error("the k-partite bounds need every part to have at least two vertices, got {0:?}")]
    PartTooSmall(Vec<usize>),
    #[error("partition sizes must be nondecreasing, got {0:?}")]
    Unsorted(Vec<usize>),
}

/// One formula's contribution to a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub source: String,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub family: String,
    pub lower: usize,
    pub upper: usize,
    /// Set when the tightest lower and upper bounds meet.
    pub exact: Option<usize>,
    pub lower_source: String,
    pub upper_source: String,
    /// Every applicable formula, most specific first.
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    fn from_entries(family: String, entries: Vec<BoundEntry>) -> Self {
        let lo = entries.iter().enumerate().max_by_key(|(i, e)| (e.lower, std::cmp::Reverse(*i))).expect("at least one entry").1;
        let hi = entries.iter().enumerate().min_by_key(|(i, e)| (e.upper, *i)).expect("at least one entry").1;
        let (lower, upper) = (lo.lower, hi.upper);
        BoundReport {
            family,
            lower,
            upper,
            exact: (lower == upper).then_some(lower),
            lower_source: lo.source.clone(),
            upper_source: hi.source.clone(),
            entries,
        }
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family: {}", self.family)?;
        match self.exact {
            Some(x) => writeln!(f, "exact: {x}")?,
            None => writeln!(f, "lower: {}\nupper: {}", self.lower, self.upper)?,
        }
        writeln!(f, "{:<48} {:>6} {:>6}", "formula", "lower", "upper")?;
        for e in &self.entries {
            writeln!(f, "{:<48} {:>6} {:>6}", e.source, e.lower, e.upper)?;
        }
        Ok(())
    }
}

fn ceil_div(num: i64, den: i64) -> i64 {
    num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
}

fn entry(source: &str, lower: usize, upper: usize) -> BoundEntry {
    BoundEntry { source: source.to_string(), lower, upper }
}

fn complete_entry(n: usize) -> Result<BoundEntry, BoundError> {
    if n < 6 {
        return Err(BoundError::CompleteTooSmall(n));
    }
    let x = (2 * n).div_ceil(3);
    Ok(entry("complete graph: ceil(2n/3)", x, x))
}

pub fn complete_bound(n: usize) -> Result<BoundReport, BoundError> {
    Ok(BoundReport::from_entries(format!("K_{n}"), vec![complete_entry(n)?]))
}

fn check_parts(parts: &[usize]) -> Result<(), BoundError> {
    if parts.iter().any(|&p| p < 2) {
        return Err(BoundError::PartTooSmall(parts.to_vec()));
    }
    if parts.windows(2).any(|w| w[0] > w[1]) {
        return Err(BoundError::Unsorted(parts.to_vec()));
    }
    Ok(())
}

/// Exact value claimed for `K_{b,g}`, `b <= g`.
pub fn bipartite_value(b: usize, g: usize) -> usize {
    if b < g {
        let base = (2 * g + b) / 3;
        if (g - b) % 3 == 0 {
            base - 1
        } else {
            base
        }
    } else {
        let base = 4 * b / 3;
        if b % 3 == 2 {
            base
        } else {
            base - 1
        }
    }
}

fn bipartite_entry(b: usize, g: usize) -> Result<BoundEntry, BoundError> {
    check_parts(&[b, g])?;
    let x = bipartite_value(b, g);
    let source = if b < g { "bipartite, unequal parts" } else { "bipartite, equal parts" };
    Ok(entry(source, x, x))
}

pub fn bipartite_bound(b: usize, g: usize) -> Result<BoundReport, BoundError> {
    let shape = KPartiteShape::new(vec![b, g]).map_err(|_| BoundError::PartTooSmall(vec![b, g]))?;
    check_parts(&[b, g])?;
    let entries = vec![bipartite_entry(b, g)?, kpartite_entry(&shape)?];
    Ok(BoundReport::from_entries(shape.to_string(), entries))
}

/// Which size pattern a tripartite shape falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TripartiteRow {
    AllDistinct,
    SmallPairEqual,
    LargePairEqual,
    AllEqual,
}

pub fn tripartite_row(a: usize, b: usize, c: usize) -> TripartiteRow {
    match (a == b, b == c) {
        (false, false) => TripartiteRow::AllDistinct,
        (true, false) => TripartiteRow::SmallPairEqual,
        (false, true) => TripartiteRow::LargePairEqual,
        (true, true) => TripartiteRow::AllEqual,
    }
}

/// `(lower, upper)` for a tripartite shape `a <= b <= c`.
pub fn tripartite_values(a: usize, b: usize, c: usize) -> (usize, usize) {
    let n = (a + b + c) as i64;
    let (a, c) = (a as i64, c as i64);
    let v = match tripartite_row(a as usize, b, c as usize) {
        TripartiteRow::AllDistinct => {
            let x = ceil_div(n - 3, 2);
            (x, x)
        }
        TripartiteRow::SmallPairEqual => {
            let x = ceil_div(2 * n - 2 * a - 4, 3);
            let y = ceil_div(2 * n - c - 5, 3);
            (x.min(y), x.max(y))
        }
        TripartiteRow::LargePairEqual => {
            let x = ceil_div(2 * n - a - 5, 3);
            (x, x)
        }
        TripartiteRow::AllEqual => {
            let x = ceil_div(2 * n - 6, 3);
            (x, x)
        }
    };
    (v.0 as usize, v.1 as usize)
}

fn tripartite_entry(a: usize, b: usize, c: usize) -> Result<BoundEntry, BoundError> {
    check_parts(&[a, b, c])?;
    let (lo, hi) = tripartite_values(a, b, c);
    let source = match tripartite_row(a, b, c) {
        TripartiteRow::AllDistinct => "tripartite, distinct sizes",
        TripartiteRow::SmallPairEqual => "tripartite, two smallest equal",
        TripartiteRow::LargePairEqual => "tripartite, two largest equal",
        TripartiteRow::AllEqual => "tripartite, all equal",
    };
    Ok(entry(source, lo, hi))
}

pub fn tripartite_bound(a: usize, b: usize, c: usize) -> Result<BoundReport, BoundError> {
    check_parts(&[a, b, c])?;
    let shape = KPartiteShape::new(vec![a, b, c]).expect("three positive parts");
    let entries = vec![tripartite_entry(a, b, c)?, kpartite_entry(&shape)?];
    Ok(BoundReport::from_entries(shape.to_string(), entries))
}

/// Sum of `2 x - 2` over every third entry (the 3rd, 6th, ...) of a
/// nondecreasing list of part sizes.
pub fn val(sizes: &[usize]) -> usize {
    sizes.iter().skip(2).step_by(3).map(|&x| 2 * x - 2).sum()
}

fn without(sizes: &[usize], drop: &[usize]) -> Vec<usize> {
    sizes.iter().enumerate().filter(|(i, _)| !drop.contains(i)).map(|(_, &x)| x).collect()
}

/// Parts set aside before grouping the rest into consecutive triples: one part
/// when `k = 1 (mod 3)`, two when `k = 2 (mod 3)`, none otherwise. Indices are
/// into the sorted part list, ties to the lowest index (then lowest second index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SetAside {
    None,
    One(usize),
    Two(usize, usize),
}

/// The `k`-partite upper bound as stated, together with the minimizing choice.
pub fn kpartite_upper(sizes: &[usize]) -> (usize, SetAside) {
    best_set_aside(sizes, |x| (2 * x).div_ceil(3), |x, y| (2 * (x + y - 1)).div_ceil(3))
}

/// The same minimization with the per-part and per-pair terms used when the
/// construction chooses what to set aside (one less inside each ceiling).
pub fn kpartite_selection(sizes: &[usize]) -> (usize, SetAside) {
    best_set_aside(sizes, |x| (2 * (x - 1)).div_ceil(3), |x, y| (2 * (x + y - 2)).div_ceil(3))
}

fn best_set_aside(sizes: &[usize], one: impl Fn(usize) -> usize, two: impl Fn(usize, usize) -> usize) -> (usize, SetAside) {
    let k = sizes.len();
    match k % 3 {
        0 => (val(sizes), SetAside::None),
        1 => (0..k)
            .map(|i| (one(sizes[i]) + val(&without(sizes, &[i])), SetAside::One(i)))
            .min_by_key(|(v, _)| *v)
            .expect("k >= 1"),
        _ => {
            let mut best: Option<(usize, SetAside)> = None;
            for i in 0..k {
                for j in i + 1..k {
                    let v = two(sizes[i], sizes[j]) + val(&without(sizes, &[i, j]));
                    if best.is_none_or(|(b, _)| v < b) {
                        best = Some((v, SetAside::Two(i, j)));
                    }
                }
            }
            best.expect("k >= 2")
        }
    }
}

pub fn kpartite_lower(n: usize, k: usize) -> usize {
    (n - k).div_ceil(2)
}

fn kpartite_entry(shape: &KPartiteShape) -> Result<BoundEntry, BoundError> {
    check_parts(shape.parts())?;
    let (upper, _) = kpartite_upper(shape.parts());
    Ok(entry("k-partite: ceil((n-k)/2) .. triple grouping", kpartite_lower(shape.n(), shape.k()), upper))
}

pub fn kpartite_bound(shape: &KPartiteShape) -> Result<BoundReport, BoundError> {
    Ok(BoundReport::from_entries(shape.to_string(), vec![kpartite_entry(shape)?]))
}

/// All applicable formulas for a family, combined into the tightest pair.
pub fn family_bound(family: &Family) -> Result<BoundReport, BoundError> {
    match family {
        Family::Complete(n) => complete_bound(*n),
        Family::KPartite(shape) => match shape.parts() {
            &[b, g] => bipartite_bound(b, g),
            &[a, b, c] => tripartite_bound(a, b, c),
            _ => kpartite_bound(shape),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_values() {
        assert_eq!(complete_bound(6).unwrap().exact, Some(4));
        assert_eq!(complete_bound(9).unwrap().exact, Some(6));
        assert_eq!(complete_bound(10).unwrap().exact, Some(7));
        assert_eq!(complete_bound(5).unwrap_err(), BoundError::CompleteTooSmall(5));
    }

    #[test]
    fn bipartite_values() {
        assert_eq!(bipartite_value(5, 5), 6);
        assert_eq!(bipartite_value(3, 3), 3);
        assert_eq!(bipartite_value(2, 3), 2);
        for b in 2..30 {
            assert_eq!(bipartite_value(b, b + 1), (2 * b + 1) / 2, "b = {b}");
        }
        assert_eq!(bipartite_bound(5, 5).unwrap().exact, Some(6));
    }

    #[test]
    fn tripartite_values_from_rows() {
        assert_eq!(tripartite_values(4, 4, 4), (6, 6));
        assert_eq!(tripartite_values(2, 3, 4), (3, 3));
        assert_eq!(tripartite_values(2, 4, 4), (5, 5));
        // (3,3,5): ceil((22-6-4)/3) = 4 and ceil((22-5-5)/3) = 4
        assert_eq!(tripartite_values(3, 3, 5), (4, 4));
        // (2,2,7): ceil((22-4-4)/3) = 5, ceil((22-7-5)/3) = 4
        assert_eq!(tripartite_values(2, 2, 7), (4, 5));
        let r = tripartite_bound(4, 4, 4).unwrap();
        assert_eq!(r.exact, Some(6));
        assert_eq!(r.entries.len(), 2);
    }

    #[test]
    fn val_examples() {
        assert_eq!(val(&[2, 3, 4]), 6);
        assert_eq!(val(&[2, 3, 4, 5, 6, 7]), 18);
        assert_eq!(val(&[]), 0);
    }

    #[test]
    fn kpartite_examples() {
        let s = |p: &[usize]| KPartiteShape::new(p.to_vec()).unwrap();
        let r = kpartite_bound(&s(&[2, 2, 2, 2])).unwrap();
        assert_eq!(r.lower, 2);
        assert_eq!(kpartite_bound(&s(&[2, 3, 4])).unwrap().upper, 6);
        // n = 9, k = 4: ceil(5/2) = 3
        let r = kpartite_bound(&s(&[2, 2, 2, 3])).unwrap();
        assert_eq!((r.lower, r.upper), (3, 4));
        assert_eq!(kpartite_upper(&[2, 2, 2, 3]), (4, SetAside::One(3)));
        assert!(matches!(kpartite_bound(&s(&[1, 3])), Err(BoundError::PartTooSmall(_))));
    }

    #[test]
    fn family_dispatch() {
        let r = family_bound(&Family::KPartite(KPartiteShape::new(vec![2, 3, 4]).unwrap())).unwrap();
        assert_eq!(r.exact, Some(3));
        assert_eq!(r.upper_source, "tripartite, distinct sizes");
    }
}
