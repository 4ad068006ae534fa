//! Instance generators and invariant checks shared by the acceptance sweep and
//! the property tests. Each check returns `Err` with a description of the first
//! counterexample.

use faultnet::closed_forms::{classify_kpartite, kpartite_delta, Column};
use faultnet::network::all_pairs;
use faultnet::signatures::build_signature;
use faultnet::{Family, FaultAnalyzer, FaultMode, KPartiteShape, Measurement, Network};
use proptest::prelude::*;

pub type Check = Result<(), String>;

/// All nondecreasing part lists with `k` parts drawn from `sizes`.
pub fn shapes(k: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<KPartiteShape> {
    fn rec(k: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<KPartiteShape>) {
        if cur.len() == k {
            out.push(KPartiteShape::new(cur.clone()).expect("valid parts"));
            return;
        }
        for s in lo..=hi {
            cur.push(s);
            rec(k, s, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, *sizes.start(), *sizes.end(), &mut Vec::new(), &mut out);
    out
}

/// Complete graphs on 3..=8 vertices and k-partite shapes with 2..=4 parts of
/// size 2..=4.
pub fn acceptance_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (3usize..=8).prop_map(Family::Complete),
        proptest::collection::vec(2usize..=4, 2..=4).prop_map(|p| Family::KPartite(KPartiteShape::new(p).expect("valid parts"))),
    ]
}

/// A family, a set of measurements on it, one more measurement and a mode.
pub fn measurement_growth() -> impl Strategy<Value = (Family, Vec<Measurement>, Measurement, FaultMode)> {
    acceptance_family()
        .prop_flat_map(|f| {
            let pairs = all_pairs(f.vertex_count());
            let base = proptest::sample::subsequence(pairs.clone(), 1..=pairs.len().min(4));
            let extra = proptest::sample::select(pairs);
            (Just(f), base, extra, proptest::sample::select(FaultMode::ALL.to_vec()))
        })
}

/// k-partite shapes with at least two parts of equal size.
pub fn shape_with_equal_parts() -> impl Strategy<Value = KPartiteShape> {
    (2usize..=4, proptest::collection::vec(2usize..=4, 0..=2))
        .prop_map(|(twin, mut rest)| {
            rest.push(twin);
            rest.push(twin);
            KPartiteShape::new(rest).expect("valid parts")
        })
}

/// Effective resistance does not depend on the grounded vertex.
pub fn ground_independence(net: &Network) -> Check {
    let n = net.vertex_count();
    let inverses: Vec<_> = (0..n).map(|g| net.grounded_inverse(g).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    for m in all_pairs(n) {
        let base = inverses[0].resistance(m.r, m.s);
        for inv in &inverses[1..] {
            if inv.resistance(m.r, m.s) != base {
                return Err(format!("R{m} differs between grounds 0 and {}", inv.ground()));
            }
        }
    }
    Ok(())
}

/// Every grounded inverse is symmetric, so `R(r, s) = R(s, r)` whichever
/// endpoint is read first.
pub fn resistance_symmetry(net: &Network) -> Check {
    let n = net.vertex_count();
    for g in 0..n {
        let inv = net.grounded_inverse(g).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in i + 1..n {
                if inv.entry(i, j) != inv.entry(j, i) {
                    return Err(format!("L({g})^-1 entry ({i}, {j}) is not symmetric"));
                }
                if inv.resistance(i, j) != inv.resistance(j, i) {
                    return Err(format!("R({i}, {j}) != R({j}, {i}) grounded at {g}"));
                }
            }
        }
    }
    Ok(())
}

/// Removing a resistor never lowers a resistance; shorting one never raises it.
pub fn fault_monotonicity(net: &Network) -> Check {
    let an = FaultAnalyzer::new(net);
    for m in all_pairs(net.vertex_count()) {
        let base = an.resistance(&m);
        for e in 0..net.edge_count() {
            let removed = an.perturbed(&m, e, FaultMode::Removed);
            if removed.finite().is_some_and(|r| *r < base) {
                return Err(format!("removing {} lowers R{m}", net.edges()[e]));
            }
            let shorted = an.perturbed(&m, e, FaultMode::Shorted);
            match shorted.finite() {
                Some(r) if *r <= base => {}
                _ => return Err(format!("shorting {} raises R{m}", net.edges()[e])),
            }
        }
    }
    Ok(())
}

/// Adding a measurement can only split groups of indistinguishable edges.
pub fn distinctness_monotonicity(net: &Network, base: &[Measurement], extra: Measurement, mode: FaultMode) -> Check {
    if base.is_empty() || base.contains(&extra) {
        return Ok(());
    }
    let before = build_signature(net, base, mode).map_err(|e| e.to_string())?.undistinguished_index_pairs();
    let mut more = base.to_vec();
    more.push(extra);
    let after = build_signature(net, &more, mode).map_err(|e| e.to_string())?.undistinguished_index_pairs();
    if let Some(p) = after.iter().find(|p| !before.contains(p)) {
        return Err(format!("adding {extra} merged edges {p:?}"));
    }
    if before.is_empty() && !after.is_empty() {
        return Err("a distinguishing set stopped distinguishing".into());
    }
    Ok(())
}

/// With the measurement across two equal-sized parts, the column II fault
/// `(r, b)` and the column III fault `(a, s)` read the same, both by the
/// closed form and in the rebuilt network.
pub fn equal_parts_columns_coincide(shape: &KPartiteShape) -> Check {
    let net = shape.network();
    let an = FaultAnalyzer::new(&net);
    for p in 0..shape.k() {
        for q in p + 1..shape.k() {
            if shape.size(p) != shape.size(q) {
                continue;
            }
            let (pv, qv): (Vec<_>, Vec<_>) = (shape.vertices(p).collect(), shape.vertices(q).collect());
            let m = Measurement::new(pv[0], qv[0]).expect("distinct parts");
            let col2 = classify_kpartite(shape, &m, (pv[0], qv[1])).map_err(|e| e.to_string())?;
            let col3 = classify_kpartite(shape, &m, (pv[1], qv[0])).map_err(|e| e.to_string())?;
            if (col2.column, col3.column) != (Column::II, Column::III) {
                return Err(format!("{shape}: expected columns II and III, got {} and {}", col2.column, col3.column));
            }
            for mode in FaultMode::ALL {
                let d2 = kpartite_delta(shape, &col2, mode).map_err(|e| e.to_string())?;
                let d3 = kpartite_delta(shape, &col3, mode).map_err(|e| e.to_string())?;
                if d2 != d3 {
                    return Err(format!("{shape} parts {p},{q} {mode}: column II {d2} vs column III {d3}"));
                }
                let e2 = net.edge_index(pv[0], qv[1]).expect("cross edge");
                let e3 = net.edge_index(pv[1], qv[0]).expect("cross edge");
                if an.perturbed(&m, e2, mode) != an.perturbed(&m, e3, mode) {
                    return Err(format!("{shape} parts {p},{q} {mode}: rebuilt readings differ"));
                }
            }
        }
    }
    Ok(())
}
