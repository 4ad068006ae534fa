//! The branch-and-bound optimum equals the minimum found by enumerating every
//! subset of a small candidate set, and symmetry pruning never changes it.

use std::time::Duration;

use faultnet::network::all_pairs;
use faultnet::signatures::build_signature;
use faultnet::solver::{solve_exact, solve_greedy, ExactOptions, SolverError};
use faultnet::{rat, Family, FaultMode, KPartiteShape, Measurement, Network};
use proptest::prelude::*;

/// Smallest distinguishing subset size by enumeration over bitmasks, or None.
fn brute_force_minimum(net: &Network, candidates: &[Measurement], mode: FaultMode) -> Option<usize> {
    let sig = build_signature(net, candidates, mode).unwrap();
    let edges = net.edge_count();
    let k = candidates.len();
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let rows: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let distinct = (0..edges).all(|e| {
            (e + 1..edges).all(|f| rows.iter().any(|&r| sig.value(r, e) != sig.value(r, f)))
        });
        if distinct {
            best = Some(size);
        }
    }
    best
}

fn instance() -> impl Strategy<Value = (Network, Vec<Measurement>)> {
    (4usize..=6)
        .prop_flat_map(|n| {
            let extra = proptest::collection::vec((0..n, 0..n), 1..=2 * n);
            let weights = proptest::collection::vec(1i64..=3, 3 * n);
            let pick = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
            (Just(n), extra, weights, pick)
        })
        .prop_map(|(n, extra, weights, pick)| {
            // a ring keeps the graph connected and bridgeless
            let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            let w: Vec<_> = edges.iter().zip(weights.iter().cycle()).map(|(&(a, b), &p)| (a, b, rat(p, 1))).collect();
            let net = Network::new(n, w).unwrap();
            let mut cands: Vec<Measurement> = all_pairs(n).into_iter().zip(pick).filter(|(_, p)| *p).map(|(m, _)| m).collect();
            cands.truncate(15);
            if cands.is_empty() {
                cands.push(Measurement::new(0, 1).unwrap());
            }
            (net, cands)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_matches_enumeration((net, cands) in instance(), shorted in any::<bool>()) {
        let mode = if shorted { FaultMode::Shorted } else { FaultMode::Removed };
        let brute = brute_force_minimum(&net, &cands, mode);
        match solve_exact(&net, &cands, mode, &ExactOptions::with_budget(Duration::from_secs(60))) {
            Ok(report) => {
                prop_assert_eq!(report.optimum(), brute);
                let sig = build_signature(&net, &report.plan().measurements, mode).unwrap();
                prop_assert!(sig.is_distinguishing());
                prop_assert!(report.greedy_size >= report.plan().len());
                let greedy = solve_greedy(&net, &cands, mode).unwrap();
                prop_assert!(build_signature(&net, &greedy.measurements, mode).unwrap().is_distinguishing());
            }
            Err(SolverError::Infeasible(_)) => prop_assert_eq!(brute, None),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn symmetry_pruning_keeps_the_optimum() {
    let families = [
        Family::Complete(6),
        Family::Complete(7),
        Family::KPartite(KPartiteShape::new(vec![2, 3]).unwrap()),
        Family::KPartite(KPartiteShape::new(vec![3, 3]).unwrap()),
        Family::KPartite(KPartiteShape::new(vec![2, 2, 2]).unwrap()),
        Family::KPartite(KPartiteShape::new(vec![2, 2, 3]).unwrap()),
    ];
    for family in families {
        let net = family.network().unwrap();
        let cands = all_pairs(net.vertex_count());
        for mode in FaultMode::ALL {
            let budget = Duration::from_secs(120);
            let plain = solve_exact(&net, &cands, mode, &ExactOptions::with_budget(budget)).unwrap();
            let pruned = solve_exact(&net, &cands, mode, &ExactOptions::for_family(&family, budget)).unwrap();
            assert!(plain.optimum().is_some() && pruned.optimum().is_some(), "{family} timed out");
            assert_eq!(plain.optimum(), pruned.optimum(), "{family} {mode}");
        }
    }
}

#[test]
fn optimum_of_small_complete_graphs_by_enumeration() {
    // K5: enumerate all subsets of its 10 pairs
    let net = Network::complete(5).unwrap();
    let cands = all_pairs(5);
    let brute = brute_force_minimum(&net, &cands, FaultMode::Removed);
    let exact = solve_exact(&net, &cands, FaultMode::Removed, &ExactOptions::default()).unwrap();
    assert_eq!(exact.optimum(), brute);
}
