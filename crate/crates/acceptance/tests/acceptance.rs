//! Acceptance sweep: one PASS/FAIL line per criterion, details for failures
//! indented underneath. Exits non-zero if any criterion fails.

use std::cell::Cell;
use std::fmt::Write as _;
use std::time::Instant;

use faultnet::bounds::{bipartite_bound, bipartite_value, kpartite_lower, kpartite_selection, kpartite_upper, tripartite_values};
use faultnet::closed_forms::{classify_complete, classify_kpartite, complete_delta, kpartite_delta, kpartite_inverse_entry};
use faultnet::network::all_pairs;
use faultnet::signatures::{build_signature, extend_for_no_fault};
use faultnet::solver::{solve_exact, ExactOptions, DEFAULT_BUDGET};
use faultnet::strategies::{bipartite_strategy, complete_strategy, kpartite_strategy, tripartite_strategy};
use faultnet::{BigRational, Family, FaultAnalyzer, FaultMode, KPartiteShape, MeasurementPlan, Network, Resistance};
use faultnet_validation as checks;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Failures of one criterion; details beyond the first few are counted only.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }
}

fn report(id: usize, title: &str, started: Instant, out: Outcome) -> bool {
    let secs = started.elapsed().as_secs_f64();
    let pass = out.failures.is_empty();
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut text = format!("criterion {id} {verdict}: {title} [{secs:.1} s]");
    for f in out.failures.iter().take(12) {
        let _ = write!(text, "\n    - {f}");
    }
    if out.failures.len() > 12 {
        let _ = write!(text, "\n    - ... {} more", out.failures.len() - 12);
    }
    for n in &out.notes {
        let _ = write!(text, "\n    note: {n}");
    }
    println!("{text}");
    pass
}

fn distinguishing(net: &Network, plan: &MeasurementPlan, mode: FaultMode) -> bool {
    build_signature(net, &plan.measurements, mode).map(|s| s.is_distinguishing()).unwrap_or(false)
}

fn shape(parts: &[usize]) -> KPartiteShape {
    KPartiteShape::new(parts.to_vec()).expect("valid parts")
}

fn triple_agreement() -> Outcome {
    let started = Instant::now();
    let mut out = Outcome::default();
    let mut checked = 0u64;
    for n in 6..=20 {
        let net = Network::complete(n).unwrap();
        let an = FaultAnalyzer::new(&net);
        for mode in FaultMode::ALL {
            for (ei, e) in net.edges().iter().enumerate() {
                let oracle = net.faulted_resistances(e, mode).unwrap();
                for m in all_pairs(n) {
                    let direct = oracle.get(&m);
                    let smw = an.perturbed(&m, ei, mode);
                    let table = complete_delta(n, classify_complete(&m, e.endpoints()), mode)
                        .map(|d| Resistance::Finite(an.resistance(&m) - d));
                    out.check(smw == direct && table.as_ref().ok() == Some(&direct), || {
                        format!("K_{n} {m} fault {e} {mode}: rank-one {smw}, oracle {direct}, table {table:?}")
                    });
                    checked += 1;
                }
            }
        }
    }
    for k in 2..=4 {
        for s in checks::shapes(k, 2..=5) {
            let net = s.network();
            let an = FaultAnalyzer::new(&net);
            for mode in FaultMode::ALL {
                for (ei, e) in net.edges().iter().enumerate() {
                    let oracle = net.faulted_resistances(e, mode).unwrap();
                    for m in all_pairs(s.n()) {
                        let direct = oracle.get(&m);
                        let smw = an.perturbed(&m, ei, mode);
                        let table = classify_kpartite(&s, &m, e.endpoints())
                            .and_then(|case| kpartite_delta(&s, &case, mode))
                            .map(|d| Resistance::Finite(an.resistance(&m) - d));
                        out.check(smw == direct && table.as_ref().ok() == Some(&direct), || {
                            format!("{s} {m} fault {e} {mode}: rank-one {smw}, oracle {direct}, table {table:?}")
                        });
                        checked += 1;
                    }
                }
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    out.check(secs < 120.0, || format!("took {secs:.1} s, expected under 2 minutes"));
    out.notes.push(format!("{checked} (measurement, fault, mode) triples compared"));
    out
}

fn complete_exactness() -> Outcome {
    let mut out = Outcome::default();
    for (n, want) in [(6, 4), (7, 5), (8, 6)] {
        let family = Family::Complete(n);
        let net = family.network().unwrap();
        let t = Instant::now();
        match solve_exact(&net, &all_pairs(n), FaultMode::Removed, &ExactOptions::for_family(&family, DEFAULT_BUDGET)) {
            Ok(r) => {
                out.check(r.optimum() == Some(want), || format!("K_{n}: optimum {:?}, expected {want}", r.optimum()));
                out.notes.push(format!("K_{n}: optimum {:?} in {:.1} s", r.optimum(), t.elapsed().as_secs_f64()));
            }
            Err(e) => out.fail(format!("K_{n}: {e}")),
        }
    }
    for n in 6..=30 {
        let plan = complete_strategy(n).unwrap();
        let net = Network::complete(n).unwrap();
        let want = (2 * n).div_ceil(3);
        out.check(plan.len() == want, || format!("K_{n}: strategy size {}, expected {want}", plan.len()));
        for mode in FaultMode::ALL {
            out.check(distinguishing(&net, &plan, mode), || format!("K_{n}: strategy not distinguishing ({mode})"));
        }
    }
    out
}

fn bipartite_exactness() -> Outcome {
    let mut out = Outcome::default();
    for (b, g) in [(2, 3), (2, 4), (3, 3), (3, 4), (4, 4), (5, 5)] {
        let family = Family::KPartite(shape(&[b, g]));
        let net = family.network().unwrap();
        let claimed = bipartite_bound(b, g).unwrap();
        let t = Instant::now();
        let opts = ExactOptions::for_family(&family, DEFAULT_BUDGET);
        match solve_exact(&net, &all_pairs(b + g), FaultMode::Removed, &opts) {
            Ok(r) => match r.optimum() {
                Some(opt) => {
                    out.check(claimed.exact == Some(opt), || format!("{family}: optimum {opt}, bound {:?}", claimed.exact));
                    out.notes.push(format!("{family}: optimum {opt} in {:.1} s", t.elapsed().as_secs_f64()));
                }
                None => out.notes.push(format!("{family}: budget exhausted, skipped")),
            },
            Err(e) => out.fail(format!("{family}: {e}")),
        }
    }
    for b in 2..=10 {
        for g in b..=10 {
            let plan = bipartite_strategy(b, g).unwrap();
            let net = shape(&[b, g]).network();
            let want = bipartite_value(b, g);
            out.check(plan.len() == want, || format!("K_{{{b},{g}}}: strategy size {}, expected {want}", plan.len()));
            out.check(distinguishing(&net, &plan, FaultMode::Removed), || {
                let pairs = build_signature(&net, &plan.measurements, FaultMode::Removed).unwrap().undistinguished_index_pairs();
                format!("K_{{{b},{g}}}: strategy not distinguishing ({} edge pairs alike)", pairs.len())
            });
        }
    }
    out
}

fn tripartite_table() -> Outcome {
    let mut out = Outcome::default();
    for a in 2..=7 {
        for b in a..=7 {
            for c in b..=7 {
                let plan = tripartite_strategy(a, b, c).unwrap();
                let net = shape(&[a, b, c]).network();
                let want = tripartite_values(a, b, c).1;
                out.check(plan.len() == want, || format!("K_{{{a},{b},{c}}}: strategy size {}, table {want}", plan.len()));
                out.check(distinguishing(&net, &plan, FaultMode::Removed), || format!("K_{{{a},{b},{c}}}: strategy not distinguishing"));
            }
        }
    }
    for parts in [[2, 3, 4], [2, 2, 2]] {
        let family = Family::KPartite(shape(&parts));
        let net = family.network().unwrap();
        let (lo, hi) = tripartite_values(parts[0], parts[1], parts[2]);
        let opts = ExactOptions::for_family(&family, DEFAULT_BUDGET);
        match solve_exact(&net, &all_pairs(net.vertex_count()), FaultMode::Removed, &opts) {
            Ok(r) => out.check(lo == hi && r.optimum() == Some(lo), || format!("{family}: optimum {:?}, table {lo}..{hi}", r.optimum())),
            Err(e) => out.fail(format!("{family}: {e}")),
        }
    }
    out
}

fn kpartite_sandwich() -> Outcome {
    let mut out = Outcome::default();
    let mut differing = Vec::new();
    for k in 4..=5 {
        for s in checks::shapes(k, 2..=4) {
            let plan = kpartite_strategy(&s).unwrap();
            let (lower, upper) = (kpartite_lower(s.n(), k), kpartite_upper(s.parts()).0);
            out.check(lower <= plan.len() && plan.len() <= upper, || format!("{s}: size {} outside [{lower}, {upper}]", plan.len()));
            out.check(distinguishing(&s.network(), &plan, FaultMode::Removed), || format!("{s}: strategy not distinguishing"));
            let selection = kpartite_selection(s.parts()).0;
            if selection != upper {
                differing.push(format!("{s} ({upper} vs {selection})"));
            }
        }
    }
    if !differing.is_empty() {
        out.notes.push(format!(
            "upper-bound formula and set-aside selection formula differ on {} shapes: {}",
            differing.len(),
            differing.join(", ")
        ));
    }
    out
}

fn no_fault_extension() -> Outcome {
    let mut out = Outcome::default();
    for family in [Family::Complete(6), Family::KPartite(shape(&[3, 3]))] {
        let net = family.network().unwrap();
        for mode in FaultMode::ALL {
            let opts = ExactOptions::for_family(&family, DEFAULT_BUDGET);
            let report = match solve_exact(&net, &all_pairs(net.vertex_count()), mode, &opts) {
                Ok(r) => r,
                Err(e) => {
                    out.fail(format!("{family} {mode}: {e}"));
                    continue;
                }
            };
            let Some(opt) = report.optimum() else {
                out.fail(format!("{family} {mode}: no proven optimum"));
                continue;
            };
            match extend_for_no_fault(&net, &report.plan().measurements, mode, None) {
                Ok(ext) => {
                    let sig = build_signature(&net, &ext, mode).unwrap();
                    out.check(ext.len() <= opt + 1, || format!("{family} {mode}: extended to {} from optimum {opt}", ext.len()));
                    out.check(sig.is_distinguishing() && sig.silent_edges().is_empty(), || {
                        format!("{family} {mode}: extension leaves a fault that reads like no fault")
                    });
                }
                Err(e) => out.fail(format!("{family} {mode}: {e}")),
            }
        }
    }
    out
}

fn block_inverse() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..20 {
        let k = rng.gen_range(2..=5);
        let parts: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
        let s = shape(&parts);
        let net = s.network();
        let ground = rng.gen_range(0..s.n());
        let inv = net.grounded_inverse(ground).unwrap();
        let others: Vec<usize> = (0..s.n()).filter(|&v| v != ground).collect();
        for &i in &others {
            for &j in &others {
                let closed = kpartite_inverse_entry(&s, ground, i, j).unwrap();
                out.check(&closed == inv.entry(i, j), || format!("{s} ground {ground}: entry ({i}, {j}) {closed} vs {}", inv.entry(i, j)));
            }
        }
        // L(v) * L(v)^-1 = I, with the closed-form inverse
        let l = net.reduced_laplacian(ground).unwrap();
        for (ri, &i) in others.iter().enumerate() {
            for &j in &others {
                let mut sum = BigRational::from_integer(0.into());
                for (ci, &c) in others.iter().enumerate() {
                    sum += &l[ri][ci] * kpartite_inverse_entry(&s, ground, c, j).unwrap();
                }
                let want = BigRational::from_integer(i64::from(i == j).into());
                out.check(sum == want, || format!("{s} ground {ground}: (L L^-1)({i}, {j}) = {sum}"));
            }
        }
    }
    out
}

fn property_suite() -> Outcome {
    let mut out = Outcome::default();
    let config = Config { cases: 64, failure_persistence: None, ..Config::default() };
    let rng = || TestRng::deterministic_rng(config.rng_algorithm);
    let net_of = |f: &Family| f.network().expect("acceptance family");
    let cases = Cell::new(0usize);
    let prop = |r: checks::Check| {
        cases.set(cases.get() + 1);
        r.map_err(TestCaseError::fail)
    };
    let mut record = |name: &str, result: Result<(), String>| {
        match result {
            Ok(()) => out.notes.push(format!("{name}: {} cases ok", cases.get())),
            Err(e) => out.fail(format!("{name}: {e}")),
        }
        cases.set(0);
    };
    let runner = || TestRunner::new_with_rng(config.clone(), rng());

    let r = runner().run(&checks::acceptance_family(), |f| prop(checks::ground_independence(&net_of(&f))));
    record("ground independence", r.map_err(|e| e.to_string()));
    let r = runner().run(&checks::acceptance_family(), |f| prop(checks::resistance_symmetry(&net_of(&f))));
    record("resistance symmetry", r.map_err(|e| e.to_string()));
    let r = runner().run(&checks::acceptance_family(), |f| prop(checks::fault_monotonicity(&net_of(&f))));
    record("fault monotonicity", r.map_err(|e| e.to_string()));
    let r = runner().run(&checks::measurement_growth(), |(f, base, extra, mode)| {
        prop(checks::distinctness_monotonicity(&net_of(&f), &base, extra, mode))
    });
    record("distinctness monotonicity", r.map_err(|e| e.to_string()));
    let r = runner().run(&checks::shape_with_equal_parts(), |s| prop(checks::equal_parts_columns_coincide(&s)));
    record("equal parts: columns II and III coincide", r.map_err(|e| e.to_string()));
    out
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("rank-one update, rebuilt-graph oracle and closed-form tables agree exactly", triple_agreement),
        ("complete graphs: optimum of K6, K7, K8 and strategy size ceil(2n/3) for n = 6..30", complete_exactness),
        ("complete bipartite graphs: small optima and strategy sizes for 2 <= b <= g <= 10", bipartite_exactness),
        ("complete tripartite graphs: strategy sizes for parts <= 7 and small optima", tripartite_table),
        ("k = 4, 5 with parts 2..4: lower bound <= strategy size <= upper bound", kpartite_sandwich),
        ("no-fault extension costs at most one measurement on K6 and K_{3,3}", no_fault_extension),
        ("closed-form grounded inverse equals elimination on 20 random shapes", block_inverse),
        ("property suite over random acceptance-family instances", property_suite),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut all = true;
    let total = Instant::now();
    for (i, (title, f)) in criteria.iter().enumerate() {
        if filter.is_some_and(|want| want != i + 1) {
            continue;
        }
        let t = Instant::now();
        all &= report(i + 1, title, t, f());
    }
    println!("acceptance: {} [{:.1} s total]", if all { "all criteria pass" } else { "some criteria FAIL" }, total.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
