use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use faultnet::bounds::family_bound;
use faultnet::closed_forms::{classify_kpartite, complete_delta, kpartite_delta, CompleteCase};
use faultnet::io::{load_network_arg, NetworkFile, PlanFile};
use faultnet::network::{all_pairs, rational_to_string};
use faultnet::signatures::{build_signature, equivalence_classes, extend_for_no_fault};
use faultnet::solver::{analyze_measurement_graph, solve_exact, solve_greedy, ExactOptions, SolveOutcome, SolverError};
use faultnet::strategies::{family_strategy, plan_size_by_rule};
use faultnet::{BigRational, Edge, Family, FaultMode, KPartiteShape, Measurement, MeasurementPlan, Network, Resistance, Rule};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

/// Exact effective-resistance tools for locating a single faulty edge.
///
/// Exit codes: 0 success, 1 verification failed or no distinguishing set
/// exists, 2 bad input, 3 solver budget exhausted.
#[derive(Parser)]
#[command(name = "faultnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower and upper bounds on the number of measurements for a family.
    Bounds {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Generate the construction plan for a family and verify it.
    Strategy {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "removed")]
        mode: FaultMode,
        /// Write the plan file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a plan distinguishes every single-edge fault.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        plan: PathBuf,
        /// Fault mode to check; defaults to the plan's own mode.
        #[arg(long)]
        mode: Option<FaultMode>,
        #[arg(long)]
        json: bool,
    },
    /// Find a small (or minimum) distinguishing measurement set.
    Solve {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "removed")]
        mode: FaultMode,
        /// Branch and bound with a proof of optimality (default).
        #[arg(long, conflicts_with = "greedy")]
        exact: bool,
        /// Greedy cover, no optimality claim.
        #[arg(long)]
        greedy: bool,
        /// Time budget for the exact search, in seconds.
        #[arg(long, default_value_t = 300.0)]
        budget: f64,
        /// Also separate the fault-free network from every fault.
        #[arg(long)]
        allow_no_fault: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Effective resistance between two vertices, optionally after a fault.
    Resistance {
        #[command(flatten)]
        target: Target,
        #[arg(long, num_args = 2, value_names = ["R", "S"], required = true)]
        pair: Vec<usize>,
        /// Alter this edge before measuring.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        fault: Option<Vec<usize>>,
        #[arg(long, default_value = "removed")]
        mode: FaultMode,
        #[arg(long)]
        json: bool,
    },
    /// Group the edges by the value one measurement reads when they fail.
    Classes {
        #[command(flatten)]
        target: Target,
        #[arg(long, num_args = 2, value_names = ["R", "S"], required = true)]
        measurement: Vec<usize>,
        #[arg(long, default_value = "removed")]
        mode: FaultMode,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate resistance changes R - R' from the closed forms.
    Delta {
        #[command(flatten)]
        target: Target,
        /// Restrict to one measurement (required for explicit networks).
        #[arg(long, num_args = 2, value_names = ["R", "S"])]
        measurement: Option<Vec<usize>>,
        /// Only this mode; both by default.
        #[arg(long)]
        mode: Option<FaultMode>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// Complete graph on N vertices.
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Complete k-partite graph with these part sizes, e.g. 2,3,4.
    #[arg(long, value_name = "SIZES", value_delimiter = ',')]
    k_partite: Option<Vec<usize>>,
    /// A shorthand such as K6 or K3,3, or a network JSON file.
    #[arg(long, value_name = "NETWORK")]
    network: Option<String>,
}

impl Target {
    fn load(&self) -> Result<(Option<Family>, Network)> {
        let file = match (&self.complete, &self.k_partite, &self.network) {
            (Some(n), _, _) => NetworkFile::Complete { n: *n },
            (_, Some(parts), _) => NetworkFile::KPartite { parts: parts.clone() },
            (_, _, Some(arg)) => {
                let (file, net) = load_network_arg(arg)?;
                return Ok((file.family()?, net));
            }
            _ => unreachable!("clap enforces one target"),
        };
        let family = file.family()?;
        Ok((family, file.network()?))
    }

    fn family(&self) -> Result<Family> {
        match self.load()?.0 {
            Some(f) => Ok(f),
            None => bail!("this command needs a complete or complete k-partite family, not an explicit network"),
        }
    }
}

fn measurement(v: &[usize]) -> Result<Measurement> {
    Ok(Measurement::new(v[0], v[1])?)
}

fn exact(v: &BigRational) -> String {
    format!("{} (~{:.6})", rational_to_string(v), Resistance::Finite(v.clone()).to_f64())
}

fn reading(v: &Resistance) -> String {
    match v {
        Resistance::Finite(x) => exact(x),
        Resistance::Infinite => "inf (open circuit)".into(),
    }
}

fn emit_plan(plan: &MeasurementPlan, out: &Option<PathBuf>) -> Result<()> {
    let text = PlanFile::from_plan(plan).render();
    match out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Human-readable status: stdout when the plan goes to a file, else stderr.
fn status(out: &Option<PathBuf>, line: &str) {
    if out.is_some() {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn cmd_bounds(target: &Target, as_json: bool) -> Result<u8> {
    let family = target.family()?;
    let report = family_bound(&family).map_err(|e| anyhow!("{e}"))?;
    let generated = family_strategy(&family).ok().map(|p| p.len());
    if as_json {
        let mut v = serde_json::to_value(&report)?;
        v["strategy_size"] = json!(generated);
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        print!("{report}");
        if let Some(g) = generated {
            println!("strategy plan size: {g}");
        }
    }
    Ok(0)
}

fn cmd_strategy(target: &Target, mode: FaultMode, out: &Option<PathBuf>, as_json: bool) -> Result<u8> {
    let family = target.family()?;
    let mut plan = family_strategy(&family)?;
    plan.mode = mode;
    let predicted = plan_size_by_rule(&family)?;
    let net = family.network()?;
    let sig = build_signature(&net, &plan.measurements, mode)?;
    let pairs = sig.undistinguished_index_pairs();
    let ok = pairs.is_empty();
    if as_json {
        let v = json!({
            "family": family.to_string(),
            "size": plan.len(),
            "predicted": predicted,
            "distinguishing": ok,
            "undistinguished_pairs": pairs.len(),
            "plan": serde_json::to_value(PlanFile::from_plan(&plan))?,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
        if let Some(path) = out {
            emit_plan(&plan, &Some(path.clone()))?;
        }
    } else {
        emit_plan(&plan, out)?;
        let verdict = if ok { "verified".to_string() } else { format!("NOT distinguishing ({} pairs)", pairs.len()) };
        status(out, &format!("{family}: {} measurements (rule count {predicted}), {mode}: {verdict}", plan.len()));
    }
    Ok(if ok { 0 } else { EXIT_FAILURE })
}

fn cmd_verify(target: &Target, plan_path: &PathBuf, mode: Option<FaultMode>, as_json: bool) -> Result<u8> {
    let (family, net) = target.load()?;
    let file = PlanFile::load(plan_path)?;
    let plan = file.to_plan(net.vertex_count(), family.clone())?;
    let mode = mode.unwrap_or(plan.mode);
    let sig = build_signature(&net, &plan.measurements, mode)?;
    let pairs = sig.undistinguished_index_pairs();
    let silent: Vec<&Edge> = sig.silent_edges().into_iter().map(|e| &net.edges()[e]).collect();
    let graph = analyze_measurement_graph(net.vertex_count(), &plan.measurements, family.as_ref());
    let ok = pairs.is_empty();
    let edges = net.edges();
    if as_json {
        let v = json!({
            "distinguishing": ok,
            "mode": mode.as_str(),
            "measurements": plan.len(),
            "undistinguished": pairs.iter().map(|&(i, j)| json!([edges[i].endpoints(), edges[j].endpoints()])).collect::<Vec<_>>(),
            "silent_edges": silent.iter().map(|e| e.endpoints()).collect::<Vec<_>>(),
            "violations": graph.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("distinguishing: {}", if ok { "yes" } else { "no" });
        println!("measurements: {}, edges: {}, mode: {mode}", plan.len(), edges.len());
        match silent.as_slice() {
            [] => println!("fault-free network: separated from every fault"),
            es => {
                let list: Vec<String> = es.iter().map(|e| format!("({}, {})", e.u, e.v)).collect();
                println!("fault-free network: reads like a fault on {}", list.join(", "));
            }
        }
        if !ok {
            println!("undistinguished pairs ({}):", pairs.len());
            for &(i, j) in &pairs {
                println!("  ({}, {}) ~ ({}, {})", edges[i].u, edges[i].v, edges[j].u, edges[j].v);
            }
            println!("measurement graph: {} components, unmeasured vertices {:?}", graph.components.len(), graph.isolated);
            for v in &graph.violations {
                println!("  {v}");
            }
        }
    }
    Ok(if ok { 0 } else { EXIT_FAILURE })
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    target: &Target,
    mode: FaultMode,
    greedy: bool,
    budget: f64,
    allow_no_fault: bool,
    out: &Option<PathBuf>,
    as_json: bool,
) -> Result<u8> {
    if !(budget.is_finite() && budget >= 0.0) {
        bail!("budget must be a nonnegative number of seconds");
    }
    let (family, net) = target.load()?;
    let candidates = all_pairs(net.vertex_count());
    let solved = if greedy {
        solve_greedy(&net, &candidates, mode).map(|p| (p, "greedy", None, None))
    } else {
        let budget = Duration::from_secs_f64(budget);
        let options = match &family {
            Some(f) => ExactOptions::for_family(f, budget),
            None => ExactOptions::with_budget(budget),
        };
        solve_exact(&net, &candidates, mode, &options).map(|report| {
            let elapsed = report.elapsed;
            match report.outcome {
                SolveOutcome::Optimal(p) => (p, "optimal", None, Some(elapsed)),
                SolveOutcome::TimedOut { incumbent, lower_bound } => (incumbent, "timeout", Some(lower_bound), Some(elapsed)),
            }
        })
    };
    let (mut plan, state, lower_bound, elapsed) = match solved {
        Ok(x) => x,
        Err(SolverError::Infeasible(pairs)) => {
            eprintln!("infeasible: {} edge pairs cannot be told apart by any measurement", pairs.len());
            for (a, b) in pairs.iter().take(20) {
                eprintln!("  {a} ~ {b}");
            }
            return Ok(EXIT_FAILURE);
        }
        Err(e) => return Err(e.into()),
    };
    plan.family = family;
    let base = plan.len();
    if allow_no_fault {
        let extended = extend_for_no_fault(&net, &plan.measurements, mode, None)?;
        for m in &extended[base..] {
            plan.push(m.r, m.s, Rule::NoFault);
        }
    }
    let mut line = match (state, lower_bound) {
        ("optimal", _) => format!("optimal: {base} measurements"),
        ("timeout", Some(lb)) => format!("timed out: best {base} measurements, proven lower bound {lb}"),
        _ => format!("greedy: {base} measurements (not proven optimal)"),
    };
    if let Some(t) = elapsed {
        line += &format!(" [{:.2}s]", t.as_secs_f64());
    }
    if allow_no_fault {
        line += &match plan.len() - base {
            0 => "; already separates the fault-free network".to_string(),
            k => format!("; +{k} to separate the fault-free network"),
        };
    }
    if as_json {
        let v = json!({
            "status": state,
            "size": base,
            "total": plan.len(),
            "lower_bound": lower_bound,
            "seconds": elapsed.map(|t| t.as_secs_f64()),
            "plan": serde_json::to_value(PlanFile::from_plan(&plan))?,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
        if let Some(path) = out {
            emit_plan(&plan, &Some(path.clone()))?;
        }
    } else {
        emit_plan(&plan, out)?;
        status(out, &line);
    }
    Ok(if state == "timeout" { EXIT_TIMEOUT } else { 0 })
}

fn cmd_resistance(target: &Target, pair: &[usize], fault: &Option<Vec<usize>>, mode: FaultMode, as_json: bool) -> Result<u8> {
    let (_, net) = target.load()?;
    let m = measurement(pair)?;
    let base = net.effective_resistance(&m)?;
    let after = match fault {
        Some(f) => {
            let edge = net.edge_between(f[0], f[1]).ok_or_else(|| anyhow!("({}, {}) is not an edge", f[0], f[1]))?;
            Some(net.perturbed_effective_resistance(&m, edge, mode)?)
        }
        None => None,
    };
    if as_json {
        let v = json!({
            "pair": [m.r, m.s],
            "resistance": base.to_exact_string(),
            "faulted": after.as_ref().map(|r| json!({
                "edge": fault.as_ref().map(|f| [f[0], f[1]]),
                "mode": mode.as_str(),
                "resistance": r.to_exact_string(),
            })),
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!("R({}, {}) = {}", m.r, m.s, reading(&base));
        if let (Some(r), Some(f)) = (&after, fault) {
            println!("with ({}, {}) {mode}: R = {}", f[0], f[1], reading(r));
        }
    }
    Ok(0)
}

fn cmd_classes(target: &Target, meas: &[usize], mode: FaultMode, as_json: bool) -> Result<u8> {
    let (_, net) = target.load()?;
    let m = measurement(meas)?;
    let classes = equivalence_classes(&net, &m, mode)?;
    let edges = net.edges();
    if as_json {
        let v: Vec<Value> = classes
            .classes
            .iter()
            .zip(&classes.values)
            .map(|(c, val)| json!({"value": val.to_exact_string(), "edges": c.iter().map(|&e| edges[e].endpoints()).collect::<Vec<_>>()}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"measurement": [m.r, m.s], "mode": mode.as_str(), "classes": v}))?);
    } else {
        println!("measurement ({}, {}), {mode}: {} classes", m.r, m.s, classes.classes.len());
        for (c, val) in classes.classes.iter().zip(&classes.values) {
            let list: Vec<String> = c.iter().map(|&e| format!("({}, {})", edges[e].u, edges[e].v)).collect();
            println!("  R' = {:<28} {:>4} edges: {}", reading(val), c.len(), list.join(" "));
        }
    }
    Ok(0)
}

fn modes(mode: Option<FaultMode>) -> Vec<FaultMode> {
    mode.map_or(FaultMode::ALL.to_vec(), |m| vec![m])
}

fn delta_complete(n: usize, modes: &[FaultMode], as_json: bool) -> Result<()> {
    let mut rows = Vec::new();
    for case in CompleteCase::ALL {
        let values: Vec<String> = modes
            .iter()
            .map(|&mode| complete_delta(n, case, mode).map(|d| rational_to_string(&d)).unwrap_or_else(|e| format!("n/a ({e})")))
            .collect();
        rows.push((case.label(), values));
    }
    if as_json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(label, vals)| {
                let mut o = json!({"case": label});
                for (mode, val) in modes.iter().zip(vals) {
                    o[mode.as_str()] = json!(val);
                }
                o
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"family": format!("K_{n}"), "delta": v}))?);
    } else {
        println!("K_{n}: R - R' for measurement (r, s), fault (a, b)");
        let header: Vec<String> = modes.iter().map(|m| format!("{:>14}", m.as_str())).collect();
        println!("{:<20}{}", "case", header.join(""));
        for (label, vals) in rows {
            let cols: Vec<String> = vals.iter().map(|v| format!("{v:>14}")).collect();
            println!("{label:<20}{}", cols.join(""));
        }
    }
    Ok(())
}

fn delta_kpartite(shape: &KPartiteShape, ms: &[Measurement], modes: &[FaultMode], as_json: bool) -> Result<()> {
    let net = shape.network();
    let mut out = Vec::new();
    for m in ms {
        // one row per (column, part of a, part of b), with an example edge and a count
        let mut rows: BTreeMap<(faultnet::closed_forms::Column, usize, usize), ((usize, usize), usize, Vec<String>)> = BTreeMap::new();
        for e in net.edges() {
            let case = classify_kpartite(shape, m, e.endpoints())?;
            let key = (case.column, case.a_part, case.b_part);
            if let Some(row) = rows.get_mut(&key) {
                row.1 += 1;
                continue;
            }
            let vals = modes
                .iter()
                .map(|&mode| kpartite_delta(shape, &case, mode).map(|d| rational_to_string(&d)).unwrap_or_else(|e| format!("n/a ({e})")))
                .collect();
            rows.insert(key, ((case.a, case.b), 1, vals));
        }
        out.push((m, rows));
    }
    if as_json {
        let v: Vec<Value> = out
            .iter()
            .map(|(m, rows)| {
                let rs: Vec<Value> = rows
                    .iter()
                    .map(|((col, pa, pb), (ex, count, vals))| {
                        let mut o = json!({"column": col.to_string(), "case": col.header(), "a_part": pa, "b_part": pb, "example": [ex.0, ex.1], "edges": count});
                        for (mode, val) in modes.iter().zip(vals) {
                            o[mode.as_str()] = json!(val);
                        }
                        o
                    })
                    .collect();
                json!({"measurement": [m.r, m.s], "rows": rs})
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"family": shape.to_string(), "delta": v}))?);
    } else {
        println!("{shape}: R - R' by column; parts are numbered in nondecreasing size order");
        for (m, rows) in out {
            println!("measurement ({}, {}): parts {} and {}", m.r, m.s, shape.part_of(m.r), shape.part_of(m.s));
            let header: Vec<String> = modes.iter().map(|m| format!("{:>16}", m.as_str())).collect();
            println!("  {:<5} {:<38} {:>9} {:>5}{}", "col", "case", "example", "edges", header.join(""));
            for ((col, _, _), (ex, count, vals)) in rows {
                let cols: Vec<String> = vals.iter().map(|v| format!("{v:>16}")).collect();
                let ex = format!("({},{})", ex.0, ex.1);
                println!("  {:<5} {:<38} {:>9} {:>5}{}", col.to_string(), col.header(), ex, count, cols.join(""));
            }
        }
    }
    Ok(())
}

fn delta_explicit(net: &Network, m: &Measurement, modes: &[FaultMode], as_json: bool) -> Result<()> {
    eprintln!("note: closed forms cover complete and complete k-partite families; computing from the network");
    let base = match net.effective_resistance(m)? {
        Resistance::Finite(r) => r,
        Resistance::Infinite => unreachable!("networks are connected"),
    };
    let mut rows = Vec::new();
    for e in net.edges() {
        let vals: Vec<String> = modes
            .iter()
            .map(|&mode| match net.perturbed_effective_resistance(m, e, mode) {
                Ok(Resistance::Finite(r)) => rational_to_string(&(&base - r)),
                Ok(Resistance::Infinite) => "-inf".into(),
                Err(e) => format!("n/a ({e})"),
            })
            .collect();
        rows.push((e.endpoints(), vals));
    }
    if as_json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(ep, vals)| {
                let mut o = json!({"edge": [ep.0, ep.1]});
                for (mode, val) in modes.iter().zip(vals) {
                    o[mode.as_str()] = json!(val);
                }
                o
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"measurement": [m.r, m.s], "delta": v}))?);
    } else {
        println!("measurement ({}, {}): R = {}", m.r, m.s, exact(&base));
        for ((u, v), vals) in rows {
            let cols: Vec<String> = vals.iter().map(|v| format!("{v:>16}")).collect();
            println!("  ({u}, {v}){}", cols.join(""));
        }
    }
    Ok(())
}

fn cmd_delta(target: &Target, meas: &Option<Vec<usize>>, mode: Option<FaultMode>, as_json: bool) -> Result<u8> {
    let (family, net) = target.load()?;
    let modes = modes(mode);
    let chosen = meas.as_deref().map(measurement).transpose()?;
    match (&family, chosen) {
        (Some(Family::Complete(n)), _) => delta_complete(*n, &modes, as_json)?,
        (Some(Family::KPartite(shape)), m) => {
            let ms = match m {
                Some(m) => {
                    net.check_measurement(&m)?;
                    vec![m]
                }
                None => shape.measurement_orbit_representatives(),
            };
            delta_kpartite(shape, &ms, &modes, as_json)?;
        }
        (None, Some(m)) => delta_explicit(&net, &m, &modes, as_json)?,
        (None, None) => bail!("explicit networks need --measurement R S"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Bounds { target, json } => cmd_bounds(target, *json),
        Command::Strategy { target, mode, out, json } => cmd_strategy(target, *mode, out, *json),
        Command::Verify { target, plan, mode, json } => cmd_verify(target, plan, *mode, *json),
        Command::Solve { target, mode, exact: _, greedy, budget, allow_no_fault, out, json } => {
            cmd_solve(target, *mode, *greedy, *budget, *allow_no_fault, out, *json)
        }
        Command::Resistance { target, pair, fault, mode, json } => cmd_resistance(target, pair, fault, *mode, *json),
        Command::Classes { target, measurement, mode, json } => cmd_classes(target, measurement, *mode, *json),
        Command::Delta { target, measurement, mode, json } => cmd_delta(target, measurement, *mode, *json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
