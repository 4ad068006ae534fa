//! Measurement plans for complete and complete k-partite unit networks.
//!
//! Vertices follow the canonical labeling of [`KPartiteShape`]. Each part keeps
//! its first vertex as the designated vertex (left unmeasured unless a rule says
//! otherwise), and whenever a construction allows any eligible vertex the lowest
//! index is taken.

use thiserror::Error;

use crate::bounds::{self, SetAside};
use crate::family::{Family, KPartiteShape};
use crate::network::{FaultMode, VertexId};
pub use crate::plan::{ButterflyKind, ButterflyWing, MeasurementPlan, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("the complete-graph strategy needs n >= 6, got {0}")]
    CompleteTooSmall(usize),
    #[error("every part needs at least two vertices, got {0:?}")]
    PartTooSmall(Vec<usize>),
    #[error("expected {expected} parts, got {got}")]
    WrongPartCount { expected: usize, got: usize },
}

struct Builder {
    plan: MeasurementPlan,
    used: Vec<bool>,
}

impl Builder {
    fn new(n: usize, family: Family) -> Self {
        Builder { plan: MeasurementPlan::new(Some(family), FaultMode::Removed), used: vec![false; n] }
    }

    fn measure(&mut self, a: VertexId, b: VertexId, rule: Rule) {
        self.plan.push(a, b, rule);
        self.used[a] = true;
        self.used[b] = true;
    }

    fn wing(&mut self, kind: ButterflyKind, w1: VertexId, center: VertexId, w2: VertexId) {
        self.plan.push_wing(ButterflyWing { kind, center, wings: (w1, w2) });
        for v in [w1, center, w2] {
            self.used[v] = true;
        }
    }

    fn unused(&self, part: &[VertexId]) -> Vec<VertexId> {
        part.iter().copied().filter(|&v| !self.used[v]).collect()
    }

    fn used_centers(&self, part: &[VertexId]) -> Vec<VertexId> {
        self.plan.wings.iter().map(|w| w.center).filter(|c| part.contains(c)).collect()
    }

    fn finish(self) -> MeasurementPlan {
        self.plan
    }
}

/// Butterflies on consecutive triples `(v1, v2, v3)` centered at `v2`; one or
/// two leftovers are measured against the first center.
pub fn complete_strategy(n: usize) -> Result<MeasurementPlan, StrategyError> {
    if n < 6 {
        return Err(StrategyError::CompleteTooSmall(n));
    }
    let mut b = Builder::new(n, Family::Complete(n));
    for g in 0..n / 3 {
        b.wing(ButterflyKind::Plain, 3 * g, 3 * g + 1, 3 * g + 2);
    }
    for v in 3 * (n / 3)..n {
        b.measure(1, v, Rule::Leftover);
    }
    Ok(b.finish())
}

fn shape_of(parts: &[usize]) -> Result<KPartiteShape, StrategyError> {
    if parts.iter().any(|&p| p < 2) {
        return Err(StrategyError::PartTooSmall(parts.to_vec()));
    }
    KPartiteShape::new(parts.to_vec()).map_err(|_| StrategyError::PartTooSmall(parts.to_vec()))
}

fn part_lists(shape: &KPartiteShape) -> Vec<Vec<VertexId>> {
    (0..shape.k()).map(|p| shape.vertices(p).collect()).collect()
}

/// Unequal parts `|beta| < |gamma|`: a matching between the non-designated
/// vertices, plain butterflies on the rest of `gamma`, then the one/two
/// leftover rules.
fn bipartite_unequal(b: &mut Builder, beta: &[VertexId], gamma: &[VertexId]) {
    let i_gamma = gamma[0];
    let (bs, gs) = (&beta[1..], &gamma[1..]);
    for (&u, &v) in bs.iter().zip(gs) {
        b.measure(u, v, Rule::Matching);
    }
    let rest: Vec<VertexId> = gs[bs.len()..].to_vec();
    let groups = rest.len() / 3;
    for g in 0..groups {
        b.wing(ButterflyKind::Partition, rest[3 * g], rest[3 * g + 1], rest[3 * g + 2]);
    }
    let left = &rest[3 * groups..];
    match *left {
        [v] => {
            let w = gs.iter().copied().find(|&w| w != v).expect("gamma has another non-designated vertex");
            b.measure(v, w, Rule::Leftover);
        }
        [u, v] => b.wing(ButterflyKind::Partition, u, v, i_gamma),
        _ => {}
    }
}

/// Equal parts: zig-zag schemes on the non-designated vertices, then a hairpin
/// (one left per side) or a hairpin plus a tail (two left per side).
fn bipartite_equal(b: &mut Builder, beta: &[VertexId], gamma: &[VertexId]) {
    let i_gamma = gamma[0];
    let (bs, gs) = (&beta[1..], &gamma[1..]);
    let schemes = bs.len() / 3;
    for z in 0..schemes {
        let (x, y) = (&bs[3 * z..3 * z + 3], &gs[3 * z..3 * z + 3]);
        zigzag(b, x, y);
    }
    let (lb, lg) = (&bs[3 * schemes..], &gs[3 * schemes..]);
    match (lb, lg) {
        ([v], [t]) => b.wing(ButterflyKind::Hairpin, i_gamma, *v, *t),
        ([u, v], [w, t]) => {
            b.wing(ButterflyKind::Hairpin, *u, *w, *v);
            b.measure(*t, *w, Rule::Leftover);
        }
        _ => {}
    }
}

/// `beta = (v2, v4, v6)`, `gamma = (v1, v3, v5)`: wings `v1-v2-v3` and `v4-v5-v6`.
fn zigzag(b: &mut Builder, beta: &[VertexId], gamma: &[VertexId]) {
    b.wing(ButterflyKind::ZigZag, gamma[0], beta[0], gamma[1]);
    b.wing(ButterflyKind::ZigZag, beta[1], gamma[2], beta[2]);
}

/// Plan for `K_{b,g}` (any order of the two sizes).
pub fn bipartite_strategy(b: usize, g: usize) -> Result<MeasurementPlan, StrategyError> {
    let shape = shape_of(&[b, g])?;
    Ok(bipartite_for(&shape))
}

fn bipartite_for(shape: &KPartiteShape) -> MeasurementPlan {
    let parts = part_lists(shape);
    let mut bld = Builder::new(shape.n(), Family::KPartite(shape.clone()));
    if parts[0].len() < parts[1].len() {
        bipartite_unequal(&mut bld, &parts[0], &parts[1]);
    } else {
        bipartite_equal(&mut bld, &parts[0], &parts[1]);
    }
    bld.finish()
}

/// Greedy matching across parts: repeatedly pair the lowest free vertex of the
/// part with most free vertices with one from the runner-up. Leaves vertices
/// unmatched only when one part outnumbers the others combined.
fn cross_matching(b: &mut Builder, pools: &mut [Vec<VertexId>]) {
    loop {
        let mut order: Vec<usize> = (0..pools.len()).filter(|&p| !pools[p].is_empty()).collect();
        order.sort_by_key(|&p| (std::cmp::Reverse(pools[p].len()), p));
        if order.len() < 2 {
            return;
        }
        let (x, y) = (pools[order[0]].remove(0), pools[order[1]].remove(0));
        b.measure(x, y, Rule::Matching);
    }
}

/// Partition butterflies on `free` (groups of three), then the leftover rule:
/// one vertex is measured against a used vertex of the part, two form a
/// partition butterfly with the part's designated vertex.
fn partition_fill(b: &mut Builder, part: &[VertexId], free: &[VertexId]) {
    let groups = free.len() / 3;
    for g in 0..groups {
        b.wing(ButterflyKind::Partition, free[3 * g], free[3 * g + 1], free[3 * g + 2]);
    }
    match free[3 * groups..] {
        [v] => {
            let w = b
                .used_centers(part)
                .into_iter()
                .chain(part.iter().copied().filter(|&w| w != v && b.used[w] && w != part[0]))
                .next()
                .unwrap_or(part[0]);
            b.measure(v, w, Rule::Leftover);
        }
        [u, v] => b.wing(ButterflyKind::Partition, u, v, part[0]),
        _ => {}
    }
}

/// Tripartite plan following the size pattern of the three parts.
fn tripartite_by_pattern(b: &mut Builder, parts: &[Vec<VertexId>]) {
    let (al, be, ga) = (&parts[0], &parts[1], &parts[2]);
    let (x, y, z) = (al.len(), be.len(), ga.len());
    if x == y && y == z {
        for i in 1..x {
            b.wing(ButterflyKind::Tripartite, al[i], ga[i], be[i]);
        }
    } else if x < y && y < z {
        distinct_parts(b, parts);
    } else if x == y {
        let gs = &ga[1..];
        let mut g = 0;
        for &u in &al[1..] {
            if g < gs.len() {
                b.measure(u, gs[g], Rule::Matching);
                g += 1;
            }
        }
        let mut bs_left = Vec::new();
        for &u in &be[1..] {
            if g < gs.len() {
                b.measure(u, gs[g], Rule::Matching);
                g += 1;
            } else {
                bs_left.push(u);
            }
        }
        if !bs_left.is_empty() {
            partition_fill(b, be, &bs_left);
        }
        let gs_left = gs[g..].to_vec();
        if !gs_left.is_empty() {
            partition_fill(b, ga, &gs_left);
        }
    } else {
        let bs = &be[1..];
        let mut k = 0;
        for &u in &al[1..] {
            b.measure(u, bs[k], Rule::Matching);
            k += 1;
        }
        let bs_left = &bs[k..];
        let gs = &ga[1..];
        let (rb, rg) = (bs_left.len() % 3, gs.len() % 3);
        if rb + rg >= 3 {
            // Three or four leftovers across the two equal parts: a hairpin
            // between them replaces two separate leftover rules.
            let (bb, bt) = bs_left.split_at(bs_left.len() - rb);
            let (gb, gt) = gs.split_at(gs.len() - rg);
            partition_fill(b, be, bb);
            partition_fill(b, ga, gb);
            match (bt, gt) {
                ([u], [v, w]) | ([u, _], [v, w]) => b.wing(ButterflyKind::Hairpin, *v, *u, *w),
                ([u1, u2], [v]) => b.wing(ButterflyKind::Hairpin, *u1, *v, *u2),
                _ => unreachable!(),
            }
            if let [_, u2] = bt {
                if gt.len() == 2 {
                    partition_fill(b, be, &[*u2]);
                }
            }
        } else {
            partition_fill(b, be, bs_left);
            partition_fill(b, ga, gs);
        }
    }
}

/// Piece counts for three pairwise distinct parts: `tripartite` butterflies
/// taking one vertex from each part, `partition[i]` butterflies inside part
/// `i`, and a cross matching on what remains. Leftovers the matching cannot
/// absorb cost one measurement each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DistinctLayout {
    tripartite: usize,
    partition: [usize; 3],
    cost: usize,
}

fn matching_cost(pools: [usize; 3]) -> usize {
    let total: usize = pools.iter().sum();
    let max = *pools.iter().max().expect("three pools");
    if max <= total - max {
        total.div_ceil(2)
    } else {
        // every vertex outside the largest part is matched into it; the excess
        // needs one measurement each
        (total - max) + (max - (total - max))
    }
}

/// The cheapest layout; among equal costs it prefers the plain layout (one
/// tripartite butterfly exactly when `n` is even, no partition butterflies).
fn distinct_layout(free: [usize; 3], n_even: bool) -> DistinctLayout {
    let mut best: Option<(usize, usize, usize, DistinctLayout)> = None;
    let t_max = *free.iter().min().expect("three pools");
    for t in 0..=t_max {
        let after = free.map(|f| f - t);
        for p0 in 0..=after[0] / 3 {
            for p1 in 0..=after[1] / 3 {
                for p2 in 0..=after[2] / 3 {
                    let partition = [p0, p1, p2];
                    let rest = [after[0] - 3 * p0, after[1] - 3 * p1, after[2] - 3 * p2];
                    let cost = 2 * t + 2 * (p0 + p1 + p2) + matching_cost(rest);
                    let plain = usize::from(t != usize::from(n_even));
                    let key = (cost, plain, p0 + p1 + p2);
                    if best.as_ref().is_none_or(|b| (b.0, b.1, b.2) > key) {
                        best = Some((key.0, key.1, key.2, DistinctLayout { tripartite: t, partition, cost }));
                    }
                }
            }
        }
    }
    best.expect("at least the empty layout").3
}

/// All three parts of different sizes: a perfect matching on the
/// non-designated vertices (after one tripartite butterfly when `n` is even).
/// When one part is too large for that, its excess goes into partition
/// butterflies, whichever layout is cheapest.
fn distinct_parts(b: &mut Builder, parts: &[Vec<VertexId>]) {
    let n: usize = parts.iter().map(Vec::len).sum();
    let mut pools: Vec<Vec<VertexId>> = parts.iter().map(|p| p[1..].to_vec()).collect();
    let layout = distinct_layout([pools[0].len(), pools[1].len(), pools[2].len()], n % 2 == 0);
    for _ in 0..layout.tripartite {
        let (p, q, r) = (pools[0].remove(0), pools[1].remove(0), pools[2].remove(0));
        b.wing(ButterflyKind::Tripartite, p, r, q);
    }
    for (i, &count) in layout.partition.iter().enumerate() {
        for _ in 0..count {
            let start = pools[i].len() - 3;
            let g: Vec<VertexId> = pools[i].drain(start..).collect();
            b.wing(ButterflyKind::Partition, g[0], g[1], g[2]);
        }
    }
    cross_matching(b, &mut pools);
    for (i, part) in parts.iter().enumerate() {
        if !pools[i].is_empty() {
            partition_fill(b, part, &pools[i].clone());
        }
    }
}

pub fn tripartite_strategy(a: usize, b: usize, c: usize) -> Result<MeasurementPlan, StrategyError> {
    let shape = shape_of(&[a, b, c])?;
    let parts = part_lists(&shape);
    let mut bld = Builder::new(shape.n(), Family::KPartite(shape.clone()));
    tripartite_by_pattern(&mut bld, &parts);
    Ok(bld.finish())
}

/// Building block for k-partite plans on three parts `alpha <= beta <= gamma`:
/// tripartite butterflies, zig-zag schemes between `beta` and `gamma`, a
/// hairpin for one or two `beta` leftovers, then partition butterflies in
/// `gamma`.
fn tripartite_block(b: &mut Builder, al: &[VertexId], be: &[VertexId], ga: &[VertexId]) {
    let wings = al.len() - 1;
    for i in 1..=wings {
        b.wing(ButterflyKind::Tripartite, al[i], ga[i], be[i]);
    }
    let bs: Vec<VertexId> = be[1 + wings..].to_vec();
    let mut gs: Vec<VertexId> = ga[1 + wings..].to_vec();
    let schemes = bs.len() / 3;
    for z in 0..schemes {
        zigzag(b, &bs[3 * z..3 * z + 3], &gs[3 * z..3 * z + 3]);
    }
    gs.drain(..3 * schemes);
    match bs[3 * schemes..] {
        [v] => {
            let mut free = gs.iter().copied();
            let w1 = free.next().unwrap_or(ga[0]);
            let w2 = free.next().unwrap_or(ga[0]);
            b.wing(ButterflyKind::Hairpin, w1, v, w2);
        }
        [v1, v2] => {
            let center = gs.first().copied().unwrap_or(ga[0]);
            b.wing(ButterflyKind::Hairpin, v1, center, v2);
        }
        _ => {}
    }
    let free = b.unused(&ga[1..]);
    let groups = free.len() / 3;
    for g in 0..groups {
        b.wing(ButterflyKind::Partition, free[3 * g], free[3 * g + 1], free[3 * g + 2]);
    }
    match free[3 * groups..] {
        [u] => {
            let w = b.used_centers(ga).first().copied().unwrap_or(ga[0]);
            b.measure(u, w, Rule::Leftover);
        }
        [u, w] => b.wing(ButterflyKind::Partition, u, w, ga[0]),
        _ => {}
    }
}

/// The part set aside when `k = 1 (mod 3)`: partition butterflies, then every
/// remaining vertex measured against a center.
fn lone_part_block(b: &mut Builder, part: &[VertexId]) {
    let groups = part.len() / 3;
    for g in 0..groups {
        b.wing(ButterflyKind::Partition, part[3 * g], part[3 * g + 1], part[3 * g + 2]);
    }
    if groups == 0 {
        // No center to measure against: keep the first vertex unmeasured and
        // attach the second to the first center placed elsewhere.
        let hub = b.plan.wings.first().map(|w| w.center).expect("a tripartite block precedes the lone part");
        b.measure(part[1], hub, Rule::Designated);
        return;
    }
    for &v in &part[3 * groups..] {
        b.measure(v, part[1], Rule::Leftover);
    }
}

/// The two parts set aside when `k = 2 (mod 3)`, `|pi| <= |pj|`: one
/// designated vertex in `pi`, zig-zag schemes, hairpin leftovers, then
/// partition butterflies in `pj`.
fn pair_block(b: &mut Builder, pi: &[VertexId], pj: &[VertexId]) {
    let is: Vec<VertexId> = pi[1..].to_vec();
    let mut js: Vec<VertexId> = pj.to_vec();
    let schemes = (is.len() / 3).min(js.len() / 3);
    for z in 0..schemes {
        zigzag(b, &is[3 * z..3 * z + 3], &js[3 * z..3 * z + 3]);
    }
    js.drain(..3 * schemes);
    match is[3 * schemes..] {
        [v] => {
            if js.len() >= 2 {
                b.wing(ButterflyKind::Hairpin, js[0], v, js[1]);
                js.drain(..2);
            } else {
                let w = js.first().copied().unwrap_or(pj[0]);
                b.measure(v, w, Rule::Leftover);
                js.clear();
            }
        }
        [v1, v2] => {
            let center = js.first().copied().unwrap_or(pj[0]);
            b.wing(ButterflyKind::Hairpin, v1, center, v2);
            if !js.is_empty() {
                js.remove(0);
            }
        }
        _ => {}
    }
    let groups = js.len() / 3;
    for g in 0..groups {
        b.wing(ButterflyKind::Partition, js[3 * g], js[3 * g + 1], js[3 * g + 2]);
    }
    // A previously used center of pj, else any previously used vertex of pj.
    let hub = b.used_centers(pj).into_iter().chain(pj.iter().copied().filter(|&w| b.used[w])).next();
    match (&js[3 * groups..], hub) {
        ([v], Some(w)) => b.measure(*v, w, Rule::Leftover),
        ([v1, v2], Some(w)) => b.wing(ButterflyKind::Partition, *v1, w, *v2),
        ([], _) => {}
        (rest, _) => unreachable!("pj leftovers {rest:?} after grouping"),
    }
}

/// Plan for a complete k-partite shape. Two parts use the bipartite plan and
/// three parts the tripartite plan; larger `k` sets aside one or two parts by
/// the minimization rule and groups the rest into consecutive triples.
pub fn kpartite_strategy(shape: &KPartiteShape) -> Result<MeasurementPlan, StrategyError> {
    if !shape.parts_at_least_two() {
        return Err(StrategyError::PartTooSmall(shape.parts().to_vec()));
    }
    match shape.k() {
        2 => return Ok(bipartite_for(shape)),
        3 => {
            let p = shape.parts();
            return tripartite_strategy(p[0], p[1], p[2]);
        }
        _ => {}
    }
    let parts = part_lists(shape);
    let mut bld = Builder::new(shape.n(), Family::KPartite(shape.clone()));
    let (_, aside) = bounds::kpartite_selection(shape.parts());
    let set_aside: Vec<usize> = match aside {
        SetAside::None => vec![],
        SetAside::One(i) => vec![i],
        SetAside::Two(i, j) => vec![i, j],
    };
    let rest: Vec<usize> = (0..shape.k()).filter(|p| !set_aside.contains(p)).collect();
    for t in rest.chunks(3) {
        tripartite_block(&mut bld, &parts[t[0]], &parts[t[1]], &parts[t[2]]);
    }
    match aside {
        SetAside::One(i) => lone_part_block(&mut bld, &parts[i]),
        SetAside::Two(i, j) => pair_block(&mut bld, &parts[i], &parts[j]),
        SetAside::None => {}
    }
    Ok(bld.finish())
}

pub fn family_strategy(family: &Family) -> Result<MeasurementPlan, StrategyError> {
    match family {
        Family::Complete(n) => complete_strategy(*n),
        Family::KPartite(shape) => kpartite_strategy(shape),
    }
}

/// Measurements used by the tripartite building block on sorted sizes
/// `a <= b <= c`: `2(a+b+c)/3` minus 2, 5/3 or 4/3 depending on the residues
/// of the two size gaps.
pub fn tripartite_block_count(a: usize, b: usize, c: usize) -> usize {
    let (d1, d2) = ((b - a) % 3, (c - b) % 3);
    let shift = (d2 + 3 - d1) % 3;
    (2 * (a + b + c) + shift - 6) / 3
}

fn grouped_count(m: usize) -> usize {
    2 * (m / 3) + m % 3
}

fn lone_part_count(size: usize) -> usize {
    if size < 3 {
        1
    } else {
        grouped_count(size)
    }
}

fn pair_block_count(x: usize, y: usize) -> usize {
    let schemes = (x - 1) / 3;
    let (rest_i, rest_j) = ((x - 1) % 3, y - 3 * schemes);
    let (hairpin, rest_j) = match rest_i {
        0 => (0, rest_j),
        1 => (2, rest_j - 2),
        _ => (2, rest_j - 1),
    };
    4 * schemes + hairpin + grouped_count(rest_j)
}

/// Measurement count predicted by the construction rules, without building the
/// plan: the closed forms for complete, bipartite and tripartite families; for
/// `k >= 4` the building-block count per triple plus the set-aside parts.
pub fn plan_size_by_rule(family: &Family) -> Result<usize, StrategyError> {
    match family {
        Family::Complete(n) if *n >= 6 => Ok((2 * n).div_ceil(3)),
        Family::Complete(n) => Err(StrategyError::CompleteTooSmall(*n)),
        Family::KPartite(shape) => {
            if !shape.parts_at_least_two() {
                return Err(StrategyError::PartTooSmall(shape.parts().to_vec()));
            }
            let p = shape.parts();
            Ok(match *p {
                [b, g] => bounds::bipartite_value(b, g),
                [a, b, c] => bounds::tripartite_values(a, b, c).1,
                _ => {
                    let (_, aside) = bounds::kpartite_selection(p);
                    let (skip, extra) = match aside {
                        SetAside::None => (vec![], 0),
                        SetAside::One(i) => (vec![i], lone_part_count(p[i])),
                        SetAside::Two(i, j) => (vec![i, j], pair_block_count(p[i], p[j])),
                    };
                    let rest: Vec<usize> = (0..p.len()).filter(|i| !skip.contains(i)).map(|i| p[i]).collect();
                    extra + rest.chunks(3).map(|t| tripartite_block_count(t[0], t[1], t[2])).sum::<usize>()
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signatures::is_distinguishing;
    use crate::solver::analyze_measurement_graph;

    fn kp(parts: &[usize]) -> Family {
        Family::KPartite(KPartiteShape::new(parts.to_vec()).unwrap())
    }

    fn assert_valid(family: &Family, plan: &MeasurementPlan) {
        let net = family.network().unwrap();
        assert!(is_distinguishing(&net, &plan.measurements, FaultMode::Removed).unwrap(), "{family}");
        assert_eq!(plan.provenance.len(), plan.len());
        let g = analyze_measurement_graph(net.vertex_count(), &plan.measurements, Some(family));
        assert!(g.violations.is_empty(), "{family}: {:?}", g.violations);
    }

    #[test]
    fn complete_sizes_and_layout() {
        let p = complete_strategy(7).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.measurements.last().unwrap(), &crate::Measurement::new(1, 6).unwrap());
        assert_eq!(p.provenance.last(), Some(&Rule::Leftover));
        assert_eq!(complete_strategy(8).unwrap().len(), 6);
        for n in 6..=12 {
            let f = Family::Complete(n);
            let p = complete_strategy(n).unwrap();
            assert_eq!(p.len(), plan_size_by_rule(&f).unwrap());
            assert_valid(&f, &p);
        }
        assert_eq!(complete_strategy(5).unwrap_err(), StrategyError::CompleteTooSmall(5));
    }

    #[test]
    fn bipartite_examples() {
        assert_eq!(bipartite_strategy(2, 3).unwrap().len(), 2);
        assert_eq!(bipartite_strategy(5, 5).unwrap().len(), 6);
        assert_eq!(bipartite_strategy(3, 3).unwrap().len(), 3);
        for (b, g) in [(3, 3), (3, 5), (4, 4), (4, 7), (5, 5), (5, 6)] {
            let f = kp(&[b, g]);
            let p = bipartite_strategy(b, g).unwrap();
            assert_eq!(p.len(), plan_size_by_rule(&f).unwrap());
            assert_valid(&f, &p);
        }
        assert!(matches!(bipartite_strategy(1, 3), Err(StrategyError::PartTooSmall(_))));
    }

    #[test]
    fn tripartite_examples() {
        for (shape, size) in [([4, 4, 4], 6), ([2, 3, 4], 3), ([2, 4, 4], 5), ([2, 3, 3], 3), ([2, 3, 5], 4), ([2, 2, 5], 4)] {
            let p = tripartite_strategy(shape[0], shape[1], shape[2]).unwrap();
            assert_eq!(p.len(), size, "{shape:?}");
            assert_valid(&kp(&shape), &p);
        }
    }

    #[test]
    fn block_counts() {
        // residues (0, 0): 2(a+b+c)/3 - 2
        assert_eq!(tripartite_block_count(2, 2, 2), 2);
        assert_eq!(tripartite_block_count(3, 3, 6), 6);
        // (0, 1) -> -5/3, (1, 0) -> -4/3
        assert_eq!(tripartite_block_count(2, 2, 3), 3);
        assert_eq!(tripartite_block_count(2, 3, 3), 4);
        for c in 2..=5 {
            assert!(tripartite_block_count(2, 2, c) <= 2 * c - 2);
        }
    }

    #[test]
    fn kpartite_examples() {
        let f = kp(&[2, 2, 2, 3]);
        let p = family_strategy(&f).unwrap();
        assert!(p.len() <= 4);
        assert_valid(&f, &p);
        assert_eq!(kpartite_strategy(&KPartiteShape::new(vec![3, 3]).unwrap()).unwrap().len(), 3);
        for parts in [&[2, 2, 2, 2][..], &[2, 2, 3, 3], &[2, 2, 2, 2, 4], &[3, 3, 3, 3, 3], &[2, 2, 2, 2, 2, 2]] {
            let f = kp(parts);
            let p = family_strategy(&f).unwrap();
            assert_eq!(p.len(), plan_size_by_rule(&f).unwrap(), "{f}");
            assert!(p.len() <= bounds::kpartite_upper(parts).0, "{f}");
            assert_valid(&f, &p);
        }
    }
}
