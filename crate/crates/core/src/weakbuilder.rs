//! Core discovery and assignment, the weakly saturated spark with its three
//! edge classes, auxiliary cores, and the structured (proof-trace) activation
//! order.
//!
//! Cores are ell-blocks (ell = s - r) of the consecutive partition. Block
//! indices are 1-based; core indices are 0-based positions in the core
//! sequence C_0, C_1, ..., with new cores materialized lazily in block order
//! only when some set exhausts the existing ones. Sets are processed in
//! increasing size and, within a size, in colex order; all tie-breaks take
//! the first qualifying index.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bootstrap::{ActivationTrace, TraceStep};
use crate::combinatorics::{binomial, cmp_colex, ColexSubsets};
use crate::error::{Error, Result};
use crate::hypergraph::{is_clique, Hypergraph, VertexSet};
use crate::randmodel::{partition_blocks, BlockPartition, Seed, SplitMix64};

/// Hard cap on uniformity: chain quantification is exponential in r.
pub const MAX_UNIFORMITY: usize = 6;

/// Where a set's activation anchor comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Assignment {
    /// Index into the core sequence (0 is C_0).
    Core(usize),
    /// Not core-definable: `witness` is the colex-smallest assigned proper
    /// subset S' with S minus S' inside the core of S'.
    NotDefinable { witness: VertexSet },
}

/// The full core plan for one host: C_0, the core sequence, and the
/// per-subset assignment for every S outside C_0 with 1 <= |S| <= r-1.
#[derive(Clone, Debug)]
pub struct CorePlan {
    pub ell: usize,
    /// 1-based block index of C_0.
    pub c0_block: usize,
    /// 1-based block indices of C_1..C_m, in block order.
    pub core_blocks: Vec<usize>,
    pub assignment: BTreeMap<VertexSet, Assignment>,
    part: BlockPartition,
}

impl CorePlan {
    pub fn partition(&self) -> &BlockPartition {
        &self.part
    }

    pub fn core_count(&self) -> usize {
        1 + self.core_blocks.len()
    }

    /// Vertices of the core with the given 0-based core index.
    pub fn core_vertices(&self, core_index: usize) -> &VertexSet {
        if core_index == 0 {
            self.part.block(self.c0_block)
        } else {
            self.part.block(self.core_blocks[core_index - 1])
        }
    }

    pub fn c0(&self) -> &VertexSet {
        self.core_vertices(0)
    }

    /// Core index assigned to S; the empty set maps to C_0. None when S is
    /// not core-definable or outside the domain.
    pub fn assigned_core(&self, s: &VertexSet) -> Option<usize> {
        if s.is_empty() {
            return Some(0);
        }
        match self.assignment.get(s) {
            Some(Assignment::Core(i)) => Some(*i),
            _ => None,
        }
    }

    /// JSON form: {ell, c0, cores, assignment}, with assignment entries in
    /// processing order (size, then colex).
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Entry<'a> {
            Core {
                #[serde(rename = "S")]
                s: &'a VertexSet,
                core: usize,
            },
            Witness {
                #[serde(rename = "S")]
                s: &'a VertexSet,
                witness: &'a VertexSet,
            },
        }
        #[derive(Serialize)]
        struct PlanJson<'a> {
            ell: usize,
            c0: usize,
            cores: &'a [usize],
            assignment: Vec<Entry<'a>>,
        }
        let mut keys: Vec<&VertexSet> = self.assignment.keys().collect();
        keys.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| cmp_colex(a.as_slice(), b.as_slice()))
        });
        let assignment = keys
            .into_iter()
            .map(|s| match &self.assignment[s] {
                Assignment::Core(i) => Entry::Core { s, core: *i },
                Assignment::NotDefinable { witness } => Entry::Witness { s, witness },
            })
            .collect();
        let plan = PlanJson {
            ell: self.ell,
            c0: self.c0_block,
            cores: &self.core_blocks,
            assignment,
        };
        serde_json::to_string(&plan).expect("plain data serializes")
    }
}

/// Assigned nonempty proper subsets of `s` with their core indices.
fn assigned_proper_subsets(
    assignment: &BTreeMap<VertexSet, Assignment>,
    s: &VertexSet,
) -> Vec<(VertexSet, usize)> {
    let mut out = Vec::new();
    for size in 1..s.len() {
        for sub in ColexSubsets::new(s.as_slice(), size) {
            let sub = VertexSet::new(sub).expect("increasing");
            if let Some(Assignment::Core(i)) = assignment.get(&sub) {
                out.push((sub, *i));
            }
        }
    }
    out
}

/// Distinct core-index sets over the chains strictly below `s`: every chain
/// starts at the empty set (core 0) and climbs through assigned proper
/// subsets. The assignment conditions depend on a chain only through the
/// union of its cores, so deduplicating by core set is exact.
fn chain_core_sets(
    assignment: &BTreeMap<VertexSet, Assignment>,
    s: &VertexSet,
) -> Vec<BTreeSet<usize>> {
    let elems = assigned_proper_subsets(assignment, s);
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut stack: Vec<(Option<usize>, BTreeSet<usize>)> = vec![(None, BTreeSet::from([0usize]))];
    while let Some((last, cores)) = stack.pop() {
        out.insert(cores.clone());
        for (i, (set, core)) in elems.iter().enumerate() {
            let extends = match last {
                None => true,
                Some(j) => {
                    let (prev, _) = &elems[j];
                    prev.is_subset_of(set) && prev != set
                }
            };
            if extends {
                let mut next = cores.clone();
                next.insert(*core);
                stack.push((Some(i), next));
            }
        }
    }
    out.into_iter().collect()
}

/// Chains of defined subsets strictly below `s` keeping the identity of the
/// chain's first element (needed where the first element's vertices join a
/// clique condition). The empty set participates as a chain element with
/// core 0. Returns deduped (first element, core set) pairs over nonempty
/// chains.
fn chains_with_first(
    assignment: &BTreeMap<VertexSet, Assignment>,
    s: &VertexSet,
) -> Vec<(VertexSet, BTreeSet<usize>)> {
    let mut elems: Vec<(VertexSet, usize)> = vec![(VertexSet::empty(), 0)];
    elems.extend(assigned_proper_subsets(assignment, s));
    let mut out: BTreeSet<(VertexSet, BTreeSet<usize>)> = BTreeSet::new();
    // DFS over increasing sequences; each visited nonempty prefix records
    // its first element and core set.
    let mut stack: Vec<(usize, BTreeSet<usize>, usize)> = Vec::new();
    for (i, (_, core)) in elems.iter().enumerate() {
        stack.push((i, BTreeSet::from([*core]), i));
    }
    while let Some((first, cores, last)) = stack.pop() {
        out.insert((elems[first].0.clone(), cores.clone()));
        for (j, (set, core)) in elems.iter().enumerate() {
            let (prev, _) = &elems[last];
            if prev.is_subset_of(set) && prev != set {
                let mut next = cores.clone();
                next.insert(*core);
                stack.push((first, next, j));
            }
        }
    }
    out.into_iter().collect()
}

/// (P1)-(P3) for candidate core `cand` of `set`, against precomputed chain
/// core unions.
fn candidate_serves(
    g: &Hypergraph,
    set: &VertexSet,
    cand: &VertexSet,
    chain_unions: &[VertexSet],
) -> bool {
    // (P3)
    if !set.is_disjoint(cand) {
        return false;
    }
    for chain_union in chain_unions {
        // (P2): candidate plus the chain cores induce a clique.
        let p2 = cand.union(chain_union);
        if !is_clique(g, &p2) {
            return false;
        }
        // (P1): every edge in S + candidate + chain cores meeting the
        // candidate is present in the host.
        let p1 = set.union(&p2);
        for e in ColexSubsets::new(p1.as_slice(), g.r()) {
            if e.iter().any(|&v| cand.contains(v)) && !g.has_edge(&e) {
                return false;
            }
        }
    }
    true
}

/// Runs the core discovery and assignment for host `g` and clique order `s`.
pub fn find_cores(g: &Hypergraph, s: usize) -> Result<CorePlan> {
    let r = g.r();
    let n = g.n();
    if r > MAX_UNIFORMITY {
        return Err(Error::InvalidParams(format!(
            "uniformity {r} exceeds the supported cap {MAX_UNIFORMITY}"
        )));
    }
    if s <= r {
        return Err(Error::InvalidParams(format!("need s > r (got s={s}, r={r})")));
    }
    let ell = s - r;
    if n < 3 * ell {
        return Err(Error::InvalidParams(format!(
            "need n >= 3*ell (got n={n}, ell={ell})"
        )));
    }
    let part = partition_blocks(n, ell)?;

    // C_0: first block inducing a clique (vacuous when ell < r).
    let c0_block = part
        .iter()
        .find(|(_, q)| is_clique(g, q))
        .map(|(i, _)| i)
        .ok_or(Error::NoCoreFound {
            set: VertexSet::empty(),
        })?;
    let c0 = part.block(c0_block).clone();

    let mut core_blocks: Vec<usize> = Vec::new();
    let mut next_block = 1usize;
    let mut assignment: BTreeMap<VertexSet, Assignment> = BTreeMap::new();

    let outside: Vec<usize> = (0..n).filter(|&v| !c0.contains(v)).collect();

    for size in 1..r {
        for raw in ColexSubsets::new(&outside, size) {
            let set = VertexSet::new(raw).expect("increasing");

            // Core-definability: a strictly smaller assigned set may already
            // absorb the remainder; record the colex-smallest such witness.
            let mut witness: Option<VertexSet> = None;
            for (sub, core_idx) in assigned_proper_subsets(&assignment, &set) {
                let core = if core_idx == 0 {
                    &c0
                } else {
                    part.block(core_blocks[core_idx - 1])
                };
                if set.difference(&sub).is_subset_of(core) {
                    let better = match &witness {
                        None => true,
                        Some(w) => cmp_colex(sub.as_slice(), w.as_slice()) == std::cmp::Ordering::Less,
                    };
                    if better {
                        witness = Some(sub);
                    }
                }
            }
            if let Some(w) = witness {
                assignment.insert(set, Assignment::NotDefinable { witness: w });
                continue;
            }

            // Chain core unions are stable during the candidate scan: they
            // only reference cores of already-assigned sets.
            let chain_unions: Vec<VertexSet> = chain_core_sets(&assignment, &set)
                .iter()
                .map(|cores| {
                    let parts: Vec<VertexSet> = cores
                        .iter()
                        .map(|&i| {
                            if i == 0 {
                                c0.clone()
                            } else {
                                part.block(core_blocks[i - 1]).clone()
                            }
                        })
                        .collect();
                    VertexSet::union_all(parts.iter())
                })
                .collect();

            let mut chosen: Option<usize> = None;
            let mut idx = 0usize;
            loop {
                if idx > core_blocks.len() {
                    // Materialize the next core in block order.
                    let mut found = None;
                    while next_block <= part.block_count() {
                        let b = next_block;
                        next_block += 1;
                        if b == c0_block {
                            continue;
                        }
                        if is_clique(g, &c0.union(part.block(b))) {
                            found = Some(b);
                            break;
                        }
                    }
                    match found {
                        Some(b) => core_blocks.push(b),
                        None => break,
                    }
                }
                let cand = if idx == 0 {
                    c0.clone()
                } else {
                    part.block(core_blocks[idx - 1]).clone()
                };
                if candidate_serves(g, &set, &cand, &chain_unions) {
                    chosen = Some(idx);
                    break;
                }
                idx += 1;
            }
            match chosen {
                Some(i) => {
                    assignment.insert(set, Assignment::Core(i));
                }
                None => return Err(Error::NoCoreFound { set }),
            }
        }
    }

    Ok(CorePlan {
        ell,
        c0_block,
        core_blocks,
        assignment,
        part,
    })
}

/// Builds the spark H from the plan: (E1) edges inside C_0, (E2) S plus a
/// core chunk, (E3) S plus a chunk meeting both the core and C_0. Every
/// emitted edge is checked against the host; absence means the plan
/// bookkeeping is wrong.
pub fn build_spark(g: &Hypergraph, plan: &CorePlan) -> Result<Hypergraph> {
    let r = g.r();
    let c0 = plan.c0();
    let mut h = Hypergraph::new(g.n(), r)?;

    fn add(g: &Hypergraph, h: &mut Hypergraph, edge: VertexSet, class: &str) -> Result<()> {
        debug_assert_eq!(edge.len(), g.r());
        if !g.has_edge(edge.as_slice()) {
            return Err(Error::IntegrityViolation(format!(
                "{class} edge {edge} absent from the host"
            )));
        }
        h.insert_edge(&edge)?;
        Ok(())
    }

    // (E1)
    if plan.ell >= r {
        for e in ColexSubsets::new(c0.as_slice(), r) {
            add(g, &mut h, VertexSet::new(e).expect("increasing"), "(E1)")?;
        }
    }

    for (set, assign) in &plan.assignment {
        let core_idx = match assign {
            Assignment::Core(i) => *i,
            Assignment::NotDefinable { .. } => continue,
        };
        let core = plan.core_vertices(core_idx);
        let chunk = r - set.len();
        // (E2)
        for c in ColexSubsets::new(core.as_slice(), chunk) {
            let edge = set.union(&VertexSet::new(c).expect("increasing"));
            add(g, &mut h, edge, "(E2)")?;
        }
        // (E3): the chunk is a union C' + C'_0 with both parts nonempty;
        // equivalently any chunk inside core + C_0 meeting both sides.
        let mixed = core.union(c0);
        for u in ColexSubsets::new(mixed.as_slice(), chunk) {
            let meets_core = u.iter().any(|&v| core.contains(v));
            let meets_c0 = u.iter().any(|&v| c0.contains(v));
            if meets_core && meets_c0 {
                let edge = set.union(&VertexSet::new(u).expect("increasing"));
                add(g, &mut h, edge, "(E3)")?;
            }
        }
    }
    Ok(h)
}

/// binom(n, r) - binom(n - (s - r), r): the construction's edge-count ceiling.
pub fn count_weak_upper(n: usize, r: usize, s: usize) -> Result<u64> {
    if !(r < s && s <= n) {
        return Err(Error::InvalidParams(format!(
            "need r < s <= n (got n={n}, r={r}, s={s})"
        )));
    }
    Ok(binomial(n as u64, r as u64) - binomial((n - (s - r)) as u64, r as u64))
}

/// Smallest 1-based block index usable as the auxiliary core for edge `e`:
/// for every defined S strictly inside e (off C_0) and every chain of defined
/// subsets below S, the block is disjoint from everything involved, extends
/// the relevant union to a clique, and all block-incident edges are present.
pub fn select_auxiliary_core(g: &Hypergraph, plan: &CorePlan, e: &VertexSet) -> Result<usize> {
    if e.len() != g.r() {
        return Err(Error::MalformedSubset(format!(
            "auxiliary cores anchor r-edges, got {e}"
        )));
    }
    let c0 = plan.c0();
    let s_e = e.difference(c0);

    // Defined subsets of e off C_0 (the empty set participates with C_0),
    // each with its own core and its chains below.
    type Obligation = (VertexSet, VertexSet, Vec<(VertexSet, BTreeSet<usize>)>);
    let mut obligations: Vec<Obligation> = Vec::new();
    let mut sets: Vec<VertexSet> = vec![VertexSet::empty()];
    for size in 1..=s_e.len().min(g.r() - 1) {
        for sub in ColexSubsets::new(s_e.as_slice(), size) {
            sets.push(VertexSet::new(sub).expect("increasing"));
        }
    }
    for set in sets {
        if let Some(core_idx) = plan.assigned_core(&set) {
            let cs = plan.core_vertices(core_idx).clone();
            let chains = chains_with_first(&plan.assignment, &set);
            obligations.push((set, cs, chains));
        }
    }

    'blocks: for (idx, q) in plan.partition().iter() {
        if !q.is_disjoint(e) {
            continue;
        }
        for (set, cs, chains) in &obligations {
            for (first, cores) in chains {
                let parts: Vec<VertexSet> = cores
                    .iter()
                    .map(|&i| plan.core_vertices(i).clone())
                    .collect();
                let chain_union = VertexSet::union_all(parts.iter());
                let fixed = set.union(cs).union(&chain_union);
                // (P-bar 3)
                if !fixed.is_disjoint(q) {
                    continue 'blocks;
                }
                // (P-bar 2): the chain's first element joins the clique.
                if !is_clique(g, &first.union(cs).union(q).union(&chain_union)) {
                    continue 'blocks;
                }
                // (P-bar 1)
                let joint = fixed.union(q);
                for f in ColexSubsets::new(joint.as_slice(), g.r()) {
                    if f.iter().any(|&v| q.contains(v)) && !g.has_edge(&f) {
                        continue 'blocks;
                    }
                }
            }
        }
        return Ok(idx);
    }
    Err(Error::BlockNotFound)
}

/// Structured activation of everything outside the spark: edges disjoint
/// from C_0 first, then edges meeting C_0, each anchored on C_0, an assigned
/// core, or the edge's auxiliary core, in the induction order on subset size.
/// Falls back with an error rather than using unstructured witnesses.
pub fn proof_trace_activation(
    g: &Hypergraph,
    plan: &CorePlan,
    h: &Hypergraph,
) -> Result<ActivationTrace> {
    let c0 = plan.c0();
    if !h.is_subhypergraph_of(g) {
        return Err(Error::InvalidParams(
            "spark must be a subhypergraph of the host".into(),
        ));
    }

    let mut current = h.clone();
    let mut trace = ActivationTrace::default();

    let missing: Vec<VertexSet> = g
        .edges()
        .into_iter()
        .filter(|e| !h.has_edge(e.as_slice()))
        .collect();
    let (outside, meeting): (Vec<_>, Vec<_>) = missing.into_iter().partition(|e| e.is_disjoint(c0));

    for (phase_meets_c0, targets) in [(false, outside), (true, meeting)] {
        for target in targets {
            if current.has_edge(target.as_slice()) {
                continue;
            }
            activate_target(g, plan, &mut current, &mut trace, &target, phase_meets_c0)?;
        }
    }

    if &current != g {
        return Err(Error::IntegrityViolation(
            "structured activation did not reach the host".into(),
        ));
    }
    Ok(trace)
}

fn activate_target(
    g: &Hypergraph,
    plan: &CorePlan,
    current: &mut Hypergraph,
    trace: &mut ActivationTrace,
    target: &VertexSet,
    phase_meets_c0: bool,
) -> Result<()> {
    let r = g.r();
    let c0 = plan.c0();
    let aux_block = select_auxiliary_core(g, plan, target).map_err(|_| Error::TraceFailed {
        edge: target.clone(),
        detail: "no auxiliary core qualifies".into(),
    })?;
    let aux = plan.partition().block(aux_block).clone();
    let s_e = target.difference(c0);

    // Bases: subsets of the target's off-C_0 part, by increasing size.
    let mut bases: Vec<VertexSet> = vec![VertexSet::empty()];
    for size in 1..=s_e.len() {
        for sub in ColexSubsets::new(s_e.as_slice(), size) {
            let sub = VertexSet::new(sub).expect("increasing");
            if &sub != target {
                bases.push(sub);
            }
        }
    }

    for base in &bases {
        let anchor = plan.assigned_core(base);
        // Pools: auxiliary core, plus C_0 in the C_0-meeting phase, plus
        // cores of chains of assigned sets strictly between base and target.
        let mut supersets: Vec<(VertexSet, usize)> = Vec::new();
        for size in (base.len() + 1)..=s_e.len() {
            for sub in ColexSubsets::new(s_e.as_slice(), size) {
                let sub = VertexSet::new(sub).expect("increasing");
                if &sub == target || !base.is_subset_of(&sub) {
                    continue;
                }
                if let Some(i) = plan.assigned_core(&sub) {
                    supersets.push((sub, i));
                }
            }
        }
        let mut core_unions: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut stack: Vec<(Option<usize>, BTreeSet<usize>)> = vec![(None, BTreeSet::new())];
        while let Some((last, cores)) = stack.pop() {
            core_unions.insert(cores.clone());
            for (i, (set, core)) in supersets.iter().enumerate() {
                let ok = match last {
                    None => true,
                    Some(j) => {
                        let (prev, _) = &supersets[j];
                        prev.is_subset_of(set) && prev != set
                    }
                };
                if ok {
                    let mut next = cores.clone();
                    next.insert(*core);
                    stack.push((Some(i), next));
                }
            }
        }

        for cores in core_unions {
            let mut pool = aux.clone();
            if phase_meets_c0 {
                pool = pool.union(c0);
            }
            for i in cores {
                pool = pool.union(plan.core_vertices(i));
            }
            let free: Vec<usize> = pool.iter().filter(|v| !base.contains(*v)).collect();
            if free.len() + base.len() < r {
                continue;
            }
            for ext in ColexSubsets::new(&free, r - base.len()) {
                let f = base.union(&VertexSet::new(ext).expect("increasing"));
                if &f == target || current.has_edge(f.as_slice()) || !g.has_edge(f.as_slice()) {
                    continue;
                }
                let core_idx = anchor.ok_or_else(|| Error::TraceFailed {
                    edge: target.clone(),
                    detail: format!("edge {f} expected in the spark (base not assigned)"),
                })?;
                let cs = plan.core_vertices(core_idx);
                if !f.is_disjoint(cs) {
                    return Err(Error::TraceFailed {
                        edge: target.clone(),
                        detail: format!("edge {f} expected in the spark (meets its core)"),
                    });
                }
                activate_step(current, trace, &f, &f.union(cs), target)?;
            }
        }
    }

    // The target closes a clique with its auxiliary core.
    let witness = target.union(&aux);
    activate_step(current, trace, target, &witness, target)
}

fn activate_step(
    current: &mut Hypergraph,
    trace: &mut ActivationTrace,
    edge: &VertexSet,
    witness: &VertexSet,
    target: &VertexSet,
) -> Result<()> {
    for sub in ColexSubsets::new(witness.as_slice(), current.r()) {
        if sub == edge.as_slice() {
            continue;
        }
        if !current.has_edge(&sub) {
            return Err(Error::TraceFailed {
                edge: target.clone(),
                detail: format!("witness {witness} for {edge} not ready: {sub:?} missing"),
            });
        }
    }
    current.insert_edge(edge)?;
    trace.steps.push(TraceStep {
        edge: edge.clone(),
        witness: witness.clone(),
    });
    Ok(())
}

/// A sampled check of the core-extension property: growing an assigned set by
/// vertices drawn from chain cores above it (or the auxiliary core of an
/// ambient edge) must not change the assigned core.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ExtensionReport {
    pub requested: usize,
    pub attempts: usize,
    pub checked: usize,
    pub violations: Vec<ExtensionViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionViolation {
    pub base: VertexSet,
    pub grown: VertexSet,
    pub expected_core: usize,
    pub found: String,
}

pub fn check_extension_property(
    g: &Hypergraph,
    plan: &CorePlan,
    samples: usize,
    seed: Seed,
) -> ExtensionReport {
    let mut report = ExtensionReport {
        requested: samples,
        ..Default::default()
    };
    if samples == 0 {
        return report;
    }
    let r = g.r();
    let c0 = plan.c0();
    let host_edges: Vec<VertexSet> = g
        .edges()
        .into_iter()
        .filter(|e| e.is_disjoint(c0))
        .collect();
    if host_edges.is_empty() {
        return report;
    }
    let mut rng = SplitMix64::new(seed);
    let max_attempts = samples * 60 + 100;
    while report.checked < samples && report.attempts < max_attempts {
        report.attempts += 1;
        let e = &host_edges[rng.next_below(host_edges.len())];
        let assigned = assigned_proper_subsets(&plan.assignment, e);
        let short: Vec<&(VertexSet, usize)> =
            assigned.iter().filter(|(s, _)| s.len() < r - 1).collect();
        if short.is_empty() {
            continue;
        }
        let (base, base_core) = short[rng.next_below(short.len())].clone();

        // Random chain of assigned supersets whose cores differ from the
        // base's core.
        let mut pool = VertexSet::empty();
        let mut cur = base.clone();
        loop {
            let exts: Vec<&(VertexSet, usize)> = assigned
                .iter()
                .filter(|(t, i)| cur.is_subset_of(t) && &cur != t && *i != base_core)
                .collect();
            if exts.is_empty() || rng.next_below(3) == 0 {
                break;
            }
            let (t, i) = exts[rng.next_below(exts.len())].clone();
            pool = pool.union(plan.core_vertices(i));
            cur = t;
        }
        if let Ok(aux_block) = select_auxiliary_core(g, plan, e) {
            pool = pool.union(plan.partition().block(aux_block));
        }
        let pool: Vec<usize> = pool
            .iter()
            .filter(|&v| !c0.contains(v) && !base.contains(v))
            .collect();
        if pool.is_empty() {
            continue;
        }
        let kmax = (r - 1 - base.len()).min(pool.len());
        if kmax == 0 {
            continue;
        }
        let k = 1 + rng.next_below(kmax);
        let grow = rng.sample_subset(&pool, k);
        let grown = base.union(&VertexSet::new(grow).expect("increasing"));

        report.checked += 1;
        match plan.assignment.get(&grown) {
            Some(Assignment::Core(i)) if *i == base_core => {}
            Some(Assignment::Core(i)) => report.violations.push(ExtensionViolation {
                base: base.clone(),
                grown,
                expected_core: base_core,
                found: format!("core {i}"),
            }),
            Some(Assignment::NotDefinable { witness }) => {
                report.violations.push(ExtensionViolation {
                    base: base.clone(),
                    grown,
                    expected_core: base_core,
                    found: format!("not definable (witness {witness})"),
                })
            }
            None => report.violations.push(ExtensionViolation {
                base: base.clone(),
                grown,
                expected_core: base_core,
                found: "missing from assignment".into(),
            }),
        }
    }
    report
}

/// Exhaustive structural validation of a plan; used by tests and the CLI.
pub fn validate_plan(g: &Hypergraph, plan: &CorePlan) -> Result<()> {
    let c0 = plan.c0();
    if !is_clique(g, c0) {
        return Err(Error::IntegrityViolation("C_0 is not a clique".into()));
    }
    for j in 1..plan.core_count() {
        let cj = plan.core_vertices(j);
        if !is_clique(g, &c0.union(cj)) {
            return Err(Error::IntegrityViolation(format!(
                "core {j} does not extend C_0 to a clique"
            )));
        }
    }
    for (s, a) in &plan.assignment {
        match a {
            Assignment::Core(i) => {
                if !s.is_disjoint(plan.core_vertices(*i)) {
                    return Err(Error::IntegrityViolation(format!("{s} meets its own core")));
                }
                for (sub, j) in assigned_proper_subsets(&plan.assignment, s) {
                    if j > *i {
                        return Err(Error::IntegrityViolation(format!(
                            "monotonicity broken: i({sub}) = {j} > i({s}) = {i}"
                        )));
                    }
                }
            }
            Assignment::NotDefinable { witness } => {
                let wcore = plan.assigned_core(witness).ok_or_else(|| {
                    Error::IntegrityViolation(format!("witness {witness} of {s} is not assigned"))
                })?;
                if !s.difference(witness).is_subset_of(plan.core_vertices(wcore)) {
                    return Err(Error::IntegrityViolation(format!(
                        "witness {witness} does not absorb {s}"
                    )));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bootstrap::is_weakly_saturated;
    use crate::hypergraph::contains_clique;
    use crate::randmodel::sample;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn complete_host_all_c0() {
        let g = Hypergraph::complete(12, 3).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        assert_eq!(plan.c0_block, 1);
        assert_eq!(plan.c0(), &vs(&[0, 1]));
        for (s, a) in &plan.assignment {
            assert_eq!(a, &Assignment::Core(0), "set {s} should take C_0");
        }
        validate_plan(&g, &plan).unwrap();
    }

    #[test]
    fn complete_host_spark_count_and_saturation() {
        let g = Hypergraph::complete(12, 3).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        let h = build_spark(&g, &plan).unwrap();
        assert_eq!(h.edge_count() as u64, count_weak_upper(12, 3, 5).unwrap());
        assert!(!contains_clique(&h, 5));
        assert!(is_weakly_saturated(&g, &h, 5).unwrap());
    }

    #[test]
    fn ell_one_degenerate_count() {
        // r=3, s=4: on the complete host the class count matches the formula.
        let g = Hypergraph::complete(10, 3).unwrap();
        let plan = find_cores(&g, 4).unwrap();
        assert_eq!(plan.ell, 1);
        let h = build_spark(&g, &plan).unwrap();
        assert_eq!(h.edge_count() as u64, count_weak_upper(10, 3, 4).unwrap());
        assert!(is_weakly_saturated(&g, &h, 4).unwrap());
    }

    #[test]
    fn ell_at_least_r_exercises_c0_edges() {
        // s = 7 with r = 3 gives 4-vertex cores, so (E1) is nonempty.
        let g = Hypergraph::complete(16, 3).unwrap();
        let plan = find_cores(&g, 7).unwrap();
        assert_eq!(plan.ell, 4);
        let h = build_spark(&g, &plan).unwrap();
        assert_eq!(h.edge_count() as u64, count_weak_upper(16, 3, 7).unwrap());
        assert!(is_weakly_saturated(&g, &h, 7).unwrap());
    }

    #[test]
    fn graph_case_r_two() {
        let g = Hypergraph::complete(8, 2).unwrap();
        let plan = find_cores(&g, 4).unwrap();
        let h = build_spark(&g, &plan).unwrap();
        assert_eq!(h.edge_count() as u64, count_weak_upper(8, 2, 4).unwrap());
        assert!(is_weakly_saturated(&g, &h, 4).unwrap());
    }

    #[test]
    fn empty_host_has_no_cores() {
        let g = Hypergraph::new(9, 3).unwrap();
        match find_cores(&g, 4) {
            Err(Error::NoCoreFound { .. }) => {}
            other => panic!("expected NoCoreFound, got {other:?}"),
        }
    }

    #[test]
    fn mutilated_host_skips_violating_core() {
        // Remove the edge v + Q_2 so block 2 fails (P1) for v, and the edge
        // v + C_0 so index 0 fails too; v must settle on a later core.
        let n = 12;
        let mut g = Hypergraph::complete(n, 3).unwrap();
        let part = partition_blocks(n, 2).unwrap();
        let q2 = part.block(2).clone(); // {2, 3}
        let v = 6usize;
        g.remove_edge(&vs(&[2, 3, v])).unwrap();
        g.remove_edge(&vs(&[0, 1, v])).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        validate_plan(&g, &plan).unwrap();
        let assigned = plan.assigned_core(&vs(&[v])).unwrap();
        assert!(assigned > 0, "index 0 must fail for v");
        assert!(
            plan.core_vertices(assigned) != &q2,
            "v's core must not be the mutilated block"
        );
    }

    #[test]
    fn count_weak_upper_examples() {
        assert_eq!(count_weak_upper(40, 3, 5).unwrap(), 1444);
        assert_eq!(count_weak_upper(5, 3, 4).unwrap(), 6);
        for r in 2..6usize {
            for s in (r + 1)..=10 {
                for n in s..=25 {
                    assert_eq!(
                        count_weak_upper(n, r, s).unwrap(),
                        crate::hypergraph::wsat_complete_formula(n, r, s).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn random_host_pipeline_dense() {
        let mut successes = 0;
        for seed in 0..6u64 {
            let g = sample(18, 3, 0.97, seed).unwrap();
            let plan = match find_cores(&g, 5) {
                Ok(p) => p,
                Err(Error::NoCoreFound { .. }) => continue,
                Err(e) => panic!("unexpected: {e}"),
            };
            validate_plan(&g, &plan).unwrap();
            let h = build_spark(&g, &plan).unwrap();
            assert!(h.edge_count() as u64 <= count_weak_upper(18, 3, 5).unwrap());
            assert!(!contains_clique(&h, 5));
            assert!(is_weakly_saturated(&g, &h, 5).unwrap());
            successes += 1;
        }
        assert!(successes >= 3, "too few dense hosts constructed");
    }

    #[test]
    fn auxiliary_core_on_complete_host() {
        let g = Hypergraph::complete(14, 3).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        // First block disjoint from e union C_0 qualifies.
        let e = vs(&[4, 5, 6]);
        let idx = select_auxiliary_core(&g, &plan, &e).unwrap();
        assert_eq!(idx, 2);
        let e2 = vs(&[2, 3, 4]);
        let idx2 = select_auxiliary_core(&g, &plan, &e2).unwrap();
        assert_eq!(idx2, 4);
    }

    #[test]
    fn auxiliary_core_rejects_nonadjacent_block() {
        // Blocks {6,7} and {8,9} each lose one edge into e = {2,3,4}; both
        // fail the block-incidence condition and the auxiliary core moves on
        // to {10,11}.
        let n = 14;
        let mut g = Hypergraph::complete(n, 3).unwrap();
        let e = vs(&[2, 3, 4]);
        g.remove_edge(&vs(&[2, 6, 7])).unwrap();
        g.remove_edge(&vs(&[2, 8, 9])).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        let idx = select_auxiliary_core(&g, &plan, &e).unwrap();
        assert_eq!(idx, 6);
    }

    #[test]
    fn proof_trace_on_complete_host() {
        let n = 12;
        let g = Hypergraph::complete(n, 3).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        let h = build_spark(&g, &plan).unwrap();
        let trace = proof_trace_activation(&g, &plan, &h).unwrap();
        assert_eq!(trace.len() as u64, binomial(n as u64 - 2, 3));
        trace.replay_check(&h, 5).unwrap();
        for step in &trace.steps {
            assert_eq!(step.witness.len(), 5);
        }
    }

    #[test]
    fn proof_trace_empty_when_spark_is_host() {
        let g = Hypergraph::complete(10, 3).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        let trace = proof_trace_activation(&g, &plan, &g).unwrap();
        assert!(trace.is_empty());
    }

    #[test]
    fn extension_property_complete_host() {
        let g = Hypergraph::complete(12, 3).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        let report = check_extension_property(&g, &plan, 200, 9);
        assert_eq!(report.checked, 200);
        assert!(report.violations.is_empty());
        let none = check_extension_property(&g, &plan, 0, 9);
        assert_eq!(none.checked, 0);
        assert!(none.violations.is_empty());
    }

    #[test]
    fn plan_json_shape() {
        let g = Hypergraph::complete(8, 3).unwrap();
        let plan = find_cores(&g, 5).unwrap();
        let json = plan.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["ell"], 2);
        assert_eq!(parsed["c0"], 1);
        assert!(!parsed["assignment"].as_array().unwrap().is_empty());
        assert!(parsed["assignment"][0]["S"].is_array());
    }

    #[test]
    fn uniformity_cap_enforced() {
        let g = Hypergraph::complete(24, 7).unwrap();
        assert!(matches!(find_cores(&g, 8), Err(Error::InvalidParams(_))));
    }
}
