//! Exact brute-force minimums for weak and strong saturation.
//!
//! These oracles are deliberately independent of the sweep-based closure in
//! `bootstrap`: candidate sparks are edge-index bitmasks over the host's edge
//! list, cliques are precomputed as mask requirements, and the closure
//! fixpoint runs on masks. Subsets are searched in increasing size and, within
//! a size, in colex order of the edge-id tuple, so the first hit is the
//! canonical witness.

use crate::combinatorics::{binomial, ColexSubsets};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Default cap on host edges; exhaustive search is exponential.
pub const DEFAULT_BUDGET: usize = 22;

struct MaskEngine {
    /// Edge masks of every s-clique of the host.
    clique_masks: Vec<u64>,
    /// For each edge index, the masks of "all other edges of some clique
    /// through it": the edge activates iff one of these is covered.
    witnesses: Vec<Vec<u64>>,
    full: u64,
    m: usize,
}

impl MaskEngine {
    fn build(g: &Hypergraph, s: usize) -> MaskEngine {
        let edges = g.edges();
        let m = edges.len();
        let index_of = |e: &[usize]| -> Option<usize> {
            edges.iter().position(|x| x.as_slice() == e)
        };
        // Enumerate s-cliques by extending partial cliques over vertices of
        // sufficient degree.
        let min_deg = binomial(s as u64 - 1, g.r() as u64 - 1) as usize;
        let deg = g.degrees();
        let candidates: Vec<usize> = (0..g.n()).filter(|&v| deg[v] >= min_deg).collect();
        let mut cliques: Vec<VertexSet> = Vec::new();
        let mut partial: Vec<usize> = Vec::new();
        collect_cliques(g, &candidates, 0, &mut partial, s, &mut cliques);

        let mut clique_masks = Vec::with_capacity(cliques.len());
        let mut witnesses: Vec<Vec<u64>> = vec![Vec::new(); m];
        for w in &cliques {
            let mut mask = 0u64;
            let mut members: Vec<usize> = Vec::new();
            for sub in ColexSubsets::new(w.as_slice(), g.r()) {
                let idx = index_of(&sub).expect("clique edge is a host edge");
                mask |= 1 << idx;
                members.push(idx);
            }
            clique_masks.push(mask);
            for idx in members {
                witnesses[idx].push(mask & !(1 << idx));
            }
        }
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        MaskEngine {
            clique_masks,
            witnesses,
            full,
            m,
        }
    }

    fn is_free(&self, mask: u64) -> bool {
        self.clique_masks.iter().all(|&c| c & !mask != 0)
    }

    fn closure(&self, mask: u64) -> u64 {
        let mut cur = mask;
        loop {
            let mut next = cur;
            for i in 0..self.m {
                if next & (1 << i) == 0 && self.witnesses[i].iter().any(|&w| w & !cur == 0) {
                    next |= 1 << i;
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    fn weakly_saturated(&self, mask: u64) -> bool {
        self.is_free(mask) && self.closure(mask) == self.full
    }

    fn strongly_saturated(&self, mask: u64) -> bool {
        if !self.is_free(mask) {
            return false;
        }
        for i in 0..self.m {
            if mask & (1 << i) == 0 && !self.witnesses[i].iter().any(|&w| w & !mask == 0) {
                return false;
            }
        }
        true
    }
}

fn collect_cliques(
    g: &Hypergraph,
    candidates: &[usize],
    from: usize,
    partial: &mut Vec<usize>,
    s: usize,
    out: &mut Vec<VertexSet>,
) {
    if partial.len() == s {
        out.push(VertexSet::new(partial.clone()).expect("increasing"));
        return;
    }
    let need = s - partial.len();
    for i in from..candidates.len() {
        if candidates.len() - i < need {
            return;
        }
        let v = candidates[i];
        let ok = if partial.len() + 1 < g.r() {
            true
        } else {
            ColexSubsets::new(partial, g.r() - 1).all(|mut sub| {
                sub.push(v);
                g.has_edge(&sub)
            })
        };
        if ok {
            partial.push(v);
            collect_cliques(g, candidates, i + 1, partial, s, out);
            partial.pop();
        }
    }
}

/// Gosper's hack: next larger integer with the same popcount.
fn next_same_popcount(v: u64) -> Option<u64> {
    if v == 0 {
        return None;
    }
    let c = v & v.wrapping_neg();
    let r = v + c;
    if r == 0 {
        return None;
    }
    Some(r | (((v ^ r) / c) >> 2))
}

fn reconstruct(g: &Hypergraph, mask: u64) -> Hypergraph {
    let edges = g.edges();
    let mut h = Hypergraph::new(g.n(), g.r()).expect("same params");
    for (i, e) in edges.iter().enumerate() {
        if mask & (1 << i) != 0 {
            h.insert_sorted(e.as_slice());
        }
    }
    h
}

fn min_search<F: Fn(&MaskEngine, u64) -> bool>(
    g: &Hypergraph,
    s: usize,
    budget: usize,
    check: F,
) -> Result<(usize, Hypergraph)> {
    let m = g.edge_count();
    if m > budget || m > 63 {
        return Err(Error::TooLarge { edges: m, budget });
    }
    if s <= g.r() {
        return Err(Error::InvalidParams(format!(
            "need s > r (got s={s}, r={})",
            g.r()
        )));
    }
    let engine = MaskEngine::build(g, s);
    for k in 0..=m {
        // k-subsets of edge indices in colex order = increasing mask order.
        let mut mask = if k == 0 { 0u64 } else { (1u64 << k) - 1 };
        loop {
            if check(&engine, mask) {
                return Ok((k, reconstruct(g, mask)));
            }
            if k == 0 {
                break;
            }
            match next_same_popcount(mask) {
                Some(next) if next <= engine.full => mask = next,
                _ => break,
            }
        }
    }
    unreachable!("every host has a saturated subhypergraph, so some k <= m hits")
}

/// Minimum size and canonical witness of a weakly K_s^r-saturated spark in g.
pub fn min_wsat_exhaustive(
    g: &Hypergraph,
    s: usize,
    budget: usize,
) -> Result<(usize, Hypergraph)> {
    min_search(g, s, budget, |e, m| e.weakly_saturated(m))
}

/// Minimum size and canonical witness of a strongly K_s^r-saturated spark in g.
pub fn min_sat_exhaustive(g: &Hypergraph, s: usize, budget: usize) -> Result<(usize, Hypergraph)> {
    min_search(g, s, budget, |e, m| e.strongly_saturated(m))
}
