//! The K_s^r bootstrap activation engine: completion witnesses, closure, and
//! the weak/strong saturation verifiers.
//!
//! Closure scheduling is batch-synchronous: each sweep evaluates every
//! missing edge against the sweep-start hypergraph and applies all additions
//! at once. The final edge set is schedule-independent; the recorded trace is
//! not, so the sweep order is part of the contract (colex by default).

use serde::{Deserialize, Serialize};

use crate::combinatorics::ColexSubsets;
use crate::error::{Error, Result};
use crate::hypergraph::{contains_clique, Hypergraph, VertexSet};

/// One activation step: `edge` was added because `witness` (an s-set
/// containing it) had every other r-subset already present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub edge: VertexSet,
    pub witness: VertexSet,
}

/// An ordered list of activation steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivationTrace {
    pub steps: Vec<TraceStep>,
}

impl ActivationTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Edge set covered by the trace.
    pub fn edges(&self) -> Vec<VertexSet> {
        self.steps.iter().map(|s| s.edge.clone()).collect()
    }

    /// Replays the trace against the spark it was emitted for, checking the
    /// step invariant: at step i, edge is inside witness, the witness has
    /// size s, and every r-subset of the witness except the edge is present
    /// in spark plus the previously replayed edges.
    pub fn replay_check(&self, spark: &Hypergraph, s: usize) -> Result<()> {
        let mut current = spark.clone();
        for (i, step) in self.steps.iter().enumerate() {
            if step.witness.len() != s || !step.edge.is_subset_of(&step.witness) {
                return Err(Error::IntegrityViolation(format!(
                    "step {i}: witness {} does not certify edge {}",
                    step.witness, step.edge
                )));
            }
            for sub in ColexSubsets::new(step.witness.as_slice(), current.r()) {
                if sub == step.edge.as_slice() {
                    continue;
                }
                if !current.has_edge(&sub) {
                    return Err(Error::IntegrityViolation(format!(
                        "step {i}: required edge {sub:?} absent at its turn"
                    )));
                }
            }
            if !current.insert_edge(&step.edge)? {
                return Err(Error::IntegrityViolation(format!(
                    "step {i}: edge {} already present",
                    step.edge
                )));
            }
        }
        Ok(())
    }

    /// Line-oriented text form: "edge <ids> witness <ids>" per step.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let e: Vec<String> = step.edge.iter().map(|v| v.to_string()).collect();
            let w: Vec<String> = step.witness.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("edge {} witness {}\n", e.join(" "), w.join(" ")));
        }
        out
    }
}

/// The colex-smallest s-set W containing e such that every r-subset of W
/// except e is an edge of h, or None. Candidates are enumerated as
/// (s-r)-extensions of e in colex order, which yields colex order on W
/// because e is common to all candidates.
pub fn completes(h: &Hypergraph, e: &VertexSet, s: usize) -> Option<VertexSet> {
    debug_assert_eq!(e.len(), h.r());
    debug_assert!(!h.has_edge(e.as_slice()));
    let rest: Vec<usize> = (0..h.n()).filter(|&v| !e.contains(v)).collect();
    'cand: for ext in ColexSubsets::new(&rest, s - h.r()) {
        let w = e.union(&VertexSet::new(ext).expect("increasing"));
        for sub in ColexSubsets::new(w.as_slice(), h.r()) {
            if sub == e.as_slice() {
                continue;
            }
            if !h.has_edge(&sub) {
                continue 'cand;
            }
        }
        return Some(w);
    }
    None
}

/// Sweep direction for `closure_with`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepOrder {
    Colex,
    ReverseColex,
}

/// Fixpoint of adding every completable missing edge, sweeping in the given
/// order until a full pass adds nothing. The resulting hypergraph is the same
/// for any order; the trace reflects the chosen schedule.
pub fn closure_with(
    g: &Hypergraph,
    h: &Hypergraph,
    s: usize,
    order: SweepOrder,
) -> Result<(Hypergraph, ActivationTrace)> {
    if !h.is_subhypergraph_of(g) {
        return Err(Error::InvalidParams(
            "spark must be a subhypergraph of the host".into(),
        ));
    }
    if s <= g.r() {
        return Err(Error::InvalidParams(format!(
            "need s > r (got s={s}, r={})",
            g.r()
        )));
    }
    let mut current = h.clone();
    let mut trace = ActivationTrace::default();
    let mut missing: Vec<VertexSet> = g
        .edges()
        .into_iter()
        .filter(|e| !current.has_edge(e.as_slice()))
        .collect();
    if order == SweepOrder::ReverseColex {
        missing.reverse();
    }
    loop {
        // Evaluate all candidates against the sweep-start hypergraph, then
        // apply the batch.
        let mut additions: Vec<TraceStep> = Vec::new();
        for e in &missing {
            if let Some(witness) = completes(&current, e, s) {
                additions.push(TraceStep {
                    edge: e.clone(),
                    witness,
                });
            }
        }
        if additions.is_empty() {
            break;
        }
        for step in &additions {
            current.insert_edge(&step.edge)?;
        }
        missing.retain(|e| !current.has_edge(e.as_slice()));
        trace.steps.extend(additions);
    }
    Ok((current, trace))
}

/// Closure under colex sweeps.
pub fn closure(g: &Hypergraph, h: &Hypergraph, s: usize) -> Result<(Hypergraph, ActivationTrace)> {
    closure_with(g, h, s, SweepOrder::Colex)
}

/// H is weakly K_s^r-saturated in G: K_s^r-free and its closure in G is G.
pub fn is_weakly_saturated(g: &Hypergraph, h: &Hypergraph, s: usize) -> Result<bool> {
    if contains_clique(h, s) {
        return Ok(false);
    }
    let (closed, _) = closure(g, h, s)?;
    Ok(&closed == g)
}

/// H is strongly K_s^r-saturated in G: K_s^r-free and every missing G-edge
/// completes a copy immediately.
pub fn is_strongly_saturated(g: &Hypergraph, h: &Hypergraph, s: usize) -> Result<bool> {
    if !h.is_subhypergraph_of(g) {
        return Err(Error::InvalidParams(
            "spark must be a subhypergraph of the host".into(),
        ));
    }
    if contains_clique(h, s) {
        return Ok(false);
    }
    for e in g.edges() {
        if !h.has_edge(e.as_slice()) && completes(h, &e, s).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::unrank_edge;
    use crate::hypergraph::EdgeId;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn completes_examples() {
        let mut h = Hypergraph::complete(4, 3).unwrap();
        h.remove_edge(&vs(&[0, 1, 2])).unwrap();
        assert_eq!(completes(&h, &vs(&[0, 1, 2]), 4), Some(vs(&[0, 1, 2, 3])));

        let empty = Hypergraph::new(6, 3).unwrap();
        assert_eq!(completes(&empty, &vs(&[1, 2, 5]), 4), None);

        // All edges of K_5^3 meeting vertex 4.
        let mut star = Hypergraph::new(5, 3).unwrap();
        for e in Hypergraph::complete(5, 3).unwrap().edges() {
            if e.contains(4) {
                star.insert_edge(&e).unwrap();
            }
        }
        assert_eq!(completes(&star, &vs(&[0, 1, 2]), 4), Some(vs(&[0, 1, 2, 4])));
    }

    #[test]
    fn closure_examples() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let mut h = g.clone();
        h.remove_edge(&vs(&[1, 2, 3])).unwrap();
        let (closed, trace) = closure(&g, &h, 4).unwrap();
        assert_eq!(closed, g);
        assert_eq!(trace.len(), 1);
        trace.replay_check(&h, 4).unwrap();

        // Two edges cannot bootstrap K_4^3.
        let mut h2 = Hypergraph::new(4, 3).unwrap();
        h2.insert_edge(&vs(&[0, 1, 2])).unwrap();
        h2.insert_edge(&vs(&[0, 1, 3])).unwrap();
        let (closed2, trace2) = closure(&g, &h2, 4).unwrap();
        assert_eq!(closed2, h2);
        assert!(trace2.is_empty());

        // Nothing missing.
        let (closed3, trace3) = closure(&g, &g, 4).unwrap();
        assert_eq!(closed3, g);
        assert!(trace3.is_empty());
    }

    #[test]
    fn weak_saturation_examples() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let mut spark = g.clone();
        spark.remove_edge(&vs(&[0, 1, 2])).unwrap();
        assert!(is_weakly_saturated(&g, &spark, 4).unwrap());
        assert!(!is_weakly_saturated(&g, &g, 4).unwrap()); // spark contains K_4^3
    }

    #[test]
    fn strong_saturation_examples() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let mut spark = g.clone();
        spark.remove_edge(&vs(&[0, 2, 3])).unwrap();
        assert!(is_strongly_saturated(&g, &spark, 4).unwrap());

        let k53 = Hypergraph::complete(5, 3).unwrap();
        let empty = Hypergraph::new(5, 3).unwrap();
        assert!(!is_strongly_saturated(&k53, &empty, 4).unwrap());
    }

    #[test]
    fn closure_monotone_and_idempotent_small() {
        let g = crate::randmodel::sample(9, 3, 0.6, 11).unwrap();
        let mut h1 = Hypergraph::new(9, 3).unwrap();
        let mut h2 = Hypergraph::new(9, 3).unwrap();
        for (i, e) in g.edges().iter().enumerate() {
            if i % 3 == 0 {
                h1.insert_edge(e).unwrap();
            }
            if i % 3 != 2 {
                h2.insert_edge(e).unwrap();
            }
        }
        let (c1, _) = closure(&g, &h1, 4).unwrap();
        let (c2, _) = closure(&g, &h2, 4).unwrap();
        assert!(c1.is_subhypergraph_of(&c2));
        let (c1again, t) = closure(&g, &c1, 4).unwrap();
        assert_eq!(c1again, c1);
        assert!(t.is_empty());
    }

    #[test]
    fn sweep_order_same_fixpoint() {
        for seed in 0..20u64 {
            let g = crate::randmodel::sample(8, 3, 0.55, seed).unwrap();
            let mut h = Hypergraph::new(8, 3).unwrap();
            for (i, e) in g.edges().iter().enumerate() {
                if (seed as usize + i).is_multiple_of(2) {
                    h.insert_edge(e).unwrap();
                }
            }
            let (a, ta) = closure_with(&g, &h, 4, SweepOrder::Colex).unwrap();
            let (b, tb) = closure_with(&g, &h, 4, SweepOrder::ReverseColex).unwrap();
            assert_eq!(a, b);
            ta.replay_check(&h, 4).unwrap();
            tb.replay_check(&h, 4).unwrap();
        }
    }

    #[test]
    fn trace_text_format() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let mut h = g.clone();
        h.remove_edge(&unrank_edge(4, 3, EdgeId(0)).unwrap()).unwrap();
        let (_, trace) = closure(&g, &h, 4).unwrap();
        assert_eq!(trace.to_text(), "edge 0 1 2 witness 0 1 2 3\n");
    }
}
