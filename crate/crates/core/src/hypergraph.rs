//! Canonical r-uniform hypergraph representation and clique machinery.
//!
//! Vertices are 0-based integers 0..n-1. Edges are strictly increasing
//! r-tuples, identified with their colex rank in [0, binom(n, r)). Storage is
//! a dense bitset over colex ranks while binom(n, r) <= 2^26 and a sorted set
//! of canonical tuples beyond that; behavior is identical either way.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, colex_rank, colex_unrank, ColexSubsets};
use crate::error::{Error, Result};

/// A strictly increasing list of vertex ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Builds a set from members, validating strict increase (no duplicates).
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedSubset(format!(
                "members not strictly increasing: {members:?}"
            )));
        }
        Ok(VertexSet(members))
    }

    /// Builds a set from members in any order, sorting and rejecting duplicates.
    pub fn from_unsorted(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        Self::new(members)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    /// Union of many sets.
    pub fn union_all<'a, I: IntoIterator<Item = &'a VertexSet>>(sets: I) -> VertexSet {
        let mut v: Vec<usize> = sets.into_iter().flat_map(|s| s.iter()).collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Colex rank of an edge within the binom(n, r) edge space of K_n^r.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u64);

/// Colex rank of an r-subset of 0..n-1 after validation.
pub fn rank_edge(n: usize, r: usize, e: &VertexSet) -> Result<EdgeId> {
    if e.len() != r {
        return Err(Error::MalformedSubset(format!(
            "expected {r} vertices, got {}",
            e.len()
        )));
    }
    if let Some(&last) = e.as_slice().last() {
        if last >= n {
            return Err(Error::MalformedSubset(format!(
                "vertex {last} out of range for n={n}"
            )));
        }
    }
    Ok(EdgeId(colex_rank(e.as_slice())))
}

/// Inverse of `rank_edge`.
pub fn unrank_edge(n: usize, r: usize, id: EdgeId) -> Result<VertexSet> {
    let max = binomial(n as u64, r as u64);
    if id.0 >= max {
        return Err(Error::RankOutOfRange { rank: id.0, max });
    }
    Ok(VertexSet(colex_unrank(r, id.0)))
}

const DENSE_LIMIT: u64 = 1 << 26;

#[derive(Clone, PartialEq, Eq)]
enum EdgeStore {
    /// Bitset over colex ranks.
    Dense(Vec<u64>),
    /// Edges keyed by reversed tuple, so the BTree order is colex order.
    Sparse(std::collections::BTreeSet<Vec<usize>>),
}

/// An r-uniform hypergraph on vertices 0..n-1.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edge_count: usize,
    store: EdgeStore,
    /// Pascal rows binom(v, k) for v <= n, k <= r; rank lookups are hot.
    pascal: Vec<u64>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.r == other.r
            && self.edge_count == other.edge_count
            && self.store == other.store
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Empty hypergraph. Requires 2 <= r <= n.
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r < 2 || r > n {
            return Err(Error::InvalidParams(format!(
                "uniformity must satisfy 2 <= r <= n (got n={n}, r={r})"
            )));
        }
        let total = binomial(n as u64, r as u64);
        let store = if total <= DENSE_LIMIT {
            EdgeStore::Dense(vec![0u64; (total as usize).div_ceil(64)])
        } else {
            EdgeStore::Sparse(std::collections::BTreeSet::new())
        };
        let mut pascal = vec![0u64; (n + 1) * (r + 1)];
        for v in 0..=n {
            for k in 0..=r {
                pascal[v * (r + 1) + k] = binomial(v as u64, k as u64);
            }
        }
        Ok(Hypergraph {
            n,
            r,
            edge_count: 0,
            store,
            pascal,
        })
    }

    /// Colex rank via the cached Pascal rows; `e` must be canonical.
    #[inline]
    fn rank_in(&self, e: &[usize]) -> u64 {
        let mut rank = 0u64;
        for (i, &c) in e.iter().enumerate() {
            rank += self.pascal[c * (self.r + 1) + i + 1];
        }
        rank
    }

    /// The complete hypergraph K_n^r.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        let mut h = Self::new(n, r)?;
        match &mut h.store {
            EdgeStore::Dense(bits) => {
                let total = binomial(n as u64, r as u64);
                for rank in 0..total {
                    bits[(rank / 64) as usize] |= 1 << (rank % 64);
                }
                h.edge_count = total as usize;
            }
            EdgeStore::Sparse(_) => {
                let verts: Vec<usize> = (0..n).collect();
                for e in ColexSubsets::new(&verts, r) {
                    h.insert_sorted(&e);
                }
            }
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Total number of possible edges, binom(n, r).
    pub fn capacity(&self) -> u64 {
        binomial(self.n as u64, self.r as u64)
    }

    fn check_edge(&self, e: &[usize]) -> Result<()> {
        if e.len() != self.r || e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedSubset(format!(
                "not a canonical {}-edge: {e:?}",
                self.r
            )));
        }
        if let Some(&last) = e.last() {
            if last >= self.n {
                return Err(Error::MalformedSubset(format!(
                    "vertex {last} out of range for n={}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Inserts a canonical edge; returns true if it was new.
    pub fn insert_edge(&mut self, e: &VertexSet) -> Result<bool> {
        self.check_edge(e.as_slice())?;
        Ok(self.insert_sorted(e.as_slice()))
    }

    pub(crate) fn insert_sorted(&mut self, e: &[usize]) -> bool {
        let rank = self.rank_in(e);
        let fresh = match &mut self.store {
            EdgeStore::Dense(bits) => {
                let (w, b) = ((rank / 64) as usize, rank % 64);
                let fresh = bits[w] & (1 << b) == 0;
                bits[w] |= 1 << b;
                fresh
            }
            EdgeStore::Sparse(set) => {
                let mut key: Vec<usize> = e.to_vec();
                key.reverse();
                set.insert(key)
            }
        };
        if fresh {
            self.edge_count += 1;
        }
        fresh
    }

    /// Removes a canonical edge; returns true if it was present.
    pub fn remove_edge(&mut self, e: &VertexSet) -> Result<bool> {
        self.check_edge(e.as_slice())?;
        let rank = self.rank_in(e.as_slice());
        let hit = match &mut self.store {
            EdgeStore::Dense(bits) => {
                let (w, b) = ((rank / 64) as usize, rank % 64);
                let hit = bits[w] & (1 << b) != 0;
                bits[w] &= !(1 << b);
                hit
            }
            EdgeStore::Sparse(set) => {
                let mut key: Vec<usize> = e.as_slice().to_vec();
                key.reverse();
                set.remove(&key)
            }
        };
        if hit {
            self.edge_count -= 1;
        }
        Ok(hit)
    }

    /// Membership query on a sorted r-tuple. Out-of-range tuples are absent.
    pub fn has_edge(&self, e: &[usize]) -> bool {
        if e.len() != self.r || e.last().is_some_and(|&v| v >= self.n) {
            return false;
        }
        match &self.store {
            EdgeStore::Dense(bits) => {
                let rank = self.rank_in(e);
                bits[(rank / 64) as usize] & (1 << (rank % 64)) != 0
            }
            EdgeStore::Sparse(set) => {
                let mut key: Vec<usize> = e.to_vec();
                key.reverse();
                set.contains(&key)
            }
        }
    }

    pub(crate) fn insert_rank(&mut self, rank: u64) {
        match &mut self.store {
            EdgeStore::Dense(bits) => {
                let (w, b) = ((rank / 64) as usize, rank % 64);
                if bits[w] & (1 << b) == 0 {
                    bits[w] |= 1 << b;
                    self.edge_count += 1;
                }
            }
            EdgeStore::Sparse(_) => {
                let e = colex_unrank(self.r, rank);
                self.insert_sorted(&e);
            }
        }
    }

    /// Edges in colex-rank order.
    pub fn edges(&self) -> Vec<VertexSet> {
        match &self.store {
            EdgeStore::Dense(bits) => {
                let mut out = Vec::with_capacity(self.edge_count);
                for (w, &word) in bits.iter().enumerate() {
                    let mut bitset = word;
                    while bitset != 0 {
                        let b = bitset.trailing_zeros() as u64;
                        let rank = w as u64 * 64 + b;
                        out.push(VertexSet(colex_unrank(self.r, rank)));
                        bitset &= bitset - 1;
                    }
                }
                out
            }
            EdgeStore::Sparse(set) => set
                .iter()
                .map(|rev| {
                    let mut e = rev.clone();
                    e.reverse();
                    VertexSet(e)
                })
                .collect(),
        }
    }

    /// True iff every edge of `self` is an edge of `other`.
    pub fn is_subhypergraph_of(&self, other: &Hypergraph) -> bool {
        if self.n != other.n || self.r != other.r {
            return false;
        }
        if let (EdgeStore::Dense(a), EdgeStore::Dense(b)) = (&self.store, &other.store) {
            return a.iter().zip(b.iter()).all(|(x, y)| x & !y == 0);
        }
        self.edges().iter().all(|e| other.has_edge(e.as_slice()))
    }

    /// Hypergraph on the same vertex space keeping only edges inside `keep`.
    pub fn induced(&self, keep: &VertexSet) -> Hypergraph {
        let mut h = Hypergraph::new(self.n, self.r).expect("same params");
        for e in self.edges() {
            if e.as_slice().iter().all(|&v| keep.contains(v)) {
                h.insert_sorted(e.as_slice());
            }
        }
        h
    }

    /// Number of edges containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for e in self.edges() {
            for v in e.iter() {
                deg[v] += 1;
            }
        }
        deg
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hypergraph(n={}, r={}, m={})",
            self.n, self.r, self.edge_count
        )
    }
}

/// True iff every r-subset of `w` is an edge of `h`; vacuously true when
/// |w| < r, which is what makes the constructions degenerate correctly for
/// small cores.
pub fn is_clique(h: &Hypergraph, w: &VertexSet) -> bool {
    if w.len() < h.r() {
        return true;
    }
    ColexSubsets::new(w.as_slice(), h.r()).all(|e| h.has_edge(&e))
}

/// True iff some s-subset of the vertices induces K_s^r in `h`. Candidates
/// are pruned by the edge-degree bound (a clique vertex lies in at least
/// binom(s-1, r-1) edges) and by extending only partial sets that are already
/// cliques; the result equals exhaustive s-subset enumeration.
pub fn contains_clique(h: &Hypergraph, s: usize) -> bool {
    let r = h.r();
    assert!(s >= r, "clique order must be at least the uniformity");
    if (h.edge_count() as u64) < binomial(s as u64, r as u64) {
        return false;
    }
    let min_deg = binomial(s as u64 - 1, r as u64 - 1) as usize;
    let deg = h.degrees();
    let candidates: Vec<usize> = (0..h.n()).filter(|&v| deg[v] >= min_deg).collect();
    if candidates.len() < s {
        return false;
    }
    let mut partial = Vec::with_capacity(s);
    extend_clique(h, &candidates, 0, &mut partial, s)
}

fn extend_clique(
    h: &Hypergraph,
    candidates: &[usize],
    from: usize,
    partial: &mut Vec<usize>,
    s: usize,
) -> bool {
    if partial.len() == s {
        return true;
    }
    let need = s - partial.len();
    for i in from..candidates.len() {
        if candidates.len() - i < need {
            return false;
        }
        let v = candidates[i];
        if compatible(h, partial, v) {
            partial.push(v);
            if extend_clique(h, candidates, i + 1, partial, s) {
                return true;
            }
            partial.pop();
        }
    }
    false
}

/// All r-subsets of partial+{v} that contain v must be edges.
fn compatible(h: &Hypergraph, partial: &[usize], v: usize) -> bool {
    let r = h.r();
    if partial.len() + 1 < r {
        return true;
    }
    ColexSubsets::new(partial, r - 1).all(|mut sub| {
        sub.push(v);
        // partial is increasing and v exceeds all of it
        h.has_edge(&sub)
    })
}

/// Exact number of t-subsets W with {u, v} inside W and is_clique(h, W).
pub fn count_cliques_through_pair(h: &Hypergraph, t: usize, u: usize, v: usize) -> u64 {
    assert!(t >= h.r(), "clique order must be at least the uniformity");
    assert!(u != v, "vertices must be distinct");
    let pair = VertexSet::from_unsorted(vec![u, v]).expect("distinct");
    let rest: Vec<usize> = (0..h.n()).filter(|&w| w != u && w != v).collect();
    let mut count = 0u64;
    for ext in ColexSubsets::new(&rest, t - 2) {
        let w = pair.union(&VertexSet(ext));
        if is_clique(h, &w) {
            count += 1;
        }
    }
    count
}

/// binom(n, r) - binom(n-s+r, r): the exact weak (and strong) saturation
/// number of K_s^r in the complete host.
pub fn wsat_complete_formula(n: usize, r: usize, s: usize) -> Result<u64> {
    if !(2 <= r && r < s && s <= n) {
        return Err(Error::InvalidParams(format!(
            "need 2 <= r < s <= n (got n={n}, r={r}, s={s})"
        )));
    }
    Ok(binomial(n as u64, r as u64) - binomial((n - s + r) as u64, r as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_edge(5, 3, &vs(&[0, 1, 2])).unwrap(), EdgeId(0));
        assert_eq!(rank_edge(5, 2, &vs(&[1, 2])).unwrap(), EdgeId(2));
        assert_eq!(rank_edge(5, 3, &vs(&[2, 3, 4])).unwrap(), EdgeId(9));
    }

    #[test]
    fn unrank_examples() {
        assert_eq!(unrank_edge(5, 3, EdgeId(0)).unwrap(), vs(&[0, 1, 2]));
        assert_eq!(unrank_edge(5, 2, EdgeId(2)).unwrap(), vs(&[1, 2]));
        assert_eq!(unrank_edge(5, 3, EdgeId(9)).unwrap(), vs(&[2, 3, 4]));
    }

    #[test]
    fn rank_rejects_malformed() {
        assert!(rank_edge(5, 3, &vs(&[0, 1])).is_err());
        assert!(rank_edge(5, 3, &vs(&[0, 1, 5])).is_err());
        assert!(VertexSet::new(vec![1, 1, 2]).is_err());
        assert!(unrank_edge(5, 3, EdgeId(10)).is_err());
    }

    #[test]
    fn complete_has_all_edges() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(k53.edge_count(), 10);
        assert!(k53.has_edge(&[0, 1, 4]));
        let edges = k53.edges();
        assert_eq!(edges.len(), 10);
        assert_eq!(edges[0], vs(&[0, 1, 2]));
        assert_eq!(edges[9], vs(&[2, 3, 4]));
    }

    #[test]
    fn is_clique_examples() {
        let k43 = Hypergraph::complete(4, 3).unwrap();
        assert!(is_clique(&k43, &vs(&[0, 1, 2, 3])));
        let mut missing = k43.clone();
        missing.remove_edge(&vs(&[0, 1, 2])).unwrap();
        assert!(!is_clique(&missing, &vs(&[0, 1, 2, 3])));
        // |W| = r-1 is vacuously a clique
        let empty = Hypergraph::new(6, 3).unwrap();
        assert!(is_clique(&empty, &vs(&[1, 2])));
    }

    #[test]
    fn is_clique_counts_all_r_subsets() {
        let mut h = Hypergraph::new(5, 3).unwrap();
        for e in ColexSubsets::new(&[0, 1, 2, 3], 3) {
            h.insert_edge(&VertexSet::new(e).unwrap()).unwrap();
        }
        assert!(is_clique(&h, &vs(&[0, 1, 2, 3])));
        assert!(!is_clique(&h, &vs(&[0, 1, 2, 4])));
    }

    #[test]
    fn contains_clique_examples() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert!(contains_clique(&k53, 5));
        let empty = Hypergraph::new(10, 3).unwrap();
        assert!(!contains_clique(&empty, 4));
        for rank in 0..10u64 {
            let mut h = k53.clone();
            let e = unrank_edge(5, 3, EdgeId(rank)).unwrap();
            h.remove_edge(&e).unwrap();
            assert!(!contains_clique(&h, 5), "removing {e} must break K_5^3");
        }
    }

    #[test]
    fn contains_clique_matches_exhaustive_small() {
        // Deterministic sweeps of edge patterns on hosts up to n = 8.
        for n in 4..=8usize {
            let verts: Vec<usize> = (0..n).collect();
            let all: Vec<Vec<usize>> = ColexSubsets::new(&verts, 3).collect();
            let patterns = if n <= 6 { 200 } else { 60 };
            for pattern in 0..patterns as u64 {
                let mut h = Hypergraph::new(n, 3).unwrap();
                // A spread-out deterministic subset of edges.
                for (i, e) in all.iter().enumerate() {
                    if (pattern.wrapping_mul(2654435761).wrapping_add(i as u64 * 97)) % 3 != 0 {
                        h.insert_sorted(e);
                    }
                }
                for s in 4..=n {
                    let brute = ColexSubsets::new(&verts, s)
                        .any(|w| is_clique(&h, &VertexSet::new(w).unwrap()));
                    assert_eq!(contains_clique(&h, s), brute);
                }
            }
        }
    }

    #[test]
    fn pair_clique_counts() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(count_cliques_through_pair(&k53, 4, 0, 1), 3);
        let empty = Hypergraph::new(6, 3).unwrap();
        assert_eq!(count_cliques_through_pair(&empty, 3, 2, 5), 0);
        let k43 = Hypergraph::complete(4, 3).unwrap();
        assert_eq!(count_cliques_through_pair(&k43, 4, 0, 3), 1);
        // Complete host: binom(n-2, t-2) exactly.
        let k83 = Hypergraph::complete(8, 3).unwrap();
        assert_eq!(count_cliques_through_pair(&k83, 4, 1, 5), binomial(6, 2));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(wsat_complete_formula(4, 3, 4).unwrap(), 3);
        assert_eq!(wsat_complete_formula(6, 3, 4).unwrap(), 10);
        assert_eq!(wsat_complete_formula(5, 4, 5).unwrap(), 4);
        assert!(wsat_complete_formula(4, 4, 4).is_err());
    }

    #[test]
    fn formula_vandermonde_identity() {
        // binom(l, r) + sum_{i=1}^{r-1} binom(n-l, i) binom(l, r-i)
        // equals binom(n, r) - binom(n-l, r) with l = s - r.
        for r in 2..=6usize {
            for s in (r + 1)..=12 {
                for n in s..=20 {
                    let l = (s - r) as u64;
                    let mut total = binomial(l, r as u64);
                    for i in 1..r as u64 {
                        total += binomial((n as u64) - l, i) * binomial(l, r as u64 - i);
                    }
                    assert_eq!(total, wsat_complete_formula(n, r, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn induced_keeps_labels() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        let sub = k53.induced(&vs(&[1, 2, 3, 4]));
        assert_eq!(sub.n(), 5);
        assert_eq!(sub.edge_count(), 4);
        assert!(sub.has_edge(&[2, 3, 4]));
        assert!(!sub.has_edge(&[0, 1, 2]));
    }
}
