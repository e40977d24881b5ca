//! Seeded binomial random hypergraphs and the block partition used by the
//! core construction.
//!
//! The generator is pinned so that outputs are reproducible across
//! implementations: for edge rank k, the 64-bit word is the SplitMix64
//! finalizer applied to `seed + (k + 1) * 0x9E3779B97F4A7C15`, mapped to a
//! uniform in [0, 1); the edge is kept iff that uniform is < p. Because each
//! rank owns a fixed threshold, samples at p1 < p2 under the same seed are
//! nested (monotone coupling).

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Seed for the pinned generator.
pub type Seed = u64;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn splitmix64(z: u64) -> u64 {
    let mut z = z;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform in [0, 1) for the substream (seed, rank).
#[inline]
pub fn edge_uniform(seed: Seed, rank: u64) -> f64 {
    let word = splitmix64(seed.wrapping_add(rank.wrapping_add(1).wrapping_mul(GOLDEN)));
    (word >> 11) as f64 / (1u64 << 53) as f64
}

/// Small deterministic stream generator built on the same mixer, used for
/// auxiliary sampling (subset draws, spot checks). Not part of the edge
/// substream scheme.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: Seed) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        splitmix64(self.state)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [0, bound). Modulo bias is irrelevant at desk scale and
    /// keeps the stream layout simple.
    pub fn next_below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// k distinct elements of `pool`, in increasing order.
    pub fn sample_subset(&mut self, pool: &[usize], k: usize) -> Vec<usize> {
        assert!(k <= pool.len());
        let mut idx: Vec<usize> = (0..pool.len()).collect();
        for i in 0..k {
            let j = i + self.next_below(idx.len() - i);
            idx.swap(i, j);
        }
        let mut out: Vec<usize> = idx[..k].iter().map(|&i| pool[i]).collect();
        out.sort_unstable();
        out
    }
}

/// G^r(n, p): every edge of K_n^r kept independently with probability p,
/// decided in colex-rank order by the pinned substream scheme.
pub fn sample(n: usize, r: usize, p: f64, seed: Seed) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!("p must be in [0,1], got {p}")));
    }
    let mut h = Hypergraph::new(n, r)?;
    let total = binomial(n as u64, r as u64);
    for rank in 0..total {
        if edge_uniform(seed, rank) < p {
            h.insert_rank(rank);
        }
    }
    Ok(h)
}

/// Partition of 0..n-1 into floor(n/ell) consecutive blocks of size ell.
/// Block indices are 1-based to match the Q_1..Q_m convention; leftover
/// vertices (n mod ell of them) belong to no block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub ell: usize,
    blocks: Vec<VertexSet>,
    pub leftover: VertexSet,
}

impl BlockPartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block by 1-based index.
    pub fn block(&self, idx: usize) -> &VertexSet {
        &self.blocks[idx - 1]
    }

    /// (1-based index, block) pairs in order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &VertexSet)> {
        self.blocks.iter().enumerate().map(|(i, b)| (i + 1, b))
    }
}

/// Q_i = {(i-1)*ell, ..., i*ell - 1} for i = 1..floor(n/ell).
pub fn partition_blocks(n: usize, ell: usize) -> Result<BlockPartition> {
    if ell < 1 || ell > n {
        return Err(Error::InvalidParams(format!(
            "block size must satisfy 1 <= ell <= n (got n={n}, ell={ell})"
        )));
    }
    let count = n / ell;
    let blocks = (0..count)
        .map(|i| VertexSet::new((i * ell..(i + 1) * ell).collect()).expect("consecutive"))
        .collect();
    let leftover = VertexSet::new((count * ell..n).collect()).expect("consecutive");
    Ok(BlockPartition {
        ell,
        blocks,
        leftover,
    })
}

/// Smallest 1-based block index i not in `exclude` with Q_i disjoint from S
/// and every r-subset e of Q_i union S with e meeting Q_i present in G.
pub fn find_block(
    g: &Hypergraph,
    part: &BlockPartition,
    s: &VertexSet,
    exclude: &std::collections::BTreeSet<usize>,
) -> Result<usize> {
    for (idx, q) in part.iter() {
        if exclude.contains(&idx) || !q.is_disjoint(s) {
            continue;
        }
        if block_serves(g, q, s) {
            return Ok(idx);
        }
    }
    Err(Error::BlockNotFound)
}

/// Every r-subset of q union s that meets q is an edge of g.
pub(crate) fn block_serves(g: &Hypergraph, q: &VertexSet, s: &VertexSet) -> bool {
    let union = q.union(s);
    if union.len() < g.r() {
        return true;
    }
    crate::combinatorics::ColexSubsets::new(union.as_slice(), g.r())
        .all(|e| e.iter().all(|&v| !q.contains(v)) || g.has_edge(&e))
}
