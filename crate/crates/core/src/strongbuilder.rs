//! The staged construction of strongly K_s^r-saturated subhypergraphs:
//! parameter computation, good/bad classification of (r-1)-sets, rich
//! K_{t+1}^r-free subhypergraphs via greedy edge-disjoint clique removal,
//! the three assembly stages, and the final patching pass.
//!
//! Logs are base alpha unless a formula pins another base. Small n makes the
//! nested log degenerate; when log log n <= 0 the affected factors fall back
//! as documented on `compute_params`.

use serde::Serialize;

use crate::bootstrap::completes;
use crate::combinatorics::{binomial, ColexSubsets};
use crate::error::{Error, Result};
use crate::hypergraph::{contains_clique, count_cliques_through_pair, Hypergraph, VertexSet};
use crate::randmodel::{sample, Seed, SplitMix64};

/// All scalars of the strong construction.
#[derive(Clone, Debug, Serialize)]
pub struct SaturationParams {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub p: f64,
    /// t = s - r.
    pub t: usize,
    pub alpha: f64,
    pub beta: f64,
    pub a1: usize,
    pub a2: usize,
    pub a3: usize,
    /// Good-set threshold on |N_{A1}(S)|.
    pub m: f64,
    /// Edge probability of the rich subhypergraph regime; None when the
    /// exponent degenerates (t + 1 = r).
    pub q: Option<f64>,
    /// Induced-subhypergraph size above which K_t^r must appear; None when
    /// t < 2 (the formula divides by t - 1) or the exponent degenerates.
    pub big_t: Option<f64>,
    pub lambda: u64,
    pub delta: f64,
    pub c0: f64,
    pub c1: f64,
}

fn log_base(base: f64, x: f64) -> f64 {
    x.ln() / base.ln()
}

/// Evaluates every parameter formula. Sizes are rounded up to integers.
/// Errors with Infeasible when a1 + a2 + a3 >= n/2; size overrides via
/// `override_sizes` or `params_with_overrides` can then bring the
/// construction into range.
pub fn compute_params(
    n: usize,
    r: usize,
    s: usize,
    p: f64,
    c0: f64,
    c1: f64,
    delta: f64,
) -> Result<SaturationParams> {
    let params = compute_params_unchecked(n, r, s, p, c0, c1, delta)?;
    check_feasible(&params)?;
    Ok(params)
}

fn compute_params_unchecked(
    n: usize,
    r: usize,
    s: usize,
    p: f64,
    c0: f64,
    c1: f64,
    delta: f64,
) -> Result<SaturationParams> {
    if !(2 <= r && r < s) {
        return Err(Error::InvalidParams(format!(
            "need 2 <= r < s (got r={r}, s={s})"
        )));
    }
    if !(0.0 < p && p < 1.0) {
        return Err(Error::InvalidParams(format!("need 0 < p < 1, got {p}")));
    }
    let t = s - r;
    let alpha = 1.0 / (1.0 - p.powi(r as i32 - 1));
    let beta_exp = binomial(s as u64, r as u64) as i32 - binomial(t as u64, r as u64) as i32 - 1;
    let beta = 1.0 / (1.0 - p.powi(beta_exp));
    let nf = n as f64;
    let log_n = log_base(alpha, nf);
    let loglog_n = log_base(alpha, log_n);

    let a1_factor = if loglog_n > 0.0 {
        1.0 + 3.0 / loglog_n
    } else {
        1.0
    };
    let a1 = ((1.0 / p) * log_n * a1_factor).ceil() as usize;
    // log_beta(n^r) = r log_beta(n); the product form avoids overflowing
    // the intermediate power.
    let a2 = ((s * r) as f64 * log_base(beta, nf)).ceil() as usize;
    let log_a2 = log_base(alpha, a2 as f64);
    let a3 = if log_a2 > 0.0 {
        ((a2 as f64) / log_a2.powf(1.0 / r as f64)).ceil() as usize
    } else {
        a2
    };

    let m = if loglog_n > 0.0 {
        (1.0 + 2.0 / loglog_n) * log_n
    } else {
        log_n
    };

    let denom = binomial(t as u64 + 1, r as u64) as f64 - 1.0;
    let q = if denom != 0.0 {
        Some(c1 * (a1 as f64).powf(-((t as f64 + 1.0 - r as f64) / denom)))
    } else {
        None
    };
    let big_t = if t >= 2 && denom > 0.0 {
        let expo = binomial(t as u64, r as u64) as f64 * (t as f64 + 1.0 - r as f64)
            / (denom * (t as f64 - 1.0));
        let log_a1 = log_base(alpha, a1 as f64);
        Some(c0 * (a1 as f64).powf(expo) * log_a1.powf(1.0 / (t as f64 - 1.0)))
    } else {
        None
    };

    let b1 = binomial(t as u64, r as u64) as i64;
    let b2 = binomial(t as u64 + 1, r as u64) as i64;
    let lambda_signed = b1 * (b2 - 1) + 1;
    assert!(lambda_signed >= 1, "lambda formula degenerated below 1");

    let params = SaturationParams {
        n,
        r,
        s,
        p,
        t,
        alpha,
        beta,
        a1,
        a2,
        a3,
        m,
        q,
        big_t,
        lambda: lambda_signed as u64,
        delta,
        c0,
        c1,
    };
    Ok(params)
}

fn check_feasible(params: &SaturationParams) -> Result<()> {
    let total = params.a1 + params.a2 + params.a3;
    if 2 * total >= params.n {
        return Err(Error::Infeasible(format!(
            "a1 + a2 + a3 = {total} >= n/2 = {}",
            params.n as f64 / 2.0
        )));
    }
    Ok(())
}

/// Replaces the computed set sizes (the desk-scale escape hatch) and
/// re-checks feasibility.
pub fn override_sizes(
    mut params: SaturationParams,
    a1: Option<usize>,
    a2: Option<usize>,
    a3: Option<usize>,
) -> Result<SaturationParams> {
    if let Some(v) = a1 {
        params.a1 = v;
    }
    if let Some(v) = a2 {
        params.a2 = v;
    }
    if let Some(v) = a3 {
        params.a3 = v;
    }
    check_feasible(&params)?;
    Ok(params)
}

/// Full parameter evaluation with size overrides applied before the
/// feasibility gate, so explicit sizes can rescue regimes where the formula
/// values overflow n/2. All other scalars keep their formula values at the
/// true n.
#[allow(clippy::too_many_arguments)]
pub fn params_with_overrides(
    n: usize,
    r: usize,
    s: usize,
    p: f64,
    c0: f64,
    c1: f64,
    delta: f64,
    a1: Option<usize>,
    a2: Option<usize>,
    a3: Option<usize>,
) -> Result<SaturationParams> {
    let params = compute_params_unchecked(n, r, s, p, c0, c1, delta)?;
    override_sizes(params, a1, a2, a3)
}

/// Exact-rational check of the clique-ratio inequality:
/// binom(t,r)(t+1-r) / ((binom(t+1,r)-1)(t-1)) < 1 - (r-1)/t.
pub fn check_t_inequality(r: usize, t: usize) -> Result<bool> {
    if r < 3 || t < r.max(4) {
        return Err(Error::InvalidParams(format!(
            "need r >= 3 and t >= max(4, r) (got r={r}, t={t})"
        )));
    }
    let (r, t) = (r as u128, t as u128);
    let lhs_num = binomial(t as u64, r as u64) as u128 * (t + 1 - r);
    let lhs_den = (binomial(t as u64 + 1, r as u64) as u128 - 1) * (t - 1);
    // 1 - (r-1)/t = (t - r + 1)/t; cross-multiply (all positive).
    Ok(lhs_num * t < (t - r + 1) * lhs_den)
}

/// Disjoint consecutive vertex ranges A1, A2, A3 with B the remainder.
#[derive(Clone, Debug)]
pub struct VertexSplit {
    pub a1: VertexSet,
    pub a2: VertexSet,
    pub a3: VertexSet,
    pub b: VertexSet,
}

impl VertexSplit {
    pub fn consecutive(n: usize, params: &SaturationParams) -> Result<VertexSplit> {
        let (s1, s2, s3) = (params.a1, params.a2, params.a3);
        if s1 + s2 + s3 > n {
            return Err(Error::Infeasible(format!(
                "split sizes {s1}+{s2}+{s3} exceed n={n}"
            )));
        }
        let a1 = VertexSet::new((0..s1).collect()).expect("consecutive");
        let a2 = VertexSet::new((s1..s1 + s2).collect()).expect("consecutive");
        let a3 = VertexSet::new((s1 + s2..s1 + s2 + s3).collect()).expect("consecutive");
        let b = VertexSet::new((s1 + s2 + s3..n).collect()).expect("consecutive");
        Ok(VertexSplit { a1, a2, a3, b })
    }
}

/// Neighborhood sizes into A1 and the good/bad classification for every
/// (r-1)-subset of B.
#[derive(Clone, Debug, Default)]
pub struct GoodSetIndex {
    pub entries: std::collections::BTreeMap<VertexSet, (usize, bool)>,
}

impl GoodSetIndex {
    pub fn is_good(&self, s: &VertexSet) -> bool {
        self.entries.get(s).map(|&(_, good)| good).unwrap_or(false)
    }

    pub fn good_count(&self) -> usize {
        self.entries.values().filter(|&&(_, g)| g).count()
    }

    pub fn bad_count(&self) -> usize {
        self.entries.len() - self.good_count()
    }
}

/// One entry per (r-1)-subset of B: |N_{A1}(S)| and whether it reaches `m`.
pub fn classify_sets(g: &Hypergraph, split: &VertexSplit, m: f64) -> GoodSetIndex {
    let mut index = GoodSetIndex::default();
    for raw in ColexSubsets::new(split.b.as_slice(), g.r() - 1) {
        let s = VertexSet::new(raw).expect("increasing");
        let count = split
            .a1
            .iter()
            .filter(|&v| {
                let e = s.union(&VertexSet::new(vec![v]).expect("singleton"));
                g.has_edge(e.as_slice())
            })
            .count();
        let good = count as f64 >= m;
        index.entries.insert(s, (count, good));
    }
    index
}

/// Deletes a greedy inclusion-maximal family of edge-disjoint K_{t+1}^r
/// copies, scanning (t+1)-subsets in colex order. The result is
/// K_{t+1}^r-free by maximality. When t + 1 < r the input has no such copies
/// and is returned unchanged; when t + 1 = r the sweep consumes every edge.
pub fn build_rich_free(gsub: &Hypergraph, t: usize) -> Hypergraph {
    let r = gsub.r();
    if t + 1 < r {
        return gsub.clone();
    }
    let deg = gsub.degrees();
    let active: Vec<usize> = (0..gsub.n()).filter(|&v| deg[v] > 0).collect();
    let mut result = gsub.clone();
    let mut consumed = Hypergraph::new(gsub.n(), r).expect("same params");
    for w in ColexSubsets::new(&active, t + 1) {
        let mut edges_of_copy = Vec::new();
        let mut ok = true;
        for e in ColexSubsets::new(&w, r) {
            if !gsub.has_edge(&e) || consumed.has_edge(&e) {
                ok = false;
                break;
            }
            edges_of_copy.push(e);
        }
        if ok {
            for e in edges_of_copy {
                consumed.insert_sorted(&e);
                result
                    .remove_edge(&VertexSet::new(e).expect("increasing"))
                    .expect("edge present");
            }
        }
    }
    result
}

/// Per-build observability for the staged assembly.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StrongStats {
    pub stage1_edges: usize,
    pub stage2_edges: usize,
    pub stage3_edges: usize,
    pub good_sets: usize,
    pub bad_sets: usize,
    /// Sampled richness checks on the A1 subhypergraph (0 when t < r or the
    /// threshold exceeds |A1|).
    pub rich_samples: usize,
    pub rich_failures: usize,
}

/// Assembles H per the three stages and asserts K_s^r-freeness after each.
pub fn build_strong_h(
    g: &Hypergraph,
    params: &SaturationParams,
    split: &VertexSplit,
    seed: Seed,
) -> Result<(Hypergraph, StrongStats)> {
    check_feasible(params)?;
    let r = g.r();
    let s = params.s;
    let t = params.t;
    let mut stats = StrongStats::default();
    let mut h = Hypergraph::new(g.n(), r)?;

    let profile = |e: &VertexSet| -> (usize, usize, usize, usize) {
        let mut c = (0, 0, 0, 0);
        for v in e.iter() {
            if split.a1.contains(v) {
                c.0 += 1;
            } else if split.a2.contains(v) {
                c.1 += 1;
            } else if split.a3.contains(v) {
                c.2 += 1;
            } else {
                c.3 += 1;
            }
        }
        c
    };

    // Stage 1: rich A1 subhypergraph plus A1-B mixing with 1..=t vertices
    // in A1.
    if t >= r {
        let h1 = build_rich_free(&g.induced(&split.a1), t);
        for e in h1.edges() {
            h.insert_edge(&e)?;
        }
        stats.rich_samples = 0;
        if let Some(big_t) = params.big_t {
            let k = big_t.ceil() as usize;
            if k <= split.a1.len() && k >= t {
                let mut rng = SplitMix64::new(seed ^ 0x5441_5254);
                let pool: Vec<usize> = split.a1.iter().collect();
                for _ in 0..200 {
                    let sub = rng.sample_subset(&pool, k);
                    let keep = VertexSet::new(sub).expect("increasing");
                    stats.rich_samples += 1;
                    if !contains_clique(&h1.induced(&keep), t) {
                        stats.rich_failures += 1;
                    }
                }
            }
        }
    }
    for e in g.edges() {
        let (na1, na2, na3, nb) = profile(&e);
        if na2 == 0 && na3 == 0 && na1 >= 1 && na1 <= t && nb == r - na1 && nb >= 1 {
            h.insert_edge(&e)?;
        }
    }
    stats.stage1_edges = h.edge_count();
    if contains_clique(&h, s) {
        return Err(Error::IntegrityViolation(
            "stage 1 produced a forbidden clique".into(),
        ));
    }

    // Classification feeds stages 2 and 3.
    let index = classify_sets(g, split, params.m);
    stats.good_sets = index.good_count();
    stats.bad_sets = index.bad_count();

    // Stage 2: rich A2 subhypergraph, A2-B mixing with 2..=t vertices in A2,
    // and bad (r-1)-sets joined to single A2 vertices.
    if t >= r {
        let h2 = build_rich_free(&g.induced(&split.a2), t);
        for e in h2.edges() {
            h.insert_edge(&e)?;
        }
    }
    for e in g.edges() {
        let (na1, na2, na3, nb) = profile(&e);
        if na1 != 0 || na3 != 0 {
            continue;
        }
        if na2 >= 2 && na2 <= t && nb == r - na2 && nb >= 1 {
            h.insert_edge(&e)?;
        } else if na2 == 1 && nb == r - 1 {
            let bpart = e.difference(&split.a2);
            if !index.is_good(&bpart) {
                h.insert_edge(&e)?;
            }
        }
    }
    stats.stage2_edges = h.edge_count();
    if contains_clique(&h, s) {
        return Err(Error::IntegrityViolation(
            "stage 2 produced a forbidden clique".into(),
        ));
    }

    // Stage 3: rich A3 subhypergraph, A3-B mixing with 2..=t vertices in A3,
    // good (r-1)-sets joined to single A3 vertices, and (B+A2)-A3 edges with
    // exactly one A2 vertex and 1..=t A3 vertices.
    if t >= r {
        let h3 = build_rich_free(&g.induced(&split.a3), t);
        for e in h3.edges() {
            h.insert_edge(&e)?;
        }
    }
    for e in g.edges() {
        let (na1, na2, na3, nb) = profile(&e);
        if na1 != 0 {
            continue;
        }
        if na2 == 0 && na3 >= 2 && na3 <= t && nb == r - na3 && nb >= 1 {
            h.insert_edge(&e)?;
        } else if na2 == 0 && na3 == 1 && nb == r - 1 {
            let bpart = e.difference(&split.a3);
            if index.is_good(&bpart) {
                h.insert_edge(&e)?;
            }
        } else if na2 == 1 && na3 >= 1 && na3 <= t && nb == r - 1 - na3 {
            h.insert_edge(&e)?;
        }
    }
    stats.stage3_edges = h.edge_count();
    if contains_clique(&h, s) {
        return Err(Error::IntegrityViolation(
            "stage 3 produced a forbidden clique".into(),
        ));
    }

    Ok((h, stats))
}

/// Single colex pass over the missing edges: any edge that does not complete
/// a copy at its turn is added to H. Freeness survives because an edge whose
/// addition formed a copy would have been completable; afterwards every
/// remaining missing edge completes against a superset of what it saw.
pub fn patch_uncompleted(
    g: &Hypergraph,
    h: &Hypergraph,
    s: usize,
) -> Result<(Hypergraph, Vec<VertexSet>)> {
    if contains_clique(h, s) {
        return Err(Error::InvalidParams(
            "patching requires a clique-free spark".into(),
        ));
    }
    let mut current = h.clone();
    let mut patched = Vec::new();
    for e in g.edges() {
        if current.has_edge(e.as_slice()) {
            continue;
        }
        if completes(&current, &e, s).is_none() {
            current.insert_edge(&e)?;
            patched.push(e);
        }
    }
    Ok((current, patched))
}

/// One trial of the pair-clique diagnostic.
#[derive(Clone, Debug, Serialize)]
pub struct PairBoundTrial {
    pub seed: Seed,
    pub host_edges: usize,
    pub max_count: u64,
    pub pass: bool,
}

/// Report of the pair-clique count diagnostic at the rich regime density.
#[derive(Clone, Debug, Serialize)]
pub struct PairBoundReport {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub rho: f64,
    pub bound: f64,
    pub trials: Vec<PairBoundTrial>,
    pub pass_rate: f64,
}

/// Samples G^r(n, rho) per seed and compares the maximum pair clique count
/// against 2 binom(n, t-2) rho^binom(t, r). Statistical: the report carries
/// per-seed pass flags, never a hard gate.
pub fn check_pair_clique_bound(
    n: usize,
    r: usize,
    t: usize,
    c: f64,
    seeds: &[Seed],
) -> Result<PairBoundReport> {
    if r < 3 || t < r.max(4) {
        return Err(Error::InvalidParams(format!(
            "need r >= 3 and t >= max(4, r) (got r={r}, t={t})"
        )));
    }
    let denom = binomial(t as u64 + 1, r as u64) as f64 - 1.0;
    let rho = (c * (n as f64).powf(-((t as f64 + 1.0 - r as f64) / denom))).min(1.0);
    let bound =
        2.0 * binomial(n as u64, t as u64 - 2) as f64 * rho.powf(binomial(t as u64, r as u64) as f64);
    let mut trials = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let g = sample(n, r, rho, seed)?;
        let mut max_count = 0u64;
        for u in 0..n {
            for v in (u + 1)..n {
                max_count = max_count.max(count_cliques_through_pair(&g, t, u, v));
            }
        }
        trials.push(PairBoundTrial {
            seed,
            host_edges: g.edge_count(),
            max_count,
            pass: (max_count as f64) <= bound,
        });
    }
    let passes = trials.iter().filter(|t| t.pass).count();
    let pass_rate = if trials.is_empty() {
        1.0
    } else {
        passes as f64 / trials.len() as f64
    };
    Ok(PairBoundReport {
        n,
        r,
        t,
        rho,
        bound,
        trials,
        pass_rate,
    })
}

/// Leading term binom(n, r-1) log_alpha n of the saturation count.
pub fn leading_term(n: usize, r: usize, alpha: f64) -> f64 {
    binomial(n as u64, r as u64 - 1) as f64 * log_base(alpha, n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bootstrap::is_strongly_saturated;

    fn vs(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn params_examples() {
        let p = compute_params(1_000_000, 3, 4, 0.5, 1.0, 1.0, 0.1).unwrap();
        assert!((p.alpha - 4.0 / 3.0).abs() < 1e-12);
        assert!((p.beta - 8.0 / 7.0).abs() < 1e-12);
        assert_eq!(p.lambda, 1); // t=1: binom(1,3)=binom(2,3)=0
        assert_eq!(p.t, 1);
    }

    #[test]
    fn params_infeasible_small_n() {
        assert!(matches!(
            compute_params(100, 3, 4, 0.9, 1.0, 1.0, 0.1),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn override_restores_feasibility() {
        let base = compute_params(1000, 3, 4, 0.9, 1.0, 1.0, 0.1).unwrap();
        let over = override_sizes(base, Some(20), Some(12), Some(8)).unwrap();
        assert_eq!((over.a1, over.a2, over.a3), (20, 12, 8));
    }

    #[test]
    fn t_inequality_examples() {
        assert!(check_t_inequality(3, 4).unwrap()); // 8/27 < 1/2
        assert!(check_t_inequality(3, 5).unwrap()); // 30/76 < 3/5
        assert!(check_t_inequality(3, 3).is_err()); // t below max(4, r)
    }

    #[test]
    fn t_inequality_sweep() {
        for r in 3..=10usize {
            for t in r.max(4)..=50 {
                assert!(check_t_inequality(r, t).unwrap(), "failed at r={r}, t={t}");
            }
        }
    }

    #[test]
    fn rich_free_k53() {
        let k53 = Hypergraph::complete(5, 3).unwrap();
        let out = build_rich_free(&k53, 3);
        assert_eq!(out.edge_count(), 6); // one K_4^3 consumed
        assert!(!contains_clique(&out, 4));

        let empty = Hypergraph::new(6, 3).unwrap();
        assert_eq!(build_rich_free(&empty, 4).edge_count(), 0);

        // t + 1 < r: unchanged.
        let g = Hypergraph::complete(6, 4).unwrap();
        assert_eq!(build_rich_free(&g, 2), g);

        // t + 1 = r: every edge is a copy, the sweep empties the input.
        let g = Hypergraph::complete(5, 3).unwrap();
        assert_eq!(build_rich_free(&g, 2).edge_count(), 0);
    }

    #[test]
    fn classify_extremes() {
        let params = SaturationParams {
            n: 12,
            r: 3,
            s: 4,
            p: 0.5,
            t: 1,
            alpha: 2.0,
            beta: 2.0,
            a1: 4,
            a2: 1,
            a3: 1,
            m: 2.0,
            q: None,
            big_t: None,
            lambda: 1,
            delta: 0.1,
            c0: 1.0,
            c1: 1.0,
        };
        let split = VertexSplit::consecutive(12, &params).unwrap();
        let complete = Hypergraph::complete(12, 3).unwrap();
        let idx = classify_sets(&complete, &split, params.m);
        assert_eq!(idx.bad_count(), 0);

        let empty = Hypergraph::new(12, 3).unwrap();
        let idx = classify_sets(&empty, &split, params.m);
        assert_eq!(idx.good_count(), 0);

        // Threshold boundary: exactly ceil(m) - 1 neighbors stays bad.
        let mut g = Hypergraph::new(12, 3).unwrap();
        g.insert_edge(&vs(&[0, 6, 7])).unwrap(); // one A1 neighbor of {6,7}
        let idx = classify_sets(&g, &split, 2.0);
        assert_eq!(idx.entries[&vs(&[6, 7])], (1, false));
        g.insert_edge(&vs(&[1, 6, 7])).unwrap();
        let idx = classify_sets(&g, &split, 2.0);
        assert_eq!(idx.entries[&vs(&[6, 7])], (2, true));
    }

    #[test]
    fn patch_examples() {
        let g = Hypergraph::complete(4, 3).unwrap();
        let h = Hypergraph::new(4, 3).unwrap();
        let (patched, added) = patch_uncompleted(&g, &h, 4).unwrap();
        assert_eq!(added.len(), 3);
        assert_eq!(patched.edge_count(), 3);
        assert!(is_strongly_saturated(&g, &patched, 4).unwrap());

        // Already saturated: unchanged.
        let (same, added) = patch_uncompleted(&g, &patched, 4).unwrap();
        assert!(added.is_empty());
        assert_eq!(same, patched);
    }

    #[test]
    fn patch_replay_confirms_minimality() {
        // Replaying the colex pass: every patched edge was uncompletable at
        // its turn, every skipped missing edge was completable.
        let g = sample(14, 3, 0.8, 5).unwrap();
        let h = Hypergraph::new(14, 3).unwrap();
        let (_, patched) = patch_uncompleted(&g, &h, 4).unwrap();
        let mut replay = h.clone();
        let mut patched_iter = patched.iter().peekable();
        for e in g.edges() {
            if replay.has_edge(e.as_slice()) {
                continue;
            }
            let completable = crate::bootstrap::completes(&replay, &e, 4).is_some();
            if patched_iter.peek() == Some(&&e) {
                assert!(!completable, "patched edge {e} was completable");
                replay.insert_edge(&e).unwrap();
                patched_iter.next();
            } else {
                assert!(completable, "skipped edge {e} was not completable");
            }
        }
        assert!(patched_iter.next().is_none());
    }

    #[test]
    fn small_strong_pipeline() {
        // t < r keeps the rich subgraphs empty; the classes plus patching
        // must still deliver strong saturation.
        let n = 30;
        let g = sample(n, 3, 0.9, 3).unwrap();
        let params = SaturationParams {
            n,
            r: 3,
            s: 4,
            p: 0.9,
            t: 1,
            alpha: 1.0 / (1.0 - 0.81),
            beta: 1.0 / (1.0 - 0.9f64.powi(3)),
            a1: 6,
            a2: 4,
            a3: 3,
            m: 3.0,
            q: None,
            big_t: None,
            lambda: 1,
            delta: 0.1,
            c0: 1.0,
            c1: 1.0,
        };
        let split = VertexSplit::consecutive(n, &params).unwrap();
        let (h, stats) = build_strong_h(&g, &params, &split, 3).unwrap();
        assert!(stats.stage3_edges >= stats.stage2_edges);
        assert!(!contains_clique(&h, 4));
        let (full, _) = patch_uncompleted(&g, &h, 4).unwrap();
        assert!(!contains_clique(&full, 4));
        assert!(is_strongly_saturated(&g, &full, 4).unwrap());
    }

    #[test]
    fn pair_bound_extremes() {
        // rho = 0: empty graphs, max count 0, trivially passing.
        let report = check_pair_clique_bound(12, 3, 4, 0.0, &[1, 2]).unwrap();
        assert_eq!(report.rho, 0.0);
        assert!(report.trials.iter().all(|t| t.max_count == 0 && t.pass));
        assert_eq!(report.pass_rate, 1.0);

        // Huge c forces rho = 1: the complete host hits binom(n-2, t-2)
        // exactly.
        let report = check_pair_clique_bound(10, 3, 4, 1e9, &[7]).unwrap();
        assert_eq!(report.rho, 1.0);
        assert_eq!(report.trials[0].max_count, binomial(8, 2));
    }
}
