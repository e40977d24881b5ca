//! Binomial coefficients, colex subset ordering, and subset enumeration.
//!
//! Colex order compares the largest elements first; the colex rank of a
//! strictly increasing subset {c_1 < ... < c_k} is sum binom(c_i, i).
//! On variable-size subsets, colex coincides with ordering by the numeric
//! value of the characteristic vector.

/// binom(n, k), with the convention that an undersized or negative upper
/// argument yields 0. Exact in u64 for every (n, k) with n <= 62.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - (k as u128 - i)) / i;
    }
    acc as u64
}

/// Colex rank of a strictly increasing subset. Does not depend on the
/// ambient ground-set size.
pub fn colex_rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &c)| binomial(c as u64, i as u64 + 1))
        .sum()
}

/// Inverse of `colex_rank` for k-subsets: the `rank`-th k-subset in colex
/// order, as a strictly increasing vector.
pub fn colex_unrank(k: usize, mut rank: u64) -> Vec<usize> {
    let mut out = vec![0usize; k];
    for i in (1..=k).rev() {
        // Largest c with binom(c, i) <= rank.
        let mut c = i - 1;
        while binomial(c as u64 + 1, i as u64) <= rank {
            c += 1;
        }
        rank -= binomial(c as u64, i as u64);
        out[i - 1] = c;
    }
    out
}

/// Compares two strictly increasing subsets (possibly of different sizes) in
/// colex order: largest elements first, the empty suffix smallest. Equivalent
/// to comparing the numeric values of the characteristic vectors.
pub fn cmp_colex(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    let mut ia = a.iter().rev();
    let mut ib = b.iter().rev();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return std::cmp::Ordering::Equal,
            (None, Some(_)) => return std::cmp::Ordering::Less,
            (Some(_), None) => return std::cmp::Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(y),
            _ => {}
        }
    }
}

/// Enumerates the k-subsets of a strictly increasing ground slice in colex
/// order over the selected values.
pub struct ColexSubsets<'a> {
    ground: &'a [usize],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> ColexSubsets<'a> {
    pub fn new(ground: &'a [usize], k: usize) -> Self {
        let done = k > ground.len();
        ColexSubsets {
            ground,
            idx: (0..k).collect(),
            done,
        }
    }

    fn emit(&self) -> Vec<usize> {
        self.idx.iter().map(|&i| self.ground[i]).collect()
    }
}

impl<'a> Iterator for ColexSubsets<'a> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.emit();
        let k = self.idx.len();
        if k == 0 {
            self.done = true;
            return Some(out);
        }
        // Colex successor: bump the first index with headroom, reset the
        // prefix to 0..j.
        let mut j = 0;
        loop {
            let limit = if j + 1 < k {
                self.idx[j + 1]
            } else {
                self.ground.len()
            };
            if self.idx[j] + 1 < limit {
                self.idx[j] += 1;
                for (t, slot) in self.idx.iter_mut().enumerate().take(j) {
                    *slot = t;
                }
                break;
            }
            j += 1;
            if j == k {
                self.done = true;
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
        assert_eq!(binomial(4, 0), 1);
    }

    #[test]
    fn colex_rank_examples() {
        assert_eq!(colex_rank(&[0, 1, 2]), 0);
        assert_eq!(colex_rank(&[1, 2]), 2);
        assert_eq!(colex_rank(&[2, 3, 4]), 9);
    }

    #[test]
    fn colex_roundtrip_exhaustive() {
        for k in 1..=4usize {
            for rank in 0..binomial(9, k as u64) {
                let s = colex_unrank(k, rank);
                assert!(s.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(colex_rank(&s), rank);
            }
        }
    }

    #[test]
    fn subsets_iterate_in_colex_order() {
        let ground: Vec<usize> = (0..5).collect();
        let all: Vec<Vec<usize>> = ColexSubsets::new(&ground, 2).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[2], vec![1, 2]);
        assert_eq!(all[9], vec![3, 4]);
        for w in all.windows(2) {
            assert_eq!(cmp_colex(&w[0], &w[1]), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn subsets_over_sparse_ground() {
        let ground = [2usize, 5, 9];
        let all: Vec<Vec<usize>> = ColexSubsets::new(&ground, 2).collect();
        assert_eq!(all, vec![vec![2, 5], vec![2, 9], vec![5, 9]]);
    }

    #[test]
    fn empty_subset_enumerated_once() {
        let ground = [0usize, 1];
        let all: Vec<Vec<usize>> = ColexSubsets::new(&ground, 0).collect();
        assert_eq!(all, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn variable_size_colex() {
        use std::cmp::Ordering::*;
        assert_eq!(cmp_colex(&[1], &[1, 2]), Less);
        assert_eq!(cmp_colex(&[2], &[1, 2]), Less);
        assert_eq!(cmp_colex(&[3], &[1, 2]), Greater);
        assert_eq!(cmp_colex(&[], &[0]), Less);
    }
}
